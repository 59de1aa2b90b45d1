//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid input, 3 budget exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::cltlab::{self, SlopeFit};
use crate::error::Error;
use crate::fock::FockSpace;
use crate::graph::SimplicialGraph;
use crate::partitions::{self, LabeledWord, MatchMode, PairPartition, PairingOptions};
use crate::spinmodel::{self, SignFunction};
use crate::words::{self, Word};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INVALID_INPUT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "gpgauss",
    version,
    about = "Mixed moments in graph products of Gaussian algebras"
)]
pub struct RunConfig {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Human, global = true)]
    pub output: OutputFormat,
    /// Longest word accepted by the pairing enumerator and the Fock simulator.
    #[arg(long, default_value_t = partitions::DEFAULT_MAX_LEN, global = true)]
    pub max_len: usize,
    /// Cap on N^n (matrix moments) and N^(n/2) (class tuples).
    #[arg(long, default_value_t = 100_000_000, global = true)]
    pub max_iterations: u128,
    /// Cap on words explored by the brute-force equivalence oracle.
    #[arg(long, default_value_t = 1_000_000, global = true)]
    pub max_states: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Partitions,
    Fock,
    Matrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatchArg {
    Label,
    Vertex,
}

impl From<MatchArg> for MatchMode {
    fn from(m: MatchArg) -> Self {
        match m {
            MatchArg::Label => MatchMode::Label,
            MatchArg::Vertex => MatchMode::Vertex,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PartitionsAction {
    Count,
    List,
}

#[derive(Debug, Args)]
pub struct GraphWord {
    /// Graph JSON file.
    #[arg(long)]
    pub graph: PathBuf,
    /// Word text: whitespace-separated tokens (`vertex` or `vertex:spin`).
    #[arg(long, allow_hyphen_values = true)]
    pub word: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the canonical minimal representative of a word.
    Normalize(GraphWord),
    /// Report whether a word is reduced.
    Reduced(GraphWord),
    /// Report whether two words are equivalent.
    Equivalent {
        #[command(flatten)]
        input: GraphWord,
        /// The second word.
        #[arg(long)]
        other: String,
        /// Also run the brute-force closure oracle and report agreement.
        #[arg(long)]
        oracle: bool,
    },
    /// Count Γ-admissible pairings or list all pairings with their crossings.
    Partitions {
        action: PartitionsAction,
        #[command(flatten)]
        input: GraphWord,
        #[arg(long = "match", value_enum, default_value_t = MatchArg::Label)]
        match_mode: MatchArg,
    },
    /// Vacuum moment of a word of generators.
    Moment {
        #[command(flatten)]
        input: GraphWord,
        #[arg(long, value_enum, default_value_t = Method::Partitions)]
        method: Method,
        #[arg(long = "match", value_enum, default_value_t = MatchArg::Label)]
        match_mode: MatchArg,
        /// Matrix size parameter (matrix method).
        #[arg(long = "N")]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Use +1 for every off-diagonal sign instead of seeded signs.
        #[arg(long)]
        constant_signs: bool,
    },
    /// Closed-form limit Σ θ^{#Γ-crossings} over pairings.
    Limit {
        #[command(flatten)]
        input: GraphWord,
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long = "match", value_enum, default_value_t = MatchArg::Label)]
        match_mode: MatchArg,
    },
    /// Matrix-model moments against the limit, as CSV.
    Compare {
        #[command(flatten)]
        input: GraphWord,
        #[arg(long = "N-list", value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        seeds: Vec<u64>,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
    },
    /// Pairing-weight estimators.
    Clt {
        #[command(subcommand)]
        command: CltCommand,
    },
    /// Dump the realized sign table over {0..2N-1} × V as JSON.
    SignDump {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long = "N")]
        n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum CltCommand {
    /// One finite-N estimate of a pairing weight.
    TEstimate {
        #[command(flatten)]
        input: GraphWord,
        /// Pairing as `e1-z1,e2-z2,…` with 1-based positions.
        #[arg(long)]
        pairing: String,
        #[arg(long = "N")]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
    },
    /// Empirical variance of the estimator across seeds, with log-log slope.
    Variance {
        #[command(flatten)]
        input: GraphWord,
        #[arg(long)]
        pairing: String,
        #[arg(long = "M-list", value_delimiter = ',', required = true)]
        m_list: Vec<usize>,
        #[arg(long, default_value_t = 32)]
        samples: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed_base: u64,
    },
}

/// Failure of a command: an exit code and a one-line diagnostic.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            e if e.is_budget() => EXIT_BUDGET,
            Error::Domain(_) | Error::OddN(_) => EXIT_USAGE,
            _ => EXIT_INVALID_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<String, Failure>;

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    execute(&config, out, err)
}

/// Runs a parsed configuration.
pub fn execute(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match dispatch(config) {
        Ok(text) => {
            if write!(out, "{text}").is_err() {
                return EXIT_INVALID_INPUT;
            }
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn load_graph(path: &Path) -> Result<SimplicialGraph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INVALID_INPUT,
        message: format!("cannot read graph {}: {e}", path.display()),
    })?;
    Ok(SimplicialGraph::from_json(&text)?)
}

fn check_p(p: f64) -> Result<(), Failure> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Failure::usage(format!("--p {p} is outside [0, 1]")))
    }
}

fn line(s: impl std::fmt::Display) -> String {
    format!("{s}\n")
}

fn json_line(v: serde_json::Value) -> String {
    line(v)
}

fn dispatch(cfg: &RunConfig) -> CmdResult {
    let json = cfg.output == OutputFormat::Json;
    match &cfg.command {
        Command::Normalize(input) => {
            let g = load_graph(&input.graph)?;
            let w = Word::parse(&g, &input.word)?;
            let text = words::normalize(&g, &w).display(&g).to_string();
            Ok(if json {
                json_line(json!({ "word": text }))
            } else {
                line(text)
            })
        }
        Command::Reduced(input) => {
            let g = load_graph(&input.graph)?;
            let w = Word::parse(&g, &input.word)?;
            let reduced = words::is_reduced(&g, &w);
            Ok(if json {
                json_line(json!({ "reduced": reduced }))
            } else {
                line(reduced)
            })
        }
        Command::Equivalent {
            input,
            other,
            oracle,
        } => {
            let g = load_graph(&input.graph)?;
            let w1 = Word::parse(&g, &input.word)?;
            let w2 = Word::parse(&g, other)?;
            let equivalent = words::are_equivalent(&g, &w1, &w2);
            let oracle_verdict = if *oracle {
                let max_len = w1.len().max(w2.len());
                let class = words::equivalence_class_oracle(&g, &w1, max_len, cfg.max_states)?;
                Some(class.contains(&w2))
            } else {
                None
            };
            if json {
                Ok(json_line(
                    json!({ "equivalent": equivalent, "oracle": oracle_verdict }),
                ))
            } else {
                match oracle_verdict {
                    Some(o) => Ok(line(format!("{equivalent} oracle={o}"))),
                    None => Ok(line(equivalent)),
                }
            }
        }
        Command::Partitions {
            action,
            input,
            match_mode,
        } => {
            let g = load_graph(&input.graph)?;
            let w = LabeledWord::parse(&g, &input.word)?;
            let opts = PairingOptions {
                match_mode: (*match_mode).into(),
                max_len: cfg.max_len,
            };
            match action {
                PartitionsAction::Count => {
                    let count = partitions::count_gamma_admissible(&g, &w, &opts)?;
                    Ok(if json {
                        json_line(json!({ "count": count }))
                    } else {
                        line(count)
                    })
                }
                PartitionsAction::List => {
                    let mut rows = Vec::new();
                    for p in partitions::enumerate_pairings(&g, &w, &opts)? {
                        let c = partitions::gamma_crossing_pairs(&g, &w, &p)?;
                        rows.push((p, c));
                    }
                    if json {
                        let items: Vec<_> = rows
                            .iter()
                            .map(|(p, c)| {
                                json!({
                                    "pairing": p.to_string(),
                                    "crossings": c.all,
                                    "gamma_crossings": c.gamma,
                                    "admissible": c.gamma.is_empty(),
                                })
                            })
                            .collect();
                        Ok(json_line(serde_json::Value::Array(items)))
                    } else {
                        Ok(rows
                            .iter()
                            .map(|(p, c)| {
                                line(format!(
                                    "{p} crossings={} gamma_crossings={}",
                                    c.all.len(),
                                    c.gamma.len()
                                ))
                            })
                            .collect())
                    }
                }
            }
        }
        Command::Moment {
            input,
            method,
            match_mode,
            n,
            seed,
            p,
            constant_signs,
        } => {
            if *method != Method::Partitions && *match_mode == MatchArg::Vertex {
                return Err(Failure::usage(
                    "--match vertex applies only to --method partitions",
                ));
            }
            if *method != Method::Matrix && (n.is_some() || *constant_signs) {
                return Err(Failure::usage(
                    "--N and --constant-signs apply only to --method matrix",
                ));
            }
            check_p(*p)?;
            let g = load_graph(&input.graph)?;
            let w = LabeledWord::parse(&g, &input.word)?;
            match method {
                Method::Partitions => {
                    let opts = PairingOptions {
                        match_mode: (*match_mode).into(),
                        max_len: cfg.max_len,
                    };
                    let count = partitions::count_gamma_admissible(&g, &w, &opts)?;
                    Ok(if json {
                        json_line(json!({ "method": "partitions", "moment": count }))
                    } else {
                        line(count)
                    })
                }
                Method::Fock => {
                    let m = FockSpace::new(&g)
                        .with_max_len(cfg.max_len)
                        .vacuum_moment(&w)?;
                    Ok(if json {
                        json_line(json!({ "method": "fock", "moment": m }))
                    } else {
                        line(m)
                    })
                }
                Method::Matrix => {
                    let n = n.ok_or_else(|| Failure::usage("--method matrix requires --N"))?;
                    let s = if *constant_signs {
                        SignFunction::constant(&g)
                    } else {
                        SignFunction::seeded(&g, *p, *seed)?
                    };
                    let m = spinmodel::moment_s_word(&s, &w, n, cfg.max_iterations)?;
                    Ok(if json {
                        json_line(json!({
                            "method": "matrix",
                            "N": n,
                            "numerator": m.numerator.to_string(),
                            "denominator": m.denominator.to_string(),
                            "value": m.to_f64(),
                        }))
                    } else {
                        line(m.ratio())
                    })
                }
            }
        }
        Command::Limit {
            input,
            theta,
            match_mode,
        } => {
            if !(-1.0..=1.0).contains(theta) {
                return Err(Failure::usage(format!(
                    "--theta {theta} is outside [-1, 1]"
                )));
            }
            let g = load_graph(&input.graph)?;
            let w = LabeledWord::parse(&g, &input.word)?;
            let opts = PairingOptions {
                match_mode: (*match_mode).into(),
                max_len: cfg.max_len,
            };
            let m = partitions::limit_moment(&g, &w, *theta, &opts)?;
            Ok(if json {
                json_line(json!({ "theta": theta, "limit": m }))
            } else {
                line(m)
            })
        }
        Command::Compare {
            input,
            n_list,
            seeds,
            p,
        } => {
            check_p(*p)?;
            let g = load_graph(&input.graph)?;
            let w = LabeledWord::parse(&g, &input.word)?;
            let rows = cltlab::convergence_sweep(&g, &w, n_list, seeds, *p, cfg.max_iterations)?;
            let conjectured = *p != 0.5;
            if json {
                Ok(json_line(json!({
                    "rows": rows,
                    "exact_is_conjectured": conjectured,
                })))
            } else {
                let mut text = to_csv(&rows)?;
                if conjectured {
                    text.push_str("# exact column is the conjectured limit for p != 0.5\n");
                }
                Ok(text)
            }
        }
        Command::Clt { command } => match command {
            CltCommand::TEstimate {
                input,
                pairing,
                n,
                seed,
                p,
            } => {
                check_p(*p)?;
                let g = load_graph(&input.graph)?;
                let w = Word::parse(&g, &input.word)?;
                let pairing = PairPartition::parse(w.len(), pairing)?;
                let s = SignFunction::seeded(&g, *p, *seed)?;
                let x = cltlab::t_estimate(&s, &g, &w, &pairing, *n, cfg.max_iterations)?;
                Ok(if json {
                    json_line(json!({ "N": n, "seed": seed, "estimate": x }))
                } else {
                    line(x)
                })
            }
            CltCommand::Variance {
                input,
                pairing,
                m_list,
                samples,
                p,
                seed_base,
            } => {
                check_p(*p)?;
                if *samples < 8 {
                    return Err(Failure::usage("--samples must be at least 8"));
                }
                let g = load_graph(&input.graph)?;
                let w = Word::parse(&g, &input.word)?;
                let pairing = PairPartition::parse(w.len(), pairing)?;
                let report = cltlab::variance_sweep(
                    &g,
                    &w,
                    &pairing,
                    m_list,
                    *samples,
                    *p,
                    *seed_base,
                    cfg.max_iterations,
                )?;
                let degenerate = report.fit == SlopeFit::Degenerate;
                if json {
                    Ok(json_line(json!({
                        "rows": report.rows,
                        "slope": report.fit.value(),
                        "degenerate_fit": degenerate,
                    })))
                } else {
                    let mut text = to_csv(&report.rows)?;
                    text.push_str(&format!("# slope={}\n", report.fit.value()));
                    Ok(text)
                }
            }
        },
        Command::SignDump { graph, n, seed, p } => {
            check_p(*p)?;
            let g = load_graph(graph)?;
            let s = SignFunction::seeded(&g, *p, *seed)?;
            let universe = 2u128 * *n as u128 * g.len() as u128;
            let pairs = universe * universe.saturating_sub(1) / 2;
            if pairs > cfg.max_iterations {
                return Err(Error::BudgetExceeded {
                    what: "sign table",
                    needed: pairs,
                    limit: cfg.max_iterations,
                }
                .into());
            }
            let table = spinmodel::sign_table(&s, *n);
            Ok(json_line(json!({
                "N": n,
                "seed": seed,
                "p": p,
                "graph": g.to_document(),
                "signs": table,
            })))
        }
    }
}

fn to_csv<T: serde::Serialize>(rows: &[T]) -> Result<String, Failure> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row).map_err(|e| Failure {
            code: EXIT_INVALID_INPUT,
            message: format!("csv: {e}"),
        })?;
    }
    let bytes = writer.into_inner().map_err(|e| Failure {
        code: EXIT_INVALID_INPUT,
        message: format!("csv: {e}"),
    })?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
