//! Label-respecting pair partitions of a word, their crossings, and the
//! closed-form moments they determine.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, Vertex};
use crate::words::Word;

/// Default bound on the word length accepted by the enumerators.
pub const DEFAULT_MAX_LEN: usize = 16;

/// One of the two orthonormal directions of the one-particle space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Spin {
    One,
    Two,
}

impl Spin {
    pub fn value(self) -> u8 {
        match self {
            Spin::One => 1,
            Spin::Two => 2,
        }
    }
}

impl FromStr for Spin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(Spin::One),
            "2" => Ok(Spin::Two),
            other => Err(Error::InvalidSpin(other.to_string())),
        }
    }
}

/// A generator `g_{spin, vertex}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub vertex: Vertex,
    pub spin: Spin,
}

impl Label {
    pub fn new(vertex: Vertex, spin: Spin) -> Self {
        Label { vertex, spin }
    }
}

/// A word of generators `d_1 … d_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LabeledWord(Vec<Label>);

impl LabeledWord {
    pub fn new(letters: Vec<Label>) -> Self {
        LabeledWord(letters)
    }

    /// Parses whitespace-separated `vertex[:spin]` tokens; spin defaults to 1.
    pub fn parse(g: &SimplicialGraph, text: &str) -> Result<Self> {
        text.split_whitespace()
            .map(|token| {
                let (name, spin) = match token.split_once(':') {
                    Some((name, spin)) => (name, spin.parse()?),
                    None => (token, Spin::One),
                };
                Ok(Label::new(g.vertex(name)?, spin))
            })
            .collect::<Result<Vec<_>>>()
            .map(LabeledWord)
    }

    /// Every letter of `word` with the given spin.
    pub fn uniform(word: &Word, spin: Spin) -> Self {
        LabeledWord(
            word.letters()
                .iter()
                .map(|&v| Label::new(v, spin))
                .collect(),
        )
    }

    pub fn letters(&self) -> &[Label] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The underlying vertex word.
    pub fn vertex_word(&self) -> Word {
        Word::new(self.0.iter().map(|l| l.vertex).collect())
    }

    pub fn display<'a>(&'a self, g: &'a SimplicialGraph) -> LabeledWordDisplay<'a> {
        LabeledWordDisplay {
            word: self,
            graph: g,
        }
    }
}

pub struct LabeledWordDisplay<'a> {
    word: &'a LabeledWord,
    graph: &'a SimplicialGraph,
}

impl fmt::Display for LabeledWordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.word.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}:{}", self.graph.name(l.vertex), l.spin.value())?;
        }
        Ok(())
    }
}

/// A perfect matching of positions, stored 0-based as `(opener, closer)`
/// pairs sorted by opener.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairPartition {
    pairs: Vec<(usize, usize)>,
}

impl PairPartition {
    /// Validates that `pairs` (0-based, either orientation) perfectly match
    /// the positions `0..n`.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            let (e, z) = (a.min(b), a.max(b));
            if e == z {
                return Err(Error::MalformedPartition(format!(
                    "position {} paired with itself",
                    e + 1
                )));
            }
            if z >= n {
                return Err(Error::MalformedPartition(format!(
                    "position {} outside a word of length {n}",
                    z + 1
                )));
            }
            for p in [e, z] {
                if std::mem::replace(&mut seen[p], true) {
                    return Err(Error::MalformedPartition(format!(
                        "position {} used twice",
                        p + 1
                    )));
                }
            }
            out.push((e, z));
        }
        if let Some(p) = seen.iter().position(|&s| !s) {
            return Err(Error::MalformedPartition(format!(
                "position {} is unpaired",
                p + 1
            )));
        }
        out.sort_unstable();
        Ok(PairPartition { pairs: out })
    }

    /// Parses `"e1-z1,e2-z2,…"` with 1-based positions.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let parsed = item.split_once('-').and_then(|(a, b)| {
                let a: usize = a.trim().parse().ok()?;
                let b: usize = b.trim().parse().ok()?;
                Some((a.checked_sub(1)?, b.checked_sub(1)?))
            });
            match parsed {
                Some(pair) => pairs.push(pair),
                None => {
                    return Err(Error::MalformedPartition(format!(
                        "cannot parse pair {item:?}"
                    )))
                }
            }
        }
        Self::from_pairs(n, &pairs)
    }

    /// 0-based pairs sorted by opener.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Number of matched positions.
    pub fn size(&self) -> usize {
        2 * self.pairs.len()
    }

    /// Ordered block pairs `(k, l)` (0-based block indices) with
    /// `e_k < e_l < z_k < z_l`.
    pub fn crossings(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (k, &(ek, zk)) in self.pairs.iter().enumerate() {
            for (l, &(el, zl)) in self.pairs.iter().enumerate().skip(k + 1) {
                if ek < el && el < zk && zk < zl {
                    out.push((k, l));
                }
            }
        }
        out
    }
}

impl fmt::Display for PairPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (e, z)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}-{}", e + 1, z + 1)?;
        }
        Ok(())
    }
}

/// Which letters may be paired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MatchMode {
    /// Equal vertex and equal spin.
    #[default]
    Label,
    /// Equal vertex only.
    Vertex,
}

impl FromStr for MatchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "label" => Ok(MatchMode::Label),
            "vertex" => Ok(MatchMode::Vertex),
            other => Err(Error::Parse(format!("unknown match mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairingOptions {
    pub match_mode: MatchMode,
    pub max_len: usize,
}

impl Default for PairingOptions {
    fn default() -> Self {
        PairingOptions {
            match_mode: MatchMode::Label,
            max_len: DEFAULT_MAX_LEN,
        }
    }
}

impl PairingOptions {
    fn compatible(&self, a: Label, b: Label) -> bool {
        match self.match_mode {
            MatchMode::Label => a == b,
            MatchMode::Vertex => a.vertex == b.vertex,
        }
    }
}

/// Crossing sets of a pairing; entries are 1-based block indices `(k, l)`
/// with blocks numbered by their opening position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossings {
    pub all: Vec<(usize, usize)>,
    pub gamma: Vec<(usize, usize)>,
}

/// Receives the pairs of a complete pairing and its Γ-crossing count.
type Visitor<'a> = dyn FnMut(&[(usize, usize)], usize) + 'a;

/// Depth-first walk over all compatible pairings. The visitor receives the
/// (unsorted) pairs and the number of Γ-crossings. Branches whose Γ-crossing
/// count exceeds `max_gamma` are pruned.
fn walk_pairings(
    g: &SimplicialGraph,
    w: &LabeledWord,
    opts: &PairingOptions,
    max_gamma: usize,
    visit: &mut Visitor,
) -> Result<()> {
    let n = w.len();
    if n > opts.max_len {
        return Err(Error::SizeLimit {
            len: n,
            limit: opts.max_len,
        });
    }
    if n % 2 == 1 {
        return Ok(());
    }
    let mut state = Walk {
        g,
        letters: w.letters(),
        opts,
        max_gamma,
        used: vec![false; n],
        pairs: Vec::with_capacity(n / 2),
    };
    state.step(0, visit);
    Ok(())
}

struct Walk<'a> {
    g: &'a SimplicialGraph,
    letters: &'a [Label],
    opts: &'a PairingOptions,
    max_gamma: usize,
    used: Vec<bool>,
    pairs: Vec<(usize, usize)>,
}

impl Walk<'_> {
    fn step(&mut self, gamma: usize, visit: &mut Visitor) {
        let Some(e) = self.used.iter().position(|&u| !u) else {
            visit(&self.pairs, gamma);
            return;
        };
        self.used[e] = true;
        for z in e + 1..self.letters.len() {
            if self.used[z] || !self.opts.compatible(self.letters[e], self.letters[z]) {
                continue;
            }
            // Existing pairs open before `e`; a pair (e', z') crosses the new
            // one iff e < z' < z.
            let added = self
                .pairs
                .iter()
                .filter(|&&(e2, z2)| {
                    e < z2
                        && z2 < z
                        && !self
                            .g
                            .is_edge(self.letters[e2].vertex, self.letters[e].vertex)
                })
                .count();
            if gamma + added > self.max_gamma {
                continue;
            }
            self.used[z] = true;
            self.pairs.push((e, z));
            self.step(gamma + added, visit);
            self.pairs.pop();
            self.used[z] = false;
        }
        self.used[e] = false;
    }
}

/// All pairings whose paired letters are compatible under the match mode,
/// in lexicographic order of their canonical presentation.
pub fn enumerate_pairings(
    g: &SimplicialGraph,
    w: &LabeledWord,
    opts: &PairingOptions,
) -> Result<Vec<PairPartition>> {
    let mut out = Vec::new();
    walk_pairings(g, w, opts, usize::MAX, &mut |pairs, _| {
        out.push(PairPartition {
            pairs: pairs.to_vec(),
        })
    })?;
    out.sort();
    Ok(out)
}

/// The crossing set `I` and its Γ-part `I_Γ` (crossings between blocks whose
/// vertices are not adjacent).
pub fn gamma_crossing_pairs(
    g: &SimplicialGraph,
    w: &LabeledWord,
    p: &PairPartition,
) -> Result<Crossings> {
    if p.size() != w.len() {
        return Err(Error::MalformedPartition(format!(
            "pairing covers {} positions but the word has {}",
            p.size(),
            w.len()
        )));
    }
    let all = p.crossings();
    let letters = w.letters();
    let gamma = all
        .iter()
        .copied()
        .filter(|&(k, l)| {
            let vk = letters[p.pairs[k].0].vertex;
            let vl = letters[p.pairs[l].0].vertex;
            !g.is_edge(vk, vl)
        })
        .map(|(k, l)| (k + 1, l + 1))
        .collect();
    Ok(Crossings {
        all: all.into_iter().map(|(k, l)| (k + 1, l + 1)).collect(),
        gamma,
    })
}

/// Number of compatible pairings with no Γ-crossing.
pub fn count_gamma_admissible(
    g: &SimplicialGraph,
    w: &LabeledWord,
    opts: &PairingOptions,
) -> Result<u64> {
    let mut count = 0u64;
    walk_pairings(g, w, opts, 0, &mut |_, _| count += 1)?;
    Ok(count)
}

/// Number of compatible pairings, crossing or not.
pub fn count_pairings(g: &SimplicialGraph, w: &LabeledWord, opts: &PairingOptions) -> Result<u64> {
    let mut count = 0u64;
    walk_pairings(g, w, opts, usize::MAX, &mut |_, _| count += 1)?;
    Ok(count)
}

/// `Σ_P θ^{#I_Γ(P)}` over compatible pairings, with `θ⁰ = 1`.
pub fn limit_moment(
    g: &SimplicialGraph,
    w: &LabeledWord,
    theta: f64,
    opts: &PairingOptions,
) -> Result<f64> {
    if !(-1.0..=1.0).contains(&theta) {
        return Err(Error::Domain(format!("theta = {theta} is outside [-1, 1]")));
    }
    // Accumulate by crossing count so the sum is independent of visit order.
    let mut by_crossings: Vec<u64> = Vec::new();
    walk_pairings(g, w, opts, usize::MAX, &mut |_, gamma| {
        if by_crossings.len() <= gamma {
            by_crossings.resize(gamma + 1, 0);
        }
        by_crossings[gamma] += 1;
    })?;
    Ok(by_crossings
        .iter()
        .enumerate()
        .map(|(k, &c)| c as f64 * theta.powi(k as i32))
        .sum())
}
