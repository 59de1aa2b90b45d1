//! Experiments around the central limit theorem for mixed-spin sums:
//! estimators of the limiting pairing weights, convergence sweeps of matrix
//! moments, and variance decay of the weight estimators.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, Vertex};
use crate::partitions::{
    gamma_crossing_pairs, limit_moment, LabeledWord, PairPartition, PairingOptions, Spin,
};
use crate::spinmodel::{moment_s_word, GeneratorIndex, SignFunction};
use crate::words::Word;

/// Default cap on the `N^{n/2}` tuple enumeration of [`t_estimate`].
pub const DEFAULT_TUPLE_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub seed: u64,
    pub estimate: f64,
    #[serde(rename = "exact")]
    pub exact_limit: f64,
    pub abs_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VarianceRow {
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "samples")]
    pub sample_count: usize,
    #[serde(rename = "variance")]
    pub empirical_variance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SlopeFit {
    Slope(f64),
    /// Fewer than three nonzero variances.
    Degenerate,
}

impl SlopeFit {
    /// The fitted slope, or exactly zero for a degenerate fit.
    pub fn value(self) -> f64 {
        match self {
            SlopeFit::Slope(s) => s,
            SlopeFit::Degenerate => 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VarianceReport {
    pub rows: Vec<VarianceRow>,
    pub fit: SlopeFit,
}

type BlockData = (Vec<Vertex>, Vec<(usize, usize)>);

/// Vertex of each block of the pairing and its Γ-crossings as 0-based block
/// index pairs. Rejects pairings that join different vertices.
fn blocks_and_crossings(g: &SimplicialGraph, w: &Word, p: &PairPartition) -> Result<BlockData> {
    let labeled = LabeledWord::uniform(w, Spin::One);
    let crossings = gamma_crossing_pairs(g, &labeled, p)?;
    let letters = w.letters();
    let mut vertices = Vec::with_capacity(p.pairs().len());
    for &(e, z) in p.pairs() {
        if letters[e] != letters[z] {
            return Err(Error::MalformedPartition(format!(
                "positions {} and {} carry different vertices",
                e + 1,
                z + 1
            )));
        }
        vertices.push(letters[e]);
    }
    let gamma = crossings
        .gamma
        .iter()
        .map(|&(k, l)| (k - 1, l - 1))
        .collect();
    Ok((vertices, gamma))
}

/// `X_N = N^{-n/2} Σ_{tuples of class P} Π_{(a,b) ∈ I_Γ(P)} s(i_{e_a}, v_{e_a}, i_{e_b}, v_{e_b})`.
///
/// A tuple is of class `P` when positions share index and vertex exactly
/// when they are paired, so blocks get indices in `0..N`, distinct among
/// blocks of the same vertex.
pub fn t_estimate(
    s: &SignFunction,
    g: &SimplicialGraph,
    w: &Word,
    p: &PairPartition,
    n: usize,
    budget: u128,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("N must be at least 1".into()));
    }
    let (vertices, gamma) = blocks_and_crossings(g, w, p)?;
    let r = vertices.len();
    let tuples = (n as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
    if tuples > budget {
        return Err(Error::BudgetExceeded {
            what: "class tuple",
            needed: tuples,
            limit: budget,
        });
    }
    let n32 = u32::try_from(n).map_err(|_| Error::Domain(format!("N = {n} is too large")))?;
    let clashes: Vec<(usize, usize)> = (0..r)
        .flat_map(|a| (a + 1..r).map(move |b| (a, b)))
        .filter(|&(a, b)| vertices[a] == vertices[b])
        .collect();
    let mut idx = vec![0u32; r];
    let mut total: i64 = 0;
    'tuples: loop {
        if clashes.iter().all(|&(a, b)| idx[a] != idx[b]) {
            let mut prod = 1i64;
            for &(a, b) in &gamma {
                prod *= s.sign(
                    GeneratorIndex::new(idx[a], vertices[a]),
                    GeneratorIndex::new(idx[b], vertices[b]),
                ) as i64;
            }
            total += prod;
        }
        for slot in idx.iter_mut().rev() {
            *slot += 1;
            if *slot < n32 {
                continue 'tuples;
            }
            *slot = 0;
        }
        break;
    }
    Ok(total as f64 / (n as f64).powi(r as i32))
}

/// Matrix moments under seeded signs against the pairing-sum limit with
/// `θ = 2p − 1`, one row per `(N, seed)` in input order.
pub fn convergence_sweep(
    g: &SimplicialGraph,
    w: &LabeledWord,
    n_list: &[usize],
    seeds: &[u64],
    p: f64,
    budget: u128,
) -> Result<Vec<SweepRow>> {
    let exact = limit_moment(g, w, 2.0 * p - 1.0, &PairingOptions::default())?;
    let mut rows = Vec::with_capacity(n_list.len() * seeds.len());
    for &n in n_list {
        for &seed in seeds {
            let s = SignFunction::seeded(g, p, seed)?;
            let estimate = moment_s_word(&s, w, n, budget)?.to_f64();
            rows.push(SweepRow {
                n,
                seed,
                estimate,
                exact_limit: exact,
                abs_err: (estimate - exact).abs(),
            });
        }
    }
    Ok(rows)
}

/// Unbiased sample variance.
fn sample_variance(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
}

/// Least-squares slope of `log variance` against `log M`, skipping zero
/// variances.
pub fn fit_log_log_slope(rows: &[VarianceRow]) -> SlopeFit {
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.empirical_variance > 0.0)
        .map(|r| ((r.m as f64).ln(), r.empirical_variance.ln()))
        .collect();
    if points.len() < 3 {
        return SlopeFit::Degenerate;
    }
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return SlopeFit::Degenerate;
    }
    SlopeFit::Slope(sxy / sxx)
}

/// Empirical variance of [`t_estimate`] over seeds `seed_base + k`,
/// `k < sample_count`, for each `M`, with the fitted log-log slope.
#[allow(clippy::too_many_arguments)]
pub fn variance_sweep(
    g: &SimplicialGraph,
    w: &Word,
    p_pairing: &PairPartition,
    m_list: &[usize],
    sample_count: usize,
    p: f64,
    seed_base: u64,
    budget: u128,
) -> Result<VarianceReport> {
    if sample_count < 8 {
        return Err(Error::Domain(format!(
            "sample count {sample_count} is below the minimum of 8"
        )));
    }
    let mut rows = Vec::with_capacity(m_list.len());
    for &m in m_list {
        let samples = (0..sample_count as u64)
            .map(|k| {
                let s = SignFunction::seeded(g, p, seed_base.wrapping_add(k))?;
                t_estimate(&s, g, w, p_pairing, m, budget)
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(VarianceRow {
            m,
            sample_count,
            empirical_variance: sample_variance(&samples),
        });
    }
    let fit = fit_log_log_slope(&rows);
    Ok(VarianceReport { rows, fit })
}
