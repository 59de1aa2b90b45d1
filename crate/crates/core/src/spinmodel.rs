//! Finite mixed-spin matrix model.
//!
//! Generators `x_ℓ`, `ℓ = (i, v)`, satisfy `x_ℓ² = 1` and
//! `x_ℓ x_m = s(ℓ, m) x_m x_ℓ` for a sign function `s`. The ordered monomials
//! `x_A` (product over `A` in increasing generator order) form an orthonormal
//! basis for the trace `φ(x_A) = δ_{A,∅}`, and `b_ℓ = a*_ℓ + a_ℓ` acts as left
//! multiplication by `x_ℓ`. Everything here is exact integer arithmetic.

use std::collections::{BTreeMap, HashMap};

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, Vertex};
use crate::partitions::{LabeledWord, Spin};

/// Default cap on `N^n` for [`moment_s_word`].
pub const DEFAULT_ITERATION_BUDGET: u128 = 100_000_000;

/// Generator `(i, v)`. Ordered by vertex first, then index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorIndex {
    pub vertex: Vertex,
    pub index: u32,
}

impl GeneratorIndex {
    pub fn new(index: u32, vertex: Vertex) -> Self {
        GeneratorIndex { vertex, index }
    }

    fn code(self) -> u64 {
        ((self.vertex.0 as u64) << 32) | self.index as u64
    }

    /// Generator feeding `S_{N,v,spin}`: spin 1 uses even indices, spin 2 odd.
    pub fn for_spin(i: u32, vertex: Vertex, spin: Spin) -> Self {
        let index = match spin {
            Spin::One => 2 * i,
            Spin::Two => 2 * i + 1,
        };
        GeneratorIndex { vertex, index }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SignKind {
    /// Independent `±1` per unordered generator pair, `+1` with probability
    /// `p`, derived from `seed` by a counter-based hash.
    Seeded { p: f64, seed: u64 },
    /// `+1` for every pair of distinct generators.
    Constant,
    /// Listed values; unlisted pairs default to `+1`. Keys are stored with
    /// the smaller generator first.
    Explicit(BTreeMap<(GeneratorIndex, GeneratorIndex), i8>),
}

/// Symmetric `±1` commutation data. Always `-1` on the diagonal and `+1`
/// between generators whose vertices are adjacent.
#[derive(Debug, Clone, PartialEq)]
pub struct SignFunction {
    graph: SimplicialGraph,
    kind: SignKind,
}

impl SignFunction {
    pub fn seeded(graph: &SimplicialGraph, p: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain(format!("p = {p} is outside [0, 1]")));
        }
        Ok(SignFunction {
            graph: graph.clone(),
            kind: SignKind::Seeded { p, seed },
        })
    }

    pub fn constant(graph: &SimplicialGraph) -> Self {
        SignFunction {
            graph: graph.clone(),
            kind: SignKind::Constant,
        }
    }

    pub fn explicit(
        graph: &SimplicialGraph,
        entries: impl IntoIterator<Item = ((GeneratorIndex, GeneratorIndex), i8)>,
    ) -> Result<Self> {
        let mut table = BTreeMap::new();
        for ((a, b), value) in entries {
            if value != 1 && value != -1 {
                return Err(Error::Domain(format!("sign value {value} is not ±1")));
            }
            if a == b {
                return Err(Error::Domain("diagonal signs are fixed to -1".into()));
            }
            table.insert((a.min(b), a.max(b)), value);
        }
        Ok(SignFunction {
            graph: graph.clone(),
            kind: SignKind::Explicit(table),
        })
    }

    pub fn graph(&self) -> &SimplicialGraph {
        &self.graph
    }

    pub fn kind(&self) -> &SignKind {
        &self.kind
    }

    pub fn sign(&self, a: GeneratorIndex, b: GeneratorIndex) -> i8 {
        if a == b {
            return -1;
        }
        if self.graph.is_edge(a.vertex, b.vertex) {
            return 1;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        match &self.kind {
            SignKind::Constant => 1,
            SignKind::Explicit(table) => table.get(&(lo, hi)).copied().unwrap_or(1),
            SignKind::Seeded { p, seed } => {
                let h = mix64(mix64(mix64(*seed ^ 0x6a09_e667_f3bc_c909) ^ lo.code()) ^ hi.code());
                // 53 high bits give a uniform double in [0, 1).
                let u = (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
                if u < *p {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// Sign lookup by vertex names.
    pub fn sign_query(&self, i: u32, v: &str, j: u32, w: &str) -> Result<i8> {
        let a = GeneratorIndex::new(i, self.graph.vertex(v)?);
        let b = GeneratorIndex::new(j, self.graph.vertex(w)?);
        Ok(self.sign(a, b))
    }
}

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Basis monomial `x_A`; members kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SubsetState(Vec<GeneratorIndex>);

impl SubsetState {
    pub fn empty() -> Self {
        SubsetState::default()
    }

    pub fn from_members(mut members: Vec<GeneratorIndex>) -> Self {
        members.sort_unstable();
        members.dedup();
        SubsetState(members)
    }

    pub fn members(&self) -> &[GeneratorIndex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, g: GeneratorIndex) -> bool {
        self.0.binary_search(&g).is_ok()
    }
}

/// `x_ℓ · x_A = sign · x_{A'}` where `A' = A Δ {ℓ}`.
pub fn left_multiply_generator(
    s: &SignFunction,
    a: &SubsetState,
    l: GeneratorIndex,
) -> (i8, SubsetState) {
    let slot = a.0.partition_point(|&m| m < l);
    let sign = a.0[..slot].iter().fold(1i8, |acc, &m| acc * s.sign(l, m));
    let mut members = a.0.clone();
    if members.get(slot) == Some(&l) {
        members.remove(slot);
    } else {
        members.insert(slot, l);
    }
    (sign, SubsetState(members))
}

/// Integer combination of basis monomials with a formal scale `N^{-k/2}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpinVector {
    terms: HashMap<SubsetState, i128>,
    /// `k` in the overall factor `N^{-k/2}`.
    pub scale_exponent: u32,
}

impl SpinVector {
    pub fn vacuum() -> Self {
        Self::basis(SubsetState::empty(), 1)
    }

    pub fn basis(state: SubsetState, coeff: i128) -> Self {
        let mut v = SpinVector::default();
        v.add(state, coeff);
        v
    }

    pub fn coefficient(&self, state: &SubsetState) -> i128 {
        self.terms.get(state).copied().unwrap_or(0)
    }

    pub fn vacuum_coefficient(&self) -> i128 {
        self.coefficient(&SubsetState::empty())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SubsetState, i128)> {
        self.terms.iter().map(|(a, &c)| (a, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Inner product ignoring scale; basis monomials are orthonormal.
    pub fn inner(&self, other: &SpinVector) -> i128 {
        self.terms().map(|(a, c)| c * other.coefficient(a)).sum()
    }

    fn add(&mut self, state: SubsetState, coeff: i128) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(state.clone()).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&state);
        }
    }

    /// Canonically ordered terms, for deterministic comparison and output.
    pub fn sorted_terms(&self) -> Vec<(SubsetState, i128)> {
        let mut out: Vec<_> = self.terms().map(|(a, c)| (a.clone(), c)).collect();
        out.sort();
        out
    }
}

/// `b_ℓ ψ`.
pub fn apply_b(s: &SignFunction, psi: &SpinVector, l: GeneratorIndex) -> SpinVector {
    let mut out = SpinVector {
        terms: HashMap::with_capacity(psi.len()),
        scale_exponent: psi.scale_exponent,
    };
    for (a, c) in psi.terms() {
        let (sign, next) = left_multiply_generator(s, a, l);
        out.add(next, c * sign as i128);
    }
    out
}

/// Creation branch `a*_ℓ`: nonzero only on monomials without `ℓ`.
pub fn apply_create(s: &SignFunction, psi: &SpinVector, l: GeneratorIndex) -> SpinVector {
    branch(s, psi, l, false)
}

/// Annihilation branch `a_ℓ`: nonzero only on monomials containing `ℓ`.
pub fn apply_annihilate(s: &SignFunction, psi: &SpinVector, l: GeneratorIndex) -> SpinVector {
    branch(s, psi, l, true)
}

fn branch(s: &SignFunction, psi: &SpinVector, l: GeneratorIndex, present: bool) -> SpinVector {
    let mut out = SpinVector {
        terms: HashMap::new(),
        scale_exponent: psi.scale_exponent,
    };
    for (a, c) in psi.terms() {
        if a.contains(l) == present {
            let (sign, next) = left_multiply_generator(s, a, l);
            out.add(next, c * sign as i128);
        }
    }
    out
}

/// `φ(b_{ℓ_1} ⋯ b_{ℓ_n})`, always in `{-1, 0, 1}`.
pub fn vacuum_trace_word(s: &SignFunction, word: &[GeneratorIndex]) -> i64 {
    let mut sign = 1i64;
    let mut state = SubsetState::empty();
    for &l in word.iter().rev() {
        let (x, next) = left_multiply_generator(s, &state, l);
        sign *= x as i64;
        state = next;
    }
    if state.is_empty() {
        sign
    } else {
        0
    }
}

/// Exact moment `numerator / denominator` with `denominator = N^{n/2}` (or 1
/// for odd words, whose moments vanish).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MatrixMoment {
    pub numerator: i128,
    pub denominator: i128,
}

impl MatrixMoment {
    pub fn ratio(&self) -> Ratio<i128> {
        Ratio::new(self.numerator, self.denominator)
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

/// Applies `√N · S_{N,v,spin} = Σ_{i<N} b_{(2i|2i+1), v}`, increasing the
/// scale exponent by one.
pub fn apply_s(
    s: &SignFunction,
    psi: &SpinVector,
    vertex: Vertex,
    spin: Spin,
    n: u32,
) -> SpinVector {
    apply_s_pruned(s, psi, vertex, spin, n, usize::MAX)
}

fn apply_s_pruned(
    s: &SignFunction,
    psi: &SpinVector,
    vertex: Vertex,
    spin: Spin,
    n: u32,
    max_size: usize,
) -> SpinVector {
    let mut out = SpinVector {
        terms: HashMap::with_capacity(psi.len() * n as usize),
        scale_exponent: psi.scale_exponent + 1,
    };
    for (a, c) in psi.terms() {
        for i in 0..n {
            let l = GeneratorIndex::for_spin(i, vertex, spin);
            let (sign, next) = left_multiply_generator(s, a, l);
            if next.len() <= max_size {
                out.add(next, c * sign as i128);
            }
        }
    }
    out
}

/// Exact `φ(S_{N,v_1,σ_1} ⋯ S_{N,v_n,σ_n})`.
///
/// The operators are applied to the vacuum right to left; monomials with more
/// members than operators left to apply are dropped since they cannot return
/// to `x_∅`.
pub fn moment_s_word(
    s: &SignFunction,
    word: &LabeledWord,
    n: usize,
    budget: u128,
) -> Result<MatrixMoment> {
    let has_spin_two = word.letters().iter().any(|l| l.spin == Spin::Two);
    if n == 0 || (n % 2 == 1 && (n != 1 || has_spin_two)) {
        return Err(Error::OddN(n));
    }
    let len = word.len();
    let iterations = (n as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    if iterations > budget {
        return Err(Error::BudgetExceeded {
            what: "N^n iteration",
            needed: iterations,
            limit: budget,
        });
    }
    if len % 2 == 1 {
        return Ok(MatrixMoment {
            numerator: 0,
            denominator: 1,
        });
    }
    let n32 = u32::try_from(n).map_err(|_| Error::Domain(format!("N = {n} is too large")))?;
    let mut psi = SpinVector::vacuum();
    for (k, l) in word.letters().iter().enumerate().rev() {
        psi = apply_s_pruned(s, &psi, l.vertex, l.spin, n32, k);
        if psi.is_empty() {
            break;
        }
    }
    Ok(MatrixMoment {
        numerator: psi.vacuum_coefficient(),
        denominator: (n as i128).pow(len as u32 / 2),
    })
}

/// One realized sign, for audit dumps.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignEntry {
    pub i: u32,
    pub v: String,
    pub j: u32,
    pub w: String,
    pub sign: i8,
}

/// Every unordered pair of distinct generators in `{0..2N-1} × V`, smaller
/// generator first.
pub fn sign_table(s: &SignFunction, n: u32) -> Vec<SignEntry> {
    let g = s.graph();
    let universe: Vec<GeneratorIndex> = g
        .vertices()
        .flat_map(|v| (0..2 * n).map(move |i| GeneratorIndex::new(i, v)))
        .collect();
    let mut out = Vec::new();
    for (k, &a) in universe.iter().enumerate() {
        for &b in &universe[k + 1..] {
            out.push(SignEntry {
                i: a.index,
                v: g.name(a.vertex).to_string(),
                j: b.index,
                w: g.name(b.vertex).to_string(),
                sign: s.sign(a, b),
            });
        }
    }
    out
}
