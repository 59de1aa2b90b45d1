//! Exact simulation of creation, annihilation and field operators on the
//! graph-product Fock space.
//!
//! A basis vector is a sequence of *blocks*. Each block belongs to one vertex
//! `v` and holds a nonempty elementary tensor `f_{i_1} ⊗ … ⊗ f_{i_k}` of the
//! vertex Fock space with the vacuum removed. Blocks of adjacent vertices
//! commute, so the sequence is only defined up to such swaps; it is stored in
//! lexicographic normal form over blocks. Collapsing each block to its vertex
//! always gives a reduced word, so at most one block of any vertex can be
//! moved to the front.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, Vertex};
use crate::partitions::{Label, LabeledWord, Spin, DEFAULT_MAX_LEN};
use crate::words::lex_normal_form;

pub type FockLetter = Label;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Block {
    vertex: Vertex,
    spins: Vec<Spin>,
}

/// A canonical basis vector. The empty word is the vacuum `Ω`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FockBasisWord {
    blocks: Vec<Block>,
}

impl FockBasisWord {
    pub fn vacuum() -> Self {
        FockBasisWord::default()
    }

    pub fn is_vacuum(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Letters in stored order.
    pub fn letters(&self) -> impl Iterator<Item = FockLetter> + '_ {
        self.blocks
            .iter()
            .flat_map(|b| b.spins.iter().map(|&s| Label::new(b.vertex, s)))
    }

    /// Total tensor degree.
    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.spins.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Vertex of each block, in order.
    pub fn symbol(&self) -> Vec<Vertex> {
        self.blocks.iter().map(|b| b.vertex).collect()
    }

    pub fn display<'a>(&'a self, g: &'a SimplicialGraph) -> impl fmt::Display + 'a {
        struct D<'a>(&'a FockBasisWord, &'a SimplicialGraph);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.0.is_vacuum() {
                    return f.write_str("Ω");
                }
                for (i, l) in self.0.letters().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{}:{}", self.1.name(l.vertex), l.spin.value())?;
                }
                Ok(())
            }
        }
        D(self, g)
    }
}

/// Finite integer combination of canonical basis words without zero terms.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FockState {
    terms: BTreeMap<FockBasisWord, i64>,
}

impl FockState {
    pub fn zero() -> Self {
        FockState::default()
    }

    /// `Ω` with coefficient one.
    pub fn vacuum() -> Self {
        Self::basis(FockBasisWord::vacuum())
    }

    pub fn basis(word: FockBasisWord) -> Self {
        FockState {
            terms: BTreeMap::from([(word, 1)]),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &FockBasisWord) -> i64 {
        self.terms.get(word).copied().unwrap_or(0)
    }

    pub fn vacuum_coefficient(&self) -> i64 {
        self.coefficient(&FockBasisWord::vacuum())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockBasisWord, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Inner product; basis words are orthonormal.
    pub fn inner(&self, other: &FockState) -> i64 {
        self.terms
            .iter()
            .map(|(w, c)| c * other.coefficient(w))
            .sum()
    }

    fn add(&mut self, word: FockBasisWord, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(word);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn sum(&self, other: &FockState) -> FockState {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add(w.clone(), c);
        }
        out
    }
}

/// Operator action on the Fock space of one graph.
///
/// Canonical forms order commuting blocks by a vertex rank, which defaults to
/// the lexicographic vertex order. Moments do not depend on the rank.
#[derive(Debug, Clone)]
pub struct FockSpace<'g> {
    graph: &'g SimplicialGraph,
    rank: Vec<usize>,
    max_len: usize,
}

impl<'g> FockSpace<'g> {
    pub fn new(graph: &'g SimplicialGraph) -> Self {
        FockSpace {
            graph,
            rank: (0..graph.len()).collect(),
            max_len: DEFAULT_MAX_LEN,
        }
    }

    /// Canonical forms follow `order` (a permutation of all vertices).
    pub fn with_vertex_order(graph: &'g SimplicialGraph, order: &[Vertex]) -> Result<Self> {
        let mut rank = vec![usize::MAX; graph.len()];
        for (r, v) in order.iter().enumerate() {
            if v.index() >= graph.len() || rank[v.index()] != usize::MAX {
                return Err(Error::Domain(
                    "vertex order must be a permutation of the graph's vertices".into(),
                ));
            }
            rank[v.index()] = r;
        }
        if rank.contains(&usize::MAX) {
            return Err(Error::Domain("vertex order must list every vertex".into()));
        }
        Ok(FockSpace {
            graph,
            rank,
            max_len: DEFAULT_MAX_LEN,
        })
    }

    pub fn with_max_len(mut self, max_len: usize) -> Self {
        self.max_len = max_len;
        self
    }

    pub fn graph(&self) -> &SimplicialGraph {
        self.graph
    }

    fn canonicalize(&self, blocks: Vec<Block>) -> FockBasisWord {
        let g = self.graph;
        FockBasisWord {
            blocks: lex_normal_form(
                blocks,
                |a, b| g.is_edge(a.vertex, b.vertex),
                |b| self.rank[b.vertex.index()],
            ),
        }
    }

    /// Index of the unique block of `v` preceded only by blocks that commute
    /// with `v`.
    fn front_block(&self, word: &FockBasisWord, v: Vertex) -> Option<usize> {
        let candidates: Vec<usize> = word
            .blocks
            .iter()
            .enumerate()
            .filter(|(i, b)| {
                b.vertex == v
                    && word.blocks[..*i]
                        .iter()
                        .all(|x| self.graph.is_edge(x.vertex, v))
            })
            .map(|(i, _)| i)
            .collect();
        assert!(
            candidates.len() <= 1,
            "basis word has {} front-movable blocks of one vertex",
            candidates.len()
        );
        candidates.first().copied()
    }

    /// Creation on a basis word: prepend to the front-movable block of the
    /// letter's vertex, or open a new block in front.
    pub fn create_basis(&self, word: &FockBasisWord, letter: FockLetter) -> FockBasisWord {
        let mut blocks = word.blocks.clone();
        match self.front_block(word, letter.vertex) {
            Some(i) => blocks[i].spins.insert(0, letter.spin),
            None => blocks.insert(
                0,
                Block {
                    vertex: letter.vertex,
                    spins: vec![letter.spin],
                },
            ),
        }
        self.canonicalize(blocks)
    }

    /// Annihilation on a basis word; `None` is the zero vector.
    pub fn annihilate_basis(
        &self,
        word: &FockBasisWord,
        letter: FockLetter,
    ) -> Option<FockBasisWord> {
        let i = self.front_block(word, letter.vertex)?;
        if word.blocks[i].spins[0] != letter.spin {
            return None;
        }
        let mut blocks = word.blocks.clone();
        blocks[i].spins.remove(0);
        if blocks[i].spins.is_empty() {
            blocks.remove(i);
        }
        Some(self.canonicalize(blocks))
    }

    pub fn apply_create(&self, state: &FockState, letter: FockLetter) -> FockState {
        let mut out = FockState::zero();
        for (w, c) in state.terms() {
            out.add(self.create_basis(w, letter), c);
        }
        out
    }

    pub fn apply_annihilate(&self, state: &FockState, letter: FockLetter) -> FockState {
        let mut out = FockState::zero();
        for (w, c) in state.terms() {
            if let Some(next) = self.annihilate_basis(w, letter) {
                out.add(next, c);
            }
        }
        out
    }

    /// Field operator `g = a* + a`.
    pub fn apply_field(&self, state: &FockState, letter: FockLetter) -> FockState {
        let mut out = FockState::zero();
        for (w, c) in state.terms() {
            out.add(self.create_basis(w, letter), c);
            if let Some(next) = self.annihilate_basis(w, letter) {
                out.add(next, c);
            }
        }
        out
    }

    /// Builds a basis word by creating `letters` right to left on `Ω`.
    pub fn basis_from_letters(&self, letters: &[FockLetter]) -> FockBasisWord {
        letters
            .iter()
            .rev()
            .fold(FockBasisWord::vacuum(), |w, &l| self.create_basis(&w, l))
    }

    /// `⟨d_1 ⋯ d_n Ω, Ω⟩` for the field operators of `word`.
    pub fn vacuum_moment(&self, word: &LabeledWord) -> Result<i64> {
        if word.len() > self.max_len {
            return Err(Error::SizeLimit {
                len: word.len(),
                limit: self.max_len,
            });
        }
        let mut state = FockState::vacuum();
        for (k, &letter) in word.letters().iter().enumerate().rev() {
            state = self.apply_field(&state, letter);
            // `k` operators remain; longer tensors cannot return to Ω.
            state.terms.retain(|w, _| w.len() <= k);
            if state.is_zero() {
                break;
            }
        }
        Ok(state.vacuum_coefficient())
    }
}

/// Convenience wrapper over [`FockSpace::vacuum_moment`] with default order.
pub fn vacuum_moment(g: &SimplicialGraph, word: &LabeledWord) -> Result<i64> {
    FockSpace::new(g).vacuum_moment(word)
}
