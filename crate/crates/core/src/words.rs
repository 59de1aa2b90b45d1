//! Word combinatorics of graph products.
//!
//! Two words are equivalent when one can be turned into the other by
//!
//! * **I**: replacing two adjacent equal letters by one (or the reverse), and
//! * **II**: swapping two adjacent letters joined by an edge.
//!
//! Every class contains reduced words, and all reduced words of a class are
//! related by swaps alone. [`normalize`] picks the lexicographically least
//! reduced word of the class as its canonical (minimal) representative.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, Vertex};

/// A finite string of vertices, possibly empty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Vertex>);

impl Word {
    pub fn new(letters: Vec<Vertex>) -> Self {
        Word(letters)
    }

    /// Parses whitespace-separated vertex tokens. The empty string is the
    /// empty word.
    pub fn parse(g: &SimplicialGraph, text: &str) -> Result<Self> {
        text.split_whitespace()
            .map(|t| g.vertex(t))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn letters(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn display<'a>(&'a self, g: &'a SimplicialGraph) -> WordDisplay<'a> {
        WordDisplay {
            word: self,
            graph: g,
        }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    graph: &'a SimplicialGraph,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &v) in self.word.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.graph.name(v))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    /// Delete one of two adjacent equal letters.
    CancelI,
    /// Swap two adjacent letters joined by an edge.
    SwapII,
}

impl MoveKind {
    fn label(self) -> &'static str {
        match self {
            MoveKind::CancelI => "CancelI",
            MoveKind::SwapII => "SwapII",
        }
    }
}

/// A rewriting move acting on positions `position` and `position + 1`
/// (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub kind: MoveKind,
    pub position: usize,
}

impl Move {
    pub fn cancel(position: usize) -> Self {
        Move {
            kind: MoveKind::CancelI,
            position,
        }
    }

    pub fn swap(position: usize) -> Self {
        Move {
            kind: MoveKind::SwapII,
            position,
        }
    }
}

/// True iff every repeated letter is separated by a letter outside its link.
pub fn is_reduced(g: &SimplicialGraph, w: &Word) -> bool {
    find_cancellation(g, w.letters()).is_none()
}

/// First pair `(i, j)`, `i < j`, of equal letters with everything strictly
/// between them in the link of that letter.
fn find_cancellation(g: &SimplicialGraph, letters: &[Vertex]) -> Option<(usize, usize)> {
    for (i, &v) in letters.iter().enumerate() {
        for (j, &u) in letters.iter().enumerate().skip(i + 1) {
            if u == v {
                return Some((i, j));
            }
            if !g.is_edge(v, u) {
                break;
            }
        }
    }
    None
}

pub fn apply_move(g: &SimplicialGraph, w: &Word, m: Move) -> Result<Word> {
    let len = w.len();
    if m.position == 0 || m.position >= len {
        return Err(Error::IndexOutOfRange {
            position: m.position,
            len,
        });
    }
    let i = m.position - 1;
    let (a, b) = (w.0[i], w.0[i + 1]);
    let applicable = match m.kind {
        MoveKind::CancelI => a == b,
        MoveKind::SwapII => g.is_edge(a, b),
    };
    if !applicable {
        return Err(Error::MoveNotApplicable {
            kind: m.kind.label(),
            position: m.position,
        });
    }
    let mut letters = w.0.clone();
    match m.kind {
        MoveKind::CancelI => {
            letters.remove(i + 1);
        }
        MoveKind::SwapII => letters.swap(i, i + 1),
    }
    Ok(Word(letters))
}

/// All moves applicable to `w`.
pub fn applicable_moves(g: &SimplicialGraph, w: &Word) -> Vec<Move> {
    let mut moves = Vec::new();
    for (i, pair) in w.0.windows(2).enumerate() {
        if pair[0] == pair[1] {
            moves.push(Move::cancel(i + 1));
        } else if g.is_edge(pair[0], pair[1]) {
            moves.push(Move::swap(i + 1));
        }
    }
    moves
}

/// Lexicographic normal form of a sequence modulo commutation of adjacent
/// items: repeatedly extract the smallest item (by `key`) that commutes with
/// everything in front of it.
///
/// `commutes` must be symmetric and false for items sharing a key.
pub(crate) fn lex_normal_form<T, K: Ord>(
    mut items: Vec<T>,
    commutes: impl Fn(&T, &T) -> bool,
    key: impl Fn(&T) -> K,
) -> Vec<T> {
    let mut out = Vec::with_capacity(items.len());
    while !items.is_empty() {
        let mut best: Option<usize> = None;
        for j in 0..items.len() {
            let movable = items[..j].iter().all(|x| commutes(x, &items[j]));
            if movable && best.is_none_or(|b| key(&items[j]) < key(&items[b])) {
                best = Some(j);
            }
        }
        // The first item is always movable.
        out.push(items.remove(best.unwrap_or(0)));
    }
    out
}

/// Merges cancellable letter pairs until the word is reduced.
pub fn reduce(g: &SimplicialGraph, w: &Word) -> Word {
    let mut letters = w.0.clone();
    while let Some((_, j)) = find_cancellation(g, &letters) {
        letters.remove(j);
    }
    Word(letters)
}

/// Canonical representative: the lexicographically least reduced word in the
/// class of `w`.
pub fn normalize(g: &SimplicialGraph, w: &Word) -> Word {
    normalize_with_rank(g, w, |v| v.index())
}

/// As [`normalize`], ordering vertices by `rank` instead of by token.
pub fn normalize_with_rank<K: Ord>(
    g: &SimplicialGraph,
    w: &Word,
    rank: impl Fn(Vertex) -> K,
) -> Word {
    let reduced = reduce(g, w);
    Word(lex_normal_form(
        reduced.0,
        |&a, &b| g.is_edge(a, b),
        |&v| rank(v),
    ))
}

pub fn are_equivalent(g: &SimplicialGraph, w1: &Word, w2: &Word) -> bool {
    normalize(g, w1) == normalize(g, w2)
}

/// Breadth-first closure of `w` under moves I, II and the reverse of I,
/// restricted to words of length at most `max_len`.
///
/// Independent of [`normalize`]; used as a brute-force oracle on small
/// instances. Fails with `BudgetExceeded` once more than `state_cap` words
/// have been discovered.
pub fn equivalence_class_oracle(
    g: &SimplicialGraph,
    w: &Word,
    max_len: usize,
    state_cap: usize,
) -> Result<BTreeSet<Word>> {
    if max_len < w.len() {
        return Err(Error::Domain(format!(
            "max_len {max_len} is shorter than the word ({})",
            w.len()
        )));
    }
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.clone());
    queue.push_back(w.clone());
    while let Some(cur) = queue.pop_front() {
        let l = &cur.0;
        let mut next = Vec::new();
        for i in 0..l.len().saturating_sub(1) {
            if l[i] == l[i + 1] {
                let mut shorter = l.clone();
                shorter.remove(i);
                next.push(shorter);
            } else if g.is_edge(l[i], l[i + 1]) {
                let mut swapped = l.clone();
                swapped.swap(i, i + 1);
                next.push(swapped);
            }
        }
        if l.len() < max_len {
            for i in 0..l.len() {
                let mut longer = l.clone();
                longer.insert(i, l[i]);
                next.push(longer);
            }
        }
        for letters in next {
            let word = Word(letters);
            if !seen.contains(&word) {
                if seen.len() >= state_cap {
                    return Err(Error::BudgetExceeded {
                        what: "oracle state",
                        needed: seen.len() as u128 + 1,
                        limit: state_cap as u128,
                    });
                }
                seen.insert(word.clone());
                queue.push_back(word);
            }
        }
    }
    Ok(seen)
}
