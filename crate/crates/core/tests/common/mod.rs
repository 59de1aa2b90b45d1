#![allow(dead_code)]

use gpgauss::partitions::Label;
use gpgauss::{LabeledWord, SimplicialGraph, Spin, Word};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each pair of distinct vertices is an edge with probability 1/2.
pub fn random_graph(seed: u64, names: &[&str]) -> SimplicialGraph {
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for (i, a) in names.iter().enumerate() {
        for b in &names[i + 1..] {
            if r.gen_bool(0.5) {
                edges.push((*a, *b));
            }
        }
    }
    SimplicialGraph::build(names, &edges).unwrap()
}

pub fn single_vertex() -> SimplicialGraph {
    SimplicialGraph::edgeless(&["a"]).unwrap()
}

pub fn edge_graph() -> SimplicialGraph {
    SimplicialGraph::complete(&["a", "b"]).unwrap()
}

pub fn no_edge_graph() -> SimplicialGraph {
    SimplicialGraph::edgeless(&["a", "b"]).unwrap()
}

/// edgeless-3, complete-3, path-3, 4-cycle, 5-cycle, seeded random 5-vertex.
pub fn fixture_graphs() -> Vec<(&'static str, SimplicialGraph)> {
    vec![
        (
            "edgeless-3",
            SimplicialGraph::edgeless(&["a", "b", "c"]).unwrap(),
        ),
        (
            "complete-3",
            SimplicialGraph::complete(&["a", "b", "c"]).unwrap(),
        ),
        ("path-3", SimplicialGraph::path(&["a", "b", "c"]).unwrap()),
        (
            "cycle-4",
            SimplicialGraph::cycle(&["a", "b", "c", "d"]).unwrap(),
        ),
        (
            "cycle-5",
            SimplicialGraph::cycle(&["a", "b", "c", "d", "e"]).unwrap(),
        ),
        ("random-5", random_graph(2024, &["a", "b", "c", "d", "e"])),
    ]
}

pub fn random_labeled_word<R: Rng>(r: &mut R, g: &SimplicialGraph, len: usize) -> LabeledWord {
    let vertices: Vec<_> = g.vertices().collect();
    LabeledWord::new(
        (0..len)
            .map(|_| {
                let v = *vertices.choose(r).unwrap();
                let spin = if r.gen_bool(0.5) {
                    Spin::One
                } else {
                    Spin::Two
                };
                Label::new(v, spin)
            })
            .collect(),
    )
}

pub fn random_word<R: Rng>(r: &mut R, g: &SimplicialGraph, len: usize) -> Word {
    let vertices: Vec<_> = g.vertices().collect();
    Word::new((0..len).map(|_| *vertices.choose(r).unwrap()).collect())
}

/// All words over the graph's vertices of length at most `max_len`.
pub fn all_words(g: &SimplicialGraph, max_len: usize) -> Vec<Word> {
    let vertices: Vec<_> = g.vertices().collect();
    let mut out = vec![Word::default()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &v in &vertices {
                let mut longer: Vec<_> = Vec::clone(w);
                longer.push(v);
                next.push(longer);
            }
        }
        out.extend(next.iter().cloned().map(Word::new));
        layer = next;
    }
    out
}

/// Catalan numbers from the convolution recurrence.
pub fn catalan(r: usize) -> u64 {
    let mut c = vec![1u64];
    for k in 0..r {
        let next = (0..=k).map(|i| c[i] * c[k - i]).sum();
        c.push(next);
    }
    c[r]
}
