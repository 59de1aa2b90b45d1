mod common;

use std::collections::HashMap;

use gpgauss::words::{
    applicable_moves, apply_move, are_equivalent, equivalence_class_oracle, is_reduced, normalize,
    normalize_with_rank,
};
use gpgauss::{SimplicialGraph, Word};
use proptest::prelude::*;
use rand::Rng;

/// For every word up to `max_len`, the oracle class equals the set of words
/// (up to `max_len`) sharing its normal form.
fn assert_oracle_agreement(g: &SimplicialGraph, max_len: usize) {
    let words = common::all_words(g, max_len);
    let mut by_normal: HashMap<Word, usize> = HashMap::new();
    let normals: Vec<Word> = words.iter().map(|w| normalize(g, w)).collect();
    for n in &normals {
        *by_normal.entry(n.clone()).or_default() += 1;
    }
    for (w, n) in words.iter().zip(&normals) {
        let class = equivalence_class_oracle(g, w, max_len, 1_000_000).unwrap();
        assert_eq!(class.len(), by_normal[n], "class size of {}", w.display(g));
        for member in &class {
            assert!(
                are_equivalent(g, w, member),
                "{} ~ {}",
                w.display(g),
                member.display(g)
            );
        }
    }
}

#[test]
fn equivalence_matches_oracle_on_three_vertex_graphs() {
    assert_oracle_agreement(&SimplicialGraph::path(&["a", "b", "c"]).unwrap(), 5);
    assert_oracle_agreement(&SimplicialGraph::edgeless(&["a", "b", "c"]).unwrap(), 5);
    assert_oracle_agreement(&SimplicialGraph::complete(&["a", "b", "c"]).unwrap(), 5);
}

#[test]
fn equivalence_matches_oracle_on_four_vertex_graphs() {
    for g in [
        SimplicialGraph::cycle(&["a", "b", "c", "d"]).unwrap(),
        SimplicialGraph::path(&["a", "b", "c", "d"]).unwrap(),
        common::random_graph(7, &["a", "b", "c", "d"]),
    ] {
        assert_oracle_agreement(&g, 6);
    }
}

#[test]
fn normal_forms_are_the_least_reduced_class_members() {
    let g = SimplicialGraph::cycle(&["a", "b", "c", "d"]).unwrap();
    for w in common::all_words(&g, 5) {
        let class = equivalence_class_oracle(&g, &w, 5, 1_000_000).unwrap();
        let best = class
            .iter()
            .filter(|x| is_reduced(&g, x))
            .min_by(|x, y| x.len().cmp(&y.len()).then(x.cmp(y)))
            .unwrap();
        assert_eq!(&normalize(&g, &w), best);
    }
}

#[test]
fn reduced_means_no_shorter_equivalent() {
    let g = SimplicialGraph::path(&["a", "b", "c"]).unwrap();
    for w in common::all_words(&g, 5) {
        let class = equivalence_class_oracle(&g, &w, 5, 1_000_000).unwrap();
        let shortest = class.iter().map(Word::len).min().unwrap();
        assert_eq!(is_reduced(&g, &w), shortest == w.len(), "{}", w.display(&g));
    }
}

#[test]
fn edgeless_normal_form_collapses_runs() {
    let g = SimplicialGraph::edgeless(&["a", "b", "c"]).unwrap();
    for w in common::all_words(&g, 6) {
        let mut collapsed = w.letters().to_vec();
        collapsed.dedup();
        assert_eq!(normalize(&g, &w).letters(), collapsed.as_slice());
    }
}

/// Random walk of CancelI/SwapII moves and duplicate insertions.
fn random_walk(g: &SimplicialGraph, start: &Word, steps: usize, seed: u64) -> Vec<Word> {
    let mut r = common::rng(seed);
    let mut w = start.clone();
    let mut visited = Vec::with_capacity(steps);
    for _ in 0..steps {
        let moves = applicable_moves(g, &w);
        if !w.is_empty() && (moves.is_empty() || (w.len() < 10 && r.gen_bool(0.3))) {
            let i = r.gen_range(0..w.len());
            let mut letters = w.letters().to_vec();
            letters.insert(i, letters[i]);
            w = Word::new(letters);
        } else if !moves.is_empty() {
            let m = moves[r.gen_range(0..moves.len())];
            w = apply_move(g, &w, m).unwrap();
        }
        visited.push(w.clone());
    }
    visited
}

#[test]
fn normal_form_is_invariant_along_random_move_sequences() {
    for (name, g) in common::fixture_graphs() {
        let mut r = common::rng(99);
        let start = common::random_word(&mut r, &g, 7);
        let target = normalize(&g, &start);
        for w in random_walk(&g, &start, 10_000, 5) {
            assert_eq!(normalize(&g, &w), target, "{name}");
        }
    }
}

fn graph_and_word() -> impl Strategy<Value = (SimplicialGraph, Word)> {
    (any::<u64>(), prop::collection::vec(0usize..4, 0..12)).prop_map(|(seed, idx)| {
        let g = common::random_graph(seed, &["a", "b", "c", "d"]);
        let vs: Vec<_> = g.vertices().collect();
        let w = Word::new(idx.into_iter().map(|i| vs[i]).collect());
        (g, w)
    })
}

proptest! {
    #[test]
    fn normalize_is_idempotent_and_reduces((g, w) in graph_and_word()) {
        let n = normalize(&g, &w);
        prop_assert_eq!(normalize(&g, &n), n.clone());
        prop_assert!(is_reduced(&g, &n));
        prop_assert!(n.len() <= w.len());
        prop_assert!(are_equivalent(&g, &n, &w));
    }

    #[test]
    fn representatives_under_any_order_are_equivalent((g, w) in graph_and_word()) {
        let reversed = normalize_with_rank(&g, &w, std::cmp::Reverse);
        prop_assert!(is_reduced(&g, &reversed));
        prop_assert_eq!(normalize(&g, &reversed), normalize(&g, &w));
    }
}
