mod common;

use gpgauss::partitions::Label;
use gpgauss::spinmodel::{
    apply_b, left_multiply_generator, moment_s_word, sign_table, vacuum_trace_word, GeneratorIndex,
    SignFunction, SpinVector, SubsetState, DEFAULT_ITERATION_BUDGET,
};
use gpgauss::{Error, LabeledWord, SimplicialGraph, Spin};
use rand::seq::SliceRandom;
use rand::Rng;

/// Every generator `(i, v)` with `i < indices`.
fn universe(g: &SimplicialGraph, indices: u32) -> Vec<GeneratorIndex> {
    g.vertices()
        .flat_map(|v| (0..indices).map(move |i| GeneratorIndex::new(i, v)))
        .collect()
}

fn random_state<R: Rng>(r: &mut R, gens: &[GeneratorIndex]) -> SubsetState {
    SubsetState::from_members(gens.iter().copied().filter(|_| r.gen_bool(0.4)).collect())
}

fn sign_functions(g: &SimplicialGraph) -> Vec<SignFunction> {
    let mut out = vec![SignFunction::constant(g)];
    for seed in 0..3 {
        out.push(SignFunction::seeded(g, 0.5, seed).unwrap());
    }
    out.push(SignFunction::seeded(g, 0.2, 9).unwrap());
    out
}

#[test]
fn b_squares_to_identity() {
    for (_, g) in common::fixture_graphs() {
        let gens = universe(&g, 4);
        let mut r = common::rng(31);
        for s in sign_functions(&g) {
            for _ in 0..200 {
                let psi = SpinVector::basis(random_state(&mut r, &gens), 1);
                let l = *gens.choose(&mut r).unwrap();
                assert_eq!(apply_b(&s, &apply_b(&s, &psi, l), l), psi);
            }
        }
    }
}

#[test]
fn b_operators_commute_up_to_sign() {
    for (_, g) in common::fixture_graphs() {
        let gens = universe(&g, 4);
        let mut r = common::rng(32);
        for s in sign_functions(&g) {
            for _ in 0..200 {
                let psi = SpinVector::basis(random_state(&mut r, &gens), 1);
                let l = *gens.choose(&mut r).unwrap();
                let m = *gens.choose(&mut r).unwrap();
                if l == m {
                    continue;
                }
                let lm = apply_b(&s, &apply_b(&s, &psi, m), l);
                let ml = apply_b(&s, &apply_b(&s, &psi, l), m);
                let sign = s.sign(l, m) as i128;
                for (state, c) in lm.terms() {
                    assert_eq!(c, sign * ml.coefficient(state));
                }
                assert_eq!(lm.len(), ml.len());
            }
        }
    }
}

#[test]
fn trace_is_tracial_and_bounded() {
    for (_, g) in common::fixture_graphs() {
        let gens = universe(&g, 3);
        let mut r = common::rng(33);
        for s in sign_functions(&g) {
            for _ in 0..200 {
                // Short alphabets make many words return to the vacuum.
                let alphabet: Vec<_> = gens.choose_multiple(&mut r, 3).copied().collect();
                let len = r.gen_range(0..=8);
                let word: Vec<_> = (0..len)
                    .map(|_| *alphabet.choose(&mut r).unwrap())
                    .collect();
                let cut = r.gen_range(0..=len);
                let rotated = [&word[cut..], &word[..cut]].concat();
                let t = vacuum_trace_word(&s, &word);
                assert!(t.abs() <= 1);
                assert_eq!(t, vacuum_trace_word(&s, &rotated));
            }
        }
    }
}

#[test]
fn trace_factorizes_over_distinct_generators() {
    let g = SimplicialGraph::path(&["a", "b", "c"]).unwrap();
    let gens = universe(&g, 2);
    for s in sign_functions(&g) {
        for k in 1..=3 {
            for chosen in ordered_distinct(&gens, k) {
                for powers in all_powers(k, 4) {
                    let word: Vec<_> = chosen
                        .iter()
                        .zip(&powers)
                        .flat_map(|(&l, &p)| std::iter::repeat_n(l, p))
                        .collect();
                    let product: i64 = powers
                        .iter()
                        .map(|&p| if p % 2 == 0 { 1 } else { 0 })
                        .product();
                    assert_eq!(vacuum_trace_word(&s, &word), product);
                }
            }
        }
    }
}

fn ordered_distinct(gens: &[GeneratorIndex], k: usize) -> Vec<Vec<GeneratorIndex>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for shorter in ordered_distinct(gens, k - 1) {
        for &l in gens {
            if !shorter.contains(&l) {
                let mut x = shorter.clone();
                x.push(l);
                out.push(x);
            }
        }
    }
    out
}

fn all_powers(k: usize, max: usize) -> Vec<Vec<usize>> {
    (0..k).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=max).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect()
    })
}

#[test]
fn small_traces_match_hand_values() {
    let g = common::no_edge_graph();
    let l = GeneratorIndex::new(0, g.vertex("a").unwrap());
    let m = GeneratorIndex::new(1, g.vertex("b").unwrap());
    for s in sign_functions(&g) {
        assert_eq!(vacuum_trace_word(&s, &[l]), 0);
        assert_eq!(vacuum_trace_word(&s, &[l, l]), 1);
        assert_eq!(vacuum_trace_word(&s, &[l, m, l, m]), s.sign(l, m) as i64);
    }
}

#[test]
fn left_multiplication_examples() {
    let g = common::no_edge_graph();
    let a = g.vertex("a").unwrap();
    let m = GeneratorIndex::new(0, a);
    let l = GeneratorIndex::new(3, a);
    let s = SignFunction::explicit(&g, [((l, m), -1)]).unwrap();
    let empty = SubsetState::empty();
    assert_eq!(
        left_multiply_generator(&s, &empty, l),
        (1, SubsetState::from_members(vec![l]))
    );
    let single = SubsetState::from_members(vec![l]);
    assert_eq!(left_multiply_generator(&s, &single, l), (1, empty));
    let both = SubsetState::from_members(vec![m, l]);
    assert_eq!(
        left_multiply_generator(&s, &both, l),
        (-1, SubsetState::from_members(vec![m]))
    );
}

#[test]
fn sign_function_invariants() {
    for (_, g) in common::fixture_graphs() {
        let gens = universe(&g, 5);
        for s in sign_functions(&g) {
            for &a in &gens {
                assert_eq!(s.sign(a, a), -1);
                for &b in &gens {
                    assert_eq!(s.sign(a, b), s.sign(b, a));
                    if g.is_edge(a.vertex, b.vertex) {
                        assert_eq!(s.sign(a, b), 1);
                    }
                }
            }
        }
    }
}

#[test]
fn seeded_signs_are_reproducible_and_biased_by_p() {
    let g = common::no_edge_graph();
    let gens = universe(&g, 60);
    for p in [0.2, 0.5, 0.8] {
        let s = SignFunction::seeded(&g, p, 77).unwrap();
        let again = SignFunction::seeded(&g, p, 77).unwrap();
        let mut plus = 0usize;
        let mut total = 0usize;
        for (k, &a) in gens.iter().enumerate() {
            for &b in &gens[k + 1..] {
                assert_eq!(s.sign(a, b), again.sign(b, a));
                plus += (s.sign(a, b) == 1) as usize;
                total += 1;
            }
        }
        let freq = plus as f64 / total as f64;
        assert!((freq - p).abs() < 0.02, "p = {p}, observed {freq}");
    }
    let a = SignFunction::seeded(&g, 0.5, 1).unwrap();
    let b = SignFunction::seeded(&g, 0.5, 2).unwrap();
    assert_ne!(sign_table(&a, 4), sign_table(&b, 4));
    assert_eq!(sign_table(&a, 4), sign_table(&a, 4));
}

/// `Σ_{i_1..i_n < N} φ(b_{ℓ_1} ⋯ b_{ℓ_n})` with the monomial product evaluated
/// by an independent sign count.
fn brute_force_numerator(s: &SignFunction, w: &LabeledWord, n: u32) -> i128 {
    let len = w.len();
    let mut idx = vec![0u32; len];
    let mut total = 0i128;
    loop {
        let mut members: Vec<GeneratorIndex> = Vec::new();
        let mut sign = 1i128;
        for (k, l) in w.letters().iter().enumerate().rev() {
            let gen = GeneratorIndex::for_spin(idx[k], l.vertex, l.spin);
            for &m in &members {
                if m < gen {
                    sign *= s.sign(gen, m) as i128;
                }
            }
            match members.iter().position(|&m| m == gen) {
                Some(p) => {
                    members.remove(p);
                }
                None => members.push(gen),
            }
        }
        if members.is_empty() {
            total += sign;
        }
        let mut k = len;
        loop {
            if k == 0 {
                return total;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
        }
    }
}

#[test]
fn moment_matches_full_index_expansion() {
    for (name, g) in common::fixture_graphs().into_iter().take(4) {
        let mut r = common::rng(34);
        for seed in 0..4 {
            let s = SignFunction::seeded(&g, 0.5, seed).unwrap();
            for _ in 0..6 {
                let len = 2 * r.gen_range(1..=3);
                let vs: Vec<_> = g.vertices().take(2).collect();
                let w = LabeledWord::new(
                    (0..len)
                        .map(|_| {
                            let spin = if r.gen_bool(0.3) {
                                Spin::Two
                            } else {
                                Spin::One
                            };
                            Label::new(*vs.choose(&mut r).unwrap(), spin)
                        })
                        .collect(),
                );
                for n in [2u32, 4] {
                    let m = moment_s_word(&s, &w, n as usize, DEFAULT_ITERATION_BUDGET).unwrap();
                    assert_eq!(m.denominator, (n as i128).pow(len as u32 / 2));
                    assert_eq!(
                        m.numerator,
                        brute_force_numerator(&s, &w, n),
                        "{name} {} N={n}",
                        w.display(&g)
                    );
                }
            }
        }
    }
}

#[test]
fn constant_signs_single_vertex_fourth_moment() {
    let g = common::single_vertex();
    let s = SignFunction::constant(&g);
    let w = LabeledWord::parse(&g, "a a a a").unwrap();
    for n in [2i128, 4, 8, 64] {
        let m = moment_s_word(&s, &w, n as usize, DEFAULT_ITERATION_BUDGET).unwrap();
        assert_eq!(m.ratio(), num_rational::Ratio::new(3 * n - 2, n));
    }
}

#[test]
fn explicit_sign_single_vertex_fourth_moment() {
    let g = common::single_vertex();
    let a = g.vertex("a").unwrap();
    let w = LabeledWord::parse(&g, "a a a a").unwrap();
    for sigma in [1i8, -1] {
        let s = SignFunction::explicit(
            &g,
            [(
                (GeneratorIndex::new(0, a), GeneratorIndex::new(2, a)),
                sigma,
            )],
        )
        .unwrap();
        let m = moment_s_word(&s, &w, 2, DEFAULT_ITERATION_BUDGET).unwrap();
        assert_eq!(m.numerator, 6 + 2 * sigma as i128);
        assert_eq!(m.denominator, 4);
    }
}

#[test]
fn edge_graph_abab_is_exactly_one() {
    let g = common::edge_graph();
    let w = LabeledWord::parse(&g, "a b a b").unwrap();
    for seed in 0..10 {
        let s = SignFunction::seeded(&g, 0.5, seed).unwrap();
        for n in [2, 8, 32] {
            let m = moment_s_word(&s, &w, n, DEFAULT_ITERATION_BUDGET).unwrap();
            assert_eq!(m.numerator, m.denominator);
        }
    }
}

#[test]
fn moment_guards() {
    let g = common::single_vertex();
    let s = SignFunction::constant(&g);
    let spin_two = LabeledWord::parse(&g, "a:2 a:2").unwrap();
    let spin_one = LabeledWord::parse(&g, "a a").unwrap();
    assert!(matches!(
        moment_s_word(&s, &spin_two, 3, 1000),
        Err(Error::OddN(3))
    ));
    assert!(matches!(
        moment_s_word(&s, &spin_two, 1, 1000),
        Err(Error::OddN(1))
    ));
    assert_eq!(moment_s_word(&s, &spin_one, 1, 1000).unwrap().numerator, 1);
    let long = LabeledWord::parse(&g, "a a a a a a a a").unwrap();
    assert!(moment_s_word(&s, &long, 64, DEFAULT_ITERATION_BUDGET)
        .unwrap_err()
        .is_budget());
    let odd = LabeledWord::parse(&g, "a a a").unwrap();
    assert_eq!(moment_s_word(&s, &odd, 4, 1000).unwrap().numerator, 0);
}
