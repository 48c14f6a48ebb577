use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tqft_core::cyclo::{make_root, Level, ResidueField, RootChoice};
use tqft_core::quotients::cells::{cell, BURAU_CELLS, OVER_CAP_CELL};
use tqft_core::quotients::*;
use tqft_core::rep::{Quantum, RepBundle, Representation, Word};
use tqft_core::CycMatrix;

fn bundle(p: u64, spec: &str) -> (Representation, RepBundle) {
    let root = make_root(Level::new(p).unwrap(), RootChoice::Unitary).unwrap();
    let rep = Representation::build(&spec.parse().unwrap(), Arc::new(Quantum::new(root))).unwrap();
    let b = RepBundle::from_representation(&rep);
    (rep, b)
}

fn random_word(rng: &mut ChaCha8Rng, names: &[String]) -> Word {
    let len = rng.gen_range(0..6);
    Word::new(
        (0..len)
            .map(|_| {
                let e = [-2, -1, 1, 2][rng.gen_range(0..4)];
                (names[rng.gen_range(0..names.len())].clone(), e)
            })
            .collect(),
    )
}

#[test]
fn reduction_respects_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (p, spec, q) in [(7, "torus2(2,4)", 29), (5, "torus2(2,2)", 11), (7, "sphere(2,2,2,4)", 43)] {
        let (_, b) = bundle(p, spec);
        let residue = reduce_rep(&b, q, 0).unwrap();
        let names: Vec<String> = b.matrices.iter().map(|m| m.name.clone()).collect();
        let pairs: Vec<_> = (0..100).map(|_| (random_word(&mut rng, &names), random_word(&mut rng, &names))).collect();
        let report = check_homomorphism(&b, &residue, &pairs).unwrap();
        assert!(report.all_passed(), "p={p} {spec} q={q}");
        assert_eq!(report.items.len(), 100);
    }
}

#[test]
fn identity_reduces_to_identity() {
    let f = ResidueField::new(29, Level::new(7).unwrap(), 0).unwrap();
    let id = reduce_matrix(&CycMatrix::identity(4), &f).unwrap();
    assert!(ResidueOps(&f).is_identity(&id));
}

#[test]
fn reduced_twists_have_orders_dividing_twice_the_level() {
    let (rep, _) = bundle(7, "torus2(2,4)");
    let f = ResidueField::new(29, Level::new(7).unwrap(), 0).unwrap();
    for e in 0..rep.space().graph().edge_count() {
        let t = reduce_matrix(&rep.space().twist_matrix(e).unwrap(), &f).unwrap();
        for i in 0..t.rows() {
            let d = t.get(i, i);
            assert_eq!(14 % f.order_of(d), 0);
            for j in 0..t.cols() {
                if i != j {
                    assert_eq!(t.get(i, j), &f.zero());
                }
            }
        }
    }
}

#[test]
fn residue_checks_pass_on_every_modulus() {
    let (_, b) = bundle(7, "torus2(2,4)");
    for q in [29, 13] {
        let f = tqft_core::cyclo::splitting_data(q, Level::new(7).unwrap()).unwrap();
        for idx in 0..f.factor_count() {
            let r = reduce_rep(&b, q, idx).unwrap();
            let report = r.check();
            assert!(report.all_passed(), "q={q} idx={idx}");
            // 13 is inert up to conjugation: 13^1 = -1 (mod 7)
            assert_eq!(conjugation_frobenius(&r.field).is_some(), q == 13);
        }
    }
}

#[test]
fn residue_bundles_round_trip() {
    let (_, b) = bundle(5, "torus2(2,2)");
    for q in [3, 11] {
        let r = reduce_rep(&b, q, 0).unwrap();
        let text = r.to_text();
        let back = ResidueRep::from_text(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_text(), text);
    }
}

#[test]
fn bad_primes_are_rejected() {
    let (_, b) = bundle(7, "torus2(2,4)");
    for q in [2, 7, 15, 1] {
        assert!(reduce_rep(&b, q, 0).is_err(), "q={q}");
    }
    assert!(reduce_rep(&b, 29, 99).is_err());
    assert_eq!(first_split_prime(&b).unwrap(), 29);
}

#[test]
fn burau_cells_are_reproducible() {
    for c in &BURAU_CELLS[..2] {
        let data = c.build().unwrap();
        let field = &data.residue.field;
        let gens = data.generators();
        let first = closure(field, &gens, c.options()).unwrap();
        let second = closure(field, &gens, c.options()).unwrap();
        assert_eq!(first, second);
        let want = if c.q == 29 { 12180 } else { 79464 };
        assert_eq!(first.order(), Some(want), "{}", c.name);
    }
}

#[test]
fn subgroup_comparisons() {
    let c = cell("burau-p7-q29").unwrap();
    let data = c.build().unwrap();
    let field = &data.residue.field;
    let gens = data.generators();
    let same = same_subgroup(field, &gens, &gens, c.options()).unwrap();
    assert_eq!(same.decision, Decision::True);
    // eigenvalue ratio -q with q of order 7
    let one = same_subgroup(field, &gens, &gens[..1], c.options()).unwrap();
    assert_eq!(one.decision, Decision::False);
    let (d, r) = normality_check(field, &gens, &gens, c.options()).unwrap();
    assert_eq!(d, Decision::True);
    assert_eq!(r.order(), Some(12180));
    let (d, r) = normality_check(field, &gens[..1], &gens, c.options()).unwrap();
    assert_eq!(d, Decision::False);
    assert_eq!(r.order(), Some(14));
}

#[test]
fn caps_give_undecided() {
    let data = OVER_CAP_CELL.build().unwrap();
    let opts = ClosureOptions { cap: 1000, ..OVER_CAP_CELL.options() };
    let r = closure(&data.residue.field, &data.loops(), opts).unwrap();
    assert_eq!(r.order(), None);
    assert_eq!(r.status.to_string(), "undecided");
    let cmp = same_subgroup(&data.residue.field, &data.loops(), &data.generators(), opts).unwrap();
    assert_eq!(cmp.decision, Decision::Undecided);
}

#[test]
fn closure_is_closed_under_products_and_inverses() {
    let f = prime_field(7).unwrap();
    let gens = vec![vec![1, 1, 0, 1], vec![1, 0, 1, 1]];
    let c = Closure::run_indices(f, 2, &gens, ClosureOptions::default(), &[]).unwrap();
    assert_eq!(c.result().order(), Some(336));
    let all: Vec<_> = c.elements().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let a = &all[rng.gen_range(0..all.len())];
        let b = &all[rng.gen_range(0..all.len())];
        assert!(c.contains_indices(&c.multiply(a, b)));
        assert!(c.contains_indices(&c.inverse(a)));
    }
}

#[test]
fn spectra_of_twists_and_identity() {
    let (rep, _) = bundle(7, "torus2(2,4)");
    let level = Level::new(7).unwrap();
    let id = spectrum_report(&CycMatrix::identity(3), level).unwrap();
    assert_eq!(id.verdict, Verdict::Finite { order: 1, verified: true });
    for g in rep.generators() {
        let s = spectrum_report(&g.matrix, level).unwrap();
        assert!(!s.verdict.is_infinite(), "{}", g.name);
        assert!(s.max_modulus < 1.0 + MODULUS_SLACK);
    }
}
