use std::sync::Arc;

use num_traits::{One, Zero};
use tqft_core::cyclo::{complex_embed, make_root, CycNum, Embedding, Level, Root, RootChoice};
use tqft_core::quotients::{find_infinite_order_word, find_noncentral_commutator, InfiniteWitness, Verdict};
use tqft_core::rep::*;
use tqft_core::{CycMatrix, Error};

fn root(p: u64) -> Root {
    make_root(Level::new(p).unwrap(), RootChoice::Unitary).unwrap()
}

fn quantum(p: u64) -> Arc<Quantum> {
    Arc::new(Quantum::new(root(p)))
}

fn build(p: u64, spec: &str) -> Representation {
    Representation::build(&spec.parse().unwrap(), quantum(p)).unwrap()
}

fn specs(p: u64) -> Vec<&'static str> {
    match p {
        5 => vec!["torus1(0)", "torus1(2)", "torus2(2,2)", "torus2(0,0)", "sphere(2,2,2,2)", "genus2", "genus2pt(2)"],
        7 => vec![
            "torus1(0)",
            "torus1(4)",
            "torus2(2,4)",
            "torus2(2,2)",
            "sphere(2,2,2,4)",
            "sphere(2,2,2,2,2)",
            "genus2",
            "genus2pt(4)",
        ],
        _ => vec!["torus1(2)", "torus2(2,4)", "sphere(2,2,2,4)", "genus2pt(8)"],
    }
}

#[test]
fn representation_contracts_hold_exactly() {
    for p in [5, 7] {
        for spec in specs(p) {
            let rep = build(p, spec);
            let report = check_representation(&rep).unwrap();
            let failed: Vec<_> = report.failures().map(|i| i.name.clone()).collect();
            assert!(failed.is_empty(), "p={p} {spec}: {failed:?}");
            assert!(report.items.iter().any(|i| i.name.starts_with("braid")) || rep.relations().is_empty());
        }
    }
}

#[test]
fn twist_eigenvalues_are_powers_of_the_root() {
    for p in [5, 7] {
        let r = root(p);
        for spec in specs(p) {
            let rep = build(p, spec);
            let space = rep.space();
            for e in 0..space.graph().edge_count() {
                let t = space.twist_matrix(e).unwrap();
                for (k, c) in space.basis().iter().enumerate() {
                    let c = c[e] as i64;
                    // repeated multiplication, not the precomputed power table
                    let want = (0..c * (c + 2)).fold(CycNum::one(), |acc, _| &acc * &r.value());
                    assert_eq!(t.get(k, k), &want);
                }
            }
        }
    }
}

#[test]
fn one_holed_torus_twist_at_level_five() {
    let rep = build(5, "torus1(0)");
    let t = &rep.operator("T_a").unwrap().matrix;
    let a = root(5).value();
    assert_eq!(*t, CycMatrix::diagonal(vec![CycNum::one(), a.pow(8)]));
}

#[test]
fn s_move_needs_a_one_holed_torus() {
    let rep = build(7, "torus2(2,4)");
    assert!(matches!(rep.space().s_move(0), Err(Error::IllegalMove(_))));
    let t = build(7, "torus1(4)");
    assert_eq!(t.space().graph().edge_count(), 1);
    assert!(t.space().s_move(0).is_ok());
}

#[test]
fn modular_relations_on_one_holed_tori() {
    for (p, i) in [(5, 0), (5, 2), (7, 0), (7, 2), (7, 4)] {
        let rep = build(p, &format!("torus1({i})"));
        let report = check_modular(rep.space(), 0).unwrap();
        assert!(report.all_passed(), "p={p} i={i}: {:?}", report.failures().collect::<Vec<_>>());
    }
}

#[test]
fn hermitian_weights_are_real_and_positive_at_the_unitary_root() {
    for p in [5, 7] {
        for spec in specs(p) {
            let rep = build(p, spec);
            for w in rep.space().weights() {
                assert!(!w.is_zero());
                assert!(w.is_self_conjugate());
                let z = complex_embed(w, Embedding::principal(p as u32));
                assert!(z.re > 0.0 && z.im.abs() < 1e-9, "p={p} {spec}: {z}");
            }
        }
    }
}

#[test]
fn w_1_7_2_4_has_the_expected_basis() {
    let rep = build(7, "torus2(2,4)");
    assert_eq!(rep.space().basis(), &[vec![2, 2], vec![2, 4], vec![4, 2]]);
    for e in 0..2 {
        let (target, f) = rep.space().flip(e).unwrap_or_else(|_| panic!("edge {e} flips"));
        assert!(rep.space().preserves_form(&f, &target));
    }
}

#[test]
fn burau_block_contract() {
    let block = burau_block(3, 2, quantum(7)).unwrap();
    assert_eq!(block.rep.space().dim(), 2);
    let s1 = &block.rep.operator("s1").unwrap().matrix;
    let s2 = &block.rep.operator("s2").unwrap().matrix;
    assert_eq!(&(s1 * s2) * s1, &(s2 * s1) * s2);
    assert!(block.ratio_is_minus_a_two_a_squared());
    assert_eq!(block.q.as_ref(), Some(&block.expected_q()));
    // A^8 at the unitary root of level 7 has order 7
    assert_eq!(block.q_order, Some(7));
    assert!(block.expect_infinite);
    for a in [2, 4] {
        let b = burau_block(3, a, quantum(13)).unwrap();
        assert_eq!(b.q.as_ref(), Some(&b.expected_q()));
        assert_eq!(b.ratio_is_minus_a_two_a_squared(), a == 2);
    }
    assert!(burau_block(1, 2, quantum(7)).is_err());
}

#[test]
fn burnside_powers_are_the_identity() {
    for p in [5, 7, 11] {
        for spec in specs(p) {
            let rep = build(p, spec);
            let report = check_burnside(&rep);
            assert!(report.all_passed(), "p={p} {spec}");
            for l in rep.loops() {
                assert!(l.matrix.pow(p).is_identity());
            }
        }
    }
}

#[test]
fn point_push_words() {
    let rep = build(7, "torus2(2,4)");
    assert!(rep.point_push(&Word::default()).unwrap().matrix.is_identity());
    assert!(matches!(rep.point_push(&"x q".parse().unwrap()), Err(Error::UnknownName(_))));
    let xy = rep.point_push(&"x y^-1".parse().unwrap()).unwrap().matrix;
    let x = &rep.loop_op("x").unwrap().matrix;
    let y = &rep.loop_op("y").unwrap().matrix;
    assert_eq!(xy, x * &y.inverse().unwrap());
    // the loops commute with the central boundary scalar
    let tw = CycMatrix::identity(3).scale(&quantum(7).twist(2));
    assert!(x.commutes_with(&tw));
}

#[test]
fn conjugation_and_galois_symmetry() {
    for p in [5, 7] {
        let r = root(p);
        for spec in specs(p) {
            let s: SurfaceSpec = spec.parse().unwrap();
            assert!(conj_symmetry_check(&s, &r).unwrap().all_passed(), "p={p} {spec}");
        }
    }
    for spec in ["torus1(0)", "torus2(2,4)"] {
        assert!(galois_coherence_check(&spec.parse().unwrap(), &root(7)).unwrap().all_passed());
    }
}

#[test]
fn the_surface_group_image_is_infinite_and_non_abelian() {
    let rep = build(7, "torus2(2,4)");
    let (word, m) = find_noncentral_commutator(&rep).unwrap().expect("non-scalar commutator");
    assert_eq!(word.to_string(), "x y x^-1 y^-1");
    assert!(m.as_scalar().is_none());
    let (word, report) = find_infinite_order_word(&rep, 8).unwrap().expect("witness within length 8");
    assert!(word.len() <= 8);
    assert_eq!(word.to_string(), "x d");
    let Verdict::Infinite { witnesses } = &report.verdict else { panic!("finite verdict") };
    assert!(witnesses.iter().any(|w| matches!(w, InfiniteWitness::NonCyclotomic(_))));
    assert!(witnesses.iter().any(|w| matches!(w, InfiniteWitness::Modulus { modulus, .. } if *modulus > 1.0 + 1e-9)));
}

#[test]
fn bundles_round_trip_byte_for_byte() {
    for (p, spec) in [(5, "torus1(0)"), (7, "torus2(2,4)"), (7, "sphere(2,2,2,4)"), (5, "genus2pt(2)")] {
        let bundle = RepBundle::from_representation(&build(p, spec));
        let text = bundle.to_text();
        let back = RepBundle::from_text(&text).unwrap();
        assert_eq!(back, bundle);
        assert_eq!(back.to_text(), text);
    }
    let text = RepBundle::from_representation(&build(7, "torus2(2,4)")).to_text();
    let at = text.find("row\t").unwrap() + 4;
    let mut bad = text.clone();
    bad.insert(at, ' ');
    match RepBundle::from_text(&bad) {
        Err(Error::Parse { offset, .. }) => assert!(offset >= at),
        other => panic!("{other:?}"),
    }
    let truncated = &text[..text.len() - 1];
    assert!(matches!(RepBundle::from_text(truncated), Err(Error::Parse { .. })));
}
