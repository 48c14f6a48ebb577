use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use tqft_core::blocks::{
    check_compare, check_growth, count_colorings, dim_closed_form, dim_recursive, growth_ratio, one_point_dims,
    square_scan, verlinde_dim, ClosedForm, ColoredGraph,
};
use tqft_core::cyclo::Level;

fn level(p: u64) -> Level {
    Level::new(p).unwrap()
}

fn label_tuples(l: Level) -> Vec<Vec<u32>> {
    let colors: Vec<u32> = l.colors().collect();
    let mut out = vec![vec![]];
    for &a in &colors {
        out.push(vec![a]);
        for &b in &colors {
            if a <= b {
                out.push(vec![a, b]);
            }
        }
    }
    out
}

#[test]
fn three_methods_agree() {
    let start = Instant::now();
    for p in [5, 7, 11, 13] {
        let l = level(p);
        for g in 1..=4 {
            for labels in label_tuples(l) {
                let graph = ColoredGraph::surface(g, &labels).unwrap();
                let e = BigUint::from(count_colorings(&graph, l).unwrap());
                let r = dim_recursive(g, l, &labels).unwrap();
                let v = verlinde_dim(g, l, &labels).unwrap();
                assert_eq!(e, r, "g={g} p={p} labels={labels:?}");
                assert_eq!(e, v, "g={g} p={p} labels={labels:?}");
            }
        }
    }
    eprintln!("agreement: {:?}", start.elapsed());
}

#[test]
fn reference_values() {
    let n = |x: u64| BigUint::from(x);
    assert_eq!(dim_recursive(2, level(5), &[2]).unwrap(), n(5));
    assert_eq!(dim_recursive(2, level(7), &[4]).unwrap(), n(14));
    assert_eq!(dim_recursive(1, level(7), &[2, 4]).unwrap(), n(3));
    assert_eq!(dim_recursive(3, level(7), &[4]).unwrap(), n(147));
    let closed = dim_closed_form(ClosedForm::Genus3Top, level(7)).unwrap();
    assert_eq!(closed, num_rational::BigRational::from_integer(147.into()));
}

#[test]
fn closed_forms_match_recursion() {
    for p in tqft_core::primes::primes_in(5, 60) {
        let l = level(p);
        let to_big = |r: num_rational::BigRational| {
            assert!(r.is_integer());
            r.to_integer().to_biguint().unwrap()
        };
        let top = p as u32 - 3;
        assert_eq!(to_big(dim_closed_form(ClosedForm::Genus2Top, l).unwrap()), dim_recursive(2, l, &[top]).unwrap());
        assert_eq!(to_big(dim_closed_form(ClosedForm::Genus3Top, l).unwrap()), dim_recursive(3, l, &[top]).unwrap());
        for i in l.colors() {
            for j in l.colors() {
                let c = to_big(dim_closed_form(ClosedForm::Genus1(i, j), l).unwrap());
                assert_eq!(c, dim_recursive(1, l, &[i, j]).unwrap(), "p={p} ({i},{j})");
            }
        }
    }
}

#[test]
fn zero_colored_points_are_removable() {
    for p in [5, 7, 11, 13] {
        let l = level(p);
        for g in 1..=3 {
            for labels in label_tuples(l).into_iter().filter(|t| t.len() <= 1) {
                let mut with_zero = labels.clone();
                with_zero.push(0);
                assert_eq!(dim_recursive(g, l, &labels).unwrap(), dim_recursive(g, l, &with_zero).unwrap());
            }
        }
    }
}

#[test]
fn block_decomposition() {
    for p in [5, 7, 11, 13] {
        let l = level(p);
        for g in 1..=3 {
            let wg = one_point_dims(g, l);
            let w1 = one_point_dims(1, l);
            let sum: BigUint = wg.iter().zip(&w1).map(|(a, b)| a * b).sum();
            assert_eq!(sum, dim_recursive(g + 1, l, &[]).unwrap(), "g={g} p={p}");
        }
    }
}

#[test]
fn compare_and_growth_lemmas() {
    for p in [7, 11, 19] {
        let l = level(p);
        for g in [3, 4] {
            assert!(check_compare(g, l).holds, "compare g={g} p={p}");
            assert!(check_growth(g, l).holds, "growth g={g} p={p}");
        }
        let c = check_compare(2, l);
        assert!(c.expect_equal && c.holds);
        assert!(check_growth(2, l).holds);
    }
    assert!(check_compare(4, level(11)).holds);
    let (_, ratio) = growth_ratio(level(9973));
    assert!((ratio - 0.7).abs() < 0.01, "ratio {ratio}");
}

#[test]
fn no_squares_below_ten_thousand() {
    let start = Instant::now();
    assert!(square_scan(10_000).is_empty());
    assert!(start.elapsed().as_secs() < 120);
}

#[test]
fn ratio_approaches_limit() {
    let r: Vec<f64> = [101, 1009, 9973].iter().map(|&p| growth_ratio(level(p)).1).collect();
    assert!((r[2] - 0.7).abs() < (r[0] - 0.7).abs());
    assert!(r.iter().all(|x| x.to_f64().unwrap() > 0.0));
}
