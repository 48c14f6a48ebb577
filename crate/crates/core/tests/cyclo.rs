use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use tqft_core::cyclo::{
    complex_embed, is_root_of_unity, reduce_mod, CycNum, Embedding, Level, ResidueField, UnityVerdict,
};

const LEVELS: [u32; 3] = [5, 7, 11];

fn arb_cyc() -> impl Strategy<Value = CycNum> {
    (0..LEVELS.len(), prop::collection::vec(-6i64..=6, 10), 1i64..=4)
        .prop_map(|(l, c, d)| {
            let p = LEVELS[l];
            let x = CycNum::from_int_coeffs(p, &c[..p as usize - 1]);
            x.scale(&num_rational::BigRational::new(1.into(), d.into()))
        })
}

fn same_level(p: u32) -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
    let one = move || prop::collection::vec(-5i64..=5, p as usize - 1).prop_map(move |c| CycNum::from_int_coeffs(p, &c));
    (one(), one(), one())
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm() + b.norm())
}

proptest! {
    #[test]
    fn ring_axioms((a, b, c) in (0..3usize).prop_flat_map(|i| same_level(LEVELS[i]))) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, CycNum::zero());
        prop_assert_eq!(&a * &CycNum::one(), a.clone());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inverse().unwrap(), CycNum::one());
        }
    }

    #[test]
    fn galois_is_a_ring_homomorphism((a, b, _) in same_level(7), s in 1i64..7) {
        prop_assert_eq!((&a * &b).galois(s), &a.galois(s) * &b.galois(s));
        prop_assert_eq!((&a + &b).galois(s), &a.galois(s) + &b.galois(s));
    }

    #[test]
    fn embeddings_are_homomorphisms((a, b, _) in same_level(11), t in 1u32..=5) {
        let e = Embedding::new(11, t).unwrap();
        prop_assert!(close(complex_embed(&(&a * &b), e), complex_embed(&a, e) * complex_embed(&b, e)));
        prop_assert!(close(complex_embed(&(&a + &b), e), complex_embed(&a, e) + complex_embed(&b, e)));
    }

    #[test]
    fn reduction_is_a_homomorphism((a, b, _) in same_level(7), idx in 0usize..6) {
        let f = ResidueField::new(29, Level::new(7).unwrap(), idx).unwrap();
        let (ra, rb) = (reduce_mod(&a, &f).unwrap(), reduce_mod(&b, &f).unwrap());
        prop_assert_eq!(reduce_mod(&(&a * &b), &f).unwrap(), f.mul(&ra, &rb));
        prop_assert_eq!(reduce_mod(&(&a + &b), &f).unwrap(), f.add(&ra, &rb));
    }

    #[test]
    fn text_round_trip(a in arb_cyc()) {
        let p = a.level().unwrap_or(5);
        let text = a.to_text(p);
        prop_assert_eq!(CycNum::from_text(&text).unwrap(), a);
    }

    #[test]
    fn norm_is_product_of_conjugates(a in arb_cyc()) {
        let p = a.level().unwrap_or(5) as i64;
        let prod = (1..p).fold(CycNum::one(), |acc, s| &acc * &a.galois(s));
        prop_assert_eq!(prod.as_rational().unwrap(), a.norm());
    }
}

#[test]
fn unity_oracle() {
    for p in LEVELS {
        for k in 0..p as i64 {
            for sign in [1i64, -1] {
                let x = CycNum::zeta_pow(p, k).scale(&num_rational::BigRational::from_integer(sign.into()));
                let zeta_order = p as u64 / (k as u64).gcd(&(p as u64));
                let want = if sign == 1 { zeta_order } else { zeta_order.lcm(&2) };
                assert_eq!(is_root_of_unity(&x).unwrap(), UnityVerdict::Root { order: want }, "p={p} k={k} sign={sign}");
            }
        }
        // 1 + zeta has modulus 2 cos(pi/p) under the principal embedding
        let y = &CycNum::one() + &CycNum::zeta(p);
        assert!(!is_root_of_unity(&y).unwrap().is_root());
        assert!(!is_root_of_unity(&CycNum::from_integer(2)).unwrap().is_root());
        assert!(is_root_of_unity(&CycNum::zero()).is_err());
    }
}
