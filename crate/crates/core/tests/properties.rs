use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use monotone_tr::algebra::rational::frac;
use monotone_tr::algebra::{lagrange_invert, ring_invert, ring_trace, series_compose, Coeff, ModRing, Rational, RingElem, Series};
use monotone_tr::hurwitz::Partition;
use monotone_tr::schur::mn_character;
use monotone_tr::tr::{deck_series, OmegaStore};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| frac(n, d))
}

fn ring_elem(q: u32) -> impl Strategy<Value = RingElem> {
    proptest::collection::vec(small_rational(), q as usize).prop_map(RingElem::from_coeffs)
}

fn series(len: usize) -> impl Strategy<Value = Series<Rational>> {
    proptest::collection::vec(small_rational(), len).prop_map(|v| Series::new(0, v, 8, Rational::zero()))
}

proptest! {
    #[test]
    fn trace_is_linear(a in ring_elem(3), b in ring_elem(3), s in small_rational()) {
        let lhs = ring_trace(&a.plus(&b.scaled(&s)));
        prop_assert_eq!(lhs, ring_trace(&a) + s * ring_trace(&b));
    }

    #[test]
    fn inverse_is_two_sided(a in ring_elem(3)) {
        prop_assume!(!a.is_zero());
        // the modulus is irreducible for q = 3, so every nonzero element is a unit
        let inv = ring_invert(&a).unwrap();
        prop_assert_eq!(a.times(&inv), ModRing::new(3).one());
    }

    #[test]
    fn series_product_is_associative(a in series(6), b in series(6), c in series(6)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn lagrange_round_trip(tail in proptest::collection::vec(small_rational(), 4)) {
        let mut coeffs = vec![Rational::zero(), Rational::from_integer(1.into())];
        coeffs.extend(tail);
        let x = Series::exact(0, coeffs, Rational::zero());
        let z = lagrange_invert(&x, 7).unwrap();
        let back = series_compose(&x, &z).unwrap();
        for k in 0..back.prec().min(8) {
            let want = if k == 1 { Rational::from_integer(1.into()) } else { Rational::zero() };
            prop_assert_eq!(back.coeff(k), &want);
        }
    }

    #[test]
    fn closed_forms_are_symmetric_at_points(z in proptest::collection::vec(small_rational(), 3)) {
        let mut store = OmegaStore::new(1);
        let w = store.omega(0, 3).unwrap().clone();
        prop_assume!(z.iter().all(|v| *v != frac(1, 2)));
        let v = w.value_at(&z).unwrap();
        let swapped = [z[1].clone(), z[0].clone(), z[2].clone()];
        let rotated = [z[2].clone(), z[0].clone(), z[1].clone()];
        prop_assert_eq!(&v, &w.value_at(&swapped).unwrap());
        prop_assert_eq!(&v, &w.value_at(&rotated).unwrap());
    }
}

#[test]
fn character_orthogonality() {
    for n in 1..=7 {
        let parts = Partition::all(n);
        for a in &parts {
            for b in &parts {
                let s: BigInt = parts
                    .iter()
                    .map(|mu| {
                        let ca = mn_character(a, mu).unwrap();
                        let cb = mn_character(b, mu).unwrap();
                        BigInt::from(ca * cb) * (monotone_tr::algebra::rational::factorial(n as u64) / mu.z())
                    })
                    .sum();
                let want = if a == b { monotone_tr::algebra::rational::factorial(n as u64) } else { BigInt::zero() };
                assert_eq!(s, want, "{a} {b}");
            }
        }
    }
}

#[test]
fn deck_involution_to_high_order() {
    for q in 1..=4 {
        let d = deck_series(q, 16).unwrap();
        let twice = series_compose(&d.series, &d.series).unwrap();
        let t = Series::monomial(ModRing::new(q).one(), 1);
        assert!(twice.sub(&t).valuation().is_none());
    }
}
