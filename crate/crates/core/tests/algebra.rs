mod common;

use common::*;
use idarc_core::algebra::linalg::solve_affine;
use idarc_core::algebra::{binom_mod_p, pth_root, Poly, RatFunc, Ring, TruncSeries};
use idarc_core::Error;
use proptest::prelude::*;

#[test]
fn lucas_matches_pascal() {
    for p in [2, 3, 5, 7] {
        let m = modulus(p);
        for n in 0..=60 {
            for k in 0..=n + 1 {
                assert_eq!(
                    binom_mod_p(n, k, m).value(),
                    pascal_binom(n, k, p),
                    "C({n},{k}) mod {p}"
                );
            }
        }
    }
}

#[test]
fn quotient_reduces_by_gcd() {
    let m = modulus(3);
    let num = Poly::from_coeffs(m, &[2, 0, 1]);
    let den = Poly::from_coeffs(m, &[2, 1]);
    let x = RatFunc::new(num, den).unwrap();
    assert_eq!(x, RatFunc::from_poly(Poly::from_coeffs(m, &[1, 1])));
    assert_eq!(
        RatFunc::new(Poly::one(m), Poly::zero(m)),
        Err(Error::ZeroDenominator)
    );
}

proptest! {
    #[test]
    fn canonical_form((m, xs) in ratfuncs(1, 6)) {
        let x = &xs[0];
        prop_assert!(x.denom().is_monic());
        prop_assert!(x.numer().gcd(x.denom()).is_one() || x.is_zero());
        if x.is_zero() {
            prop_assert!(x.denom().is_one());
        }
        let c = m.p() - 1;
        let again = RatFunc::new(x.numer().scale(c), x.denom().scale(c)).unwrap();
        prop_assert_eq!(&again, x);
    }

    #[test]
    fn arithmetic_matches_full_reduction((_m, xs) in ratfuncs(2, 6)) {
        let (a, b) = (&xs[0], &xs[1]);
        let (an, ad, bn, bd) = (a.numer(), a.denom(), b.numer(), b.denom());
        let sum = RatFunc::new(&(an * bd) + &(bn * ad), ad * bd).unwrap();
        let prod = RatFunc::new(an * bn, ad * bd).unwrap();
        prop_assert_eq!(a + b, sum);
        prop_assert_eq!(a * b, prod);
    }

    #[test]
    fn field_axioms((_m, xs) in ratfuncs(3, 4)) {
        let (a, b, c) = (&xs[0], &xs[1], &xs[2]);
        prop_assert_eq!(&(a + b) + c, a + &(b + c));
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        prop_assert_eq!(a * b, b * a);
        prop_assert!((a - a).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(a * &a.inv().unwrap(), a.one_like());
        }
    }

    #[test]
    fn euclidean_division(
        (a, b) in prime().prop_flat_map(|m| (poly(m, 10), nonzero_poly(m, 5)))
    ) {
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.degree() < b.degree());
    }

    #[test]
    fn pth_root_inverts_frobenius((m, xs) in ratfuncs(1, 4)) {
        let y = xs[0].pow(m.p() as u32);
        prop_assert_eq!(pth_root(&y).unwrap(), xs[0].clone());
    }

    #[test]
    fn series_inverse_is_two_sided(
        (m, coeffs) in prime().prop_flat_map(|m| (Just(m), prop::collection::vec(ratfunc(m, 3), 1..6)))
    ) {
        prop_assume!(!coeffs[0].is_zero());
        let a = TruncSeries::new(coeffs);
        let inv = a.inverse().unwrap();
        let one = TruncSeries::constant(RatFunc::one(m), a.level());
        prop_assert_eq!(a.try_mul(&inv).unwrap(), one.clone());
        prop_assert_eq!(inv.try_mul(&a).unwrap(), one);
    }

    #[test]
    fn affine_solutions_satisfy_system(
        (m, rows, rhs) in prime().prop_flat_map(|m| {
            let p = m.p();
            (
                Just(m),
                prop::collection::vec(prop::collection::vec(0..p, 4), 1..6),
                prop::collection::vec(0..p, 6),
            )
        })
    ) {
        let rhs = &rhs[..rows.len()];
        let dot = |r: &[u64], x: &[u64]| r.iter().zip(x).fold(0, |acc, (&a, &b)| m.add(acc, m.mul(a, b)));
        match solve_affine(m, 4, &rows, rhs) {
            Some(sol) => {
                for (r, &b) in rows.iter().zip(rhs) {
                    prop_assert_eq!(dot(r, &sol.particular), b);
                    for v in &sol.nullspace {
                        prop_assert_eq!(dot(r, v), 0);
                    }
                }
            }
            // Inconsistent systems have no solution in the (finite) space.
            None => {
                let p = m.p();
                for code in 0..p.pow(4) {
                    let x: Vec<u64> = (0..4).map(|i| code / p.pow(i) % p).collect();
                    prop_assert!(rows.iter().zip(rhs).any(|(r, &b)| dot(r, &x) != b));
                }
            }
        }
    }
}
