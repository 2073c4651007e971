mod common;

use common::*;
use idarc_core::algebra::{Poly, RatFunc, Ring, TruncSeries};
use idarc_core::derivation::HSDerivation;
use proptest::prelude::*;

/// `d_i` on a polynomial from Pascal binomials, independent of Lucas.
fn d_i_poly_oracle(f: &Poly, i: u32) -> Poly {
    let m = f.modulus();
    Poly::from_terms(
        m,
        f.terms()
            .filter(|&(n, _)| n >= i)
            .map(|(n, c)| (n - i, m.mul(c, pascal_binom(n as u64, i as u64, m.p())))),
    )
}

fn series(coeffs: &[&str]) -> Vec<String> {
    coeffs.iter().map(|s| s.to_string()).collect()
}

fn rendered(s: &TruncSeries<RatFunc>) -> Vec<String> {
    s.coeffs().iter().map(ToString::to_string).collect()
}

// Values below were computed independently by Taylor expansion of
// x(t + e) in a computer algebra system and reduced mod p.
#[test]
fn frozen_expansions() {
    let m2 = modulus(2);
    let d = HSDerivation::new(m2);
    let t = RatFunc::t(m2);
    assert_eq!(
        rendered(&d.d_series(&t.pow(3), 3)),
        series(&["t^3", "t^2", "t", "1"])
    );

    let m3 = modulus(3);
    let d = HSDerivation::new(m3);
    let t = RatFunc::t(m3);
    assert_eq!(
        rendered(&d.d_series(&t.inv().unwrap(), 2)),
        series(&["1/t", "2/t^2", "1/t^3"])
    );
    assert_eq!(
        rendered(&d.d_series(&t.pow(2), 2)),
        series(&["t^2", "2*t", "1"])
    );
    let x = RatFunc::new(Poly::t(m3), Poly::from_coeffs(m3, &[1, 1])).unwrap();
    assert_eq!(
        rendered(&d.d_series(&x, 3)),
        series(&[
            "t/(t + 1)",
            "1/(t^2 + 2*t + 1)",
            "2/(t^3 + 1)",
            "1/(t^4 + t^3 + t + 1)"
        ])
    );
}

#[test]
fn monomials_against_pascal() {
    for p in [2, 3, 5, 7] {
        let m = modulus(p);
        let d = HSDerivation::new(m);
        for n in 0..=30 {
            let tn = Poly::monomial(m, 1, n);
            for i in 0..=n + 1 {
                let got = d.d_i(&RatFunc::from_poly(tn.clone()), i as usize);
                assert_eq!(
                    got,
                    RatFunc::from_poly(d_i_poly_oracle(&tn, i)),
                    "p={p} d_{i}(t^{n})"
                );
            }
        }
    }
}

proptest! {
    #[test]
    fn polynomials_against_pascal(
        (f, i) in prime().prop_flat_map(|m| (poly(m, 12), 0u32..8))
    ) {
        let d = HSDerivation::new(f.modulus());
        prop_assert_eq!(d.d_i(&RatFunc::from_poly(f.clone()), i as usize), RatFunc::from_poly(d_i_poly_oracle(&f, i)));
    }

    /// `D(N) = D(x) D(Q)` for `x = N / Q`, checked in series arithmetic.
    #[test]
    fn quotient_rule((m, xs) in ratfuncs(1, 6), level in 0usize..6) {
        let x = &xs[0];
        let d = HSDerivation::new(m);
        let lift = |f: &Poly| d.d_series(&RatFunc::from_poly(f.clone()), level);
        let lhs = lift(x.numer());
        let rhs = d.d_series(x, level).try_mul(&lift(x.denom())).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ring_homomorphism((m, xs) in ratfuncs(2, 5), level in 0usize..6) {
        let d = HSDerivation::new(m);
        prop_assert!(d.check_ring_hom(&xs[0], &xs[1], level));
        let one = RatFunc::one(m);
        prop_assert_eq!(d.d_series(&one, level), TruncSeries::constant(one, level));
    }

    #[test]
    fn iterative((m, xs) in ratfuncs(1, 5), i in 0usize..5, j in 0usize..5) {
        let d = HSDerivation::new(m);
        prop_assert!(d.check_iterativity(&xs[0], i, j));
    }

    #[test]
    fn constants_are_fp((m, xs) in ratfuncs(1, 4), k in 0u32..3) {
        let d = HSDerivation::new(m);
        let y = xs[0].pow(m.p().pow(k) as u32);
        let w = d.is_constant(&y);
        prop_assert_eq!(w.is_constant, y.is_constant());
        if let Some(first) = w.first_nonvanishing {
            let first = first as usize;
            prop_assert!(!d.d_i(&y, first).is_zero());
            for i in 1..first.min(30) {
                prop_assert!(d.d_i(&y, i).is_zero(), "d_{}({}) should vanish", i, y);
            }
            prop_assert!(first as u64 >= m.p().pow(k));
        } else {
            let big = d.d_series(&y, 8);
            prop_assert!(big.coeffs()[1..].iter().all(Ring::is_zero));
        }
    }
}
