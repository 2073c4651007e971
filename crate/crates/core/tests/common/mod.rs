#![allow(dead_code)]

use idarc_core::algebra::{Modulus, Poly, RatFunc};
use proptest::prelude::*;

pub fn modulus(p: u64) -> Modulus {
    Modulus::new(p).unwrap()
}

pub fn prime() -> impl Strategy<Value = Modulus> {
    prop_oneof![Just(2u64), Just(3), Just(5), Just(7)].prop_map(modulus)
}

pub fn poly(m: Modulus, max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(0..m.p(), 0..=max_deg + 1).prop_map(move |c| Poly::from_coeffs(m, &c))
}

pub fn nonzero_poly(m: Modulus, max_deg: usize) -> impl Strategy<Value = Poly> {
    poly(m, max_deg).prop_filter("nonzero", |f| !f.is_zero())
}

pub fn ratfunc(m: Modulus, max_deg: usize) -> impl Strategy<Value = RatFunc> {
    (poly(m, max_deg), nonzero_poly(m, max_deg)).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

pub fn nonzero_ratfunc(m: Modulus, max_deg: usize) -> impl Strategy<Value = RatFunc> {
    ratfunc(m, max_deg).prop_filter("nonzero", |x| !x.is_zero())
}

/// A prime together with `k` elements of F_p(t).
pub fn ratfuncs(k: usize, max_deg: usize) -> impl Strategy<Value = (Modulus, Vec<RatFunc>)> {
    prime().prop_flat_map(move |m| (Just(m), prop::collection::vec(ratfunc(m, max_deg), k)))
}

/// `C(n, k) mod p` from Pascal's triangle in exact integers.
pub fn pascal_binom(n: u64, k: u64, p: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    (row[k as usize] % p as u128) as u64
}
