//! The canonical iterative Hasse-Schmidt derivation on F_p(t).
//!
//! `D(x) = Σ d_i(x) ε^i` is the ring homomorphism determined by
//! `D(t) = t + ε`, so `D(x)` is computed by substituting `t ↦ t + ε` into the
//! numerator and denominator of `x` and dividing in `F_p(t)[ε]/(ε^(m+1))`.
//! On monomials this gives `d_i(t^n) = C(n, i) t^(n-i)`.

use crate::algebra::{pth_root, Modulus, Poly, RatFunc, Ring, TruncSeries};

/// The derivation `∂ = (∂_i)` on F_p(t) with `D(t) = t + ε`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HSDerivation {
    modulus: Modulus,
}

/// Result of the constancy test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantWitness {
    pub element: RatFunc,
    pub is_constant: bool,
    /// Smallest `i ≥ 1` with `d_i(x) ≠ 0`; absent exactly for constants.
    pub first_nonvanishing: Option<u64>,
}

impl HSDerivation {
    pub fn new(modulus: Modulus) -> Self {
        HSDerivation { modulus }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// `D(t) = t + ε` at the given level.
    pub fn generator_image(&self, level: usize) -> TruncSeries<RatFunc> {
        TruncSeries::linear(RatFunc::t(self.modulus), level)
    }

    fn poly_series(&self, f: &Poly, level: usize) -> TruncSeries<RatFunc> {
        TruncSeries::new(
            (0..=level as u32)
                .map(|i| RatFunc::from_poly(f.taylor_coeff(i)))
                .collect(),
        )
    }

    /// `D(x) mod ε^(m+1)`.
    ///
    /// For `x = N / Q`, `D(N) = D(x) D(Q)` gives `P_i = d_i(x) Q^(i+1)` as
    /// `P_i = d_i(N) Q^i - Σ_{k<i} P_k d_(i-k)(Q) Q^(i-k-1)`, all in F_p[t],
    /// with one reduction per coefficient.
    pub fn d_series(&self, x: &RatFunc, level: usize) -> TruncSeries<RatFunc> {
        self.check(x);
        let num = self.poly_series(x.numer(), level);
        if x.is_polynomial() {
            return num;
        }
        let q = x.denom();
        let mut q_pow = vec![Poly::one(self.modulus)];
        for i in 0..=level {
            let next = &q_pow[i] * q;
            q_pow.push(next);
        }
        let q_taylor: Vec<Poly> = (0..=level as u32).map(|j| q.taylor_coeff(j)).collect();
        let mut p: Vec<Poly> = Vec::with_capacity(level + 1);
        for i in 0..=level {
            let mut acc = &x.numer().taylor_coeff(i as u32) * &q_pow[i];
            for (k, pk) in p.iter().enumerate() {
                acc = &acc - &(&(pk * &q_taylor[i - k]) * &q_pow[i - k - 1]);
            }
            p.push(acc);
        }
        TruncSeries::new(
            p.into_iter()
                .enumerate()
                .map(|(i, pi)| RatFunc::new(pi, q_pow[i + 1].clone()).expect("Q ≠ 0"))
                .collect(),
        )
    }

    /// `d_i(x)`, the `ε^i` coefficient of `D(x)`.
    pub fn d_i(&self, x: &RatFunc, i: usize) -> RatFunc {
        if i == 0 {
            return x.clone();
        }
        self.d_series(x, i).coeff(i).clone()
    }

    /// `d_i(d_j(x)) == C(i+j, i) · d_{i+j}(x)`.
    pub fn check_iterativity(&self, x: &RatFunc, i: usize, j: usize) -> bool {
        let lhs = self.d_i(&self.d_i(x, j), i);
        let c = self.modulus.binom((i + j) as u64, i as u64);
        let rhs = &self.d_i(x, i + j) * &RatFunc::constant(self.modulus, c);
        lhs == rhs
    }

    /// `D(x + y) = D(x) + D(y)` and `D(xy) = D(x) D(y)` at level `m`.
    pub fn check_ring_hom(&self, x: &RatFunc, y: &RatFunc, level: usize) -> bool {
        let dx = self.d_series(x, level);
        let dy = self.d_series(y, level);
        let sum_ok = self.d_series(&(x + y), level) == dx.clone() + dy.clone();
        let prod_ok = self.d_series(&(x * y), level) == dx * dy;
        sum_ok && prod_ok
    }

    /// Decides whether `x ∈ F_p` by p-th-root descent: while `d_1(x) = 0`
    /// and `x ∉ F_p`, replace `x` by its p-th root. After `k` descent steps
    /// `x = y^(p^k)` with `d_1(y) ≠ 0`, so the first nonvanishing index is
    /// `p^k`.
    pub fn is_constant(&self, x: &RatFunc) -> ConstantWitness {
        self.check(x);
        let mut current = x.clone();
        let mut index: u64 = 1;
        loop {
            if current.is_constant() {
                return ConstantWitness {
                    element: x.clone(),
                    is_constant: true,
                    first_nonvanishing: None,
                };
            }
            if !self.d_i(&current, 1).is_zero() {
                return ConstantWitness {
                    element: x.clone(),
                    is_constant: false,
                    first_nonvanishing: Some(index),
                };
            }
            // d_1 vanishes exactly on p-th powers; the degree drops by a factor p.
            current = pth_root(&current).expect("d_1(x) = 0 forces x to be a p-th power");
            index *= self.modulus.p();
        }
    }

    fn check(&self, x: &RatFunc) {
        assert_eq!(
            self.modulus,
            x.modulus(),
            "arithmetic mixes modulus {} with modulus {}",
            self.modulus,
            x.modulus()
        );
    }

    /// `D` applied coordinatewise to a point.
    pub fn nabla_coords(&self, point: &[RatFunc], level: usize) -> Vec<TruncSeries<RatFunc>> {
        point.iter().map(|x| self.d_series(x, level)).collect()
    }

    /// `D(x) · x^{-1}` for a nonzero `x`.
    pub fn log_series(&self, x: &RatFunc, level: usize) -> Option<TruncSeries<RatFunc>> {
        let inv = x.unit_inverse()?;
        Some(self.d_series(x, level).scale(&inv))
    }
}
