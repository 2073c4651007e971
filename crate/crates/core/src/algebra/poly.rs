//! Dense univariate polynomials over F_p.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::modulus::{Fp, Modulus};
use super::ring::Ring;

/// A polynomial in one indeterminate, stored as ascending residues with no
/// trailing zeros, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    modulus: Modulus,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn zero(modulus: Modulus) -> Self {
        Poly {
            modulus,
            coeffs: vec![],
        }
    }

    pub fn one(modulus: Modulus) -> Self {
        Self::constant(modulus, 1)
    }

    pub fn constant(modulus: Modulus, c: u64) -> Self {
        Self::monomial(modulus, c, 0)
    }

    /// The indeterminate `t`.
    pub fn t(modulus: Modulus) -> Self {
        Self::monomial(modulus, 1, 1)
    }

    pub fn monomial(modulus: Modulus, c: u64, exp: u32) -> Self {
        let c = modulus.reduce(c);
        if c == 0 {
            return Poly::zero(modulus);
        }
        let mut coeffs = vec![0; exp as usize + 1];
        coeffs[exp as usize] = c;
        Poly { modulus, coeffs }
    }

    /// Builds a polynomial from ascending coefficients `c_0, c_1, ...`.
    pub fn from_coeffs(modulus: Modulus, coeffs: &[u64]) -> Self {
        Self::from_vec(modulus, coeffs.iter().map(|&c| modulus.reduce(c)).collect())
    }

    /// Takes reduced residues.
    fn from_vec(modulus: Modulus, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { modulus, coeffs }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms(modulus: Modulus, terms: impl IntoIterator<Item = (u32, u64)>) -> Self {
        let mut coeffs = Vec::new();
        for (e, c) in terms {
            let e = e as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, 0);
            }
            coeffs[e] = modulus.add(coeffs[e], modulus.reduce(c));
        }
        Self::from_vec(modulus, coeffs)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, with `None` standing for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.len().checked_sub(1).map(|d| d as u32)
    }

    pub fn leading_coeff(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn coeff(&self, exp: u32) -> u64 {
        self.coeffs.get(exp as usize).copied().unwrap_or(0)
    }

    pub fn coeff_fp(&self, exp: u32) -> Fp {
        self.modulus.elem(self.coeff(exp))
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, u64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(e, &c)| (e as u32, c))
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    fn check(&self, other: &Poly) {
        assert_eq!(
            self.modulus, other.modulus,
            "arithmetic mixes modulus {} with modulus {}",
            self.modulus, other.modulus
        );
    }

    pub fn scale(&self, c: u64) -> Poly {
        let m = self.modulus;
        let c = m.reduce(c);
        if c == 0 {
            return Poly::zero(m);
        }
        Poly {
            modulus: m,
            coeffs: self.coeffs.iter().map(|&v| m.mul(v, c)).collect(),
        }
    }

    pub fn shift(&self, by: u32) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; by as usize];
        coeffs.extend_from_slice(&self.coeffs);
        Poly {
            modulus: self.modulus,
            coeffs,
        }
    }

    pub fn make_monic(&self) -> Poly {
        match self.modulus.inv(self.leading_coeff()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        self.check(divisor);
        let m = self.modulus;
        let dd = divisor.degree().expect("polynomial division by zero") as usize;
        let lead_inv = m
            .inv(divisor.leading_coeff())
            .expect("leading coefficient is nonzero");
        if self.coeffs.len() <= dd {
            return (Poly::zero(m), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0; rem.len() - dd];
        for shift in (0..quot.len()).rev() {
            let c = m.mul(rem[shift + dd], lead_inv);
            quot[shift] = c;
            if c != 0 {
                for (k, &v) in divisor.coeffs.iter().enumerate() {
                    rem[shift + k] = m.sub(rem[shift + k], m.mul(v, c));
                }
            }
        }
        rem.truncate(dd);
        (Poly::from_vec(m, quot), Poly::from_vec(m, rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.check(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Coefficient of `ε^i` in `f(t + ε)`, i.e. `Σ c_n C(n, i) t^(n-i)`.
    pub fn taylor_coeff(&self, i: u32) -> Poly {
        let m = self.modulus;
        let i = i as usize;
        if self.coeffs.len() <= i {
            return Poly::zero(m);
        }
        let coeffs = (i..self.coeffs.len())
            .map(|n| m.mul(self.coeffs[n], m.binom(n as u64, i as u64)))
            .collect();
        Poly::from_vec(m, coeffs)
    }

    /// Whether every exponent is divisible by `p`.
    pub fn is_pth_power(&self) -> bool {
        let p = self.modulus.p();
        self.terms().all(|(e, _)| (e as u64).is_multiple_of(p))
    }

    /// `Σ c_n t^(n/p)`, the p-th root when [`Poly::is_pth_power`] holds;
    /// coefficients are fixed by Frobenius on F_p.
    pub fn pth_root_unchecked(&self) -> Poly {
        let p = self.modulus.p() as u32;
        Poly::from_terms(self.modulus, self.terms().map(|(e, c)| (e / p, c)))
    }

    pub fn eval(&self, x: u64) -> u64 {
        let m = self.modulus;
        let x = m.reduce(x);
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| m.add(m.mul(acc, x), c))
    }

    /// Renders with descending exponents, e.g. `2*t^3 + t + 1`.
    pub fn fmt_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms()
            .rev()
            .map(|(e, c)| match (e, c) {
                (0, c) => c.to_string(),
                (1, 1) => var.to_string(),
                (1, c) => format!("{c}*{var}"),
                (e, 1) => format!("{var}^{e}"),
                (e, c) => format!("{c}*{var}^{e}"),
            })
            .collect();
        parts.join(" + ")
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    fn zip_with(&self, rhs: &Poly, f: impl Fn(u64, u64) -> u64) -> Poly {
        self.check(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|k| f(self.coeff(k as u32), rhs.coeff(k as u32)))
            .collect();
        Poly::from_vec(self.modulus, coeffs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with("t"))
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let m = self.modulus;
        self.zip_with(rhs, |a, b| m.add(a, b))
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let m = self.modulus;
        self.zip_with(rhs, |a, b| m.sub(a, b))
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check(rhs);
        let m = self.modulus;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(m);
        }
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = m.add(out[i + j], m.mul(a, b));
            }
        }
        Poly::from_vec(m, out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(self.modulus.p() - 1)
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $f:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $f(self, rhs: $t) -> $t {
                $tr::$f(&self, &rhs)
            }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(Poly, Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Ring for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero(self.modulus)
    }

    fn one_like(&self) -> Self {
        Poly::one(self.modulus)
    }

    fn int_like(&self, n: i64) -> Self {
        Poly::constant(self.modulus, self.modulus.reduce_signed(n))
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.degree() == Some(0) {
            self.modulus
                .inv(self.coeff(0))
                .map(|c| Poly::constant(self.modulus, c))
        } else {
            None
        }
    }
}
