//! Truncated power series `R[ε]/(ε^(m+1))`.

use std::ops::{Add, Mul, Neg, Sub};

use super::ring::Ring;
use crate::error::{Error, Result};

/// `c_0 + c_1 ε + ... + c_m ε^m`. The vector always has exactly `m + 1`
/// entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> TruncSeries<R> {
    /// Panics on an empty coefficient vector.
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a truncated series has at least one coefficient"
        );
        TruncSeries { coeffs }
    }

    /// `c + 0ε + ... + 0ε^m`.
    pub fn constant(c: R, level: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero; level + 1];
        coeffs[0] = c;
        TruncSeries { coeffs }
    }

    /// `c + ε`, the image of a coordinate under the canonical derivation.
    pub fn linear(c: R, level: usize) -> Self {
        let mut s = Self::constant(c, level);
        if level >= 1 {
            s.coeffs[1] = s.coeffs[0].one_like();
        }
        s
    }

    pub fn level(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &R {
        &self.coeffs[i]
    }

    pub fn constant_term(&self) -> &R {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    /// Keeps coefficients up to `ε^level`.
    pub fn truncate(&self, level: usize) -> Result<Self> {
        if level > self.level() {
            return Err(Error::ProjectionAboveLevel {
                from: self.level(),
                to: level,
            });
        }
        Ok(TruncSeries {
            coeffs: self.coeffs[..=level].to_vec(),
        })
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> TruncSeries<S> {
        TruncSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    fn same_level(&self, other: &Self) -> Result<()> {
        if self.level() != other.level() {
            return Err(Error::LevelMismatch {
                left: self.level(),
                right: other.level(),
            });
        }
        Ok(())
    }

    /// Cauchy product truncated at the common level.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_level(other)?;
        let m = self.level();
        let mut coeffs = vec![self.coeffs[0].zero_like(); m + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=m - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(TruncSeries { coeffs })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_level(other)?;
        Ok(TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    /// Multiplicative inverse via `b_0 = a_0^{-1}`,
    /// `b_n = -a_0^{-1} Σ_{k=1..n} a_k b_{n-k}`.
    pub fn inverse(&self) -> Result<Self> {
        let a0_inv = self.coeffs[0].unit_inverse().ok_or(Error::NonUnit)?;
        let mut out = Vec::with_capacity(self.coeffs.len());
        out.push(a0_inv.clone());
        for n in 1..self.coeffs.len() {
            let mut acc = a0_inv.zero_like();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc = acc + self.coeffs[k].clone() * out[n - k].clone();
                }
            }
            out.push(-(a0_inv.clone() * acc));
        }
        Ok(TruncSeries { coeffs: out })
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.clone() * c.clone())
    }
}

/// Cauchy product at a shared level.
pub fn series_mul<R: Ring>(a: &TruncSeries<R>, b: &TruncSeries<R>) -> Result<TruncSeries<R>> {
    a.try_mul(b)
}

pub fn series_inverse<R: Ring>(a: &TruncSeries<R>) -> Result<TruncSeries<R>> {
    a.inverse()
}

impl<R: Ring> Add for TruncSeries<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<R: Ring> Sub for TruncSeries<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: Ring> Mul for TruncSeries<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<R: Ring> Neg for TruncSeries<R> {
    type Output = Self;
    fn neg(self) -> Self {
        TruncSeries {
            coeffs: self.coeffs.into_iter().map(Neg::neg).collect(),
        }
    }
}

impl<R: Ring> Ring for TruncSeries<R> {
    fn zero_like(&self) -> Self {
        Self::constant(self.coeffs[0].zero_like(), self.level())
    }

    fn one_like(&self) -> Self {
        Self::constant(self.coeffs[0].one_like(), self.level())
    }

    fn int_like(&self, n: i64) -> Self {
        Self::constant(self.coeffs[0].int_like(n), self.level())
    }

    fn is_zero(&self) -> bool {
        TruncSeries::is_zero(self)
    }

    fn unit_inverse(&self) -> Option<Self> {
        self.inverse().ok()
    }
}
