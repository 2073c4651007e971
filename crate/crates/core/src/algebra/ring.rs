use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// Commutative ring whose elements carry their own context (modulus, number
/// of variables, truncation level), so constants are produced from an
/// existing element rather than from a static.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;

    fn one_like(&self) -> Self;

    /// The image of the integer `n` in this ring (reduced mod p).
    fn int_like(&self, n: i64) -> Self;

    fn is_zero(&self) -> bool;

    /// Multiplicative inverse when `self` is a unit.
    fn unit_inverse(&self) -> Option<Self>;

    fn pow(&self, mut exp: u32) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base.clone();
            }
            exp >>= 1;
            if exp > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}
