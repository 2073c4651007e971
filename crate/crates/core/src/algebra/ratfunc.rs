//! Reduced rational functions in F_p(t).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::modulus::Modulus;
use super::poly::{forward_owned, Poly};
use super::ring::Ring;
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` monic, so equality is
/// structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

/// Cancels the gcd and normalizes the denominator to be monic.
pub fn ratfunc_reduce(num: Poly, den: Poly) -> Result<RatFunc> {
    RatFunc::new(num, den)
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        assert_eq!(
            num.modulus(),
            den.modulus(),
            "arithmetic mixes modulus {} with modulus {}",
            num.modulus(),
            den.modulus()
        );
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        let m = num.modulus();
        if num.is_zero() {
            return RatFunc {
                num,
                den: Poly::one(m),
            };
        }
        let (num, den) = if den.is_one() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_rem(&g).0, den.div_rem(&g).0)
            }
        };
        let lead_inv = m.inv(den.leading_coeff()).expect("denominator is nonzero");
        if lead_inv == 1 {
            RatFunc { num, den }
        } else {
            RatFunc {
                num: num.scale(lead_inv),
                den: den.scale(lead_inv),
            }
        }
    }

    /// `num / den` already coprime with `den` monic.
    fn coprime(num: Poly, den: Poly) -> Self {
        debug_assert!(den.is_monic());
        if num.is_zero() {
            return RatFunc::zero(den.modulus());
        }
        RatFunc { num, den }
    }

    pub fn from_poly(num: Poly) -> Self {
        let den = Poly::one(num.modulus());
        RatFunc { num, den }
    }

    pub fn zero(modulus: Modulus) -> Self {
        Self::from_poly(Poly::zero(modulus))
    }

    pub fn one(modulus: Modulus) -> Self {
        Self::constant(modulus, 1)
    }

    pub fn constant(modulus: Modulus, c: u64) -> Self {
        Self::from_poly(Poly::constant(modulus, c))
    }

    pub fn t(modulus: Modulus) -> Self {
        Self::from_poly(Poly::t(modulus))
    }

    pub fn modulus(&self) -> Modulus {
        self.num.modulus()
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Whether the value lies in F_p.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<u64> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    /// Multiplication by `c ∈ F_p`.
    pub fn scale_const(&self, c: u64) -> RatFunc {
        let num = self.num.scale(c);
        if num.is_zero() {
            return RatFunc::zero(self.modulus());
        }
        RatFunc {
            num,
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, exp: i64) -> Result<RatFunc> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        Ok(Ring::pow(&base, exp.unsigned_abs() as u32))
    }

    /// Rendering in the expression grammar, e.g. `(t + 1)/t^2`.
    pub fn fmt_with(&self, var: &str) -> String {
        let num = self.num.fmt_with(var);
        if self.den.is_one() {
            return num;
        }
        let den = self.den.fmt_with(var);
        let num = if self.num.term_count() > 1 {
            format!("({num})")
        } else {
            num
        };
        let den = if self.den.term_count() > 1 || self.den.leading_coeff() != 1 {
            format!("({den})")
        } else {
            den
        };
        format!("{num}/{den}")
    }

    /// Whether the rendering needs parentheses when used as a factor.
    pub fn is_compound(&self) -> bool {
        !self.den.is_one() || self.num.term_count() > 1
    }

    fn check(&self, other: &RatFunc) {
        assert_eq!(
            self.modulus(),
            other.modulus(),
            "arithmetic mixes modulus {} with modulus {}",
            self.modulus(),
            other.modulus()
        );
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with("t"))
    }
}

// Operands are reduced with monic denominators; the gcds below only cancel
// what can actually cancel, so results stay reduced without a full gcd.
impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        self.check(rhs);
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFunc::coprime(num, &self.den * &rhs.den);
        }
        let b = self.den.div_rem(&g).0;
        let d = rhs.den.div_rem(&g).0;
        let t = &(&self.num * &d) + &(&rhs.num * &b);
        if t.is_zero() {
            return RatFunc::zero(self.modulus());
        }
        let g2 = t.gcd(&g);
        RatFunc::coprime(t.div_rem(&g2).0, (&b * &rhs.den).div_rem(&g2).0)
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        self.check(rhs);
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.modulus());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let cancel = |f: &Poly, g: &Poly| {
            if g.is_one() {
                f.clone()
            } else {
                f.div_rem(g).0
            }
        };
        RatFunc::coprime(
            &cancel(&self.num, &g1) * &cancel(&rhs.num, &g2),
            &cancel(&self.den, &g2) * &cancel(&rhs.den, &g1),
        )
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

forward_owned!(RatFunc, Add add, Sub sub, Mul mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Ring for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero(self.modulus())
    }

    fn one_like(&self) -> Self {
        RatFunc::one(self.modulus())
    }

    fn int_like(&self, n: i64) -> Self {
        let m = self.modulus();
        RatFunc::constant(m, m.reduce_signed(n))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn unit_inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
}

/// Returns `y` with `y^p = x`, or [`Error::NotAPthPower`] when `x` is not in
/// `F_p(t)^p`.
pub fn pth_root(x: &RatFunc) -> Result<RatFunc> {
    if x.num.is_pth_power() && x.den.is_pth_power() {
        // Roots of a coprime pair stay coprime, and the denominator stays monic.
        Ok(RatFunc {
            num: x.num.pth_root_unchecked(),
            den: x.den.pth_root_unchecked(),
        })
    } else {
        Err(Error::NotAPthPower)
    }
}
