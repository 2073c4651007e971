//! Prime modulus context and residues in F_p.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// A validated prime modulus. Every algebraic value carries the modulus it
/// was built over; combining values over different moduli panics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u64);

impl Modulus {
    /// Upper bound (exclusive) on supported primes, so products fit in `u64`.
    pub const MAX: u64 = 1 << 31;

    pub fn new(p: u64) -> Result<Self> {
        if !(2..Self::MAX).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Modulus(p))
    }

    #[inline]
    pub fn p(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn reduce(self, n: u64) -> u64 {
        n % self.0
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn reduce_signed(self, n: i64) -> u64 {
        n.rem_euclid(self.0 as i64) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u64) -> Option<u64> {
        let a = a % self.0;
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.0 - 2))
        }
    }

    pub fn elem(self, value: u64) -> Fp {
        Fp {
            value: value % self.0,
            modulus: self,
        }
    }

    /// Binomial coefficient C(n, k) mod p by Lucas' theorem.
    pub fn binom(self, mut n: u64, mut k: u64) -> u64 {
        if k > n {
            return 0;
        }
        let p = self.0;
        let mut acc = 1 % p;
        while k > 0 || n > 0 {
            let (nd, kd) = (n % p, k % p);
            if kd > nd {
                return 0;
            }
            acc = self.mul(acc, self.small_binom(nd, kd));
            n /= p;
            k /= p;
        }
        acc
    }

    // C(n, k) mod p for n < p, where k! is invertible.
    fn small_binom(self, n: u64, k: u64) -> u64 {
        let k = k.min(n - k);
        let mut num = 1;
        let mut den = 1;
        for i in 0..k {
            num = self.mul(num, n - i);
            den = self.mul(den, i + 1);
        }
        self.mul(num, self.inv(den).expect("k! is a unit for k < p"))
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// C(n, k) mod p, computed digit-wise in base p.
pub fn binom_mod_p(n: u64, k: u64, modulus: Modulus) -> Fp {
    modulus.elem(modulus.binom(n, k))
}

/// A residue class modulo a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: Modulus,
}

impl Fp {
    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Fp> {
        self.modulus.inv(self.value).map(|v| self.modulus.elem(v))
    }

    fn check(self, other: Fp) -> Modulus {
        assert_eq!(
            self.modulus, other.modulus,
            "arithmetic mixes modulus {} with modulus {}",
            self.modulus, other.modulus
        );
        self.modulus
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let m = self.check(rhs);
        m.elem(m.add(self.value, rhs.value))
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let m = self.check(rhs);
        m.elem(m.sub(self.value, rhs.value))
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let m = self.check(rhs);
        m.elem(m.mul(self.value, rhs.value))
    }
}

impl Div for Fp {
    type Output = Fp;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Fp) -> Fp {
        self * rhs.inv().expect("division by zero in F_p")
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        self.modulus.elem(self.modulus.neg(self.value))
    }
}
