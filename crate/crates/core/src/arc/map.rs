use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::{Modulus, MultiPoly, RatFunc, Ring, TruncSeries};
use crate::error::{Error, Result};

/// A regular function `num / den` on a localized coordinate ring. The
/// denominator is a product of polynomials that are invertible on the
/// source variety; fractions are not reduced, and equality is by
/// cross-multiplication.
#[derive(Clone, Debug)]
pub struct RegularFn {
    num: MultiPoly,
    den: MultiPoly,
}

impl RegularFn {
    pub fn poly(num: MultiPoly) -> Self {
        let den = MultiPoly::one(num.modulus(), num.n_vars());
        RegularFn { num, den }
    }

    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.n_vars() != den.n_vars() {
            return Err(Error::DimensionMismatch {
                expected: num.n_vars(),
                actual: den.n_vars(),
            });
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: MultiPoly, den: MultiPoly) -> Self {
        // Constant denominators fold into the numerator.
        if let Some(c) = den.as_constant() {
            let inv = c.inv().expect("denominator is nonzero");
            let one = MultiPoly::one(num.modulus(), num.n_vars());
            return RegularFn {
                num: num.scale(&inv),
                den: one,
            };
        }
        if num.is_zero() {
            let one = MultiPoly::one(num.modulus(), num.n_vars());
            return RegularFn { num, den: one };
        }
        RegularFn { num, den }
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn n_vars(&self) -> usize {
        self.num.n_vars()
    }

    pub fn modulus(&self) -> Modulus {
        self.num.modulus()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.as_constant().is_some()
    }

    pub fn is_over_constants(&self) -> bool {
        self.num.is_over_constants() && self.den.is_over_constants()
    }

    /// Evaluates in any ring; fails when the denominator is not a unit there.
    pub fn eval<R: Ring>(&self, point: &[R], embed: impl Fn(&RatFunc) -> R) -> Result<R> {
        let num = self.num.eval(point, &embed);
        if self.is_polynomial() {
            return Ok(num);
        }
        let den = self.den.eval(point, &embed);
        let inv = den.unit_inverse().ok_or(Error::OutsideDomain)?;
        Ok(num * inv)
    }

    /// Re-embeds into `n_vars` variables, sending variable `i` to `index(i)`.
    pub fn remap(&self, n_vars: usize, index: impl Fn(usize) -> usize) -> RegularFn {
        RegularFn {
            num: self.num.remap(n_vars, &index),
            den: self.den.remap(n_vars, &index),
        }
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let num = self.num.fmt_with(names);
        if self.is_polynomial() {
            return num;
        }
        let wrap = |p: &MultiPoly, s: String| {
            if p.term_count() > 1 || s.contains('*') {
                format!("({s})")
            } else {
                s
            }
        };
        let den = self.den.fmt_with(names);
        format!("{}/{}", wrap(&self.num, num), wrap(&self.den, den))
    }
}

impl PartialEq for RegularFn {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Add for RegularFn {
    type Output = RegularFn;
    fn add(self, rhs: RegularFn) -> RegularFn {
        if self.den == rhs.den {
            return RegularFn::normalized(&self.num + &rhs.num, self.den);
        }
        RegularFn::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for RegularFn {
    type Output = RegularFn;
    fn sub(self, rhs: RegularFn) -> RegularFn {
        self + (-rhs)
    }
}

impl Mul for RegularFn {
    type Output = RegularFn;
    fn mul(self, rhs: RegularFn) -> RegularFn {
        RegularFn::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for RegularFn {
    type Output = RegularFn;
    fn neg(self) -> RegularFn {
        RegularFn {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Ring for RegularFn {
    fn zero_like(&self) -> Self {
        RegularFn::poly(self.num.zero_like())
    }

    fn one_like(&self) -> Self {
        RegularFn::poly(self.num.one_like())
    }

    fn int_like(&self, n: i64) -> Self {
        RegularFn::poly(self.num.int_like(n))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Any nonzero function is treated as invertible: denominators produced
    /// by evaluation are products of the inverted polynomials of the source.
    fn unit_inverse(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(RegularFn::normalized(self.den.clone(), self.num.clone()))
        }
    }
}

/// A morphism of affine varieties given by regular-function components.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMap {
    source_dim: usize,
    components: Vec<RegularFn>,
}

impl PolyMap {
    pub fn new(source_dim: usize, components: Vec<RegularFn>) -> Result<Self> {
        for c in &components {
            if c.n_vars() != source_dim {
                return Err(Error::DimensionMismatch {
                    expected: source_dim,
                    actual: c.n_vars(),
                });
            }
        }
        Ok(PolyMap {
            source_dim,
            components,
        })
    }

    pub fn from_polys(source_dim: usize, components: Vec<MultiPoly>) -> Result<Self> {
        Self::new(
            source_dim,
            components.into_iter().map(RegularFn::poly).collect(),
        )
    }

    pub fn identity(modulus: Modulus, n: usize) -> Self {
        PolyMap {
            source_dim: n,
            components: (0..n)
                .map(|i| RegularFn::poly(MultiPoly::var(modulus, n, i)))
                .collect(),
        }
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[RegularFn] {
        &self.components
    }

    pub fn is_over_constants(&self) -> bool {
        self.components.iter().all(RegularFn::is_over_constants)
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n != self.source_dim {
            return Err(Error::DimensionMismatch {
                expected: self.source_dim,
                actual: n,
            });
        }
        Ok(())
    }

    /// Evaluates every component over an arbitrary coefficient ring.
    pub fn apply_in<R: Ring>(&self, point: &[R], embed: impl Fn(&RatFunc) -> R) -> Result<Vec<R>> {
        self.check_dim(point.len())?;
        self.components
            .iter()
            .map(|c| c.eval(point, &embed))
            .collect()
    }

    pub fn apply(&self, point: &[RatFunc]) -> Result<Vec<RatFunc>> {
        self.apply_in(point, RatFunc::clone)
    }

    /// Evaluates the map on `k^(m)`-points, i.e. on coordinate series.
    pub fn apply_series(
        &self,
        point: &[TruncSeries<RatFunc>],
    ) -> Result<Vec<TruncSeries<RatFunc>>> {
        let level = point.first().map_or(0, TruncSeries::level);
        if let Some(bad) = point.iter().find(|s| s.level() != level) {
            return Err(Error::LevelMismatch {
                left: level,
                right: bad.level(),
            });
        }
        self.apply_in(point, |c| TruncSeries::constant(c.clone(), level))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PolyMap) -> Result<PolyMap> {
        self.check_dim(inner.target_dim())?;
        let components = self.apply_in(&inner.components, |c| {
            RegularFn::poly(MultiPoly::constant(inner.source_dim, c.clone()))
        })?;
        PolyMap::new(inner.source_dim, components)
    }

    /// `A_m(f)`: the induced map on arc coordinates. Source and target
    /// coordinates are ordered var-major, level-minor: `(x_i)_j` has index
    /// `i (m + 1) + j`.
    pub fn prolong(&self, level: usize) -> PolyMap {
        let width = level + 1;
        let n_arc = self.source_dim * width;
        let Some(modulus) = self.components.first().map(RegularFn::modulus) else {
            return PolyMap {
                source_dim: n_arc,
                components: vec![],
            };
        };
        let generic: Vec<TruncSeries<RegularFn>> = (0..self.source_dim)
            .map(|i| {
                TruncSeries::new(
                    (0..width)
                        .map(|j| RegularFn::poly(MultiPoly::var(modulus, n_arc, i * width + j)))
                        .collect(),
                )
            })
            .collect();
        let embed = |c: &RatFunc| {
            TruncSeries::constant(
                RegularFn::poly(MultiPoly::constant(n_arc, c.clone())),
                level,
            )
        };
        let series = self
            .apply_in(&generic, embed)
            .expect("denominators are units at the generic arc");
        PolyMap {
            source_dim: n_arc,
            components: series
                .into_iter()
                .flat_map(TruncSeries::into_coeffs)
                .collect(),
        }
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self.components.iter().map(|c| c.fmt_with(names)).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.source_dim).map(|i| format!("x{i}")).collect();
        f.write_str(&self.fmt_with(&names))
    }
}

/// `A_m(f)`.
pub fn prolong_morphism(f: &PolyMap, level: usize) -> PolyMap {
    f.prolong(level)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn prolong_square() {
        let m = Modulus::new(7).unwrap();
        let x = MultiPoly::var(m, 1, 0);
        let f = PolyMap::from_polys(1, vec![&x * &x]).unwrap();
        let a = f.prolong(1);
        assert_eq!(a.fmt_with(&names(&["x_0", "x_1"])), "(x_0^2, 2*x_0*x_1)");
    }

    #[test]
    fn prolong_product() {
        let m = Modulus::new(5).unwrap();
        let x = MultiPoly::var(m, 2, 0);
        let y = MultiPoly::var(m, 2, 1);
        let f = PolyMap::from_polys(2, vec![&x * &y]).unwrap();
        let a = f.prolong(1);
        assert_eq!(
            a.fmt_with(&names(&["x_0", "x_1", "y_0", "y_1"])),
            "(x_0*y_0, x_0*y_1 + x_1*y_0)"
        );
    }

    #[test]
    fn prolong_identity_is_identity() {
        let m = Modulus::new(3).unwrap();
        for n in 1..3 {
            for level in 0..4 {
                let id = PolyMap::identity(m, n);
                assert_eq!(id.prolong(level), PolyMap::identity(m, n * (level + 1)));
            }
        }
    }

    #[test]
    fn prolong_inverse_map() {
        // 1/(x_0 + x_1 ε) = 1/x_0 - x_1/x_0^2 ε
        let m = Modulus::new(5).unwrap();
        let x = MultiPoly::var(m, 1, 0);
        let inv = PolyMap::new(1, vec![RegularFn::new(MultiPoly::one(m, 1), x).unwrap()]).unwrap();
        let a = inv.prolong(1);
        let x0 = MultiPoly::var(m, 2, 0);
        let x1 = MultiPoly::var(m, 2, 1);
        let expected = vec![
            RegularFn::new(MultiPoly::one(m, 2), x0.clone()).unwrap(),
            RegularFn::new(-x1, &x0 * &x0).unwrap(),
        ];
        assert_eq!(a.components(), expected.as_slice());
    }

    #[test]
    fn composition() {
        let m = Modulus::new(3).unwrap();
        let x = MultiPoly::var(m, 1, 0);
        let sq = PolyMap::from_polys(1, vec![&x * &x]).unwrap();
        let shift = PolyMap::from_polys(1, vec![&x + &MultiPoly::one(m, 1)]).unwrap();
        let h = sq.compose(&shift).unwrap();
        let t = RatFunc::t(m);
        assert_eq!(
            h.apply(std::slice::from_ref(&t)).unwrap(),
            sq.apply(&shift.apply(&[t]).unwrap()).unwrap()
        );
    }

    #[test]
    fn outside_domain() {
        let m = Modulus::new(3).unwrap();
        let x = MultiPoly::var(m, 1, 0);
        let inv = PolyMap::new(1, vec![RegularFn::new(MultiPoly::one(m, 1), x).unwrap()]).unwrap();
        assert_eq!(inv.apply(&[RatFunc::zero(m)]), Err(Error::OutsideDomain));
    }
}
