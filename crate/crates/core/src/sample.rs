//! Seeded random sampling of field elements, group points and arcs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{pth_root, Modulus, MultiPoly, Poly, RatFunc, Ring, TruncSeries};
use crate::arc::{ArcPoint, PolyMap, VarietyPresentation};
use crate::group::GroupPresentation;

/// Deterministic for a fixed `(modulus, seed)`.
#[derive(Clone, Debug)]
pub struct Sampler {
    modulus: Modulus,
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(modulus: Modulus, seed: u64) -> Self {
        Sampler {
            modulus,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn scalar(&mut self) -> u64 {
        self.rng.gen_range(0..self.modulus.p())
    }

    pub fn nonzero_scalar(&mut self) -> u64 {
        self.rng.gen_range(1..self.modulus.p())
    }

    /// Degree at most `max_deg`; may be zero.
    pub fn poly(&mut self, max_deg: u32) -> Poly {
        let coeffs: Vec<u64> = (0..=max_deg).map(|_| self.scalar()).collect();
        Poly::from_coeffs(self.modulus, &coeffs)
    }

    pub fn nonzero_poly(&mut self, max_deg: u32) -> Poly {
        loop {
            let f = self.poly(max_deg);
            if !f.is_zero() {
                return f;
            }
        }
    }

    /// Numerator and denominator of degree at most `max_deg` before reduction.
    pub fn ratfunc(&mut self, max_deg: u32) -> RatFunc {
        let num = self.poly(max_deg);
        let den = self.nonzero_poly(max_deg);
        RatFunc::new(num, den).expect("denominator is nonzero")
    }

    pub fn nonzero_ratfunc(&mut self, max_deg: u32) -> RatFunc {
        loop {
            let x = self.ratfunc(max_deg);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// `x^p` for a random `x`.
    pub fn pth_power(&mut self, max_deg: u32) -> RatFunc {
        let x = self.ratfunc(max_deg);
        x.pow(self.modulus.p() as u32)
    }

    /// A random element that is not a p-th power.
    pub fn non_pth_power(&mut self, max_deg: u32) -> RatFunc {
        loop {
            let x = self.ratfunc(max_deg.max(1));
            if pth_root(&x).is_err() {
                return x;
            }
        }
    }

    /// Polynomial of degree in `1..=max_deg`.
    pub fn nonconstant_poly(&mut self, max_deg: u32) -> RatFunc {
        loop {
            let f = self.poly(max_deg.max(1));
            if f.degree().is_some_and(|d| d > 0) {
                return RatFunc::from_poly(f);
            }
        }
    }

    /// Point of `G(F_p(t))` for groups whose variety has no equations.
    /// `None` for presentations with equations.
    pub fn group_point(&mut self, group: &GroupPresentation, max_deg: u32) -> Option<Vec<RatFunc>> {
        self.open_point(group.variety(), |s| s.ratfunc(max_deg))
    }

    /// Point of `G(F_p)`.
    pub fn constant_group_point(&mut self, group: &GroupPresentation) -> Option<Vec<RatFunc>> {
        let m = self.modulus;
        self.open_point(group.variety(), |s| RatFunc::constant(m, s.scalar()))
    }

    /// Point of `G(F_p(t))` with polynomial coordinates.
    pub fn polynomial_group_point(
        &mut self,
        group: &GroupPresentation,
        max_deg: u32,
    ) -> Option<Vec<RatFunc>> {
        self.open_point(group.variety(), |s| RatFunc::from_poly(s.poly(max_deg)))
    }

    fn open_point(
        &mut self,
        v: &VarietyPresentation,
        mut coord: impl FnMut(&mut Self) -> RatFunc,
    ) -> Option<Vec<RatFunc>> {
        if !v.equations().is_empty() {
            return None;
        }
        loop {
            let pt: Vec<RatFunc> = (0..v.n_vars()).map(|_| coord(self)).collect();
            if v.contains(&pt).expect("dimension matches") {
                return Some(pt);
            }
        }
    }

    /// Random point of `A_m G`: a group point as base, arbitrary higher
    /// coordinates. Open subsets of affine space only.
    pub fn arc_element(
        &mut self,
        group: &GroupPresentation,
        level: usize,
        max_deg: u32,
    ) -> Option<ArcPoint> {
        let base = self.group_point(group, max_deg)?;
        let coords = base
            .into_iter()
            .map(|b| {
                let mut c = vec![b];
                c.extend((0..level).map(|_| self.ratfunc(max_deg)));
                TruncSeries::new(c)
            })
            .collect();
        Some(ArcPoint::new(level, coords).expect("levels agree"))
    }

    /// Arc over the identity with random higher coordinates.
    pub fn identity_fiber_arc(
        &mut self,
        group: &GroupPresentation,
        level: usize,
        max_deg: u32,
    ) -> ArcPoint {
        let coords = group
            .identity()
            .iter()
            .map(|e| {
                let mut c = vec![e.clone()];
                c.extend((0..level).map(|_| self.ratfunc(max_deg)));
                TruncSeries::new(c)
            })
            .collect();
        ArcPoint::new(level, coords).expect("levels agree")
    }

    /// Random polynomial in `n_vars` variables with F_p coefficients.
    pub fn multipoly(&mut self, n_vars: usize, max_deg: u32, max_terms: usize) -> MultiPoly {
        let n_terms = self.rng.gen_range(1..=max_terms);
        let terms: Vec<(Vec<u32>, RatFunc)> = (0..n_terms)
            .map(|_| {
                let mut exps = vec![0u32; n_vars];
                let mut budget = self.rng.gen_range(0..=max_deg);
                for e in exps.iter_mut() {
                    let k = self.rng.gen_range(0..=budget);
                    *e = k;
                    budget -= k;
                }
                (exps, RatFunc::constant(self.modulus, self.scalar()))
            })
            .collect();
        MultiPoly::from_terms(self.modulus, n_vars, terms)
    }

    /// Polynomial map `A^source → A^target` over F_p.
    pub fn poly_map(&mut self, source: usize, target: usize, max_deg: u32) -> PolyMap {
        let comps = (0..target)
            .map(|_| self.multipoly(source, max_deg, 3))
            .collect();
        PolyMap::from_polys(source, comps).expect("dimensions agree")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ArcGroup;

    #[test]
    fn seeded_runs_repeat() {
        let m = Modulus::new(5).unwrap();
        let a: Vec<RatFunc> = {
            let mut s = Sampler::new(m, 7);
            (0..10).map(|_| s.ratfunc(4)).collect()
        };
        let mut s = Sampler::new(m, 7);
        let b: Vec<RatFunc> = (0..10).map(|_| s.ratfunc(4)).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn samples_land_where_promised() {
        let m = Modulus::new(3).unwrap();
        let mut s = Sampler::new(m, 1);
        for g in [
            GroupPresentation::additive(m),
            GroupPresentation::multiplicative(m),
            GroupPresentation::affine(m),
        ] {
            let ag = ArcGroup::new(&g, 2);
            for _ in 0..10 {
                assert!(g.contains(&s.group_point(&g, 3).unwrap()).unwrap());
                let c = s.constant_group_point(&g).unwrap();
                assert!(g.is_constant_point(&c));
                assert!(ag.element(s.arc_element(&g, 2, 3).unwrap()).is_ok());
            }
        }
        for _ in 0..20 {
            assert!(pth_root(&s.pth_power(3)).is_ok());
            assert!(pth_root(&s.non_pth_power(3)).is_err());
        }
    }
}
