//! Sparse multivariate polynomials with coefficients in F_p(t).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::modulus::Modulus;
use super::poly::forward_owned;
use super::ratfunc::RatFunc;
use super::ring::Ring;

/// Polynomial in `n_vars` variables. Exponent vectors always have length
/// `n_vars`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    modulus: Modulus,
    n_vars: usize,
    terms: BTreeMap<Vec<u32>, RatFunc>,
}

impl MultiPoly {
    pub fn zero(modulus: Modulus, n_vars: usize) -> Self {
        MultiPoly {
            modulus,
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: RatFunc) -> Self {
        let mut out = Self::zero(c.modulus(), n_vars);
        out.add_term(vec![0; n_vars], c);
        out
    }

    pub fn one(modulus: Modulus, n_vars: usize) -> Self {
        Self::constant(n_vars, RatFunc::one(modulus))
    }

    /// The variable with index `i`.
    pub fn var(modulus: Modulus, n_vars: usize, i: usize) -> Self {
        assert!(
            i < n_vars,
            "variable index {i} out of range for {n_vars} variables"
        );
        let mut exps = vec![0; n_vars];
        exps[i] = 1;
        let mut out = Self::zero(modulus, n_vars);
        out.add_term(exps, RatFunc::one(modulus));
        out
    }

    pub fn from_terms(
        modulus: Modulus,
        n_vars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, RatFunc)>,
    ) -> Self {
        let mut out = Self::zero(modulus, n_vars);
        for (e, c) in terms {
            assert_eq!(e.len(), n_vars, "exponent vector length must equal n_vars");
            out.add_term(e, c);
        }
        out
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &RatFunc)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// The coefficient of the empty monomial when the polynomial has no
    /// other terms.
    pub fn as_constant(&self) -> Option<RatFunc> {
        match self.terms.len() {
            0 => Some(RatFunc::zero(self.modulus)),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Whether every coefficient lies in F_p.
    pub fn is_over_constants(&self) -> bool {
        self.terms.values().all(RatFunc::is_constant)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Indices of variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n_vars)
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    fn add_term(&mut self, exps: Vec<u32>, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    fn check(&self, other: &MultiPoly) {
        assert_eq!(
            self.modulus, other.modulus,
            "arithmetic mixes modulus {} with modulus {}",
            self.modulus, other.modulus
        );
        assert_eq!(
            self.n_vars, other.n_vars,
            "arithmetic mixes polynomial rings in {} and {} variables",
            self.n_vars, other.n_vars
        );
    }

    pub fn scale(&self, c: &RatFunc) -> MultiPoly {
        let mut out = Self::zero(self.modulus, self.n_vars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    /// Evaluates in any ring, given an image for each variable and an
    /// embedding of coefficients.
    pub fn eval<R: Ring>(&self, point: &[R], embed: impl Fn(&RatFunc) -> R) -> R {
        assert_eq!(
            point.len(),
            self.n_vars,
            "point dimension must equal n_vars"
        );
        let mut acc = embed(&RatFunc::zero(self.modulus));
        // Cache powers per variable; exponents in a term are small.
        let mut powers: Vec<Vec<R>> = Vec::with_capacity(self.n_vars);
        for x in point {
            powers.push(vec![x.one_like(), x.clone()]);
        }
        for (exps, c) in &self.terms {
            let mut term = embed(c);
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().clone() * point[i].clone();
                    cache.push(next);
                }
                term = term * cache[e as usize].clone();
            }
            acc = acc + term;
        }
        acc
    }

    /// Evaluates at a point of F_p(t).
    pub fn eval_ratfunc(&self, point: &[RatFunc]) -> RatFunc {
        self.eval(point, RatFunc::clone)
    }

    /// Re-embeds into a ring with `n_vars` variables, sending variable `i`
    /// to variable `index(i)`.
    pub fn remap(&self, n_vars: usize, index: impl Fn(usize) -> usize) -> MultiPoly {
        let mut out = Self::zero(self.modulus, n_vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; n_vars];
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    ne[index(i)] += x;
                }
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Renders with the given variable names: terms by descending total
    /// degree, then descending exponent vectors (first variable highest).
    pub fn fmt_with(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.n_vars, "one name per variable");
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut entries: Vec<(&Vec<u32>, &RatFunc)> = self.terms.iter().collect();
        entries.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let parts: Vec<String> = entries
            .into_iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(i, &x)| {
                        if x == 1 {
                            names[i].clone()
                        } else {
                            format!("{}^{}", names[i], x)
                        }
                    })
                    .collect();
                let coeff = if c.is_compound() {
                    format!("({c})")
                } else {
                    c.to_string()
                };
                if mono.is_empty() {
                    coeff
                } else if c.as_constant() == Some(1) {
                    mono.join("*")
                } else {
                    format!("{coeff}*{}", mono.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.n_vars).map(|i| format!("x{i}")).collect();
        f.write_str(&self.fmt_with(&names))
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check(rhs);
        let mut out = MultiPoly::zero(self.modulus, self.n_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            modulus: self.modulus,
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

forward_owned!(MultiPoly, Add add, Sub sub, Mul mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl Ring for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.modulus, self.n_vars)
    }

    fn one_like(&self) -> Self {
        MultiPoly::one(self.modulus, self.n_vars)
    }

    fn int_like(&self, n: i64) -> Self {
        MultiPoly::constant(self.n_vars, RatFunc::one(self.modulus).int_like(n))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Units of a polynomial ring over a field are the nonzero constants.
    fn unit_inverse(&self) -> Option<Self> {
        let c = self.as_constant()?;
        let inv = c.inv().ok()?;
        Some(MultiPoly::constant(self.n_vars, inv))
    }
}
