//! Arc bundles `A_m X`, their points, fibers, and the map `∇`.

use std::fmt;

use crate::algebra::{MultiPoly, RatFunc, Ring, TruncSeries};
use crate::derivation::HSDerivation;
use crate::error::{Error, Result};

use super::map::PolyMap;
use super::variety::VarietyPresentation;

/// Index of the level-`j` coordinate of variable `i` in an arc system of
/// the given level (var-major, level-minor).
pub fn arc_index(var: usize, j: usize, level: usize) -> usize {
    var * (level + 1) + j
}

/// Names `x_0, x_1, ..., y_0, ...` for the prolonged coordinates.
pub fn arc_var_names(base: &[String], level: usize) -> Vec<String> {
    base.iter()
        .flat_map(|v| (0..=level).map(move |j| format!("{v}_{j}")))
        .collect()
}

/// The presentation of `A_m X` in `n (m + 1)` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct ArcVariety {
    base: VarietyPresentation,
    level: usize,
    prolonged_equations: Vec<MultiPoly>,
    unit_constraints: Vec<MultiPoly>,
}

/// Substitutes `x_i ↦ Σ_j x_i^(j) ε^j` into every equation and collects the
/// coefficients of `ε^0, ..., ε^m`. Equation `k` contributes entries
/// `k (m + 1) .. (k + 1)(m + 1)`. Inverted polynomials only need a unit
/// constant term, so they become constraints on the level-0 coordinates.
pub fn prolong_variety(x: &VarietyPresentation, level: usize) -> ArcVariety {
    let n = x.n_vars();
    let width = level + 1;
    let n_arc = n * width;
    let modulus = x.modulus();
    let generic: Vec<TruncSeries<MultiPoly>> = (0..n)
        .map(|i| {
            TruncSeries::new(
                (0..width)
                    .map(|j| MultiPoly::var(modulus, n_arc, arc_index(i, j, level)))
                    .collect(),
            )
        })
        .collect();
    let prolonged_equations = x
        .equations()
        .iter()
        .flat_map(|f| {
            f.eval(&generic, |c| {
                TruncSeries::constant(MultiPoly::constant(n_arc, c.clone()), level)
            })
            .into_coeffs()
        })
        .collect();
    let unit_constraints = x
        .inverted()
        .iter()
        .map(|f| f.remap(n_arc, |i| arc_index(i, 0, level)))
        .collect();
    ArcVariety {
        base: x.clone(),
        level,
        prolonged_equations,
        unit_constraints,
    }
}

impl ArcVariety {
    pub fn base(&self) -> &VarietyPresentation {
        &self.base
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn prolonged_equations(&self) -> &[MultiPoly] {
        &self.prolonged_equations
    }

    pub fn unit_constraints(&self) -> &[MultiPoly] {
        &self.unit_constraints
    }

    pub fn n_vars(&self) -> usize {
        self.base.n_vars() * (self.level + 1)
    }

    pub fn var_names(&self) -> Vec<String> {
        arc_var_names(self.base.var_names(), self.level)
    }

    pub fn contains(&self, point: &ArcPoint) -> Result<bool> {
        if point.n_vars() != self.base.n_vars() {
            return Err(Error::DimensionMismatch {
                expected: self.base.n_vars(),
                actual: point.n_vars(),
            });
        }
        if point.level() != self.level {
            return Err(Error::LevelMismatch {
                left: self.level,
                right: point.level(),
            });
        }
        let flat = point.flatten();
        Ok(self
            .prolonged_equations
            .iter()
            .all(|f| f.eval_ratfunc(&flat).is_zero())
            && self
                .unit_constraints
                .iter()
                .all(|f| !f.eval_ratfunc(&flat).is_zero()))
    }

    pub fn require(&self, point: &ArcPoint) -> Result<()> {
        if self.contains(point)? {
            Ok(())
        } else {
            Err(Error::ArcNotOnVariety)
        }
    }
}

/// A point of `X(k^(m))`: one truncated series per coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArcPoint {
    level: usize,
    coords: Vec<TruncSeries<RatFunc>>,
}

impl ArcPoint {
    pub fn new(level: usize, coords: Vec<TruncSeries<RatFunc>>) -> Result<Self> {
        if let Some(bad) = coords.iter().find(|c| c.level() != level) {
            return Err(Error::LevelMismatch {
                left: level,
                right: bad.level(),
            });
        }
        Ok(ArcPoint { level, coords })
    }

    /// Rebuilds a point from var-major flat coordinates.
    pub fn from_flat(n_vars: usize, level: usize, flat: Vec<RatFunc>) -> Result<Self> {
        let width = level + 1;
        if flat.len() != n_vars * width {
            return Err(Error::DimensionMismatch {
                expected: n_vars * width,
                actual: flat.len(),
            });
        }
        let coords = flat
            .chunks(width)
            .map(|c| TruncSeries::new(c.to_vec()))
            .collect();
        Ok(ArcPoint { level, coords })
    }

    /// The constant arc `(a, 0, ..., 0)`.
    pub fn constant(point: &[RatFunc], level: usize) -> Self {
        ArcPoint {
            level,
            coords: point
                .iter()
                .map(|c| TruncSeries::constant(c.clone(), level))
                .collect(),
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn n_vars(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[TruncSeries<RatFunc>] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<TruncSeries<RatFunc>> {
        self.coords
    }

    pub fn flatten(&self) -> Vec<RatFunc> {
        self.coords
            .iter()
            .flat_map(|c| c.coeffs().iter().cloned())
            .collect()
    }

    /// The ε⁰ slice.
    pub fn base_point(&self) -> Vec<RatFunc> {
        self.coords
            .iter()
            .map(|c| c.constant_term().clone())
            .collect()
    }

    /// `ρ_{n,m}`: keeps coefficients up to `ε^m`.
    pub fn project(&self, level: usize) -> Result<ArcPoint> {
        if level > self.level {
            return Err(Error::ProjectionAboveLevel {
                from: self.level,
                to: level,
            });
        }
        Ok(ArcPoint {
            level,
            coords: self
                .coords
                .iter()
                .map(|c| c.truncate(level))
                .collect::<Result<_>>()?,
        })
    }

    /// Concatenation, `A_m X × A_m Y → A_m (X × Y)`.
    pub fn join(&self, other: &ArcPoint) -> Result<ArcPoint> {
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                left: self.level,
                right: other.level,
            });
        }
        Ok(ArcPoint {
            level: self.level,
            coords: self.coords.iter().chain(&other.coords).cloned().collect(),
        })
    }

    /// Splits after the first `n` coordinates.
    pub fn split(&self, n: usize) -> Result<(ArcPoint, ArcPoint)> {
        if n > self.coords.len() {
            return Err(Error::DimensionMismatch {
                expected: self.coords.len(),
                actual: n,
            });
        }
        let (a, b) = self.coords.split_at(n);
        Ok((
            ArcPoint {
                level: self.level,
                coords: a.to_vec(),
            },
            ArcPoint {
                level: self.level,
                coords: b.to_vec(),
            },
        ))
    }

    /// Whether every coefficient above ε⁰ vanishes.
    pub fn is_constant_arc(&self) -> bool {
        self.coords
            .iter()
            .all(|c| c.coeffs()[1..].iter().all(Ring::is_zero))
    }
}

fn fmt_tuple(items: &[RatFunc]) -> String {
    let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Single-coordinate arcs print as `(c0, c1, ...)`; otherwise one tuple per
/// coordinate inside an outer tuple.
impl fmt::Display for ArcPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            return f.write_str(&fmt_tuple(self.coords[0].coeffs()));
        }
        let parts: Vec<String> = self.coords.iter().map(|c| fmt_tuple(c.coeffs())).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// The arc space `A_m X_a`: the prolonged system with the level-0
/// coordinates fixed to `a`. Remaining variables are the coordinates of
/// levels `1..=m`, var-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ArcFiber {
    pub base_point: Vec<RatFunc>,
    pub level: usize,
    pub var_names: Vec<String>,
    pub equations: Vec<MultiPoly>,
}

impl ArcFiber {
    pub fn n_vars(&self) -> usize {
        self.base_point.len() * self.level
    }

    /// Whether the arc over `base_point` with the given higher coordinates
    /// (var-major, levels `1..=m`) lies in the fiber.
    pub fn contains_higher(&self, higher: &[RatFunc]) -> Result<bool> {
        if higher.len() != self.n_vars() {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars(),
                actual: higher.len(),
            });
        }
        Ok(self
            .equations
            .iter()
            .all(|f| f.eval_ratfunc(higher).is_zero()))
    }
}

/// `A_m X_a`, the fiber of `ρ_m : A_m X → X` over `a`. Equations that vanish
/// identically after substitution are dropped.
pub fn fiber_at(x: &VarietyPresentation, level: usize, a: &[RatFunc]) -> Result<ArcFiber> {
    x.require(a)?;
    let arc = prolong_variety(x, level);
    let n = x.n_vars();
    let n_fiber = n * level;
    let modulus = x.modulus();
    let subst: Vec<MultiPoly> = (0..n)
        .flat_map(|i| {
            let a_i = a[i].clone();
            (0..=level).map(move |j| (i, j, a_i.clone()))
        })
        .map(|(i, j, a_i)| {
            if j == 0 {
                MultiPoly::constant(n_fiber, a_i)
            } else {
                MultiPoly::var(modulus, n_fiber, i * level + j - 1)
            }
        })
        .collect();
    let equations = arc
        .prolonged_equations()
        .iter()
        .map(|f| f.eval(&subst, |c| MultiPoly::constant(n_fiber, c.clone())))
        .filter(|f| !f.is_zero())
        .collect();
    let var_names = x
        .var_names()
        .iter()
        .flat_map(|v| (1..=level).map(move |j| format!("{v}_{j}")))
        .collect();
    Ok(ArcFiber {
        base_point: a.to_vec(),
        level,
        var_names,
        equations,
    })
}

/// `∇_m(a) = (d_0(a), ..., d_m(a))` coordinatewise, without membership checks.
pub fn nabla_point(a: &[RatFunc], level: usize) -> Result<ArcPoint> {
    let Some(first) = a.first() else {
        return ArcPoint::new(level, vec![]);
    };
    let d = HSDerivation::new(first.modulus());
    ArcPoint::new(level, d.nabla_coords(a, level))
}

/// `∇_{X,m}(a)`. Requires `X` defined over the constants and `a ∈ X`; the
/// result is checked to lie in `A_m X`.
pub fn nabla(x: &VarietyPresentation, a: &[RatFunc], level: usize) -> Result<ArcPoint> {
    if !x.is_over_constants() {
        return Err(Error::NotOverConstants);
    }
    x.require(a)?;
    let arc = nabla_point(a, level)?;
    if !prolong_variety(x, level).contains(&arc)? {
        return Err(Error::Consistency(
            "∇(a) does not satisfy the prolonged equations".into(),
        ));
    }
    Ok(arc)
}

/// `A_m(f)(∇_m(a)) == ∇_m(f(a))` for `f` with constant coefficients.
pub fn check_nabla_naturality(f: &PolyMap, a: &[RatFunc], level: usize) -> Result<bool> {
    if !f.is_over_constants() {
        return Err(Error::NotOverConstants);
    }
    let lhs_flat = f.prolong(level).apply(&nabla_point(a, level)?.flatten())?;
    let lhs = ArcPoint::from_flat(f.target_dim(), level, lhs_flat)?;
    let rhs = nabla_point(&f.apply(a)?, level)?;
    Ok(lhs == rhs)
}

/// Applies `A_m(f)` to an arc by evaluating `f` over `k^(m)`.
pub fn apply_to_arc(f: &PolyMap, a: &ArcPoint) -> Result<ArcPoint> {
    ArcPoint::new(a.level(), f.apply_series(a.coords())?)
}

/// Coordinate permutation `A_m(X × Y) → A_m X × A_m Y` on flat coordinates:
/// entry `k` is the position in the pair of the `k`-th product coordinate.
/// With var-major ordering this is the identity permutation.
pub fn product_shuffle(nx: usize, ny: usize, level: usize) -> Vec<usize> {
    let width = level + 1;
    (0..(nx + ny) * width)
        .map(|k| {
            let (var, j) = (k / width, k % width);
            if var < nx {
                arc_index(var, j, level)
            } else {
                nx * width + arc_index(var - nx, j, level)
            }
        })
        .collect()
}
