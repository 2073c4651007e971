use std::collections::HashSet;

use crate::algebra::{Modulus, MultiPoly, RatFunc};
use crate::error::{Error, Result};

/// Where the coefficients of a presentation live.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffField {
    /// Every coefficient lies in the constant field F_p.
    Constants,
    RationalFunctions,
}

/// An affine variety `V(equations) ∖ V(Π inverted)` in `n_vars` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct VarietyPresentation {
    modulus: Modulus,
    var_names: Vec<String>,
    equations: Vec<MultiPoly>,
    inverted: Vec<MultiPoly>,
    coeff_field: CoeffField,
}

impl VarietyPresentation {
    pub fn new(
        modulus: Modulus,
        var_names: Vec<String>,
        equations: Vec<MultiPoly>,
        inverted: Vec<MultiPoly>,
    ) -> Result<Self> {
        let n = var_names.len();
        let mut seen = HashSet::new();
        for name in &var_names {
            if !seen.insert(name) {
                return Err(Error::InvalidPresentation(format!(
                    "duplicate variable name {name:?}"
                )));
            }
        }
        for f in equations.iter().chain(&inverted) {
            if f.n_vars() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: f.n_vars(),
                });
            }
            if f.modulus() != modulus {
                return Err(Error::ModulusMismatch {
                    left: modulus.p(),
                    right: f.modulus().p(),
                });
            }
        }
        let coeff_field = if equations
            .iter()
            .chain(&inverted)
            .all(MultiPoly::is_over_constants)
        {
            CoeffField::Constants
        } else {
            CoeffField::RationalFunctions
        };
        Ok(VarietyPresentation {
            modulus,
            var_names,
            equations,
            inverted,
            coeff_field,
        })
    }

    /// Affine space with the given coordinate names.
    pub fn affine_space(modulus: Modulus, var_names: Vec<String>) -> Self {
        Self::new(modulus, var_names, vec![], vec![]).expect("no equations to validate")
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn n_vars(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn equations(&self) -> &[MultiPoly] {
        &self.equations
    }

    pub fn inverted(&self) -> &[MultiPoly] {
        &self.inverted
    }

    pub fn coeff_field(&self) -> CoeffField {
        self.coeff_field
    }

    pub fn is_over_constants(&self) -> bool {
        self.coeff_field == CoeffField::Constants
    }

    fn check_dim(&self, point: &[RatFunc]) -> Result<()> {
        if point.len() != self.n_vars() {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars(),
                actual: point.len(),
            });
        }
        Ok(())
    }

    pub fn contains(&self, point: &[RatFunc]) -> Result<bool> {
        self.check_dim(point)?;
        Ok(self
            .equations
            .iter()
            .all(|f| f.eval_ratfunc(point).is_zero())
            && self
                .inverted
                .iter()
                .all(|f| !f.eval_ratfunc(point).is_zero()))
    }

    pub fn require(&self, point: &[RatFunc]) -> Result<()> {
        if self.contains(point)? {
            Ok(())
        } else {
            Err(Error::PointNotOnVariety)
        }
    }
}

/// `X × Y`: disjoint union of variables, equations and inverted polynomials.
/// Clashing names get the factor index appended (`x1`, `x2`).
pub fn product_variety(x: &VarietyPresentation, y: &VarietyPresentation) -> VarietyPresentation {
    assert_eq!(
        x.modulus, y.modulus,
        "product of varieties over different moduli"
    );
    let (nx, ny) = (x.n_vars(), y.n_vars());
    let n = nx + ny;
    let clash = x.var_names.iter().any(|v| y.var_names.contains(v));
    let names: Vec<String> = if clash {
        x.var_names
            .iter()
            .map(|v| format!("{v}1"))
            .chain(y.var_names.iter().map(|v| format!("{v}2")))
            .collect()
    } else {
        x.var_names.iter().chain(&y.var_names).cloned().collect()
    };
    // Suffixing can still clash in pathological cases (`x1` next to `x`).
    let distinct = names.iter().collect::<HashSet<_>>().len() == n;
    let names = if distinct {
        names
    } else {
        (0..n).map(|i| format!("v{i}")).collect()
    };
    let lift_x = |f: &MultiPoly| f.remap(n, |i| i);
    let lift_y = |f: &MultiPoly| f.remap(n, |i| nx + i);
    let equations = x
        .equations
        .iter()
        .map(lift_x)
        .chain(y.equations.iter().map(lift_y))
        .collect();
    let inverted = x
        .inverted
        .iter()
        .map(lift_x)
        .chain(y.inverted.iter().map(lift_y))
        .collect();
    VarietyPresentation::new(x.modulus, names, equations, inverted)
        .expect("factors are valid presentations with distinct names")
}
