//! JSON presentations and the textual point and arc syntax.
//!
//! ```text
//! variety = {"vars": [..], "equations": [..], "inverted": [..]}
//! group   = "Ga" | "Gm" | "AxB" | {"product": [group, ..]}
//!         | {"variety": variety, "mul": [..], "inv": [..], "identity": [..]}
//! arc     = [["c0", "c1", ..], ..]          one array per coordinate
//! ```
//!
//! In `mul`, the right operand's coordinates are the variety's names with
//! suffix `_r`. Every expression may mention `t`.

use idarc_core::algebra::{Modulus, MultiPoly, RatFunc, TruncSeries};
use idarc_core::arc::{ArcPoint, PolyMap, RegularFn, VarietyPresentation};
use idarc_core::group::GroupPresentation;
use serde::{Deserialize, Serialize};

use crate::expr::{eval, eval_ratfunc, parse_expr, split_tuple, Expr, ParseError};
use crate::Error;

/// Names that always mean the base variable and the series variable.
pub const RESERVED: [&str; 2] = ["t", "e"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietyJson {
    pub vars: Vec<String>,
    #[serde(default)]
    pub equations: Vec<String>,
    #[serde(default)]
    pub inverted: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductJson {
    pub product: Vec<GroupJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomGroupJson {
    pub variety: VarietyJson,
    pub mul: Vec<String>,
    pub inv: Vec<String>,
    pub identity: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum GroupJson {
    Builtin(String),
    Product(ProductJson),
    Custom(CustomGroupJson),
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_in(src: &str, vars: &[&str], context: &str) -> Result<Expr, Error> {
    parse_expr(src, vars).map_err(|source| Error::Parse {
        context: context.to_string(),
        source,
    })
}

fn check_vars(vars: &[String]) -> Result<(), Error> {
    for v in vars {
        if !is_identifier(v) {
            return Err(Error::Schema(format!("{v:?} is not an identifier")));
        }
        if RESERVED.contains(&v.as_str()) {
            return Err(Error::Schema(format!("variable name {v:?} is reserved")));
        }
    }
    Ok(())
}

/// Evaluates `src` as a polynomial in `names`, with `t` a coefficient.
pub fn multipoly(
    src: &str,
    names: &[String],
    modulus: Modulus,
    context: &str,
) -> Result<MultiPoly, Error> {
    let n = names.len();
    let mut scope: Vec<&str> = names.iter().map(String::as_str).collect();
    scope.push("t");
    let e = parse_in(src, &scope, context)?;
    let t = MultiPoly::constant(n, RatFunc::t(modulus));
    let lookup = |v: &str| match names.iter().position(|x| x == v) {
        Some(i) => Some(MultiPoly::var(modulus, n, i)),
        None => (v == "t").then(|| t.clone()),
    };
    eval(&e, modulus, &MultiPoly::one(modulus, n), &lookup).map_err(|source| Error::Eval {
        context: context.to_string(),
        source,
    })
}

fn regular_fn(
    src: &str,
    names: &[String],
    modulus: Modulus,
    context: &str,
) -> Result<RegularFn, Error> {
    let n = names.len();
    let mut scope: Vec<&str> = names.iter().map(String::as_str).collect();
    scope.push("t");
    let e = parse_in(src, &scope, context)?;
    let embed = |f: MultiPoly| RegularFn::poly(f);
    let t = embed(MultiPoly::constant(n, RatFunc::t(modulus)));
    let lookup = |v: &str| match names.iter().position(|x| x == v) {
        Some(i) => Some(embed(MultiPoly::var(modulus, n, i))),
        None => (v == "t").then(|| t.clone()),
    };
    eval(&e, modulus, &embed(MultiPoly::one(modulus, n)), &lookup).map_err(|source| Error::Eval {
        context: context.to_string(),
        source,
    })
}

/// A single element of F_p(t); `offset` shifts error positions.
pub fn ratfunc(
    src: &str,
    modulus: Modulus,
    context: &str,
    offset: usize,
) -> Result<RatFunc, Error> {
    let shift = |source: ParseError| Error::Parse {
        context: context.to_string(),
        source: match source {
            ParseError::Syntax { offset: o, message } => ParseError::Syntax {
                offset: o + offset,
                message,
            },
            ParseError::UnknownVariable { offset: o, name } => ParseError::UnknownVariable {
                offset: o + offset,
                name,
            },
        },
    };
    let e = parse_expr(src, &["t"]).map_err(shift)?;
    eval_ratfunc(&e, modulus).map_err(|source| Error::Eval {
        context: context.to_string(),
        source,
    })
}

impl VarietyJson {
    pub fn build(&self, modulus: Modulus) -> Result<VarietyPresentation, Error> {
        check_vars(&self.vars)?;
        let polys = |list: &[String], what: &str| -> Result<Vec<MultiPoly>, Error> {
            list.iter()
                .enumerate()
                .map(|(k, s)| multipoly(s, &self.vars, modulus, &format!("{what}[{k}]")))
                .collect()
        };
        let equations = polys(&self.equations, "equations")?;
        let inverted = polys(&self.inverted, "inverted")?;
        Ok(VarietyPresentation::new(
            modulus,
            self.vars.clone(),
            equations,
            inverted,
        )?)
    }
}

fn builtin(name: &str, modulus: Modulus) -> Option<GroupPresentation> {
    match name {
        "Ga" => Some(GroupPresentation::additive(modulus)),
        "Gm" => Some(GroupPresentation::multiplicative(modulus)),
        "AxB" => Some(GroupPresentation::affine(modulus)),
        _ => None,
    }
}

/// `Ga`, `Gm`, `AxB`, or a `*`-separated product of those.
pub fn builtin_group(name: &str, modulus: Modulus) -> Option<Result<GroupPresentation, Error>> {
    let factors: Option<Vec<GroupPresentation>> = name
        .split('*')
        .map(|f| builtin(f.trim(), modulus))
        .collect();
    match factors?.as_slice() {
        [g] => Some(Ok(g.clone())),
        fs => Some(GroupPresentation::product(fs).map_err(Error::from)),
    }
}

impl GroupJson {
    pub fn build(&self, modulus: Modulus) -> Result<GroupPresentation, Error> {
        match self {
            GroupJson::Builtin(name) => builtin_group(name, modulus)
                .unwrap_or_else(|| Err(Error::Schema(format!("unknown builtin group {name:?}")))),
            GroupJson::Product(p) => {
                let factors = p
                    .product
                    .iter()
                    .map(|g| g.build(modulus))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(GroupPresentation::product(&factors)?)
            }
            GroupJson::Custom(c) => c.build(modulus),
        }
    }
}

impl CustomGroupJson {
    pub fn build(&self, modulus: Modulus) -> Result<GroupPresentation, Error> {
        let variety = self.variety.build(modulus)?;
        let names = &self.variety.vars;
        let n = names.len();
        let pair: Vec<String> = names
            .iter()
            .cloned()
            .chain(names.iter().map(|v| format!("{v}_r")))
            .collect();
        if let Some(v) = names.iter().find(|v| pair[n..].contains(v)) {
            return Err(Error::Schema(format!(
                "variable {v:?} clashes with a right-operand name"
            )));
        }
        let maps =
            |list: &[String], scope: &[String], what: &str| -> Result<Vec<RegularFn>, Error> {
                if list.len() != n {
                    return Err(Error::Schema(format!(
                        "{what} needs {n} components, got {}",
                        list.len()
                    )));
                }
                list.iter()
                    .enumerate()
                    .map(|(k, s)| regular_fn(s, scope, modulus, &format!("{what}[{k}]")))
                    .collect()
            };
        let mul = PolyMap::new(2 * n, maps(&self.mul, &pair, "mul")?)?;
        let inv = PolyMap::new(n, maps(&self.inv, names, "inv")?)?;
        if self.identity.len() != n {
            return Err(Error::Schema(format!(
                "identity needs {n} coordinates, got {}",
                self.identity.len()
            )));
        }
        let identity = self
            .identity
            .iter()
            .enumerate()
            .map(|(k, s)| ratfunc(s, modulus, &format!("identity[{k}]"), 0))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GroupPresentation::new(
            "custom", variety, mul, inv, identity,
        )?)
    }
}

/// `(c_1, .., c_n)`, or a bare expression when `dim = 1`.
pub fn parse_point(
    src: &str,
    dim: usize,
    modulus: Modulus,
    context: &str,
) -> Result<Vec<RatFunc>, Error> {
    parse_list(src, 0, dim, modulus, context)
}

fn parse_list(
    src: &str,
    base: usize,
    len: usize,
    modulus: Modulus,
    context: &str,
) -> Result<Vec<RatFunc>, Error> {
    let parts = split_tuple(src).map_err(|source| Error::Parse {
        context: context.to_string(),
        source,
    })?;
    if parts.len() != len {
        return Err(Error::Schema(format!(
            "{context}: expected {len} entries, got {}",
            parts.len()
        )));
    }
    parts
        .into_iter()
        .map(|(off, s)| ratfunc(s, modulus, context, base + off))
        .collect()
}

/// Either JSON (`[["0", "t"]]`) or a tuple: `(c_0, .., c_m)` for one
/// coordinate, `((..), (..))` for several.
pub fn parse_arc(
    src: &str,
    dim: usize,
    level: usize,
    modulus: Modulus,
    context: &str,
) -> Result<ArcPoint, Error> {
    let width = level + 1;
    let coords: Vec<Vec<RatFunc>> = if src.trim_start().starts_with('[') {
        let rows: Vec<Vec<String>> =
            serde_json::from_str(src).map_err(|e| Error::Schema(format!("{context}: {e}")))?;
        if rows.len() != dim {
            return Err(Error::Schema(format!(
                "{context}: expected {dim} coordinates, got {}",
                rows.len()
            )));
        }
        rows.iter()
            .enumerate()
            .map(|(i, row)| {
                if row.len() != width {
                    return Err(Error::Schema(format!(
                        "{context}[{i}]: expected {width} coefficients, got {}",
                        row.len()
                    )));
                }
                row.iter()
                    .map(|s| ratfunc(s, modulus, &format!("{context}[{i}]"), 0))
                    .collect()
            })
            .collect::<Result<_, _>>()?
    } else if dim == 1 {
        vec![parse_list(src, 0, width, modulus, context)?]
    } else {
        let parts = split_tuple(src).map_err(|source| Error::Parse {
            context: context.to_string(),
            source,
        })?;
        if parts.len() != dim {
            return Err(Error::Schema(format!(
                "{context}: expected {dim} coordinates, got {}",
                parts.len()
            )));
        }
        parts
            .into_iter()
            .map(|(off, s)| parse_list(s, off, width, modulus, context))
            .collect::<Result<_, _>>()?
    };
    Ok(ArcPoint::new(
        level,
        coords.into_iter().map(TruncSeries::new).collect(),
    )?)
}

/// Inverse of [`parse_arc`]'s tuple form.
pub fn fmt_arc(a: &ArcPoint) -> String {
    let row = |c: &TruncSeries<RatFunc>| fmt_tuple(c.coeffs());
    match a.coords() {
        [c] => row(c),
        cs => format!("({})", cs.iter().map(row).collect::<Vec<_>>().join(", ")),
    }
}

fn fmt_tuple(xs: &[RatFunc]) -> String {
    let parts: Vec<String> = xs
        .iter()
        .map(|x| crate::expr::ratfunc_expr(x).to_string())
        .collect();
    format!("({})", parts.join(", "))
}

/// A bare expression for one coordinate, a tuple otherwise.
pub fn fmt_point(a: &[RatFunc]) -> String {
    match a {
        [x] => crate::expr::ratfunc_expr(x).to_string(),
        _ => fmt_tuple(a),
    }
}

/// Prolongation output, itself a valid variety document.
pub fn variety_json(eqs: &[MultiPoly], inverted: &[MultiPoly], names: &[String]) -> VarietyJson {
    let render = |fs: &[MultiPoly]| {
        fs.iter()
            .filter(|f| !f.is_zero())
            .map(|f| crate::expr::multipoly_expr(f, names).to_string())
            .collect()
    };
    VarietyJson {
        vars: names.to_vec(),
        equations: render(eqs),
        inverted: render(inverted),
    }
}
