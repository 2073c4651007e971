//! Logarithmic differential equations `ℓD(x) = α` and bounded-degree
//! polynomial solvers for `G_a` and `G_m`.

use std::fmt;

use crate::algebra::linalg::solve_affine;
use crate::algebra::{Modulus, Poly, RatFunc};
use crate::arc::ArcPoint;
use crate::derivation::HSDerivation;
use crate::error::{Error, Result};
use crate::group::{ArcGroup, ArcGroupElement, GroupKind, GroupPresentation};

/// `ℓD(x) = α` at level `m`, with `α` in the fiber of `A_m G` over `e`.
#[derive(Clone, Debug)]
pub struct LogEquation {
    arc_group: ArcGroup,
    alpha: ArcGroupElement,
}

impl LogEquation {
    pub fn new(group: &GroupPresentation, level: usize, alpha: ArcPoint) -> Result<Self> {
        let arc_group = ArcGroup::new(group, level);
        if alpha.level() != level {
            return Err(Error::LevelMismatch {
                left: level,
                right: alpha.level(),
            });
        }
        let alpha = arc_group.element(alpha)?;
        if !arc_group.in_identity_fiber(&alpha) {
            return Err(Error::NotInIdentityFiber);
        }
        Ok(LogEquation { arc_group, alpha })
    }

    /// The equation `ℓD(x) = ℓD(g)`.
    pub fn from_point(group: &GroupPresentation, level: usize, g: &[RatFunc]) -> Result<Self> {
        let arc_group = ArcGroup::new(group, level);
        let alpha = arc_group.log_derivative(g)?;
        Ok(LogEquation { arc_group, alpha })
    }

    pub fn group(&self) -> &GroupPresentation {
        self.arc_group.group()
    }

    pub fn level(&self) -> usize {
        self.arc_group.level()
    }

    pub fn alpha(&self) -> &ArcPoint {
        self.alpha.point()
    }

    pub fn arc_group(&self) -> &ArcGroup {
        &self.arc_group
    }

    /// The same equation read at a lower level.
    pub fn project(&self, level: usize) -> Result<LogEquation> {
        LogEquation::new(self.group(), level, self.alpha().project(level)?)
    }

    /// `ℓD(a) = α` exactly. Errors if `a ∉ G`.
    pub fn verify_solution(&self, a: &[RatFunc]) -> Result<bool> {
        Ok(self.arc_group.log_derivative(a)? == self.alpha)
    }

    fn require_solution(&self, a: &[RatFunc]) -> Result<()> {
        if self.verify_solution(a)? {
            Ok(())
        } else {
            Err(Error::Consistency(format!(
                "{} does not solve the equation",
                fmt_point(a)
            )))
        }
    }

    fn require_kind(&self, kind: GroupKind, expected: &'static str) -> Result<()> {
        if *self.group().kind() == kind {
            Ok(())
        } else {
            Err(Error::WrongGroup {
                expected,
                actual: self.group().name().to_string(),
            })
        }
    }

    /// `α_i` for `1 ≤ i ≤ m` on a one-dimensional group.
    fn alpha_coeffs(&self) -> &[RatFunc] {
        &self.alpha.point().coords()[0].coeffs()[1..]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Solved,
    /// A known necessary condition for `α ∈ Im ℓD` fails.
    Inconsistent,
    /// No polynomial solution of degree at most the bound. Says nothing about
    /// higher degrees or rational solutions.
    NoSolutionWithinBound,
}

impl SolveStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveStatus::Solved => "solved",
            SolveStatus::Inconsistent => "inconsistent",
            SolveStatus::NoSolutionWithinBound => "no_solution_within_bound",
        }
    }
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of a bounded search. When solved, `particular · c` solves the
/// equation for every `c` in `translates`.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionReport {
    pub status: SolveStatus,
    pub particular: Option<Vec<RatFunc>>,
    pub translates: Vec<Vec<RatFunc>>,
    pub degree_bound: u32,
}

impl SolutionReport {
    fn unsolved(status: SolveStatus, degree_bound: u32) -> Self {
        SolutionReport {
            status,
            particular: None,
            translates: vec![],
            degree_bound,
        }
    }

    /// `particular · c` for every reported translate `c`.
    pub fn solutions(&self, group: &GroupPresentation) -> Result<Vec<Vec<RatFunc>>> {
        let Some(a) = &self.particular else {
            return Ok(vec![]);
        };
        self.translates
            .iter()
            .map(|c| group.mul_points(a, c))
            .collect()
    }
}

/// `α_0 = 0` and `d_j(α_i) = C(i+j, i) α_{i+j}` for `i, j ≥ 1`, `i + j ≤ m`.
/// Necessary for `α ∈ Im ℓD` on `G_a`.
pub fn ga_consistency_check(eq: &LogEquation) -> Result<bool> {
    eq.require_kind(GroupKind::Additive, "Ga")?;
    let modulus = eq.group().modulus();
    let d = HSDerivation::new(modulus);
    let alpha = eq.alpha().coords()[0].coeffs();
    if !alpha[0].is_zero() {
        return Ok(false);
    }
    let m = eq.level();
    for i in 1..=m {
        for j in 1..=m - i {
            let c = modulus.binom((i + j) as u64, i as u64);
            if d.d_i(&alpha[i], j) != alpha[i + j].scale_const(c) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Rows of the linear system `Σ_n c_n · col_n = rhs` read coefficientwise.
struct System {
    rows: Vec<Vec<u64>>,
    rhs: Vec<u64>,
}

impl System {
    fn new() -> Self {
        System {
            rows: vec![],
            rhs: vec![],
        }
    }

    fn push(&mut self, columns: &[Poly], rhs: &Poly) {
        let top = columns
            .iter()
            .chain(std::iter::once(rhs))
            .filter_map(Poly::degree)
            .max();
        let Some(top) = top else { return };
        for k in 0..=top {
            self.rows.push(columns.iter().map(|c| c.coeff(k)).collect());
            self.rhs.push(rhs.coeff(k));
        }
    }
}

fn poly_of(modulus: Modulus, coeffs: &[u64]) -> RatFunc {
    RatFunc::from_poly(Poly::from_coeffs(modulus, coeffs))
}

fn constants(modulus: Modulus, from: u64) -> Vec<Vec<RatFunc>> {
    (from..modulus.p())
        .map(|c| vec![RatFunc::constant(modulus, c)])
        .collect()
}

/// Polynomial ansatz `x = Σ_{n ≤ d} c_n t^n` for `d_i(x) = α_i`,
/// `1 ≤ i ≤ m`. Translates are `G_a(F_p)`.
pub fn solve_ga(eq: &LogEquation, degree_bound: u32) -> Result<SolutionReport> {
    eq.require_kind(GroupKind::Additive, "Ga")?;
    let modulus = eq.group().modulus();
    let alpha = eq.alpha_coeffs();
    if let Some(i) = alpha.iter().position(|a| !a.is_polynomial()) {
        return Err(Error::NonPolynomialAlpha { index: i + 1 });
    }
    if !ga_consistency_check(eq)? {
        return Ok(SolutionReport::unsolved(
            SolveStatus::Inconsistent,
            degree_bound,
        ));
    }
    let mut system = System::new();
    for (i, a) in alpha.iter().enumerate() {
        let columns: Vec<Poly> = (0..=degree_bound)
            .map(|n| Poly::monomial(modulus, 1, n).taylor_coeff(i as u32 + 1))
            .collect();
        system.push(&columns, a.numer());
    }
    let n_unknowns = degree_bound as usize + 1;
    let Some(sol) = solve_affine(modulus, n_unknowns, &system.rows, &system.rhs) else {
        return Ok(SolutionReport::unsolved(
            SolveStatus::NoSolutionWithinBound,
            degree_bound,
        ));
    };
    let particular = vec![poly_of(modulus, &sol.particular)];
    eq.require_solution(&particular)?;
    Ok(SolutionReport {
        status: SolveStatus::Solved,
        particular: Some(particular),
        translates: constants(modulus, 0),
        degree_bound,
    })
}

/// Polynomial ansatz for `d_i(g) = α_i g`, `1 ≤ i ≤ m`, on `G_m`. Writing
/// `α_i = N_i / D_i`, solves `D_i d_i(g) - N_i g = 0` and keeps a nonzero
/// kernel vector, made monic. Translates are `G_m(F_p)`.
pub fn solve_gm_poly(eq: &LogEquation, degree_bound: u32) -> Result<SolutionReport> {
    eq.require_kind(GroupKind::Multiplicative, "Gm")?;
    let modulus = eq.group().modulus();
    let mut system = System::new();
    for (i, a) in eq.alpha_coeffs().iter().enumerate() {
        let columns: Vec<Poly> = (0..=degree_bound)
            .map(|n| {
                let tn = Poly::monomial(modulus, 1, n);
                &(a.denom() * &tn.taylor_coeff(i as u32 + 1)) - &(a.numer() * &tn)
            })
            .collect();
        system.push(&columns, &Poly::zero(modulus));
    }
    let n_unknowns = degree_bound as usize + 1;
    let sol = solve_affine(modulus, n_unknowns, &system.rows, &system.rhs)
        .expect("homogeneous systems are consistent");
    let Some(v) = sol.nullspace.first() else {
        return Ok(SolutionReport::unsolved(
            SolveStatus::NoSolutionWithinBound,
            degree_bound,
        ));
    };
    let g = Poly::from_coeffs(modulus, v).make_monic();
    let particular = vec![RatFunc::from_poly(g)];
    eq.require_solution(&particular)?;
    Ok(SolutionReport {
        status: SolveStatus::Solved,
        particular: Some(particular),
        translates: constants(modulus, 1),
        degree_bound,
    })
}

/// Dispatches on the group of `eq`.
pub fn solve(eq: &LogEquation, degree_bound: u32) -> Result<SolutionReport> {
    match eq.group().kind() {
        GroupKind::Additive => solve_ga(eq, degree_bound),
        GroupKind::Multiplicative => solve_gm_poly(eq, degree_bound),
        _ => Err(Error::WrongGroup {
            expected: "Ga or Gm",
            actual: eq.group().name().to_string(),
        }),
    }
}

/// `c = a^{-1} · b` for two solutions; `c` must be a constant point and
/// `a · c = b`.
pub fn constant_translate(eq: &LogEquation, a: &[RatFunc], b: &[RatFunc]) -> Result<Vec<RatFunc>> {
    eq.require_solution(a)?;
    eq.require_solution(b)?;
    let g = eq.group();
    let c = g.mul_points(&g.inv_point(a)?, b)?;
    if !g.is_constant_point(&c) {
        return Err(Error::NotConstant(fmt_point(&c)));
    }
    if g.mul_points(a, &c)? != b {
        return Err(Error::Consistency("a · (a^-1 · b) differs from b".into()));
    }
    Ok(c)
}

/// `∇(a) = α · s(a)` in `A_m G`.
pub fn recursion_check(eq: &LogEquation, a: &[RatFunc]) -> Result<bool> {
    let ag = eq.arc_group();
    let lhs = ag.nabla(a)?;
    let rhs = ag.arc_mul(&eq.alpha, &ag.section(a)?)?;
    Ok(lhs == rhs)
}

/// `t^3` for one coordinate, `(t, 1)` otherwise.
pub fn fmt_point(a: &[RatFunc]) -> String {
    match a {
        [x] => x.to_string(),
        _ => {
            let parts: Vec<String> = a.iter().map(ToString::to_string).collect();
            format!("({})", parts.join(", "))
        }
    }
}
