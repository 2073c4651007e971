//! Seeded property suites over the whole pipeline. Each suite counts cases
//! and records a description of every failing case.

use crate::algebra::{binom_mod_p, pth_root, Modulus, MultiPoly, Poly, RatFunc, Ring, TruncSeries};
use crate::arc::{
    apply_to_arc, check_nabla_naturality, nabla, prolong_variety, ArcPoint, PolyMap,
    VarietyPresentation,
};
use crate::derivation::HSDerivation;
use crate::error::Result;
use crate::group::{first_detecting_level, gm_log_series, ArcGroup, GroupPresentation};
use crate::logeq::{
    constant_translate, fmt_point, ga_consistency_check, recursion_check, solve, LogEquation,
    SolveStatus,
};
use crate::sample::Sampler;

pub const PRIMES: [u64; 3] = [2, 3, 5];

/// Pass/fail tally of one suite run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport {
            name,
            cases: 0,
            failures: vec![],
        }
    }

    /// Errors count as failures.
    fn record(&mut self, case: impl FnOnce() -> String, outcome: Result<bool>) {
        self.cases += 1;
        match outcome {
            Ok(true) => {}
            Ok(false) => self.failures.push(case()),
            Err(e) => self.failures.push(format!("{}: {e}", case())),
        }
    }

    pub fn passed(&self) -> usize {
        self.cases - self.failures.len()
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.cases > 0
    }
}

pub type Suite = fn(u64) -> SuiteReport;

/// Every suite with its name, in a fixed order.
pub const SUITES: [(&str, Suite); 10] = [
    ("ring_hom", ring_hom),
    ("iterativity", iterativity),
    ("kernel_d1", kernel_d1),
    ("functoriality", functoriality),
    ("nabla", nabla_suite),
    ("arc_group", arc_group),
    ("log_derivative", log_derivative),
    ("kernel", kernel),
    ("solver", solver),
    ("recursion", recursion),
];

pub fn find_suite(name: &str) -> Option<Suite> {
    SUITES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

fn modulus(p: u64) -> Modulus {
    Modulus::new(p).expect("suite primes are prime")
}

fn seed_for(seed: u64, p: u64) -> u64 {
    seed.wrapping_mul(1_000_003).wrapping_add(p)
}

/// `G_a`, `G_m`, `ax + b` and `G_a × G_m`.
pub fn builtin_groups(m: Modulus) -> Vec<GroupPresentation> {
    let ga = GroupPresentation::additive(m);
    let gm = GroupPresentation::multiplicative(m);
    let prod = GroupPresentation::product(&[ga.clone(), gm.clone()]).expect("valid factors");
    vec![ga, gm, GroupPresentation::affine(m), prod]
}

/// `D` is a ring homomorphism at level 6 (hence at every level `≤ 6`):
/// 200 random pairs of degree `≤ 8` per prime.
pub fn ring_hom(seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("ring_hom");
    for p in PRIMES {
        let mut s = Sampler::new(modulus(p), seed_for(seed, p));
        let d = HSDerivation::new(modulus(p));
        for _ in 0..200 {
            let (x, y) = (s.ratfunc(8), s.ratfunc(8));
            let ok = d.check_ring_hom(&x, &y, 6);
            r.record(|| format!("p={p} x={x} y={y}"), Ok(ok));
        }
    }
    r
}

/// `d_i ∘ d_j = C(i+j, i) d_{i+j}` for `i + j ≤ 6` on random elements, and
/// `d_i(t^n) = C(n, i) t^{n-i}` for `n ≤ 30`.
pub fn iterativity(seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("iterativity");
    for p in PRIMES {
        let m = modulus(p);
        let mut s = Sampler::new(m, seed_for(seed, p));
        let d = HSDerivation::new(m);
        for _ in 0..200 {
            let x = s.ratfunc(8);
            for i in 1..6 {
                for j in 1..=6 - i {
                    let ok = d.check_iterativity(&x, i, j);
                    r.record(|| format!("p={p} x={x} i={i} j={j}"), Ok(ok));
                }
            }
        }
        for n in 0..=30u32 {
            let tn = RatFunc::from_poly(Poly::monomial(m, 1, n));
            for i in 0..=n {
                let c = binom_mod_p(n as u64, i as u64, m).value();
                let expected = RatFunc::from_poly(Poly::monomial(m, c, n - i));
                let ok = d.d_i(&tn, i as usize) == expected;
                r.record(|| format!("p={p} d_{i}(t^{n})"), Ok(ok));
            }
        }
    }
    r
}

/// `d_1` vanishes and `pth_root` succeeds exactly on p-th powers.
pub fn kernel_d1(seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("kernel_d1");
    for p in PRIMES {
        let m = modulus(p);
        let mut s = Sampler::new(m, seed_for(seed, p));
        let d = HSDerivation::new(m);
        for _ in 0..100 {
            let x = s.pth_power(4);
            let ok = d.d_i(&x, 1).is_zero()
                && pth_root(&x).map(|y| y.pow(p as u32) == x).unwrap_or(false);
            r.record(|| format!("p={p} p-th power {x}"), Ok(ok));
            let y = s.non_pth_power(8);
            let ok = !d.d_i(&y, 1).is_zero() && pth_root(&y).is_err();
            r.record(|| format!("p={p} non-power {y}"), Ok(ok));
        }
    }
    r
}

fn functoriality_case(s: &mut Sampler, dims: [usize; 3], level: usize) -> Result<bool> {
    let f = s.poly_map(dims[0], dims[1], 2);
    let g = s.poly_map(dims[1], dims[2], 2);
    let gf = g.compose(&f)?;
    let as_maps = gf.prolong(level) == g.prolong(level).compose(&f.prolong(level))?;
    let arc = ArcPoint::new(
        level,
        (0..dims[0])
            .map(|_| TruncSeries::new((0..=level).map(|_| s.ratfunc(2)).collect()))
            .collect(),
    )?;
    let lhs = gf.prolong(level).apply(&arc.flatten())?;
    let rhs = g
        .prolong(level)
        .apply(&f.prolong(level).apply(&arc.flatten())?)?;
    let via_series = apply_to_arc(&gf, &arc)?.flatten();
    let identity = f.prolong(0) == f
        && PolyMap::identity(s.modulus(), dims[0]).prolong(level)
            == PolyMap::identity(s.modulus(), dims[0] * (level + 1));
    Ok(as_maps && lhs == rhs && lhs == via_series && identity)
}

/// `A_m(g ∘ f) = A_m(g) ∘ A_m(f)` as maps and pointwise on `A^1`/`A^2`,
/// and `A_0` is the identity functor. 50 triples per prime.
pub fn functoriality(seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("functoriality");
    for p in PRIMES {
        let mut s = Sampler::new(modulus(p), seed_for(seed, p));
        for k in 0..50usize {
            let dims = [1 + k % 2, 1 + (k / 2) % 2, 1 + (k / 4) % 2];
            let level = k % 4;
            let ok = functoriality_case(&mut s, dims, level);
            r.record(|| format!("p={p} dims={dims:?} m={level}"), ok);
        }
    }
    r
}

fn parabola(m: Modulus) -> VarietyPresentation {
    let x = MultiPoly::var(m, 2, 0);
    let y = MultiPoly::var(m, 2, 1);
    VarietyPresentation::new(
        m,
        vec!["x".into(), "y".into()],
        vec![&y - &(&x * &x)],
        vec![],
    )
    .expect("valid presentation")
}

fn hyperbola(m: Modulus) -> VarietyPresentation {
    let x = MultiPoly::var(m, 2, 0);
    let y = MultiPoly::var(m, 2, 1);
    VarietyPresentation::new(
        m,
        vec!["x".into(), "y".into()],
        vec![&(&x * &y) - &MultiPoly::one(m, 2)],
        vec![],
    )
    .expect("valid presentation")
}

fn nabla_case(v: &VarietyPresentation, f: &PolyMap, a: &[RatFunc], level: usize) -> Result<bool> {
    let arc = nabla(v, a, level)?;
    let member = prolong_variety(v, level).contains(&arc)?;
    let natural = check_nabla_naturality(f, a, level)?;
    let mut coherent = true;
    for n in 0..=level {
        coherent &= arc.project(n)? == nabla(v, a, n)?;
    }
    Ok(member && natural && coherent)
}

/// `∇` lands in `A_m X`, commutes with morphisms and with projection, on
/// the builtin groups, `V(y - x^2)` and `V(xy - 1)`. 100 points per space.
pub fn nabla_suite(seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("nabla");
    for p in PRIMES {
        let m = modulus(p);
        let mut s = Sampler::new(m, seed_for(seed, p));
        for g in builtin_groups(m) {
            for k in 0..100usize {
                let level = 1 + k % 4;
                let a = s.group_point(&g, 3).expect("builtin groups are open");
                let f = if k % 2 == 0 {
                    g.inv_map().clone()
                } else {
                    s.poly_map(g.dim(), 1, 3)
                };
                let ok = nabla_case(g.variety(), &f, &a, level);
                r.record(
                    || format!("p={p} {} a={} m={level}", g.name(), fmt_point(&a)),
                    ok,
                );
            }
        }
        for (name, v) in [("y-x^2", parabola(m)), ("xy-1", hyperbola(m))] {
            for k in 0..100usize {
                let level = 1 + k % 4;
                let x = s.nonzero_ratfunc(3);
                let a = if name == "y-x^2" {
                    vec![x.clone(), x.pow(2)]
                } else {
                    vec![x.clone(), x.inv().expect("nonzero")]
                };
                let f = s.poly_map(2, 1 + k % 2, 3);
                let ok = nabla_case(&v, &f, &a, level);
                r.record(
                    || format!("p={p} V({name}) a={} m={level}", fmt_point(&a)),
                    ok,
                );
            }
        }
    }
    r
}

fn arc_group_case(s: &mut Sampler, g: &GroupPresentation, level: usize) -> Result<bool> {
    let ag = ArcGroup::new(g, level);
    let mut el = || -> Result<_> { ag.element(s.arc_element(g, level, 2).expect("open group")) };
    let (a, b, c) = (el()?, el()?, el()?);
    let e = ag.identity();
    let assoc = ag.arc_mul(&ag.arc_mul(&a, &b)?, &c)? == ag.arc_mul(&a, &ag.arc_mul(&b, &c)?)?;
    let ident = ag.arc_mul(&a, &e)? == a && ag.arc_mul(&e, &a)? == a;
    let a_inv = ag.arc_inv(&a)?;
    let inverse =
        ag.is_identity(&ag.arc_mul(&a, &a_inv)?) && ag.is_identity(&ag.arc_mul(&a_inv, &a)?);
    let rebuilt = ag.arc_mul(&ag.split(&a)?, &ag.section(&a.base_point())?)? == a;
    let in_fiber = ag.in_identity_fiber(&ag.split(&b)?);
    Ok(assoc && ident && inverse && rebuilt && in_fiber)
}

/// `x` and `x · s(c)` for constant `c` share `h`; the Fact-key verdict must
/// hold and must not be vacuous.
fn fact_key_case(s: &mut Sampler, g: &GroupPresentation, level: usize) -> Result<bool> {
    let ag = ArcGroup::new(g, level);
    let x = ag.element(s.arc_element(g, level, 2).expect("open group"))?;
    let c = s.constant_group_point(g).expect("open group");
    let y = ag.arc_mul(&x, &ag.section(&c)?)?;
    Ok(ag.split(&x)? == ag.split(&y)? && ag.check_fact_key(&x, &y)?)
}

/// Group axioms on `A_m G`, `x = h(x) · s(base(x))`, and the Fact-key
/// verdict on equal-`h` pairs. `m ≤ 4`, all builtin groups and primes.
pub fn arc_group(seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("arc_group");
    for p in PRIMES {
        let m = modulus(p);
        let mut s = Sampler::new(m, seed_for(seed, p));
        for g in builtin_groups(m) {
            for k in 0..100usize {
                let level = k % 5;
                let ok = arc_group_case(&mut s, &g, level);
                r.record(|| format!("p={p} {} m={level} axioms", g.name()), ok);
            }
            for k in 0..50usize {
                let level = k % 5;
                let ok = fact_key_case(&mut s, &g, level);
                r.record(|| format!("p={p} {} m={level} fact key", g.name()), ok);
            }
        }
    }
    r
}

/// `ℓD` on `G_a` is `(0, d_1 g, ..., d_m g)`; on `G_m` it is `D(g) · g^{-1}`.
pub fn log_derivative(seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("log_derivative");
    for p in PRIMES {
        let m = modulus(p);
        let mut s = Sampler::new(m, seed_for(seed, p));
        let d = HSDerivation::new(m);
        let (ga, gm) = (
            GroupPresentation::additive(m),
            GroupPresentation::multiplicative(m),
        );
        for k in 0..100usize {
            let level = 1 + k % 6;
            let g = s.ratfunc(6);
            let ok = ArcGroup::new(&ga, level)
                .log_derivative(std::slice::from_ref(&g))
                .map(|ld| {
                    let mut expected = vec![g.zero_like()];
                    expected.extend((1..=level).map(|i| d.d_i(&g, i)));
                    ld.point().flatten() == expected
                });
            r.record(|| format!("p={p} Ga g={g} m={level}"), ok);

            let g = s.nonzero_ratfunc(6);
            let ok = ArcGroup::new(&gm, level)
                .log_derivative(std::slice::from_ref(&g))
                .map(|ld| Some(ld.into_point()) == gm_log_series(&g, level));
            r.record(|| format!("p={p} Gm g={g} m={level}"), ok);
        }
    }
    r
}

/// Constants have trivial `ℓD`; nonconstant `g` of degree `≤ 4` are
/// detected at some level `≤ 8p`; `ℓD(x c) = ℓD(x)` and `constant_translate`
/// returns `c`.
pub fn kernel(seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("kernel");
    for p in PRIMES {
        let m = modulus(p);
        let mut s = Sampler::new(m, seed_for(seed, p));
        let groups = builtin_groups(m);
        for g in &groups {
            for level in 0..=4 {
                let ag = ArcGroup::new(g, level);
                for _ in 0..5 {
                    let c = s.constant_group_point(g).expect("open group");
                    let ok = ag.log_derivative(&c).map(|ld| ag.is_identity(&ld));
                    r.record(
                        || format!("p={p} {} c={} m={level}", g.name(), fmt_point(&c)),
                        ok,
                    );
                }
            }
        }
        for g in &groups[..2] {
            for _ in 0..50 {
                let x = loop {
                    let x = s.group_point(g, 4).expect("open group");
                    if !g.is_constant_point(&x) {
                        break x;
                    }
                };
                let ok = first_detecting_level(g, &x, 8 * p as usize).map(|l| l.is_some());
                r.record(
                    || format!("p={p} {} g={} escalation", g.name(), fmt_point(&x)),
                    ok,
                );
            }
        }
        for g in &groups[..3] {
            for k in 0..20usize {
                let level = 1 + k % 4;
                let x = s.group_point(g, 3).expect("open group");
                let c = s.constant_group_point(g).expect("open group");
                let ok = (|| -> Result<bool> {
                    let xc = g.mul_points(&x, &c)?;
                    let eq = LogEquation::from_point(g, level, &x)?;
                    Ok(eq.verify_solution(&xc)? && constant_translate(&eq, &x, &xc)? == c)
                })();
                r.record(
                    || format!("p={p} {} x={} c={}", g.name(), fmt_point(&x), fmt_point(&c)),
                    ok,
                );
            }
        }
    }
    r
}

/// One solver round trip: `α := ℓD(g)` at level `max(deg g, 1)`, solve at
/// bound `deg g`. Returns the equation and every reported solution.
pub fn round_trip(
    g: &GroupPresentation,
    x: &RatFunc,
) -> Result<(LogEquation, Vec<Vec<RatFunc>>, bool)> {
    let deg = x.numer().degree().unwrap_or(0);
    let level = deg.max(1) as usize;
    let eq = LogEquation::from_point(g, level, std::slice::from_ref(x))?;
    let report = solve(&eq, deg)?;
    if report.status != SolveStatus::Solved {
        return Ok((eq, vec![], false));
    }
    let particular = report
        .particular
        .clone()
        .expect("solved reports carry a solution");
    let solutions = report.solutions(g)?;
    let mut ok = eq.verify_solution(&particular)?;
    for a in &solutions {
        ok &= eq.verify_solution(a)?;
    }
    let c = constant_translate(&eq, &particular, std::slice::from_ref(x))?;
    ok &= g.is_constant_point(&c);
    Ok((eq, solutions, ok))
}

fn solver_inputs(seed: u64, p: u64) -> Vec<(GroupPresentation, RatFunc)> {
    let m = modulus(p);
    let mut s = Sampler::new(m, seed_for(seed, p));
    let mut out = vec![];
    for g in [
        GroupPresentation::additive(m),
        GroupPresentation::multiplicative(m),
    ] {
        for _ in 0..50 {
            let x = s
                .polynomial_group_point(&g, 4)
                .expect("open group")
                .remove(0);
            out.push((g.clone(), x));
        }
    }
    out
}

/// Round trips through `solve_ga` and `solve_gm_poly`, plus the
/// inconsistent `G_a` equation `(0, 1, 1)` over F_3.
pub fn solver(seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("solver");
    for p in PRIMES {
        for (g, x) in solver_inputs(seed, p) {
            let ok = round_trip(&g, &x).map(|(_, _, ok)| ok);
            r.record(|| format!("p={p} {} g={x}", g.name()), ok);
        }
    }
    let m = modulus(3);
    let one = RatFunc::one(m);
    let alpha = ArcPoint::new(
        2,
        vec![TruncSeries::new(vec![one.zero_like(), one.clone(), one])],
    );
    let ok = (|| -> Result<bool> {
        let eq = LogEquation::new(&GroupPresentation::additive(m), 2, alpha?)?;
        let report = solve(&eq, 5)?;
        Ok(report.status == SolveStatus::Inconsistent
            && report.particular.is_none()
            && !ga_consistency_check(&eq)?)
    })();
    r.record(|| "p=3 Ga alpha=(0, 1, 1)".into(), ok);
    r
}

/// `∇(a) = α · s(a)` for every solver-produced pair.
pub fn recursion(seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("recursion");
    for p in PRIMES {
        for (g, x) in solver_inputs(seed, p) {
            let ok = round_trip(&g, &x).and_then(|(eq, solutions, ok)| {
                let mut all = ok && !solutions.is_empty();
                for a in &solutions {
                    all &= recursion_check(&eq, a)?;
                }
                Ok(all)
            });
            r.record(|| format!("p={p} {} g={x}", g.name()), ok);
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_are_unique() {
        for (i, (a, _)) in SUITES.iter().enumerate() {
            assert!(SUITES[i + 1..].iter().all(|(b, _)| a != b));
            assert!(find_suite(a).is_some());
        }
        assert!(find_suite("nope").is_none());
    }

    #[test]
    fn failures_are_recorded() {
        let mut r = SuiteReport::new("x");
        r.record(|| "a".into(), Ok(true));
        r.record(|| "b".into(), Ok(false));
        r.record(|| "c".into(), Err(crate::Error::NonUnit));
        assert_eq!((r.cases, r.passed()), (3, 1));
        assert!(!r.ok());
        assert_eq!(r.failures[0], "b");
    }
}
