//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//! Run with `cargo test -p idarc-frontend --test acceptance`.

use std::process::Command;
use std::time::Instant;

use idarc_core::algebra::{Modulus, Poly, RatFunc, Ring, TruncSeries};
use idarc_core::derivation::HSDerivation;
use idarc_core::group::{ArcGroup, GroupPresentation};
use idarc_core::sample::Sampler;
use idarc_core::suites::{self, SuiteReport};

const SEED: u64 = 20_240_601;

struct Verdict {
    ok: bool,
    detail: String,
}

impl Verdict {
    fn from_reports(reports: &[SuiteReport]) -> Verdict {
        let mut ok = true;
        let mut parts = vec![];
        for r in reports {
            ok &= r.ok();
            parts.push(format!("{} {}/{}", r.name, r.passed(), r.cases));
            if let Some(f) = r.failures.first() {
                parts.push(format!("first failure: {f}"));
            }
        }
        Verdict {
            ok,
            detail: parts.join("; "),
        }
    }

    fn and(mut self, ok: bool, detail: String) -> Verdict {
        self.ok &= ok;
        self.detail = format!("{}; {detail}", self.detail);
        self
    }
}

fn modulus(p: u64) -> Modulus {
    Modulus::new(p).unwrap()
}

/// `C(n, k) mod p` through exact factorials; `n ≤ 30` fits in `u128`.
fn factorial_binom(n: u64, k: u64, p: u64) -> u64 {
    if k > n {
        return 0;
    }
    let fact = |x: u64| (1..=x as u128).product::<u128>();
    (fact(n) / (fact(k) * fact(n - k)) % p as u128) as u64
}

/// Pascal's triangle mod p, independent of Lucas and of factorials.
fn pascal(rows: usize, p: u64) -> Vec<Vec<u64>> {
    let mut t = vec![vec![1u64]];
    for n in 1..rows {
        let prev = &t[n - 1];
        let row = (0..=n)
            .map(|k| {
                let a = if k > 0 { prev[k - 1] } else { 0 };
                let b = prev.get(k).copied().unwrap_or(0);
                (a + b) % p
            })
            .collect();
        t.push(row);
    }
    t
}

/// `f(t + e)` mod `e^{level+1}` by binomial expansion of each monomial.
fn taylor(f: &Poly, level: usize, table: &[Vec<u64>]) -> TruncSeries<RatFunc> {
    let m = f.modulus();
    TruncSeries::new(
        (0..=level)
            .map(|i| {
                let terms = f
                    .terms()
                    .filter(|&(n, _)| n as usize >= i)
                    .map(|(n, c)| (n - i as u32, m.mul(c, table[n as usize][i])));
                RatFunc::from_poly(Poly::from_terms(m, terms))
            })
            .collect(),
    )
}

fn taylor_ratfunc(x: &RatFunc, level: usize, table: &[Vec<u64>]) -> TruncSeries<RatFunc> {
    let num = taylor(x.numer(), level, table);
    let den = taylor(x.denom(), level, table);
    num.try_mul(&den.inverse().unwrap()).unwrap()
}

fn c1_ring_hom() -> Verdict {
    let v = Verdict::from_reports(&[suites::ring_hom(SEED)]);
    // D agrees with substitution t -> t + e on random elements.
    let mut ok = true;
    let mut n = 0;
    for p in suites::PRIMES {
        let m = modulus(p);
        let table = pascal(40, p);
        let d = HSDerivation::new(m);
        let mut s = Sampler::new(m, SEED ^ p);
        for _ in 0..50 {
            let x = s.ratfunc(8);
            ok &= d.d_series(&x, 6) == taylor_ratfunc(&x, 6, &table);
            n += 1;
        }
    }
    v.and(ok, format!("substitution oracle {n} elements"))
}

fn c2_iterativity() -> Verdict {
    let v = Verdict::from_reports(&[suites::iterativity(SEED)]);
    let mut ok = true;
    let mut n_checked = 0;
    for p in suites::PRIMES {
        let m = modulus(p);
        let d = HSDerivation::new(m);
        for n in 0..=30u32 {
            let tn = RatFunc::from_poly(Poly::monomial(m, 1, n));
            for i in 0..=n {
                let c = factorial_binom(n as u64, i as u64, p);
                let expected = RatFunc::from_poly(Poly::monomial(m, c, n - i));
                ok &= d.d_i(&tn, i as usize) == expected;
                n_checked += 1;
            }
        }
    }
    v.and(ok, format!("factorial oracle {n_checked} monomials"))
}

fn c7_log_derivative() -> Verdict {
    let v = Verdict::from_reports(&[suites::log_derivative(SEED)]);
    let mut ok = true;
    let mut n = 0;
    for p in suites::PRIMES {
        let m = modulus(p);
        let table = pascal(40, p);
        let gm = GroupPresentation::multiplicative(m);
        let ga = GroupPresentation::additive(m);
        let mut s = Sampler::new(m, SEED ^ (p << 8));
        for k in 0..100 {
            let level = 1 + k % 6;
            let g = s.nonzero_ratfunc(6);
            let oracle = taylor_ratfunc(&g, level, &table).scale(&g.inv().unwrap());
            let ld = ArcGroup::new(&gm, level)
                .log_derivative(std::slice::from_ref(&g))
                .unwrap();
            ok &= ld.point().coords()[0] == oracle;
            let mut additive = taylor_ratfunc(&g, level, &table).into_coeffs();
            additive[0] = g.zero_like();
            let ld = ArcGroup::new(&ga, level)
                .log_derivative(std::slice::from_ref(&g))
                .unwrap();
            ok &= ld.point().flatten() == additive;
            n += 2;
        }
    }
    v.and(ok, format!("substitution oracle {n} elements"))
}

fn c9_solver() -> Verdict {
    Verdict::from_reports(&[suites::solver(SEED)])
}

const GOLDENS: [(&[&str], &str); 3] = [
    (&["derive", "-p", "2", "-m", "3", "t^3"], "t^3 + t^2*e + t*e^2 + e^3\n"),
    (&["logd", "-p", "2", "-m", "2", "--group", "Gm", "t"], "(1, 1/t, 0)\n"),
    (
        &["solve", "-p", "2", "-m", "3", "--group", "Ga", "--alpha", "(0,t^2,t,1)", "--bound", "3"],
        "{\"status\":\"solved\",\"particular\":\"t^3\",\"translates\":[\"0\",\"1\"],\"degree_bound\":3}\n",
    ),
];

fn c11_cli() -> Verdict {
    let mut ok = true;
    let mut notes = vec![];
    for (args, expected) in GOLDENS {
        let runs: Vec<_> = (0..3)
            .map(|_| {
                Command::new(env!("CARGO_BIN_EXE_idarc"))
                    .args(args)
                    .output()
                    .unwrap()
            })
            .collect();
        let same = runs
            .windows(2)
            .all(|w| w[0].stdout == w[1].stdout && w[0].stderr == w[1].stderr);
        let exact = runs
            .iter()
            .all(|r| r.status.success() && r.stdout == expected.as_bytes());
        if !(same && exact) {
            notes.push(format!(
                "{} got {:?}",
                args[0],
                String::from_utf8_lossy(&runs[0].stdout)
            ));
        }
        ok &= same && exact;
    }
    let detail = if ok {
        format!("{} goldens x3 runs byte-identical", GOLDENS.len())
    } else {
        notes.join("; ")
    };
    Verdict { ok, detail }
}

fn suite(f: fn(u64) -> SuiteReport) -> impl Fn() -> Verdict {
    move || Verdict::from_reports(&[f(SEED)])
}

type Criterion = Box<dyn Fn() -> Verdict + Send + Sync>;

fn main() {
    let criteria: Vec<(&str, Criterion)> = vec![
        ("ring homomorphism", Box::new(c1_ring_hom)),
        ("iterativity", Box::new(c2_iterativity)),
        ("kernel of d_1", Box::new(suite(suites::kernel_d1))),
        ("functoriality", Box::new(suite(suites::functoriality))),
        (
            "nabla membership and naturality",
            Box::new(suite(suites::nabla_suite)),
        ),
        ("arc group", Box::new(suite(suites::arc_group))),
        ("log-derivative closed forms", Box::new(c7_log_derivative)),
        ("kernel", Box::new(suite(suites::kernel))),
        ("solver round trip", Box::new(c9_solver)),
        ("recursion", Box::new(suite(suites::recursion))),
        ("CLI goldens", Box::new(c11_cli)),
    ];
    let results: Vec<(Verdict, f64)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|(_, f)| {
                s.spawn(move || {
                    let start = Instant::now();
                    let v = f();
                    (v, start.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("criterion panicked"))
            .collect()
    });
    let mut failed = 0;
    for (k, ((name, _), (v, secs))) in criteria.iter().zip(&results).enumerate() {
        let tag = if v.ok { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {tag} {name} ({secs:.1}s): {}",
            k + 1,
            v.detail
        );
        failed += usize::from(!v.ok);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
