use std::ffi::OsString;
use std::fmt::Write as _;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use idarc_core::algebra::Modulus;
use idarc_core::arc::prolong_variety;
use idarc_core::derivation::HSDerivation;
use idarc_core::group::{ArcGroup, GroupPresentation};
use idarc_core::logeq::{solve, LogEquation, SolutionReport};
use idarc_core::suites::{find_suite, SuiteReport, SUITES};
use serde::Serialize;

use crate::expr::series_expr;
use crate::schema::{self, fmt_arc, fmt_point, parse_arc, parse_point, GroupJson, VarietyJson};
use crate::Error;

#[derive(Parser, Debug)]
#[command(
    name = "idarc",
    version,
    about = "Iterative derivations and arc groups over F_p(t)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print D(x) = x + d_1(x) e + ... + d_m(x) e^m.
    Derive {
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'm')]
        m: usize,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Print d_i(x).
    Di {
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'i')]
        i: usize,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Print the level-m arc variety as a variety document.
    Prolong {
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'm')]
        m: usize,
        /// Path, `-` for standard input, or inline JSON.
        variety: String,
    },
    /// Print the logarithmic derivative of a point.
    Logd {
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'm')]
        m: usize,
        /// Builtin name (`Ga`, `Gm`, `AxB`, `Ga*Gm`), path, or inline JSON.
        #[arg(long)]
        group: String,
        #[arg(allow_hyphen_values = true)]
        point: String,
    },
    /// Search for a solution of degree at most `bound`.
    Solve {
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'm')]
        m: usize,
        #[arg(long)]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        bound: u32,
    },
    /// Print whether a point solves the equation.
    Verify {
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'm')]
        m: usize,
        #[arg(long)]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Run a property suite, or `all`.
    Check {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Result of one invocation, as the binary would emit it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Serialize)]
struct ReportJson {
    status: &'static str,
    particular: Option<String>,
    translates: Vec<String>,
    degree_bound: u32,
}

impl From<&SolutionReport> for ReportJson {
    fn from(r: &SolutionReport) -> Self {
        ReportJson {
            status: r.status.as_str(),
            particular: r.particular.as_deref().map(fmt_point),
            translates: r.translates.iter().map(|c| fmt_point(c)).collect(),
            degree_bound: r.degree_bound,
        }
    }
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Output {
                code: 0,
                stdout: e.render().to_string(),
                stderr: String::new(),
            };
        }
        Err(e) => return failure(&Error::Usage(e.render().to_string().trim_end().to_string())),
    };
    match execute(cli.command) {
        Ok(stdout) => Output {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => failure(&e),
    }
}

fn failure(e: &Error) -> Output {
    Output {
        code: e.exit_code(),
        stdout: String::new(),
        stderr: format!("{}\n", e.to_json()),
    }
}

fn modulus(p: u64) -> Result<Modulus, Error> {
    Modulus::new(p).map_err(|e| Error::Usage(format!("-p: {e}")))
}

fn read_document(arg: &str) -> Result<String, Error> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') || t.starts_with('"') {
        return Ok(arg.to_string());
    }
    if arg == "-" {
        return std::io::read_to_string(std::io::stdin())
            .map_err(|e| Error::Usage(format!("stdin: {e}")));
    }
    std::fs::read_to_string(arg).map_err(|e| Error::Usage(format!("{arg}: {e}")))
}

fn group(arg: &str, m: Modulus) -> Result<GroupPresentation, Error> {
    if let Some(g) = schema::builtin_group(arg, m) {
        return g;
    }
    let doc = read_document(arg)?;
    let g: GroupJson =
        serde_json::from_str(&doc).map_err(|e| Error::Schema(format!("group: {e}")))?;
    g.build(m)
}

fn equation(
    p: u64,
    level: usize,
    group_arg: &str,
    alpha: &str,
) -> Result<(GroupPresentation, LogEquation), Error> {
    let m = modulus(p)?;
    let g = group(group_arg, m)?;
    let alpha = parse_arc(alpha, g.dim(), level, m, "alpha")?;
    let eq = LogEquation::new(&g, level, alpha)?;
    Ok((g, eq))
}

fn line(s: impl std::fmt::Display) -> String {
    format!("{s}\n")
}

fn execute(command: Command) -> Result<String, Error> {
    match command {
        Command::Derive { p, m, expr } => {
            let m_ = modulus(p)?;
            let x = schema::ratfunc(&expr, m_, "expr", 0)?;
            let s = HSDerivation::new(m_).d_series(&x, m);
            Ok(line(series_expr(s.coeffs())))
        }
        Command::Di { p, i, expr } => {
            let m_ = modulus(p)?;
            let x = schema::ratfunc(&expr, m_, "expr", 0)?;
            Ok(line(fmt_point(&[HSDerivation::new(m_).d_i(&x, i)])))
        }
        Command::Prolong { p, m, variety } => {
            let m_ = modulus(p)?;
            let doc = read_document(&variety)?;
            let v: VarietyJson =
                serde_json::from_str(&doc).map_err(|e| Error::Schema(format!("variety: {e}")))?;
            let arc = prolong_variety(&v.build(m_)?, m);
            let out = schema::variety_json(
                arc.prolonged_equations(),
                arc.unit_constraints(),
                &arc.var_names(),
            );
            Ok(line(
                serde_json::to_string(&out).expect("plain strings serialize"),
            ))
        }
        Command::Logd {
            p,
            m,
            group: g,
            point,
        } => {
            let m_ = modulus(p)?;
            let g = group(&g, m_)?;
            let x = parse_point(&point, g.dim(), m_, "point")?;
            let ld = ArcGroup::new(&g, m).log_derivative(&x)?;
            Ok(line(fmt_arc(ld.point())))
        }
        Command::Solve {
            p,
            m,
            group: g,
            alpha,
            bound,
        } => {
            let (_, eq) = equation(p, m, &g, &alpha)?;
            let report = solve(&eq, bound)?;
            Ok(line(
                serde_json::to_string(&ReportJson::from(&report)).expect("plain fields serialize"),
            ))
        }
        Command::Verify {
            p,
            m,
            group: g,
            alpha,
            point,
        } => {
            let (g, eq) = equation(p, m, &g, &alpha)?;
            let x = parse_point(&point, g.dim(), g.modulus(), "point")?;
            Ok(line(eq.verify_solution(&x)?))
        }
        Command::Check { suite, seed } => check(&suite, seed),
    }
}

/// Suites run on separate threads; output order is fixed.
fn check(name: &str, seed: u64) -> Result<String, Error> {
    let selected: Vec<_> = if name == "all" {
        SUITES.to_vec()
    } else {
        let suite = find_suite(name).ok_or_else(|| {
            let names: Vec<&str> = SUITES.iter().map(|(n, _)| *n).collect();
            Error::Usage(format!(
                "unknown suite {name:?}; expected all or one of {}",
                names.join(", ")
            ))
        })?;
        vec![(name, suite)]
    };
    let reports: Vec<SuiteReport> = std::thread::scope(|s| {
        let handles: Vec<_> = selected
            .iter()
            .map(|&(_, suite)| s.spawn(move || suite(seed)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    });
    let mut out = String::new();
    for r in &reports {
        let _ = writeln!(
            out,
            "{}: {} passed, {} failed",
            r.name,
            r.passed(),
            r.failures.len()
        );
        for f in &r.failures {
            let _ = writeln!(out, "  {f}");
        }
    }
    match reports.iter().find(|r| !r.ok()) {
        None => Ok(out),
        Some(r) => Err(Error::SuiteFailed {
            name: r.name.to_string(),
            failed: r.failures.len(),
            cases: r.cases,
            report: out,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idarc(args: &[&str]) -> Output {
        run(std::iter::once("idarc").chain(args.iter().copied()))
    }

    #[test]
    fn goldens() {
        assert_eq!(
            idarc(&["derive", "-p", "2", "-m", "3", "t^3"]).stdout,
            "t^3 + t^2*e + t*e^2 + e^3\n"
        );
        assert_eq!(
            idarc(&["logd", "-p", "2", "-m", "2", "--group", "Gm", "t"]).stdout,
            "(1, 1/t, 0)\n"
        );
        let out = idarc(&[
            "solve",
            "-p",
            "2",
            "-m",
            "3",
            "--group",
            "Ga",
            "--alpha",
            "(0,t^2,t,1)",
            "--bound",
            "3",
        ]);
        assert_eq!(
            out.stdout,
            "{\"status\":\"solved\",\"particular\":\"t^3\",\"translates\":[\"0\",\"1\"],\"degree_bound\":3}\n"
        );
    }

    #[test]
    fn other_commands() {
        assert_eq!(
            idarc(&["di", "-p", "3", "-i", "1", "1/t"]).stdout,
            "2/t^2\n"
        );
        assert_eq!(
            idarc(&["derive", "-p", "3", "-m", "2", "-t"]).stdout,
            "2*t + 2*e\n"
        );
        let v = r#"{"vars":["x","y"],"equations":["x*y - 1"]}"#;
        assert_eq!(
            idarc(&["prolong", "-p", "3", "-m", "1", v]).stdout,
            "{\"vars\":[\"x_0\",\"x_1\",\"y_0\",\"y_1\"],\"equations\":[\"x_0*y_0 + 2\",\"x_0*y_1 + x_1*y_0\"],\"inverted\":[]}\n"
        );
        let verify = |point: &str| {
            idarc(&[
                "verify",
                "-p",
                "2",
                "-m",
                "3",
                "--group",
                "Ga",
                "--alpha",
                "(0,t^2,t,1)",
                "--point",
                point,
            ])
        };
        assert_eq!(verify("t^3 + 1").stdout, "true\n");
        assert_eq!(verify("t^3 + t").stdout, "false\n");
        let ax = idarc(&["logd", "-p", "3", "-m", "1", "--group", "AxB", "(t, t^2)"]);
        assert_eq!(ax.stdout, "((1, 1/t), (0, t))\n");
    }

    #[test]
    fn errors_are_json() {
        let cases: [(&[&str], i32, &str); 7] = [
            (&["derive", "-p", "2", "t"], 2, "usage"),
            (&["derive", "-p", "4", "-m", "1", "t"], 2, "usage"),
            (&["derive", "-p", "2", "-m", "1", "t +"], 2, "syntax"),
            (
                &["derive", "-p", "2", "-m", "1", "1/(t - t)"],
                1,
                "non_invertible",
            ),
            (
                &["logd", "-p", "2", "-m", "1", "--group", "Gm", "0"],
                1,
                "point_not_on_variety",
            ),
            (
                &[
                    "solve",
                    "-p",
                    "3",
                    "-m",
                    "2",
                    "--group",
                    "Ga",
                    "--alpha",
                    "(0,1/t,0)",
                    "--bound",
                    "2",
                ],
                1,
                "non_polynomial_alpha",
            ),
            (
                &["logd", "-p", "2", "-m", "1", "--group", "nope.json", "t"],
                2,
                "usage",
            ),
        ];
        for (args, code, kind) in cases {
            let out = idarc(args);
            assert_eq!(out.code, code, "{args:?}: {}", out.stderr);
            let v: serde_json::Value = serde_json::from_str(&out.stderr).unwrap();
            assert_eq!(v["error"], kind, "{args:?}");
            assert!(out.stdout.is_empty());
        }
        let v: serde_json::Value =
            serde_json::from_str(&idarc(&["derive", "-p", "2", "-m", "1", "t +"]).stderr).unwrap();
        assert_eq!(v["offset"], 3);
    }

    #[test]
    fn inconsistent_alpha_is_reported() {
        let out = idarc(&[
            "solve", "-p", "3", "-m", "2", "--group", "Ga", "--alpha", "(0,1,1)", "--bound", "4",
        ]);
        assert_eq!(out.code, 0);
        assert_eq!(
            out.stdout,
            "{\"status\":\"inconsistent\",\"particular\":null,\"translates\":[],\"degree_bound\":4}\n"
        );
    }
}
