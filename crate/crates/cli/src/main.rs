use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qcf_core::bauermuir::chain_preset;
use qcf_core::catalog::{self, sample_point_with, Side};
use qcf_core::cfengine::convergents;
use qcf_core::harness::{self, Config, Flag, SweepReport, VerificationReport};
use qcf_core::qseries::{Complex, ParameterPoint, Precision, Sym};
use qcf_core::QcfError;

const EXIT_FAIL: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "qcf",
    version,
    about = "Numerical verification of q-continued-fraction identities"
)]
struct Cli {
    /// key = value file with defaults for tol, precision and budget
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Working precision in decimal digits
    #[arg(long, global = true, env = "QCF_PRECISION")]
    precision: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List registered identities
    List {
        #[arg(long)]
        json: bool,
    },
    /// Print the registry as a text document
    Export,
    /// Verify one identity at a given or sampled point
    Verify {
        id: String,
        #[command(flatten)]
        point: PointArgs,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Verify an identity (or `all`) at seeds 1..=N
    Sweep {
        id: String,
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Approximant trace n, A_n, B_n, f_n of an identity's continued fraction as CSV
    EvalCf {
        id: String,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Check that the G-ratio fractions f1..f4 agree at a point
    Crosscheck {
        #[arg(long, value_delimiter = ',', default_value = "f1,f2,f3,f4")]
        ids: Vec<String>,
        #[command(flatten)]
        point: PointArgs,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Run a Bauer-Muir chain preset and check its contract
    Bm {
        preset: String,
        #[arg(long, default_value_t = 6)]
        steps: usize,
        #[arg(long, default_value_t = 40)]
        check_n: usize,
        #[command(flatten)]
        point: PointArgs,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
    },
}

/// Parameter values such as `0.3`, `-0.1+0.2i`. Unset values are sampled
/// from `--seed`.
#[derive(Args, Clone, Default)]
struct PointArgs {
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

impl PointArgs {
    fn given(&self) -> Vec<(Sym, &str)> {
        [
            (Sym::Q, &self.q),
            (Sym::A, &self.a),
            (Sym::B, &self.b),
            (Sym::Lambda, &self.lambda),
            (Sym::C, &self.c),
            (Sym::Z, &self.z),
            (Sym::X, &self.x),
        ]
        .into_iter()
        .filter_map(|(s, v)| v.as_deref().map(|v| (s, v)))
        .collect()
    }

    /// The seeded sample for `id` (when given) overridden by explicit values.
    fn resolve(&self, id: Option<&str>, prec: Precision) -> Result<ParameterPoint, QcfError> {
        let mut p = match id {
            Some(id) => sample_point_with(id, self.seed, prec)?,
            None => ParameterPoint::new(),
        };
        for (s, v) in self.given() {
            p.set(s, Complex::parse(v, prec)?);
        }
        Ok(p)
    }

    /// Explicit values only, falling back to the standard G-ratio point.
    fn g_point(&self, prec: Precision) -> Result<ParameterPoint, QcfError> {
        let mut p = ParameterPoint::new();
        for (s, v) in [(Sym::Q, "0.2"), (Sym::A, "0.3"), (Sym::B, "0.4"), (Sym::Lambda, "0.5")] {
            p.set(s, Complex::parse(v, prec)?);
        }
        for (s, v) in self.given() {
            p.set(s, Complex::parse(v, prec)?);
        }
        Ok(p)
    }
}

fn code(e: &QcfError) -> u8 {
    match e {
        QcfError::UnknownIdentity(_) | QcfError::UnknownPreset(_) | QcfError::Parse(_) => EXIT_USAGE,
        QcfError::Domain(_) => EXIT_DOMAIN,
        _ => EXIT_FAIL,
    }
}

fn verdict(r: &VerificationReport) -> u8 {
    if r.pass {
        0
    } else if r.has_flag(Flag::DomainViolation) {
        EXIT_DOMAIN
    } else {
        EXIT_FAIL
    }
}

fn fmt_diff(d: Option<f64>) -> String {
    d.map_or_else(|| "-".into(), |d| format!("{d:.3e}"))
}

fn fmt_value(v: &Option<Complex>) -> String {
    v.as_ref().map_or_else(|| "-".into(), |v| v.to_short_string(20))
}

fn print_report(r: &VerificationReport) {
    let status = if r.pass { "PASS" } else { "FAIL" };
    println!("{} [{}] {status} rel_diff={}", r.id, r.point, fmt_diff(r.rel_diff));
    println!("  lhs = {}", fmt_value(&r.lhs));
    println!("  rhs = {}", fmt_value(&r.rhs));
    println!("  terms={} quotients={}", r.n_terms, r.n_quotients);
    if !r.flags.is_empty() {
        let f: Vec<_> = r.flags.iter().map(|f| f.name()).collect();
        println!("  flags: {}", f.join(", "));
    }
    if let Some(e) = &r.error {
        println!("  error: {e}");
    }
}

fn run(cli: Cli) -> Result<u8, QcfError> {
    let cfg = match &cli.config {
        Some(p) => Config::from_file(p)?,
        None => Config::default(),
    }
    .with_precision_text(cli.precision.as_deref())?;
    let prec = cfg.precision;
    match cli.cmd {
        Cmd::List { json } => {
            let list = catalog::list_identities();
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&list).map_err(|e| QcfError::Parse(e.to_string()))?
                );
            } else {
                for s in list {
                    println!("{:<16} {:<22} {}", s.id, s.params.join(","), s.statement);
                }
            }
            Ok(0)
        }
        Cmd::Export => {
            print!("{}", catalog::export_text());
            Ok(0)
        }
        Cmd::Verify { id, point, tol, json } => {
            let p = point.resolve(Some(&id), prec)?;
            let mut r = harness::verify(&id, &p, tol.unwrap_or(cfg.tol), &cfg.budget)?;
            if point.given().is_empty() {
                r.seed = Some(point.seed);
            }
            if json {
                println!("{}", r.to_json()?);
            } else {
                print_report(&r);
            }
            Ok(verdict(&r))
        }
        Cmd::Sweep {
            id,
            seeds,
            tol,
            json,
            csv,
        } => {
            let tol = tol.unwrap_or(cfg.tol);
            let sweeps = if id == "all" {
                harness::sweep_all(seeds, tol, prec, &cfg.budget)?
            } else {
                vec![harness::sweep(&id, seeds, tol, prec, &cfg.budget)?]
            };
            if json {
                let v: Vec<serde_json::Value> = sweeps
                    .iter()
                    .map(|s| serde_json::from_str(&s.to_json()?).map_err(|e| QcfError::Parse(e.to_string())))
                    .collect::<Result<_, _>>()?;
                println!(
                    "{}",
                    serde_json::to_string_pretty(&v).map_err(|e| QcfError::Parse(e.to_string()))?
                );
            } else if csv {
                print!("{}", SweepReport::to_csv(&sweeps)?);
            } else {
                for s in &sweeps {
                    println!(
                        "{:<16} {}/{} pass  worst rel_diff={}  {:.2}s",
                        s.id,
                        s.n_pass,
                        s.n_seeds,
                        fmt_diff(s.worst_rel_diff),
                        s.wall_seconds
                    );
                    for r in s.reports.iter().filter(|r| !r.pass) {
                        print_report(r);
                    }
                }
            }
            let reports = || sweeps.iter().flat_map(|s| &s.reports);
            Ok(if reports().all(|r| r.pass) {
                0
            } else if reports().any(|r| !r.pass && r.has_flag(Flag::DomainViolation)) {
                EXIT_DOMAIN
            } else {
                EXIT_FAIL
            })
        }
        Cmd::EvalCf { id, n, point } => {
            let rec = catalog::get(&id)?;
            let p = point.resolve(Some(&id), prec)?;
            let side: &Side = if rec.rhs.cf(&p).is_some() { &rec.rhs } else { &rec.lhs };
            let cf = match side.cf(&p) {
                Some(cf) => cf?,
                None => {
                    return Err(QcfError::Spec {
                        name: id,
                        reason: "no continued-fraction side".into(),
                    })
                }
            };
            println!("# {id} at {p}");
            println!("n,A_n_re,A_n_im,B_n_re,B_n_im,f_n");
            for c in convergents(&cf, n)? {
                let f = c.value().map_or_else(|_| "inf".into(), |f| f.to_short_string(20));
                println!(
                    "{},{},{},{},{},{f}",
                    c.n,
                    c.a.re_string(),
                    c.a.im_string(),
                    c.b.re_string(),
                    c.b.im_string()
                );
            }
            Ok(0)
        }
        Cmd::Crosscheck { ids, point, tol, json } => {
            let p = point.g_point(prec)?;
            let ids: Vec<&str> = ids.iter().map(String::as_str).collect();
            let r = harness::crosscheck_equal_cfs(&ids, &p, tol.unwrap_or(cfg.tol), &cfg.budget)?;
            if json {
                println!("{}", r.to_json()?);
            } else {
                println!(
                    "{} [{p}] {} max deviation={:.3e}",
                    ids.join(","),
                    if r.pass { "PASS" } else { "FAIL" },
                    r.max_deviation
                );
                for (id, v) in ids.iter().zip(&r.values) {
                    println!("  {id} = {}", fmt_value(v));
                }
            }
            Ok(if r.pass {
                0
            } else if r.flags.contains(&Flag::DomainViolation) {
                EXIT_DOMAIN
            } else {
                EXIT_FAIL
            })
        }
        Cmd::Bm {
            preset,
            steps,
            check_n,
            point,
            tol,
            json,
        } => {
            chain_preset(&preset)?;
            let p = point.g_point(prec)?;
            let tol = tol.unwrap_or(prec.structural_tol());
            let r = harness::bm_verify(&preset, &p, steps, check_n, tol)?;
            if json {
                println!("{}", r.to_json()?);
            } else {
                println!("{preset} [{p}] {}", if r.pass { "PASS" } else { "FAIL" });
                for s in &r.approximant {
                    println!("  step {}: approximant deviation {:.3e}", s.step, s.max_deviation);
                }
                println!("  prefix deviation {:.3e}", r.prefix_deviation);
            }
            Ok(if r.pass {
                0
            } else if r.flags.contains(&Flag::DomainViolation) {
                EXIT_DOMAIN
            } else {
                EXIT_FAIL
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(c) => ExitCode::from(c),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(code(&e))
        }
    }
}
