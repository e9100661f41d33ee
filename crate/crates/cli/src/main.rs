//! `prmq`: classify quadrics, inspect PRM codes, and run the exhaustive
//! verification drivers from the command line.
//!
//! Exit status is 0 when the command succeeds and every check passes, 1 when
//! a verification fails, and 2 on usage errors.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use prmq::census::{self, AdmissibleShape, ContainmentViolation};
use prmq::expr::{parse_form, render_coeff};
use prmq::gf::GaloisField;
use prmq::prm::{self, ExhaustiveTester, Method, PrmCode};
use prmq::projspace::ProjectiveSpace;
use prmq::quadric::QuadraticForm;
use prmq::Exec;

#[derive(Parser, Debug)]
#[command(name = "prmq", version, about = "Quadrics over GF(q) and minimal codewords of PRM_q(2, N)")]
struct Cli {
    /// Field order, a prime power.
    #[arg(long, global = true)]
    q: Option<u64>,
    /// Ambient projective dimension.
    #[arg(long = "N", global = true)]
    n: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for scans; defaults to the available parallelism.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Maximum number of forms (up to scalar) a scan may visit.
    #[arg(long, global = true, default_value_t = census::DEFAULT_BUDGET)]
    budget: u128,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Class, rank, singular locus, point count and projective index.
    Classify { form: String },
    /// Indices and coordinates of the rational zeros.
    Points { form: String },
    /// Change of variables to the canonical form.
    Canonicalize { form: String },
    /// Code parameters.
    Code {
        #[command(subcommand)]
        what: CodeCommand,
    },
    /// Decide whether the codeword of a form is minimal.
    Minimal {
        form: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Char)]
        method: MethodArg,
    },
    /// Minimal codewords per weight, closed form against brute force.
    Census {
        #[arg(long, value_enum, default_value_t = MethodArg::Char)]
        method: MethodArg,
    },
    /// Run a verification driver.
    Verify {
        #[arg(value_enum)]
        what: VerifyTarget,
    },
}

#[derive(Subcommand, Debug)]
enum CodeCommand {
    /// Length, dimension and minimum distance.
    Info,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Char,
    Interp,
    Exhaustive,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Char => Method::Characterization,
            MethodArg::Interp => Method::Interpolation,
            MethodArg::Exhaustive => Method::Exhaustive,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerifyTarget {
    Containment,
    Exception,
    Serre,
    Pencil,
}

/// Rendered output and whether the command's checks passed.
struct Report {
    body: String,
    passed: bool,
}

impl Report {
    fn ok(body: String) -> Self {
        Self { body, passed: true }
    }
}

/// Generic rendering for flat records: JSON as is, CSV as `key,value`
/// lines, table as aligned `key: value` lines.
fn render<T: Serialize>(value: &T, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable") + "\n",
        Format::Csv | Format::Table => {
            let v = serde_json::to_value(value).expect("serializable");
            let fields: Vec<(String, String)> = match v {
                serde_json::Value::Object(map) => map
                    .into_iter()
                    .map(|(k, v)| {
                        let s = match v {
                            serde_json::Value::String(s) => s,
                            other => other.to_string(),
                        };
                        (k, s)
                    })
                    .collect(),
                other => vec![("value".into(), other.to_string())],
            };
            let mut out = String::new();
            if matches!(format, Format::Csv) {
                out.push_str("key,value\n");
                for (k, v) in fields {
                    let _ = writeln!(out, "{k},\"{}\"", v.replace('"', "\"\""));
                }
            } else {
                let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in fields {
                    let _ = writeln!(out, "{k:>width$}: {v}");
                }
            }
            out
        }
    }
}

struct Ctx {
    cli_q: Option<u64>,
    cli_n: Option<usize>,
    format: Format,
    budget: u128,
    exec: Exec,
}

impl Ctx {
    fn q(&self) -> Result<u64> {
        self.cli_q.ok_or_else(|| anyhow!("--q is required for this command"))
    }

    fn n(&self) -> Result<usize> {
        self.cli_n.ok_or_else(|| anyhow!("--N is required for this command"))
    }

    fn space(&self) -> Result<Arc<ProjectiveSpace>> {
        let field = Arc::new(GaloisField::with_order(self.q()?)?);
        Ok(Arc::new(ProjectiveSpace::new(field, self.n()?)?))
    }

    fn form(&self, text: &str) -> Result<QuadraticForm> {
        let space = self.space()?;
        parse_form(text, &space).with_context(|| format!("cannot parse {text:?}"))
    }
}

#[derive(Serialize)]
struct PointsRecord {
    count: usize,
    indices: Vec<usize>,
    points: Vec<String>,
}

#[derive(Serialize)]
struct CanonicalRecord {
    class: prmq::quadric::QuadricClass,
    rank: usize,
    scalar: String,
    canonical: String,
    /// Rows of the change of variables.
    transform: Vec<String>,
}

#[derive(Serialize)]
struct CodeInfo {
    q: u64,
    #[serde(rename = "N")]
    n: usize,
    length: usize,
    dimension: usize,
    /// Found by scanning every codeword; null when the code is too large.
    min_distance: Option<usize>,
    expected_min_distance: u128,
}

#[derive(Serialize)]
struct MinimalRecord {
    form: String,
    weight: usize,
    minimal: bool,
    witness: Option<String>,
    method: Method,
}

#[derive(Serialize)]
struct ContainmentReport {
    q: u64,
    #[serde(rename = "N")]
    n: usize,
    pairs: usize,
    shapes: BTreeMap<String, usize>,
    inadmissible: usize,
    passed: bool,
    violations: Vec<ContainmentViolation>,
}

#[derive(Serialize)]
struct ExceptionReport {
    inner: &'static str,
    outer: &'static str,
    field: u64,
    #[serde(rename = "N")]
    n: usize,
    passed: bool,
}

#[derive(Serialize)]
struct PencilOutcome {
    #[serde(flatten)]
    report: census::PencilReport,
    passed: bool,
}

fn run(cli: &Cli, exec: Exec) -> Result<Report> {
    let ctx = Ctx {
        cli_q: cli.q,
        cli_n: cli.n,
        format: cli.format,
        budget: cli.budget,
        exec,
    };
    let fmt = ctx.format;
    Ok(match &cli.command {
        Command::Classify { form } => {
            let f = ctx.form(form)?;
            Report::ok(render(&f.classify()?.record(f.field()), fmt))
        }
        Command::Points { form } => {
            let f = ctx.form(form)?;
            let set = f.point_set();
            let rec = PointsRecord {
                count: set.count(),
                indices: set.to_vec(),
                points: set.iter().map(|i| f.space().point(i).render(f.field())).collect(),
            };
            Report::ok(render(&rec, fmt))
        }
        Command::Canonicalize { form } => {
            let f = ctx.form(form)?;
            let c = f.canonicalize()?;
            let field = f.field();
            let rec = CanonicalRecord {
                class: c.class,
                rank: c.rank,
                scalar: render_coeff(field, c.scalar),
                canonical: c.canonical.to_string(),
                transform: c
                    .transform
                    .iter()
                    .map(|row| {
                        row.iter().map(|&x| render_coeff(field, x)).collect::<Vec<_>>().join(" ")
                    })
                    .collect(),
            };
            Report::ok(render(&rec, fmt))
        }
        Command::Code { what: CodeCommand::Info } => {
            let code = PrmCode::build(ctx.space()?)?;
            let min_distance = match code.minimum_distance(ctx.exec) {
                Ok(d) => Some(d),
                Err(prmq::Error::CodeTooLarge(_)) => None,
                Err(e) => return Err(e.into()),
            };
            let rec = CodeInfo {
                q: ctx.q()?,
                n: ctx.n()?,
                length: code.length(),
                dimension: code.dimension(),
                min_distance,
                expected_min_distance: code.expected_minimum_distance(),
            };
            let passed = min_distance.is_none_or(|d| d as u128 == rec.expected_min_distance);
            Report {
                body: render(&rec, fmt),
                passed,
            }
        }
        Command::Minimal { form, method } => {
            let f = ctx.form(form)?;
            let code = PrmCode::build(f.space().clone())?;
            let cw = code.encode(&f)?;
            let verdict = match Method::from(*method) {
                Method::Characterization => prm::is_minimal_characterization(&f)?,
                Method::Interpolation => prm::is_minimal_interpolation(&code, &f)?,
                Method::Exhaustive => ExhaustiveTester::new(&code, ctx.exec)?.test(&cw, ctx.exec)?,
            };
            let rec = MinimalRecord {
                form: f.to_string(),
                weight: cw.weight(),
                minimal: verdict.minimal,
                witness: verdict.witness.map(|w| w.to_string()),
                method: verdict.method,
            };
            Report::ok(render(&rec, fmt))
        }
        Command::Census { method } => {
            let t = census::brute_force_census(
                ctx.q()?,
                ctx.n()?,
                Method::from(*method),
                ctx.budget,
                ctx.exec,
            )?;
            let body = match fmt {
                Format::Json => t.to_json() + "\n",
                Format::Csv => t.to_csv(),
                Format::Table => t.to_table(),
            };
            Report {
                body,
                passed: t.is_consistent(),
            }
        }
        Command::Verify { what } => verify(&ctx, *what)?,
    })
}

fn verify(ctx: &Ctx, what: VerifyTarget) -> Result<Report> {
    let fmt = ctx.format;
    Ok(match what {
        VerifyTarget::Containment => {
            let (q, n) = (ctx.q()?, ctx.n()?);
            let all = census::find_containments(q, n, ctx.budget, ctx.exec)?;
            let mut shapes: BTreeMap<String, usize> = BTreeMap::new();
            for v in &all {
                let key = v.shape.map_or("inadmissible".to_string(), |s: AdmissibleShape| {
                    format!("{s:?}")
                });
                *shapes.entry(key).or_default() += 1;
            }
            let violations: Vec<_> = all.iter().filter(|v| v.shape.is_none()).cloned().collect();
            let rec = ContainmentReport {
                q,
                n,
                pairs: all.len(),
                shapes,
                inadmissible: violations.len(),
                passed: violations.is_empty(),
                violations,
            };
            Report {
                passed: rec.passed,
                body: render(&rec, fmt),
            }
        }
        VerifyTarget::Exception => {
            let rec = ExceptionReport {
                inner: census::EXCEPTION_INNER,
                outer: census::EXCEPTION_OUTER,
                field: 2,
                n: 3,
                passed: census::verify_exception_example(),
            };
            Report {
                passed: rec.passed,
                body: render(&rec, fmt),
            }
        }
        VerifyTarget::Serre => {
            let r = census::serre_check(ctx.q()?, ctx.n()?, ctx.budget, ctx.exec)?;
            Report {
                passed: r.holds,
                body: render(&r, fmt),
            }
        }
        VerifyTarget::Pencil => {
            let q = ctx.q()?;
            let report = census::conic_pencil(q)?;
            let want = match q {
                2 => (7, 6),
                3 => (4, 3),
                _ => (1, 0),
            };
            let passed = (report.members, report.reducible) == want;
            let rec = PencilOutcome { report, passed };
            Report {
                passed,
                body: render(&rec, fmt),
            }
        }
    })
}

fn configure_workers(workers: Option<usize>) -> Result<Exec> {
    let Some(w) = workers else {
        return Ok(Exec::Parallel);
    };
    if w == 0 {
        bail!("--workers must be at least 1");
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(w)
        .build_global()
        .context("cannot configure the worker pool")?;
    Ok(if w == 1 { Exec::Sequential } else { Exec::Parallel })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_workers(cli.workers).and_then(|exec| run(&cli, exec));
    match result {
        Ok(report) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &report.body)
                    .with_context(|| format!("cannot write {}", path.display())),
                None => {
                    print!("{}", report.body);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
