use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use gauss_dual::census::{
    bh_census, count_where, flex_census, genus_from_census, genus_smooth, singularity_census,
    verify_theorem1, verify_theorem2, SingClass,
};
use gauss_dual::curves::{fermat_curve, work_field, CurveC};
use gauss_dual::dualize::{
    dual_curve_interpolate, expected_dual_degree, fermat_dual_closed_form, verify_dual,
};
use gauss_dual::gf::Gf;
use gauss_dual::io;
use gauss_dual::Error;

#[derive(Parser)]
#[command(
    name = "gauss-dual",
    version,
    about = "Dual curves of q-Frobenius plane curves over finite fields"
)]
struct Cli {
    /// Worker threads for per-point work (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Progress and timings on stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// q, a power of the characteristic p.
    #[arg(long)]
    q: u64,
    /// Extension degree k of the base field GF(p^k).
    #[arg(long, env = "GAUSS_DUAL_FIELD_K", default_value_t = 8)]
    k: usize,
}

#[derive(Args)]
struct InputArgs {
    /// Curve JSON file.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// The Fermat curve and its closed-form dual.
    Fermat(FieldArgs),
    /// Dual of a curve by interpolation, with its checks.
    Dual {
        #[command(flatten)]
        input: InputArgs,
        /// Degree of the dual; searched for when absent.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Singularity census of the dual of a curve.
    Census(InputArgs),
    /// Flexes and hyperflexes of a curve.
    Flexes(InputArgs),
    /// Check a theorem at desk scale.
    Verify {
        #[command(subcommand)]
        which: Theorem,
    },
    /// The Ballico-Hefez polynomial and its singular points.
    Bh(FieldArgs),
}

#[derive(Subcommand)]
enum Theorem {
    /// Random members: dual degree, nodes, flexes, genus.
    Theorem1 {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// The Fermat curve: closed-form dual and its singular points.
    Theorem2 {
        #[command(flatten)]
        field: FieldArgs,
    },
}

/// Malformed input (exit 2) versus a failed computation (exit 1).
enum Failure {
    Input(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SchemaError(_)
            | Error::Parse(_)
            | Error::InvalidModulus
            | Error::InvalidInput(_)
            | Error::InvalidPrime(_)
            | Error::InvalidDegree(_)
            | Error::FieldTooLarge { .. }
            | Error::ZeroTensor => Failure::Input(e.to_string()),
            e => Failure::Compute(e.to_string()),
        }
    }
}

fn base_field(fa: &FieldArgs) -> Result<Gf, Failure> {
    let q = fa.q;
    let p = (2..=q)
        .find(|d| q.is_multiple_of(*d))
        .ok_or_else(|| Failure::Input(format!("q = {q} is not a prime power")))?;
    let mut t = q;
    while t.is_multiple_of(p) {
        t /= p;
    }
    if t != 1 {
        return Err(Failure::Input(format!("q = {q} is not a prime power")));
    }
    Ok(Gf::new(p, fa.k, 0)?)
}

fn read_curve(path: &PathBuf) -> Result<CurveC<Gf>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(io::curve_from_json(&text)?)
}

fn curve_value(c: &CurveC<Gf>) -> Value {
    serde_json::from_str(&io::curve_to_json(c)).expect("valid JSON")
}

fn dual_value(f: &Gf, d: &gauss_dual::dualize::DualCurve<Gf>) -> Value {
    serde_json::from_str(&io::dual_to_json(f, d)).expect("valid JSON")
}

fn log(verbose: bool, start: Instant, msg: &str) {
    if verbose {
        eprintln!("[{:>8.2}s] {msg}", start.elapsed().as_secs_f64());
    }
}

/// Runs the command; the bool is whether every assertion passed.
fn run(cli: &Cli, start: Instant) -> Result<(Value, bool), Failure> {
    let v = cli.verbose;
    match &cli.command {
        Command::Fermat(fa) => {
            let f = base_field(fa)?;
            let c = fermat_curve(&f, fa.q)?;
            let d = fermat_dual_closed_form(fa.q, &f)?;
            let ok = d.degree as u64 == expected_dual_degree(fa.q);
            Ok((
                json!({ "curve": curve_value(&c), "dual": dual_value(&f, &d) }),
                ok,
            ))
        }
        Command::Dual { input, degree } => {
            let c = read_curve(&input.input)?;
            let d = dual_curve_interpolate(&c, *degree, input.seed)?;
            log(v, start, "interpolated");
            let r = verify_dual(&c, &d, input.seed)?;
            let out = json!({
                "dual": dual_value(c.field(), &d),
                "checks": {
                    "holdout_samples": r.samples,
                    "vanishing": r.vanishing,
                    "degree_matches": r.degree_matches,
                    "squarefree": r.squarefree,
                },
            });
            Ok((out, r.pass()))
        }
        Command::Census(input) => {
            let c = read_curve(&input.input)?;
            let d = dual_curve_interpolate(&c, None, input.seed)?;
            log(v, start, &format!("dual of degree {}", d.degree));
            let census = singularity_census(&d, &c, input.seed)?;
            log(v, start, "census done");
            let (w, _) = work_field(c.field())?;
            let nodes = count_where(&census, |r| r.class == SingClass::Node);
            let genus_dual = genus_from_census(d.degree as u64, &census).ok();
            let genus_source = genus_smooth(c.degree());
            let out = json!({
                "dual_degree": d.degree,
                "nodes": nodes,
                "other_singular_points": count_where(&census, |r| r.class != SingClass::Node),
                "genus_source": genus_source,
                "genus_dual": genus_dual,
                "points": io::sing_reports_json(&w, &census),
            });
            Ok((out, genus_dual == Some(genus_source as i64)))
        }
        Command::Flexes(input) => {
            let c = read_curve(&input.input)?;
            let fc = flex_census(&c, input.seed)?;
            let (w, _) = work_field(c.field())?;
            Ok((io::flex_census_json(&w, &fc), fc.certified))
        }
        Command::Verify {
            which:
                Theorem::Theorem1 {
                    field,
                    trials,
                    seed,
                },
        } => {
            let f = base_field(field)?;
            let outcomes = verify_theorem1(&f, field.q, *seed, *trials);
            for o in &outcomes {
                log(v, start, &format!("trial {} pass = {}", o.trial, o.pass()));
            }
            let ok = outcomes.iter().all(|o| o.pass());
            let out = json!({
                "theorem": 1,
                "q": field.q,
                "trials": outcomes.iter().map(io::trial_json).collect::<Vec<_>>(),
                "pass": ok,
            });
            Ok((out, ok))
        }
        Command::Verify {
            which: Theorem::Theorem2 { field },
        } => {
            let f = base_field(field)?;
            let r = verify_theorem2(&f, field.q)?;
            let mut out = io::census_report_json(&r);
            out["theorem"] = json!(2);
            Ok((out, r.pass()))
        }
        Command::Bh(fa) => {
            let f = base_field(fa)?;
            let r = bh_census(fa.q, &f)?;
            Ok((io::bh_report_json(&f, &r), r.pass()))
        }
    }
}

fn emit(cli: &Cli, mut doc: Value, start: Instant) -> Result<(), Failure> {
    doc["schema"] = json!(io::SCHEMA);
    doc["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
    let text = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
    match &cli.out {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        // fails only if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
    let start = Instant::now();
    let (doc, code) = match run(&cli, start) {
        Ok((doc, ok)) => (doc, if ok { 0 } else { 1 }),
        Err(Failure::Compute(msg)) => (json!({ "error": msg, "pass": false }), 1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            (json!({ "error": msg }), 2)
        }
    };
    match emit(&cli, doc, start) {
        Ok(()) => ExitCode::from(code),
        Err(Failure::Input(msg) | Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
