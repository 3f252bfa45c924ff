//! Command-line front end: argument parsing, run records and artifacts.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::Complex;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::evaluator::{samples_csv, symbolic_value, EvalConfig, Evaluator};
use crate::forms::{FormCache, GeneratorId};
use crate::poly::Poly;
use crate::psi::{build, PsiExpansion, Sign, Variant};
use crate::recurrence::{cross_validate, family_weight, member, ode_for, ode_residual, Kind};
use crate::{minus, plus, positivity, Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Bumped whenever the layout of cached solutions changes.
pub const SOLUTION_CACHE_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "fourier-eigen", version, about = "Radial Fourier eigenfunctions with prescribed sign changes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the artifact here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Cache directory; overrides the environment variable.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve for the polynomials of one dimension.
    Solve(Target),
    /// Sample the radial profile F(r).
    Eval(EvalArgs),
    /// Run one verification check.
    Verify(VerifyArgs),
    /// Parameters and polynomials for a range of dimensions.
    Table(TableArgs),
    /// Certified positivity of the f family coefficients.
    Positivity(PositivityArgs),
    /// Exact q-expansion of a generator.
    DumpForms(DumpArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Target {
    #[arg(long)]
    pub dim: i64,
    #[arg(long, value_enum, default_value = "plus")]
    pub sign: SignArg,
    #[arg(long, default_value_t = 64)]
    pub trunc: i64,
    #[arg(long, default_value_t = 256)]
    pub precision: u32,
    /// Use the extra degree of freedom to vanish at the origin (plus sign).
    #[arg(long, conflicts_with = "lower_depth")]
    pub origin_zero: bool,
    /// Use the extra degree of freedom to remove the deepest pole (minus sign).
    #[arg(long)]
    pub lower_depth: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Sign {
        match s {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        }
    }
}

impl Target {
    fn variant(&self) -> Variant {
        if self.origin_zero {
            Variant::OriginZero
        } else if self.lower_depth {
            Variant::LowerDepth
        } else {
            Variant::Optimal
        }
    }

    fn eval_config(&self) -> EvalConfig {
        EvalConfig { precision: self.precision, trunc: self.trunc, ..EvalConfig::default() }
    }
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct EvalArgs {
    #[command(flatten)]
    pub target: Target,
    /// Comma-separated radii.
    #[arg(long, value_delimiter = ',', conflicts_with = "grid")]
    pub r: Vec<f64>,
    /// `start:end:step` grid of radii.
    #[arg(long)]
    pub grid: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Functional,
    Orders,
    Ode,
    Cross,
    Positivity,
    Signs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub target: Target,
    #[arg(long, value_enum)]
    pub check: Check,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct TableArgs {
    #[arg(long, value_enum, default_value = "plus")]
    pub sign: SignArg,
    #[arg(long, default_value_t = 4)]
    pub from: i64,
    #[arg(long, default_value_t = 88)]
    pub to: i64,
    #[arg(long, default_value_t = 16)]
    pub trunc: i64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct PositivityArgs {
    #[arg(long, default_value_t = 8)]
    pub from: i64,
    #[arg(long, default_value_t = 40)]
    pub to: i64,
    /// Scan at least this far, even beyond the certified threshold.
    #[arg(long)]
    pub up_to: Option<i64>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct DumpArgs {
    /// Generator names such as E4, Delta, Theta10, Chi1_3; all generators if omitted.
    #[arg(long, value_delimiter = ',')]
    pub generator: Vec<String>,
    #[arg(long, default_value_t = 64)]
    pub trunc: i64,
}

/// Outcome of one command: the artifact and whether its checks passed.
pub struct Outcome {
    pub artifact: String,
    pub passed: bool,
}

fn record(command: &str, config: &impl Serialize, result: Value) -> Result<String> {
    let config = serde_json::to_value(config)?;
    let mut h = Sha256::new();
    h.update(format!("{}|{command}|{config}", env!("CARGO_PKG_VERSION")));
    let hash: String = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
    let rec = json!({
        "tool": "fourier-eigen",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config": config,
        "input_hash": hash,
        "result": result,
    });
    Ok(serde_json::to_string_pretty(&rec)? + "\n")
}

fn poly_json(p: &Poly) -> Value {
    json!({
        "display": p.display("j"),
        "coefficients": (0..=p.degree().unwrap_or(0)).map(|i| p.coeff(i).to_string()).collect::<Vec<_>>(),
    })
}

fn principal_json(psi: &PsiExpansion, p: u32) -> Value {
    let show = |v: &[crate::psi::Symbolic]| -> Vec<Value> {
        v.iter()
            .map(|s| json!({ "exact": s.to_string(), "value": format!("{:.30e}", symbolic_value(s, p).real()) }))
            .collect()
    };
    json!({ "a": show(&psi.a), "b": show(&psi.b), "depth": psi.depth() })
}

/// Parameters, polynomials and principal data for one dimension.
pub fn solve_json(t: &Target) -> Result<Value> {
    let sign: Sign = t.sign.into();
    let variant = t.variant();
    let (params, polys) = match sign {
        Sign::Plus => {
            let s = match variant {
                Variant::OriginZero => plus::apply_origin_constraint(t.dim, t.trunc)?,
                Variant::Optimal => plus::solve_plus(t.dim, t.trunc)?,
                Variant::LowerDepth => return Err(Error::Config("--lower-depth needs --sign minus".into())),
            };
            (serde_json::to_value(s.params)?, json!({ "P": poly_json(&s.p), "Q": poly_json(&s.q), "R": poly_json(&s.r) }))
        }
        Sign::Minus => {
            let s = match variant {
                Variant::LowerDepth => minus::lower_depth(t.dim, t.trunc)?,
                Variant::Optimal => minus::solve_minus(t.dim, t.trunc)?,
                Variant::OriginZero => return Err(Error::Config("--origin-zero needs --sign plus".into())),
            };
            (serde_json::to_value(s.params)?, json!({ "X": poly_json(&s.x), "Y": poly_json(&s.y), "Z": poly_json(&s.z) }))
        }
    };
    let psi = build(t.dim, sign, t.trunc, variant)?;
    Ok(json!({
        "d": t.dim,
        "sign": sign,
        "variant": variant,
        "params": params,
        "polynomials": polys,
        "principal": principal_json(&psi, t.precision),
        "last_sign_change": format!("sqrt({})", 2 * psi.depth()),
    }))
}

#[derive(Serialize, Deserialize)]
struct CachedSolution {
    version: u32,
    key: String,
    result: Value,
}

fn cached_solve(t: &Target, cache: &Path) -> Result<Value> {
    let key = format!("{}-{:?}-{}-{}-{}", t.sign.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default(), t.variant(), t.dim, t.trunc, t.precision);
    let path = cache.join("solutions").join(format!("{key}.json"));
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(c) = serde_json::from_str::<CachedSolution>(&text) {
            if c.version == SOLUTION_CACHE_VERSION && c.key == key {
                return Ok(c.result);
            }
        }
    }
    let result = solve_json(t)?;
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let c = CachedSolution { version: SOLUTION_CACHE_VERSION, key, result };
    fs::write(&path, serde_json::to_string(&c)?)?;
    Ok(c.result)
}

fn radii(a: &EvalArgs) -> Result<Vec<f64>> {
    if let Some(g) = &a.grid {
        let parts: Vec<f64> = g
            .split(':')
            .map(|x| x.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad grid {g:?}"))))
            .collect::<Result<_>>()?;
        let [lo, hi, step] = parts[..] else {
            return Err(Error::Parse(format!("grid {g:?} is not start:end:step")));
        };
        if step <= 0.0 || hi < lo {
            return Err(Error::Parse(format!("grid {g:?} is empty or decreasing")));
        }
        let n = ((hi - lo) / step + 1e-9).floor() as usize;
        return Ok((0..=n).map(|i| lo + step * i as f64).collect());
    }
    if a.r.is_empty() {
        return Err(Error::Config("give --r or --grid".into()));
    }
    Ok(a.r.clone())
}

/// Standard sample points for the functional equations; all images stay above height 0.8.
pub fn sample_points(p: u32) -> Vec<Complex> {
    [(0.0, 1.0), (0.2, 1.1), (-0.3, 0.9), (0.4, 1.0), (0.1, 1.05)]
        .iter()
        .map(|&(x, y)| Complex::with_val(p, (x, y)))
        .collect()
}

/// Residual bound for the functional equation check.
pub const FUNCTIONAL_TOLERANCE: f64 = 1e-20;

fn verify(a: &VerifyArgs) -> Result<(Value, bool)> {
    let t = &a.target;
    let sign: Sign = t.sign.into();
    Ok(match a.check {
        Check::Functional => {
            let e = Evaluator::new(&build(t.dim, sign, t.trunc, t.variant())?, t.eval_config())?;
            let pts = sample_points(t.precision);
            let res = e.functional_eq_check(&pts, sign.epsilon())?;
            let flipped = e.functional_eq_check(&pts, -sign.epsilon())?;
            let ok = res < FUNCTIONAL_TOLERANCE && flipped > 1e-3;
            (json!({ "max_residual": res, "flipped_residual": flipped, "tolerance": FUNCTIONAL_TOLERANCE, "points": pts.len() }), ok)
        }
        Check::Orders => {
            let psi = build(t.dim, sign, t.trunc, t.variant())?;
            let n_pm = match sign {
                Sign::Plus => plus::plus_params(t.dim)?.n_plus,
                Sign::Minus => minus::minus_params(t.dim)?.n_minus,
            };
            let want = n_pm - i64::from(t.variant() == Variant::LowerDepth);
            let top = psi.depth();
            let ok = top as i64 == want && !psi.a[top].is_zero() && (t.variant() == Variant::LowerDepth || psi.b[top].is_zero());
            let phi_order = psi.phi.valuation().to_string();
            (json!({ "depth": top, "expected_depth": want, "a_top": psi.a[top].to_string(), "b_top": psi.b[top].to_string(), "s_image_order": phi_order }), ok)
        }
        Check::Ode => {
            let kind = match sign {
                Sign::Plus => Kind::F,
                Sign::Minus => Kind::Phi,
            };
            let w = family_weight(t.dim, sign)?;
            let m = member(kind, w, t.trunc)?;
            let (which, param) = ode_for(&m);
            let v = ode_residual(&m, which, param, false);
            let ok = v.order().is_none();
            (json!({ "weight": w, "ode": format!("{which:?}"), "parameter": param, "residual_valuation": v.to_string() }), ok)
        }
        Check::Cross => {
            let r = cross_validate(t.dim, sign, t.trunc.min(40))?;
            let ok = r.proportional;
            (serde_json::to_value(r)?, ok)
        }
        Check::Positivity => {
            let w = family_weight(t.dim, Sign::Plus)?;
            let rep = positivity::positivity(w, None)?;
            let ok = rep.verdict == positivity::Verdict::PositiveBeyondThreshold;
            (serde_json::to_value(rep)?, ok)
        }
        Check::Signs => {
            let e = Evaluator::new(&build(t.dim, sign, t.trunc, t.variant())?, t.eval_config())?;
            match e.sign_change_certificate() {
                Ok(c) => (serde_json::to_value(c)?, true),
                Err(Error::SignAnomaly(m)) => (json!({ "anomaly": m }), false),
                Err(e) => return Err(e),
            }
        }
    })
}

fn table(a: &TableArgs) -> Result<Value> {
    let rows: Vec<Value> = (a.from.max(4)..=a.to)
        .filter(|d| d % 4 == 0)
        .map(|d| {
            let t = Target { dim: d, sign: a.sign, trunc: a.trunc, precision: 64, origin_zero: false, lower_depth: false };
            solve_json(&t).map(|mut v| {
                if let Some(o) = v.as_object_mut() {
                    o.remove("principal");
                }
                v
            })
        })
        .collect::<Result<_>>()?;
    Ok(Value::Array(rows))
}

fn table_csv(rows: &Value) -> String {
    let mut s = String::from("d,sign,n,ell,k,n_pm,poly1,poly2,poly3,last_sign_change\n");
    for r in rows.as_array().into_iter().flatten() {
        let p = &r["params"];
        let n_pm = p.get("n_plus").or_else(|| p.get("n_minus")).cloned().unwrap_or(Value::Null);
        let polys: Vec<String> = r["polynomials"]
            .as_object()
            .map(|o| o.values().map(|v| v["display"].as_str().unwrap_or("").to_string()).collect())
            .unwrap_or_default();
        s.push_str(&format!(
            "{},{},{},{},{},{},\"{}\",\"{}\",\"{}\",{}\n",
            r["d"],
            r["sign"].as_str().unwrap_or(""),
            p["n"],
            p["ell"],
            p["k"],
            n_pm,
            polys.first().cloned().unwrap_or_default(),
            polys.get(1).cloned().unwrap_or_default(),
            polys.get(2).cloned().unwrap_or_default(),
            r["last_sign_change"].as_str().unwrap_or("")
        ));
    }
    s
}

fn dump_forms(a: &DumpArgs, cache: &FormCache) -> Result<Value> {
    let ids: Vec<GeneratorId> = if a.generator.is_empty() {
        GeneratorId::ALL.to_vec()
    } else {
        a.generator
            .iter()
            .map(|g| GeneratorId::parse(g).ok_or_else(|| Error::Parse(format!("unknown generator {g:?}"))))
            .collect::<Result<_>>()?
    };
    let mut out = serde_json::Map::new();
    for id in ids {
        out.insert(id.to_string(), serde_json::to_value(cache.get(id, a.trunc)?)?);
    }
    Ok(Value::Object(out))
}

/// Execute a parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let cache = match &cli.cache_dir {
        Some(d) => FormCache::new(d.clone()),
        None => FormCache::from_env(),
    };
    let csv_out = cli.out.as_ref().is_some_and(|p| p.extension().is_some_and(|e| e == "csv"));
    Ok(match &cli.command {
        Command::Solve(t) => Outcome { artifact: record("solve", t, cached_solve(t, cache.dir())?)?, passed: true },
        Command::Eval(a) => {
            let t = &a.target;
            let rs = radii(a)?;
            let e = Evaluator::new(&build(t.dim, t.sign.into(), t.trunc, t.variant())?, t.eval_config())?;
            let rows = e.samples(&rs)?;
            let artifact = if cli.out.is_none() || csv_out {
                samples_csv(&rows)
            } else {
                record("eval", a, serde_json::to_value(&rows)?)?
            };
            Outcome { artifact, passed: true }
        }
        Command::Verify(a) => {
            let (v, passed) = verify(a)?;
            let v = json!({ "check": a.check, "passed": passed, "details": v });
            Outcome { artifact: record("verify", a, v)?, passed }
        }
        Command::Table(a) => {
            let rows = table(a)?;
            let artifact = if csv_out { table_csv(&rows) } else { record("table", a, rows)? };
            Outcome { artifact, passed: true }
        }
        Command::Positivity(a) => {
            let reps = positivity::conjecture_scan(a.from, a.to, a.up_to)?;
            let passed = reps.iter().all(|r| r.verdict == positivity::Verdict::PositiveBeyondThreshold);
            Outcome { artifact: record("positivity", a, serde_json::to_value(reps)?)?, passed }
        }
        Command::DumpForms(a) => Outcome { artifact: record("dump-forms", a, dump_forms(a, &cache)?)?, passed: true },
    })
}

/// Errors caused by the request itself rather than by a failed computation.
pub fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::BadDimension(_) | Error::BadWeight(_) | Error::Config(_) | Error::Parse(_) | Error::BadSamplePoint(_) | Error::OutsideDomain { .. }
    )
}

/// Parse `args`, run, write the artifact and return the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
    };
    let start = Instant::now();
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return if is_usage_error(&e) { EXIT_USAGE } else { EXIT_FAILED };
        }
    };
    let written = match &cli.out {
        Some(p) => fs::write(p, &outcome.artifact).map_err(Error::from),
        None => stdout.write_all(outcome.artifact.as_bytes()).map_err(Error::from),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_FAILED;
    }
    let _ = writeln!(stderr, "elapsed {:.3} s", start.elapsed().as_secs_f64());
    if outcome.passed {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}
