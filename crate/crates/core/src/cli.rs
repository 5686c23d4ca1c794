//! The `ginv` command-line tool.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::chain::StochasticChain;
use crate::error::{Error, Result};
use crate::ginverse::{
    build_parametric, classify, fundamental_matrix, group_inverse, moore_penrose, GInverse,
    GInverseParams,
};
use crate::matrix::{Matrix, Tolerance, Vector};
use crate::moments::{
    kemeny_constant, kemeny_row_values, second_moment_diag_from_ginverse,
    second_moment_diag_routes, second_moment_matrix, tau_from_ginverse, KemenyRoute,
    MOMENT_ROUTE_TOL,
};
use crate::passage::{
    mfpt_direct, mfpt_from_deflated, mfpt_from_ginverse, mfpt_simplified_15a, reconstruct_ginverse,
    PASSAGE_RESIDUAL_TOL,
};
use crate::perturbation::{delta_routes, identity_residual, Perturbation, PERTURBATION_TOL};
use crate::routes::max_pairwise;

/// Environment variable overriding the default tolerance.
pub const TOL_ENV: &str = "GINV_DEFAULT_TOL";
const DEFAULT_DIGITS: usize = 12;
const FULL_DIGITS: usize = 17;

#[derive(Debug, Parser)]
#[command(
    name = "ginv",
    version,
    about = "Generalized inverses of I - P for finite Markov chains"
)]
pub struct Cli {
    /// Print a JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Print 17 significant digits instead of 12.
    #[arg(long, global = true)]
    full_precision: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Stationary distribution.
    Stationary { chain: PathBuf },
    /// Mean first passage times.
    Mfpt {
        chain: PathBuf,
        /// Repeatable.
        #[arg(long, value_enum, default_value = "direct")]
        route: Vec<MfptRoute>,
        /// z, group, mp, or param:<alpha-file>,<beta-file>,<gamma>
        #[arg(long, default_value = "z")]
        ginv: String,
    },
    /// Build, characterize and classify a g-inverse.
    Ginv {
        chain: PathBuf,
        #[arg(long, default_value = "z")]
        build: String,
        #[arg(long)]
        classify: bool,
        /// Rebuild G element-wise from pi and M and report the error.
        #[arg(long)]
        reconstruct: bool,
    },
    /// Kemeny's constant.
    Kemeny {
        chain: PathBuf,
        /// Repeatable; defaults to every route that applies.
        #[arg(long, value_enum)]
        route: Vec<KemenyArg>,
        #[arg(long, default_value = "z")]
        ginv: String,
    },
    /// Second moments of recurrence and first passage times.
    Moments {
        chain: PathBuf,
        #[arg(long, default_value = "z")]
        ginv: String,
    },
    /// Stationary distribution of P + E.
    Perturb {
        chain: PathBuf,
        #[arg(long)]
        delta: PathBuf,
        #[arg(long, default_value = "z")]
        ginv: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MfptRoute {
    Direct,
    Ginv,
    Deflated,
    Simplified,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KemenyArg {
    Definition,
    General,
    Trace,
    Delta,
    All,
}

impl KemenyArg {
    fn route(self) -> Option<KemenyRoute> {
        match self {
            KemenyArg::Definition => Some(KemenyRoute::Definition),
            KemenyArg::General => Some(KemenyRoute::GeneralG),
            KemenyArg::Trace => Some(KemenyRoute::Trace15a),
            KemenyArg::Delta => Some(KemenyRoute::DeltaSum),
            KemenyArg::All => None,
        }
    }
}

/// A parsed chain file.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainFile {
    pub path: PathBuf,
    pub format: FileFormat,
    pub matrix: Matrix,
    pub labels: Option<Vec<String>>,
    bytes: Vec<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileFormat {
    Plain,
    Csv,
    Json,
}

impl ChainFile {
    pub fn read(path: &Path) -> Result<Self> {
        let bytes = fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let text = String::from_utf8_lossy(&bytes);
        let format = match path.extension().and_then(|e| e.to_str()) {
            Some("json") => FileFormat::Json,
            Some("csv") => FileFormat::Csv,
            _ if text.trim_start().starts_with('{') => FileFormat::Json,
            _ => FileFormat::Plain,
        };
        let (matrix, labels) = match format {
            FileFormat::Json => parse_json_matrix(&text)?,
            _ => (parse_plain_matrix(&text)?, None),
        };
        if let Some(l) = &labels {
            if l.len() != matrix.rows() {
                return Err(Error::ShapeMismatch {
                    expected: format!("{} labels", matrix.rows()),
                    found: format!("{} labels", l.len()),
                });
            }
        }
        Ok(ChainFile {
            path: path.to_path_buf(),
            format,
            matrix,
            labels,
            bytes,
        })
    }
}

/// Rows of decimal numbers separated by whitespace and/or commas. Blank lines
/// and lines starting with `#` are skipped.
pub fn parse_plain_matrix(text: &str) -> Result<Matrix> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut first_line = 0;
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<f64>().map_err(|_| Error::Parse {
                    line: k + 1,
                    msg: format!("not a number: {t:?}"),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::Parse {
                    line: k + 1,
                    msg: format!(
                        "{} entries, but line {} has {}",
                        row.len(),
                        first_line,
                        first.len()
                    ),
                });
            }
        } else {
            first_line = k + 1;
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 0,
            msg: "no matrix rows".into(),
        });
    }
    Matrix::from_rows(&rows)
}

/// An object with `"P"` (array of rows) and optional `"labels"`.
pub fn parse_json_matrix(text: &str) -> Result<(Matrix, Option<Vec<String>>)> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    let p = v.get("P").ok_or_else(|| Error::Parse {
        line: 1,
        msg: "missing \"P\"".into(),
    })?;
    let m: Matrix = serde_json::from_value(p.clone()).map_err(|e| Error::Parse {
        line: 1,
        msg: format!("\"P\": {e}"),
    })?;
    let labels = match v.get("labels") {
        None | Some(Value::Null) => None,
        Some(l) => Some(serde_json::from_value(l.clone()).map_err(|e| Error::Parse {
            line: 1,
            msg: format!("\"labels\": {e}"),
        })?),
    };
    Ok((m, labels))
}

/// A vector file: numbers separated by whitespace, commas or newlines, or a JSON array.
pub fn parse_vector(text: &str) -> Result<Vector> {
    if text.trim_start().starts_with('[') {
        return serde_json::from_str::<Vec<f64>>(text)
            .map(Vector::new)
            .map_err(|e| Error::Parse {
                line: e.line(),
                msg: e.to_string(),
            });
    }
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        for t in line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            out.push(t.parse::<f64>().map_err(|_| Error::Parse {
                line: k + 1,
                msg: format!("not a number: {t:?}"),
            })?);
        }
    }
    Ok(Vector::new(out))
}

/// Default tolerance, overridden by `GINV_DEFAULT_TOL`.
pub fn default_tolerance() -> Result<Tolerance> {
    match std::env::var(TOL_ENV) {
        Ok(s) => {
            let t: f64 = s
                .trim()
                .parse()
                .map_err(|_| Error::OutOfRange(format!("{TOL_ENV}={s:?} is not a number")))?;
            Tolerance::new(t, t)
        }
        Err(_) => Ok(Tolerance::DEFAULT),
    }
}

struct Ctx {
    tol: Tolerance,
    digests: Sha256,
}

impl Ctx {
    fn chain(&mut self, path: &Path) -> Result<(ChainFile, StochasticChain)> {
        let file = ChainFile::read(path)?;
        self.digests.update(&file.bytes);
        let chain = StochasticChain::validate(&file.matrix, self.tol)?;
        Ok((file, chain))
    }

    fn vector(&mut self, path: &str) -> Result<Vector> {
        let bytes = fs::read(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
        self.digests.update(&bytes);
        parse_vector(&String::from_utf8_lossy(&bytes))
    }

    fn ginv(&mut self, chain: &StochasticChain, spec: &str) -> Result<GInverse> {
        match spec.to_ascii_lowercase().as_str() {
            "z" => fundamental_matrix(chain),
            "group" | "a#" => group_inverse(chain),
            "mp" => moore_penrose(chain),
            _ => {
                let rest = spec.strip_prefix("param:").ok_or_else(|| {
                    Error::UnknownCase(format!("--ginv {spec}: expected z, group, mp or param:..."))
                })?;
                let parts: Vec<&str> = rest.split(',').collect();
                if parts.len() != 3 {
                    return Err(Error::UnknownCase(format!(
                        "--ginv {spec}: expected param:<alpha-file>,<beta-file>,<gamma>"
                    )));
                }
                let gamma: f64 = parts[2].trim().parse().map_err(|_| {
                    Error::OutOfRange(format!("gamma {:?} is not a number", parts[2]))
                })?;
                let params = GInverseParams {
                    alpha: self.vector(parts[0])?,
                    beta: self.vector(parts[1])?,
                    gamma,
                };
                build_parametric(chain, &params)
            }
        }
    }
}

struct Output {
    command: &'static str,
    file: ChainFile,
    results: Map<String, Value>,
    tolerances: Map<String, Value>,
    agreement: Option<Value>,
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let obj = json!({"error": "Usage", "message": e.to_string().trim_end()});
            let _ = writeln!(err, "{obj}");
            return 2;
        }
    };
    let argv: Vec<String> = args
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match execute(&cli) {
        Ok(o) => {
            let digits = if cli.full_precision {
                FULL_DIGITS
            } else {
                DEFAULT_DIGITS
            };
            let text = if cli.json {
                render_json(&o, &argv, digits)
            } else {
                render_text(&o, digits)
            };
            let _ = writeln!(out, "{text}");
            0
        }
        Err(e) => {
            let obj = json!({"error": e.kind(), "message": e.to_string()});
            let _ = writeln!(err, "{obj}");
            1
        }
    }
}

fn execute(cli: &Cli) -> Result<Output> {
    let mut ctx = Ctx {
        tol: default_tolerance()?,
        digests: Sha256::new(),
    };
    let mut tolerances = Map::new();
    tolerances.insert("validation_abs".into(), json!(ctx.tol.abs));
    tolerances.insert("validation_rel".into(), json!(ctx.tol.rel));
    let mut results = Map::new();
    let mut agreement = None;

    let (command, file) = match &cli.command {
        Command::Stationary { chain } => {
            let (file, c) = ctx.chain(chain)?;
            let pi = c.pi();
            results.insert("pi".into(), json!(pi));
            results.insert(
                "residual_inf".into(),
                json!((&c.p().vec_mul(pi) - pi).norm_inf()),
            );
            ("stationary", file)
        }
        Command::Mfpt { chain, route, ginv } => {
            let (file, c) = ctx.chain(chain)?;
            let mut routes: Vec<MfptRoute> = if route.contains(&MfptRoute::All) {
                vec![
                    MfptRoute::Direct,
                    MfptRoute::Ginv,
                    MfptRoute::Deflated,
                    MfptRoute::Simplified,
                ]
            } else {
                route.clone()
            };
            routes.dedup();
            let needs_g = routes.iter().any(|r| *r != MfptRoute::Direct);
            let g = if needs_g {
                Some(ctx.ginv(&c, ginv)?)
            } else {
                None
            };
            let mut ms: Vec<(&'static str, Matrix)> = Vec::new();
            for r in &routes {
                let g = g.as_ref();
                let (name, m) = match r {
                    MfptRoute::Direct => ("direct", mfpt_direct(&c)?),
                    MfptRoute::Ginv => ("ginv", mfpt_from_ginverse(&c, g.unwrap().g())?),
                    MfptRoute::Deflated => ("deflated", mfpt_from_deflated(&c, g.unwrap().g())?),
                    MfptRoute::Simplified => ("simplified", mfpt_simplified_15a(&c, g.unwrap())?),
                    MfptRoute::All => unreachable!(),
                };
                ms.push((name, m.into_matrix()));
            }
            results.insert("M".into(), json!(ms[0].1));
            if ms.len() > 1 {
                let mut per = Map::new();
                for (name, m) in &ms {
                    per.insert((*name).into(), json!(m));
                }
                results.insert("routes".into(), Value::Object(per));
                let mut worst = 0.0f64;
                for (k, (_, a)) in ms.iter().enumerate() {
                    for (_, b) in &ms[k + 1..] {
                        worst = worst.max(a.max_abs_diff(b)?);
                    }
                }
                agreement = Some(json!({
                    "routes": ms.iter().map(|(n, _)| *n).collect::<Vec<_>>(),
                    "max_discrepancy": worst,
                }));
            }
            if needs_g {
                results.insert("ginv".into(), json!(ginv));
            }
            tolerances.insert("passage_residual".into(), json!(PASSAGE_RESIDUAL_TOL));
            ("mfpt", file)
        }
        Command::Ginv {
            chain,
            build,
            classify: want_classes,
            reconstruct,
        } => {
            let (file, c) = ctx.chain(chain)?;
            let g = ctx.ginv(&c, build)?;
            results.insert("build".into(), json!(build));
            results.insert("G".into(), json!(g.g()));
            results.insert("alpha".into(), json!(g.params().alpha));
            results.insert("beta".into(), json!(g.params().beta));
            results.insert("gamma".into(), json!(g.params().gamma));
            if *want_classes {
                let set = classify(&c, &g)?;
                results.insert("classes".into(), json!(set.labels()));
                results.insert("class".into(), json!(set.to_string()));
            }
            if *reconstruct {
                let m = mfpt_direct(&c)?;
                let r = reconstruct_ginverse(g.params(), c.pi(), m.m())?;
                results.insert(
                    "reconstruction_max_error".into(),
                    json!(r.max_abs_diff(g.g())?),
                );
            }
            ("ginv", file)
        }
        Command::Kemeny { chain, route, ginv } => {
            let (file, c) = ctx.chain(chain)?;
            let g = ctx.ginv(&c, ginv)?;
            let explicit: Vec<KemenyRoute> = route.iter().filter_map(|r| r.route()).collect();
            let all = explicit.is_empty() || route.contains(&KemenyArg::All);
            let wanted: Vec<KemenyRoute> = if all {
                KemenyRoute::ALL.to_vec()
            } else {
                explicit
            };
            let mut values = Map::new();
            let mut skipped = Vec::new();
            for r in wanted {
                match kemeny_constant(&c, r, Some(&g)) {
                    Ok(k) => {
                        values.insert(r.name().into(), json!(k.value));
                    }
                    Err(Error::NotIn15a) if all => skipped.push(r.name()),
                    Err(e) => return Err(e),
                }
            }
            let first = values
                .values()
                .next()
                .and_then(Value::as_f64)
                .unwrap_or(f64::NAN);
            let worst = values
                .values()
                .filter_map(Value::as_f64)
                .fold(0.0f64, |w, v| w.max((v - first).abs()));
            let rows = kemeny_row_values(c.pi(), mfpt_direct(&c)?.m());
            let spread = rows.iter().fold(0.0f64, |w, r| w.max((r - rows[0]).abs()));
            results.insert("K".into(), json!(first));
            results.insert("routes".into(), Value::Object(values.clone()));
            if !skipped.is_empty() {
                results.insert("skipped".into(), json!(skipped));
            }
            results.insert("row_constancy_residual".into(), json!(spread));
            results.insert("ginv".into(), json!(ginv));
            agreement = Some(json!({
                "routes": values.keys().collect::<Vec<_>>(),
                "max_discrepancy": worst,
            }));
            ("kemeny", file)
        }
        Command::Moments { chain, ginv } => {
            let (file, c) = ctx.chain(chain)?;
            let g = ctx.ginv(&c, ginv)?;
            let md2 = second_moment_diag_from_ginverse(&c, &g)?;
            let routes = second_moment_diag_routes(&c, &g)?;
            let m = mfpt_direct(&c)?;
            let m2 = second_moment_matrix(&c, m.m(), &md2)?;
            let tau = tau_from_ginverse(&c, &g)?;
            results.insert("Md2".into(), json!(md2));
            results.insert("M2".into(), json!(m2));
            results.insert("tau".into(), json!(tau));
            results.insert("ginv".into(), json!(ginv));
            agreement = Some(json!({
                "routes": routes.iter().map(|r| r.route).collect::<Vec<_>>(),
                "max_discrepancy": max_pairwise(&routes),
            }));
            tolerances.insert("route".into(), json!(MOMENT_ROUTE_TOL));
            ("moments", file)
        }
        Command::Perturb { chain, delta, ginv } => {
            let (file, c) = ctx.chain(chain)?;
            let efile = ChainFile::read(delta)?;
            ctx.digests.update(&efile.bytes);
            let g = ctx.ginv(&c, ginv)?;
            let pert = Perturbation::new(&c, &efile.matrix, ctx.tol)?;
            let report = delta_routes(&pert, &g)?;
            let b = report.bound;
            results.insert("pi_bar".into(), json!(report.pi_bar));
            results.insert("delta".into(), json!(report.delta));
            let mut per = Map::new();
            for r in &report.routes {
                per.insert(r.route.into(), json!(r.value));
            }
            results.insert("routes".into(), Value::Object(per));
            results.insert(
                "identity_residual".into(),
                json!(identity_residual(&pert, &report.pi_bar)),
            );
            results.insert("K".into(), json!(b.kemeny));
            results.insert("E_inf_norm".into(), json!(pert.e().inf_norm()));
            results.insert("lhs".into(), json!(b.lhs));
            results.insert("bound".into(), json!(b.bound));
            results.insert("bound_satisfied".into(), json!(b.satisfied));
            results.insert("ginv".into(), json!(ginv));
            agreement = Some(json!({
                "routes": report.routes.iter().map(|r| r.route).collect::<Vec<_>>(),
                "max_discrepancy": report.max_route_diff,
            }));
            tolerances.insert("route".into(), json!(PERTURBATION_TOL));
            ("perturb", file)
        }
    };
    let mut o = Output {
        command,
        file,
        results,
        tolerances,
        agreement,
    };
    o.results
        .insert("inputs_sha256".into(), json!(hex(&ctx.digests.finalize())));
    Ok(o)
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Rounds to `digits` significant digits; 17 is a no-op for f64.
fn round_sig(x: f64, digits: usize) -> f64 {
    if digits >= FULL_DIGITS || x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

fn round_value(v: &mut Value, digits: usize) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n
                .as_f64()
                .and_then(|x| serde_json::Number::from_f64(round_sig(x, digits)))
            {
                *n = r;
            }
        }
        Value::Array(a) => a.iter_mut().for_each(|x| round_value(x, digits)),
        Value::Object(o) => o.values_mut().for_each(|x| round_value(x, digits)),
        _ => {}
    }
}

fn render_json(o: &Output, argv: &[String], digits: usize) -> String {
    let mut results = Value::Object(o.results.clone());
    round_value(&mut results, digits);
    let digest = results
        .as_object_mut()
        .and_then(|r| r.remove("inputs_sha256"))
        .unwrap_or(Value::Null);
    let mut agreement = o.agreement.clone().unwrap_or(Value::Null);
    round_value(&mut agreement, digits);
    let mut env = Map::new();
    env.insert("command".into(), json!(o.command));
    env.insert("argv".into(), json!(argv));
    env.insert("inputs_sha256".into(), digest);
    env.insert(
        "chain_file".into(),
        json!(o.file.path.display().to_string()),
    );
    // unrounded, so the envelope can be read back as a chain file
    env.insert("P".into(), json!(o.file.matrix));
    if let Some(l) = &o.file.labels {
        env.insert("labels".into(), json!(l));
    }
    env.insert("significant_digits".into(), json!(digits));
    env.insert("results".into(), results);
    env.insert("tolerances".into(), Value::Object(o.tolerances.clone()));
    env.insert("route_agreement".into(), agreement);
    serde_json::to_string_pretty(&Value::Object(env)).expect("json")
}

fn render_text(o: &Output, digits: usize) -> String {
    let mut lines = Vec::new();
    for (k, v) in &o.results {
        if k == "inputs_sha256" {
            continue;
        }
        render_entry(&mut lines, k, v, digits, "");
    }
    if let Some(a) = &o.agreement {
        if let Some(d) = a.get("max_discrepancy").and_then(Value::as_f64) {
            lines.push(format!("max route discrepancy = {}", fmt_num(d, digits)));
        }
    }
    if o.command == "perturb" {
        let get = |k: &str| o.results.get(k).and_then(Value::as_f64).unwrap_or(f64::NAN);
        lines.push(format!(
            "{} <= ({} - 1) * {} = {}",
            fmt_num(get("lhs"), digits),
            fmt_num(get("K"), digits),
            fmt_num(get("E_inf_norm"), digits),
            fmt_num(get("bound"), digits),
        ));
    }
    lines.join("\n")
}

fn render_entry(lines: &mut Vec<String>, key: &str, v: &Value, digits: usize, indent: &str) {
    match v {
        Value::Array(rows) if rows.first().is_some_and(Value::is_array) => {
            lines.push(format!("{indent}{key} ="));
            for r in rows {
                lines.push(format!("{indent}  {}", fmt_flat(r, digits)));
            }
        }
        Value::Object(o) => {
            lines.push(format!("{indent}{key}:"));
            let inner = format!("{indent}  ");
            for (k, x) in o {
                render_entry(lines, k, x, digits, &inner);
            }
        }
        _ => lines.push(format!("{indent}{key} = {}", fmt_flat(v, digits))),
    }
}

fn fmt_flat(v: &Value, digits: usize) -> String {
    match v {
        Value::Number(n) => n
            .as_f64()
            .map_or_else(|| n.to_string(), |x| fmt_num(x, digits)),
        Value::Array(a) => {
            let parts: Vec<String> = a.iter().map(|x| fmt_flat(x, digits)).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn fmt_num(x: f64, digits: usize) -> String {
    let r = round_sig(x, digits);
    if r != 0.0 && (r.abs() < 1e-4 || r.abs() >= 1e15) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}
