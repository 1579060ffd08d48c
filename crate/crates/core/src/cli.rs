//! Command-line front end. Every JSON document carries `"schema": 1`.
//!
//! Exit codes: 0 success, 1 verification or domain failure, 2 usage or I/O.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::ellfib::{classify_all, degenerate_sample, disc84, resultant_r, FamilyParams, SampleKind};
use crate::error::{Error, Result};
use crate::exactmath::rational::{format_rational, parse_rational};
use crate::exactmath::Rational;
use crate::graded::{canonical_t, canonical_u, hilbert_count, humbert_m, WeightSystem};
use crate::k3cat::{catalog, derive_e8_labeling, embed_m0, CATALOG_NAMES};
use crate::lattice::{
    disc_group, find_isometry, make_named, verify_isometry, IsometryOutcome, Lattice, SpanInAmbient, DEFAULT_BUDGET,
};
use crate::verify::{verify_all, VerifyOptions, SCHEMA};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "k3lat", version, about = "Exact lattice, fibration and graded-ring verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run verification suites.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Lattice queries.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Catalog access.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Singular fibers of the Weierstrass family.
    #[command(subcommand)]
    Fibers(FibersCmd),
    /// Weighted-graded bookkeeping.
    #[command(subcommand)]
    Graded(GradedCmd),
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Run every check in order.
    All(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run a single check by id.
    #[arg(long)]
    pub only: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Perturb one catalog Gram entry before running.
    #[arg(long)]
    pub tamper: Option<String>,
    #[arg(long, default_value_t = crate::verify::DEFAULT_SAMPLES)]
    pub samples: usize,
}

#[derive(Args, Debug, Clone)]
pub struct LatticeSource {
    /// Catalog or root-lattice name, e.g. `A0`, `B1'`, `E8(-1)`, `A2`.
    #[arg(long)]
    pub name: Option<String>,
    /// Inline Gram matrix as JSON.
    #[arg(long)]
    pub gram: Option<String>,
    /// Lattice JSON file `{"label"?, "gram"}`.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Twist the lattice by this factor.
    #[arg(long)]
    pub twist: Option<i64>,
}

#[derive(Subcommand, Debug)]
pub enum LatticeCmd {
    /// Signature, determinant, parity and discriminant group.
    Info(LatticeSource),
    /// Orthogonal complement of a span inside an ambient lattice.
    Complement(ComplementArgs),
    /// Search for an isometry between two lattices.
    Isometry(IsometryArgs),
    /// Emit lattice JSON.
    Dump(LatticeSource),
}

#[derive(Subcommand, Debug)]
pub enum CatalogCmd {
    /// Emit lattice JSON for a catalog entry.
    Dump {
        #[arg(long)]
        name: String,
    },
    /// List catalog names.
    List,
}

#[derive(Args, Debug)]
pub struct ComplementArgs {
    /// Ambient lattice (file, name or inline Gram); the K3 lattice by default.
    #[arg(long)]
    pub ambient: Option<String>,
    /// Span generators as a JSON integer matrix (rows); the M0 embedding by default.
    #[arg(long)]
    pub vectors: Option<String>,
    /// Also search for an isometry between the complement and this lattice.
    #[arg(long)]
    pub compare: Option<String>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Args, Debug)]
pub struct IsometryArgs {
    /// Lattice file, name or inline Gram.
    #[arg(long)]
    pub left: String,
    #[arg(long)]
    pub right: String,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Write `{"P": …}` here when found.
    #[arg(long)]
    pub witness: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct ParamsArg {
    /// `{"a": [...]}` JSON, a file holding it, or seven comma-separated rationals.
    #[arg(long, allow_hyphen_values = true)]
    pub params: String,
}

#[derive(Subcommand, Debug)]
pub enum FibersCmd {
    /// Classify all singular fibers of a parameter point.
    Classify(ParamsArg),
    /// Construct a point on a degeneration locus and classify it.
    Sample {
        #[arg(long, default_value = "generic")]
        kind: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum GradedCmd {
    /// u or t canonical coordinates of a parameter point.
    Canonical(ParamsArg),
    /// The Humbert polynomial at a parameter point.
    Humbert(ParamsArg),
    /// Number of monomials of a given weight.
    Hilbert {
        #[arg(long, default_value = "u")]
        system: String,
        #[arg(long)]
        k: usize,
    },
}

/// Output of a command: a JSON document plus exit code.
pub struct Outcome {
    pub json: Value,
    pub code: i32,
    /// Human-readable text printed instead of JSON when set.
    pub text: Option<String>,
}

impl Outcome {
    fn ok(json: Value) -> Self {
        Outcome { json: with_schema(json), code: EXIT_OK, text: None }
    }
}

fn with_schema(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("schema".into(), json!(SCHEMA));
    }
    v
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NotK3(_) | Error::NonMinimal(_) => "not-k3",
        Error::ZeroParams => "zero-params",
        Error::ResultantLocus => "resultant-locus",
        Error::Parse(_) => "parse",
        Error::Io(_) => "io",
        Error::UnknownName(_) => "unknown-name",
        Error::Precondition(_) => "precondition",
        Error::NotSymmetric | Error::Degenerate | Error::Dimension(_) | Error::ZeroTwist => "invalid-input",
        Error::Dependent => "dependent",
        Error::LabelingFailed => "labeling",
        Error::UndefinedResultant(_) | Error::ConstantDiscriminant => "undefined",
    }
}

/// Malformed input and I/O map to 2, mathematical failures to 1.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::Io(_)
        | Error::UnknownName(_)
        | Error::NotSymmetric
        | Error::Dimension(_)
        | Error::ZeroTwist => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

pub fn error_json(e: &Error) -> Value {
    json!({ "schema": SCHEMA, "error": { "kind": error_kind(e), "message": e.to_string() } })
}

fn int_json(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(i) => json!(i),
        Err(_) => json!(n.to_string()),
    }
}

fn rat_json(r: &Rational) -> Value {
    json!(format_rational(r))
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// `E8(-1)` → (`E8`, -1); plain names have twist 1.
fn split_twist(s: &str) -> Result<(&str, i64)> {
    match s.strip_suffix(')').and_then(|t| t.split_once('(')) {
        Some((base, k)) => {
            let k = k.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad twist in {s:?}")))?;
            Ok((base, k))
        }
        None => Ok((s, 1)),
    }
}

fn lattice_by_name(name: &str) -> Result<Lattice> {
    if let Ok(l) = catalog(name) {
        return Ok(l);
    }
    let (base, k) = split_twist(name)?;
    if let Ok(l) = catalog(base) {
        return l.twist(k).map(|t| t.with_label(name));
    }
    make_named(base, k)
}

fn gram_lattice(text: &str) -> Result<Lattice> {
    let rows: Vec<Vec<Value>> = serde_json::from_str(text)?;
    let v = json!({ "gram": rows });
    Ok(serde_json::from_value::<Lattice>(v)?)
}

/// A file path, an inline Gram matrix, or a name.
pub fn resolve_lattice(source: &str) -> Result<Lattice> {
    let t = source.trim();
    if t.starts_with('[') {
        return gram_lattice(t);
    }
    if t.starts_with('{') {
        return Ok(serde_json::from_str(t)?);
    }
    let p = Path::new(t);
    if p.is_file() {
        return Ok(serde_json::from_str(&read_text(p)?)?);
    }
    lattice_by_name(t)
}

fn source_lattice(src: &LatticeSource) -> Result<Lattice> {
    let given = [src.name.is_some(), src.gram.is_some(), src.file.is_some()].iter().filter(|b| **b).count();
    if given != 1 {
        return Err(Error::Parse("give exactly one of --name, --gram, --file".into()));
    }
    let l = if let Some(n) = &src.name {
        lattice_by_name(n)?
    } else if let Some(g) = &src.gram {
        gram_lattice(g)?
    } else {
        let path = src.file.as_ref().expect("checked above");
        serde_json::from_str(&read_text(path)?)?
    };
    match src.twist {
        Some(k) => {
            let label = l.label().map(|s| format!("{s}({k})"));
            let t = l.twist(k)?;
            Ok(match label {
                Some(s) => t.with_label(s),
                None => t,
            })
        }
        None => Ok(l),
    }
}

pub fn lattice_info(l: &Lattice) -> Result<Value> {
    let sig = l.signature();
    let dg = disc_group(l)?;
    let mut v = json!({
        "rank": l.rank(),
        "signature": sig.as_array(),
        "det": int_json(&l.det()),
        "even": l.is_even(),
        "disc": dg.elementary_divisors().iter().map(int_json).collect::<Vec<_>>(),
        "invariant_factors": dg.invariant_factors.iter().map(int_json).collect::<Vec<_>>(),
        "disc_order": int_json(&dg.order()),
    });
    if let Some(s) = l.label() {
        v["label"] = json!(s);
    }
    Ok(v)
}

/// `{"a": [...]}` JSON, a file containing it, or `a0,a2,…,a14`.
pub fn parse_params(s: &str) -> Result<FamilyParams> {
    let t = s.trim();
    if t.starts_with('{') {
        return Ok(serde_json::from_str(t)?);
    }
    if t.starts_with('[') {
        return Ok(serde_json::from_value(json!({ "a": serde_json::from_str::<Value>(t)? }))?);
    }
    let p = Path::new(t);
    if p.is_file() {
        return parse_params(&read_text(p)?);
    }
    let values = t.split(',').map(|x| parse_rational(x.trim())).collect::<Result<Vec<_>>>()?;
    FamilyParams::from_vec(values)
}

fn params_json(a: &FamilyParams) -> Value {
    Value::Array(a.values().iter().map(rat_json).collect())
}

pub fn fiber_json(a: &FamilyParams) -> Result<Value> {
    let conf = classify_all(a)?;
    let r = resultant_r(a)?;
    let d = match disc84(a) {
        Ok(d) => rat_json(&d),
        Err(Error::ResultantLocus) => Value::Null,
        Err(e) => return Err(e),
    };
    let counts: serde_json::Map<String, Value> =
        conf.type_counts().iter().map(|(t, n)| (t.to_string(), json!(n))).collect();
    Ok(json!({
        "a": params_json(a),
        "fibers": conf.fibers,
        "types": counts,
        "configuration": conf.describe(),
        "total_euler": conf.total_euler,
        "r": rat_json(&r),
        "d84": d,
    }))
}

fn run_verify(args: &VerifyArgs) -> Result<Outcome> {
    let opts = VerifyOptions {
        seed: args.seed,
        only: args.only.clone(),
        tamper: args.tamper.clone(),
        samples: args.samples,
    };
    let report = verify_all(&opts)?;
    let mut text = String::new();
    for c in &report.checks {
        let status = serde_json::to_value(c.status)?;
        text.push_str(&format!(
            "{:<5} {:<20} {:>6} ms  {}\n",
            status.as_str().unwrap_or("?").to_uppercase(),
            c.id,
            c.elapsed_ms,
            c.detail
        ));
    }
    text.push_str(&format!(
        "{} passed, {} failed, {} skipped\n",
        report.summary.pass, report.summary.fail, report.summary.skipped
    ));
    let json = serde_json::to_value(&report)?;
    let code = if report.passed() { EXIT_OK } else { EXIT_FAIL };
    match &args.json {
        Some(p) if p.as_os_str() == "-" => Ok(Outcome { json, code, text: None }),
        Some(p) => {
            let body = serde_json::to_string_pretty(&json)? + "\n";
            std::fs::write(p, body).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            Ok(Outcome { json, code, text: Some(text) })
        }
        None => Ok(Outcome { json, code, text: Some(text) }),
    }
}

fn run_complement(args: &ComplementArgs) -> Result<Outcome> {
    let basis = derive_e8_labeling()?.basis();
    let span = match (&args.ambient, &args.vectors) {
        (None, None) => embed_m0(&basis),
        (amb, vecs) => {
            let ambient = match amb {
                Some(s) => resolve_lattice(s)?,
                None => basis.lattice(),
            };
            let text = vecs.as_deref().ok_or_else(|| Error::Parse("--vectors is required with --ambient".into()))?;
            let rows: crate::exactmath::IMat = serde_json::from_str(text)?;
            let vectors = (0..rows.rows()).map(|i| rows.row(i).to_vec()).collect();
            SpanInAmbient::new(ambient, vectors)?
        }
    };
    let comp = span.orth_complement();
    let cl = comp.lattice();
    let mut v = json!({
        "span": { "gram": span.gram(), "det": int_json(&span.gram().det()), "primitive": span.is_primitive() },
        "complement": { "gram": cl.gram(), "basis": comp.basis(), "info": lattice_info(&cl)? },
    });
    let mut code = EXIT_OK;
    if let Some(name) = &args.compare {
        let target = resolve_lattice(name)?;
        let out = find_isometry(cl.gram(), target.gram(), args.budget)?;
        code = if out.witness().is_some() { EXIT_OK } else { EXIT_FAIL };
        v["compare"] = isometry_json(&out);
    }
    Ok(Outcome { json: with_schema(v), code, text: None })
}

fn isometry_json(out: &IsometryOutcome) -> Value {
    match out {
        IsometryOutcome::Found(p) => json!({ "result": "isometric", "P": p }),
        IsometryOutcome::NotIsometric(why) => json!({ "result": "not-isometric", "reason": why }),
        IsometryOutcome::Unknown(why) => json!({ "result": "unknown", "reason": why }),
    }
}

fn run_isometry(args: &IsometryArgs) -> Result<Outcome> {
    let left = resolve_lattice(&args.left)?;
    let right = resolve_lattice(&args.right)?;
    let out = find_isometry(left.gram(), right.gram(), args.budget)?;
    let mut v = isometry_json(&out);
    let code = match out.witness() {
        Some(p) => {
            v["verified"] = json!(verify_isometry(left.gram(), right.gram(), p)?);
            if let Some(path) = &args.witness {
                let body = serde_json::to_string_pretty(&json!({ "P": p }))? + "\n";
                std::fs::write(path, body).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            }
            EXIT_OK
        }
        None => EXIT_FAIL,
    };
    Ok(Outcome { json: with_schema(v), code, text: None })
}

fn run_graded(cmd: &GradedCmd) -> Result<Outcome> {
    match cmd {
        GradedCmd::Canonical(p) => {
            let a = parse_params(&p.params)?;
            if a.a0() != &Rational::from_integer(0.into()) {
                let u = canonical_u(&a)?;
                Ok(Outcome::ok(json!({
                    "chart": "u",
                    "weights": WeightSystem::u_system().weights,
                    "values": u.iter().map(rat_json).collect::<Vec<_>>(),
                })))
            } else {
                let t = canonical_t(&a)?;
                Ok(Outcome::ok(json!({
                    "chart": "t",
                    "weights": WeightSystem::t_system().weights,
                    "values": t.iter().map(rat_json).collect::<Vec<_>>(),
                })))
            }
        }
        GradedCmd::Humbert(p) => {
            let a = parse_params(&p.params)?;
            Ok(Outcome::ok(json!({ "a": params_json(&a), "M": rat_json(&humbert_m(&a)), "weight": 24 })))
        }
        GradedCmd::Hilbert { system, k } => {
            let ws = WeightSystem::by_name(system)?;
            if ws.weights.iter().any(|w| *w <= 0) {
                return Err(Error::Precondition(format!("system {system:?} has a non-positive weight")));
            }
            Ok(Outcome::ok(json!({ "system": system, "weights": ws.weights, "k": k, "count": hilbert_count(&ws, *k) })))
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Verify(VerifyCmd::All(args)) => run_verify(args),
        Command::Lattice(LatticeCmd::Info(src)) => Ok(Outcome::ok(lattice_info(&source_lattice(src)?)?)),
        Command::Lattice(LatticeCmd::Dump(src)) => Ok(Outcome::ok(serde_json::to_value(source_lattice(src)?)?)),
        Command::Lattice(LatticeCmd::Complement(args)) => run_complement(args),
        Command::Lattice(LatticeCmd::Isometry(args)) => run_isometry(args),
        Command::Catalog(CatalogCmd::Dump { name }) => Ok(Outcome::ok(serde_json::to_value(catalog(name)?)?)),
        Command::Catalog(CatalogCmd::List) => Ok(Outcome::ok(json!({ "names": CATALOG_NAMES }))),
        Command::Fibers(FibersCmd::Classify(p)) => Ok(Outcome::ok(fiber_json(&parse_params(&p.params)?)?)),
        Command::Fibers(FibersCmd::Sample { kind, seed }) => {
            let kind: SampleKind = kind.parse()?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let a = degenerate_sample(kind, &mut rng);
            let mut v = fiber_json(&a)?;
            v["kind"] = json!(kind.name());
            Ok(Outcome::ok(v))
        }
        Command::Graded(cmd) => run_graded(cmd),
    }
}

/// Parses `args`, runs, prints, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            match out.text {
                Some(t) => print!("{t}"),
                None => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
            }
            out.code
        }
        Err(e) => {
            println!("{}", serde_json::to_string_pretty(&error_json(&e)).expect("serializable"));
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
