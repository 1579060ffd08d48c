//! The full verification suite behind `verify all`.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ellfib::{
    build_model, classify_all, degenerate_sample, disc84, disc84_euclid, disc_depressed, random_params,
    random_rational, resultant_r, quotient_sigma, FamilyParams, KodairaType, SampleKind,
};
use crate::error::{Error, Result};
use crate::exactmath::{Rational, UPoly};
use crate::graded::{
    canonical_t, canonical_u, hilbert_count, humbert_m, humbert_poly, is_weighted_homogeneous, numerology_check,
    params_from_u, WeightSystem,
};
use crate::k3cat::{
    catalog_check, complement_check, derive_e8_labeling, disc_generators_check, nikulin_check, surviving_labelings,
    verify_b_vs_a_twists, verify_transcendental_lattice, Catalog,
};
use crate::report::CheckReport;

pub const SCHEMA: u32 = 1;
pub const DEFAULT_SAMPLES: usize = 20;

/// Mathematical items the suite must cover; every entry is claimed by at least one check.
pub const TOPICS: &[&str] = &[
    "lattice catalog A_j",
    "lattice catalog B_j",
    "discriminant-group generators of A0",
    "Weierstrass family and discriminant",
    "generic singular-fiber configuration",
    "resultant r of the depressed coefficients",
    "weight-84 factor d84 of the depressed discriminant",
    "degeneration loci",
    "sublattice M0 and its orthogonal complement",
    "primitivity of embedded spans",
    "u canonical form",
    "quotient-surface coefficients",
    "t canonical form",
    "Humbert polynomial",
    "reflection-group degree table",
    "graded-ring generator weights",
    "weight 98 boundary form",
    "weight split 7 + 42 = 49",
    "order-2 reflection counts",
    "transcendental basis and Gram",
    "transcendental sub-spans",
    "twisted intersection chain",
    "twist identities",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: &'static str,
    pub paper_anchor: String,
    pub status: Status,
    pub detail: String,
    pub elapsed_ms: u64,
    pub assertions: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub total: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn failing_ids(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.id).collect()
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub only: Option<String>,
    /// Catalog entry to perturb before running (negative control).
    pub tamper: Option<String>,
    pub samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 0, only: None, tamper: None, samples: DEFAULT_SAMPLES }
    }
}

struct Ctx {
    catalog: Catalog,
    seed: u64,
    samples: usize,
}

impl Ctx {
    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

type CheckFn = fn(&Ctx) -> Result<CheckReport>;

pub struct CheckSpec {
    pub id: &'static str,
    pub covers: &'static [&'static str],
    run: CheckFn,
}

pub fn checks() -> Vec<CheckSpec> {
    vec![
        CheckSpec {
            id: "catalog",
            covers: &["lattice catalog A_j", "lattice catalog B_j", "sublattice M0 and its orthogonal complement"],
            run: check_catalog,
        },
        CheckSpec { id: "lemma13", covers: &["discriminant-group generators of A0"], run: check_disc_generators },
        CheckSpec {
            id: "complement",
            covers: &["sublattice M0 and its orthogonal complement", "primitivity of embedded spans"],
            run: check_complement,
        },
        CheckSpec {
            id: "thm62",
            covers: &["transcendental basis and Gram", "transcendental sub-spans", "primitivity of embedded spans"],
            run: check_transcendental,
        },
        CheckSpec { id: "nikulin", covers: &["twisted intersection chain"], run: check_nikulin },
        CheckSpec { id: "twists", covers: &["twist identities", "lattice catalog B_j"], run: check_twists },
        CheckSpec {
            id: "fibers-generic",
            covers: &[
                "Weierstrass family and discriminant",
                "generic singular-fiber configuration",
                "u canonical form",
                "quotient-surface coefficients",
            ],
            run: check_fibers_generic,
        },
        CheckSpec { id: "fibers-loci", covers: &["degeneration loci"], run: check_fibers_loci },
        CheckSpec {
            id: "d84",
            covers: &["resultant r of the depressed coefficients", "weight-84 factor d84 of the depressed discriminant"],
            run: check_d84,
        },
        CheckSpec {
            id: "graded-equivariance",
            covers: &["u canonical form", "t canonical form", "Humbert polynomial", "graded-ring generator weights"],
            run: check_equivariance,
        },
        CheckSpec {
            id: "numerology",
            covers: &[
                "reflection-group degree table",
                "graded-ring generator weights",
                "weight 98 boundary form",
                "weight split 7 + 42 = 49",
                "order-2 reflection counts",
            ],
            run: check_numerology,
        },
    ]
}

pub fn check_ids() -> Vec<&'static str> {
    checks().iter().map(|c| c.id).collect()
}

pub fn verify_all(opts: &VerifyOptions) -> Result<Report> {
    let all = checks();
    if let Some(id) = &opts.only {
        if !all.iter().any(|c| c.id == id) {
            return Err(Error::UnknownName(format!("check id {id}; known: {}", check_ids().join(", "))));
        }
    }
    let mut catalog = Catalog::standard();
    if let Some(name) = &opts.tamper {
        catalog.tamper(name)?;
    }
    let ctx = Ctx { catalog, seed: opts.seed, samples: opts.samples };
    let mut results = Vec::new();
    for check in &all {
        if opts.only.as_deref().is_some_and(|id| id != check.id) {
            continue;
        }
        let start = Instant::now();
        let outcome = (check.run)(&ctx);
        let elapsed_ms = start.elapsed().as_millis() as u64;
        let (status, detail, assertions) = match outcome {
            Ok(r) if r.passed() => (Status::Pass, r.summary(), r.assertions.len()),
            Ok(r) => (Status::Fail, r.summary(), r.assertions.len()),
            Err(e) => (Status::Fail, format!("error: {e}"), 0),
        };
        results.push(CheckResult {
            id: check.id,
            paper_anchor: check.covers.join("; "),
            status,
            detail,
            elapsed_ms,
            assertions,
        });
    }
    let mut summary = Summary { total: results.len(), ..Summary::default() };
    for c in &results {
        match c.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Skipped => summary.skipped += 1,
        }
    }
    Ok(Report { schema: SCHEMA, seed: opts.seed, checks: results, summary })
}

fn check_catalog(ctx: &Ctx) -> Result<CheckReport> {
    catalog_check(&ctx.catalog, &derive_e8_labeling()?.basis())
}

fn check_disc_generators(ctx: &Ctx) -> Result<CheckReport> {
    disc_generators_check(&ctx.catalog)
}

fn check_complement(ctx: &Ctx) -> Result<CheckReport> {
    Ok(complement_check(&ctx.catalog, &derive_e8_labeling()?.basis())?.report)
}

fn over_labelings(ctx: &Ctx, f: fn(&Catalog, &crate::k3cat::K3Basis) -> Result<CheckReport>) -> Result<CheckReport> {
    let mut r = CheckReport::new();
    let all = surviving_labelings();
    r.assert("labelings found", !all.is_empty(), format!("{} surviving labelings", all.len()));
    for l in all {
        let tag = l.labels.iter().map(|x| x.to_string()).collect::<String>();
        r.extend(&format!("[{tag}] "), f(&ctx.catalog, &l.basis())?);
    }
    Ok(r)
}

fn check_transcendental(ctx: &Ctx) -> Result<CheckReport> {
    over_labelings(ctx, verify_transcendental_lattice)
}

fn check_nikulin(ctx: &Ctx) -> Result<CheckReport> {
    over_labelings(ctx, nikulin_check)
}

fn check_twists(ctx: &Ctx) -> Result<CheckReport> {
    verify_b_vs_a_twists(&ctx.catalog)
}

fn counts(pairs: &[(KodairaType, u32)]) -> BTreeMap<KodairaType, u32> {
    pairs.iter().copied().collect()
}

fn describe_counts(c: &BTreeMap<KodairaType, u32>) -> String {
    c.iter().map(|(t, n)| format!("{n}x{t}")).collect::<Vec<_>>().join(" ")
}

pub fn expected_generic() -> BTreeMap<KodairaType, u32> {
    counts(&[(KodairaType::IIIStar, 1), (KodairaType::IVStar, 1), (KodairaType::I(1), 7)])
}

/// Expected configuration on each constructed degeneration locus.
pub fn expected_locus(kind: SampleKind) -> BTreeMap<KodairaType, u32> {
    use KodairaType::*;
    match kind {
        SampleKind::Generic => expected_generic(),
        SampleKind::TypeII => counts(&[(IIIStar, 1), (IVStar, 1), (II, 1), (I(1), 5)]),
        SampleKind::TypeI2 => counts(&[(IIIStar, 1), (IVStar, 1), (I(2), 1), (I(1), 5)]),
        SampleKind::A0Zero => counts(&[(IIStar, 1), (IVStar, 1), (I(1), 6)]),
        SampleKind::A14Zero => counts(&[(IIIStar, 2), (I(1), 6)]),
    }
}

fn check_fibers_generic(ctx: &Ctx) -> Result<CheckReport> {
    let mut r = CheckReport::new();
    let mut rng = ctx.rng(7);
    let want = expected_generic();
    let x = UPoly::x();
    for i in 0..ctx.samples {
        let a = random_params(&mut rng);
        let conf = classify_all(&a)?;
        let got = conf.type_counts();
        r.assert(
            format!("sample {i}: III* + IV* + 7 I1"),
            got == want,
            format!("a = {a}: {}", describe_counts(&got)),
        );
        r.assert(format!("sample {i}: Euler sum 24"), conf.total_euler == 24, format!("{}", conf.total_euler));
        let u = canonical_u(&a)?;
        let normalized = classify_all(&params_from_u(&u))?.type_counts();
        r.assert(format!("sample {i}: u canonical form keeps fibers"), normalized == got, describe_counts(&normalized));
        let m = build_model(&a)?;
        let (s2, s3) = quotient_sigma(&a);
        r.assert(
            format!("sample {i}: g2 = x^2 s2, g3 = x^3 s3"),
            m.g2 == &x.pow(2) * &s2 && m.g3 == &x.pow(3) * &s3,
            "quotient-surface coefficients",
        );
    }
    Ok(r)
}

fn check_fibers_loci(ctx: &Ctx) -> Result<CheckReport> {
    let mut r = CheckReport::new();
    let mut rng = ctx.rng(8);
    for kind in [SampleKind::TypeII, SampleKind::TypeI2, SampleKind::A0Zero, SampleKind::A14Zero] {
        let a = degenerate_sample(kind, &mut rng);
        let conf = classify_all(&a)?;
        let got = conf.type_counts();
        let want = expected_locus(kind);
        r.assert(
            format!("{} configuration", kind.name()),
            got == want,
            format!("a = {a}: got {}, want {}", describe_counts(&got), describe_counts(&want)),
        );
        r.assert(format!("{} Euler sum 24", kind.name()), conf.total_euler == 24, conf.total_euler.to_string());
        match kind {
            SampleKind::TypeII => {
                let rv = resultant_r(&a)?;
                r.assert("type-II: r = 0", rv.is_zero(), rv.to_string());
            }
            SampleKind::TypeI2 => {
                let d = disc84(&a)?;
                r.assert("type-I2: d84 = 0", d.is_zero(), d.to_string());
            }
            _ => {}
        }
    }
    let a = random_params(&mut rng);
    let rv = resultant_r(&a)?;
    r.assert("generic: r != 0", !rv.is_zero(), rv.to_string());
    let d = disc84(&a)?;
    r.assert("generic: d84 != 0", !d.is_zero(), d.to_string());
    Ok(r)
}

fn pow(x: &Rational, e: u32) -> Rational {
    num_traits::pow(x.clone(), e as usize)
}

/// Degree bound of `d84` along a line. A degree-7 discriminant has degree 12
/// in the coefficients and each coefficient of `Δ/x⁸` is cubic in `a`.
pub const D84_LINE_DEGREE: usize = 36;

fn lagrange_eval(xs: &[Rational], ys: &[Rational], t: &Rational) -> Rational {
    let mut total = Rational::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut term = yi.clone();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                term = term * (t - xj) / (xi - xj);
            }
        }
        total += term;
    }
    total
}

fn check_d84(ctx: &Ctx) -> Result<CheckReport> {
    let mut r = CheckReport::new();
    let mut rng = ctx.rng(9);
    let mut constant: Option<Rational> = None;
    for i in 0..ctx.samples {
        let a = random_params(&mut rng);
        let lambda = random_rational(&mut rng);
        let la = a.scale(&lambda)?;
        let d = disc84(&a)?;
        let rv = resultant_r(&a)?;
        r.assert(
            format!("pair {i}: d84 weight 84"),
            disc84(&la)? == &d * pow(&lambda, 84),
            format!("lambda = {lambda}"),
        );
        r.assert(
            format!("pair {i}: r weight 28"),
            resultant_r(&la)? == &rv * pow(&lambda, 28),
            format!("lambda = {lambda}"),
        );
        let euclid = disc84_euclid(&a)?;
        r.assert(format!("pair {i}: Sylvester and Euclid agree"), euclid == d, format!("{d} vs {euclid}"));
        let c = disc_depressed(&a)? / (pow(&rv, 3) * &euclid);
        match &constant {
            None => constant = Some(c),
            Some(c0) => {
                r.assert(format!("pair {i}: disc / (r^3 d84) constant"), &c == c0, format!("{c} vs {c0}"));
            }
        }
    }
    let c = constant.unwrap_or_else(Rational::one);
    r.assert("normalizing constant is 1", c.is_one(), c.to_string());

    // polynomial along a line: interpolate on D84_LINE_DEGREE + 1 nodes, predict more
    let base = random_params(&mut rng);
    let dir = random_params(&mut rng);
    let line = |t: &Rational| -> Result<Rational> {
        let v: Vec<Rational> = base.values().iter().zip(dir.values()).map(|(b, d)| b + d * t).collect();
        disc84(&FamilyParams::from_vec(v)?)
    };
    let xs: Vec<Rational> = (0..=D84_LINE_DEGREE as i64).map(|k| Rational::from_integer((k - 18).into())).collect();
    let ys = xs.iter().map(&line).collect::<Result<Vec<_>>>()?;
    for t in [Rational::new(1.into(), 2.into()), Rational::new((-7).into(), 3.into()), Rational::from_integer(25.into())] {
        let predicted = lagrange_eval(&xs, &ys, &t);
        let actual = line(&t)?;
        r.assert(format!("d84 polynomial along a line at t = {t}"), predicted == actual, format!("{actual}"));
    }
    Ok(r)
}

fn check_equivariance(ctx: &Ctx) -> Result<CheckReport> {
    let mut r = CheckReport::new();
    let mut rng = ctx.rng(10);
    let uw = WeightSystem::u_system().weights;
    let tw = WeightSystem::t_system().weights;
    for i in 0..ctx.samples {
        let a = random_params(&mut rng);
        let lambda = random_rational(&mut rng);
        let la = a.scale(&lambda)?;
        let (u, lu) = (canonical_u(&a)?, canonical_u(&la)?);
        let ok = u.iter().zip(&lu).zip(&uw).all(|((x, y), &w)| y == &(x * pow(&lambda, w as u32)));
        r.assert(format!("sample {i}: u weights (2,4,6,8,10,14)"), ok, format!("lambda = {lambda}"));

        let a0 = a.with(0, Rational::zero());
        let la0 = a0.scale(&lambda)?;
        let (t, lt) = (canonical_t(&a0)?, canonical_t(&la0)?);
        let ok = t.iter().zip(&lt).zip(&tw).all(|((x, y), &w)| y == &(x * pow(&lambda, w as u32)));
        r.assert(format!("sample {i}: t weights (4,6,10,12,18)"), ok, format!("lambda = {lambda}"));

        r.assert(
            format!("sample {i}: Humbert weight 24"),
            humbert_m(&la) == humbert_m(&a) * pow(&lambda, 24),
            format!("lambda = {lambda}"),
        );
        r.assert(
            format!("sample {i}: fibers invariant under scaling"),
            classify_all(&la)?.type_counts() == classify_all(&a)?.type_counts(),
            format!("lambda = {lambda}"),
        );
    }
    let w = is_weighted_homogeneous(&humbert_poly());
    r.assert("Humbert polynomial homogeneous of weight 24", w == Some(24), format!("{w:?}"));
    let u = WeightSystem::u_system();
    let monotone = (0..2).all(|start| {
        let seq: Vec<u64> = (0..30).map(|k| hilbert_count(&u, start + 2 * k)).collect();
        seq.windows(2).all(|p| p[0] <= p[1])
    });
    r.assert("u-system Hilbert counts nondecreasing in steps of 2", monotone, "weights 0..60");
    Ok(r)
}

fn check_numerology(_: &Ctx) -> Result<CheckReport> {
    Ok(numerology_check())
}

/// Topics not claimed by any check.
pub fn uncovered_topics() -> Vec<&'static str> {
    let covered: BTreeSet<&str> = checks().iter().flat_map(|c| c.covers.iter().copied()).collect();
    TOPICS.iter().copied().filter(|t| !covered.contains(t)).collect()
}

/// Claimed topics missing from [`TOPICS`].
pub fn unknown_topics() -> Vec<&'static str> {
    let known: BTreeSet<&str> = TOPICS.iter().copied().collect();
    checks().iter().flat_map(|c| c.covers.iter().copied()).filter(|t| !known.contains(t)).collect()
}
