//! The subcommands. Each returns the JSON value to print.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use polyindex_core::families::{FamilyKind, FamilySpec};
use polyindex_core::{
    float_tolerance, kappa, numerical_radius, operator_norm, polar, radius_profile, upper_bound,
    BracketStatus, Error, Float, IndexBracket, KappaReport, Rational, Scalar, SearchConfig,
    SubsetPolicy, UnitBall, WitnessSource,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::documents::{
    encode_vec, load_operator, load_polytope, parse_point, Bundle, Codec, OperatorDocument,
    PolytopeDocument, ScalarKind,
};
use crate::error::{CliError, CliResult};

macro_rules! dispatch {
    ($kind:expr, $f:ident ( $($arg:expr),* )) => {
        match $kind {
            ScalarKind::Rational => $f::<Rational>($($arg),*),
            ScalarKind::Float => $f::<Float>($($arg),*),
        }
    };
}

fn report(command: &str, arguments: Value, config: Value, results: Value) -> Value {
    json!({ "command": command, "arguments": arguments, "config": config, "results": results })
}

fn base_config() -> Value {
    json!({ "eps": float_tolerance() })
}

fn ball_from<S: Codec>(doc: &PolytopeDocument, permissive: bool) -> CliResult<(UnitBall<S>, Vec<usize>)> {
    let (p, dropped) = doc.to_polytope::<S>(permissive)?;
    if !dropped.is_empty() {
        eprintln!("warning: dropped non-extreme or repeated input points {dropped:?}");
    }
    let ball = UnitBall::new(p).map_err(|e| CliError::from_core("vertices", e))?;
    Ok((ball, dropped))
}

fn path_str(p: &std::path::Path) -> String {
    p.display().to_string()
}

// ---- hull ----

fn hull_with<S: Codec>(doc: &PolytopeDocument, permissive: bool) -> CliResult<Value> {
    let (ball, dropped) = ball_from::<S>(doc, permissive)?;
    let facets: Vec<Value> = ball
        .facets()
        .iter()
        .enumerate()
        .map(|(k, f)| json!({ "facet": k, "coeffs": encode_vec(&f.coeffs), "incident": f.incident }))
        .collect();
    let incidence: Vec<Value> = ball
        .incidence()
        .vertex_facets
        .iter()
        .enumerate()
        .map(|(i, fs)| json!({ "vertex": i, "point": encode_vec(ball.polytope().vertex(i)), "facets": fs }))
        .collect();
    Ok(json!({
        "dim": ball.dim(),
        "scalar": ScalarKind::of::<S>(),
        "dropped_vertices": dropped,
        "facet_count": facets.len(),
        "facets": facets,
        "incidence": incidence,
    }))
}

pub fn hull(input: &Path, permissive: bool) -> CliResult<Value> {
    let bundle = load_polytope(input)?;
    let results = dispatch!(bundle.polytope.scalar, hull_with(&bundle.polytope, permissive))?;
    Ok(report("hull", json!({ "input": path_str(input), "permissive": permissive }), base_config(), results))
}

// ---- dual ----

fn dual_with<S: Codec>(doc: &PolytopeDocument, permissive: bool) -> CliResult<PolytopeDocument> {
    let (p, _) = doc.to_polytope::<S>(permissive)?;
    let dual = polar(&p).map_err(|e| CliError::from_core("vertices", e))?;
    Ok(PolytopeDocument::from_polytope(&dual.polytope))
}

/// With `document`, prints the dual ball as a plain polytope document so it
/// can be fed back into the other commands.
pub fn dual(input: &Path, permissive: bool, document: bool) -> CliResult<Value> {
    let bundle = load_polytope(input)?;
    let doc = dispatch!(bundle.polytope.scalar, dual_with(&bundle.polytope, permissive))?;
    let value = serde_json::to_value(&doc).expect("documents serialize");
    if document {
        return Ok(value);
    }
    let results = json!({ "dim": doc.dim, "scalar": doc.scalar, "vertex_count": doc.vertices.len(), "vertices": value["vertices"] });
    Ok(report("dual", json!({ "input": path_str(input), "permissive": permissive }), base_config(), results))
}

// ---- norm ----

fn norm_with<S: Codec>(doc: &PolytopeDocument, permissive: bool, point: &str) -> CliResult<Value> {
    let (ball, _) = ball_from::<S>(doc, permissive)?;
    let x = parse_point::<S>(point)?;
    ball.check_dim(x.len()).map_err(|e| CliError::from_core("point", e))?;
    let mut value = S::zero();
    let mut facet = 0;
    for (k, f) in ball.facets().iter().enumerate() {
        let y = f.eval(&x).abs();
        if y.compare(&value).is_gt() {
            value = y;
            facet = k;
        }
    }
    Ok(json!({
        "point": encode_vec(&x),
        "value": value.encode(),
        "facet": facet,
        "facet_coeffs": encode_vec(&ball.facets()[facet].coeffs),
    }))
}

pub fn norm(input: &Path, permissive: bool, point: &str) -> CliResult<Value> {
    let bundle = load_polytope(input)?;
    let results = dispatch!(bundle.polytope.scalar, norm_with(&bundle.polytope, permissive, point))?;
    Ok(report("norm", json!({ "input": path_str(input), "point": point }), base_config(), results))
}

// ---- radius ----

fn check_kinds(poly: ScalarKind, op: &OperatorDocument, field: &str) -> CliResult<()> {
    if op.scalar != poly {
        return Err(CliError::input(
            format!("{field}.scalar"),
            format!("operator is {:?} but the polytope is {:?}", op.scalar, poly),
        ));
    }
    Ok(())
}

fn radius_with<S: Codec>(doc: &PolytopeDocument, permissive: bool, op: &OperatorDocument) -> CliResult<Value> {
    let (ball, _) = ball_from::<S>(doc, permissive)?;
    let t = op.to_operator::<S>()?;
    ball.check_dim(t.dim()).map_err(|e| CliError::from_core("matrix", e))?;
    let norm = operator_norm(&ball, &t)?;
    let radius = numerical_radius(&ball, &t)?;
    let profile: Vec<Value> = radius_profile(&ball, &t)?
        .into_iter()
        .map(|row| {
            json!({
                "vertex": row.vertex,
                "value": row.value.encode(),
                "facet": row.facet,
                "image_norm": row.image_norm.encode(),
                "attains_norm": row.image_norm.compare(&norm.value).is_eq(),
            })
        })
        .collect();
    let normalized = if norm.value.is_zero() {
        Value::Null
    } else {
        (radius.value.clone() / norm.value.clone()).encode()
    };
    Ok(json!({
        "norm": { "value": norm.value.encode(), "vertex": norm.vertex },
        "radius": {
            "value": radius.value.encode(),
            "vertex": radius.vertex,
            "facet": radius.facet,
            "facet_coeffs": encode_vec(&ball.facets()[radius.facet].coeffs),
            "verified": radius.verify(&ball, &t),
        },
        "normalized_radius": normalized,
        "profile": profile,
    }))
}

pub fn radius(input: &Path, permissive: bool, operator: Option<&Path>) -> CliResult<Value> {
    let bundle = load_polytope(input)?;
    let op = match operator {
        Some(path) => load_operator(path)?,
        None => bundle
            .witness
            .clone()
            .ok_or_else(|| CliError::input("operator", "no --operator given and the input has no witness"))?,
    };
    check_kinds(bundle.polytope.scalar, &op, "operator")?;
    let results = dispatch!(bundle.polytope.scalar, radius_with(&bundle.polytope, permissive, &op))?;
    let arguments = json!({ "input": path_str(input), "operator": operator.map(path_str) });
    Ok(report("radius", arguments, base_config(), results))
}

// ---- bound ----

#[derive(Debug, Clone)]
pub struct BoundArgs {
    pub input: PathBuf,
    pub permissive: bool,
    pub witnesses: Vec<PathBuf>,
    pub policy: SubsetPolicy,
    pub search: Option<SearchConfig>,
    pub threads: Option<usize>,
}

fn source_name(source: WitnessSource, from_bundle: bool) -> String {
    match source {
        WitnessSource::Identity => "identity".to_string(),
        WitnessSource::Search => "search".to_string(),
        WitnessSource::Provided(0) if from_bundle => "bundled witness".to_string(),
        WitnessSource::Provided(i) => format!("witness {}", if from_bundle { i - 1 } else { i }),
    }
}

fn bracket_with<S: Codec>(
    ball: &UnitBall<S>,
    policy: &SubsetPolicy,
    witnesses: &[OperatorDocument],
    search: Option<&SearchConfig>,
    pool: &rayon::ThreadPool,
) -> CliResult<IndexBracket<S>> {
    let ops = witnesses
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let t = w.to_operator::<S>()?;
            ball.check_dim(t.dim()).map_err(|e| CliError::from_core(&format!("witness[{i}]"), e))?;
            Ok(t)
        })
        .collect::<CliResult<Vec<_>>>()?;
    let reps = ball.polytope().orbit_representatives();
    let entries = pool
        .install(|| reps.par_iter().map(|&i| kappa(ball, i, policy)).collect::<Result<Vec<_>, Error>>())
        .map_err(|e| CliError::from_core("policy", e))?;
    let lower = KappaReport::from_entries(entries)?;
    let upper = upper_bound(ball, &ops, search).map_err(|e| match e {
        Error::ZeroOperator(i) => CliError::input(format!("witness[{i}]"), e),
        other => CliError::from(other),
    })?;
    Ok(IndexBracket::combine(lower, upper))
}

fn bound_with<S: Codec>(bundle: &Bundle, args: &BoundArgs, witnesses: &[OperatorDocument]) -> CliResult<Value> {
    let (ball, dropped) = ball_from::<S>(&bundle.polytope, args.permissive)?;
    let pool = build_pool(args.threads)?;
    let b = bracket_with(&ball, &args.policy, witnesses, args.search.as_ref(), &pool)?;
    let kappa: Vec<Value> = b
        .lower
        .entries
        .iter()
        .map(|e| {
            json!({
                "vertex": e.vertex,
                "kappa": e.value.encode(),
                "functionals": e.functionals,
                "facet": e.facet,
                "point": encode_vec(&e.point),
                "verified": e.verify(&ball),
            })
        })
        .collect();
    let argmin = &b.lower.entries[b.lower.argmin];
    Ok(json!({
        "scalar": ScalarKind::of::<S>(),
        "dropped_vertices": dropped,
        "kappa": kappa,
        "lower": { "value": b.lower_value().encode(), "vertex": argmin.vertex },
        "upper": {
            "value": b.upper_value().encode(),
            "source": source_name(b.upper.source, bundle.witness.is_some()),
            "vertex": b.upper.certificate.vertex,
            "facet": b.upper.certificate.facet,
            "verified": b.upper.certificate.verify(&ball, &b.upper.operator),
            "operator": serde_json::to_value(OperatorDocument::from_operator(&b.upper.operator)).expect("serializes")["matrix"],
        },
        "status": b.status.as_str(),
        "index": b.exact_index().map(Codec::encode),
    }))
}

pub fn build_pool(threads: Option<usize>) -> CliResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::input("threads", e))
}

pub fn bound(args: &BoundArgs) -> CliResult<Value> {
    let bundle = load_polytope(&args.input)?;
    let mut witnesses: Vec<OperatorDocument> = bundle.witness.iter().cloned().collect();
    for path in &args.witnesses {
        witnesses.push(load_operator(path)?);
    }
    for (i, w) in witnesses.iter().enumerate() {
        check_kinds(bundle.polytope.scalar, w, &format!("witness[{i}]"))?;
    }
    let results = dispatch!(bundle.polytope.scalar, bound_with(&bundle, args, &witnesses))?;
    let arguments = json!({
        "input": path_str(&args.input),
        "witnesses": args.witnesses.iter().map(|p| path_str(p)).collect::<Vec<_>>(),
        "permissive": args.permissive,
    });
    let config = json!({
        "eps": float_tolerance(),
        "subset_policy": policy_name(&args.policy),
        "search_budget": args.search.map(|s| s.budget),
        "random_starts": args.search.map(|s| s.random_starts),
        "seed": args.search.map(|s| s.seed),
    });
    Ok(report("bound", arguments, config, results))
}

pub fn policy_name(policy: &SubsetPolicy) -> &'static str {
    match policy {
        SubsetPolicy::FirstIndependent => "subset",
        _ => "all",
    }
}

// ---- family ----

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarChoice {
    Auto,
    Rational,
    Float,
}

fn family_with<S: Codec>(spec: &FamilySpec, with_witness: bool) -> Result<Value, Error> {
    let polytope = PolytopeDocument::from_polytope(&spec.polytope::<S>()?);
    let doc = if with_witness {
        let witness = spec.witness::<S>()?.map(|w| OperatorDocument::from_operator(&w));
        serde_json::to_value(Bundle { polytope, witness })
    } else {
        serde_json::to_value(polytope)
    };
    Ok(doc.expect("documents serialize"))
}

pub fn family(spec: &FamilySpec, scalar: ScalarChoice, with_witness: bool) -> CliResult<Value> {
    let field = |e: Error| match e {
        Error::IrrationalCoordinates => CliError::input("scalar", e),
        Error::Parameter(_) => CliError::input("n", e),
        other => CliError::from_core("family", other),
    };
    match scalar {
        ScalarChoice::Rational => family_with::<Rational>(spec, with_witness).map_err(field),
        ScalarChoice::Float => family_with::<Float>(spec, with_witness).map_err(field),
        ScalarChoice::Auto => match family_with::<Rational>(spec, with_witness) {
            Err(Error::IrrationalCoordinates) => family_with::<Float>(spec, with_witness).map_err(field),
            other => other.map_err(field),
        },
    }
}

// ---- verify ----

struct Case {
    spec: FamilySpec,
    expected: &'static str,
    value: f64,
    /// Exact expected value where it is rational.
    exact: Option<Rational>,
    /// Only the lower bound is claimed.
    lower_only: bool,
}

fn polygon_case(spec: FamilySpec) -> Case {
    let n = spec.n;
    let a = PI / (2 * n) as f64;
    let expected: &'static str = match n {
        2 => "tan(pi/4) = 1",
        3 => "sin(pi/6) = 1/2",
        4 => "tan(pi/8)",
        _ => "sin(pi/10)",
    };
    let value = if n % 2 == 1 { a.sin() } else { a.tan() };
    Case { spec, expected, value, exact: None, lower_only: false }
}

fn cases() -> Vec<Case> {
    let mut out = vec![
        Case {
            spec: FamilySpec::new(FamilyKind::IrregularHexagon, 0),
            expected: ">= 5/17",
            value: 5.0 / 17.0,
            exact: Some(Rational::new(5, 17)),
            lower_only: true,
        },
        Case {
            spec: FamilySpec::new(FamilyKind::BipyramidSquarePrism, 0),
            expected: "1/2",
            value: 0.5,
            exact: Some(Rational::new(1, 2)),
            lower_only: false,
        },
    ];
    for n in 2..=5 {
        for l in [Rational::from(0), Rational::new(1, 2)] {
            out.push(polygon_case(FamilySpec::new(FamilyKind::ObliquePrism, n).with_shear(l)));
        }
    }
    for n in 3..=4 {
        out.push(polygon_case(FamilySpec::new(FamilyKind::PrismWithPyramids, n)));
    }
    out
}

const VERIFY_TOLERANCE: f64 = 1e-7;

fn matches_expected<S: Scalar>(case: &Case, x: &S) -> bool {
    match (&case.exact, S::EXACT) {
        (Some(q), true) => x.compare(&S::from_rational(q)).is_eq(),
        _ => (x.to_f64() - case.value).abs() <= VERIFY_TOLERANCE,
    }
}

fn verify_case<S: Codec>(case: &Case, pool: &rayon::ThreadPool) -> CliResult<Value> {
    let ball = UnitBall::new(case.spec.polytope::<S>()?)?;
    let witnesses: Vec<OperatorDocument> = case
        .spec
        .witness::<S>()?
        .iter()
        .map(OperatorDocument::from_operator)
        .collect();
    let b = bracket_with(&ball, &SubsetPolicy::AllIncident, &witnesses, None, pool)?;
    let certified = b.lower.entries.iter().all(|e| e.verify(&ball))
        && b.upper.certificate.verify(&ball, &b.upper.operator);
    let values_ok = matches_expected(case, b.lower_value())
        && (case.lower_only || matches_expected(case, b.upper_value()));
    let tight_ok = case.lower_only || !S::EXACT || b.status == BracketStatus::Tight;
    Ok(json!({
        "case": case.spec.label(),
        "backend": S::KIND,
        "expected": case.expected,
        "lower": b.lower_value().encode(),
        "upper": b.upper_value().encode(),
        "status": b.status.as_str(),
        "pass": certified && values_ok && tight_ok,
    }))
}

/// Runs the reproduction table. Fails (exit 1) if any row fails.
pub fn verify(threads: Option<usize>) -> CliResult<(Value, bool)> {
    let pool = build_pool(threads)?;
    let mut rows = Vec::new();
    let mut all = true;
    for case in cases() {
        let exact = case.spec.polytope::<Rational>().is_ok() && case.spec.witness::<Rational>().is_ok();
        let row = if exact { verify_case::<Rational>(&case, &pool)? } else { verify_case::<Float>(&case, &pool)? };
        all &= row["pass"] == Value::Bool(true);
        rows.push(row);
    }
    let passed = rows.iter().filter(|r| r["pass"] == Value::Bool(true)).count();
    let results = json!({ "cases": rows, "passed": passed, "failed": rows.len() - passed, "tolerance": VERIFY_TOLERANCE });
    Ok((report("verify", json!({}), base_config(), results), all))
}
