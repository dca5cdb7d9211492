//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p polyindex-core --test acceptance`.

mod common;

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use polyindex_core::families::*;
use polyindex_core::{
    index_bracket, kappa, lower_bound, numerical_radius, operator_norm, polar, set_float_tolerance,
    BracketOptions, BracketStatus, Float, Operator, Rational, Scalar, SearchConfig, SubsetPolicy,
    UnitBall,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, started: Instant) -> Result<Duration, String> {
    let t = started.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))?;
    Ok(t)
}

fn polygon_index(n: usize) -> f64 {
    let a = PI / (2 * n) as f64;
    if n % 2 == 1 {
        a.sin()
    } else {
        a.tan()
    }
}

fn float_bracket(spec: &FamilySpec) -> Result<(f64, f64), String> {
    let ball = UnitBall::new(spec.polytope::<Float>().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let witnesses = spec.witness::<Float>().map_err(|e| e.to_string())?.into_iter().collect();
    let b = index_bracket(&ball, &BracketOptions { witnesses, ..BracketOptions::default() })
        .map_err(|e| e.to_string())?;
    ensure(b.upper.certificate.verify(&ball, &b.upper.operator), || format!("{}: bad radius certificate", spec.label()))?;
    ensure(b.lower.entries.iter().all(|e| e.verify(&ball)), || format!("{}: bad kappa certificate", spec.label()))?;
    Ok((b.lower_value().0, b.upper_value().0))
}

fn hexagon() -> Outcome {
    let start = Instant::now();
    let ball = UnitBall::new(irregular_hexagon::<Rational>()).map_err(|e| e.to_string())?;
    let report = lower_bound(&ball, &SubsetPolicy::AllIncident).map_err(|e| e.to_string())?;
    let values: Vec<Rational> = report.entries.iter().map(|e| e.value.clone()).collect();
    ensure(values == [q(5, 17), q(4, 7), q(9, 13)], || format!("kappa table {values:?}"))?;
    ensure(report.lower() == &q(5, 17), || format!("lower {}", report.lower()))?;
    let dual = polar(ball.polytope()).map_err(|e| e.to_string())?;
    ensure(dual.vertices().contains(&vec![q(2, 3), q(1, 3)]), || "(2/3, 1/3) missing from dual".into())?;
    let t = within(Duration::from_secs(1), start)?;
    Ok(format!("kappa = 5/17, 4/7, 9/13; lower 5/17; {t:?}"))
}

fn bipyramid() -> Outcome {
    let start = Instant::now();
    let ball = UnitBall::new(bipyramid_square_prism::<Rational>()).map_err(|e| e.to_string())?;
    let t = pyramid_witness_operator::<Rational>();
    let norm = operator_norm(&ball, &t).map_err(|e| e.to_string())?.value;
    let radius = numerical_radius(&ball, &t).map_err(|e| e.to_string())?.value;
    ensure(norm == q(1, 1) && radius == q(1, 2), || format!("norm {norm}, radius {radius}"))?;
    let b = index_bracket(&ball, &BracketOptions { witnesses: vec![t], ..BracketOptions::default() })
        .map_err(|e| e.to_string())?;
    ensure(b.lower_value() == &q(1, 2), || format!("lower {}", b.lower_value()))?;
    ensure(b.status == BracketStatus::Tight && b.exact_index() == Some(&q(1, 2)), || {
        format!("bracket [{}, {}]", b.lower_value(), b.upper_value())
    })?;
    let t = within(Duration::from_secs(1), start)?;
    Ok(format!("bracket [1/2, 1/2] tight; {t:?}"))
}

fn prisms() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for n in 2..=5 {
        for l in [q(0, 1), q(1, 2)] {
            let spec = FamilySpec::new(FamilyKind::ObliquePrism, n).with_shear(l);
            let (lo, hi) = float_bracket(&spec)?;
            let target = polygon_index(n);
            let err = (lo - target).abs().max((hi - target).abs());
            ensure(err <= 1e-7, || format!("{}: [{lo}, {hi}] vs {target}", spec.label()))?;
            worst = worst.max(err);
        }
    }
    let t = within(Duration::from_secs(10), start)?;
    Ok(format!("8 prisms, max deviation {worst:.1e}; {t:?}"))
}

fn pyramid_prisms() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for (n, target) in [(3, 0.5), (4, (PI / 8.0).tan())] {
        let spec = FamilySpec::new(FamilyKind::PrismWithPyramids, n);
        let (lo, hi) = float_bracket(&spec)?;
        let err = (lo - target).abs().max((hi - target).abs());
        ensure(err <= 1e-7, || format!("{}: [{lo}, {hi}] vs {target}", spec.label()))?;
        worst = worst.max(err);
    }
    let t = within(Duration::from_secs(10), start)?;
    Ok(format!("n = 3, 4, max deviation {worst:.1e}; {t:?}"))
}

fn height() -> Outcome {
    let base = FamilySpec::new(FamilyKind::ObliquePrism, 3);
    let (lo, hi) = float_bracket(&base)?;
    for h in [q(1, 2), q(2, 1)] {
        let spec = base.clone().with_height(h);
        let (a, b) = float_bracket(&spec)?;
        ensure((a - lo).abs() <= 1e-7 && (b - hi).abs() <= 1e-7, || {
            format!("{}: [{a}, {b}] vs [{lo}, {hi}]", spec.label())
        })?;
    }
    Ok(format!("[{lo:.9}, {hi:.9}] for h = 1/2, 1, 2"))
}

fn bipolar() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut instances: Vec<(String, _)> =
        rational_fixtures().into_iter().map(|(name, p)| (name.to_string(), p)).collect();
    for k in 0..100 {
        let dim = if k % 2 == 0 { 2 } else { 3 };
        instances.push((format!("random #{k} (d = {dim})"), random_polytope(&mut rng, dim, 12)));
    }
    for (name, p) in &instances {
        let dual = polar(p).map_err(|e| format!("{name}: {e}"))?;
        let back = polar(&dual.polytope).map_err(|e| format!("{name}: {e}"))?;
        ensure(back.polytope.same_vertex_set(p), || format!("{name}: bipolar differs"))?;
    }
    let t = within(Duration::from_secs(30), start)?;
    Ok(format!("{} polytopes; {t:?}", instances.len()))
}

fn radius_norm() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let fixtures = rational_fixtures();
    let per = 200usize.div_ceil(fixtures.len());
    let mut count = 0;
    for (name, p) in fixtures {
        let d = p.dim();
        let ball = UnitBall::new(p).map_err(|e| e.to_string())?;
        let lower = lower_bound(&ball, &SubsetPolicy::AllIncident).map_err(|e| e.to_string())?.lower().clone();
        let id = numerical_radius(&ball, &Operator::identity(d)).map_err(|e| e.to_string())?.value;
        ensure(id == q(1, 1), || format!("{name}: v(I) = {id}"))?;
        for k in 0..per {
            let t = random_operator(&mut rng, d);
            let lambda = q(k as i64 % 7 - 3, 1 + k as i64 % 4);
            let v = numerical_radius(&ball, &t).map_err(|e| e.to_string())?;
            let n = operator_norm(&ball, &t).map_err(|e| e.to_string())?.value;
            ensure(v.value <= n, || format!("{name}: v(T) = {} > {n}", v.value))?;
            let scaled = numerical_radius(&ball, &t.scale(&lambda)).map_err(|e| e.to_string())?.value;
            ensure(scaled == lambda.abs() * v.value.clone(), || format!("{name}: homogeneity fails for {lambda}"))?;
            if !t.is_zero() {
                ensure(lower.clone() * n.clone() <= v.value, || format!("{name}: lower {lower} > v/|T|"))?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} operators"))
}

fn oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for k in 0..20 {
        let p = random_polytope(&mut rng, 2, 10);
        let ball = UnitBall::new(p.clone()).map_err(|e| e.to_string())?;
        ensure(sorted_coeffs(&ball) == brute_force_facets(&p), || format!("polygon #{k}: facets differ from oracle"))?;
        let boundary = ccw_polygon(&p);
        for i in 0..p.len() {
            let kap = kappa(&ball, i, &SubsetPolicy::AllIncident).map_err(|e| e.to_string())?;
            let fs: Vec<[f64; 2]> = kap
                .functionals
                .iter()
                .map(|&j| {
                    let c = to_f64s(&ball.facets()[j].coeffs);
                    [c[0], c[1]]
                })
                .collect();
            let sampled = sampled_kappa(&boundary, &fs, 100_000);
            let lp = kap.value.to_f64();
            ensure(lp <= sampled + 1e-12, || format!("polygon #{k} vertex {i}: LP {lp} above sampled {sampled}"))?;
            ensure(sampled - lp < 1e-3, || format!("polygon #{k} vertex {i}: gap {}", sampled - lp))?;
            worst = worst.max(sampled - lp);
        }
    }
    Ok(format!("20 polygons, largest sampled gap {worst:.1e}"))
}

fn certificates() -> Outcome {
    let mut checked = 0;
    let search = SearchConfig { budget: 300, random_starts: 2, seed: 9 };
    for (name, p) in rational_fixtures() {
        let ball = UnitBall::new(p).map_err(|e| e.to_string())?;
        let options = BracketOptions::<Rational> { search: Some(search), ..BracketOptions::default() };
        let b = index_bracket(&ball, &options).map_err(|e| e.to_string())?;
        for e in &b.lower.entries {
            ensure(e.verify(&ball), || format!("{name}: kappa certificate at vertex {}", e.vertex))?;
            checked += 1;
        }
        ensure(b.upper.certificate.verify(&ball, &b.upper.operator), || format!("{name}: radius certificate"))?;
        ensure(b.upper.certificate.value == b.upper.value, || format!("{name}: upper value"))?;
        let norm = operator_norm(&ball, &b.upper.operator).map_err(|e| e.to_string())?;
        let at = ball.norm(&b.upper.operator.apply(ball.polytope().vertex(norm.vertex))).map_err(|e| e.to_string())?;
        ensure(norm.value == q(1, 1) && at == norm.value, || format!("{name}: witness norm {}", norm.value))?;
        ensure(b.lower_value() <= b.upper_value(), || format!("{name}: lower above upper"))?;
        ensure(b.lower_value().is_positive() && b.upper_value() <= &q(1, 1), || format!("{name}: bracket outside (0, 1]"))?;
        checked += 2;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..50 {
        let p = random_polytope(&mut rng, 3, 12);
        let ball = UnitBall::new(p).map_err(|e| e.to_string())?;
        let t = random_operator(&mut rng, 3);
        let cert = numerical_radius(&ball, &t).map_err(|e| e.to_string())?;
        ensure(cert.verify(&ball, &t), || "random radius certificate".into())?;
        let report = lower_bound(&ball, &SubsetPolicy::AllIncident).map_err(|e| e.to_string())?;
        ensure(report.entries.iter().all(|e| e.verify(&ball)), || "random kappa certificate".into())?;
        checked += 1 + report.entries.len();
    }
    Ok(format!("{checked} certificates re-evaluated"))
}

fn main() {
    set_float_tolerance(1e-9);
    let criteria: [Criterion; 9] = [
        ("irregular hexagon kappa table, exact", hexagon),
        ("bipyramid over the square prism, exact 1/2", bipyramid),
        ("oblique prisms n = 2..5, l = 0, 1/2", prisms),
        ("prisms with pyramids n = 3, 4", pyramid_prisms),
        ("height invariance h = 1/2, 2", height),
        ("bipolar round trip", bipolar),
        ("radius and norm properties", radius_norm),
        ("2-D oracle equivalence", oracles),
        ("certificate validity", certificates),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
