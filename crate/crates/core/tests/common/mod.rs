//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use polyindex_core::families::{
    bipyramid_square_prism, irregular_hexagon, linf_sum, oblique_prism, prism_with_pyramids,
    regular_2n_gon, segment,
};
use polyindex_core::{Operator, Polytope, Rational, Scalar, UnitBall};
use rand::Rng;

pub fn q(p: i64, d: i64) -> Rational {
    Rational::new(p, d)
}

/// Every rational-coordinate member of the named families.
pub fn rational_fixtures() -> Vec<(&'static str, Polytope<Rational>)> {
    vec![
        ("irregular_hexagon", irregular_hexagon()),
        ("bipyramid_square_prism", bipyramid_square_prism()),
        ("square", regular_2n_gon(2).unwrap()),
        ("oblique_prism(2, 0)", oblique_prism(2, &q(0, 1)).unwrap()),
        ("oblique_prism(2, 1/2)", oblique_prism(2, &q(1, 2)).unwrap()),
        ("oblique_prism(2, 1)", oblique_prism(2, &q(1, 1)).unwrap()),
        ("prism_with_pyramids(2)", prism_with_pyramids(2).unwrap()),
        ("linf_sum(square, segment)", linf_sum(&regular_2n_gon(2).unwrap(), &segment()).unwrap()),
    ]
}

/// Small Gaussian elimination over rationals, kept separate from the crate's.
fn solve_exact(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = a.len();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        b.swap(c, p);
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone() / a[c][c].clone();
                let pivot = a[c].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot).skip(c) {
                    *x = x.clone() - f.clone() * p.clone();
                }
                let t = f * b[c].clone();
                b[r] = b[r].clone() - t;
            }
        }
    }
    Some((0..n).map(|i| b[i].clone() / a[i][i].clone()).collect())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// All-subsets facet oracle: every `f` with `f(v) = 1` on `d` listed
/// vertices and `|f(u)| <= 1` on all of them, with at least `d` vertices on
/// the hyperplane (so it is a facet and not a lower-dimensional face).
pub fn brute_force_facets(p: &Polytope<Rational>) -> Vec<Vec<Rational>> {
    let d = p.dim();
    let vs = p.vertices();
    let mut found: Vec<Vec<Rational>> = Vec::new();
    for s in subsets(vs.len(), d) {
        let a: Vec<Vec<Rational>> = s.iter().map(|&i| vs[i].clone()).collect();
        let Some(f) = solve_exact(a, vec![Rational::one(); d]) else {
            continue;
        };
        let eval = |v: &[Rational]| {
            f.iter().zip(v).fold(Rational::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
        };
        if vs.iter().all(|v| eval(v).abs() <= Rational::one()) && !found.contains(&f) {
            found.push(f);
        }
    }
    found.sort();
    found
}

pub fn sorted_coeffs(ball: &UnitBall<Rational>) -> Vec<Vec<Rational>> {
    let mut v: Vec<Vec<Rational>> = ball.facets().iter().map(|f| f.coeffs.clone()).collect();
    v.sort();
    v
}

/// Symmetric hull of the given points and their antipodes, or `None` if the
/// result is not full-dimensional.
pub fn symmetric_hull(dim: usize, points: &[Vec<(i64, i64)>]) -> Option<Polytope<Rational>> {
    let mut vs: Vec<Vec<Rational>> = Vec::new();
    for p in points {
        let v: Vec<Rational> = p.iter().map(|&(a, b)| q(a, b)).collect();
        if v.iter().all(Rational::is_zero) {
            continue;
        }
        vs.push(v.iter().map(|x| -x.clone()).collect());
        vs.push(v);
    }
    Polytope::new_permissive(dim, vs).ok().map(|(p, _)| p)
}

pub fn random_points<R: Rng>(rng: &mut R, dim: usize, count: usize) -> Vec<Vec<(i64, i64)>> {
    (0..count)
        .map(|_| (0..dim).map(|_| (rng.random_range(-6..=6), rng.random_range(1..=3))).collect())
        .collect()
}

/// A random symmetric rational polytope; retries until full-dimensional.
pub fn random_polytope<R: Rng>(rng: &mut R, dim: usize, max_vertices: usize) -> Polytope<Rational> {
    loop {
        let count = rng.random_range(dim..=max_vertices / 2);
        let pts = random_points(rng, dim, count);
        if let Some(p) = symmetric_hull(dim, &pts) {
            if p.len() <= max_vertices {
                return p;
            }
        }
    }
}

pub fn random_operator<R: Rng>(rng: &mut R, dim: usize) -> Operator<Rational> {
    let rows = (0..dim)
        .map(|_| (0..dim).map(|_| q(rng.random_range(-16..=16), 8)).collect())
        .collect();
    Operator::new(rows).unwrap()
}

pub fn to_f64s(v: &[Rational]) -> Vec<f64> {
    v.iter().map(Scalar::to_f64).collect()
}

/// Boundary of a symmetric polygon in counter-clockwise order.
pub fn ccw_polygon(p: &Polytope<Rational>) -> Vec<[f64; 2]> {
    let mut pts: Vec<[f64; 2]> = p.vertices().iter().map(|v| [v[0].to_f64(), v[1].to_f64()]).collect();
    pts.sort_by(|a, b| a[1].atan2(a[0]).total_cmp(&b[1].atan2(b[0])));
    pts
}

/// Sampling oracle for `κ`: `min max_r |f_r(x)|` over `samples` points
/// spread along the polygon boundary by arc length, vertices included.
pub fn sampled_kappa(boundary: &[[f64; 2]], functionals: &[[f64; 2]], samples: usize) -> f64 {
    let m = boundary.len();
    let edges: Vec<([f64; 2], [f64; 2])> = (0..m).map(|i| (boundary[i], boundary[(i + 1) % m])).collect();
    let perimeter: f64 = edges.iter().map(|(a, b)| (b[0] - a[0]).hypot(b[1] - a[1])).sum();
    let objective = |x: [f64; 2]| {
        functionals.iter().map(|f| (f[0] * x[0] + f[1] * x[1]).abs()).fold(0.0, f64::max)
    };
    let mut best = f64::INFINITY;
    for (a, b) in edges {
        let len = (b[0] - a[0]).hypot(b[1] - a[1]);
        let k = ((samples as f64) * len / perimeter).ceil().max(1.0) as usize;
        for s in 0..=k {
            let t = s as f64 / k as f64;
            let x = [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
            best = best.min(objective(x));
        }
    }
    best
}
