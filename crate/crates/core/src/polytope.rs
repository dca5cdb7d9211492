//! Symmetric polytopal unit balls in V-representation.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::hull::facet_normals;
use crate::linalg::{dot, neg_vec, rank, vec_eq};
use crate::lp::{solve_lp, LinearProgram, LpStatus};
use crate::scalar::Scalar;

/// A violated polytope invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ZeroDimension,
    NoVertices,
    WrongLength { vertex: usize, len: usize },
    Asymmetric { vertex: usize },
    NotFullDimensional { rank: usize },
    NotExtreme { vertex: usize },
    ZeroNotInterior,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroDimension => write!(f, "dimension must be at least 1"),
            Violation::NoVertices => write!(f, "no vertices"),
            Violation::WrongLength { vertex, len } => {
                write!(f, "vertex {vertex} has {len} coordinates")
            }
            Violation::Asymmetric { vertex } => {
                write!(f, "symmetry: antipode of vertex {vertex} is missing")
            }
            Violation::NotFullDimensional { rank } => {
                write!(f, "full dimension: vertices span only rank {rank}")
            }
            Violation::NotExtreme { vertex } => {
                write!(f, "extremality: vertex {vertex} lies in the hull of the others")
            }
            Violation::ZeroNotInterior => write!(f, "interior: the origin is not interior"),
        }
    }
}

/// Outcome of [`validate`]. Empty means every invariant holds.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, pred: impl Fn(&Violation) -> bool) -> bool {
        self.violations.iter().any(pred)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "pass");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Is `points[target]` a convex combination of the points not in `skip`?
fn in_hull_of_others<S: Scalar>(points: &[Vec<S>], target: usize, skip: &[bool]) -> Result<bool> {
    let others: Vec<usize> = (0..points.len()).filter(|&j| j != target && !skip[j]).collect();
    if others.is_empty() {
        return Ok(false);
    }
    let mut lp = LinearProgram::new(others.len());
    for j in 0..others.len() {
        lp = lp.nonnegative(j);
    }
    lp = lp.eq(vec![S::one(); others.len()], S::one());
    for (c, x) in points[target].iter().enumerate() {
        let row = others.iter().map(|&j| points[j][c].clone()).collect();
        lp = lp.eq(row, x.clone());
    }
    Ok(solve_lp(&lp)?.status == LpStatus::Optimal)
}

/// Is the origin a strictly positive combination of the points? Together
/// with full rank this means the origin is interior to their hull.
fn origin_strictly_inside<S: Scalar>(dim: usize, points: &[Vec<S>]) -> Result<bool> {
    let mut lp = LinearProgram::new(points.len());
    for j in 0..points.len() {
        lp = lp.ge(unit::<S>(points.len(), j), S::one());
    }
    for c in 0..dim {
        let row = points.iter().map(|p| p[c].clone()).collect();
        lp = lp.eq(row, S::zero());
    }
    Ok(solve_lp(&lp)?.status == LpStatus::Optimal)
}

fn unit<S: Scalar>(len: usize, j: usize) -> Vec<S> {
    let mut v = vec![S::zero(); len];
    v[j] = S::one();
    v
}

fn find_point<S: Scalar>(points: &[Vec<S>], target: &[S]) -> Option<usize> {
    points.iter().position(|p| vec_eq(p, target))
}

/// Checks symmetry, full dimension, extremality of every listed vertex
/// (one LP per vertex), and that the origin is interior.
pub fn validate<S: Scalar>(dim: usize, vertices: &[Vec<S>]) -> ValidationReport {
    let mut report = ValidationReport::default();
    if dim == 0 {
        report.violations.push(Violation::ZeroDimension);
    }
    if vertices.is_empty() {
        report.violations.push(Violation::NoVertices);
    }
    for (i, v) in vertices.iter().enumerate() {
        if v.len() != dim {
            report.violations.push(Violation::WrongLength { vertex: i, len: v.len() });
        }
    }
    if !report.passed() {
        return report;
    }

    for (i, v) in vertices.iter().enumerate() {
        if find_point(vertices, &neg_vec(v)).is_none() {
            report.violations.push(Violation::Asymmetric { vertex: i });
        }
    }
    let r = rank(vertices);
    if r < dim {
        report.violations.push(Violation::NotFullDimensional { rank: r });
    }
    let none = vec![false; vertices.len()];
    for i in 0..vertices.len() {
        // An LP failure here can only be numerical; treat it as non-extreme.
        if in_hull_of_others(vertices, i, &none).unwrap_or(true) {
            report.violations.push(Violation::NotExtreme { vertex: i });
        }
    }
    if r < dim || !origin_strictly_inside(dim, vertices).unwrap_or(false) {
        report.violations.push(Violation::ZeroNotInterior);
    }
    report
}

/// A symmetric, full-dimensional polytope whose listed vertices are all
/// extreme and whose interior contains the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope<S> {
    dim: usize,
    vertices: Vec<Vec<S>>,
}

impl<S: Scalar> Polytope<S> {
    /// Strict constructor: rejects any input violating an invariant.
    pub fn new(dim: usize, vertices: Vec<Vec<S>>) -> Result<Self> {
        let report = validate(dim, &vertices);
        if !report.passed() {
            return Err(Error::InvalidPolytope(report));
        }
        Ok(Polytope { dim, vertices })
    }

    /// Permissive constructor: drops repeated and non-extreme points, then
    /// validates what is left. Returns the indices of dropped input points.
    pub fn new_permissive(dim: usize, vertices: Vec<Vec<S>>) -> Result<(Self, Vec<usize>)> {
        if let Some((i, v)) = vertices.iter().enumerate().find(|(_, v)| v.len() != dim) {
            return Err(Error::InvalidPolytope(ValidationReport {
                violations: vec![Violation::WrongLength { vertex: i, len: v.len() }],
            }));
        }
        let mut dropped = vec![false; vertices.len()];
        for i in 0..vertices.len() {
            if vertices[..i].iter().enumerate().any(|(j, w)| !dropped[j] && vec_eq(w, &vertices[i])) {
                dropped[i] = true;
            }
        }
        for i in 0..vertices.len() {
            if dropped[i] {
                continue;
            }
            if in_hull_of_others(&vertices, i, &dropped)? {
                dropped[i] = true;
            }
        }
        let removed: Vec<usize> = (0..vertices.len()).filter(|&i| dropped[i]).collect();
        let kept = vertices
            .into_iter()
            .zip(&dropped)
            .filter_map(|(v, d)| (!d).then_some(v))
            .collect();
        Ok((Polytope::new(dim, kept)?, removed))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<S>] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &[S] {
        &self.vertices[i]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self.dim, &self.vertices)
    }

    /// Index of `-v_i`.
    pub fn antipode(&self, i: usize) -> usize {
        find_point(&self.vertices, &neg_vec(&self.vertices[i]))
            .expect("validated polytopes are symmetric")
    }

    /// The lower index of every antipodal pair, in increasing order.
    pub fn orbit_representatives(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| i < self.antipode(i)).collect()
    }

    /// Whether both polytopes have the same vertex set, ignoring order.
    /// Float coordinates match within the global tolerance.
    pub fn same_vertex_set(&self, other: &Polytope<S>) -> bool {
        self.dim == other.dim
            && self.vertices.iter().all(|v| find_point(&other.vertices, v).is_some())
            && other.vertices.iter().all(|v| find_point(&self.vertices, v).is_some())
    }

    /// Image of the polytope under the linear map with the given rows.
    pub fn map_linear(&self, rows: &[Vec<S>]) -> Result<Polytope<S>> {
        if rows.len() != self.dim || rows.iter().any(|r| r.len() != self.dim) {
            return Err(Error::Dimension { expected: self.dim, found: rows.len() });
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| rows.iter().map(|r| dot(r, v)).collect())
            .collect();
        Polytope::new(self.dim, vertices)
    }
}

/// A supporting functional of a facet, normalized so the facet lies on
/// `{f = 1}`, with the vertices on that facet.
#[derive(Debug, Clone, PartialEq)]
pub struct FacetFunctional<S> {
    pub coeffs: Vec<S>,
    pub incident: Vec<usize>,
}

impl<S: Scalar> FacetFunctional<S> {
    pub fn eval(&self, x: &[S]) -> S {
        dot(&self.coeffs, x)
    }
}

/// Vertex–facet incidence in both directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Incidence {
    pub vertex_facets: Vec<Vec<usize>>,
    pub facet_vertices: Vec<Vec<usize>>,
}

/// Every facet of `p`, once each, ordered by incident vertex sets.
pub fn facet_enumeration<S: Scalar>(p: &Polytope<S>) -> Result<Vec<FacetFunctional<S>>> {
    let normals = facet_normals(p.dim, &p.vertices)?;
    let mut facets: Vec<FacetFunctional<S>> = Vec::with_capacity(normals.len());
    for coeffs in normals {
        if facets.iter().any(|f| vec_eq(&f.coeffs, &coeffs)) {
            continue;
        }
        let incident = incident_vertices(p, &coeffs);
        facets.push(FacetFunctional { coeffs, incident });
    }
    facets.sort_by(|a, b| a.incident.cmp(&b.incident));
    Ok(facets)
}

fn incident_vertices<S: Scalar>(p: &Polytope<S>, coeffs: &[S]) -> Vec<usize> {
    let one = S::one();
    (0..p.len())
        .filter(|&i| dot(coeffs, &p.vertices[i]).compare(&one).is_eq())
        .collect()
}

/// Recomputes incidence from scratch: vertex `v` lies on facet `f` iff
/// `f(v) = 1` (within tolerance on the float backend).
pub fn incidence<S: Scalar>(p: &Polytope<S>, facets: &[FacetFunctional<S>]) -> Incidence {
    let mut vertex_facets = vec![Vec::new(); p.len()];
    let mut facet_vertices = Vec::with_capacity(facets.len());
    for (k, f) in facets.iter().enumerate() {
        let on = incident_vertices(p, &f.coeffs);
        for &i in &on {
            vertex_facets[i].push(k);
        }
        facet_vertices.push(on);
    }
    Incidence { vertex_facets, facet_vertices }
}

/// The norm whose unit ball has these facets: `max_f |f(x)|`.
pub fn gauge<S: Scalar>(facets: &[FacetFunctional<S>], x: &[S]) -> Result<S> {
    let mut best = S::zero();
    for f in facets {
        if f.coeffs.len() != x.len() {
            return Err(Error::Dimension { expected: f.coeffs.len(), found: x.len() });
        }
        best = best.max_with(f.eval(x).abs());
    }
    Ok(best)
}

/// A polytope together with its facets and incidence, computed once.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitBall<S> {
    polytope: Polytope<S>,
    facets: Vec<FacetFunctional<S>>,
    incidence: Incidence,
}

impl<S: Scalar> UnitBall<S> {
    pub fn new(polytope: Polytope<S>) -> Result<Self> {
        let facets = facet_enumeration(&polytope)?;
        let incidence = incidence(&polytope, &facets);
        Ok(UnitBall { polytope, facets, incidence })
    }

    pub fn polytope(&self) -> &Polytope<S> {
        &self.polytope
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim
    }

    pub fn facets(&self) -> &[FacetFunctional<S>] {
        &self.facets
    }

    pub fn incidence(&self) -> &Incidence {
        &self.incidence
    }

    pub fn norm(&self, x: &[S]) -> Result<S> {
        gauge(&self.facets, x)
    }

    pub fn check_dim(&self, len: usize) -> Result<()> {
        if len == self.dim() {
            Ok(())
        } else {
            Err(Error::Dimension { expected: self.dim(), found: len })
        }
    }
}

/// Human-readable summary used in error messages.
pub fn describe<S: Scalar>(v: &[S]) -> String {
    use core::fmt::Write;
    let mut out = String::from("(");
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{x}");
    }
    out.push(')');
    out
}
