//! Named polytope families and their extremal operators.
//!
//! Angles are multiples of `π / n`. Coordinates that are rational (angles at
//! multiples of `π/2`) are produced exactly on every backend; any other
//! angle needs the float backend and fails with
//! [`Error::IrrationalCoordinates`] on the exact one.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::polytope::Polytope;
use crate::scalar::{Rational, Scalar};

/// `(cos, sin)` of `num·π/den`.
fn cos_sin<S: Scalar>(num: i64, den: i64) -> Result<(S, S)> {
    if (2 * num).rem_euclid(den) == 0 {
        let quarter = (2 * num / den).rem_euclid(4);
        let (c, s) = [(1, 0), (0, 1), (-1, 0), (0, -1)][quarter as usize];
        return Ok((S::from_int(c), S::from_int(s)));
    }
    if S::EXACT {
        return Err(Error::IrrationalCoordinates);
    }
    let angle = num as f64 * PI / den as f64;
    let c = S::from_f64(libm::cos(angle)).ok_or(Error::IrrationalCoordinates)?;
    let s = S::from_f64(libm::sin(angle)).ok_or(Error::IrrationalCoordinates)?;
    Ok((c, s))
}

fn check_n(n: usize) -> Result<i64> {
    if n < 2 {
        return Err(Error::Parameter(alloc::format!("n must be at least 2, got {n}")));
    }
    i64::try_from(n).map_err(|_| Error::Parameter("n too large".to_string()))
}

fn polygon<S: Scalar>(n: i64) -> Result<Vec<(S, S)>> {
    (0..2 * n).map(|j| cos_sin(j, n)).collect()
}

/// Regular `2n`-gon with vertices `(cos jπ/n, sin jπ/n)`.
pub fn regular_2n_gon<S: Scalar>(n: usize) -> Result<Polytope<S>> {
    let n = check_n(n)?;
    let vertices = polygon::<S>(n)?.into_iter().map(|(c, s)| vec![c, s]).collect();
    Polytope::new(2, vertices)
}

/// Prism over the regular `2n`-gon sheared by `l`: vertices
/// `(cos(j-1)π/n ± l, sin(j-1)π/n, ±1)`. The top ring comes first, then the
/// bottom ring, each in order of `j`.
pub fn oblique_prism<S: Scalar>(n: usize, l: &S) -> Result<Polytope<S>> {
    let n = check_n(n)?;
    let ring = polygon::<S>(n)?;
    let mut vertices = Vec::with_capacity(4 * n as usize);
    for (c, s) in &ring {
        vertices.push(vec![c.clone() + l.clone(), s.clone(), S::one()]);
    }
    for (c, s) in &ring {
        vertices.push(vec![c.clone() - l.clone(), s.clone(), -S::one()]);
    }
    Polytope::new(3, vertices)
}

/// Right prism over the regular `2n`-gon with a pyramid glued on each base:
/// the two rings at height `±1` and apexes `(0, 0, ±2)`.
pub fn prism_with_pyramids<S: Scalar>(n: usize) -> Result<Polytope<S>> {
    let n = check_n(n)?;
    let ring = polygon::<S>(n)?;
    let mut vertices = Vec::with_capacity(4 * n as usize + 2);
    for z in [S::one(), -S::one()] {
        for (c, s) in &ring {
            vertices.push(vec![c.clone(), s.clone(), z.clone()]);
        }
    }
    vertices.push(vec![S::zero(), S::zero(), S::from_int(2)]);
    vertices.push(vec![S::zero(), S::zero(), S::from_int(-2)]);
    Polytope::new(3, vertices)
}

/// Cube `[-1, 1]^3` with pyramids of height one on top and bottom. Vertex
/// order: `(±1, ±1, 1)` counter-clockwise from `(1, 1, 1)`, the same ring at
/// `z = -1`, then `(0, 0, 2)` and `(0, 0, -2)`.
pub fn bipyramid_square_prism<S: Scalar>() -> Polytope<S> {
    let ring = [(1, 1), (-1, 1), (-1, -1), (1, -1)];
    let mut vertices = Vec::with_capacity(10);
    for z in [1, -1] {
        for (x, y) in ring {
            vertices.push(vec![S::from_int(x), S::from_int(y), S::from_int(z)]);
        }
    }
    vertices.push(vec![S::zero(), S::zero(), S::from_int(2)]);
    vertices.push(vec![S::zero(), S::zero(), S::from_int(-2)]);
    Polytope::new(3, vertices).expect("fixed vertex list is valid")
}

/// Irregular hexagon with vertices `±(1, 1), ±(1/2, 2), ±(-1, 1)`, listed as
/// `(1,1), (1/2,2), (-1,1), (-1,-1), (-1/2,-2), (1,-1)`.
pub fn irregular_hexagon<S: Scalar>() -> Polytope<S> {
    let raw = [(1, 1, 1), (1, 2, 2), (-1, 1, 1), (-1, 1, -1), (-1, 2, -2), (1, 1, -1)];
    let vertices = raw
        .iter()
        .map(|&(p, q, y)| vec![S::ratio(p, q), S::from_int(y)])
        .collect();
    Polytope::new(2, vertices).expect("fixed vertex list is valid")
}

/// The segment `[-1, 1]`.
pub fn segment<S: Scalar>() -> Polytope<S> {
    Polytope::new(1, vec![vec![S::one()], vec![-S::one()]]).expect("segment is valid")
}

/// Unit ball of the ℓ∞ sum: the product `P × Q`, vertices all pairs.
pub fn linf_sum<S: Scalar>(p: &Polytope<S>, q: &Polytope<S>) -> Result<Polytope<S>> {
    let mut vertices = Vec::with_capacity(p.len() * q.len());
    for u in p.vertices() {
        for w in q.vertices() {
            let mut v = u.clone();
            v.extend(w.iter().cloned());
            vertices.push(v);
        }
    }
    Polytope::new(p.dim() + q.dim(), vertices)
}

/// Coefficients `(c, s)` of the planar part of the prism witnesses: the
/// witness maps `(u, 1)` to `(c·Ru, s)` where `R` is the quarter turn.
/// Odd `n`: `(cos π/2n, sin π/2n)`. Even `n`: `(1, 0)`.
fn witness_coefficients<S: Scalar>(n: i64) -> Result<(S, S)> {
    if n % 2 == 0 {
        Ok((S::one(), S::zero()))
    } else {
        cos_sin(1, 2 * n)
    }
}

/// Norm-one operator on the `2n`-gon with numerical radius `sin π/2n`
/// (odd `n`) or `tan π/2n` (even `n`): a quarter turn, scaled by
/// `cos π/2n` when `n` is odd so vertices land on edge midpoints.
pub fn regular_2n_gon_witness<S: Scalar>(n: usize) -> Result<Operator<S>> {
    let n = check_n(n)?;
    let (c, _) = witness_coefficients::<S>(n)?;
    Operator::new(vec![vec![S::zero(), -c.clone()], vec![c, S::zero()]])
}

/// Witness for the oblique prism: the linear map with
///
/// ```text
/// T(cos θ_j + l, sin θ_j, 1) = (-c sin θ_j + l s, c cos θ_j, s),   θ_j = (j-1)π/n
/// ```
///
/// fixed by its values on `v_1, v_2, v_3`, where `(c, s)` are as in
/// [`regular_2n_gon_witness`]. For odd `n` these are the images
/// `(l sin π/2n, cos π/2n, sin π/2n)`, ... of the classical construction.
pub fn prism_witness_operator<S: Scalar>(n: usize, l: &S) -> Result<Operator<S>> {
    let n = check_n(n)?;
    let (c, s) = witness_coefficients::<S>(n)?;
    let mut sources = Vec::with_capacity(3);
    let mut images = Vec::with_capacity(3);
    for j in 0..3 {
        let (cos, sin) = cos_sin::<S>(j, n)?;
        sources.push(vec![cos.clone() + l.clone(), sin.clone(), S::one()]);
        images.push(vec![
            -(c.mul_ref(&sin)) + l.mul_ref(&s),
            c.mul_ref(&cos),
            s.clone(),
        ]);
    }
    Operator::from_images(&sources, &images)
}

/// `(x, y, z) ↦ (z/2, 0, 0)`.
pub fn pyramid_witness_operator<S: Scalar>() -> Operator<S> {
    let mut m = Operator::zero(3);
    m.set_entry(0, 2, S::ratio(1, 2));
    m
}

/// Kind of a [`FamilySpec`]; names match the command-line spelling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Regular2nGon,
    ObliquePrism,
    PrismWithPyramids,
    BipyramidSquarePrism,
    LinfSum,
    IrregularHexagon,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 6] = [
        FamilyKind::Regular2nGon,
        FamilyKind::ObliquePrism,
        FamilyKind::PrismWithPyramids,
        FamilyKind::BipyramidSquarePrism,
        FamilyKind::LinfSum,
        FamilyKind::IrregularHexagon,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Regular2nGon => "regular_2n_gon",
            FamilyKind::ObliquePrism => "oblique_prism",
            FamilyKind::PrismWithPyramids => "prism_with_pyramids",
            FamilyKind::BipyramidSquarePrism => "bipyramid_square_prism",
            FamilyKind::LinfSum => "linf_sum",
            FamilyKind::IrregularHexagon => "irregular_hexagon",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parameter(alloc::format!("unknown family {s:?}")))
    }
}

/// What is known about the numerical index of a family member.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KnownIndex {
    Exact(f64),
    AtLeast(f64),
}

/// A family member: kind plus parameters. `l` is the shear of the oblique
/// prism; `height` rescales the last coordinate of 3-D members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub n: usize,
    pub l: Rational,
    pub height: Rational,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, n: usize) -> Self {
        FamilySpec { kind, n, l: Rational::from(0), height: Rational::from(1) }
    }

    pub fn with_shear(mut self, l: Rational) -> Self {
        self.l = l;
        self
    }

    pub fn with_height(mut self, height: Rational) -> Self {
        self.height = height;
        self
    }

    fn uses_n(&self) -> bool {
        !matches!(self.kind, FamilyKind::BipyramidSquarePrism | FamilyKind::IrregularHexagon)
    }

    fn height_scaling<S: Scalar>(&self, dim: usize) -> Result<Option<Operator<S>>> {
        if self.height == Rational::from(1) {
            return Ok(None);
        }
        if dim != 3 {
            return Err(Error::Parameter(String::from("height applies to 3-dimensional families only")));
        }
        if self.height.is_zero() {
            return Err(Error::Parameter(String::from("height must be nonzero")));
        }
        Ok(Some(Operator::diagonal(vec![S::one(), S::one(), S::from_rational(&self.height)])))
    }

    /// Short label such as `oblique_prism(n=3, l=1/2)`.
    pub fn label(&self) -> String {
        let mut out = String::from(self.kind.name());
        let mut params: Vec<String> = Vec::new();
        if self.uses_n() {
            params.push(alloc::format!("n={}", self.n));
        }
        if self.kind == FamilyKind::ObliquePrism {
            params.push(alloc::format!("l={}", self.l));
        }
        if self.height != Rational::from(1) {
            params.push(alloc::format!("h={}", self.height));
        }
        if !params.is_empty() {
            out.push('(');
            out.push_str(&params.join(", "));
            out.push(')');
        }
        out
    }

    pub fn polytope<S: Scalar>(&self) -> Result<Polytope<S>> {
        let p = match self.kind {
            FamilyKind::Regular2nGon => regular_2n_gon(self.n)?,
            FamilyKind::ObliquePrism => oblique_prism(self.n, &S::from_rational(&self.l))?,
            FamilyKind::PrismWithPyramids => prism_with_pyramids(self.n)?,
            FamilyKind::BipyramidSquarePrism => bipyramid_square_prism(),
            FamilyKind::LinfSum => linf_sum(&regular_2n_gon(self.n)?, &segment())?,
            FamilyKind::IrregularHexagon => irregular_hexagon(),
        };
        match self.height_scaling::<S>(p.dim())? {
            Some(scale) => p.map_linear(scale.rows()),
            None => Ok(p),
        }
    }

    /// Norm-one operator attaining the known index, if one is known.
    pub fn witness<S: Scalar>(&self) -> Result<Option<Operator<S>>> {
        let w = match self.kind {
            FamilyKind::Regular2nGon => regular_2n_gon_witness(self.n)?,
            FamilyKind::ObliquePrism => prism_witness_operator(self.n, &S::from_rational(&self.l))?,
            FamilyKind::PrismWithPyramids if self.n == 2 => pyramid_witness_operator(),
            FamilyKind::PrismWithPyramids => prism_witness_operator(self.n, &S::zero())?,
            FamilyKind::BipyramidSquarePrism => pyramid_witness_operator(),
            FamilyKind::LinfSum => regular_2n_gon_witness(self.n)?.direct_sum(&Operator::zero(1)),
            FamilyKind::IrregularHexagon => return Ok(None),
        };
        let dim = w.dim();
        match self.height_scaling::<S>(dim)? {
            Some(scale) => w.conjugate(&scale).map(Some),
            None => Ok(Some(w)),
        }
    }

    pub fn known_index(&self) -> KnownIndex {
        let polygon = || {
            let a = PI / (2 * self.n) as f64;
            if self.n % 2 == 1 {
                libm::sin(a)
            } else {
                libm::tan(a)
            }
        };
        match self.kind {
            FamilyKind::Regular2nGon | FamilyKind::ObliquePrism | FamilyKind::LinfSum => {
                KnownIndex::Exact(polygon())
            }
            FamilyKind::PrismWithPyramids if self.n == 2 => KnownIndex::Exact(0.5),
            FamilyKind::PrismWithPyramids => KnownIndex::Exact(polygon()),
            FamilyKind::BipyramidSquarePrism => KnownIndex::Exact(0.5),
            FamilyKind::IrregularHexagon => KnownIndex::AtLeast(5.0 / 17.0),
        }
    }
}
