//! Linear operators on a polyhedral space: operator norm and numerical radius.
//!
//! Both quantities reduce to finite enumerations. The norm of `T` is attained
//! at a vertex, and the numerical radius is the largest `|f(Tv)|` over
//! incident pairs of a vertex `v` and a facet functional `f` with `f(v) = 1`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{dot, inverse};
use crate::polytope::UnitBall;
use crate::scalar::Scalar;

/// A square matrix acting on coordinates (`x ↦ M x`).
#[derive(Debug, Clone, PartialEq)]
pub struct Operator<S> {
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> Operator<S> {
    pub fn new(rows: Vec<Vec<S>>) -> Result<Self> {
        let d = rows.len();
        if d == 0 {
            return Err(Error::Dimension { expected: 1, found: 0 });
        }
        if let Some(r) = rows.iter().find(|r| r.len() != d) {
            return Err(Error::Dimension { expected: d, found: r.len() });
        }
        Ok(Operator { rows })
    }

    pub fn identity(dim: usize) -> Self {
        let rows = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { S::one() } else { S::zero() }).collect())
            .collect();
        Operator { rows }
    }

    pub fn zero(dim: usize) -> Self {
        Operator { rows: vec![vec![S::zero(); dim]; dim] }
    }

    pub fn diagonal(entries: Vec<S>) -> Self {
        let d = entries.len();
        let mut m = Self::zero(d);
        for (i, e) in entries.into_iter().enumerate() {
            m.rows[i][i] = e;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &S {
        &self.rows[i][j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, value: S) {
        self.rows[i][j] = value;
    }

    pub fn apply(&self, x: &[S]) -> Vec<S> {
        self.rows.iter().map(|r| dot(r, x)).collect()
    }

    pub fn scale(&self, factor: &S) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x.mul_ref(factor)).collect())
            .collect();
        Operator { rows }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Operator<S>) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension { expected: self.dim(), found: other.dim() });
        }
        let d = self.dim();
        let rows = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut acc = S::zero();
                        for k in 0..d {
                            acc.add_mul(&self.rows[i][k], &other.rows[k][j]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok(Operator { rows })
    }

    pub fn inverse(&self) -> Result<Self> {
        inverse(&self.rows).map(|rows| Operator { rows }).ok_or(Error::Singular)
    }

    /// `s ∘ self ∘ s⁻¹`: the same operator expressed after the change of
    /// coordinates `s`.
    pub fn conjugate(&self, s: &Operator<S>) -> Result<Self> {
        s.compose(self)?.compose(&s.inverse()?)
    }

    /// Block-diagonal operator acting on the product of both spaces.
    pub fn direct_sum(&self, other: &Operator<S>) -> Self {
        let (a, b) = (self.dim(), other.dim());
        let mut m = Self::zero(a + b);
        for i in 0..a {
            m.rows[i][..a].clone_from_slice(&self.rows[i]);
        }
        for i in 0..b {
            m.rows[a + i][a..].clone_from_slice(&other.rows[i]);
        }
        m
    }

    /// The unique operator with `T v_k = w_k` for a basis `v_1..v_d`.
    pub fn from_images(sources: &[Vec<S>], images: &[Vec<S>]) -> Result<Self> {
        let d = sources.len();
        if images.len() != d || sources.iter().chain(images).any(|v| v.len() != d) {
            return Err(Error::Dimension { expected: d, found: images.len() });
        }
        // Columns of V are the sources; T = W V⁻¹.
        let v: Vec<Vec<S>> = (0..d).map(|i| sources.iter().map(|s| s[i].clone()).collect()).collect();
        let w: Vec<Vec<S>> = (0..d).map(|i| images.iter().map(|s| s[i].clone()).collect()).collect();
        let v_inv = inverse(&v).ok_or(Error::Singular)?;
        Operator { rows: w }.compose(&Operator { rows: v_inv })
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Scalar::is_zero)
    }
}

/// `‖T‖` and the first vertex attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct NormCertificate<S> {
    pub value: S,
    pub vertex: usize,
}

/// `v(T)` with the incident pair attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusCertificate<S> {
    pub value: S,
    pub vertex: usize,
    pub facet: usize,
}

impl<S: Scalar> RadiusCertificate<S> {
    /// The facet is incident to the vertex and `|f(Tv)|` equals the value.
    pub fn verify(&self, ball: &UnitBall<S>, op: &Operator<S>) -> bool {
        let Some(facet) = ball.facets().get(self.facet) else {
            return false;
        };
        if self.vertex >= ball.polytope().len() || !facet.incident.contains(&self.vertex) {
            return false;
        }
        let v = ball.polytope().vertex(self.vertex);
        facet.eval(v).compare(&S::one()).is_eq()
            && facet.eval(&op.apply(v)).abs().compare(&self.value).is_eq()
    }
}

/// One row of [`radius_profile`].
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileRow<S> {
    pub vertex: usize,
    /// `max |f(Tv)|` over facets incident to the vertex.
    pub value: S,
    pub facet: usize,
    /// `‖Tv‖`, so rows where `T` attains its norm can be picked out.
    pub image_norm: S,
}

fn check_operator<S: Scalar>(ball: &UnitBall<S>, op: &Operator<S>) -> Result<()> {
    ball.check_dim(op.dim())
}

pub fn operator_norm<S: Scalar>(ball: &UnitBall<S>, op: &Operator<S>) -> Result<NormCertificate<S>> {
    check_operator(ball, op)?;
    let mut best: Option<NormCertificate<S>> = None;
    for (i, v) in ball.polytope().vertices().iter().enumerate() {
        let value = ball.norm(&op.apply(v))?;
        if best.as_ref().is_none_or(|b| value.compare(&b.value).is_gt()) {
            best = Some(NormCertificate { value, vertex: i });
        }
    }
    best.ok_or(Error::Dimension { expected: 1, found: 0 })
}

/// Per-vertex maxima of `|f(Tv)|` over incident facets.
pub fn radius_profile<S: Scalar>(ball: &UnitBall<S>, op: &Operator<S>) -> Result<Vec<ProfileRow<S>>> {
    check_operator(ball, op)?;
    let inc = ball.incidence();
    let mut rows = Vec::with_capacity(ball.polytope().len());
    for (i, v) in ball.polytope().vertices().iter().enumerate() {
        let image = op.apply(v);
        let mut value = S::zero();
        let mut facet = None;
        for &k in &inc.vertex_facets[i] {
            let x = ball.facets()[k].eval(&image).abs();
            if facet.is_none() || x.compare(&value).is_gt() {
                value = x;
                facet = Some(k);
            }
        }
        let facet = facet.ok_or(Error::NotIncident { vertex: i, facet: usize::MAX })?;
        rows.push(ProfileRow { vertex: i, value, facet, image_norm: ball.norm(&image)? });
    }
    Ok(rows)
}

/// Exhaustive enumeration of incident pairs; ties go to the lowest
/// `(vertex, facet)`.
pub fn numerical_radius<S: Scalar>(ball: &UnitBall<S>, op: &Operator<S>) -> Result<RadiusCertificate<S>> {
    let profile = radius_profile(ball, op)?;
    let mut best: Option<RadiusCertificate<S>> = None;
    for row in profile {
        if best.as_ref().is_none_or(|b| row.value.compare(&b.value).is_gt()) {
            best = Some(RadiusCertificate { value: row.value, vertex: row.vertex, facet: row.facet });
        }
    }
    best.ok_or(Error::Dimension { expected: 1, found: 0 })
}
