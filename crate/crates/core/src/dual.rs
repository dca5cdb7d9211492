//! Polar duality for symmetric polytopal balls.
//!
//! The dual ball is described in the same coordinates through the dot-product
//! pairing. Its vertices are exactly the facet functionals of the primal
//! ball, so the polar is built from [`facet_enumeration`] and checked in the
//! other direction by taking the polar twice.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::dot;
use crate::polytope::{facet_enumeration, Polytope};
use crate::scalar::Scalar;

/// The unit ball of the dual space.
#[derive(Debug, Clone, PartialEq)]
pub struct DualPolytope<S> {
    pub polytope: Polytope<S>,
}

impl<S: Scalar> DualPolytope<S> {
    pub fn vertices(&self) -> &[Vec<S>] {
        self.polytope.vertices()
    }

    pub fn into_polytope(self) -> Polytope<S> {
        self.polytope
    }
}

/// `{f : |f(x)| <= 1 for all x in p}`, as a vertex list.
pub fn polar<S: Scalar>(p: &Polytope<S>) -> Result<DualPolytope<S>> {
    let vertices = facet_enumeration(p)?.into_iter().map(|f| f.coeffs).collect();
    Ok(DualPolytope { polytope: Polytope::new(p.dim(), vertices)? })
}

/// `max_v |f(v)|` over the vertices of `p`.
pub fn dual_norm<S: Scalar>(p: &Polytope<S>, f: &[S]) -> Result<S> {
    if f.len() != p.dim() {
        return Err(Error::Dimension { expected: p.dim(), found: f.len() });
    }
    Ok(p
        .vertices()
        .iter()
        .fold(S::zero(), |best, v| best.max_with(dot(f, v).abs())))
}
