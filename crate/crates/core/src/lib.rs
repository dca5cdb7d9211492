//! Geometry of finite-dimensional polyhedral Banach spaces.
//!
//! A space is given by its unit ball, a centrally symmetric polytope listed by
//! its vertices. From that the crate computes:
//!
//! * the facets and vertex–facet incidence ([`polytope`]), and with them the
//!   norm as a gauge,
//! * the dual unit ball, whose vertices are the facet functionals ([`dual`]),
//! * operator norms and numerical radii with certificates ([`operator`]),
//! * a certified bracket on the numerical index: a lower bound from exact
//!   min–max LPs over the facets and an upper bound from witness operators
//!   ([`index`]),
//! * generators for a few classical families of polyhedral balls and their
//!   extremal operators ([`families`]).
//!
//! Everything is generic over [`Scalar`]: [`Rational`] for exact results and
//! [`Float`] where coordinates are trigonometric.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod dual;
pub mod error;
pub mod families;
mod hull;
pub mod index;
pub mod linalg;
pub mod lp;
pub mod operator;
pub mod polytope;
pub mod scalar;
pub mod search;

pub use dual::{dual_norm, polar, DualPolytope};
pub use error::{Error, ParseScalarError, Result};
pub use families::FamilySpec;
pub use index::{
    index_bracket, kappa, lower_bound, upper_bound, BracketOptions, BracketStatus, IndexBracket,
    KappaReport, SubsetPolicy, UpperBound, VertexKappa, WitnessSource,
};
pub use lp::{solve_lp, LinearProgram, LpSolution, LpStatus};
pub use operator::{
    numerical_radius, operator_norm, radius_profile, NormCertificate, Operator, ProfileRow,
    RadiusCertificate,
};
pub use polytope::{
    facet_enumeration, gauge, incidence, validate, FacetFunctional, Incidence, Polytope,
    UnitBall, ValidationReport, Violation,
};
pub use scalar::{float_tolerance, rational_from_string, set_float_tolerance, Float, Rational, Scalar};
pub use search::{SearchConfig, SearchResult};
