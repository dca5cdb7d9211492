//! Two-sided bounds on the numerical index.
//!
//! Lower bound: every norm-one operator attains its norm at some vertex
//! `v_i`, and every functional supporting a facet at `v_i` is a candidate
//! `x*` in the numerical radius. Hence
//!
//! ```text
//! n(X) >= min_i κ_i,   κ_i = min_{‖x‖ = 1} max_r |f_ir(x)|
//! ```
//!
//! where `f_ir` range over (a chosen subset of) the facet functionals at
//! `v_i`. The unit sphere is the union of the facets, and on one facet `G`
//! the inner problem is the LP
//!
//! ```text
//! minimize t  s.t.  x = Σ λ_k u_k (u_k the vertices of G), λ >= 0, Σ λ_k = 1,
//!                   -t <= f_ir(x) <= t for every r
//! ```
//!
//! so `κ_i` is the smallest LP optimum over all facets.
//!
//! Upper bound: any nonzero operator `T` gives `n(X) <= v(T) / ‖T‖`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::lp::{solve_lp, LinearProgram, LpStatus};
use crate::operator::{numerical_radius, operator_norm, Operator, RadiusCertificate};
use crate::polytope::UnitBall;
use crate::scalar::Scalar;
use crate::search::{search_operators, SearchConfig};

/// Which supporting functionals enter `κ_i` at each vertex.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum SubsetPolicy {
    /// Every facet incident to the vertex.
    #[default]
    AllIncident,
    /// The lexicographically first `d` incident facets with trivial common
    /// kernel.
    FirstIndependent,
    /// Facet indices given per vertex.
    Explicit(BTreeMap<usize, Vec<usize>>),
}

impl SubsetPolicy {
    pub fn name(&self) -> &'static str {
        match self {
            SubsetPolicy::AllIncident => "all",
            SubsetPolicy::FirstIndependent => "subset",
            SubsetPolicy::Explicit(_) => "explicit",
        }
    }

    fn functionals<S: Scalar>(&self, ball: &UnitBall<S>, vertex: usize) -> Result<Vec<usize>> {
        let incident = &ball.incidence().vertex_facets[vertex];
        match self {
            SubsetPolicy::AllIncident => Ok(incident.clone()),
            SubsetPolicy::FirstIndependent => {
                let mut chosen: Vec<usize> = Vec::new();
                let mut rows: Vec<Vec<S>> = Vec::new();
                for &k in incident {
                    rows.push(ball.facets()[k].coeffs.clone());
                    if rank(&rows) == rows.len() {
                        chosen.push(k);
                        if chosen.len() == ball.dim() {
                            break;
                        }
                    } else {
                        rows.pop();
                    }
                }
                Ok(chosen)
            }
            SubsetPolicy::Explicit(map) => {
                let chosen = map.get(&vertex).cloned().ok_or(Error::MissingSubset { vertex })?;
                for &k in &chosen {
                    if !incident.contains(&k) {
                        return Err(Error::NotIncident { vertex, facet: k });
                    }
                }
                Ok(chosen)
            }
        }
    }
}

/// `κ_i` at one vertex, with the point of the unit sphere attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexKappa<S> {
    pub vertex: usize,
    pub value: S,
    /// Facet indices of the functionals `f_ir`.
    pub functionals: Vec<usize>,
    /// Facet of the sphere containing the minimizer.
    pub facet: usize,
    pub point: Vec<S>,
}

impl<S: Scalar> VertexKappa<S> {
    /// `max_r |f_ir(point)|` equals the value and the point has norm one.
    pub fn verify(&self, ball: &UnitBall<S>) -> bool {
        let recomputed = self
            .functionals
            .iter()
            .fold(S::zero(), |m, &k| m.max_with(ball.facets()[k].eval(&self.point).abs()));
        recomputed.compare(&self.value).is_eq()
            && ball.norm(&self.point).is_ok_and(|n| n.compare(&S::one()).is_eq())
    }
}

/// `κ_i` for one vertex.
pub fn kappa<S: Scalar>(ball: &UnitBall<S>, vertex: usize, policy: &SubsetPolicy) -> Result<VertexKappa<S>> {
    let len = ball.polytope().len();
    if vertex >= len {
        return Err(Error::OutOfRange { index: vertex, len });
    }
    let functionals = policy.functionals(ball, vertex)?;
    let rows: Vec<Vec<S>> = functionals.iter().map(|&k| ball.facets()[k].coeffs.clone()).collect();
    if functionals.is_empty() || rank(&rows) < ball.dim() {
        return Err(Error::DegenerateSubset { vertex });
    }

    let mut best: Option<VertexKappa<S>> = None;
    for (g, members) in ball.incidence().facet_vertices.iter().enumerate() {
        let (value, point) = facet_minimum(ball, members, &rows)?;
        if best.as_ref().is_none_or(|b| value.compare(&b.value).is_lt()) {
            best = Some(VertexKappa { vertex, value, functionals: functionals.clone(), facet: g, point });
        }
    }
    best.ok_or(Error::UnboundedPolar)
}

/// Minimum over one facet of `max_r |f_r(x)|`.
fn facet_minimum<S: Scalar>(ball: &UnitBall<S>, members: &[usize], rows: &[Vec<S>]) -> Result<(S, Vec<S>)> {
    let k = members.len();
    let vertices = ball.polytope().vertices();
    // Variables: λ_1..λ_k, t.
    let mut objective = vec![S::zero(); k + 1];
    objective[k] = S::one();
    let mut simplex = vec![S::one(); k + 1];
    simplex[k] = S::zero();
    let mut lp = LinearProgram::new(k + 1).minimize(objective).eq(simplex, S::one());
    for j in 0..k {
        lp = lp.nonnegative(j);
    }
    for f in rows {
        let values: Vec<S> = members.iter().map(|&m| crate::linalg::dot(f, &vertices[m])).collect();
        let mut upper = values.clone();
        upper.push(-S::one());
        let mut lower: Vec<S> = values.into_iter().map(|v| -v).collect();
        lower.push(-S::one());
        lp = lp.le(upper, S::zero()).le(lower, S::zero());
    }
    let sol = solve_lp(&lp)?;
    match sol.status {
        LpStatus::Optimal => {}
        LpStatus::Infeasible => return Err(Error::LpFailed("infeasible")),
        LpStatus::Unbounded => return Err(Error::LpFailed("unbounded")),
    }
    debug_assert!(sol.verify(&lp));
    let mut point = vec![S::zero(); ball.dim()];
    for (lambda, &m) in sol.point.iter().zip(members) {
        for (x, c) in point.iter_mut().zip(&vertices[m]) {
            x.add_mul(lambda, c);
        }
    }
    Ok((sol.value, point))
}

/// `κ_i` for every antipodal-orbit representative and their minimum.
#[derive(Debug, Clone, PartialEq)]
pub struct KappaReport<S> {
    pub entries: Vec<VertexKappa<S>>,
    /// Position in `entries` of the minimizing vertex (lowest index on ties).
    pub argmin: usize,
}

impl<S: Scalar> KappaReport<S> {
    /// Combines per-vertex results, keeping the first minimum.
    pub fn from_entries(entries: Vec<VertexKappa<S>>) -> Result<Self> {
        let mut argmin: Option<usize> = None;
        for (i, e) in entries.iter().enumerate() {
            if argmin.is_none_or(|a| e.value.compare(&entries[a].value).is_lt()) {
                argmin = Some(i);
            }
        }
        let argmin = argmin.ok_or(Error::OutOfRange { index: 0, len: 0 })?;
        Ok(KappaReport { entries, argmin })
    }

    pub fn lower(&self) -> &S {
        &self.entries[self.argmin].value
    }
}

/// `min_i κ_i`. Antipodal vertices give the same κ and are evaluated once.
pub fn lower_bound<S: Scalar>(ball: &UnitBall<S>, policy: &SubsetPolicy) -> Result<KappaReport<S>> {
    let entries = ball
        .polytope()
        .orbit_representatives()
        .into_iter()
        .map(|i| kappa(ball, i, policy))
        .collect::<Result<Vec<_>>>()?;
    KappaReport::from_entries(entries)
}

/// Where an upper-bound operator came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessSource {
    Identity,
    Provided(usize),
    Search,
}

/// `v(T)` for a norm-one operator `T`, certifying `n(X) <= value`.
#[derive(Debug, Clone, PartialEq)]
pub struct UpperBound<S> {
    pub value: S,
    /// Normalized witness, `‖operator‖ = 1`.
    pub operator: Operator<S>,
    pub certificate: RadiusCertificate<S>,
    pub source: WitnessSource,
}

/// `(v(T/‖T‖), T/‖T‖, certificate)`.
pub type Normalized<S> = (S, Operator<S>, RadiusCertificate<S>);

/// `v(T / ‖T‖)`, or `None` for the zero operator.
pub fn normalized_radius<S: Scalar>(ball: &UnitBall<S>, op: &Operator<S>) -> Result<Option<Normalized<S>>> {
    let norm = operator_norm(ball, op)?.value;
    if norm.is_zero() {
        return Ok(None);
    }
    let unit = op.scale(&(S::one() / norm));
    let cert = numerical_radius(ball, &unit)?;
    Ok(Some((cert.value.clone(), unit, cert)))
}

/// Smallest `v(T / ‖T‖)` over the identity, the given witnesses, and
/// optionally a local search.
pub fn upper_bound<S: Scalar>(
    ball: &UnitBall<S>,
    witnesses: &[Operator<S>],
    search: Option<&SearchConfig>,
) -> Result<UpperBound<S>> {
    let mut best: Option<UpperBound<S>> = None;
    let mut consider = |value: S, operator: Operator<S>, certificate, source| {
        if best.as_ref().is_none_or(|b: &UpperBound<S>| value.compare(&b.value).is_lt()) {
            best = Some(UpperBound { value, operator, certificate, source });
        }
    };
    for (i, w) in witnesses.iter().enumerate() {
        ball.check_dim(w.dim())?;
        let (value, unit, cert) = normalized_radius(ball, w)?.ok_or(Error::ZeroOperator(i))?;
        consider(value, unit, cert, WitnessSource::Provided(i));
    }
    if let Some(config) = search {
        if let Some(found) = search_operators(ball, witnesses, config)? {
            consider(found.value, found.operator, found.certificate, WitnessSource::Search);
        }
    }
    let id = Operator::identity(ball.dim());
    let cert = numerical_radius(ball, &id)?;
    consider(cert.value.clone(), id, cert, WitnessSource::Identity);
    Ok(best.expect("identity is always considered"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketStatus {
    Tight,
    Gap,
}

impl BracketStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            BracketStatus::Tight => "tight",
            BracketStatus::Gap => "gap",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndexBracket<S> {
    pub lower: KappaReport<S>,
    pub upper: UpperBound<S>,
    pub status: BracketStatus,
}

impl<S: Scalar> IndexBracket<S> {
    pub fn combine(lower: KappaReport<S>, upper: UpperBound<S>) -> Self {
        let status = if lower.lower().compare(&upper.value).is_eq() {
            BracketStatus::Tight
        } else {
            BracketStatus::Gap
        };
        IndexBracket { lower, upper, status }
    }

    pub fn lower_value(&self) -> &S {
        self.lower.lower()
    }

    pub fn upper_value(&self) -> &S {
        &self.upper.value
    }

    /// When tight, the common value is the numerical index.
    pub fn exact_index(&self) -> Option<&S> {
        (self.status == BracketStatus::Tight).then(|| self.lower_value())
    }
}

#[derive(Debug, Clone)]
pub struct BracketOptions<S> {
    pub policy: SubsetPolicy,
    pub witnesses: Vec<Operator<S>>,
    pub search: Option<SearchConfig>,
}

impl<S> Default for BracketOptions<S> {
    fn default() -> Self {
        BracketOptions { policy: SubsetPolicy::default(), witnesses: Vec::new(), search: None }
    }
}

pub fn index_bracket<S: Scalar>(ball: &UnitBall<S>, options: &BracketOptions<S>) -> Result<IndexBracket<S>> {
    let lower = lower_bound(ball, &options.policy)?;
    let upper = upper_bound(ball, &options.witnesses, options.search.as_ref())?;
    Ok(IndexBracket::combine(lower, upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::Polytope;
    use crate::scalar::Rational;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    fn ball(raw: &[[(i64, i64); 2]]) -> UnitBall<Rational> {
        let v = raw.iter().map(|c| c.iter().map(|&(p, d)| q(p, d)).collect()).collect();
        UnitBall::new(Polytope::new(2, v).unwrap()).unwrap()
    }

    fn square() -> UnitBall<Rational> {
        ball(&[[(1, 1), (1, 1)], [(-1, 1), (1, 1)], [(-1, 1), (-1, 1)], [(1, 1), (-1, 1)]])
    }

    #[test]
    fn square_kappa_is_one() {
        let b = square();
        let k = kappa(&b, 0, &SubsetPolicy::AllIncident).unwrap();
        assert_eq!(k.value, q(1, 1));
        assert!(k.verify(&b));
    }

    #[test]
    fn explicit_policy_errors() {
        let b = square();
        let policy = SubsetPolicy::Explicit(BTreeMap::new());
        assert!(matches!(kappa(&b, 0, &policy), Err(Error::MissingSubset { vertex: 0 })));
        // A single functional has a nontrivial kernel in 2-D.
        let one = b.incidence().vertex_facets[0][0];
        let policy = SubsetPolicy::Explicit(BTreeMap::from([(0, vec![one])]));
        assert!(matches!(kappa(&b, 0, &policy), Err(Error::DegenerateSubset { vertex: 0 })));
        let stranger = (0..b.facets().len()).find(|k| !b.incidence().vertex_facets[0].contains(k)).unwrap();
        let policy = SubsetPolicy::Explicit(BTreeMap::from([(0, vec![one, stranger])]));
        assert!(matches!(kappa(&b, 0, &policy), Err(Error::NotIncident { .. })));
    }

    #[test]
    fn identity_is_fallback_witness() {
        let b = square();
        let up = upper_bound(&b, &[], None).unwrap();
        assert_eq!(up.value, q(1, 1));
        assert_eq!(up.source, WitnessSource::Identity);
        assert!(matches!(upper_bound(&b, &[Operator::zero(2)], None), Err(Error::ZeroOperator(0))));
    }
}
