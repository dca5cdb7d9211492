//! Derivative-free local search for operators with small normalized
//! numerical radius. Only ever used to tighten an upper bound; no optimality
//! claim is attached to its output.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::index::normalized_radius;
use crate::operator::{Operator, RadiusCertificate};
use crate::polytope::UnitBall;
use crate::scalar::Scalar;

/// Search budget and seeding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Total number of objective evaluations across all starts.
    pub budget: usize,
    /// Random starting matrices in addition to any provided witnesses.
    pub random_starts: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { budget: 2000, random_starts: 4, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult<S> {
    pub value: S,
    /// Normalized, `‖operator‖ = 1`.
    pub operator: Operator<S>,
    pub certificate: RadiusCertificate<S>,
    pub evaluations: usize,
}

const DENOMINATOR: i64 = 16;
const MAX_HALVINGS: u32 = 20;

/// Compass search over matrix entries of `T ↦ v(T / ‖T‖)`, multi-start from
/// `starts` and from random matrices with entries in `[-1, 1]`. Steps are
/// dyadic so exact-backend entries stay small.
pub fn search_operators<S: Scalar>(
    ball: &UnitBall<S>,
    starts: &[Operator<S>],
    config: &SearchConfig,
) -> Result<Option<SearchResult<S>>> {
    let d = ball.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut initial: Vec<Operator<S>> = starts.iter().filter(|s| s.dim() == d).cloned().collect();
    for _ in 0..config.random_starts {
        let mut m = Operator::zero(d);
        for i in 0..d {
            for j in 0..d {
                let k = rng.random_range(-DENOMINATOR..=DENOMINATOR);
                m.set_entry(i, j, S::ratio(k, DENOMINATOR));
            }
        }
        initial.push(m);
    }
    if initial.is_empty() || config.budget == 0 {
        return Ok(None);
    }
    let per_start = (config.budget / initial.len()).max(1);

    let mut best: Option<SearchResult<S>> = None;
    let mut evaluations = 0;
    for start in initial {
        if evaluations >= config.budget {
            break;
        }
        let mut used = 1;
        evaluations += 1;
        let Some((mut value, mut unit, mut cert)) = normalized_radius(ball, &start)? else {
            continue;
        };
        let mut current = start;
        let mut step = S::ratio(1, 4);
        let mut halvings = 0;
        'descent: while used < per_start && halvings <= MAX_HALVINGS {
            let mut improved = false;
            for i in 0..d {
                for j in 0..d {
                    for sign in [S::one(), -S::one()] {
                        if used >= per_start {
                            break 'descent;
                        }
                        let mut trial = current.clone();
                        trial.set_entry(i, j, current.entry(i, j).clone() + sign * step.clone());
                        used += 1;
                        evaluations += 1;
                        if let Some((v, u, c)) = normalized_radius(ball, &trial)? {
                            if v.compare(&value).is_lt() {
                                value = v;
                                unit = u;
                                cert = c;
                                current = trial;
                                improved = true;
                            }
                        }
                    }
                }
            }
            if !improved {
                step = step / S::from_int(2);
                halvings += 1;
            }
        }
        if best.as_ref().is_none_or(|b| value.compare(&b.value).is_lt()) {
            best = Some(SearchResult { value, operator: unit, certificate: cert, evaluations: 0 });
        }
    }
    Ok(best.map(|mut b| {
        b.evaluations = evaluations;
        b
    }))
}
