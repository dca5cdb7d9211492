//! Incremental double description for the facets of a centrally placed hull.
//!
//! For points `p_1..p_m` whose hull contains the origin in its interior, the
//! facets `{f · x = 1}` of the hull are the extreme rays of the cone
//!
//! ```text
//! { (s, f) : s >= 0,  s - p_k · f >= 0  for every k }
//! ```
//!
//! with `s > 0`, rescaled to `s = 1`. The cone is built one constraint at a
//! time, keeping only adjacent ray pairs (combinatorial test) when a
//! constraint cuts the current cone.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{dot, independent_rows, inverse};
use crate::scalar::Scalar;

struct Ray<S> {
    coords: Vec<S>,
    /// `zeros[k]` is set when processed constraint `k` is tight on this ray.
    zeros: Vec<bool>,
}

fn normalize<S: Scalar>(coords: &mut [S]) {
    let mut scale = S::zero();
    for c in coords.iter() {
        scale = scale.max_with(c.abs());
    }
    if scale.is_zero() {
        return;
    }
    for c in coords.iter_mut() {
        *c = c.clone() / scale.clone();
    }
}

/// Facet normals `f` (with the facet on `{f · x = 1}`) of `conv(points)`.
/// Fails with [`Error::UnboundedPolar`] unless the origin is interior.
pub(crate) fn facet_normals<S: Scalar>(dim: usize, points: &[Vec<S>]) -> Result<Vec<Vec<S>>> {
    let width = dim + 1;
    let mut constraints: Vec<Vec<S>> = Vec::with_capacity(points.len() + 1);
    let mut nonneg = vec![S::zero(); width];
    nonneg[0] = S::one();
    constraints.push(nonneg);
    for p in points {
        if p.len() != dim {
            return Err(Error::Dimension { expected: dim, found: p.len() });
        }
        let mut row = Vec::with_capacity(width);
        row.push(S::one());
        row.extend(p.iter().map(|x| -x.clone()));
        constraints.push(row);
    }

    let initial = independent_rows(&constraints);
    if initial.len() < width {
        return Err(Error::UnboundedPolar);
    }
    let basis: Vec<Vec<S>> = initial.iter().map(|&k| constraints[k].clone()).collect();
    let inv = inverse(&basis).ok_or(Error::Singular)?;

    let total = constraints.len();
    let mut rays: Vec<Ray<S>> = (0..width)
        .map(|j| {
            let mut coords: Vec<S> = inv.iter().map(|row| row[j].clone()).collect();
            normalize(&mut coords);
            let mut zeros = vec![false; total];
            for (i, &k) in initial.iter().enumerate() {
                zeros[k] = i != j;
            }
            Ray { coords, zeros }
        })
        .collect();

    let mut processed = vec![false; total];
    for &k in &initial {
        processed[k] = true;
    }

    for k in 0..total {
        if processed[k] {
            continue;
        }
        let a = &constraints[k];
        let values: Vec<S> = rays.iter().map(|r| dot(a, &r.coords)).collect();

        let mut next: Vec<Ray<S>> = Vec::with_capacity(rays.len());
        for (i, ray) in rays.iter().enumerate() {
            if !values[i].is_positive() {
                continue;
            }
            for (j, other) in rays.iter().enumerate() {
                if !values[j].is_negative() || !adjacent(&rays, i, j, width) {
                    continue;
                }
                let mut coords: Vec<S> = ray
                    .coords
                    .iter()
                    .zip(&other.coords)
                    .map(|(p, n)| values[i].mul_ref(n) - values[j].mul_ref(p))
                    .collect();
                normalize(&mut coords);
                let mut zeros: Vec<bool> =
                    ray.zeros.iter().zip(&other.zeros).map(|(a, b)| *a && *b).collect();
                zeros[k] = true;
                next.push(Ray { coords, zeros });
            }
        }
        for (ray, value) in rays.into_iter().zip(&values) {
            if value.is_negative() {
                continue;
            }
            let mut ray = ray;
            ray.zeros[k] = value.is_zero();
            next.push(ray);
        }
        rays = next;
        processed[k] = true;
    }

    let mut normals = Vec::with_capacity(rays.len());
    for ray in rays {
        if !ray.coords[0].is_positive() {
            return Err(Error::UnboundedPolar);
        }
        let s = ray.coords[0].clone();
        normals.push(ray.coords[1..].iter().map(|c| c.clone() / s.clone()).collect());
    }
    Ok(normals)
}

/// Combinatorial adjacency: rays `i` and `j` span a 2-face of the cone when
/// their common tight set has size at least `width - 2` and no third ray is
/// tight on all of it.
fn adjacent<S: Scalar>(rays: &[Ray<S>], i: usize, j: usize, width: usize) -> bool {
    let common: Vec<usize> = rays[i]
        .zeros
        .iter()
        .zip(&rays[j].zeros)
        .enumerate()
        .filter_map(|(k, (a, b))| (*a && *b).then_some(k))
        .collect();
    if common.len() + 2 < width {
        return false;
    }
    !rays
        .iter()
        .enumerate()
        .any(|(r, ray)| r != i && r != j && common.iter().all(|&k| ray.zeros[k]))
}
