//! Small dense linear algebra over a [`Scalar`].

use alloc::vec::Vec;

use crate::scalar::Scalar;

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        acc.add_mul(x, y);
    }
    acc
}

pub fn neg_vec<S: Scalar>(v: &[S]) -> Vec<S> {
    v.iter().map(|x| -x.clone()).collect()
}

pub fn vec_eq<S: Scalar>(a: &[S], b: &[S]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.compare(y).is_eq())
}

/// Index of the entry of largest magnitude among `rows[r][col]` for `r >= from`
/// that is nonzero.
fn pivot_row<S: Scalar>(rows: &[Vec<S>], col: usize, from: usize) -> Option<usize> {
    let mut best: Option<(usize, S)> = None;
    for (r, row) in rows.iter().enumerate().skip(from) {
        let mag = row[col].abs();
        if mag.is_zero() {
            continue;
        }
        match &best {
            Some((_, m)) if mag.compare(m).is_le() => {}
            _ => best = Some((r, mag)),
        }
        if S::EXACT {
            break;
        }
    }
    best.map(|(r, _)| r)
}

/// Row-reduces in place, pivoting only in the first `cols` columns, and
/// returns the pivot columns. Trailing columns are carried along.
fn row_reduce<S: Scalar>(rows: &mut [Vec<S>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = pivot_row(rows, c, r) else {
            continue;
        };
        rows.swap(r, p);
        let lead = rows[r][c].clone();
        let width = rows[r].len();
        for x in &mut rows[r][c..] {
            *x = x.clone() / lead.clone();
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].clone();
            let (pivot, target) = if i < r {
                let (a, b) = rows.split_at_mut(r);
                (&b[0], &mut a[i])
            } else {
                let (a, b) = rows.split_at_mut(i);
                (&a[r], &mut b[0])
            };
            for j in c..width {
                target[j].sub_mul(&factor, &pivot[j]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<S: Scalar>(rows: &[Vec<S>]) -> usize {
    let Some(cols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut work = rows.to_vec();
    row_reduce(&mut work, cols).len()
}

/// Greedily picks row indices, in order, that increase the rank.
pub fn independent_rows<S: Scalar>(rows: &[Vec<S>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<Vec<S>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        basis.push(row.clone());
        if rank(&basis) == basis.len() {
            chosen.push(i);
        } else {
            basis.pop();
        }
    }
    chosen
}

/// Solves `a x = b` for square nonsingular `a`.
pub fn solve<S: Scalar>(a: &[Vec<S>], b: &[S]) -> Option<Vec<S>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return None;
    }
    let mut aug: Vec<Vec<S>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug, n);
    if pivots.len() != n {
        return None;
    }
    Some(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Inverse of a square matrix, if nonsingular.
pub fn inverse<S: Scalar>(a: &[Vec<S>]) -> Option<Vec<Vec<S>>> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return None;
    }
    let mut aug: Vec<Vec<S>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { S::one() } else { S::zero() }));
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug, n);
    if pivots.len() != n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}
