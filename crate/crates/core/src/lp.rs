//! Dense two-phase simplex with Bland's rule.
//!
//! Problems are stated as `minimize c·x` subject to `A x <= b` and `E x = d`.
//! Variables are free unless marked nonnegative. On the exact backend every
//! pivot is exact, so the reported optimum is the true minimum.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::dot;
use crate::scalar::Scalar;

const MAX_PIVOTS: usize = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram<S> {
    objective: Vec<S>,
    nonnegative: Vec<bool>,
    inequalities: Vec<(Vec<S>, S)>,
    equalities: Vec<(Vec<S>, S)>,
}

impl<S: Scalar> LinearProgram<S> {
    /// A program over `num_vars` free variables with a zero objective.
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            objective: vec![S::zero(); num_vars],
            nonnegative: vec![false; num_vars],
            inequalities: Vec::new(),
            equalities: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn objective(&self) -> &[S] {
        &self.objective
    }

    pub fn inequalities(&self) -> &[(Vec<S>, S)] {
        &self.inequalities
    }

    pub fn equalities(&self) -> &[(Vec<S>, S)] {
        &self.equalities
    }

    pub fn minimize(mut self, objective: Vec<S>) -> Self {
        self.objective = objective;
        self
    }

    /// Restricts variable `j` to `x_j >= 0` without adding a row.
    pub fn nonnegative(mut self, j: usize) -> Self {
        if let Some(flag) = self.nonnegative.get_mut(j) {
            *flag = true;
        }
        self
    }

    pub fn is_nonnegative(&self, j: usize) -> bool {
        self.nonnegative.get(j).copied().unwrap_or(false)
    }

    /// Adds `row · x <= rhs`.
    pub fn le(mut self, row: Vec<S>, rhs: S) -> Self {
        self.inequalities.push((row, rhs));
        self
    }

    /// Adds `row · x >= rhs`.
    pub fn ge(self, row: Vec<S>, rhs: S) -> Self {
        let row = row.into_iter().map(|a| -a).collect();
        self.le(row, -rhs)
    }

    /// Adds `row · x = rhs`.
    pub fn eq(mut self, row: Vec<S>, rhs: S) -> Self {
        self.equalities.push((row, rhs));
        self
    }

    fn check_dimensions(&self) -> Result<()> {
        let n = self.num_vars();
        if n == 0 {
            return Err(Error::MalformedLp("no variables"));
        }
        if self.nonnegative.len() != n {
            return Err(Error::MalformedLp("bound flags do not match variable count"));
        }
        for (row, _) in self.inequalities.iter().chain(&self.equalities) {
            if row.len() != n {
                return Err(Error::Dimension { expected: n, found: row.len() });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

impl LpStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            LpStatus::Optimal => "optimal",
            LpStatus::Infeasible => "infeasible",
            LpStatus::Unbounded => "unbounded",
        }
    }
}

/// Result of [`solve_lp`]. `value`, `point`, and `basis` are meaningful only
/// when `status` is [`LpStatus::Optimal`]; otherwise they are zero/empty.
#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution<S> {
    pub status: LpStatus,
    pub value: S,
    pub point: Vec<S>,
    /// Basic columns of the final tableau in standard form.
    pub basis: Vec<usize>,
}

impl<S: Scalar> LpSolution<S> {
    fn without_optimum(status: LpStatus) -> Self {
        LpSolution { status, value: S::zero(), point: Vec::new(), basis: Vec::new() }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    /// Re-evaluates the point against `lp`: every constraint holds (within
    /// tolerance on the float backend) and `c·x` equals the reported value.
    pub fn verify(&self, lp: &LinearProgram<S>) -> bool {
        if !self.is_optimal() {
            return true;
        }
        if self.point.len() != lp.num_vars() {
            return false;
        }
        let feasible_bounds = self
            .point
            .iter()
            .enumerate()
            .all(|(j, x)| !lp.is_nonnegative(j) || !x.is_negative());
        let feasible_rows = lp
            .inequalities
            .iter()
            .all(|(row, rhs)| dot(row, &self.point).compare(rhs).is_le())
            && lp
                .equalities
                .iter()
                .all(|(row, rhs)| dot(row, &self.point).compare(rhs).is_eq());
        feasible_bounds
            && feasible_rows
            && dot(&lp.objective, &self.point).compare(&self.value).is_eq()
    }
}

struct Tableau<S> {
    rows: Vec<Vec<S>>,
    basis: Vec<usize>,
    cols: usize,
}

impl<S: Scalar> Tableau<S> {
    fn rhs(&self, i: usize) -> &S {
        &self.rows[i][self.cols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let lead = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x = x.clone() / lead.clone();
            }
        }
        let pivot_row = core::mem::take(&mut self.rows[r]);
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                x.sub_mul(&factor, p);
            }
            // Keep the eliminated entry exactly zero on the float backend.
            row[c] = S::zero();
        }
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Minimizes `cost` over columns `< allowed`. Returns `false` when unbounded.
    fn optimize(&mut self, cost: &[S], allowed: usize, pivots: &mut usize) -> Result<bool> {
        loop {
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut reduced = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    reduced.sub_mul(&cost[b], &self.rows[i][j]);
                }
                if reduced.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else {
                return Ok(true);
            };

            let mut leaving: Option<(usize, S)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i).clone() / a.clone();
                let better = match &leaving {
                    None => true,
                    Some((r, best)) => match ratio.compare(best) {
                        core::cmp::Ordering::Less => true,
                        core::cmp::Ordering::Equal => self.basis[i] < self.basis[*r],
                        core::cmp::Ordering::Greater => false,
                    },
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            let Some((r, _)) = leaving else {
                return Ok(false);
            };
            *pivots += 1;
            if *pivots > MAX_PIVOTS {
                return Err(Error::IterationLimit);
            }
            self.pivot(r, c);
        }
    }
}

/// Solves `lp` exactly (rational backend) or within tolerance (float backend).
pub fn solve_lp<S: Scalar>(lp: &LinearProgram<S>) -> Result<LpSolution<S>> {
    lp.check_dimensions()?;
    let n = lp.num_vars();

    // Structural columns: x_j (or x_j+ and x_j-) per variable.
    let mut pos_col = Vec::with_capacity(n);
    let mut neg_col = Vec::with_capacity(n);
    let mut cols = 0;
    for j in 0..n {
        pos_col.push(cols);
        cols += 1;
        if lp.nonnegative[j] {
            neg_col.push(None);
        } else {
            neg_col.push(Some(cols));
            cols += 1;
        }
    }
    let structural = cols;
    let slack_start = structural;
    let num_ineq = lp.inequalities.len();
    let art_start = slack_start + num_ineq;
    let m = num_ineq + lp.equalities.len();

    // Each row: structural | slacks | (artificials appended below) | rhs.
    let mut raw: Vec<(Vec<S>, S, Option<usize>)> = Vec::with_capacity(m);
    for (k, ((coeffs, b), is_ineq)) in lp
        .inequalities
        .iter()
        .map(|r| (r, true))
        .chain(lp.equalities.iter().map(|r| (r, false)))
        .enumerate()
    {
        let mut dense = vec![S::zero(); art_start];
        for (j, a) in coeffs.iter().enumerate() {
            dense[pos_col[j]] = a.clone();
            if let Some(nc) = neg_col[j] {
                dense[nc] = -a.clone();
            }
        }
        let slack = is_ineq.then_some(slack_start + k);
        if let Some(s) = slack {
            dense[s] = S::one();
        }
        let mut b = b.clone();
        if b.is_negative() {
            for x in dense.iter_mut() {
                *x = -x.clone();
            }
            b = -b;
        }
        let slack_basic = slack.filter(|&s| dense[s].is_positive());
        raw.push((dense, b, slack_basic));
    }

    let num_art = raw.iter().filter(|(_, _, s)| s.is_none()).count();
    let total = art_start + num_art;
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut next_art = art_start;
    for (mut dense, b, slack_basic) in raw {
        dense.resize(total, S::zero());
        match slack_basic {
            Some(s) => basis.push(s),
            None => {
                dense[next_art] = S::one();
                basis.push(next_art);
                next_art += 1;
            }
        }
        dense.push(b);
        rows.push(dense);
    }
    let mut tab = Tableau { rows, basis, cols: total };
    let mut pivots = 0;

    if num_art > 0 {
        let mut phase1 = vec![S::zero(); total];
        for c in phase1.iter_mut().skip(art_start) {
            *c = S::one();
        }
        tab.optimize(&phase1, total, &mut pivots)?;
        let mut infeasibility = S::zero();
        for (i, &b) in tab.basis.iter().enumerate() {
            if b >= art_start {
                infeasibility = infeasibility + tab.rhs(i).clone();
            }
        }
        if infeasibility.is_positive() {
            return Ok(LpSolution::without_optimum(LpStatus::Infeasible));
        }
        // Drive zero-valued artificials out of the basis, dropping redundant rows.
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.basis[i] < art_start {
                i += 1;
                continue;
            }
            match (0..art_start).find(|&j| !tab.rows[i][j].is_zero()) {
                Some(j) => {
                    tab.pivot(i, j);
                    i += 1;
                }
                None => {
                    tab.rows.remove(i);
                    tab.basis.remove(i);
                }
            }
        }
    }

    let mut cost = vec![S::zero(); total];
    for j in 0..n {
        cost[pos_col[j]] = lp.objective[j].clone();
        if let Some(nc) = neg_col[j] {
            cost[nc] = -lp.objective[j].clone();
        }
    }
    if !tab.optimize(&cost, art_start, &mut pivots)? {
        return Ok(LpSolution::without_optimum(LpStatus::Unbounded));
    }

    let mut column_values = vec![S::zero(); total];
    for (i, &b) in tab.basis.iter().enumerate() {
        column_values[b] = tab.rhs(i).clone();
    }
    let point: Vec<S> = (0..n)
        .map(|j| {
            let plus = column_values[pos_col[j]].clone();
            match neg_col[j] {
                Some(nc) => plus - column_values[nc].clone(),
                None => plus,
            }
        })
        .collect();
    let value = dot(&lp.objective, &point);
    Ok(LpSolution { status: LpStatus::Optimal, value, point, basis: tab.basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Float, Rational};

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    #[test]
    fn single_binding_constraint() {
        let lp = LinearProgram::new(1).minimize(vec![q(1, 1)]).le(vec![q(-1, 1)], q(-3, 1));
        let sol = solve_lp(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.value, q(3, 1));
        assert_eq!(sol.point, vec![q(3, 1)]);
        assert!(sol.verify(&lp));
    }

    #[test]
    fn absolute_value_epigraph() {
        // variables (x, t): minimize t with -t <= x <= t and x = 5/17
        let lp = LinearProgram::new(2)
            .minimize(vec![q(0, 1), q(1, 1)])
            .le(vec![q(1, 1), q(-1, 1)], q(0, 1))
            .le(vec![q(-1, 1), q(-1, 1)], q(0, 1))
            .eq(vec![q(1, 1), q(0, 1)], q(5, 17));
        let sol = solve_lp(&lp).unwrap();
        assert_eq!(sol.value, q(5, 17));
        assert!(sol.verify(&lp));
    }

    #[test]
    fn empty_feasible_set() {
        let lp = LinearProgram::new(1)
            .le(vec![q(1, 1)], q(-1, 1))
            .le(vec![q(-1, 1)], q(-1, 1));
        assert_eq!(solve_lp(&lp).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn unbounded_direction() {
        let lp = LinearProgram::new(1).minimize(vec![q(-1, 1)]).ge(vec![q(1, 1)], q(0, 1));
        assert_eq!(solve_lp(&lp).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn malformed_dimensions() {
        let lp = LinearProgram::new(2).le(vec![q(1, 1)], q(1, 1));
        assert!(matches!(solve_lp(&lp), Err(Error::Dimension { .. })));
        let empty = LinearProgram::<Rational>::new(0);
        assert!(matches!(solve_lp(&empty), Err(Error::MalformedLp(_))));
    }

    #[test]
    fn degenerate_repeated_constraints_terminate() {
        // Many copies of the same facets through the optimum.
        let mut lp = LinearProgram::new(2)
            .minimize(vec![q(-1, 1), q(-1, 1)])
            .nonnegative(0)
            .nonnegative(1);
        for _ in 0..6 {
            lp = lp
                .le(vec![q(1, 1), q(1, 1)], q(1, 1))
                .le(vec![q(1, 1), q(0, 1)], q(1, 1))
                .le(vec![q(0, 1), q(1, 1)], q(1, 1))
                .le(vec![q(2, 1), q(2, 1)], q(2, 1));
        }
        let sol = solve_lp(&lp).unwrap();
        assert_eq!(sol.value, q(-1, 1));
        assert!(sol.verify(&lp));
    }

    #[test]
    fn redundant_equalities() {
        let lp = LinearProgram::new(2)
            .minimize(vec![q(1, 1), q(2, 1)])
            .nonnegative(0)
            .nonnegative(1)
            .eq(vec![q(1, 1), q(1, 1)], q(1, 1))
            .eq(vec![q(2, 1), q(2, 1)], q(2, 1));
        let sol = solve_lp(&lp).unwrap();
        assert_eq!(sol.value, q(1, 1));
        assert_eq!(sol.point, vec![q(1, 1), q(0, 1)]);
    }

    #[test]
    fn float_backend_agrees() {
        let lp = LinearProgram::new(2)
            .minimize(vec![Float(0.0), Float(1.0)])
            .le(vec![Float(1.0), Float(-1.0)], Float(0.0))
            .le(vec![Float(-1.0), Float(-1.0)], Float(0.0))
            .eq(vec![Float(1.0), Float(0.0)], Float(5.0 / 17.0));
        let sol = solve_lp(&lp).unwrap();
        assert!((sol.value.0 - 5.0 / 17.0).abs() < 1e-12);
    }
}
