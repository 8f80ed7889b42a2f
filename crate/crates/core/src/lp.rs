//! Exact two-phase simplex.
//!
//! Free variables are split into positive and negative parts; a row of the
//! form `-x_j <= 0` is recognised as a sign constraint and handled by not
//! splitting `x_j`. Pivoting follows Bland's rule. The optimum is moved to a
//! vertex of the original region (when it has one) before being returned.

use num_traits::{Signed, Zero};

use crate::error::{check_len, Result};
use crate::matrix::{RationalMatrix, RowBasis};
use crate::rational::{add_scaled, dot, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Unbounded,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpResult {
    pub status: LpStatus,
    pub optimal_value: Option<Rational>,
    pub basic_solution: Option<Vec<Rational>>,
}

impl LpResult {
    fn without_solution(status: LpStatus) -> Self {
        Self { status, optimal_value: None, basic_solution: None }
    }
}

/// Optimises `objective . x` over `{eq * x = eq_rhs, ineq * x <= ineq_rhs}`.
pub fn lp_solve(
    objective: &[Rational],
    sense: Sense,
    eq: &RationalMatrix,
    eq_rhs: &[Rational],
    ineq: &RationalMatrix,
    ineq_rhs: &[Rational],
) -> Result<LpResult> {
    let n = objective.len();
    if eq.rows() > 0 {
        check_len(n, eq.cols())?;
    }
    if ineq.rows() > 0 {
        check_len(n, ineq.cols())?;
    }
    check_len(eq.rows(), eq_rhs.len())?;
    check_len(ineq.rows(), ineq_rhs.len())?;

    let mut nonneg = vec![false; n];
    let mut sign_row = vec![false; ineq.rows()];
    for k in 0..ineq.rows() {
        if !ineq_rhs[k].is_zero() {
            continue;
        }
        let row = ineq.row(k);
        let mut nz = (0..n).filter(|&j| !row[j].is_zero());
        if let (Some(j), None) = (nz.next(), nz.next()) {
            if row[j].is_negative() {
                nonneg[j] = true;
                sign_row[k] = true;
            }
        }
    }

    // Column layout: per variable a positive part and, if free, a negative part.
    let mut pos_col = vec![0; n];
    let mut neg_col = vec![None; n];
    let mut width = 0;
    for j in 0..n {
        pos_col[j] = width;
        width += 1;
        if !nonneg[j] {
            neg_col[j] = Some(width);
            width += 1;
        }
    }
    let structural = width;
    let kept: Vec<usize> = (0..ineq.rows()).filter(|&k| !sign_row[k]).collect();
    width += kept.len();

    let expand = |row: &[Rational], out: &mut [Rational]| {
        for j in 0..n {
            if row[j].is_zero() {
                continue;
            }
            out[pos_col[j]] = row[j].clone();
            if let Some(c) = neg_col[j] {
                out[c] = -row[j].clone();
            }
        }
    };

    // Rows before artificials: (coefficients over structural+slack, rhs, basic slack).
    let mut raw: Vec<(Vec<Rational>, Rational, Option<usize>)> = Vec::new();
    for (i, rhs) in eq_rhs.iter().enumerate() {
        let mut coeffs = vec![Rational::zero(); width];
        expand(eq.row(i), &mut coeffs);
        raw.push((coeffs, rhs.clone(), None));
    }
    for (s, &k) in kept.iter().enumerate() {
        let mut coeffs = vec![Rational::zero(); width];
        expand(ineq.row(k), &mut coeffs);
        coeffs[structural + s] = Rational::from_integer(1.into());
        raw.push((coeffs, ineq_rhs[k].clone(), Some(structural + s)));
    }

    let first_art = width;
    let mut tableau = Tableau { rows: Vec::new(), basis: Vec::new(), width: 0 };
    let mut art_count = 0;
    for (_, rhs, slack) in &raw {
        if slack.is_none() || rhs.is_negative() {
            art_count += 1;
        }
    }
    tableau.width = width + art_count;
    let mut next_art = first_art;
    for (mut coeffs, mut rhs, slack) in raw {
        let negate = rhs.is_negative();
        if negate {
            for c in coeffs.iter_mut() {
                *c = -c.clone();
            }
            rhs = -rhs;
        }
        coeffs.resize(tableau.width, Rational::zero());
        let basic = match slack {
            Some(s) if !negate => s,
            _ => {
                coeffs[next_art] = Rational::from_integer(1.into());
                next_art += 1;
                next_art - 1
            }
        };
        coeffs.push(rhs);
        tableau.rows.push(coeffs);
        tableau.basis.push(basic);
    }

    // Phase one.
    let w = tableau.width;
    if art_count > 0 {
        let mut cost = vec![Rational::zero(); w + 1];
        for c in cost.iter_mut().take(w).skip(first_art) {
            *c = Rational::from_integer(1.into());
        }
        tableau.price(&mut cost);
        let banned = vec![false; w];
        let outcome = tableau.run(&mut cost, &banned);
        debug_assert!(outcome, "phase one is bounded below");
        if !cost[w].is_zero() {
            return Ok(LpResult::without_solution(LpStatus::Infeasible));
        }
        let mut drop = Vec::new();
        for r in 0..tableau.rows.len() {
            if tableau.basis[r] < first_art {
                continue;
            }
            match (0..first_art).find(|&j| !tableau.rows[r][j].is_zero()) {
                Some(j) => tableau.pivot(r, j, &mut cost),
                None => drop.push(r),
            }
        }
        for r in drop.into_iter().rev() {
            tableau.rows.remove(r);
            tableau.basis.remove(r);
        }
    }

    // Phase two.
    let signed = |c: &Rational| match sense {
        Sense::Minimize => c.clone(),
        Sense::Maximize => -c.clone(),
    };
    let mut cost = vec![Rational::zero(); w + 1];
    for j in 0..n {
        cost[pos_col[j]] = signed(&objective[j]);
        if let Some(c) = neg_col[j] {
            cost[c] = -signed(&objective[j]);
        }
    }
    tableau.price(&mut cost);
    let banned: Vec<bool> = (0..w).map(|j| j >= first_art).collect();
    if !tableau.run(&mut cost, &banned) {
        return Ok(LpResult::without_solution(LpStatus::Unbounded));
    }

    let mut values = vec![Rational::zero(); w];
    for (r, &b) in tableau.basis.iter().enumerate() {
        values[b] = tableau.rows[r][w].clone();
    }
    let mut x: Vec<Rational> = (0..n)
        .map(|j| {
            let mut v = values[pos_col[j]].clone();
            if let Some(c) = neg_col[j] {
                v -= &values[c];
            }
            v
        })
        .collect();
    x = purify(x, eq, ineq, ineq_rhs);
    let value = dot(objective, &x);
    Ok(LpResult { status: LpStatus::Optimal, optimal_value: Some(value), basic_solution: Some(x) })
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    /// Turns raw costs into reduced costs for the current basis.
    fn price(&self, cost: &mut [Rational]) {
        for (r, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            let f = cost[b].clone();
            for (c, a) in cost.iter_mut().zip(&self.rows[r]) {
                if !a.is_zero() {
                    *c -= &f * a;
                }
            }
        }
    }

    fn pivot(&mut self, r: usize, c: usize, cost: &mut [Rational]) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let prow = self.rows[r].clone();
        let nz: Vec<usize> = (0..prow.len()).filter(|&k| !prow[k].is_zero()).collect();
        let eliminate = |row: &mut Vec<Rational>| {
            if row[c].is_zero() {
                return;
            }
            let f = row[c].clone();
            for &k in &nz {
                row[k] -= &f * &prow[k];
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        let mut cost_row = cost.to_vec();
        eliminate(&mut cost_row);
        cost.clone_from_slice(&cost_row);
        self.basis[r] = c;
    }

    /// Minimises with Bland's rule; returns false when unbounded.
    fn run(&mut self, cost: &mut [Rational], banned: &[bool]) -> bool {
        let w = self.width;
        loop {
            let Some(enter) = (0..w).find(|&j| !banned[j] && cost[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[w] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, enter, cost);
        }
    }
}

/// Moves a feasible point along null directions of its active constraints
/// until those constraints have full rank. Objective-neutral at an optimum.
pub(crate) fn purify(
    mut x: Vec<Rational>,
    eq: &RationalMatrix,
    ineq: &RationalMatrix,
    ineq_rhs: &[Rational],
) -> Vec<Rational> {
    let n = x.len();
    loop {
        let mut active = RowBasis::new(n);
        for i in 0..eq.rows() {
            active.insert(eq.row(i));
        }
        let mut tight = vec![false; ineq.rows()];
        for k in 0..ineq.rows() {
            if dot(ineq.row(k), &x) == ineq_rhs[k] {
                tight[k] = true;
                active.insert(ineq.row(k));
            }
        }
        if active.rank() == n {
            return x;
        }
        let rows: Vec<Vec<Rational>> = (0..eq.rows())
            .map(|i| eq.row(i).to_vec())
            .chain((0..ineq.rows()).filter(|&k| tight[k]).map(|k| ineq.row(k).to_vec()))
            .collect();
        let direction = RationalMatrix::from_rows(n, rows)
            .expect("consistent widths")
            .kernel_basis()
            .swap_remove(0);
        let blocking = |d: &[Rational]| {
            let mut best: Option<Rational> = None;
            for k in (0..ineq.rows()).filter(|&k| !tight[k]) {
                let rate = dot(ineq.row(k), d);
                if rate.is_positive() {
                    let t = (&ineq_rhs[k] - dot(ineq.row(k), &x)) / rate;
                    if best.as_ref().is_none_or(|b| t < *b) {
                        best = Some(t);
                    }
                }
            }
            best
        };
        let neg: Vec<Rational> = direction.iter().map(|v| -v.clone()).collect();
        match (blocking(&direction), blocking(&neg)) {
            (Some(t), _) => x = add_scaled(&x, &t, &direction),
            (None, Some(t)) => x = add_scaled(&x, &t, &neg),
            (None, None) => return x,
        }
    }
}
