//! Fraction-free (Bareiss) elimination over expressions.

use crate::error::{GeomError, Result};
use crate::expr::Expr;

/// Solutions of `A x = b_r` for every right-hand side, plus the nonvanishing
/// hypotheses on the pivots used.
#[derive(Clone, Debug)]
pub struct Solution {
    /// `x[r][j]`: unknown `j` for right-hand side `r`.
    pub x: Vec<Vec<Expr>>,
    pub assumptions: Vec<String>,
}

/// Solves the overdetermined system `A x = b` (`m ≥ n` rows) for each column of
/// `rhs` (`rhs[r][i]` is row `i` of the r-th right-hand side). Rows are first
/// cleared of denominators, then eliminated with Bareiss' exact divisions; the
/// remaining `m − n` rows must reduce to zero on every right-hand side.
pub fn solve(a: &[Vec<Expr>], rhs: &[Vec<Expr>]) -> Result<Solution> {
    let m = a.len();
    if m == 0 {
        return Err(GeomError::Singular("empty system".into()));
    }
    let n = a[0].len();
    if m < n {
        return Err(GeomError::Singular(format!("{m} equations for {n} unknowns")));
    }
    let r = rhs.len();
    if rhs.iter().any(|b| b.len() != m) || a.iter().any(|row| row.len() != n) {
        return Err(GeomError::Precondition("ragged linear system".into()));
    }
    let mut rows: Vec<Vec<Expr>> = (0..m)
        .map(|i| {
            let mut row = a[i].clone();
            row.extend(rhs.iter().map(|b| b[i].clone()));
            clear_denominators(row)
        })
        .collect();

    let mut assumptions = vec![];
    let chart = a[0][0].chart().clone();
    let mut prev = Expr::one(&chart);
    for k in 0..n {
        let pivot = (k..m)
            .filter(|&i| !rows[i][k].is_zero())
            .min_by_key(|&i| rows[i][k].size())
            .ok_or_else(|| GeomError::Singular(format!("no pivot for unknown {k}")))?;
        rows.swap(k, pivot);
        if let Some(s) = rows[k][k].nonvanishing_assumption() {
            assumptions.push(s);
        }
        for i in k + 1..m {
            let lead = rows[i][k].clone();
            for j in k + 1..n + r {
                let v = &(&rows[k][k] * &rows[i][j]) - &(&lead * &rows[k][j]);
                rows[i][j] = &v / &prev;
            }
            rows[i][k] = Expr::zero(&chart);
        }
        prev = rows[k][k].clone();
    }
    for row in &rows[n..] {
        if let Some(bad) = row[n..].iter().find(|e| !e.is_zero()) {
            return Err(GeomError::Inconsistent(format!("leftover equation reduces to {bad} = 0")));
        }
    }

    let mut x = Vec::with_capacity(r);
    for c in 0..r {
        let mut sol = vec![Expr::zero(&chart); n];
        for i in (0..n).rev() {
            let mut acc = rows[i][n + c].clone();
            for j in i + 1..n {
                if !rows[i][j].is_zero() && !sol[j].is_zero() {
                    acc = &acc - &(&rows[i][j] * &sol[j]);
                }
            }
            sol[i] = &acc / &rows[i][i];
        }
        x.push(sol);
    }
    assumptions.sort();
    assumptions.dedup();
    Ok(Solution { x, assumptions })
}

/// Multiplies a row by the product of its distinct denominators.
fn clear_denominators(row: Vec<Expr>) -> Vec<Expr> {
    let mut dens: Vec<Expr> = vec![];
    for e in &row {
        let d = e.denominator();
        if !d.is_one() && !dens.contains(&d) {
            dens.push(d);
        }
    }
    if dens.is_empty() {
        return row;
    }
    let prod = dens.into_iter().reduce(|a, b| &a * &b).unwrap();
    row.into_iter().map(|e| &e * &prod).collect()
}
