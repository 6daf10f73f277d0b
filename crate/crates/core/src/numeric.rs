//! Sample-point checks for conditions that are not identities: nonvanishing
//! and matrix rank.

use nalgebra::DMatrix;

use crate::error::Result;
use crate::expr::{Expr, SampleConfig};
use crate::report::Report;
use crate::tensor::Form;

/// Smallest absolute value accepted as "nonvanishing" at a sample point.
pub const NONVANISHING_EPS: f64 = 1e-6;

/// Relative singular-value threshold for numeric rank.
pub const RANK_TOL: f64 = 1e-8;

/// Minimum of `|e|` over the sample points avoiding `e`'s denominator, with the
/// point where it is attained.
pub fn min_abs(e: &Expr, cfg: &SampleConfig) -> Result<(f64, Vec<f64>)> {
    let points = cfg.points_avoiding(e.nvars(), &[e]);
    let mut best = (f64::INFINITY, vec![]);
    for p in points {
        let v = e.eval(&p)?.abs();
        if v < best.0 {
            best = (v, p);
        }
    }
    Ok(best)
}

/// Records whether `e` stays away from zero at every sample.
pub fn check_nonvanishing(report: &mut Report, label: &str, e: &Expr, cfg: &SampleConfig) -> bool {
    if let Some(a) = e.nonvanishing_assumption().filter(|_| !e.is_zero()) {
        report.assume(a);
    }
    if let Some(a) = e.denominator_assumption() {
        report.assume(a);
    }
    match min_abs(e, cfg) {
        Ok((m, p)) => {
            let ok = m > NONVANISHING_EPS;
            report.numeric(label, ok, m, (!ok).then_some(p), Some(format!("min |{e}| over samples")))
        }
        Err(err) => {
            report.error(label, &err);
            false
        }
    }
}

pub fn eval_matrix(m: &[Vec<Expr>], point: &[f64]) -> Result<DMatrix<f64>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = DMatrix::zeros(rows, cols);
    for (i, row) in m.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            out[(i, j)] = e.eval(point)?;
        }
    }
    Ok(out)
}

pub fn numeric_rank(m: &DMatrix<f64>) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > RANK_TOL * top.max(1.0)).count()
}

/// The full antisymmetric matrix `Ω(∂_i, ∂_j)` of a two-form.
pub fn form_matrix(omega: &Form) -> Vec<Vec<Expr>> {
    let chart = omega.chart();
    let n = chart.dim();
    (0..n).map(|i| (0..n).map(|j| if i == j { Expr::zero(chart) } else { omega.component(&[i, j]) }).collect()).collect()
}

/// Records the numeric rank of a matrix of expressions at every sample, failing
/// at the first point where it differs from `expected`.
pub fn check_rank(report: &mut Report, label: &str, m: &[Vec<Expr>], expected: usize, cfg: &SampleConfig) -> bool {
    let n = m.first().and_then(|r| r.first()).map_or(0, |e| e.nvars());
    let dens: Vec<&Expr> = m.iter().flatten().collect();
    for e in &dens {
        if let Some(a) = e.denominator_assumption() {
            report.assume(a);
        }
    }
    let points = cfg.points_avoiding(n, &dens);
    let mut min_det = f64::INFINITY;
    for p in &points {
        let mat = match eval_matrix(m, p) {
            Ok(mat) => mat,
            Err(err) => {
                report.error(label, &err);
                return false;
            }
        };
        let r = numeric_rank(&mat);
        if mat.is_square() {
            min_det = min_det.min(mat.determinant().abs());
        }
        if r != expected {
            return report.numeric(label, false, r as f64, Some(p.clone()), Some(format!("numeric rank {r}, expected {expected}")));
        }
    }
    let detail = min_det.is_finite().then(|| format!("min |det| {min_det:.6e}"));
    report.numeric(label, true, 0.0, None, detail)
}
