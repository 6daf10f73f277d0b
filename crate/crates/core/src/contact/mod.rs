//! Twisted contact structures `(θ, ω)`: `θ∧(dθ+ω)^n` nowhere zero on a chart of
//! dimension `2n+1`. The Reeb field and the bivector are solved for exactly.

use crate::chart::{Chart, ChartRef};
use crate::error::{GeomError, Result};
use crate::expr::{Expr, SampleConfig};
use crate::jacobi::{poissonize, TwistedJacobi};
use crate::linsolve;
use crate::numeric;
use crate::report::Report;
use crate::tensor::index::bit;
use crate::tensor::{sharp_vector, Form, MultiVector};

#[derive(Clone, Debug, PartialEq)]
pub struct TwistedContact {
    pub theta: Form,
    pub omega: Form,
}

/// Reeb field and bivector with the pivot hypotheses used to find them.
#[derive(Clone, Debug)]
pub struct ContactData {
    pub e: MultiVector,
    pub lambda: MultiVector,
    pub assumptions: Vec<String>,
}

impl TwistedContact {
    pub fn new(theta: Form, omega: Form) -> Result<TwistedContact> {
        let chart = theta.chart().clone();
        if chart.dim() % 2 == 0 {
            return Err(GeomError::EvenDimension(chart.dim()));
        }
        if theta.degree() != 1 || omega.degree() != 2 {
            return Err(GeomError::Precondition("θ must be a one-form and ω a two-form".into()));
        }
        if omega.chart().coords() != chart.coords() {
            return Err(GeomError::ChartMismatch { expected: chart.name().to_string(), found: omega.chart().name().to_string() });
        }
        let omega = omega.rechart(&chart);
        Ok(TwistedContact { theta, omega })
    }

    /// Reads an almost-cosymplectic pair `(θ, Θ)` as the twisted contact
    /// structure `(θ, Θ − dθ)`.
    pub fn from_almost_cosymplectic(theta: Form, big_theta: Form) -> Result<TwistedContact> {
        let omega = &big_theta.rechart(theta.chart()) - &theta.ext_d();
        TwistedContact::new(theta, omega)
    }

    pub fn chart(&self) -> &ChartRef {
        self.theta.chart()
    }

    /// `n` for a chart of dimension `2n+1`.
    pub fn half_rank(&self) -> usize {
        self.chart().dim() / 2
    }

    /// `dθ + ω`.
    pub fn big_omega(&self) -> Form {
        &self.theta.ext_d() + &self.omega
    }

    /// Coefficient of `θ∧(dθ+ω)^n` on `dx_1∧…∧dx_{2n+1}`.
    pub fn top_coefficient(&self) -> Expr {
        let big = self.big_omega();
        let mut top = self.theta.clone();
        for _ in 0..self.half_rank() {
            top = top.wedge(&big);
        }
        let full = bit(self.chart().dim()) - 1;
        top.get(full).clone()
    }
}

/// Nonvanishing of `θ∧(dθ+ω)^n` and rank `2n` of `dθ+ω` at the samples.
pub fn check_contact(c: &TwistedContact, cfg: &SampleConfig) -> Report {
    let mut report = Report::new("twisted contact volume");
    let top = c.top_coefficient();
    if top.nonvanishing_assumption().is_none() && !top.is_zero() {
        report.note(format!("θ∧(dθ+ω)^n = {top} vol, a constant times an exponential, never zero"));
    } else {
        report.note(format!("θ∧(dθ+ω)^n = {top} vol"));
    }
    numeric::check_nonvanishing(&mut report, "θ∧(dθ+ω)^n ≠ 0", &top, cfg);
    let n = c.half_rank();
    numeric::check_rank(&mut report, "rank dθ+ω = 2n", &numeric::form_matrix(&c.big_omega()), 2 * n, cfg);
    report
}

/// Coefficient rows of `θ(V) = ·` and `i(V)(dθ+ω) = ·` in the unknowns `V^i`.
fn system(c: &TwistedContact) -> Vec<Vec<Expr>> {
    let m = numeric::form_matrix(&c.big_omega());
    let dim = c.chart().dim();
    let mut rows = vec![(0..dim).map(|i| c.theta.at(i).clone()).collect::<Vec<_>>()];
    for j in 0..dim {
        rows.push((0..dim).map(|i| m[i][j].clone()).collect());
    }
    rows
}

/// `i(E)θ = 1`, `i(E)(dθ+ω) = 0`.
pub fn reeb(c: &TwistedContact) -> Result<MultiVector> {
    Ok(solve_reeb(c)?.0)
}

fn solve_reeb(c: &TwistedContact) -> Result<(MultiVector, Vec<String>)> {
    let chart = c.chart();
    let dim = chart.dim();
    let mut rhs = vec![Expr::zero(chart); dim + 1];
    rhs[0] = Expr::one(chart);
    let sol = linsolve::solve(&system(c), &[rhs])?;
    Ok((MultiVector::vector(chart, sol.x[0].clone()), sol.assumptions))
}

/// The bivector with `Λ^#θ = 0` and `i(Λ^#ζ)(dθ+ω) = −(ζ − ⟨ζ,E⟩θ)`.
pub fn contact_bivector(c: &TwistedContact) -> Result<MultiVector> {
    Ok(solve(c)?.lambda)
}

/// Reeb field and bivector; each column `Λ^#(dx_k)` is one right-hand side.
pub fn solve(c: &TwistedContact) -> Result<ContactData> {
    let (e, mut assumptions) = solve_reeb(c)?;
    let chart = c.chart();
    let dim = chart.dim();
    let rhs: Vec<Vec<Expr>> = (0..dim)
        .map(|k| {
            let mut b = vec![Expr::zero(chart)];
            for j in 0..dim {
                let delta = if j == k { Expr::one(chart) } else { Expr::zero(chart) };
                b.push(&(e.at(k) * c.theta.at(j)) - &delta);
            }
            b
        })
        .collect();
    let sol = linsolve::solve(&system(c), &rhs)?;
    assumptions.extend(sol.assumptions);
    assumptions.sort();
    assumptions.dedup();
    let mut lambda = MultiVector::zero(chart, 2);
    for k in 0..dim {
        for j in k + 1..dim {
            let (kj, jk) = (&sol.x[k][j], &sol.x[j][k]);
            if *kj != -jk {
                return Err(GeomError::Inconsistent(format!(
                    "Λ^{{{}{}}} = {kj} but Λ^{{{}{}}} = {jk}",
                    chart.coord(k),
                    chart.coord(j),
                    chart.coord(j),
                    chart.coord(k)
                )));
            }
            lambda.set(bit(k) | bit(j), kj.clone());
        }
    }
    Ok(ContactData { e, lambda, assumptions })
}

/// `(Λ, E, ω)` from the contact data.
pub fn jacobi_from_contact(c: &TwistedContact) -> Result<TwistedJacobi> {
    let d = solve(c)?;
    TwistedJacobi::new(d.lambda, d.e, c.omega.clone())
}

/// Re-substitutes `E` and `Λ` into their defining identities.
pub fn check_reeb_bivector(c: &TwistedContact, d: &ContactData, cfg: &SampleConfig) -> Report {
    let mut report = Report::new("Reeb field and bivector");
    for a in &d.assumptions {
        report.assume(format!("pivot {a}"));
    }
    let chart = c.chart();
    let big = c.big_omega();
    report.zero("i(E)θ − 1", &(&c.theta.pair(&d.e) - &Expr::one(chart)), cfg);
    report.tensor_zero("i(E)(dθ+ω)", &big.interior(&d.e), cfg);
    report.tensor_zero("Λ^#θ", &sharp_vector(&d.lambda, &c.theta), cfg);
    for k in 0..chart.dim() {
        let zeta = Form::basis(chart, &[k]);
        let v = sharp_vector(&d.lambda, &zeta);
        let target = &zeta - &c.theta.scale(d.e.at(k));
        report.tensor_zero(format!("i(Λ^#d{k})(dθ+ω) + d{k} − E^{k}θ", k = chart.coord(k)), &(&big.interior(&v) + &target), cfg);
        report.zero(format!("θ(Λ^#d{})", chart.coord(k)), &c.theta.pair(&v), cfg);
    }
    report
}

/// Sign `σ` with `i(Λ̃^#ζ)Ω̃ = σζ` on the poissonization of `θ = dz` on ℝ,
/// where `Ω̃ = e^s ds∧dz = dp∧dx` for `p = e^s`, `x = z`.
pub fn detect_inverse_convention() -> i32 {
    let line = Chart::new("R", &["z"]).expect("chart");
    let c = TwistedContact::new(Form::basis(&line, &[0]), Form::zero(&line, 2)).expect("contact line");
    let j = jacobi_from_contact(&c).expect("contact line solves");
    let h = poissonize(&j);
    let big = suspended_form(&c, h.lambda.chart());
    let ds = Form::basis(h.lambda.chart(), &[1]);
    let image = big.interior(&sharp_vector(&h.lambda, &ds));
    if image == ds {
        1
    } else if image == -&ds {
        -1
    } else {
        0
    }
}

/// `Ω̃ = d(e^s θ) + e^s ω` on the chart extended by `s` (last coordinate).
pub fn suspended_form(c: &TwistedContact, ext: &ChartRef) -> Form {
    let s = ext.dim() - 1;
    let es = Expr::var(ext, s).exp().expect("affine exponent");
    &c.theta.lift(ext).scale(&es).ext_d() + &c.omega.lift(ext).scale(&es)
}

/// `Λ̃` of the poissonization inverts `Ω̃ = d(e^sθ) + e^sω` (with the detected
/// sign), `Ω̃` is nondegenerate, and `L_{∂s}Λ̃ = −Λ̃`.
pub fn contact_poissonization_check(c: &TwistedContact, cfg: &SampleConfig) -> Result<Report> {
    let j = jacobi_from_contact(c)?;
    let h = poissonize(&j);
    let ext = h.lambda.chart().clone();
    let big = suspended_form(c, &ext);
    let sigma = detect_inverse_convention();
    let mut report = Report::new("contact poissonization");
    if sigma == 0 {
        report.error("inverse convention", &GeomError::Precondition("no consistent sign on dp∧dx".into()));
        return Ok(report);
    }
    let sign = if sigma < 0 { "−" } else { "+" };
    report.assume(format!("inverse convention i(Λ̃^#ζ)Ω̃ = {sign}ζ, detected on dp∧dx"));
    for k in 0..ext.dim() {
        let zeta = Form::basis(&ext, &[k]);
        let image = big.interior(&sharp_vector(&h.lambda, &zeta));
        let residual = if sigma < 0 { &image + &zeta } else { &image - &zeta };
        let op = if sigma < 0 { "+" } else { "−" };
        report.tensor_zero(format!("i(Λ̃^#d{k})Ω̃ {op} d{k}", k = ext.coord(k)), &residual, cfg);
    }
    numeric::check_rank(&mut report, "Ω̃ nondegenerate", &numeric::form_matrix(&big), ext.dim(), cfg);
    report.tensor_zero("L_{∂s}Λ̃ + Λ̃", &(&h.lambda.lie(&h.z) + &h.lambda), cfg);
    Ok(report)
}

#[cfg(test)]
mod tests;
