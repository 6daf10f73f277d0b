//! The suspension `Γ×ℝ ⇉ Γ₀×ℝ` of a twisted contact groupoid: the action
//! groupoid of `r` with `Ω̃ = d(e^sθ) + e^sω`, and the way back.

use super::{induced_base_structure, maps_agree, vars, Composable, GroupoidModel};
use crate::chart::ChartRef;
use crate::contact::detect_inverse_convention;
use crate::error::{GeomError, Result};
use crate::expr::{Expr, SampleConfig};
use crate::jacobi::poissonize;
use crate::linsolve;
use crate::numeric;
use crate::report::Report;
use crate::tensor::index::bit;
use crate::tensor::{Form, MultiVector, SmoothMap};

#[derive(Clone)]
pub struct SuspendedModel {
    pub model: GroupoidModel,
    pub total: ChartRef,
    pub base: ChartRef,
    pub alpha: SmoothMap,
    pub beta: SmoothMap,
    pub composable: ChartRef,
    pub pr1: SmoothMap,
    pub pr2: SmoothMap,
    pub mult: SmoothMap,
    pub big_omega: Form,
    pub omega0: Form,
    /// `∂s` on `Γ×ℝ`.
    pub z: MultiVector,
    /// `∂s` on `Γ₀×ℝ`.
    pub z0: MultiVector,
    pub report: Report,
}

/// Chart extended by `s`, named the way poissonization names it.
fn with_s(chart: &ChartRef) -> Result<ChartRef> {
    chart.extended(format!("{}+s", chart.name()), "s")
}

fn lift_expr(e: &Expr, ext: &ChartRef) -> Result<Expr> {
    e.substitute(&vars(ext, 0..e.nvars()), ext)
}

/// `(φ, last)` on the source chart extended by `s`.
fn lift_map(m: &SmoothMap, source: &ChartRef, target: &ChartRef, last: Expr) -> Result<SmoothMap> {
    let mut comps = m.components().iter().map(|e| lift_expr(e, source)).collect::<Result<Vec<_>>>()?;
    comps.push(last);
    SmoothMap::new(source, target, comps)
}

fn es(chart: &ChartRef) -> Expr {
    Expr::var(chart, chart.dim() - 1).exp().expect("affine exponent")
}

/// Charts, maps and forms of the suspension, without checks.
fn build(g: &GroupoidModel) -> Result<SuspendedModel> {
    let total = with_s(&g.total)?;
    let base = with_s(&g.base)?;
    let s = Expr::var(&total, total.dim() - 1);
    let r = lift_expr(&g.r, &total)?;
    let alpha = lift_map(&g.alpha, &total, &base, s.clone())?;
    let beta = lift_map(&g.beta, &total, &base, &s - &r)?;
    let c: &Composable = &g.composable;
    let comp = with_s(&c.chart)?;
    let s2 = Expr::var(&comp, comp.dim() - 1);
    let r_h = lift_expr(&c.pr2.pull(&g.r)?, &comp)?;
    let pr1 = lift_map(&c.pr1, &comp, &total, &s2 - &r_h)?;
    let pr2 = lift_map(&c.pr2, &comp, &total, s2.clone())?;
    let mult = lift_map(&c.mult, &comp, &total, s2)?;
    let e = es(&total);
    let big_omega = &g.theta.lift(&total).scale(&e).ext_d() + &g.omega.lift(&total).scale(&e);
    let omega0 = g.omega0.lift(&base).scale(&es(&base));
    let z = MultiVector::coordinate_field(&total, total.dim() - 1);
    let z0 = MultiVector::coordinate_field(&base, base.dim() - 1);
    Ok(SuspendedModel { model: g.clone(), total, base, alpha, beta, composable: comp, pr1, pr2, mult, big_omega, omega0, z, z0, report: Report::new("suspension") })
}

/// `Z(φ^a) = Z₀^a∘φ` for every target coordinate.
fn related(report: &mut Report, label: &str, m: &SmoothMap, z: &MultiVector, z0: &MultiVector, cfg: &SampleConfig) {
    let diffs = m
        .components()
        .iter()
        .enumerate()
        .map(|(a, c)| Ok((m.target().coord(a).to_string(), &z.apply(c) - &m.pull(z0.at(a))?)))
        .collect::<Result<Vec<_>>>();
    match diffs {
        Ok(d) => {
            report.all_zero(label, &d, cfg);
        }
        Err(e) => report.error(label, &e),
    }
}

/// The homogeneous twisted symplectic groupoid `(Ω̃, dω̃₀, (∂s, ∂s))` with its
/// checks recorded in the returned model's report.
pub fn suspend(g: &GroupoidModel, cfg: &SampleConfig) -> Result<SuspendedModel> {
    let mut m = build(g)?;
    m.report = check_suspension(&m, cfg);
    Ok(m)
}

/// The identities of a suspended model, whether built here or given by hand.
pub fn check_suspension(m: &SuspendedModel, cfg: &SampleConfig) -> Report {
    let mut report = Report::new("suspension");
    let dim = m.total.dim();
    numeric::check_rank(&mut report, "Ω̃ nondegenerate", &numeric::form_matrix(&m.big_omega), dim, cfg);
    let d0 = m.omega0.ext_d();
    match m.alpha.pullback(&d0).and_then(|a| Ok(&(&m.big_omega.ext_d() - &a) + &m.beta.pullback(&d0)?)) {
        Ok(c) => {
            report.tensor_zero("dΩ̃ − α̃^*dω̃₀ + β̃^*dω̃₀", &c, cfg);
        }
        Err(e) => report.error("dΩ̃ − α̃^*dω̃₀ + β̃^*dω̃₀", &e),
    }
    maps_agree(&mut report, "α̃∘pr̃₁ = β̃∘pr̃₂", m.pr1.then(&m.alpha), m.pr2.then(&m.beta), cfg);
    maps_agree(&mut report, "β̃∘m̃ = β̃∘pr̃₁", m.mult.then(&m.beta), m.pr1.then(&m.beta), cfg);
    maps_agree(&mut report, "α̃∘m̃ = α̃∘pr̃₂", m.mult.then(&m.alpha), m.pr2.then(&m.alpha), cfg);
    let pb = |f: &SmoothMap| f.pullback(&m.big_omega);
    match (pb(&m.mult), pb(&m.pr1), pb(&m.pr2)) {
        (Ok(a), Ok(b), Ok(c)) => {
            report.tensor_zero("m̃^*Ω̃ − pr̃₁^*Ω̃ − pr̃₂^*Ω̃", &(&(&a - &b) - &c), cfg);
        }
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => report.error("m̃^*Ω̃ − pr̃₁^*Ω̃ − pr̃₂^*Ω̃", &e),
    }
    report.tensor_zero("L_{∂s}Ω̃ − Ω̃", &(&m.big_omega.lie(&m.z) - &m.big_omega), cfg);
    report.tensor_zero("i(∂s)dω̃₀ − ω̃₀", &(&d0.interior(&m.z0) - &m.omega0), cfg);
    related(&mut report, "Tα̃∘∂s = ∂s∘α̃", &m.alpha, &m.z, &m.z0, cfg);
    related(&mut report, "Tβ̃∘∂s = ∂s∘β̃", &m.beta, &m.z, &m.z0, cfg);
    report
}

/// Restriction to `s = 0` of a form that is basic for `∂s`.
fn basic_at_zero(f: &Form, z: &MultiVector, target: &ChartRef, what: &str) -> Result<Form> {
    if f.degree() > 0 && !f.interior(z).is_zero() {
        return Err(GeomError::Projectability { component: what.into(), coord: "s".into() });
    }
    if !f.lie(z).is_zero() {
        return Err(GeomError::Projectability { component: what.into(), coord: "s".into() });
    }
    let mut subs = vars(target, 0..target.dim());
    subs.push(Expr::zero(target));
    SmoothMap::new(target, f.chart(), subs)?.pullback(f)
}

/// Recovers `(θ, ω, r)` from a suspended model: `θ = e^{−s}i(∂s)Ω̃`,
/// `ω = e^{−s}Ω̃ − ds∧θ − dθ`, `r = s − β̃^s`, `ω₀ = e^{−s}ω̃₀`.
pub fn unsuspend(m: &SuspendedModel) -> Result<GroupoidModel> {
    let g = &m.model;
    let ems = (-Expr::var(&m.total, m.total.dim() - 1)).exp()?;
    let theta_up = m.big_omega.interior(&m.z).scale(&ems);
    let ds = Form::basis(&m.total, &[m.total.dim() - 1]);
    let omega_up = &(&m.big_omega.scale(&ems) - &ds.wedge(&theta_up)) - &theta_up.ext_d();
    let theta = basic_at_zero(&theta_up, &m.z, &g.total, "θ")?;
    let omega = basic_at_zero(&omega_up, &m.z, &g.total, "ω")?;
    let s = Expr::var(&m.total, m.total.dim() - 1);
    let last = m.beta.components().last().expect("β̃ has an s component");
    let r = basic_at_zero(&Form::scalar(&s - last), &m.z, &g.total, "r")?.as_scalar().clone();
    let ems0 = (-Expr::var(&m.base, m.base.dim() - 1)).exp()?;
    let omega0 = basic_at_zero(&m.omega0.scale(&ems0), &m.z0, &g.base, "ω₀")?;
    Ok(GroupoidModel { r, theta, omega, omega0, ..g.clone() })
}

/// The bivector `Λ` with `i(Λ^#ζ)Ω = σζ` for every covector `ζ`.
pub fn invert_two_form(omega: &Form, sigma: i32) -> Result<(MultiVector, Vec<String>)> {
    let chart = omega.chart();
    let n = chart.dim();
    let m = numeric::form_matrix(omega);
    let a: Vec<Vec<Expr>> = (0..n).map(|j| (0..n).map(|i| m[i][j].clone()).collect()).collect();
    let rhs: Vec<Vec<Expr>> = (0..n)
        .map(|k| (0..n).map(|j| if j == k { Expr::int(chart, sigma as i64) } else { Expr::zero(chart) }).collect())
        .collect();
    let sol = linsolve::solve(&a, &rhs)?;
    let mut lambda = MultiVector::zero(chart, 2);
    for k in 0..n {
        for i in k + 1..n {
            if sol.x[k][i] != -&sol.x[i][k] {
                return Err(GeomError::Inconsistent(format!("inverse of Ω is not antisymmetric at ({}, {})", chart.coord(k), chart.coord(i))));
            }
            lambda.set(bit(k) | bit(i), sol.x[k][i].clone());
        }
    }
    Ok((lambda, sol.assumptions))
}

/// Poissonization of the induced base structure against `α̃_*` of the
/// inverse of `Ω̃`, componentwise.
pub fn base_coincidence_check(g: &GroupoidModel, cfg: &SampleConfig) -> Result<Report> {
    let h = poissonize(&induced_base_structure(g)?);
    let m = build(g)?;
    let sigma = detect_inverse_convention();
    let mut report = Report::new("base coincidence");
    report.assume(format!("inverse convention i(Λ̃^#ζ)Ω̃ = {}ζ", if sigma < 0 { "−" } else { "" }));
    let (lt, pivots) = invert_two_form(&m.big_omega, sigma)?;
    for p in pivots {
        report.assume(format!("pivot {p}"));
    }
    let n = g.base.dim();
    let mut section = vec![Expr::zero(&m.base); m.total.dim()];
    for (i, e) in g.eps.components().iter().enumerate() {
        section[i] = lift_expr(e, &m.base)?;
    }
    section[m.total.dim() - 1] = Expr::var(&m.base, n);
    let alpha = m.alpha.clone().with_section(section)?;
    let pushed = alpha.pushforward(&lt)?;
    report.tensor_eq("α̃_*Λ̃ = e^{−s}(Λ₀ + ∂s∧E₀)", &pushed, &h.lambda.rechart(&m.base), cfg);
    report.tensor_eq("ω̃₀ = e^sω₀", &m.omega0, &h.omega.rechart(&m.base), cfg);
    report.tensor_eq("Z₀ = ∂s", &m.z0, &h.z.rechart(&m.base), cfg);
    Ok(report)
}
