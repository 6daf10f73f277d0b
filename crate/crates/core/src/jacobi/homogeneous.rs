//! Poissonization, homogeneous twisted Poisson structures and the two
//! projections back to lower dimension, plus the cotangent construction.

use super::{bracket, check_twisted_jacobi, HomTwistedPoisson, TwistedJacobi, TwistedPoisson};
use crate::chart::{Chart, ChartRef};
use crate::error::{GeomError, Result};
use crate::expr::{Expr, SampleConfig, Q};
use crate::numeric;
use crate::report::Report;
use crate::tensor::index::bit;
use crate::tensor::{sharp, sharp_vector, Form, MultiVector, SmoothMap};

/// `Λ̃ = e^{−s}(Λ + ∂s∧E)`, `ω̃ = e^s ω`, `Z = ∂s` on the chart extended by `s`.
pub fn poissonize(j: &TwistedJacobi) -> HomTwistedPoisson {
    let chart = j.chart();
    let ext = chart.extended(format!("{}+s", chart.name()), "s").expect("extended chart");
    let s = ext.dim() - 1;
    let es = Expr::var(&ext, s).exp().expect("affine exponent");
    let ems = (-Expr::var(&ext, s)).exp().expect("affine exponent");
    let ds = MultiVector::coordinate_field(&ext, s);
    let lambda = (&j.lambda.lift(&ext) + &ds.wedge(&j.e.lift(&ext))).scale(&ems);
    HomTwistedPoisson { lambda, omega: j.omega.lift(&ext).scale(&es), z: ds }
}

/// `½[Λ,Λ] − Λ^#(dω)`, `L_ZΛ + Λ`, `i(Z)dω − ω`, and the consequences
/// `L_Zω − ω`, `i(Z)ω`.
pub fn check_homogeneous(h: &HomTwistedPoisson, cfg: &SampleConfig) -> Report {
    let mut report = Report::new("homogeneous twisted Poisson");
    let half = Q::new(1.into(), 2.into());
    let d_omega = h.omega.ext_d();
    let ll = h.lambda.schouten(&h.lambda).expect("bivector bracket").scale_q(&half);
    report.tensor_zero("½[Λ,Λ] − Λ^#(dω)", &(&ll - &sharp(&h.lambda, &d_omega)), cfg);
    report.tensor_zero("L_ZΛ + Λ", &(&h.lambda.lie(&h.z) + &h.lambda), cfg);
    report.tensor_zero("i(Z)dω − ω", &(&d_omega.interior(&h.z) - &h.omega), cfg);
    report.tensor_zero("L_Zω − ω", &(&h.omega.lie(&h.z) - &h.omega), cfg);
    report.tensor_zero("i(Z)ω", &h.omega.interior(&h.z), cfg);
    report
}

/// The quotient chart without coordinate `c`, the projection onto it, and the
/// inclusion of the slice `c = value`.
fn slice_maps(chart: &ChartRef, c: usize, value: &Q) -> Result<(ChartRef, SmoothMap, SmoothMap)> {
    let base: ChartRef = chart.without(format!("{}/{}", chart.name(), chart.coord(c)), c)?;
    let keep: Vec<usize> = (0..chart.dim()).filter(|&i| i != c).collect();
    let proj = SmoothMap::coordinate_projection(chart, &base, &keep, &[(c, Expr::constant(&base, value.clone()))])?;
    let inclusion = SmoothMap::new(&base, chart, proj.section().expect("projection section").to_vec())?;
    Ok((base, proj, inclusion))
}

/// Restricts a form that is basic for `∂/∂x_c` to the slice, or names the
/// offending component.
fn basic_restriction(omega: &Form, c: usize, inclusion: &SmoothMap) -> Result<Form> {
    let coord = omega.chart().coord(c).to_string();
    for (mask, e) in omega.nonzero() {
        if mask & bit(c) != 0 || e.depends_on(c) {
            return Err(GeomError::Projectability { component: omega.key(mask), coord });
        }
    }
    inclusion.pullback(omega)
}

fn straightened(z: &MultiVector, what: &str) -> Result<usize> {
    z.as_coordinate_field().ok_or_else(|| GeomError::NotStraightened(format!("{what} = {z}")))
}

/// The twisted Jacobi structure induced on the slice `c = value`, where
/// `Z = ∂/∂x_c`: `Λ₀ = ϖ_*(aΛ)`, `E₀ = ϖ_*(Λ^#da)`, `ω₀ = (ω/a)|slice`. The
/// report holds the identities of the result and the bracket compatibility
/// `{a ϖ*f₀, a ϖ*g₀} = a ϖ*{f₀,g₀}₀` on coordinate functions and `1`.
pub fn project_homogeneous(h: &HomTwistedPoisson, c: usize, value: &Q, a: &Expr, cfg: &SampleConfig) -> Result<(TwistedJacobi, Report)> {
    let chart = h.lambda.chart().clone();
    if straightened(&h.z, "Z")? != c {
        return Err(GeomError::NotStraightened(format!("Z = {} is not ∂/∂{}", h.z, chart.coord(c))));
    }
    let a = a.rechart(&chart);
    if a.fix_coordinate(c, value)? != Expr::one(&chart) {
        return Err(GeomError::Precondition(format!("a = {a} is not 1 on the slice")));
    }
    if h.z.apply(&a) != a {
        return Err(GeomError::Precondition(format!("a = {a} is not homogeneous of degree one")));
    }
    let (base, proj, inclusion) = slice_maps(&chart, c, value)?;
    let lambda0 = proj.pushforward(&h.lambda.scale(&a))?;
    let e0 = proj.pushforward(&sharp_vector(&h.lambda, &Form::exact(&a)))?;
    let omega0 = basic_restriction(&h.omega.scale(&a.recip()?), c, &inclusion)?;
    let j0 = TwistedJacobi::new(lambda0, e0, omega0)?;

    let mut report = check_twisted_jacobi(&j0, cfg);
    report.name = "projection of a homogeneous twisted Poisson structure".into();
    let poisson = TwistedJacobi { lambda: h.lambda.clone(), e: MultiVector::zero(&chart, 1), omega: h.omega.clone() };
    let mut funcs: Vec<(String, Expr)> = (0..base.dim()).map(|i| (base.coord(i).to_string(), Expr::var(&base, i))).collect();
    funcs.push(("1".into(), Expr::one(&base)));
    for p in 0..funcs.len() {
        for q in p + 1..funcs.len() {
            let (f0, g0) = (&funcs[p].1, &funcs[q].1);
            let f = &a * &proj.pull(f0)?;
            let g = &a * &proj.pull(g0)?;
            let up = bracket(&poisson, &f, &g);
            let down = &a * &proj.pull(&bracket(&j0, f0, g0))?;
            report.zero(format!("bracket compatibility ({}, {})", funcs[p].0, funcs[q].0), &(&up - &down), cfg);
        }
    }
    Ok((j0, report))
}

/// Result of projecting a twisted Jacobi structure along `E = ∂/∂x_c`.
#[derive(Clone, Debug)]
pub struct EProjection {
    pub poisson: TwistedPoisson,
    pub omega0: Form,
    pub z0: MultiVector,
    /// Whether `ω₀ = dω₀(Z₀,·,·)`.
    pub homogeneous: bool,
    pub report: Report,
}

/// The exact twisted Poisson structure `(Λ₀, dω₀)` on the slice `c = value`
/// with `Z₀ = ϖ_*Λ^#(dx_c)`, checked against
/// `L_{Z₀}Λ₀ = −Λ₀ − Λ₀^#(dω₀(Z₀,·,·) − ω₀)`.
pub fn project_along_e(j: &TwistedJacobi, c: usize, value: &Q, cfg: &SampleConfig) -> Result<EProjection> {
    let chart = j.chart().clone();
    if straightened(&j.e, "E")? != c {
        return Err(GeomError::NotStraightened(format!("E = {} is not ∂/∂{}", j.e, chart.coord(c))));
    }
    let ev = j.e.schouten(&j.lambda)?;
    if let Some((mask, _)) = ev.nonzero().first() {
        return Err(GeomError::Projectability { component: format!("[E,Λ] {}", ev.key(*mask)), coord: chart.coord(c).to_string() });
    }
    let (_, proj, inclusion) = slice_maps(&chart, c, value)?;
    let lambda0 = proj.pushforward(&j.lambda)?;
    let omega0 = basic_restriction(&j.omega, c, &inclusion)?;
    let z0 = proj.pushforward(&sharp_vector(&j.lambda, &Form::basis(&chart, &[c])))?;
    let phi = omega0.ext_d();

    let mut report = Report::new("projection along E");
    report.note("the φ₀ in the closing display of the projection argument is read as dω₀");
    let half = Q::new(1.into(), 2.into());
    let ll = lambda0.schouten(&lambda0)?.scale_q(&half);
    report.tensor_zero("½[Λ₀,Λ₀] − Λ₀^#(dω₀)", &(&ll - &sharp(&lambda0, &phi)), cfg);
    let iz = phi.interior(&z0);
    let rhs = &(-&lambda0) - &sharp(&lambda0, &(&iz - &omega0));
    report.tensor_zero("L_{Z₀}Λ₀ + Λ₀ + Λ₀^#(dω₀(Z₀,·,·) − ω₀)", &(&lambda0.lie(&z0) - &rhs), cfg);
    let homogeneous = (&iz - &omega0).is_zero();
    report.note(format!("ω₀ {} dω₀(Z₀,·,·): {}", if homogeneous { "=" } else { "≠" }, if homogeneous { "homogeneous" } else { "not homogeneous" }));
    Ok(EProjection { poisson: TwistedPoisson { lambda: lambda0, phi }, omega0, z0, homogeneous, report })
}

/// The twisted symplectic cone on `T*M` of a twisted Poisson structure.
#[derive(Clone, Debug)]
pub struct CotangentModel {
    pub chart: ChartRef,
    pub theta: Form,
    pub omega: Form,
    pub z: MultiVector,
    pub report: Report,
}

/// `θ = Σ p_i dx_i`, `ω = ½ Σ p_i λ^{ij} φ_{jkl} dx_k∧dx_l`, `Z = Σ p_i ∂/∂p_i`,
/// with homogeneity and nondegeneracy of `dθ + ω` checked.
pub fn cotangent_twisted_symplectic(p: &TwistedPoisson, cfg: &SampleConfig) -> Result<CotangentModel> {
    let base = p.lambda.chart().clone();
    let n = base.dim();
    let mut coords: Vec<String> = base.coords().to_vec();
    for i in 0..n {
        let mut name = format!("p_{}", base.coord(i));
        while coords.contains(&name) {
            name.push('_');
        }
        coords.push(name);
    }
    let chart = Chart::from_owned(format!("T*{}", base.name()), coords)?;
    let ps: Vec<Expr> = (0..n).map(|i| Expr::var(&chart, n + i)).collect();
    let lambda = p.lambda.lift(&chart);
    let phi = p.phi.lift(&chart);

    let mut theta = Form::zero(&chart, 1);
    let mut z = MultiVector::zero(&chart, 1);
    for i in 0..n {
        theta.set(bit(i), ps[i].clone());
        z.set(bit(n + i), ps[i].clone());
    }
    let mut omega = Form::zero(&chart, 2);
    if phi.degree() == 3 && !phi.is_zero() {
        for k in 0..n {
            for l in k + 1..n {
                let mut acc = Expr::zero(&chart);
                for (i, pi) in ps.iter().enumerate() {
                    for jj in 0..n {
                        if i == jj {
                            continue;
                        }
                        let lij = lambda.component(&[i, jj]);
                        let pj = phi.component(&[jj, k, l]);
                        if !lij.is_zero() && !pj.is_zero() {
                            acc = &acc + &(&(pi * &lij) * &pj);
                        }
                    }
                }
                omega.set(bit(k) | bit(l), acc);
            }
        }
    }

    let mut report = Report::new("cotangent twisted symplectic structure");
    let big_omega = &theta.ext_d() + &omega;
    report.tensor_zero("L_Z(dθ + ω) − (dθ + ω)", &(&big_omega.lie(&z) - &big_omega), cfg);
    report.tensor_zero("i(Z)dω − ω", &(&omega.ext_d().interior(&z) - &omega), cfg);
    numeric::check_rank(&mut report, "dθ + ω nondegenerate", &numeric::form_matrix(&big_omega), 2 * n, cfg);
    Ok(CotangentModel { chart, theta, omega, z, report })
}
