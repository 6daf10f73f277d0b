//! Twisted Jacobi structures `(Λ, E, ω)`, their function bracket, the Lie
//! algebroid on `T*M×ℝ`, conformal changes, and the homogeneous constructions.

mod algebroid;
mod homogeneous;

use crate::chart::ChartRef;
use crate::error::{GeomError, Result};
use crate::expr::{Expr, SampleConfig};
use crate::numeric;
use crate::report::Report;
use crate::tensor::{pair_sharp, sharp, sharp_tensor, sharp_vector, Form, MultiVector, PairForm};

pub use algebroid::{algebroid_anchor, algebroid_bracket, base_bracket, check_algebroid, exact_pair_residual, pairing, BASE_BRACKET};
pub use homogeneous::{
    check_homogeneous, cotangent_twisted_symplectic, poissonize, project_along_e, project_homogeneous, CotangentModel, EProjection,
};

/// A bivector `Λ`, a vector field `E` and a two-form `ω` on one chart. Nothing
/// is assumed about the defining identities until [`check_twisted_jacobi`] runs.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedJacobi {
    pub lambda: MultiVector,
    pub e: MultiVector,
    pub omega: Form,
}

/// A bivector with a closed three-form `φ`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedPoisson {
    pub lambda: MultiVector,
    pub phi: Form,
}

/// An exact twisted Poisson structure `(Λ, dω)` with homothety field `Z`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomTwistedPoisson {
    pub lambda: MultiVector,
    pub omega: Form,
    pub z: MultiVector,
}

fn check_shape(chart: &ChartRef, what: &str, degree: usize, found_degree: usize, found_chart: &ChartRef) -> Result<()> {
    if found_chart.coords() != chart.coords() {
        return Err(GeomError::ChartMismatch { expected: chart.name().to_string(), found: found_chart.name().to_string() });
    }
    if degree != found_degree {
        return Err(GeomError::Precondition(format!("{what} must have degree {degree}, found {found_degree}")));
    }
    Ok(())
}

impl TwistedJacobi {
    pub fn new(lambda: MultiVector, e: MultiVector, omega: Form) -> Result<TwistedJacobi> {
        let chart = lambda.chart().clone();
        check_shape(&chart, "Λ", 2, lambda.degree(), &chart)?;
        check_shape(&chart, "E", 1, e.degree(), e.chart())?;
        check_shape(&chart, "ω", 2, omega.degree(), omega.chart())?;
        Ok(TwistedJacobi { lambda, e: e.rechart(&chart), omega: omega.rechart(&chart) })
    }

    /// `(0, 0, 0)`.
    pub fn trivial(chart: &ChartRef) -> TwistedJacobi {
        TwistedJacobi { lambda: MultiVector::zero(chart, 2), e: MultiVector::zero(chart, 1), omega: Form::zero(chart, 2) }
    }

    pub fn chart(&self) -> &ChartRef {
        self.lambda.chart()
    }

    /// First residual: `½[Λ,Λ] + E∧Λ − Λ^#(dω) − Λ^#(ω)∧E`.
    pub fn residual_lambda(&self) -> MultiVector {
        let half_ll = self.lambda.schouten(&self.lambda).expect("bivector bracket").scale_q(&crate::Q::new(1.into(), 2.into()));
        let d_omega = self.omega.ext_d();
        let mut r = &half_ll + &self.e.wedge(&self.lambda);
        r = &r - &sharp(&self.lambda, &d_omega);
        &r - &sharp(&self.lambda, &self.omega).wedge(&self.e)
    }

    /// Second residual: `[E,Λ] − (Λ^#⊗1)(dω)(E) + ((Λ^#⊗1)(ω)(E))∧E`.
    pub fn residual_e(&self) -> MultiVector {
        let d_omega = self.omega.ext_d();
        let mut r = self.e.schouten(&self.lambda).expect("vector-bivector bracket");
        r = &r - &sharp_tensor(&self.lambda, &d_omega, &self.e);
        &r + &sharp_tensor(&self.lambda, &self.omega, &self.e).wedge(&self.e)
    }
}

pub fn check_twisted_jacobi(j: &TwistedJacobi, cfg: &SampleConfig) -> Report {
    let mut report = Report::new("twisted Jacobi identities");
    report.tensor_zero("½[Λ,Λ] + E∧Λ − Λ^#(dω) − Λ^#(ω)∧E", &j.residual_lambda(), cfg);
    report.tensor_zero("[E,Λ] − (Λ^#⊗1)(dω)(E) + ((Λ^#⊗1)(ω)(E))∧E", &j.residual_e(), cfg);
    report
}

/// `{f,g} = Λ(df,dg) + f E(g) − g E(f)`.
pub fn bracket(j: &TwistedJacobi, f: &Expr, g: &Expr) -> Expr {
    let lam = j.lambda.eval(&[Form::exact(f), Form::exact(g)]);
    let ef = j.e.apply(f);
    let eg = j.e.apply(g);
    &(&lam + &(f * &eg)) - &(g * &ef)
}

/// Left side `{f,{g,h}} + c.p.` and right side `(Λ,E)^#(dω,ω)((df,f),(dg,g),(dh,h))`.
pub fn jacobi_anomaly(j: &TwistedJacobi, f: &Expr, g: &Expr, h: &Expr) -> (Expr, Expr) {
    let lhs = &(&bracket(j, f, &bracket(j, g, h)) + &bracket(j, g, &bracket(j, h, f))) + &bracket(j, h, &bracket(j, f, g));
    let rhs = if j.omega.is_zero() {
        Expr::zero(j.chart())
    } else {
        let p = pair_sharp(&j.lambda, &j.e, &PairForm::of_form(&j.omega));
        p.eval(&[PairForm::exact(f), PairForm::exact(g), PairForm::exact(h)])
    };
    (lhs, rhs)
}

/// `X_f = Λ^#(df) + fE`.
pub fn hamiltonian(j: &TwistedJacobi, f: &Expr) -> MultiVector {
    &sharp_vector(&j.lambda, &Form::exact(f)) + &j.e.scale(f)
}

/// The `a`-conformal structure `(aΛ, Λ^#(da) + aE, ω/a)`. The factor must not
/// vanish at any sample point.
pub fn conformal(j: &TwistedJacobi, a: &Expr, cfg: &SampleConfig) -> Result<TwistedJacobi> {
    let a = a.rechart(j.chart());
    let (m, p) = numeric::min_abs(&a, cfg)?;
    if m <= numeric::NONVANISHING_EPS {
        return Err(GeomError::Precondition(format!("conformal factor {a} vanishes near the sample point {p:?}")));
    }
    let inv = a.recip()?;
    Ok(TwistedJacobi {
        lambda: j.lambda.scale(&a),
        e: &sharp_vector(&j.lambda, &Form::exact(&a)) + &j.e.scale(&a),
        omega: j.omega.scale(&inv),
    })
}
