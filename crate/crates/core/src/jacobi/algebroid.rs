//! The Lie algebroid `T*M×ℝ` of a twisted Jacobi structure. Sections are
//! degree-one pair forms `(ζ, f)`.

use super::{bracket, TwistedJacobi};
use crate::expr::{Expr, SampleConfig};
use crate::report::Report;
use crate::tensor::{sharp_vector, Form, MultiVector, PairForm, PairVec};

/// The base bracket, as recorded in algebroid reports.
pub const BASE_BRACKET: &str = "{(ζ,f),(η,g)} = (L_{Λ^#ζ}η − L_{Λ^#η}ζ − dΛ(ζ,η) + f L_Eη − g L_Eζ − i(E)(ζ∧η), \
Λ(η,ζ) + Λ^#ζ(g) − Λ^#η(f) + f E(g) − g E(f))";

/// Anchor `ρ(ζ,f) = Λ^#ζ + fE`.
pub fn algebroid_anchor(j: &TwistedJacobi, a: &PairForm) -> MultiVector {
    &sharp_vector(&j.lambda, &a.primary) + &j.e.scale(a.scalar())
}

/// Pairing `⟨(ζ,f),(X,g)⟩ = ζ(X) + fg`.
pub fn pairing(a: &PairForm, x: &PairVec) -> Expr {
    &a.primary.pair(&x.primary) + &(a.scalar() * x.scalar())
}

/// The untwisted bracket on `T*M×ℝ` (see [`BASE_BRACKET`]).
pub fn base_bracket(j: &TwistedJacobi, a: &PairForm, b: &PairForm) -> PairForm {
    let (zeta, f) = (&a.primary, a.scalar());
    let (eta, g) = (&b.primary, b.scalar());
    let sz = sharp_vector(&j.lambda, zeta);
    let se = sharp_vector(&j.lambda, eta);
    let lam = j.lambda.eval(&[zeta.clone(), eta.clone()]);

    let mut first = &eta.lie(&sz) - &zeta.lie(&se);
    first = &first - &Form::exact(&lam);
    if !j.e.is_zero() {
        first = &first + &eta.lie(&j.e).scale(f);
        first = &first - &zeta.lie(&j.e).scale(g);
        first = &first - &zeta.wedge(eta).interior(&j.e);
    }
    let second = &(&(&sz.apply(g) - &se.apply(f)) - &lam) + &(&(f * &j.e.apply(g)) - &(g * &j.e.apply(f)));
    PairForm::of_degree_one(first, second)
}

/// `{a,b}^ω = {a,b} + (dω,ω)((Λ,E)^#a, (Λ,E)^#b, ·)`.
pub fn algebroid_bracket(j: &TwistedJacobi, a: &PairForm, b: &PairForm) -> PairForm {
    let base = base_bracket(j, a, b);
    if j.omega.is_zero() {
        return base;
    }
    let x1 = PairVec::sharp_one(&j.lambda, &j.e, a);
    let x2 = PairVec::sharp_one(&j.lambda, &j.e, b);
    let (v1, f1) = (&x1.primary, x1.scalar());
    let (v2, f2) = (&x2.primary, x2.scalar());
    let d_omega = j.omega.ext_d();
    let mut first = d_omega.interior(v1).interior(v2);
    first = &first + &j.omega.interior(v2).scale(f1);
    first = &first - &j.omega.interior(v1).scale(f2);
    let second = j.omega.eval(&[v1.clone(), v2.clone()]);
    &base + &PairForm::of_degree_one(first, second)
}

/// `{(df,f),(dg,g)}^ω − (d{f,g},{f,g}) − (dω,ω)((Λ,E)^#(df,f),(Λ,E)^#(dg,g),·)`.
pub fn exact_pair_residual(j: &TwistedJacobi, f: &Expr, g: &Expr) -> PairForm {
    let (a, b) = (PairForm::exact(f), PairForm::exact(g));
    let twisted = algebroid_bracket(j, &a, &b);
    let fg = bracket(j, f, g);
    &(&twisted - &PairForm::exact(&fg)) - &omega_slot(j, &a, &b)
}

/// `(dω,ω)((Λ,E)^#a, (Λ,E)^#b, ·)` by evaluating the pair form on basis pairs.
fn omega_slot(j: &TwistedJacobi, a: &PairForm, b: &PairForm) -> PairForm {
    let chart = j.chart();
    let pw = PairForm::of_form(&j.omega);
    let x1 = PairVec::sharp_one(&j.lambda, &j.e, a);
    let x2 = PairVec::sharp_one(&j.lambda, &j.e, b);
    let zero = Expr::zero(chart);
    let comps = (0..chart.dim())
        .map(|i| pw.eval(&[x1.clone(), x2.clone(), PairVec::of_degree_one(MultiVector::coordinate_field(chart, i), zero.clone())]))
        .collect();
    let scalar = pw.eval(&[x1, x2, PairVec::of_degree_one(MultiVector::zero(chart, 1), Expr::one(chart))]);
    PairForm::of_degree_one(Form::from_vec(chart, comps), scalar)
}

fn label(a: &PairForm) -> String {
    let z = if a.primary.is_zero() { "0".to_string() } else { a.primary.to_string() };
    format!("({z}, {})", a.scalar())
}

/// Antisymmetry, Jacobi identity, anchor homomorphism, Leibniz rule (against
/// every coordinate function), the `(−E,0)` cocycle identity and the exact-pair
/// relation (on coordinate pairs).
pub fn check_algebroid(j: &TwistedJacobi, sections: &[PairForm], cfg: &SampleConfig) -> Report {
    let mut report = Report::new("Lie algebroid T*M×ℝ");
    report.note(format!("base bracket {BASE_BRACKET}"));
    let chart = j.chart().clone();
    let sections: Vec<PairForm> =
        sections.iter().map(|s| PairForm::of_degree_one(s.primary.rechart(&chart), s.scalar().rechart(&chart))).collect();
    let n = sections.len();
    let br: Vec<Vec<PairForm>> =
        (0..n).map(|i| (0..n).map(|k| algebroid_bracket(j, &sections[i], &sections[k])).collect()).collect();
    let anchors: Vec<MultiVector> = sections.iter().map(|s| algebroid_anchor(j, s)).collect();
    let cocycle = PairVec::of_degree_one(-&j.e, Expr::zero(&chart));

    for i in 0..n {
        for k in i..n {
            let (la, lb) = (label(&sections[i]), label(&sections[k]));
            report.pair_zero(format!("antisymmetry {la} {lb}"), &(&br[i][k] + &br[k][i]), cfg);
            if i == k {
                continue;
            }
            let hom = &algebroid_anchor(j, &br[i][k]) - &anchors[i].schouten(&anchors[k]).expect("vector bracket");
            report.tensor_zero(format!("anchor homomorphism {la} {lb}"), &hom, cfg);
            let lhs = pairing(&br[i][k], &cocycle);
            let rhs = &anchors[i].apply(&pairing(&sections[k], &cocycle)) - &anchors[k].apply(&pairing(&sections[i], &cocycle));
            report.zero(format!("(−E,0) cocycle {la} {lb}"), &(&lhs - &rhs), cfg);
        }
    }
    for i in 0..n {
        for k in 0..n {
            if i == k {
                continue;
            }
            for c in 0..chart.dim() {
                let h = Expr::var(&chart, c);
                let lhs = algebroid_bracket(j, &sections[i], &sections[k].scale(&h));
                let rhs = &br[i][k].scale(&h) + &sections[k].scale(&anchors[i].apply(&h));
                report.pair_zero(
                    format!("Leibniz {} {}·{}", label(&sections[i]), chart.coord(c), label(&sections[k])),
                    &(&lhs - &rhs),
                    cfg,
                );
            }
        }
    }
    for i in 0..n {
        for k in i + 1..n {
            for l in k + 1..n {
                let (a, b, c) = (&sections[i], &sections[k], &sections[l]);
                let t1 = algebroid_bracket(j, a, &br[k][l]);
                let t2 = algebroid_bracket(j, b, &br[l][i]);
                let t3 = algebroid_bracket(j, c, &br[i][k]);
                report.pair_zero(format!("Jacobi {} {} {}", label(a), label(b), label(c)), &(&(&t1 + &t2) + &t3), cfg);
            }
        }
    }
    for a in 0..chart.dim() {
        for b in a + 1..chart.dim() {
            let (f, g) = (Expr::var(&chart, a), Expr::var(&chart, b));
            report.pair_zero(format!("exact pairs ({}, {})", chart.coord(a), chart.coord(b)), &exact_pair_residual(j, &f, &g), cfg);
        }
    }
    report
}
