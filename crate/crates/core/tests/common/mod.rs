#![allow(dead_code)]

use proptest::prelude::*;
use twistgeom::contact::{jacobi_from_contact, TwistedContact};
use twistgeom::jacobi::TwistedJacobi;
use twistgeom::tensor::Form;
use twistgeom::{Chart, ChartRef, Expr};

pub fn r3() -> ChartRef {
    Chart::new("R3", &["x", "y", "z"]).unwrap()
}

pub fn parse(s: &str, c: &ChartRef) -> Expr {
    Expr::parse(s, c).unwrap()
}

/// `(coefficient, exponents)` terms of a polynomial in three variables.
pub type Terms = Vec<(i64, [u32; 3])>;

pub fn render(terms: &Terms) -> String {
    let parts: Vec<String> = terms.iter().map(|(c, [a, b, d])| format!("({c})*x^{a}*y^{b}*z^{d}")).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn terms(max_deg: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((-3i64..=3, [0..=max_deg, 0..=max_deg, 0..=max_deg]), 1..=max_terms)
}

pub fn poly(max_deg: u32, max_terms: usize) -> impl Strategy<Value = Expr> {
    terms(max_deg, max_terms).prop_map(|t| parse(&render(&t), &r3()))
}

pub fn polys(n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Vec<Expr>> {
    prop::collection::vec(poly(max_deg, max_terms), n)
}

pub fn standard_contact() -> TwistedContact {
    let c = r3();
    TwistedContact::new(Form::from_entries(&c, 1, &[("dz", "1"), ("dx", "-y")]).unwrap(), Form::zero(&c, 2)).unwrap()
}

pub fn twisted_contact() -> TwistedContact {
    let c = r3();
    TwistedContact::new(Form::from_entries(&c, 1, &[("dz", "1"), ("dx", "-y")]).unwrap(), Form::from_entries(&c, 2, &[("dx^dy", "x")]).unwrap()).unwrap()
}

/// The two corpus structures on ℝ³: standard contact and its `x dx∧dy` twist.
pub fn corpus() -> Vec<TwistedJacobi> {
    vec![jacobi_from_contact(&standard_contact()).unwrap(), jacobi_from_contact(&twisted_contact()).unwrap()]
}
