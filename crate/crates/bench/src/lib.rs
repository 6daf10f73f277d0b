//! Fixtures shared by the benchmarks in `benches/`.

use twistgeom::apath::APath;
use twistgeom::contact::{jacobi_from_contact, TwistedContact};
use twistgeom::tensor::Form;
use twistgeom::{Chart, ChartRef, Expr};

pub fn r3() -> ChartRef {
    Chart::new("R3", &["x", "y", "z"]).expect("valid chart")
}

/// `dz - y dx` twisted by `x dx∧dy`.
pub fn twisted_contact() -> TwistedContact {
    let c = r3();
    let theta = Form::from_entries(&c, 1, &[("dz", "1"), ("dx", "-y")]).expect("theta");
    let omega = Form::from_entries(&c, 2, &[("dx^dy", "x")]).expect("omega");
    TwistedContact::new(theta, omega).expect("contact")
}

/// The vertical path `t ↦ (0, 0, t)` with `ζ = t dz` and `f = 0`.
pub fn vertical_path(intervals: usize) -> APath {
    let j = jacobi_from_contact(&twisted_contact()).expect("jacobi");
    let time = Chart::new("time", &["t"]).expect("time chart");
    let e = |s: &str| Expr::parse(s, &time).expect("expression");
    APath::from_exprs(&j, &time, intervals, &[e("0"), e("0"), e("t")], &[e("0"), e("0"), e("t")], &e("0")).expect("path")
}
