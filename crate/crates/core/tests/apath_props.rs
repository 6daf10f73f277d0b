mod common;

use common::*;
use proptest::prelude::*;
use twistgeom::apath::{anchor_residual, cocycle_integral, concatenate, reparameterize, APath};
use twistgeom::jacobi::TwistedJacobi;
use twistgeom::tensor::{Form, MultiVector};
use twistgeom::{Chart, ChartRef, Expr};

fn time() -> ChartRef {
    Chart::new("time", &["t"]).unwrap()
}

fn in_t(coeffs: &[i64]) -> Expr {
    let s: Vec<String> = coeffs.iter().enumerate().map(|(k, c)| format!("({c})*t^{k}")).collect();
    Expr::parse(&s.join(" + "), &time()).unwrap()
}

/// A path in the corpus structure `k` along a straight segment from `p` to `q`.
fn straight(k: usize, p: [f64; 3], q: [f64; 3], zeta: [Vec<i64>; 3], f: Vec<i64>) -> APath {
    let j = &corpus()[k];
    let tc = time();
    let gamma: Vec<Expr> = (0..3).map(|i| Expr::parse(&format!("{} + ({})*t", p[i], q[i] - p[i]), &tc).unwrap()).collect();
    let zeta: Vec<Expr> = zeta.iter().map(|c| in_t(c)).collect();
    APath::from_exprs(j, &tc, 64, &gamma, &zeta, &in_t(&f)).unwrap()
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 1..=3)
}

fn point() -> impl Strategy<Value = [f64; 3]> {
    // x = -1 is where the twisted structure is singular
    prop::array::uniform3((-7i32..=8).prop_map(|v| v as f64 / 8.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn concatenation_is_additive(k in 0usize..2, p in point(), q in point(), r in point(), z1 in [coeffs(), coeffs(), coeffs()], z2 in [coeffs(), coeffs(), coeffs()], f in coeffs()) {
        let c0 = straight(k, p, q, z1, f.clone());
        let c1 = straight(k, q, r, z2, f);
        let whole = cocycle_integral(&concatenate(&c0, &c1).unwrap()).unwrap();
        let parts = cocycle_integral(&c0).unwrap() + cocycle_integral(&c1).unwrap();
        prop_assert!((whole - parts).abs() < 1e-6, "{} vs {}", whole, parts);
    }

    #[test]
    fn reparameterization_preserves_the_integral(k in 0usize..2, p in point(), q in point(), z in [coeffs(), coeffs(), coeffs()], f in coeffs()) {
        let c = straight(k, p, q, z, f);
        for tau in ["t^2", "3*t^2 - 2*t^3"] {
            let r = reparameterize(&c, &time(), &Expr::parse(tau, &time()).unwrap()).unwrap();
            let (a, b) = (cocycle_integral(&c).unwrap(), cocycle_integral(&r).unwrap());
            prop_assert!((a - b).abs() < 1e-6, "{}: {} vs {}", tau, a, b);
        }
    }

    #[test]
    fn anchor_violation_persists(x in -1.0f64..1.0, y in -1.0f64..1.0, n in 3usize..7) {
        // E = ∂z and f = 1 give the anchor ∂z, but the base moves at speed 1/2
        let c = r3();
        let j = TwistedJacobi::new(MultiVector::zero(&c, 2), MultiVector::coordinate_field(&c, 2), Form::zero(&c, 2)).unwrap();
        let tc = time();
        let gamma = [in_t(&[0]), in_t(&[0]), Expr::parse("t/2", &tc).unwrap()];
        let gamma = [&gamma[0] + &Expr::parse(&format!("{x}"), &tc).unwrap(), &gamma[1] + &Expr::parse(&format!("{y}"), &tc).unwrap(), gamma[2].clone()];
        let zeros = [in_t(&[0]), in_t(&[0]), in_t(&[0])];
        let path = APath::from_exprs(&j, &tc, 1 << n, &gamma, &zeros, &in_t(&[1])).unwrap();
        prop_assert!((anchor_residual(&path).unwrap() - 0.5).abs() < 1e-9);
    }
}
