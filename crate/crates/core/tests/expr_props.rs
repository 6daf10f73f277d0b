mod common;

use common::*;
use proptest::prelude::*;
use twistgeom::Expr;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derivative_is_linear(f in poly(3, 4), g in poly(3, 4), a in -5i64..=5, i in 0usize..3) {
        let c = r3();
        let a = Expr::int(&c, a);
        let lhs = (&(&a * &f) + &g).diff(i);
        let rhs = &(&a * &f.diff(i)) + &g.diff(i);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mixed_partials_commute(f in poly(3, 4), i in 0usize..3, j in 0usize..3) {
        prop_assert_eq!(f.diff(i).diff(j), f.diff(j).diff(i));
    }

    #[test]
    fn quotient_partials_commute(f in poly(2, 3), g in poly(2, 3)) {
        let c = r3();
        let q = f.checked_div(&(&g * &g + &Expr::one(&c))).unwrap();
        prop_assert_eq!(q.diff(0).diff(2), q.diff(2).diff(0));
    }

    #[test]
    fn derivative_matches_finite_differences(f in poly(3, 4), i in 0usize..3, p in prop::array::uniform3(-0.9f64..0.9)) {
        let h = 1e-5;
        let (mut up, mut down) = (p, p);
        up[i] += h;
        down[i] -= h;
        let fd = (f.eval(&up).unwrap() - f.eval(&down).unwrap()) / (2.0 * h);
        let exact = f.diff(i).eval(&p).unwrap();
        prop_assert!((fd - exact).abs() <= 1e-6 * (1.0 + exact.abs()), "{} vs {}", fd, exact);
    }

    #[test]
    fn exp_derivative_matches_finite_differences(a in -2i64..=2, b in -2i64..=2, f in poly(2, 3), p in prop::array::uniform3(-0.9f64..0.9)) {
        let c = r3();
        let e = &f * &parse(&format!("exp({a}*x + {b}*z)"), &c);
        let h = 1e-5;
        let (mut up, mut down) = (p, p);
        up[0] += h;
        down[0] -= h;
        let fd = (e.eval(&up).unwrap() - e.eval(&down).unwrap()) / (2.0 * h);
        let exact = e.diff(0).eval(&p).unwrap();
        prop_assert!((fd - exact).abs() <= 1e-5 * (1.0 + exact.abs()), "{} vs {}", fd, exact);
    }

    #[test]
    fn print_then_parse_round_trips(f in poly(3, 4), g in poly(2, 3), a in -3i64..=3) {
        let c = r3();
        let e = &parse(&format!("exp({a}*y)"), &c) * &f.checked_div(&(&g * &g + &Expr::one(&c))).unwrap();
        let back = Expr::parse(&e.to_string(), &c).unwrap();
        prop_assert_eq!(back.to_string(), e.to_string());
        prop_assert_eq!(back, e);
    }
}
