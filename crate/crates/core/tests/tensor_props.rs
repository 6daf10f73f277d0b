mod common;

use common::*;
use proptest::prelude::*;
use twistgeom::tensor::{pair_sharp, sharp, sharp_vector, Form, MultiVector, PairForm, PairVec, SmoothMap};
use twistgeom::Expr;

fn one_form(c: &[Expr]) -> Form {
    Form::from_vec(&r3(), c.to_vec())
}

fn vector(c: &[Expr]) -> MultiVector {
    MultiVector::vector(&r3(), c.to_vec())
}

fn two_form(c: &[Expr]) -> Form {
    let r = r3();
    let mut w = Form::zero(&r, 2);
    for (k, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
        w = &w + &Form::basis(&r, &[i, j]).scale(&c[k]);
    }
    w
}

fn bivector(c: &[Expr]) -> MultiVector {
    let r = r3();
    let mut b = MultiVector::zero(&r, 2);
    for (k, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
        b = &b + &MultiVector::basis(&r, &[i, j]).scale(&c[k]);
    }
    b
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn d_squared_vanishes(f in poly(3, 4), a in polys(3, 3, 3), b in polys(3, 2, 3)) {
        prop_assert!(Form::exact(&f).ext_d().is_zero());
        prop_assert!(one_form(&a).ext_d().ext_d().is_zero());
        prop_assert!(two_form(&b).ext_d().ext_d().is_zero());
    }

    #[test]
    fn lie_derivative_of_forms(x in polys(3, 2, 3), y in polys(3, 2, 2), z in polys(3, 2, 2), a in polys(3, 2, 3), w in polys(3, 2, 2)) {
        let (x, y, z) = (vector(&x), vector(&y), vector(&z));
        let alpha = one_form(&a);
        let xy = y.lie(&x);
        let lhs = alpha.lie(&x).eval(&[y.clone()]);
        let rhs = &x.apply(&alpha.eval(&[y.clone()])) - &alpha.eval(&[xy.clone()]);
        prop_assert_eq!(lhs, rhs);
        let omega = two_form(&w);
        let xz = z.lie(&x);
        let lhs = omega.lie(&x).eval(&[y.clone(), z.clone()]);
        let rhs = &(&x.apply(&omega.eval(&[y.clone(), z.clone()])) - &omega.eval(&[xy, z.clone()])) - &omega.eval(&[y, xz]);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn schouten_graded_jacobi(x in polys(3, 2, 2), y in polys(3, 2, 2), l in polys(3, 2, 2)) {
        let (x, y, l) = (vector(&x), vector(&y), bivector(&l));
        // [P,[Q,R]] = [[P,Q],R] + (−1)^{(p−1)(q−1)}[Q,[P,R]] for degrees (1,1,2)
        let lhs = x.schouten(&y.schouten(&l).unwrap()).unwrap();
        let rhs = &x.schouten(&y).unwrap().schouten(&l).unwrap() + &y.schouten(&x.schouten(&l).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        // degrees (1,2,2): sign (−1)^{0} = 1
        let lhs = x.schouten(&l.schouten(&l).unwrap()).unwrap();
        let xl = x.schouten(&l).unwrap();
        let rhs = &xl.schouten(&l).unwrap() + &l.schouten(&xl).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sharp_is_consistent(l in polys(3, 2, 3), z in polys(3, 2, 3), e in polys(3, 2, 3)) {
        let (l, zeta, eta) = (bivector(&l), one_form(&z), one_form(&e));
        prop_assert_eq!(eta.pair(&sharp_vector(&l, &zeta)), l.eval(&[zeta.clone(), eta.clone()]));
        let r = r3();
        let two = zeta.wedge(&eta);
        let s = sharp(&l, &two);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let (a, b) = (Form::basis(&r, &[i]), Form::basis(&r, &[j]));
            let direct = two.eval(&[sharp_vector(&l, &a), sharp_vector(&l, &b)]);
            prop_assert_eq!(s.eval(&[a, b]), direct);
        }
    }

    #[test]
    fn pair_sharp_reduces(l in polys(3, 2, 2), w in polys(3, 2, 2), psi in polys(3, 2, 2), z in polys(3, 2, 2), f in poly(2, 2), e in polys(3, 1, 2)) {
        let r = r3();
        let l = bivector(&l);
        let phi = two_form(&w);
        let p = pair_sharp(&l, &MultiVector::zero(&r, 1), &PairForm::new(phi.clone(), one_form(&psi)));
        prop_assert_eq!(p.primary, sharp(&l, &phi));
        prop_assert!(p.secondary.is_zero());
        let e = vector(&e);
        let zeta = one_form(&z);
        let p = pair_sharp(&l, &e, &PairForm::of_degree_one(zeta.clone(), f.clone()));
        let expected = PairVec::of_degree_one(&sharp_vector(&l, &zeta) + &e.scale(&f), -e.pair(&zeta));
        prop_assert_eq!(p.primary, expected.primary);
        prop_assert_eq!(p.secondary, expected.secondary);
    }

    #[test]
    fn pullback_commutes_with_d(m in polys(3, 2, 2), a in polys(3, 2, 2), w in polys(3, 1, 2)) {
        let r = r3();
        let phi = SmoothMap::new(&r, &r, m).unwrap();
        let alpha = one_form(&a);
        prop_assert_eq!(phi.pullback(&alpha.ext_d()).unwrap(), phi.pullback(&alpha).unwrap().ext_d());
        let omega = two_form(&w);
        prop_assert_eq!(phi.pullback(&omega.ext_d()).unwrap(), phi.pullback(&omega).unwrap().ext_d());
        prop_assert_eq!(phi.pullback(&alpha.wedge(&omega)).unwrap(), phi.pullback(&alpha).unwrap().wedge(&phi.pullback(&omega).unwrap()));
    }
}
