use super::*;
use crate::chart::Chart;

fn r3() -> ChartRef {
    Chart::new("R3", &["x", "y", "z"]).unwrap()
}

fn e(s: &str, c: &ChartRef) -> Expr {
    Expr::parse(s, c).unwrap()
}

fn form(c: &ChartRef, k: usize, entries: &[(&str, &str)]) -> Form {
    Form::from_entries(c, k, entries).unwrap()
}

fn mv(c: &ChartRef, k: usize, entries: &[(&str, &str)]) -> MultiVector {
    MultiVector::from_entries(c, k, entries).unwrap()
}

fn std_lambda(c: &ChartRef) -> MultiVector {
    mv(c, 2, &[("d/dx^d/dy", "1"), ("d/dz^d/dy", "y")])
}

#[test]
fn wedge_examples() {
    let c = r3();
    let dx = Form::basis(&c, &[0]);
    let dy = Form::basis(&c, &[1]);
    assert!(dx.wedge(&dx).is_zero());
    assert!(dx.wedge(&dy).get(0b011).is_one());
    let theta = form(&c, 1, &[("dz", "1"), ("dx", "-y")]);
    let top = theta.wedge(&dx).wedge(&dy);
    assert_eq!(top, Form::basis(&c, &[0, 1, 2]));
    assert_eq!(dy.wedge(&dx), -dx.wedge(&dy));
}

#[test]
fn exterior_derivative_examples() {
    let c = r3();
    assert!(Form::scalar(e("7", &c)).ext_d().is_zero());
    let theta = form(&c, 1, &[("dz", "1"), ("dx", "-y")]);
    assert_eq!(theta.ext_d(), Form::basis(&c, &[0, 1]));

    let p = Chart::new("P", &["x", "y", "s"]).unwrap();
    let omega = form(&p, 1, &[("dx", "x*y"), ("dy", "x^2")]);
    let es = e("exp(s)", &p);
    let lhs = omega.scale(&es).ext_d();
    let ds = Form::basis(&p, &[2]);
    let rhs = &ds.wedge(&omega).scale(&es) + &omega.ext_d().scale(&es);
    assert_eq!(lhs, rhs);
}

#[test]
fn interior_examples() {
    let c = r3();
    let dz = MultiVector::coordinate_field(&c, 2);
    let theta = form(&c, 1, &[("dz", "1"), ("dx", "-y")]);
    assert!(theta.interior(&dz).as_scalar().is_one());
    assert!(Form::basis(&c, &[0, 1]).interior(&dz).is_zero());
    let x = mv(&c, 1, &[("d/dx", "1"), ("d/dz", "y")]);
    assert!(theta.interior(&x).as_scalar().is_zero());
    let two = form(&c, 2, &[("dx^dy", "x"), ("dy^dz", "z^2")]);
    assert!(two.interior(&x).interior(&x).is_zero());
}

#[test]
fn lie_examples() {
    let p = Chart::new("P", &["x", "y", "s"]).unwrap();
    let ds = MultiVector::coordinate_field(&p, 2);
    let l0 = mv(&p, 2, &[("d/dx^d/dy", "1 + x")]);
    let l = l0.scale(&e("exp(-s)", &p));
    assert_eq!(l.lie(&ds), -&l);

    let c = r3();
    let x = mv(&c, 1, &[("d/dx", "y"), ("d/dz", "x")]);
    let f = e("x*y*z", &c);
    assert_eq!(Form::scalar(f.clone()).lie(&x).as_scalar(), Form::exact(&f).interior(&x).as_scalar());

    let t = Chart::new("T", &["x1", "x2", "p1", "p2"]).unwrap();
    let liouville_field = mv(&t, 1, &[("d/dp1", "p1"), ("d/dp2", "p2")]);
    let liouville_form = form(&t, 1, &[("dx1", "p1"), ("dx2", "p2")]);
    assert_eq!(liouville_form.lie(&liouville_field), liouville_form);
}

#[test]
fn schouten_examples() {
    let c = r3();
    let constant = mv(&c, 2, &[("d/dx^d/dy", "2"), ("d/dy^d/dz", "-1/3")]);
    assert!(constant.schouten(&constant).unwrap().is_zero());
    let dx = MultiVector::coordinate_field(&c, 0);
    let xdy = mv(&c, 1, &[("d/dy", "x")]);
    assert_eq!(dx.schouten(&xdy).unwrap(), MultiVector::coordinate_field(&c, 1));
    // The standard contact bivector is not Poisson: its Jacobiator on (x, y, z) is −1.
    let l = std_lambda(&c);
    let ll = l.schouten(&l).unwrap();
    let dxyz = [Form::basis(&c, &[0]), Form::basis(&c, &[1]), Form::basis(&c, &[2])];
    assert_eq!(ll.eval(&dxyz), Expr::int(&c, -2));
    let ez = MultiVector::coordinate_field(&c, 2);
    assert!((&ll.scale_q(&Q::new(1.into(), 2.into())) + &ez.wedge(&l)).is_zero());
}

/// `[f, P] = −i(df)P` and the Lie bracket on vector fields.
#[test]
fn schouten_conventions() {
    let c = r3();
    let f = e("x^2*z + y", &c);
    let p = mv(&c, 2, &[("d/dx^d/dy", "z"), ("d/dy^d/dz", "x*y")]);
    let lhs = MultiVector::scalar(f.clone()).schouten(&p).unwrap();
    assert_eq!(lhs, -p.contract(&Form::exact(&f)));
    let x = mv(&c, 1, &[("d/dx", "y"), ("d/dz", "x*z")]);
    let y = mv(&c, 1, &[("d/dy", "z^2"), ("d/dx", "x")]);
    let g = e("x*y + z^3", &c);
    let xy = x.schouten(&y).unwrap();
    assert_eq!(xy.apply(&g), &x.apply(&y.apply(&g)) - &y.apply(&x.apply(&g)));
}

/// `½[Λ,Λ](df,dg,dh)` equals the Jacobiator of `{f,g} = Λ(df,dg)`.
#[test]
fn schouten_sign_is_pinned_by_the_jacobiator() {
    let c = r3();
    let l = mv(&c, 2, &[("d/dx^d/dy", "z"), ("d/dy^d/dz", "x*y"), ("d/dx^d/dz", "y^2")]);
    let half = l.schouten(&l).unwrap().scale_q(&Q::new(1.into(), 2.into()));
    let br = |f: &Expr, g: &Expr| l.eval(&[Form::exact(f), Form::exact(g)]);
    let (f, g, h) = (e("x", &c), e("y", &c), e("z", &c));
    let jac = &(&br(&f, &br(&g, &h)) + &br(&g, &br(&h, &f))) + &br(&h, &br(&f, &g));
    let val = half.eval(&[Form::exact(&f), Form::exact(&g), Form::exact(&h)]);
    assert!(!jac.is_zero());
    assert_eq!(val, jac);
}

#[test]
fn sharp_examples() {
    let c = Chart::new("R2", &["x", "y"]).unwrap();
    let l = mv(&c, 2, &[("d/dx^d/dy", "1")]);
    assert_eq!(sharp(&l, &Form::basis(&c, &[0])), MultiVector::coordinate_field(&c, 1));
    let f = e("x*y", &c);
    assert_eq!(sharp(&l, &Form::scalar(f.clone())), MultiVector::scalar(f));
    assert_eq!(sharp(&l, &Form::basis(&c, &[0, 1])), l);
}

#[test]
fn sharp_tensor_examples() {
    let c = r3();
    let l = mv(&c, 2, &[("d/dx^d/dy", "1")]);
    let zeta = form(&c, 1, &[("dx", "y"), ("dz", "2")]);
    let x = mv(&c, 1, &[("d/dz", "x")]);
    assert_eq!(sharp_tensor(&l, &zeta, &x).as_scalar(), &-zeta.interior(&x).as_scalar());
    assert!(sharp_tensor(&l, &zeta, &MultiVector::zero(&c, 1)).is_zero());
    let vol = Form::basis(&c, &[0, 1, 2]);
    let dz = MultiVector::coordinate_field(&c, 2);
    assert_eq!(sharp_tensor(&l, &vol, &dz), -&l);
}

/// Brute-force check of the composition rule on all basis pairs.
#[test]
fn sharp_matches_basis_evaluation() {
    let c = r3();
    let l = std_lambda(&c);
    let zeta = form(&c, 2, &[("dx^dy", "x"), ("dx^dz", "y*z"), ("dy^dz", "1")]);
    let s = sharp(&l, &zeta);
    for i in 0..3 {
        for j in 0..3 {
            let a = Form::basis(&c, &[i]);
            let b = Form::basis(&c, &[j]);
            let direct = zeta.eval(&[sharp(&l, &a), sharp(&l, &b)]);
            assert_eq!(s.eval(&[a, b]), direct);
        }
    }
}

#[test]
fn pair_sharp_examples() {
    let c = r3();
    let l = std_lambda(&c);
    let ez = MultiVector::coordinate_field(&c, 2);
    assert!(pair_sharp(&l, &ez, &PairForm::zero(&c, 1)).is_zero());
    let zeta = form(&c, 1, &[("dx", "y"), ("dz", "x")]);
    let r = pair_sharp(&MultiVector::zero(&c, 2), &ez, &PairForm::of_degree_one(zeta.clone(), Expr::zero(&c)));
    assert!(r.primary.is_zero());
    assert_eq!(r.scalar(), &-e("x", &c));
    let r = pair_sharp(&l, &ez, &PairForm::exact(&e("x", &c)));
    assert_eq!(r.primary, mv(&c, 1, &[("d/dy", "1"), ("d/dz", "x")]));
    assert!(r.scalar().is_zero());
}

/// The closed form in degree one agrees with the general evaluation identity.
#[test]
fn pair_sharp_degree_one_matches_evaluation() {
    let c = r3();
    let l = mv(&c, 2, &[("d/dx^d/dy", "z"), ("d/dy^d/dz", "x")]);
    let ev = mv(&c, 1, &[("d/dz", "1"), ("d/dx", "y")]);
    let z = PairForm::of_degree_one(form(&c, 1, &[("dx", "y"), ("dz", "x^2")]), e("x + z", &c));
    let r = pair_sharp(&l, &ev, &z);
    for i in 0..3 {
        for f in ["0", "1"] {
            let arg = PairForm::of_degree_one(Form::basis(&c, &[i]), e(f, &c));
            let image = pair_sharp(&l, &ev, &arg);
            let direct = -z.eval(&[image]);
            assert_eq!(r.eval(&[arg]), direct);
        }
    }
}

/// Degree two and three against evaluation on all basis pair covectors.
#[test]
fn pair_sharp_higher_degrees_match_evaluation() {
    let c = r3();
    let l = std_lambda(&c);
    let ev = mv(&c, 1, &[("d/dz", "1"), ("d/dx", "x")]);
    let omega = form(&c, 2, &[("dx^dy", "x"), ("dy^dz", "y*z")]);
    for z in [PairForm::of_form(&omega), PairForm::new(form(&c, 3, &[("dx^dy^dz", "x + y")]), omega.clone())] {
        let k = z.degree();
        let r = pair_sharp(&l, &ev, &z);
        let basis: Vec<PairForm> = (0..3)
            .flat_map(|i| ["0", "1"].map(|f| PairForm::of_degree_one(Form::basis(&c, &[i]), e(f, &c))))
            .chain(std::iter::once(PairForm::of_degree_one(Form::zero(&c, 1), Expr::one(&c))))
            .collect();
        let mut idx = vec![0usize; k];
        loop {
            let args: Vec<PairForm> = idx.iter().map(|&i| basis[i].clone()).collect();
            let images: Vec<PairVec> = args.iter().map(|a| pair_sharp(&l, &ev, a)).collect();
            let direct = z.eval(&images);
            let direct = if k % 2 == 1 { -direct } else { direct };
            assert_eq!(r.eval(&args), direct, "arguments {idx:?}");
            let mut p = 0;
            while p < k {
                idx[p] += 1;
                if idx[p] < basis.len() {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
            if p == k {
                break;
            }
        }
    }
}

#[test]
fn pullback_examples() {
    let c = r3();
    let alpha = form(&c, 2, &[("dx^dy", "x*z"), ("dy^dz", "exp(y)")]);
    assert_eq!(SmoothMap::identity(&c).pullback(&alpha).unwrap(), alpha);

    let xy = Chart::new("XY", &["x", "y"]).unwrap();
    let line = Chart::new("L", &["x"]).unwrap();
    let p = SmoothMap::parse(&xy, &line, &["x"]).unwrap();
    let f = Form::scalar(e("x^3 + 1", &line));
    assert_eq!(p.pullback(&f).unwrap().as_scalar(), &e("x^3 + 1", &xy));

    let g = Chart::new("G", &["x1", "y1", "z1", "x2", "y2", "z2", "t"]).unwrap();
    let theta0 = form(&c, 1, &[("dz", "1"), ("dx", "-y")]);
    let alpha_map = SmoothMap::parse(&g, &c, &["x2", "y2", "z2"]).unwrap();
    let beta_map = SmoothMap::parse(&g, &c, &["x1", "y1", "z1"]).unwrap();
    let theta = &alpha_map.pullback(&theta0).unwrap() - &beta_map.pullback(&theta0).unwrap().scale(&e("exp(-t)", &g));
    let eps = SmoothMap::parse(&c, &g, &["x", "y", "z", "x", "y", "z", "0"]).unwrap();
    assert!(eps.pullback(&theta).unwrap().is_zero());
}

#[test]
fn pullback_commutes_with_d() {
    let c = r3();
    let s = Chart::new("S", &["u", "v"]).unwrap();
    let phi = SmoothMap::parse(&s, &c, &["u*v", "u^2 - v", "exp(u)"]).unwrap();
    let alpha = form(&c, 1, &[("dx", "y*z"), ("dz", "x^2")]);
    assert_eq!(phi.pullback(&alpha.ext_d()).unwrap(), phi.pullback(&alpha).unwrap().ext_d());
}

#[test]
fn pushforward_examples() {
    let xs = Chart::new("XS", &["x", "s"]).unwrap();
    let x = Chart::new("X", &["x"]).unwrap();
    let proj = SmoothMap::coordinate_projection(&xs, &x, &[0], &[(1, Expr::zero(&x))]).unwrap();
    assert_eq!(proj.pushforward(&MultiVector::coordinate_field(&xs, 0)).unwrap(), MultiVector::coordinate_field(&x, 0));
    assert!(proj.pushforward(&MultiVector::coordinate_field(&xs, 1)).unwrap().is_zero());

    let xys = Chart::new("XYS", &["x", "y", "s"]).unwrap();
    let xy = Chart::new("XY", &["x", "y"]).unwrap();
    let proj = SmoothMap::coordinate_projection(&xys, &xy, &[0, 1], &[(2, Expr::zero(&xy))]).unwrap();
    let l0 = mv(&xys, 2, &[("d/dx^d/dy", "1/(1 + x)")]);
    let scaled = l0.scale(&e("exp(-s)", &xys)).scale(&e("exp(s)", &xys));
    assert_eq!(proj.pushforward(&scaled).unwrap(), mv(&xy, 2, &[("d/dx^d/dy", "1/(1 + x)")]));
    let bad = l0.scale(&e("exp(-s)", &xys));
    assert_eq!(
        proj.pushforward(&bad).unwrap_err(),
        GeomError::Projectability { component: "d/dx^d/dy".into(), coord: "s".into() }
    );
}

#[test]
fn keys_round_trip() {
    let c = r3();
    let a = mv(&c, 2, &[("d/dy^d/dx", "x")]);
    assert_eq!(a.entries(), vec![("d/dx^d/dy".to_string(), "-x".to_string())]);
    let b = MultiVector::from_entries(&c, 2, &[("dx^dy", "-x")]).unwrap();
    assert_eq!(a, b);
    assert!(Form::from_entries(&c, 2, &[("dx^dx", "1")]).is_err());
    assert!(Form::from_entries(&c, 1, &[("dx^dy", "1")]).is_err());
}
