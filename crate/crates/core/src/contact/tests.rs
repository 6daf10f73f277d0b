use super::*;
use crate::jacobi::check_twisted_jacobi;
use crate::report::Overall;

fn r3() -> ChartRef {
    Chart::new("R3", &["x", "y", "z"]).unwrap()
}

fn form(c: &ChartRef, k: usize, entries: &[(&str, &str)]) -> Form {
    Form::from_entries(c, k, entries).unwrap()
}

fn mv(c: &ChartRef, k: usize, entries: &[(&str, &str)]) -> MultiVector {
    MultiVector::from_entries(c, k, entries).unwrap()
}

fn standard(c: &ChartRef) -> TwistedContact {
    TwistedContact::new(form(c, 1, &[("dz", "1"), ("dx", "-y")]), Form::zero(c, 2)).unwrap()
}

fn twisted(c: &ChartRef) -> TwistedContact {
    TwistedContact::new(form(c, 1, &[("dz", "1"), ("dx", "-y")]), form(c, 2, &[("dx^dy", "x")])).unwrap()
}

fn cfg() -> SampleConfig {
    SampleConfig::default()
}

#[test]
fn volume_examples() {
    let c = r3();
    let s = standard(&c);
    let top = s.top_coefficient();
    assert!(top == Expr::one(&c) || top == -Expr::one(&c));
    assert_eq!(check_contact(&s, &cfg()).overall(), Overall::SampledZero);
    assert!(check_contact(&s, &cfg()).passed());

    let flat = TwistedContact::new(Form::basis(&c, &[2]), Form::zero(&c, 2)).unwrap();
    let r = check_contact(&flat, &cfg());
    assert_eq!(r.overall(), Overall::Fail);
    assert!(matches!(r.first_failure().unwrap().verdict, crate::ItemVerdict::Fail { witness: Some(_), .. }));

    let t = twisted(&c);
    let top = t.top_coefficient();
    assert!(top == Expr::parse("1 + x", &c).unwrap() || top == Expr::parse("-1 - x", &c).unwrap());
    let r = check_contact(&t, &cfg());
    assert!(r.passed(), "{r}");
    assert!(r.assumptions.iter().any(|a| a.contains("x + 1")), "{r}");
}

#[test]
fn even_dimension_rejected() {
    let c = Chart::new("R2", &["x", "p"]).unwrap();
    let err = TwistedContact::new(form(&c, 1, &[("dx", "p")]), Form::zero(&c, 2)).unwrap_err();
    assert_eq!(err, GeomError::EvenDimension(2));
}

#[test]
fn reeb_examples() {
    let c = r3();
    assert_eq!(reeb(&standard(&c)).unwrap(), MultiVector::coordinate_field(&c, 2));
    assert_eq!(reeb(&twisted(&c)).unwrap(), MultiVector::coordinate_field(&c, 2));
    let flat = TwistedContact::new(Form::basis(&c, &[2]), Form::zero(&c, 2)).unwrap();
    assert!(reeb(&flat).is_err() || contact_bivector(&flat).is_err());
}

#[test]
fn bivector_examples() {
    let c = r3();
    let s = standard(&c);
    let lambda = contact_bivector(&s).unwrap();
    assert_eq!(lambda, mv(&c, 2, &[("d/dx^d/dy", "1"), ("d/dz^d/dy", "y")]));
    assert!(sharp_vector(&lambda, &s.theta).is_zero());

    let t = twisted(&c);
    let d = solve(&t).unwrap();
    assert_eq!(d.lambda, mv(&c, 2, &[("d/dx^d/dy", "1/(1 + x)"), ("d/dz^d/dy", "y/(1 + x)")]));
    assert!(d.assumptions.iter().any(|a| a.contains("x + 1")), "{:?}", d.assumptions);
    let r = check_reeb_bivector(&t, &d, &cfg());
    assert_eq!(r.overall(), Overall::SymbolicZero, "{r}");
}

#[test]
fn induced_jacobi_structures() {
    let c = r3();
    for s in [standard(&c), twisted(&c)] {
        let j = jacobi_from_contact(&s).unwrap();
        assert_eq!(check_twisted_jacobi(&j, &cfg()).overall(), Overall::SymbolicZero);
    }
    let ac = TwistedContact::from_almost_cosymplectic(Form::basis(&c, &[2]), Form::basis(&c, &[0, 1])).unwrap();
    assert_eq!(ac.omega, Form::basis(&c, &[0, 1]));
    let j = jacobi_from_contact(&ac).unwrap();
    assert_eq!(j.e, MultiVector::coordinate_field(&c, 2));
    assert_eq!(j.lambda, mv(&c, 2, &[("d/dx^d/dy", "1")]));
    assert_eq!(check_twisted_jacobi(&j, &cfg()).overall(), Overall::SymbolicZero);
}

#[test]
fn classical_contact_in_dimension_five() {
    let c = Chart::new("R5", &["x1", "y1", "x2", "y2", "z"]).unwrap();
    let s = TwistedContact::new(form(&c, 1, &[("dz", "1"), ("dx1", "-y1"), ("dx2", "-y2")]), Form::zero(&c, 2)).unwrap();
    assert!(check_contact(&s, &cfg()).passed());
    let d = solve(&s).unwrap();
    assert_eq!(d.e, MultiVector::coordinate_field(&c, 4));
    let expected = mv(&c, 2, &[("d/dx1^d/dy1", "1"), ("d/dz^d/dy1", "y1"), ("d/dx2^d/dy2", "1"), ("d/dz^d/dy2", "y2")]);
    assert_eq!(d.lambda, expected);
    assert_eq!(check_reeb_bivector(&s, &d, &cfg()).overall(), Overall::SymbolicZero);
}

#[test]
fn inverse_convention_and_poissonization() {
    assert_eq!(detect_inverse_convention(), -1);
    let c = r3();
    for s in [standard(&c), twisted(&c)] {
        let r = contact_poissonization_check(&s, &cfg()).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.assumptions.iter().any(|a| a.contains("inverse convention")));
    }
}
