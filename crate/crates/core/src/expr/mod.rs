//! Exact scalar expressions on a chart.
//!
//! An [`Expr`] is a quotient of two exponential polynomials over ℚ. The
//! denominator is kept monic (leading coefficient 1, no exponential factor in
//! its leading term) and free of common monomial factors with the numerator;
//! exact polynomial division removes it whenever it divides the numerator.
//! Equality is decided by cross-multiplication, which is exact for this class.

mod parse;
pub(crate) mod poly;
mod print;
mod sample;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::chart::ChartRef;
use crate::error::{GeomError, Result};
pub use poly::Q;
use poly::{q_to_q64, Mono, Poly, Q64};
pub use sample::{SampleConfig, Verdict, ZeroTest};

#[derive(Clone)]
pub struct Expr {
    chart: ChartRef,
    num: Poly,
    den: Poly,
}

impl Expr {
    pub fn zero(chart: &ChartRef) -> Expr {
        Expr::raw(chart, Poly::zero(chart.dim()), Poly::one(chart.dim()))
    }

    pub fn one(chart: &ChartRef) -> Expr {
        Expr::constant(chart, Q::one())
    }

    pub fn constant(chart: &ChartRef, c: Q) -> Expr {
        Expr::raw(chart, Poly::constant(chart.dim(), c), Poly::one(chart.dim()))
    }

    pub fn int(chart: &ChartRef, v: i64) -> Expr {
        Expr::constant(chart, Q::from_integer(BigInt::from(v)))
    }

    pub fn rational(chart: &ChartRef, n: i64, d: i64) -> Expr {
        Expr::constant(chart, Q::new(BigInt::from(n), BigInt::from(d)))
    }

    /// The coordinate function `x_i`.
    pub fn var(chart: &ChartRef, i: usize) -> Expr {
        assert!(i < chart.dim(), "coordinate index {i} out of range");
        Expr::raw(chart, Poly::term(Mono::var(chart.dim(), i), Q::one()), Poly::one(chart.dim()))
    }

    pub fn coord(chart: &ChartRef, name: &str) -> Result<Expr> {
        let i = chart.index_of(name).ok_or_else(|| GeomError::UnknownIdentifier { name: name.to_string(), pos: 0 })?;
        Ok(Expr::var(chart, i))
    }

    /// `exp(Σ lin_i x_i + cst)`.
    pub fn exp_linear(chart: &ChartRef, lin: &[Q64], cst: Q64) -> Expr {
        assert_eq!(lin.len(), chart.dim());
        let m = Mono::exp_unit(lin.iter().copied().collect(), cst);
        Expr::raw(chart, Poly::term(m, Q::one()), Poly::one(chart.dim()))
    }

    pub fn parse(text: &str, chart: &ChartRef) -> Result<Expr> {
        parse::parse(text, chart)
    }

    fn raw(chart: &ChartRef, num: Poly, den: Poly) -> Expr {
        Expr { chart: chart.clone(), num, den }
    }

    fn from_parts(chart: &ChartRef, num: Poly, den: Poly) -> Expr {
        let (num, den) = normalize(num, den);
        Expr::raw(chart, num, den)
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn nvars(&self) -> usize {
        self.chart.dim()
    }

    /// Symbolic zero test on the canonical form.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn has_exp(&self) -> bool {
        self.num.has_exp() || self.den.has_exp()
    }

    /// Number of terms in numerator and denominator, a rough size measure.
    pub fn size(&self) -> usize {
        self.num.len() + self.den.len()
    }

    pub fn numerator(&self) -> Expr {
        Expr::raw(&self.chart, self.num.clone(), Poly::one(self.nvars()))
    }

    pub fn denominator(&self) -> Expr {
        Expr::raw(&self.chart, self.den.clone(), Poly::one(self.nvars()))
    }

    /// Moves the expression to another chart of the same dimension.
    pub fn rechart(&self, chart: &ChartRef) -> Expr {
        assert_eq!(chart.dim(), self.nvars(), "rechart needs equal dimensions");
        Expr::raw(chart, self.num.clone(), self.den.clone())
    }

    fn check_same(&self, other: &Expr) {
        assert_eq!(
            self.nvars(),
            other.nvars(),
            "expressions on charts `{}` and `{}` cannot be combined",
            self.chart.name(),
            other.chart.name()
        );
    }

    pub fn scale(&self, q: &Q) -> Expr {
        if q.is_zero() {
            return Expr::zero(&self.chart);
        }
        Expr::raw(&self.chart, self.num.scale(q), self.den.clone())
    }

    pub fn checked_div(&self, other: &Expr) -> Result<Expr> {
        self.check_same(other);
        if other.is_zero() {
            return Err(GeomError::DivisionByZero);
        }
        Ok(self.mul_parts(&other.den, &other.num))
    }

    pub fn recip(&self) -> Result<Expr> {
        Expr::one(&self.chart).checked_div(self)
    }

    fn mul_parts(&self, onum: &Poly, oden: &Poly) -> Expr {
        if self.num.is_zero() || onum.is_zero() {
            return Expr::zero(&self.chart);
        }
        if self.den.is_one() && oden.is_one() {
            return Expr::raw(&self.chart, self.num.mul(onum), self.den.clone());
        }
        let (a, d2) = cancel(&self.num, oden);
        let (b, d1) = cancel(onum, &self.den);
        Expr::from_parts(&self.chart, a.mul(&b), d1.mul(&d2))
    }

    pub fn powi(&self, k: i32) -> Result<Expr> {
        if k >= 0 {
            let e = k as u32;
            return Ok(Expr::from_parts(&self.chart, self.num.pow(e), self.den.pow(e)));
        }
        if self.is_zero() {
            return Err(GeomError::DivisionByZero);
        }
        let e = k.unsigned_abs();
        Ok(Expr::from_parts(&self.chart, self.den.pow(e), self.num.pow(e)))
    }

    /// `exp(self)`; the argument must be affine-linear with rational coefficients.
    pub fn exp(&self) -> Result<Expr> {
        let (lin, cst) = self.affine_parts().ok_or_else(|| {
            GeomError::Unsupported(format!("exp of the non-affine argument `{self}`"))
        })?;
        Ok(Expr::exp_linear(&self.chart, &lin, cst))
    }

    /// Coefficients `(l, k)` when `self = Σ l_i x_i + k` with small rational data.
    fn affine_parts(&self) -> Option<(SmallVec<[Q64; 8]>, Q64)> {
        let d = self.den.as_constant()?;
        let n = self.nvars();
        let mut lin: SmallVec<[Q64; 8]> = SmallVec::from_elem(Q64::zero(), n);
        let mut cst = Q64::zero();
        for (m, c) in &self.num.terms {
            if m.has_exp() || m.degree() > 1 {
                return None;
            }
            let v = q_to_q64(&(c / &d))?;
            if m.degree() == 0 {
                cst = v;
            } else {
                let i = m.pows.iter().position(|&p| p == 1)?;
                lin[i] = v;
            }
        }
        Some((lin, cst))
    }

    pub fn diff(&self, i: usize) -> Expr {
        assert!(i < self.nvars(), "coordinate index {i} out of range");
        let dn = self.num.diff(i);
        if self.den.is_one() {
            return Expr::raw(&self.chart, dn, self.den.clone());
        }
        let dd = self.den.diff(i);
        if dd.is_zero() {
            return Expr::from_parts(&self.chart, dn, self.den.clone());
        }
        let top = dn.mul(&self.den).sub(&self.num.mul(&dd));
        Expr::from_parts(&self.chart, top, self.den.mul(&self.den))
    }

    pub fn diff_by(&self, coord: &str) -> Result<Expr> {
        let i = self.chart.index_of(coord).ok_or_else(|| GeomError::UnknownIdentifier {
            name: coord.to_string(),
            pos: 0,
        })?;
        Ok(self.diff(i))
    }

    /// Whether the expression involves coordinate `i` (decided symbolically).
    pub fn depends_on(&self, i: usize) -> bool {
        let involved = |p: &Poly| p.terms.keys().any(|m| m.pows[i] > 0 || !m.lin[i].is_zero());
        if !involved(&self.num) && !involved(&self.den) {
            return false;
        }
        !self.diff(i).is_zero()
    }

    pub fn eval(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.nvars() {
            return Err(GeomError::Evaluation(format!(
                "point has {} entries, chart `{}` has dimension {}",
                point.len(),
                self.chart.name(),
                self.nvars()
            )));
        }
        let n = self.num.eval(point);
        let d = if self.den.is_one() { 1.0 } else { self.den.eval(point) };
        if d == 0.0 {
            return Err(GeomError::Evaluation(format!("denominator `{}` vanishes", self.denominator())));
        }
        let v = n / d;
        if !v.is_finite() {
            return Err(GeomError::Evaluation("overflow".to_string()));
        }
        Ok(v)
    }

    pub(crate) fn eval_denominator(&self, point: &[f64]) -> f64 {
        if self.den.is_one() {
            1.0
        } else {
            self.den.eval(point)
        }
    }

    /// Numerator value and the largest absolute numerator term at `point`.
    pub(crate) fn eval_numerator_scaled(&self, point: &[f64]) -> (f64, f64) {
        (self.num.eval(point), self.num.max_term(point))
    }

    /// Composes with `x_i ↦ subs[i]`, producing an expression on the chart of `subs`.
    pub fn substitute(&self, subs: &[Expr], target: &ChartRef) -> Result<Expr> {
        if subs.len() != self.nvars() {
            return Err(GeomError::ChartMismatch {
                expected: format!("{} substitutions", self.nvars()),
                found: format!("{}", subs.len()),
            });
        }
        let mut cache = PowCache { subs, target, powers: HashMap::new() };
        let num = cache.poly(&self.num)?;
        if self.den.is_one() {
            return Ok(num);
        }
        let den = cache.poly(&self.den)?;
        num.checked_div(&den)
    }

    /// Replaces coordinate `i` by the constant `value`, keeping the chart.
    pub fn fix_coordinate(&self, i: usize, value: &Q) -> Result<Expr> {
        let subs: Vec<Expr> = (0..self.nvars())
            .map(|j| if j == i { Expr::constant(&self.chart, value.clone()) } else { Expr::var(&self.chart, j) })
            .collect();
        self.substitute(&subs, &self.chart)
    }

    /// Assumption text recorded when this expression is used as a divisor;
    /// `None` when it can never vanish (a nonzero constant times an exponential).
    pub fn nonvanishing_assumption(&self) -> Option<String> {
        let never_zero = self.num.len() == 1 && self.num.leading().is_some_and(|(m, _)| m.degree() == 0);
        (!never_zero).then(|| format!("{} != 0", self.numerator()))
    }

    /// Denominator assumption for the canonical form, if it is not a constant.
    pub fn denominator_assumption(&self) -> Option<String> {
        if self.den.is_one() {
            None
        } else {
            self.denominator().nonvanishing_assumption()
        }
    }
}

struct PowCache<'a> {
    subs: &'a [Expr],
    target: &'a ChartRef,
    powers: HashMap<(usize, u32), Expr>,
}

impl PowCache<'_> {
    fn power(&mut self, i: usize, p: u32) -> Result<Expr> {
        if let Some(e) = self.powers.get(&(i, p)) {
            return Ok(e.clone());
        }
        let e = if p == 1 { self.subs[i].clone() } else { &self.power(i, p - 1)? * &self.subs[i] };
        self.powers.insert((i, p), e.clone());
        Ok(e)
    }

    fn poly(&mut self, p: &Poly) -> Result<Expr> {
        let mut acc = Expr::zero(self.target);
        for (m, c) in &p.terms {
            let mut t = Expr::constant(self.target, c.clone());
            for (i, &k) in m.pows.iter().enumerate() {
                if k > 0 {
                    t = &t * &self.power(i, k)?;
                }
            }
            if m.has_exp() {
                let mut arg = Expr::constant(self.target, poly::q64_to_q(&m.cst));
                for (i, l) in m.lin.iter().enumerate() {
                    if !l.is_zero() {
                        arg = &arg + &self.subs[i].scale(&poly::q64_to_q(l));
                    }
                }
                t = &t * &arg.exp()?;
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }
}

/// Removes from `(a, b)` the factor `b` when it divides `a` exactly.
fn cancel(a: &Poly, b: &Poly) -> (Poly, Poly) {
    if b.is_one() || a.is_zero() {
        return (a.clone(), b.clone());
    }
    if b.len() > 1 {
        if let Some(q) = a.exact_div(b) {
            return (q, Poly::one(a.nvars()));
        }
    }
    (a.clone(), b.clone())
}

fn normalize(mut num: Poly, mut den: Poly) -> (Poly, Poly) {
    let n = num.nvars();
    assert!(!den.is_zero(), "zero denominator");
    if num.is_zero() {
        return (num, Poly::one(n));
    }
    if den.is_one() {
        return (num, den);
    }
    if let Some(c) = den.as_constant() {
        return (num.scale(&c.recip()), Poly::one(n));
    }
    for _ in 0..2 {
        let (u, c) = den.leading_unit().unwrap();
        if !(u.is_one() && c.is_one()) {
            den = den.mul_term(&u, &c);
            num = num.mul_term(&u, &c);
        }
        let g: SmallVec<[u32; 8]> =
            num.min_pows().iter().zip(den.min_pows().iter()).map(|(a, b)| (*a).min(*b)).collect();
        if g.iter().any(|&p| p > 0) {
            num = num.div_pows(&g);
            den = den.div_pows(&g);
        }
        if den.is_one() {
            return (num, den);
        }
        if den.len() == 1 {
            // a bare monomial x^a: nothing more cancels
            return (num, den);
        }
        if let Some(q) = num.exact_div(&den) {
            return (q, Poly::one(n));
        }
        if num.len() > 1 {
            if let Some(q) = den.exact_div(&num) {
                num = Poly::one(n);
                den = q;
                if let Some(c) = den.as_constant() {
                    return (num.scale(&c.recip()), Poly::one(n));
                }
                continue;
            }
        }
        break;
    }
    (num, den)
}

impl PartialEq for Expr {
    fn eq(&self, other: &Expr) -> bool {
        if self.nvars() != other.nvars() {
            return false;
        }
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        print::write_expr(f, self)
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr[{}]({})", self.chart.name(), self)
    }
}

impl<'a> Add<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn add(self, other: &Expr) -> Expr {
        self.check_same(other);
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let chart = &self.chart;
        if self.den == other.den {
            if self.den.is_one() {
                return Expr::raw(chart, self.num.add(&other.num), self.den.clone());
            }
            return Expr::from_parts(chart, self.num.add(&other.num), self.den.clone());
        }
        if other.den.is_one() {
            return Expr::from_parts(chart, self.num.add(&other.num.mul(&self.den)), self.den.clone());
        }
        if self.den.is_one() {
            return Expr::from_parts(chart, self.num.mul(&other.den).add(&other.num), other.den.clone());
        }
        if let Some(q) = other.den.exact_div(&self.den) {
            return Expr::from_parts(chart, self.num.mul(&q).add(&other.num), other.den.clone());
        }
        if let Some(q) = self.den.exact_div(&other.den) {
            return Expr::from_parts(chart, self.num.add(&other.num.mul(&q)), self.den.clone());
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Expr::from_parts(chart, num, self.den.mul(&other.den))
    }
}

impl<'a> Neg for &'a Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::raw(&self.chart, self.num.neg(), self.den.clone())
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

impl<'a> Sub<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn sub(self, other: &Expr) -> Expr {
        self + &(-other)
    }
}

impl<'a> Mul<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn mul(self, other: &Expr) -> Expr {
        self.check_same(other);
        self.mul_parts(&other.num, &other.den)
    }
}

/// Panics on division by the zero expression; use [`Expr::checked_div`] otherwise.
impl<'a> Div<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn div(self, other: &Expr) -> Expr {
        self.checked_div(other).expect("division by the zero expression")
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Expr> for Expr {
            type Output = Expr;
            fn $m(self, other: Expr) -> Expr { (&self).$m(&other) }
        }
        impl<'a> $tr<&'a Expr> for Expr {
            type Output = Expr;
            fn $m(self, other: &Expr) -> Expr { (&self).$m(other) }
        }
        impl<'a> $tr<Expr> for &'a Expr {
            type Output = Expr;
            fn $m(self, other: Expr) -> Expr { self.$m(&other) }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl std::iter::Sum for Expr {
    /// Panics on an empty iterator, which has no chart to live on.
    fn sum<I: Iterator<Item = Expr>>(mut iter: I) -> Expr {
        let first = iter.next().expect("sum of an empty expression iterator");
        iter.fold(first, |acc, e| &acc + &e)
    }
}
