//! Sections of `⋀^k(T*M×ℝ)` and `⋀^k(TM×ℝ)` written as pairs of tensors of
//! degrees k and k−1. On arguments `(X_i, f_i)`,
//!
//! ```text
//! (ζ, ζ′)((X_1,f_1), …, (X_k,f_k)) = ζ(X_1,…,X_k) + Σ_i (−1)^{i+1} f_i ζ′(X_1,…,X̂_i,…,X_k)
//! ```
//!
//! and symmetrically for pair multivectors on pair covectors.

use std::fmt;

use super::{sharp, sharp_vector, Alt, Form, Kind, MultiVector};
use crate::chart::ChartRef;
use crate::expr::Expr;

/// A pair `(primary, secondary)` of tensors of degrees k and k−1.
#[derive(Clone, PartialEq)]
pub struct Pair<K: Kind> {
    pub primary: Alt<K>,
    pub secondary: Alt<K>,
}

pub type PairForm = Pair<super::Co>;
pub type PairVec = Pair<super::Contra>;

impl<K: Kind> Pair<K> {
    pub fn new(primary: Alt<K>, secondary: Alt<K>) -> Self {
        assert!(primary.degree() >= 1, "pair tensors have degree at least one");
        assert_eq!(primary.degree(), secondary.degree() + 1, "secondary part must have degree k−1");
        assert_eq!(primary.dim(), secondary.dim());
        Pair { primary, secondary }
    }

    pub fn zero(chart: &ChartRef, degree: usize) -> Self {
        Pair::new(Alt::zero(chart, degree), Alt::zero(chart, degree - 1))
    }

    /// Degree-one pair `(a, f)`.
    pub fn of_degree_one(a: Alt<K>, f: Expr) -> Self {
        Pair::new(a, Alt::scalar(f))
    }

    pub fn degree(&self) -> usize {
        self.primary.degree()
    }

    pub fn chart(&self) -> &ChartRef {
        self.primary.chart()
    }

    pub fn is_zero(&self) -> bool {
        self.primary.is_zero() && self.secondary.is_zero()
    }

    /// The scalar part of a degree-one pair.
    pub fn scalar(&self) -> &Expr {
        self.secondary.as_scalar()
    }

    pub fn scale(&self, f: &Expr) -> Self {
        Pair { primary: self.primary.scale(f), secondary: self.secondary.scale(f) }
    }

    fn eval_generic<D: Kind>(&self, args: &[Pair<D>], eval: impl Fn(&Alt<K>, &[Alt<D>]) -> Expr) -> Expr {
        assert_eq!(args.len(), self.degree());
        let firsts: Vec<Alt<D>> = args.iter().map(|a| a.primary.clone()).collect();
        let mut acc = eval(&self.primary, &firsts);
        if self.secondary.is_zero() {
            return acc;
        }
        for (i, a) in args.iter().enumerate() {
            let f = a.scalar();
            if f.is_zero() {
                continue;
            }
            let rest: Vec<Alt<D>> = firsts.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| x.clone()).collect();
            let term = f * &eval(&self.secondary, &rest);
            acc = if i % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }
}

impl PairForm {
    /// `(df, f)`.
    pub fn exact(f: &Expr) -> PairForm {
        PairForm::of_degree_one(Form::exact(f), f.clone())
    }

    pub fn eval(&self, args: &[PairVec]) -> Expr {
        self.eval_generic(args, |a, xs| a.eval(xs))
    }

    /// The exterior pair `(dω, ω)` of a form.
    pub fn of_form(omega: &Form) -> PairForm {
        PairForm::new(omega.ext_d(), omega.clone())
    }
}

impl PairVec {
    pub fn eval(&self, args: &[PairForm]) -> Expr {
        self.eval_generic(args, |p, alphas| p.eval(alphas))
    }

    /// `(Λ,E)^#(ζ, f) = (Λ^#ζ + fE, −⟨ζ,E⟩)` on a degree-one pair form.
    pub fn sharp_one(lambda: &MultiVector, e: &MultiVector, z: &PairForm) -> PairVec {
        assert_eq!(z.degree(), 1);
        let f = z.scalar();
        let x = &sharp_vector(lambda, &z.primary) + &e.scale(f);
        PairVec::of_degree_one(x, -e.pair(&z.primary))
    }

    /// `(Λ,E)^#(ζ,ζ′)((α_1,f_1),…) = (−1)^k (ζ,ζ′)((Λ,E)^#(α_1,f_1), …)`, assembled
    /// from its values on basis arguments.
    pub fn sharp(lambda: &MultiVector, e: &MultiVector, z: &PairForm) -> PairVec {
        let k = z.degree();
        if k == 1 {
            return PairVec::sharp_one(lambda, e, z);
        }
        let chart = lambda.chart().clone();
        let n = chart.dim();
        if e.is_zero() && z.secondary.is_zero() {
            return PairVec::new(sharp(lambda, &z.primary), MultiVector::zero(&chart, k - 1));
        }
        let images: Vec<PairVec> = (0..n)
            .map(|i| PairVec::of_degree_one(sharp_vector(lambda, &Form::basis(&chart, &[i])), -e.at(i)))
            .collect();
        let w = PairVec::of_degree_one(e.clone(), Expr::zero(&chart));
        let negate = k % 2 == 1;
        let sign = |v: Expr| if negate { -v } else { v };
        let mut primary = MultiVector::zero(&chart, k);
        for mask in primary.masks().collect::<Vec<_>>() {
            let args: Vec<PairVec> = super::index::indices(mask).map(|i| images[i].clone()).collect();
            primary.set(mask, sign(z.eval(&args)));
        }
        let mut secondary = MultiVector::zero(&chart, k - 1);
        for mask in secondary.masks().collect::<Vec<_>>() {
            let mut args = vec![w.clone()];
            args.extend(super::index::indices(mask).map(|i| images[i].clone()));
            secondary.set(mask, sign(z.eval(&args)));
        }
        PairVec::new(primary, secondary)
    }
}

impl<K: Kind> std::ops::Add for &Pair<K> {
    type Output = Pair<K>;
    fn add(self, other: &Pair<K>) -> Pair<K> {
        Pair { primary: &self.primary + &other.primary, secondary: &self.secondary + &other.secondary }
    }
}

impl<K: Kind> std::ops::Sub for &Pair<K> {
    type Output = Pair<K>;
    fn sub(self, other: &Pair<K>) -> Pair<K> {
        Pair { primary: &self.primary - &other.primary, secondary: &self.secondary - &other.secondary }
    }
}

impl<K: Kind> std::ops::Neg for &Pair<K> {
    type Output = Pair<K>;
    fn neg(self) -> Pair<K> {
        Pair { primary: -&self.primary, secondary: -&self.secondary }
    }
}

impl<K: Kind> fmt::Debug for Pair<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.primary, self.secondary)
    }
}

/// `(Λ,E)^#` applied to a pair form of any degree.
pub fn pair_sharp(lambda: &MultiVector, e: &MultiVector, z: &PairForm) -> PairVec {
    PairVec::sharp(lambda, e, z)
}
