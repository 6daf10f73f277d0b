//! Differential forms and multivector fields with exact components.
//!
//! A degree-k tensor stores one [`Expr`] per strictly increasing multi-index,
//! densely, in colex order. Forms are evaluated with the determinant
//! convention `(dx^1∧…∧dx^k)(∂_1,…,∂_k) = 1`, and likewise for multivectors on
//! covectors.

pub mod index;
mod map;
mod pair;
mod schouten;
mod sharp;

use std::fmt;
use std::marker::PhantomData;

use crate::chart::ChartRef;
use crate::error::{GeomError, Result};
use crate::expr::{Expr, Q};
use index::{bit, indices, masks, rank, sort_indices, wedge_sign, Mask, MAX_DIM};
pub use map::SmoothMap;
pub use pair::{pair_sharp, Pair, PairForm, PairVec};
pub use sharp::{bivector_matrix, sharp, sharp_tensor, sharp_vector};

pub trait Kind: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    /// Prefix used for basis elements in keys, `d` for `dx` or `d/d` for `d/dx`.
    const PREFIX: &'static str;
    const NAME: &'static str;
}

#[derive(Clone, Debug, PartialEq)]
pub struct Co;

#[derive(Clone, Debug, PartialEq)]
pub struct Contra;

impl Kind for Co {
    const PREFIX: &'static str = "d";
    const NAME: &'static str = "form";
}

impl Kind for Contra {
    const PREFIX: &'static str = "d/d";
    const NAME: &'static str = "multivector";
}

/// An alternating tensor of kind `K` (covariant or contravariant).
#[derive(Clone)]
pub struct Alt<K: Kind> {
    chart: ChartRef,
    degree: usize,
    comps: Vec<Expr>,
    _kind: PhantomData<K>,
}

pub type Form = Alt<Co>;
pub type MultiVector = Alt<Contra>;

impl<K: Kind> Alt<K> {
    pub fn try_zero(chart: &ChartRef, degree: usize) -> Result<Self> {
        if chart.dim() > MAX_DIM {
            return Err(GeomError::InvalidChart(format!(
                "dimension {} exceeds the supported maximum {MAX_DIM}",
                chart.dim()
            )));
        }
        let z = Expr::zero(chart);
        Ok(Alt {
            chart: chart.clone(),
            degree,
            comps: vec![z; index::binomial(chart.dim(), degree)],
            _kind: PhantomData,
        })
    }

    /// Degrees above the chart dimension give the (componentless) zero tensor.
    pub fn zero(chart: &ChartRef, degree: usize) -> Self {
        Self::try_zero(chart, degree).expect("tensor degree out of range")
    }

    pub fn scalar(e: Expr) -> Self {
        let mut t = Self::zero(e.chart(), 0);
        t.comps[0] = e;
        t
    }

    /// `dx^{i_1}∧…` (or `∂_{i_1}∧…`) for an arbitrary index order.
    pub fn basis(chart: &ChartRef, idx: &[usize]) -> Self {
        let mut t = Self::zero(chart, idx.len());
        if let Some((mask, odd)) = sort_indices(idx) {
            let one = Expr::one(chart);
            t.comps[rank(mask)] = if odd { -one } else { one };
        }
        t
    }

    /// Degree-one tensor with the given components.
    pub fn from_vec(chart: &ChartRef, comps: Vec<Expr>) -> Self {
        assert_eq!(comps.len(), chart.dim());
        Alt { chart: chart.clone(), degree: 1, comps, _kind: PhantomData }
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, mask: Mask) -> &Expr {
        &self.comps[rank(mask)]
    }

    /// Component for an arbitrary index list, with the permutation sign applied.
    pub fn component(&self, idx: &[usize]) -> Expr {
        assert_eq!(idx.len(), self.degree);
        match sort_indices(idx) {
            Some((mask, odd)) => {
                let c = self.get(mask).clone();
                if odd {
                    -c
                } else {
                    c
                }
            }
            None => Expr::zero(&self.chart),
        }
    }

    pub fn set(&mut self, mask: Mask, e: Expr) {
        assert_eq!(mask.count_ones() as usize, self.degree);
        self.comps[rank(mask)] = e;
    }

    /// Adds `e` (negated when `negate`) to component `mask`.
    pub fn add_to(&mut self, mask: Mask, e: &Expr, negate: bool) {
        let slot = &mut self.comps[rank(mask)];
        *slot = if negate { &*slot - e } else { &*slot + e };
    }

    /// Component of a degree-one tensor.
    pub fn at(&self, i: usize) -> &Expr {
        assert_eq!(self.degree, 1);
        &self.comps[i]
    }

    /// The function underlying a degree-zero tensor.
    pub fn as_scalar(&self) -> &Expr {
        assert_eq!(self.degree, 0);
        &self.comps[0]
    }

    pub fn masks(&self) -> impl Iterator<Item = Mask> + '_ {
        let ms = masks(self.dim(), self.degree);
        (0..ms.len()).map(move |r| ms[r])
    }

    /// Nonzero components with their masks.
    pub fn nonzero(&self) -> Vec<(Mask, &Expr)> {
        let ms = masks(self.dim(), self.degree);
        self.comps.iter().enumerate().filter(|(_, e)| !e.is_zero()).map(|(r, e)| (ms[r], e)).collect()
    }

    pub fn components(&self) -> impl Iterator<Item = (Mask, &Expr)> + '_ {
        let ms = masks(self.dim(), self.degree);
        self.comps.iter().enumerate().map(move |(r, e)| (ms[r], e))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|e| e.is_zero())
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.dim(), other.dim(), "tensors on charts `{}` and `{}`", self.chart.name(), other.chart.name());
    }

    pub fn map(&self, f: impl Fn(&Expr) -> Expr) -> Self {
        Alt { chart: self.chart.clone(), degree: self.degree, comps: self.comps.iter().map(f).collect(), _kind: PhantomData }
    }

    pub fn try_map(&self, f: impl Fn(&Expr) -> Result<Expr>) -> Result<Self> {
        let comps = self.comps.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Alt { chart: self.chart.clone(), degree: self.degree, comps, _kind: PhantomData })
    }

    /// Same components on another chart of the same dimension.
    pub fn rechart(&self, chart: &ChartRef) -> Self {
        Alt { chart: chart.clone(), degree: self.degree, comps: self.comps.iter().map(|e| e.rechart(chart)).collect(), _kind: PhantomData }
    }

    pub fn scale(&self, f: &Expr) -> Self {
        if f.is_zero() {
            return Self::zero(&self.chart, self.degree);
        }
        self.map(|e| if e.is_zero() { e.clone() } else { e * f })
    }

    pub fn scale_q(&self, q: &Q) -> Self {
        self.map(|e| e.scale(q))
    }

    pub fn wedge(&self, other: &Self) -> Self {
        self.check_same(other);
        let deg = self.degree + other.degree;
        let mut out = Self::zero(&self.chart, deg);
        let b = other.nonzero();
        for (ma, ea) in self.nonzero() {
            for (mb, eb) in &b {
                if let Some(odd) = wedge_sign(ma, *mb) {
                    out.add_to(ma | mb, &(ea * *eb), odd);
                }
            }
        }
        out
    }

    /// Partial derivative of every component.
    pub fn diff(&self, i: usize) -> Self {
        self.map(|e| e.diff(i))
    }

    /// Contraction in the first slot with a degree-one tensor of the dual kind,
    /// given by its components.
    fn contract_components(&self, v: &[Expr]) -> Self {
        assert!(self.degree >= 1, "contraction of a degree-zero tensor");
        let mut out = Self::zero(&self.chart, self.degree - 1);
        for (m, e) in self.nonzero() {
            for i in indices(m) {
                if v[i].is_zero() {
                    continue;
                }
                let odd = index::below(m, i) % 2 == 1;
                out.add_to(m & !bit(i), &(e * &v[i]), odd);
            }
        }
        out
    }

    /// Composition with `x ↦ subs(x)` componentwise (no Jacobian factors).
    pub fn substitute(&self, subs: &[Expr], target: &ChartRef) -> Result<Self> {
        if target.dim() != self.dim() {
            return Err(GeomError::ChartMismatch { expected: self.chart.name().to_string(), found: target.name().to_string() });
        }
        let comps = self.comps.iter().map(|e| e.substitute(subs, target)).collect::<Result<Vec<_>>>()?;
        Ok(Alt { chart: target.clone(), degree: self.degree, comps, _kind: PhantomData })
    }

    /// Re-indexes onto `target`: index `i` becomes `positions[i]` (reordering
    /// signs applied) and components are composed with `x_i ↦ subs[i]`.
    pub fn transport(&self, target: &ChartRef, positions: &[usize], subs: &[Expr]) -> Result<Self> {
        if positions.len() != self.dim() || subs.len() != self.dim() {
            return Err(GeomError::ChartMismatch { expected: self.chart.name().to_string(), found: target.name().to_string() });
        }
        let mut out = Self::try_zero(target, self.degree)?;
        for (m, e) in self.nonzero() {
            let idx: Vec<usize> = indices(m).map(|i| positions[i]).collect();
            let (mask, odd) = sort_indices(&idx)
                .ok_or_else(|| GeomError::Precondition("transport positions must be distinct".into()))?;
            out.add_to(mask, &e.substitute(subs, target)?, odd);
        }
        Ok(out)
    }

    /// The same tensor on a chart whose first coordinates are this chart's.
    pub fn lift(&self, target: &ChartRef) -> Self {
        let n = self.dim();
        assert!(target.dim() >= n && target.coords()[..n] == self.chart.coords()[..], "lift target must extend the chart");
        let subs: Vec<Expr> = (0..n).map(|i| Expr::var(target, i)).collect();
        let positions: Vec<usize> = (0..n).collect();
        self.transport(target, &positions, &subs).expect("lift is well-formed")
    }

    /// Multi-index key such as `dx^dy` or `d/dx^d/dy`; `1` for degree zero.
    pub fn key(&self, mask: Mask) -> String {
        if mask == 0 {
            return "1".to_string();
        }
        indices(mask).map(|i| format!("{}{}", K::PREFIX, self.chart.coord(i))).collect::<Vec<_>>().join("^")
    }

    /// Builds a tensor from `(key, expression)` entries. Keys may list indices in
    /// any order (the permutation sign is applied) and repeated keys add up.
    pub fn from_entries<S: AsRef<str>, T: AsRef<str>>(chart: &ChartRef, degree: usize, entries: &[(S, T)]) -> Result<Self> {
        let mut out = Self::try_zero(chart, degree)?;
        for (key, text) in entries {
            let (mask, odd) = parse_key::<K>(key.as_ref(), chart)?;
            if mask.count_ones() as usize != degree {
                return Err(GeomError::Precondition(format!(
                    "key `{}` has degree {}, expected {degree}",
                    key.as_ref(),
                    mask.count_ones()
                )));
            }
            let e = Expr::parse(text.as_ref(), chart)?;
            out.add_to(mask, &e, odd);
        }
        Ok(out)
    }

    /// `(key, expression)` for every nonzero component.
    pub fn entries(&self) -> Vec<(String, String)> {
        self.nonzero().into_iter().map(|(m, e)| (self.key(m), e.to_string())).collect()
    }
}

/// Parses a multi-index key. For multivectors both `d/dx^d/dy` and `dx^dy` are accepted.
pub fn parse_key<K: Kind>(key: &str, chart: &ChartRef) -> Result<(Mask, bool)> {
    let key = key.trim();
    if key == "1" || key.is_empty() {
        return Ok((0, false));
    }
    let mut idx = Vec::new();
    for part in key.split('^') {
        let part = part.trim();
        let name = part
            .strip_prefix(K::PREFIX)
            .or_else(|| part.strip_prefix("d"))
            .ok_or_else(|| GeomError::Precondition(format!("malformed {} key `{key}`", K::NAME)))?;
        let i = chart.index_of(name).ok_or_else(|| GeomError::UnknownIdentifier { name: name.to_string(), pos: 0 })?;
        idx.push(i);
    }
    sort_indices(&idx).ok_or_else(|| GeomError::Precondition(format!("repeated index in key `{key}`")))
}

impl<K: Kind> PartialEq for Alt<K> {
    fn eq(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.degree == other.degree && self.comps == other.comps
    }
}

impl<K: Kind> fmt::Display for Alt<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz = self.nonzero();
        if nz.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, e)) in nz.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({e}) {}", self.key(*m))?;
        }
        Ok(())
    }
}

impl<K: Kind> fmt::Debug for Alt<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}; {}]({})", K::NAME, self.chart.name(), self.degree, self)
    }
}

macro_rules! alt_ops {
    ($tr:ident $m:ident $neg:expr) => {
        impl<'a, K: Kind> std::ops::$tr<&'a Alt<K>> for &'a Alt<K> {
            type Output = Alt<K>;
            fn $m(self, other: &Alt<K>) -> Alt<K> {
                self.check_same(other);
                assert_eq!(self.degree, other.degree, "degree mismatch");
                let comps = self
                    .comps
                    .iter()
                    .zip(&other.comps)
                    .map(|(a, b)| if $neg { a - b } else { a + b })
                    .collect();
                Alt { chart: self.chart.clone(), degree: self.degree, comps, _kind: PhantomData }
            }
        }
        impl<K: Kind> std::ops::$tr<Alt<K>> for Alt<K> {
            type Output = Alt<K>;
            fn $m(self, other: Alt<K>) -> Alt<K> {
                (&self).$m(&other)
            }
        }
    };
}

alt_ops!(Add add false);
alt_ops!(Sub sub true);

impl<K: Kind> std::ops::Neg for &Alt<K> {
    type Output = Alt<K>;
    fn neg(self) -> Alt<K> {
        self.map(|e| -e)
    }
}

impl<K: Kind> std::ops::Neg for Alt<K> {
    type Output = Alt<K>;
    fn neg(self) -> Alt<K> {
        -&self
    }
}

impl Form {
    /// The differential `df` of a function.
    pub fn exact(f: &Expr) -> Form {
        let chart = f.chart().clone();
        Form::from_vec(&chart, (0..chart.dim()).map(|i| f.diff(i)).collect())
    }

    pub fn ext_d(&self) -> Form {
        if self.degree >= self.dim() {
            return Form::zero(&self.chart, self.degree + 1);
        }
        let mut out = Form::zero(&self.chart, self.degree + 1);
        for (m, e) in self.nonzero() {
            for j in 0..self.dim() {
                if m & bit(j) != 0 {
                    continue;
                }
                let de = e.diff(j);
                if de.is_zero() {
                    continue;
                }
                out.add_to(m | bit(j), &de, index::below(m, j) % 2 == 1);
            }
        }
        out
    }

    /// `i(X)α`, contraction in the first slot.
    pub fn interior(&self, x: &MultiVector) -> Form {
        assert_eq!(x.degree, 1, "interior product needs a vector field");
        self.check_vector(x);
        self.contract_components(&x.comps)
    }

    fn check_vector(&self, x: &MultiVector) {
        assert_eq!(self.dim(), x.dim(), "charts `{}` and `{}`", self.chart.name(), x.chart.name());
    }

    /// `α(X_1, …, X_k)`.
    pub fn eval(&self, xs: &[MultiVector]) -> Expr {
        assert_eq!(xs.len(), self.degree, "form of degree {} on {} vectors", self.degree, xs.len());
        let mut cur = self.clone();
        for x in xs {
            cur = cur.interior(x);
        }
        cur.as_scalar().clone()
    }

    /// Cartan: `L_X α = i(X)dα + d i(X)α`.
    pub fn lie(&self, x: &MultiVector) -> Form {
        if self.degree == 0 {
            return Form::scalar(x.apply(self.as_scalar()));
        }
        let a = self.ext_d().interior(x);
        let b = self.interior(x).ext_d();
        &a + &b
    }
}

impl MultiVector {
    pub fn vector(chart: &ChartRef, comps: Vec<Expr>) -> MultiVector {
        MultiVector::from_vec(chart, comps)
    }

    /// `∂/∂x_i`.
    pub fn coordinate_field(chart: &ChartRef, i: usize) -> MultiVector {
        MultiVector::basis(chart, &[i])
    }

    /// `X(f)` for a vector field `X`.
    pub fn apply(&self, f: &Expr) -> Expr {
        assert_eq!(self.degree, 1);
        let mut acc = Expr::zero(f.chart());
        for (i, c) in self.comps.iter().enumerate() {
            if !c.is_zero() {
                let d = f.diff(i);
                if !d.is_zero() {
                    acc = &acc + &(c * &d);
                }
            }
        }
        acc
    }

    /// `i(α)P`, contraction of a one-form into the first slot.
    pub fn contract(&self, alpha: &Form) -> MultiVector {
        assert_eq!(alpha.degree, 1, "contraction needs a one-form");
        assert_eq!(self.dim(), alpha.dim());
        self.contract_components(&alpha.comps)
    }

    /// `P(α_1, …, α_k)`.
    pub fn eval(&self, alphas: &[Form]) -> Expr {
        assert_eq!(alphas.len(), self.degree);
        let mut cur = self.clone();
        for a in alphas {
            cur = cur.contract(a);
        }
        cur.as_scalar().clone()
    }

    /// `⟨ζ, P⟩ = Σ_I ζ_I P^I` for equal degrees.
    pub fn pair(&self, zeta: &Form) -> Expr {
        assert_eq!(self.degree, zeta.degree);
        let mut acc = Expr::zero(&self.chart);
        for (r, e) in self.comps.iter().enumerate() {
            if !e.is_zero() && !zeta.comps[r].is_zero() {
                acc = &acc + &(e * &zeta.comps[r]);
            }
        }
        acc
    }

    /// Lie derivative `L_X P = [X, P]`.
    pub fn lie(&self, x: &MultiVector) -> MultiVector {
        assert_eq!(x.degree, 1);
        x.schouten(self).expect("bracket with a vector field keeps the degree")
    }

    /// The index `i` when this vector field is `∂/∂x_i`.
    pub fn as_coordinate_field(&self) -> Option<usize> {
        if self.degree != 1 {
            return None;
        }
        let nz = self.nonzero();
        match nz.as_slice() {
            [(m, e)] if e.is_one() => Some(m.trailing_zeros() as usize),
            _ => None,
        }
    }
}

impl Form {
    /// Pairing `⟨α, X⟩` of a one-form with a vector field.
    pub fn pair(&self, x: &MultiVector) -> Expr {
        x.pair(self)
    }
}

#[cfg(test)]
mod tests;
