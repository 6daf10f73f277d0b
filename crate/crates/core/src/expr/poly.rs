//! Exponential polynomials: finite sums `c · x^a · exp(l·x + k)` with rational
//! `c`, natural exponent vectors `a`, and rational exponent data `(l, k)`.
//!
//! Terms live in a `BTreeMap` keyed by [`Mono`]. The derived ordering on `Mono`
//! (total degree, then powers, then exponential part, all lexicographic) is a
//! total order compatible with multiplication, which is what exact division
//! relies on.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};
use smallvec::SmallVec;

pub type Q = BigRational;
pub type Q64 = Ratio<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Mono {
    deg: u32,
    pub(crate) pows: SmallVec<[u32; 8]>,
    pub(crate) lin: SmallVec<[Q64; 8]>,
    pub(crate) cst: Q64,
}

impl Mono {
    pub(crate) fn one(n: usize) -> Self {
        Mono {
            deg: 0,
            pows: SmallVec::from_elem(0, n),
            lin: SmallVec::from_elem(Q64::zero(), n),
            cst: Q64::zero(),
        }
    }

    pub(crate) fn var(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.pows[i] = 1;
        m.deg = 1;
        m
    }

    pub(crate) fn exp_unit(lin: SmallVec<[Q64; 8]>, cst: Q64) -> Self {
        let n = lin.len();
        Mono { deg: 0, pows: SmallVec::from_elem(0, n), lin, cst }
    }

    pub(crate) fn nvars(&self) -> usize {
        self.pows.len()
    }

    pub(crate) fn has_exp(&self) -> bool {
        !self.cst.is_zero() || self.lin.iter().any(|l| !l.is_zero())
    }

    pub(crate) fn is_one(&self) -> bool {
        self.deg == 0 && !self.has_exp()
    }

    pub(crate) fn degree(&self) -> u32 {
        self.deg
    }

    pub(crate) fn mul(&self, other: &Mono) -> Mono {
        debug_assert_eq!(self.nvars(), other.nvars());
        Mono {
            deg: self.deg + other.deg,
            pows: self.pows.iter().zip(&other.pows).map(|(a, b)| a + b).collect(),
            lin: self.lin.iter().zip(&other.lin).map(|(a, b)| a + b).collect(),
            cst: self.cst + other.cst,
        }
    }

    /// `self / other` when the power part divides; the exponential part is a unit.
    pub(crate) fn div(&self, other: &Mono) -> Option<Mono> {
        let mut pows = SmallVec::with_capacity(self.pows.len());
        for (a, b) in self.pows.iter().zip(&other.pows) {
            pows.push(a.checked_sub(*b)?);
        }
        Some(Mono {
            deg: self.deg - other.deg,
            pows,
            lin: self.lin.iter().zip(&other.lin).map(|(a, b)| a - b).collect(),
            cst: self.cst - other.cst,
        })
    }

    /// The multiplicative inverse of the exponential part alone.
    pub(crate) fn exp_inverse(&self) -> Mono {
        Mono::exp_unit(self.lin.iter().map(|l| -l).collect(), -self.cst)
    }

    pub(crate) fn with_pows(&self, pows: SmallVec<[u32; 8]>) -> Mono {
        Mono { deg: pows.iter().sum(), pows, lin: self.lin.clone(), cst: self.cst }
    }

    pub(crate) fn eval(&self, point: &[f64]) -> f64 {
        let mut v = 1.0;
        for (x, &p) in point.iter().zip(&self.pows) {
            if p > 0 {
                v *= x.powi(p as i32);
            }
        }
        if self.has_exp() {
            let mut arg = q64_f64(&self.cst);
            for (x, l) in point.iter().zip(&self.lin) {
                if !l.is_zero() {
                    arg += q64_f64(l) * x;
                }
            }
            v *= arg.exp();
        }
        v
    }
}

pub(crate) fn q64_f64(q: &Q64) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

pub(crate) fn q_f64(q: &Q) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn q_to_q64(q: &Q) -> Option<Q64> {
    Some(Q64::new(q.numer().to_i64()?, q.denom().to_i64()?))
}

pub(crate) fn q64_to_q(q: &Q64) -> Q {
    Q::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

/// A finite sum of terms with nonzero rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Poly {
    n: usize,
    pub(crate) terms: BTreeMap<Mono, Q>,
}

impl Poly {
    pub(crate) fn zero(n: usize) -> Self {
        Poly { n, terms: BTreeMap::new() }
    }

    pub(crate) fn constant(n: usize, c: Q) -> Self {
        Self::term(Mono::one(n), c)
    }

    pub(crate) fn one(n: usize) -> Self {
        Self::constant(n, Q::one())
    }

    pub(crate) fn term(m: Mono, c: Q) -> Self {
        let n = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { n, terms }
    }

    pub(crate) fn nvars(&self) -> usize {
        self.n
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn len(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub(crate) fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub(crate) fn leading(&self) -> Option<(&Mono, &Q)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub(crate) fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub(crate) fn neg(&self) -> Poly {
        Poly { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub(crate) fn scale(&self, q: &Q) -> Poly {
        if q.is_zero() {
            return Poly::zero(self.n);
        }
        Poly { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect() }
    }

    pub(crate) fn mul_term(&self, m: &Mono, q: &Q) -> Poly {
        if q.is_zero() {
            return Poly::zero(self.n);
        }
        Poly { n: self.n, terms: self.terms.iter().map(|(k, c)| (k.mul(m), c * q)).collect() }
    }

    pub(crate) fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.n, other.n);
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut out = Poly::zero(self.n);
        for (m, c) in &small.terms {
            for (k, d) in &big.terms {
                out.add_term(m.mul(k), c * d);
            }
        }
        out
    }

    pub(crate) fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(self.n);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub(crate) fn diff(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.n);
        for (m, c) in &self.terms {
            let p = m.pows[i];
            if p > 0 {
                let mut pows = m.pows.clone();
                pows[i] -= 1;
                out.add_term(m.with_pows(pows), c * Q::from_integer(BigInt::from(p)));
            }
            let l = &m.lin[i];
            if !l.is_zero() {
                out.add_term(m.clone(), c * q64_to_q(l));
            }
        }
        out
    }

    pub(crate) fn eval(&self, point: &[f64]) -> f64 {
        self.terms.iter().map(|(m, c)| q_f64(c) * m.eval(point)).sum()
    }

    /// Largest absolute term value at `point`; used to scale residual tolerances.
    pub(crate) fn max_term(&self, point: &[f64]) -> f64 {
        self.terms.iter().map(|(m, c)| (q_f64(c) * m.eval(point)).abs()).fold(0.0, f64::max)
    }

    /// Componentwise minimum of the power vectors over all terms.
    pub(crate) fn min_pows(&self) -> SmallVec<[u32; 8]> {
        let mut it = self.terms.keys();
        let mut acc = match it.next() {
            Some(m) => m.pows.clone(),
            None => return SmallVec::from_elem(0, self.n),
        };
        for m in it {
            for (a, b) in acc.iter_mut().zip(&m.pows) {
                *a = (*a).min(*b);
            }
        }
        acc
    }

    /// Divides every term by the monomial `x^pows` (which must divide each term).
    pub(crate) fn div_pows(&self, pows: &[u32]) -> Poly {
        if pows.iter().all(|&p| p == 0) {
            return self.clone();
        }
        let mut out = Poly::zero(self.n);
        for (m, c) in &self.terms {
            let np: SmallVec<[u32; 8]> = m.pows.iter().zip(pows).map(|(a, b)| a - b).collect();
            out.terms.insert(m.with_pows(np), c.clone());
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    ///
    /// The quotient's support must lie in the box spanned by the componentwise
    /// exponent ranges of dividend and divisor, which bounds the search.
    pub(crate) fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero(self.n));
        }
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        if divisor.len() == 1 {
            let (dm, dc) = divisor.leading().unwrap();
            let inv = dc.recip();
            let mut out = Poly::zero(self.n);
            for (m, c) in &self.terms {
                out.terms.insert(m.div(dm)?, c * &inv);
            }
            return Some(out);
        }
        let bounds = QuotientBox::new(self, divisor);
        let (lm, lc) = divisor.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.n);
        let mut steps = 0usize;
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = rm.div(&lm)?;
            if !bounds.contains(&qm) {
                return None;
            }
            steps += 1;
            if steps > 1_000_000 {
                return None;
            }
            let qc = rc / &lc;
            for (m, c) in &divisor.terms {
                rem.add_term(m.mul(&qm), -(c * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Leading coefficient and exponential factor, used to normalize denominators.
    pub(crate) fn leading_unit(&self) -> Option<(Mono, Q)> {
        self.leading().map(|(m, c)| (m.exp_inverse(), c.recip()))
    }

    pub(crate) fn has_exp(&self) -> bool {
        self.terms.keys().any(|m| m.has_exp())
    }
}

struct QuotientBox {
    pow_lo: Vec<i64>,
    pow_hi: Vec<i64>,
    lin_lo: Vec<Q64>,
    lin_hi: Vec<Q64>,
    cst_lo: Q64,
    cst_hi: Q64,
}

impl QuotientBox {
    fn new(f: &Poly, g: &Poly) -> Self {
        let n = f.n;
        let range = |p: &Poly| {
            let mut plo = vec![i64::MAX; n];
            let mut phi = vec![i64::MIN; n];
            let mut llo = vec![Q64::new(i64::MAX, 1); n];
            let mut lhi = vec![Q64::new(i64::MIN, 1); n];
            let mut clo = Q64::new(i64::MAX, 1);
            let mut chi = Q64::new(i64::MIN, 1);
            for m in p.terms.keys() {
                for i in 0..n {
                    plo[i] = plo[i].min(m.pows[i] as i64);
                    phi[i] = phi[i].max(m.pows[i] as i64);
                    llo[i] = llo[i].min(m.lin[i]);
                    lhi[i] = lhi[i].max(m.lin[i]);
                }
                clo = clo.min(m.cst);
                chi = chi.max(m.cst);
            }
            (plo, phi, llo, lhi, clo, chi)
        };
        let (fpl, fph, fll, flh, fcl, fch) = range(f);
        let (gpl, gph, gll, glh, gcl, gch) = range(g);
        QuotientBox {
            pow_lo: (0..n).map(|i| fpl[i] - gpl[i]).collect(),
            pow_hi: (0..n).map(|i| fph[i] - gph[i]).collect(),
            lin_lo: (0..n).map(|i| fll[i] - gll[i]).collect(),
            lin_hi: (0..n).map(|i| flh[i] - glh[i]).collect(),
            cst_lo: fcl - gcl,
            cst_hi: fch - gch,
        }
    }

    fn contains(&self, m: &Mono) -> bool {
        for i in 0..m.nvars() {
            let p = m.pows[i] as i64;
            if p < self.pow_lo[i] || p > self.pow_hi[i] {
                return false;
            }
            if m.lin[i] < self.lin_lo[i] || m.lin[i] > self.lin_hi[i] {
                return false;
            }
        }
        m.cst >= self.cst_lo && m.cst <= self.cst_hi
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Poly {
        Poly::term(Mono::var(n, i), Q::one())
    }

    fn c(n: usize, v: i64) -> Poly {
        Poly::constant(n, Q::from_integer(v.into()))
    }

    #[test]
    fn exact_division_recovers_factor() {
        let a = x(2, 0).add(&c(2, 1));
        let b = x(2, 0).sub(&x(2, 1)).add(&c(2, 3));
        let p = a.mul(&b).mul(&b);
        assert_eq!(p.exact_div(&b).unwrap(), a.mul(&b));
        assert_eq!(p.exact_div(&a).unwrap(), b.mul(&b));
    }

    #[test]
    fn inexact_division_is_rejected() {
        let a = x(1, 0).add(&c(1, 1));
        let b = x(1, 0).sub(&c(1, 1));
        assert!(a.exact_div(&b).is_none());
        assert!(c(1, 1).exact_div(&a).is_none());
    }

    #[test]
    fn exponential_units_divide() {
        let mut lin = SmallVec::from_elem(Q64::zero(), 1);
        lin[0] = Q64::from_integer(-1);
        let e = Poly::term(Mono::exp_unit(lin, Q64::zero()), Q::one());
        // (1 - e^{-x}) (1 + e^{-x}) = 1 - e^{-2x}
        let a = c(1, 1).sub(&e);
        let b = c(1, 1).add(&e);
        let p = a.mul(&b);
        assert_eq!(p.exact_div(&a).unwrap(), b);
        // 1 / (1 - e^{-x}) has no finite quotient
        assert!(c(1, 1).exact_div(&a).is_none());
    }

    #[test]
    fn derivative_of_exp_term() {
        let mut lin = SmallVec::from_elem(Q64::zero(), 1);
        lin[0] = Q64::from_integer(2);
        let e = Poly::term(Mono::exp_unit(lin, Q64::zero()), Q::one());
        let p = x(1, 0).mul(&e);
        // d/dx (x e^{2x}) = e^{2x} + 2x e^{2x}
        let expected = e.add(&x(1, 0).mul(&e).scale(&Q::from_integer(2.into())));
        assert_eq!(p.diff(0), expected);
    }
}
