//! Schouten–Nijenhuis bracket.
//!
//! Writing a p-vector as a superfunction `P = Σ P^I ξ_I` in odd variables,
//!
//! ```text
//! [P, Q] = Σ_i (P ←∂ξ_i) ∧ ∂_i Q − (−1)^{(p−1)(q−1)} (Q ←∂ξ_i) ∧ ∂_i P
//! ```
//!
//! with right derivatives. This gives the Lie bracket on vector fields,
//! `[f, P] = −i(df)P`, graded Leibniz in the second slot, and
//! `½[Λ,Λ](df,dg,dh) = {f,{g,h}} + c.p.` for the bracket `{f,g} = Λ(df,dg)`.

use super::index::{above, bit, indices};
use super::MultiVector;
use crate::error::{GeomError, Result};

impl MultiVector {
    /// Right derivative with respect to `ξ_i`.
    fn right_derivative(&self, i: usize) -> MultiVector {
        let mut out = MultiVector::zero(self.chart(), self.degree() - 1);
        for (m, e) in self.nonzero() {
            if m & bit(i) != 0 {
                out.add_to(m & !bit(i), e, above(m, i) % 2 == 1);
            }
        }
        out
    }

    fn half_bracket(&self, other: &MultiVector, out: &mut MultiVector) {
        if self.degree() == 0 {
            return;
        }
        let support: u32 = self.nonzero().iter().fold(0, |acc, (m, _)| acc | m);
        for i in indices(support) {
            let rd = self.right_derivative(i);
            let d = other.diff(i);
            if rd.is_zero() || d.is_zero() {
                continue;
            }
            *out = &*out + &rd.wedge(&d);
        }
    }

    pub fn schouten(&self, other: &MultiVector) -> Result<MultiVector> {
        assert_eq!(self.dim(), other.dim(), "charts `{}` and `{}`", self.chart().name(), other.chart().name());
        let (p, q) = (self.degree(), other.degree());
        if p + q == 0 {
            return Err(GeomError::Degree { degree: 0, dim: self.dim() });
        }
        let deg = p + q - 1;
        if deg > self.dim() {
            return Ok(MultiVector::zero(self.chart(), deg));
        }
        let mut first = MultiVector::zero(self.chart(), deg);
        self.half_bracket(other, &mut first);
        let mut second = MultiVector::zero(self.chart(), deg);
        other.half_bracket(self, &mut second);
        let odd = (p as i64 - 1) * (q as i64 - 1) % 2 != 0;
        Ok(if odd { &first + &second } else { &first - &second })
    }
}
