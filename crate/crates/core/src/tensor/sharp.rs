//! The morphism `Λ^#` of a bivector and its extensions to forms of higher degree.

use super::{Form, MultiVector};
use crate::expr::Expr;

/// The full antisymmetric matrix `Λ^{ij}` with `Λ = Σ_{i<j} Λ^{ij} ∂_i∧∂_j`.
pub fn bivector_matrix(lambda: &MultiVector) -> Vec<Vec<Expr>> {
    assert_eq!(lambda.degree(), 2, "bivector expected");
    let n = lambda.dim();
    let z = Expr::zero(lambda.chart());
    let mut m = vec![vec![z; n]; n];
    for (mask, e) in lambda.nonzero() {
        let i = mask.trailing_zeros() as usize;
        let j = (mask & (mask - 1)).trailing_zeros() as usize;
        m[i][j] = e.clone();
        m[j][i] = -e;
    }
    m
}

/// `Λ^#(ζ)` for a one-form, so that `⟨η, Λ^#ζ⟩ = Λ(ζ, η)`.
pub fn sharp_vector(lambda: &MultiVector, zeta: &Form) -> MultiVector {
    assert_eq!(zeta.degree(), 1);
    let n = lambda.dim();
    let mut comps = vec![Expr::zero(lambda.chart()); n];
    for (mask, e) in lambda.nonzero() {
        let i = mask.trailing_zeros() as usize;
        let j = (mask & (mask - 1)).trailing_zeros() as usize;
        let (zi, zj) = (zeta.at(i), zeta.at(j));
        if !zi.is_zero() {
            comps[j] = &comps[j] + &(zi * e);
        }
        if !zj.is_zero() {
            comps[i] = &comps[i] - &(zj * e);
        }
    }
    MultiVector::vector(lambda.chart(), comps)
}

/// `Λ^#(ζ)(α_1,…,α_k) = (−1)^k ζ(Λ^#α_1, …, Λ^#α_k)`, and `Λ^#(f) = f`.
pub fn sharp(lambda: &MultiVector, zeta: &Form) -> MultiVector {
    let k = zeta.degree();
    if k == 0 {
        return MultiVector::scalar(zeta.as_scalar().clone());
    }
    if k == 1 {
        return sharp_vector(lambda, zeta);
    }
    let chart = lambda.chart();
    let n = lambda.dim();
    let images: Vec<MultiVector> = (0..n).map(|i| sharp_vector(lambda, &Form::basis(chart, &[i]))).collect();
    let mut out = MultiVector::zero(chart, k);
    let negate = k % 2 == 1;
    fill(&images, zeta, 0, 0, k, negate, &mut out);
    out
}

fn fill(images: &[MultiVector], cur: &Form, start: usize, mask: u32, k: usize, negate: bool, out: &mut MultiVector) {
    if cur.is_zero() {
        return;
    }
    if cur.degree() == 0 {
        let v = cur.as_scalar();
        out.set(mask, if negate { -v } else { v.clone() });
        return;
    }
    let remaining = cur.degree();
    for i in start..images.len() {
        if images.len() - i < remaining {
            break;
        }
        if images[i].is_zero() {
            continue;
        }
        let next = cur.interior(&images[i]);
        fill(images, &next, i + 1, mask | (1 << i), k, negate, out);
    }
}

/// `(Λ^#⊗1)(ζ)(X)`: the (k−1)-vector `R` with
/// `R(α_1,…,α_{k−1}) = (−1)^k ζ(Λ^#α_1, …, Λ^#α_{k−1}, X)`.
pub fn sharp_tensor(lambda: &MultiVector, zeta: &Form, x: &MultiVector) -> MultiVector {
    assert!(zeta.degree() >= 1, "sharp_tensor needs a form of positive degree");
    let r = sharp(lambda, &zeta.interior(x));
    if zeta.degree() % 2 == 1 {
        -r
    } else {
        r
    }
}
