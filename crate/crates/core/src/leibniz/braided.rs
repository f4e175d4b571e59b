//! The braided vector space `𝐤 ⊕ 𝔤` of a skew bracket.
//!
//! Basis index 0 is `(1, 0)`, index `i ≥ 1` is `(0, eᵢ₋₁)`; the tensor
//! `e_a ⊗ e_b` sits at `a·(1+d) + b`.

use super::StructureConstants;
use crate::error::{Error, Result};
use crate::linalg::{LinearMap, Matrix, Rational};
use num_traits::One;

/// `S((a,x) ⊗ (b,y)) = (b,y) ⊗ (a,x) + (0,[x,y]) ⊗ (1,0)`.
pub fn braided_from_lie(g: &StructureConstants) -> Result<Matrix> {
    if let Some((i, j)) = g.skew_witness() {
        return Err(Error::Precondition(format!("bracket is not skew-symmetric at ({i}, {j})")));
    }
    let n = 1 + g.dim();
    let mut s = Matrix::zeros(n * n, n * n);
    for a in 0..n {
        for b in 0..n {
            let col = a * n + b;
            s[(b * n + a, col)] += Rational::one();
            if a > 0 && b > 0 {
                for (k, c) in g.basis_bracket(a - 1, b - 1).iter().enumerate() {
                    s[((k + 1) * n, col)] += c;
                }
            }
        }
    }
    Ok(s)
}

/// `S₁₂ S₂₃ S₁₂ = S₂₃ S₁₂ S₂₃` on `V⊗V⊗V`, for `S` acting on `V⊗V`.
pub fn ybe_linear_check(s: &Matrix) -> Result<bool> {
    let n2 = s.rows();
    let n = (n2 as f64).sqrt().round() as usize;
    if !s.is_square() || n * n != n2 {
        return Err(Error::SizeMismatch("operator is not on a tensor square".into()));
    }
    let id = Matrix::identity(n);
    let s12 = s.kron(&id);
    let s23 = id.kron(s);
    Ok(s12.mul(&s23).mul(&s12) == s23.mul(&s12).mul(&s23))
}

/// `𝒜 = 1 ⊕ P` on `𝐤 ⊕ 𝔤`.
pub fn extend_by_unit(p: &LinearMap) -> Matrix {
    let n = 1 + p.rows();
    let mut a = Matrix::zeros(n, n);
    a[(0, 0)] = Rational::one();
    for i in 0..p.rows() {
        for j in 0..p.cols() {
            a[(i + 1, j + 1)] = p[(i, j)].clone();
        }
    }
    a
}

/// `S(𝒜 ⊗ 𝒜) = (𝒜 ⊗ Id) S (𝒜 ⊗ Id)` with `𝒜 = 1 ⊕ P`.
pub fn braided_averaging_check(g: &StructureConstants, p: &LinearMap) -> Result<bool> {
    if p.rows() != g.dim() || p.cols() != g.dim() {
        return Err(Error::SizeMismatch("operator dimension".into()));
    }
    let s = braided_from_lie(g)?;
    let a = extend_by_unit(p);
    let a_id = a.kron(&Matrix::identity(a.rows()));
    Ok(s.mul(&a.kron(&a)) == a_id.mul(&s).mul(&a_id))
}
