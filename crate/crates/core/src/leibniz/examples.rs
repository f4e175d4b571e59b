//! Small named algebras and the standard di-Leibniz builders.

use super::{check_di_leibniz, check_leibniz, DiLeibniz, StructureConstants};
use crate::error::{Error, Result};
use crate::linalg::{int, unit_vec, vec_add, zero_vec, LinearMap, Matrix, Rational};

fn from_table(dim: usize, entries: &[(usize, usize, usize, i64)]) -> StructureConstants {
    let mut s = StructureConstants::zero(dim);
    for &(i, j, k, v) in entries {
        s.set(i, j, k, int(v));
    }
    s
}

pub fn abelian(dim: usize) -> StructureConstants {
    StructureConstants::zero(dim)
}

/// Basis `h, e, f` with `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
pub fn sl2() -> StructureConstants {
    from_table(
        3,
        &[
            (0, 1, 1, 2),
            (1, 0, 1, -2),
            (0, 2, 2, -2),
            (2, 0, 2, 2),
            (1, 2, 0, 1),
            (2, 1, 0, -1),
        ],
    )
}

/// The cross product on `ℚ³`.
pub fn so3() -> StructureConstants {
    from_table(
        3,
        &[
            (0, 1, 2, 1),
            (1, 0, 2, -1),
            (1, 2, 0, 1),
            (2, 1, 0, -1),
            (2, 0, 1, 1),
            (0, 2, 1, -1),
        ],
    )
}

/// The cross product with `[e₁, e₂] = e₃ + e₁`: skew but not Lie.
pub fn perturbed_so3() -> StructureConstants {
    let mut s = so3();
    s.set(0, 1, 0, int(1));
    s.set(1, 0, 0, int(-1));
    s
}

/// `[e₁, e₂] = e₂`.
pub fn nonabelian2() -> StructureConstants {
    from_table(2, &[(0, 1, 1, 1), (1, 0, 1, -1)])
}

/// The two-dimensional Leibniz algebra `{e₁, e₁} = e₂`.
pub fn d2_leibniz() -> StructureConstants {
    from_table(2, &[(0, 0, 1, 1)])
}

/// `e₁ ↦ e₂ ↦ 0`, a square-zero derivation of [`d2_leibniz`].
pub fn d2_differential() -> LinearMap {
    Matrix::from_i64(&[&[0, 0], &[1, 0]])
}

/// `f ↦ t·e`, other basis vectors to 0: an averaging operator on [`sl2`].
pub fn sl2_nilpotent_averaging(t: Rational) -> LinearMap {
    let mut p = Matrix::zeros(3, 3);
    p[(1, 2)] = t;
    p
}

/// `x ⊣ y = {x, dy}`, `x ⊢ y = {dx, y}` for a square-zero derivation `d`.
pub fn differential(h: &StructureConstants, d: &LinearMap) -> Result<DiLeibniz> {
    let n = h.dim();
    if d.rows() != n || d.cols() != n {
        return Err(Error::SizeMismatch("differential dimension".into()));
    }
    check_leibniz(h).into_result()?;
    if !d.mul(d).is_zero() {
        return Err(Error::Precondition("d does not square to zero".into()));
    }
    let images: Vec<Vec<Rational>> = (0..n).map(|j| d.column(j)).collect();
    for x in 0..n {
        for y in 0..n {
            let lhs = d.apply(h.basis_bracket(x, y));
            let rhs = vec_add(&h.bracket(&images[x], &unit_vec(n, y)), &h.bracket(&unit_vec(n, x), &images[y]));
            if lhs != rhs {
                return Err(Error::Precondition(format!("d is not a derivation at ({x}, {y})")));
            }
        }
    }
    let out = DiLeibniz {
        left: StructureConstants::from_basis_fn(n, |x, y| h.bracket(&unit_vec(n, x), &images[y])),
        right: StructureConstants::from_basis_fn(n, |x, y| h.bracket(&images[x], &unit_vec(n, y))),
    };
    check_di_leibniz(&out)
        .into_result()
        .map_err(|e| Error::Internal(format!("differential di-Leibniz: {e}")))?;
    Ok(out)
}

/// `hⁿ` with `x ⊣ y = ({xᵢ, Σy})ᵢ` and `x ⊢ y = ({Σx, yᵢ})ᵢ`.
pub fn direct_sum(h: &StructureConstants, n: usize) -> Result<DiLeibniz> {
    if n == 0 {
        return Err(Error::Precondition("direct sum needs at least one copy".into()));
    }
    check_leibniz(h).into_result()?;
    let d = h.dim();
    let total = n * d;
    let place = |block: usize, v: &[Rational]| {
        let mut out = zero_vec(total);
        out[block * d..(block + 1) * d].clone_from_slice(v);
        out
    };
    // basis vector i of hⁿ is eᵢ mod d in block i / d, so Σ over blocks is e_(i mod d)
    let left = StructureConstants::from_basis_fn(total, |i, j| place(i / d, h.basis_bracket(i % d, j % d)));
    let right = StructureConstants::from_basis_fn(total, |i, j| place(j / d, h.basis_bracket(i % d, j % d)));
    let out = DiLeibniz { left, right };
    check_di_leibniz(&out)
        .into_result()
        .map_err(|e| Error::Internal(format!("direct sum di-Leibniz: {e}")))?;
    Ok(out)
}
