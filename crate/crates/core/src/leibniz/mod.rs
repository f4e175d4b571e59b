//! Lie, Leibniz, di-Leibniz and Lie-Leibniz brackets over ℚ, given by
//! structure constants, and the averaging operators on them.
//!
//! Every identity here is multilinear, so all checks run over basis tuples.

pub mod braided;
pub mod examples;
mod quotient;
mod rep;

pub use quotient::*;
pub use rep::*;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{add_scaled, unit_vec, vec_add, zero_vec, LinearMap, Matrix, Rational};
use crate::magma::Verdict;

/// A bilinear bracket on `ℚ^d`: `[eᵢ, eⱼ] = Σₖ c[i][j][k] eₖ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructureConstants {
    dim: usize,
    c: Vec<Rational>,
}

impl StructureConstants {
    pub fn zero(dim: usize) -> Self {
        StructureConstants {
            dim,
            c: vec![Rational::zero(); dim * dim * dim],
        }
    }

    pub fn new(dim: usize, c: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let ok = c.len() == dim
            && c.iter().all(|row| row.len() == dim && row.iter().all(|v| v.len() == dim));
        if !ok {
            return Err(Error::Malformed(format!(
                "structure constants must be a {dim}×{dim}×{dim} array"
            )));
        }
        Ok(StructureConstants {
            dim,
            c: c.into_iter().flatten().flatten().collect(),
        })
    }

    /// Builds constants from the bracket of basis vectors.
    pub fn from_basis_fn(dim: usize, f: impl Fn(usize, usize) -> Vec<Rational>) -> Self {
        let mut s = StructureConstants::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                assert_eq!(v.len(), dim, "bracket value length");
                s.c[(i * dim + j) * dim..(i * dim + j + 1) * dim].clone_from_slice(&v);
            }
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        let d = self.dim;
        self.c[(i * d + j) * d + k] = v;
    }

    /// `[eᵢ, eⱼ]` as a coordinate vector.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Rational] {
        let d = self.dim;
        &self.c[(i * d + j) * d..(i * d + j + 1) * d]
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let d = self.dim;
        let mut out = zero_vec(d);
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                add_scaled(&mut out, &(ui * vj), self.basis_bracket(i, j));
            }
        }
        out
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<Rational>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.basis_bracket(i, j).to_vec()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// First `(i, j)` with `[eᵢ, eⱼ] ≠ −[eⱼ, eᵢ]` or `[eᵢ, eᵢ] ≠ 0`.
    pub fn skew_witness(&self) -> Option<(usize, usize)> {
        let d = self.dim;
        (0..d)
            .flat_map(|i| (i..d).map(move |j| (i, j)))
            .find(|&(i, j)| {
                vec_add(self.basis_bracket(i, j), self.basis_bracket(j, i))
                    .iter()
                    .any(|v| !v.is_zero())
            })
    }

    /// The bracket in the basis given by the columns of `t`:
    /// `[x, y]' = t⁻¹[tx, ty]`.
    pub fn change_basis(&self, t: &Matrix) -> Result<Self> {
        if t.rows() != self.dim || !t.is_square() {
            return Err(Error::SizeMismatch("basis change dimension".into()));
        }
        let inv = t
            .inverse()
            .ok_or_else(|| Error::Precondition("basis change is singular".into()))?;
        let cols: Vec<Vec<Rational>> = (0..self.dim).map(|j| t.column(j)).collect();
        Ok(StructureConstants::from_basis_fn(self.dim, |i, j| {
            inv.apply(&self.bracket(&cols[i], &cols[j]))
        }))
    }

    /// The commutator `ab − ba` of a product given by structure constants.
    pub fn commutator(&self) -> Self {
        StructureConstants::from_basis_fn(self.dim, |i, j| {
            crate::linalg::vec_sub(self.basis_bracket(i, j), self.basis_bracket(j, i))
        })
    }

    /// `{x, y} = [P x, y]`.
    fn precompose_left(&self, p: &LinearMap) -> Self {
        StructureConstants::from_basis_fn(self.dim, |i, j| {
            self.bracket(&p.column(i), &unit_vec(self.dim, j))
        })
    }
}

/// A pair of brackets `⊣`, `⊢` on one space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiLeibniz {
    pub left: StructureConstants,
    pub right: StructureConstants,
}

impl DiLeibniz {
    pub fn new(left: StructureConstants, right: StructureConstants) -> Result<Self> {
        if left.dim() != right.dim() {
            return Err(Error::SizeMismatch("di-Leibniz brackets differ in dimension".into()));
        }
        Ok(DiLeibniz { left, right })
    }

    /// A single bracket used for both operations.
    pub fn diagonal(bracket: StructureConstants) -> Self {
        DiLeibniz {
            left: bracket.clone(),
            right: bracket,
        }
    }

    pub fn dim(&self) -> usize {
        self.left.dim()
    }
}

/// A Lie bracket `[ , ]` and a Leibniz bracket `{ , }` on one space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieLeibniz {
    pub lie: StructureConstants,
    pub leib: StructureConstants,
}

#[derive(Clone, Copy, Debug)]
pub enum AlgebraData<'a> {
    Lie(&'a StructureConstants),
    Leibniz(&'a StructureConstants),
    DiLeibniz(&'a DiLeibniz),
    LieLeibniz(&'a StructureConstants, &'a StructureConstants),
}

fn triples(d: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..d).flat_map(move |i| (0..d).flat_map(move |j| (0..d).map(move |k| (i, j, k))))
}

/// `{x, {y, z}} = {{x, y}, z} + {y, {x, z}}` checked on basis triples
/// with three (possibly different) brackets, written
/// `a(x, b(y, z)) = c(d(x, y), z) + e(y, f(x, z))`.
#[allow(clippy::too_many_arguments)]
fn leibniz_shape_witness(
    dim: usize,
    a: &StructureConstants,
    b: &StructureConstants,
    c: &StructureConstants,
    d: &StructureConstants,
    e: &StructureConstants,
    f: &StructureConstants,
) -> Option<[usize; 3]> {
    triples(dim)
        .find(|&(x, y, z)| {
            let ex = unit_vec(dim, x);
            let ey = unit_vec(dim, y);
            let ez = unit_vec(dim, z);
            let lhs = a.bracket(&ex, b.basis_bracket(y, z));
            let rhs = vec_add(
                &c.bracket(d.basis_bracket(x, y), &ez),
                &e.bracket(&ey, f.basis_bracket(x, z)),
            );
            lhs != rhs
        })
        .map(|(x, y, z)| [x, y, z])
}

fn jacobi_witness(s: &StructureConstants) -> Option<[usize; 3]> {
    // with skew-symmetry, Jacobi is the Leibniz identity
    leibniz_shape_witness(s.dim(), s, s, s, s, s, s)
}

pub fn check_lie(s: &StructureConstants) -> Verdict {
    if let Some((i, j)) = s.skew_witness() {
        return Verdict::fail("skew-symmetry", vec![i, j]);
    }
    Verdict::from_witness(
        jacobi_witness(s).map(|t| crate::magma::Witness::new("jacobi", t.to_vec())),
    )
}

/// Jacobi identity alone, for brackets already known to be skew.
pub fn satisfies_jacobi(s: &StructureConstants) -> bool {
    jacobi_witness(s).is_none()
}

pub fn check_leibniz(s: &StructureConstants) -> Verdict {
    match leibniz_shape_witness(s.dim(), s, s, s, s, s, s) {
        None => Verdict::pass(),
        Some(t) => Verdict::fail("leibniz", t.to_vec()),
    }
}

/// The five compatibility identities between `⊣` and `⊢`.
pub fn check_di_leibniz(d: &DiLeibniz) -> Verdict {
    let (l, r) = (&d.left, &d.right);
    let n = d.dim();
    // (outer, inner, first-outer, first-inner, second-outer, second-inner)
    let identities: [(&str, [&StructureConstants; 6]); 5] = [
        ("dl1", [l, l, l, l, r, l]),
        ("dl2", [l, r, l, l, r, l]),
        ("dl3", [r, l, l, r, l, l]),
        ("dl4", [r, r, r, l, r, r]),
        ("dl5", [r, r, r, r, r, r]),
    ];
    for (name, [a, b, c, dd, e, f]) in identities {
        if let Some(t) = leibniz_shape_witness(n, a, b, c, dd, e, f) {
            return Verdict::fail(name, t.to_vec());
        }
    }
    Verdict::pass()
}

/// `[ , ]` is Lie, `{ , }` is Leibniz and
/// `{x, [y, z]} = [{x, y}, z] + [y, {x, z}]`.
pub fn check_lie_leibniz(lie: &StructureConstants, leib: &StructureConstants) -> Verdict {
    let lv = check_lie(lie);
    if !lv.holds {
        return lv;
    }
    let bv = check_leibniz(leib);
    if !bv.holds {
        return bv;
    }
    match leibniz_shape_witness(lie.dim(), leib, lie, lie, leib, lie, leib) {
        None => Verdict::pass(),
        Some(t) => Verdict::fail("derivation", t.to_vec()),
    }
}

pub fn validate_algebra(data: AlgebraData<'_>) -> Result<Verdict> {
    Ok(match data {
        AlgebraData::Lie(s) => check_lie(s),
        AlgebraData::Leibniz(s) => check_leibniz(s),
        AlgebraData::DiLeibniz(d) => check_di_leibniz(d),
        AlgebraData::LieLeibniz(lie, leib) => {
            if lie.dim() != leib.dim() {
                return Err(Error::SizeMismatch("brackets differ in dimension".into()));
            }
            check_lie_leibniz(lie, leib)
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AveragingKind {
    /// `[Px, Py] = P[Px, y]`.
    Lie,
    /// `{Px, Py} = P{Px, y}`.
    LeibnizLeft,
    /// `{Px, Py} = P{Px, y} = P{x, Py}`.
    Leibniz,
    /// `C[x, y] = [x, Cy]`.
    AdInvariant,
}

fn check_square(s: &StructureConstants, p: &LinearMap) -> Result<()> {
    if p.rows() != s.dim() || p.cols() != s.dim() {
        return Err(Error::SizeMismatch(format!(
            "operator is {}×{} on a {}-dimensional algebra",
            p.rows(),
            p.cols(),
            s.dim()
        )));
    }
    Ok(())
}

pub fn is_linear_averaging(kind: AveragingKind, s: &StructureConstants, p: &LinearMap) -> Result<Verdict> {
    check_square(s, p)?;
    let d = s.dim();
    let images: Vec<Vec<Rational>> = (0..d).map(|j| p.column(j)).collect();
    for x in 0..d {
        let ex = unit_vec(d, x);
        for y in 0..d {
            let ey = unit_vec(d, y);
            let (name, ok) = match kind {
                AveragingKind::Lie | AveragingKind::LeibnizLeft => {
                    let lhs = s.bracket(&images[x], &images[y]);
                    ("averaging", lhs == p.apply(&s.bracket(&images[x], &ey)))
                }
                AveragingKind::Leibniz => {
                    let lhs = s.bracket(&images[x], &images[y]);
                    let ok = lhs == p.apply(&s.bracket(&images[x], &ey))
                        && lhs == p.apply(&s.bracket(&ex, &images[y]));
                    ("averaging", ok)
                }
                AveragingKind::AdInvariant => (
                    "ad-invariance",
                    p.apply(s.basis_bracket(x, y)) == s.bracket(&ex, &images[y]),
                ),
            };
            if !ok {
                return Ok(Verdict::fail(name, vec![x, y]));
            }
        }
    }
    Ok(Verdict::pass())
}

/// `{x, y}_P = [Px, y]`, verified Leibniz.
pub fn descendent_leibniz(g: &StructureConstants, p: &LinearMap) -> Result<StructureConstants> {
    if let Some(w) = is_linear_averaging(AveragingKind::Lie, g, p)?.witness {
        return Err(Error::Precondition(format!("operator is not averaging: {w}")));
    }
    let leib = g.precompose_left(p);
    check_leibniz(&leib)
        .into_result()
        .map_err(|e| Error::Internal(format!("descendent bracket: {e}")))?;
    Ok(leib)
}

/// `(g, [ , ], { , }_P)`, verified Lie-Leibniz.
pub fn lie_leibniz_bundle(g: &StructureConstants, p: &LinearMap) -> Result<LieLeibniz> {
    let leib = descendent_leibniz(g, p)?;
    check_lie_leibniz(g, &leib)
        .into_result()
        .map_err(|e| Error::Internal(format!("descendent Lie-Leibniz: {e}")))?;
    Ok(LieLeibniz {
        lie: g.clone(),
        leib,
    })
}
