use num_traits::Zero;

use super::{check_di_leibniz, check_leibniz, DiLeibniz, StructureConstants};
use crate::error::{Error, Result};
use crate::linalg::{add_scaled, unit_vec, vec_add, zero_vec, LinearMap, Matrix, Rational, Subspace};
use crate::magma::Verdict;

/// Left and right actions of a Leibniz algebra `h` on `V`.
///
/// `rho_l(eₓ, eᵥ) = Σ rho_l[x][v][w] e_w`, `rho_r(eᵥ, eₓ) = Σ rho_r[v][x][w] e_w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiRepresentation {
    algebra_dim: usize,
    module_dim: usize,
    rho_l: Vec<Rational>,
    rho_r: Vec<Rational>,
}

impl BiRepresentation {
    pub fn new(
        algebra_dim: usize,
        module_dim: usize,
        rho_l: Vec<Vec<Vec<Rational>>>,
        rho_r: Vec<Vec<Vec<Rational>>>,
    ) -> Result<Self> {
        let shape = |a: &Vec<Vec<Vec<Rational>>>, n1: usize, n2: usize| {
            a.len() == n1 && a.iter().all(|r| r.len() == n2 && r.iter().all(|v| v.len() == module_dim))
        };
        if !shape(&rho_l, algebra_dim, module_dim) || !shape(&rho_r, module_dim, algebra_dim) {
            return Err(Error::Malformed("representation arrays have the wrong shape".into()));
        }
        Ok(BiRepresentation {
            algebra_dim,
            module_dim,
            rho_l: rho_l.into_iter().flatten().flatten().collect(),
            rho_r: rho_r.into_iter().flatten().flatten().collect(),
        })
    }

    pub fn from_fns(
        algebra_dim: usize,
        module_dim: usize,
        left: impl Fn(usize, usize) -> Vec<Rational>,
        right: impl Fn(usize, usize) -> Vec<Rational>,
    ) -> Self {
        let mut rho_l = Vec::with_capacity(algebra_dim * module_dim * module_dim);
        for x in 0..algebra_dim {
            for v in 0..module_dim {
                rho_l.extend(left(x, v));
            }
        }
        let mut rho_r = Vec::with_capacity(algebra_dim * module_dim * module_dim);
        for v in 0..module_dim {
            for x in 0..algebra_dim {
                rho_r.extend(right(v, x));
            }
        }
        assert_eq!(rho_l.len(), algebra_dim * module_dim * module_dim);
        assert_eq!(rho_r.len(), algebra_dim * module_dim * module_dim);
        BiRepresentation {
            algebra_dim,
            module_dim,
            rho_l,
            rho_r,
        }
    }

    pub fn adjoint(h: &StructureConstants) -> Self {
        let d = h.dim();
        BiRepresentation::from_fns(
            d,
            d,
            |x, v| h.basis_bracket(x, v).to_vec(),
            |v, x| h.basis_bracket(v, x).to_vec(),
        )
    }

    pub fn zero(algebra_dim: usize, module_dim: usize) -> Self {
        BiRepresentation::from_fns(
            algebra_dim,
            module_dim,
            |_, _| zero_vec(module_dim),
            |_, _| zero_vec(module_dim),
        )
    }

    /// `hⁿ` with the bracket acting in every coordinate block.
    pub fn copies(h: &StructureConstants, n: usize) -> Self {
        let d = h.dim();
        let block = |v: usize, val: &[Rational]| {
            let mut out = zero_vec(n * d);
            let b = v / d;
            out[b * d..(b + 1) * d].clone_from_slice(val);
            out
        };
        BiRepresentation::from_fns(
            d,
            n * d,
            |x, v| block(v, h.basis_bracket(x, v % d)),
            |v, x| block(v, h.basis_bracket(v % d, x)),
        )
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    fn left_basis(&self, x: usize, v: usize) -> &[Rational] {
        let m = self.module_dim;
        &self.rho_l[(x * m + v) * m..(x * m + v + 1) * m]
    }

    fn right_basis(&self, v: usize, x: usize) -> &[Rational] {
        let m = self.module_dim;
        let base = (v * self.algebra_dim + x) * m;
        &self.rho_r[base..base + m]
    }

    pub fn left(&self, x: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = zero_vec(self.module_dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                add_scaled(&mut out, &(xi * vj), self.left_basis(i, j));
            }
        }
        out
    }

    pub fn right(&self, v: &[Rational], x: &[Rational]) -> Vec<Rational> {
        let mut out = zero_vec(self.module_dim);
        for (j, vj) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                add_scaled(&mut out, &(xi * vj), self.right_basis(j, i));
            }
        }
        out
    }

    /// Same actions with `rho_r` negated.
    pub fn negate_right(&self) -> Self {
        BiRepresentation {
            rho_r: self.rho_r.iter().map(|c| -c).collect(),
            ..self.clone()
        }
    }
}

fn check_dims(h: &StructureConstants, rep: &BiRepresentation) -> Result<()> {
    if h.dim() != rep.algebra_dim {
        return Err(Error::SizeMismatch(format!(
            "representation of a {}-dimensional algebra used with a {}-dimensional one",
            rep.algebra_dim,
            h.dim()
        )));
    }
    Ok(())
}

/// The three representation axioms on basis triples `(x, y, v)`.
pub fn validate_representation(h: &StructureConstants, rep: &BiRepresentation) -> Result<Verdict> {
    check_dims(h, rep)?;
    let (d, m) = (h.dim(), rep.module_dim);
    for x in 0..d {
        let ex = unit_vec(d, x);
        for y in 0..d {
            let ey = unit_vec(d, y);
            let xy = h.basis_bracket(x, y);
            for v in 0..m {
                let ev = unit_vec(m, v);
                let lhs = rep.left(&ex, rep.left_basis(y, v));
                let rhs = vec_add(&rep.left(xy, &ev), &rep.left(&ey, rep.left_basis(x, v)));
                if lhs != rhs {
                    return Ok(Verdict::fail("left-left", vec![x, y, v]));
                }
                let lhs = rep.left(&ex, rep.right_basis(v, y));
                let rhs = vec_add(&rep.right(rep.left_basis(x, v), &ey), &rep.right(&ev, xy));
                if lhs != rhs {
                    return Ok(Verdict::fail("left-right", vec![x, y, v]));
                }
                let lhs = rep.right(&ev, xy);
                let rhs = vec_add(&rep.right(rep.right_basis(v, x), &ey), &rep.left(&ex, rep.right_basis(v, y)));
                if lhs != rhs {
                    return Ok(Verdict::fail("right-right", vec![x, y, v]));
                }
            }
        }
    }
    Ok(Verdict::pass())
}

fn check_operator(h: &StructureConstants, rep: &BiRepresentation, p: &LinearMap) -> Result<()> {
    check_dims(h, rep)?;
    if p.rows() != h.dim() || p.cols() != rep.module_dim {
        return Err(Error::SizeMismatch(format!(
            "operator V→h must be {}×{}, got {}×{}",
            h.dim(),
            rep.module_dim,
            p.rows(),
            p.cols()
        )));
    }
    Ok(())
}

/// `{Pu, Pv} = P ρL(Pu, v) = P ρR(u, Pv)` on basis pairs of `V`.
pub fn is_relative_averaging_linear(
    h: &StructureConstants,
    rep: &BiRepresentation,
    p: &LinearMap,
) -> Result<Verdict> {
    check_operator(h, rep, p)?;
    let m = rep.module_dim;
    let images: Vec<Vec<Rational>> = (0..m).map(|j| p.column(j)).collect();
    for u in 0..m {
        for v in 0..m {
            let lhs = h.bracket(&images[u], &images[v]);
            if lhs != p.apply(&rep.left(&images[u], &unit_vec(m, v))) {
                return Ok(Verdict::fail("left-action", vec![u, v]));
            }
            if lhs != p.apply(&rep.right(&unit_vec(m, u), &images[v])) {
                return Ok(Verdict::fail("right-action", vec![u, v]));
            }
        }
    }
    Ok(Verdict::pass())
}

/// `h ⊕ V` with `⊣ = ({x,y}, ρR(u,y))` and `⊢ = ({x,y}, ρL(x,v))`.
pub fn hemi_semidirect(h: &StructureConstants, rep: &BiRepresentation) -> Result<DiLeibniz> {
    check_leibniz(h).into_result()?;
    validate_representation(h, rep)?.into_result()?;
    let (d, m) = (h.dim(), rep.module_dim);
    let n = d + m;
    let split = |i: usize| -> (Vec<Rational>, Vec<Rational>) {
        let e = unit_vec(n, i);
        (e[..d].to_vec(), e[d..].to_vec())
    };
    let left = StructureConstants::from_basis_fn(n, |i, j| {
        let ((x, u), (y, _)) = (split(i), split(j));
        [h.bracket(&x, &y), rep.right(&u, &y)].concat()
    });
    let right = StructureConstants::from_basis_fn(n, |i, j| {
        let ((x, _), (y, v)) = (split(i), split(j));
        [h.bracket(&x, &y), rep.left(&x, &v)].concat()
    });
    let out = DiLeibniz { left, right };
    check_di_leibniz(&out)
        .into_result()
        .map_err(|e| Error::Internal(format!("hemi-semidirect product: {e}")))?;
    Ok(out)
}

/// `⊣ᴾ = ρR(u, Pv)`, `⊢ᴾ = ρL(Pu, v)` on `V`, for relative averaging `P`.
pub fn induced_di_leibniz(h: &StructureConstants, rep: &BiRepresentation, p: &LinearMap) -> Result<DiLeibniz> {
    if let Some(w) = is_relative_averaging_linear(h, rep, p)?.witness {
        return Err(Error::Precondition(format!("operator is not relative averaging: {w}")));
    }
    let out = induced_unchecked(rep, p);
    check_di_leibniz(&out)
        .into_result()
        .map_err(|e| Error::Internal(format!("induced di-Leibniz: {e}")))?;
    Ok(out)
}

pub(crate) fn induced_unchecked(rep: &BiRepresentation, p: &LinearMap) -> DiLeibniz {
    let m = rep.module_dim;
    let images: Vec<Vec<Rational>> = (0..m).map(|j| p.column(j)).collect();
    DiLeibniz {
        left: StructureConstants::from_basis_fn(m, |u, v| rep.right(&unit_vec(m, u), &images[v])),
        right: StructureConstants::from_basis_fn(m, |u, v| rep.left(&images[u], &unit_vec(m, v))),
    }
}

/// Whether the graph `{(Pv, v)}` is closed under both hemi-semidirect brackets.
pub fn graph_check_linear(h: &StructureConstants, rep: &BiRepresentation, p: &LinearMap) -> Result<bool> {
    check_operator(h, rep, p)?;
    let hemi = hemi_semidirect(h, rep)?;
    let m = rep.module_dim;
    let graph: Vec<Vec<Rational>> = (0..m)
        .map(|j| [p.column(j), unit_vec(m, j)].concat())
        .collect();
    let span = Subspace::span(h.dim() + m, graph.clone());
    Ok(graph.iter().all(|a| {
        graph
            .iter()
            .all(|b| span.contains(&hemi.left.bracket(a, b)) && span.contains(&hemi.right.bracket(a, b)))
    }))
}

/// Linear map `hⁿ → h` summing the blocks.
pub fn sum_map(d: usize, n: usize) -> LinearMap {
    let cols: Vec<Vec<Rational>> = (0..n * d).map(|j| unit_vec(d, j % d)).collect();
    Matrix::from_columns(d, &cols)
}

/// Linear map `hⁿ → h` picking block `i`.
pub fn projection_map(d: usize, n: usize, i: usize) -> LinearMap {
    let cols: Vec<Vec<Rational>> = (0..n * d)
        .map(|j| if j / d == i { unit_vec(d, j % d) } else { zero_vec(d) })
        .collect();
    Matrix::from_columns(d, &cols)
}
