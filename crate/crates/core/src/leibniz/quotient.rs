use super::rep::{induced_unchecked, is_relative_averaging_linear, BiRepresentation};
use super::{
    check_di_leibniz, check_leibniz, check_lie, check_lie_leibniz, is_linear_averaging, AveragingKind, DiLeibniz,
    StructureConstants,
};
use crate::error::{Error, Result};
use crate::linalg::{unit_vec, vec_add, vec_sub, zero_vec, LinearMap, Matrix, Rational, Subspace};

/// `𝔡 / span{x ⊣ y − x ⊢ y}` with its Leibniz bracket and the action on `𝔡`.
#[derive(Clone, Debug)]
pub struct Leibnizification {
    /// The span of bracket differences.
    pub kernel: Subspace,
    /// Columns of `𝔡` whose unit vectors form the quotient basis.
    pub complement: Vec<usize>,
    pub bracket: StructureConstants,
    /// `q: 𝔡 → 𝔡_Leib`.
    pub quotient: LinearMap,
    pub rep: BiRepresentation,
}

impl Leibnizification {
    pub fn quotient_dim(&self) -> usize {
        self.complement.len()
    }
}

fn internal(what: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| Error::Internal(format!("{what}: {e}"))
}

pub fn leibnizification(d: &DiLeibniz) -> Result<Leibnizification> {
    check_di_leibniz(d).into_result()?;
    let n = d.dim();
    let diffs = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| vec_sub(d.left.basis_bracket(i, j), d.right.basis_bracket(i, j)))
        .collect();
    let kernel = Subspace::span(n, diffs);
    let complement = kernel.complement();
    let q = kernel.quotient_map();
    let m = complement.len();
    let bracket =
        StructureConstants::from_basis_fn(m, |a, b| q.apply(d.left.basis_bracket(complement[a], complement[b])));
    let rep = BiRepresentation::from_fns(
        m,
        n,
        |x, v| d.right.basis_bracket(complement[x], v).to_vec(),
        |v, x| d.left.basis_bracket(v, complement[x]).to_vec(),
    );

    check_leibniz(&bracket).into_result().map_err(internal("quotient bracket"))?;
    super::validate_representation(&bracket, &rep)?
        .into_result()
        .map_err(internal("quotient action"))?;
    is_relative_averaging_linear(&bracket, &rep, &q)?
        .into_result()
        .map_err(internal("quotient map"))?;
    if &induced_unchecked(&rep, &q) != d {
        return Err(Error::Internal("quotient map does not induce the input".into()));
    }
    Ok(Leibnizification {
        kernel,
        complement,
        bracket,
        quotient: q,
        rep,
    })
}

/// An averaging algebra containing a given algebra, with the embedding.
#[derive(Clone, Debug)]
pub struct AveragingEmbedding {
    pub ambient: StructureConstants,
    pub operator: LinearMap,
    pub inclusion: LinearMap,
    /// Dimension of the quotient summand placed first.
    pub quotient_dim: usize,
}

/// `(0, x)` in `ℚ^(m+n)`.
fn inclusion(m: usize, n: usize) -> LinearMap {
    let cols: Vec<Vec<Rational>> = (0..n).map(|j| unit_vec(m + n, m + j)).collect();
    Matrix::from_columns(m + n, &cols)
}

/// `P(a, y) = (q y, 0)`.
fn shift_operator(q: &LinearMap) -> LinearMap {
    let (m, n) = (q.rows(), q.cols());
    let cols: Vec<Vec<Rational>> = (0..m + n)
        .map(|j| {
            if j < m {
                zero_vec(m + n)
            } else {
                [q.column(j - m), zero_vec(n)].concat()
            }
        })
        .collect();
    Matrix::from_columns(m + n, &cols)
}

/// `𝔡_Leib ⊕ 𝔡` with `{(a, y), (a', y')} = ({a, a'}, ρL(a, y') + ρR(y, a'))`
/// and `P(a, y) = (q y, 0)`.
pub fn embed_di_leibniz(d: &DiLeibniz) -> Result<AveragingEmbedding> {
    let lz = leibnizification(d)?;
    let (m, n) = (lz.quotient_dim(), d.dim());
    let split = |v: &[Rational]| (v[..m].to_vec(), v[m..].to_vec());
    let ambient = StructureConstants::from_basis_fn(m + n, |i, j| {
        let (a, y) = split(&unit_vec(m + n, i));
        let (a2, y2) = split(&unit_vec(m + n, j));
        [lz.bracket.bracket(&a, &a2), vec_add(&lz.rep.left(&a, &y2), &lz.rep.right(&y, &a2))].concat()
    });
    let operator = shift_operator(&lz.quotient);
    let inc = inclusion(m, n);

    check_leibniz(&ambient).into_result().map_err(internal("ambient bracket"))?;
    is_linear_averaging(AveragingKind::Leibniz, &ambient, &operator)?
        .into_result()
        .map_err(internal("ambient operator"))?;
    if !inc.is_injective() {
        return Err(Error::Internal("inclusion is not injective".into()));
    }
    for x in 0..n {
        let ix = inc.column(x);
        for y in 0..n {
            let iy = inc.column(y);
            let left_ok = inc.apply(d.left.basis_bracket(x, y)) == ambient.bracket(&ix, &operator.apply(&iy));
            let right_ok = inc.apply(d.right.basis_bracket(x, y)) == ambient.bracket(&operator.apply(&ix), &iy);
            if !left_ok || !right_ok {
                return Err(Error::Internal(format!("inclusion fails on ({x}, {y})")));
            }
        }
    }
    Ok(AveragingEmbedding {
        ambient,
        operator,
        inclusion: inc,
        quotient_dim: m,
    })
}

/// `𝔤 / span{{x, x}}`: the Leibniz kernel and quotient map.
pub fn leibniz_kernel(leib: &StructureConstants) -> Subspace {
    let n = leib.dim();
    // {x, x} for all x spans the same space as {eᵢ,eᵢ} and {eᵢ,eⱼ} + {eⱼ,eᵢ}
    let gens = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            if i == j {
                leib.basis_bracket(i, i).to_vec()
            } else {
                vec_add(leib.basis_bracket(i, j), leib.basis_bracket(j, i))
            }
        })
        .collect();
    Subspace::span(n, gens)
}

/// `𝔤_Lie ⊕ 𝔤` with `[(a, y), (a', y')] = ([a, a'], ρ(a, y') − ρ(a', y) + [y, y'])`,
/// `ρ(⟨x⟩, y) = {x, y}`, and `P(a, y) = (⟨y⟩, 0)`.
pub fn embed_lie_leibniz(lie: &StructureConstants, leib: &StructureConstants) -> Result<AveragingEmbedding> {
    if lie.dim() != leib.dim() {
        return Err(Error::SizeMismatch("brackets differ in dimension".into()));
    }
    check_lie_leibniz(lie, leib).into_result()?;
    let n = lie.dim();
    let kernel = leibniz_kernel(leib);
    let comp = kernel.complement();
    let q = kernel.quotient_map();
    let m = comp.len();
    let quotient_bracket = StructureConstants::from_basis_fn(m, |a, b| q.apply(leib.basis_bracket(comp[a], comp[b])));
    let rho = |a: &[Rational], y: &[Rational]| {
        let lifted: Vec<Rational> = {
            let mut v = zero_vec(n);
            for (k, c) in a.iter().enumerate() {
                v[comp[k]] = c.clone();
            }
            v
        };
        leib.bracket(&lifted, y)
    };
    let split = |v: &[Rational]| (v[..m].to_vec(), v[m..].to_vec());
    let ambient = StructureConstants::from_basis_fn(m + n, |i, j| {
        let (a, y) = split(&unit_vec(m + n, i));
        let (a2, y2) = split(&unit_vec(m + n, j));
        let second = vec_add(&vec_sub(&rho(&a, &y2), &rho(&a2, &y)), &lie.bracket(&y, &y2));
        [quotient_bracket.bracket(&a, &a2), second].concat()
    });
    let operator = shift_operator(&q);
    let inc = inclusion(m, n);

    check_lie(&ambient).into_result().map_err(internal("ambient bracket"))?;
    is_linear_averaging(AveragingKind::Lie, &ambient, &operator)?
        .into_result()
        .map_err(internal("ambient operator"))?;
    for x in 0..n {
        let ix = inc.column(x);
        for y in 0..n {
            let iy = inc.column(y);
            let lie_ok = inc.apply(lie.basis_bracket(x, y)) == ambient.bracket(&ix, &iy);
            let leib_ok = inc.apply(leib.basis_bracket(x, y)) == ambient.bracket(&operator.apply(&ix), &iy);
            if !lie_ok || !leib_ok {
                return Err(Error::Internal(format!("inclusion fails on ({x}, {y})")));
            }
        }
    }
    Ok(AveragingEmbedding {
        ambient,
        operator,
        inclusion: inc,
        quotient_dim: m,
    })
}
