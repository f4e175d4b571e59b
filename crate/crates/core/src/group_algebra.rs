//! The group algebra `ℚ[G]` as a cocommutative Hopf algebra.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::linalg::{unit_vec, zero_vec, LinearMap, Matrix, Rational};
use crate::magma::{SetMap, Verdict};

/// `Σ coeffs[g]·g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupAlgebraElement {
    pub coeffs: Vec<Rational>,
}

impl GroupAlgebraElement {
    pub fn basis(n: usize, g: usize) -> Self {
        GroupAlgebraElement {
            coeffs: unit_vec(n, g),
        }
    }

    fn support(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// The unique `g` with coefficient 1 when this is group-like.
    pub fn as_group_like(&self) -> Option<usize> {
        let mut it = self.support();
        match (it.next(), it.next()) {
            (Some((g, c)), None) if c.is_one() => Some(g),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct GroupAlgebra<'a> {
    group: &'a FiniteGroup,
}

impl<'a> GroupAlgebra<'a> {
    pub fn new(group: &'a FiniteGroup) -> Self {
        GroupAlgebra { group }
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn group(&self) -> &'a FiniteGroup {
        self.group
    }

    pub fn element(&self, coeffs: Vec<Rational>) -> Result<GroupAlgebraElement> {
        if coeffs.len() != self.dim() {
            return Err(Error::SizeMismatch(format!(
                "element has {} coefficients, group has order {}",
                coeffs.len(),
                self.dim()
            )));
        }
        Ok(GroupAlgebraElement { coeffs })
    }

    pub fn basis(&self, g: usize) -> GroupAlgebraElement {
        GroupAlgebraElement::basis(self.dim(), g)
    }

    fn check(&self, x: &GroupAlgebraElement) -> Result<()> {
        if x.coeffs.len() != self.dim() {
            return Err(Error::SizeMismatch("element belongs to a different group algebra".into()));
        }
        Ok(())
    }

    pub fn multiply(&self, x: &GroupAlgebraElement, y: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    fn mul_unchecked(&self, x: &GroupAlgebraElement, y: &GroupAlgebraElement) -> GroupAlgebraElement {
        let mut out = zero_vec(self.dim());
        for (g, a) in x.support() {
            for (h, b) in y.support() {
                out[self.group.mul(g, h)] += a * b;
            }
        }
        GroupAlgebraElement { coeffs: out }
    }

    /// `Δ(Σ aᵍ g) = Σ aᵍ g⊗g`, as the matrix of coefficients on `g⊗h`.
    pub fn coproduct(&self, x: &GroupAlgebraElement) -> Result<Matrix> {
        self.check(x)?;
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for (g, a) in x.support() {
            m[(g, g)] = a.clone();
        }
        Ok(m)
    }

    pub fn counit(&self, x: &GroupAlgebraElement) -> Result<Rational> {
        self.check(x)?;
        Ok(x.coeffs.iter().sum())
    }

    pub fn antipode(&self, x: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        self.check(x)?;
        Ok(self.antipode_unchecked(x))
    }

    fn antipode_unchecked(&self, x: &GroupAlgebraElement) -> GroupAlgebraElement {
        let mut out = zero_vec(self.dim());
        for (g, a) in x.support() {
            out[self.group.inv(g)] = a.clone();
        }
        GroupAlgebraElement { coeffs: out }
    }

    fn image(&self, b: &LinearMap, g: usize) -> GroupAlgebraElement {
        GroupAlgebraElement { coeffs: b.column(g) }
    }

    fn apply(&self, b: &LinearMap, x: &GroupAlgebraElement) -> GroupAlgebraElement {
        GroupAlgebraElement {
            coeffs: b.apply(&x.coeffs),
        }
    }
}

fn check_operator(g: &FiniteGroup, b: &LinearMap) -> Result<()> {
    if b.rows() != g.order() || b.cols() != g.order() {
        return Err(Error::SizeMismatch(format!(
            "operator is {}×{}, group has order {}",
            b.rows(),
            b.cols(),
            g.order()
        )));
    }
    Ok(())
}

/// The linear extension of `A` to `ℚ[G]`.
pub fn extend_operator(g: &FiniteGroup, a: &SetMap) -> Result<LinearMap> {
    if a.len() != g.order() || a.codomain() != g.order() {
        return Err(Error::SizeMismatch("map does not act on the group".into()));
    }
    let cols: Vec<Vec<Rational>> = a.image().iter().map(|&h| unit_vec(g.order(), h)).collect();
    Ok(Matrix::from_columns(g.order(), &cols))
}

/// `Δ∘B = (B⊗B)∘Δ` and `ε∘B = ε` on basis elements.
pub fn is_coalgebra_map(g: &FiniteGroup, b: &LinearMap) -> Result<Verdict> {
    check_operator(g, b)?;
    let alg = GroupAlgebra::new(g);
    for x in 0..g.order() {
        let bx = alg.image(b, x);
        if !alg.counit(&bx)?.is_one() {
            return Ok(Verdict::fail("counit", vec![x]));
        }
        // Δ(Bx) is diagonal, (B⊗B)(x⊗x) = Bx⊗Bx is the outer product
        let n = g.order();
        let ok = (0..n).all(|i| {
            (0..n).all(|j| {
                let outer = &bx.coeffs[i] * &bx.coeffs[j];
                if i == j {
                    outer == bx.coeffs[i]
                } else {
                    outer.is_zero()
                }
            })
        });
        if !ok {
            return Ok(Verdict::fail("coproduct", vec![x]));
        }
    }
    Ok(Verdict::pass())
}

/// Coalgebra map plus `B(x₁) B(y) S(B(x₂)) = B(B(x₁) y S(B(x₂)))` on basis pairs.
pub fn is_hopf_averaging(g: &FiniteGroup, b: &LinearMap) -> Result<Verdict> {
    let coalg = is_coalgebra_map(g, b)?;
    if !coalg.holds {
        return Ok(coalg);
    }
    let alg = GroupAlgebra::new(g);
    let images: Vec<GroupAlgebraElement> = (0..g.order()).map(|x| alg.image(b, x)).collect();
    for x in 0..g.order() {
        let bx = &images[x];
        let sbx = alg.antipode_unchecked(bx);
        for (y, by) in images.iter().enumerate() {
            let lhs = alg.mul_unchecked(&alg.mul_unchecked(bx, by), &sbx);
            let inner = alg.mul_unchecked(&alg.mul_unchecked(bx, &alg.basis(y)), &sbx);
            if lhs != alg.apply(b, &inner) {
                return Ok(Verdict::fail("averaging", vec![x, y]));
            }
        }
    }
    Ok(Verdict::pass())
}

/// The set map underlying a group-like-valued `B`.
pub fn restrict_operator(g: &FiniteGroup, b: &LinearMap) -> Result<SetMap> {
    check_operator(g, b)?;
    let alg = GroupAlgebra::new(g);
    let image = (0..g.order())
        .map(|x| {
            alg.image(b, x).as_group_like().ok_or_else(|| {
                Error::Precondition(format!("B({x}) is not group-like"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    SetMap::new(image, g.order())
}
