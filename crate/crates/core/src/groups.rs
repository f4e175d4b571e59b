//! Finite groups as Cayley tables, their automorphisms, permutation
//! closures, semidirect products and actions on finite sets.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::magma::{FiniteMagma, SetMap, Witness};
use crate::perm;

/// Default cap on the order of a group whose automorphisms are enumerated.
pub const AUTOMORPHISM_GUARD: usize = 12;

/// A validated finite group. Construct through [`validate_group`] or one
/// of the builders.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    magma: FiniteMagma,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.magma.size()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn magma(&self) -> &FiniteMagma {
        &self.magma
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.magma.op(x, y)
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    /// `g h g⁻¹`.
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inverse[g])
    }

    /// `x^k`, with `k` possibly negative.
    pub fn pow(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(x) } else { x };
        (0..k.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn commutativity_witness(&self) -> Option<(usize, usize)> {
        let n = self.order();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| self.mul(x, y) != self.mul(y, x))
    }

    pub fn is_abelian(&self) -> bool {
        self.commutativity_witness().is_none()
    }

    pub fn center(&self) -> Vec<usize> {
        let n = self.order();
        (0..n)
            .filter(|&z| (0..n).all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect()
    }

    /// The rack `g ⋄ h = g h g⁻¹`.
    pub fn conjugation_rack(&self) -> FiniteMagma {
        FiniteMagma::from_fn(self.order(), |g, h| self.conj(g, h))
    }

    /// Whether `f(xy) = f(x) f(y)` for a self-map `f`.
    pub fn is_endomorphism(&self, f: &SetMap) -> bool {
        is_homomorphism(f, self, self)
    }

    pub fn is_automorphism(&self, f: &SetMap) -> bool {
        f.len() == self.order() && f.is_bijective() && self.is_endomorphism(f)
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = vec![self.identity];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
        }
        queue.sort_unstable();
        queue
    }

    /// A small generating set, chosen greedily from the largest element
    /// orders down.
    pub fn generators(&self) -> Vec<usize> {
        let n = self.order();
        let mut candidates: Vec<usize> = (0..n).filter(|&x| x != self.identity).collect();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        let mut gens = Vec::new();
        let mut span = self.generated_subgroup(&gens);
        for x in candidates {
            if span.len() == n {
                break;
            }
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.generated_subgroup(&gens);
            }
        }
        gens
    }

    /// Word expressions for each element: `(parent, generator index)` such
    /// that `x = parent · gens[generator]`. The identity has no parent.
    fn spanning_tree(&self, gens: &[usize]) -> Vec<Option<(usize, usize)>> {
        let n = self.order();
        let mut tree = vec![None; n];
        let mut seen = vec![false; n];
        seen[self.identity] = true;
        let mut queue = vec![self.identity];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (i, &s) in gens.iter().enumerate() {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    tree[y] = Some((x, i));
                    queue.push(y);
                }
            }
        }
        tree
    }
}

/// Whether `f(xy) = f(x) f(y)` for `f: G → H`.
pub fn is_homomorphism(f: &SetMap, g: &FiniteGroup, h: &FiniteGroup) -> bool {
    let n = g.order();
    f.len() == n
        && f.codomain() == h.order()
        && (0..n).all(|x| (0..n).all(|y| f.apply(g.mul(x, y)) == h.mul(f.apply(x), f.apply(y))))
}

/// Checks the group axioms and caches identity and inverses.
pub fn validate_group(m: FiniteMagma) -> Result<FiniteGroup> {
    let n = m.size();
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| m.op(e, x) == x && m.op(x, e) == x))
        .ok_or_else(|| Error::NotAGroup("no two-sided identity element".into()))?;
    let mut inverse = Vec::with_capacity(n);
    for x in 0..n {
        let y = (0..n)
            .find(|&y| m.op(x, y) == identity && m.op(y, x) == identity)
            .ok_or_else(|| Error::NotAGroup(format!("element {x} has no inverse")))?;
        inverse.push(y);
    }
    for x in 0..n {
        for y in 0..n {
            let xy = m.op(x, y);
            for z in 0..n {
                if m.op(xy, z) != m.op(x, m.op(y, z)) {
                    return Err(Error::NotAGroup(format!(
                        "associativity fails at ({x}, {y}, {z})"
                    )));
                }
            }
        }
    }
    Ok(FiniteGroup {
        magma: m,
        identity,
        inverse,
    })
}

/// ℤₙ under addition.
pub fn cyclic(n: usize) -> FiniteGroup {
    validate_group(FiniteMagma::from_fn(n, |a, b| (a + b) % n)).expect("cyclic group")
}

/// The group of permutations in `perms` under composition `(στ)(x) = σ(τ(x))`,
/// indexed by position. The list must be closed under composition.
pub fn from_permutations(perms: &[Vec<usize>]) -> Result<FiniteGroup> {
    let index: HashMap<&[usize], usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i))
        .collect();
    if index.len() != perms.len() {
        return Err(Error::Malformed("repeated permutation".into()));
    }
    let n = perms.len();
    let mut rows = vec![vec![0; n]; n];
    for (i, p) in perms.iter().enumerate() {
        if !perm::is_permutation(p) {
            return Err(Error::NotAPermutation(format!("entry {i}: {p:?}")));
        }
        for (j, q) in perms.iter().enumerate() {
            let pq = perm::compose(p, q);
            rows[i][j] = *index.get(pq.as_slice()).ok_or_else(|| {
                Error::NotAGroup(format!("entries {i} and {j} compose outside the list"))
            })?;
        }
    }
    validate_group(FiniteMagma::new(rows)?)
}

/// Sₙ with elements in lexicographic order of their image arrays; the
/// identity is element 0.
pub fn symmetric(n: usize) -> FiniteGroup {
    from_permutations(&perm::all_permutations(n)).expect("symmetric group")
}

/// `G × H` with `(a, b)` at index `a·|H| + b`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let m = h.order();
    let table = FiniteMagma::from_fn(g.order() * m, |x, y| {
        g.mul(x / m, y / m) * m + h.mul(x % m, y % m)
    });
    validate_group(table).expect("direct product")
}

/// Dihedral group of order `2n` as symmetries of an `n`-gon.
pub fn dihedral(n: usize) -> FiniteGroup {
    let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    let closure = permutation_closure(&[
        SetMap::endo(rot).expect("rotation"),
        SetMap::endo(refl).expect("reflection"),
    ])
    .expect("dihedral closure");
    closure.group
}

/// Quaternion group `{±1, ±i, ±j, ±k}`; index `2u + s` encodes sign `s` and
/// unit `u ∈ {1, i, j, k}`.
pub fn quaternion() -> FiniteGroup {
    // unit products: (unit, negate)
    const UNIT: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let table = FiniteMagma::from_fn(8, |x, y| {
        let (u, neg) = UNIT[x / 2][y / 2];
        let sign = (x % 2) ^ (y % 2) ^ usize::from(neg);
        2 * u + sign
    });
    validate_group(table).expect("quaternion group")
}

/// One representative per isomorphism class of groups of order `≤ max_order`
/// (up to 8), labelled.
pub fn small_groups(max_order: usize) -> Vec<(&'static str, FiniteGroup)> {
    assert!(max_order <= 8, "small group catalogue stops at order 8");
    let z2 = cyclic(2);
    let mut out: Vec<(&'static str, FiniteGroup)> = vec![
        ("Z1", cyclic(1)),
        ("Z2", cyclic(2)),
        ("Z3", cyclic(3)),
        ("Z4", cyclic(4)),
        ("Z2xZ2", direct_product(&z2, &z2)),
        ("Z5", cyclic(5)),
        ("Z6", cyclic(6)),
        ("S3", symmetric(3)),
        ("Z7", cyclic(7)),
        ("Z8", cyclic(8)),
        ("Z4xZ2", direct_product(&cyclic(4), &z2)),
        ("Z2xZ2xZ2", direct_product(&direct_product(&z2, &z2), &z2)),
        ("D4", dihedral(4)),
        ("Q8", quaternion()),
    ];
    out.retain(|(_, g)| g.order() <= max_order);
    out
}

/// All homomorphisms `G → H` that are bijective, found by assigning images
/// to a generating set and extending along a spanning tree.
fn bijective_homomorphisms(g: &FiniteGroup, h: &FiniteGroup, first_only: bool) -> Vec<SetMap> {
    let n = g.order();
    if n != h.order() {
        return Vec::new();
    }
    let gens = g.generators();
    let tree = g.spanning_tree(&gens);
    // BFS order, so parents are resolved before children
    let mut order: Vec<usize> = (0..n).filter(|&x| x != g.identity()).collect();
    let depth = |mut x: usize| {
        let mut d = 0;
        while let Some((p, _)) = tree[x] {
            x = p;
            d += 1;
        }
        d
    };
    order.sort_by_key(|&x| (depth(x), x));
    let gen_orders: Vec<usize> = gens.iter().map(|&s| g.element_order(s)).collect();

    let mut out = Vec::new();
    let mut images = vec![0usize; gens.len()];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        k: usize,
        g: &FiniteGroup,
        h: &FiniteGroup,
        gen_orders: &[usize],
        tree: &[Option<(usize, usize)>],
        order: &[usize],
        images: &mut Vec<usize>,
        out: &mut Vec<SetMap>,
        first_only: bool,
    ) {
        if first_only && !out.is_empty() {
            return;
        }
        if k == images.len() {
            let n = g.order();
            let mut f = vec![usize::MAX; n];
            f[g.identity()] = h.identity();
            for &x in order {
                let (p, i) = tree[x].expect("non-identity element has a parent");
                f[x] = h.mul(f[p], images[i]);
            }
            let f = SetMap::from_vec_unchecked(f, n);
            if f.is_bijective() && is_homomorphism(&f, g, h) {
                out.push(f);
            }
            return;
        }
        for y in 0..h.order() {
            if h.element_order(y) == gen_orders[k] {
                images[k] = y;
                rec(k + 1, g, h, gen_orders, tree, order, images, out, first_only);
            }
        }
    }
    rec(
        0,
        g,
        h,
        &gen_orders,
        &tree,
        &order,
        &mut images,
        &mut out,
        first_only,
    );
    out.sort();
    out
}

/// Aut(G), sorted by image array. Refuses groups above `max_order`.
pub fn automorphism_group(g: &FiniteGroup, max_order: usize) -> Result<Vec<SetMap>> {
    if g.order() > max_order {
        return Err(Error::GuardExceeded {
            what: "automorphism group order",
            size: g.order(),
            limit: max_order,
        });
    }
    Ok(bijective_homomorphisms(g, g, false))
}

pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<SetMap> {
    bijective_homomorphisms(g, h, true).into_iter().next()
}

pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    find_isomorphism(g, h).is_some()
}

/// A group of permutations together with its Cayley table over the
/// element indices.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    pub elements: Vec<SetMap>,
    pub group: FiniteGroup,
}

impl PermutationGroup {
    pub fn index_of(&self, p: &SetMap) -> Option<usize> {
        self.elements.iter().position(|q| q == p)
    }
}

/// Closure of `gens` under composition, identity first, then breadth-first
/// discovery order.
pub fn permutation_closure(gens: &[SetMap]) -> Result<PermutationGroup> {
    let degree = match gens.first() {
        Some(g) => g.len(),
        None => return Err(Error::Malformed("closure needs at least one generator".into())),
    };
    for (i, g) in gens.iter().enumerate() {
        if g.len() != degree {
            return Err(Error::SizeMismatch(format!(
                "generator {i} acts on {} points, expected {degree}",
                g.len()
            )));
        }
        if !g.is_bijective() {
            return Err(Error::NotAPermutation(format!("generator {i}: {:?}", g.image())));
        }
    }
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut elements = vec![perm::identity(degree)];
    index.insert(elements[0].clone(), 0);
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        head += 1;
        for s in gens {
            let y = perm::compose(&x, s.image());
            if !index.contains_key(&y) {
                index.insert(y.clone(), elements.len());
                elements.push(y);
            }
        }
    }
    let n = elements.len();
    let table = FiniteMagma::from_fn(n, |i, j| index[&perm::compose(&elements[i], &elements[j])]);
    let group = validate_group(table)?;
    let elements = elements
        .into_iter()
        .map(|p| SetMap::from_vec_unchecked(p, degree))
        .collect();
    Ok(PermutationGroup { elements, group })
}

/// `G ⋉ H` with `(g, h)(g', h') = (gg', h · Φ_g(h'))`, element `(g, h)` at
/// index `g·|H| + h`. `hom[g]` is `Φ_g`.
pub fn semidirect_product(g: &FiniteGroup, h: &FiniteGroup, hom: &[SetMap]) -> Result<FiniteGroup> {
    if hom.len() != g.order() {
        return Err(Error::SizeMismatch(format!(
            "{} automorphisms supplied for a group of order {}",
            hom.len(),
            g.order()
        )));
    }
    for (x, phi) in hom.iter().enumerate() {
        if !h.is_automorphism(phi) {
            return Err(Error::axiom(
                "automorphism",
                format!("image of {x} is not an automorphism of the normal factor"),
            ));
        }
    }
    if hom[g.identity()] != SetMap::identity(h.order()) {
        return Err(Error::axiom("unital", "identity does not act trivially"));
    }
    for x in 0..g.order() {
        for y in 0..g.order() {
            if hom[g.mul(x, y)] != hom[x].compose(&hom[y]) {
                return Err(Error::axiom("homomorphism", format!("({x}, {y})")));
            }
        }
    }
    let m = h.order();
    let table = FiniteMagma::from_fn(g.order() * m, |a, b| {
        let (g1, h1) = (a / m, a % m);
        let (g2, h2) = (b / m, b % m);
        g.mul(g1, g2) * m + h.mul(h1, hom[g1].apply(h2))
    });
    validate_group(table).map_err(|e| Error::Internal(format!("semidirect product: {e}")))
}

/// An action of a group on `{0, …, set_size - 1}`; `phi[g][x] = Φ_g(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    pub group: FiniteGroup,
    pub set_size: usize,
    pub phi: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionReport {
    pub valid: bool,
    pub witnesses: Vec<Witness>,
}

impl GroupAction {
    pub fn new(group: FiniteGroup, set_size: usize, phi: Vec<Vec<usize>>) -> Result<Self> {
        if phi.len() != group.order() {
            return Err(Error::SizeMismatch(format!(
                "action has {} rows for a group of order {}",
                phi.len(),
                group.order()
            )));
        }
        for (g, row) in phi.iter().enumerate() {
            if row.len() != set_size {
                return Err(Error::SizeMismatch(format!(
                    "action row {g} has length {}, expected {set_size}",
                    row.len()
                )));
            }
            if let Some((x, &v)) = row.iter().enumerate().find(|(_, &v)| v >= set_size) {
                return Err(Error::EntryOutOfRange {
                    row: g,
                    col: x,
                    value: v,
                    size: set_size,
                });
            }
        }
        Ok(GroupAction {
            group,
            set_size,
            phi,
        })
    }

    /// `Φ_g(h) = g h g⁻¹` on the group itself.
    pub fn adjoint(group: &FiniteGroup) -> Self {
        let n = group.order();
        let phi = (0..n)
            .map(|g| (0..n).map(|h| group.conj(g, h)).collect())
            .collect();
        GroupAction {
            group: group.clone(),
            set_size: n,
            phi,
        }
    }

    pub fn trivial(group: &FiniteGroup, set_size: usize) -> Self {
        GroupAction {
            group: group.clone(),
            set_size,
            phi: vec![perm::identity(set_size); group.order()],
        }
    }

    /// The action on `H` through a homomorphism into Aut(H).
    pub fn from_automorphisms(group: &FiniteGroup, autos: &[SetMap]) -> Result<Self> {
        let m = autos.first().map_or(0, SetMap::len);
        GroupAction::new(
            group.clone(),
            m,
            autos.iter().map(|a| a.image().to_vec()).collect(),
        )
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.phi[g][x]
    }
}

/// Checks `Φ_e = Id`, `Φ_{gh} = Φ_g Φ_h` and bijectivity of each `Φ_g`.
pub fn validate_action(a: &GroupAction) -> ActionReport {
    let g = &a.group;
    let n = g.order();
    let m = a.set_size;
    let mut witnesses = Vec::new();
    let e = g.identity();
    if let Some(x) = (0..m).find(|&x| a.act(e, x) != x) {
        witnesses.push(Witness::new("identity-acts-trivially", vec![x]));
    }
    'outer: for x in 0..n {
        for y in 0..n {
            for p in 0..m {
                if a.act(g.mul(x, y), p) != a.act(x, a.act(y, p)) {
                    witnesses.push(Witness::new("compatibility", vec![x, y, p]));
                    break 'outer;
                }
            }
        }
    }
    if let Some(x) = (0..n).find(|&x| !perm::is_permutation(&a.phi[x])) {
        witnesses.push(Witness::new("bijective", vec![x]));
    }
    ActionReport {
        valid: witnesses.is_empty(),
        witnesses,
    }
}
