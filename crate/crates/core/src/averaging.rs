//! Averaging operators on groups and racks.
//!
//! On a group `𝒜(g)𝒜(h)𝒜(g)⁻¹ = 𝒜(𝒜(g)h𝒜(g)⁻¹)`; on a rack
//! `𝒜(x) ⋄ 𝒜(y) = 𝒜(𝒜(x) ⋄ y)`. Both read `a ⋄ b` as conjugation on a
//! group, so most routines take a [`Carrier`] and work through
//! [`Carrier::act`].

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{permutation_closure, semidirect_product, FiniteGroup, GroupAction, PermutationGroup};
use crate::magma::{self, FiniteMagma, SetMap, Verdict};
use crate::pairings;

/// Default size cap for exhaustive operator enumeration.
pub const ENUMERATION_GUARD: usize = 8;

#[derive(Clone, Copy, Debug)]
pub enum Carrier<'a> {
    Group(&'a FiniteGroup),
    Rack(&'a FiniteMagma),
}

impl<'a> Carrier<'a> {
    pub fn size(&self) -> usize {
        match self {
            Carrier::Group(g) => g.order(),
            Carrier::Rack(q) => q.size(),
        }
    }

    /// `a ⋄ b`, i.e. `a b a⁻¹` on a group.
    #[inline]
    pub fn act(&self, a: usize, b: usize) -> usize {
        match self {
            Carrier::Group(g) => g.mul(g.mul(a, b), g.inv(a)),
            Carrier::Rack(q) => q.op(a, b),
        }
    }

    /// The table of `⋄`; the conjugation rack for a group.
    pub fn rack(&self) -> FiniteMagma {
        match self {
            Carrier::Group(g) => g.conjugation_rack(),
            Carrier::Rack(q) => (*q).clone(),
        }
    }

    /// The group identity, or the smallest pointed element of a rack.
    pub fn distinguished(&self) -> Option<usize> {
        match self {
            Carrier::Group(g) => Some(g.identity()),
            Carrier::Rack(q) => magma::pointed_elements(q).first().copied(),
        }
    }

    fn check_map(&self, a: &SetMap) -> Result<()> {
        let n = self.size();
        if a.len() != n || a.codomain() != n {
            return Err(Error::SizeMismatch(format!(
                "operator on {} points for a carrier of size {n}",
                a.len()
            )));
        }
        Ok(())
    }
}

/// Checks the averaging identity on all pairs; the witness is the first
/// failing `(x, y)`.
pub fn is_averaging(carrier: Carrier<'_>, a: &SetMap) -> Result<Verdict> {
    carrier.check_map(a)?;
    let n = carrier.size();
    for x in 0..n {
        let ax = a.apply(x);
        for y in 0..n {
            if carrier.act(ax, a.apply(y)) != a.apply(carrier.act(ax, y)) {
                return Ok(Verdict::fail("averaging", vec![x, y]));
            }
        }
    }
    Ok(Verdict::pass())
}

#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    /// Keep only operators fixing [`Carrier::distinguished`].
    pub pointed_only: bool,
    pub max_size: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            pointed_only: false,
            max_size: ENUMERATION_GUARD,
        }
    }
}

/// Partial assignment with an undo trail, used by the enumeration search.
struct Search<'t> {
    n: usize,
    table: &'t FiniteMagma,
    image: Vec<Option<usize>>,
    assigned: Vec<usize>,
}

impl<'t> Search<'t> {
    fn new(table: &'t FiniteMagma) -> Self {
        let n = table.size();
        Search {
            n,
            table,
            image: vec![None; n],
            assigned: Vec::with_capacity(n),
        }
    }

    /// Assigns `x ↦ v` and closes under the pinning rule
    /// `𝒜(𝒜(x) ⋄ y) = 𝒜(x) ⋄ 𝒜(y)`. Returns false on conflict; the trail
    /// keeps whatever was assigned so the caller can undo it.
    fn assign(&mut self, x: usize, v: usize) -> bool {
        match self.image[x] {
            Some(w) => return w == v,
            None => {
                self.image[x] = Some(v);
                self.assigned.push(x);
            }
        }
        let mut head = self.assigned.len() - 1;
        while head < self.assigned.len() {
            let u = self.assigned[head];
            head += 1;
            let au = self.image[u].expect("assigned");
            // constraints involving u as either argument
            for i in 0..self.assigned.len() {
                let w = self.assigned[i];
                let aw = self.image[w].expect("assigned");
                for &(ax, ay, y) in &[(au, aw, w), (aw, au, u)] {
                    let p = self.table.op(ax, y);
                    let required = self.table.op(ax, ay);
                    match self.image[p] {
                        Some(ap) if ap != required => return false,
                        Some(_) => {}
                        None => {
                            self.image[p] = Some(required);
                            self.assigned.push(p);
                        }
                    }
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.assigned.len() > mark {
            let x = self.assigned.pop().expect("trail entry");
            self.image[x] = None;
        }
    }

    fn run(&mut self, next: usize, out: &mut Vec<SetMap>) {
        let mut k = next;
        while k < self.n && self.image[k].is_some() {
            k += 1;
        }
        if k == self.n {
            let image = self.image.iter().map(|v| v.expect("complete")).collect();
            out.push(SetMap::from_vec_unchecked(image, self.n));
            return;
        }
        for v in 0..self.n {
            let mark = self.assigned.len();
            if self.assign(k, v) {
                self.run(k + 1, out);
            }
            self.undo_to(mark);
        }
    }
}

/// Every averaging operator on the carrier, sorted by image array.
///
/// Depth-first over image arrays with constraint propagation; the first
/// free position is split across worker threads.
pub fn enumerate_averaging(carrier: Carrier<'_>, opts: EnumerateOptions) -> Result<Vec<SetMap>> {
    let n = carrier.size();
    if n > opts.max_size {
        return Err(Error::GuardExceeded {
            what: "averaging enumeration size",
            size: n,
            limit: opts.max_size,
        });
    }
    let table = carrier.rack();
    let mut root = Search::new(&table);
    if opts.pointed_only {
        let e = carrier.distinguished().ok_or_else(|| {
            Error::Precondition("pointed enumeration needs a pointed carrier".into())
        })?;
        if !root.assign(e, e) {
            return Ok(Vec::new());
        }
    }
    let first = match (0..n).find(|&k| root.image[k].is_none()) {
        Some(k) => k,
        None => {
            let mut out = Vec::new();
            root.run(0, &mut out);
            return Ok(out);
        }
    };
    let seed = (root.image.clone(), root.assigned.clone());
    let mut out: Vec<SetMap> = (0..n)
        .into_par_iter()
        .flat_map_iter(|v| {
            let mut s = Search {
                n,
                table: &table,
                image: seed.0.clone(),
                assigned: seed.1.clone(),
            };
            let mut found = Vec::new();
            if s.assign(first, v) {
                s.run(first + 1, &mut found);
            }
            found
        })
        .collect();
    out.sort();
    Ok(out)
}

/// `x ⋄_𝒜 y = 𝒜(x) ⋄ y` (on a group, `𝒜(x) y 𝒜(x)⁻¹`).
pub fn descendent_rack(carrier: Carrier<'_>, a: &SetMap) -> Result<FiniteMagma> {
    require_averaging(carrier, a)?;
    Ok(FiniteMagma::from_fn(carrier.size(), |x, y| {
        carrier.act(a.apply(x), y)
    }))
}

fn require_averaging(carrier: Carrier<'_>, a: &SetMap) -> Result<()> {
    let v = is_averaging(carrier, a)?;
    match v.witness {
        None => Ok(()),
        Some(w) => Err(Error::Precondition(format!(
            "operator is not averaging: identity fails at {:?}",
            w.elements
        ))),
    }
}

#[derive(Clone, Copy, Debug)]
pub enum ProductRack<'a> {
    /// `(g₁, g) ⋄ (h₁, h) = (g₁h₁g₁⁻¹, g₁hg₁⁻¹)` on `G × G`.
    Adjoint(&'a FiniteGroup),
    /// `(g, x) ⋄ (h, y) = (ghg⁻¹, Φ_g y)` on `G × X`.
    Action(&'a GroupAction),
    /// The adjoint product transported along `ξ(g, h) = (𝒜(h)g, h)`; any
    /// map `𝒜` is accepted.
    Transported(&'a FiniteGroup, &'a SetMap),
}

/// Cayley table of a product rack, with `(g, x)` at index `g·m + x`.
pub fn product_rack(kind: ProductRack<'_>) -> Result<FiniteMagma> {
    match kind {
        ProductRack::Adjoint(g) => {
            let n = g.order();
            Ok(FiniteMagma::from_fn(n * n, |a, b| {
                let g1 = a / n;
                let (h1, y) = (b / n, b % n);
                g.conj(g1, h1) * n + g.conj(g1, y)
            }))
        }
        ProductRack::Action(act) => {
            let report = crate::groups::validate_action(act);
            if let Some(w) = report.witnesses.first() {
                return Err(Error::Precondition(format!("invalid action: {w}")));
            }
            let g = &act.group;
            let m = act.set_size;
            Ok(FiniteMagma::from_fn(g.order() * m, |a, b| {
                let g1 = a / m;
                let (h1, y) = (b / m, b % m);
                g.conj(g1, h1) * m + act.act(g1, y)
            }))
        }
        ProductRack::Transported(g, a) => {
            let n = g.order();
            if a.len() != n || a.codomain() != n {
                return Err(Error::SizeMismatch("transport map size".into()));
            }
            let adjoint = product_rack(ProductRack::Adjoint(g))?;
            let xi = |i: usize| g.mul(a.apply(i % n), i / n) * n + i % n;
            let xi_inv = |i: usize| g.mul(g.inv(a.apply(i % n)), i / n) * n + i % n;
            Ok(FiniteMagma::from_fn(n * n, |p, q| {
                xi_inv(adjoint.op(xi(p), xi(q)))
            }))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GraphCheck {
    /// `{(𝒜(g), g)}` is a subrack of `G ×_Ad G`.
    pub graph_subrack: bool,
    /// `{e} × G` is a subrack of the transported rack.
    pub transported_subrack: bool,
}

pub fn graph_check(g: &FiniteGroup, a: &SetMap) -> Result<GraphCheck> {
    Carrier::Group(g).check_map(a)?;
    let n = g.order();
    let adjoint = product_rack(ProductRack::Adjoint(g))?;
    let graph: Vec<usize> = (0..n).map(|x| a.apply(x) * n + x).collect();
    let transported = product_rack(ProductRack::Transported(g, a))?;
    let slice: Vec<usize> = (0..n).map(|x| g.identity() * n + x).collect();
    Ok(GraphCheck {
        graph_subrack: magma::is_subrack(&graph, &adjoint)?,
        transported_subrack: magma::is_subrack(&slice, &transported)?,
    })
}

fn check_relative_sizes(act: &GroupAction, b: &SetMap) -> Result<()> {
    if b.len() != act.set_size || b.codomain() != act.group.order() {
        return Err(Error::SizeMismatch(format!(
            "map {} → {} against action of a group of order {} on {} points",
            b.len(),
            b.codomain(),
            act.group.order(),
            act.set_size
        )));
    }
    Ok(())
}

/// `ℬ(x)ℬ(y)ℬ(x)⁻¹ = ℬ(Φ_{ℬ(x)} y)` for `ℬ: X → G`.
pub fn is_relative_averaging(act: &GroupAction, b: &SetMap) -> Result<Verdict> {
    check_relative_sizes(act, b)?;
    let g = &act.group;
    let m = act.set_size;
    for x in 0..m {
        let bx = b.apply(x);
        for y in 0..m {
            if g.conj(bx, b.apply(y)) != b.apply(act.act(bx, y)) {
                return Ok(Verdict::fail("relative-averaging", vec![x, y]));
            }
        }
    }
    Ok(Verdict::pass())
}

/// `x ⋄_ℬ y = Φ_{ℬ(x)} y`.
pub fn descendent_relative(act: &GroupAction, b: &SetMap) -> Result<FiniteMagma> {
    let v = is_relative_averaging(act, b)?;
    if let Some(w) = v.witness {
        return Err(Error::Precondition(format!(
            "map is not relative averaging: identity fails at {:?}",
            w.elements
        )));
    }
    Ok(FiniteMagma::from_fn(act.set_size, |x, y| act.act(b.apply(x), y)))
}

/// Whether `{(ℬ(x), x)}` is a subrack of `G ×_Φ X`.
pub fn relative_graph_check(act: &GroupAction, b: &SetMap) -> Result<bool> {
    check_relative_sizes(act, b)?;
    let product = product_rack(ProductRack::Action(act))?;
    let m = act.set_size;
    let graph: Vec<usize> = (0..m).map(|x| b.apply(x) * m + x).collect();
    magma::is_subrack(&graph, &product)
}

/// `𝒜(u) ⋄_Q 𝒜(v) = 𝒜(Φ_{𝒜(u)} v)` for `𝒜: R → Q`, where `Φ` is a rack
/// action of `Q` on `R` by automorphisms of `R`.
pub fn is_relative_averaging_rack(
    q: &FiniteMagma,
    r: &FiniteMagma,
    phi: &[SetMap],
    a: &SetMap,
) -> Result<Verdict> {
    validate_rack_action(q, r, phi)?;
    if a.len() != r.size() || a.codomain() != q.size() {
        return Err(Error::SizeMismatch("operator sizes do not match the racks".into()));
    }
    let m = r.size();
    for u in 0..m {
        let au = a.apply(u);
        for v in 0..m {
            if q.op(au, a.apply(v)) != a.apply(phi[au].apply(v)) {
                return Ok(Verdict::fail("relative-averaging", vec![u, v]));
            }
        }
    }
    let descendent = descendent_relative_rack(phi, a);
    if !pairings::is_rack_pairing(r, &descendent).holds {
        return Err(Error::Internal("relative descendent does not pair with R".into()));
    }
    Ok(Verdict::pass())
}

fn validate_rack_action(q: &FiniteMagma, r: &FiniteMagma, phi: &[SetMap]) -> Result<()> {
    if !magma::is_rack(q) || !magma::is_rack(r) {
        return Err(Error::NotARack("both carriers must be racks".into()));
    }
    if phi.len() != q.size() || phi.iter().any(|p| p.len() != r.size()) {
        return Err(Error::SizeMismatch("action needs one map of R per element of Q".into()));
    }
    pairings::is_rack_module(q, phi)?
        .into_result()
        .map_err(|e| Error::Precondition(format!("not a rack module: {e}")))?;
    for (x, p) in phi.iter().enumerate() {
        if !magma::is_rack_homomorphism(p, r, r)? {
            return Err(Error::Precondition(format!(
                "Φ_{x} is not a rack automorphism of R"
            )));
        }
    }
    Ok(())
}

/// `u ⋄_𝒜 v = Φ_{𝒜(u)} v` on `R`.
pub fn descendent_relative_rack(phi: &[SetMap], a: &SetMap) -> FiniteMagma {
    FiniteMagma::from_fn(a.len(), |u, v| phi[a.apply(u)].apply(v))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HierarchyReport {
    /// `⋄_{𝒜^k}` for `0 ≤ k ≤ kmax + lmax`.
    pub tables: Vec<FiniteMagma>,
    pub powers_averaging: bool,
    pub powers_averaging_on_descendents: bool,
    pub composite_identity: bool,
    pub pairings: bool,
    pub failures: Vec<String>,
}

impl HierarchyReport {
    pub fn all_hold(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Descendent tables of the powers of `𝒜` and the checks relating them.
pub fn power_hierarchy(
    carrier: Carrier<'_>,
    a: &SetMap,
    kmax: usize,
    lmax: usize,
) -> Result<HierarchyReport> {
    require_averaging(carrier, a)?;
    let q = carrier.rack();
    let rack = Carrier::Rack(&q);
    let top = kmax + lmax;
    let powers: Vec<SetMap> = (0..=top).map(|k| a.power(k)).collect();
    let tables: Vec<FiniteMagma> = powers
        .iter()
        .map(|p| FiniteMagma::from_fn(q.size(), |x, y| q.op(p.apply(x), y)))
        .collect();
    let mut failures = Vec::new();
    let mut powers_averaging = true;
    for (k, p) in powers.iter().enumerate() {
        if !is_averaging(rack, p)?.holds {
            powers_averaging = false;
            failures.push(format!("A^{k} is not averaging"));
        }
    }
    let mut on_descendents = true;
    let mut composite = true;
    let mut pairings_ok = true;
    for k in 0..=kmax {
        for l in 0..=lmax {
            let base = Carrier::Rack(&tables[l]);
            if !is_averaging(base, &powers[k])?.holds {
                on_descendents = false;
                failures.push(format!("A^{k} is not averaging on the A^{l} descendent"));
            }
            let nested = FiniteMagma::from_fn(q.size(), |x, y| tables[l].op(powers[k].apply(x), y));
            if nested != tables[k + l] {
                composite = false;
                failures.push(format!("descendent of A^{l} by A^{k} differs from A^{}", k + l));
            }
            if !pairings::is_rack_pairing(&tables[k], &tables[k + l]).holds {
                pairings_ok = false;
                failures.push(format!("(A^{k}, A^{}) descendents do not pair", k + l));
            }
        }
    }
    Ok(HierarchyReport {
        tables,
        powers_averaging,
        powers_averaging_on_descendents: on_descendents,
        composite_identity: composite,
        pairings: pairings_ok,
        failures,
    })
}

/// `𝒞(ghg⁻¹) = g𝒞(h)g⁻¹`.
pub fn is_ad_invariant_map(g: &FiniteGroup, c: &SetMap) -> Result<Verdict> {
    Carrier::Group(g).check_map(c)?;
    let n = g.order();
    for x in 0..n {
        for y in 0..n {
            if c.apply(g.conj(x, y)) != g.conj(x, c.apply(y)) {
                return Ok(Verdict::fail("ad-invariance", vec![x, y]));
            }
        }
    }
    Ok(Verdict::pass())
}

/// An averaging group containing a pointed group-rack.
#[derive(Clone, Debug)]
pub struct GroupRackEmbedding {
    /// Inn(G, ◆) as permutations of G; element 0 is the identity.
    pub inner: PermutationGroup,
    /// Inn(G, ◆) ⋉ G with `(L, y)` at index `L·|G| + y`.
    pub product: FiniteGroup,
    /// `𝒜(L, y) = (L_y^◆, e)`.
    pub operator: SetMap,
    /// `i(x) = (Id, x)`.
    pub inclusion: SetMap,
}

/// Embeds a pointed group-rack `(G, ·, ◆)` into the averaging group
/// Inn(G, ◆) ⋉ G, and verifies every claim about the result.
pub fn embed_group_rack(g: &FiniteGroup, bd: &FiniteMagma) -> Result<GroupRackEmbedding> {
    let report = pairings::is_group_rack(g, bd, true)?;
    if let Some(w) = report.witness {
        return Err(Error::Precondition(format!("not a pointed group-rack: {w}")));
    }
    let n = g.order();
    let translations: Vec<SetMap> = (0..n).map(|x| bd.left_translation(x)).collect();
    let inner = permutation_closure(&translations)?;
    let product = semidirect_product(&inner.group, g, &inner.elements)?;
    let e = g.identity();
    let lookup: Vec<usize> = translations
        .iter()
        .map(|l| inner.index_of(l).expect("generator lies in its closure"))
        .collect();
    let size = product.order();
    let operator = SetMap::from_vec_unchecked((0..size).map(|p| lookup[p % n] * n + e).collect(), size);
    let inclusion = SetMap::from_vec_unchecked((0..n).collect(), size);

    let carrier = Carrier::Group(&product);
    if let Some(w) = is_averaging(carrier, &operator)?.witness {
        return Err(Error::Internal(format!("embedding operator fails averaging at {w}")));
    }
    if !inclusion.is_injective() {
        return Err(Error::Internal("inclusion is not injective".into()));
    }
    if !crate::groups::is_homomorphism(&inclusion, g, &product) {
        return Err(Error::Internal("inclusion is not a group homomorphism".into()));
    }
    for x in 0..n {
        for y in 0..n {
            let lhs = inclusion.apply(bd.op(x, y));
            let rhs = carrier.act(operator.apply(inclusion.apply(x)), inclusion.apply(y));
            if lhs != rhs {
                return Err(Error::Internal(format!(
                    "inclusion does not intertwine the rack operations at ({x}, {y})"
                )));
            }
        }
    }
    Ok(GroupRackEmbedding {
        inner,
        product,
        operator,
        inclusion,
    })
}
