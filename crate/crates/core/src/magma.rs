//! Finite carriers: Cayley tables, set maps, rack axioms and the standard
//! rack constructions.
//!
//! Elements are the indices `0..n`. A [`FiniteMagma`] stores its table
//! row-major with the left operand selecting the row, so `op(x, y)` is
//! `x ⋄ y` and row `x` is the left translation `L_x`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::perm;

/// A binary operation on `{0, …, n-1}` stored as an `n × n` Cayley table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteMagma {
    size: usize,
    table: Vec<usize>,
}

impl FiniteMagma {
    /// Builds a magma from explicit rows, rejecting ragged or out-of-range tables.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::Malformed("magma must have at least one element".into()));
        }
        let mut table = Vec::with_capacity(size * size);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != size {
                return Err(Error::Malformed(format!(
                    "row {r} has length {}, expected {size}",
                    row.len()
                )));
            }
            for (c, v) in row.into_iter().enumerate() {
                if v >= size {
                    return Err(Error::EntryOutOfRange {
                        row: r,
                        col: c,
                        value: v,
                        size,
                    });
                }
                table.push(v);
            }
        }
        Ok(FiniteMagma { size, table })
    }

    /// Builds a magma from a closure. Panics if the closure leaves `0..n`.
    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        assert!(size > 0, "magma must have at least one element");
        let mut table = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                let v = f(x, y);
                assert!(v < size, "operation value {v} out of range at ({x}, {y})");
                table.push(v);
            }
        }
        FiniteMagma { size, table }
    }

    pub(crate) fn from_flat(size: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), size * size);
        FiniteMagma { size, table }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    /// Row `x` of the table, i.e. the left translation `L_x` as an image array.
    pub fn row(&self, x: usize) -> &[usize] {
        &self.table[x * self.size..(x + 1) * self.size]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.size).map(|x| self.row(x).to_vec()).collect()
    }

    pub fn column(&self, y: usize) -> Vec<usize> {
        (0..self.size).map(|x| self.op(x, y)).collect()
    }

    pub fn left_translation(&self, x: usize) -> SetMap {
        SetMap::from_vec_unchecked(self.row(x).to_vec(), self.size)
    }

    pub fn flat(&self) -> &[usize] {
        &self.table
    }

    /// Applies a bijection to the carrier: the transported table is
    /// `f(x) ⋄' f(y) = f(x ⋄ y)`.
    pub fn relabel(&self, f: &[usize]) -> FiniteMagma {
        let inv = perm::inverse(f);
        FiniteMagma::from_fn(self.size, |x, y| f[self.op(inv[x], inv[y])])
    }

    pub fn trivial(size: usize) -> Self {
        FiniteMagma::from_fn(size, |_, y| y)
    }

    /// `a_i ⋄ a_j = a_{n-j+1}`, written 0-based as `x ⋄ y = n - 1 - y`.
    pub fn flip(size: usize) -> Self {
        FiniteMagma::from_fn(size, |_, y| size - 1 - y)
    }
}

impl Serialize for FiniteMagma {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FiniteMagma", 2)?;
        st.serialize_field("size", &self.size)?;
        st.serialize_field("table", &self.rows())?;
        st.end()
    }
}

/// A total map between finite carriers, stored as an image array.
///
/// `codomain` is the size of the target carrier; endomorphisms have
/// `codomain == len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SetMap {
    image: Vec<usize>,
    #[serde(skip)]
    codomain: usize,
}

impl SetMap {
    pub fn new(image: Vec<usize>, codomain: usize) -> Result<Self> {
        for (i, &v) in image.iter().enumerate() {
            if v >= codomain {
                return Err(Error::ImageOutOfRange {
                    index: i,
                    value: v,
                    size: codomain,
                });
            }
        }
        Ok(SetMap { image, codomain })
    }

    /// Self-map of a carrier of size `image.len()`.
    pub fn endo(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        SetMap::new(image, n)
    }

    pub(crate) fn from_vec_unchecked(image: Vec<usize>, codomain: usize) -> Self {
        debug_assert!(image.iter().all(|&v| v < codomain));
        SetMap { image, codomain }
    }

    pub fn identity(n: usize) -> Self {
        SetMap::from_vec_unchecked(perm::identity(n), n)
    }

    pub fn constant(n: usize, value: usize) -> Self {
        assert!(value < n);
        SetMap::from_vec_unchecked(vec![value; n], n)
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn into_image(self) -> Vec<usize> {
        self.image
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SetMap) -> SetMap {
        assert_eq!(other.codomain, self.len(), "composition size mismatch");
        SetMap::from_vec_unchecked(perm::compose(&self.image, &other.image), self.codomain)
    }

    /// `self^k` for an endomorphism; `k = 0` gives the identity.
    pub fn power(&self, k: usize) -> SetMap {
        assert_eq!(self.codomain, self.len(), "power of a non-endomorphism");
        let mut out = SetMap::identity(self.len());
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    pub fn is_bijective(&self) -> bool {
        self.codomain == self.len() && perm::is_permutation(&self.image)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain];
        self.image.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn inverse(&self) -> Option<SetMap> {
        self.is_bijective()
            .then(|| SetMap::from_vec_unchecked(perm::inverse(&self.image), self.codomain))
    }
}

/// Axiom names used in witnesses.
pub mod axiom {
    pub const LEFT_DISTRIBUTIVITY: &str = "left-distributivity";
    pub const UNIQUE_SOLVABILITY: &str = "unique-solvability";
    pub const IDEMPOTENCY: &str = "idempotency";
    pub const POINTED: &str = "pointed";
}

/// A counterexample to a named axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub axiom: String,
    pub elements: Vec<usize>,
}

impl Witness {
    pub fn new(axiom: &str, elements: Vec<usize>) -> Self {
        Witness {
            axiom: axiom.to_string(),
            elements,
        }
    }
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} at {:?}", self.axiom, self.elements)
    }
}

/// Outcome of a single identity check: whether it holds, and the first
/// counterexample when it does not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    pub fn fail(axiom: &str, elements: Vec<usize>) -> Self {
        Verdict {
            holds: false,
            witness: Some(Witness::new(axiom, elements)),
        }
    }

    pub fn from_witness(witness: Option<Witness>) -> Self {
        Verdict {
            holds: witness.is_none(),
            witness,
        }
    }

    /// Converts a failed verdict into an error.
    pub fn into_result(self) -> Result<()> {
        match self.witness {
            None => Ok(()),
            Some(w) => Err(Error::axiom(w.axiom, format!("{:?}", w.elements))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RackReport {
    pub is_rack: bool,
    pub is_quandle: bool,
    pub pointed_elements: Vec<usize>,
    pub witnesses: Vec<Witness>,
}

/// First `(x, y, z)` violating `x ⋄ (y ⋄ z) = (x ⋄ y) ⋄ (x ⋄ z)`.
pub fn left_distributivity_witness(m: &FiniteMagma) -> Option<[usize; 3]> {
    let n = m.size();
    for x in 0..n {
        for y in 0..n {
            let xy = m.op(x, y);
            for z in 0..n {
                if m.op(x, m.op(y, z)) != m.op(xy, m.op(x, z)) {
                    return Some([x, y, z]);
                }
            }
        }
    }
    None
}

/// First `(x, y)` for which `x ⋄ c = y` does not have exactly one solution.
///
/// On a finite carrier this is the same as row `x` failing to be a
/// permutation.
pub fn unique_solvability_witness(m: &FiniteMagma) -> Option<[usize; 2]> {
    let n = m.size();
    let mut hits = vec![0usize; n];
    for x in 0..n {
        hits.iter_mut().for_each(|h| *h = 0);
        for &v in m.row(x) {
            hits[v] += 1;
        }
        if let Some(y) = hits.iter().position(|&h| h != 1) {
            return Some([x, y]);
        }
    }
    None
}

pub fn is_rack(m: &FiniteMagma) -> bool {
    unique_solvability_witness(m).is_none() && left_distributivity_witness(m).is_none()
}

/// Elements `e` with `x ⋄ e = e` and `e ⋄ x = x` for every `x`.
pub fn pointed_elements(m: &FiniteMagma) -> Vec<usize> {
    let n = m.size();
    (0..n)
        .filter(|&e| (0..n).all(|x| m.op(x, e) == e && m.op(e, x) == x))
        .collect()
}

/// Checks both rack axioms, idempotency, and (optionally) pointedness at a
/// requested element.
pub fn validate_rack(m: &FiniteMagma, pointed_at: Option<usize>) -> Result<RackReport> {
    let n = m.size();
    if let Some(e) = pointed_at {
        if e >= n {
            return Err(Error::ImageOutOfRange {
                index: 0,
                value: e,
                size: n,
            });
        }
    }
    let mut witnesses = Vec::new();
    if let Some([x, y, z]) = left_distributivity_witness(m) {
        witnesses.push(Witness::new(axiom::LEFT_DISTRIBUTIVITY, vec![x, y, z]));
    }
    if let Some([x, y]) = unique_solvability_witness(m) {
        witnesses.push(Witness::new(axiom::UNIQUE_SOLVABILITY, vec![x, y]));
    }
    let is_rack = witnesses.is_empty();
    let idempotency_failure = (0..n).find(|&x| m.op(x, x) != x);
    if let Some(x) = idempotency_failure {
        witnesses.push(Witness::new(axiom::IDEMPOTENCY, vec![x]));
    }
    let pointed = pointed_elements(m);
    if let Some(e) = pointed_at {
        if !pointed.contains(&e) {
            let x = (0..n)
                .find(|&x| m.op(x, e) != e || m.op(e, x) != x)
                .expect("non-pointed element has a failing partner");
            witnesses.push(Witness::new(axiom::POINTED, vec![e, x]));
        }
    }
    Ok(RackReport {
        is_rack,
        is_quandle: is_rack && idempotency_failure.is_none(),
        pointed_elements: pointed,
        witnesses,
    })
}

/// The standard rack families.
#[derive(Clone, Copy, Debug)]
pub enum StandardRack<'a> {
    Trivial(usize),
    Flip(usize),
    /// `a ⋄ b = 2a - b` on an abelian group.
    Takasaki(&'a FiniteGroup),
    /// `a ⋄ b = (Id - t)(a) + t(b)` on an abelian group with automorphism `t`.
    Alexander(&'a FiniteGroup, &'a SetMap),
    /// `g ⋄ h = g h g⁻¹`.
    Conjugation(&'a FiniteGroup),
}

pub fn standard_rack(kind: StandardRack<'_>) -> Result<FiniteMagma> {
    match kind {
        StandardRack::Trivial(n) | StandardRack::Flip(n) if n == 0 => {
            Err(Error::Malformed("rack must have at least one element".into()))
        }
        StandardRack::Trivial(n) => Ok(FiniteMagma::trivial(n)),
        StandardRack::Flip(n) => Ok(FiniteMagma::flip(n)),
        StandardRack::Takasaki(g) => {
            require_abelian(g, "takasaki")?;
            Ok(FiniteMagma::from_fn(g.order(), |a, b| {
                g.mul(g.mul(a, a), g.inv(b))
            }))
        }
        StandardRack::Alexander(g, t) => {
            require_abelian(g, "alexander")?;
            if t.len() != g.order() || !g.is_automorphism(t) {
                return Err(Error::Precondition(
                    "alexander rack needs a group automorphism t".into(),
                ));
            }
            Ok(FiniteMagma::from_fn(g.order(), |a, b| {
                g.mul(g.mul(a, g.inv(t.apply(a))), t.apply(b))
            }))
        }
        StandardRack::Conjugation(g) => Ok(g.conjugation_rack()),
    }
}

fn require_abelian(g: &FiniteGroup, kind: &str) -> Result<()> {
    match g.commutativity_witness() {
        None => Ok(()),
        Some((x, y)) => Err(Error::Precondition(format!(
            "{kind} rack needs an abelian group; {x}·{y} ≠ {y}·{x}"
        ))),
    }
}

/// Whether `f(x ⋄ y) = f(x) ⋄' f(y)` for all `x, y`.
pub fn is_rack_homomorphism(f: &SetMap, q: &FiniteMagma, q2: &FiniteMagma) -> Result<bool> {
    if f.len() != q.size() || f.codomain() != q2.size() {
        return Err(Error::SizeMismatch(format!(
            "map {} → {} against carriers {} → {}",
            f.len(),
            f.codomain(),
            q.size(),
            q2.size()
        )));
    }
    let n = q.size();
    Ok((0..n).all(|x| (0..n).all(|y| f.apply(q.op(x, y)) == q2.op(f.apply(x), f.apply(y)))))
}

/// Whether `subset` is closed under the operation. The empty set is closed.
pub fn is_subrack(subset: &[usize], q: &FiniteMagma) -> Result<bool> {
    let n = q.size();
    let mut member = vec![false; n];
    for &s in subset {
        if s >= n {
            return Err(Error::ImageOutOfRange {
                index: 0,
                value: s,
                size: n,
            });
        }
        member[s] = true;
    }
    Ok(subset
        .iter()
        .all(|&x| subset.iter().all(|&y| member[q.op(x, y)])))
}

/// Whether `c ⋄ x = y` has a unique solution `c` for all `x, y`, i.e. every
/// column is a permutation.
pub fn is_complete_rack(q: &FiniteMagma) -> bool {
    (0..q.size()).all(|x| perm::is_permutation(&q.column(x)))
}

/// Whether distinct elements have distinct left translations.
pub fn is_faithful(q: &FiniteMagma) -> bool {
    let mut rows: Vec<&[usize]> = (0..q.size()).map(|x| q.row(x)).collect();
    rows.sort_unstable();
    rows.windows(2).all(|w| w[0] != w[1])
}

/// All racks on `n` points, in lexicographic order of their flattened tables.
///
/// Rows are chosen among permutations and left-distributivity is checked
/// as soon as every entry of a triple is determined.
pub fn enumerate_racks(n: usize, max_size: usize) -> Result<Vec<FiniteMagma>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    if n > max_size {
        return Err(Error::GuardExceeded {
            what: "rack enumeration size",
            size: n,
            limit: max_size,
        });
    }
    let perms = perm::all_permutations(n);
    let mut rows: Vec<&[usize]> = Vec::with_capacity(n);
    let mut out = Vec::new();
    fn consistent(rows: &[&[usize]]) -> bool {
        let k = rows.len();
        let n = rows[0].len();
        // triples whose entries are all fixed by the first k rows
        for x in 0..k {
            for y in 0..k {
                let xy = rows[x][y];
                if xy >= k {
                    continue;
                }
                for z in 0..n {
                    if rows[x][rows[y][z]] != rows[xy][rows[x][z]] {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn rec<'a>(
        n: usize,
        perms: &'a [Vec<usize>],
        rows: &mut Vec<&'a [usize]>,
        out: &mut Vec<FiniteMagma>,
    ) {
        if rows.len() == n {
            let flat = rows.iter().flat_map(|r| r.iter().copied()).collect();
            out.push(FiniteMagma::from_flat(n, flat));
            return;
        }
        for p in perms {
            rows.push(p);
            if consistent(rows) {
                rec(n, perms, rows, out);
            }
            rows.pop();
        }
    }
    rec(n, &perms, &mut rows, &mut out);
    Ok(out)
}

/// Every magma on `n` points (`n^(n²)` tables), in lexicographic order.
pub fn all_magmas(n: usize) -> impl Iterator<Item = FiniteMagma> {
    let cells = n * n;
    let total = n.checked_pow(cells as u32).expect("magma count overflows");
    (0..total).map(move |mut code| {
        let mut flat = vec![0; cells];
        for cell in (0..cells).rev() {
            flat[cell] = code % n;
            code /= n;
        }
        FiniteMagma::from_flat(n, flat)
    })
}

/// Every self-map of `0..n` (`n^n` maps), in lexicographic order.
pub fn all_maps(n: usize) -> impl Iterator<Item = SetMap> {
    all_maps_between(n, n)
}

/// Every map `0..domain → 0..codomain`, in lexicographic order.
pub fn all_maps_between(domain: usize, codomain: usize) -> impl Iterator<Item = SetMap> {
    let total = codomain
        .checked_pow(domain as u32)
        .expect("map count overflows");
    (0..total).map(move |mut code| {
        let mut image = vec![0; domain];
        for slot in (0..domain).rev() {
            image[slot] = code % codomain;
            code /= codomain;
        }
        SetMap::from_vec_unchecked(image, codomain)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{cyclic, symmetric};

    #[test]
    fn trivial_rack_is_quandle() {
        let r = validate_rack(&FiniteMagma::trivial(3), None).unwrap();
        assert!(r.is_rack && r.is_quandle);
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn flip_two_is_rack_not_quandle() {
        let m = FiniteMagma::new(vec![vec![1, 0], vec![1, 0]]).unwrap();
        assert_eq!(m, FiniteMagma::flip(2));
        let r = validate_rack(&m, None).unwrap();
        assert!(r.is_rack);
        assert!(!r.is_quandle);
        assert_eq!(r.witnesses, vec![Witness::new(axiom::IDEMPOTENCY, vec![0])]);
    }

    #[test]
    fn left_projection_fails_bijectivity() {
        let m = FiniteMagma::from_fn(2, |x, _| x);
        let r = validate_rack(&m, None).unwrap();
        assert!(!r.is_rack && !r.is_quandle);
        // row 0 is constant 0, so 0 ⋄ c = 0 has two solutions
        assert!(r
            .witnesses
            .contains(&Witness::new(axiom::UNIQUE_SOLVABILITY, vec![0, 0])));
    }

    #[test]
    fn malformed_table_names_cell() {
        let err = FiniteMagma::new(vec![vec![0, 2], vec![1, 0]]).unwrap_err();
        assert_eq!(
            err,
            Error::EntryOutOfRange {
                row: 0,
                col: 1,
                value: 2,
                size: 2
            }
        );
        assert!(FiniteMagma::new(vec![vec![0], vec![0, 1]]).is_err());
    }

    #[test]
    fn pointed_request_adds_witness() {
        // every element of a trivial rack is pointed
        let triv = validate_rack(&FiniteMagma::trivial(3), None).unwrap();
        assert_eq!(triv.pointed_elements, vec![0, 1, 2]);
        let m = FiniteMagma::flip(2);
        let r = validate_rack(&m, Some(0)).unwrap();
        assert!(r.pointed_elements.is_empty());
        assert_eq!(r.witnesses.last().unwrap().axiom, axiom::POINTED);
        assert!(validate_rack(&m, Some(5)).is_err());
    }

    #[test]
    fn takasaki_on_z3() {
        let z3 = cyclic(3);
        let t = standard_rack(StandardRack::Takasaki(&z3)).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(t.op(a, b), (2 * a + 3 - b) % 3);
            }
        }
        let neg = SetMap::endo(vec![0, 2, 1]).unwrap();
        let alex = standard_rack(StandardRack::Alexander(&z3, &neg)).unwrap();
        assert_eq!(alex, t);
        assert!(validate_rack(&t, None).unwrap().is_quandle);
    }

    #[test]
    fn takasaki_rejects_nonabelian() {
        let s3 = symmetric(3);
        assert!(standard_rack(StandardRack::Takasaki(&s3)).is_err());
        let z3 = cyclic(3);
        let not_aut = SetMap::endo(vec![0, 0, 0]).unwrap();
        assert!(standard_rack(StandardRack::Alexander(&z3, &not_aut)).is_err());
    }

    #[test]
    fn conjugation_of_abelian_is_trivial() {
        let z4 = cyclic(4);
        let c = standard_rack(StandardRack::Conjugation(&z4)).unwrap();
        assert_eq!(c, FiniteMagma::trivial(4));
        let s3 = symmetric(3);
        let c = standard_rack(StandardRack::Conjugation(&s3)).unwrap();
        let r = validate_rack(&c, Some(s3.identity())).unwrap();
        assert!(r.is_quandle);
        assert!(r.pointed_elements.contains(&s3.identity()));
    }

    #[test]
    fn homomorphism_checks() {
        let flip = FiniteMagma::flip(2);
        let triv = FiniteMagma::trivial(2);
        let id = SetMap::identity(2);
        assert!(is_rack_homomorphism(&id, &flip, &flip).unwrap());
        let swap = SetMap::endo(vec![1, 0]).unwrap();
        // swap(x ⋄ y) = swap(1 - y) = y, swap(x) ▷ swap(y) = 1 - y
        assert!(!is_rack_homomorphism(&swap, &flip, &triv).unwrap());
        let short = SetMap::identity(3);
        assert!(is_rack_homomorphism(&short, &flip, &triv).is_err());
    }

    #[test]
    fn subrack_checks() {
        let s3 = symmetric(3);
        let c = s3.conjugation_rack();
        assert!(is_subrack(&[0, 1, 2, 3, 4, 5], &c).unwrap());
        assert!(is_subrack(&[], &c).unwrap());
        assert!(is_subrack(&[s3.identity()], &c).unwrap());
        assert!(is_subrack(&[9], &c).is_err());
    }

    #[test]
    fn completeness_examples() {
        assert!(!is_complete_rack(&FiniteMagma::trivial(2)));
        assert!(!is_complete_rack(&cyclic(2).conjugation_rack()));
        assert!(!is_complete_rack(&FiniteMagma::flip(3)));
        let z3 = cyclic(3);
        assert!(is_complete_rack(
            &standard_rack(StandardRack::Takasaki(&z3)).unwrap()
        ));
        // a pointed rack on more than one point is never complete: c ⋄ e = e
        assert!(!is_complete_rack(&symmetric(3).conjugation_rack()));
    }

    #[test]
    fn rack_counts_match_brute_force() {
        for n in 1..=3 {
            let brute: Vec<_> = all_magmas(n).filter(is_rack).collect();
            assert_eq!(enumerate_racks(n, 5).unwrap(), brute, "n = {n}");
        }
        assert!(enumerate_racks(6, 5).is_err());
    }

    #[test]
    fn map_powers() {
        let f = SetMap::endo(vec![1, 2, 0]).unwrap();
        assert_eq!(f.power(0), SetMap::identity(3));
        assert_eq!(f.power(3), SetMap::identity(3));
        assert_eq!(f.power(2).image(), &[2, 0, 1]);
        assert_eq!(f.inverse().unwrap(), f.power(2));
    }
}
