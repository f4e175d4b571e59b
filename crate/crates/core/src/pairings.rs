//! Rack-pairings and the structures that produce them: group-racks,
//! two-sided skew braces, regular subracks of the holomorph, di-racks,
//! averaging operators and rack k-pairings.

use rayon::prelude::*;
use serde::Serialize;

use crate::averaging::{self, Carrier};
use crate::error::{Error, Result};
use crate::groups::{validate_group, FiniteGroup};
use crate::magma::{self, FiniteMagma, SetMap, Verdict, Witness};
use crate::perm;

/// Default cap on the rack size for holomorph computations.
pub const HOLOMORPH_GUARD: usize = 6;

fn same_size(a: &FiniteMagma, b: &FiniteMagma) -> Result<()> {
    if a.size() != b.size() {
        return Err(Error::SizeMismatch(format!(
            "tables of sizes {} and {}",
            a.size(),
            b.size()
        )));
    }
    Ok(())
}

fn rack_witness(m: &FiniteMagma, name: &str) -> Option<Witness> {
    if let Some([x, y, z]) = magma::left_distributivity_witness(m) {
        return Some(Witness::new(name, vec![x, y, z]));
    }
    magma::unique_solvability_witness(m).map(|[x, y]| Witness::new(name, vec![x, y]))
}

/// Whether every `L_x^◆` is a group automorphism of `G` (and `◆` a rack);
/// with `pointed`, also that `◆` is pointed at the identity, followed by a
/// check of the consequence `(x ◆ y)⁻¹ = x ◆ y⁻¹`.
pub fn is_group_rack(g: &FiniteGroup, bd: &FiniteMagma, pointed: bool) -> Result<Verdict> {
    same_size(g.magma(), bd)?;
    if let Some(w) = rack_witness(bd, "rack") {
        return Ok(Verdict::from_witness(Some(w)));
    }
    let n = g.order();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if bd.op(x, g.mul(y, z)) != g.mul(bd.op(x, y), bd.op(x, z)) {
                    return Ok(Verdict::fail("endomorphism", vec![x, y, z]));
                }
            }
        }
    }
    if pointed {
        let e = g.identity();
        if let Some(x) = (0..n).find(|&x| bd.op(x, e) != e || bd.op(e, x) != x) {
            return Ok(Verdict::fail("pointed", vec![x]));
        }
        for x in 0..n {
            for y in 0..n {
                if g.inv(bd.op(x, y)) != bd.op(x, g.inv(y)) {
                    return Ok(Verdict::fail("inverse-compatibility", vec![x, y]));
                }
            }
        }
    }
    Ok(Verdict::pass())
}

/// Both tables are racks and `x ◆ (y ⋄ z) = (x ◆ y) ⋄ (x ◆ z)`.
pub fn is_rack_pairing(d: &FiniteMagma, bd: &FiniteMagma) -> Verdict {
    if d.size() != bd.size() {
        return Verdict::fail("size", vec![d.size(), bd.size()]);
    }
    if let Some(w) = rack_witness(d, "diamond-rack") {
        return Verdict::from_witness(Some(w));
    }
    if let Some(w) = rack_witness(bd, "blackdiamond-rack") {
        return Verdict::from_witness(Some(w));
    }
    Verdict::from_witness(compatibility_witness(d, bd).map(|t| Witness::new("compatibility", t.to_vec())))
}

/// First `(x, y, z)` violating `x ◆ (y ⋄ z) = (x ◆ y) ⋄ (x ◆ z)`.
fn compatibility_witness(d: &FiniteMagma, bd: &FiniteMagma) -> Option<[usize; 3]> {
    let n = d.size();
    for x in 0..n {
        for y in 0..n {
            let xy = bd.op(x, y);
            for z in 0..n {
                if bd.op(x, d.op(y, z)) != d.op(xy, bd.op(x, z)) {
                    return Some([x, y, z]);
                }
            }
        }
    }
    None
}

/// A validated rack-pairing `(Q, ⋄, ◆)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RackPairing {
    pub diamond: FiniteMagma,
    pub blackdiamond: FiniteMagma,
}

impl RackPairing {
    pub fn new(diamond: FiniteMagma, blackdiamond: FiniteMagma) -> Result<Self> {
        is_rack_pairing(&diamond, &blackdiamond).into_result()?;
        Ok(RackPairing {
            diamond,
            blackdiamond,
        })
    }

    pub fn size(&self) -> usize {
        self.diamond.size()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairingClass {
    pub lambda_hom: bool,
    pub lambda_antihom: bool,
    pub symmetric: bool,
}

/// λ-homomorphic: `L^◆_{x⋄y} L^◆_x = L^◆_x L^◆_y`; λ-anti-homomorphic:
/// `L^◆_{y⋄x} L^◆_x = L^◆_x L^◆_y`; symmetric: `(Q, ◆, ⋄)` is a pairing too.
pub fn classify_pairing(p: &RackPairing) -> PairingClass {
    let n = p.size();
    let (d, bd) = (&p.diamond, &p.blackdiamond);
    let pairs = || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));
    let hom_like = |target: &dyn Fn(usize, usize) -> usize| {
        pairs().all(|(x, y)| {
            let t = target(x, y);
            (0..n).all(|z| bd.op(t, bd.op(x, z)) == bd.op(x, bd.op(y, z)))
        })
    };
    PairingClass {
        lambda_hom: hom_like(&|x, y| d.op(x, y)),
        lambda_antihom: hom_like(&|x, y| d.op(y, x)),
        symmetric: compatibility_witness(bd, d).is_none(),
    }
}

/// A skew brace `(G, ·, •)` on a shared carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewBrace {
    pub dot: FiniteGroup,
    pub bullet: FiniteGroup,
    pub two_sided: bool,
}

/// Validates both groups, the shared identity and
/// `x • (yz) = (x • y) x⁻¹ (x • z)`; records whether
/// `(xy) • z = (x • z) z⁻¹ (y • z)` also holds.
pub fn validate_skew_brace(dot: FiniteMagma, bullet: FiniteMagma) -> Result<SkewBrace> {
    same_size(&dot, &bullet)?;
    let dot = validate_group(dot)?;
    let bullet = validate_group(bullet)?;
    if dot.identity() != bullet.identity() {
        return Err(Error::axiom(
            "shared-identity",
            format!("{} vs {}", dot.identity(), bullet.identity()),
        ));
    }
    let n = dot.order();
    let b = |x, y| bullet.mul(x, y);
    let m = |x, y| dot.mul(x, y);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if b(x, m(y, z)) != m(m(b(x, y), dot.inv(x)), b(x, z)) {
                    return Err(Error::axiom("left-brace", format!("({x}, {y}, {z})")));
                }
            }
        }
    }
    let two_sided = (0..n).all(|x| {
        (0..n).all(|y| (0..n).all(|z| b(m(x, y), z) == m(m(b(x, z), dot.inv(z)), b(y, z))))
    });
    Ok(SkewBrace {
        dot,
        bullet,
        two_sided,
    })
}

/// The three identities of the inverse lemma on a two-sided brace.
pub fn brace_lemma_check(sb: &SkewBrace) -> Result<bool> {
    if !sb.two_sided {
        return Err(Error::Precondition("the lemma needs a two-sided brace".into()));
    }
    let (g, bl) = (&sb.dot, &sb.bullet);
    let n = g.order();
    let m = |x, y| g.mul(x, y);
    let b = |x, y| bl.mul(x, y);
    let first_two = (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| {
                b(m(x, g.inv(y)), z) == m(m(b(x, z), g.inv(b(y, z))), z)
                    && b(m(g.inv(x), y), z) == m(m(z, g.inv(b(x, z))), b(y, z))
            })
        })
    });
    let third = (0..n).all(|x| {
        let xbar_inv = g.inv(bl.inv(x));
        m(m(g.inv(x), b(xbar_inv, x)), g.inv(x)) == g.identity()
    });
    Ok(first_two && third)
}

/// The trivial brace `(G, ·, ·)`.
pub fn trivial_brace(g: &FiniteGroup) -> SkewBrace {
    SkewBrace {
        dot: g.clone(),
        bullet: g.clone(),
        two_sided: true,
    }
}

/// `⋄` = conjugation in `·`, `x ◆ y = x • y • x̄`.
pub fn brace_to_pairing(sb: &SkewBrace) -> Result<RackPairing> {
    if !sb.two_sided {
        return Err(Error::Precondition("pairing needs a two-sided brace".into()));
    }
    let diamond = sb.dot.conjugation_rack();
    let blackdiamond = sb.bullet.conjugation_rack();
    is_group_rack(&sb.dot, &blackdiamond, true)?
        .into_result()
        .map_err(|e| Error::Internal(format!("bullet conjugation is not a group-rack: {e}")))?;
    RackPairing::new(diamond, blackdiamond)
        .map_err(|e| Error::Internal(format!("brace pairing fails: {e}")))
}

fn check_brace_map(sb: &SkewBrace, a: &SetMap) -> Result<()> {
    if a.len() != sb.dot.order() || a.codomain() != sb.dot.order() {
        return Err(Error::SizeMismatch("operator size differs from the brace".into()));
    }
    Ok(())
}

/// Averaging for both group structures. The bullet identity reads
/// `𝒜(x) • 𝒜(y) • 𝒜(x)‾ = 𝒜(𝒜(x) • y • 𝒜(x)‾)`.
pub fn skew_brace_averaging(sb: &SkewBrace, a: &SetMap) -> Result<bool> {
    check_brace_map(sb, a)?;
    Ok(averaging::is_averaging(Carrier::Group(&sb.dot), a)?.holds
        && averaging::is_averaging(Carrier::Group(&sb.bullet), a)?.holds)
}

/// `x ⋄_𝒜 y = 𝒜(x) y 𝒜(x)⁻¹`, `x ◆_𝒜 y = 𝒜(x) • y • 𝒜(x)‾` for a pointed
/// averaging operator on a two-sided brace.
pub fn brace_averaging_pairing(sb: &SkewBrace, a: &SetMap) -> Result<RackPairing> {
    if !sb.two_sided {
        return Err(Error::Precondition("pairing needs a two-sided brace".into()));
    }
    check_brace_map(sb, a)?;
    let e = sb.dot.identity();
    if a.apply(e) != e {
        return Err(Error::Precondition("operator must fix the identity".into()));
    }
    if !skew_brace_averaging(sb, a)? {
        return Err(Error::Precondition("operator is not averaging on the brace".into()));
    }
    let n = sb.dot.order();
    let diamond = FiniteMagma::from_fn(n, |x, y| sb.dot.conj(a.apply(x), y));
    let blackdiamond = FiniteMagma::from_fn(n, |x, y| sb.bullet.conj(a.apply(x), y));
    RackPairing::new(diamond, blackdiamond)
        .map_err(|e| Error::Internal(format!("induced brace pairing fails: {e}")))
}

/// Hol(Q, ⋄) on Aut(Q, ⋄) × Q, with `(f, x)` at index `f·n + x`.
#[derive(Clone, Debug)]
pub struct Holomorph {
    pub base: FiniteMagma,
    /// Aut(Q, ⋄) sorted by image array.
    pub automorphisms: Vec<SetMap>,
    /// `(f, x) ⋄̄ (g, y) = (f g f⁻¹, f(y))`.
    pub table: FiniteMagma,
}

impl Holomorph {
    pub fn index(&self, auto: usize, x: usize) -> usize {
        auto * self.base.size() + x
    }

    pub fn auto_index(&self, f: &SetMap) -> Option<usize> {
        self.automorphisms.binary_search(f).ok()
    }
}

/// Rack automorphisms of `q` by filtering all permutations.
pub fn rack_automorphisms(q: &FiniteMagma, max_size: usize) -> Result<Vec<SetMap>> {
    if q.size() > max_size {
        return Err(Error::GuardExceeded {
            what: "rack automorphism size",
            size: q.size(),
            limit: max_size,
        });
    }
    let n = q.size();
    Ok(perm::all_permutations(n)
        .into_iter()
        .map(|p| SetMap::from_vec_unchecked(p, n))
        .filter(|f| (0..n).all(|x| (0..n).all(|y| f.apply(q.op(x, y)) == q.op(f.apply(x), f.apply(y)))))
        .collect())
}

pub fn holomorph(q: &FiniteMagma, max_size: usize) -> Result<Holomorph> {
    if !magma::is_rack(q) {
        return Err(Error::NotARack("holomorph base".into()));
    }
    let autos = rack_automorphisms(q, max_size)?;
    let n = q.size();
    let k = autos.len();
    let index: std::collections::HashMap<&[usize], usize> =
        autos.iter().enumerate().map(|(i, f)| (f.image(), i)).collect();
    let inverses: Vec<SetMap> = autos.iter().map(|f| f.inverse().expect("bijective")).collect();
    let mut conj = vec![0usize; k * k];
    for i in 0..k {
        for j in 0..k {
            let c = autos[i].compose(&autos[j]).compose(&inverses[i]);
            conj[i * k + j] = index[c.image()];
        }
    }
    let table = FiniteMagma::from_fn(k * n, |a, b| {
        let f = a / n;
        let (g, y) = (b / n, b % n);
        conj[f * k + g] * n + autos[f].apply(y)
    });
    Ok(Holomorph {
        base: q.clone(),
        automorphisms: autos,
        table,
    })
}

/// All regular subracks, each as the sorted list of holomorph indices
/// `(f_x, x)`. Only sections of the projection are searched.
pub fn enumerate_regular_subracks(hol: &Holomorph) -> Vec<Vec<usize>> {
    let n = hol.base.size();
    let k = hol.automorphisms.len();
    // closure of {(f_x, x)} means f_{f_x(y)} = f_x f_y f_x⁻¹
    let conj = |i: usize, j: usize| hol.table.op(i * n, j * n) / n;
    let consistent = |section: &[usize]| {
        let m = section.len();
        (0..m).all(|x| {
            (0..m).all(|y| {
                let target = hol.automorphisms[section[x]].apply(y);
                target >= m || section[target] == conj(section[x], section[y])
            })
        })
    };
    fn rec(
        n: usize,
        k: usize,
        section: &mut Vec<usize>,
        consistent: &dyn Fn(&[usize]) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        if section.len() == n {
            let mut h: Vec<usize> = section.iter().enumerate().map(|(x, &f)| f * n + x).collect();
            h.sort_unstable();
            out.push(h);
            return;
        }
        for f in 0..k {
            section.push(f);
            if consistent(section) {
                rec(n, k, section, consistent, out);
            }
            section.pop();
        }
    }
    let mut out: Vec<Vec<usize>> = (0..k)
        .into_par_iter()
        .flat_map_iter(|f0| {
            let mut section = vec![f0];
            let mut found = Vec::new();
            if consistent(&section) {
                rec(n, k, &mut section, &consistent, &mut found);
            }
            found
        })
        .collect();
    out.sort();
    out
}

/// `x ◆ y = f_x(y)` where `(f_x, x) ∈ H`.
pub fn pairing_from_subrack(hol: &Holomorph, h: &[usize]) -> Result<RackPairing> {
    let n = hol.base.size();
    let mut section = vec![None; n];
    for &i in h {
        if i >= hol.table.size() {
            return Err(Error::ImageOutOfRange {
                index: 0,
                value: i,
                size: hol.table.size(),
            });
        }
        if section[i % n].replace(i / n).is_some() {
            return Err(Error::Precondition(format!("subset is not regular over {}", i % n)));
        }
    }
    let section: Vec<usize> = section
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Precondition("subset does not cover the rack".into()))?;
    if !magma::is_subrack(h, &hol.table)? {
        return Err(Error::Precondition("subset is not closed".into()));
    }
    let bd = FiniteMagma::from_fn(n, |x, y| hol.automorphisms[section[x]].apply(y));
    RackPairing::new(hol.base.clone(), bd)
        .map_err(|e| Error::Internal(format!("regular subrack gives no pairing: {e}")))
}

/// `H = {(L_x^◆, x)}`, sorted.
pub fn subrack_from_pairing(hol: &Holomorph, p: &RackPairing) -> Result<Vec<usize>> {
    if p.diamond != hol.base {
        return Err(Error::Precondition("pairing is over a different rack".into()));
    }
    let n = p.size();
    let mut h = Vec::with_capacity(n);
    for x in 0..n {
        let l = p.blackdiamond.left_translation(x);
        let f = hol
            .auto_index(&l)
            .ok_or_else(|| Error::Internal(format!("L_{x} is not a rack automorphism")))?;
        h.push(hol.index(f, x));
    }
    h.sort_unstable();
    if !magma::is_subrack(&h, &hol.table)? {
        return Err(Error::Internal("translation section is not closed".into()));
    }
    Ok(h)
}

/// All second operations `◆` forming a pairing with `⋄`, by filtering rows
/// drawn from Aut(Q, ⋄).
pub fn enumerate_pairings(q: &FiniteMagma, max_size: usize) -> Result<Vec<RackPairing>> {
    let autos = rack_automorphisms(q, max_size)?;
    let n = q.size();
    let mut out = Vec::new();
    let mut rows: Vec<usize> = Vec::with_capacity(n);
    fn rec(
        q: &FiniteMagma,
        autos: &[SetMap],
        rows: &mut Vec<usize>,
        out: &mut Vec<RackPairing>,
    ) {
        let n = q.size();
        if rows.len() == n {
            let bd = FiniteMagma::from_fn(n, |x, y| autos[rows[x]].apply(y));
            if let Ok(p) = RackPairing::new(q.clone(), bd) {
                out.push(p);
            }
            return;
        }
        for i in 0..autos.len() {
            rows.push(i);
            rec(q, autos, rows, out);
            rows.pop();
        }
    }
    rec(q, &autos, &mut rows, &mut out);
    out.sort();
    Ok(out)
}

/// A rack `⋄` with a second operation `▷`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiRack {
    pub diamond: FiniteMagma,
    pub tri: FiniteMagma,
}

/// `⋄` is a rack, each `L_x^▷` is a bijective rack endomorphism of `⋄`,
/// and `x ⋄ (x ▷ (y ▷ z)) = (x ⋄ (x ▷ y)) ▷ (x ⋄ (x ▷ z))`.
pub fn is_dirack(d: &FiniteMagma, tri: &FiniteMagma) -> Result<Verdict> {
    same_size(d, tri)?;
    if let Some(w) = rack_witness(d, "diamond-rack") {
        return Ok(Verdict::from_witness(Some(w)));
    }
    if let Some([x, y]) = magma::unique_solvability_witness(tri) {
        return Ok(Verdict::fail("bijective-translation", vec![x, y]));
    }
    let n = d.size();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if tri.op(x, d.op(y, z)) != d.op(tri.op(x, y), tri.op(x, z)) {
                    return Ok(Verdict::fail("automorphism", vec![x, y, z]));
                }
            }
        }
    }
    let bd = |x: usize, y: usize| d.op(x, tri.op(x, y));
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if d.op(x, tri.op(x, tri.op(y, z))) != tri.op(bd(x, y), bd(x, z)) {
                    return Ok(Verdict::fail("weighted-distributivity", vec![x, y, z]));
                }
            }
        }
    }
    Ok(Verdict::pass())
}

impl DiRack {
    pub fn new(diamond: FiniteMagma, tri: FiniteMagma) -> Result<Self> {
        is_dirack(&diamond, &tri)?.into_result()?;
        Ok(DiRack { diamond, tri })
    }
}

/// `x ◆ y = x ⋄ (x ▷ y)`.
pub fn pairing_from_dirack(dr: &DiRack) -> Result<RackPairing> {
    let bd = FiniteMagma::from_fn(dr.diamond.size(), |x, y| dr.diamond.op(x, dr.tri.op(x, y)));
    RackPairing::new(dr.diamond.clone(), bd)
        .map_err(|e| Error::Internal(format!("di-rack gives no pairing: {e}")))
}

/// `x ▷ y = (L_x^⋄)⁻¹(x ◆ y)`.
pub fn dirack_from_pairing(p: &RackPairing) -> Result<DiRack> {
    let n = p.size();
    let inv: Vec<Vec<usize>> = (0..n).map(|x| perm::inverse(p.diamond.row(x))).collect();
    let tri = FiniteMagma::from_fn(n, |x, y| inv[x][p.blackdiamond.op(x, y)]);
    DiRack::new(p.diamond.clone(), tri)
        .map_err(|e| Error::Internal(format!("pairing gives no di-rack: {e}")))
}

/// Whether `f` preserves both operations of two pairings.
pub fn is_pairing_morphism(f: &SetMap, p: &RackPairing, p2: &RackPairing) -> Result<bool> {
    Ok(magma::is_rack_homomorphism(f, &p.diamond, &p2.diamond)?
        && magma::is_rack_homomorphism(f, &p.blackdiamond, &p2.blackdiamond)?)
}

/// Whether `f` preserves both operations of two di-racks.
pub fn is_dirack_morphism(f: &SetMap, d: &DiRack, d2: &DiRack) -> Result<bool> {
    Ok(magma::is_rack_homomorphism(f, &d.diamond, &d2.diamond)?
        && magma::is_rack_homomorphism(f, &d.tri, &d2.tri)?)
}

/// The operator `𝒜` with `x ◆ y = 𝒜(x) ⋄ y`.
///
/// Any complete rack qualifies, but the search only needs distinct elements
/// to have distinct left translations, so that is the condition enforced.
pub fn recover_averaging(p: &RackPairing) -> Result<SetMap> {
    let d = &p.diamond;
    if !magma::is_faithful(d) {
        return Err(Error::Precondition(
            "left translations of the first rack are not pairwise distinct".into(),
        ));
    }
    let n = p.size();
    let mut image = Vec::with_capacity(n);
    for x in 0..n {
        let target = p.blackdiamond.row(x);
        let c = (0..n)
            .find(|&c| d.row(c) == target)
            .ok_or_else(|| Error::Precondition(format!("L_{x} of the second rack is no left translation of the first")))?;
        image.push(c);
    }
    let a = SetMap::from_vec_unchecked(image, n);
    let carrier = Carrier::Rack(d);
    if let Some(w) = averaging::is_averaging(carrier, &a)?.witness {
        return Err(Error::Internal(format!("recovered operator fails averaging at {w}")));
    }
    if averaging::descendent_rack(carrier, &a)? != p.blackdiamond {
        return Err(Error::Internal("descendent rack differs from the pairing".into()));
    }
    Ok(a)
}

/// Every table is a rack and `x ⋄_i (y ⋄_{i-1} z) = (x ⋄_i y) ⋄_{i-1} (x ⋄_i z)`
/// for each level `i`; witnesses carry the level first.
pub fn is_rack_k_pairing(ops: &[FiniteMagma]) -> Result<Verdict> {
    let Some(first) = ops.first() else {
        return Err(Error::Malformed("empty operation list".into()));
    };
    for op in ops {
        same_size(first, op)?;
    }
    for (i, op) in ops.iter().enumerate() {
        if let Some(w) = rack_witness(op, "rack") {
            let mut elements = vec![i];
            elements.extend(w.elements);
            return Ok(Verdict::fail("rack", elements));
        }
    }
    for i in 1..ops.len() {
        if let Some([x, y, z]) = compatibility_witness(&ops[i - 1], &ops[i]) {
            return Ok(Verdict::fail("level-compatibility", vec![i, x, y, z]));
        }
    }
    Ok(Verdict::pass())
}

/// `x ⋄_i y = 𝒜^i(x) ⋄ y` for `0 ≤ i ≤ k`.
pub fn k_pairing_from_averaging(q: &FiniteMagma, a: &SetMap, k: usize) -> Result<Vec<FiniteMagma>> {
    let carrier = Carrier::Rack(q);
    if let Some(w) = averaging::is_averaging(carrier, a)?.witness {
        return Err(Error::Precondition(format!("operator is not averaging: {w}")));
    }
    let ops: Vec<FiniteMagma> = (0..=k)
        .map(|i| {
            let p = a.power(i);
            FiniteMagma::from_fn(q.size(), |x, y| q.op(p.apply(x), y))
        })
        .collect();
    is_rack_k_pairing(&ops)?
        .into_result()
        .map_err(|e| Error::Internal(format!("constructed k-pairing fails: {e}")))?;
    Ok(ops)
}

/// `Φ_x Φ_y = Φ_{x⋄y} Φ_x` on every point, with each `Φ_x` a permutation.
pub fn is_rack_module(q: &FiniteMagma, phi: &[SetMap]) -> Result<Verdict> {
    if phi.len() != q.size() {
        return Err(Error::SizeMismatch(format!(
            "{} maps for a rack of size {}",
            phi.len(),
            q.size()
        )));
    }
    let m = phi.first().map_or(0, SetMap::len);
    if phi.iter().any(|p| p.len() != m || p.codomain() != m) {
        return Err(Error::SizeMismatch("action maps differ in size".into()));
    }
    if let Some(x) = phi.iter().position(|p| !p.is_bijective()) {
        return Ok(Verdict::fail("bijective", vec![x]));
    }
    let n = q.size();
    for x in 0..n {
        for y in 0..n {
            let xy = q.op(x, y);
            for p in 0..m {
                if phi[x].apply(phi[y].apply(p)) != phi[xy].apply(phi[x].apply(p)) {
                    return Ok(Verdict::fail("module-law", vec![x, y, p]));
                }
            }
        }
    }
    Ok(Verdict::pass())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{cyclic, symmetric};
    use crate::magma::all_maps;

    #[test]
    fn group_rack_examples() {
        let s3 = symmetric(3);
        assert!(is_group_rack(&s3, &s3.conjugation_rack(), true).unwrap().holds);
        assert!(is_group_rack(&s3, &FiniteMagma::trivial(6), true).unwrap().holds);
        let z4 = cyclic(4);
        let takasaki = FiniteMagma::from_fn(4, |a, b| (2 * a + 4 - b) % 4);
        let v = is_group_rack(&z4, &takasaki, false).unwrap();
        assert_eq!(v.witness.unwrap().axiom, "endomorphism");
    }

    #[test]
    fn pairing_examples() {
        let s3 = symmetric(3);
        let conj = s3.conjugation_rack();
        let p = RackPairing::new(conj.clone(), conj.clone()).unwrap();
        assert!(classify_pairing(&p).symmetric);
        let triv = FiniteMagma::trivial(6);
        assert!(is_rack_pairing(&conj, &triv).holds);
        assert!(is_rack_pairing(&triv, &conj).holds);
        let inv_conj = FiniteMagma::from_fn(6, |g, h| s3.conj(s3.inv(g), h));
        assert!(is_rack_pairing(&conj, &inv_conj).holds);
        assert!(is_rack_pairing(&inv_conj, &conj).holds);
    }

    #[test]
    fn brace_examples() {
        let s3 = symmetric(3);
        let b = validate_skew_brace(s3.magma().clone(), s3.magma().clone()).unwrap();
        assert!(b.two_sided);
        assert!(brace_lemma_check(&b).unwrap());
        let p = brace_to_pairing(&b).unwrap();
        assert_eq!(p.diamond, s3.conjugation_rack());
        assert_eq!(p.blackdiamond, s3.conjugation_rack());
        let z4 = cyclic(4);
        let p = brace_to_pairing(&trivial_brace(&z4)).unwrap();
        assert_eq!(p.blackdiamond, FiniteMagma::trivial(4));
    }

    #[test]
    fn brace_rejects_relabelled_addition() {
        let z6 = cyclic(6);
        // transport addition along a bijection that is not an automorphism
        let f = [0, 2, 1, 3, 4, 5];
        let relabelled = z6.magma().relabel(&f);
        let err = validate_skew_brace(z6.magma().clone(), relabelled).unwrap_err();
        assert!(matches!(err, Error::AxiomFailure { .. }));
    }

    #[test]
    fn nontrivial_two_sided_brace() {
        // on ℤ₄, x • y = x + y + 2xy is a group with identity 0
        let z4 = cyclic(4);
        let bullet = FiniteMagma::from_fn(4, |x, y| (x + y + 2 * x * y) % 4);
        let b = validate_skew_brace(z4.magma().clone(), bullet).unwrap();
        assert!(b.two_sided);
        assert!(brace_lemma_check(&b).unwrap());
        brace_to_pairing(&b).unwrap();
    }

    #[test]
    fn brace_averaging_examples() {
        let s3 = symmetric(3);
        let b = trivial_brace(&s3);
        let id = SetMap::identity(6);
        assert!(skew_brace_averaging(&b, &id).unwrap());
        let p = brace_averaging_pairing(&b, &id).unwrap();
        assert_eq!(p.diamond, s3.conjugation_rack());
        let e = SetMap::constant(6, 0);
        let p = brace_averaging_pairing(&b, &e).unwrap();
        assert_eq!(p.diamond, FiniteMagma::trivial(6));
        assert_eq!(p.blackdiamond, FiniteMagma::trivial(6));
        assert!(brace_averaging_pairing(&b, &SetMap::constant(6, 1)).is_err());
    }

    #[test]
    fn holomorph_examples() {
        let triv = FiniteMagma::trivial(2);
        let hol = holomorph(&triv, HOLOMORPH_GUARD).unwrap();
        assert!(magma::is_rack(&hol.table));
        let subs = enumerate_regular_subracks(&hol);
        assert_eq!(subs.len(), 2);
        assert_eq!(enumerate_pairings(&triv, HOLOMORPH_GUARD).unwrap().len(), 2);
        for h in &subs {
            let p = pairing_from_subrack(&hol, h).unwrap();
            assert_eq!(&subrack_from_pairing(&hol, &p).unwrap(), h);
        }
        let flip = FiniteMagma::flip(3);
        let hol = holomorph(&flip, HOLOMORPH_GUARD).unwrap();
        assert_eq!(
            enumerate_regular_subracks(&hol).len(),
            enumerate_pairings(&flip, HOLOMORPH_GUARD).unwrap().len()
        );
        let s3 = symmetric(3).conjugation_rack();
        let hol = holomorph(&s3, HOLOMORPH_GUARD).unwrap();
        let p = RackPairing::new(s3.clone(), s3.clone()).unwrap();
        subrack_from_pairing(&hol, &p).unwrap();
    }

    #[test]
    fn dirack_examples() {
        let s3 = symmetric(3);
        let conj = s3.conjugation_rack();
        let dr = DiRack::new(conj.clone(), FiniteMagma::trivial(6)).unwrap();
        let p = pairing_from_dirack(&dr).unwrap();
        assert_eq!(p.blackdiamond, conj);
        assert_eq!(dirack_from_pairing(&p).unwrap(), dr);
        let prime = FiniteMagma::from_fn(6, |x, y| {
            let x2 = s3.mul(x, x);
            s3.conj(s3.inv(x2), y)
        });
        let dr = DiRack::new(conj, prime).unwrap();
        let p = pairing_from_dirack(&dr).unwrap();
        assert_eq!(dirack_from_pairing(&p).unwrap(), dr);
    }

    #[test]
    fn recover_examples() {
        let s3 = symmetric(3);
        let conj = s3.conjugation_rack();
        let inv_conj = FiniteMagma::from_fn(6, |g, h| s3.conj(s3.inv(g), h));
        let p = RackPairing::new(conj.clone(), inv_conj).unwrap();
        let a = recover_averaging(&p).unwrap();
        assert_eq!(a.image(), s3.inverses());
        let p = RackPairing::new(conj.clone(), conj).unwrap();
        assert_eq!(recover_averaging(&p).unwrap(), SetMap::identity(6));
        let triv = FiniteMagma::trivial(3);
        let p = RackPairing::new(triv.clone(), triv).unwrap();
        assert!(recover_averaging(&p).is_err());
    }

    #[test]
    fn recover_on_complete_rack() {
        let z5 = cyclic(5);
        let tak = crate::magma::standard_rack(crate::magma::StandardRack::Takasaki(&z5)).unwrap();
        assert!(magma::is_complete_rack(&tak));
        for a in averaging::enumerate_averaging(Carrier::Rack(&tak), Default::default()).unwrap() {
            let d = averaging::descendent_rack(Carrier::Rack(&tak), &a).unwrap();
            let p = RackPairing::new(tak.clone(), d).unwrap();
            assert_eq!(recover_averaging(&p).unwrap(), a);
        }
    }

    #[test]
    fn k_pairing_examples() {
        let flip = FiniteMagma::flip(3);
        let rev = SetMap::endo(vec![2, 1, 0]).unwrap();
        let ops = k_pairing_from_averaging(&flip, &rev, 3).unwrap();
        assert_eq!(ops.len(), 4);
        assert!(is_rack_k_pairing(&ops).unwrap().holds);
        assert_eq!(
            is_rack_k_pairing(&ops[..2]).unwrap().holds,
            is_rack_pairing(&ops[0], &ops[1]).holds
        );
        // relabelling the middle table of a valid 2-pairing breaks a level
        let s3 = symmetric(3);
        let inv = SetMap::endo(s3.inverses().to_vec()).unwrap();
        let mut ops = k_pairing_from_averaging(&s3.conjugation_rack(), &inv, 2).unwrap();
        assert!(is_rack_k_pairing(&ops).unwrap().holds);
        ops[1] = ops[1].relabel(&[0, 1, 3, 2, 4, 5]);
        let v = is_rack_k_pairing(&ops).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness.unwrap().axiom, "level-compatibility");
    }

    #[test]
    fn module_examples() {
        let flip = FiniteMagma::flip(3);
        assert!(is_rack_module(&flip, &vec![SetMap::identity(4); 3]).unwrap().holds);
        let ls: Vec<SetMap> = (0..3).map(|x| flip.left_translation(x)).collect();
        assert!(is_rack_module(&flip, &ls).unwrap().holds);
        let triv = FiniteMagma::trivial(2);
        let bad = vec![SetMap::endo(vec![1, 0, 2]).unwrap(), SetMap::endo(vec![0, 2, 1]).unwrap()];
        let v = is_rack_module(&triv, &bad).unwrap();
        assert_eq!(v.witness.unwrap().axiom, "module-law");
    }

    #[test]
    fn averaging_pairing_classification_criterion() {
        let flip = FiniteMagma::flip(3);
        for a in all_maps(3) {
            if !averaging::is_averaging(Carrier::Rack(&flip), &a).unwrap().holds {
                continue;
            }
            let d = averaging::descendent_rack(Carrier::Rack(&flip), &a).unwrap();
            let class = classify_pairing(&RackPairing::new(flip.clone(), d).unwrap());
            let crit = (0..3).all(|x| {
                (0..3).all(|y| flip.row(a.apply(flip.op(x, y))) == flip.row(flip.op(a.apply(x), a.apply(y))))
            });
            assert_eq!(class.lambda_hom, crit);
        }
    }
}
