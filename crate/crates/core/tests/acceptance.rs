//! Acceptance suite: one line per criterion, with its time budget.
//!
//! Runs without the libtest harness so every PASS/FAIL line is printed.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use averaging_core::averaging::{
    descendent_rack, embed_group_rack, enumerate_averaging, graph_check, is_averaging, power_hierarchy, Carrier,
    EnumerateOptions,
};
use averaging_core::group_algebra::{extend_operator, is_hopf_averaging, restrict_operator};
use averaging_core::groups::{cyclic, small_groups, FiniteGroup};
use averaging_core::leibniz::braided::{braided_averaging_check, braided_from_lie, ybe_linear_check};
use averaging_core::leibniz::examples::*;
use averaging_core::leibniz::{
    check_lie, embed_di_leibniz, embed_lie_leibniz, hemi_semidirect, induced_di_leibniz,
    is_linear_averaging, is_relative_averaging_linear, leibnizification, lie_leibniz_bundle, projection_map,
    satisfies_jacobi, sum_map, AveragingKind, BiRepresentation, DiLeibniz, StructureConstants,
};
use averaging_core::linalg::{int, rat, LinearMap, Matrix, Rational};
use averaging_core::magma::{all_magmas, all_maps, enumerate_racks, is_rack, FiniteMagma, SetMap};
use averaging_core::pairings::{
    dirack_from_pairing, enumerate_pairings, enumerate_regular_subracks, holomorph, is_dirack,
    is_group_rack, is_rack_pairing, pairing_from_dirack, pairing_from_subrack, subrack_from_pairing, DiRack,
    HOLOMORPH_GUARD,
};
use averaging_core::perm::all_permutations;
use averaging_core::ybe::{braided_from_rack, is_braided_averaging, is_ybe_solution};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_options() -> EnumerateOptions {
    EnumerateOptions::default()
}

/// Every map `A` with `A(x)⋄A(y) = A(A(x)⋄y)`, by scanning all `nⁿ` maps.
fn oracle_averaging(q: &FiniteMagma) -> Vec<SetMap> {
    let n = q.size();
    all_maps(n)
        .filter(|a| {
            (0..n).all(|x| (0..n).all(|y| q.op(a.apply(x), a.apply(y)) == a.apply(q.op(a.apply(x), y))))
        })
        .collect()
}

fn flip_counts() -> Outcome {
    let mut counts = Vec::new();
    for n in 2..=6 {
        let q = FiniteMagma::flip(n);
        let found = enumerate_averaging(Carrier::Rack(&q), all_options()).map_err(|e| e.to_string())?;
        let phi: Vec<SetMap> = all_maps(n)
            .filter(|a| (0..n).all(|i| a.apply(i) + a.apply(n - 1 - i) == n - 1))
            .collect();
        let oracle = oracle_averaging(&q);
        ensure(found == phi, || format!("n={n}: enumeration differs from the φ-set"))?;
        ensure(found == oracle, || format!("n={n}: enumeration differs from the oracle"))?;
        ensure(found.len() == n.pow((n / 2) as u32), || format!("n={n}: count {}", found.len()))?;
        counts.push(found.len());
    }
    Ok(format!("counts {counts:?} for n = 2..6"))
}

fn abelian_groups() -> Outcome {
    let mut counts = Vec::new();
    for n in 2..=4 {
        let g = cyclic(n);
        let passing = all_maps(n)
            .filter(|a| is_averaging(Carrier::Group(&g), a).unwrap().holds)
            .count();
        let enumerated = enumerate_averaging(Carrier::Group(&g), all_options()).unwrap().len();
        ensure(passing == n.pow(n as u32) && enumerated == passing, || {
            format!("Z{n}: {passing} passing, {enumerated} enumerated")
        })?;
        counts.push(passing);
    }
    ensure(counts == [4, 27, 256], || format!("counts {counts:?}"))?;
    Ok(format!("counts {counts:?}"))
}

fn group_rack_equivalence() -> Outcome {
    let mut summary = Vec::new();
    for (name, g) in small_groups(6) {
        let on_group = enumerate_averaging(Carrier::Group(&g), all_options()).unwrap();
        let rack = g.conjugation_rack();
        let on_rack = enumerate_averaging(Carrier::Rack(&rack), all_options()).unwrap();
        ensure(on_group == on_rack, || format!("{name}: group and rack sets differ"))?;
        ensure(on_rack == oracle_averaging(&rack), || format!("{name}: enumeration differs from oracle"))?;
        summary.push(format!("{name}={}", on_group.len()));
    }
    Ok(summary.join(" "))
}

fn graph_criteria() -> Outcome {
    let mut maps = 0;
    for (name, g) in small_groups(4) {
        for a in all_maps(g.order()) {
            let avg = is_averaging(Carrier::Group(&g), &a).unwrap().holds;
            let gc = graph_check(&g, &a).unwrap();
            ensure(gc.graph_subrack == avg, || format!("{name} {:?}: graph criterion", a.image()))?;
            ensure(gc.transported_subrack == avg, || format!("{name} {:?}: transported criterion", a.image()))?;
            maps += 1;
        }
    }
    Ok(format!("{maps} maps agree"))
}

fn descendent_table(q: &FiniteMagma, a: &SetMap) -> FiniteMagma {
    FiniteMagma::from_fn(q.size(), |x, y| q.op(a.apply(x), y))
}

fn hierarchy() -> Outcome {
    let mut instances = 0;
    for n in 1..=3 {
        for q in enumerate_racks(n, 3).unwrap() {
            for a in enumerate_averaging(Carrier::Rack(&q), all_options()).unwrap() {
                let report = power_hierarchy(Carrier::Rack(&q), &a, 2, 2).unwrap();
                ensure(report.all_hold(), || format!("{:?}: {:?}", a.image(), report.failures))?;
                for k in 0..=2 {
                    for l in 0..=2 {
                        let dk = descendent_table(&q, &a.power(k));
                        let dkl = descendent_table(&q, &a.power(k + l));
                        let nested = descendent_table(&descendent_table(&q, &a.power(l)), &a.power(k));
                        ensure(nested == dkl, || format!("composite identity k={k} l={l}"))?;
                        ensure(is_rack_pairing(&dk, &dkl).holds, || format!("pairing k={k} l={l}"))?;
                    }
                }
                instances += 1;
            }
        }
    }
    Ok(format!("{instances} (rack, operator) instances"))
}

fn holomorph_theorem() -> Outcome {
    let mut racks = 0;
    let mut total = 0;
    for n in 1..=3 {
        for q in enumerate_racks(n, 3).unwrap() {
            let hol = holomorph(&q, HOLOMORPH_GUARD).unwrap();
            let subracks = enumerate_regular_subracks(&hol);
            let pairings = enumerate_pairings(&q, HOLOMORPH_GUARD).unwrap();
            let brute = all_magmas(n).filter(|bd| is_rack_pairing(&q, bd).holds).count();
            ensure(subracks.len() == pairings.len() && pairings.len() == brute, || {
                format!("{:?}: {} subracks, {} pairings, {brute} by brute force", q.rows(), subracks.len(), pairings.len())
            })?;
            for h in &subracks {
                let p = pairing_from_subrack(&hol, h).unwrap();
                ensure(subrack_from_pairing(&hol, &p).unwrap() == *h, || "subrack round trip".into())?;
            }
            for p in &pairings {
                let h = subrack_from_pairing(&hol, p).unwrap();
                ensure(pairing_from_subrack(&hol, &h).unwrap() == *p, || "pairing round trip".into())?;
            }
            racks += 1;
            total += pairings.len();
        }
    }
    Ok(format!("{racks} racks, {total} pairings matched"))
}

fn dirack_round_trip() -> Outcome {
    let mut pairings = 0;
    let mut diracks = 0;
    for n in 1..=3 {
        let perms = all_permutations(n);
        for q in enumerate_racks(n, 3).unwrap() {
            for p in enumerate_pairings(&q, HOLOMORPH_GUARD).unwrap() {
                let dr = dirack_from_pairing(&p).unwrap();
                ensure(pairing_from_dirack(&dr).unwrap() == p, || "pairing → di-rack → pairing".into())?;
                pairings += 1;
            }
            let mut rows = vec![0usize; n];
            loop {
                let tri = FiniteMagma::new(rows.iter().map(|&i| perms[i].clone()).collect()).unwrap();
                if is_dirack(&q, &tri).unwrap().holds {
                    let dr = DiRack::new(q.clone(), tri).unwrap();
                    let back = dirack_from_pairing(&pairing_from_dirack(&dr).unwrap()).unwrap();
                    ensure(back == dr, || "di-rack → pairing → di-rack".into())?;
                    diracks += 1;
                }
                // odometer over row choices
                let mut i = 0;
                while i < n && rows[i] + 1 == perms.len() {
                    rows[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
                rows[i] += 1;
            }
        }
    }
    ensure(pairings == diracks, || format!("{pairings} pairings but {diracks} di-racks"))?;
    Ok(format!("{pairings} pairings, {diracks} di-racks"))
}

fn pointed_group_racks(g: &FiniteGroup) -> BTreeSet<FiniteMagma> {
    let opts = EnumerateOptions {
        pointed_only: true,
        ..EnumerateOptions::default()
    };
    let mut out: BTreeSet<FiniteMagma> = enumerate_averaging(Carrier::Group(g), opts)
        .unwrap()
        .iter()
        .map(|a| descendent_rack(Carrier::Group(g), a).unwrap())
        .collect();
    out.insert(g.conjugation_rack());
    out.insert(FiniteMagma::trivial(g.order()));
    out.into_iter()
        .filter(|bd| is_group_rack(g, bd, true).unwrap().holds)
        .collect()
}

fn di_leibniz_examples() -> Vec<(&'static str, DiLeibniz)> {
    let d2 = d2_leibniz();
    vec![
        ("d2", DiLeibniz::diagonal(d2.clone())),
        ("sl2", DiLeibniz::diagonal(sl2())),
        ("so3", DiLeibniz::diagonal(so3())),
        ("abelian2", DiLeibniz::diagonal(abelian(2))),
        ("nonabelian2", DiLeibniz::diagonal(nonabelian2())),
        ("hemi-adjoint", hemi_semidirect(&d2, &BiRepresentation::adjoint(&d2)).unwrap()),
        ("hemi-zero", hemi_semidirect(&d2, &BiRepresentation::zero(2, 2)).unwrap()),
        ("hemi-nonabelian", hemi_semidirect(&nonabelian2(), &BiRepresentation::adjoint(&nonabelian2())).unwrap()),
        ("differential", differential(&d2, &d2_differential()).unwrap()),
        ("direct-sum-1", direct_sum(&d2, 1).unwrap()),
        ("direct-sum-2", direct_sum(&d2, 2).unwrap()),
        ("right-zero", DiLeibniz::new(d2.clone(), StructureConstants::zero(2)).unwrap()),
        (
            "induced-sum",
            induced_di_leibniz(&d2, &BiRepresentation::copies(&d2, 2), &sum_map(2, 2)).unwrap(),
        ),
    ]
}

fn lie_leibniz_examples() -> Vec<(&'static str, StructureConstants, StructureConstants)> {
    let bundle = lie_leibniz_bundle(&sl2(), &sl2_nilpotent_averaging(int(1))).unwrap();
    let scaled = lie_leibniz_bundle(&nonabelian2(), &Matrix::scalar(2, int(3))).unwrap();
    vec![
        ("abelian", abelian(2), abelian(2)),
        ("abelian-d2", abelian(2), d2_leibniz()),
        ("sl2", sl2(), sl2()),
        ("so3", so3(), so3()),
        ("nonabelian2", nonabelian2(), nonabelian2()),
        ("sl2-descendent", bundle.lie, bundle.leib),
        ("nonabelian2-descendent", scaled.lie, scaled.leib),
    ]
}

fn embeddings() -> Outcome {
    let mut group_racks = 0;
    for (name, g) in small_groups(6) {
        for bd in pointed_group_racks(&g) {
            let e = embed_group_rack(&g, &bd).map_err(|e| format!("{name}: {e}"))?;
            let q = e.product.conjugation_rack();
            ensure(is_averaging(Carrier::Group(&e.product), &e.operator).unwrap().holds, || {
                format!("{name}: ambient operator")
            })?;
            ensure(e.inclusion.is_injective(), || format!("{name}: inclusion"))?;
            // the inclusion carries ◆ to the descendent rack of the operator
            let desc = descendent_table(&q, &e.operator);
            let n = g.order();
            let ok = (0..n).all(|x| {
                (0..n).all(|y| e.inclusion.apply(bd.op(x, y)) == desc.op(e.inclusion.apply(x), e.inclusion.apply(y)))
            });
            ensure(ok, || format!("{name}: inclusion is not a rack map"))?;
            group_racks += 1;
        }
    }
    let mut di = 0;
    for (name, d) in di_leibniz_examples() {
        if d.dim() > 4 {
            continue;
        }
        let e = embed_di_leibniz(&d).map_err(|e| format!("{name}: {e}"))?;
        ensure(e.inclusion.is_injective(), || format!("{name}: inclusion"))?;
        ensure(is_linear_averaging(AveragingKind::Leibniz, &e.ambient, &e.operator).unwrap().holds, || {
            format!("{name}: operator")
        })?;
        di += 1;
    }
    let mut ll = 0;
    for (name, lie, leib) in lie_leibniz_examples() {
        let e = embed_lie_leibniz(&lie, &leib).map_err(|e| format!("{name}: {e}"))?;
        ensure(check_lie(&e.ambient).holds, || format!("{name}: ambient"))?;
        ensure(is_linear_averaging(AveragingKind::Lie, &e.ambient, &e.operator).unwrap().holds, || {
            format!("{name}: operator")
        })?;
        ensure(e.inclusion.is_injective(), || format!("{name}: inclusion"))?;
        ll += 1;
    }
    Ok(format!("{group_racks} group-racks, {di} di-Leibniz, {ll} Lie-Leibniz"))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.gen_range(-3..=3);
    let den = rng.gen_range(1..=3);
    rat(num, den)
}

fn random_invertible(rng: &mut ChaCha8Rng, d: usize) -> Matrix {
    loop {
        let rows: Vec<Vec<Rational>> = (0..d).map(|_| (0..d).map(|_| random_rational(rng)).collect()).collect();
        let m = Matrix::from_rows(rows).unwrap();
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// `T⁻¹ P T`, the operator `P` in the basis given by the columns of `T`.
fn conjugate(p: &LinearMap, t: &Matrix) -> LinearMap {
    t.inverse().unwrap().mul(p).mul(t)
}

/// A random valid `(h, V, P)` with `P` relative averaging and dims ≤ 3.
fn random_instance(rng: &mut ChaCha8Rng) -> (StructureConstants, BiRepresentation, LinearMap) {
    let lambda = random_rational(rng);
    match rng.gen_range(0..6) {
        0 => {
            let t = random_invertible(rng, 3);
            let h = sl2().change_basis(&t).unwrap();
            let p = conjugate(&sl2_nilpotent_averaging(lambda), &t);
            (h.clone(), BiRepresentation::adjoint(&h), p)
        }
        1 => {
            let t = random_invertible(rng, 2);
            let h = d2_leibniz().change_basis(&t).unwrap();
            (h.clone(), BiRepresentation::adjoint(&h), Matrix::scalar(2, lambda))
        }
        2 => {
            let d = rng.gen_range(1..=3);
            let m = rng.gen_range(1..=3);
            let h = abelian(d);
            let rows: Vec<Vec<Rational>> = (0..d).map(|_| (0..m).map(|_| random_rational(rng)).collect()).collect();
            (h, BiRepresentation::zero(d, m), Matrix::from_rows(rows).unwrap())
        }
        3 => {
            let h = abelian(1);
            let n = rng.gen_range(1..=3);
            let p = if rng.gen_bool(0.5) {
                sum_map(1, n).scale(&lambda)
            } else {
                projection_map(1, n, rng.gen_range(0..n)).scale(&lambda)
            };
            (h.clone(), BiRepresentation::copies(&h, n), p)
        }
        4 => {
            let t = random_invertible(rng, 3);
            let h = so3().change_basis(&t).unwrap();
            (h.clone(), BiRepresentation::adjoint(&h), Matrix::scalar(3, lambda))
        }
        _ => {
            let t = random_invertible(rng, 2);
            let h = nonabelian2().change_basis(&t).unwrap();
            (h.clone(), BiRepresentation::adjoint(&h), Matrix::scalar(2, lambda))
        }
    }
}

fn leibnizification_check(d: &DiLeibniz) -> Result<usize, String> {
    let lz = leibnizification(d).map_err(|e| e.to_string())?;
    ensure(is_relative_averaging_linear(&lz.bracket, &lz.rep, &lz.quotient).unwrap().holds, || {
        "quotient map is not relative averaging".into()
    })?;
    let induced = induced_di_leibniz(&lz.bracket, &lz.rep, &lz.quotient).map_err(|e| e.to_string())?;
    ensure(&induced == d, || "induced structure differs from the input".into())?;
    Ok(lz.quotient_dim())
}

fn leibnizification_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1eb);
    for i in 0..50 {
        let (h, rep, p) = random_instance(&mut rng);
        ensure(is_relative_averaging_linear(&h, &rep, &p).unwrap().holds, || format!("instance {i} invalid"))?;
        let d = induced_di_leibniz(&h, &rep, &p).map_err(|e| format!("instance {i}: {e}"))?;
        leibnizification_check(&d).map_err(|e| format!("instance {i}: {e}"))?;
    }
    let mut worked = 0;
    for (name, d) in di_leibniz_examples() {
        let dim = leibnizification_check(&d).map_err(|e| format!("{name}: {e}"))?;
        if name == "hemi-adjoint" {
            ensure(dim == 3, || format!("hemi-adjoint quotient has dim {dim}"))?;
        }
        worked += 1;
    }
    Ok(format!("50 random instances, {worked} worked examples"))
}

fn hopf_correspondence() -> Outcome {
    let mut summary = Vec::new();
    for (name, g) in small_groups(6) {
        let averaging: BTreeSet<SetMap> = enumerate_averaging(Carrier::Group(&g), all_options())
            .unwrap()
            .into_iter()
            .collect();
        let mut hopf = BTreeSet::new();
        for a in all_maps(g.order()) {
            let b = extend_operator(&g, &a).unwrap();
            ensure(restrict_operator(&g, &b).unwrap() == a, || format!("{name}: restriction"))?;
            if is_hopf_averaging(&g, &b).unwrap().holds {
                hopf.insert(a);
            }
        }
        ensure(hopf == averaging, || format!("{name}: {} Hopf vs {} group operators", hopf.len(), averaging.len()))?;
        summary.push(format!("{name}={}", hopf.len()));
    }
    Ok(summary.join(" "))
}

fn ybe_iff() -> Outcome {
    let mut tables = 0;
    for n in 1..=3 {
        let perms = all_permutations(n);
        for m in all_magmas(n) {
            if !(0..n).all(|x| perms.iter().any(|p| p.as_slice() == m.row(x))) {
                continue;
            }
            let s = braided_from_rack(&m).unwrap();
            ensure(is_ybe_solution(&s).holds == is_rack(&m), || format!("{:?}", m.rows()))?;
            tables += 1;
        }
    }
    let mut pairs = 0;
    for n in 1..=4 {
        for q in enumerate_racks(n, 4).unwrap() {
            let s = braided_from_rack(&q).unwrap();
            for a in all_maps(n) {
                let lhs = is_braided_averaging(&s, &a).unwrap().holds;
                ensure(lhs == is_averaging(Carrier::Rack(&q), &a).unwrap().holds, || {
                    format!("{:?} with {:?}", q.rows(), a.image())
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{tables} tables, {pairs} (rack, map) pairs"))
}

fn random_skew(rng: &mut ChaCha8Rng) -> StructureConstants {
    let mut s = StructureConstants::zero(3);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        for k in 0..3 {
            let v = int(rng.gen_range(-2..=2));
            s.set(j, i, k, -v.clone());
            s.set(i, j, k, v);
        }
    }
    s
}

fn braided_vector_space() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let heisenberg = {
        let mut s = StructureConstants::zero(3);
        s.set(0, 1, 2, int(1));
        s.set(1, 0, 2, int(-1));
        s
    };
    let mut brackets = vec![so3(), sl2(), abelian(3), heisenberg, perturbed_so3()];
    brackets.push(sl2().change_basis(&random_invertible(&mut rng, 3)).unwrap());
    while brackets.len() < 20 {
        brackets.push(random_skew(&mut rng));
    }
    let mut outcomes = [0usize; 2];
    for (i, g) in brackets.iter().enumerate() {
        let ybe = ybe_linear_check(&braided_from_lie(g).unwrap()).unwrap();
        ensure(ybe == satisfies_jacobi(g), || format!("bracket {i}: YBE {ybe}"))?;
        outcomes[usize::from(ybe)] += 1;
    }
    ensure(outcomes[0] > 0 && outcomes[1] > 0, || format!("one-sided sample {outcomes:?}"))?;

    let g = sl2();
    let mut ops = vec![
        Matrix::zeros(3, 3),
        Matrix::identity(3),
        Matrix::scalar(3, rat(-2, 3)),
        sl2_nilpotent_averaging(int(1)),
        sl2_nilpotent_averaging(rat(5, 2)),
    ];
    while ops.len() < 20 {
        let rows: Vec<Vec<Rational>> = (0..3)
            .map(|_| (0..3).map(|_| int(rng.gen_range(-1..=1))).collect())
            .collect();
        ops.push(Matrix::from_rows(rows).unwrap());
    }
    let mut avg = [0usize; 2];
    for (i, p) in ops.iter().enumerate() {
        let braided = braided_averaging_check(&g, p).unwrap();
        ensure(braided == is_linear_averaging(AveragingKind::Lie, &g, p).unwrap().holds, || {
            format!("operator {i}")
        })?;
        avg[usize::from(braided)] += 1;
    }
    ensure(avg[0] > 0 && avg[1] > 0, || format!("one-sided operator sample {avg:?}"))?;
    Ok(format!("brackets true/false {}/{}, operators {}/{}", outcomes[1], outcomes[0], avg[1], avg[0]))
}

struct Criterion {
    id: usize,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "flip-rack averaging counts", budget: secs(5), run: flip_counts },
        Criterion { id: 2, name: "abelian groups: every map averages", budget: secs(5), run: abelian_groups },
        Criterion { id: 3, name: "group and conjugation-rack operators agree", budget: secs(60), run: group_rack_equivalence },
        Criterion { id: 4, name: "graph criteria", budget: secs(30), run: graph_criteria },
        Criterion { id: 5, name: "power hierarchy", budget: secs(60), run: hierarchy },
        Criterion { id: 6, name: "holomorph regular subracks", budget: secs(60), run: holomorph_theorem },
        Criterion { id: 7, name: "di-rack round trips", budget: secs(60), run: dirack_round_trip },
        Criterion { id: 8, name: "embedding theorems", budget: secs(60), run: embeddings },
        Criterion { id: 9, name: "Leibnizification", budget: secs(60), run: leibnizification_suite },
        Criterion { id: 10, name: "Hopf correspondence", budget: secs(60), run: hopf_correspondence },
        Criterion { id: 11, name: "Yang-Baxter iff", budget: secs(120), run: ybe_iff },
        Criterion { id: 12, name: "braided vector space", budget: secs(30), run: braided_vector_space },
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for c in &criteria {
        if !filter.is_empty() && !filter.iter().any(|f| c.name.to_lowercase().contains(&f.to_lowercase()) || c.id.to_string() == *f) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > c.budget => Err(format!("{detail}; over budget of {:?}", c.budget)),
            other => other,
        };
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => {
                failed += 1;
                ("FAIL", d.as_str())
            }
        };
        println!("{tag} criterion {:>2} {} ({:.2}s): {detail}", c.id, c.name, elapsed.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
