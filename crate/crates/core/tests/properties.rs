use averaging_core::averaging::{is_averaging, is_relative_averaging, relative_graph_check, Carrier};
use averaging_core::group_algebra::{extend_operator, restrict_operator};
use averaging_core::groups::{small_groups, GroupAction};
use averaging_core::leibniz::{check_lie, is_linear_averaging, AveragingKind, StructureConstants};
use averaging_core::linalg::{int, vec_add, Matrix, Rational};
use averaging_core::magma::{enumerate_racks, is_rack, FiniteMagma, SetMap};
use proptest::prelude::*;

fn perm_inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

fn magma_strategy(max: usize) -> impl Strategy<Value = FiniteMagma> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(0..n, n), n)
            .prop_map(|rows| FiniteMagma::new(rows).unwrap())
    })
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn vector(d: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(small_rational(), d)
}

fn structure(d: usize) -> impl Strategy<Value = StructureConstants> {
    proptest::collection::vec(-2i64..=2, d * d * d).prop_map(move |c| {
        StructureConstants::from_basis_fn(d, |i, j| (0..d).map(|k| int(c[(i * d + j) * d + k])).collect())
    })
}

/// `e·e = e`, `e·f = f`, everything else zero.
fn associative2() -> StructureConstants {
    StructureConstants::from_basis_fn(2, |i, j| match (i, j) {
        (0, 0) => vec![int(1), int(0)],
        (0, 1) => vec![int(0), int(1)],
        _ => vec![int(0), int(0)],
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn averaging_survives_relabeling(rack in 0usize..16, perm in Just((0..3).collect::<Vec<usize>>()).prop_shuffle(), image in proptest::collection::vec(0usize..3, 3)) {
        let racks: Vec<FiniteMagma> = enumerate_racks(3, 3).unwrap();
        let q = &racks[rack % racks.len()];
        let a = SetMap::endo(image).unwrap();
        let inv = perm_inverse(&perm);
        let moved = SetMap::endo((0..3).map(|x| perm[a.apply(inv[x])]).collect()).unwrap();
        let r = q.relabel(&perm);
        prop_assert!(is_rack(&r));
        prop_assert_eq!(
            is_averaging(Carrier::Rack(q), &a).unwrap().holds,
            is_averaging(Carrier::Rack(&r), &moved).unwrap().holds
        );
    }

    #[test]
    fn rack_check_matches_axioms(m in magma_strategy(4)) {
        let n = m.size();
        let bijective = (0..n).all(|x| m.left_translation(x).is_bijective());
        let distributive = (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| {
            m.op(x, m.op(y, z)) == m.op(m.op(x, y), m.op(x, z))
        })));
        prop_assert_eq!(is_rack(&m), bijective && distributive);
    }

    #[test]
    fn bracket_is_bilinear(s in structure(3), u in vector(3), v in vector(3), w in vector(3), lambda in small_rational()) {
        let scaled: Vec<Rational> = v.iter().map(|x| x * &lambda).collect();
        let lhs = s.bracket(&vec_add(&u, &scaled), &w);
        let bv: Vec<Rational> = s.bracket(&v, &w).iter().map(|x| x * &lambda).collect();
        prop_assert_eq!(&lhs, &vec_add(&s.bracket(&u, &w), &bv));
        let rhs = s.bracket(&w, &vec_add(&u, &scaled));
        let wv: Vec<Rational> = s.bracket(&w, &v).iter().map(|x| x * &lambda).collect();
        prop_assert_eq!(rhs, vec_add(&s.bracket(&w, &u), &wv));
    }

    #[test]
    fn relative_graph_criterion(group in 0usize..8, image in proptest::collection::vec(0usize..6, 6), adjoint in any::<bool>()) {
        let groups = small_groups(6);
        let g = &groups[group % groups.len()].1;
        let n = g.order();
        let act = if adjoint { GroupAction::adjoint(g) } else { GroupAction::trivial(g, n) };
        let b = SetMap::new(image[..n].iter().map(|&x| x % n).collect(), n).unwrap();
        prop_assert_eq!(
            relative_graph_check(&act, &b).unwrap(),
            is_relative_averaging(&act, &b).unwrap().holds
        );
    }

    #[test]
    fn hopf_restriction_inverts_extension(group in 0usize..8, image in proptest::collection::vec(0usize..6, 6)) {
        let groups = small_groups(6);
        let g = &groups[group % groups.len()].1;
        let n = g.order();
        let a = SetMap::endo(image[..n].iter().map(|&x| x % n).collect()).unwrap();
        prop_assert_eq!(restrict_operator(g, &extend_operator(g, &a).unwrap()).unwrap(), a);
    }

    #[test]
    fn commutator_of_associative_averaging(entries in proptest::collection::vec(-2i64..=2, 4)) {
        let assoc = associative2();
        let p = Matrix::from_i64(&[&entries[..2], &entries[2..]]);
        let lie = assoc.commutator();
        prop_assert!(check_lie(&lie).holds);
        if is_linear_averaging(AveragingKind::Leibniz, &assoc, &p).unwrap().holds {
            prop_assert!(is_linear_averaging(AveragingKind::Lie, &lie, &p).unwrap().holds);
        }
    }
}

#[test]
fn associative_averaging_sample_is_nontrivial() {
    let assoc = associative2();
    let lie = assoc.commutator();
    let mut hits = 0;
    for code in 0..625 {
        let e: Vec<i64> = (0..4).map(|k| (code / 5i64.pow(k)) % 5 - 2).collect();
        let p = Matrix::from_i64(&[&e[..2], &e[2..]]);
        if is_linear_averaging(AveragingKind::Leibniz, &assoc, &p).unwrap().holds {
            assert!(is_linear_averaging(AveragingKind::Lie, &lie, &p).unwrap().holds);
            hits += 1;
        }
    }
    assert!(hits > 5, "only {hits} averaging operators");
}
