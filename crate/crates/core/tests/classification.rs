use std::collections::BTreeMap;

use geodual_core::classify::{
    admissible_subgroups, are_conjugate, classify, classify_group, conjugate_subgroup, geodesic_image_subgroup,
    partial_search, realize_group, subgroup_closure, surface_from_subgroup, GroupData, SubgroupRecord, A,
    B, C,
};
use geodual_core::surface::{find_isomorphism, is_geodesic_self_dual};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Row = (usize, usize, usize, usize, bool);

fn rows(d: usize) -> Vec<Row> {
    classify(d)
        .unwrap()
        .iter()
        .map(|e| {
            let s = &e.surface_stats;
            (e.subgroup.order(), s.vertex_count, s.edge_count, s.face_count, s.orientable)
        })
        .collect()
}

#[test]
fn classification_tables() {
    assert_eq!(rows(5), vec![(1, 6, 15, 10, false)]);
    assert_eq!(rows(6), vec![(1, 9, 27, 18, true), (3, 3, 9, 6, true)]);
    assert_eq!(
        rows(8),
        vec![(1, 42, 168, 112, true), (2, 21, 84, 56, false), (7, 6, 24, 16, true), (14, 3, 12, 8, false)]
    );
    assert_eq!(
        rows(9),
        vec![(1, 190, 855, 570, false), (5, 38, 171, 114, false), (19, 10, 45, 30, false)]
    );
    for d in [3, 4, 7] {
        assert!(rows(d).is_empty());
    }
}

#[test]
fn entry_invariants() {
    for d in [5, 6, 8, 9] {
        let g = realize_group(d, 10_000).unwrap();
        for e in classify_group(&g).unwrap() {
            let s = &e.surface_stats;
            assert_eq!(e.index * e.subgroup.order(), g.order());
            assert_eq!(s.flag_count, e.index);
            assert_eq!(s.flag_count, 6 * s.face_count);
            assert_eq!(s.flag_count, 4 * s.edge_count);
            assert_eq!(s.flag_count, 2 * d * s.vertex_count);
            assert_eq!(s.uniform_degree, Some(d));
            assert!(e.flag_level_confirmed);
            let sharp = geodesic_image_subgroup(&g, &e.subgroup);
            assert_eq!(conjugate_subgroup(&g, &sharp, e.self_dual_witness).element_set, e.subgroup.element_set);
        }
    }
}

#[test]
fn orientable_genera() {
    let genera: Vec<Option<i64>> = classify(8).unwrap().iter().map(|e| e.surface_stats.orientable_genus()).collect();
    assert_eq!(genera, vec![Some(8), None, Some(2), None]);
    for e in classify(6).unwrap() {
        assert_eq!(e.surface_stats.euler_characteristic, 0);
    }
}

#[test]
fn normality() {
    let normal: Vec<(usize, bool)> = classify(6).unwrap().iter().map(|e| (e.subgroup.order(), e.normal)).collect();
    assert_eq!(normal, vec![(1, true), (3, true)]);
    let normal: Vec<(usize, bool)> = classify(8).unwrap().iter().map(|e| (e.subgroup.order(), e.normal)).collect();
    assert_eq!(normal, vec![(1, true), (2, true), (7, false), (14, false)]);
}

#[test]
fn sharp_is_an_involutive_automorphism() {
    let g = realize_group(8, 1000).unwrap();
    let n = g.order();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..2000 {
        let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
        assert_eq!(g.sharp(g.mul(x, y)), g.mul(g.sharp(x), g.sharp(y)));
    }
    assert!((0..n).all(|x| g.sharp(g.sharp(x)) == x));
    assert_eq!(g.sharp(g.generator(A)), g.generator(A));
    assert_eq!(g.sharp(g.generator(B)), g.generator(B));
    assert_eq!(g.sharp(g.generator(C)), g.mul(g.generator(A), g.generator(C)));

    let bc = g.mul(g.generator(B), g.generator(C));
    let bac = g.mul(g.mul(g.generator(B), g.generator(A)), g.generator(C));
    let image = geodesic_image_subgroup(&g, &subgroup_closure(&g, &[bc], false).unwrap());
    assert_eq!(image.element_set, subgroup_closure(&g, &[bac], false).unwrap().element_set);

    let seven = admissible_subgroups(&g).into_iter().find(|v| v.order() == 7).unwrap();
    let twice = geodesic_image_subgroup(&g, &geodesic_image_subgroup(&g, &seven));
    assert_eq!(twice.element_set, seven.element_set);
}

#[test]
fn conjugacy_witness_for_moved_subgroup() {
    let g = realize_group(8, 1000).unwrap();
    let seven = admissible_subgroups(&g).into_iter().find(|v| v.order() == 7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let x = rng.gen_range(0..g.order());
        let moved = conjugate_subgroup(&g, &seven, x);
        let w = are_conjugate(&g, &moved, &seven).unwrap();
        assert_eq!(conjugate_subgroup(&g, &seven, w).element_set, moved.element_set);
        if moved.element_set != seven.element_set {
            assert_ne!(w, 0);
        }
    }
}

fn cyclic_subgroups_to_avoid(g: &GroupData) -> Vec<SubgroupRecord> {
    let (a, b, c) = (g.generator(A), g.generator(B), g.generator(C));
    [a, c, g.mul(a, b), g.mul(a, c), g.mul(b, c)]
        .iter()
        .map(|&x| subgroup_closure(g, &[x], false).unwrap())
        .collect()
}

/// `(x, X)` with `x⁻¹ V x ∩ X ≠ {1}`, by brute force over the whole group.
fn condition_one_witness(g: &GroupData, v: &SubgroupRecord) -> Option<(usize, usize)> {
    let avoid = cyclic_subgroups_to_avoid(g);
    (0..g.order()).find_map(|x| {
        let conj = conjugate_subgroup(g, v, g.inverse(x));
        avoid
            .iter()
            .position(|xs| conj.element_set.iter().any(|&e| e != 0 && xs.contains(e)))
            .map(|i| (x, i))
    })
}

#[test]
fn condition_one_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for d in [5, 6, 8, 9] {
        let g = realize_group(d, 10_000).unwrap();
        let avoid = cyclic_subgroups_to_avoid(&g);
        for v in admissible_subgroups(&g) {
            for _ in 0..100 {
                let x = rng.gen_range(0..g.order());
                let conj = conjugate_subgroup(&g, &v, g.inverse(x));
                let xs = &avoid[rng.gen_range(0..avoid.len())];
                assert!(conj.element_set.iter().all(|&e| e == 0 || !xs.contains(e)));
            }
        }
        // cyclic subgroups touching the forbidden set are rejected with a witness
        let mut rejected = 0;
        for _ in 0..30 {
            let x = rng.gen_range(1..g.order());
            let v = subgroup_closure(&g, &[x], false).unwrap();
            let hits = v.element_set.iter().any(|&e| g.is_forbidden(e));
            assert_eq!(hits, condition_one_witness(&g, &v).is_some(), "d = {d}, element {x}");
            rejected += hits as usize;
        }
        assert!(rejected > 0);
    }
}

#[test]
fn subgroup_and_flag_level_agree() {
    for d in [5, 6, 8, 9] {
        let g = realize_group(d, 10_000).unwrap();
        for v in admissible_subgroups(&g) {
            let subgroup_level = are_conjugate(&g, &v, &geodesic_image_subgroup(&g, &v)).is_some();
            let surface = surface_from_subgroup(&g, &v).unwrap();
            assert_eq!(subgroup_level, is_geodesic_self_dual(&surface).is_some(), "d = {d}, |V| = {}", v.order());
        }
    }
}

#[test]
fn classification_ignores_element_numbering() {
    let summary = |g: &GroupData| {
        let mut m: BTreeMap<Row, usize> = BTreeMap::new();
        for e in classify_group(g).unwrap() {
            let s = &e.surface_stats;
            *m.entry((e.subgroup.order(), s.vertex_count, s.edge_count, s.face_count, s.orientable)).or_default() += 1;
        }
        m
    };
    for d in [6, 8] {
        let base = summary(&GroupData::realize(d, 1000, [A, B, C]).unwrap());
        for order in [[C, A, B], [B, C, A], [C, B, A]] {
            assert_eq!(summary(&GroupData::realize(d, 1000, order).unwrap()), base, "d = {d}, {order:?}");
        }
    }
}

#[test]
fn bounded_search_agrees_with_groups() {
    for (d, cap) in [(5, 60), (6, 108)] {
        let searched = partial_search(d, cap).unwrap();
        let classified = classify(d).unwrap();
        assert_eq!(searched.len(), classified.len());
        for (s, c) in searched.iter().zip(&classified) {
            assert!(find_isomorphism(&s.surface, &c.surface).is_some());
        }
    }
    let eight: Vec<usize> = partial_search(8, 96).unwrap().iter().map(|e| e.surface_stats.flag_count).collect();
    assert_eq!(eight, vec![96, 48]);
}
