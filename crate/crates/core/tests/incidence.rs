use klein_core::incidence::*;
use klein_core::models::klein_model;
use proptest::prelude::*;

fn fano() -> IncidenceStructure {
    let lines = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]];
    IncidenceStructure::new(7, lines.iter().map(|l| l.to_vec()).collect()).unwrap()
}

/// The affine plane of order 3: points (x, y) ∈ 𝔽₃², lines y = mx + c and x = c.
fn ag23() -> IncidenceStructure {
    let idx = |x: usize, y: usize| 3 * x + y;
    let mut blocks = Vec::new();
    for m in 0..3 {
        for c in 0..3 {
            blocks.push((0..3).map(|x| idx(x, (m * x + c) % 3)).collect());
        }
    }
    for c in 0..3 {
        blocks.push((0..3).map(|y| idx(c, y)).collect());
    }
    IncidenceStructure::new(9, blocks).unwrap()
}

fn structure() -> impl Strategy<Value = IncidenceStructure> {
    (2usize..9).prop_flat_map(|n| {
        prop::collection::btree_set(prop::collection::btree_set(0..n, 1..=n), 1..10)
            .prop_map(move |bs| IncidenceStructure::new(n, bs.into_iter().map(|b| b.into_iter().collect()).collect()).unwrap())
    })
}

fn relabel(s: &IncidenceStructure, pts: &[usize], blocks: &[usize]) -> IncidenceStructure {
    let mut out = vec![Vec::new(); s.n_blocks()];
    for (b, ps) in s.blocks().iter().enumerate() {
        out[blocks[b]] = ps.iter().map(|&p| pts[p]).collect();
    }
    IncidenceStructure::new(s.n_points(), out).unwrap()
}

fn shuffled(n: usize, seed: u64) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    let mut x = seed | 1;
    for i in (1..n).rev() {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        v.swap(i, (x % (i as u64 + 1)) as usize);
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn double_dual_is_identity(s in structure()) {
        let dd = dual(&dual(&s));
        prop_assert_eq!(dd.n_points(), s.n_points());
        prop_assert_eq!(dd.blocks(), s.blocks());
    }

    #[test]
    fn relabeling_is_detected(s in structure(), a in any::<u64>(), b in any::<u64>()) {
        let t = relabel(&s, &shuffled(s.n_points(), a), &shuffled(s.n_blocks(), b));
        let w = isomorphic(&s, &t).expect("relabeled copy is isomorphic");
        prop_assert!(w.verify(&s, &t));
        prop_assert!(w.inverse().verify(&t, &s));
        prop_assert_eq!(census_type(&s), census_type(&t));
    }

    #[test]
    fn json_round_trip(s in structure()) {
        prop_assert_eq!(IncidenceStructure::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn closure_is_monotone_and_idempotent(mask in 1u32..(1 << 21), extra in 0usize..21) {
        let m = klein_model().unwrap();
        let lat = GeometricLattice::new(21, &klein_points(&m)).unwrap();
        let seed: Vec<usize> = (0..21).filter(|i| mask >> i & 1 == 1).collect();
        let c = generation_closure(&lat, &seed);
        prop_assert!(seed.iter().all(|l| c.lines.contains(l)));
        prop_assert_eq!(&generation_closure(&lat, &c.lines), &c);
        let mut bigger = seed.clone();
        bigger.push(extra);
        let c2 = generation_closure(&lat, &bigger);
        prop_assert!(c.lines.iter().all(|l| c2.lines.contains(l)));
    }
}

fn klein_points(m: &klein_core::models::KleinModel) -> Vec<Vec<usize>> {
    m.quad_lines.iter().chain(&m.triple_lines).cloned().collect()
}

#[test]
fn cycle_and_two_triangles_differ() {
    // Same type (6_2, 6_2), different structure.
    let c6 = IncidenceStructure::new(6, (0..6).map(|i| vec![i, (i + 1) % 6]).collect()).unwrap();
    let tt = IncidenceStructure::new(6, vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![3, 4], vec![4, 5], vec![3, 5]]).unwrap();
    assert_eq!(census_type(&c6), census_type(&tt));
    assert!(isomorphic(&c6, &tt).is_none());
}

#[test]
fn fano_is_self_dual_and_not_resolvable() {
    let f = fano();
    assert_eq!(census_type(&f).to_string(), "(7_3)");
    assert!(isomorphic(&f, &dual(&f)).is_some());
    assert!(parallel_classes(&f).is_empty());
    assert!(resolvable(&f, 7).is_none());
}

#[test]
fn affine_plane_resolves_into_four_classes() {
    let s = ag23();
    assert_eq!(census_type(&s).to_string(), "(9_4, 12_3)");
    let classes = resolvable(&s, 4).expect("AG(2,3) is resolvable");
    assert_eq!(classes.len(), 4);
    for c in &classes {
        let mut pts: Vec<usize> = c.iter().flat_map(|&b| s.blocks()[b].clone()).collect();
        pts.sort_unstable();
        assert_eq!(pts, (0..9).collect::<Vec<_>>());
    }
    // Exactly the four slope classes.
    assert_eq!(parallel_classes(&s).len(), 4);
}

#[test]
fn generic_lines_need_all_of_themselves() {
    // Four lines in general position: six double points, nothing to join.
    let pts: Vec<Vec<usize>> = (0..4).flat_map(|i| (i + 1..4).map(move |j| vec![i, j])).collect();
    let lat = GeometricLattice::new(4, &pts).unwrap();
    let g = generation_number(&lat);
    assert_eq!(g.g, 4);
    assert_eq!(g.tested.last(), Some(&(4, 1, 1)));
}

#[test]
fn complete_quadrilateral_diagonals() {
    // Lines 0..3 of a quadrilateral plus the three diagonals 4, 5, 6 joining
    // opposite vertices.
    let pts = vec![
        vec![0, 1, 4],
        vec![2, 3, 4],
        vec![0, 2, 5],
        vec![1, 3, 5],
        vec![0, 3, 6],
        vec![1, 2, 6],
        vec![4, 5],
        vec![4, 6],
        vec![5, 6],
    ];
    let lat = GeometricLattice::new(7, &pts).unwrap();
    assert!(generation_closure(&lat, &[0, 1, 2, 3]).generates);
    assert!(!generation_closure(&lat, &[0, 1, 2]).generates);
    assert_eq!(generation_number(&lat).g, 4);
}

#[test]
fn lattice_rejects_missing_meets() {
    assert!(GeometricLattice::new(3, &[vec![0, 1]]).is_err());
    assert!(GeometricLattice::new(2, &[vec![0, 1], vec![0, 1]]).is_err());
}

#[test]
fn concurrency_minor_of_three_free_lines() {
    let ideal = moduli_ideal_export(3, &[vec![0, 1, 2]], &[]).unwrap();
    assert_eq!(ideal.concurrent, vec![[0, 1, 2]]);
    // A generic 3×3 determinant has six terms.
    let g = &ideal.generators[0];
    assert_eq!(g.matches(" + ").count() + g.matches(" - ").count() + 1, 6);
}
