mod common;

use gra_core::builders::{build_complex_algebra_frame, build_cyclic_frame, build_power_frame};
use gra_core::oracle::cayley_relation;
use gra_core::{make_cyclic, AtomIndex, Frame, GroupRelationAlgebra};

#[test]
fn complex_algebras_are_cayley_representations() {
    let z1 =
        GroupRelationAlgebra::new(build_complex_algebra_frame(&make_cyclic(1).unwrap())).unwrap();
    assert_eq!(z1.atoms().len(), 1);
    assert_eq!(
        z1.materialize_atom(AtomIndex::new(0, 0, 0)).pairs(),
        vec![(0, 0)]
    );

    let z6 = make_cyclic(6).unwrap();
    let alg = GroupRelationAlgebra::new(build_complex_algebra_frame(&z6)).unwrap();
    let all: Vec<usize> = (0..6).collect();
    for g in 0..6 {
        let r = alg.materialize_atom(AtomIndex::new(0, 0, g));
        assert_eq!(r, &cayley_relation(&z6, g));
        assert!(r.is_bijection_between(&all, &all));
    }

    let klein = GroupRelationAlgebra::new(build_complex_algebra_frame(&common::klein())).unwrap();
    assert_eq!(klein.atoms().len(), 4);
    for &a in klein.atoms() {
        assert_eq!(klein.converse_atom(a), a);
    }
}

#[test]
fn trivial_power_frame_is_the_full_set_relation_algebra() {
    let m = make_cyclic(1).unwrap();
    let f = build_power_frame(&m, &m.all(), 4, &[vec![0, 2], vec![1, 3]]).unwrap();
    let alg = GroupRelationAlgebra::new(f).unwrap();
    // one atom per related pair, each a single point pair
    assert_eq!(alg.atoms().len(), 8);
    assert!(alg
        .atoms()
        .iter()
        .all(|&a| alg.materialize_atom(a).len() == 1));
    assert_eq!(alg.materialize(&alg.unit()).unwrap().len(), 8);
}

#[test]
fn pair_dense_cyclic_frame() {
    let f = build_cyclic_frame(&[2, 2, 2], &vec![vec![2; 3]; 3]).unwrap();
    let alg = GroupRelationAlgebra::new(f).unwrap();
    assert!(alg.measure_report().pair_dense);
    for (x, y) in alg.frame().related_pairs().filter(|(x, y)| x != y) {
        for a in 0..2 {
            let r = alg.materialize_atom(AtomIndex::new(x, y, a));
            assert_eq!(r.len(), 2);
            assert!(r.is_bijection_between(&[2 * x, 2 * x + 1], &[2 * y, 2 * y + 1]));
        }
    }
}

#[test]
fn cross_atom_cardinality_in_cyclic_frames() {
    let mut r = common::rng(19);
    for _ in 0..10 {
        let params = common::random_cyclic_params(&mut r, 4, 24);
        let alg = GroupRelationAlgebra::new(params.build()).unwrap();
        for &a in alg.atoms() {
            let (nx, ny, k) = (
                params.orders[a.x],
                params.orders[a.y],
                params.kappa[a.x][a.y],
            );
            assert_eq!(alg.kappa(a.x, a.y), k);
            assert_eq!(alg.materialize_atom(a).len(), nx * (ny / k));
        }
    }
}

#[test]
fn power_frames_with_different_groups_per_block() {
    let klein = common::klein();
    let s3 = common::s3();
    let a = build_power_frame(&klein, &klein.set([0, 1]).unwrap(), 2, &[vec![0, 1]]).unwrap();
    let b = build_power_frame(&s3, &s3.set([0, 1, 2]).unwrap(), 2, &[vec![0, 1]])
        .unwrap()
        .with_ids(vec!["2".into(), "3".into()])
        .unwrap();
    let f = Frame::disjoint_union(&[a, b]).unwrap();
    assert_eq!(f.blocks(), &[vec![0, 1], vec![2, 3]]);
    assert!(f.check_frame_full().passed());
    let alg = GroupRelationAlgebra::new(f).unwrap();
    assert_eq!(alg.decompose().len(), 2);
    assert_eq!(alg.atoms().len(), 2 * 4 + 2 * 2 + 2 * 6 + 2 * 2);
}
