mod common;

use gra_core::format::{emit_frame, parse_frame};
use gra_core::laws::verify;
use gra_core::GroupRelationAlgebra;
use proptest::prelude::*;

fn small_algebra(seed: u64) -> GroupRelationAlgebra {
    let mut r = common::rng(seed);
    GroupRelationAlgebra::new(common::random_cyclic_params(&mut r, 3, 12).build()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn symbolic_operations_match_the_oracle(seed in any::<u64>()) {
        let alg = small_algebra(seed);
        let report = verify(&alg);
        prop_assert!(report.passed(), "{:?}", report.laws.iter().filter(|l| !l.passed()).collect::<Vec<_>>());
    }

    #[test]
    fn emitted_files_parse_back(seed in any::<u64>()) {
        let alg = small_algebra(seed);
        let text = emit_frame(alg.frame());
        let back = parse_frame(&text).unwrap();
        prop_assert_eq!(&back, alg.frame());
        prop_assert_eq!(emit_frame(&back), text);
    }

    #[test]
    fn boolean_laws_on_random_elements(seed in any::<u64>(), picks in proptest::collection::vec(any::<u32>(), 3)) {
        let alg = small_algebra(seed);
        let n = alg.atoms().len();
        let elems: Vec<_> = picks
            .iter()
            .map(|&p| alg.element_from_ordinals((0..n).filter(|i| (p >> (i % 32)) & 1 == 1)))
            .collect();
        let (a, b, c) = (&elems[0], &elems[1], &elems[2]);
        let ab = alg.union(a, b).unwrap();
        // composition distributes over union, checked against the oracle
        let lhs = alg.materialize(&alg.compose(&ab, c).unwrap()).unwrap();
        let rhs = alg.materialize(a).unwrap().union(&alg.materialize(b).unwrap())
            .compose(&alg.materialize(c).unwrap());
        prop_assert_eq!(lhs, rhs);
        // De Morgan inside the unit
        let na = alg.complement(a).unwrap();
        let nb = alg.complement(b).unwrap();
        prop_assert_eq!(alg.complement(&ab).unwrap(), alg.intersect(&na, &nb).unwrap());
        let unit = alg.unit_relation();
        prop_assert_eq!(
            alg.materialize(&na).unwrap(),
            alg.materialize(a).unwrap().complement_within(&unit)
        );
    }
}
