mod common;

use cubetile::constraint::{
    construct_sublattice_tiling_with, decide_constraint_with, factorize_tiling_lattice, verify_certificate,
    DecideOptions, Triangle,
};
use cubetile::cube::{
    enumerate_open_cube_points_with, grid_coverage_oracle_with, lattice_window, verify_lattice_tiling, GridRegion,
};
use cubetile::format::{certificate_from_json, certificate_to_json};
use cubetile::lattice::quotient_order;
use cubetile::linalg::rational::{int, rat, reciprocal_integer};
use cubetile::spectral::volume_rationality_check;
use cubetile::{Execution, IntMatrix, Lattice, Permutation, QMatrix};
use num::{BigInt, Signed};
use proptest::prelude::*;

fn anti_diagonal(d: usize) -> QMatrix {
    Permutation::new((0..d).rev().collect()).unwrap().qmatrix()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn unimodular_change_of_basis_keeps_the_lattice(seed in any::<u64>(), d in 1usize..=4) {
        let mut rng = common::seeded(seed);
        let a = common::nonsingular_rational_matrix(&mut rng, d, 7, 6);
        let u = common::unimodular(&mut rng, d);
        let l = Lattice::new(a.clone()).unwrap();
        let l2 = Lattice::new(a.mul_mat(&QMatrix::from_int(&u)).unwrap()).unwrap();
        prop_assert!(l.equals(&l2).unwrap());
        prop_assert!(l2.equals(&l).unwrap());
        let doubled = Lattice::new(a.scale(&int(2))).unwrap();
        prop_assert!(!l.equals(&doubled).unwrap());
        prop_assert!(doubled.is_sublattice_of(&l).unwrap());
        prop_assert_eq!(quotient_order(&doubled, &l).unwrap(), BigInt::from(1u32 << d));
    }

    #[test]
    fn open_cube_points_are_symmetric(seed in any::<u64>(), d in 1usize..=4) {
        let mut rng = common::seeded(seed);
        let a = common::nonsingular_rational_matrix(&mut rng, d, 4, 5);
        let points = enumerate_open_cube_points_with(&a, Execution::Sequential).unwrap();
        for k in &points {
            let neg: Vec<BigInt> = k.iter().map(|x| -x).collect();
            prop_assert!(points.contains(&neg));
        }
        prop_assert_eq!(points, enumerate_open_cube_points_with(&a, Execution::Parallel).unwrap());
    }

    #[test]
    fn factorization_round_trip(seed in any::<u64>(), d in 2usize..=4) {
        let mut rng = common::seeded(seed);
        let p = common::permutation(&mut rng, d);
        let g = common::lower_unitriangular(&mut rng, d, 8, 8);
        let a = p.qmatrix().mul_mat(&g).unwrap();
        prop_assert!(verify_lattice_tiling(&a).unwrap());
        let (p2, g2) = factorize_tiling_lattice(&a).unwrap();
        prop_assert!(g2.is_lower_unitriangular());
        let rebuilt = Lattice::new(p2.qmatrix().mul_mat(&g2).unwrap()).unwrap();
        prop_assert!(rebuilt.equals(&Lattice::new(a).unwrap()).unwrap());
    }

    #[test]
    fn anti_diagonal_conjugate_is_upper(seed in any::<u64>(), d in 1usize..=5) {
        let mut rng = common::seeded(seed);
        let g = common::lower_unitriangular(&mut rng, d, 8, 8);
        let j = anti_diagonal(d);
        let conj = j.mul_mat(&g).unwrap().mul_mat(&j).unwrap();
        prop_assert!(conj.is_upper_unitriangular());
    }

    #[test]
    fn lower_and_upper_targets_agree(seed in any::<u64>(), d in 2usize..=3, feasible in any::<bool>()) {
        let mut rng = common::seeded(seed);
        let a = if feasible {
            common::feasible_instance(&mut rng, d).0
        } else {
            // |det| = 1/N more often than a random matrix would give
            let m = common::nonsingular_int_matrix(&mut rng, d, 3);
            QMatrix::from_int(&m).inverse().unwrap().mul_mat(&QMatrix::from_fn(d, d, |i, j| {
                if i == j { int(1) } else { common::rational(&mut rng, 2, 3) }
            })).unwrap()
        };
        if a.det().unwrap() == num::BigRational::from_integer(0.into()) {
            return Ok(());
        }
        let lower = decide_constraint_with(&a, DecideOptions { target: Triangle::Lower, execution: Execution::Sequential }).unwrap();
        let upper = decide_constraint_with(&a, DecideOptions { target: Triangle::Upper, execution: Execution::Sequential }).unwrap();
        prop_assert_eq!(lower.is_some(), upper.is_some());
        if feasible {
            prop_assert!(lower.is_some());
        }
    }

    #[test]
    fn certificates_are_sound(seed in any::<u64>(), d in 2usize..=4) {
        let mut rng = common::seeded(seed);
        let (a, _, _, _) = common::feasible_instance(&mut rng, d);
        let options = DecideOptions { execution: Execution::Parallel, ..DecideOptions::default() };
        let cert = decide_constraint_with(&a, options).unwrap().expect("constructed instance is feasible");
        prop_assert!(verify_certificate(&a, &cert).unwrap());
        prop_assert_eq!(certificate_from_json(&certificate_to_json(&cert)).unwrap(), cert.clone());

        // |det A| = 1/|det R|
        let n = cert.r.det().unwrap().abs();
        prop_assert_eq!(reciprocal_integer(&a.det().unwrap().abs()), Some(n.clone()));
        prop_assert_eq!(volume_rationality_check(&a).unwrap(), Some(n.clone()));

        let l = construct_sublattice_tiling_with(&a, Execution::Sequential).unwrap().unwrap();
        let sup = Lattice::new(a.clone()).unwrap();
        prop_assert!(l.is_sublattice_of(&sup).unwrap());
        prop_assert!(verify_lattice_tiling(l.basis()).unwrap());
        prop_assert_eq!(quotient_order(&l, &sup).unwrap(), n);
    }

    #[test]
    fn sequential_and_parallel_decisions_agree(seed in any::<u64>(), d in 2usize..=4) {
        let mut rng = common::seeded(seed);
        let a = if seed % 2 == 0 {
            common::feasible_instance(&mut rng, d).0
        } else {
            common::nonsingular_rational_matrix(&mut rng, d, 3, 2)
        };
        let run = |execution| decide_constraint_with(&a, DecideOptions { execution, ..DecideOptions::default() }).unwrap();
        prop_assert_eq!(run(Execution::Sequential), run(Execution::Parallel));
    }

    #[test]
    fn tiling_lattices_cover_the_grid_once(seed in any::<u64>(), d in 1usize..=3) {
        let mut rng = common::seeded(seed);
        let p = common::permutation(&mut rng, d);
        let g = common::lower_unitriangular(&mut rng, d, 4, 4);
        let l = Lattice::new(p.qmatrix().mul_mat(&g).unwrap()).unwrap();
        let region = GridRegion::cube(d, int(-1), int(1), rat(1, 4)).unwrap();
        let window = lattice_window(&l, &region).unwrap();
        let seq = grid_coverage_oracle_with(window.clone(), &region, Execution::Sequential).unwrap();
        let par = grid_coverage_oracle_with(window, &region, Execution::Parallel).unwrap();
        prop_assert_eq!(seq.verdict.as_str(), "exact-cover");
        prop_assert_eq!(seq, par);
    }
}

#[test]
fn integer_matrix_scaling_is_feasible() {
    // A = R^{-1} for integer R always admits a certificate with P = id
    let r = IntMatrix::from_rows(vec![
        vec![BigInt::from(2), BigInt::from(1)],
        vec![BigInt::from(0), BigInt::from(3)],
    ])
    .unwrap();
    let a = QMatrix::from_int(&r).inverse().unwrap();
    let cert = decide_constraint_with(&a, DecideOptions::default()).unwrap().unwrap();
    assert!(verify_certificate(&a, &cert).unwrap());
}
