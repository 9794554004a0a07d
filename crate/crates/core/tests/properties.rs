mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use common::*;
use qwst::graph::{hermitian_from_weights, recover_weights, tail_incidence, ArcSpace, HermitianAdjacency, WeightMatrix};
use qwst::spectral::{certify, decompose, strong_cospectrality};
use qwst::transfer::{pgst_decide_with, PgstOptions};
use qwst::walk::{amplitude_bounds, evolve, TransitionMatrix};
use qwst::CMatrix;

fn instance(seed: u64) -> WeightMatrix {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = rng.gen_range(2..=8);
    let density = rng.gen_range(0.0..0.8);
    let g = random_graph(&mut rng, n, density);
    random_weights(&mut rng, g)
}

/// Random admissible `H`: a convex combination of `(P + P^T)/2` over random
/// fixed-point-free permutations `P`, one of them an `n`-cycle, with random
/// Hermitian phases.
fn admissible(seed: u64) -> HermitianAdjacency {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = rng.gen_range(2..=8);
    let count = rng.gen_range(1..=4);
    let mut perms: Vec<Vec<usize>> = vec![(0..n).map(|i| (i + 1) % n).collect()];
    while perms.len() < count {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(&mut rng);
        if p.iter().enumerate().all(|(i, &j)| i != j) {
            perms.push(p);
        }
    }
    let raw: Vec<f64> = perms.iter().map(|_| rng.gen_range(0.1..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut m = CMatrix::zeros(n, n);
    for (p, c) in perms.iter().zip(&raw) {
        for (i, &j) in p.iter().enumerate() {
            m[(i, j)] += common::c(0.5 * c / total, 0.0);
            m[(j, i)] += common::c(0.5 * c / total, 0.0);
        }
    }
    for a in 0..n {
        for b in (a + 1)..n {
            let z = num_complex::Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
            m[(a, b)] *= z;
            m[(b, a)] *= z.conj();
        }
    }
    HermitianAdjacency::from_matrix(m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn incidence_is_a_coisometry(seed in any::<u64>()) {
        let w = instance(seed);
        let nm = tail_incidence(&w, &ArcSpace::new(w.graph()));
        let n = w.graph().n();
        prop_assert!((&nm * nm.adjoint() - CMatrix::identity(n, n)).norm() <= 1e-12);
        let p = nm.adjoint() * &nm;
        prop_assert!((&p * &p - &p).norm() <= 1e-12);
    }

    #[test]
    fn hermitian_adjacency_is_the_compressed_reversal(seed in any::<u64>()) {
        let w = instance(seed);
        let arcs = ArcSpace::new(w.graph());
        let nm = tail_incidence(&w, &arcs);
        let compressed = &nm * arcs.reversal_matrix() * nm.adjoint();
        let h = hermitian_from_weights(&w);
        prop_assert!((h.matrix() - compressed).norm() <= 1e-12);
        let entrywise = CMatrix::from_fn(w.graph().n(), w.graph().n(), |a, b| w.get(a, b) * w.get(b, a).conj());
        prop_assert!((h.matrix() - entrywise).norm() <= 1e-15);
    }

    #[test]
    fn recovered_weights_rebuild_h(seed in any::<u64>(), phase_seed in any::<u64>()) {
        let h = admissible(seed);
        let mut rng = StdRng::seed_from_u64(phase_seed);
        let phases: BTreeMap<(usize, usize), num_complex::Complex64> = h
            .graph()
            .edges()
            .iter()
            .map(|&e| (e, num_complex::Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))))
            .collect();
        let w = recover_weights(&h, &phases).unwrap();
        prop_assert!((hermitian_from_weights(&w).matrix() - h.matrix()).norm() <= 1e-12);
    }

    #[test]
    fn walk_is_unitary_and_norm_preserving(seed in any::<u64>(), t in 0u64..200) {
        let w = instance(seed);
        let u = TransitionMatrix::new(&w);
        let d = u.dense();
        let m = u.dim();
        prop_assert!((&d * d.adjoint() - CMatrix::identity(m, m)).norm() <= 1e-10);
        let x = u.vertex_state(0).unwrap();
        prop_assert!((evolve(&u, &x, t).norm() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn spectral_decomposition_reconstructs(seed in any::<u64>()) {
        let h = admissible(seed);
        let s = decompose(&h);
        prop_assert!((s.reconstruct() - h.matrix()).norm() <= 1e-10);
        let n = h.n();
        let total = s.spaces().iter().fold(CMatrix::zeros(n, n), |acc, e| acc + &e.projection);
        prop_assert!((total - CMatrix::identity(n, n)).norm() <= 1e-9);
        for a in 0..n {
            let support = s.support(a);
            let weight: f64 = support.iter().map(|&i| s.project_vertex(i, a).iter().map(|z| z.norm_sqr()).sum::<f64>()).sum();
            prop_assert!((weight - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn strong_cospectrality_transfers_to_the_walk(seed in any::<u64>()) {
        let w = instance(seed);
        let h = hermitian_from_weights(&w);
        let s = decompose(&h);
        let u = TransitionMatrix::new(&w);
        let spaces = u.spectrum();
        let n = w.graph().n();
        for a in 0..n {
            for b in 0..n {
                let x = u.vertex_state(a).unwrap();
                let y = u.vertex_state(b).unwrap();
                let parallel_in_walk = spaces.iter().all(|sp| {
                    let fx = apply(&sp.projection, &x.0);
                    let fy = apply(&sp.projection, &y.0);
                    (norm(&fx) - norm(&fy)).abs() <= 1e-8 && (inner(&fy, &fx).norm() - norm(&fx) * norm(&fy)).abs() <= 1e-8
                });
                prop_assert_eq!(strong_cospectrality(&s, a, b).is_ok(), parallel_in_walk, "pair ({}, {})", a, b);
            }
        }
    }

    #[test]
    fn amplitudes_obey_the_chain(seed in any::<u64>(), t in 0u64..100) {
        let w = instance(seed);
        let u = TransitionMatrix::new(&w);
        let spaces = u.spectrum();
        let n = w.graph().n();
        for a in 0..n {
            for b in 0..n {
                let x = u.vertex_state(a).unwrap();
                let y = u.vertex_state(b).unwrap();
                let bounds = amplitude_bounds(&spaces, &x, &y);
                let amp = evolve(&u, &x, t).inner(&y).norm();
                prop_assert!(amp <= bounds.overlap + 1e-9);
                prop_assert!(bounds.overlap <= bounds.product + 1e-9);
                prop_assert!(bounds.product <= 1.0 + 1e-9);
            }
        }
    }

    #[test]
    fn certificates_are_symmetric(seed in any::<u64>()) {
        let h = admissible(seed);
        let s = decompose(&h);
        let n = h.n();
        let opts = PgstOptions { sweep_budget: 0, ..PgstOptions::default() };
        for a in 0..n {
            for b in 0..n {
                match (certify(&s, a, b, 64), certify(&s, b, a, 64)) {
                    (Ok(x), Ok(y)) => {
                        prop_assert_eq!(x.support.len(), y.support.len());
                        if let (Some(rx), Some(ry)) = (&x.root_of_unity, &y.root_of_unity) {
                            prop_assert_eq!(rx.m, ry.m);
                            for (p, q) in rx.residues.iter().zip(&ry.residues) {
                                prop_assert_eq!((p + q) % rx.m, 0);
                            }
                            let covered: usize = rx.partition.values().map(Vec::len).sum();
                            prop_assert_eq!(covered, x.support.len());
                        }
                    }
                    (Err(_), Err(_)) => {}
                    _ => prop_assert!(false, "asymmetric certificate for ({}, {})", a, b),
                }
                let ab = pgst_decide_with(&h, &s, a, b, opts).unwrap();
                let ba = pgst_decide_with(&h, &s, b, a, opts).unwrap();
                prop_assert_eq!(ab.kind(), ba.kind());
            }
        }
    }
}
