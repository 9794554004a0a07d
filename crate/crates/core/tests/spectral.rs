mod common;

use common::*;
use qwst::constructions::{cocktail_party, k4_family};
use qwst::graph::{hermitian_from_weights, Graph, HermitianAdjacency, WeightMatrix};
use qwst::spectral::{certify, decompose, eigenvalue_support, strong_cospectrality, NotCospectral};
use qwst::CMatrix;

fn close(x: &[f64], y: &[f64]) -> bool {
    x.len() == y.len() && x.iter().zip(y).all(|(p, q)| (p - q).abs() < 1e-9)
}

fn cocktail_three() -> HermitianAdjacency {
    cocktail_party(3).unwrap().hermitian
}

#[test]
fn cocktail_eigenstructure() {
    let h = cocktail_three();
    let g = h.graph().clone();
    assert!((h.matrix() - g.adjacency() / c(4.0, 0.0)).norm() < 1e-15);
    let w = WeightMatrix::new(g.clone(), g.adjacency() / c(2.0, 0.0)).unwrap();
    assert!((hermitian_from_weights(&w).matrix() - h.matrix()).norm() < 1e-15);

    let s = decompose(&h);
    assert!(close(&s.eigenvalues(), &[1.0, 0.0, -0.5]));
    let mult: Vec<usize> = s.spaces().iter().map(|e| e.multiplicity).collect();
    assert_eq!(mult, vec![1, 3, 2]);
    assert!(close(&eigenvalue_support(&s, 0), &[1.0, 0.0, -0.5]));

    let oracle = hermitian_oracle(h.matrix());
    for (sp, (l, e)) in s.spaces().iter().zip(&oracle) {
        assert!((sp.value - l).abs() < 1e-12);
        assert!((&sp.projection - e).norm() < 1e-10);
    }
}

#[test]
fn single_edge_support() {
    let mut m = CMatrix::zeros(2, 2);
    m[(0, 1)] = c(1.0, 0.0);
    m[(1, 0)] = c(1.0, 0.0);
    let s = decompose(&HermitianAdjacency::from_matrix(m).unwrap());
    assert!(close(&s.eigenvalues(), &[1.0, -1.0]));
    assert!(close(&eigenvalue_support(&s, 0), &[1.0, -1.0]));
    assert!(close(&eigenvalue_support(&s, 1), &[1.0, -1.0]));
}

#[test]
fn support_excludes_invisible_eigenvalues() {
    let path = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
    let h = HermitianAdjacency::new(path.clone(), path.adjacency()).unwrap();
    let s = decompose(&h);
    assert_eq!(s.eigenvalues().len(), 3);
    assert!(close(&eigenvalue_support(&s, 1), &[2f64.sqrt(), -(2f64.sqrt())]));
    assert!(close(&eigenvalue_support(&s, 0), &[2f64.sqrt(), 0.0, -(2f64.sqrt())]));
}

#[test]
fn reconstruction_on_random_hermitian_matrices() {
    for w in corpus(50, 21) {
        let h = hermitian_from_weights(&w);
        let s = decompose(&h);
        assert!((s.reconstruct() - h.matrix()).norm() <= 1e-10);
        let oracle: Vec<f64> = hermitian_oracle(h.matrix()).into_iter().map(|(l, _)| l).collect();
        assert!(close(&s.eigenvalues(), &oracle));
    }
}

#[test]
fn cocktail_antipodes() {
    for n in 3..=7 {
        let s = decompose(&cocktail_party(n).unwrap().hermitian);
        let cert = certify(&s, 0, n, 64).unwrap();
        let phases: Vec<f64> = cert.support.iter().map(|p| p.phase.re).collect();
        assert!(close(&phases, &[1.0, -1.0, 1.0]));
        let root = cert.root_of_unity.as_ref().unwrap();
        assert_eq!(root.m, 2);
        let mut zero = cert.class_eigenvalues(0);
        zero.sort_by(|a, b| b.total_cmp(a));
        assert!(close(&zero, &[1.0, -1.0 / (n as f64 - 1.0)]));
        assert!(close(&cert.class_eigenvalues(1), &[0.0]));
    }
}

#[test]
fn complete_graph_has_no_strongly_cospectral_pair() {
    let k4 = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    let h = HermitianAdjacency::from_matrix(k4.adjacency() / c(3.0, 0.0)).unwrap();
    let s = decompose(&h);
    for a in 0..4 {
        for b in 0..4 {
            if a != b {
                let err = strong_cospectrality(&s, a, b).unwrap_err();
                assert!(matches!(err, NotCospectral::NotParallel { .. }), "{err:?}");
            }
        }
    }
    let same = certify(&s, 2, 2, 64).unwrap();
    assert!(same.support.iter().all(|p| (p.phase - c(1.0, 0.0)).norm() < 1e-12));
    assert_eq!(same.root_of_unity.unwrap().m, 1);
}

#[test]
fn k4_family_classes() {
    for m in [2u32, 4, 6, 8] {
        let fam = k4_family(m, 5).unwrap();
        let s = decompose(&fam.hermitian);
        let cert = certify(&s, 0, 1, 64).unwrap();
        let root = cert.root_of_unity.as_ref().unwrap();
        assert_eq!(root.m, m);
        let mut first = cert.class_eigenvalues(1 % m);
        first.sort_by(|a, b| b.total_cmp(a));
        assert!(close(&first, &[1.0, -8.0 / 12.0]));
        assert!(close(&cert.class_eigenvalues((m / 2 + 1) % m), &[-2.0 / 12.0]));
    }
}

#[test]
fn swapping_the_pair_conjugates_the_phases() {
    for w in corpus(60, 33) {
        let s = decompose(&hermitian_from_weights(&w));
        let n = w.graph().n();
        for a in 0..n {
            for b in 0..n {
                match (strong_cospectrality(&s, a, b), strong_cospectrality(&s, b, a)) {
                    (Ok(x), Ok(y)) => {
                        for (p, q) in x.support.iter().zip(&y.support) {
                            assert!((p.phase - q.phase.conj()).norm() < 1e-9);
                        }
                    }
                    (Err(_), Err(_)) => {}
                    other => panic!("asymmetric verdict {other:?}"),
                }
            }
        }
    }
}
