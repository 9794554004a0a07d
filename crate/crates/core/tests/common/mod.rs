#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qwst::graph::{tail_incidence, ArcSpace, Graph, WeightMatrix};
use qwst::CMatrix;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Connected graph on `n` vertices: a random spanning tree plus each other
/// pair with probability `density`.
pub fn random_graph(rng: &mut StdRng, n: usize, density: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if !edges.contains(&(a, b)) && rng.gen_bool(density) {
                edges.push((a, b));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Random complex weights with unit squared row sums.
pub fn random_weights(rng: &mut StdRng, g: Graph) -> WeightMatrix {
    let n = g.n();
    let mut w = CMatrix::zeros(n, n);
    for a in 0..n {
        let zs: Vec<Complex64> = g
            .neighbors(a)
            .iter()
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm = zs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for (&b, z) in g.neighbors(a).iter().zip(zs) {
            w[(a, b)] = z / norm;
        }
    }
    WeightMatrix::new(g, w).unwrap()
}

/// The random corpus: `count` connected graphs on at most eight vertices
/// with random normalized complex weights.
pub fn corpus(count: usize, seed: u64) -> Vec<WeightMatrix> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=8);
            let density = rng.gen_range(0.0..0.8);
            let g = random_graph(&mut rng, n, density);
            random_weights(&mut rng, g)
        })
        .collect()
}

/// Dense `U = R(2N*N - I)` assembled from scratch.
pub fn dense_walk(w: &WeightMatrix) -> (CMatrix, CMatrix) {
    let arcs = ArcSpace::new(w.graph());
    let nm = tail_incidence(w, &arcs);
    let m = arcs.len();
    let mut r = CMatrix::zeros(m, m);
    for (i, &(a, b)) in arcs.arcs().iter().enumerate() {
        r[(arcs.index_of(b, a).unwrap(), i)] = c(1.0, 0.0);
    }
    let coin = nm.adjoint() * &nm * c(2.0, 0.0) - CMatrix::identity(m, m);
    (r * coin, nm)
}

/// Eigenvalues and projections of a Hermitian matrix from nalgebra,
/// grouped at `1e-9`.
pub fn hermitian_oracle(h: &CMatrix) -> Vec<(f64, CMatrix)> {
    let e = h.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..h.nrows()).collect();
    order.sort_by(|&i, &j| e.eigenvalues[j].total_cmp(&e.eigenvalues[i]));
    let mut out: Vec<(f64, Vec<usize>)> = Vec::new();
    for i in order {
        let v = e.eigenvalues[i];
        match out.last_mut() {
            Some((last, ix)) if (*last - v).abs() <= 1e-9 => ix.push(i),
            _ => out.push((v, vec![i])),
        }
    }
    out.into_iter()
        .map(|(v, ix)| {
            let cols: Vec<DVector<Complex64>> = ix.iter().map(|&i| e.eigenvectors.column(i).into_owned()).collect();
            let b = DMatrix::from_columns(&cols);
            (v, &b * b.adjoint())
        })
        .collect()
}

/// Eigenphases and projections of a unitary: nalgebra on `(U + U*)/2`, then
/// on the compression of `(U - U*)/2i` to each eigenspace.
pub fn unitary_oracle(u: &CMatrix) -> Vec<(f64, CMatrix)> {
    let re = (u + u.adjoint()) * c(0.5, 0.0);
    let im = (u - u.adjoint()) * c(0.0, -0.5);
    let e = re.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..u.nrows()).collect();
    order.sort_by(|&i, &j| e.eigenvalues[i].total_cmp(&e.eigenvalues[j]));
    let mut groups: Vec<(f64, Vec<usize>)> = Vec::new();
    for i in order {
        let v = e.eigenvalues[i];
        match groups.last_mut() {
            Some((last, ix)) if (*last - v).abs() <= 1e-9 => ix.push(i),
            _ => groups.push((v, vec![i])),
        }
    }
    let mut out = Vec::new();
    for (cos, ix) in groups {
        let cols: Vec<DVector<Complex64>> = ix.iter().map(|&i| e.eigenvectors.column(i).into_owned()).collect();
        let b = DMatrix::from_columns(&cols);
        let inner = (b.adjoint() * &im * &b).symmetric_eigen();
        let mut sub: Vec<(f64, Vec<usize>)> = Vec::new();
        let mut ord: Vec<usize> = (0..ix.len()).collect();
        ord.sort_by(|&i, &j| inner.eigenvalues[i].total_cmp(&inner.eigenvalues[j]));
        for i in ord {
            let v = inner.eigenvalues[i];
            match sub.last_mut() {
                Some((last, jx)) if (*last - v).abs() <= 1e-9 => jx.push(i),
                _ => sub.push((v, vec![i])),
            }
        }
        for (sin, jx) in sub {
            let cols: Vec<DVector<Complex64>> =
                jx.iter().map(|&i| &b * inner.eigenvectors.column(i)).collect();
            let v = DMatrix::from_columns(&cols);
            out.push((sin.atan2(cos), &v * v.adjoint()));
        }
    }
    out
}

pub fn apply(m: &CMatrix, x: &[Complex64]) -> Vec<Complex64> {
    (m * DVector::from_column_slice(x)).iter().copied().collect()
}

pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `N* e_a` read off the dense incidence.
pub fn vertex_state(nm: &CMatrix, a: usize) -> Vec<Complex64> {
    nm.row(a).iter().map(|z| z.conj()).collect()
}

/// `|⟨U^t x, y⟩|` for `t = 0..=t_max` by dense multiplication.
pub fn dense_fidelities(u: &CMatrix, x: &[Complex64], y: &[Complex64], t_max: usize) -> Vec<f64> {
    let mut state = DVector::from_column_slice(x);
    let mut out = Vec::with_capacity(t_max + 1);
    for t in 0..=t_max {
        if t > 0 {
            state = u * state;
        }
        out.push(inner(state.as_slice(), y).norm());
    }
    out
}
