//! Dense Hermitian diagonalization by cyclic complex Jacobi rotations, and
//! the spectral decomposition of a unitary built on top of it.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::CMatrix;

/// Stop once the off-diagonal Frobenius mass falls below this fraction of
/// the matrix norm.
pub const JACOBI_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// Eigenvalues in descending order with the matching orthonormal
/// eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct Eigh {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

fn off_diagonal_mass(a: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for j in 0..n {
        for i in 0..n {
            if i != j {
                s += a[j * n + i].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Diagonalizes a Hermitian matrix. The input is symmetrized as
/// `(M + M*)/2` first.
pub fn eigh(m: &CMatrix) -> Eigh {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "eigh needs a square matrix");
    // column-major working copy, symmetrized
    let mut a = vec![Complex64::new(0.0, 0.0); n * n];
    for j in 0..n {
        for i in 0..n {
            a[j * n + i] = if i == j {
                Complex64::new(m[(i, i)].re, 0.0)
            } else {
                (m[(i, j)] + m[(j, i)].conj()) * 0.5
            };
        }
    }
    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
    }
    let scale = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_mass(&a, n) <= JACOBI_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[q * n + p];
                let mag = apq.norm();
                if mag < 1e-300 {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let phase = apq / mag;
                let theta = (aqq - app) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // J = diag-phase then real rotation on (p, q):
                // J_pp = c, J_pq = s, J_qp = -s·conj(phase), J_qq = c·conj(phase)
                let jpp = Complex64::new(c, 0.0);
                let jpq = Complex64::new(s, 0.0);
                let jqp = -phase.conj() * s;
                let jqq = phase.conj() * c;
                // A ← A J (columns p, q)
                for k in 0..n {
                    let akp = a[p * n + k];
                    let akq = a[q * n + k];
                    a[p * n + k] = akp * jpp + akq * jqp;
                    a[q * n + k] = akp * jpq + akq * jqq;
                }
                // A ← J* A (rows p, q)
                for k in 0..n {
                    let apk = a[k * n + p];
                    let aqk = a[k * n + q];
                    a[k * n + p] = jpp.conj() * apk + jqp.conj() * aqk;
                    a[k * n + q] = jpq.conj() * apk + jqq.conj() * aqk;
                }
                a[q * n + p] = Complex64::new(0.0, 0.0);
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[p * n + p].im = 0.0;
                a[q * n + q].im = 0.0;
                for k in 0..n {
                    let vkp = v[p * n + k];
                    let vkq = v[q * n + k];
                    v[p * n + k] = vkp * jpp + vkq * jqp;
                    v[q * n + k] = vkp * jpq + vkq * jqq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].re.total_cmp(&a[i * n + i].re));
    let values = order.iter().map(|&i| a[i * n + i].re).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| v[order[c] * n + r]);
    Eigh { values, vectors }
}

/// Splits sorted (descending) values into runs whose consecutive gaps are at
/// most `tol`. Returns index ranges.
pub fn group_sorted(values: &[f64], tol: f64) -> Vec<std::ops::Range<usize>> {
    let mut groups = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || (values[i - 1] - values[i]).abs() > tol {
            if i > start {
                groups.push(start..i);
            }
            start = i;
        }
    }
    groups
}

/// Orthogonal projection onto the span of the given columns of `vectors`.
pub fn projection(vectors: &CMatrix, cols: std::ops::Range<usize>) -> CMatrix {
    let block = vectors.columns(cols.start, cols.len());
    &block * block.adjoint()
}

/// One eigenvalue `e^{iθ}` of a unitary with its eigenprojection.
#[derive(Clone, Debug)]
pub struct UnitaryEigenspace {
    pub theta: f64,
    pub projection: CMatrix,
}

/// Spectral decomposition of a unitary (normal) matrix, obtained by
/// diagonalizing its Hermitian part `(U + U*)/2` and then the skew part
/// `(U - U*)/2i` inside each eigenspace of the former. Phases lie in
/// `(-π, π]`, sorted ascending.
pub fn unitary_spectrum(u: &CMatrix, tol: f64) -> Vec<UnitaryEigenspace> {
    let ua = u.adjoint();
    let re_part = (u + &ua) * Complex64::new(0.5, 0.0);
    let im_part = (u - &ua) * Complex64::new(0.0, -0.5);
    let outer = eigh(&re_part);
    let mut spaces = Vec::new();
    for g in group_sorted(&outer.values, tol) {
        let cos = g.clone().map(|i| outer.values[i]).sum::<f64>() / g.len() as f64;
        let basis = outer.vectors.columns(g.start, g.len()).into_owned();
        let restricted = basis.adjoint() * &im_part * &basis;
        let inner = eigh(&restricted);
        for h in group_sorted(&inner.values, tol) {
            let sin = h.clone().map(|i| inner.values[i]).sum::<f64>() / h.len() as f64;
            let vecs = &basis * inner.vectors.columns(h.start, h.len());
            let projection = &vecs * vecs.adjoint();
            spaces.push(UnitaryEigenspace {
                theta: sin.atan2(cos),
                projection,
            });
        }
    }
    spaces.sort_by(|x, y| x.theta.total_cmp(&y.theta));
    spaces
}

/// `⟨x, y⟩ = x* y`.
pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
