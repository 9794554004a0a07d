//! Graph families with known transfer behaviour, each returned with its
//! distinguished vertex pair and the spectral data the pair should have.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::json;

use crate::format::{FamilyTag, GraphFile};
use crate::graph::{recover_weights_unit, Graph, HermitianAdjacency, WeightMatrix};
use crate::spectral::{certify, decompose, CospectralityCertificate};
use crate::{CMatrix, Error, Result};

const CHECK_TOL: f64 = 1e-9;

/// Spectral data a construction promises for its pair, on the normalized
/// `H` (rows of absolute sum one).
#[derive(Clone, Debug, PartialEq)]
pub struct Expected {
    pub m: u32,
    /// Class `k` → eigenvalues `λ` with `E_λ e_a = e^{2πik/m} E_λ e_b`.
    pub classes: BTreeMap<u32, Vec<f64>>,
    /// All distinct eigenvalues, descending, when known in closed form.
    pub spectrum: Option<Vec<f64>>,
    pub pst_time: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub family: &'static str,
    pub params: BTreeMap<String, serde_json::Value>,
    pub hermitian: HermitianAdjacency,
    pub pair: (usize, usize),
    pub expected: Expected,
}

impl Construction {
    pub fn graph(&self) -> &Graph {
        self.hermitian.graph()
    }

    pub fn weights(&self) -> Result<WeightMatrix> {
        recover_weights_unit(&self.hermitian)
    }

    pub fn graph_file(&self) -> Result<GraphFile> {
        let tag = FamilyTag {
            name: self.family.to_string(),
            params: self.params.clone(),
            pair: Some([self.pair.0, self.pair.1]),
        };
        Ok(GraphFile::from_weights(&self.weights()?, Some(tag)))
    }

    /// Compares the certificate of the pair with the promised classes.
    pub fn check(&self) -> std::result::Result<CospectralityCertificate, String> {
        let s = decompose(&self.hermitian);
        if let Some(spec) = &self.expected.spectrum {
            let got = s.eigenvalues();
            if !close_sets(&got, spec) {
                return Err(format!("spectrum {got:?}, expected {spec:?}"));
            }
        }
        let cert = certify(&s, self.pair.0, self.pair.1, 64).map_err(|e| e.to_string())?;
        let root = cert
            .root_of_unity
            .as_ref()
            .ok_or_else(|| "phases are not roots of unity".to_string())?;
        if root.m != self.expected.m {
            return Err(format!("m = {}, expected {}", root.m, self.expected.m));
        }
        for (k, want) in &self.expected.classes {
            let got = cert.class_eigenvalues(*k);
            if !close_sets(&got, want) {
                return Err(format!("class {k} is {got:?}, expected {want:?}"));
            }
        }
        if root.partition.len() != self.expected.classes.len() {
            return Err(format!("{} classes, expected {}", root.partition.len(), self.expected.classes.len()));
        }
        Ok(cert)
    }
}

fn close_sets(got: &[f64], want: &[f64]) -> bool {
    let mut a = got.to_vec();
    let mut b = want.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    b.dedup_by(|x, y| (*x - *y).abs() <= CHECK_TOL);
    a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= CHECK_TOL)
}

fn classes(entries: impl IntoIterator<Item = (u32, f64)>) -> BTreeMap<u32, Vec<f64>> {
    let mut out: BTreeMap<u32, Vec<f64>> = BTreeMap::new();
    for (k, v) in entries {
        out.entry(k).or_default().push(v);
    }
    out
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn normalized(graph: Graph, h: CMatrix, scale: f64) -> Result<HermitianAdjacency> {
    HermitianAdjacency::new(graph, h / real(scale))
}

/// Complement of `n` disjoint edges, `H = A/(2n-2)`, pair `(0, n)`.
pub fn cocktail_party(n: usize) -> Result<Construction> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("cocktail party needs n >= 2, got {n}")));
    }
    let v = 2 * n;
    let edges = (0..v).flat_map(|a| ((a + 1)..v).filter(move |&b| b != a + n).map(move |b| (a, b)));
    let g = Graph::new(v, edges)?;
    let d = (2 * n - 2) as f64;
    let h = normalized(g.clone(), g.adjacency(), d)?;
    let low = -2.0 / d;
    Ok(Construction {
        family: "cocktail",
        params: BTreeMap::from([("n".into(), json!(n))]),
        hermitian: h,
        pair: (0, n),
        expected: Expected {
            m: 2,
            classes: classes([(0, 1.0), (0, low), (1, 0.0)]),
            spectrum: Some(vec![1.0, 0.0, low]),
            pst_time: match n {
                2 => Some(2),
                3 => Some(6),
                _ => None,
            },
        },
    })
}

/// `Q_d` with `H = A/d`, pair `(0, 2^d - 1)`.
pub fn hypercube(d: u32) -> Result<Construction> {
    if !(1..=12).contains(&d) {
        return Err(Error::InvalidParameter(format!("hypercube dimension must be in 1..=12, got {d}")));
    }
    let v = 1usize << d;
    let edges = (0..v).flat_map(|x| (0..d).map(move |k| (x, x ^ (1 << k))).filter(|&(x, y)| x < y));
    let g = Graph::new(v, edges)?;
    let h = normalized(g.clone(), g.adjacency(), d as f64)?;
    let eig = |r: u32| (d as f64 - 2.0 * r as f64) / d as f64;
    Ok(Construction {
        family: "hypercube",
        params: BTreeMap::from([("d".into(), json!(d))]),
        hermitian: h,
        pair: (0, v - 1),
        expected: Expected {
            m: 2,
            classes: classes((0..=d).map(|r| (r % 2, eig(r)))),
            spectrum: Some((0..=d).map(eig).collect()),
            pst_time: match d {
                1 => Some(1),
                2 => Some(2),
                _ => None,
            },
        },
    })
}

/// Seidel matrix of `K_{2n}` for the pairing `{2i, 2i+1}`: entries `-1`
/// inside pairs and `+1` elsewhere, scaled by `1/(2n-1)`. Pair `(0, 1)`.
pub fn seidel_complete(n: usize) -> Result<Construction> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("seidel family needs n >= 2, got {n}")));
    }
    let v = 2 * n;
    let edges = (0..v).flat_map(|a| ((a + 1)..v).map(move |b| (a, b)));
    let g = Graph::new(v, edges)?;
    let s = CMatrix::from_fn(v, v, |a, b| match (a == b, a / 2 == b / 2) {
        (true, _) => real(0.0),
        (false, true) => real(-1.0),
        (false, false) => real(1.0),
    });
    let d = (2 * n - 1) as f64;
    let h = normalized(g, s, d)?;
    let (hi, mid, lo) = ((2 * n - 3) as f64 / d, 1.0 / d, -3.0 / d);
    Ok(Construction {
        family: "seidel",
        params: BTreeMap::from([("n".into(), json!(n))]),
        hermitian: h,
        pair: (0, 1),
        expected: Expected {
            m: 2,
            classes: classes([(0, hi), (0, lo), (1, mid)]),
            spectrum: Some(vec![hi, mid, lo]),
            pst_time: None,
        },
    })
}

/// The line graph of `Q_3`: vertices are the 12 edges of the cube in
/// lexicographic order, adjacent when they share an endpoint.
pub fn line_graph_of_cube() -> Vec<(usize, usize)> {
    let cube: Vec<(usize, usize)> = (0..8usize)
        .flat_map(|u| (0..3).map(move |k| (u, u ^ (1 << k))))
        .filter(|&(u, v)| u < v)
        .collect();
    let mut edges = Vec::new();
    for i in 0..cube.len() {
        for j in (i + 1)..cube.len() {
            let (a, b) = cube[i];
            let (c, d) = cube[j];
            if a == c || a == d || b == c || b == d {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// An orientation of `L(Q_3)` given by its arcs `(tail, head)`, in which
/// vertices 1 and 10 are 2-strongly cospectral relative to `iS` with
/// `Λ^0 = {±2}` and `Λ^1 = {0, ±√12}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationFixture {
    pub arcs: Vec<(usize, usize)>,
    pub trials: usize,
}

impl OrientationFixture {
    /// The skew matrix `S` with `S_ab = 1` for an arc `a → b`.
    pub fn skew(&self) -> CMatrix {
        let mut s = CMatrix::zeros(12, 12);
        for &(a, b) in &self.arcs {
            s[(a, b)] = real(1.0);
            s[(b, a)] = real(-1.0);
        }
        s
    }

    /// `iS`.
    pub fn hermitian(&self) -> CMatrix {
        self.skew() * Complex64::new(0.0, 1.0)
    }
}

pub const FIXTURE_SEED: u64 = 2024;
pub const FIXTURE_PAIR: (usize, usize) = (1, 10);

const FROZEN_ARCS: [(usize, usize); 24] = [
    (0, 1), (2, 0), (3, 0), (4, 0), (1, 2), (1, 7), (8, 1), (2, 5),
    (2, 6), (3, 4), (3, 5), (3, 10), (7, 4), (4, 9), (6, 5), (10, 5),
    (6, 8), (11, 6), (7, 8), (7, 9), (11, 8), (10, 9), (11, 9), (11, 10),
];

/// The orientation found by [`find_orientation_fixture`] with the default
/// seed, stored verbatim.
pub fn frozen_orientation_fixture() -> OrientationFixture {
    OrientationFixture {
        arcs: FROZEN_ARCS.to_vec(),
        trials: 0,
    }
}

/// Supports of the fixture pair relative to `iS`, as unscaled eigenvalues.
pub fn fixture_classes() -> BTreeMap<u32, Vec<f64>> {
    let r = 12f64.sqrt();
    classes([(0, 2.0), (0, -2.0), (1, 0.0), (1, r), (1, -r)])
}

fn fixture_pair(h: &CMatrix) -> Option<(usize, usize, bool)> {
    let s = crate::spectral::SpectralData::from_matrix(h);
    let want = fixture_classes();
    for a in 0..12 {
        for b in (a + 1)..12 {
            let Ok(cert) = certify(&s, a, b, 2) else { continue };
            if cert.root_of_unity.as_ref().map(|r| r.m) != Some(2) {
                continue;
            }
            let (c0, c1) = (cert.class_eigenvalues(0), cert.class_eigenvalues(1));
            if close_sets(&c0, &want[&0]) && close_sets(&c1, &want[&1]) {
                return Some((a, b, false));
            }
            if close_sets(&c1, &want[&0]) && close_sets(&c0, &want[&1]) {
                return Some((a, b, true));
            }
        }
    }
    None
}

/// Random search over orientations of `L(Q_3)` for a 2-strongly
/// cospectral pair with the fixture's supports. A pair found with its
/// classes exchanged is repaired by reversing every arc at `b`. The result
/// is relabelled so that the pair is `(1, 10)`.
pub fn find_orientation_fixture(seed: u64, max_trials: usize) -> Result<OrientationFixture> {
    let edges = line_graph_of_cube();
    let mut rng = StdRng::seed_from_u64(seed);
    for trial in 1..=max_trials {
        let mut arcs: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(a, b)| if rng.gen::<bool>() { (a, b) } else { (b, a) })
            .collect();
        let fixture = OrientationFixture {
            arcs: arcs.clone(),
            trials: trial,
        };
        let Some((a, b, swapped)) = fixture_pair(&fixture.hermitian()) else { continue };
        if swapped {
            for arc in &mut arcs {
                if arc.0 == b || arc.1 == b {
                    *arc = (arc.1, arc.0);
                }
            }
        }
        let mut label = vec![usize::MAX; 12];
        label[a] = FIXTURE_PAIR.0;
        label[b] = FIXTURE_PAIR.1;
        let mut free = (0..12).filter(|&x| x != FIXTURE_PAIR.0 && x != FIXTURE_PAIR.1);
        for l in label.iter_mut().filter(|l| **l == usize::MAX) {
            *l = free.next().expect("twelve labels");
        }
        let mut arcs: Vec<(usize, usize)> = arcs.iter().map(|&(x, y)| (label[x], label[y])).collect();
        arcs.sort_by_key(|&(x, y)| (x.min(y), x.max(y)));
        return Ok(OrientationFixture { arcs, trials: trial });
    }
    Err(Error::FixtureSearchFailed(max_trials))
}

/// `H_4 = iS` from the frozen fixture, then
/// `H_d = [[H_{d-1}, iI], [-iI, -H_{d-1}]]`. Unnormalized.
pub fn cyclic_cover_matrix(d: u32) -> Result<CMatrix> {
    if !(4..=12).contains(&d) {
        return Err(Error::InvalidParameter(format!("cyclic cover degree must be in 4..=12, got {d}")));
    }
    let mut h = frozen_orientation_fixture().hermitian();
    let i = Complex64::new(0.0, 1.0);
    for _ in 4..d {
        let n = h.nrows();
        let mut next = CMatrix::zeros(2 * n, 2 * n);
        next.view_mut((0, 0), (n, n)).copy_from(&h);
        next.view_mut((n, n), (n, n)).copy_from(&(-&h));
        for k in 0..n {
            next[(k, n + k)] = i;
            next[(n + k, k)] = -i;
        }
        h = next;
    }
    Ok(h)
}

/// The cover family `H_d / d`, pair `(1, 10)`, with
/// `Λ^0 = {±√d}/d` and `Λ^1 = {±√(d-4), ±√(d+8)}/d`.
pub fn cyclic_cover_family(d: u32) -> Result<Construction> {
    let h = cyclic_cover_matrix(d)?;
    let g = Graph::from_support(&h, 1e-12)?;
    let h = normalized(g, h, d as f64)?;
    let df = d as f64;
    let r = |x: f64| x.sqrt() / df;
    Ok(Construction {
        family: "cyclic",
        params: BTreeMap::from([("d".into(), json!(d))]),
        hermitian: h,
        pair: FIXTURE_PAIR,
        expected: Expected {
            m: 2,
            classes: classes([
                (0, r(df)),
                (0, -r(df)),
                (1, r(df - 4.0)),
                (1, -r(df - 4.0)),
                (1, r(df + 8.0)),
                (1, -r(df + 8.0)),
            ]),
            spectrum: None,
            pst_time: None,
        },
    })
}

/// Deterministic fractions for [`hadamard_bipartite`]: for odd `q = 3, 5,
/// 7, …` in turn, the odd `p < q` coprime to `q` minimizing
/// `|cos(pπ/q)|` is taken when its cosine uses less than half of what is left
/// of the budget `1 - Σ|cos|`, or, for the final fraction, any of it.
pub fn hadamard_fractions(s: u32) -> Vec<(i64, i64)> {
    let n = (1usize << (s - 1)) - 1;
    let mut out = Vec::with_capacity(n);
    let mut sum = 0.0;
    let mut q = 3i64;
    while out.len() < n {
        let best = (1..q)
            .step_by(2)
            .filter(|p| p.gcd(&q) == 1)
            .min_by(|&x, &y| cos_frac(x, q).abs().total_cmp(&cos_frac(y, q).abs()));
        if let Some(p) = best {
            let c = cos_frac(p, q).abs();
            let left = 1.0 - sum;
            if c < left / 2.0 || (out.len() + 1 == n && c < left) {
                sum += c;
                out.push((p, q));
            }
        }
        q += 2;
    }
    out
}

fn cos_frac(p: i64, q: i64) -> f64 {
    (p as f64 * PI / q as f64).cos()
}

/// `H = P D P^T / 2^s` on `K_{n+1,n+1}` with `P` the `2^s × 2^s` Sylvester
/// Hadamard matrix and `D = diag(1, -1, c_1, -c_1, …)`,
/// `c_j = cos(p_j π / q_j)`, `n = 2^{s-1} - 1`. Pair `(0, 2^s - 1)`.
pub fn hadamard_bipartite(s: u32, fractions: &[(i64, i64)]) -> Result<Construction> {
    if !(1..=6).contains(&s) {
        return Err(Error::InvalidParameter(format!("s must be in 1..=6, got {s}")));
    }
    let n = (1usize << (s - 1)) - 1;
    if fractions.len() != n {
        return Err(Error::InvalidParameter(format!(
            "s = {s} needs {n} fractions, got {}",
            fractions.len()
        )));
    }
    for &(p, q) in fractions {
        if p % 2 == 0 || q % 2 == 0 {
            return Err(Error::InvalidParameter(format!("{p}/{q}: numerator and denominator must be odd")));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::InvalidParameter(format!("{p}/{q} is not in lowest terms")));
        }
    }
    let total: f64 = fractions.iter().map(|&(p, q)| cos_frac(p, q).abs()).sum();
    if total >= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "sum of |cos(p/q π)| is {total}, must be below 1"
        )));
    }
    let size = 1usize << s;
    let mut d = vec![1.0, -1.0];
    for &(p, q) in fractions {
        let c = cos_frac(p, q);
        d.extend([c, -c]);
    }
    let sylvester = |x: usize, k: usize| if (x & k).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
    let h = CMatrix::from_fn(size, size, |x, y| {
        let v: f64 = (0..size).map(|k| sylvester(x, k) * d[k] * sylvester(y, k)).sum();
        real(if v.abs() < 1e-12 { 0.0 } else { v })
    });
    for x in 0..size {
        for y in 0..size {
            let v = h[(x, y)].re;
            let adjacent = (x ^ y) & 1 == 1;
            if adjacent != (v != 0.0) || v < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "entry ({x}, {y}) = {v} does not give positive weights on K_{{{0},{0}}}",
                    n + 1
                )));
            }
        }
    }
    let g = Graph::from_support(&h, 0.0)?;
    let hn = normalized(g, h, size as f64)?;
    let partner = size - 1;
    let pst_time = (s <= 2).then(|| fractions.iter().map(|&(_, q)| q as u64).product());
    Ok(Construction {
        family: "hadamard",
        params: BTreeMap::from([
            ("s".into(), json!(s)),
            ("fractions".into(), json!(fractions.iter().map(|&(p, q)| [p, q]).collect::<Vec<_>>())),
        ]),
        hermitian: hn,
        pair: (0, partner),
        expected: Expected {
            m: 2,
            classes: classes(
                d.iter()
                    .enumerate()
                    .map(|(k, &v)| (u32::from(sylvester(partner, k) < 0.0), v)),
            ),
            spectrum: Some(d.clone()),
            pst_time,
        },
    })
}

/// `K_4` with the `m`-th root of unity `α`:
/// `[[0, 2ᾱ, p, p], [2α, 0, pα, pα], [p, pᾱ, 0, 2], [p, pᾱ, 2, 0]]`,
/// scaled by `1/(2p+2)`. Pair `(0, 1)`, with `Λ^1 = {2+2p, 2-2p}` and
/// `Λ^{m/2+1} = {-2}` before scaling.
pub fn k4_family(m: u32, p: u64) -> Result<Construction> {
    if m < 2 || m % 2 != 0 {
        return Err(Error::InvalidParameter(format!("m must be even and at least 2, got {m}")));
    }
    if p <= 3 || !(2..p).take_while(|k| k * k <= p).all(|k| p % k != 0) {
        return Err(Error::InvalidParameter(format!("p must be a prime above 3, got {p}")));
    }
    let a = Complex64::from_polar(1.0, 2.0 * PI / m as f64);
    let pf = p as f64;
    let z = real(0.0);
    let rows = [
        [z, a.conj() * 2.0, real(pf), real(pf)],
        [a * 2.0, z, a * pf, a * pf],
        [real(pf), a.conj() * pf, z, real(2.0)],
        [real(pf), a.conj() * pf, real(2.0), z],
    ];
    let h = CMatrix::from_fn(4, 4, |r, c| rows[r][c]);
    let g = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])?;
    let scale = 2.0 * pf + 2.0;
    let hn = normalized(g, h, scale)?;
    let (hi, mid, lo) = (1.0, (2.0 - 2.0 * pf) / scale, -2.0 / scale);
    let other = (m / 2 + 1) % m;
    Ok(Construction {
        family: "k4",
        params: BTreeMap::from([("m".into(), json!(m)), ("p".into(), json!(p))]),
        hermitian: hn,
        pair: (0, 1),
        expected: Expected {
            m,
            classes: classes([(1 % m, hi), (1 % m, mid), (other, lo)]),
            spectrum: Some(vec![hi, lo, mid]),
            pst_time: None,
        },
    })
}

/// The eigenvector matrix `P` and eigenvalues `D` displayed for the `K_4`
/// family, unscaled.
pub fn k4_decomposition(m: u32, p: u64) -> (CMatrix, Vec<f64>) {
    let a = Complex64::from_polar(1.0, 2.0 * PI / m as f64);
    let r2 = 2f64.sqrt();
    let z = real(0.0);
    let rows = [
        [real(1.0), real(1.0), real(r2), z],
        [a, a, -a * r2, z],
        [real(1.0), real(-1.0), z, real(r2)],
        [real(1.0), real(-1.0), z, real(-r2)],
    ];
    let pm = CMatrix::from_fn(4, 4, |r, c| rows[r][c] * 0.5);
    let pf = p as f64;
    (pm, vec![2.0 + 2.0 * pf, 2.0 - 2.0 * pf, -2.0, -2.0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_match_their_promises() {
        let all = [
            cocktail_party(2),
            cocktail_party(3),
            cocktail_party(6),
            hypercube(1),
            hypercube(3),
            hypercube(5),
            seidel_complete(3),
            seidel_complete(4),
            cyclic_cover_family(4),
            cyclic_cover_family(5),
            hadamard_bipartite(1, &[]),
            hadamard_bipartite(2, &hadamard_fractions(2)),
            hadamard_bipartite(3, &hadamard_fractions(3)),
            k4_family(2, 5),
            k4_family(4, 5),
            k4_family(6, 7),
        ];
        for c in all {
            let c = c.unwrap();
            if let Err(e) = c.check() {
                panic!("{} {:?}: {e}", c.family, c.params);
            }
            let w = c.weights().unwrap();
            let back = crate::graph::hermitian_from_weights(&w);
            assert!((back.matrix() - c.hermitian.matrix()).norm() < 1e-12);
        }
    }

    #[test]
    fn cocktail_two_is_the_square() {
        let c = cocktail_party(2).unwrap();
        let q = hypercube(2).unwrap();
        assert_eq!(c.graph().edges(), &[(0, 1), (0, 3), (1, 2), (2, 3)]);
        // 0-1-3-2-0 versus 0-1-2-3-0: both 4-cycles with the pair opposite
        assert_eq!(q.graph().edges().len(), 4);
        assert_eq!(c.pair, (0, 2));
        assert_eq!(q.pair, (0, 3));
        assert!(q.graph().edges().iter().all(|&(a, b)| q.graph().degree(a) == 2 && q.graph().degree(b) == 2));
    }

    #[test]
    fn parameter_errors() {
        assert!(cocktail_party(1).is_err());
        assert!(hypercube(0).is_err());
        assert!(seidel_complete(1).is_err());
        assert!(cyclic_cover_family(3).is_err());
        assert!(k4_family(3, 5).is_err());
        assert!(k4_family(4, 9).is_err());
        assert!(k4_family(4, 3).is_err());
        assert!(hadamard_bipartite(2, &[]).is_err());
        assert!(hadamard_bipartite(2, &[(2, 3)]).is_err());
        assert!(hadamard_bipartite(2, &[(3, 9)]).is_err());
        assert!(hadamard_bipartite(3, &[(1, 3), (1, 5), (5, 9)]).is_err());
    }

    #[test]
    fn fraction_chooser() {
        assert_eq!(hadamard_fractions(1), vec![]);
        assert_eq!(hadamard_fractions(2), vec![(1, 3)]);
        assert_eq!(hadamard_fractions(3), vec![(3, 5), (3, 7), (5, 9)]);
        let f = hadamard_fractions(4);
        assert_eq!(f.len(), 7);
        assert!(f.iter().map(|&(p, q)| cos_frac(p, q).abs()).sum::<f64>() < 1.0);
    }

    #[test]
    fn frozen_fixture_is_reproduced_by_the_search() {
        let found = find_orientation_fixture(FIXTURE_SEED, 100_000).unwrap();
        assert_eq!(found.arcs, frozen_orientation_fixture().arcs);
        let s = frozen_orientation_fixture().skew();
        assert!((s.transpose() + &s).norm() == 0.0);
        assert!(s.iter().all(|z| [0.0, 1.0, -1.0].contains(&z.re) && z.im == 0.0));
        assert_eq!(fixture_pair(&frozen_orientation_fixture().hermitian()).map(|p| p.2), Some(false));
    }

    #[test]
    fn k4_display_is_its_decomposition() {
        for m in [2, 4, 6] {
            let (p, d) = k4_decomposition(m, 5);
            let dm = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(4, d.iter().map(|&x| real(x))));
            let c = k4_family(m, 5).unwrap();
            let h = c.hermitian.matrix() * real(12.0);
            assert!((&p * dm * p.adjoint() - h).norm() < 1e-9);
            assert!((&p * p.adjoint() - CMatrix::identity(4, 4)).norm() < 1e-12);
        }
    }
}
