//! Graphs, arc spaces, normalized complex weight matrices and the Hermitian
//! adjacency matrix `H = W ∘ W*` they induce.
//!
//! All matrices over arcs use the arc order produced by [`ArcSpace::new`]:
//! lexicographic by `(tail, head)`.

use std::collections::{BTreeMap, HashMap};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::CMatrix;

/// Tolerance on `Σ_b |w_ab|² = 1`.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// A simple connected undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting loops, repeated edges, out-of-range
    /// endpoints and disconnected inputs. Edges are stored as `(min, max)`
    /// pairs in sorted order.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewVertices(n));
        }
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::VertexOutOfRange(a, b, n));
            }
            if a == b {
                return Err(Error::Loop(a));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        for w in list.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &list {
            adj[a].push(b);
            adj[b].push(a);
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        let g = Self {
            n,
            edges: list,
            adj,
        };
        if let Some(v) = g.first_unreachable() {
            return Err(Error::Disconnected(v));
        }
        Ok(g)
    }

    /// Graph whose edges are the off-diagonal support of `m`.
    pub fn from_support(m: &CMatrix, tol: f64) -> Result<Self> {
        let n = m.nrows();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                if m[(a, b)].norm() > tol || m[(b, a)].norm() > tol {
                    edges.push((a, b));
                }
            }
        }
        Self::new(n, edges)
    }

    fn first_unreachable(&self) -> Option<usize> {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.iter().position(|s| !s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, a: usize) -> &[usize] {
        &self.adj[a]
    }

    pub fn degree(&self, a: usize) -> usize {
        self.adj[a].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && self.adj[a].binary_search(&b).is_ok()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                n: self.n,
            })
        }
    }

    /// 0/1 adjacency matrix.
    pub fn adjacency(&self) -> CMatrix {
        let mut a = CMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a[(u, v)] = Complex64::new(1.0, 0.0);
            a[(v, u)] = Complex64::new(1.0, 0.0);
        }
        a
    }
}

/// The arcs of a graph, two per edge, with the reversal permutation.
#[derive(Clone, Debug)]
pub struct ArcSpace {
    arcs: Vec<(usize, usize)>,
    rev: Vec<usize>,
    index: HashMap<(usize, usize), usize>,
    // arcs with tail a occupy offsets[a]..offsets[a + 1]
    offsets: Vec<usize>,
}

impl ArcSpace {
    pub fn new(g: &Graph) -> Self {
        let mut arcs = Vec::with_capacity(2 * g.edges().len());
        let mut offsets = Vec::with_capacity(g.n() + 1);
        for a in 0..g.n() {
            offsets.push(arcs.len());
            for &b in g.neighbors(a) {
                arcs.push((a, b));
            }
        }
        offsets.push(arcs.len());
        let index: HashMap<_, _> = arcs.iter().enumerate().map(|(i, &arc)| (arc, i)).collect();
        let rev = arcs.iter().map(|&(a, b)| index[&(b, a)]).collect();
        Self {
            arcs,
            rev,
            index,
            offsets,
        }
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn rev(&self) -> &[usize] {
        &self.rev
    }

    pub fn index_of(&self, tail: usize, head: usize) -> Option<usize> {
        self.index.get(&(tail, head)).copied()
    }

    /// Index range of the arcs leaving `a`.
    pub fn outgoing(&self, a: usize) -> std::ops::Range<usize> {
        self.offsets[a]..self.offsets[a + 1]
    }

    /// Permutation matrix `R` sending `(a,b)` to `(b,a)`.
    pub fn reversal_matrix(&self) -> CMatrix {
        let m = self.len();
        let mut r = CMatrix::zeros(m, m);
        for (i, &j) in self.rev.iter().enumerate() {
            r[(j, i)] = Complex64::new(1.0, 0.0);
        }
        r
    }
}

/// Complex adjacency weights `W` of a graph, normalized so that
/// `W ∘ conj(W)` is row-stochastic.
#[derive(Clone, Debug)]
pub struct WeightMatrix {
    graph: Graph,
    w: CMatrix,
}

impl WeightMatrix {
    pub fn new(graph: Graph, w: CMatrix) -> Result<Self> {
        let n = graph.n();
        if w.nrows() != n || w.ncols() != n {
            return Err(Error::Dimension {
                expected: n,
                rows: w.nrows(),
                cols: w.ncols(),
            });
        }
        for a in 0..n {
            for b in 0..n {
                let adjacent = graph.has_edge(a, b);
                let nonzero = w[(a, b)] != Complex64::new(0.0, 0.0);
                if nonzero && !adjacent {
                    return Err(Error::OffSupport(a, b));
                }
                if adjacent && !nonzero {
                    return Err(Error::MissingEntry(a, b));
                }
            }
            let sum: f64 = graph.neighbors(a).iter().map(|&b| w[(a, b)].norm_sqr()).sum();
            if (sum - 1.0).abs() > NORMALIZATION_TOL {
                return Err(Error::NotNormalized { vertex: a, sum });
            }
        }
        Ok(Self { graph, w })
    }

    /// Weights given per ordered pair; missing pairs are zero.
    pub fn from_entries(
        graph: Graph,
        entries: impl IntoIterator<Item = ((usize, usize), Complex64)>,
    ) -> Result<Self> {
        let n = graph.n();
        let mut w = CMatrix::zeros(n, n);
        for ((a, b), z) in entries {
            if a >= n || b >= n {
                return Err(Error::VertexOutOfRange(a, b, n));
            }
            w[(a, b)] = z;
        }
        Self::new(graph, w)
    }

    /// `w_ab = 1/sqrt(deg a)`; then `h_ab = 1/sqrt(deg a · deg b)`.
    pub fn uniform(graph: Graph) -> Self {
        let n = graph.n();
        let mut w = CMatrix::zeros(n, n);
        for a in 0..n {
            let x = 1.0 / (graph.degree(a) as f64).sqrt();
            for &b in graph.neighbors(a) {
                w[(a, b)] = Complex64::new(x, 0.0);
            }
        }
        Self { graph, w }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.w
    }

    pub fn get(&self, a: usize, b: usize) -> Complex64 {
        self.w[(a, b)]
    }
}

/// Hermitian matrix supported on the edges of a graph.
#[derive(Clone, Debug)]
pub struct HermitianAdjacency {
    graph: Graph,
    h: CMatrix,
}

impl HermitianAdjacency {
    /// Validates Hermitian symmetry (to `1e-12`) and that the support is
    /// exactly the edge set; diagonal must vanish.
    pub fn new(graph: Graph, h: CMatrix) -> Result<Self> {
        let n = graph.n();
        if h.nrows() != n || h.ncols() != n {
            return Err(Error::Dimension {
                expected: n,
                rows: h.nrows(),
                cols: h.ncols(),
            });
        }
        for a in 0..n {
            for b in a..n {
                if (h[(a, b)] - h[(b, a)].conj()).norm() > 1e-12 {
                    return Err(Error::NotHermitian(a, b));
                }
                let nonzero = h[(a, b)].norm() > 1e-12;
                if nonzero && !graph.has_edge(a, b) {
                    return Err(Error::OffSupport(a, b));
                }
                if !nonzero && graph.has_edge(a, b) {
                    return Err(Error::MissingEntry(a, b));
                }
            }
        }
        Ok(Self { graph, h })
    }

    /// Infers the graph from the support of `h`.
    pub fn from_matrix(h: CMatrix) -> Result<Self> {
        if h.nrows() != h.ncols() {
            return Err(Error::Dimension {
                expected: h.nrows(),
                rows: h.nrows(),
                cols: h.ncols(),
            });
        }
        let graph = Graph::from_support(&h, 1e-12)?;
        Self::new(graph, h)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// `Σ_b |h_ab|` for every row.
    pub fn row_abs_sums(&self) -> Vec<f64> {
        (0..self.n())
            .map(|a| self.h.row(a).iter().map(|z| z.norm()).sum())
            .collect()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            graph: self.graph.clone(),
            h: self.h.map(|z| z * factor),
        }
    }
}

/// Weighted tail-arc incidence `N` (`n × |arcs|`) with `N[a,(a,b)] = w_ab`.
pub fn tail_incidence(w: &WeightMatrix, arcs: &ArcSpace) -> CMatrix {
    let mut nt = CMatrix::zeros(w.graph().n(), arcs.len());
    for (i, &(a, b)) in arcs.arcs().iter().enumerate() {
        nt[(a, i)] = w.get(a, b);
    }
    nt
}

/// `H = W ∘ W*`, i.e. `h_ab = w_ab · conj(w_ba)`.
pub fn hermitian_from_weights(w: &WeightMatrix) -> HermitianAdjacency {
    let n = w.graph().n();
    let m = w.matrix();
    let h = DMatrix::from_fn(n, n, |a, b| m[(a, b)] * m[(b, a)].conj());
    HermitianAdjacency {
        graph: w.graph().clone(),
        h,
    }
}

/// Recovers a normalized `W` with `W ∘ W* = H` from an `H` whose rows have
/// absolute sum one. Each edge `{a,b}` is directed `a < b` and gets the
/// phase `phases[(a,b)]` (default 1): `w_ab = sqrt|h_ab|·δ_ab`,
/// `w_ba = conj(h_ab)/conj(w_ab)`.
pub fn recover_weights(
    h: &HermitianAdjacency,
    phases: &BTreeMap<(usize, usize), Complex64>,
) -> Result<WeightMatrix> {
    for (vertex, sum) in h.row_abs_sums().into_iter().enumerate() {
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::RowSum { vertex, sum });
        }
    }
    let n = h.n();
    let m = h.matrix();
    let mut w = CMatrix::zeros(n, n);
    for &(a, b) in h.graph().edges() {
        let delta = phases
            .get(&(a, b))
            .copied()
            .unwrap_or(Complex64::new(1.0, 0.0));
        if (delta.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::NonUnitPhase(a, b));
        }
        let hab = m[(a, b)];
        let wab = delta * hab.norm().sqrt();
        w[(a, b)] = wab;
        w[(b, a)] = hab.conj() / wab.conj();
    }
    WeightMatrix::new(h.graph().clone(), w)
}

/// [`recover_weights`] with every phase equal to one.
pub fn recover_weights_unit(h: &HermitianAdjacency) -> Result<WeightMatrix> {
    recover_weights(h, &BTreeMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cocktail3() -> Graph {
        let mut e = Vec::new();
        for a in 0..6 {
            for b in (a + 1)..6 {
                if b != a + 3 {
                    e.push((a, b));
                }
            }
        }
        Graph::new(6, e).unwrap()
    }

    #[test]
    fn rejects_bad_graphs() {
        assert_eq!(Graph::new(1, []), Err(Error::TooFewVertices(1)));
        assert_eq!(Graph::new(3, [(0, 0)]), Err(Error::Loop(0)));
        assert_eq!(
            Graph::new(3, [(0, 1), (1, 0), (1, 2)]),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert_eq!(Graph::new(4, [(0, 1), (2, 3)]), Err(Error::Disconnected(2)));
        assert_eq!(Graph::new(2, [(0, 5)]), Err(Error::VertexOutOfRange(0, 5, 2)));
    }

    #[test]
    fn arc_space_single_edge() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let arcs = ArcSpace::new(&g);
        assert_eq!(arcs.arcs(), &[(0, 1), (1, 0)]);
        assert_eq!(arcs.rev(), &[1, 0]);
    }

    #[test]
    fn arc_space_counts() {
        let tri = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let arcs = ArcSpace::new(&tri);
        assert_eq!(arcs.len(), 6);
        for (i, &j) in arcs.rev().iter().enumerate() {
            assert_ne!(i, j);
            assert_eq!(arcs.rev()[j], i);
        }
        let g = cocktail3();
        assert_eq!(g.edges().len(), 12);
        assert_eq!(ArcSpace::new(&g).len(), 24);
    }

    #[test]
    fn k2_incidence_is_identity() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let w = WeightMatrix::from_entries(g, [((0, 1), c(1.0, 0.0)), ((1, 0), c(1.0, 0.0))])
            .unwrap();
        let arcs = ArcSpace::new(w.graph());
        let nt = tail_incidence(&w, &arcs);
        assert_eq!(nt, CMatrix::identity(2, 2));
    }

    #[test]
    fn incidence_is_coisometry() {
        let g = cocktail3();
        let w = WeightMatrix::uniform(g);
        assert!(w.matrix().iter().all(|z| z.re == 0.0 || (z.re - 0.5).abs() < 1e-15));
        let arcs = ArcSpace::new(w.graph());
        let nt = tail_incidence(&w, &arcs);
        let gram = &nt * nt.adjoint();
        assert!((gram - CMatrix::identity(6, 6)).norm() <= 1e-12);
    }

    #[test]
    fn hermitian_of_cocktail_party() {
        let w = WeightMatrix::uniform(cocktail3());
        let h = hermitian_from_weights(&w);
        let expect = w.graph().adjacency() / Complex64::new(4.0, 0.0);
        assert!((h.matrix() - expect).norm() < 1e-15);
    }

    #[test]
    fn hermitian_entry_is_direct_product() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let w = WeightMatrix::from_entries(g, [((0, 1), c(0.0, 1.0)), ((1, 0), c(1.0, 0.0))])
            .unwrap();
        let h = hermitian_from_weights(&w);
        assert_eq!(h.matrix()[(0, 1)], c(0.0, 1.0));
        assert_eq!(h.matrix()[(1, 0)], c(0.0, -1.0));
    }

    #[test]
    fn rejects_unnormalized_and_off_support() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let err = WeightMatrix::from_entries(
            g.clone(),
            [
                ((0, 1), c(1.0, 0.0)),
                ((1, 0), c(0.5, 0.0)),
                ((1, 2), c(0.5, 0.0)),
                ((2, 1), c(1.0, 0.0)),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotNormalized { vertex: 1, .. }));
        let h = 0.5f64.sqrt();
        let err = WeightMatrix::from_entries(
            g,
            [
                ((0, 1), c(1.0, 0.0)),
                ((0, 2), c(1.0, 0.0)),
                ((1, 0), c(h, 0.0)),
                ((1, 2), c(h, 0.0)),
                ((2, 1), c(1.0, 0.0)),
            ],
        )
        .unwrap_err();
        assert_eq!(err, Error::OffSupport(0, 2));
    }

    #[test]
    fn recover_cocktail_three_weights() {
        let g = cocktail3();
        let h = HermitianAdjacency::new(g.clone(), g.adjacency() / Complex64::new(4.0, 0.0))
            .unwrap();
        let w = recover_weights_unit(&h).unwrap();
        for &(a, b) in g.edges() {
            assert!((w.get(a, b) - 0.5).norm() < 1e-15);
            assert!((w.get(b, a) - 0.5).norm() < 1e-15);
        }
    }

    #[test]
    fn recover_unit_pair() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 1)] = c(0.0, 1.0);
        m[(1, 0)] = c(0.0, -1.0);
        let h = HermitianAdjacency::new(g, m).unwrap();
        let w = recover_weights_unit(&h).unwrap();
        assert_eq!(w.get(0, 1), c(1.0, 0.0));
        assert!((w.get(1, 0) - c(0.0, -1.0)).norm() < 1e-15);
        let back = hermitian_from_weights(&w);
        assert!((back.matrix() - h.matrix()).norm() < 1e-15);
    }

    #[test]
    fn recover_names_bad_row() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let h = HermitianAdjacency::new(g.clone(), g.adjacency()).unwrap();
        match recover_weights_unit(&h) {
            Err(Error::RowSum { vertex: 1, sum }) => assert_eq!(sum, 2.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn hermitian_rejects_asymmetry() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 1)] = c(0.0, 1.0);
        m[(1, 0)] = c(0.0, 1.0);
        assert_eq!(
            HermitianAdjacency::new(g, m).unwrap_err(),
            Error::NotHermitian(0, 1)
        );
    }
}
