//! The arc-space transition matrix `U = R(2N*N - I)`, walk evolution and
//! fidelities.

use std::f64::consts::PI;
use std::io::{self, Write};

use num_complex::Complex64;

use crate::graph::{tail_incidence, ArcSpace, WeightMatrix};
use crate::linalg::{self, unitary_spectrum, UnitaryEigenspace};
use crate::spectral::SpectralData;
use crate::{CMatrix, Error, Result};

/// Steps between renormalizations of a long evolution.
pub const RENORMALIZE_EVERY: u64 = 10_000;
/// Largest norm drift tolerated per step.
pub const DRIFT_PER_STEP: f64 = 1e-10;
/// Tolerance for matching `cos θ` to an eigenvalue of `H` and for the
/// projection cross-checks.
pub const CORRESPONDENCE_TOL: f64 = 1e-9;

/// A complex amplitude on every arc.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkState(pub Vec<Complex64>);

impl WalkState {
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        linalg::norm(&self.0)
    }

    /// `⟨self, other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &WalkState) -> Complex64 {
        linalg::inner(&self.0, &other.0)
    }
}

#[derive(Clone, Debug)]
pub struct TransitionMatrix {
    arcs: ArcSpace,
    weights: WeightMatrix,
    /// `w_ab` for every arc `(a, b)`.
    arc_weights: Vec<Complex64>,
    tails: Vec<usize>,
}

impl TransitionMatrix {
    pub fn new(w: &WeightMatrix) -> Self {
        let arcs = ArcSpace::new(w.graph());
        let arc_weights = arcs.arcs().iter().map(|&(a, b)| w.get(a, b)).collect();
        let tails = arcs.arcs().iter().map(|&(a, _)| a).collect();
        Self {
            arcs,
            weights: w.clone(),
            arc_weights,
            tails,
        }
    }

    pub fn arcs(&self) -> &ArcSpace {
        &self.arcs
    }

    pub fn weights(&self) -> &WeightMatrix {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.arcs.len()
    }

    pub fn n(&self) -> usize {
        self.weights.graph().n()
    }

    /// Writes `U x` into `out`, using `vertex` as scratch of length `n`.
    pub fn apply_into(&self, x: &[Complex64], out: &mut [Complex64], vertex: &mut [Complex64]) {
        vertex.fill(Complex64::new(0.0, 0.0));
        for (i, &xi) in x.iter().enumerate() {
            vertex[self.tails[i]] += self.arc_weights[i] * xi;
        }
        let rev = self.arcs.rev();
        for i in 0..x.len() {
            out[rev[i]] = 2.0 * self.arc_weights[i].conj() * vertex[self.tails[i]] - x[i];
        }
    }

    pub fn apply(&self, x: &WalkState) -> WalkState {
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim()];
        let mut scratch = vec![Complex64::new(0.0, 0.0); self.n()];
        self.apply_into(&x.0, &mut out, &mut scratch);
        WalkState(out)
    }

    /// The weighted tail incidence `N` (vertices × arcs).
    pub fn incidence(&self) -> CMatrix {
        tail_incidence(&self.weights, &self.arcs)
    }

    /// The coin `2N*N - I`.
    pub fn coin(&self) -> CMatrix {
        let nm = self.incidence();
        nm.adjoint() * &nm * Complex64::new(2.0, 0.0) - CMatrix::identity(self.dim(), self.dim())
    }

    pub fn dense(&self) -> CMatrix {
        self.arcs.reversal_matrix() * self.coin()
    }

    /// `N* e_a`: amplitude `conj(w_ab)` on each arc leaving `a`.
    pub fn vertex_state(&self, a: usize) -> Result<WalkState> {
        self.weights.graph().check_vertex(a)?;
        let mut v = vec![Complex64::new(0.0, 0.0); self.dim()];
        for i in self.arcs.outgoing(a) {
            v[i] = self.arc_weights[i].conj();
        }
        Ok(WalkState(v))
    }

    /// Eigenphases of `U` in `(-π, π]` with their projections, from a dense
    /// decomposition.
    pub fn spectrum(&self) -> Vec<UnitaryEigenspace> {
        unitary_spectrum(&self.dense(), CORRESPONDENCE_TOL)
    }
}

pub fn transition_matrix(w: &WeightMatrix) -> TransitionMatrix {
    TransitionMatrix::new(w)
}

pub fn vertex_state(u: &TransitionMatrix, a: usize) -> Result<WalkState> {
    u.vertex_state(a)
}

/// Steps a state forward one application of `U` at a time, renormalizing
/// every [`RENORMALIZE_EVERY`] steps.
#[derive(Debug)]
pub struct Evolution<'a> {
    u: &'a TransitionMatrix,
    state: Vec<Complex64>,
    next: Vec<Complex64>,
    scratch: Vec<Complex64>,
    norm: f64,
    t: u64,
}

impl<'a> Evolution<'a> {
    pub fn new(u: &'a TransitionMatrix, x: &WalkState) -> Self {
        Self {
            u,
            norm: x.norm(),
            state: x.0.clone(),
            next: vec![Complex64::new(0.0, 0.0); u.dim()],
            scratch: vec![Complex64::new(0.0, 0.0); u.n()],
            t: 0,
        }
    }

    pub fn time(&self) -> u64 {
        self.t
    }

    pub fn state(&self) -> &[Complex64] {
        &self.state
    }

    pub fn step(&mut self) {
        self.u.apply_into(&self.state, &mut self.next, &mut self.scratch);
        std::mem::swap(&mut self.state, &mut self.next);
        self.t += 1;
        if self.t % RENORMALIZE_EVERY == 0 && self.norm > 0.0 {
            let current = linalg::norm(&self.state);
            let drift = (current - self.norm).abs();
            assert!(
                drift <= DRIFT_PER_STEP * RENORMALIZE_EVERY as f64,
                "norm drifted by {drift} over {RENORMALIZE_EVERY} steps"
            );
            let f = self.norm / current;
            self.state.iter_mut().for_each(|z| *z *= f);
        }
    }

    pub fn into_state(self) -> WalkState {
        WalkState(self.state)
    }
}

/// `U^t x` by repeated application.
pub fn evolve(u: &TransitionMatrix, x: &WalkState, t: u64) -> WalkState {
    let mut ev = Evolution::new(u, x);
    for _ in 0..t {
        ev.step();
    }
    ev.into_state()
}

/// `|⟨U^t N*e_a, N*e_b⟩|`.
pub fn fidelity(u: &TransitionMatrix, a: usize, b: usize, t: u64) -> Result<f64> {
    let x = u.vertex_state(a)?;
    let y = u.vertex_state(b)?;
    Ok(evolve(u, &x, t).inner(&y).norm())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sweep {
    /// `fidelities[t]` for `t = 0..=t_max`.
    pub fidelities: Vec<f64>,
    pub best_t: u64,
    pub best: f64,
}

impl Sweep {
    /// CSV with header `t,fidelity` and 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "t,fidelity")?;
        for (t, f) in self.fidelities.iter().enumerate() {
            writeln!(out, "{t},{f:.16e}")?;
        }
        Ok(())
    }
}

/// Fidelities for every `t` in `0..=t_max`. The first time attaining the
/// maximum is reported.
pub fn fidelity_sweep(u: &TransitionMatrix, a: usize, b: usize, t_max: u64) -> Result<Sweep> {
    if t_max < 1 {
        return Err(Error::InvalidParameter("t_max must be at least 1".into()));
    }
    let x = u.vertex_state(a)?;
    let y = u.vertex_state(b)?;
    let mut ev = Evolution::new(u, &x);
    let mut fidelities = Vec::with_capacity(t_max as usize + 1);
    let (mut best_t, mut best) = (0, f64::NEG_INFINITY);
    loop {
        let f = linalg::inner(ev.state(), &y.0).norm();
        if f > best {
            best = f;
            best_t = ev.time();
        }
        fidelities.push(f);
        if ev.time() == t_max {
            break;
        }
        ev.step();
    }
    Ok(Sweep {
        fidelities,
        best_t,
        best,
    })
}

/// Largest fidelity over `t ≤ t_max` without storing the series. Stops
/// early once `stop_at` is reached.
pub fn best_fidelity(
    u: &TransitionMatrix,
    a: usize,
    b: usize,
    t_max: u64,
    stop_at: Option<f64>,
) -> Result<(u64, f64)> {
    let x = u.vertex_state(a)?;
    let y = u.vertex_state(b)?;
    let mut ev = Evolution::new(u, &x);
    let mut best = (0, f64::NEG_INFINITY);
    loop {
        let f = linalg::inner(ev.state(), &y.0).norm();
        if f > best.1 {
            best = (ev.time(), f);
        }
        if ev.time() == t_max || stop_at.is_some_and(|s| f >= s) {
            return Ok(best);
        }
        ev.step();
    }
}

/// Projection onto the `e^{iθ}`-eigenspace of `U`, built from the
/// eigenprojection of `H` at `cos θ`. For `θ ∈ {0, π}` the projection is
/// read off the spectrum of `U` and checked against `E_{±1}`.
pub fn walk_eigenprojection(s: &SpectralData, u: &TransitionMatrix, theta: f64) -> Result<CMatrix> {
    let lambda = theta.cos();
    let idx = s
        .find(lambda, CORRESPONDENCE_TOL)
        .ok_or(Error::NotAnEigenvalue {
            theta,
            cosine: lambda,
        })?;
    let e = &s.spaces()[idx].projection;
    let nm = u.incidence();
    let r = u.arcs().reversal_matrix();
    let sin2 = theta.sin().powi(2);
    let phase = Complex64::from_polar(1.0, theta);

    let (f, target) = if sin2 > CORRESPONDENCE_TOL {
        let left = nm.adjoint() - &r * nm.adjoint() * phase;
        let right = &nm - &nm * &r * phase.conj();
        let f = left * e * right / Complex64::new(2.0 * sin2, 0.0);
        (f, e * Complex64::new(0.5, 0.0))
    } else {
        let wrapped = if lambda > 0.0 { 0.0 } else { PI };
        let f = u
            .spectrum()
            .into_iter()
            .find(|sp| phase_distance(sp.theta, wrapped) <= CORRESPONDENCE_TOL)
            .map(|sp| sp.projection)
            .ok_or(Error::NotAnEigenvalue {
                theta,
                cosine: lambda,
            })?;
        (f, e.clone())
    };

    let dev = (&nm * &f * nm.adjoint() - target).norm();
    if dev > CORRESPONDENCE_TOL {
        return Err(Error::CrossCheck {
            what: format!("N F N* at theta = {theta}"),
            deviation: dev,
        });
    }
    let dev = (u.dense() * &f - &f * phase).norm();
    if dev > CORRESPONDENCE_TOL {
        return Err(Error::CrossCheck {
            what: format!("U F - e^(i theta) F at theta = {theta}"),
            deviation: dev,
        });
    }
    Ok(f)
}

/// Distance between two phases on the circle.
pub fn phase_distance(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// The two sums bounding every transfer amplitude `|⟨U^t x, y⟩|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmplitudeBounds {
    /// `Σ_r |⟨F_r x, F_r y⟩|`
    pub overlap: f64,
    /// `Σ_r ‖F_r x‖ ‖F_r y‖`
    pub product: f64,
}

pub fn amplitude_bounds(spaces: &[UnitaryEigenspace], x: &WalkState, y: &WalkState) -> AmplitudeBounds {
    let mut overlap = 0.0;
    let mut product = 0.0;
    for sp in spaces {
        let fx = project(&sp.projection, &x.0);
        let fy = project(&sp.projection, &y.0);
        overlap += linalg::inner(&fx, &fy).norm();
        product += linalg::norm(&fx) * linalg::norm(&fy);
    }
    AmplitudeBounds { overlap, product }
}

pub(crate) fn project(p: &CMatrix, x: &[Complex64]) -> Vec<Complex64> {
    (p * nalgebra::DVector::from_column_slice(x)).iter().copied().collect()
}
