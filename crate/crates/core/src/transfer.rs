//! Perfect and pretty good state transfer between vertex states `N*e_a`
//! and `N*e_b`.
//!
//! [`pgst_decide`] is three-valued. It answers `pgst` or `no_pgst` only when
//! the support angles reduce to rational multiples of `π` and base angles
//! `arccos|λ|` with pairwise distinct tangent classes, which together with
//! `π` are linearly independent over `Q`. The relation conditions then
//! become an integer lattice, and the residue condition is checked on a
//! basis of it. Everything else is `undecided`, with the best fidelity
//! found by a bounded sweep attached.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::angles::{classify_cosine, independence_certificate, AngleKind, IndependenceCertificate, IndependenceStatus, SymbolicAngle};
use crate::graph::{recover_weights_unit, HermitianAdjacency};
use crate::lattice::relation_lattice;
use crate::linalg::{self, UnitaryEigenspace};
use crate::spectral::{
    certify, decompose, m_strong_cospectrality, CospectralityCertificate, RootOfUnity,
    SpectralData, DEFAULT_M_MAX,
};
use crate::walk::{best_fidelity, project, TransitionMatrix, WalkState};
use crate::{Error, Result};

/// Fidelity at least `1 - PST_TOL` counts as perfect transfer.
pub const PST_TOL: f64 = 1e-9;
/// Tolerance on `tθ/π` being an integer when `θ` is only known numerically.
pub const ANGLE_TOL: f64 = 1e-9;
pub const DEFAULT_SWEEP_BUDGET: u64 = 100_000;

/// One entry of an ℓ-vector, aligned with a certificate's support. For
/// `λ = ±1` only `ell` is used and `ell_prime` must be zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationTerm {
    pub eigenvalue: f64,
    pub ell: i64,
    pub ell_prime: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationVector {
    pub terms: Vec<RelationTerm>,
}

impl RelationVector {
    pub fn zero(cert: &CospectralityCertificate) -> Self {
        Self {
            terms: cert
                .support
                .iter()
                .map(|p| RelationTerm {
                    eigenvalue: p.eigenvalue,
                    ell: 0,
                    ell_prime: 0,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepEvidence {
    pub t_max: u64,
    pub best_t: u64,
    pub best_fidelity: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NoPstReason {
    NotStronglyCospectral { detail: String },
    NoCertificate { detail: String },
    PartitionShape { m: u32, classes: Vec<u32> },
    NotPiMultiple { eigenvalue: f64 },
    ParityMismatch { eigenvalue: f64, reference: f64 },
    PhaseMismatch { theta: f64, reference_theta: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NoPgstReason {
    NotStronglyCospectral { detail: String },
    /// `m` is odd or the support meets more than the two classes `k` and
    /// `m/2 + k`.
    PartitionShape {
        m: u32,
        classes: Vec<u32>,
        witness: RelationVector,
    },
    /// An ℓ-vector satisfying the angle and sum conditions whose residue
    /// sum is `residue ≢ 0 (mod m)`.
    ViolatingRelation {
        m: u32,
        relation: RelationVector,
        residue: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum UndecidedReason {
    NotRootOfUnity { detail: String },
    Unsnappable { eigenvalue: f64 },
    /// `arccos λ` is a rational multiple of `π` with tangent in
    /// `{±1/√3, ±1, ±√3}`.
    SpecialTangent { eigenvalue: f64, pi_multiple: Rational64 },
    SharedClass { first: f64, second: f64, class: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PgstCertificate {
    pub cospectrality: CospectralityCertificate,
    pub k: u32,
    pub base_angles: IndependenceCertificate,
    /// Basis of all ℓ-vectors satisfying the angle and sum conditions; each
    /// has residue sum `≡ 0 (mod m)`.
    pub relation_basis: Vec<RelationVector>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TransferVerdict {
    Pst {
        t: u64,
        #[serde(with = "crate::format::re_im")]
        gamma: Complex64,
    },
    Pgst {
        certificate: Box<PgstCertificate>,
    },
    NoPst {
        reason: NoPstReason,
    },
    NoPgst {
        reason: NoPgstReason,
    },
    Undecided {
        reason: UndecidedReason,
        evidence: Option<SweepEvidence>,
    },
}

impl TransferVerdict {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Pst { .. } => "pst",
            Self::Pgst { .. } => "pgst",
            Self::NoPst { .. } => "no_pst",
            Self::NoPgst { .. } => "no_pgst",
            Self::Undecided { .. } => "undecided",
        }
    }
}

impl fmt::Display for TransferVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Pst { t, gamma } => write!(f, "pst at t = {t}, gamma = {gamma}"),
            Self::Pgst { certificate } => write!(
                f,
                "pgst (m = {}, {} basis relations)",
                certificate
                    .cospectrality
                    .root_of_unity
                    .as_ref()
                    .map_or(0, |r| r.m),
                certificate.relation_basis.len()
            ),
            Self::NoPst { reason } => write!(f, "no pst: {reason:?}"),
            Self::NoPgst { reason } => write!(f, "no pgst: {reason:?}"),
            Self::Undecided { reason, evidence } => {
                write!(f, "undecided: {reason:?}")?;
                if let Some(e) = evidence {
                    write!(f, "; best fidelity {} at t = {}", e.best_fidelity, e.best_t)?;
                }
                Ok(())
            }
        }
    }
}

/// PST from `x` to `y` at time `t`, decided from the spectral decomposition
/// `{(θ_r, F_r)}` of a unitary: every `F_r x = μ_r F_r y` with `|μ_r| = 1`,
/// and `e^{itθ_r} μ_r` is the same over the support.
pub fn abstract_pst_check(
    spaces: &[UnitaryEigenspace],
    x: &WalkState,
    y: &WalkState,
    t: u64,
) -> TransferVerdict {
    let mut gamma: Option<(Complex64, f64)> = None;
    for sp in spaces {
        let fx = project(&sp.projection, &x.0);
        let fy = project(&sp.projection, &y.0);
        let (nx, ny) = (linalg::norm(&fx), linalg::norm(&fy));
        if nx <= PST_TOL && ny <= PST_TOL {
            continue;
        }
        let not_cospectral = |detail: String| TransferVerdict::NoPst {
            reason: NoPstReason::NotStronglyCospectral { detail },
        };
        if (nx - ny).abs() > PST_TOL {
            return not_cospectral(format!(
                "projections onto phase {} have norms {nx} and {ny}",
                sp.theta
            ));
        }
        let mu = linalg::inner(&fy, &fx) / (ny * ny);
        let residual = linalg::norm(&fx.iter().zip(&fy).map(|(p, q)| p - mu * q).collect::<Vec<_>>());
        if residual > PST_TOL {
            return not_cospectral(format!(
                "projections onto phase {} are not parallel (residual {residual:.3e})",
                sp.theta
            ));
        }
        let g = Complex64::from_polar(1.0, t as f64 * sp.theta) * mu;
        match gamma {
            None => gamma = Some((g, sp.theta)),
            Some((g0, theta0)) if (g - g0).norm() > PST_TOL => {
                return TransferVerdict::NoPst {
                    reason: NoPstReason::PhaseMismatch {
                        theta: sp.theta,
                        reference_theta: theta0,
                    },
                }
            }
            _ => {}
        }
    }
    match gamma {
        Some((gamma, _)) => TransferVerdict::Pst { t, gamma },
        None => TransferVerdict::NoPst {
            reason: NoPstReason::NotStronglyCospectral {
                detail: "both states vanish".into(),
            },
        },
    }
}

/// Checks the two-class partition `Λ_a = Λ^k ⊔ Λ^{m/2+k}` and returns `k`,
/// or the classes present. A single class, which only occurs for `a = b`,
/// is accepted for any `m`.
fn two_classes(root: &RootOfUnity) -> std::result::Result<u32, Vec<u32>> {
    let classes: Vec<u32> = root.partition.keys().copied().collect();
    let m = root.m;
    if classes.len() == 1 {
        return Ok(classes[0]);
    }
    if m % 2 == 0 {
        let k = classes[0];
        if classes.iter().all(|&c| c == k || c == (k + m / 2) % m) {
            return Ok(k);
        }
    }
    Err(classes)
}

/// `θ/π` for a support eigenvalue when it is rational.
fn pi_multiple(p: &crate::spectral::SupportPhase) -> Option<Rational64> {
    p.exact
        .and_then(|c| classify_cosine(c).ok())
        .and_then(|a| a.pi_multiple())
}

/// The conditions of the PST characterization for `m`-strongly cospectral
/// vertices, evaluated on a certificate. Returns `γ` with
/// `U^t N*e_a = γ N*e_b` on success.
pub fn pst_conditions(
    cert: &CospectralityCertificate,
    t: u64,
) -> std::result::Result<Complex64, NoPstReason> {
    let root = cert
        .root_of_unity
        .as_ref()
        .ok_or_else(|| NoPstReason::NoCertificate {
            detail: "phases are not roots of unity".into(),
        })?;
    let k = two_classes(root).map_err(|classes| NoPstReason::PartitionShape { m: root.m, classes })?;
    // n_λ = tθ_λ/π must be an integer
    let mut turns = Vec::with_capacity(cert.support.len());
    for p in &cert.support {
        let n = match pi_multiple(p) {
            Some(q) => {
                let v = q * Rational64::from(t as i64);
                v.is_integer().then(|| v.to_integer())
            }
            None if p.exact.is_some() => None,
            None => {
                let v = t as f64 * p.eigenvalue.clamp(-1.0, 1.0).acos() / PI;
                ((v - v.round()).abs() <= ANGLE_TOL).then(|| v.round() as i64)
            }
        };
        turns.push(n.ok_or(NoPstReason::NotPiMultiple {
            eigenvalue: p.eigenvalue,
        })?);
    }
    // parity of n_λ plus class membership must be constant
    let parity = |i: usize| (turns[i] + i64::from(root.residues[i] != k)).rem_euclid(2);
    let p0 = parity(0);
    if let Some(i) = (1..turns.len()).find(|&i| parity(i) != p0) {
        return Err(NoPstReason::ParityMismatch {
            eigenvalue: cert.support[i].eigenvalue,
            reference: cert.support[0].eigenvalue,
        });
    }
    let sign = if turns[0].rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    Ok(cert.support[0].phase * sign)
}

/// PST between `a` and `b` at time `t` from the characterization, checked
/// against the simulated fidelity.
pub fn pst_check(h: &HermitianAdjacency, cert: &CospectralityCertificate, t: u64) -> Result<TransferVerdict> {
    let symbolic = pst_conditions(cert, t);
    let u = TransitionMatrix::new(&recover_weights_unit(h)?);
    let x = u.vertex_state(cert.a)?;
    let y = u.vertex_state(cert.b)?;
    let z = crate::walk::evolve(&u, &x, t);
    let overlap = y.inner(&z);
    let fid = overlap.norm();
    match symbolic {
        Ok(_) if fid < 1.0 - PST_TOL => Err(Error::CrossCheck {
            what: format!("fidelity at t = {t} for a pst verdict"),
            deviation: 1.0 - fid,
        }),
        Ok(_) => Ok(TransferVerdict::Pst { t, gamma: overlap }),
        Err(reason) if fid >= 1.0 - PST_TOL => Err(Error::CrossCheck {
            what: format!("fidelity at t = {t} for a negative verdict ({reason:?})"),
            deviation: 1.0 - fid,
        }),
        Err(reason) => Ok(TransferVerdict::NoPst { reason }),
    }
}

/// First `t ≤ t_max` satisfying the PST conditions, if any.
pub fn first_pst_time(cert: &CospectralityCertificate, t_max: u64) -> Option<u64> {
    (1..=t_max).find(|&t| pst_conditions(cert, t).is_ok())
}

/// The partition necessary for PGST: `m` even and `Λ_a = Λ^k ⊔ Λ^{m/2+k}`.
/// On failure the reason carries an ℓ-vector that satisfies the angle and
/// sum conditions but has residue sum `2(k - n) ≢ 0 (mod m)`.
pub fn partition_shape_check(
    cert: &CospectralityCertificate,
    root: &RootOfUnity,
) -> std::result::Result<u32, NoPgstReason> {
    let classes = match two_classes(root) {
        Ok(k) => return Ok(k),
        Err(c) => c,
    };
    let m = root.m as i64;
    let k = classes[0];
    let n = *classes
        .iter()
        .find(|&&n| (2 * (k as i64 - n as i64)).rem_euclid(m) != 0)
        .expect("a failing shape has two classes differing by other than m/2");
    let mut witness = RelationVector::zero(cert);
    for (class, sign) in [(k, 1), (n, -1)] {
        let i = root.partition[&class][0];
        let term = &mut witness.terms[i];
        if is_unit(cert, i) {
            term.ell = 2 * sign;
        } else {
            term.ell = sign;
            term.ell_prime = sign;
        }
    }
    Err(NoPgstReason::PartitionShape {
        m: root.m,
        classes,
        witness,
    })
}

fn is_unit(cert: &CospectralityCertificate, i: usize) -> bool {
    unit_sign(cert, i).is_some()
}

/// `Some(true)` for `λ = 1`, `Some(false)` for `λ = -1`.
fn unit_sign(cert: &CospectralityCertificate, i: usize) -> Option<bool> {
    let p = &cert.support[i];
    match p.exact {
        Some(c) if c.square == Rational64::from(1) => Some(!c.negative),
        Some(_) => None,
        None if (p.eigenvalue.abs() - 1.0).abs() <= ANGLE_TOL => Some(p.eigenvalue > 0.0),
        None => None,
    }
}

/// `θ_λ = sign · φ_base + pi · π` for one support eigenvalue.
#[derive(Clone, Debug)]
struct AngleTerm {
    base: Option<usize>,
    sign: i128,
    pi: Rational64,
}

struct AngleModel {
    terms: Vec<AngleTerm>,
    bases: IndependenceCertificate,
}

fn angle_model(cert: &CospectralityCertificate) -> std::result::Result<AngleModel, UndecidedReason> {
    let mut terms = Vec::new();
    let mut bases: Vec<SymbolicAngle> = Vec::new();
    let mut base_values: Vec<f64> = Vec::new();
    for p in &cert.support {
        let unsnappable = UndecidedReason::Unsnappable {
            eigenvalue: p.eigenvalue,
        };
        let c = p.exact.ok_or_else(|| unsnappable.clone())?;
        let angle = classify_cosine(c).map_err(|_| unsnappable.clone())?;
        let term = match angle.kind {
            AngleKind::Zero | AngleKind::Pi | AngleKind::HalfPi => AngleTerm {
                base: None,
                sign: 0,
                pi: angle.pi_multiple().expect("exact multiples of pi"),
            },
            AngleKind::SpecialTangent { pi_multiple } => {
                return Err(UndecidedReason::SpecialTangent {
                    eigenvalue: p.eigenvalue,
                    pi_multiple,
                })
            }
            AngleKind::Unresolved => return Err(unsnappable),
            AngleKind::Surd { .. } => {
                let positive = c.abs();
                let idx = match bases.iter().position(|b| b.cosine == Some(positive)) {
                    Some(i) => i,
                    None => {
                        bases.push(classify_cosine(positive).map_err(|_| unsnappable.clone())?);
                        base_values.push(p.eigenvalue.abs());
                        bases.len() - 1
                    }
                };
                AngleTerm {
                    base: Some(idx),
                    sign: if c.negative { -1 } else { 1 },
                    pi: if c.negative { Rational64::from(1) } else { Rational64::zero() },
                }
            }
        };
        terms.push(term);
    }
    let bases = independence_certificate(&bases);
    match bases.status {
        IndependenceStatus::Independent => Ok(AngleModel { terms, bases }),
        IndependenceStatus::SharedClass { first, second, class } => Err(UndecidedReason::SharedClass {
            first: base_values[first],
            second: base_values[second],
            class,
        }),
        IndependenceStatus::SpecialTangent { index } | IndependenceStatus::Undecided { index } => {
            Err(UndecidedReason::Unsnappable {
                eigenvalue: base_values[index],
            })
        }
    }
}

/// Column layout of an ℓ-vector: `(ℓ_λ, ℓ'_λ)` per support eigenvalue, with
/// `ℓ'` absent for `±1`.
fn columns(cert: &CospectralityCertificate) -> (Vec<(usize, Option<usize>)>, usize) {
    let mut next = 0;
    let cols = (0..cert.support.len())
        .map(|i| {
            let ell = next;
            next += 1;
            let prime = (!is_unit(cert, i)).then(|| {
                next += 1;
                next - 1
            });
            (ell, prime)
        })
        .collect();
    (cols, next)
}

fn lcm_of_denominators(terms: &[AngleTerm]) -> i128 {
    terms
        .iter()
        .fold(1i64, |acc, t| acc.lcm(t.pi.denom())) as i128
}

/// Integer rows for the angle condition: one equality per base angle and a
/// congruence for the `π` part.
fn angle_rows(
    cert: &CospectralityCertificate,
    model: &AngleModel,
    cols: &[(usize, Option<usize>)],
    width: usize,
) -> (Vec<Vec<i128>>, (Vec<i128>, i128)) {
    let mut eqs = vec![vec![0i128; width]; model.bases.angles.len()];
    let scale = lcm_of_denominators(&model.terms);
    let mut pi_row = vec![0i128; width];
    for (i, term) in model.terms.iter().enumerate() {
        let (ell, prime) = cols[i];
        let pi = (term.pi * Rational64::from(scale as i64)).to_integer() as i128;
        match prime {
            Some(prime) => {
                if let Some(b) = term.base {
                    eqs[b][ell] += term.sign;
                    eqs[b][prime] -= term.sign;
                }
                pi_row[ell] += pi;
                pi_row[prime] -= pi;
            }
            // θ = π enters once through ℓ_{-1}; θ = 0 does not enter
            None => {
                if unit_sign(cert, i) == Some(false) {
                    pi_row[ell] += scale;
                }
            }
        }
    }
    (eqs, (pi_row, 2 * scale))
}

fn residue_of(root: &RootOfUnity, r: &RelationVector) -> i64 {
    r.terms
        .iter()
        .zip(&root.residues)
        .map(|(term, &k)| k as i64 * (term.ell + term.ell_prime))
        .sum::<i64>()
        .rem_euclid(root.m as i64)
}

fn to_relation(cert: &CospectralityCertificate, cols: &[(usize, Option<usize>)], v: &[i128]) -> RelationVector {
    RelationVector {
        terms: cert
            .support
            .iter()
            .zip(cols)
            .map(|(p, &(ell, prime))| RelationTerm {
                eigenvalue: p.eigenvalue,
                ell: v[ell] as i64,
                ell_prime: prime.map_or(0, |j| v[j] as i64),
            })
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PgstOptions {
    pub m_max: u32,
    /// Sweep length for the evidence attached to undecided verdicts; zero
    /// disables the sweep.
    pub sweep_budget: u64,
}

impl Default for PgstOptions {
    fn default() -> Self {
        Self {
            m_max: DEFAULT_M_MAX,
            sweep_budget: DEFAULT_SWEEP_BUDGET,
        }
    }
}

/// Decides PGST between `a` and `b` for the walk of `H`.
pub fn pgst_decide(h: &HermitianAdjacency, a: usize, b: usize, opts: PgstOptions) -> Result<TransferVerdict> {
    h.graph().check_vertex(a)?;
    h.graph().check_vertex(b)?;
    let s = decompose(h);
    pgst_decide_with(h, &s, a, b, opts)
}

/// [`pgst_decide`] with a precomputed decomposition of `H`.
pub fn pgst_decide_with(
    h: &HermitianAdjacency,
    s: &SpectralData,
    a: usize,
    b: usize,
    opts: PgstOptions,
) -> Result<TransferVerdict> {
    let cert = match certify(s, a, b, opts.m_max) {
        Ok(c) => c,
        Err(e) => {
            return Ok(TransferVerdict::NoPgst {
                reason: NoPgstReason::NotStronglyCospectral {
                    detail: e.to_string(),
                },
            })
        }
    };
    let undecided = |reason: UndecidedReason| -> Result<TransferVerdict> {
        let evidence = if opts.sweep_budget > 0 {
            let u = TransitionMatrix::new(&recover_weights_unit(h)?);
            let (best_t, best_fidelity) = best_fidelity(&u, a, b, opts.sweep_budget, None)?;
            Some(SweepEvidence {
                t_max: opts.sweep_budget,
                best_t,
                best_fidelity,
            })
        } else {
            None
        };
        Ok(TransferVerdict::Undecided { reason, evidence })
    };
    let root = match m_strong_cospectrality(&cert, opts.m_max) {
        Ok(r) => r,
        Err(e) => {
            return undecided(UndecidedReason::NotRootOfUnity {
                detail: e.to_string(),
            })
        }
    };
    let k = match partition_shape_check(&cert, &root) {
        Ok(k) => k,
        Err(reason) => return Ok(TransferVerdict::NoPgst { reason }),
    };
    let model = match angle_model(&cert) {
        Ok(m) => m,
        Err(reason) => return undecided(reason),
    };

    let (cols, width) = columns(&cert);
    let (mut eqs, congruence) = angle_rows(&cert, &model, &cols, width);
    eqs.push(vec![1; width]);
    let basis: Vec<RelationVector> = relation_lattice(&eqs, &[congruence], width)
        .iter()
        .map(|v| to_relation(&cert, &cols, v))
        .collect();
    if let Some(r) = basis.iter().find(|r| residue_of(&root, r) != 0) {
        return Ok(TransferVerdict::NoPgst {
            reason: NoPgstReason::ViolatingRelation {
                m: root.m,
                residue: residue_of(&root, r),
                relation: r.clone(),
            },
        });
    }
    let mut cospectrality = cert;
    cospectrality.root_of_unity = Some(root);
    Ok(TransferVerdict::Pgst {
        certificate: Box::new(PgstCertificate {
            cospectrality,
            k,
            base_angles: model.bases,
            relation_basis: basis,
        }),
    })
}

/// Evaluation of the three relation conditions on one ℓ-vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationCheck {
    /// `Σ (ℓ - ℓ') arccos λ + ℓ_{-1} π ≡ 0 (mod 2π)`
    pub angle_condition: bool,
    /// Whether the angle condition was decided exactly.
    pub exact: bool,
    /// `Σ (ℓ + ℓ') + ℓ_1 + ℓ_{-1} = 0`
    pub sum_condition: bool,
    pub m: u32,
    /// `Σ σ_λ (ℓ_λ + ℓ'_λ) mod m`
    pub residue: i64,
}

impl RelationCheck {
    /// The first two conditions hold and the third fails.
    pub fn is_violation(&self) -> bool {
        self.angle_condition && self.sum_condition && self.residue != 0
    }
}

/// Checks the relation conditions for one ℓ-vector on a certificate with
/// root-of-unity data. The angle condition is exact when the support angles
/// admit the exact model used by [`pgst_decide`] or are all rational
/// multiples of `π`, numeric within `1e-9` otherwise.
pub fn relation_check(cert: &CospectralityCertificate, relation: &RelationVector) -> Result<RelationCheck> {
    let root = cert
        .root_of_unity
        .as_ref()
        .ok_or_else(|| Error::MalformedRelation("certificate has no root-of-unity data".into()))?;
    if relation.terms.len() != cert.support.len() {
        return Err(Error::MalformedRelation(format!(
            "expected {} terms, got {}",
            cert.support.len(),
            relation.terms.len()
        )));
    }
    for (i, term) in relation.terms.iter().enumerate() {
        if is_unit(cert, i) && term.ell_prime != 0 {
            return Err(Error::MalformedRelation(format!(
                "eigenvalue {} carries a single coefficient",
                cert.support[i].eigenvalue
            )));
        }
    }
    let (cols, width) = columns(cert);
    let mut v = vec![0i128; width];
    for (term, &(ell, prime)) in relation.terms.iter().zip(&cols) {
        v[ell] = term.ell as i128;
        if let Some(j) = prime {
            v[j] = term.ell_prime as i128;
        }
    }
    let dot = |row: &[i128]| row.iter().zip(&v).map(|(p, q)| p * q).sum::<i128>();

    let (angle_condition, exact) = match angle_model(cert) {
        Ok(model) => {
            let (eqs, (pi_row, modulus)) = angle_rows(cert, &model, &cols, width);
            let ok = eqs.iter().all(|r| dot(r) == 0) && dot(&pi_row).rem_euclid(modulus) == 0;
            (ok, true)
        }
        Err(_) if (0..cert.support.len()).all(|i| unit_sign(cert, i).is_some() || pi_multiple(&cert.support[i]).is_some()) => {
            let mut total = Rational64::zero();
            for (i, term) in relation.terms.iter().enumerate() {
                total += match unit_sign(cert, i) {
                    Some(true) => Rational64::zero(),
                    Some(false) => Rational64::from(term.ell),
                    None => pi_multiple(&cert.support[i]).unwrap_or_default() * Rational64::from(term.ell - term.ell_prime),
                };
            }
            (total.is_integer() && total.to_integer().rem_euclid(2) == 0, true)
        }
        Err(_) => {
            let mut total = 0.0;
            for (i, term) in relation.terms.iter().enumerate() {
                let theta = cert.support[i].eigenvalue.clamp(-1.0, 1.0).acos();
                total += match unit_sign(cert, i) {
                    Some(true) => 0.0,
                    Some(false) => term.ell as f64 * PI,
                    None => (term.ell - term.ell_prime) as f64 * theta,
                };
            }
            let turns = total / (2.0 * PI);
            ((turns - turns.round()).abs() * 2.0 * PI <= ANGLE_TOL, false)
        }
    };
    let sum_condition = relation.terms.iter().map(|t| t.ell + t.ell_prime).sum::<i64>() == 0;
    Ok(RelationCheck {
        angle_condition,
        exact,
        sum_condition,
        m: root.m,
        residue: residue_of(root, relation),
    })
}

/// [`relation_check`] for the vertices `a`, `b` of `H`.
pub fn pgst_relation_witness(
    h: &HermitianAdjacency,
    a: usize,
    b: usize,
    relation: &RelationVector,
) -> Result<RelationCheck> {
    h.graph().check_vertex(a)?;
    h.graph().check_vertex(b)?;
    let s = decompose(h);
    let cert = certify(&s, a, b, DEFAULT_M_MAX)
        .map_err(|e| Error::MalformedRelation(format!("vertices are not strongly cospectral: {e}")))?;
    relation_check(&cert, relation)
}
