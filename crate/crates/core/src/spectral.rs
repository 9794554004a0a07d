//! Spectral idempotents of `H`, eigenvalue supports and (m-)strong
//! cospectrality certificates.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::angles::{snap_cosine, ExactCosine};
use crate::graph::HermitianAdjacency;
use crate::linalg::{self, eigh, group_sorted};
use crate::CMatrix;

/// Eigenvalues closer than this are merged into one eigenspace.
pub const GROUP_TOL: f64 = 1e-9;
/// `λ ∈ Λ_a` iff `‖E_λ e_a‖` exceeds this.
pub const SUPPORT_TOL: f64 = 1e-9;
/// Tolerance for `E_λ e_a = α E_λ e_b` and equal norms.
pub const PARALLEL_TOL: f64 = 1e-9;
/// Distance to an m-th root of unity accepted when detecting `m`.
pub const ROOT_TOL: f64 = 1e-8;
pub const DEFAULT_M_MAX: u32 = 64;

#[derive(Clone, Debug)]
pub struct Eigenspace {
    pub value: f64,
    pub exact: Option<ExactCosine>,
    pub multiplicity: usize,
    pub projection: CMatrix,
}

/// Distinct eigenvalues of a Hermitian matrix, descending, with their
/// orthogonal eigenprojections.
#[derive(Clone, Debug)]
pub struct SpectralData {
    n: usize,
    spaces: Vec<Eigenspace>,
}

impl SpectralData {
    pub fn from_matrix(h: &CMatrix) -> Self {
        let e = eigh(h);
        let spaces = group_sorted(&e.values, GROUP_TOL)
            .into_iter()
            .map(|g| {
                let value = g.clone().map(|i| e.values[i]).sum::<f64>() / g.len() as f64;
                Eigenspace {
                    value,
                    exact: if value.abs() <= 1.0 + GROUP_TOL {
                        snap_cosine(value)
                    } else {
                        None
                    },
                    multiplicity: g.len(),
                    projection: linalg::projection(&e.vectors, g),
                }
            })
            .collect();
        Self {
            n: h.nrows(),
            spaces,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spaces(&self) -> &[Eigenspace] {
        &self.spaces
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.spaces.iter().map(|s| s.value).collect()
    }

    /// Index of the eigenspace whose eigenvalue is within `tol` of `value`.
    pub fn find(&self, value: f64, tol: f64) -> Option<usize> {
        self.spaces
            .iter()
            .enumerate()
            .filter(|(_, s)| (s.value - value).abs() <= tol)
            .min_by(|x, y| (x.1.value - value).abs().total_cmp(&(y.1.value - value).abs()))
            .map(|(i, _)| i)
    }

    /// `E_λ e_a` for the eigenspace at `index`.
    pub fn project_vertex(&self, index: usize, a: usize) -> Vec<Complex64> {
        self.spaces[index].projection.column(a).iter().copied().collect()
    }

    /// `Σ λ E_λ`.
    pub fn reconstruct(&self) -> CMatrix {
        self.spaces.iter().fold(CMatrix::zeros(self.n, self.n), |acc, s| {
            acc + &s.projection * Complex64::new(s.value, 0.0)
        })
    }

    /// Indices of the eigenspaces in `Λ_a`.
    pub fn support(&self, a: usize) -> Vec<usize> {
        (0..self.spaces.len())
            .filter(|&i| linalg::norm(&self.project_vertex(i, a)) > SUPPORT_TOL)
            .collect()
    }
}

pub fn decompose(h: &HermitianAdjacency) -> SpectralData {
    SpectralData::from_matrix(h.matrix())
}

/// Eigenvalues in `Λ_a`, descending.
pub fn eigenvalue_support(s: &SpectralData, a: usize) -> Vec<f64> {
    s.support(a).into_iter().map(|i| s.spaces[i].value).collect()
}

/// One eigenvalue of the support with `E_λ e_a = phase · E_λ e_b`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupportPhase {
    pub space: usize,
    pub eigenvalue: f64,
    pub exact: Option<ExactCosine>,
    #[serde(with = "crate::format::re_im")]
    pub phase: Complex64,
}

/// Residues `σ_λ ∈ Z_m` with `phase = e^{2πiσ/m}`, grouped into the classes
/// `Λ_ab^k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootOfUnity {
    pub m: u32,
    /// Aligned with the certificate's support.
    pub residues: Vec<u32>,
    /// Class `k` → positions in the support.
    #[serde(with = "class_list")]
    pub partition: BTreeMap<u32, Vec<usize>>,
    pub m_max: u32,
}

/// Serializes a class map as `[{"class": k, "positions": [...]}, ...]`.
mod class_list {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Class {
        class: u32,
        positions: Vec<usize>,
    }

    pub fn serialize<S: Serializer>(map: &BTreeMap<u32, Vec<usize>>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(map.iter().map(|(&class, positions)| Class {
            class,
            positions: positions.clone(),
        }))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<u32, Vec<usize>>, D::Error> {
        Ok(Vec::<Class>::deserialize(d)?
            .into_iter()
            .map(|c| (c.class, c.positions))
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CospectralityCertificate {
    pub a: usize,
    pub b: usize,
    pub support: Vec<SupportPhase>,
    pub root_of_unity: Option<RootOfUnity>,
}

impl CospectralityCertificate {
    /// Eigenvalues in class `k`.
    pub fn class_eigenvalues(&self, k: u32) -> Vec<f64> {
        self.root_of_unity
            .as_ref()
            .and_then(|r| r.partition.get(&k))
            .map(|ix| ix.iter().map(|&i| self.support[i].eigenvalue).collect())
            .unwrap_or_default()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NotCospectral {
    /// `λ` lies in the support of exactly one of the two vertices.
    SupportMismatch { eigenvalue: f64 },
    NormMismatch { eigenvalue: f64, norm_a: f64, norm_b: f64 },
    NotParallel { eigenvalue: f64, residual: f64 },
}

impl fmt::Display for NotCospectral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::SupportMismatch { eigenvalue } => {
                write!(f, "eigenvalue {eigenvalue} is in only one of the two supports")
            }
            Self::NormMismatch {
                eigenvalue,
                norm_a,
                norm_b,
            } => write!(
                f,
                "projections onto eigenvalue {eigenvalue} have norms {norm_a} and {norm_b}"
            ),
            Self::NotParallel {
                eigenvalue,
                residual,
            } => write!(
                f,
                "projections onto eigenvalue {eigenvalue} are not parallel (residual {residual:.3e})"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NotRootOfUnity {
    pub m_max: u32,
    /// Least `m` for which every phase is an m-th root of unity, when one
    /// exists but no residue is coprime to it.
    pub least_fitting: Option<u32>,
}

impl fmt::Display for NotRootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.least_fitting {
            Some(m) => write!(f, "phases are {m}-th roots of unity but none is primitive"),
            None => write!(f, "phases are not m-th roots of unity for any m <= {}", self.m_max),
        }
    }
}

/// Tests `E_λ e_a = α_λ E_λ e_b` with `|α_λ| = 1` on every eigenspace.
pub fn strong_cospectrality(
    s: &SpectralData,
    a: usize,
    b: usize,
) -> Result<CospectralityCertificate, NotCospectral> {
    let mut support = Vec::new();
    for (i, space) in s.spaces.iter().enumerate() {
        let ea = s.project_vertex(i, a);
        let eb = s.project_vertex(i, b);
        let (na, nb) = (linalg::norm(&ea), linalg::norm(&eb));
        if na <= SUPPORT_TOL && nb <= SUPPORT_TOL {
            continue;
        }
        if na <= SUPPORT_TOL || nb <= SUPPORT_TOL {
            return Err(NotCospectral::SupportMismatch {
                eigenvalue: space.value,
            });
        }
        if (na - nb).abs() > PARALLEL_TOL {
            return Err(NotCospectral::NormMismatch {
                eigenvalue: space.value,
                norm_a: na,
                norm_b: nb,
            });
        }
        // reference is the larger projection, ties go to a
        let alpha = if nb > na {
            linalg::inner(&eb, &ea) / (nb * nb)
        } else {
            Complex64::new(na * na, 0.0) / linalg::inner(&ea, &eb)
        };
        let alpha = alpha / alpha.norm();
        let residual = linalg::norm(
            &ea.iter()
                .zip(&eb)
                .map(|(x, y)| x - alpha * y)
                .collect::<Vec<_>>(),
        );
        if residual > PARALLEL_TOL {
            return Err(NotCospectral::NotParallel {
                eigenvalue: space.value,
                residual,
            });
        }
        support.push(SupportPhase {
            space: i,
            eigenvalue: space.value,
            exact: space.exact,
            phase: alpha,
        });
    }
    Ok(CospectralityCertificate {
        a,
        b,
        support,
        root_of_unity: None,
    })
}

/// Finds the least `m ≤ m_max` for which every phase is an m-th root of
/// unity and assembles the classes `Λ_ab^k`. Some residue must be coprime
/// to `m`.
pub fn m_strong_cospectrality(
    cert: &CospectralityCertificate,
    m_max: u32,
) -> Result<RootOfUnity, NotRootOfUnity> {
    for m in 1..=m_max {
        let residues: Option<Vec<u32>> = cert
            .support
            .iter()
            .map(|p| root_residue(p.phase, m))
            .collect();
        let Some(residues) = residues else { continue };
        // any larger fitting m is a multiple of this one, with residues
        // scaled by the same factor, so it cannot be primitive either
        if !residues.iter().any(|&s| (s as u64).gcd(&(m as u64)) == 1) {
            return Err(NotRootOfUnity {
                m_max,
                least_fitting: Some(m),
            });
        }
        let mut partition: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (i, &k) in residues.iter().enumerate() {
            partition.entry(k).or_default().push(i);
        }
        return Ok(RootOfUnity {
            m,
            residues,
            partition,
            m_max,
        });
    }
    Err(NotRootOfUnity {
        m_max,
        least_fitting: None,
    })
}

fn root_residue(phase: Complex64, m: u32) -> Option<u32> {
    let turns = phase.arg() / (2.0 * PI) * m as f64;
    let k = turns.round().rem_euclid(m as f64) as u32;
    let root = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64);
    ((phase - root).norm() <= ROOT_TOL).then_some(k)
}

/// Strong cospectrality followed by root-of-unity detection.
pub fn certify(
    s: &SpectralData,
    a: usize,
    b: usize,
    m_max: u32,
) -> Result<CospectralityCertificate, NotCospectral> {
    let mut cert = strong_cospectrality(s, a, b)?;
    cert.root_of_unity = m_strong_cospectrality(&cert, m_max).ok();
    Ok(cert)
}
