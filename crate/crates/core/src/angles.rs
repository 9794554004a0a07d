//! Exact arithmetic for angles `θ = arccos(λ)` whose cosine squared is
//! rational: square-free parts, geodetic classification and certificates of
//! linear independence over the rationals.
//!
//! `tan θ` is a rational multiple of `sqrt(Δ)` where `Δ` is the square-free
//! part of `(q - p)·p` for `λ² = p/q`. Two angles whose tangents lie in
//! different classes cannot take part in a common rational relation modulo
//! `π`, and an angle whose tangent is outside `{0, ±1/√3, ±1, ±√3}` is not a
//! rational multiple of `π`. These two facts are the only inputs to
//! [`independence_certificate`]; no floating point enters the decision.

use std::fmt;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest denominator accepted when snapping floats to rationals.
pub const SNAP_MAX_DENOMINATOR: i64 = 1_000_000;
/// Distance within which a float is snapped.
pub const SNAP_TOL: f64 = 1e-9;

/// Largest square-free `d` dividing `n` with `n / d` a perfect square.
pub fn squarefree_part(n: u64) -> u64 {
    assert!(n >= 1, "square-free part of zero is undefined");
    let mut rest = n;
    let mut part = 1;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            if e % 2 == 1 {
                part *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    part * rest
}

pub fn is_perfect_square(n: u64) -> bool {
    let r = (n as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).any(|k| k.checked_mul(k) == Some(n))
}

/// Best rational approximation of `x` by continued fractions: the first
/// convergent within `tol` of `x` whose denominator is at most `max_den`.
pub fn snap_rational(x: f64, max_den: i64, tol: f64) -> Option<Rational64> {
    if !x.is_finite() || x.abs() > 1e12 {
        return None;
    }
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let ai = a as i64;
        let h = ai.checked_mul(h1)?.checked_add(h0)?;
        let k = ai.checked_mul(k1)?.checked_add(k0)?;
        if k > max_den {
            return None;
        }
        if (x - h as f64 / k as f64).abs() <= tol {
            return Some(Rational64::new(h, k));
        }
        let frac = r - a;
        if frac <= 0.0 {
            return None;
        }
        r = 1.0 / frac;
        (h0, h1) = (h1, h);
        (k0, k1) = (k1, k);
    }
    None
}

/// Exact cosine `λ = ±sqrt(square)` with `square ∈ [0, 1]` rational.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExactCosine {
    pub negative: bool,
    pub square: Rational64,
}

impl ExactCosine {
    pub fn from_rational(r: Rational64) -> Self {
        Self {
            negative: r.is_negative(),
            square: r * r,
        }
    }

    /// `λ` itself when it is rational.
    pub fn as_rational(&self) -> Option<Rational64> {
        let (p, q) = (*self.square.numer() as u64, *self.square.denom() as u64);
        if is_perfect_square(p) && is_perfect_square(q) {
            let root = Rational64::new(isqrt(p) as i64, isqrt(q) as i64);
            Some(if self.negative { -root } else { root })
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        let v = (*self.square.numer() as f64 / *self.square.denom() as f64).sqrt();
        if self.negative {
            -v
        } else {
            v
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            negative: false,
            square: self.square,
        }
    }
}

impl fmt::Display for ExactCosine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negative { "-" } else { "" };
        match self.as_rational() {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "{sign}sqrt({})", self.square),
        }
    }
}

fn isqrt(n: u64) -> u64 {
    let r = (n as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).rev().find(|k| k * k <= n).unwrap_or(0)
}

/// Snaps a float cosine to an exact value, either a rational `λ` or the
/// signed square root of a rational `λ²`. When both fit, the one with the
/// smaller denominator on the squared scale wins, so that `sqrt(13)/5` is
/// not mistaken for a rational with a five-digit denominator.
pub fn snap_cosine(x: f64) -> Option<ExactCosine> {
    let one = Rational64::from(1);
    let linear = snap_rational(x, SNAP_MAX_DENOMINATOR, SNAP_TOL)
        .filter(|r| r.abs() <= one)
        .map(ExactCosine::from_rational);
    let squared = snap_rational(x * x, SNAP_MAX_DENOMINATOR, SNAP_TOL)
        .filter(|s| !s.is_negative() && *s <= one)
        .map(|square| ExactCosine {
            negative: x < 0.0,
            square,
        });
    match (linear, squared) {
        (Some(l), Some(s)) if s.square.denom() < l.square.denom() => Some(s),
        (Some(l), _) => Some(l),
        (None, s) => s,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AngleKind {
    Zero,
    Pi,
    HalfPi,
    /// `tan θ ∈ {±1/√3, ±1, ±√3}`; `θ = pi_multiple · π`.
    SpecialTangent { pi_multiple: Rational64 },
    /// `tan θ` is a nonzero rational multiple of `sqrt(class)` and `θ` is not
    /// a rational multiple of `π`.
    Surd { class: u64, rational_tangent: bool },
    /// The cosine could not be made exact.
    Unresolved,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymbolicAngle {
    pub cosine: Option<ExactCosine>,
    pub approx_cosine: f64,
    pub kind: AngleKind,
}

impl SymbolicAngle {
    pub fn theta(&self) -> f64 {
        self.approx_cosine.clamp(-1.0, 1.0).acos()
    }

    /// `θ / π` when it is rational.
    pub fn pi_multiple(&self) -> Option<Rational64> {
        match self.kind {
            AngleKind::Zero => Some(Rational64::zero()),
            AngleKind::Pi => Some(Rational64::from(1)),
            AngleKind::HalfPi => Some(Rational64::new(1, 2)),
            AngleKind::SpecialTangent { pi_multiple } => Some(pi_multiple),
            _ => None,
        }
    }

    pub fn class(&self) -> Option<u64> {
        match self.kind {
            AngleKind::Surd { class, .. } => Some(class),
            _ => None,
        }
    }

    pub fn unresolved(x: f64) -> Self {
        Self {
            cosine: None,
            approx_cosine: x,
            kind: AngleKind::Unresolved,
        }
    }
}

/// Classifies `arccos(λ)` for rational `λ ∈ [-1, 1]`.
pub fn classify_angle(lambda: Rational64) -> Result<SymbolicAngle> {
    if lambda.abs() > Rational64::from(1) {
        return Err(Error::CosineOutOfRange(
            *lambda.numer() as f64 / *lambda.denom() as f64,
        ));
    }
    classify_cosine(ExactCosine::from_rational(lambda))
}

/// Classifies `arccos(λ)` for `λ = ±sqrt(square)`.
pub fn classify_cosine(c: ExactCosine) -> Result<SymbolicAngle> {
    let one = Rational64::from(1);
    if c.square.is_negative() || c.square > one {
        return Err(Error::CosineOutOfRange(c.to_f64()));
    }
    let kind = if c.square == one {
        if c.negative {
            AngleKind::Pi
        } else {
            AngleKind::Zero
        }
    } else if c.square.is_zero() {
        AngleKind::HalfPi
    } else if let Some(base) = special_multiple(c.square) {
        let pi_multiple = if c.negative { one - base } else { base };
        AngleKind::SpecialTangent { pi_multiple }
    } else {
        let p = *c.square.numer() as u64;
        let q = *c.square.denom() as u64;
        let t2 = (q - p) * p;
        AngleKind::Surd {
            class: squarefree_part(t2),
            rational_tangent: is_perfect_square(t2),
        }
    };
    Ok(SymbolicAngle {
        cosine: Some(c),
        approx_cosine: c.to_f64(),
        kind,
    })
}

// cos² ∈ {3/4, 1/2, 1/4} ↔ θ ∈ {π/6, π/4, π/3} for positive cosine
fn special_multiple(square: Rational64) -> Option<Rational64> {
    [(3, 4, 6), (1, 2, 4), (1, 4, 3)]
        .into_iter()
        .find(|&(p, q, _)| square == Rational64::new(p, q))
        .map(|(_, _, d)| Rational64::new(1, d))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum IndependenceStatus {
    /// `π` and the angles are linearly independent over `Q`.
    Independent,
    /// The angle at `index` is a rational multiple of `π`.
    SpecialTangent { index: usize },
    /// Two angles share a tangent class.
    SharedClass { first: usize, second: usize, class: u64 },
    /// The angle at `index` has no exact cosine.
    Undecided { index: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndependenceCertificate {
    pub angles: Vec<SymbolicAngle>,
    pub status: IndependenceStatus,
}

impl IndependenceCertificate {
    pub fn is_independent(&self) -> bool {
        self.status == IndependenceStatus::Independent
    }
}

/// Certifies that `{π} ∪ angles` is linearly independent over the rationals
/// when every angle is a surd with pairwise distinct tangent classes. Any
/// other input yields the first obstruction found; this never asserts a
/// dependence.
pub fn independence_certificate(angles: &[SymbolicAngle]) -> IndependenceCertificate {
    let status = (|| {
        for (index, a) in angles.iter().enumerate() {
            match a.kind {
                AngleKind::Unresolved => return IndependenceStatus::Undecided { index },
                AngleKind::Surd { .. } => {}
                _ => return IndependenceStatus::SpecialTangent { index },
            }
        }
        for (i, a) in angles.iter().enumerate() {
            for (j, b) in angles.iter().enumerate().skip(i + 1) {
                if a.class() == b.class() {
                    return IndependenceStatus::SharedClass {
                        first: i,
                        second: j,
                        class: a.class().unwrap_or_default(),
                    };
                }
            }
        }
        IndependenceStatus::Independent
    })();
    IndependenceCertificate {
        angles: angles.to_vec(),
        status,
    }
}
