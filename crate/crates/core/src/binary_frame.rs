//! Value types for the two-element frame of discernment `Θ = {H, ¬H}`.
//!
//! On this frame a basic probability assignment has three free masses
//! (`{H}`, `{¬H}`, `Θ`; the empty set always carries zero), and the pair
//! `⟨Bel({H}), Pl({H})⟩` carries the same information. Both forms are
//! provided as separate types with lossless conversions between them.
//!
//! [`BeliefInterval`] keeps the two complements `pl - bel` and `1 - pl`
//! alongside `bel` and `pl`. When a belief is built from masses or from
//! weights of evidence those complements are known exactly even where
//! `pl - bel` would cancel catastrophically in floating point, which is
//! what keeps the weight scale invertible near `bel ≈ pl`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{EvidenceError, Result};

/// Tolerance on the sum-to-one constraint of a mass assignment.
pub const MASS_SUM_TOLERANCE: f64 = 1e-12;

/// Basic probability assignment on `{∅, {H}, {¬H}, Θ}` with `m(∅) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMass")]
pub struct MassAssignment {
    m_h: f64,
    m_not_h: f64,
    m_theta: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMass {
    m_h: f64,
    m_not_h: f64,
    m_theta: f64,
}

impl TryFrom<RawMass> for MassAssignment {
    type Error = EvidenceError;

    fn try_from(raw: RawMass) -> Result<Self> {
        MassAssignment::new(raw.m_h, raw.m_not_h, raw.m_theta)
    }
}

impl MassAssignment {
    /// The vacuous assignment: all mass on `Θ`.
    pub const VACUOUS: MassAssignment = MassAssignment {
        m_h: 0.0,
        m_not_h: 0.0,
        m_theta: 1.0,
    };

    /// Validates and, when the sum is within [`MASS_SUM_TOLERANCE`] of one,
    /// renormalises by the actual sum.
    pub fn new(m_h: f64, m_not_h: f64, m_theta: f64) -> Result<Self> {
        for (name, v) in [("m_h", m_h), ("m_not_h", m_not_h), ("m_theta", m_theta)] {
            if !v.is_finite() || !(0.0..=1.0).contains(&v) {
                return Err(EvidenceError::invalid(
                    "mass assignment",
                    format!("{name} = {v} is outside [0, 1]"),
                ));
            }
        }
        let sum = m_h + m_not_h + m_theta;
        if (sum - 1.0).abs() > MASS_SUM_TOLERANCE {
            return Err(EvidenceError::invalid(
                "mass assignment",
                format!("masses sum to {sum}, expected 1"),
            ));
        }
        if sum == 1.0 {
            Ok(MassAssignment {
                m_h,
                m_not_h,
                m_theta,
            })
        } else {
            Ok(MassAssignment {
                m_h: m_h / sum,
                m_not_h: m_not_h / sum,
                m_theta: m_theta / sum,
            })
        }
    }

    /// Builds an assignment from nonnegative components that are known to be
    /// proportional to a valid assignment (results of the combination
    /// formulas). Rounding residue below zero is clamped.
    pub(crate) fn from_proportional(m_h: f64, m_not_h: f64, m_theta: f64) -> Self {
        let (a, b, c) = (m_h.max(0.0), m_not_h.max(0.0), m_theta.max(0.0));
        let sum = a + b + c;
        debug_assert!(
            sum > 0.0 && sum.is_finite(),
            "degenerate proportional masses"
        );
        MassAssignment {
            m_h: a / sum,
            m_not_h: b / sum,
            m_theta: c / sum,
        }
    }

    /// Simple support function with support `s` on `{H}`.
    pub fn support_for(s: f64) -> Result<Self> {
        Self::new(s, 0.0, 1.0 - s)
    }

    /// Simple support function with support `s` on `{¬H}`.
    pub fn support_against(s: f64) -> Result<Self> {
        Self::new(0.0, s, 1.0 - s)
    }

    pub fn m_h(&self) -> f64 {
        self.m_h
    }

    pub fn m_not_h(&self) -> f64 {
        self.m_not_h
    }

    pub fn m_theta(&self) -> f64 {
        self.m_theta
    }
}

impl Default for MassAssignment {
    fn default() -> Self {
        Self::VACUOUS
    }
}

impl fmt::Display for MassAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m(H)={}, m(~H)={}, m(Theta)={}",
            self.m_h, self.m_not_h, self.m_theta
        )
    }
}

/// The pair `⟨Bel({H}), Pl({H})⟩` with `0 ≤ bel ≤ pl ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawInterval", into = "RawInterval")]
pub struct BeliefInterval {
    bel: f64,
    pl: f64,
    /// `pl - bel`, i.e. `m(Θ)`.
    width: f64,
    /// `1 - pl`, i.e. `m({¬H})`.
    disbelief: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInterval {
    bel: f64,
    pl: f64,
}

impl TryFrom<RawInterval> for BeliefInterval {
    type Error = EvidenceError;

    fn try_from(raw: RawInterval) -> Result<Self> {
        BeliefInterval::new(raw.bel, raw.pl)
    }
}

impl From<BeliefInterval> for RawInterval {
    fn from(iv: BeliefInterval) -> Self {
        RawInterval {
            bel: iv.bel,
            pl: iv.pl,
        }
    }
}

impl BeliefInterval {
    pub const VACUOUS: BeliefInterval = BeliefInterval {
        bel: 0.0,
        pl: 1.0,
        width: 1.0,
        disbelief: 0.0,
    };

    pub fn new(bel: f64, pl: f64) -> Result<Self> {
        if !bel.is_finite() || !pl.is_finite() {
            return Err(EvidenceError::invalid(
                "belief interval",
                format!("non-finite bound in ({bel}, {pl})"),
            ));
        }
        if !(0.0 <= bel && bel <= pl && pl <= 1.0) {
            return Err(EvidenceError::invalid(
                "belief interval",
                format!("need 0 <= bel <= pl <= 1, got ({bel}, {pl})"),
            ));
        }
        Ok(BeliefInterval {
            bel,
            pl,
            width: pl - bel,
            disbelief: 1.0 - pl,
        })
    }

    /// A Bayesian (sharp) belief: `bel = pl = b`.
    pub fn bayesian(b: f64) -> Result<Self> {
        Self::new(b, b)
    }

    /// Builds an interval from nonnegative coordinates proportional to
    /// `(bel, pl - bel, 1 - pl)`.
    pub(crate) fn from_proportional(bel: f64, width: f64, disbelief: f64) -> Self {
        let m = MassAssignment::from_proportional(bel, disbelief, width);
        mass_to_interval(&m)
    }

    pub fn bel(&self) -> f64 {
        self.bel
    }

    pub fn pl(&self) -> f64 {
        self.pl
    }

    /// `pl - bel`, the mass left on `Θ`.
    pub fn width(&self) -> f64 {
        self.width
    }

    /// `1 - pl`, the belief committed to `¬H`.
    pub fn disbelief(&self) -> f64 {
        self.disbelief
    }

    pub fn is_bayesian(&self) -> bool {
        self.width == 0.0
    }

    pub fn is_vacuous(&self) -> bool {
        self.bel == 0.0 && self.disbelief == 0.0
    }
}

impl Default for BeliefInterval {
    fn default() -> Self {
        Self::VACUOUS
    }
}

impl fmt::Display for BeliefInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.bel, self.pl)
    }
}

/// `Bel({H}) = m({H})`, `Pl({H}) = 1 - m({¬H})`.
pub fn mass_to_interval(m: &MassAssignment) -> BeliefInterval {
    // max() only matters when m_h + m_not_h rounds above one.
    BeliefInterval {
        bel: m.m_h,
        pl: (1.0 - m.m_not_h).max(m.m_h),
        width: m.m_theta,
        disbelief: m.m_not_h,
    }
}

/// Inverse of [`mass_to_interval`]: `m({H}) = bel`, `m({¬H}) = 1 - pl`,
/// `m(Θ) = pl - bel`.
pub fn interval_to_mass(iv: &BeliefInterval) -> MassAssignment {
    MassAssignment {
        m_h: iv.bel,
        m_not_h: iv.disbelief,
        m_theta: iv.width,
    }
}

impl From<MassAssignment> for BeliefInterval {
    fn from(m: MassAssignment) -> Self {
        mass_to_interval(&m)
    }
}

impl From<BeliefInterval> for MassAssignment {
    fn from(iv: BeliefInterval) -> Self {
        interval_to_mass(&iv)
    }
}
