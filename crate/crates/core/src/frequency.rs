//! Lower/upper frequency intervals.
//!
//! With `w⁺` positive and `w` total weight of evidence,
//!
//! ```text
//! l = w⁺ / (w + k)        u = (w⁺ + k) / (w + k)
//! ```
//!
//! bound the frequency of positive evidence after a further `k` units of
//! evidence arrive (`k = 1` unless a [`Horizon`] says otherwise). The
//! width `u - l = k / (w + k)` measures ignorance and shrinks to zero only
//! with infinite evidence, where the interval becomes a point.

use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::binary_frame::BeliefInterval;
use crate::error::{EvidenceError, Result};
use crate::evidence_scale::{
    belief_from_weights, delta_limit, weights_from_belief, EvidenceWeights,
};

/// Tolerance under which two points count as the same judgment.
pub const POINT_EQUALITY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", try_from = "RawFrequency")]
pub enum FrequencyInterval {
    /// Finite evidence: `l < u`.
    Interval { l: f64, u: f64 },
    /// Infinite evidence: the interval has collapsed onto a probability.
    Point { value: f64 },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawFrequency {
    Interval { l: f64, u: f64 },
    Point { value: f64 },
}

impl TryFrom<RawFrequency> for FrequencyInterval {
    type Error = EvidenceError;

    fn try_from(raw: RawFrequency) -> Result<Self> {
        match raw {
            RawFrequency::Interval { l, u } => FrequencyInterval::new(l, u),
            RawFrequency::Point { value } => FrequencyInterval::point(value),
        }
    }
}

impl FrequencyInterval {
    pub const IGNORANT: FrequencyInterval = FrequencyInterval::Interval { l: 0.0, u: 1.0 };

    /// `l == u` yields a point.
    pub fn new(l: f64, u: f64) -> Result<Self> {
        if !(l.is_finite() && u.is_finite() && 0.0 <= l && l <= u && u <= 1.0) {
            return Err(EvidenceError::invalid(
                "frequency interval",
                format!("need 0 <= l <= u <= 1, got ({l}, {u})"),
            ));
        }
        if l == u {
            Ok(FrequencyInterval::Point { value: l })
        } else {
            Ok(FrequencyInterval::Interval { l, u })
        }
    }

    pub fn point(value: f64) -> Result<Self> {
        if !(value.is_finite() && (0.0..=1.0).contains(&value)) {
            return Err(EvidenceError::invalid(
                "frequency point",
                format!("{value} is outside [0, 1]"),
            ));
        }
        Ok(FrequencyInterval::Point { value })
    }

    pub fn lower(&self) -> f64 {
        match *self {
            FrequencyInterval::Interval { l, .. } => l,
            FrequencyInterval::Point { value } => value,
        }
    }

    pub fn upper(&self) -> f64 {
        match *self {
            FrequencyInterval::Interval { u, .. } => u,
            FrequencyInterval::Point { value } => value,
        }
    }

    pub fn is_point(&self) -> bool {
        matches!(self, FrequencyInterval::Point { .. })
    }
}

impl fmt::Display for FrequencyInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrequencyInterval::Interval { l, u } => write!(f, "[{l}, {u}]"),
            FrequencyInterval::Point { value } => write!(f, "[{value}]"),
        }
    }
}

/// Accumulated positive and total weight of evidence. Weights need not
/// be integers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCounts")]
pub struct EvidenceCounts {
    w_plus: f64,
    w_total: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCounts {
    w_plus: f64,
    w_total: f64,
}

impl TryFrom<RawCounts> for EvidenceCounts {
    type Error = EvidenceError;

    fn try_from(raw: RawCounts) -> Result<Self> {
        EvidenceCounts::new(raw.w_plus, raw.w_total)
    }
}

impl EvidenceCounts {
    pub const ZERO: EvidenceCounts = EvidenceCounts {
        w_plus: 0.0,
        w_total: 0.0,
    };

    pub fn new(w_plus: f64, w_total: f64) -> Result<Self> {
        if !(w_plus.is_finite() && w_total.is_finite() && 0.0 <= w_plus && w_plus <= w_total) {
            return Err(EvidenceError::invalid(
                "evidence counts",
                format!("need 0 <= w_plus <= w_total < inf, got ({w_plus}, {w_total})"),
            ));
        }
        Ok(EvidenceCounts { w_plus, w_total })
    }

    pub fn w_plus(&self) -> f64 {
        self.w_plus
    }

    pub fn w_total(&self) -> f64 {
        self.w_total
    }

    pub fn w_minus(&self) -> f64 {
        self.w_total - self.w_plus
    }

    pub fn pooled(&self, other: &EvidenceCounts) -> EvidenceCounts {
        EvidenceCounts {
            w_plus: self.w_plus + other.w_plus,
            w_total: self.w_total + other.w_total,
        }
    }

    pub fn to_weights(&self) -> EvidenceWeights {
        EvidenceWeights::Finite {
            w_plus: self.w_plus,
            w_minus: self.w_minus(),
        }
    }

    /// Fails for infinite weights, which have no finite counts.
    pub fn from_weights(w: &EvidenceWeights) -> Result<Self> {
        match *w {
            EvidenceWeights::Finite { w_plus, w_minus } => Self::new(w_plus, w_plus + w_minus),
            EvidenceWeights::Infinite { .. } => Err(EvidenceError::InfiniteEvidence {
                op: "counts from weights",
            }),
        }
    }
}

/// The evidential horizon `k` in `l = w⁺/(w+k)`, `u = (w⁺+k)/(w+k)`.
/// Combination of intervals does not depend on it; the mappings to and
/// from weights do.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Horizon(f64);

impl Horizon {
    pub const UNIT: Horizon = Horizon(1.0);

    pub fn new(k: f64) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(EvidenceError::invalid(
                "horizon",
                format!("{k} must be finite and strictly positive"),
            ));
        }
        Ok(Horizon(k))
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn interval_from_counts(self, c: &EvidenceCounts) -> FrequencyInterval {
        let k = self.0;
        let denom = c.w_total + k;
        FrequencyInterval::Interval {
            l: c.w_plus / denom,
            u: (c.w_plus + k) / denom,
        }
    }

    pub fn counts_from_interval(self, fi: &FrequencyInterval) -> Result<EvidenceCounts> {
        let (l, u) = match *fi {
            FrequencyInterval::Interval { l, u } => (l, u),
            FrequencyInterval::Point { .. } => {
                return Err(EvidenceError::InfiniteEvidence {
                    op: "counts_from_interval",
                })
            }
        };
        let k = self.0;
        let i = u - l;
        let w_total = k * (1.0 - i) / i;
        let w_plus = (k * l / i).min(w_total);
        EvidenceCounts::new(w_plus, w_total)
    }

    pub fn lu_from_belpl(self, iv: &BeliefInterval) -> FrequencyInterval {
        match weights_from_belief(iv) {
            EvidenceWeights::Finite { w_plus, w_minus } => {
                self.interval_from_counts(&EvidenceCounts {
                    w_plus,
                    w_total: w_plus + w_minus,
                })
            }
            EvidenceWeights::Infinite { delta } => FrequencyInterval::Point {
                value: delta_limit(delta),
            },
        }
    }

    pub fn belpl_from_lu(self, fi: &FrequencyInterval) -> Result<BeliefInterval> {
        if fi.is_point() {
            return Err(EvidenceError::InfiniteEvidence {
                op: "belpl_from_lu",
            });
        }
        let counts = self.counts_from_interval(fi)?;
        Ok(belief_from_weights(&counts.to_weights()))
    }
}

impl Default for Horizon {
    fn default() -> Self {
        Self::UNIT
    }
}

pub fn interval_from_counts(c: &EvidenceCounts) -> FrequencyInterval {
    Horizon::UNIT.interval_from_counts(c)
}

/// Recovers `w⁺ = l/i` and `w = (1 - i)/i` with `i = u - l`.
pub fn counts_from_interval(fi: &FrequencyInterval) -> Result<EvidenceCounts> {
    Horizon::UNIT.counts_from_interval(fi)
}

/// Frequency `w⁺/w`, read off the bounds as `l / (l + 1 - u)`.
pub fn frequency(fi: &FrequencyInterval) -> Result<f64> {
    match *fi {
        FrequencyInterval::Interval { l, u } => {
            if l == 0.0 && u == 1.0 {
                return Err(EvidenceError::UndefinedFrequency);
            }
            Ok(l / (l + (1.0 - u)))
        }
        FrequencyInterval::Point { value } => Ok(value),
    }
}

/// Interval width `u - l`.
pub fn ignorance(fi: &FrequencyInterval) -> f64 {
    match *fi {
        FrequencyInterval::Interval { l, u } => u - l,
        FrequencyInterval::Point { .. } => 0.0,
    }
}

/// Combination of two finite-evidence intervals:
///
/// ```text
/// l = (l1 i2 + l2 i1)         / (i1 + i2 - i1 i2)
/// u = (l1 i2 + l2 i1 + i1 i2) / (i1 + i2 - i1 i2)
/// ```
///
/// Equivalent to adding the underlying evidence counts.
pub fn combine_lu(f1: &FrequencyInterval, f2: &FrequencyInterval) -> Result<FrequencyInterval> {
    let (
        FrequencyInterval::Interval { l: l1, u: u1 },
        FrequencyInterval::Interval { l: l2, u: u2 },
    ) = (*f1, *f2)
    else {
        return Err(EvidenceError::InfiniteEvidence { op: "combine_lu" });
    };
    if *f1 == FrequencyInterval::IGNORANT {
        return Ok(*f2);
    }
    if *f2 == FrequencyInterval::IGNORANT {
        return Ok(*f1);
    }
    let (i1, i2) = (u1 - l1, u2 - l2);
    let denom = i1 + i2 * (1.0 - i1);
    let lower = l1 * i2 + l2 * i1;
    let l = lower / denom;
    let u = ((lower + i1 * i2) / denom).min(1.0);
    FrequencyInterval::new(l.min(u), u)
}

/// A point absorbs finite evidence unchanged.
pub fn combine_with_point(
    point: &FrequencyInterval,
    other: &FrequencyInterval,
) -> Result<FrequencyInterval> {
    if !point.is_point() {
        return Err(EvidenceError::invalid(
            "combine_with_point",
            format!("{point} is not a point"),
        ));
    }
    if other.is_point() {
        return Err(EvidenceError::invalid(
            "combine_with_point",
            format!("{other} is a point; use combine_points"),
        ));
    }
    Ok(*point)
}

/// Two infinite-evidence judgments that disagree. They are reported, not
/// combined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConflictReport {
    pub first: f64,
    pub second: f64,
}

impl Serialize for ConflictReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            conflict: [f64; 2],
        }
        Wire {
            conflict: [self.first, self.second],
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConflictReport {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Wire {
            conflict: [f64; 2],
        }
        let w = Wire::deserialize(d)?;
        Ok(ConflictReport {
            first: w.conflict[0],
            second: w.conflict[1],
        })
    }
}

impl fmt::Display for ConflictReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "conflicting conventions {} and {}",
            self.first, self.second
        )
    }
}

/// Result of combining two frequency intervals of any kind.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Combination {
    Combined(FrequencyInterval),
    Conflict(ConflictReport),
}

/// Two points either deduplicate (equal within
/// [`POINT_EQUALITY_TOLERANCE`]) or produce a [`ConflictReport`].
pub fn combine_points(p1: &FrequencyInterval, p2: &FrequencyInterval) -> Result<Combination> {
    let (FrequencyInterval::Point { value: a }, FrequencyInterval::Point { value: b }) = (*p1, *p2)
    else {
        return Err(EvidenceError::invalid(
            "combine_points",
            format!("both arguments must be points, got {p1} and {p2}"),
        ));
    };
    if (a - b).abs() <= POINT_EQUALITY_TOLERANCE {
        Ok(Combination::Combined(*p1))
    } else {
        Ok(Combination::Conflict(ConflictReport {
            first: a,
            second: b,
        }))
    }
}

/// Dispatches on the kinds of both arguments.
pub fn combine_frequency(f1: &FrequencyInterval, f2: &FrequencyInterval) -> Combination {
    let result = match (f1.is_point(), f2.is_point()) {
        (false, false) => combine_lu(f1, f2).map(Combination::Combined),
        (true, false) => combine_with_point(f1, f2).map(Combination::Combined),
        (false, true) => combine_with_point(f2, f1).map(Combination::Combined),
        (true, true) => combine_points(f1, f2),
    };
    result.expect("argument kinds checked above")
}

pub fn lu_from_belpl(iv: &BeliefInterval) -> FrequencyInterval {
    Horizon::UNIT.lu_from_belpl(iv)
}

pub fn belpl_from_lu(fi: &FrequencyInterval) -> Result<BeliefInterval> {
    Horizon::UNIT.belpl_from_lu(fi)
}
