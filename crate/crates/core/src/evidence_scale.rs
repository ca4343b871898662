//! Weight of evidence and its relation to belief.
//!
//! Positive and negative weights `(w⁺, w⁻)` add when distinct bodies of
//! evidence are pooled. Mapping them to `⟨bel, pl⟩` through
//!
//! ```text
//! bel = (e^w⁺ - 1) / (e^w⁺ + e^w⁻ - 1)
//! pl  =  e^w⁺      / (e^w⁺ + e^w⁻ - 1)
//! ```
//!
//! turns that addition into Dempster's rule. Infinite evidence is carried
//! as an explicit variant holding the limit `Δ` of `w⁻ - w⁺`, since the
//! resulting Bayesian belief `1 / (1 + e^Δ)` depends on it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::binary_frame::BeliefInterval;
use crate::error::{EvidenceError, Result};

/// Tolerance for the tie case of [`classify_limit`].
pub const LIMIT_TIE_TOLERANCE: f64 = 1e-12;

/// Weights of positive and negative evidence for `H`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", try_from = "RawWeights")]
pub enum EvidenceWeights {
    Finite {
        w_plus: f64,
        w_minus: f64,
    },
    /// Unbounded evidence where `w⁻ - w⁺ → delta`. `delta = ±∞` encodes
    /// the certain beliefs 0 and 1.
    Infinite {
        #[serde(with = "extended_real")]
        delta: f64,
    },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawWeights {
    Finite {
        w_plus: f64,
        w_minus: f64,
    },
    Infinite {
        #[serde(with = "extended_real")]
        delta: f64,
    },
}

impl TryFrom<RawWeights> for EvidenceWeights {
    type Error = EvidenceError;

    fn try_from(raw: RawWeights) -> Result<Self> {
        match raw {
            RawWeights::Finite { w_plus, w_minus } => EvidenceWeights::finite(w_plus, w_minus),
            RawWeights::Infinite { delta } => EvidenceWeights::infinite(delta),
        }
    }
}

impl EvidenceWeights {
    pub const ZERO: EvidenceWeights = EvidenceWeights::Finite {
        w_plus: 0.0,
        w_minus: 0.0,
    };

    pub fn finite(w_plus: f64, w_minus: f64) -> Result<Self> {
        for (name, w) in [("w_plus", w_plus), ("w_minus", w_minus)] {
            if !w.is_finite() || w < 0.0 {
                return Err(EvidenceError::invalid(
                    "evidence weights",
                    format!("{name} = {w} must be a finite nonnegative number"),
                ));
            }
        }
        Ok(EvidenceWeights::Finite { w_plus, w_minus })
    }

    pub fn infinite(delta: f64) -> Result<Self> {
        if delta.is_nan() {
            return Err(EvidenceError::invalid("evidence weights", "delta is NaN"));
        }
        Ok(EvidenceWeights::Infinite { delta })
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, EvidenceWeights::Finite { .. })
    }

    /// Total weight `w⁺ + w⁻`; infinite for the limit variant.
    pub fn total(&self) -> f64 {
        match *self {
            EvidenceWeights::Finite { w_plus, w_minus } => w_plus + w_minus,
            EvidenceWeights::Infinite { .. } => f64::INFINITY,
        }
    }
}

impl fmt::Display for EvidenceWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvidenceWeights::Finite { w_plus, w_minus } => write!(f, "(w+={w_plus}, w-={w_minus})"),
            EvidenceWeights::Infinite { delta } => write!(f, "(infinite, delta={delta})"),
        }
    }
}

/// `±∞` as the strings `"inf"` / `"-inf"`; finite values as JSON numbers.
pub(crate) mod extended_real {
    use serde::de::{self, Visitor};
    use serde::{Deserializer, Serializer};
    use std::fmt;

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_infinite() {
            s.serialize_str(if *v > 0.0 { "inf" } else { "-inf" })
        } else {
            s.serialize_f64(*v)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        struct ExtendedReal;

        impl Visitor<'_> for ExtendedReal {
            type Value = f64;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or one of \"inf\", \"-inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<f64, E> {
                Ok(v)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<f64, E> {
                Ok(v as f64)
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<f64, E> {
                Ok(v as f64)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<f64, E> {
                match v.to_ascii_lowercase().as_str() {
                    "inf" | "+inf" | "infinity" | "+infinity" => Ok(f64::INFINITY),
                    "-inf" | "-infinity" => Ok(f64::NEG_INFINITY),
                    _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
                }
            }
        }

        d.deserialize_any(ExtendedReal)
    }
}

/// Weight carried by a single positive or negative outcome.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitWeights {
    w0_plus: f64,
    w0_minus: f64,
}

impl UnitWeights {
    pub const UNIT: UnitWeights = UnitWeights {
        w0_plus: 1.0,
        w0_minus: 1.0,
    };

    pub fn new(w0_plus: f64, w0_minus: f64) -> Result<Self> {
        for (name, w) in [("w0_plus", w0_plus), ("w0_minus", w0_minus)] {
            if !(w.is_finite() && w > 0.0) {
                return Err(EvidenceError::invalid(
                    "unit weights",
                    format!("{name} = {w} must be finite and strictly positive"),
                ));
            }
        }
        Ok(UnitWeights { w0_plus, w0_minus })
    }

    pub fn w0_plus(&self) -> f64 {
        self.w0_plus
    }

    pub fn w0_minus(&self) -> f64 {
        self.w0_minus
    }
}

impl Default for UnitWeights {
    fn default() -> Self {
        Self::UNIT
    }
}

/// Degree of support of a simple support function of weight `w`: `1 - e^-w`.
pub fn support_from_weight(w: f64) -> Result<f64> {
    if !(w.is_finite() && w >= 0.0) {
        return Err(EvidenceError::domain(
            "support_from_weight",
            format!("weight {w} must be finite and nonnegative"),
        ));
    }
    Ok(-(-w).exp_m1())
}

/// `(e^w - 1) · e^-m` for `0 ≤ w ≤ m`, without overflow or cancellation.
fn scaled_expm1(w: f64, m: f64) -> f64 {
    (w - m).exp() * -(-w).exp_m1()
}

/// Maps weights to `⟨bel, pl⟩`. Every term is scaled by `e^-max(w⁺, w⁻)`,
/// so arbitrarily large finite weights are evaluated without overflow.
pub fn belief_from_weights(w: &EvidenceWeights) -> BeliefInterval {
    match *w {
        EvidenceWeights::Finite { w_plus, w_minus } => {
            let m = w_plus.max(w_minus);
            // Numerators of bel, pl - bel and 1 - pl; they sum to the
            // (scaled) denominator e^w⁺ + e^w⁻ - 1.
            let bel = scaled_expm1(w_plus, m);
            let width = (-m).exp();
            let disbelief = scaled_expm1(w_minus, m);
            BeliefInterval::from_proportional(bel, width, disbelief)
        }
        EvidenceWeights::Infinite { delta } => {
            let bel = delta_limit(delta);
            let disbelief = delta_limit(-delta);
            BeliefInterval::from_proportional(bel, 0.0, disbelief)
        }
    }
}

/// Inverse of [`belief_from_weights`]:
///
/// ```text
/// w⁺ = ln(pl / (pl - bel))
/// w⁻ = ln((1 - bel) / (pl - bel))
/// ```
///
/// A Bayesian interval `bel = pl = b` yields infinite weights with
/// `Δ = ln((1 - b) / b)`.
pub fn weights_from_belief(iv: &BeliefInterval) -> EvidenceWeights {
    let (bel, width, disbelief) = (iv.bel(), iv.width(), iv.disbelief());
    if width > 0.0 {
        // pl / width = 1 + bel / width and (1 - bel) / width = 1 + disbelief / width.
        let log_ratio = |num: f64| {
            let r = num / width;
            if r.is_finite() {
                r.ln_1p()
            } else {
                num.ln() - width.ln()
            }
        };
        EvidenceWeights::Finite {
            w_plus: log_ratio(bel),
            w_minus: log_ratio(disbelief),
        }
    } else {
        let delta = if bel == 0.0 {
            f64::INFINITY
        } else if disbelief == 0.0 {
            f64::NEG_INFINITY
        } else {
            disbelief.ln() - bel.ln()
        };
        EvidenceWeights::Infinite { delta }
    }
}

/// Pools two finite bodies of evidence by adding their weights.
pub fn add_weights(w1: &EvidenceWeights, w2: &EvidenceWeights) -> Result<EvidenceWeights> {
    match (*w1, *w2) {
        (
            EvidenceWeights::Finite {
                w_plus: p1,
                w_minus: n1,
            },
            EvidenceWeights::Finite {
                w_plus: p2,
                w_minus: n2,
            },
        ) => EvidenceWeights::finite(p1 + p2, n1 + n2),
        _ => Err(EvidenceError::InfiniteEvidence { op: "add_weights" }),
    }
}

/// Combination of two Bayesian beliefs when weights multiply instead of
/// adding: `b1 b2 / (b1 b2 + (1 - b1)(1 - b2))`.
pub fn multiply_combine(b1: f64, b2: f64) -> Result<f64> {
    for b in [b1, b2] {
        if !(b > 0.0 && b < 1.0) {
            return Err(EvidenceError::domain(
                "multiply_combine",
                format!("belief {b} must lie strictly inside (0, 1)"),
            ));
        }
    }
    let agree = b1 * b2;
    Ok(agree / (agree + (1.0 - b1) * (1.0 - b2)))
}

/// Proportion of positive evidence `w⁺ / w` recovered from `⟨b, p⟩`:
///
/// ```text
/// (ln p - ln(p - b)) / (ln p + ln(1 - b) - 2 ln(p - b))
/// ```
pub fn positive_proportion(iv: &BeliefInterval) -> Result<f64> {
    if iv.is_bayesian() {
        return Err(EvidenceError::InfiniteEvidence {
            op: "positive_proportion",
        });
    }
    if iv.is_vacuous() {
        return Err(EvidenceError::domain(
            "positive_proportion",
            "zero total weight of evidence (0/0)",
        ));
    }
    let ln_p = iv.pl().ln();
    let ln_width = iv.width().ln();
    let ln_not_b = (iv.width() + iv.disbelief()).ln();
    Ok((ln_p - ln_width) / (ln_p + ln_not_b - 2.0 * ln_width))
}

/// Limit of `Bel({H})` under unbounded evidence with a positive chance `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LimitClass {
    Zero,
    Half,
    One,
}

impl LimitClass {
    pub fn value(self) -> f64 {
        match self {
            LimitClass::Zero => 0.0,
            LimitClass::Half => 0.5,
            LimitClass::One => 1.0,
        }
    }
}

/// Compares `w0⁺ q` with `w0⁻ (1 - q)`; a tie within
/// [`LIMIT_TIE_TOLERANCE`] gives one half.
pub fn classify_limit(q: f64, unit: &UnitWeights) -> LimitClass {
    let balance = unit.w0_plus() * q - unit.w0_minus() * (1.0 - q);
    if balance.abs() <= LIMIT_TIE_TOLERANCE {
        LimitClass::Half
    } else if balance > 0.0 {
        LimitClass::One
    } else {
        LimitClass::Zero
    }
}

/// Bayesian limit `1 / (1 + e^Δ)` when `w⁻ - w⁺ → Δ`.
pub fn delta_limit(delta: f64) -> f64 {
    if delta >= 0.0 {
        let e = (-delta).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + delta.exp())
    }
}
