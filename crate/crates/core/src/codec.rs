//! JSON entry points and conversions between the four scales.
//!
//! Every parser here accepts arbitrary text and returns an error rather
//! than panicking; values that deserialize are validated against their
//! type invariants.

use serde::Serialize;
use serde_json::Value;

use crate::binary_frame::{mass_to_interval, BeliefInterval, MassAssignment};
use crate::convergence::StreamSpec;
use crate::error::{EvidenceError, Result};
use crate::evidence_scale::{
    belief_from_weights, delta_limit, weights_from_belief, EvidenceWeights,
};
use crate::frequency::{
    counts_from_interval, interval_from_counts, EvidenceCounts, FrequencyInterval,
};

/// Inputs longer than this are rejected before parsing.
pub const MAX_INPUT_BYTES: usize = 1 << 20;

fn guard(text: &str) -> Result<()> {
    if text.len() > MAX_INPUT_BYTES {
        return Err(EvidenceError::Parse(format!(
            "input of {} bytes exceeds the {MAX_INPUT_BYTES}-byte limit",
            text.len()
        )));
    }
    Ok(())
}

pub fn parse_mass(text: &str) -> Result<MassAssignment> {
    guard(text)?;
    Ok(serde_json::from_str(text)?)
}

pub fn parse_belief_interval(text: &str) -> Result<BeliefInterval> {
    guard(text)?;
    Ok(serde_json::from_str(text)?)
}

pub fn parse_weights(text: &str) -> Result<EvidenceWeights> {
    guard(text)?;
    Ok(serde_json::from_str(text)?)
}

pub fn parse_frequency(text: &str) -> Result<FrequencyInterval> {
    guard(text)?;
    Ok(serde_json::from_str(text)?)
}

pub fn parse_counts(text: &str) -> Result<EvidenceCounts> {
    guard(text)?;
    Ok(serde_json::from_str(text)?)
}

pub fn parse_stream_spec(text: &str) -> Result<StreamSpec> {
    guard(text)?;
    Ok(serde_json::from_str(text)?)
}

/// An operand of Dempster's rule: either `{"bel","pl"}` or the mass form.
pub fn belief_from_value(value: &Value) -> Result<BeliefInterval> {
    let is_mass = value.as_object().is_some_and(|o| o.contains_key("m_h"));
    if is_mass {
        let m: MassAssignment = MassAssignment::deserialize_value(value)?;
        Ok(mass_to_interval(&m))
    } else {
        Ok(BeliefInterval::deserialize_value(value)?)
    }
}

trait FromValue: Sized {
    fn deserialize_value(value: &Value) -> Result<Self>;
}

impl<T: serde::de::DeserializeOwned> FromValue for T {
    fn deserialize_value(value: &Value) -> Result<Self> {
        Ok(T::deserialize(value)?)
    }
}

/// Reads a sequence of JSON values. The input is either whitespace-separated
/// values or one top-level array whose elements are taken in order.
pub fn parse_value_list(text: &str) -> Result<Vec<Value>> {
    guard(text)?;
    let values = serde_json::Deserializer::from_str(text)
        .into_iter::<Value>()
        .collect::<std::result::Result<Vec<_>, _>>()?;
    match values.as_slice() {
        [Value::Array(items)] => Ok(items.clone()),
        _ => Ok(values),
    }
}

/// The four representations `convert` moves between.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    BelPl,
    Weights,
    Lu,
    Counts,
}

impl Scale {
    pub const ALL: [Scale; 4] = [Scale::BelPl, Scale::Weights, Scale::Lu, Scale::Counts];

    pub fn name(self) -> &'static str {
        match self {
            Scale::BelPl => "belpl",
            Scale::Weights => "weights",
            Scale::Lu => "lu",
            Scale::Counts => "counts",
        }
    }
}

impl std::str::FromStr for Scale {
    type Err = EvidenceError;

    fn from_str(s: &str) -> Result<Self> {
        Scale::ALL
            .into_iter()
            .find(|scale| scale.name() == s)
            .ok_or_else(|| EvidenceError::Parse(format!("unknown scale {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ScaleValue {
    BelPl(BeliefInterval),
    Weights(EvidenceWeights),
    Lu(FrequencyInterval),
    Counts(EvidenceCounts),
}

impl ScaleValue {
    pub fn scale(&self) -> Scale {
        match self {
            ScaleValue::BelPl(_) => Scale::BelPl,
            ScaleValue::Weights(_) => Scale::Weights,
            ScaleValue::Lu(_) => Scale::Lu,
            ScaleValue::Counts(_) => Scale::Counts,
        }
    }

    pub fn parse(scale: Scale, text: &str) -> Result<Self> {
        Ok(match scale {
            Scale::BelPl => ScaleValue::BelPl(parse_belief_interval(text)?),
            Scale::Weights => ScaleValue::Weights(parse_weights(text)?),
            Scale::Lu => ScaleValue::Lu(parse_frequency(text)?),
            Scale::Counts => ScaleValue::Counts(parse_counts(text)?),
        })
    }

    /// Weights are the hub every conversion passes through.
    pub fn to_weights(&self) -> Result<EvidenceWeights> {
        Ok(match *self {
            ScaleValue::BelPl(iv) => weights_from_belief(&iv),
            ScaleValue::Weights(w) => w,
            ScaleValue::Lu(FrequencyInterval::Point { value }) => EvidenceWeights::Infinite {
                delta: bayesian_delta(value),
            },
            ScaleValue::Lu(fi) => counts_from_interval(&fi)?.to_weights(),
            ScaleValue::Counts(c) => c.to_weights(),
        })
    }

    pub fn from_weights(w: &EvidenceWeights, scale: Scale) -> Result<Self> {
        Ok(match scale {
            Scale::BelPl => ScaleValue::BelPl(belief_from_weights(w)),
            Scale::Weights => ScaleValue::Weights(*w),
            Scale::Lu => ScaleValue::Lu(match *w {
                EvidenceWeights::Finite { .. } => {
                    interval_from_counts(&EvidenceCounts::from_weights(w)?)
                }
                EvidenceWeights::Infinite { delta } => {
                    FrequencyInterval::point(delta_limit(delta))?
                }
            }),
            Scale::Counts => ScaleValue::Counts(EvidenceCounts::from_weights(w)?),
        })
    }
}

/// `Δ` with `1 / (1 + e^Δ) = b`.
fn bayesian_delta(b: f64) -> f64 {
    if b == 0.0 {
        f64::INFINITY
    } else if b == 1.0 {
        f64::NEG_INFINITY
    } else {
        (1.0 - b).ln() - b.ln()
    }
}

pub fn convert(value: &ScaleValue, to: Scale) -> Result<ScaleValue> {
    if value.scale() == to {
        return Ok(*value);
    }
    ScaleValue::from_weights(&value.to_weights()?, to)
}
