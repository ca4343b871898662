//! Evidence combination on a binary frame, in two calculi.
//!
//! * [`binary_frame`] and [`dempster`]: belief functions on `{H, ¬H}` and
//!   Dempster's rule, in mass form and in `⟨bel, pl⟩` form.
//! * [`evidence_scale`]: weights of evidence, their map to belief, and the
//!   limits reached under unbounded evidence.
//! * [`frequency`]: lower/upper frequency intervals and their combination
//!   rule, including points (infinite evidence) and conflict reports.
//! * [`convergence`]: outcome streams run through both calculi side by side.
//! * [`codec`]: JSON entry points for untrusted input.

pub mod binary_frame;
pub mod codec;
pub mod convergence;
pub mod dempster;
pub mod error;
pub mod evidence_scale;
pub mod frequency;

pub use binary_frame::{interval_to_mass, mass_to_interval, BeliefInterval, MassAssignment};
pub use convergence::{
    check_limits, generate_stream, run_dual_track, run_dual_track_with, LimitReport, RunOptions,
    StreamMode, StreamSpec, Trajectory, TrajectoryRow,
};
pub use dempster::{
    bernoulli_combine, combine_general, combine_interval, combine_mass, GeneralMass,
};
pub use error::{EvidenceError, Result};
pub use evidence_scale::{
    add_weights, belief_from_weights, classify_limit, delta_limit, multiply_combine,
    positive_proportion, support_from_weight, weights_from_belief, EvidenceWeights, LimitClass,
    UnitWeights,
};
pub use frequency::{
    belpl_from_lu, combine_frequency, combine_lu, combine_points, combine_with_point,
    counts_from_interval, frequency, ignorance, interval_from_counts, lu_from_belpl, Combination,
    ConflictReport, EvidenceCounts, FrequencyInterval, Horizon,
};
