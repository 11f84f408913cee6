//! The two application models: fuzzy muddy children over pseudo-classical
//! belief and the CPA experiment over skeptical belief.

mod cpa;
mod muddy;

use thiserror::Error;

pub use cpa::{
    belief_success_statistic, bits, build_cpa_model, cpa_security_sweep, cpa_statistic_analytic,
    learned_from_transcript, parse_bits, toy_encrypt, toy_prf, BeliefStat, CpaConfig, SweepConfig,
    SweepMode, SweepRow, CPA_AGENT, CPA_PROP, MAX_EXPLICIT_BITS,
};
pub use muddy::{
    build_muddy_model, muddy_agent, muddy_prop, muddy_state, tau, MuddyConfig, DEFAULT_STATE_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("invalid scenario configuration: {0}")]
    Config(String),
    #[error("{requested} states exceed the cap of {cap}")]
    StateCap { requested: String, cap: usize },
    #[error("index out of range: {0}")]
    Index(String),
    #[error("invalid scenario file: {0}")]
    Json(String),
}

/// Reads a muddy children configuration:
/// `{"k": 2, "n": 3, "impairments": {"a1": "0.8", "a2": "1"}, "alpha": "1/2"}`.
pub fn load_muddy_config(text: &str) -> Result<MuddyConfig, ScenarioError> {
    serde_json::from_str::<muddy::MuddyFile>(text)
        .map_err(|e| ScenarioError::Json(e.to_string()))?
        .into_config()
}

/// Reads a CPA configuration:
/// `{"n_bits": 2, "queried": ["11"], "challenge_r": "11"}`, with optional
/// `distinguish_grade` (default `"1"`) and `leaky_generator` (default false).
pub fn load_cpa_config(text: &str) -> Result<CpaConfig, ScenarioError> {
    serde_json::from_str::<cpa::CpaFile>(text)
        .map_err(|e| ScenarioError::Json(e.to_string()))?
        .into_config()
}

pub(crate) fn serialize_display<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
