//! Finite fuzzy Kripke models, frame properties, model files and sampling.

mod frame;
mod io;
mod kripke;
mod rational;
mod sampler;

pub use frame::{check_frame_property, min_transitive_closure, FrameCheck, FrameProperty, Witness};
pub use io::{load_model, save_model};
pub use kripke::{Model, ModelBuilder, ModelError, StateId};
pub use rational::{parse_rational, Rational01, RationalError};
pub use sampler::{agent_name, sample_model, SamplerConfig, SamplerError};
