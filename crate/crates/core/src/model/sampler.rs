use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::frame::{min_transitive_closure, FrameProperty};
use super::kripke::{Model, ModelBuilder};
use super::rational::Rational01;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SamplerError {
    #[error("unsatisfiable frame constraints: {0}")]
    Unsatisfiable(String),
    #[error("invalid sampler configuration: {0}")]
    Config(String),
}

/// Parameters for drawing a random finite model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplerConfig {
    pub states: usize,
    pub agents: usize,
    pub props: Vec<String>,
    /// Every drawn value has a denominator in `1..=denominator`.
    pub denominator: u32,
    pub seed: u64,
    pub constraints: BTreeSet<FrameProperty>,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            states: 3,
            agents: 1,
            props: vec!["p".into(), "q".into()],
            denominator: 10,
            seed: 0,
            constraints: BTreeSet::new(),
        }
    }
}

impl SamplerConfig {
    pub fn with_seed(&self, seed: u64) -> Self {
        SamplerConfig {
            seed,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<(), SamplerError> {
        if self.states == 0 {
            return Err(SamplerError::Config(
                "state count must be at least 1".into(),
            ));
        }
        if self.agents == 0 {
            return Err(SamplerError::Config(
                "agent count must be at least 1".into(),
            ));
        }
        if self.denominator == 0 {
            return Err(SamplerError::Config(
                "denominator bound must be at least 1".into(),
            ));
        }
        let has = |p| self.constraints.contains(&p);
        if has(FrameProperty::Recognizable) {
            for p in [FrameProperty::Serial, FrameProperty::Reflexive] {
                if has(p) {
                    return Err(SamplerError::Unsatisfiable(format!(
                        "{p} requires an entry equal to 1 but recognizable bounds every entry by 1/2"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Agent names used by generated models: `a`, `b`, … then `a26`, `a27`, …
pub fn agent_name(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("a{i}")
    }
}

fn draw<R: Rng>(rng: &mut R, bound: u32) -> Rational01 {
    let den = rng.gen_range(1..=bound);
    let num = rng.gen_range(0..=den);
    Rational01::from_ratio(num.into(), den.into())
}

/// Draws a model whose requested frame properties hold by construction.
/// Deterministic for a fixed configuration.
pub fn sample_model(cfg: &SamplerConfig) -> Result<Model, SamplerError> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.states;
    let states: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let agents: Vec<String> = (0..cfg.agents).map(agent_name).collect();
    let mut b = ModelBuilder::new(&states, &agents, &cfg.props)
        .map_err(|e| SamplerError::Config(e.to_string()))?;
    let has = |p| cfg.constraints.contains(&p);
    let half = Rational01::half();

    for a in 0..cfg.agents {
        let mut r: Vec<Vec<Rational01>> = (0..n)
            .map(|_| (0..n).map(|_| draw(&mut rng, cfg.denominator)).collect())
            .collect();
        for row in r.iter_mut() {
            for e in row.iter_mut() {
                if has(FrameProperty::RCrisp) {
                    // a crisp entry bounded by 1/2 can only be 0
                    let up = *e >= half && !has(FrameProperty::Recognizable);
                    *e = if up {
                        Rational01::one()
                    } else {
                        Rational01::zero()
                    };
                }
                if has(FrameProperty::Recognizable) && *e > half {
                    *e = half.clone();
                }
            }
        }
        if has(FrameProperty::Reflexive) {
            for (s, row) in r.iter_mut().enumerate() {
                row[s] = Rational01::one();
            }
        }
        if has(FrameProperty::Serial) {
            for row in r.iter_mut() {
                if !row.iter().any(Rational01::is_one) {
                    let t = rng.gen_range(0..n);
                    row[t] = Rational01::one();
                }
            }
        }
        // closure only raises entries to existing values, so it preserves
        // every constraint applied above
        if has(FrameProperty::Transitive) {
            min_transitive_closure(&mut r);
        }
        for (i, row) in r.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                b.set_access_idx(a, i, j, v);
            }
        }
    }
    for s in 0..n {
        for p in 0..cfg.props.len() {
            b.set_value_idx(s, p, draw(&mut rng, cfg.denominator));
        }
    }
    Ok(b.build().expect("sampler fills every entry"))
}
