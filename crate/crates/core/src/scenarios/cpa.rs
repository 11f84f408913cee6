use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::ScenarioError;
use crate::formula::Formula;
use crate::model::{Model, ModelBuilder, Rational01};
use crate::semantics::{EvalContext, EvalError, SkepticalVariant};

/// Largest security parameter for which the model is built state by state.
pub const MAX_EXPLICIT_BITS: u32 = 16;

/// Name of the proposition "the bit b is equal to 1".
pub const CPA_PROP: &str = "p";
/// Name of the adversary agent.
pub const CPA_AGENT: &str = "a";

/// One instance of the CPA indistinguishability experiment, with the
/// adversary's oracle answers already folded into `queried`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CpaConfig {
    pub n_bits: u32,
    /// Random strings `r` whose `F_k(r)` the adversary learned.
    pub queried: BTreeSet<u64>,
    /// The random string used for the challenge ciphertext.
    pub challenge_r: u64,
    /// Accessibility between states the adversary cannot tell apart.
    pub distinguish_grade: Rational01,
    /// The leaky-generator variant: `p` holds to degree 1 at every state.
    pub leaky_generator: bool,
}

impl CpaConfig {
    pub fn new(n_bits: u32, queried: impl IntoIterator<Item = u64>, challenge_r: u64) -> Self {
        CpaConfig {
            n_bits,
            queried: queried.into_iter().collect(),
            challenge_r,
            distinguish_grade: Rational01::one(),
            leaky_generator: false,
        }
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        if self.n_bits == 0 || self.n_bits > 63 {
            return Err(ScenarioError::Config(
                "n_bits must be between 1 and 63".into(),
            ));
        }
        let size = 1u64 << self.n_bits;
        if let Some(r) = self.queried.iter().find(|&&r| r >= size) {
            return Err(ScenarioError::Config(format!(
                "queried string {r} has more than {} bits",
                self.n_bits
            )));
        }
        if self.challenge_r >= size {
            return Err(ScenarioError::Config(format!(
                "challenge has more than {} bits",
                self.n_bits
            )));
        }
        if self.distinguish_grade.is_zero() {
            return Err(ScenarioError::Config(
                "distinguish_grade must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn challenge_reused(&self) -> bool {
        self.queried.contains(&self.challenge_r)
    }
}

/// `r` as an `n`-character bit string, most significant bit first.
pub fn bits(r: u64, n: u32) -> String {
    format!("{r:0width$b}", width = n as usize)
}

pub fn parse_bits(text: &str, n: u32) -> Result<u64, ScenarioError> {
    if text.len() != n as usize || !text.chars().all(|c| c == '0' || c == '1') {
        return Err(ScenarioError::Config(format!(
            "`{text}` is not a {n}-bit string"
        )));
    }
    u64::from_str_radix(text, 2).map_err(|e| ScenarioError::Config(e.to_string()))
}

/// One state `s_r` per `r ∈ {0,1}^n`, named `s` followed by the bits of `r`.
/// Every state perfectly distinguishes the queried states (`r(s, s_q) = 0`)
/// and relates to all others with `distinguish_grade`. `p` is 1 at the
/// challenge state if the challenge was reused and 1/2 everywhere else.
pub fn build_cpa_model(cfg: &CpaConfig) -> Result<Model, ScenarioError> {
    cfg.validate()?;
    if cfg.n_bits > MAX_EXPLICIT_BITS {
        return Err(ScenarioError::StateCap {
            requested: format!("2^{}", cfg.n_bits),
            cap: 1 << MAX_EXPLICIT_BITS,
        });
    }
    let size = 1usize << cfg.n_bits;
    let states: Vec<String> = (0..size as u64)
        .map(|r| format!("s{}", bits(r, cfg.n_bits)))
        .collect();
    let mut b = ModelBuilder::new(&states, &[CPA_AGENT], &[CPA_PROP])
        .map_err(|e| ScenarioError::Config(e.to_string()))?;
    let row: Vec<Rational01> = (0..size as u64)
        .map(|t| {
            if cfg.queried.contains(&t) {
                Rational01::zero()
            } else {
                cfg.distinguish_grade.clone()
            }
        })
        .collect();
    for s in 0..size {
        for (t, v) in row.iter().enumerate() {
            b.set_access_idx(0, s, t, v.clone());
        }
        let p = if cfg.leaky_generator || (s as u64 == cfg.challenge_r && cfg.challenge_reused()) {
            Rational01::one()
        } else {
            Rational01::half()
        };
        b.set_value_idx(s, 0, p);
    }
    Ok(b.build().expect("every entry is set"))
}

/// The toy keyed function `F_k(r) = k ⊕ r`.
pub fn toy_prf(key: u64, r: u64) -> u64 {
    key ^ r
}

/// Encrypts `m` under randomness `r` as `⟨r, F_k(r) ⊕ m⟩`.
pub fn toy_encrypt(key: u64, r: u64, m: u64) -> (u64, u64) {
    (r, toy_prf(key, r) ^ m)
}

/// What the adversary learns from oracle answers: each pair of a message
/// `m` and its ciphertext `⟨r, c⟩` reveals `F_k(r) = c ⊕ m`.
pub fn learned_from_transcript(transcript: &[(u64, (u64, u64))]) -> BTreeMap<u64, u64> {
    transcript.iter().map(|&(m, (r, c))| (r, c ^ m)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BeliefStat {
    pub count_above: usize,
    pub total_states: usize,
    #[serde(serialize_with = "super::serialize_display")]
    pub ratio: Rational01,
}

/// Fraction of states at which the skeptical belief of `agent` in `prop`
/// is strictly above 1/2.
pub fn belief_success_statistic(
    m: &Model,
    agent: &str,
    prop: &str,
    variant: SkepticalVariant,
) -> Result<BeliefStat, EvalError> {
    let f = Formula::s(agent, Formula::atom(prop));
    if m.prop_index(prop).is_none() {
        return Err(EvalError::UnknownProp(prop.to_string()));
    }
    if m.agent_index(agent).is_none() {
        return Err(EvalError::UnknownAgent(agent.to_string()));
    }
    let values = EvalContext::with_variant(m, variant).values(&f)?;
    let half = Rational01::half();
    let count_above = values.iter().filter(|v| **v > half).count();
    let total_states = values.len();
    let ratio = Rational01::from_ratio(count_above as i64, total_states as i64);
    Ok(BeliefStat {
        count_above,
        total_states,
        ratio,
    })
}

/// The bound `n₀/2^n` on the success statistic.
pub fn cpa_statistic_analytic(n_bits: u32, n0: u64) -> Rational01 {
    let r = BigRational::new(BigInt::from(n0), BigInt::from(1) << n_bits);
    Rational01::new(r).expect("n0 is at most 2^n")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    /// Build each model and count.
    Explicit,
    /// Use `n₀/2^n`; exact for the reused-challenge family with `n₀ ≤ 1`
    /// and an upper bound otherwise.
    Analytic,
}

/// The family swept over `n`: the adversary queried the first `n0` strings
/// and the challenge is either the first of them or the first fresh one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub n_min: u32,
    pub n_max: u32,
    pub n0: u64,
    pub reuse: bool,
    pub mode: SweepMode,
    pub variant: SkepticalVariant,
}

impl SweepConfig {
    pub fn instance(&self, n: u32) -> Result<CpaConfig, ScenarioError> {
        let size = 1u64
            .checked_shl(n)
            .filter(|_| n < 64)
            .ok_or_else(|| ScenarioError::Config("n too large".into()))?;
        if self.n0 > size {
            return Err(ScenarioError::Config(format!(
                "n0 = {} exceeds 2^{n}",
                self.n0
            )));
        }
        let challenge = if self.reuse {
            if self.n0 == 0 {
                return Err(ScenarioError::Config(
                    "a reused challenge needs at least one query".into(),
                ));
            }
            0
        } else {
            self.n0 % size
        };
        Ok(CpaConfig::new(n, 0..self.n0, challenge))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub n: u32,
    #[serde(serialize_with = "super::serialize_display")]
    pub statistic: Rational01,
    #[serde(serialize_with = "super::serialize_display")]
    pub bound: Rational01,
    pub pass: bool,
}

/// Computes the statistic for each `n` in range and compares it with
/// `bound(n)`.
pub fn cpa_security_sweep(
    cfg: &SweepConfig,
    bound: impl Fn(u32) -> Rational01,
) -> Result<Vec<SweepRow>, ScenarioError> {
    if cfg.n_min == 0 || cfg.n_min > cfg.n_max {
        return Err(ScenarioError::Config(format!(
            "invalid range {}..={}",
            cfg.n_min, cfg.n_max
        )));
    }
    if cfg.mode == SweepMode::Explicit && cfg.n_max > MAX_EXPLICIT_BITS {
        return Err(ScenarioError::StateCap {
            requested: format!("2^{}", cfg.n_max),
            cap: 1 << MAX_EXPLICIT_BITS,
        });
    }
    let mut rows = Vec::new();
    for n in cfg.n_min..=cfg.n_max {
        let inst = cfg.instance(n)?;
        let statistic = match cfg.mode {
            SweepMode::Explicit => {
                let m = build_cpa_model(&inst)?;
                belief_success_statistic(&m, CPA_AGENT, CPA_PROP, cfg.variant)
                    .expect("model has the CPA agent and proposition")
                    .ratio
            }
            SweepMode::Analytic if inst.challenge_reused() => cpa_statistic_analytic(n, cfg.n0),
            SweepMode::Analytic => Rational01::zero(),
        };
        let bound = bound(n);
        rows.push(SweepRow {
            n,
            pass: statistic <= bound,
            statistic,
            bound,
        });
    }
    Ok(rows)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct CpaFile {
    n_bits: u32,
    #[serde(default)]
    queried: Vec<String>,
    challenge_r: String,
    #[serde(default)]
    distinguish_grade: Option<String>,
    #[serde(default)]
    leaky_generator: bool,
}

impl CpaFile {
    pub(crate) fn into_config(self) -> Result<CpaConfig, ScenarioError> {
        let n = self.n_bits;
        if n == 0 || n > 63 {
            return Err(ScenarioError::Config(
                "n_bits must be between 1 and 63".into(),
            ));
        }
        let queried = self
            .queried
            .iter()
            .map(|q| parse_bits(q, n))
            .collect::<Result<BTreeSet<_>, _>>()?;
        let distinguish_grade = match &self.distinguish_grade {
            None => Rational01::one(),
            Some(t) => t
                .parse()
                .map_err(|e| ScenarioError::Config(format!("distinguish_grade: {e}")))?,
        };
        let cfg = CpaConfig {
            n_bits: n,
            queried,
            challenge_r: parse_bits(&self.challenge_r, n)?,
            distinguish_grade,
            leaky_generator: self.leaky_generator,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::{check_frame_property, FrameProperty};

    fn q(n: i64, d: i64) -> Rational01 {
        Rational01::from_ratio(n, d)
    }

    #[test]
    fn two_bit_instance() {
        let m = build_cpa_model(&CpaConfig::new(2, [0b11], 0b11)).unwrap();
        assert_eq!(m, fixtures::cpa_two_bit());
        assert!(check_frame_property(&m, FrameProperty::RCrisp).holds);
        let stat = belief_success_statistic(&m, "a", "p", SkepticalVariant::SourceState).unwrap();
        assert_eq!(
            (stat.count_above, stat.total_states, stat.ratio),
            (1, 4, q(1, 4))
        );
    }

    #[test]
    fn fresh_challenge_is_flat() {
        let m = build_cpa_model(&CpaConfig::new(2, [0b11], 0b00)).unwrap();
        for s in 0..4 {
            assert_eq!(m.value(s, 0), &q(1, 2));
        }
        let stat = belief_success_statistic(&m, "a", "p", SkepticalVariant::SourceState).unwrap();
        assert_eq!(stat.count_above, 0);
        assert!(stat.ratio.is_zero());
    }

    #[test]
    fn no_queries_one_bit() {
        let m = build_cpa_model(&CpaConfig::new(1, [], 0)).unwrap();
        assert_eq!(m.num_states(), 2);
        for (s, t) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert!(m.access(0, s, t).is_one());
        }
    }

    #[test]
    fn single_state_certain_belief() {
        let mut b = Model::builder(&["s"], &["a"], &["p"]).unwrap();
        b.set_access("a", "s", "s", q(1, 1))
            .unwrap()
            .set_value("s", "p", q(1, 1))
            .unwrap();
        let stat =
            belief_success_statistic(&b.build().unwrap(), "a", "p", SkepticalVariant::SourceState)
                .unwrap();
        assert!(stat.ratio.is_one());
    }

    #[test]
    fn leaky_generator_always_succeeds() {
        let cfg = CpaConfig {
            leaky_generator: true,
            ..CpaConfig::new(3, [1], 5)
        };
        let m = build_cpa_model(&cfg).unwrap();
        let stat = belief_success_statistic(&m, "a", "p", SkepticalVariant::SourceState).unwrap();
        assert!(stat.ratio.is_one());
    }

    #[test]
    fn xor_transcript() {
        let key = 0b10;
        assert_eq!(toy_encrypt(key, 0b11, 0b01), (0b11, 0b00));
        let learned = learned_from_transcript(&[(0b01, (0b11, 0b00))]);
        assert_eq!(learned, BTreeMap::from([(0b11, 0b01)]));
        assert_eq!(toy_prf(key, 0b11), 0b01);
    }

    #[test]
    fn sweep_examples() {
        let cfg = SweepConfig {
            n_min: 2,
            n_max: 8,
            n0: 1,
            reuse: true,
            mode: SweepMode::Explicit,
            variant: SkepticalVariant::SourceState,
        };
        let rows = cpa_security_sweep(&cfg, |n| q(1, (n * n) as i64)).unwrap();
        // 1/2^n <= 1/n^2 everywhere except n = 3, where 1/8 > 1/9
        for r in &rows {
            assert_eq!(r.statistic, cpa_statistic_analytic(r.n, 1));
            assert_eq!(r.pass, r.n != 3, "n = {}", r.n);
        }
        assert_eq!(rows[0].statistic, q(1, 4));
        let none = SweepConfig {
            n0: 0,
            reuse: false,
            ..cfg.clone()
        };
        assert!(cpa_security_sweep(&none, |_| q(0, 1))
            .unwrap()
            .iter()
            .all(|r| r.statistic.is_zero()));
        let analytic = SweepConfig {
            mode: SweepMode::Analytic,
            n_max: 40,
            ..cfg
        };
        assert_eq!(
            cpa_security_sweep(&analytic, |_| q(1, 1))
                .unwrap()
                .last()
                .unwrap()
                .n,
            40
        );
    }

    #[test]
    fn errors() {
        assert!(build_cpa_model(&CpaConfig::new(17, [], 0)).is_err());
        assert!(build_cpa_model(&CpaConfig::new(2, [4], 0)).is_err());
        assert!(parse_bits("012", 3).is_err());
        assert!(parse_bits("01", 3).is_err());
        let bad_range = SweepConfig {
            n_min: 5,
            n_max: 4,
            n0: 1,
            reuse: true,
            mode: SweepMode::Explicit,
            variant: SkepticalVariant::SourceState,
        };
        assert!(cpa_security_sweep(&bad_range, |_| q(1, 1)).is_err());
    }
}
