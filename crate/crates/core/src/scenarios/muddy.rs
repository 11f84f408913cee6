use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::ScenarioError;
use crate::model::{Model, ModelBuilder, Rational01};

pub const DEFAULT_STATE_CAP: usize = 10_000;

/// Fuzzy muddy children with `k` children whose mud levels range over an
/// `n`-point grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuddyConfig {
    pub k: usize,
    pub n: usize,
    /// Visual impairment `𝒱` of child `a_{i+1}` at index `i`.
    pub impairments: Vec<Rational01>,
    /// Strictly between 0 and 1.
    pub alpha: Rational01,
    pub state_cap: usize,
}

impl MuddyConfig {
    pub fn new(n: usize, impairments: Vec<Rational01>, alpha: Rational01) -> Self {
        MuddyConfig {
            k: impairments.len(),
            n,
            impairments,
            alpha,
            state_cap: DEFAULT_STATE_CAP,
        }
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        let bad = |m: &str| Err(ScenarioError::Config(m.to_string()));
        if self.k == 0 {
            return bad("at least one child required");
        }
        if self.n < 2 {
            return bad("grid resolution n must be at least 2");
        }
        if self.impairments.len() != self.k {
            return bad("one impairment per child required");
        }
        if self.alpha.is_zero() || self.alpha.is_one() {
            return bad("alpha must lie strictly between 0 and 1");
        }
        let states = u32::try_from(self.k)
            .ok()
            .and_then(|k| self.n.checked_pow(k));
        match states {
            Some(s) if s <= self.state_cap => Ok(()),
            _ => Err(ScenarioError::StateCap {
                requested: format!("{}^{}", self.n, self.k),
                cap: self.state_cap,
            }),
        }
    }

    /// Grid values `{0, 1/(n-1), …, 1}`: each interval is represented by
    /// its right endpoint.
    pub fn grid(&self) -> Vec<Rational01> {
        let last = self.n as i64 - 1;
        (0..=last)
            .map(|i| Rational01::from_ratio(i, last))
            .collect()
    }
}

/// `𝒱_{a_i}·(1 − α|m_j − m′_j|)`, which is `𝒱_{a_i}` when the mud levels
/// agree. Child and coordinate indices are zero-based.
pub fn tau(
    cfg: &MuddyConfig,
    i: usize,
    j: usize,
    s: &[Rational01],
    t: &[Rational01],
) -> Result<Rational01, ScenarioError> {
    if i >= cfg.k || j >= cfg.k {
        return Err(ScenarioError::Index(format!(
            "child index out of range 0..{}",
            cfg.k
        )));
    }
    if s.len() != cfg.k || t.len() != cfg.k {
        return Err(ScenarioError::Index(format!(
            "states must have {} coordinates",
            cfg.k
        )));
    }
    let v = &cfg.impairments[i];
    if s[j] == t[j] {
        return Ok(v.clone());
    }
    let diff: BigRational = (s[j].as_big() - t[j].as_big()).abs();
    let scale = BigRational::from_integer(1.into()) - cfg.alpha.as_big() * diff;
    let scale = Rational01::new(scale).expect("alpha and mud levels lie in [0,1]");
    Ok(v.product(&scale))
}

fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Child `a_{i+1}`'s agent name.
pub fn muddy_agent(i: usize) -> String {
    format!("a{}", i + 1)
}

/// Proposition "the forehead of `a_{i+1}` is muddy".
pub fn muddy_prop(i: usize) -> String {
    format!("m_a{}", i + 1)
}

/// State name for a tuple of grid indices, e.g. `s0_2`.
pub fn muddy_state(indices: &[usize]) -> String {
    let parts: Vec<String> = indices.iter().map(ToString::to_string).collect();
    format!("s{}", parts.join("_"))
}

/// States are all `k`-tuples over the grid in lexicographic order of grid
/// indices. `r_{a_i}(s,s′)` is the minimum of `τ(i,j,s,s′)` over `j`, and
/// `m_{a_i}` is true to degree `m_i`.
pub fn build_muddy_model(cfg: &MuddyConfig) -> Result<Model, ScenarioError> {
    cfg.validate()?;
    let grid = cfg.grid();
    let idx = tuples(cfg.n, cfg.k);
    let points: Vec<Vec<Rational01>> = idx
        .iter()
        .map(|t| t.iter().map(|&x| grid[x].clone()).collect())
        .collect();
    let states: Vec<String> = idx.iter().map(|t| muddy_state(t)).collect();
    let agents: Vec<String> = (0..cfg.k).map(muddy_agent).collect();
    let props: Vec<String> = (0..cfg.k).map(muddy_prop).collect();
    let mut b = ModelBuilder::new(&states, &agents, &props)
        .map_err(|e| ScenarioError::Config(e.to_string()))?;
    for i in 0..cfg.k {
        for (x, s) in points.iter().enumerate() {
            for (y, t) in points.iter().enumerate() {
                let r = (0..cfg.k)
                    .map(|j| tau(cfg, i, j, s, t))
                    .collect::<Result<Vec<_>, _>>()?
                    .into_iter()
                    .min()
                    .expect("k >= 1");
                b.set_access_idx(i, x, y, r);
            }
        }
    }
    for (x, s) in points.iter().enumerate() {
        for (p, m) in s.iter().enumerate() {
            b.set_value_idx(x, p, m.clone());
        }
    }
    Ok(b.build().expect("every entry is set"))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct MuddyFile {
    k: usize,
    n: usize,
    impairments: BTreeMap<String, String>,
    alpha: String,
    #[serde(default)]
    state_cap: Option<usize>,
}

impl MuddyFile {
    pub(crate) fn into_config(self) -> Result<MuddyConfig, ScenarioError> {
        let value = |text: &str, what: &str| {
            text.parse::<Rational01>()
                .map_err(|e| ScenarioError::Config(format!("{what}: {e}")))
        };
        let mut impairments = Vec::with_capacity(self.k);
        for i in 0..self.k {
            let name = muddy_agent(i);
            let text = self
                .impairments
                .get(&name)
                .ok_or_else(|| ScenarioError::Config(format!("missing impairment for {name}")))?;
            impairments.push(value(text, &name)?);
        }
        if self.impairments.len() != self.k {
            return Err(ScenarioError::Config(format!(
                "impairments must name exactly a1..a{}",
                self.k
            )));
        }
        let cfg = MuddyConfig {
            k: self.k,
            n: self.n,
            impairments,
            alpha: value(&self.alpha, "alpha")?,
            state_cap: self.state_cap.unwrap_or(DEFAULT_STATE_CAP),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}
