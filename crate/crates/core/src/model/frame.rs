use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::kripke::Model;
use super::rational::Rational01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrameProperty {
    /// every state has some successor with `r = 1`
    Serial,
    /// `r(s,s) = 1`
    Reflexive,
    /// `r(s,s'') >= min(r(s,s'), r(s',s''))`
    Transitive,
    /// `r(s,s') <= 1/2`
    Recognizable,
    /// `r(s,s') ∈ {0,1}`
    RCrisp,
}

impl FrameProperty {
    pub const ALL: [FrameProperty; 5] = [
        FrameProperty::Serial,
        FrameProperty::Reflexive,
        FrameProperty::Transitive,
        FrameProperty::Recognizable,
        FrameProperty::RCrisp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FrameProperty::Serial => "serial",
            FrameProperty::Reflexive => "reflexive",
            FrameProperty::Transitive => "transitive",
            FrameProperty::Recognizable => "recognizable",
            FrameProperty::RCrisp => "r-crisp",
        }
    }
}

impl fmt::Display for FrameProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FrameProperty {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "serial" | "d" => Ok(FrameProperty::Serial),
            "reflexive" | "t" => Ok(FrameProperty::Reflexive),
            "transitive" | "4" => Ok(FrameProperty::Transitive),
            "recognizable" | "5" => Ok(FrameProperty::Recognizable),
            "r-crisp" | "rcrisp" | "crisp" => Ok(FrameProperty::RCrisp),
            _ => Err(format!(
                "unknown frame property `{s}` (expected serial, reflexive, transitive, recognizable or r-crisp)"
            )),
        }
    }
}

/// The agent and state tuple at which a property fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub agent: String,
    pub states: Vec<String>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.agent)?;
        for s in &self.states {
            write!(f, ", {s}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrameCheck {
    pub holds: bool,
    pub witness: Option<Witness>,
}

/// Checks `prop` for every agent. On failure the witness is the first
/// violating tuple in (agent, s, s', s'') declaration order.
pub fn check_frame_property(m: &Model, prop: FrameProperty) -> FrameCheck {
    let n = m.num_states();
    let half = Rational01::half();
    for a in 0..m.agents().len() {
        let r = m.access_matrix(a);
        let fail = |states: &[usize]| FrameCheck {
            holds: false,
            witness: Some(Witness {
                agent: m.agents()[a].to_string(),
                states: states.iter().map(|&i| m.states()[i].to_string()).collect(),
            }),
        };
        match prop {
            FrameProperty::Serial => {
                if let Some(s) = (0..n).find(|&s| !r[s].iter().any(Rational01::is_one)) {
                    return fail(&[s]);
                }
            }
            FrameProperty::Reflexive => {
                if let Some(s) = (0..n).find(|&s| !r[s][s].is_one()) {
                    return fail(&[s]);
                }
            }
            FrameProperty::Transitive => {
                for s in 0..n {
                    for t in 0..n {
                        for u in 0..n {
                            if r[s][u] < *std::cmp::min(&r[s][t], &r[t][u]) {
                                return fail(&[s, t, u]);
                            }
                        }
                    }
                }
            }
            FrameProperty::Recognizable => {
                for (s, row) in r.iter().enumerate() {
                    if let Some(t) = row.iter().position(|x| *x > half) {
                        return fail(&[s, t]);
                    }
                }
            }
            FrameProperty::RCrisp => {
                for (s, row) in r.iter().enumerate() {
                    if let Some(t) = row.iter().position(|x| !(x.is_zero() || x.is_one())) {
                        return fail(&[s, t]);
                    }
                }
            }
        }
    }
    FrameCheck {
        holds: true,
        witness: None,
    }
}

/// Closes a fuzzy relation under min-transitivity:
/// `r(s,s'') ← max(r(s,s''), min(r(s,s'), r(s',s'')))` until nothing changes.
/// Entries only ever increase.
pub fn min_transitive_closure(r: &mut [Vec<Rational01>]) {
    let n = r.len();
    loop {
        let mut changed = false;
        for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    let via = std::cmp::min(&r[s][t], &r[t][u]).clone();
                    if via > r[s][u] {
                        r[s][u] = via;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
}
