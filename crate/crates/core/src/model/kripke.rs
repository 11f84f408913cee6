use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use super::rational::{Rational01, RationalError};
use crate::formula::{AgentId, IdentError, PropId};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("at least one state required")]
    NoStates,
    #[error("duplicate {kind} `{id}`")]
    Duplicate { kind: &'static str, id: String },
    #[error("unknown {kind} `{id}`")]
    Unknown { kind: &'static str, id: String },
    #[error("missing accessibility entry for agent `{agent}` from `{from}` to `{to}`")]
    MissingAccess {
        agent: String,
        from: String,
        to: String,
    },
    #[error("missing valuation entry for state `{state}` and proposition `{prop}`")]
    MissingValuation { state: String, prop: String },
    #[error("invalid state id `{0}`: must be non-empty")]
    BadStateId(String),
    #[error(transparent)]
    Ident(#[from] IdentError),
    #[error("{context}: {source}")]
    Value {
        context: String,
        source: RationalError,
    },
    #[error("malformed model file: {0}")]
    Json(#[from] serde_json::Error),
}

/// State name. Any non-empty string; scenario builders use names like
/// `s00` or `m_0_2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(String);

impl StateId {
    pub fn new(s: impl Into<String>) -> Result<Self, ModelError> {
        let s = s.into();
        if s.is_empty() {
            Err(ModelError::BadStateId(s))
        } else {
            Ok(StateId(s))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::borrow::Borrow<str> for StateId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// A finite fuzzy Kripke structure: states, agents, one accessibility
/// matrix `r_a : S×S → [0,1]` per agent, and a valuation `π : S×P → [0,1]`.
///
/// Matrices are dense and total. A `Model` is immutable once built; use
/// [`ModelBuilder`] to assemble one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    states: Vec<StateId>,
    agents: Vec<AgentId>,
    props: Vec<PropId>,
    // [agent][from][to]
    access: Vec<Vec<Vec<Rational01>>>,
    // [state][prop]
    valuation: Vec<Vec<Rational01>>,
}

impl Model {
    pub fn builder<S: AsRef<str>, A: AsRef<str>, P: AsRef<str>>(
        states: &[S],
        agents: &[A],
        props: &[P],
    ) -> Result<ModelBuilder, ModelError> {
        ModelBuilder::new(states, agents, props)
    }

    pub fn states(&self) -> &[StateId] {
        &self.states
    }

    pub fn agents(&self) -> &[AgentId] {
        &self.agents
    }

    pub fn props(&self) -> &[PropId] {
        &self.props
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_index(&self, id: &str) -> Option<usize> {
        self.states.iter().position(|s| s.as_str() == id)
    }

    pub fn agent_index(&self, id: &str) -> Option<usize> {
        self.agents.iter().position(|a| a.as_str() == id)
    }

    pub fn prop_index(&self, id: &str) -> Option<usize> {
        self.props.iter().position(|p| p.as_str() == id)
    }

    /// `r_agent(from, to)` by index.
    pub fn access(&self, agent: usize, from: usize, to: usize) -> &Rational01 {
        &self.access[agent][from][to]
    }

    pub fn access_matrix(&self, agent: usize) -> &[Vec<Rational01>] {
        &self.access[agent]
    }

    /// `π(state, prop)` by index.
    pub fn value(&self, state: usize, prop: usize) -> &Rational01 {
        &self.valuation[state][prop]
    }

    /// Copy of the model with one more proposition.
    pub fn with_prop(&self, prop: &str, values: &[Rational01]) -> Result<Model, ModelError> {
        let prop = PropId::new(prop)?;
        if self.props.contains(&prop) {
            return Err(ModelError::Duplicate {
                kind: "proposition",
                id: prop.to_string(),
            });
        }
        if values.len() != self.states.len() {
            let state = self
                .states
                .get(values.len())
                .map_or_else(String::new, |s| s.to_string());
            return Err(ModelError::MissingValuation {
                state,
                prop: prop.to_string(),
            });
        }
        let mut m = self.clone();
        m.props.push(prop);
        for (row, v) in m.valuation.iter_mut().zip(values) {
            row.push(v.clone());
        }
        Ok(m)
    }

    /// Copy of the model with one agent's accessibility matrix replaced.
    pub fn with_access(&self, agent: usize, matrix: Vec<Vec<Rational01>>) -> Model {
        let n = self.states.len();
        assert!(
            matrix.len() == n && matrix.iter().all(|r| r.len() == n),
            "matrix must be {n}x{n}"
        );
        let mut m = self.clone();
        m.access[agent] = matrix;
        m
    }
}

/// Incremental construction of a [`Model`]; `build` fails on any missing entry.
#[derive(Debug, Clone)]
pub struct ModelBuilder {
    states: Vec<StateId>,
    agents: Vec<AgentId>,
    props: Vec<PropId>,
    access: Vec<Vec<Vec<Option<Rational01>>>>,
    valuation: Vec<Vec<Option<Rational01>>>,
}

fn check_unique<T: AsRef<str>>(kind: &'static str, items: &[T]) -> Result<(), ModelError> {
    let mut seen = HashSet::new();
    for i in items {
        if !seen.insert(i.as_ref()) {
            return Err(ModelError::Duplicate {
                kind,
                id: i.as_ref().to_string(),
            });
        }
    }
    Ok(())
}

impl ModelBuilder {
    pub fn new<S: AsRef<str>, A: AsRef<str>, P: AsRef<str>>(
        states: &[S],
        agents: &[A],
        props: &[P],
    ) -> Result<Self, ModelError> {
        if states.is_empty() {
            return Err(ModelError::NoStates);
        }
        check_unique("state", states)?;
        check_unique("agent", agents)?;
        check_unique("proposition", props)?;
        let states = states
            .iter()
            .map(|s| StateId::new(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        let agents = agents
            .iter()
            .map(|a| AgentId::new(a.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        let props = props
            .iter()
            .map(|p| PropId::new(p.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        let n = states.len();
        Ok(ModelBuilder {
            access: vec![vec![vec![None; n]; n]; agents.len()],
            valuation: vec![vec![None; props.len()]; n],
            states,
            agents,
            props,
        })
    }

    fn index<T: AsRef<str>>(
        items: &[T],
        kind: &'static str,
        id: &str,
    ) -> Result<usize, ModelError> {
        items
            .iter()
            .position(|x| x.as_ref() == id)
            .ok_or_else(|| ModelError::Unknown {
                kind,
                id: id.to_string(),
            })
    }

    pub fn set_access(
        &mut self,
        agent: &str,
        from: &str,
        to: &str,
        v: Rational01,
    ) -> Result<&mut Self, ModelError> {
        let a = Self::index(&self.agents, "agent", agent)?;
        let i = Self::index(&self.states, "state", from)?;
        let j = Self::index(&self.states, "state", to)?;
        self.access[a][i][j] = Some(v);
        Ok(self)
    }

    pub fn set_access_idx(
        &mut self,
        agent: usize,
        from: usize,
        to: usize,
        v: Rational01,
    ) -> &mut Self {
        self.access[agent][from][to] = Some(v);
        self
    }

    /// Sets every accessibility entry of every agent.
    pub fn fill_access(&mut self, v: Rational01) -> &mut Self {
        for m in &mut self.access {
            for row in m.iter_mut() {
                for e in row.iter_mut() {
                    *e = Some(v.clone());
                }
            }
        }
        self
    }

    pub fn set_value(
        &mut self,
        state: &str,
        prop: &str,
        v: Rational01,
    ) -> Result<&mut Self, ModelError> {
        let i = Self::index(&self.states, "state", state)?;
        let p = Self::index(&self.props, "proposition", prop)?;
        self.valuation[i][p] = Some(v);
        Ok(self)
    }

    pub fn set_value_idx(&mut self, state: usize, prop: usize, v: Rational01) -> &mut Self {
        self.valuation[state][prop] = Some(v);
        self
    }

    pub fn build(self) -> Result<Model, ModelError> {
        let ModelBuilder {
            states,
            agents,
            props,
            access,
            valuation,
        } = self;
        let mut dense_access = Vec::with_capacity(access.len());
        for (a, m) in access.into_iter().enumerate() {
            let mut rows = Vec::with_capacity(m.len());
            for (i, row) in m.into_iter().enumerate() {
                let mut dense = Vec::with_capacity(row.len());
                for (j, e) in row.into_iter().enumerate() {
                    dense.push(e.ok_or_else(|| ModelError::MissingAccess {
                        agent: agents[a].to_string(),
                        from: states[i].to_string(),
                        to: states[j].to_string(),
                    })?);
                }
                rows.push(dense);
            }
            dense_access.push(rows);
        }
        let mut dense_val = Vec::with_capacity(valuation.len());
        for (i, row) in valuation.into_iter().enumerate() {
            let mut dense = Vec::with_capacity(row.len());
            for (p, e) in row.into_iter().enumerate() {
                dense.push(e.ok_or_else(|| ModelError::MissingValuation {
                    state: states[i].to_string(),
                    prop: props[p].to_string(),
                })?);
            }
            dense_val.push(dense);
        }
        Ok(Model {
            states,
            agents,
            props,
            access: dense_access,
            valuation: dense_val,
        })
    }
}

impl AsRef<str> for StateId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for AgentId {
    fn as_ref(&self) -> &str {
        self.as_str()
    }
}

impl AsRef<str> for PropId {
    fn as_ref(&self) -> &str {
        self.as_str()
    }
}
