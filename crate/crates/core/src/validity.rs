//! Scheme instantiation, per-model validity, and randomized counterexample
//! search.
//!
//! Search only ever refutes: an empty result after `trials` attempts is not
//! a proof of validity.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::formula::{
    parse_scheme_template, random_formula, AgentId, AgentRef, BeliefKind, Formula, FormulaGen,
    ParseError, PropId,
};
use crate::model::{sample_model, Model, Rational01, SamplerConfig, SamplerError, StateId};
use crate::semantics::{EvalContext, EvalError, SkepticalVariant};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidityError {
    #[error("no binding for metavariable `?{0}`")]
    MissingBinding(String),
    #[error("formula is not ground: contains `?{0}`")]
    NotGround(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Sampler(#[from] SamplerError),
    #[error("invalid search configuration: {0}")]
    Config(String),
}

/// A formula template whose `?name` leaves (and `B{?a}` agents) are
/// metavariables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scheme {
    template: Formula,
}

impl Scheme {
    pub fn new(template: Formula) -> Self {
        Scheme { template }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse_scheme_template(text).map(Scheme::new)
    }

    pub fn template(&self) -> &Formula {
        &self.template
    }

    pub fn formula_vars(&self) -> BTreeSet<String> {
        self.template.metavariables()
    }

    pub fn agent_vars(&self) -> BTreeSet<String> {
        self.template.agent_metavariables()
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.template.fmt(f)
    }
}

/// Bindings for formula metavariables and agent metavariables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    pub formulas: BTreeMap<String, Formula>,
    pub agents: BTreeMap<String, AgentId>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(mut self, var: &str, f: Formula) -> Self {
        self.formulas.insert(var.to_string(), f);
        self
    }

    pub fn bind_agent(mut self, var: &str, agent: AgentId) -> Self {
        self.agents.insert(var.to_string(), agent);
        self
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        f.write_str("{")?;
        for (k, v) in &self.formulas {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "?{k} := {v}")?;
        }
        for (k, v) in &self.agents {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "?{k} := {v}")?;
        }
        f.write_str("}")
    }
}

/// Replaces every metavariable leaf. Replacement formulas are inserted as
/// they are; no renaming happens because schemes bind nothing.
pub fn instantiate(scheme: &Scheme, subst: &Substitution) -> Result<Formula, ValidityError> {
    substitute(&scheme.template, subst)
}

pub(crate) fn substitute(f: &Formula, subst: &Substitution) -> Result<Formula, ValidityError> {
    Ok(match f {
        Formula::Meta(name) => subst
            .formulas
            .get(name)
            .cloned()
            .ok_or_else(|| ValidityError::MissingBinding(name.clone()))?,
        Formula::Atom(_) | Formula::Bottom => f.clone(),
        Formula::Not(sub) => Formula::not(substitute(sub, subst)?),
        Formula::Belief { agent, kind, sub } => {
            let agent = match agent {
                AgentRef::Meta(name) => AgentRef::Named(
                    subst
                        .agents
                        .get(name)
                        .cloned()
                        .ok_or_else(|| ValidityError::MissingBinding(name.clone()))?,
                ),
                named => named.clone(),
            };
            Formula::Belief {
                agent,
                kind: *kind,
                sub: Box::new(substitute(sub, subst)?),
            }
        }
        other => {
            let (op, l, r) = other.as_binary().expect("binary node");
            Formula::binary(op, substitute(l, subst)?, substitute(r, subst)?)
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityCheck {
    pub valid: bool,
    pub min_value: Rational01,
    /// Lexicographically smallest state id among the minimizers.
    pub argmin_state: StateId,
}

pub fn check_validity_in_model(
    m: &Model,
    f: &Formula,
    variant: SkepticalVariant,
) -> Result<ValidityCheck, ValidityError> {
    if let Some(v) = f
        .metavariables()
        .into_iter()
        .chain(f.agent_metavariables())
        .next()
    {
        return Err(ValidityError::NotGround(v));
    }
    let values = EvalContext::with_variant(m, variant).values(f)?;
    let (idx, min) = values
        .iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| a.cmp(b).then_with(|| m.states()[*i].cmp(&m.states()[*j])))
        .expect("models have at least one state");
    Ok(ValidityCheck {
        valid: min.is_one(),
        min_value: min.clone(),
        argmin_state: m.states()[idx].clone(),
    })
}

/// A model, state and instantiation at which a scheme evaluates below 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub model: Model,
    pub state: StateId,
    pub instantiation: Substitution,
    pub formula: Formula,
    pub value: Rational01,
    pub variant: SkepticalVariant,
    /// Zero-based trial index that produced the report.
    pub trial: usize,
}

impl CounterexampleReport {
    /// Re-evaluates the instance and checks that it reproduces `value` (< 1).
    pub fn verify(&self, scheme: &Scheme) -> bool {
        let Ok(f) = instantiate(scheme, &self.instantiation) else {
            return false;
        };
        if f != self.formula {
            return false;
        }
        let ctx = EvalContext::with_variant(&self.model, self.variant);
        matches!(ctx.eval(self.state.as_str(), &f), Ok(v) if v == self.value && !v.is_one())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Base sampler settings, frame constraints included. Trial `t` samples
    /// with a seed derived from `sampler.seed` and `t`.
    pub sampler: SamplerConfig,
    /// Depth bound for randomly drawn instantiations.
    pub depth: usize,
    pub trials: usize,
    pub variant: SkepticalVariant,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            sampler: SamplerConfig::default(),
            depth: 2,
            trials: 1000,
            variant: SkepticalVariant::default(),
        }
    }
}

pub(crate) fn trial_seed(base: u64, trial: usize) -> u64 {
    base ^ (trial as u64)
        .wrapping_add(1)
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Candidate leaves tried for every metavariable before any random draw.
fn base_pool(props: &[PropId]) -> Vec<Formula> {
    let mut pool: Vec<Formula> = props.iter().cloned().map(Formula::Atom).collect();
    pool.push(Formula::Bottom);
    pool
}

/// All assignments of `pool` to `vars`, in lexicographic order.
fn enumerate<T: Clone>(vars: &[String], pool: &[T]) -> Vec<BTreeMap<String, T>> {
    let mut out = vec![BTreeMap::new()];
    for v in vars {
        let mut next = Vec::with_capacity(out.len() * pool.len());
        for partial in &out {
            for item in pool {
                let mut m = partial.clone();
                m.insert(v.clone(), item.clone());
                next.push(m);
            }
        }
        out = next;
    }
    out
}

/// Deterministic instantiations over the pool `{props…, ⊥}` followed by
/// nothing else; see [`search_counterexample`] for the random phase.
pub fn enumerate_instantiations(
    scheme: &Scheme,
    props: &[PropId],
    agents: &[AgentId],
) -> Vec<Substitution> {
    let fvars: Vec<String> = scheme.formula_vars().into_iter().collect();
    let avars: Vec<String> = scheme.agent_vars().into_iter().collect();
    let pool = base_pool(props);
    let fsubs = enumerate(&fvars, &pool);
    let asubs = enumerate(&avars, agents);
    let mut out = Vec::with_capacity(fsubs.len() * asubs.len());
    for a in &asubs {
        for f in &fsubs {
            out.push(Substitution {
                formulas: f.clone(),
                agents: a.clone(),
            });
        }
    }
    out
}

pub(crate) fn random_instantiation(
    scheme: &Scheme,
    gen: &FormulaGen,
    depth: usize,
    rng: &mut ChaCha8Rng,
) -> Substitution {
    use rand::Rng;
    let mut s = Substitution::new();
    for v in scheme.formula_vars() {
        s.formulas.insert(v, random_formula(rng, gen, depth));
    }
    for v in scheme.agent_vars() {
        let a = gen.agents[rng.gen_range(0..gen.agents.len())].clone();
        s.agents.insert(v, a);
    }
    s
}

pub(crate) fn instantiation_gen(scheme: &Scheme, model: &Model) -> FormulaGen {
    let mut kinds: Vec<BeliefKind> = scheme.template().belief_kinds().into_iter().collect();
    if kinds.is_empty() {
        kinds = vec![BeliefKind::PseudoClassical, BeliefKind::Skeptical];
    }
    FormulaGen {
        atoms: model.props().to_vec(),
        agents: model.agents().to_vec(),
        kinds,
        include_bottom: true,
        include_derived: true,
    }
}

/// Looks for a sampled model, state and instantiation where `scheme`
/// evaluates below 1.
///
/// Each trial samples one model, evaluates every enumerated instantiation
/// (metavariables over `{props…, ⊥}`), then one random instantiation of
/// depth at most `cfg.depth`. The first failure in (trial, instantiation)
/// order is returned, so the result is deterministic for a fixed seed.
pub fn search_counterexample(
    scheme: &Scheme,
    cfg: &SearchConfig,
) -> Result<Option<CounterexampleReport>, ValidityError> {
    if cfg.trials == 0 {
        return Err(ValidityError::Config("trials must be at least 1".into()));
    }
    cfg.sampler.validate()?;
    for trial in 0..cfg.trials {
        let seed = trial_seed(cfg.sampler.seed, trial);
        let model = sample_model(&cfg.sampler.with_seed(seed))?;
        let mut candidates = enumerate_instantiations(scheme, model.props(), model.agents());
        let gen = instantiation_gen(scheme, &model);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(17));
        candidates.push(random_instantiation(scheme, &gen, cfg.depth, &mut rng));
        for subst in candidates {
            let f = instantiate(scheme, &subst)?;
            let check = check_validity_in_model(&model, &f, cfg.variant)?;
            if !check.valid {
                return Ok(Some(CounterexampleReport {
                    state: check.argmin_state,
                    value: check.min_value,
                    instantiation: subst,
                    formula: f,
                    variant: cfg.variant,
                    trial,
                    model,
                }));
            }
        }
    }
    Ok(None)
}
