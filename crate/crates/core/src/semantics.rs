//! Exact evaluation `V_s(φ)` over finite models.
//!
//! Evaluation works bottom-up: each subformula is turned into its vector of
//! values over all states, so a belief node costs `O(|S|²)` regardless of how
//! deeply it is nested.

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{AgentRef, BeliefKind, Formula};
use crate::model::{Model, Rational01, StateId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown proposition `{0}`")]
    UnknownProp(String),
    #[error("unknown agent `{0}`")]
    UnknownAgent(String),
    #[error("unbound metavariable `?{0}`")]
    Unbound(String),
}

/// Which state's value multiplies `r(s,s')` in the skeptical clause.
///
/// `SourceState` uses `V_s(φ)`, the definition as written; `TargetState`
/// uses `V_{s'}(φ)`, which is what the published introspection
/// counterexample numbers require. The `= 1` guard reads the same value as
/// the product in both variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SkepticalVariant {
    #[default]
    SourceState,
    TargetState,
}

impl FromStr for SkepticalVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "source" | "source-state" => Ok(SkepticalVariant::SourceState),
            "target" | "target-state" => Ok(SkepticalVariant::TargetState),
            _ => Err(format!("unknown variant `{s}` (expected source or target)")),
        }
    }
}

impl fmt::Display for SkepticalVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SkepticalVariant::SourceState => "source",
            SkepticalVariant::TargetState => "target",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Connective {
    Not,
    StrongConj,
    Implies,
    StrongDisj,
    MinConj,
    MaxDisj,
    Equiv,
}

/// Truth function of a connective. `y` is ignored for `Not` and required
/// for every binary connective.
pub fn apply_connective(op: Connective, x: &Rational01, y: Option<&Rational01>) -> Rational01 {
    let y = || y.expect("binary connective needs two operands");
    match op {
        Connective::Not => x.complement(),
        Connective::StrongConj => x.t_norm(y()),
        Connective::Implies => x.residuum(y()),
        Connective::StrongDisj => x.bounded_sum(y()),
        Connective::MinConj => std::cmp::min(x, y()).clone(),
        Connective::MaxDisj => std::cmp::max(x, y()).clone(),
        Connective::Equiv => x.residuum(y()).t_norm(&y().residuum(x)),
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EvalContext<'m> {
    pub model: &'m Model,
    pub variant: SkepticalVariant,
}

impl<'m> EvalContext<'m> {
    pub fn new(model: &'m Model) -> Self {
        EvalContext {
            model,
            variant: SkepticalVariant::default(),
        }
    }

    pub fn with_variant(model: &'m Model, variant: SkepticalVariant) -> Self {
        EvalContext { model, variant }
    }

    /// Values of `f` at every state, indexed like `model.states()`.
    pub fn values(&self, f: &Formula) -> Result<Vec<Rational01>, EvalError> {
        let m = self.model;
        let n = m.num_states();
        let pointwise =
            |op: Connective, l: &Formula, r: &Formula| -> Result<Vec<Rational01>, EvalError> {
                let (lv, rv) = (self.values(l)?, self.values(r)?);
                Ok(lv
                    .iter()
                    .zip(&rv)
                    .map(|(x, y)| apply_connective(op, x, Some(y)))
                    .collect())
            };
        match f {
            Formula::Atom(p) => {
                let pi = m
                    .prop_index(p.as_str())
                    .ok_or_else(|| EvalError::UnknownProp(p.to_string()))?;
                Ok((0..n).map(|s| m.value(s, pi).clone()).collect())
            }
            Formula::Meta(name) => Err(EvalError::Unbound(name.clone())),
            Formula::Bottom => Ok(vec![Rational01::zero(); n]),
            Formula::Not(sub) => Ok(self
                .values(sub)?
                .iter()
                .map(Rational01::complement)
                .collect()),
            Formula::StrongConj(l, r) => pointwise(Connective::StrongConj, l, r),
            Formula::Implies(l, r) => pointwise(Connective::Implies, l, r),
            Formula::StrongDisj(l, r) => pointwise(Connective::StrongDisj, l, r),
            Formula::MinConj(l, r) => pointwise(Connective::MinConj, l, r),
            Formula::MaxDisj(l, r) => pointwise(Connective::MaxDisj, l, r),
            Formula::Equiv(l, r) => pointwise(Connective::Equiv, l, r),
            Formula::Belief { agent, kind, sub } => {
                let a = match agent {
                    AgentRef::Named(a) => m
                        .agent_index(a.as_str())
                        .ok_or_else(|| EvalError::UnknownAgent(a.to_string()))?,
                    AgentRef::Meta(name) => return Err(EvalError::Unbound(name.clone())),
                };
                let inner = self.values(sub)?;
                Ok((0..n)
                    .map(|s| match kind {
                        BeliefKind::PseudoClassical => {
                            pseudo_classical(m.access_matrix(a)[s].as_slice(), &inner)
                        }
                        BeliefKind::Skeptical => {
                            skeptical(m.access_matrix(a)[s].as_slice(), &inner, s, self.variant)
                        }
                    })
                    .collect())
            }
        }
    }

    pub fn eval(&self, state: &str, f: &Formula) -> Result<Rational01, EvalError> {
        let s = self
            .model
            .state_index(state)
            .ok_or_else(|| EvalError::UnknownState(state.to_string()))?;
        Ok(self.values(f)?.swap_remove(s))
    }
}

/// `min_{s'} max(1 - r(s,s'), V_{s'}(φ))`
fn pseudo_classical(row: &[Rational01], inner: &[Rational01]) -> Rational01 {
    row.iter()
        .zip(inner)
        .map(|(r, v)| std::cmp::max(r.complement(), v.clone()))
        .min()
        .expect("models have at least one state")
}

/// `min_{s'} f(s')` with `f = 1` if `r > 0` and `v = 1`, `r·v` if `r > 0`
/// and `v ≠ 1`, and `V_{s'}(φ)` if `r = 0`.
fn skeptical(
    row: &[Rational01],
    inner: &[Rational01],
    s: usize,
    variant: SkepticalVariant,
) -> Rational01 {
    let one = Rational01::one();
    let mut best: Option<Cow<'_, Rational01>> = None;
    fn offer<'a>(candidate: Cow<'a, Rational01>, best: &mut Option<Cow<'a, Rational01>>) {
        if best.as_ref().is_none_or(|b| candidate < *b) {
            *best = Some(candidate);
        }
    }
    match variant {
        // v is fixed, so r·v is smallest at the smallest positive r
        SkepticalVariant::SourceState => {
            let v = &inner[s];
            let mut least_r: Option<&Rational01> = None;
            for (r, target) in row.iter().zip(inner) {
                if r.is_zero() {
                    offer(Cow::Borrowed(target), &mut best);
                } else if least_r.is_none_or(|l| r < l) {
                    least_r = Some(r);
                }
            }
            if let Some(r) = least_r {
                offer(
                    if v.is_one() {
                        Cow::Borrowed(&one)
                    } else {
                        Cow::Owned(r.product(v))
                    },
                    &mut best,
                );
            }
        }
        SkepticalVariant::TargetState => {
            for (r, target) in row.iter().zip(inner) {
                let candidate = if r.is_zero() {
                    Cow::Borrowed(target)
                } else if target.is_one() {
                    Cow::Borrowed(&one)
                } else {
                    Cow::Owned(r.product(target))
                };
                offer(candidate, &mut best);
            }
        }
    }
    best.expect("models have at least one state").into_owned()
}

pub fn eval_formula(
    ctx: &EvalContext<'_>,
    state: &str,
    f: &Formula,
) -> Result<Rational01, EvalError> {
    ctx.eval(state, f)
}

/// Values at every state, keyed (and so ordered) by state id.
pub fn eval_all_states(
    ctx: &EvalContext<'_>,
    f: &Formula,
) -> Result<BTreeMap<StateId, Rational01>, EvalError> {
    let values = ctx.values(f)?;
    Ok(ctx.model.states().iter().cloned().zip(values).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    fn q(n: i64, d: i64) -> Rational01 {
        Rational01::from_ratio(n, d)
    }

    #[test]
    fn connective_examples() {
        assert_eq!(
            apply_connective(Connective::StrongConj, &q(4, 5), Some(&q(9, 10))),
            q(7, 10)
        );
        for x in [q(0, 1), q(1, 3), q(1, 1)] {
            assert_eq!(apply_connective(Connective::Implies, &x, Some(&x)), q(1, 1));
        }
        assert_eq!(apply_connective(Connective::Not, &q(0, 1), None), q(1, 1));
        assert_eq!(
            apply_connective(Connective::StrongDisj, &q(1, 2), Some(&q(2, 3))),
            q(1, 1)
        );
        assert_eq!(
            apply_connective(Connective::MinConj, &q(1, 2), Some(&q(2, 3))),
            q(1, 2)
        );
        assert_eq!(
            apply_connective(Connective::MaxDisj, &q(1, 2), Some(&q(2, 3))),
            q(2, 3)
        );
        assert_eq!(
            apply_connective(Connective::Equiv, &q(1, 2), Some(&q(4, 5))),
            q(7, 10)
        );
    }

    fn one_state(p: Rational01, r: Rational01) -> Model {
        let mut b = Model::builder(&["s"], &["a"], &["p"]).unwrap();
        b.set_access("a", "s", "s", r)
            .unwrap()
            .set_value("s", "p", p)
            .unwrap();
        b.build().unwrap()
    }

    #[test]
    fn errors() {
        let m = one_state(q(1, 2), q(1, 1));
        let ctx = EvalContext::new(&m);
        let f = parse_formula("p").unwrap();
        assert_eq!(ctx.eval("t", &f), Err(EvalError::UnknownState("t".into())));
        assert_eq!(
            ctx.eval("s", &parse_formula("q").unwrap()),
            Err(EvalError::UnknownProp("q".into()))
        );
        assert_eq!(
            ctx.eval("s", &parse_formula("B{b} p").unwrap()),
            Err(EvalError::UnknownAgent("b".into()))
        );
        assert_eq!(
            ctx.eval("s", &Formula::meta("phi")),
            Err(EvalError::Unbound("phi".into()))
        );
    }

    #[test]
    fn bottom_is_zero() {
        let m = one_state(q(1, 2), q(1, 1));
        assert_eq!(
            EvalContext::new(&m).eval("s", &Formula::Bottom).unwrap(),
            q(0, 1)
        );
    }

    #[test]
    fn skeptical_guard_and_product() {
        let m = one_state(q(1, 2), q(3, 5));
        let ctx = EvalContext::new(&m);
        assert_eq!(
            ctx.eval("s", &parse_formula("S{a} p").unwrap()).unwrap(),
            q(3, 10)
        );
        assert_eq!(
            ctx.eval("s", &parse_formula("S{a} (p -> p)").unwrap())
                .unwrap(),
            q(1, 1)
        );
        let crisp_zero = one_state(q(1, 2), q(0, 1));
        assert_eq!(
            EvalContext::new(&crisp_zero)
                .eval("s", &parse_formula("S{a} p").unwrap())
                .unwrap(),
            q(1, 2)
        );
    }

    #[test]
    fn variant_parsing() {
        assert_eq!(
            "source".parse::<SkepticalVariant>().unwrap(),
            SkepticalVariant::SourceState
        );
        assert_eq!(
            "target".parse::<SkepticalVariant>().unwrap(),
            SkepticalVariant::TargetState
        );
        assert!("both".parse::<SkepticalVariant>().is_err());
    }
}
