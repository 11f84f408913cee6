//! Shared helpers for the integration tests, including a naive recursive
//! evaluator used as an oracle for the main evaluator.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fuzzy_doxastic::formula::{random_formula, AgentRef, BeliefKind, Formula, FormulaGen};
use fuzzy_doxastic::model::{sample_model, FrameProperty, Model, Rational01, SamplerConfig};
use fuzzy_doxastic::semantics::SkepticalVariant;

pub fn q(n: i64, d: i64) -> Rational01 {
    Rational01::from_ratio(n, d)
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn lmin(a: BigRational, b: BigRational) -> BigRational {
    if a < b {
        a
    } else {
        b
    }
}

fn lmax(a: BigRational, b: BigRational) -> BigRational {
    if a > b {
        a
    } else {
        b
    }
}

fn imp(x: &BigRational, y: &BigRational) -> BigRational {
    lmin(big(1), big(1) - x + y)
}

/// `V_s(f)` computed straight from the definitions, one state at a time,
/// re-evaluating subformulas at every successor.
pub fn oracle(m: &Model, s: usize, f: &Formula, variant: SkepticalVariant) -> BigRational {
    let v = |g: &Formula, t: usize| oracle(m, t, g, variant);
    match f {
        Formula::Atom(p) => m
            .value(s, m.prop_index(p.as_str()).expect("known prop"))
            .as_big()
            .clone(),
        Formula::Meta(_) => panic!("oracle needs ground formulas"),
        Formula::Bottom => BigRational::zero(),
        Formula::Not(g) => big(1) - v(g, s),
        Formula::StrongConj(a, b) => lmax(big(0), v(a, s) + v(b, s) - big(1)),
        Formula::Implies(a, b) => imp(&v(a, s), &v(b, s)),
        Formula::StrongDisj(a, b) => lmin(big(1), v(a, s) + v(b, s)),
        Formula::MinConj(a, b) => lmin(v(a, s), v(b, s)),
        Formula::MaxDisj(a, b) => lmax(v(a, s), v(b, s)),
        Formula::Equiv(a, b) => {
            let (x, y) = (v(a, s), v(b, s));
            lmax(big(0), imp(&x, &y) + imp(&y, &x) - big(1))
        }
        Formula::Belief { agent, kind, sub } => {
            let AgentRef::Named(a) = agent else {
                panic!("oracle needs ground formulas")
            };
            let ai = m.agent_index(a.as_str()).expect("known agent");
            let mut best: Option<BigRational> = None;
            for t in 0..m.num_states() {
                let r = m.access(ai, s, t).as_big().clone();
                let here = match kind {
                    BeliefKind::PseudoClassical => lmax(big(1) - &r, v(sub, t)),
                    BeliefKind::Skeptical => {
                        if r.is_zero() {
                            v(sub, t)
                        } else {
                            let val = match variant {
                                SkepticalVariant::SourceState => v(sub, s),
                                SkepticalVariant::TargetState => v(sub, t),
                            };
                            if val.is_one() {
                                big(1)
                            } else {
                                r * val
                            }
                        }
                    }
                };
                best = Some(match best {
                    None => here,
                    Some(b) => lmin(b, here),
                });
            }
            best.expect("at least one state")
        }
    }
}

pub fn sampler(
    states: usize,
    denominator: u32,
    seed: u64,
    constraints: &[FrameProperty],
) -> SamplerConfig {
    SamplerConfig {
        states,
        agents: 1,
        props: vec!["p".into(), "q".into()],
        denominator,
        seed,
        constraints: constraints.iter().copied().collect(),
    }
}

/// A random model with 1–4 states, 1–2 agents and denominators up to 12,
/// plus a random formula over its vocabulary.
pub fn random_case(seed: u64, depth: usize) -> (Model, Formula) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = SamplerConfig {
        states: rng.gen_range(1..=4),
        agents: rng.gen_range(1..=2),
        props: vec!["p".into(), "q".into()],
        denominator: rng.gen_range(1..=12),
        seed: rng.gen(),
        constraints: Default::default(),
    };
    let m = sample_model(&cfg).expect("unconstrained sampling succeeds");
    let agents: Vec<&str> = m.agents().iter().map(|a| a.as_str()).collect();
    let gen = FormulaGen::new(&["p", "q"], &agents);
    let f = random_formula(&mut rng, &gen, depth);
    (m, f)
}

pub fn variants() -> [SkepticalVariant; 2] {
    [SkepticalVariant::SourceState, SkepticalVariant::TargetState]
}
