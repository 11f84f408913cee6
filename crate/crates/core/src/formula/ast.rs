use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid identifier `{0}`: expected [a-zA-Z_][a-zA-Z0-9_]*")]
pub struct IdentError(pub String);

pub(crate) fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

macro_rules! ident_newtype {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(try_from = "String", into = "String")]
        pub struct $name(String);

        impl $name {
            pub fn new(s: impl Into<String>) -> Result<Self, IdentError> {
                let s = s.into();
                if is_ident(&s) {
                    Ok($name(s))
                } else {
                    Err(IdentError(s))
                }
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl TryFrom<String> for $name {
            type Error = IdentError;
            fn try_from(s: String) -> Result<Self, IdentError> {
                $name::new(s)
            }
        }

        impl From<$name> for String {
            fn from(v: $name) -> String {
                v.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl std::borrow::Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }
    };
}

ident_newtype!(
    /// Atomic proposition name.
    PropId
);
ident_newtype!(
    /// Agent name.
    AgentId
);

/// An agent position inside a belief operator. Schemes may leave the agent
/// open (`B{?a}`); ground formulas always name one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AgentRef {
    Named(AgentId),
    Meta(String),
}

impl fmt::Display for AgentRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AgentRef::Named(a) => write!(f, "{a}"),
            AgentRef::Meta(m) => write!(f, "?{m}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BeliefKind {
    /// `B{a}`: infimum of `max(1 - r, V)`.
    PseudoClassical,
    /// `S{a}`: the piecewise operator where perfectly distinguished states
    /// still contribute their own value.
    Skeptical,
}

impl BeliefKind {
    pub fn prefix(self) -> char {
        match self {
            BeliefKind::PseudoClassical => 'B',
            BeliefKind::Skeptical => 'S',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    StrongConj,
    Implies,
    StrongDisj,
    MinConj,
    MaxDisj,
    Equiv,
}

impl BinaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::StrongConj => "&",
            BinaryOp::Implies => "->",
            BinaryOp::StrongDisj => "+",
            BinaryOp::MinConj => "/\\",
            BinaryOp::MaxDisj => "\\/",
            BinaryOp::Equiv => "<->",
        }
    }
}

/// Formula of the doxastic Łukasiewicz languages.
///
/// Derived connectives are kept as their own nodes; [`Formula::expand_derived`]
/// rewrites them into the primitive fragment. `Meta` leaves only occur in
/// scheme templates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(PropId),
    Meta(String),
    Bottom,
    Not(Box<Formula>),
    StrongConj(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    StrongDisj(Box<Formula>, Box<Formula>),
    MinConj(Box<Formula>, Box<Formula>),
    MaxDisj(Box<Formula>, Box<Formula>),
    Equiv(Box<Formula>, Box<Formula>),
    Belief {
        agent: AgentRef,
        kind: BeliefKind,
        sub: Box<Formula>,
    },
}

impl Formula {
    /// Panics on an invalid identifier; intended for literals in code.
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(PropId::new(name).expect("valid proposition name"))
    }

    pub fn meta(name: &str) -> Formula {
        Formula::Meta(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn binary(op: BinaryOp, l: Formula, r: Formula) -> Formula {
        let (l, r) = (Box::new(l), Box::new(r));
        match op {
            BinaryOp::StrongConj => Formula::StrongConj(l, r),
            BinaryOp::Implies => Formula::Implies(l, r),
            BinaryOp::StrongDisj => Formula::StrongDisj(l, r),
            BinaryOp::MinConj => Formula::MinConj(l, r),
            BinaryOp::MaxDisj => Formula::MaxDisj(l, r),
            BinaryOp::Equiv => Formula::Equiv(l, r),
        }
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::binary(BinaryOp::StrongConj, l, r)
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::binary(BinaryOp::Implies, l, r)
    }

    pub fn belief(agent: &str, kind: BeliefKind, sub: Formula) -> Formula {
        Formula::Belief {
            agent: AgentRef::Named(AgentId::new(agent).expect("valid agent name")),
            kind,
            sub: Box::new(sub),
        }
    }

    pub fn b(agent: &str, sub: Formula) -> Formula {
        Formula::belief(agent, BeliefKind::PseudoClassical, sub)
    }

    pub fn s(agent: &str, sub: Formula) -> Formula {
        Formula::belief(agent, BeliefKind::Skeptical, sub)
    }

    pub fn as_binary(&self) -> Option<(BinaryOp, &Formula, &Formula)> {
        Some(match self {
            Formula::StrongConj(l, r) => (BinaryOp::StrongConj, &**l, &**r),
            Formula::Implies(l, r) => (BinaryOp::Implies, &**l, &**r),
            Formula::StrongDisj(l, r) => (BinaryOp::StrongDisj, &**l, &**r),
            Formula::MinConj(l, r) => (BinaryOp::MinConj, &**l, &**r),
            Formula::MaxDisj(l, r) => (BinaryOp::MaxDisj, &**l, &**r),
            Formula::Equiv(l, r) => (BinaryOp::Equiv, &**l, &**r),
            _ => return None,
        })
    }

    /// Rewrites `+`, `/\`, `\/` and `<->` into `!`, `&`, `->`.
    pub fn expand_derived(&self) -> Formula {
        use Formula::*;
        match self {
            Atom(_) | Meta(_) | Bottom => self.clone(),
            Not(f) => Formula::not(f.expand_derived()),
            StrongConj(l, r) => Formula::and(l.expand_derived(), r.expand_derived()),
            Implies(l, r) => Formula::implies(l.expand_derived(), r.expand_derived()),
            // φ ⊻ ψ = ¬φ → ψ
            StrongDisj(l, r) => {
                Formula::implies(Formula::not(l.expand_derived()), r.expand_derived())
            }
            // φ ∧ ψ = φ & (φ → ψ)
            MinConj(l, r) => min_conj(l.expand_derived(), r.expand_derived()),
            // φ ∨ ψ = ((φ → ψ) → ψ) ∧ ((ψ → φ) → φ)
            MaxDisj(l, r) => {
                let (l, r) = (l.expand_derived(), r.expand_derived());
                let left = Formula::implies(Formula::implies(l.clone(), r.clone()), r.clone());
                let right = Formula::implies(Formula::implies(r, l.clone()), l);
                min_conj(left, right)
            }
            // φ ≡ ψ = (φ → ψ) & (ψ → φ)
            Equiv(l, r) => {
                let (l, r) = (l.expand_derived(), r.expand_derived());
                Formula::and(
                    Formula::implies(l.clone(), r.clone()),
                    Formula::implies(r, l),
                )
            }
            Belief { agent, kind, sub } => Belief {
                agent: agent.clone(),
                kind: *kind,
                sub: Box::new(sub.expand_derived()),
            },
        }
    }

    pub fn is_primitive(&self) -> bool {
        use Formula::*;
        match self {
            Atom(_) | Meta(_) | Bottom => true,
            Not(f) => f.is_primitive(),
            StrongConj(l, r) | Implies(l, r) => l.is_primitive() && r.is_primitive(),
            StrongDisj(..) | MinConj(..) | MaxDisj(..) | Equiv(..) => false,
            Belief { sub, .. } => sub.is_primitive(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Meta(_) | Formula::Bottom => 0,
            Formula::Not(f) | Formula::Belief { sub: f, .. } => 1 + f.depth(),
            other => {
                let (_, l, r) = other.as_binary().expect("binary node");
                1 + l.depth().max(r.depth())
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Meta(_) | Formula::Bottom => 1,
            Formula::Not(f) | Formula::Belief { sub: f, .. } => 1 + f.size(),
            other => {
                let (_, l, r) = other.as_binary().expect("binary node");
                1 + l.size() + r.size()
            }
        }
    }

    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::Atom(_) | Formula::Meta(_) | Formula::Bottom => {}
            Formula::Not(s) | Formula::Belief { sub: s, .. } => s.visit(f),
            other => {
                let (_, l, r) = other.as_binary().expect("binary node");
                l.visit(f);
                r.visit(f);
            }
        }
    }

    pub fn atoms(&self) -> BTreeSet<PropId> {
        let mut out = BTreeSet::new();
        self.visit(&mut |n| {
            if let Formula::Atom(p) = n {
                out.insert(p.clone());
            }
        });
        out
    }

    /// Named agents (metavariable agents excluded).
    pub fn agents(&self) -> BTreeSet<AgentId> {
        let mut out = BTreeSet::new();
        self.visit(&mut |n| {
            if let Formula::Belief {
                agent: AgentRef::Named(a),
                ..
            } = n
            {
                out.insert(a.clone());
            }
        });
        out
    }

    pub fn metavariables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |n| {
            if let Formula::Meta(m) = n {
                out.insert(m.clone());
            }
        });
        out
    }

    pub fn agent_metavariables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |n| {
            if let Formula::Belief {
                agent: AgentRef::Meta(m),
                ..
            } = n
            {
                out.insert(m.clone());
            }
        });
        out
    }

    pub fn is_ground(&self) -> bool {
        self.metavariables().is_empty() && self.agent_metavariables().is_empty()
    }

    pub fn belief_kinds(&self) -> BTreeSet<BeliefKind> {
        let mut out = BTreeSet::new();
        self.visit(&mut |n| {
            if let Formula::Belief { kind, .. } = n {
                out.insert(*kind);
            }
        });
        out
    }
}

fn min_conj(l: Formula, r: Formula) -> Formula {
    Formula::and(l.clone(), Formula::implies(l, r))
}

/// Fully parenthesized canonical text; parses back to the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(p) => write!(f, "{p}"),
            Formula::Meta(m) => write!(f, "?{m}"),
            Formula::Bottom => f.write_str("bot"),
            Formula::Not(s) => write!(f, "(!{s})"),
            Formula::Belief { agent, kind, sub } => {
                write!(f, "({}{{{agent}}} {sub})", kind.prefix())
            }
            other => {
                let (op, l, r) = other.as_binary().expect("binary node");
                write!(f, "({l} {} {r})", op.symbol())
            }
        }
    }
}

pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

/// Options for [`random_formula`].
#[derive(Debug, Clone)]
pub struct FormulaGen {
    pub atoms: Vec<PropId>,
    pub agents: Vec<AgentId>,
    pub kinds: Vec<BeliefKind>,
    pub include_bottom: bool,
    pub include_derived: bool,
}

impl FormulaGen {
    pub fn new(atoms: &[&str], agents: &[&str]) -> Self {
        FormulaGen {
            atoms: atoms
                .iter()
                .map(|a| PropId::new(*a).expect("valid atom"))
                .collect(),
            agents: agents
                .iter()
                .map(|a| AgentId::new(*a).expect("valid agent"))
                .collect(),
            kinds: vec![BeliefKind::PseudoClassical, BeliefKind::Skeptical],
            include_bottom: true,
            include_derived: true,
        }
    }
}

/// Draws a formula of depth at most `max_depth`.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, gen: &FormulaGen, max_depth: usize) -> Formula {
    let leaf = |rng: &mut R| {
        let n = gen.atoms.len() + usize::from(gen.include_bottom);
        let i = rng.gen_range(0..n.max(1));
        match gen.atoms.get(i) {
            Some(p) => Formula::Atom(p.clone()),
            None => Formula::Bottom,
        }
    };
    if max_depth == 0 || rng.gen_ratio(1, 4) {
        return leaf(rng);
    }
    let d = max_depth - 1;
    let binary_ops: &[BinaryOp] = if gen.include_derived {
        &[
            BinaryOp::StrongConj,
            BinaryOp::Implies,
            BinaryOp::StrongDisj,
            BinaryOp::MinConj,
            BinaryOp::MaxDisj,
            BinaryOp::Equiv,
        ]
    } else {
        &[BinaryOp::StrongConj, BinaryOp::Implies]
    };
    let can_believe = !gen.agents.is_empty() && !gen.kinds.is_empty();
    match rng.gen_range(0..4) {
        0 => Formula::not(random_formula(rng, gen, d)),
        1 if can_believe => {
            let agent = gen.agents[rng.gen_range(0..gen.agents.len())].clone();
            let kind = gen.kinds[rng.gen_range(0..gen.kinds.len())];
            Formula::Belief {
                agent: AgentRef::Named(agent),
                kind,
                sub: Box::new(random_formula(rng, gen, d)),
            }
        }
        _ => {
            let op = binary_ops[rng.gen_range(0..binary_ops.len())];
            Formula::binary(op, random_formula(rng, gen, d), random_formula(rng, gen, d))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn printer_examples() {
        assert_eq!(print_formula(&Formula::not(Formula::Bottom)), "(!bot)");
        let p = Formula::atom("p");
        assert_eq!(
            print_formula(&Formula::implies(p.clone(), p.clone())),
            "(p -> p)"
        );
        assert_eq!(print_formula(&Formula::s("a", p)), "(S{a} p)");
    }

    #[test]
    fn expansion_examples() {
        let (p, q) = (Formula::atom("p"), Formula::atom("q"));
        assert_eq!(
            Formula::binary(BinaryOp::StrongDisj, p.clone(), q.clone()).expand_derived(),
            Formula::implies(Formula::not(p.clone()), q.clone())
        );
        assert_eq!(
            Formula::binary(BinaryOp::MinConj, p.clone(), q.clone()).expand_derived(),
            Formula::and(p.clone(), Formula::implies(p.clone(), q.clone()))
        );
        assert_eq!(p.expand_derived(), p);
    }

    #[test]
    fn expansion_is_idempotent_and_primitive() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let gen = FormulaGen::new(&["p", "q"], &["a"]);
        for _ in 0..500 {
            let f = random_formula(&mut rng, &gen, 5);
            let once = f.expand_derived();
            assert!(once.is_primitive());
            assert_eq!(once.expand_derived(), once);
        }
    }

    #[test]
    fn identifiers() {
        assert!(PropId::new("m_a1").is_ok());
        assert!(PropId::new("_x").is_ok());
        assert!(PropId::new("1x").is_err());
        assert!(AgentId::new("").is_err());
        assert_ne!(PropId::new("P").unwrap(), PropId::new("p").unwrap());
    }
}
