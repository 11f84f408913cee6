use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::catalog::SchemeCatalog;
use super::system::{AxiomSystem, Base, SystemError};
use crate::formula::{
    parse_formula, AgentId, AgentRef, BeliefKind, Formula, IdentError, ParseError,
};
use crate::validity::{Scheme, Substitution};

/// One-way syntactic matching: metavariables occur only in the scheme.
/// Returns `None` when `f` is not ground or has a different shape.
pub fn match_scheme(f: &Formula, s: &Scheme) -> Option<Substitution> {
    if !f.is_ground() {
        return None;
    }
    let mut sub = Substitution::new();
    go(s.template(), f, &mut sub).then_some(sub)
}

fn go(t: &Formula, f: &Formula, sub: &mut Substitution) -> bool {
    match (t, f) {
        (Formula::Meta(name), _) => match sub.formulas.get(name) {
            Some(bound) => bound == f,
            None => {
                sub.formulas.insert(name.clone(), f.clone());
                true
            }
        },
        (Formula::Atom(a), Formula::Atom(b)) => a == b,
        (Formula::Bottom, Formula::Bottom) => true,
        (Formula::Not(x), Formula::Not(y)) => go(x, y, sub),
        (
            Formula::Belief {
                agent: ta,
                kind: tk,
                sub: ts,
            },
            Formula::Belief {
                agent: AgentRef::Named(fa),
                kind: fk,
                sub: fs,
            },
        ) => {
            if tk != fk {
                return false;
            }
            let agent_ok = match ta {
                AgentRef::Named(a) => a == fa,
                AgentRef::Meta(name) => match sub.agents.get(name) {
                    Some(bound) => bound == fa,
                    None => {
                        sub.agents.insert(name.clone(), fa.clone());
                        true
                    }
                },
            };
            agent_ok && go(ts, fs, sub)
        }
        _ => match (t.as_binary(), f.as_binary()) {
            (Some((op1, l1, r1)), Some((op2, l2, r2))) => {
                op1 == op2 && go(l1, l2, sub) && go(r1, r2, sub)
            }
            _ => false,
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    /// Instance of a catalog scheme. The substitution may be partial or
    /// empty; the instance is found by matching and any given binding must
    /// agree with it.
    Axiom { name: String, subst: Substitution },
    /// Zero-based index into the premises.
    Premise(usize),
    /// One-based lines `i` and `j`, where line `j` is `line i -> current`.
    ModusPonens(usize, usize),
    /// The current line is the belief of `agent` in one-based line `from`.
    Generalization { agent: AgentId, from: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationLine {
    pub formula: Formula,
    pub just: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Derivation {
    pub premises: Vec<Formula>,
    pub lines: Vec<DerivationLine>,
}

impl Derivation {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineDiagnostic {
    /// One-based line number.
    pub line: usize,
    pub ok: bool,
    /// Whether a premise occurs among the line's justification ancestors.
    pub premise_dependent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub lines: Vec<LineDiagnostic>,
}

impl VerificationReport {
    pub fn first_error(&self) -> Option<&LineDiagnostic> {
        self.lines.iter().find(|l| !l.ok)
    }
}

fn language_error(f: &Formula, base: Base) -> Option<String> {
    if !f.is_ground() {
        return Some(format!("formula `{f}` contains metavariables"));
    }
    let foreign = match base {
        Base::Pseudo => BeliefKind::Skeptical,
        Base::Skeptical => BeliefKind::PseudoClassical,
    };
    f.belief_kinds().contains(&foreign).then(|| {
        format!(
            "operator `{}` is not in the language of this system",
            foreign.prefix()
        )
    })
}

fn check_axiom(
    f: &Formula,
    name: &str,
    given: &Substitution,
    sys: &AxiomSystem,
) -> Result<(), String> {
    let scheme = SchemeCatalog::standard()
        .get(name)
        .ok_or_else(|| format!("unknown axiom scheme `{name}`"))?;
    if !sys.admits(name) {
        return Err(format!("scheme {name} is not an axiom of {sys}"));
    }
    let found = match_scheme(f, scheme).ok_or_else(|| format!("not an instance of {name}"))?;
    for (var, g) in &given.formulas {
        if found.formulas.get(var) != Some(g) {
            return Err(format!(
                "substitution for ?{var} disagrees with the instance"
            ));
        }
    }
    for (var, g) in &given.agents {
        if found.agents.get(var) != Some(g) {
            return Err(format!(
                "substitution for ?{var} disagrees with the instance"
            ));
        }
    }
    Ok(())
}

/// Checks every line; failures are reported per line and never abort the
/// pass. `ok` holds iff the derivation is non-empty and every line passes.
pub fn verify_derivation(d: &Derivation, sys: &AxiomSystem) -> VerificationReport {
    let mut lines: Vec<LineDiagnostic> = Vec::with_capacity(d.lines.len());
    let premise_error = d
        .premises
        .iter()
        .enumerate()
        .find_map(|(i, p)| language_error(p, sys.base).map(|e| format!("premise {i}: {e}")));

    for (k, line) in d.lines.iter().enumerate() {
        let number = k + 1;
        let earlier = |i: usize| -> Result<&DerivationLine, String> {
            if i == 0 || i >= number {
                Err(format!("line reference {i} must point to an earlier line"))
            } else {
                Ok(&d.lines[i - 1])
            }
        };
        let dep_of = |i: usize, lines: &[LineDiagnostic]| {
            i >= 1 && i < number && lines[i - 1].premise_dependent
        };

        let mut dependent = false;
        let check: Result<(), String> = language_error(&line.formula, sys.base)
            .map_or(Ok(()), Err)
            .and_then(|_| match &line.just {
                Justification::Axiom { name, subst } => {
                    check_axiom(&line.formula, name, subst, sys)
                }
                Justification::Premise(i) => {
                    dependent = true;
                    match d.premises.get(*i) {
                        None => Err(format!(
                            "premise index {i} out of range ({} premises)",
                            d.premises.len()
                        )),
                        Some(p) if *p != line.formula => Err(format!("premise {i} is `{p}`")),
                        Some(_) => Ok(()),
                    }
                }
                Justification::ModusPonens(i, j) => {
                    dependent = dep_of(*i, &lines) || dep_of(*j, &lines);
                    let (li, lj) = (earlier(*i)?, earlier(*j)?);
                    let expected = Formula::implies(li.formula.clone(), line.formula.clone());
                    if lj.formula == expected {
                        Ok(())
                    } else {
                        Err(format!("line {j} is not `{expected}`"))
                    }
                }
                Justification::Generalization { agent, from } => {
                    dependent = dep_of(*from, &lines);
                    let lf = earlier(*from)?;
                    let expected = Formula::Belief {
                        agent: AgentRef::Named(agent.clone()),
                        kind: sys.base.belief_kind(),
                        sub: Box::new(lf.formula.clone()),
                    };
                    if line.formula != expected {
                        Err(format!("generalization of line {from} is `{expected}`"))
                    } else if dependent {
                        Err("generalization over premise-dependent line".to_string())
                    } else {
                        Ok(())
                    }
                }
            });
        lines.push(LineDiagnostic {
            line: number,
            ok: check.is_ok(),
            premise_dependent: dependent,
            message: check.err(),
        });
    }

    if let Some(e) = premise_error {
        if let Some(first) = lines.first_mut() {
            first.ok = false;
            first.message.get_or_insert(e);
        }
    }
    let ok = !lines.is_empty() && lines.iter().all(|l| l.ok);
    VerificationReport { ok, lines }
}

#[derive(Debug, Error)]
pub enum DerivationError {
    #[error("invalid derivation file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error("{context}: {source}")]
    Parse { context: String, source: ParseError },
    #[error("{context}: {source}")]
    Ident { context: String, source: IdentError },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DerivationFile {
    system: String,
    #[serde(default)]
    premises: Vec<String>,
    lines: Vec<LineFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LineFile {
    formula: String,
    just: JustFile,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum JustFile {
    Axiom {
        name: String,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        subst: BTreeMap<String, String>,
    },
    Premise {
        index: usize,
    },
    Mp {
        from: [usize; 2],
    },
    Gen {
        agent: String,
        from: usize,
    },
}

fn formula(text: &str, context: impl FnOnce() -> String) -> Result<Formula, DerivationError> {
    parse_formula(text).map_err(|source| DerivationError::Parse {
        context: context(),
        source,
    })
}

fn agent(text: &str, context: impl FnOnce() -> String) -> Result<AgentId, DerivationError> {
    AgentId::new(text).map_err(|source| DerivationError::Ident {
        context: context(),
        source,
    })
}

/// Reads the JSON derivation format. Substitution keys naming an agent
/// metavariable of the scheme are read as agents, all others as formulas.
pub fn load_derivation(text: &str) -> Result<(AxiomSystem, Derivation), DerivationError> {
    let file: DerivationFile = serde_json::from_str(text)?;
    let sys: AxiomSystem = file.system.parse()?;
    let premises = file
        .premises
        .iter()
        .enumerate()
        .map(|(i, p)| formula(p, || format!("premise {i}")))
        .collect::<Result<Vec<_>, _>>()?;
    let mut lines = Vec::with_capacity(file.lines.len());
    for (k, l) in file.lines.iter().enumerate() {
        let ctx = || format!("line {}", k + 1);
        let f = formula(&l.formula, ctx)?;
        let just = match &l.just {
            JustFile::Axiom { name, subst } => {
                let agent_vars = SchemeCatalog::standard()
                    .get(name)
                    .map(Scheme::agent_vars)
                    .unwrap_or_default();
                let mut s = Substitution::new();
                for (var, v) in subst {
                    let c = || format!("line {} substitution ?{var}", k + 1);
                    if agent_vars.contains(var) {
                        s.agents.insert(var.clone(), agent(v, c)?);
                    } else {
                        s.formulas.insert(var.clone(), formula(v, c)?);
                    }
                }
                Justification::Axiom {
                    name: name.clone(),
                    subst: s,
                }
            }
            JustFile::Premise { index } => Justification::Premise(*index),
            JustFile::Mp { from: [i, j] } => Justification::ModusPonens(*i, *j),
            JustFile::Gen { agent: a, from } => Justification::Generalization {
                agent: agent(a, ctx)?,
                from: *from,
            },
        };
        lines.push(DerivationLine { formula: f, just });
    }
    Ok((sys, Derivation { premises, lines }))
}

pub fn save_derivation(sys: &AxiomSystem, d: &Derivation) -> String {
    let lines = d
        .lines
        .iter()
        .map(|l| LineFile {
            formula: l.formula.to_string(),
            just: match &l.just {
                Justification::Axiom { name, subst } => JustFile::Axiom {
                    name: name.clone(),
                    subst: subst
                        .formulas
                        .iter()
                        .map(|(k, v)| (k.clone(), v.to_string()))
                        .chain(subst.agents.iter().map(|(k, v)| (k.clone(), v.to_string())))
                        .collect(),
                },
                Justification::Premise(i) => JustFile::Premise { index: *i },
                Justification::ModusPonens(i, j) => JustFile::Mp { from: [*i, *j] },
                Justification::Generalization { agent, from } => JustFile::Gen {
                    agent: agent.to_string(),
                    from: *from,
                },
            },
        })
        .collect();
    let file = DerivationFile {
        system: sys.to_string(),
        premises: d.premises.iter().map(ToString::to_string).collect(),
        lines,
    };
    serde_json::to_string_pretty(&file).expect("derivation serializes")
}
