use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::catalog::{base_name, PROPOSITIONAL};
use crate::formula::BeliefKind;
use crate::model::FrameProperty;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown axiom system `{0}` (expected BL, BL_<D45T letters>, SBL or SBL_star)")]
pub struct SystemError(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Base {
    /// `BŁ`, over pseudo-classical belief `B`.
    Pseudo,
    /// `𝔅Ł`, over skeptical belief `S`.
    Skeptical,
}

impl Base {
    pub fn belief_kind(self) -> BeliefKind {
        match self {
            Base::Pseudo => BeliefKind::PseudoClassical,
            Base::Skeptical => BeliefKind::Skeptical,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extension {
    D,
    Four,
    Five,
    T,
    Star,
}

impl Extension {
    fn letter(self) -> &'static str {
        match self {
            Extension::D => "D",
            Extension::Four => "4",
            Extension::Five => "5",
            Extension::T => "T",
            Extension::Star => "star",
        }
    }

    /// Schemes the extension adds.
    pub fn schemes(self) -> &'static [&'static str] {
        match self {
            Extension::D => &["LB2"],
            Extension::Four => &["LB3"],
            Extension::Five => &["LB4"],
            Extension::T => &["LB5"],
            Extension::Star => &["SBplus", "SBminus"],
        }
    }

    /// Frame class the extension is sound for.
    pub fn frame_property(self) -> FrameProperty {
        match self {
            Extension::D => FrameProperty::Serial,
            Extension::Four => FrameProperty::Transitive,
            Extension::Five => FrameProperty::Recognizable,
            Extension::T => FrameProperty::Reflexive,
            Extension::Star => FrameProperty::RCrisp,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomSystem {
    pub base: Base,
    pub extensions: BTreeSet<Extension>,
}

impl AxiomSystem {
    pub fn bl() -> Self {
        AxiomSystem {
            base: Base::Pseudo,
            extensions: BTreeSet::new(),
        }
    }

    pub fn sbl() -> Self {
        AxiomSystem {
            base: Base::Skeptical,
            extensions: BTreeSet::new(),
        }
    }

    /// Whether the named catalog scheme is an axiom of this system.
    pub fn admits(&self, scheme: &str) -> bool {
        let base = base_name(scheme);
        if PROPOSITIONAL.contains(&base) {
            return true;
        }
        let core: &[&str] = match self.base {
            Base::Pseudo => &["LB1"],
            Base::Skeptical => &["SB1", "SB2", "SB3"],
        };
        core.contains(&base) || self.extensions.iter().any(|e| e.schemes().contains(&base))
    }

    /// Frame constraints under which every axiom of the system is valid.
    pub fn frame_constraints(&self) -> BTreeSet<FrameProperty> {
        let mut out: BTreeSet<_> = self.extensions.iter().map(|e| e.frame_property()).collect();
        if self.base == Base::Skeptical {
            // 𝔅Ł itself is sound on every model; star needs r-crisp only
            out.retain(|p| *p == FrameProperty::RCrisp);
        }
        out
    }
}

impl FromStr for AxiomSystem {
    type Err = SystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || SystemError(s.to_string());
        match s {
            "BL" => return Ok(AxiomSystem::bl()),
            "SBL" => return Ok(AxiomSystem::sbl()),
            "SBL_star" | "SBL*" => {
                return Ok(AxiomSystem {
                    base: Base::Skeptical,
                    extensions: [Extension::Star].into(),
                });
            }
            _ => {}
        }
        let letters = s
            .strip_prefix("BL_")
            .filter(|l| !l.is_empty())
            .ok_or_else(err)?;
        let mut extensions = BTreeSet::new();
        for c in letters.chars() {
            let e = match c {
                'D' => Extension::D,
                '4' => Extension::Four,
                '5' => Extension::Five,
                'T' => Extension::T,
                _ => return Err(err()),
            };
            if !extensions.insert(e) {
                return Err(err());
            }
        }
        Ok(AxiomSystem {
            base: Base::Pseudo,
            extensions,
        })
    }
}

impl fmt::Display for AxiomSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.base {
            Base::Pseudo => "BL",
            Base::Skeptical => "SBL",
        };
        f.write_str(base)?;
        if !self.extensions.is_empty() {
            f.write_str("_")?;
            for e in &self.extensions {
                f.write_str(e.letter())?;
            }
        }
        Ok(())
    }
}
