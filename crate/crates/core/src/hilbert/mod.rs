//! Axiom systems over Łukasiewicz belief logics, scheme matching, and a
//! checker for Hilbert-style derivations.
//!
//! Tautologies of Łukasiewicz logic are not decided here. A derivation
//! reaches them from the catalog schemes by modus ponens.

mod catalog;
mod derivation;
mod system;

pub use catalog::{SchemeCatalog, PROPOSITIONAL};
pub use derivation::{
    load_derivation, match_scheme, save_derivation, verify_derivation, Derivation, DerivationError,
    DerivationLine, Justification, LineDiagnostic, VerificationReport,
};
pub use system::{AxiomSystem, Base, Extension, SystemError};
