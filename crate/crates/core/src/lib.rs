//! Exact model checking for Łukasiewicz logic extended with two fuzzy belief
//! operators: pseudo-classical belief `B{a}` and skeptical belief `S{a}`.
//!
//! The crate covers
//! - [`formula`]: syntax, parser, printer;
//! - [`model`]: finite fuzzy Kripke models, frame properties, model files,
//!   random sampling;
//! - [`semantics`]: exact rational evaluation;
//! - [`validity`]: scheme instantiation and counterexample search;
//! - [`hilbert`]: axiom catalogs and derivation checking;
//! - [`scenarios`]: fuzzy muddy children and the CPA experiment model;
//! - [`cli`]: the `fdl` command line.
//!
//! ```
//! use fuzzy_doxastic::{fixtures, formula::parse_formula, semantics::EvalContext, model::Rational01};
//!
//! let m1 = fixtures::m1();
//! let v = EvalContext::new(&m1).eval("s0", &parse_formula("B{a} p").unwrap()).unwrap();
//! assert_eq!(v, Rational01::from_ratio(4, 5));
//! ```

pub mod cli;
pub mod fixtures;
pub mod formula;
pub mod hilbert;
pub mod model;
pub mod scenarios;
pub mod semantics;
pub mod validity;
