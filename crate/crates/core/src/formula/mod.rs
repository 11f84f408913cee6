//! Formula syntax: AST, concrete text syntax, and derived-connective expansion.

mod ast;
mod parser;

pub use ast::{
    print_formula, random_formula, AgentId, AgentRef, BeliefKind, BinaryOp, Formula, FormulaGen,
    IdentError, PropId,
};
pub use parser::{parse_formula, parse_scheme_template, ParseError, ParseErrorKind};

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}
