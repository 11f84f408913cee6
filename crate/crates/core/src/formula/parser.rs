//! Recursive-descent parser for the concrete formula syntax.
//!
//! ```text
//! formula := impl
//! impl    := disj (("->" | "<->") impl)?
//! disj    := conj (("+" | "\/") conj)*
//! conj    := unary (("&" | "/\") unary)*
//! unary   := ("!" | "B{" ident "}" | "S{" ident "}")* primary
//! primary := "bot" | ident | "(" formula ")"
//! ```
//!
//! Scheme templates additionally accept `?name` leaves and `B{?name}` agents.

use std::fmt;

use thiserror::Error;

use super::ast::{is_ident, AgentId, AgentRef, BeliefKind, BinaryOp, Formula, PropId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Empty,
    UnknownEscape(char),
    Syntax {
        found: String,
        expected: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Empty => write!(f, "empty input"),
            ParseErrorKind::UnknownEscape(c) => {
                write!(f, "{}:{}: unknown escape `\\{c}`", self.line, self.column)
            }
            ParseErrorKind::Syntax { found, expected } => write!(
                f,
                "{}:{}: unexpected {found}, expected one of: {}",
                self.line,
                self.column,
                expected.join(", ")
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Meta(String),
    Bot,
    LParen,
    RParen,
    Bang,
    Amp,
    Plus,
    Wedge,
    Vee,
    Arrow,
    Equiv,
    Belief(BeliefKind, AgentRef),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Meta(s) => format!("metavariable `?{s}`"),
            Tok::Bot => "`bot`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Wedge => "`/\\`".into(),
            Tok::Vee => "`\\/`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Equiv => "`<->`".into(),
            Tok::Belief(k, a) => format!("`{}{{{a}}}`", k.prefix()),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    line: usize,
    column: usize,
    allow_meta: bool,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str, allow_meta: bool) -> Self {
        Lexer {
            chars: text.char_indices().peekable(),
            line: 1,
            column: 1,
            allow_meta,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let (_, c) = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|&(_, c)| c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn err(&self, line: usize, column: usize, found: String, expected: &[&str]) -> ParseError {
        ParseError {
            line,
            column,
            kind: ParseErrorKind::Syntax {
                found,
                expected: expected.iter().map(|s| s.to_string()).collect(),
            },
        }
    }

    fn word(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        s
    }

    fn expect_char(&mut self, want: char, expected: &str) -> Result<(), ParseError> {
        self.skip_ws();
        let (line, column) = (self.line, self.column);
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.err(line, column, format!("`{c}`"), &[expected])),
            None => Err(self.err(line, column, "end of input".into(), &[expected])),
        }
    }

    fn meta_name(&mut self, line: usize, column: usize) -> Result<String, ParseError> {
        let name = self.word();
        if is_ident(&name) {
            Ok(name)
        } else {
            Err(self.err(line, column, "`?`".into(), &["metavariable name"]))
        }
    }

    fn next_token(&mut self) -> Result<Spanned, ParseError> {
        self.skip_ws();
        let (line, column) = (self.line, self.column);
        let spanned = |tok| Ok(Spanned { tok, line, column });
        let Some(c) = self.peek() else {
            return spanned(Tok::Eof);
        };
        match c {
            '(' | ')' | '!' | '&' | '+' => {
                self.bump();
                spanned(match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '!' => Tok::Bang,
                    '&' => Tok::Amp,
                    _ => Tok::Plus,
                })
            }
            '/' => {
                self.bump();
                match self.peek() {
                    Some('\\') => {
                        self.bump();
                        spanned(Tok::Wedge)
                    }
                    _ => Err(self.err(line, column, "`/`".into(), &["`/\\`"])),
                }
            }
            '\\' => {
                self.bump();
                match self.peek() {
                    Some('/') => {
                        self.bump();
                        spanned(Tok::Vee)
                    }
                    Some(other) => Err(ParseError {
                        line,
                        column,
                        kind: ParseErrorKind::UnknownEscape(other),
                    }),
                    None => Err(self.err(line, column, "`\\`".into(), &["`\\/`"])),
                }
            }
            '-' => {
                self.bump();
                match self.peek() {
                    Some('>') => {
                        self.bump();
                        spanned(Tok::Arrow)
                    }
                    _ => Err(self.err(line, column, "`-`".into(), &["`->`"])),
                }
            }
            '<' => {
                self.bump();
                if self.peek() == Some('-') {
                    self.bump();
                    if self.peek() == Some('>') {
                        self.bump();
                        return spanned(Tok::Equiv);
                    }
                }
                Err(self.err(line, column, "`<`".into(), &["`<->`"]))
            }
            '?' if self.allow_meta => {
                self.bump();
                let name = self.meta_name(line, column)?;
                spanned(Tok::Meta(name))
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let word = self.word();
                if word == "bot" {
                    return spanned(Tok::Bot);
                }
                if word == "B" || word == "S" {
                    self.skip_ws();
                    if self.peek() == Some('{') {
                        self.bump();
                        let kind = if word == "B" {
                            BeliefKind::PseudoClassical
                        } else {
                            BeliefKind::Skeptical
                        };
                        self.skip_ws();
                        let (aline, acol) = (self.line, self.column);
                        let agent = if self.allow_meta && self.peek() == Some('?') {
                            self.bump();
                            AgentRef::Meta(self.meta_name(aline, acol)?)
                        } else {
                            let name = self.word();
                            match AgentId::new(name) {
                                Ok(a) => AgentRef::Named(a),
                                Err(_) => {
                                    let found = self
                                        .peek()
                                        .map_or("end of input".into(), |c| format!("`{c}`"));
                                    return Err(self.err(
                                        aline,
                                        acol,
                                        found,
                                        &["agent identifier"],
                                    ));
                                }
                            }
                        };
                        self.expect_char('}', "`}`")?;
                        return spanned(Tok::Belief(kind, agent));
                    }
                }
                spanned(Tok::Ident(word))
            }
            other => {
                self.bump();
                Err(self.err(line, column, format!("`{other}`"), &["formula"]))
            }
        }
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    /// In scheme templates a bare `B` or `S` before an operand abbreviates
    /// `B{?a}` or `S{?a}`.
    bare_belief: bool,
}

const PRIMARY_START: &[&str] = &["`!`", "`B{`", "`S{`", "`bot`", "identifier", "`(`"];

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn advance(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        let t = self.peek();
        ParseError {
            line: t.line,
            column: t.column,
            kind: ParseErrorKind::Syntax {
                found: t.tok.describe(),
                expected: expected.iter().map(|s| s.to_string()).collect(),
            },
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        let op = match self.peek().tok {
            Tok::Arrow => BinaryOp::Implies,
            Tok::Equiv => BinaryOp::Equiv,
            _ => return Ok(lhs),
        };
        self.advance();
        let rhs = self.implication()?;
        Ok(Formula::binary(op, lhs, rhs))
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => BinaryOp::StrongDisj,
                Tok::Vee => BinaryOp::MaxDisj,
                _ => return Ok(lhs),
            };
            self.advance();
            let rhs = self.conjunction()?;
            lhs = Formula::binary(op, lhs, rhs);
        }
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().tok {
                Tok::Amp => BinaryOp::StrongConj,
                Tok::Wedge => BinaryOp::MinConj,
                _ => return Ok(lhs),
            };
            self.advance();
            let rhs = self.unary()?;
            lhs = Formula::binary(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().tok.clone() {
            Tok::Bang => {
                self.advance();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Belief(kind, agent) => {
                self.advance();
                let sub = self.unary()?;
                Ok(Formula::Belief {
                    agent,
                    kind,
                    sub: Box::new(sub),
                })
            }
            Tok::Ident(name)
                if self.bare_belief && (name == "B" || name == "S") && self.operand_follows() =>
            {
                self.advance();
                let kind = if name == "B" {
                    BeliefKind::PseudoClassical
                } else {
                    BeliefKind::Skeptical
                };
                let sub = self.unary()?;
                Ok(Formula::Belief {
                    agent: AgentRef::Meta("a".into()),
                    kind,
                    sub: Box::new(sub),
                })
            }
            _ => self.primary(),
        }
    }

    fn operand_follows(&self) -> bool {
        let next = &self.toks[(self.pos + 1).min(self.toks.len() - 1)].tok;
        matches!(
            next,
            Tok::Bang | Tok::Belief(..) | Tok::Ident(_) | Tok::Meta(_) | Tok::Bot | Tok::LParen
        )
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().tok.clone() {
            Tok::Bot => {
                self.advance();
                Ok(Formula::Bottom)
            }
            Tok::Ident(name) => {
                self.advance();
                Ok(Formula::Atom(
                    PropId::new(name).expect("lexer yields identifiers"),
                ))
            }
            Tok::Meta(name) => {
                self.advance();
                Ok(Formula::Meta(name))
            }
            Tok::LParen => {
                self.advance();
                let inner = self.implication()?;
                match self.peek().tok {
                    Tok::RParen => {
                        self.advance();
                        Ok(inner)
                    }
                    _ => {
                        Err(self
                            .unexpected(&["`)`", "`&`", "`/\\`", "`+`", "`\\/`", "`->`", "`<->`"]))
                    }
                }
            }
            _ => Err(self.unexpected(PRIMARY_START)),
        }
    }
}

fn parse(text: &str, allow_meta: bool) -> Result<Formula, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError {
            line: 1,
            column: 1,
            kind: ParseErrorKind::Empty,
        });
    }
    let mut lexer = Lexer::new(text, allow_meta);
    let mut toks = Vec::new();
    loop {
        let t = lexer.next_token()?;
        let eof = t.tok == Tok::Eof;
        toks.push(t);
        if eof {
            break;
        }
    }
    let mut parser = Parser {
        toks,
        pos: 0,
        bare_belief: allow_meta,
    };
    let f = parser.implication()?;
    if parser.peek().tok != Tok::Eof {
        return Err(parser.unexpected(&[
            "`&`",
            "`/\\`",
            "`+`",
            "`\\/`",
            "`->`",
            "`<->`",
            "end of input",
        ]));
    }
    Ok(f)
}

/// Parses a ground formula.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    parse(text, false)
}

/// Parses a scheme template; `?phi` leaves and `B{?a}` agents are allowed,
/// and `B ?phi` is read as `B{?a} ?phi`.
pub fn parse_scheme_template(text: &str) -> Result<Formula, ParseError> {
    parse(text, true)
}
