//! Recursive-descent parser for the formula language.
//!
//! ```text
//! formula := iff
//! iff     := imp { "<->" imp }
//! imp     := or [ "->" imp ]
//! or      := and { "|" and }
//! and     := unary { "&" unary }
//! unary   := "~" unary | "(" formula ")" | quant | atom
//! quant   := ("forall" | "exists") var "." formula
//! atom    := "R" "(" term "," term ")" | term "=" term
//! term    := var | "s" "(" term ")"
//! ```
//!
//! A quantifier body extends as far right as possible.

use std::fmt;

use thiserror::Error;

use super::{Formula, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: found {found}, expected {}", .expected.join(" or "))]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub found: String,
    pub expected: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Forall,
    Exists,
    Dot,
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    Comma,
    Equals,
    Rel,
    Succ,
    Var(String),
    Bad(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Forall => "`forall`",
            Tok::Exists => "`exists`",
            Tok::Dot => "`.`",
            Tok::Not => "`~`",
            Tok::And => "`&`",
            Tok::Or => "`|`",
            Tok::Implies => "`->`",
            Tok::Iff => "`<->`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::Comma => "`,`",
            Tok::Equals => "`=`",
            Tok::Rel => "`R`",
            Tok::Succ => "`s`",
            Tok::Var(v) => return write!(f, "variable `{v}`"),
            Tok::Bad(c) => return write!(f, "unexpected character `{c}`"),
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Vec<Spanned> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut column) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        let start = (line, column);
        let (tok, width) = match c {
            '.' => (Tok::Dot, 1),
            '~' => (Tok::Not, 1),
            '&' => (Tok::And, 1),
            '|' => (Tok::Or, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            ',' => (Tok::Comma, 1),
            '=' => (Tok::Equals, 1),
            '-' if chars.get(i + 1) == Some(&'>') => (Tok::Implies, 2),
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                (Tok::Iff, 3)
            }
            c if c.is_ascii_alphabetic() => {
                let len = chars[i..]
                    .iter()
                    .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
                    .count();
                let word: String = chars[i..i + len].iter().collect();
                let tok = match word.as_str() {
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    "R" => Tok::Rel,
                    "s" => Tok::Succ,
                    w if w.starts_with(|c: char| c.is_ascii_lowercase()) => Tok::Var(word),
                    _ => Tok::Bad(c),
                };
                (tok, len)
            }
            c => (Tok::Bad(c), 1),
        };
        out.push(Spanned {
            tok,
            line: start.0,
            column: start.1,
        });
        i += width;
        column += width;
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    out
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

const UNARY_START: &[&str] = &[
    "`~`", "`(`", "`forall`", "`exists`", "`R`", "`s`", "variable",
];
const TERM_START: &[&str] = &["`s`", "variable"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let s = &self.toks[self.pos];
        ParseError {
            line: s.line,
            column: s.column,
            found: s.tok.to_string(),
            expected: expected.iter().map(|e| e.to_string()).collect(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[&tok.to_string()]))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.implication()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            lhs = Formula::iff(lhs, self.implication()?);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            return Ok(Formula::implies(lhs, self.implication()?));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Forall | Tok::Exists => {
                let universal = self.bump() == Tok::Forall;
                let v = match self.bump() {
                    Tok::Var(v) => v,
                    _ => {
                        self.pos -= 1;
                        return Err(self.error(&["variable"]));
                    }
                };
                self.expect(Tok::Dot)?;
                let body = self.formula()?;
                Ok(if universal {
                    Formula::forall(&v, body)
                } else {
                    Formula::exists(&v, body)
                })
            }
            Tok::Rel => {
                self.bump();
                self.expect(Tok::LParen)?;
                let a = self.term()?;
                self.expect(Tok::Comma)?;
                let b = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Formula::Rel(a, b))
            }
            Tok::Succ | Tok::Var(_) => {
                let a = self.term()?;
                self.expect(Tok::Equals)?;
                Ok(Formula::Eq(a, self.term()?))
            }
            _ => Err(self.error(UNARY_START)),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Var(v) => {
                self.bump();
                Ok(Term::Var(v))
            }
            Tok::Succ => {
                self.bump();
                self.expect(Tok::LParen)?;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Term::Succ(Box::new(t)))
            }
            _ => Err(self.error(TERM_START)),
        }
    }
}

pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: tokenize(text),
        pos: 0,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(&["`&`", "`|`", "`->`", "`<->`", "end of input"]));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse(s).unwrap_or_else(|e| panic!("{s}: {e}"))
    }

    #[test]
    fn totality_axiom() {
        let f = p("forall x. exists y. R(x,y)");
        assert_eq!(
            f,
            Formula::forall("x", Formula::exists("y", Formula::rel("x", "y")))
        );
    }

    #[test]
    fn successor_atom() {
        assert_eq!(
            p("s(x) = y"),
            Formula::eq(Term::succ_pow(1, "x"), Term::var("y"))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        let (a, b, c) = (
            Formula::rel("a", "a"),
            Formula::rel("b", "b"),
            Formula::rel("c", "c"),
        );
        assert_eq!(
            p("R(a,a) | R(b,b) & R(c,c)"),
            Formula::or(a.clone(), Formula::and(b.clone(), c.clone()))
        );
        assert_eq!(
            p("R(a,a) -> R(b,b) -> R(c,c)"),
            Formula::implies(a.clone(), Formula::implies(b.clone(), c.clone()))
        );
        assert_eq!(
            p("R(a,a) <-> R(b,b) <-> R(c,c)"),
            Formula::iff(Formula::iff(a.clone(), b.clone()), c.clone())
        );
        assert_eq!(
            p("~R(a,a) & R(b,b)"),
            Formula::and(Formula::not(a.clone()), b.clone())
        );
        // quantifier bodies extend to the right
        assert_eq!(
            p("forall a. R(a,a) -> R(b,b)"),
            Formula::forall("a", Formula::implies(a.clone(), b.clone()))
        );
        assert_eq!(
            p("R(b,b) & exists a. R(a,a) | R(c,c)"),
            Formula::and(b, Formula::exists("a", Formula::or(a, c)))
        );
    }

    #[test]
    fn whitespace_and_lines() {
        assert_eq!(p("forall\n  x .R( x , x )"), p("forall x. R(x,x)"));
        let err = parse("forall x.\n  R(x,").unwrap_err();
        assert_eq!((err.line, err.column), (2, 7));
        assert_eq!(err.found, "end of input");
    }

    #[test]
    fn rejects_propositional_atoms() {
        let err = parse("~(p)").unwrap_err();
        assert_eq!((err.line, err.column), (1, 4));
        assert_eq!(err.expected, vec!["`=`"]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("").is_err());
        assert!(parse("R(x,y) R(y,x)").is_err());
        assert!(parse("forall s. R(s,s)").is_err());
        assert!(parse("forall X. R(X,X)").is_err());
        assert!(parse("R(x,y) => R(y,x)").is_err());
        assert!(parse("x = ").is_err());
        let err = parse("R(x,y) & ").unwrap_err();
        assert!(err.expected.contains(&"`forall`".to_string()));
    }

    #[test]
    fn identifiers_with_digits() {
        assert_eq!(p("R(y0,z_1)"), Formula::rel("y0", "z_1"));
        assert_eq!(p("R(forall1,x)"), Formula::rel("forall1", "x"));
    }
}
