//! First-order formulas over the signature `{R, s, =}`.
//!
//! `R` is a binary relation (the edge relation of a digraph), `s` a unary
//! function (the unique out-neighbor in a functional digraph).

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

mod eval;
mod parser;
mod schemes;

pub use eval::{eval, theta_set, theta_set_by_eval, CompiledFormula};
pub use parser::{parse, ParseError};
pub use schemes::{
    axiom, russell_sentence, russell_validity_check, theta, theta_at, translate_to_successor,
    yablo_instance, Axiom, MAX_RUSSELL_NODES,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("free variable `{0}` is not bound")]
    UnboundVariable(String),
    #[error("variable `{var}` is bound to node {node}, but the graph has {n} nodes")]
    NodeOutOfRange { var: String, node: usize, n: usize },
    #[error("`s` is undefined: node {node} has out-degree {degree}, expected 1")]
    NonFunctional { node: usize, degree: usize },
    #[error("expected exactly one free variable, found {{{}}}", .0.join(", "))]
    FreeVariableCount(Vec<String>),
    #[error("formula already mentions `s`")]
    AlreadyTranslated,
    #[error("expected a sentence, but {{{}}} occur free", .0.join(", "))]
    NotASentence(Vec<String>),
    #[error("unknown axiom `{0}` (expected A1, A2, A, S or no_odd_cycle(k))")]
    UnknownAxiom(String),
    #[error("{max_n} nodes exceeds the exhaustive cap of {cap}")]
    Cap { max_n: usize, cap: usize },
}

/// A variable or an iterated application of `s` to one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Succ(Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    /// `s^k(name)`.
    pub fn succ_pow(k: usize, name: impl Into<String>) -> Self {
        (0..k).fold(Term::var(name), |t, _| Term::Succ(Box::new(t)))
    }

    /// The underlying variable and the number of `s` applications.
    pub fn decompose(&self) -> (&str, usize) {
        match self {
            Term::Var(v) => (v, 0),
            Term::Succ(t) => {
                let (v, k) = t.decompose();
                (v, k + 1)
            }
        }
    }

    pub fn variable(&self) -> &str {
        self.decompose().0
    }

    fn rename(&self, from: &str, to: &str) -> Term {
        let (v, k) = self.decompose();
        if v == from {
            Term::succ_pow(k, to)
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Succ(t) => write!(f, "s({t})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Rel(Term, Term),
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

// Short constructors; the builders read much closer to the math with these.
impl Formula {
    pub fn rel(a: &str, b: &str) -> Self {
        Formula::Rel(Term::var(a), Term::var(b))
    }

    pub fn eq(a: Term, b: Term) -> Self {
        Formula::Eq(a, b)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(v: &str, body: Formula) -> Self {
        Formula::Forall(v.to_owned(), Box::new(body))
    }

    pub fn exists(v: &str, body: Formula) -> Self {
        Formula::Exists(v.to_owned(), Box::new(body))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        let mut term = |t: &Term, bound: &Vec<&str>| {
            let v = t.variable();
            if !bound.contains(&v) {
                out.insert(v.to_owned());
            }
        };
        match self {
            Formula::Rel(a, b) | Formula::Eq(a, b) => {
                term(a, bound);
                term(b, bound);
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                bound.push(v);
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Rel(a, b) | Formula::Eq(a, b) => {
                out.insert(a.variable().to_owned());
                out.insert(b.variable().to_owned());
            }
            Formula::Forall(v, _) | Formula::Exists(v, _) => {
                out.insert(v.clone());
            }
            _ => {}
        });
        out
    }

    pub fn mentions_successor(&self) -> bool {
        let mut found = false;
        self.visit(&mut |f| {
            if let Formula::Rel(a, b) | Formula::Eq(a, b) = f {
                found |= matches!(a, Term::Succ(_)) || matches!(b, Term::Succ(_));
            }
        });
        found
    }

    fn visit<F: FnMut(&Formula)>(&self, f: &mut F) {
        f(self);
        match self {
            Formula::Rel(..) | Formula::Eq(..) => {}
            Formula::Not(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => g.visit(f),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    /// Rebuilds the tree, rewriting every atom with `atom`.
    pub fn map_atoms<F: FnMut(&Formula) -> Formula>(&self, atom: &mut F) -> Formula {
        match self {
            Formula::Rel(..) | Formula::Eq(..) => atom(self),
            Formula::Not(f) => Formula::not(f.map_atoms(atom)),
            Formula::And(a, b) => Formula::and(a.map_atoms(atom), b.map_atoms(atom)),
            Formula::Or(a, b) => Formula::or(a.map_atoms(atom), b.map_atoms(atom)),
            Formula::Implies(a, b) => Formula::implies(a.map_atoms(atom), b.map_atoms(atom)),
            Formula::Iff(a, b) => Formula::iff(a.map_atoms(atom), b.map_atoms(atom)),
            Formula::Forall(v, f) => Formula::forall(v, f.map_atoms(atom)),
            Formula::Exists(v, f) => Formula::exists(v, f.map_atoms(atom)),
        }
    }

    /// Capture-avoiding substitution of the variable `to` for free
    /// occurrences of `from`. Binders that would capture `to` are renamed.
    pub fn rename_free(&self, from: &str, to: &str) -> Formula {
        if from == to {
            return self.clone();
        }
        match self {
            Formula::Rel(a, b) => Formula::Rel(a.rename(from, to), b.rename(from, to)),
            Formula::Eq(a, b) => Formula::Eq(a.rename(from, to), b.rename(from, to)),
            Formula::Not(f) => Formula::not(f.rename_free(from, to)),
            Formula::And(a, b) => Formula::and(a.rename_free(from, to), b.rename_free(from, to)),
            Formula::Or(a, b) => Formula::or(a.rename_free(from, to), b.rename_free(from, to)),
            Formula::Implies(a, b) => {
                Formula::implies(a.rename_free(from, to), b.rename_free(from, to))
            }
            Formula::Iff(a, b) => Formula::iff(a.rename_free(from, to), b.rename_free(from, to)),
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let rebuild = |v: &str, body: Formula| match self {
                    Formula::Forall(..) => Formula::forall(v, body),
                    _ => Formula::exists(v, body),
                };
                if v == from || !body.free_vars().contains(from) {
                    return self.clone();
                }
                if v == to {
                    let mut taken = body.all_vars();
                    taken.insert(to.to_owned());
                    taken.insert(from.to_owned());
                    let fresh = fresh_var(v, &taken);
                    let body = body.rename_free(v, &fresh);
                    rebuild(&fresh, body.rename_free(from, to))
                } else {
                    rebuild(v, body.rename_free(from, to))
                }
            }
        }
    }

    /// Number of connectives and quantifiers on the longest root-to-atom path.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Rel(..) | Formula::Eq(..) => 0,
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => 1 + f.depth(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

/// `base`, or `base_1`, `base_2`, ... : the first name not in `taken`.
pub(crate) fn fresh_var(base: &str, taken: &BTreeSet<String>) -> String {
    if !taken.contains(base) {
        return base.to_owned();
    }
    (1..)
        .map(|i| format!("{base}_{i}"))
        .find(|c| !taken.contains(c))
        .expect("unbounded supply of names")
}

// Binding strength for printing; quantifiers and unary forms sit at the top.
fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => 1,
        Formula::Implies(..) => 2,
        Formula::Or(..) => 3,
        Formula::And(..) => 4,
        _ => 5,
    }
}

fn is_quantifier(f: &Formula) -> bool {
    matches!(f, Formula::Forall(..) | Formula::Exists(..))
}

/// Writes `f`. `open` is true when more tokens follow at this nesting level,
/// in which case a bare quantifier would swallow them.
fn write_formula(f: &Formula, out: &mut fmt::Formatter<'_>, open: bool) -> fmt::Result {
    match f {
        Formula::Rel(a, b) => write!(out, "R({a},{b})"),
        Formula::Eq(a, b) => write!(out, "{a} = {b}"),
        Formula::Not(g) => {
            out.write_str("~")?;
            write_operand(g, out, precedence(g) < 5, open)
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            let (op, right_assoc) = match f {
                Formula::And(..) => ("&", false),
                Formula::Or(..) => ("|", false),
                Formula::Implies(..) => ("->", true),
                _ => ("<->", false),
            };
            let p = precedence(f);
            let (pa, pb) = (precedence(a), precedence(b));
            write_operand(a, out, pa < p || (pa == p && right_assoc), true)?;
            write!(out, " {op} ")?;
            write_operand(b, out, pb < p || (pb == p && !right_assoc), open)
        }
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            let kw = if matches!(f, Formula::Forall(..)) {
                "forall"
            } else {
                "exists"
            };
            write!(out, "{kw} {v}. ")?;
            write_operand(body, out, precedence(body) < 5, false)
        }
    }
}

fn write_operand(
    f: &Formula,
    out: &mut fmt::Formatter<'_>,
    paren: bool,
    open: bool,
) -> fmt::Result {
    if paren || (open && is_quantifier(f)) {
        out.write_str("(")?;
        write_formula(f, out, false)?;
        out.write_str(")")
    } else {
        write_formula(f, out, open)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, f, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_variables() {
        let f = Formula::exists(
            "y",
            Formula::and(Formula::rel("x", "y"), Formula::rel("y", "z")),
        );
        assert_eq!(f.free_vars(), ["x", "z"].map(String::from).into());
        assert!(Formula::forall("x", Formula::rel("x", "x")).is_sentence());
    }

    #[test]
    fn printing_minimal_parens() {
        let a = || Formula::rel("x", "y");
        let b = || Formula::rel("y", "x");
        let imp = Formula::implies(Formula::implies(a(), b()), a());
        assert_eq!(imp.to_string(), "(R(x,y) -> R(y,x)) -> R(x,y)");
        let imp = Formula::implies(a(), Formula::implies(b(), a()));
        assert_eq!(imp.to_string(), "R(x,y) -> R(y,x) -> R(x,y)");
        let q = Formula::and(Formula::exists("z", a()), b());
        assert_eq!(q.to_string(), "(exists z. R(x,y)) & R(y,x)");
        let q = Formula::and(b(), Formula::exists("z", a()));
        assert_eq!(q.to_string(), "R(y,x) & exists z. R(x,y)");
        let q = Formula::or(Formula::and(b(), Formula::exists("z", a())), a());
        assert_eq!(q.to_string(), "R(y,x) & (exists z. R(x,y)) | R(x,y)");
        let n = Formula::not(Formula::or(a(), b()));
        assert_eq!(n.to_string(), "~(R(x,y) | R(y,x))");
        let e = Formula::eq(Term::succ_pow(2, "x"), Term::var("y"));
        assert_eq!(e.to_string(), "s(s(x)) = y");
    }

    #[test]
    fn rename_avoids_capture() {
        // exists y. R(x,y) with x := y must not become exists y. R(y,y)
        let f = Formula::exists("y", Formula::rel("x", "y"));
        let g = f.rename_free("x", "y");
        assert_eq!(g.free_vars(), ["y"].map(String::from).into());
        assert_eq!(g.to_string(), "exists y_1. R(y,y_1)");
        // bound occurrences are untouched
        let h = Formula::forall("x", Formula::rel("x", "x"));
        assert_eq!(h.rename_free("x", "z"), h);
    }

    #[test]
    fn term_decompose() {
        let t = Term::succ_pow(3, "v");
        assert_eq!(t.decompose(), ("v", 3));
        assert_eq!(t.to_string(), "s(s(s(v)))");
    }
}
