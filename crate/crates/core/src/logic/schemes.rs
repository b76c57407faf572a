//! Builders for the named formulas and schemes.

use std::fmt;
use std::str::FromStr;

use super::{fresh_var, Formula, LogicError, Term};
use crate::graph::enumerate_all;

/// Largest node count for the exhaustive Russell check.
pub const MAX_RUSSELL_NODES: usize = 4;

/// The n-th theta formula with free variable `x`.
pub fn theta(n: usize) -> Formula {
    theta_at(n, "x")
}

/// The n-th theta formula with free variable `var`.
///
/// Level `k` binds `y{k}` and `z{k}`, so nesting never captures.
pub fn theta_at(n: usize, var: &str) -> Formula {
    let y = format!("y{n}");
    let z = format!("z{n}");
    let inner = if n == 0 {
        Formula::rel(var, &z)
    } else {
        theta_at(n - 1, &z)
    };
    Formula::exists(
        &y,
        Formula::and(
            Formula::rel(var, &y),
            Formula::forall(&z, Formula::implies(Formula::rel(&y, &z), inner)),
        ),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// Every node has an out-neighbor.
    A1,
    /// Transitivity.
    A2,
    /// Every node has an out-neighbor whose out-neighbors are its own.
    A,
    /// `s` is injective.
    S,
    /// No point returns to itself after `2k+1` steps of `s`.
    NoOddCycle(usize),
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::A1 => f.write_str("A1"),
            Axiom::A2 => f.write_str("A2"),
            Axiom::A => f.write_str("A"),
            Axiom::S => f.write_str("S"),
            Axiom::NoOddCycle(k) => write!(f, "no_odd_cycle({k})"),
        }
    }
}

impl FromStr for Axiom {
    type Err = LogicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "A1" => Ok(Axiom::A1),
            "A2" => Ok(Axiom::A2),
            "A" => Ok(Axiom::A),
            "S" => Ok(Axiom::S),
            other => other
                .strip_prefix("no_odd_cycle(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|k| k.trim().parse().ok())
                .map(Axiom::NoOddCycle)
                .ok_or_else(|| LogicError::UnknownAxiom(other.to_owned())),
        }
    }
}

pub fn axiom(name: Axiom) -> Formula {
    let r = Formula::rel;
    match name {
        Axiom::A1 => Formula::forall("x", Formula::exists("y", r("x", "y"))),
        Axiom::A2 => Formula::forall(
            "x",
            Formula::forall(
                "y",
                Formula::forall(
                    "z",
                    Formula::implies(Formula::and(r("x", "y"), r("y", "z")), r("x", "z")),
                ),
            ),
        ),
        Axiom::A => Formula::forall(
            "x",
            Formula::exists(
                "y",
                Formula::and(
                    r("x", "y"),
                    Formula::forall("z", Formula::implies(r("y", "z"), r("x", "z"))),
                ),
            ),
        ),
        Axiom::S => Formula::forall(
            "x",
            Formula::forall(
                "y",
                Formula::implies(
                    Formula::eq(Term::succ_pow(1, "x"), Term::succ_pow(1, "y")),
                    Formula::eq(Term::var("x"), Term::var("y")),
                ),
            ),
        ),
        Axiom::NoOddCycle(k) => Formula::not(Formula::exists(
            "x",
            Formula::eq(Term::succ_pow(2 * k + 1, "x"), Term::var("x")),
        )),
    }
}

/// Instantiates the first-order Yablo scheme with `phi`:
/// `~forall x. (phi(x) <-> forall y. (R(x,y) -> ~phi(y)))`,
/// where `x` is the single free variable of `phi`.
///
/// The sentence is true exactly when the set defined by `phi` is not a
/// kernel.
pub fn yablo_instance(phi: &Formula) -> Result<Formula, LogicError> {
    let free: Vec<String> = phi.free_vars().into_iter().collect();
    let [x] = free.as_slice() else {
        return Err(LogicError::FreeVariableCount(free));
    };
    let y = fresh_var("y", &phi.all_vars());
    let phi_y = phi.rename_free(x, &y);
    Ok(Formula::not(Formula::forall(
        x,
        Formula::iff(
            phi.clone(),
            Formula::forall(
                &y,
                Formula::implies(Formula::rel(x, &y), Formula::not(phi_y)),
            ),
        ),
    )))
}

/// Rewrites every `R(u,v)` as `s(u) = v`.
pub fn translate_to_successor(f: &Formula) -> Result<Formula, LogicError> {
    if f.mentions_successor() {
        return Err(LogicError::AlreadyTranslated);
    }
    Ok(f.map_atoms(&mut |atom| match atom {
        Formula::Rel(a, b) => Formula::Eq(Term::Succ(Box::new(a.clone())), b.clone()),
        other => other.clone(),
    }))
}

/// `~exists y. forall x. (R(y,x) <-> ~R(x,x))`.
pub fn russell_sentence() -> Formula {
    Formula::not(Formula::exists(
        "y",
        Formula::forall(
            "x",
            Formula::iff(Formula::rel("y", "x"), Formula::not(Formula::rel("x", "x"))),
        ),
    ))
}

/// Whether the Russell sentence holds in every digraph on `1..=max_n` nodes.
pub fn russell_validity_check(max_n: usize) -> Result<bool, LogicError> {
    if max_n > MAX_RUSSELL_NODES {
        return Err(LogicError::Cap {
            max_n,
            cap: MAX_RUSSELL_NODES,
        });
    }
    let compiled = super::CompiledFormula::new(&russell_sentence());
    for n in 1..=max_n {
        for g in enumerate_all(n).expect("within enumeration cap") {
            if !compiled.eval(&g, &[])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
