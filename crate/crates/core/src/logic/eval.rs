//! Tarskian satisfaction over finite digraphs.
//!
//! Formulas are compiled once into a slot-addressed tree so that sweeps over
//! many graphs do not repeat name resolution.

use super::{theta, Formula, LogicError};
use crate::graph::Digraph;
use crate::vertex_set::VertexSet;

/// A term is always `s^k(slot)`.
#[derive(Debug, Clone, Copy)]
struct SlotTerm {
    slot: usize,
    succ: usize,
}

#[derive(Debug, Clone)]
enum Node {
    Rel(SlotTerm, SlotTerm),
    Eq(SlotTerm, SlotTerm),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Implies(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
    Forall(usize, Box<Node>),
    Exists(usize, Box<Node>),
}

/// A formula with variables resolved to environment slots.
#[derive(Debug, Clone)]
pub struct CompiledFormula {
    root: Node,
    free: Vec<String>,
    slots: usize,
    uses_successor: bool,
}

impl CompiledFormula {
    pub fn new(f: &Formula) -> Self {
        let free: Vec<String> = f.free_vars().into_iter().collect();
        let mut scope: Vec<(String, usize)> = free
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let mut slots = free.len();
        let root = compile(f, &mut scope, &mut slots);
        CompiledFormula {
            root,
            free,
            slots,
            uses_successor: f.mentions_successor(),
        }
    }

    pub fn free_vars(&self) -> &[String] {
        &self.free
    }

    /// Evaluates under `env`, a partial assignment of variables to nodes.
    /// Every free variable must be bound; extra bindings are ignored.
    pub fn eval(&self, g: &Digraph, env: &[(&str, usize)]) -> Result<bool, LogicError> {
        let n = g.node_count();
        let mut values = vec![0; self.slots];
        for (i, name) in self.free.iter().enumerate() {
            let &(_, node) = env
                .iter()
                .rev()
                .find(|(v, _)| v == name)
                .ok_or_else(|| LogicError::UnboundVariable(name.clone()))?;
            if node >= n {
                return Err(LogicError::NodeOutOfRange {
                    var: name.clone(),
                    node,
                    n,
                });
            }
            values[i] = node;
        }
        if self.uses_successor {
            if let Some(node) = g.non_functional_node() {
                return Err(LogicError::NonFunctional {
                    node,
                    degree: g.out_neighbors(node).len(),
                });
            }
        }
        Ok(holds(&self.root, g, &mut values))
    }

    /// Evaluates a formula with exactly one free variable at every node.
    pub fn satisfying_set(&self, g: &Digraph) -> Result<VertexSet, LogicError> {
        let [var] = self.free.as_slice() else {
            return Err(LogicError::FreeVariableCount(self.free.clone()));
        };
        let mut set = VertexSet::new(g.node_count());
        for v in g.nodes() {
            if self.eval(g, &[(var, v)])? {
                set.insert(v);
            }
        }
        Ok(set)
    }
}

fn compile(f: &Formula, scope: &mut Vec<(String, usize)>, slots: &mut usize) -> Node {
    let term = |t: &super::Term, scope: &Vec<(String, usize)>| {
        let (v, succ) = t.decompose();
        let slot = scope
            .iter()
            .rev()
            .find(|(name, _)| name == v)
            .map(|&(_, s)| s)
            .expect("free variables are pre-bound");
        SlotTerm { slot, succ }
    };
    let mut bin = |a: &Formula, b: &Formula, scope: &mut Vec<(String, usize)>| {
        (
            Box::new(compile(a, scope, slots)),
            Box::new(compile(b, scope, slots)),
        )
    };
    match f {
        Formula::Rel(a, b) => Node::Rel(term(a, scope), term(b, scope)),
        Formula::Eq(a, b) => Node::Eq(term(a, scope), term(b, scope)),
        Formula::Not(g) => Node::Not(Box::new(compile(g, scope, slots))),
        Formula::And(a, b) => {
            let (a, b) = bin(a, b, scope);
            Node::And(a, b)
        }
        Formula::Or(a, b) => {
            let (a, b) = bin(a, b, scope);
            Node::Or(a, b)
        }
        Formula::Implies(a, b) => {
            let (a, b) = bin(a, b, scope);
            Node::Implies(a, b)
        }
        Formula::Iff(a, b) => {
            let (a, b) = bin(a, b, scope);
            Node::Iff(a, b)
        }
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            let slot = *slots;
            *slots += 1;
            scope.push((v.clone(), slot));
            let body = Box::new(compile(body, scope, slots));
            scope.pop();
            if matches!(f, Formula::Forall(..)) {
                Node::Forall(slot, body)
            } else {
                Node::Exists(slot, body)
            }
        }
    }
}

fn term_value(t: SlotTerm, g: &Digraph, values: &[usize]) -> usize {
    (0..t.succ).fold(values[t.slot], |v, _| {
        g.successor(v)
            .expect("functionality checked before evaluation")
    })
}

fn holds(node: &Node, g: &Digraph, values: &mut Vec<usize>) -> bool {
    match node {
        Node::Rel(a, b) => g.has_edge(term_value(*a, g, values), term_value(*b, g, values)),
        Node::Eq(a, b) => term_value(*a, g, values) == term_value(*b, g, values),
        Node::Not(f) => !holds(f, g, values),
        Node::And(a, b) => holds(a, g, values) && holds(b, g, values),
        Node::Or(a, b) => holds(a, g, values) || holds(b, g, values),
        Node::Implies(a, b) => !holds(a, g, values) || holds(b, g, values),
        Node::Iff(a, b) => holds(a, g, values) == holds(b, g, values),
        Node::Forall(slot, body) => g.nodes().all(|v| {
            values[*slot] = v;
            holds(body, g, values)
        }),
        Node::Exists(slot, body) => g.nodes().any(|v| {
            values[*slot] = v;
            holds(body, g, values)
        }),
    }
}

/// Truth value of `f` in `g` under the partial assignment `env`.
///
/// Quantifiers range over all nodes; on the empty graph universals are true
/// and existentials false. `s` is only defined on functional graphs.
pub fn eval(g: &Digraph, f: &Formula, env: &[(&str, usize)]) -> Result<bool, LogicError> {
    CompiledFormula::new(f).eval(g, env)
}

/// The nodes satisfying the n-th formula of the theta hierarchy, computed
/// level by level rather than by evaluating the nested formula.
///
/// Level 0 holds at `v` when some out-neighbor `y` has all its out-neighbors
/// among those of `v`; level `k+1` holds at `v` when some out-neighbor `y`
/// has all its out-neighbors in level `k`.
pub fn theta_set(g: &Digraph, n: usize) -> VertexSet {
    let size = g.node_count();
    let mut current = VertexSet::new(size);
    for v in g.nodes() {
        let dominated = |y: usize| g.out_neighbors(y).iter().all(|&z| g.has_edge(v, z));
        if g.out_neighbors(v).iter().any(|&y| dominated(y)) {
            current.insert(v);
        }
    }
    for _ in 0..n {
        let good: Vec<bool> = g
            .nodes()
            .map(|y| g.out_neighbors(y).iter().all(|&z| current.contains(z)))
            .collect();
        let mut next = VertexSet::new(size);
        for v in g.nodes() {
            if g.out_neighbors(v).iter().any(|&y| good[y]) {
                next.insert(v);
            }
        }
        current = next;
    }
    current
}

/// `theta_set` computed by direct evaluation of the formula; the oracle side.
pub fn theta_set_by_eval(g: &Digraph, n: usize) -> VertexSet {
    CompiledFormula::new(&theta(n))
        .satisfying_set(g)
        .expect("theta has a single free variable and no `s`")
}
