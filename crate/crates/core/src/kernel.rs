//! Kernels of finite digraphs.
//!
//! A kernel is a set `K` such that a node is in `K` exactly when none of its
//! out-neighbors is: independent (no edge inside `K`) and absorbing (every
//! node outside `K` has an out-neighbor in `K`). A graph without a kernel is
//! one where the Yablo sentence holds.

use serde::Serialize;
use thiserror::Error;

use crate::graph::Digraph;
use crate::vertex_set::VertexSet;

/// Largest node count for [`brute_force_kernels`].
pub const MAX_BRUTE_FORCE_NODES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("vertex set ranges over {set} nodes, graph has {graph}")]
    RangeMismatch { set: usize, graph: usize },
    #[error("brute force is capped at {cap} nodes, graph has {n}")]
    TooLarge { n: usize, cap: usize },
    #[error("graph has the odd cycle {0:?}")]
    OddCycle(Vec<usize>),
    #[error("graph has a cycle and node {0} does not have out-degree 1")]
    NonFunctional(usize),
}

pub fn is_kernel(g: &Digraph, k: &VertexSet) -> Result<bool, KernelError> {
    if k.universe() != g.node_count() {
        return Err(KernelError::RangeMismatch {
            set: k.universe(),
            graph: g.node_count(),
        });
    }
    Ok(g.nodes()
        .all(|x| k.contains(x) == g.out_neighbors(x).iter().all(|&y| !k.contains(y))))
}

/// Every kernel, in increasing order of membership bitmask.
pub fn brute_force_kernels(g: &Digraph) -> Result<Vec<VertexSet>, KernelError> {
    let n = g.node_count();
    if n > MAX_BRUTE_FORCE_NODES {
        return Err(KernelError::TooLarge {
            n,
            cap: MAX_BRUTE_FORCE_NODES,
        });
    }
    let succ: Vec<u32> = g
        .nodes()
        .map(|u| g.out_neighbors(u).iter().fold(0u32, |m, &v| m | 1 << v))
        .collect();
    Ok((0u32..1 << n)
        .filter(|&mask| {
            succ.iter()
                .enumerate()
                .all(|(x, &s)| (mask >> x & 1 == 1) == (s & mask == 0))
        })
        .map(|mask| VertexSet::from_mask(n, mask as u64))
        .collect())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Search-tree nodes entered, the root included.
    pub nodes_visited: u64,
    pub decisions: u64,
    pub propagations: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Kernel(VertexSet),
    NoKernel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub verdict: Verdict,
    pub stats: SearchStats,
}

impl SolveResult {
    pub fn kernel(&self) -> Option<&VertexSet> {
        match &self.verdict {
            Verdict::Kernel(k) => Some(k),
            Verdict::NoKernel => None,
        }
    }

    pub fn has_kernel(&self) -> bool {
        self.kernel().is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Value {
    Unset,
    In,
    Out,
}

struct Conflict;

/// Propagation-and-backtracking search over one boolean per node.
///
/// Constraints: for every edge `u -> v`, not both in; for every node `u`,
/// either `u` is in or some out-neighbor is. Branching picks the
/// lowest-index unassigned node and tries "in" first.
struct Search<'g> {
    g: &'g Digraph,
    preds: Vec<Vec<usize>>,
    value: Vec<Value>,
    trail: Vec<usize>,
    queue: Vec<usize>,
    stats: SearchStats,
}

impl<'g> Search<'g> {
    fn new(g: &'g Digraph) -> Self {
        Search {
            g,
            preds: g.in_neighbors(),
            value: vec![Value::Unset; g.node_count()],
            trail: Vec::new(),
            queue: Vec::new(),
            stats: SearchStats::default(),
        }
    }

    fn assign(&mut self, u: usize, v: Value) -> Result<(), Conflict> {
        match self.value[u] {
            Value::Unset => {
                self.value[u] = v;
                self.trail.push(u);
                self.queue.push(u);
                Ok(())
            }
            current if current == v => Ok(()),
            _ => Err(Conflict),
        }
    }

    fn undo_to(&mut self, mark: usize) {
        for u in self.trail.drain(mark..) {
            self.value[u] = Value::Unset;
        }
        self.queue.clear();
    }

    /// Re-examines the absorption constraint of node `w`.
    fn check_absorbed(&mut self, w: usize) -> Result<(), Conflict> {
        if self.value[w] == Value::In {
            return Ok(());
        }
        let mut unset = None;
        let mut unset_count = 0;
        for &y in self.g.out_neighbors(w) {
            match self.value[y] {
                Value::In => return Ok(()),
                Value::Unset => {
                    unset = Some(y);
                    unset_count += 1;
                }
                Value::Out => {}
            }
        }
        match (self.value[w], unset_count) {
            (Value::Out, 0) => Err(Conflict),
            (Value::Out, 1) => {
                self.stats.propagations += 1;
                self.assign(unset.expect("one unset neighbor"), Value::In)
            }
            (Value::Unset, 0) => {
                self.stats.propagations += 1;
                self.assign(w, Value::In)
            }
            _ => Ok(()),
        }
    }

    fn propagate(&mut self) -> Result<(), Conflict> {
        while let Some(u) = self.queue.pop() {
            match self.value[u] {
                Value::In => {
                    let g = self.g;
                    for i in 0..g.out_neighbors(u).len() {
                        let v = g.out_neighbors(u)[i];
                        if self.value[v] != Value::Out {
                            self.stats.propagations += 1;
                            self.assign(v, Value::Out)?;
                        }
                    }
                    for i in 0..self.preds[u].len() {
                        let w = self.preds[u][i];
                        if self.value[w] != Value::Out {
                            self.stats.propagations += 1;
                            self.assign(w, Value::Out)?;
                        }
                    }
                }
                Value::Out => {
                    self.check_absorbed(u)?;
                    for i in 0..self.preds[u].len() {
                        let w = self.preds[u][i];
                        self.check_absorbed(w)?;
                    }
                }
                Value::Unset => unreachable!("queued nodes are assigned"),
            }
        }
        Ok(())
    }

    fn initial(&mut self) -> Result<(), Conflict> {
        for u in self.g.nodes() {
            if self.g.has_edge(u, u) {
                self.stats.propagations += 1;
                self.assign(u, Value::Out)?;
            } else if self.g.out_neighbors(u).is_empty() {
                self.stats.propagations += 1;
                self.assign(u, Value::In)?;
            }
        }
        self.propagate()
    }

    fn search(&mut self) -> bool {
        self.stats.nodes_visited += 1;
        let Some(u) = self.value.iter().position(|&v| v == Value::Unset) else {
            return true;
        };
        for choice in [Value::In, Value::Out] {
            self.stats.decisions += 1;
            let mark = self.trail.len();
            let ok = self.assign(u, choice).is_ok() && self.propagate().is_ok();
            if ok && self.search() {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}

/// Decides whether `g` has a kernel, returning one if so.
pub fn solve(g: &Digraph) -> SolveResult {
    let mut s = Search::new(g);
    let found = s.initial().is_ok() && s.search();
    let verdict = if found {
        let k = VertexSet::from_members(
            g.node_count(),
            g.nodes().filter(|&u| s.value[u] == Value::In),
        );
        debug_assert_eq!(is_kernel(g, &k), Ok(true));
        Verdict::Kernel(k)
    } else {
        Verdict::NoKernel
    };
    SolveResult {
        verdict,
        stats: s.stats,
    }
}

/// Builds a kernel directly for graphs known to have one: acyclic graphs by
/// sweeping up from the sinks, functional graphs without odd cycles by
/// alternating along each cycle and then down the trees feeding it.
pub fn kernel_for_odd_cycle_free(g: &Digraph) -> Result<VertexSet, KernelError> {
    let n = g.node_count();
    if let Some(order) = g.reverse_topological_order() {
        let mut k = VertexSet::new(n);
        for u in order {
            if !g.out_neighbors(u).iter().any(|&v| k.contains(v)) {
                k.insert(u);
            }
        }
        return Ok(k);
    }
    if let Some(u) = g.non_functional_node() {
        return Err(KernelError::NonFunctional(u));
    }
    let next = |u: usize| g.successor(u).expect("functional");

    let mut member: Vec<Option<bool>> = vec![None; n];
    // Each component of a functional graph holds one cycle; seed it at its
    // lowest-index node with "in" and alternate.
    let mut seen = vec![usize::MAX; n];
    for start in g.nodes() {
        if member[start].is_some() || seen[start] != usize::MAX {
            continue;
        }
        let mut u = start;
        while seen[u] == usize::MAX {
            seen[u] = start;
            u = next(u);
        }
        if seen[u] != start || member[u].is_some() {
            continue;
        }
        let mut cycle = vec![u];
        let mut w = next(u);
        while w != u {
            cycle.push(w);
            w = next(w);
        }
        let low = (0..cycle.len())
            .min_by_key(|&i| cycle[i])
            .expect("nonempty cycle");
        cycle.rotate_left(low);
        if cycle.len() % 2 == 1 {
            return Err(KernelError::OddCycle(cycle));
        }
        for (i, &c) in cycle.iter().enumerate() {
            member[c] = Some(i % 2 == 0);
        }
    }
    // Tree nodes take the opposite of their successor.
    for start in g.nodes() {
        let mut path = Vec::new();
        let mut u = start;
        while member[u].is_none() {
            path.push(u);
            u = next(u);
        }
        let mut below = member[u].expect("resolved");
        for &p in path.iter().rev() {
            below = !below;
            member[p] = Some(below);
        }
    }
    Ok(VertexSet::from_members(
        n,
        g.nodes().filter(|&u| member[u] == Some(true)),
    ))
}
