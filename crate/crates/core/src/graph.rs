//! Finite directed graphs on dense node indices `0..n`.
//!
//! Loops are ordinary edges. Out-neighbor lists are kept sorted and free of
//! duplicates, so two graphs with the same edge relation compare equal.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Largest node count accepted by [`enumerate_all`].
pub const MAX_ENUMERATION_NODES: usize = 4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("edge ({u}, {v}) is out of range for a graph on {n} nodes")]
    EdgeOutOfRange { u: usize, v: usize, n: usize },
    #[error("refusing to enumerate all digraphs on {n} nodes (cap is {cap})")]
    EnumerationCap { n: usize, cap: usize },
    #[error("edge probability {0} is outside [0, 1]")]
    BadProbability(f64),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A finite digraph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    out: Vec<Vec<usize>>,
}

impl Digraph {
    /// Builds a digraph from an edge list, collapsing duplicate edges.
    pub fn build<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut out = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::EdgeOutOfRange { u, v, n });
            }
            out[u].push(v);
        }
        for list in &mut out {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Digraph { n, out })
    }

    pub fn empty(n: usize) -> Self {
        Digraph {
            n,
            out: vec![Vec::new(); n],
        }
    }

    /// Directed cycle `0 -> 1 -> ... -> len-1 -> 0`. `len == 1` is a loop.
    pub fn cycle(len: usize) -> Self {
        Digraph::build(len, (0..len).map(|i| (i, (i + 1) % len))).expect("indices in range")
    }

    /// Directed path `0 -> 1 -> ... -> len-1`.
    pub fn path(len: usize) -> Self {
        Digraph::build(len, (1..len).map(|i| (i - 1, i))).expect("indices in range")
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn nodes(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    /// In-neighbor lists, sorted ascending.
    pub fn in_neighbors(&self) -> Vec<Vec<usize>> {
        let mut inn = vec![Vec::new(); self.n];
        for (u, v) in self.edges() {
            inn[v].push(u);
        }
        inn
    }

    /// The first node whose out-degree is not exactly one, if any.
    pub fn non_functional_node(&self) -> Option<usize> {
        self.nodes().find(|&u| self.out[u].len() != 1)
    }

    pub fn is_functional(&self) -> bool {
        self.non_functional_node().is_none()
    }

    /// The unique out-neighbor of `u` in a functional graph.
    pub fn successor(&self, u: usize) -> Option<usize> {
        match self.out[u].as_slice() {
            [v] => Some(*v),
            _ => None,
        }
    }

    /// Nodes in an order where every edge goes from a later to an earlier
    /// position (sinks first), or `None` when the graph has a cycle.
    pub fn reverse_topological_order(&self) -> Option<Vec<usize>> {
        let inn = self.in_neighbors();
        let mut remaining: Vec<usize> = self.out.iter().map(Vec::len).collect();
        let mut order: Vec<usize> = self.nodes().filter(|&u| remaining[u] == 0).collect();
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &u in &inn[v] {
                remaining[u] -= 1;
                if remaining[u] == 0 {
                    order.push(u);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.reverse_topological_order().is_some()
    }

    /// Adjacency-matrix bitmask: bit `u * n + v` is set iff `u -> v`.
    /// Only meaningful for `n * n <= 64`.
    pub fn adjacency_mask(&self) -> u64 {
        assert!(self.n * self.n <= 64, "graph too large for a 64-bit mask");
        self.edges()
            .fold(0u64, |m, (u, v)| m | (1u64 << (u * self.n + v)))
    }

    pub fn from_adjacency_mask(n: usize, mask: u64) -> Self {
        assert!(n * n <= 64, "graph too large for a 64-bit mask");
        let out = (0..n)
            .map(|u| (0..n).filter(|&v| mask >> (u * n + v) & 1 == 1).collect())
            .collect();
        Digraph { n, out }
    }

    /// Serializes to the edge-list text format.
    pub fn to_edge_list(&self) -> String {
        self.to_string()
    }

    /// Parses the edge-list text format: a `digraph <n>` header followed by
    /// `u v` lines; blank lines and `#` comment lines are ignored.
    pub fn from_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines.next().ok_or(GraphError::Parse {
            line: 1,
            msg: "missing `digraph <n>` header".into(),
        })?;
        let mut parts = header.split_whitespace();
        let n = match (parts.next(), parts.next(), parts.next()) {
            (Some("digraph"), Some(n), None) => {
                n.parse::<usize>().map_err(|_| GraphError::Parse {
                    line: hline,
                    msg: format!("invalid node count `{n}`"),
                })?
            }
            _ => {
                return Err(GraphError::Parse {
                    line: hline,
                    msg: format!("expected `digraph <n>`, found `{header}`"),
                })
            }
        };

        let mut edges = Vec::new();
        for (line, l) in lines {
            let nums: Vec<&str> = l.split_whitespace().collect();
            let [u, v] = nums.as_slice() else {
                return Err(GraphError::Parse {
                    line,
                    msg: format!("expected `u v`, found `{l}`"),
                });
            };
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| GraphError::Parse {
                    line,
                    msg: format!("invalid node index `{s}`"),
                })
            };
            let (u, v) = (parse(u)?, parse(v)?);
            if u >= n || v >= n {
                return Err(GraphError::Parse {
                    line,
                    msg: GraphError::EdgeOutOfRange { u, v, n }.to_string(),
                });
            }
            edges.push((u, v));
        }
        Digraph::build(n, edges)
    }
}

impl fmt::Display for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "digraph {}", self.n)?;
        for (u, v) in self.edges() {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

impl FromStr for Digraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Digraph::from_edge_list(s)
    }
}

/// Every labeled digraph on `n` nodes (loops allowed), in increasing
/// adjacency-mask order.
pub fn enumerate_all(n: usize) -> Result<impl Iterator<Item = Digraph>, GraphError> {
    if n > MAX_ENUMERATION_NODES {
        return Err(GraphError::EnumerationCap {
            n,
            cap: MAX_ENUMERATION_NODES,
        });
    }
    let count = 1u64 << (n * n);
    Ok((0..count).map(move |mask| Digraph::from_adjacency_mask(n, mask)))
}

/// All digraphs on `1..=max_n` nodes, smallest first. The empty structure
/// is left out: first-order semantics assumes a nonempty domain.
pub fn enumerate_up_to(max_n: usize) -> Result<impl Iterator<Item = Digraph>, GraphError> {
    let per_size = (1..=max_n)
        .map(enumerate_all)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(per_size.into_iter().flatten())
}

/// Erdős–Rényi style digraph over all `n * n` ordered pairs, loops included.
pub fn random_digraph(n: usize, p: f64, seed: u64) -> Result<Digraph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::BadProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(random_digraph_with(&mut rng, n, p))
}

pub(crate) fn random_digraph_with<R: Rng>(rng: &mut R, n: usize, p: f64) -> Digraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Digraph::build(n, edges).expect("indices in range")
}

/// Chain `0 -> 1 -> ... -> 2n` with a loop on the last node.
pub fn witness_chain(n: usize) -> Digraph {
    let last = 2 * n;
    let edges = (0..last)
        .map(|i| (i, i + 1))
        .chain(std::iter::once((last, last)));
    Digraph::build(last + 1, edges).expect("indices in range")
}

/// Whether some directed closed walk of odd length exists.
///
/// Works on the parity double cover: node `(u, b)` has an edge to `(v, 1-b)`
/// for each `u -> v`. An odd closed walk through `u` exists iff `(u, 0)` and
/// `(u, 1)` share a strongly connected component.
pub fn has_odd_closed_walk(g: &Digraph) -> bool {
    let n = g.node_count();
    let cover: Vec<Vec<usize>> = (0..2 * n)
        .map(|x| {
            let (u, b) = (x % n, x / n);
            g.out_neighbors(u)
                .iter()
                .map(|&v| v + (1 - b) * n)
                .collect()
        })
        .collect();
    let comp = strongly_connected_components(&cover);
    (0..n).any(|u| comp[u] == comp[u + n])
}

/// Tarjan's algorithm, iterative. Returns a component id per node.
pub fn strongly_connected_components(adj: &[Vec<usize>]) -> Vec<usize> {
    const UNVISITED: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNVISITED; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    // (node, position in its adjacency list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        while let Some(&mut (u, ref mut pos)) = call.last_mut() {
            if *pos == 0 && index[u] == UNVISITED {
                index[u] = next_index;
                low[u] = next_index;
                next_index += 1;
                stack.push(u);
                on_stack[u] = true;
            }
            if let Some(&v) = adj[u].get(*pos) {
                *pos += 1;
                if index[v] == UNVISITED {
                    call.push((v, 0));
                } else if on_stack[v] {
                    low[u] = low[u].min(index[v]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[u]);
            }
            if low[u] == index[u] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == u {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}
