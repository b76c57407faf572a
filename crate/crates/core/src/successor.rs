//! Models of the theory of an injective unary function.
//!
//! Such a model decomposes into disjoint finite cycles, copies of the
//! naturals and copies of the integers. Finite models are exactly disjoint
//! unions of cycles; infinite components are tracked only by count.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::Digraph;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuccessorError {
    #[error(
        "structure has {n_chains} N-chains and {z_chains} Z-chains and cannot be realized finitely"
    )]
    NotFinite { n_chains: usize, z_chains: usize },
    #[error("node {node} has out-degree {degree}, so s is not a total function")]
    NotFunctional { node: usize, degree: usize },
    #[error("nodes {first} and {second} both map to {target}, so s is not injective")]
    NotInjective {
        first: usize,
        second: usize,
        target: usize,
    },
    #[error("cycle lengths must be positive")]
    ZeroCycle,
    #[error("invalid structure `{0}` (expected `cycles=[l1,l2,...] n=<count> z=<count>`)")]
    Syntax(String),
}

/// Component decomposition of a model: finite cycle lengths in layout order,
/// plus counts of N-shaped and Z-shaped chains.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SuccessorStructure {
    cycles: Vec<usize>,
    n_chains: usize,
    z_chains: usize,
}

impl SuccessorStructure {
    pub fn new(
        cycles: Vec<usize>,
        n_chains: usize,
        z_chains: usize,
    ) -> Result<Self, SuccessorError> {
        if cycles.contains(&0) {
            return Err(SuccessorError::ZeroCycle);
        }
        Ok(SuccessorStructure {
            cycles,
            n_chains,
            z_chains,
        })
    }

    pub fn finite(cycles: Vec<usize>) -> Result<Self, SuccessorError> {
        SuccessorStructure::new(cycles, 0, 0)
    }

    pub fn cycles(&self) -> &[usize] {
        &self.cycles
    }

    pub fn n_chains(&self) -> usize {
        self.n_chains
    }

    pub fn z_chains(&self) -> usize {
        self.z_chains
    }

    pub fn is_finitely_realizable(&self) -> bool {
        self.n_chains == 0 && self.z_chains == 0
    }

    /// Number of elements of the finite part.
    pub fn finite_size(&self) -> usize {
        self.cycles.iter().sum()
    }

    /// The associated digraph `x -> s(x)`. Cycles are laid out in order on
    /// consecutive indices.
    pub fn realize(&self) -> Result<Digraph, SuccessorError> {
        if !self.is_finitely_realizable() {
            return Err(SuccessorError::NotFinite {
                n_chains: self.n_chains,
                z_chains: self.z_chains,
            });
        }
        let mut edges = Vec::with_capacity(self.finite_size());
        let mut base = 0;
        for &len in &self.cycles {
            edges.extend((0..len).map(|i| (base + i, base + (i + 1) % len)));
            base += len;
        }
        Ok(Digraph::build(base, edges).expect("indices in range"))
    }

    /// Recovers the cycle decomposition of a functional, injective digraph.
    /// Cycles are listed in order of their lowest node.
    pub fn classify(g: &Digraph) -> Result<Self, SuccessorError> {
        if let Some(node) = g.non_functional_node() {
            return Err(SuccessorError::NotFunctional {
                node,
                degree: g.out_neighbors(node).len(),
            });
        }
        let mut preimage: Vec<Option<usize>> = vec![None; g.node_count()];
        for (u, v) in g.edges() {
            if let Some(first) = preimage[v] {
                return Err(SuccessorError::NotInjective {
                    first,
                    second: u,
                    target: v,
                });
            }
            preimage[v] = Some(u);
        }
        // a total injection on a finite set is a permutation
        let mut visited = vec![false; g.node_count()];
        let mut cycles = Vec::new();
        for start in g.nodes() {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut u = start;
            while !visited[u] {
                visited[u] = true;
                len += 1;
                u = g.successor(u).expect("functional");
            }
            cycles.push(len);
        }
        SuccessorStructure::finite(cycles)
    }

    /// Whether the associated digraph has a kernel: exactly when no cycle is
    /// odd. Chains never block one, since alternating along a chain works.
    pub fn kernel_exists(&self) -> bool {
        self.cycles.iter().all(|len| len % 2 == 0)
    }

    /// Whether the structure satisfies `~exists x. s^(2k+1)(x) = x` for every
    /// `k <= up_to`. A cycle of length `l` satisfies `s^m(x) = x` iff `l | m`.
    pub fn satisfies_fragment(&self, up_to: usize) -> bool {
        let largest_odd = 2 * up_to + 1;
        self.cycles.iter().all(|&l| l % 2 == 0 || l > largest_odd)
    }

    /// The alternating kernel of the realized graph: even positions of each
    /// cycle. `None` if some cycle is odd or the structure is infinite.
    pub fn even_index_kernel(&self) -> Option<VertexSet> {
        if !self.is_finitely_realizable() || !self.kernel_exists() {
            return None;
        }
        let mut k = VertexSet::new(self.finite_size());
        let mut base = 0;
        for &len in &self.cycles {
            for i in (0..len).step_by(2) {
                k.insert(base + i);
            }
            base += len;
        }
        Some(k)
    }

    /// Every multiset of cycle lengths with total size at most `max_total`,
    /// each listed in non-increasing order.
    pub fn all_finite_up_to(max_total: usize) -> Vec<SuccessorStructure> {
        fn go(remaining: usize, max_part: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            out.push(acc.clone());
            for part in (1..=max_part.min(remaining)).rev() {
                acc.push(part);
                go(remaining - part, part, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        go(max_total, max_total, &mut Vec::new(), &mut out);
        out.into_iter()
            .map(|c| SuccessorStructure::finite(c).expect("positive parts"))
            .collect()
    }
}

impl fmt::Display for SuccessorStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lens: Vec<String> = self.cycles.iter().map(usize::to_string).collect();
        write!(
            f,
            "cycles=[{}] n={} z={}",
            lens.join(","),
            self.n_chains,
            self.z_chains
        )
    }
}

impl FromStr for SuccessorStructure {
    type Err = SuccessorError;

    /// Parses `cycles=[l1,l2,...] n=<count> z=<count>`; any field may be
    /// omitted and defaults to empty or zero.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SuccessorError::Syntax(s.to_owned());
        let (mut cycles, mut n, mut z) = (None, None, None);
        for field in s.split_whitespace() {
            let (key, value) = field.split_once('=').ok_or_else(bad)?;
            match key {
                "cycles" if cycles.is_none() => {
                    let inner = value
                        .strip_prefix('[')
                        .and_then(|v| v.strip_suffix(']'))
                        .ok_or_else(bad)?;
                    let lens = inner
                        .split(',')
                        .map(str::trim)
                        .filter(|p| !p.is_empty())
                        .map(|p| p.parse::<usize>().map_err(|_| bad()))
                        .collect::<Result<Vec<_>, _>>()?;
                    cycles = Some(lens);
                }
                "n" if n.is_none() => n = Some(value.parse().map_err(|_| bad())?),
                "z" if z.is_none() => z = Some(value.parse().map_err(|_| bad())?),
                _ => return Err(bad()),
            }
        }
        SuccessorStructure::new(cycles.unwrap_or_default(), n.unwrap_or(0), z.unwrap_or(0))
    }
}
