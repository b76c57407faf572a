use std::fmt;

/// A subset of the nodes `0..n` of some graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet {
            n,
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = VertexSet::new(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    /// Panics if a member is `>= n`.
    pub fn from_members<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Self {
        let mut s = VertexSet::new(n);
        for v in members {
            s.insert(v);
        }
        s
    }

    /// Bit `i` of `mask` is membership of node `i`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(
            n <= 64 && (n == 64 || mask >> n == 0),
            "mask exceeds {n} nodes"
        );
        let mut s = VertexSet::new(n);
        if n > 0 {
            s.words[0] = mask;
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.n, "node {v} out of range for {} nodes", self.n);
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        assert!(v < self.n, "node {v} out of range for {} nodes", self.n);
        self.words[v / 64] &= !(1 << (v % 64));
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.n
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.contains(v))
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership() {
        let mut s = VertexSet::new(70);
        s.insert(3);
        s.insert(65);
        assert!(s.contains(65) && s.contains(3) && !s.contains(4));
        assert!(!s.contains(100));
        assert_eq!(s.len(), 2);
        s.remove(3);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![65]);
        assert!(VertexSet::full(70).is_full());
        assert!(VertexSet::new(0).is_full() && VertexSet::new(0).is_empty());
    }

    #[test]
    #[should_panic]
    fn insert_out_of_range() {
        VertexSet::new(3).insert(3);
    }

    #[test]
    fn display() {
        assert_eq!(VertexSet::from_members(3, [2, 1]).to_string(), "{1, 2}");
        assert_eq!(VertexSet::new(3).to_string(), "{}");
        assert_eq!(
            VertexSet::from_mask(4, 0b0101),
            VertexSet::from_members(4, [0, 2])
        );
    }
}
