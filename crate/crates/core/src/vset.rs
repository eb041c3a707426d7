//! Bitmask vertex sets and a mask-based view of a signed graph for the
//! exhaustive searches (n ≤ 64).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};

pub const MAX_MASK_ORDER: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn from_slice(vs: &[usize]) -> Self {
        VertexSet(vs.iter().fold(0u64, |m, &v| m | 1 << v))
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn insert(self, v: usize) -> Self {
        VertexSet(self.0 | 1 << v)
    }

    pub fn remove(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn union(self, o: VertexSet) -> Self {
        VertexSet(self.0 | o.0)
    }

    pub fn inter(self, o: VertexSet) -> Self {
        VertexSet(self.0 & o.0)
    }

    pub fn minus(self, o: VertexSet) -> Self {
        VertexSet(self.0 & !o.0)
    }

    pub fn is_disjoint(self, o: VertexSet) -> bool {
        self.0 & o.0 == 0
    }

    pub fn is_subset(self, o: VertexSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

/// Sign-split adjacency masks. Parallel same-sign edges collapse; loops are
/// kept as flags.
#[derive(Debug, Clone)]
pub struct MaskGraph {
    pub n: usize,
    pub pos: Vec<u64>,
    pub neg: Vec<u64>,
    pub neg_loop: u64,
    pub pos_loop: u64,
}

impl MaskGraph {
    pub fn new(g: &SignedGraph) -> Result<Self> {
        let n = g.n();
        if n > MAX_MASK_ORDER {
            return Err(Error::TooLarge { what: "bitmask search", n, bound: MAX_MASK_ORDER });
        }
        let mut mg = MaskGraph { n, pos: vec![0; n], neg: vec![0; n], neg_loop: 0, pos_loop: 0 };
        for e in g.edges() {
            if e.is_loop() {
                match e.sign {
                    Sign::Pos => mg.pos_loop |= 1 << e.u,
                    Sign::Neg => mg.neg_loop |= 1 << e.u,
                }
                continue;
            }
            let table = if e.sign.is_pos() { &mut mg.pos } else { &mut mg.neg };
            table[e.u] |= 1 << e.v;
            table[e.v] |= 1 << e.u;
        }
        Ok(mg)
    }

    pub fn adj(&self, v: usize) -> u64 {
        self.pos[v] | self.neg[v]
    }

    /// Pairs joined by edges of both signs.
    pub fn digon(&self, v: usize) -> u64 {
        self.pos[v] & self.neg[v]
    }

    pub fn is_connected(&self, set: VertexSet) -> bool {
        let Some(start) = set.min() else { return true };
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in VertexSet(frontier).iter() {
                next |= self.adj(v);
            }
            next &= set.0 & !seen;
            seen |= next;
            frontier = next;
        }
        seen == set.0
    }

    /// Balance labels of the induced subgraph on `set`: returns the mask of
    /// vertices labelled −1 (lowest-index-first BFS per component, roots +1),
    /// or `None` if the set induces a negative cycle or holds a negative loop.
    pub fn balance_labels(&self, set: VertexSet) -> Option<u64> {
        if set.0 & self.neg_loop != 0 {
            return None;
        }
        let mut unseen = set.0;
        let mut minus = 0u64;
        while unseen != 0 {
            let root = unseen.trailing_zeros() as usize;
            unseen &= !(1 << root);
            let mut queue = vec![root];
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                let u_minus = minus >> u & 1 == 1;
                // same-label and opposite-label neighbours inside the set
                let same = self.pos[u] & set.0;
                let diff = self.neg[u] & set.0;
                if same & diff != 0 {
                    return None;
                }
                let (to_minus, to_plus) = if u_minus { (same, diff) } else { (diff, same) };
                let placed = set.0 & !unseen;
                // conflicts with already-labelled vertices
                if to_minus & placed & !minus != 0 || to_plus & placed & minus != 0 {
                    return None;
                }
                let fresh_minus = to_minus & unseen;
                let fresh_plus = to_plus & unseen;
                minus |= fresh_minus;
                unseen &= !(fresh_minus | fresh_plus);
                queue.extend(VertexSet(fresh_minus | fresh_plus).iter());
            }
        }
        Some(minus)
    }

    pub fn is_balanced(&self, set: VertexSet) -> bool {
        self.balance_labels(set).is_some()
    }
}
