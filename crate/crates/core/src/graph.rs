//! The signed multigraph value type and its text format.
//!
//! Vertices are dense indices `0..n`. Edges carry a [`Sign`]; loops (`u == v`)
//! and parallel edges are allowed. Edge order is preserved by every operation
//! that does not explicitly drop edges, so edge indices are stable handles for
//! certificates.

use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn is_pos(self) -> bool {
        self == Sign::Pos
    }

    pub fn is_neg(self) -> bool {
        self == Sign::Neg
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Neg
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.as_i8()
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;
    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Sign::Pos),
            -1 => Ok(Sign::Neg),
            other => Err(format!("sign must be 1 or -1, got {other}")),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub sign: Sign,
}

impl Edge {
    pub fn new(u: usize, v: usize, sign: Sign) -> Self {
        Edge { u, v, sign }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint opposite to `x`, if `x` is an endpoint.
    pub fn other(&self, x: usize) -> Option<usize> {
        if self.u == x {
            Some(self.v)
        } else if self.v == x {
            Some(self.u)
        } else {
            None
        }
    }
}

/// Per-vertex ±1 assignment.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SwitchingVector(pub Vec<Sign>);

impl SwitchingVector {
    pub fn identity(n: usize) -> Self {
        SwitchingVector(vec![Sign::Pos; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> Sign {
        self.0[v]
    }

    /// Vertices switched (value −1).
    pub fn switched(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_neg())
            .map(|(v, _)| v)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SignedGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl SignedGraph {
    pub fn empty(n: usize) -> Self {
        SignedGraph { n, edges: Vec::new() }
    }

    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        for e in &edges {
            for x in [e.u, e.v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
        }
        Ok(SignedGraph { n, edges })
    }

    /// Builds from `(u, v, sign)` triples; panics on out-of-range vertices.
    pub fn from_triples(n: usize, triples: &[(usize, usize, Sign)]) -> Self {
        let edges = triples.iter().map(|&(u, v, s)| Edge::new(u, v, s)).collect();
        SignedGraph::new(n, edges).expect("vertex out of range")
    }

    pub fn add_edge(&mut self, u: usize, v: usize, sign: Sign) -> Result<usize> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        self.edges.push(Edge::new(u, v, sign));
        Ok(self.edges.len() - 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> Edge {
        self.edges[idx]
    }

    pub fn has_negative_loop(&self) -> bool {
        self.negative_loop_vertex().is_some()
    }

    pub fn negative_loop_vertex(&self) -> Option<usize> {
        self.edges.iter().find(|e| e.is_loop() && e.sign.is_neg()).map(|e| e.u)
    }

    /// Number of non-loop edge ends at each vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in self.edges.iter().filter(|e| !e.is_loop()) {
            d[e.u] += 1;
            d[e.v] += 1;
        }
        d
    }

    /// Incidence lists `(edge index, neighbour)`, loops listed once.
    pub fn incidence(&self) -> Vec<Vec<(usize, usize)>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            inc[e.u].push((i, e.v));
            if !e.is_loop() {
                inc[e.v].push((i, e.u));
            }
        }
        inc
    }

    pub fn switch(&self, s: &SwitchingVector) -> Result<SignedGraph> {
        if s.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: s.len() });
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(e.u, e.v, e.sign * s.get(e.u) * s.get(e.v)))
            .collect();
        Ok(SignedGraph { n: self.n, edges })
    }

    /// Switching at the listed vertices.
    pub fn switch_at(&self, vertices: &[usize]) -> Result<SignedGraph> {
        let mut s = SwitchingVector::identity(self.n);
        for &v in vertices {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
            s.0[v] = -s.0[v];
        }
        self.switch(&s)
    }

    /// Every edge sign negated, `(G, −σ)`.
    pub fn negated(&self) -> SignedGraph {
        let edges = self.edges.iter().map(|e| Edge::new(e.u, e.v, -e.sign)).collect();
        SignedGraph { n: self.n, edges }
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<SignedGraph> {
        if perm.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: perm.len() });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || seen[p] {
                return Err(Error::InvalidParams("not a permutation".into()));
            }
            seen[p] = true;
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(perm[e.u], perm[e.v], e.sign))
            .collect();
        Ok(SignedGraph { n: self.n, edges })
    }

    /// Induced subgraph on `xs`; returns the graph and the map new index → old index.
    ///
    /// New indices follow the sorted order of `xs`.
    pub fn induced(&self, xs: &[usize]) -> Result<(SignedGraph, Vec<usize>)> {
        let mut keep: Vec<usize> = xs.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut idx = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
            idx[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| idx[e.u] != usize::MAX && idx[e.v] != usize::MAX)
            .map(|e| Edge::new(idx[e.u], idx[e.v], e.sign))
            .collect();
        Ok((SignedGraph { n: keep.len(), edges }, keep))
    }

    /// Drops same-sign parallel edges and positive loops, keeping the first
    /// occurrence of everything else. At most one negative loop per vertex
    /// survives, so `χ_b = ∞` is preserved.
    pub fn simplify(&self) -> SignedGraph {
        let mut seen = std::collections::HashSet::new();
        let mut edges = Vec::new();
        for e in &self.edges {
            if e.is_loop() && e.sign.is_pos() {
                continue;
            }
            let (a, b) = if e.u <= e.v { (e.u, e.v) } else { (e.v, e.u) };
            if seen.insert((a, b, e.sign)) {
                edges.push(Edge::new(a, b, e.sign));
            }
        }
        SignedGraph { n: self.n, edges }
    }

    /// Underlying simple graph: loops dropped, parallel edges merged.
    pub fn underlying(&self) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.n);
        for e in self.edges.iter().filter(|e| !e.is_loop()) {
            g.add_edge(e.u, e.v);
        }
        g
    }

    /// Parses the line format: a header `n m`, then `m` lines `u v s` with
    /// `s ∈ {+, -}`. Lines starting with `#` and blank lines are skipped.
    pub fn parse(text: &str) -> Result<SignedGraph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines.next().ok_or(Error::Parse { line: 0, msg: "missing header".into() })?;
        let head: Vec<&str> = header.split_whitespace().collect();
        if head.len() != 2 {
            return Err(Error::Parse { line: hline, msg: "header must be `n m`".into() });
        }
        let num = |tok: &str, line: usize| -> Result<usize> {
            tok.parse::<usize>()
                .map_err(|_| Error::Parse { line, msg: format!("not a non-negative integer: {tok:?}") })
        };
        let n = num(head[0], hline)?;
        let m = num(head[1], hline)?;

        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            let toks: Vec<&str> = l.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(Error::Parse { line, msg: "edge line must be `u v s`".into() });
            }
            let u = num(toks[0], line)?;
            let v = num(toks[1], line)?;
            for x in [u, v] {
                if x >= n {
                    return Err(Error::Parse { line, msg: format!("vertex {x} out of range (n = {n})") });
                }
            }
            let sign = match toks[2] {
                "+" => Sign::Pos,
                "-" => Sign::Neg,
                other => return Err(Error::Parse { line, msg: format!("bad sign token {other:?}") }),
            };
            if edges.len() == m {
                return Err(Error::Parse { line, msg: format!("more than the declared {m} edges") });
            }
            edges.push(Edge::new(u, v, sign));
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: text.lines().count(),
                msg: format!("declared {m} edges, found {}", edges.len()),
            });
        }
        Ok(SignedGraph { n, edges })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edges.len());
        for e in &self.edges {
            s.push_str(&format!("{} {} {}\n", e.u, e.v, e.sign));
        }
        s
    }
}

impl std::str::FromStr for SignedGraph {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SignedGraph::parse(s)
    }
}

/// A loopless simple graph, adjacency as bitmasks (n ≤ 64).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<u64>,
}

impl SimpleGraph {
    pub const MAX_ORDER: usize = 64;

    pub fn empty(n: usize) -> Self {
        assert!(n <= Self::MAX_ORDER, "simple graphs are limited to 64 vertices");
        SimpleGraph { n, adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = SimpleGraph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = SimpleGraph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = SimpleGraph::empty(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = SimpleGraph::empty(n);
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        g
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        SimpleGraph::from_edges(10, &edges)
    }

    /// Adds `uv`; loops and repeats are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "vertex out of range");
        if u != v {
            self.adj[u] |= 1 << v;
            self.adj[v] |= 1 << u;
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adj(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Every edge doubled into a positive/negative pair.
    pub fn tilde(&self) -> SignedGraph {
        let mut edges = Vec::new();
        for (u, v) in self.edges() {
            edges.push(Edge::new(u, v, Sign::Pos));
            edges.push(Edge::new(u, v, Sign::Neg));
        }
        SignedGraph { n: self.n, edges }
    }

    /// Every edge negative.
    pub fn minus(&self) -> SignedGraph {
        self.with_sign(Sign::Neg)
    }

    pub fn with_sign(&self, sign: Sign) -> SignedGraph {
        let edges = self.edges().into_iter().map(|(u, v)| Edge::new(u, v, sign)).collect();
        SignedGraph { n: self.n, edges }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(text: &str) -> SignedGraph {
        SignedGraph::parse(&text.replace(" / ", "\n")).unwrap()
    }

    #[test]
    fn parses_small_examples() {
        let t = g("3 3 / 0 1 + / 1 2 + / 0 2 -");
        assert_eq!(t.n(), 3);
        assert_eq!(t.edges()[2], Edge::new(0, 2, Sign::Neg));

        let l = g("1 1 / 0 0 -");
        assert!(l.has_negative_loop());

        let d = g("2 2 / 0 1 + / 0 1 -");
        assert_eq!(d.m(), 2);
        assert_eq!(d, SimpleGraph::complete(2).tilde());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = SignedGraph::parse("2 1\n0 5 +\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = SignedGraph::parse("# c\n2 1\n0 1 x\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = SignedGraph::parse("2 2\n0 1 +\n").unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
        assert!(SignedGraph::parse("2 1 3\n").is_err());
        assert!(SignedGraph::parse("").is_err());
    }

    #[test]
    fn text_round_trip() {
        let t = g("4 4 / # comment / 0 1 + / 1 1 - / 2 3 - / 0 1 +");
        assert_eq!(SignedGraph::parse(&t.to_text()).unwrap(), t);
    }

    #[test]
    fn switching() {
        let tri = SimpleGraph::complete(3).minus();
        let s = SwitchingVector(vec![Sign::Neg, Sign::Pos, Sign::Pos]);
        let sw = tri.switch(&s).unwrap();
        // edges 01, 02 flip; 12 stays
        let signs: Vec<Sign> = sw.edges().iter().map(|e| e.sign).collect();
        assert_eq!(signs, vec![Sign::Pos, Sign::Pos, Sign::Neg]);

        assert_eq!(tri.switch(&SwitchingVector::identity(3)).unwrap(), tri);

        let l = g("2 1 / 1 1 -");
        assert_eq!(l.switch_at(&[1]).unwrap(), l);

        assert!(matches!(tri.switch(&SwitchingVector::identity(2)), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn induced_subgraphs() {
        let d = SimpleGraph::complete(2).tilde();
        let (h, map) = d.induced(&[0]).unwrap();
        assert_eq!((h.n(), h.m()), (1, 0));
        assert_eq!(map, vec![0]);

        let (e, _) = d.induced(&[]).unwrap();
        assert_eq!((e.n(), e.m()), (0, 0));

        let (all, _) = d.induced(&[1, 0]).unwrap();
        assert_eq!(all, d);
    }

    #[test]
    fn simplify_rules() {
        assert_eq!(g("2 2 / 0 1 + / 1 0 +").simplify().m(), 1);
        assert_eq!(g("2 2 / 0 1 + / 0 1 -").simplify().m(), 2);
        assert_eq!(g("1 1 / 0 0 +").simplify().m(), 0);
        let neg = g("1 2 / 0 0 - / 0 0 -").simplify();
        assert_eq!(neg.m(), 1);
        assert!(neg.has_negative_loop());
    }

    #[test]
    fn petersen_shape() {
        let p = SimpleGraph::petersen();
        assert_eq!(p.edge_count(), 15);
        assert!((0..10).all(|v| p.degree(v) == 3));
    }
}
