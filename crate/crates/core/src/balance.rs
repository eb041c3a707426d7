//! Balance testing with certificates, walk signs, and the maximum-positive
//! switching local search.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph, SwitchingVector};

/// A closed walk that visits `vertices[i]` then crosses `edges[i]` to
/// `vertices[(i + 1) % len]`. A digon is a cycle of length 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegativeCycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl NegativeCycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Checks that this is a cycle of `g` (closed, no repeated vertex) with
    /// sign −1.
    pub fn verify(&self, g: &SignedGraph) -> Result<()> {
        let k = self.edges.len();
        if k == 0 || self.vertices.len() != k {
            return Err(Error::InvalidCertificate("cycle shape".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for &v in &self.vertices {
            if v >= g.n() || !seen.insert(v) {
                return Err(Error::InvalidCertificate("cycle repeats or leaves the vertex range".into()));
            }
        }
        let mut sign = Sign::Pos;
        for i in 0..k {
            let &ei = self.edges.get(i).filter(|&&e| e < g.m()).ok_or_else(|| {
                Error::InvalidCertificate("cycle edge out of range".into())
            })?;
            let e = g.edge(ei);
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % k]);
            if !((e.u == a && e.v == b) || (e.u == b && e.v == a)) {
                return Err(Error::InvalidCertificate(format!("edge {ei} does not join {a} and {b}")));
            }
            sign = sign * e.sign;
        }
        let distinct: std::collections::HashSet<_> = self.edges.iter().collect();
        if distinct.len() != k {
            return Err(Error::InvalidCertificate("cycle reuses an edge".into()));
        }
        if sign.is_pos() {
            return Err(Error::InvalidCertificate("cycle is positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BalanceResult {
    /// Switching under which every edge is positive.
    Balanced(SwitchingVector),
    Unbalanced(NegativeCycle),
}

impl BalanceResult {
    pub fn is_balanced(&self) -> bool {
        matches!(self, BalanceResult::Balanced(_))
    }

    pub fn switching(&self) -> Option<&SwitchingVector> {
        match self {
            BalanceResult::Balanced(s) => Some(s),
            BalanceResult::Unbalanced(_) => None,
        }
    }

    pub fn verify(&self, g: &SignedGraph) -> Result<()> {
        match self {
            BalanceResult::Balanced(s) => {
                let sw = g.switch(s)?;
                match sw.edges().iter().position(|e| e.sign.is_neg()) {
                    Some(i) => Err(Error::InvalidCertificate(format!("edge {i} stays negative"))),
                    None => Ok(()),
                }
            }
            BalanceResult::Unbalanced(c) => c.verify(g),
        }
    }
}

/// Balance test. Builds a spanning forest by BFS (roots and neighbours in
/// increasing index order), labels vertices by tree-path parity, and reports
/// the first non-tree edge (in edge order) that closes a negative cycle.
pub fn is_balanced(g: &SignedGraph) -> BalanceResult {
    if let Some((i, e)) = g.edges().iter().enumerate().find(|(_, e)| e.is_loop() && e.sign.is_neg()) {
        return BalanceResult::Unbalanced(NegativeCycle { vertices: vec![e.u], edges: vec![i] });
    }
    let n = g.n();
    let mut inc = g.incidence();
    for list in &mut inc {
        list.sort_unstable_by_key(|&(e, w)| (w, e));
    }
    let mut label = vec![Sign::Pos; n];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n]; // (parent vertex, edge)
    let mut depth = vec![0usize; n];
    let mut seen = vec![false; n];
    let mut tree_edge = vec![false; g.m()];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(ei, w) in &inc[u] {
                if seen[w] {
                    continue;
                }
                seen[w] = true;
                label[w] = label[u] * g.edge(ei).sign;
                parent[w] = Some((u, ei));
                depth[w] = depth[u] + 1;
                tree_edge[ei] = true;
                queue.push_back(w);
            }
        }
    }
    for (ei, e) in g.edges().iter().enumerate() {
        if tree_edge[ei] || e.is_loop() {
            continue;
        }
        if (e.sign * label[e.u] * label[e.v]).is_neg() {
            return BalanceResult::Unbalanced(cycle_through(e.u, e.v, ei, &parent, &depth));
        }
    }
    BalanceResult::Balanced(SwitchingVector(label))
}

fn cycle_through(
    u: usize,
    v: usize,
    closing: usize,
    parent: &[Option<(usize, usize)>],
    depth: &[usize],
) -> NegativeCycle {
    // climb both ends to the lowest common ancestor
    let (mut a, mut b) = (u, v);
    let mut up_a = Vec::new(); // (vertex, edge to parent)
    let mut up_b = Vec::new();
    while depth[a] > depth[b] {
        let (p, e) = parent[a].expect("non-root");
        up_a.push((a, e));
        a = p;
    }
    while depth[b] > depth[a] {
        let (p, e) = parent[b].expect("non-root");
        up_b.push((b, e));
        b = p;
    }
    while a != b {
        let (pa, ea) = parent[a].expect("non-root");
        let (pb, eb) = parent[b].expect("non-root");
        up_a.push((a, ea));
        up_b.push((b, eb));
        a = pa;
        b = pb;
    }
    let lca = a;
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for &(x, e) in &up_a {
        vertices.push(x);
        edges.push(e);
    }
    vertices.push(lca);
    for &(x, e) in up_b.iter().rev() {
        edges.push(e);
        vertices.push(x);
    }
    // vertices ends at v; the closing edge returns to u
    edges.push(closing);
    NegativeCycle { vertices, edges }
}

/// Sign of a walk given as a sequence of edge indices. The orientation of the
/// first edge is inferred; an empty walk is positive.
pub fn walk_sign(g: &SignedGraph, walk: &[usize]) -> Result<Sign> {
    if let Some(&bad) = walk.iter().find(|&&e| e >= g.m()) {
        return Err(Error::InvalidParams(format!("edge index {bad} out of range")));
    }
    let Some(&first) = walk.first() else { return Ok(Sign::Pos) };
    let e0 = g.edge(first);
    let mut last_err = 0;
    for start in [e0.u, e0.v] {
        match follow(g, start, walk) {
            Ok(s) => return Ok(s),
            Err(p) => last_err = last_err.max(p),
        }
    }
    Err(Error::NotAWalk { position: last_err })
}

fn follow(g: &SignedGraph, start: usize, walk: &[usize]) -> std::result::Result<Sign, usize> {
    let mut at = start;
    let mut sign = Sign::Pos;
    for (i, &ei) in walk.iter().enumerate() {
        let e = g.edge(ei);
        at = e.other(at).ok_or(i)?;
        sign = sign * e.sign;
    }
    Ok(sign)
}

/// Local search for a switching under which every vertex has at least half of
/// its non-loop edges positive. Returns the switching and the spanning
/// subgraph of edges that are positive after it (a balanced graph).
///
/// Vertices are scanned in index order; after each improving switch the scan
/// restarts from vertex 0. Each switch strictly increases the number of
/// positive edges, so at most `m` switches happen.
pub fn max_positive_switching(g: &SignedGraph) -> Result<(SwitchingVector, SignedGraph)> {
    if let Some(v) = g.negative_loop_vertex() {
        return Err(Error::NegativeLoop { vertex: v });
    }
    let n = g.n();
    let inc = g.incidence();
    let mut s = vec![Sign::Pos; n];
    let cur = |e: usize, s: &[Sign]| {
        let ed = g.edge(e);
        ed.sign * s[ed.u] * s[ed.v]
    };
    // surplus[v] = positive − negative non-loop incidences
    let mut surplus = vec![0i64; n];
    for e in g.edges().iter().filter(|e| !e.is_loop()) {
        let d = if e.sign.is_pos() { 1 } else { -1 };
        surplus[e.u] += d;
        surplus[e.v] += d;
    }
    while let Some(v) = (0..n).find(|&v| surplus[v] < 0) {
        for &(ei, w) in &inc[v] {
            if w == v {
                continue;
            }
            let before = cur(ei, &s);
            let d = if before.is_pos() { -2 } else { 2 };
            surplus[v] += d;
            surplus[w] += d;
        }
        s[v] = -s[v];
    }
    let sv = SwitchingVector(s);
    let switched = g.switch(&sv)?;
    let h_edges = switched.edges().iter().copied().filter(|e| e.sign.is_pos()).collect();
    let h = SignedGraph::new(n, h_edges)?;
    Ok((sv, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;

    fn tri(signs: [Sign; 3]) -> SignedGraph {
        SignedGraph::from_triples(3, &[(0, 1, signs[0]), (1, 2, signs[1]), (0, 2, signs[2])])
    }

    #[test]
    fn balanced_triangle_switches_shared_endpoint() {
        use Sign::*;
        let g = tri([Pos, Neg, Neg]);
        let r = is_balanced(&g);
        r.verify(&g).unwrap();
        let s = r.switching().unwrap();
        // the two negative edges meet at vertex 2; switch exactly there
        assert_eq!(s.switched(), vec![2]);
    }

    #[test]
    fn negative_triangle_gives_three_cycle() {
        let g = SimpleGraph::complete(3).minus();
        match is_balanced(&g) {
            BalanceResult::Unbalanced(c) => {
                assert_eq!(c.len(), 3);
                c.verify(&g).unwrap();
                assert_eq!(walk_sign(&g, &c.edges).unwrap(), Sign::Neg);
            }
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn digon_is_negative_two_cycle() {
        let g = SimpleGraph::complete(2).tilde();
        match is_balanced(&g) {
            BalanceResult::Unbalanced(c) => {
                assert_eq!(c.len(), 2);
                c.verify(&g).unwrap();
            }
            other => panic!("expected digon, got {other:?}"),
        }
    }

    #[test]
    fn negative_loop_is_a_one_cycle() {
        let g = SignedGraph::from_triples(2, &[(0, 1, Sign::Pos), (1, 1, Sign::Neg)]);
        match is_balanced(&g) {
            BalanceResult::Unbalanced(c) => assert_eq!(c.vertices, vec![1]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn deep_cycle_certificate() {
        // long odd negative cycle with a pendant tree
        let mut g = SimpleGraph::cycle(7).minus();
        g.add_edge(3, 3, Sign::Pos).unwrap();
        let r = is_balanced(&g);
        r.verify(&g).unwrap();
        assert!(!r.is_balanced());
    }

    #[test]
    fn walk_signs() {
        use Sign::*;
        let t = SimpleGraph::complete(3).minus();
        assert_eq!(walk_sign(&t, &[0, 1, 2]).unwrap(), Neg);
        let e = SignedGraph::from_triples(2, &[(0, 1, Pos)]);
        assert_eq!(walk_sign(&e, &[0, 0]).unwrap(), Pos);
        let d = SimpleGraph::complete(2).tilde();
        assert_eq!(walk_sign(&d, &[0, 1]).unwrap(), Neg);
        let p = SimpleGraph::path(4).with_sign(Pos);
        assert!(matches!(walk_sign(&p, &[0, 2]), Err(Error::NotAWalk { .. })));
        assert_eq!(walk_sign(&p, &[]).unwrap(), Pos);
    }

    #[test]
    fn max_positive_on_negative_k4() {
        let g = SimpleGraph::complete(4).minus();
        let (s, h) = max_positive_switching(&g).unwrap();
        let deg = h.degrees();
        assert!(deg.iter().all(|&d| d >= 2), "{deg:?}");
        assert_eq!(g.switch(&s).unwrap().edges().iter().filter(|e| e.sign.is_pos()).count(), h.m());
        assert_eq!(is_balanced(&h), BalanceResult::Balanced(SwitchingVector::identity(4)));
    }

    #[test]
    fn max_positive_trivial_cases() {
        let bal = SimpleGraph::cycle(4).with_sign(Sign::Pos);
        let (s, h) = max_positive_switching(&bal).unwrap();
        assert_eq!(s, SwitchingVector::identity(4));
        assert_eq!(h, bal);

        let one = SignedGraph::from_triples(2, &[(0, 1, Sign::Neg)]);
        let (s, h) = max_positive_switching(&one).unwrap();
        assert_eq!(s.switched(), vec![0]);
        assert_eq!(h.m(), 1);

        let bad = SignedGraph::from_triples(1, &[(0, 0, Sign::Neg)]);
        assert!(matches!(max_positive_switching(&bad), Err(Error::NegativeLoop { vertex: 0 })));
    }
}
