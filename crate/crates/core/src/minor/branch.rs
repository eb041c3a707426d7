//! K̃ₜ and (Kₜ, −) minor search over switched branch sets.

use super::{CrossEdge, CrossPair, MinorCertificate, Pattern, MINOR_MAX_ORDER, ODD_MAX_T};
use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};
use crate::vset::{MaskGraph, VertexSet};

/// A connected vertex set with a switching (`minus` holds the switched
/// vertices, never the lowest one) whose positive edges span the set.
#[derive(Debug, Clone, Copy)]
struct Node {
    set: VertexSet,
    minus: u64,
    /// Outside vertices reached by an edge that is positive (resp. negative)
    /// when the outside vertex is unswitched.
    out_pos: u64,
    out_neg: u64,
}

impl Node {
    /// Which signs the edges between `self` and `other` realise under both
    /// switchings: `(positive present, negative present)`.
    fn cross(&self, other: &Node) -> (bool, bool) {
        let plus = other.set.0 & !other.minus;
        let minus = other.minus;
        let pos = (self.out_pos & plus) | (self.out_neg & minus);
        let neg = (self.out_neg & plus) | (self.out_pos & minus);
        (pos != 0, neg != 0)
    }
}

fn branch_nodes(mg: &MaskGraph) -> Vec<Node> {
    let n = mg.n;
    let mut sets: Vec<VertexSet> = (1u64..(1u64 << n))
        .map(VertexSet)
        .filter(|&s| mg.is_connected(s))
        .collect();
    sets.sort_by_key(|s| s.to_vec());

    let mut nodes = Vec::new();
    for set in sets {
        let root = set.min().expect("nonempty");
        let rest = set.remove(root);
        let free: Vec<usize> = rest.iter().collect();
        for bits in 0u64..(1u64 << free.len()) {
            let minus = free
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .fold(0u64, |m, (_, &v)| m | 1 << v);
            if !positive_spanning(mg, set, minus) {
                continue;
            }
            let (mut out_pos, mut out_neg) = (0u64, 0u64);
            for u in set.iter() {
                let (p, q) = if minus >> u & 1 == 1 { (mg.neg[u], mg.pos[u]) } else { (mg.pos[u], mg.neg[u]) };
                out_pos |= p;
                out_neg |= q;
            }
            nodes.push(Node { set, minus, out_pos: out_pos & !set.0, out_neg: out_neg & !set.0 });
        }
    }
    nodes
}

/// Positive edges after switching `minus` connect `set`.
fn positive_spanning(mg: &MaskGraph, set: VertexSet, minus: u64) -> bool {
    let root = set.min().expect("nonempty");
    let plus = set.0 & !minus;
    let mut seen = 1u64 << root;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for u in VertexSet(frontier).iter() {
            let (same, other) = if minus >> u & 1 == 1 { (minus, plus) } else { (plus, minus) };
            next |= (mg.pos[u] & same) | (mg.neg[u] & other);
        }
        next &= set.0 & !seen;
        seen |= next;
        frontier = next;
    }
    seen == set.0
}

fn check_order(g: &SignedGraph) -> Result<()> {
    if g.n() > MINOR_MAX_ORDER {
        return Err(Error::TooLarge { what: "minor search", n: g.n(), bound: MINOR_MAX_ORDER });
    }
    Ok(())
}

/// Searches for a K̃ₜ-minor. Branch sets are tried in lexicographic order of
/// their sorted vertex lists; the first model found is returned.
pub fn has_ktilde_minor(g: &SignedGraph, t: usize) -> Result<Option<MinorCertificate>> {
    check_order(g)?;
    let mg = MaskGraph::new(g)?;
    if t > mg.n {
        return Ok(None);
    }
    let nodes = branch_nodes(&mg);
    let mut chosen = Vec::with_capacity(t);
    let cands: Vec<usize> = (0..nodes.len()).collect();
    let found = clique_ktilde(&nodes, t, &mut chosen, &cands, VertexSet::EMPTY, mg.n);
    Ok(found.then(|| {
        let picked: Vec<(Node, Sign)> = chosen.iter().map(|&i| (nodes[i], Sign::Pos)).collect();
        certificate(g, Pattern::KTilde, &picked)
    }))
}

fn clique_ktilde(nodes: &[Node], t: usize, chosen: &mut Vec<usize>, cands: &[usize], used: VertexSet, n: usize) -> bool {
    if chosen.len() == t {
        return true;
    }
    let need = t - chosen.len();
    if n - used.len() < need || cands.len() < need {
        return false;
    }
    for (pos, &c) in cands.iter().enumerate() {
        if cands.len() - pos < need {
            break;
        }
        let node = &nodes[c];
        let next: Vec<usize> = cands[pos + 1..]
            .iter()
            .copied()
            .filter(|&d| {
                let other = &nodes[d];
                other.set.is_disjoint(node.set) && {
                    let (p, q) = node.cross(other);
                    p && q
                }
            })
            .collect();
        chosen.push(c);
        if clique_ktilde(nodes, t, chosen, &next, used.union(node.set), n) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Searches for a (Kₜ, −)-minor: like [`has_ktilde_minor`] but each pair only
/// needs a negative edge once every branch set carries a flip in {±1}; flips
/// are searched exhaustively (the first set keeps +1).
pub fn has_odd_minor(g: &SignedGraph, t: usize) -> Result<Option<MinorCertificate>> {
    check_order(g)?;
    if t > ODD_MAX_T {
        return Err(Error::TooLarge { what: "odd minor flip search (t)", n: t, bound: ODD_MAX_T });
    }
    let mg = MaskGraph::new(g)?;
    if t > mg.n {
        return Ok(None);
    }
    let nodes = branch_nodes(&mg);
    let cands: Vec<(usize, Sign)> =
        (0..nodes.len()).flat_map(|i| [(i, Sign::Pos), (i, Sign::Neg)]).collect();
    let mut chosen = Vec::with_capacity(t);
    let found = clique_odd(&nodes, t, &mut chosen, &cands, VertexSet::EMPTY, mg.n);
    Ok(found.then(|| {
        let picked: Vec<(Node, Sign)> = chosen.iter().map(|&(i, f)| (nodes[i], f)).collect();
        certificate(g, Pattern::OddComplete, &picked)
    }))
}

fn clique_odd(
    nodes: &[Node],
    t: usize,
    chosen: &mut Vec<(usize, Sign)>,
    cands: &[(usize, Sign)],
    used: VertexSet,
    n: usize,
) -> bool {
    if chosen.len() == t {
        return true;
    }
    let need = t - chosen.len();
    if n - used.len() < need || cands.is_empty() {
        return false;
    }
    for (pos, &(c, fc)) in cands.iter().enumerate() {
        // the first set keeps flip +1; flipping everything changes nothing
        if chosen.is_empty() && fc.is_neg() {
            continue;
        }
        let node = &nodes[c];
        let next: Vec<(usize, Sign)> = cands[pos + 1..]
            .iter()
            .copied()
            .filter(|&(d, fd)| {
                let other = &nodes[d];
                d != c && other.set.is_disjoint(node.set) && {
                    let (p, q) = node.cross(other);
                    // a negative edge must survive the relative flip
                    if (fc * fd).is_pos() {
                        q
                    } else {
                        p
                    }
                }
            })
            .collect();
        chosen.push((c, fc));
        if clique_odd(nodes, t, chosen, &next, used.union(node.set), n) {
            return true;
        }
        chosen.pop();
    }
    false
}

fn certificate(g: &SignedGraph, pattern: Pattern, picked: &[(Node, Sign)]) -> MinorCertificate {
    let n = g.n();
    let mut label = vec![Sign::Pos; n];
    let mut owner = vec![usize::MAX; n];
    let mut branch_sets = Vec::new();
    let mut internal_switchings = Vec::new();
    let mut spanning_trees = Vec::new();
    let mut flips = Vec::new();
    for (i, (node, flip)) in picked.iter().enumerate() {
        let verts = node.set.to_vec();
        for &v in &verts {
            owner[v] = i;
            if node.minus >> v & 1 == 1 {
                label[v] = Sign::Neg;
            }
        }
        internal_switchings.push(verts.iter().map(|&v| label[v]).collect());
        spanning_trees.push(positive_tree(g, &verts, &label));
        branch_sets.push(verts);
        flips.push(*flip);
    }
    let mut cross: Vec<CrossPair> = Vec::new();
    for i in 0..picked.len() {
        for j in i + 1..picked.len() {
            cross.push(CrossPair { i, j, edges: Vec::new() });
        }
    }
    let t = picked.len();
    let pair_index = |i: usize, j: usize| i * t - i * (i + 1) / 2 + (j - i - 1);
    for (ei, e) in g.edges().iter().enumerate() {
        let (a, b) = (owner[e.u], owner[e.v]);
        if a == usize::MAX || b == usize::MAX || a == b {
            continue;
        }
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        let sign = e.sign * label[e.u] * label[e.v] * flips[i] * flips[j];
        cross[pair_index(i, j)].edges.push(CrossEdge { edge: ei, sign });
    }
    MinorCertificate { pattern, branch_sets, internal_switchings, spanning_trees, flips, cross_edges: cross }
}

/// BFS tree over edges positive after `label`, lowest edge index first.
fn positive_tree(g: &SignedGraph, verts: &[usize], label: &[Sign]) -> Vec<usize> {
    let inside: std::collections::HashSet<usize> = verts.iter().copied().collect();
    let mut reached = std::collections::HashSet::from([verts[0]]);
    let mut tree = Vec::new();
    let mut grew = true;
    while grew {
        grew = false;
        for (ei, e) in g.edges().iter().enumerate() {
            if e.is_loop() || !inside.contains(&e.u) || !inside.contains(&e.v) {
                continue;
            }
            if (e.sign * label[e.u] * label[e.v]).is_neg() {
                continue;
            }
            let (ru, rv) = (reached.contains(&e.u), reached.contains(&e.v));
            if ru != rv {
                reached.insert(e.u);
                reached.insert(e.v);
                tree.push(ei);
                grew = true;
            }
        }
    }
    tree
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;
    use crate::minor::{verify_certificate, Certificate, Verdict};

    fn ok(g: &SignedGraph, c: &MinorCertificate) {
        assert_eq!(verify_certificate(g, &Certificate::Minor(c.clone())), Verdict::Valid);
    }

    #[test]
    fn digon_contains_ktilde_two() {
        let g = SimpleGraph::complete(2).tilde();
        let c = has_ktilde_minor(&g, 2).unwrap().unwrap();
        assert_eq!(c.branch_sets, vec![vec![0], vec![1]]);
        ok(&g, &c);
    }

    #[test]
    fn negative_triangle_has_ktilde_two_not_three() {
        let g = SimpleGraph::complete(3).minus();
        let c = has_ktilde_minor(&g, 2).unwrap().unwrap();
        ok(&g, &c);
        assert_eq!(c.branch_sets.iter().map(Vec::len).sum::<usize>(), 3);
        assert!(has_ktilde_minor(&g, 3).unwrap().is_none());
    }

    #[test]
    fn unbalanced_branch_set_is_allowed() {
        // negative triangle a0 a1 a2; a_i joined by a digon to b_i; b's
        // pairwise digons. The K̃4 model needs {a0, a1, a2} as one set.
        let mut g = SimpleGraph::complete(3).minus();
        g = SignedGraph::new(6, g.edges().to_vec()).unwrap();
        for (x, y) in [(0, 3), (1, 4), (2, 5), (3, 4), (3, 5), (4, 5)] {
            g.add_edge(x, y, Sign::Pos).unwrap();
            g.add_edge(x, y, Sign::Neg).unwrap();
        }
        let c = has_ktilde_minor(&g, 4).unwrap().expect("K~4 model");
        ok(&g, &c);
    }

    #[test]
    fn odd_minor_examples() {
        let k3 = SimpleGraph::complete(3).minus();
        let c = has_odd_minor(&k3, 3).unwrap().unwrap();
        assert_eq!(c.flips, vec![Sign::Pos; 3]);
        ok(&k3, &c);

        let c5 = SimpleGraph::cycle(5).minus();
        let c = has_odd_minor(&c5, 3).unwrap().unwrap();
        ok(&c5, &c);

        let edge = SignedGraph::from_triples(2, &[(0, 1, Sign::Pos)]);
        let c = has_odd_minor(&edge, 2).unwrap().unwrap();
        assert_eq!(c.flips, vec![Sign::Pos, Sign::Neg]);
        ok(&edge, &c);
    }

    #[test]
    fn bipartite_negative_graph_has_no_odd_triangle() {
        // (C4, −) switches to all positive between the colour classes
        let c4 = SimpleGraph::cycle(4).minus();
        assert!(has_odd_minor(&c4, 3).unwrap().is_none());
        assert!(has_ktilde_minor(&c4, 2).unwrap().is_none());
    }

    #[test]
    fn order_bound() {
        let g = SimpleGraph::cycle(10).minus();
        assert!(matches!(has_ktilde_minor(&g, 2), Err(Error::TooLarge { .. })));
    }
}
