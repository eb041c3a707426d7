//! Negative H-paths: either `k` disjoint ones or a small hitting set.
//!
//! `H` is given as a vertex set; its edges are the positive edges of `G`
//! induced on it, and they must connect it. An H-path has two distinct ends
//! in `H` and no interior vertex in `H`, so a negative edge with both ends in
//! `H` is an H-path of length one.

use super::{DichotomyResult, PathWitness, DICHOTOMY_MAX_K, DICHOTOMY_MAX_ORDER};
use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};
use crate::vset::{MaskGraph, VertexSet};

pub fn negative_path_dichotomy(g: &SignedGraph, h: &[usize], k: usize) -> Result<DichotomyResult> {
    let n = g.n();
    if n > DICHOTOMY_MAX_ORDER {
        return Err(Error::TooLarge { what: "dichotomy", n, bound: DICHOTOMY_MAX_ORDER });
    }
    if k == 0 || k > DICHOTOMY_MAX_K {
        return Err(Error::InvalidParams(format!("k must be in 1..={DICHOTOMY_MAX_K}, got {k}")));
    }
    let hset = check_h(g, h)?;
    let paths = negative_h_paths(g, hset);

    // one representative per vertex set is enough for both searches
    let mut by_mask: Vec<(u64, usize)> = paths.iter().enumerate().map(|(i, p)| (mask(p), i)).collect();
    by_mask.sort_unstable();
    by_mask.dedup_by_key(|(m, _)| *m);

    let mut picked = Vec::with_capacity(k);
    if disjoint(&by_mask, k, 0, 0, &mut picked) {
        return Ok(DichotomyResult::Paths(picked.into_iter().map(|i| paths[i].clone()).collect()));
    }
    let masks: Vec<u64> = by_mask.iter().map(|&(m, _)| m).collect();
    match hitting_set(&masks, n, 2 * k - 2) {
        Some(x) => Ok(DichotomyResult::HittingSet(VertexSet(x).to_vec())),
        None => Err(Error::CriticalDefect(format!(
            "neither {k} disjoint negative H-paths nor a hitting set of size {} (H = {h:?})",
            2 * k - 2
        ))),
    }
}

/// Checks the precondition and returns `H` as a mask.
fn check_h(g: &SignedGraph, h: &[usize]) -> Result<u64> {
    let n = g.n();
    if h.is_empty() {
        return Err(Error::Precondition("H is empty".into()));
    }
    if let Some(&v) = h.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    let hset = VertexSet::from_slice(h);
    let mg = MaskGraph::new(g)?;
    let mut seen = 1u64 << hset.min().expect("nonempty");
    loop {
        let grown = VertexSet(seen).iter().fold(seen, |m, v| m | (mg.pos[v] & hset.0));
        if grown == seen {
            break;
        }
        seen = grown;
    }
    if seen != hset.0 {
        return Err(Error::Precondition("positive edges inside H do not connect H".into()));
    }
    Ok(hset.0)
}

fn mask(p: &PathWitness) -> u64 {
    p.vertices.iter().fold(0, |m, &v| m | 1 << v)
}

/// All negative H-paths, ordered by start, then discovery.
fn negative_h_paths(g: &SignedGraph, hset: u64) -> Vec<PathWitness> {
    let mut inc = g.incidence();
    for list in &mut inc {
        list.retain(|&(e, _)| !g.edge(e).is_loop());
        list.sort_unstable();
    }
    let mut out = Vec::new();
    for a in VertexSet(hset).iter() {
        let mut verts = vec![a];
        let mut edges = Vec::new();
        extend(g, &inc, hset, a, 1 << a, &mut verts, &mut edges, Sign::Pos, &mut out);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &SignedGraph,
    inc: &[Vec<(usize, usize)>],
    hset: u64,
    start: usize,
    seen: u64,
    verts: &mut Vec<usize>,
    edges: &mut Vec<usize>,
    sign: Sign,
    out: &mut Vec<PathWitness>,
) {
    let x = *verts.last().expect("nonempty");
    for &(e, y) in &inc[x] {
        if seen >> y & 1 == 1 {
            continue;
        }
        let s = sign * g.edge(e).sign;
        verts.push(y);
        edges.push(e);
        if hset >> y & 1 == 1 {
            // each path is reported once, from its lower end
            if y > start && s.is_neg() {
                out.push(PathWitness { vertices: verts.clone(), edges: edges.clone(), sign: s });
            }
        } else {
            extend(g, inc, hset, start, seen | 1 << y, verts, edges, s, out);
        }
        verts.pop();
        edges.pop();
    }
}

fn disjoint(by_mask: &[(u64, usize)], k: usize, from: usize, used: u64, picked: &mut Vec<usize>) -> bool {
    if picked.len() == k {
        return true;
    }
    for at in from..by_mask.len() {
        let (m, i) = by_mask[at];
        if m & used != 0 {
            continue;
        }
        picked.push(i);
        if disjoint(by_mask, k, at + 1, used | m, picked) {
            return true;
        }
        picked.pop();
    }
    false
}

/// Smallest, then lexicographically first, vertex set of size at most
/// `bound` meeting every mask.
fn hitting_set(masks: &[u64], n: usize, bound: usize) -> Option<u64> {
    for size in 0..=bound.min(n) {
        if let Some(x) = subsets_of_size(n, size).find(|&x| masks.iter().all(|&m| m & x != 0)) {
            return Some(x);
        }
    }
    None
}

fn subsets_of_size(n: usize, size: usize) -> impl Iterator<Item = u64> {
    let mut idx: Vec<usize> = (0..size).collect();
    let mut done = size > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let x = idx.iter().fold(0u64, |m, &v| m | 1 << v);
        // advance to the next combination in lexicographic order
        let mut i = size;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < n - size + i {
                idx[i] += 1;
                for j in i + 1..size {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(x)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;
    use Sign::{Neg, Pos};

    #[test]
    fn digon_gives_a_single_edge_path() {
        let g = SimpleGraph::complete(2).tilde();
        match negative_path_dichotomy(&g, &[0, 1], 1).unwrap() {
            DichotomyResult::Paths(p) => {
                assert_eq!(p.len(), 1);
                assert_eq!(p[0].vertices, vec![0, 1]);
                assert_eq!(p[0].sign, Neg);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn balanced_graph_gets_empty_hitting_set() {
        let g = SimpleGraph::complete(5).with_sign(Pos);
        for k in 1..=3 {
            assert_eq!(negative_path_dichotomy(&g, &[0, 1], k).unwrap(), DichotomyResult::HittingSet(vec![]));
        }
    }

    #[test]
    fn switched_negative_triangle() {
        // u=0, v=1, w=2; uv +, uw +, wv − is a switching of (C3, −)
        let g = SignedGraph::from_triples(3, &[(0, 1, Pos), (0, 2, Pos), (2, 1, Neg)]);
        match negative_path_dichotomy(&g, &[0, 1], 1).unwrap() {
            DichotomyResult::Paths(p) => assert_eq!(p[0].vertices, vec![0, 2, 1]),
            other => panic!("{other:?}"),
        }
        // two disjoint ones cannot exist; any single vertex of it is a hitting set
        assert_eq!(negative_path_dichotomy(&g, &[0, 1], 2).unwrap(), DichotomyResult::HittingSet(vec![0]));
    }

    #[test]
    fn literal_plus_minus_minus_triangle_is_balanced() {
        // (+, −, −) has product + and so no negative H-path at all
        let g = SignedGraph::from_triples(3, &[(0, 1, Pos), (0, 2, Neg), (2, 1, Neg)]);
        assert_eq!(negative_path_dichotomy(&g, &[0, 1], 1).unwrap(), DichotomyResult::HittingSet(vec![]));
    }

    #[test]
    fn preconditions() {
        let g = SimpleGraph::complete(3).minus();
        assert!(matches!(negative_path_dichotomy(&g, &[0, 1], 1), Err(Error::Precondition(_))));
        let g = SimpleGraph::path(3).with_sign(Pos);
        assert!(negative_path_dichotomy(&g, &[0, 5], 1).is_err());
        assert!(negative_path_dichotomy(&g, &[0], 0).is_err());
        assert!(negative_path_dichotomy(&g, &[0], 4).is_err());
    }

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<u64> = subsets_of_size(4, 2).collect();
        assert_eq!(all, vec![0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
        assert_eq!(subsets_of_size(3, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(subsets_of_size(2, 3).count(), 0);
    }
}
