//! Classical chromatic number of an unsigned graph. Independent of the
//! balanced-colouring code: used as an oracle for `χ(G) = χ_b(G̃)`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

pub const CHI_MAX_ORDER: usize = 10;

/// Exact χ(G): peel off one maximal independent set containing the lowest
/// remaining vertex, memoised over remaining-vertex masks.
pub fn chi(g: &SimpleGraph) -> Result<usize> {
    let n = g.n();
    if n > CHI_MAX_ORDER {
        return Err(Error::TooLarge { what: "chromatic number", n, bound: CHI_MAX_ORDER });
    }
    let adj: Vec<u64> = (0..n).map(|v| g.adj(v)).collect();
    let mut memo = HashMap::new();
    Ok(colour_count(&adj, (1u64 << n) - 1, &mut memo))
}

fn colour_count(adj: &[u64], remaining: u64, memo: &mut HashMap<u64, usize>) -> usize {
    if remaining == 0 {
        return 0;
    }
    if let Some(&c) = memo.get(&remaining) {
        return c;
    }
    let v0 = remaining.trailing_zeros() as usize;
    let mut classes = Vec::new();
    independent_extensions(adj, 1 << v0, remaining & !(1 << v0) & !adj[v0], 0, remaining, &mut classes);
    let best = classes
        .into_iter()
        .map(|class| 1 + colour_count(adj, remaining & !class, memo))
        .min()
        .expect("v0 alone is independent");
    memo.insert(remaining, best);
    best
}

/// Bron–Kerbosch on the complement inside `within`: maximal independent sets
/// of `G[within]` that contain `chosen`.
fn independent_extensions(adj: &[u64], chosen: u64, mut cand: u64, mut excluded: u64, within: u64, out: &mut Vec<u64>) {
    if cand == 0 && excluded == 0 {
        out.push(chosen);
        return;
    }
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        let bit = 1u64 << v;
        let keep = !adj[v] & !bit & within;
        independent_extensions(adj, chosen | bit, cand & keep, excluded & keep, within, out);
        cand &= !bit;
        excluded |= bit;
    }
}

/// Maximal independent sets of `g`, as masks, in discovery order.
pub fn maximal_independent_sets(g: &SimpleGraph) -> Vec<u64> {
    let n = g.n();
    let adj: Vec<u64> = (0..n).map(|v| g.adj(v)).collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut out = Vec::new();
    if n > 0 {
        independent_extensions(&adj, 0, all, 0, all, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(chi(&SimpleGraph::complete(4)).unwrap(), 4);
        assert_eq!(chi(&SimpleGraph::cycle(5)).unwrap(), 3);
        assert_eq!(chi(&SimpleGraph::cycle(6)).unwrap(), 2);
        assert_eq!(chi(&SimpleGraph::empty(3)).unwrap(), 1);
        assert_eq!(chi(&SimpleGraph::empty(0)).unwrap(), 0);
        assert!(chi(&SimpleGraph::empty(11)).is_err());
    }

    #[test]
    fn petersen_is_three_chromatic() {
        let p = SimpleGraph::petersen();
        // brute-force 3-colouring search as an oracle
        let mut col = vec![0usize; 10];
        fn extend(p: &SimpleGraph, col: &mut [usize], v: usize, k: usize) -> bool {
            if v == col.len() {
                return true;
            }
            for c in 0..k {
                if (0..v).all(|u| !p.has_edge(u, v) || col[u] != c) {
                    col[v] = c;
                    if extend(p, col, v + 1, k) {
                        return true;
                    }
                }
            }
            false
        }
        assert!(extend(&p, &mut col, 0, 3));
        assert!(!extend(&p, &mut col, 0, 2));
        assert_eq!(chi(&p).unwrap(), 3);
    }

    #[test]
    fn c5_independent_sets() {
        let sets = maximal_independent_sets(&SimpleGraph::cycle(5));
        assert_eq!(sets.len(), 5);
        assert!(sets.iter().all(|s| s.count_ones() == 2));
    }
}
