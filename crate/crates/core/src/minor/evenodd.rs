//! Even-odd-Kₜ minors of unsigned graphs, searched directly over vertex
//! 2-colourings and properly coloured trees.

use super::{EvenOddCertificate, EvenOddTree, MINOR_MAX_ORDER};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// For each 2-colouring (vertex 0 fixed to colour 0), the trees are the vertex
/// sets connected by properly coloured edges; `t` of them must be pairwise
/// joined by at least one monochromatic and one properly coloured edge.
pub fn has_even_odd_minor(g: &SimpleGraph, t: usize) -> Result<Option<EvenOddCertificate>> {
    let n = g.n();
    if n > MINOR_MAX_ORDER {
        return Err(Error::TooLarge { what: "even-odd minor search", n, bound: MINOR_MAX_ORDER });
    }
    if t == 0 {
        return Ok(Some(EvenOddCertificate { coloring: vec![0; n], trees: vec![] }));
    }
    if t > n {
        return Ok(None);
    }
    let adj: Vec<u64> = (0..n).map(|v| g.adj(v)).collect();
    let half = if n == 0 { 1 } else { 1u64 << (n - 1) };
    for colour_bits in 0..half {
        // bit v set ⇔ vertex v has colour 1; vertex 0 is always colour 0
        let ones = colour_bits << 1;
        let proper: Vec<u64> = (0..n)
            .map(|v| if ones >> v & 1 == 1 { adj[v] & !ones } else { adj[v] & ones })
            .collect();
        let mono: Vec<u64> = (0..n).map(|v| adj[v] & !proper[v]).collect();
        let trees: Vec<u64> = (1u64..(1u64 << n)).filter(|&s| connected(&proper, s)).collect();
        let mut picked = Vec::new();
        if pack(&trees, &proper, &mono, t, 0, 0, &mut picked) {
            let coloring = (0..n).map(|v| (ones >> v & 1) as u8).collect();
            let trees = picked.iter().map(|&s| spanning_tree(&proper, s)).collect();
            return Ok(Some(EvenOddCertificate { coloring, trees }));
        }
    }
    Ok(None)
}

fn connected(adj: &[u64], set: u64) -> bool {
    let start = set.trailing_zeros();
    let mut seen = 1u64 << start;
    loop {
        let mut grown = seen;
        let mut rest = seen;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            grown |= adj[v] & set;
        }
        if grown == seen {
            return seen == set;
        }
        seen = grown;
    }
}

fn touches(adj: &[u64], a: u64, b: u64) -> bool {
    let mut rest = a;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if adj[v] & b != 0 {
            return true;
        }
    }
    false
}

fn pack(trees: &[u64], proper: &[u64], mono: &[u64], t: usize, from: usize, used: u64, picked: &mut Vec<u64>) -> bool {
    if picked.len() == t {
        return true;
    }
    for i in from..trees.len() {
        let s = trees[i];
        if s & used != 0 {
            continue;
        }
        if picked.iter().all(|&p| touches(proper, p, s) && touches(mono, p, s)) {
            picked.push(s);
            if pack(trees, proper, mono, t, i + 1, used | s, picked) {
                return true;
            }
            picked.pop();
        }
    }
    false
}

fn spanning_tree(proper: &[u64], set: u64) -> EvenOddTree {
    let vertices: Vec<usize> = (0..64).filter(|&v| set >> v & 1 == 1).collect();
    let mut reached = 1u64 << vertices[0];
    let mut edges = Vec::new();
    while reached != set {
        let (u, w) = vertices
            .iter()
            .filter(|&&u| reached >> u & 1 == 1)
            .find_map(|&u| {
                let out = proper[u] & set & !reached;
                (out != 0).then(|| (u, out.trailing_zeros() as usize))
            })
            .expect("set is connected");
        edges.push((u.min(w), u.max(w)));
        reached |= 1 << w;
    }
    EvenOddTree { vertices, edges }
}
