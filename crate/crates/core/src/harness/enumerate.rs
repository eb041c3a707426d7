//! Exhaustive corpora, one representative per switching-isomorphism class.
//!
//! Order `n` classes come from the order `n − 1` representatives by adding a
//! vertex joined to each old vertex in every possible state. Switching the
//! new vertex flips all its single edges, so its first single edge is taken
//! positive.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph, SimpleGraph};

/// Signed enumeration bound (four states per pair).
pub const SIGNED_MAX_ORDER: usize = 6;
/// With loops every vertex has three more states, so the bound drops.
pub const LOOPED_MAX_ORDER: usize = 5;
/// Unsigned enumeration bound (the canonical form's default order).
pub const UNSIGNED_MAX_ORDER: usize = 7;

/// Canonical forms of all signed graphs of order `n` without parallel
/// same-sign edges, in sorted order. With `loops`, each vertex may also carry
/// a positive or a negative loop.
pub fn enumerate_forms(n: usize, loops: bool) -> Result<Vec<CanonicalForm>> {
    let bound = if loops { LOOPED_MAX_ORDER } else { SIGNED_MAX_ORDER };
    if n > bound {
        return Err(Error::TooLarge { what: "signed enumeration", n, bound });
    }
    let mut level = vec![canonical_form(&SignedGraph::empty(0))?];
    for order in 1..=n {
        level = extend_level(&level, order, loops)?;
    }
    Ok(level)
}

pub fn enumerate_all(n: usize, loops: bool) -> Result<Vec<SignedGraph>> {
    enumerate_forms(n, loops)?.iter().map(CanonicalForm::decode).collect()
}

fn extend_level(level: &[CanonicalForm], order: usize, loops: bool) -> Result<Vec<CanonicalForm>> {
    let old = order - 1;
    let loop_states: &[Option<Sign>] = if loops { &[None, Some(Sign::Pos), Some(Sign::Neg)] } else { &[None] };
    let children: Vec<Vec<CanonicalForm>> = level
        .par_iter()
        .map(|form| -> Result<Vec<CanonicalForm>> {
            let parent = form.decode()?;
            let mut out = Vec::new();
            for code in 0..4u64.pow(old as u32) {
                // state of pair (v, new): 0 none, 1 +, 2 −, 3 digon
                let state = |v: usize| (code >> (2 * v)) & 3;
                let first_single = (0..old).map(state).find(|&s| s == 1 || s == 2);
                if first_single == Some(2) {
                    continue;
                }
                for &l in loop_states {
                    let mut g = SignedGraph::new(order, parent.edges().to_vec())?;
                    for v in 0..old {
                        match state(v) {
                            1 => {
                                g.add_edge(v, old, Sign::Pos)?;
                            }
                            2 => {
                                g.add_edge(v, old, Sign::Neg)?;
                            }
                            3 => {
                                g.add_edge(v, old, Sign::Pos)?;
                                g.add_edge(v, old, Sign::Neg)?;
                            }
                            _ => {}
                        }
                    }
                    if let Some(s) = l {
                        g.add_edge(old, old, s)?;
                    }
                    out.push(canonical_form(&g)?);
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let set: BTreeSet<CanonicalForm> = children.into_iter().flatten().collect();
    Ok(set.into_iter().collect())
}

/// All loopless simple graphs of order `n` up to isomorphism, sorted by the
/// canonical form of their all-positive signing.
pub fn enumerate_unsigned(n: usize) -> Result<Vec<SimpleGraph>> {
    if n > UNSIGNED_MAX_ORDER {
        return Err(Error::TooLarge { what: "unsigned enumeration", n, bound: UNSIGNED_MAX_ORDER });
    }
    let mut level: Vec<CanonicalForm> = vec![canonical_form(&SignedGraph::empty(0))?];
    for order in 1..=n {
        let old = order - 1;
        let children: Vec<Vec<CanonicalForm>> = level
            .par_iter()
            .map(|form| -> Result<Vec<CanonicalForm>> {
                // the decoded representative may be switched; rebuild it
                // all-positive before adding positive edges
                let parent = form.decode()?.underlying().with_sign(Sign::Pos);
                (0..1u64 << old)
                    .map(|code| {
                        let mut g = SignedGraph::new(order, parent.edges().to_vec())?;
                        for v in (0..old).filter(|&v| code >> v & 1 == 1) {
                            g.add_edge(v, old, Sign::Pos)?;
                        }
                        canonical_form(&g)
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        let set: BTreeSet<CanonicalForm> = children.into_iter().flatten().collect();
        level = set.into_iter().collect();
    }
    level.iter().map(|f| Ok(f.decode()?.underlying())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_signed_counts() {
        assert_eq!(enumerate_forms(0, false).unwrap().len(), 1);
        assert_eq!(enumerate_forms(1, false).unwrap().len(), 1);
        // none, single edge, digon
        assert_eq!(enumerate_forms(2, false).unwrap().len(), 3);
        // no loop, + loop, − loop on one vertex
        assert_eq!(enumerate_forms(1, true).unwrap().len(), 3);
    }

    #[test]
    fn two_vertex_classes_by_brute_force() {
        // all 4 pair states, deduplicated without the augmentation shortcut
        let mut forms = BTreeSet::new();
        for s in 0..4 {
            let mut g = SignedGraph::empty(2);
            if s & 1 == 1 {
                g.add_edge(0, 1, Sign::Pos).unwrap();
            }
            if s & 2 == 2 {
                g.add_edge(0, 1, Sign::Neg).unwrap();
            }
            forms.insert(canonical_form(&g).unwrap());
        }
        assert_eq!(forms.into_iter().collect::<Vec<_>>(), enumerate_forms(2, false).unwrap());
    }

    /// Burnside over relabellings × switchings: a cycle of vertex pairs is
    /// fixed in 4 states when its switching product is +, else in 2 (absent
    /// or digon).
    fn burnside_signed_classes(n: usize) -> u64 {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for at in 0..n {
                    let mut q = p.clone();
                    q.insert(at, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let (mut total, mut order) = (0u64, 0u64);
        for p in perms(n) {
            for s in 0u32..1 << n {
                order += 1;
                let flip = |v: usize| s >> v & 1 == 1;
                let mut seen = std::collections::HashSet::new();
                let mut fixed = 1u64;
                for &start in &pairs {
                    if seen.contains(&start) {
                        continue;
                    }
                    let (mut odd, mut q) = (false, start);
                    loop {
                        seen.insert(q);
                        odd ^= flip(q.0) ^ flip(q.1);
                        let (a, b) = (p[q.0], p[q.1]);
                        q = (a.min(b), a.max(b));
                        if q == start {
                            break;
                        }
                    }
                    fixed *= if odd { 2 } else { 4 };
                }
                total += fixed;
            }
        }
        total / order
    }

    #[test]
    fn signed_counts_match_burnside() {
        for n in 1..=5 {
            assert_eq!(enumerate_forms(n, false).unwrap().len() as u64, burnside_signed_classes(n), "n = {n}");
        }
        // frozen regression value
        assert_eq!(enumerate_forms(3, false).unwrap().len(), 11);
    }

    #[test]
    fn unsigned_counts_match_known_values() {
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_unsigned(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34]);
    }

    #[test]
    fn bounds() {
        assert!(enumerate_forms(7, false).is_err());
        assert!(enumerate_forms(6, true).is_err());
        assert!(enumerate_unsigned(8).is_err());
    }
}
