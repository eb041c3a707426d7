//! Balanced quotients: repeatedly switch a maximal connected balanced set to
//! all-positive and identify it to one vertex, until every adjacent pair is
//! joined by a digon. The result is both a minor and a homomorphic image of
//! the input.
//!
//! Renumbering after a collapse of `S`: the vertices outside `S` together
//! with `min(S)` survive, keep their relative order and are numbered
//! `0, 1, ...`; every vertex of `S` maps to the survivor `min(S)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Sign, SignedGraph, SwitchingVector};
use crate::minor::Verdict;
use crate::vset::{MaskGraph, VertexSet};

/// Order bound: the set search enumerates all vertex subsets.
pub const QUOTIENT_MAX_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    /// Sorted vertices of the then-current graph.
    pub set: Vec<usize>,
    /// Switching of the then-current graph; only vertices of `set` may be −.
    pub switching: SwitchingVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientResult {
    pub quotient: SignedGraph,
    pub fiber_map: Vec<usize>,
    pub contraction_trace: Vec<TraceStep>,
    pub loop_flags: Vec<bool>,
}

pub fn balanced_quotient(g: &SignedGraph) -> Result<QuotientResult> {
    balanced_quotient_with(g, |_| 0)
}

/// Like [`balanced_quotient`], but `choose` picks the set to collapse from
/// the lexicographically sorted list of maximal connected balanced sets of
/// size at least two.
pub fn balanced_quotient_with(g: &SignedGraph, mut choose: impl FnMut(&[Vec<usize>]) -> usize) -> Result<QuotientResult> {
    if let Some(v) = g.negative_loop_vertex() {
        return Err(Error::NegativeLoop { vertex: v });
    }
    if g.n() > QUOTIENT_MAX_ORDER {
        return Err(Error::TooLarge { what: "balanced quotient", n: g.n(), bound: QUOTIENT_MAX_ORDER });
    }
    let mut loops: Vec<bool> = (0..g.n()).map(|v| g.edges().iter().any(|e| e.is_loop() && e.u == v)).collect();
    let mut cur = loopless(&g.simplify());
    let mut fiber: Vec<usize> = (0..g.n()).collect();
    let mut trace = Vec::new();
    loop {
        let mg = MaskGraph::new(&cur)?;
        let sets = maximal_sets(&mg);
        if sets.is_empty() {
            break;
        }
        let pick = choose(&sets).min(sets.len() - 1);
        let set = VertexSet::from_slice(&sets[pick]);
        let minus = mg.balance_labels(set).expect("set is balanced");
        let switching = SwitchingVector((0..cur.n()).map(|v| if minus >> v & 1 == 1 { Sign::Neg } else { Sign::Pos }).collect());
        let (next, map, internal) = collapse(&cur, set, &switching);
        let keep = set.min().expect("nonempty");
        let mut next_loops = vec![false; next.n()];
        for v in 0..cur.n() {
            next_loops[map[v]] |= loops[v];
        }
        next_loops[map[keep]] |= internal;
        for f in &mut fiber {
            *f = map[*f];
        }
        trace.push(TraceStep { set: set.to_vec(), switching });
        cur = next;
        loops = next_loops;
    }
    let mut quotient = cur;
    for (v, &l) in loops.iter().enumerate() {
        if l {
            quotient.add_edge(v, v, Sign::Pos)?;
        }
    }
    Ok(QuotientResult { quotient, fiber_map: fiber, contraction_trace: trace, loop_flags: loops })
}

/// Order bound for [`all_quotients`]; the number of choice sequences grows
/// quickly.
pub const ALL_QUOTIENTS_MAX_ORDER: usize = 7;

/// The quotients reached by every sequence of choices, in depth-first order
/// of the choice sequences (the first one is [`balanced_quotient`]).
pub fn all_quotients(g: &SignedGraph) -> Result<Vec<QuotientResult>> {
    if g.n() > ALL_QUOTIENTS_MAX_ORDER {
        return Err(Error::TooLarge { what: "quotient choice search", n: g.n(), bound: ALL_QUOTIENTS_MAX_ORDER });
    }
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(prefix) = stack.pop() {
        let mut widths = Vec::new();
        let q = balanced_quotient_with(g, |sets| {
            let pick = prefix.get(widths.len()).copied().unwrap_or(0);
            widths.push(sets.len());
            pick
        })?;
        out.push(q);
        for step in (prefix.len()..widths.len()).rev() {
            for alt in (1..widths[step]).rev() {
                let mut p = prefix.clone();
                p.resize(step, 0);
                p.push(alt);
                stack.push(p);
            }
        }
    }
    Ok(out)
}

fn loopless(g: &SignedGraph) -> SignedGraph {
    let edges = g.edges().iter().filter(|e| !e.is_loop()).copied().collect();
    SignedGraph::new(g.n(), edges).expect("same vertex range")
}

/// Maximal connected balanced sets of size ≥ 2, sorted lexicographically.
fn maximal_sets(mg: &MaskGraph) -> Vec<Vec<usize>> {
    let n = mg.n;
    let good = |s: VertexSet| mg.is_connected(s) && mg.is_balanced(s);
    let mut out: Vec<Vec<usize>> = (1u64..(1u64 << n))
        .map(VertexSet)
        .filter(|&s| s.len() >= 2 && good(s))
        .filter(|&s| {
            // a connected balanced superset can always be reached one
            // adjacent vertex at a time
            let border = s.iter().fold(0u64, |m, v| m | mg.adj(v)) & !s.0;
            VertexSet(border).iter().all(|v| !good(s.insert(v)))
        })
        .map(VertexSet::to_vec)
        .collect();
    out.sort();
    out
}

/// Switches, identifies `set` and drops its internal edges. Returns the new
/// simplified loopless graph, the vertex map and whether an internal edge
/// was removed.
fn collapse(g: &SignedGraph, set: VertexSet, switching: &SwitchingVector) -> (SignedGraph, Vec<usize>, bool) {
    let keep = set.min().expect("nonempty");
    let mut map = vec![0; g.n()];
    let mut next = 0;
    for v in 0..g.n() {
        if !set.contains(v) || v == keep {
            map[v] = next;
            next += 1;
        }
    }
    for v in set.iter() {
        map[v] = map[keep];
    }
    let mut internal = false;
    let mut edges = Vec::new();
    for e in g.edges() {
        let sign = e.sign * switching.get(e.u) * switching.get(e.v);
        if set.contains(e.u) && set.contains(e.v) {
            debug_assert!(sign.is_pos(), "balanced set switches all-positive");
            internal = true;
        } else {
            edges.push(Edge::new(map[e.u], map[e.v], sign));
        }
    }
    let h = SignedGraph::new(next, edges).expect("mapped into range").simplify();
    (h, map, internal)
}

/// Replays the trace and checks every claim about the result.
pub fn verify_quotient(g: &SignedGraph, q: &QuotientResult) -> Verdict {
    match check(g, q) {
        Ok(()) => Verdict::Valid,
        Err((rule, detail)) => Verdict::Violation { rule: rule.into(), detail },
    }
}

type Check = std::result::Result<(), (&'static str, String)>;

fn fail(rule: &'static str, detail: String) -> Check {
    Err((rule, detail))
}

fn check(g: &SignedGraph, q: &QuotientResult) -> Check {
    let n = g.n();
    if q.fiber_map.len() != n {
        return fail("shape", format!("fiber map has {} entries for {n} vertices", q.fiber_map.len()));
    }
    if g.has_negative_loop() {
        return fail("shape", "input has a negative loop".into());
    }
    // replay on plain adjacency lists: (u, v, sign) triples, loops dropped
    let mut edges: Vec<(usize, usize, Sign)> =
        g.edges().iter().filter(|e| !e.is_loop()).map(|e| (e.u, e.v, e.sign)).collect();
    let mut order = n;
    let mut fiber: Vec<usize> = (0..n).collect();
    let mut switched = vec![Sign::Pos; n];
    let mut loops: Vec<bool> = (0..n).map(|v| g.edges().iter().any(|e| e.is_loop() && e.u == v)).collect();
    for (step, ts) in q.contraction_trace.iter().enumerate() {
        let s = &ts.set;
        if s.len() < 2 || s.windows(2).any(|w| w[0] >= w[1]) || s.iter().any(|&v| v >= order) {
            return fail("trace", format!("step {step}: malformed set {s:?}"));
        }
        if ts.switching.len() != order || (0..order).any(|v| ts.switching.get(v).is_neg() && !s.contains(&v)) {
            return fail("trace", format!("step {step}: switching touches vertices outside the set"));
        }
        let inside = |v: usize| s.binary_search(&v).is_ok();
        // balanced: every internal edge is positive after the switching
        let mut internal = false;
        for &(u, v, sign) in &edges {
            if inside(u) && inside(v) {
                internal = true;
                if (sign * ts.switching.get(u) * ts.switching.get(v)).is_neg() {
                    return fail("trace", format!("step {step}: set {s:?} is not balanced under its switching"));
                }
            }
        }
        // connected: flood through internal edges
        let mut reached = vec![s[0]];
        let mut grew = true;
        while grew {
            grew = false;
            for &(u, v, _) in &edges {
                for (a, b) in [(u, v), (v, u)] {
                    if inside(a) && inside(b) && reached.contains(&a) && !reached.contains(&b) {
                        reached.push(b);
                        grew = true;
                    }
                }
            }
        }
        if reached.len() != s.len() {
            return fail("trace", format!("step {step}: set {s:?} is not connected"));
        }
        for v in 0..n {
            switched[v] = switched[v] * ts.switching.get(fiber[v]);
        }
        let survivors: Vec<usize> = (0..order).filter(|&v| !inside(v) || v == s[0]).collect();
        let rank = |v: usize| {
            let rep = if inside(v) { s[0] } else { v };
            survivors.binary_search(&rep).expect("survivor")
        };
        let mut next_loops = vec![false; survivors.len()];
        for v in 0..order {
            next_loops[rank(v)] |= loops[v];
        }
        next_loops[rank(s[0])] |= internal;
        edges = edges
            .into_iter()
            .filter(|&(u, v, _)| !(inside(u) && inside(v)))
            .map(|(u, v, sign)| (rank(u), rank(v), sign * ts.switching.get(u) * ts.switching.get(v)))
            .collect();
        for f in &mut fiber {
            *f = rank(*f);
        }
        loops = next_loops;
        order = survivors.len();
    }
    if fiber != q.fiber_map {
        return fail("fiber", "fiber map differs from the replayed trace".into());
    }
    if q.loop_flags != loops || q.quotient.n() != order {
        return fail("shape", "quotient order or loop flags differ from the replay".into());
    }
    // same edge set up to parallel copies, loops as flagged
    let key = |u: usize, v: usize, s: Sign| (u.min(v), u.max(v), s);
    let mut want: Vec<_> = edges.iter().map(|&(u, v, s)| key(u, v, s)).collect();
    want.extend((0..order).filter(|&v| loops[v]).map(|v| (v, v, Sign::Pos)));
    want.sort_unstable();
    want.dedup();
    let mut have: Vec<_> = q.quotient.edges().iter().map(|e| key(e.u, e.v, e.sign)).collect();
    have.sort_unstable();
    have.dedup();
    if want != have {
        return fail("shape", "quotient edges differ from the replay".into());
    }
    if let Some(v) = q.quotient.negative_loop_vertex() {
        return fail("negative loop", format!("vertex {v}"));
    }
    for &(u, v, _) in &have {
        if u != v && !(have.contains(&(u, v, Sign::Pos)) && have.contains(&(u, v, Sign::Neg))) {
            return fail("digon", format!("{u} and {v} are adjacent without a digon"));
        }
    }
    check_homomorphism(g, q, &switched)
}

/// Every edge of `g` has an image of the right sign, and every cycle of
/// length at most six keeps its sign.
fn check_homomorphism(g: &SignedGraph, q: &QuotientResult, switched: &[Sign]) -> Check {
    let image = |e: &Edge| -> Option<Sign> {
        let (a, b) = (q.fiber_map[e.u], q.fiber_map[e.v]);
        let sign = e.sign * switched[e.u] * switched[e.v];
        q.quotient
            .edges()
            .iter()
            .any(|f| ((f.u == a && f.v == b) || (f.u == b && f.v == a)) && f.sign == sign)
            .then_some(sign)
    };
    let mut image_sign = Vec::with_capacity(g.m());
    for (i, e) in g.edges().iter().enumerate() {
        match image(e) {
            Some(s) => image_sign.push(s),
            None => return fail("homomorphism", format!("edge {i} has no image")),
        }
    }
    let mut bad = None;
    for start in 0..g.n() {
        cycles_from(g, start, &mut vec![start], &mut Vec::new(), &mut |cycle: &[usize]| {
            let orig = cycle.iter().fold(Sign::Pos, |s, &e| s * g.edge(e).sign);
            let img = cycle.iter().fold(Sign::Pos, |s, &e| s * image_sign[e]);
            if orig != img && bad.is_none() {
                bad = Some(cycle.to_vec());
            }
        });
    }
    match bad {
        Some(c) => fail("homomorphism", format!("cycle on edges {c:?} changes sign")),
        None => Ok(()),
    }
}

const CYCLE_SPOT_CHECK: usize = 6;

/// Calls `f` on every cycle through `start` whose other vertices exceed it,
/// as an edge list, including loops and parallel pairs.
fn cycles_from(g: &SignedGraph, start: usize, verts: &mut Vec<usize>, edges: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    let x = *verts.last().expect("nonempty");
    for (i, e) in g.edges().iter().enumerate() {
        let Some(y) = e.other(x) else { continue };
        if edges.contains(&i) {
            continue;
        }
        if y == start {
            edges.push(i);
            f(edges);
            edges.pop();
        } else if y > start && !verts.contains(&y) && verts.len() < CYCLE_SPOT_CHECK {
            verts.push(y);
            edges.push(i);
            cycles_from(g, start, verts, edges, f);
            verts.pop();
            edges.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;
    use crate::graph::SimpleGraph;

    /// A four-cycle with three digons and one negative edge: {0,2} and {1,3}
    /// colour it, but {0,1} is the only collapsible set, and collapsing it
    /// leaves K~3 with a positive loop.
    #[test]
    fn quotient_can_raise_chi_b_under_every_choice() {
        let g = SignedGraph::parse("4 7\n0 1 -\n1 2 +\n1 2 -\n0 3 +\n0 3 -\n2 3 +\n2 3 -\n").unwrap();
        assert_eq!(crate::chi_b(&g).unwrap().value(), Some(2));
        let all = all_quotients(&g).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].contraction_trace[0].set, vec![0, 1]);
        assert_eq!(crate::chi_b(&all[0].quotient).unwrap().value(), Some(3));
        assert!(verify_quotient(&g, &all[0]).is_valid());
    }

    #[test]
    fn all_quotients_starts_with_the_default() {
        let g = SimpleGraph::cycle(5).minus();
        let all = all_quotients(&g).unwrap();
        assert_eq!(all[0], balanced_quotient(&g).unwrap());
        assert!(all.len() > 1);
        assert!(all.iter().all(|q| verify_quotient(&g, q).is_valid()));
    }
    use Sign::{Neg, Pos};

    #[test]
    fn ktilde_input_is_already_a_quotient() {
        let g = SimpleGraph::complete(4).tilde();
        let q = balanced_quotient(&g).unwrap();
        assert!(q.contraction_trace.is_empty());
        assert_eq!(q.fiber_map, vec![0, 1, 2, 3]);
        assert_eq!(q.quotient, g.simplify());
        assert_eq!(verify_quotient(&g, &q), Verdict::Valid);
    }

    #[test]
    fn connected_balanced_graph_collapses_to_a_looped_vertex() {
        let g = SimpleGraph::cycle(5).with_sign(Pos).switch_at(&[1, 3]).unwrap();
        let q = balanced_quotient(&g).unwrap();
        assert_eq!(q.quotient.n(), 1);
        assert_eq!(q.quotient.edges(), &[Edge::new(0, 0, Pos)]);
        assert_eq!(q.loop_flags, vec![true]);
        assert_eq!(verify_quotient(&g, &q), Verdict::Valid);
    }

    #[test]
    fn negative_triangle_becomes_a_looped_digon() {
        let g = SimpleGraph::complete(3).minus();
        let q = balanced_quotient(&g).unwrap();
        assert_eq!(q.contraction_trace.len(), 1);
        assert_eq!(q.contraction_trace[0].set, vec![0, 1]);
        assert_eq!(q.fiber_map, vec![0, 0, 1]);
        assert_eq!(q.loop_flags, vec![true, false]);
        let loopless = SignedGraph::new(2, q.quotient.edges().iter().filter(|e| !e.is_loop()).copied().collect()).unwrap();
        assert_eq!(canonical_form(&loopless).unwrap(), canonical_form(&SimpleGraph::complete(2).tilde()).unwrap());
        assert_eq!(verify_quotient(&g, &q), Verdict::Valid);
    }

    #[test]
    fn negative_loop_is_rejected() {
        let g = SignedGraph::from_triples(1, &[(0, 0, Neg)]);
        assert!(matches!(balanced_quotient(&g), Err(Error::NegativeLoop { vertex: 0 })));
    }

    #[test]
    fn tampered_results_are_caught() {
        let g = SimpleGraph::complete(3).minus();
        let q = balanced_quotient(&g).unwrap();

        let mut bad = q.clone();
        bad.contraction_trace[0].set = vec![0, 1, 2];
        bad.contraction_trace[0].switching = SwitchingVector::identity(3);
        assert!(matches!(verify_quotient(&g, &bad), Verdict::Violation { rule, .. } if rule == "trace"));

        let mut bad = q.clone();
        let edges: Vec<Edge> = q.quotient.edges().iter().filter(|e| e.sign.is_pos()).copied().collect();
        bad.quotient = SignedGraph::new(2, edges).unwrap();
        assert!(!verify_quotient(&g, &bad).is_valid());
    }

    #[test]
    fn chooser_changes_the_trace_not_validity() {
        let g = SimpleGraph::cycle(5).minus();
        let a = balanced_quotient(&g).unwrap();
        let b = balanced_quotient_with(&g, |sets| sets.len() - 1).unwrap();
        assert_eq!(verify_quotient(&g, &a), Verdict::Valid);
        assert_eq!(verify_quotient(&g, &b), Verdict::Valid);
    }
}
