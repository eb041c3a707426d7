//! K̃ₜ-subdivisions: branch vertices joined pairwise by two internally
//! disjoint paths of opposite signs, all paths internally disjoint.

use super::{
    CrossEdge, CrossPair, MinorCertificate, OddSubdivision, PairPaths, PathWitness, Pattern, SubdivisionCertificate,
    MINOR_MAX_ORDER, SUBDIVISION_MAX_T,
};
use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};

pub fn has_ktilde_subdivision(g: &SignedGraph, t: usize) -> Result<Option<SubdivisionCertificate>> {
    let n = g.n();
    if n > MINOR_MAX_ORDER {
        return Err(Error::TooLarge { what: "subdivision search", n, bound: MINOR_MAX_ORDER });
    }
    if t > SUBDIVISION_MAX_T {
        return Err(Error::TooLarge { what: "subdivision search (t)", n: t, bound: SUBDIVISION_MAX_T });
    }
    if t > n {
        return Ok(None);
    }
    let mut inc = g.incidence();
    for list in &mut inc {
        list.retain(|&(e, w)| !g.edge(e).is_loop() && w < n);
        list.sort_unstable();
    }
    let pairs: Vec<(usize, usize)> = (0..t).flat_map(|i| (i + 1..t).map(move |j| (i, j))).collect();
    let mut branch = Vec::with_capacity(t);
    let mut found = None;
    choose_branch(g, &inc, t, 0, &mut branch, &pairs, &mut found);
    Ok(found)
}

fn choose_branch(
    g: &SignedGraph,
    inc: &[Vec<(usize, usize)>],
    t: usize,
    from: usize,
    branch: &mut Vec<usize>,
    pairs: &[(usize, usize)],
    found: &mut Option<SubdivisionCertificate>,
) {
    if branch.len() == t {
        let used: u64 = branch.iter().fold(0, |m, &v| m | 1 << v);
        let mut routed = Vec::with_capacity(pairs.len());
        if route(g, inc, branch, pairs, 0, used, &mut routed) {
            *found = Some(SubdivisionCertificate { branch_vertices: branch.clone(), paths: routed });
        }
        return;
    }
    for v in from..g.n() {
        // a branch vertex needs 2(t−1) incident edges
        if inc[v].len() < 2 * (t - 1) {
            continue;
        }
        branch.push(v);
        choose_branch(g, inc, t, v + 1, branch, pairs, found);
        branch.pop();
        if found.is_some() {
            return;
        }
    }
}

fn route(
    g: &SignedGraph,
    inc: &[Vec<(usize, usize)>],
    branch: &[usize],
    pairs: &[(usize, usize)],
    at: usize,
    used: u64,
    routed: &mut Vec<PairPaths>,
) -> bool {
    let Some(&(i, j)) = pairs.get(at) else { return true };
    let (a, b) = (branch[i], branch[j]);
    let paths = simple_paths(g, inc, a, b, used);
    for p in paths.iter().filter(|p| p.sign.is_pos()) {
        let inner_p = interior(p);
        for q in paths.iter().filter(|q| q.sign.is_neg()) {
            if interior(q) & inner_p != 0 {
                continue;
            }
            routed.push(PairPaths { i, j, positive: p.clone(), negative: q.clone() });
            if route(g, inc, branch, pairs, at + 1, used | inner_p | interior(q), routed) {
                return true;
            }
            routed.pop();
        }
    }
    false
}

fn interior(p: &PathWitness) -> u64 {
    let k = p.vertices.len();
    p.vertices[1..k - 1].iter().fold(0, |m, &v| m | 1 << v)
}

/// All simple `a`–`b` paths whose interior avoids `blocked`.
fn simple_paths(g: &SignedGraph, inc: &[Vec<(usize, usize)>], a: usize, b: usize, blocked: u64) -> Vec<PathWitness> {
    let mut out = Vec::new();
    let mut verts = vec![a];
    let mut edges = Vec::new();
    walk(g, inc, b, blocked | 1 << a, &mut verts, &mut edges, Sign::Pos, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn walk(
    g: &SignedGraph,
    inc: &[Vec<(usize, usize)>],
    target: usize,
    blocked: u64,
    verts: &mut Vec<usize>,
    edges: &mut Vec<usize>,
    sign: Sign,
    out: &mut Vec<PathWitness>,
) {
    let x = *verts.last().expect("nonempty");
    for &(e, y) in &inc[x] {
        let s = sign * g.edge(e).sign;
        if y == target {
            let mut vs = verts.clone();
            vs.push(y);
            let mut es = edges.clone();
            es.push(e);
            out.push(PathWitness { vertices: vs, edges: es, sign: s });
        } else if blocked >> y & 1 == 0 {
            verts.push(y);
            edges.push(e);
            walk(g, inc, target, blocked | 1 << y, verts, edges, s, out);
            verts.pop();
            edges.pop();
        }
    }
}

/// Turns a subdivision into a minor model: branch set `i` is the branch
/// vertex plus the interiors of both paths to every later branch vertex,
/// contracted along those path segments.
pub fn subdivision_to_minor(g: &SignedGraph, cert: &SubdivisionCertificate) -> Result<MinorCertificate> {
    let t = cert.branch_vertices.len();
    let n = g.n();
    let mut owner = vec![usize::MAX; n];
    let mut label = vec![Sign::Pos; n];
    let mut trees: Vec<Vec<usize>> = vec![Vec::new(); t];
    for (i, &b) in cert.branch_vertices.iter().enumerate() {
        if b >= n {
            return Err(Error::InvalidCertificate("branch vertex out of range".into()));
        }
        owner[b] = i;
    }
    for pp in &cert.paths {
        for path in [&pp.positive, &pp.negative] {
            let k = path.vertices.len();
            if k < 2 || path.edges.len() != k - 1 {
                return Err(Error::InvalidCertificate("path shape".into()));
            }
            // every vertex but the far end joins set i, labelled by the
            // running sign so the segment is positive after switching
            let mut running = Sign::Pos;
            for step in 0..k - 1 {
                let (x, e) = (path.vertices[step], path.edges[step]);
                if step > 0 {
                    if owner[x] != usize::MAX {
                        return Err(Error::InvalidCertificate("paths share an interior vertex".into()));
                    }
                    owner[x] = pp.i;
                    label[x] = running;
                    trees[pp.i].push(path.edges[step - 1]);
                }
                running = running * g.edge(e).sign;
            }
        }
    }
    let mut branch_sets: Vec<Vec<usize>> = vec![Vec::new(); t];
    for v in 0..n {
        if owner[v] != usize::MAX {
            branch_sets[owner[v]].push(v);
        }
    }
    let internal_switchings = branch_sets.iter().map(|s| s.iter().map(|&v| label[v]).collect()).collect();
    let mut cross_edges: Vec<CrossPair> = Vec::new();
    for i in 0..t {
        for j in i + 1..t {
            let edges = g
                .edges()
                .iter()
                .enumerate()
                .filter(|(_, e)| {
                    let (a, b) = (owner[e.u], owner[e.v]);
                    (a == i && b == j) || (a == j && b == i)
                })
                .map(|(ei, e)| CrossEdge { edge: ei, sign: e.sign * label[e.u] * label[e.v] })
                .collect();
            cross_edges.push(CrossPair { i, j, edges });
        }
    }
    Ok(MinorCertificate {
        pattern: Pattern::KTilde,
        branch_sets,
        internal_switchings,
        spanning_trees: trees,
        flips: vec![Sign::Pos; t],
        cross_edges,
    })
}

/// The negative path of every pair forms a (Kₜ, −)-subdivision.
pub fn odd_subdivision_from(cert: &SubdivisionCertificate) -> OddSubdivision {
    OddSubdivision {
        branch_vertices: cert.branch_vertices.clone(),
        paths: cert.paths.iter().map(|pp| (pp.i, pp.j, pp.negative.clone())).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;
    use crate::minor::{verify_certificate, Certificate, Verdict};

    #[test]
    fn ktilde_three_contains_itself() {
        let g = SimpleGraph::complete(3).tilde();
        let c = has_ktilde_subdivision(&g, 3).unwrap().unwrap();
        assert_eq!(c.branch_vertices, vec![0, 1, 2]);
        assert_eq!(verify_certificate(&g, &Certificate::Subdivision(c.clone())), Verdict::Valid);
        let m = subdivision_to_minor(&g, &c).unwrap();
        assert_eq!(verify_certificate(&g, &Certificate::Minor(m)), Verdict::Valid);
    }

    #[test]
    fn negative_triangle_has_a_ktilde_two_subdivision() {
        let g = SimpleGraph::complete(3).minus();
        let c = has_ktilde_subdivision(&g, 2).unwrap().unwrap();
        let pp = &c.paths[0];
        assert_eq!(pp.negative.edges.len(), 1);
        assert_eq!(pp.positive.edges.len(), 2);
        assert_eq!(verify_certificate(&g, &Certificate::Subdivision(c.clone())), Verdict::Valid);
        let m = subdivision_to_minor(&g, &c).unwrap();
        assert_eq!(verify_certificate(&g, &Certificate::Minor(m)), Verdict::Valid);
        let odd = odd_subdivision_from(&c);
        assert_eq!(verify_certificate(&g, &Certificate::OddSubdivision(odd)), Verdict::Valid);
    }

    #[test]
    fn balanced_graphs_have_none() {
        let g = SimpleGraph::complete(5).with_sign(Sign::Pos);
        assert!(has_ktilde_subdivision(&g, 2).unwrap().is_none());
    }

    #[test]
    fn bounds() {
        let g = SimpleGraph::complete(5).tilde();
        assert!(has_ktilde_subdivision(&g, 5).is_err());
        assert!(has_ktilde_subdivision(&SimpleGraph::cycle(10).minus(), 2).is_err());
    }
}
