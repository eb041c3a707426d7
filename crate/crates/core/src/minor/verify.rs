//! Certificate checking from first principles. Nothing here is shared with
//! the searchers: every claim is recomputed from the edge list.

use serde::{Deserialize, Serialize};

use super::{
    DichotomyResult, EvenOddCertificate, MinorCertificate, OddSubdivision, PathWitness, Pattern,
    SubdivisionCertificate,
};
use crate::graph::{Sign, SignedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Minor(MinorCertificate),
    EvenOdd(EvenOddCertificate),
    Subdivision(SubdivisionCertificate),
    OddSubdivision(OddSubdivision),
    Dichotomy { h: Vec<usize>, k: usize, result: DichotomyResult },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Valid,
    Violation { rule: String, detail: String },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

type Check = std::result::Result<(), (&'static str, String)>;

fn ensure(cond: bool, rule: &'static str, detail: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err((rule, detail()))
    }
}

pub fn verify_certificate(g: &SignedGraph, cert: &Certificate) -> Verdict {
    let outcome = match cert {
        Certificate::Minor(c) => check_minor(g, c),
        Certificate::EvenOdd(c) => check_even_odd(g, c),
        Certificate::Subdivision(c) => check_subdivision(g, c),
        Certificate::OddSubdivision(c) => check_odd_subdivision(g, c),
        Certificate::Dichotomy { h, k, result } => check_dichotomy(g, h, *k, result),
    };
    match outcome {
        Ok(()) => Verdict::Valid,
        Err((rule, detail)) => Verdict::Violation { rule: rule.to_string(), detail },
    }
}

/// Owner index per vertex, checking range and disjointness.
fn owners(n: usize, sets: &[Vec<usize>]) -> std::result::Result<Vec<Option<usize>>, (&'static str, String)> {
    let mut owner = vec![None; n];
    for (i, s) in sets.iter().enumerate() {
        ensure(!s.is_empty(), "shape", || format!("set {i} is empty"))?;
        for &v in s {
            ensure(v < n, "range", || format!("vertex {v} in set {i}"))?;
            ensure(owner[v].is_none(), "disjointness", || format!("vertex {v} lies in two sets"))?;
            owner[v] = Some(i);
        }
    }
    Ok(owner)
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }
    fn join(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
        ra != rb
    }
}

fn check_minor(g: &SignedGraph, c: &MinorCertificate) -> Check {
    let n = g.n();
    let t = c.branch_sets.len();
    ensure(
        c.internal_switchings.len() == t && c.spanning_trees.len() == t && c.flips.len() == t,
        "shape",
        || "per-set vectors differ in length".into(),
    )?;
    let owner = owners(n, &c.branch_sets)?;
    let mut label = vec![Sign::Pos; n];
    for (i, (set, sw)) in c.branch_sets.iter().zip(&c.internal_switchings).enumerate() {
        ensure(set.len() == sw.len(), "shape", || format!("switching of set {i} misaligned"))?;
        for (&v, &s) in set.iter().zip(sw) {
            label[v] = s;
        }
    }
    let mut dsu = Dsu((0..n).collect());
    for (i, tree) in c.spanning_trees.iter().enumerate() {
        let set = &c.branch_sets[i];
        ensure(tree.len() + 1 == set.len(), "tree", || format!("set {i} has {} tree edges", tree.len()))?;
        for &ei in tree {
            ensure(ei < g.m(), "range", || format!("edge {ei}"))?;
            let e = g.edge(ei);
            ensure(
                !e.is_loop() && owner[e.u] == Some(i) && owner[e.v] == Some(i),
                "tree",
                || format!("edge {ei} is not inside set {i}"),
            )?;
            ensure((e.sign * label[e.u] * label[e.v]).is_pos(), "tree", || {
                format!("edge {ei} is negative after switching")
            })?;
            ensure(dsu.join(e.u, e.v), "tree", || format!("edge {ei} closes a cycle"))?;
        }
    }
    let mut seen_pairs = vec![vec![false; t]; t];
    for cp in &c.cross_edges {
        ensure(cp.i < cp.j && cp.j < t, "shape", || format!("pair ({}, {})", cp.i, cp.j))?;
        ensure(!seen_pairs[cp.i][cp.j], "shape", || format!("pair ({}, {}) repeated", cp.i, cp.j))?;
        seen_pairs[cp.i][cp.j] = true;
        let (mut pos, mut neg) = (false, false);
        for ce in &cp.edges {
            ensure(ce.edge < g.m(), "range", || format!("edge {}", ce.edge))?;
            let e = g.edge(ce.edge);
            let ends = (owner[e.u], owner[e.v]);
            ensure(
                ends == (Some(cp.i), Some(cp.j)) || ends == (Some(cp.j), Some(cp.i)),
                "cross edge",
                || format!("edge {} does not join sets {} and {}", ce.edge, cp.i, cp.j),
            )?;
            let sign = e.sign * label[e.u] * label[e.v] * c.flips[cp.i] * c.flips[cp.j];
            ensure(sign == ce.sign, "cross sign", || format!("edge {} has sign {}", ce.edge, sign.symbol()))?;
            pos |= sign.is_pos();
            neg |= sign.is_neg();
        }
        let ok = match c.pattern {
            Pattern::KTilde => pos && neg,
            Pattern::OddComplete => neg,
        };
        ensure(ok, "missing sign", || format!("pair ({}, {})", cp.i, cp.j))?;
    }
    for i in 0..t {
        for j in i + 1..t {
            ensure(seen_pairs[i][j], "missing sign", || format!("pair ({i}, {j}) has no edges listed"))?;
        }
    }
    Ok(())
}

fn check_even_odd(g: &SignedGraph, c: &EvenOddCertificate) -> Check {
    let n = g.n();
    ensure(c.coloring.len() == n, "shape", || "colouring length".into())?;
    ensure(c.coloring.iter().all(|&x| x <= 1), "shape", || "colour outside {0, 1}".into())?;
    let sets: Vec<Vec<usize>> = c.trees.iter().map(|t| t.vertices.clone()).collect();
    let owner = owners(n, &sets)?;
    let has_edge = |u: usize, v: usize| g.edges().iter().any(|e| (e.u == u && e.v == v) || (e.u == v && e.v == u));
    let mut dsu = Dsu((0..n).collect());
    for (i, tree) in c.trees.iter().enumerate() {
        ensure(tree.edges.len() + 1 == tree.vertices.len(), "tree", || format!("tree {i} edge count"))?;
        for &(u, v) in &tree.edges {
            ensure(u < n && v < n && u != v && has_edge(u, v), "tree", || format!("({u}, {v}) is not an edge"))?;
            ensure(owner[u] == Some(i) && owner[v] == Some(i), "tree", || format!("({u}, {v}) leaves tree {i}"))?;
            ensure(c.coloring[u] != c.coloring[v], "tree", || format!("({u}, {v}) is monochromatic"))?;
            ensure(dsu.join(u, v), "tree", || format!("({u}, {v}) closes a cycle"))?;
        }
    }
    let t = c.trees.len();
    let (mut mono, mut proper) = (vec![vec![false; t]; t], vec![vec![false; t]; t]);
    for e in g.edges() {
        if let (Some(a), Some(b)) = (owner[e.u], owner[e.v]) {
            if a != b {
                let (i, j) = (a.min(b), a.max(b));
                if c.coloring[e.u] == c.coloring[e.v] {
                    mono[i][j] = true;
                } else {
                    proper[i][j] = true;
                }
            }
        }
    }
    for i in 0..t {
        for j in i + 1..t {
            ensure(mono[i][j] && proper[i][j], "missing sign", || format!("trees {i} and {j}"))?;
        }
    }
    Ok(())
}

/// Checks that `p` is a simple path of the stated sign and returns its
/// vertex set as a bitmask.
fn check_path(g: &SignedGraph, p: &PathWitness) -> std::result::Result<u64, (&'static str, String)> {
    let k = p.vertices.len();
    ensure(k >= 2 && p.edges.len() == k - 1, "path", || format!("malformed path {:?}", p.vertices))?;
    let mut mask = 0u64;
    for &v in &p.vertices {
        ensure(v < g.n(), "range", || format!("vertex {v}"))?;
        ensure(mask >> v & 1 == 0, "path", || format!("vertex {v} repeats"))?;
        mask |= 1 << v;
    }
    let mut sign = Sign::Pos;
    for (step, &ei) in p.edges.iter().enumerate() {
        ensure(ei < g.m(), "range", || format!("edge {ei}"))?;
        let e = g.edge(ei);
        let (a, b) = (p.vertices[step], p.vertices[step + 1]);
        ensure((e.u == a && e.v == b) || (e.u == b && e.v == a), "path", || {
            format!("edge {ei} does not join {a} and {b}")
        })?;
        sign = sign * e.sign;
    }
    ensure(sign == p.sign, "path sign", || format!("path {:?} has sign {}", p.vertices, sign.symbol()))?;
    Ok(mask)
}

fn interior_mask(p: &PathWitness) -> u64 {
    p.vertices[1..p.vertices.len() - 1].iter().fold(0, |m, &v| m | 1 << v)
}

/// Shared shape of both subdivision kinds: one list of paths per pair.
fn check_branch_paths(g: &SignedGraph, branch: &[usize], paths: &[(usize, usize, &PathWitness)]) -> Check {
    let n = g.n();
    let t = branch.len();
    let mut bmask = 0u64;
    for &b in branch {
        ensure(b < n, "range", || format!("branch vertex {b}"))?;
        ensure(bmask >> b & 1 == 0, "disjointness", || format!("branch vertex {b} repeats"))?;
        bmask |= 1 << b;
    }
    let mut used = bmask;
    for &(i, j, p) in paths {
        ensure(i < j && j < t, "shape", || format!("pair ({i}, {j})"))?;
        check_path(g, p)?;
        let (a, z) = (p.vertices[0], *p.vertices.last().expect("checked"));
        ensure(a == branch[i] && z == branch[j], "path", || format!("path for ({i}, {j}) has ends {a}, {z}"))?;
        let inner = interior_mask(p);
        ensure(inner & used == 0, "disjointness", || format!("path for ({i}, {j}) reuses a vertex"))?;
        used |= inner;
    }
    Ok(())
}

fn check_subdivision(g: &SignedGraph, c: &SubdivisionCertificate) -> Check {
    let t = c.branch_vertices.len();
    let mut count = vec![vec![0usize; t]; t];
    let mut flat = Vec::new();
    for pp in &c.paths {
        ensure(pp.positive.sign.is_pos(), "missing sign", || format!("pair ({}, {}) positive path", pp.i, pp.j))?;
        ensure(pp.negative.sign.is_neg(), "missing sign", || format!("pair ({}, {}) negative path", pp.i, pp.j))?;
        if pp.i < t && pp.j < t {
            count[pp.i][pp.j] += 1;
        }
        flat.push((pp.i, pp.j, &pp.positive));
        flat.push((pp.i, pp.j, &pp.negative));
    }
    check_branch_paths(g, &c.branch_vertices, &flat)?;
    // two parallel single-edge paths are fine, but not one edge used twice
    for pp in &c.paths {
        ensure(pp.positive.edges != pp.negative.edges, "disjointness", || format!("pair ({}, {})", pp.i, pp.j))?;
    }
    every_pair_once(&count)
}

fn check_odd_subdivision(g: &SignedGraph, c: &OddSubdivision) -> Check {
    let t = c.branch_vertices.len();
    let mut count = vec![vec![0usize; t]; t];
    let mut flat = Vec::new();
    for (i, j, p) in &c.paths {
        ensure(p.sign.is_neg(), "missing sign", || format!("pair ({i}, {j})"))?;
        if *i < t && *j < t {
            count[*i][*j] += 1;
        }
        flat.push((*i, *j, p));
    }
    check_branch_paths(g, &c.branch_vertices, &flat)?;
    every_pair_once(&count)
}

fn every_pair_once(count: &[Vec<usize>]) -> Check {
    let t = count.len();
    for i in 0..t {
        for j in i + 1..t {
            ensure(count[i][j] == 1, "shape", || format!("pair ({i}, {j}) listed {} times", count[i][j]))?;
        }
    }
    Ok(())
}

fn check_dichotomy(g: &SignedGraph, h: &[usize], k: usize, result: &DichotomyResult) -> Check {
    let n = g.n();
    ensure(h.iter().all(|&v| v < n), "range", || "H vertex".into())?;
    ensure(k >= 1, "shape", || "k = 0".into())?;
    let hmask = h.iter().fold(0u64, |m, &v| m | 1 << v);
    match result {
        DichotomyResult::Paths(paths) => {
            ensure(paths.len() == k, "shape", || format!("{} paths for k = {k}", paths.len()))?;
            let mut used = 0u64;
            for p in paths {
                let mask = check_path(g, p)?;
                ensure(p.sign.is_neg(), "missing sign", || format!("path {:?}", p.vertices))?;
                let (a, z) = (p.vertices[0], *p.vertices.last().expect("checked"));
                ensure(hmask >> a & 1 == 1 && hmask >> z & 1 == 1, "h-path", || format!("ends {a}, {z}"))?;
                ensure(interior_mask(p) & hmask == 0, "h-path", || format!("path {:?} enters H", p.vertices))?;
                ensure(mask & used == 0, "disjointness", || format!("path {:?}", p.vertices))?;
                used |= mask;
            }
            Ok(())
        }
        DichotomyResult::HittingSet(x) => {
            ensure(x.len() + 2 <= 2 * k, "hitting", || format!("|X| = {} exceeds {}", x.len(), 2 * k - 2))?;
            ensure(x.iter().all(|&v| v < n), "range", || "X vertex".into())?;
            let xmask = x.iter().fold(0u64, |m, &v| m | 1 << v);
            let escape = negative_h_path_avoiding(g, hmask, xmask);
            ensure(escape.is_none(), "hitting", || format!("negative H-path {:?} avoids X", escape.unwrap()))
        }
    }
}

/// Exhaustive search for a negative H-path inside `G − X`.
fn negative_h_path_avoiding(g: &SignedGraph, hmask: u64, xmask: u64) -> Option<Vec<usize>> {
    fn go(g: &SignedGraph, hmask: u64, blocked: u64, path: &mut Vec<usize>, sign: Sign) -> bool {
        let x = *path.last().expect("nonempty");
        for e in g.edges() {
            let Some(y) = e.other(x) else { continue };
            if e.is_loop() || blocked >> y & 1 == 1 {
                continue;
            }
            let s = sign * e.sign;
            path.push(y);
            if hmask >> y & 1 == 1 {
                if s.is_neg() {
                    return true;
                }
            } else if go(g, hmask, blocked | 1 << y, path, s) {
                return true;
            }
            path.pop();
        }
        false
    }
    for a in 0..g.n() {
        if hmask >> a & 1 == 0 || xmask >> a & 1 == 1 {
            continue;
        }
        let mut path = vec![a];
        if go(g, hmask, xmask | 1 << a, &mut path, Sign::Pos) {
            return Some(path);
        }
    }
    None
}
