//! Balanced sets, the balanced chromatic number with witnesses, and the
//! equivalent views of a balanced colouring: 0-free colourings of the
//! negated graph, homomorphisms to K̃ₖ⁺, and circular colourings.

mod circular;
pub mod classical;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph, SwitchingVector};
use crate::vset::{MaskGraph, VertexSet};

pub use circular::{lift_to_circular, verify_circular, CircularCheck, CircularColoring};

/// Order bound when every balanced set is listed.
pub const ALL_SETS_MAX_ORDER: usize = 16;
/// Order bound when only inclusion-maximal sets are listed.
pub const MAXIMAL_SETS_MAX_ORDER: usize = 20;

/// Balanced sets of `g` as sorted vertex lists, in lexicographic order.
pub fn enumerate_balanced_sets(g: &SignedGraph, maximal_only: bool) -> Result<Vec<Vec<usize>>> {
    let mg = MaskGraph::new(g)?;
    let sets = if maximal_only {
        maximal_balanced_masks(&mg)?
    } else {
        all_balanced_masks(&mg)?
    };
    let mut out: Vec<Vec<usize>> = sets.into_iter().map(VertexSet::to_vec).collect();
    out.sort();
    Ok(out)
}

/// Every balanced vertex set including the empty set.
pub(crate) fn all_balanced_masks(mg: &MaskGraph) -> Result<Vec<VertexSet>> {
    if mg.n > ALL_SETS_MAX_ORDER {
        return Err(Error::TooLarge { what: "balanced set enumeration", n: mg.n, bound: ALL_SETS_MAX_ORDER });
    }
    let mut out = Vec::new();
    grow_balanced(mg, 0, VertexSet::EMPTY, &mut |s| out.push(s));
    Ok(out)
}

/// Inclusion-maximal balanced sets. Vertices with a negative loop lie in
/// none of them.
pub(crate) fn maximal_balanced_masks(mg: &MaskGraph) -> Result<Vec<VertexSet>> {
    if mg.n > MAXIMAL_SETS_MAX_ORDER {
        return Err(Error::TooLarge { what: "maximal balanced set enumeration", n: mg.n, bound: MAXIMAL_SETS_MAX_ORDER });
    }
    let usable = VertexSet::full(mg.n).minus(VertexSet(mg.neg_loop));
    if mg.is_balanced(usable) {
        return Ok(if usable.is_empty() { vec![] } else { vec![usable] });
    }
    let mut out = Vec::new();
    grow_balanced(mg, 0, VertexSet::EMPTY, &mut |s| {
        let maximal = usable.minus(s).iter().all(|v| !mg.is_balanced(s.insert(v)));
        if maximal {
            out.push(s);
        }
    });
    Ok(out)
}

/// Depth-first over vertices in index order; balance is hereditary, so an
/// unbalanced partial set is never extended.
fn grow_balanced(mg: &MaskGraph, v: usize, set: VertexSet, emit: &mut impl FnMut(VertexSet)) {
    if v == mg.n {
        emit(set);
        return;
    }
    let with = set.insert(v);
    if mg.is_balanced(with) {
        grow_balanced(mg, v + 1, with, emit);
    }
    grow_balanced(mg, v + 1, set, emit);
}

/// A cover of the vertex set by balanced sets. Empty parts are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalancedCover {
    pub parts: Vec<Vec<usize>>,
    pub k: usize,
}

impl BalancedCover {
    pub fn new(parts: Vec<Vec<usize>>) -> Self {
        let k = parts.len();
        BalancedCover { parts, k }
    }

    pub fn validate(&self, g: &SignedGraph) -> Result<()> {
        if self.k != self.parts.len() {
            return Err(Error::InvalidCertificate("part count differs from k".into()));
        }
        let mut covered = vec![false; g.n()];
        for (i, part) in self.parts.iter().enumerate() {
            for &v in part {
                if v >= g.n() {
                    return Err(Error::InvalidCertificate(format!("part {i} names vertex {v}")));
                }
                covered[v] = true;
            }
            let (h, _) = g.induced(part)?;
            if !crate::balance::is_balanced(&h).is_balanced() {
                return Err(Error::InvalidCertificate(format!("part {i} is not balanced")));
            }
        }
        if let Some(v) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidCertificate(format!("vertex {v} is not covered")));
        }
        Ok(())
    }

    /// Each vertex keeps only the lowest-index part containing it; parts left
    /// empty are dropped.
    pub fn to_partition(&self, n: usize) -> BalancedCover {
        let mut owner = vec![usize::MAX; n];
        for (i, part) in self.parts.iter().enumerate() {
            for &v in part {
                if owner[v] == usize::MAX {
                    owner[v] = i;
                }
            }
        }
        let parts: Vec<Vec<usize>> = (0..self.parts.len())
            .map(|i| (0..n).filter(|&v| owner[v] == i).collect::<Vec<_>>())
            .filter(|p: &Vec<usize>| !p.is_empty())
            .collect();
        BalancedCover::new(parts)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ChiB {
    Finite { k: usize, cover: BalancedCover },
    /// The graph has a negative loop.
    Infinite,
}

impl ChiB {
    pub fn value(&self) -> Option<usize> {
        match self {
            ChiB::Finite { k, .. } => Some(*k),
            ChiB::Infinite => None,
        }
    }

    pub fn cover(&self) -> Option<&BalancedCover> {
        match self {
            ChiB::Finite { cover, .. } => Some(cover),
            ChiB::Infinite => None,
        }
    }
}

/// Exact balanced chromatic number with a witnessing cover.
///
/// Branch and bound over covers by maximal balanced sets: an upper bound from
/// greedy covering, a lower bound from a greedy clique of pairwise
/// digon-joined uncovered vertices, and branching on the uncovered vertex
/// lying in the fewest maximal sets.
pub fn chi_b(g: &SignedGraph) -> Result<ChiB> {
    if g.has_negative_loop() {
        return Ok(ChiB::Infinite);
    }
    let mg = MaskGraph::new(g)?;
    let n = mg.n;
    if n == 0 {
        return Ok(ChiB::Finite { k: 0, cover: BalancedCover::new(vec![]) });
    }
    let mut sets = maximal_balanced_masks(&mg)?;
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.to_vec().cmp(&b.to_vec())));
    let full = VertexSet::full(n);
    if sets.len() == 1 && sets[0] == full {
        return Ok(ChiB::Finite { k: 1, cover: BalancedCover::new(vec![full.to_vec()]) });
    }

    let degree: Vec<u32> = (0..n).map(|v| mg.adj(v).count_ones()).collect();
    let containing: Vec<Vec<usize>> =
        (0..n).map(|v| (0..sets.len()).filter(|&i| sets[i].contains(v)).collect()).collect();

    let mut bb = CoverSearch {
        sets: &sets,
        containing: &containing,
        degree: &degree,
        separate: (0..n).map(|v| mg.digon(v)).collect(),
        best: greedy_cover(&sets, full),
        chosen: Vec::new(),
    };
    bb.search(full);

    let parts = bb.best.iter().map(|&i| sets[i].to_vec()).collect();
    let cover = BalancedCover::new(parts);
    Ok(ChiB::Finite { k: cover.k, cover })
}

fn greedy_cover(sets: &[VertexSet], full: VertexSet) -> Vec<usize> {
    let mut uncovered = full;
    let mut chosen = Vec::new();
    while !uncovered.is_empty() {
        let (best, _) = sets
            .iter()
            .enumerate()
            .map(|(i, s)| (i, s.inter(uncovered).len()))
            .fold((usize::MAX, 0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        chosen.push(best);
        uncovered = uncovered.minus(sets[best]);
    }
    chosen
}

struct CoverSearch<'a> {
    sets: &'a [VertexSet],
    containing: &'a [Vec<usize>],
    degree: &'a [u32],
    separate: Vec<u64>,
    best: Vec<usize>,
    chosen: Vec<usize>,
}

impl CoverSearch<'_> {
    fn lower_bound(&self, uncovered: VertexSet) -> usize {
        let mut order: Vec<usize> = uncovered.iter().collect();
        order.sort_by_key(|&v| (std::cmp::Reverse((self.separate[v] & uncovered.0).count_ones()), v));
        let mut clique = 0u64;
        let mut size = 0;
        for v in order {
            if self.separate[v] & clique == clique {
                clique |= 1 << v;
                size += 1;
            }
        }
        size
    }

    fn search(&mut self, uncovered: VertexSet) {
        if uncovered.is_empty() {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        }
        if self.chosen.len() + self.lower_bound(uncovered) >= self.best.len() {
            return;
        }
        let v = uncovered
            .iter()
            .min_by_key(|&v| (self.containing[v].len(), std::cmp::Reverse(self.degree[v]), v))
            .expect("nonempty");
        let mut options = self.containing[v].clone();
        options.sort_by_key(|&i| (std::cmp::Reverse(self.sets[i].inter(uncovered).len()), i));
        for i in options {
            self.chosen.push(i);
            self.search(uncovered.minus(self.sets[i]));
            self.chosen.pop();
        }
    }
}

/// Values in `{±1, …, ±k}` per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ZeroFreeColoring(pub Vec<i64>);

impl ZeroFreeColoring {
    /// Checks `ψ(u) ≠ σ(e)·ψ(v)` on every edge of `g` and that values are
    /// nonzero with `|ψ| ≤ k`.
    pub fn verify(&self, g: &SignedGraph, k: usize) -> Result<()> {
        if self.0.len() != g.n() {
            return Err(Error::LengthMismatch { expected: g.n(), got: self.0.len() });
        }
        if let Some(v) = self.0.iter().position(|&x| x == 0 || x.unsigned_abs() as usize > k) {
            return Err(Error::InvalidCertificate(format!("value at vertex {v} outside ±1..±{k}")));
        }
        for (i, e) in g.edges().iter().enumerate() {
            if self.0[e.u] == e.sign.as_i8() as i64 * self.0[e.v] {
                return Err(Error::InvalidCertificate(format!("edge {i} violates the 0-free condition")));
            }
        }
        Ok(())
    }
}

/// Turns a balanced cover of `g` into a 0-free colouring of `(G, −σ)`: part
/// `i` (1-based, after refining to a partition) uses `±i`, the sign taken from
/// the part's balance switching.
pub fn balanced_to_zero_free(g: &SignedGraph, cover: &BalancedCover) -> Result<ZeroFreeColoring> {
    cover.validate(g)?;
    let partition = cover.to_partition(g.n());
    let labels = part_switchings(g, &partition)?;
    let mut psi = vec![0i64; g.n()];
    for (i, part) in partition.parts.iter().enumerate() {
        for &v in part {
            psi[v] = labels.get(v).as_i8() as i64 * (i as i64 + 1);
        }
    }
    Ok(ZeroFreeColoring(psi))
}

/// Concatenates per-part balance switchings into one vector.
fn part_switchings(g: &SignedGraph, partition: &BalancedCover) -> Result<SwitchingVector> {
    let mut s = SwitchingVector::identity(g.n());
    for part in &partition.parts {
        let (h, map) = g.induced(part)?;
        let local = crate::balance::is_balanced(&h);
        let sw = local
            .switching()
            .ok_or_else(|| Error::InvalidCertificate("unbalanced part".into()))?;
        for (i, &v) in map.iter().enumerate() {
            s.0[v] = sw.get(i);
        }
    }
    Ok(s)
}

/// A homomorphism to K̃ₖ⁺: `image` names the target vertex, `switching` is
/// applied first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomToKtildePlus {
    pub k: usize,
    pub image: Vec<usize>,
    pub switching: SwitchingVector,
}

impl HomToKtildePlus {
    /// After switching, no negative edge may stay inside a fibre (negative
    /// loops have no image in K̃ₖ⁺). Edges between fibres map to a digon.
    pub fn verify(&self, g: &SignedGraph) -> Result<()> {
        if self.image.len() != g.n() {
            return Err(Error::LengthMismatch { expected: g.n(), got: self.image.len() });
        }
        if let Some(v) = self.image.iter().position(|&x| x >= self.k) {
            return Err(Error::InvalidCertificate(format!("vertex {v} maps outside K~{}+", self.k)));
        }
        let sw = g.switch(&self.switching)?;
        for (i, e) in sw.edges().iter().enumerate() {
            if self.image[e.u] == self.image[e.v] && e.sign == Sign::Neg {
                return Err(Error::InvalidCertificate(format!("edge {i} is negative inside a fibre")));
            }
        }
        Ok(())
    }
}

pub fn cover_to_hom(g: &SignedGraph, cover: &BalancedCover) -> Result<HomToKtildePlus> {
    cover.validate(g)?;
    let partition = cover.to_partition(g.n());
    let switching = part_switchings(g, &partition)?;
    let mut image = vec![0; g.n()];
    for (i, part) in partition.parts.iter().enumerate() {
        for &v in part {
            image[v] = i;
        }
    }
    Ok(HomToKtildePlus { k: cover.k.max(partition.k), image, switching })
}

/// A homomorphism to K̃ₖ⁺ if `χ_b(g) ≤ k`, checked before it is returned.
pub fn check_hom_to_ktilde_plus(g: &SignedGraph, k: usize) -> Result<Option<HomToKtildePlus>> {
    if let Some(v) = g.negative_loop_vertex() {
        return Err(Error::NegativeLoop { vertex: v });
    }
    let ChiB::Finite { k: kb, cover } = chi_b(g)? else { unreachable!("no negative loop") };
    if kb > k {
        return Ok(None);
    }
    let mut hom = cover_to_hom(g, &cover)?;
    hom.k = k;
    hom.verify(g)?;
    Ok(Some(hom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;

    #[test]
    fn balanced_sets_of_all_negative_graphs_are_bipartite() {
        let g = SimpleGraph::complete(4).minus();
        let sets = enumerate_balanced_sets(&g, false).unwrap();
        // ∅, 4 singletons, 6 pairs
        assert_eq!(sets.len(), 11);
        assert!(sets.iter().all(|s| s.len() <= 2));
    }

    #[test]
    fn balanced_sets_of_tilde_are_independent_sets() {
        let c5 = SimpleGraph::cycle(5);
        let sets = enumerate_balanced_sets(&c5.tilde(), false).unwrap();
        for s in &sets {
            for &u in s {
                for &v in s {
                    assert!(!c5.has_edge(u, v));
                }
            }
        }
        // ∅ + 5 singletons + 5 non-adjacent pairs
        assert_eq!(sets.len(), 11);
    }

    #[test]
    fn edgeless_graph_has_one_maximal_set() {
        let g = SignedGraph::empty(4);
        assert_eq!(enumerate_balanced_sets(&g, true).unwrap(), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn chi_b_small_values() {
        let k4t = SimpleGraph::complete(4).tilde();
        assert_eq!(chi_b(&k4t).unwrap().value(), Some(4));
        assert_eq!(chi_b(&SimpleGraph::complete(4).minus()).unwrap().value(), Some(2));
        assert_eq!(chi_b(&SimpleGraph::cycle(7).minus()).unwrap().value(), Some(2));
        assert_eq!(chi_b(&SignedGraph::empty(0)).unwrap().value(), Some(0));
        let neg_loop = SignedGraph::from_triples(2, &[(0, 0, Sign::Neg)]);
        assert_eq!(chi_b(&neg_loop).unwrap(), ChiB::Infinite);
    }

    #[test]
    fn chi_b_witness_validates() {
        let g = SimpleGraph::petersen().tilde();
        let r = chi_b(&g).unwrap();
        assert_eq!(r.value(), Some(3));
        r.cover().unwrap().validate(&g).unwrap();
    }

    #[test]
    fn zero_free_from_cover() {
        let g = SimpleGraph::cycle(4).with_sign(Sign::Pos);
        let cover = BalancedCover::new(vec![vec![0, 1, 2, 3]]);
        let psi = balanced_to_zero_free(&g, &cover).unwrap();
        psi.verify(&g.negated(), 1).unwrap();

        let k4 = SimpleGraph::complete(4).minus();
        let ChiB::Finite { k, cover } = chi_b(&k4).unwrap() else { panic!() };
        let psi = balanced_to_zero_free(&k4, &cover).unwrap();
        psi.verify(&SimpleGraph::complete(4).with_sign(Sign::Pos), k).unwrap();

        let empty = SignedGraph::empty(0);
        assert_eq!(balanced_to_zero_free(&empty, &BalancedCover::new(vec![])).unwrap().0, Vec::<i64>::new());

        let bad = BalancedCover::new(vec![vec![0, 1, 2, 3]]);
        assert!(balanced_to_zero_free(&k4, &bad).is_err());
    }

    #[test]
    fn hom_to_ktilde_plus() {
        // K̃ₖ⁺ itself under the identity
        let mut kp = SimpleGraph::complete(3).tilde();
        for v in 0..3 {
            kp.add_edge(v, v, Sign::Pos).unwrap();
        }
        let id = HomToKtildePlus { k: 3, image: vec![0, 1, 2], switching: SwitchingVector::identity(3) };
        id.verify(&kp).unwrap();
        assert!(check_hom_to_ktilde_plus(&kp, 3).unwrap().is_some());

        let k4 = SimpleGraph::complete(4).minus();
        let h = check_hom_to_ktilde_plus(&k4, 2).unwrap().unwrap();
        h.verify(&k4).unwrap();
        assert_eq!(check_hom_to_ktilde_plus(&k4, 1).unwrap(), None);

        let neg_loop = SignedGraph::from_triples(1, &[(0, 0, Sign::Neg)]);
        assert!(check_hom_to_ktilde_plus(&neg_loop, 3).is_err());
    }

    #[test]
    fn partition_takes_lowest_part() {
        let c = BalancedCover::new(vec![vec![0, 1], vec![1, 2], vec![1]]);
        assert_eq!(c.to_partition(3).parts, vec![vec![0, 1], vec![2]]);
    }
}
