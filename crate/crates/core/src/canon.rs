//! Canonical forms up to vertex relabelling and switching.
//!
//! Encoding, version 1 (all fields one byte):
//!
//! ```text
//! 0x01  n  then for each position j = 0..n:
//!          loop_pos(j) loop_neg(j)  pos(0,j) neg(0,j)  …  pos(j-1,j) neg(j-1,j)
//! ```
//!
//! where `pos(i,j)`/`neg(i,j)` count the parallel edges of each sign between
//! the vertices placed at positions `i` and `j` after switching. The form is
//! the lexicographic minimum over all placements that respect a
//! switching-invariant colour refinement, and for each placement over all
//! switchings. Two graphs get the same form iff they are switching-isomorphic.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Edge, Sign, SignedGraph};

pub const FORMAT_VERSION: u8 = 1;
pub const DEFAULT_MAX_ORDER: usize = 7;
/// Absolute ceiling regardless of the configured bound.
pub const HARD_MAX_ORDER: usize = 16;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let bytes = hex::decode(s).map_err(|e| Error::InvalidParams(format!("bad canonical form hex: {e}")))?;
        let form = CanonicalForm(bytes);
        form.decode()?;
        Ok(form)
    }

    /// Reconstructs the representative graph the form encodes.
    pub fn decode(&self) -> Result<SignedGraph> {
        let b = &self.0;
        let bad = || Error::InvalidParams("malformed canonical form".into());
        if b.len() < 2 || b[0] != FORMAT_VERSION {
            return Err(bad());
        }
        let n = b[1] as usize;
        if b.len() != 2 + n * (n + 1) {
            return Err(bad());
        }
        let mut edges = Vec::new();
        let mut at = 2;
        for j in 0..n {
            let mut push = |u: usize, v: usize, p: u8, q: u8| {
                edges.extend((0..p).map(|_| Edge::new(u, v, Sign::Pos)));
                edges.extend((0..q).map(|_| Edge::new(u, v, Sign::Neg)));
            };
            push(j, j, b[at], b[at + 1]);
            at += 2;
            for i in 0..j {
                push(i, j, b[at], b[at + 1]);
                at += 2;
            }
        }
        SignedGraph::new(n, edges)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for CanonicalForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CanonicalForm::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

pub fn canonical_form(g: &SignedGraph) -> Result<CanonicalForm> {
    canonical_form_bounded(g, DEFAULT_MAX_ORDER)
}

pub fn canonical_form_bounded(g: &SignedGraph, max_order: usize) -> Result<CanonicalForm> {
    let bound = max_order.min(HARD_MAX_ORDER);
    let n = g.n();
    if n > bound {
        return Err(Error::TooLarge { what: "canonical form", n, bound });
    }
    let counts = Counts::new(g)?;
    let colors = refine(&counts);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (colors[v], v));
    let cell_of_position: Vec<usize> = order.iter().map(|&v| colors[v]).collect();

    let mut search = Search {
        counts: &counts,
        colors: &colors,
        cell_of_position,
        placed: Vec::with_capacity(n),
        used: vec![false; n],
        buf: vec![FORMAT_VERSION, n as u8],
        best: None,
    };
    let uf = ParityUf::new(n);
    search.run(uf);
    Ok(CanonicalForm(search.best.expect("at least one placement")))
}

struct Counts {
    n: usize,
    /// `pair[u][v] = (pos, neg)`, symmetric; diagonal holds loops.
    pair: Vec<Vec<(u8, u8)>>,
}

impl Counts {
    fn new(g: &SignedGraph) -> Result<Self> {
        let n = g.n();
        let mut pair = vec![vec![(0u8, 0u8); n]; n];
        for e in g.edges() {
            let slot = &mut pair[e.u][e.v];
            let c = if e.sign.is_pos() { &mut slot.0 } else { &mut slot.1 };
            *c = c
                .checked_add(1)
                .ok_or_else(|| Error::InvalidParams("edge multiplicity above 255".into()))?;
            if e.u != e.v {
                pair[e.v][e.u] = pair[e.u][e.v];
            }
        }
        Ok(Counts { n, pair })
    }
}

/// Switching-invariant colour refinement: vertex colours stabilise under
/// "own colour + multiset of (neighbour colour, unordered sign counts)".
fn refine(c: &Counts) -> Vec<usize> {
    let n = c.n;
    let initial: Vec<(u8, u8)> = (0..n).map(|v| c.pair[v][v]).collect();
    let mut colors = rank(&initial);
    let mut classes = distinct(&colors);
    loop {
        let sigs: Vec<(usize, Vec<(usize, u8, u8)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(usize, u8, u8)> = (0..n)
                    .filter(|&w| w != v)
                    .filter_map(|w| {
                        let (p, q) = c.pair[v][w];
                        (p != 0 || q != 0).then(|| (colors[w], p.min(q), p.max(q)))
                    })
                    .collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let next = rank(&sigs);
        let k = distinct(&next);
        colors = next;
        if k == classes {
            return colors;
        }
        classes = k;
    }
}

fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).expect("present")).collect()
}

fn distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Union–find over positions tracking relative switching parity.
#[derive(Clone)]
struct ParityUf {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl ParityUf {
    fn new(n: usize) -> Self {
        ParityUf { parent: (0..n).collect(), parity: vec![false; n] }
    }

    fn find(&self, mut x: usize) -> (usize, bool) {
        let mut par = false;
        while self.parent[x] != x {
            par ^= self.parity[x];
            x = self.parent[x];
        }
        (x, par)
    }

    /// Records `s_a · s_b = (−1)^odd`.
    fn union(&mut self, a: usize, b: usize, odd: bool) {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra != rb {
            self.parent[rb] = ra;
            self.parity[rb] = pa ^ pb ^ odd;
        }
    }
}

struct Search<'a> {
    counts: &'a Counts,
    colors: &'a [usize],
    cell_of_position: Vec<usize>,
    placed: Vec<usize>,
    used: Vec<bool>,
    buf: Vec<u8>,
    best: Option<Vec<u8>>,
}

impl Search<'_> {
    fn run(&mut self, uf: ParityUf) {
        let j = self.placed.len();
        if j == self.counts.n {
            if self.best.as_ref().is_none_or(|b| self.buf < *b) {
                self.best = Some(self.buf.clone());
            }
            return;
        }
        let cell = self.cell_of_position[j];
        for v in 0..self.counts.n {
            if self.used[v] || self.colors[v] != cell {
                continue;
            }
            let mut uf = uf.clone();
            let start = self.buf.len();
            let (lp, lq) = self.counts.pair[v][v];
            self.buf.push(lp);
            self.buf.push(lq);
            for i in 0..j {
                let (p, q) = self.counts.pair[self.placed[i]][v];
                let entry = if p == q {
                    (p, q)
                } else {
                    let (ri, pi) = uf.find(i);
                    let (rj, pj) = uf.find(j);
                    if ri == rj {
                        if pi ^ pj {
                            (q, p)
                        } else {
                            (p, q)
                        }
                    } else {
                        let flip = q < p;
                        uf.union(i, j, flip);
                        if flip {
                            (q, p)
                        } else {
                            (p, q)
                        }
                    }
                };
                self.buf.push(entry.0);
                self.buf.push(entry.1);
            }
            // prune once the prefix exceeds the current best
            let keep = self.best.as_ref().is_none_or(|b| self.buf[..] <= b[..self.buf.len()]);
            if keep {
                self.placed.push(v);
                self.used[v] = true;
                self.run(uf);
                self.used[v] = false;
                self.placed.pop();
            }
            self.buf.truncate(start);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{SimpleGraph, SwitchingVector};

    #[test]
    fn balance_separates_triangles() {
        let neg = SimpleGraph::complete(3).minus();
        let bal = SignedGraph::from_triples(3, &[(0, 1, Sign::Neg), (1, 2, Sign::Neg), (0, 2, Sign::Pos)]);
        let bal_perm = bal.permute(&[2, 0, 1]).unwrap();
        assert_ne!(canonical_form(&neg).unwrap(), canonical_form(&bal_perm).unwrap());
        // a balanced triangle is switching-equivalent to the positive one
        let pos = SimpleGraph::complete(3).with_sign(Sign::Pos);
        assert_eq!(canonical_form(&bal).unwrap(), canonical_form(&pos).unwrap());
    }

    #[test]
    fn invariant_under_switching_and_relabelling() {
        let g = SignedGraph::from_triples(
            5,
            &[
                (0, 1, Sign::Neg),
                (1, 2, Sign::Pos),
                (2, 3, Sign::Neg),
                (3, 4, Sign::Pos),
                (4, 0, Sign::Pos),
                (0, 2, Sign::Pos),
                (0, 2, Sign::Neg),
                (3, 3, Sign::Pos),
            ],
        );
        let f = canonical_form(&g).unwrap();
        let s = SwitchingVector(vec![Sign::Neg, Sign::Pos, Sign::Neg, Sign::Neg, Sign::Pos]);
        assert_eq!(canonical_form(&g.switch(&s).unwrap()).unwrap(), f);
        assert_eq!(canonical_form(&g.permute(&[4, 2, 0, 1, 3]).unwrap()).unwrap(), f);
    }

    #[test]
    fn decode_round_trips_to_an_equivalent_graph() {
        let g = SimpleGraph::petersen().minus().induced(&[0, 1, 2, 3, 4, 5, 7]).unwrap().0;
        let f = canonical_form(&g).unwrap();
        let back = f.decode().unwrap();
        assert_eq!(canonical_form(&back).unwrap(), f);
        assert_eq!(CanonicalForm::from_hex(&f.to_hex()).unwrap(), f);
    }

    #[test]
    fn refuses_large_orders() {
        let g = SimpleGraph::cycle(8).minus();
        assert!(matches!(canonical_form(&g), Err(Error::TooLarge { .. })));
        assert!(canonical_form_bounded(&g, 8).is_ok());
    }
}
