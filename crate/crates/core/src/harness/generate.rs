//! Named graph families and seeded random graphs.
//!
//! Family strings: `complete:N`, `cycle:N`, `path:N`, `empty:N`, `petersen`,
//! `tilde:<family>`, `minus:<family>` and
//! `random:n=N,p=P,bias=B,seed=S` where `P` and `B` are `p/q` or decimal.
//! Unsigned bases become all-positive signed graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph, SimpleGraph};

/// The one PRNG used everywhere: ChaCha8 seeded from a `u64`, with one
/// stream per generated object.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn generate(family: &str) -> Result<SignedGraph> {
    let bad = |m: &str| Error::InvalidParams(format!("{m} in family {family:?}"));
    let (name, arg) = family.split_once(':').unwrap_or((family, ""));
    match name {
        "tilde" => Ok(unsigned(arg)?.tilde()),
        "minus" => Ok(unsigned(arg)?.minus()),
        "random" => {
            let mut n = None;
            let (mut p, mut bias, mut seed) = (0.5, 0.5, 0u64);
            for kv in arg.split(',').filter(|s| !s.is_empty()) {
                let (k, v) = kv.split_once('=').ok_or_else(|| bad("expected key=value"))?;
                match k.trim() {
                    "n" => n = Some(v.trim().parse().map_err(|_| bad("bad n"))?),
                    "p" => p = probability(v).ok_or_else(|| bad("bad p"))?,
                    "bias" => bias = probability(v).ok_or_else(|| bad("bad bias"))?,
                    "seed" => seed = v.trim().parse().map_err(|_| bad("bad seed"))?,
                    _ => return Err(bad("unknown key")),
                }
            }
            let n = n.ok_or_else(|| bad("missing n"))?;
            Ok(random_signed(n, p, bias, &mut rng_for(seed, 0)))
        }
        _ => Ok(unsigned(family)?.with_sign(Sign::Pos)),
    }
}

/// Unsigned base families.
pub fn unsigned(family: &str) -> Result<SimpleGraph> {
    let bad = || Error::InvalidParams(format!("unknown family {family:?}"));
    let (name, arg) = family.split_once(':').unwrap_or((family, ""));
    let size = || -> Result<usize> {
        let n: usize = arg.trim().parse().map_err(|_| bad())?;
        if n > 64 {
            return Err(Error::TooLarge { what: "generated graph", n, bound: 64 });
        }
        Ok(n)
    };
    match name {
        "complete" => Ok(SimpleGraph::complete(size()?)),
        "cycle" => {
            let n = size()?;
            if n < 3 {
                return Err(Error::InvalidParams("a cycle needs at least 3 vertices".into()));
            }
            Ok(SimpleGraph::cycle(n))
        }
        "path" => Ok(SimpleGraph::path(size()?)),
        "empty" => Ok(SimpleGraph::empty(size()?)),
        "petersen" if arg.is_empty() => Ok(SimpleGraph::petersen()),
        _ => Err(bad()),
    }
}

fn probability(s: &str) -> Option<f64> {
    let s = s.trim();
    let x = match s.split_once('/') {
        Some((p, q)) => p.trim().parse::<f64>().ok()? / q.trim().parse::<f64>().ok()?,
        None => s.parse().ok()?,
    };
    (0.0..=1.0).contains(&x).then_some(x)
}

/// Each pair is an edge with probability `p`, negative with probability
/// `bias`. No loops, no parallel edges.
pub fn random_signed(n: usize, p: f64, bias: f64, rng: &mut impl Rng) -> SignedGraph {
    let mut g = SignedGraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                let sign = if rng.random_bool(bias) { Sign::Neg } else { Sign::Pos };
                g.add_edge(u, v, sign).expect("in range");
            }
        }
    }
    g
}

/// Each pair is absent, positive, negative or a digon with the given
/// weights (out of their sum).
pub fn random_multi(n: usize, weights: [u32; 4], rng: &mut impl Rng) -> SignedGraph {
    let total: u32 = weights.iter().sum();
    let mut g = SignedGraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            let mut x = rng.random_range(0..total);
            let state = weights.iter().position(|&w| {
                if x < w {
                    true
                } else {
                    x -= w;
                    false
                }
            });
            let signs: &[Sign] = match state {
                Some(1) => &[Sign::Pos],
                Some(2) => &[Sign::Neg],
                Some(3) => &[Sign::Pos, Sign::Neg],
                _ => &[],
            };
            for &s in signs {
                g.add_edge(u, v, s).expect("in range");
            }
        }
    }
    g
}

pub fn random_simple(n: usize, p: f64, rng: &mut impl Rng) -> SimpleGraph {
    let mut g = SimpleGraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// A dichotomy instance: order in `2..=max_n`, `k` in `1..=max_k`, and a
/// vertex set `H` held together by a positive path.
pub fn random_dichotomy_instance(max_n: usize, max_k: usize, rng: &mut impl Rng) -> (SignedGraph, Vec<usize>, usize) {
    let n = rng.random_range(2..=max_n.max(2));
    let k = rng.random_range(1..=max_k.max(1));
    let size = rng.random_range(1..=n.min(4));
    let mut pool: Vec<usize> = (0..n).collect();
    let mut h = Vec::with_capacity(size);
    for _ in 0..size {
        h.push(pool.swap_remove(rng.random_range(0..pool.len())));
    }
    let mut g = random_multi(n, [4, 2, 3, 1], rng);
    for w in h.windows(2) {
        g.add_edge(w[0], w[1], Sign::Pos).expect("in range");
    }
    h.sort_unstable();
    (g, h, k)
}
