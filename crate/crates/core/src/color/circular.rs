use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::BalancedCover;
use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};
use crate::rational::{int, Rational};

/// Points on a circle of circumference `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircularColoring {
    #[serde(with = "crate::rational::serde_str")]
    pub r: Rational,
    #[serde(with = "crate::rational::serde_vec_str")]
    pub phi: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "result")]
pub enum CircularCheck {
    Valid,
    Violated { edge: usize },
}

fn circle_distance(x: &Rational, y: &Rational, r: &Rational) -> Rational {
    let d = (x - y).abs();
    let wrap = r - &d;
    if wrap < d {
        wrap
    } else {
        d
    }
}

/// Negative edges need distance ≥ 1, positive edges distance ≤ r/2 − 1.
/// Reports the first violating edge in input order.
pub fn verify_circular(g: &SignedGraph, c: &CircularColoring) -> Result<CircularCheck> {
    if c.r < int(2) {
        return Err(Error::InvalidParams("circumference must be at least 2".into()));
    }
    if c.phi.len() != g.n() {
        return Err(Error::LengthMismatch { expected: g.n(), got: c.phi.len() });
    }
    if let Some(v) = c.phi.iter().position(|p| p.is_negative() || *p >= c.r) {
        return Err(Error::InvalidParams(format!("point of vertex {v} is outside [0, r)")));
    }
    let one = int(1);
    let pos_limit = &c.r / int(2) - &one;
    for (i, e) in g.edges().iter().enumerate() {
        let d = circle_distance(&c.phi[e.u], &c.phi[e.v], &c.r);
        let ok = match e.sign {
            Sign::Neg => d >= one,
            Sign::Pos => d <= pos_limit,
        };
        if !ok {
            return Ok(CircularCheck::Violated { edge: i });
        }
    }
    Ok(CircularCheck::Valid)
}

/// Circular `2k`-colouring from a balanced `k`-cover: part `i` sends vertices
/// with balance label +1 to point `i` and label −1 to the antipode `i + k`.
pub fn lift_to_circular(g: &SignedGraph, cover: &BalancedCover) -> Result<CircularColoring> {
    let hom = super::cover_to_hom(g, cover)?;
    let k = hom.k.max(1) as i64;
    let phi = (0..g.n())
        .map(|v| {
            let base = hom.image[v] as i64;
            match hom.switching.get(v) {
                Sign::Pos => int(base),
                Sign::Neg => int(base + k),
            }
        })
        .collect();
    Ok(CircularColoring { r: int(2 * k), phi })
}
