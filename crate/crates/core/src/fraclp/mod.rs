//! Fractional balanced colourings: the covering LP over balanced sets,
//! solved exactly through its packing dual.
//!
//! The optimum is attained because there are finitely many columns, and
//! restricting to maximal balanced sets loses nothing: weight on a balanced
//! set can move to any balanced superset.

mod simplex;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::balance::is_balanced;
use crate::color::classical::maximal_independent_sets;
use crate::color::maximal_balanced_masks;
use crate::error::{Error, Result};
use crate::graph::{SignedGraph, SimpleGraph};
use crate::rational::Rational;
use crate::vset::{MaskGraph, VertexSet};

pub use simplex::{LpTableau, Outcome};

pub const CHI_FB_MAX_ORDER: usize = 12;
pub const CHI_F_MAX_ORDER: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedSet {
    pub set: Vec<usize>,
    #[serde(with = "crate::rational::serde_str")]
    pub weight: Rational,
}

/// Nonnegative weights on balanced sets covering every vertex at least once.
/// Only sets with positive weight are listed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalWeighting {
    pub weights: Vec<WeightedSet>,
    #[serde(with = "crate::rational::serde_str")]
    pub objective: Rational,
}

impl RationalWeighting {
    pub fn verify(&self, g: &SignedGraph) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidCertificate(m));
        let mut cover = vec![Rational::zero(); g.n()];
        let mut total = Rational::zero();
        for ws in &self.weights {
            if ws.weight.is_negative() {
                return bad(format!("negative weight on {:?}", ws.set));
            }
            let (sub, _) = g.induced(&ws.set)?;
            if !is_balanced(&sub).is_balanced() {
                return bad(format!("{:?} is not balanced", ws.set));
            }
            for &v in &ws.set {
                cover[v] += &ws.weight;
            }
            total += &ws.weight;
        }
        if let Some(v) = cover.iter().position(|c| *c < Rational::one()) {
            return bad(format!("vertex {v} is covered with weight {}", cover[v]));
        }
        if total != self.objective {
            return bad(format!("weights sum to {total}, not {}", self.objective));
        }
        Ok(())
    }
}

/// Optimal covering weights together with the packing dual that certifies
/// optimality.
#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub value: Rational,
    /// One weight per column.
    pub primal: Vec<Rational>,
    /// One value per vertex.
    pub dual: Vec<Rational>,
}

impl LpSolution {
    /// Primal feasibility, dual feasibility and equal objectives.
    pub fn verify(&self, columns: &[Vec<usize>], n: usize) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidCertificate(m.to_string()));
        if self.primal.len() != columns.len() || self.dual.len() != n {
            return bad("solution length");
        }
        if self.primal.iter().chain(&self.dual).any(Signed::is_negative) {
            return bad("negative variable");
        }
        let mut cover = vec![Rational::zero(); n];
        for (col, x) in columns.iter().zip(&self.primal) {
            for &v in col {
                cover[v] += x;
            }
            let load: Rational = col.iter().map(|&v| &self.dual[v]).sum();
            if load > Rational::one() {
                return bad("dual violates a column");
            }
        }
        if cover.iter().any(|c| *c < Rational::one()) {
            return bad("primal leaves a vertex uncovered");
        }
        let p: Rational = self.primal.iter().sum();
        let d: Rational = self.dual.iter().sum();
        if p != self.value || d != self.value {
            return bad("objectives differ");
        }
        Ok(())
    }
}

/// Minimum total weight on `columns` covering each of `0..n` at least once.
pub fn solve_covering_lp(columns: &[Vec<usize>], n: usize) -> Result<LpSolution> {
    let mut covered = vec![false; n];
    for col in columns {
        for &v in col {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            covered[v] = true;
        }
    }
    if let Some(v) = covered.iter().position(|c| !c) {
        return Err(Error::Infeasible { vertex: v });
    }
    let matrix: Vec<Vec<Rational>> = columns
        .iter()
        .map(|col| {
            let mut row = vec![Rational::zero(); n];
            for &v in col {
                row[v] = Rational::one();
            }
            row
        })
        .collect();
    let mut tableau = LpTableau::packing(&matrix, n);
    match tableau.solve() {
        Outcome::Optimal => {}
        Outcome::Unbounded(v) => return Err(Error::Infeasible { vertex: v }),
    }
    let sol = LpSolution { value: tableau.value().clone(), primal: tableau.row_duals(), dual: tableau.solution() };
    sol.verify(columns, n)
        .map_err(|e| Error::CriticalDefect(format!("simplex produced an uncertified optimum: {e}")))?;
    Ok(sol)
}

/// Exact χ_fb with an optimal weighting on maximal balanced sets.
pub fn chi_fb(g: &SignedGraph) -> Result<(Rational, RationalWeighting)> {
    if let Some(v) = g.negative_loop_vertex() {
        return Err(Error::NegativeLoop { vertex: v });
    }
    if g.n() > CHI_FB_MAX_ORDER {
        return Err(Error::TooLarge { what: "fractional balanced chromatic number", n: g.n(), bound: CHI_FB_MAX_ORDER });
    }
    let mg = MaskGraph::new(g)?;
    let mut columns: Vec<Vec<usize>> = maximal_balanced_masks(&mg)?.into_iter().map(VertexSet::to_vec).collect();
    columns.sort();
    let sol = solve_covering_lp(&columns, g.n())?;
    let weights = columns
        .into_iter()
        .zip(sol.primal)
        .filter(|(_, w)| w.is_positive())
        .map(|(set, weight)| WeightedSet { set, weight })
        .collect();
    let witness = RationalWeighting { weights, objective: sol.value.clone() };
    witness
        .verify(g)
        .map_err(|e| Error::CriticalDefect(format!("fractional witness failed to verify: {e}")))?;
    Ok((sol.value, witness))
}

/// Classical fractional chromatic number over maximal independent sets.
pub fn chi_f(g: &SimpleGraph) -> Result<Rational> {
    if g.n() > CHI_F_MAX_ORDER {
        return Err(Error::TooLarge { what: "fractional chromatic number", n: g.n(), bound: CHI_F_MAX_ORDER });
    }
    let mut columns: Vec<Vec<usize>> =
        maximal_independent_sets(g).into_iter().map(|m| VertexSet(m).to_vec()).collect();
    columns.sort();
    Ok(solve_covering_lp(&columns, g.n())?.value)
}
