//! Exact containment detectors at desk scale, each returning a certificate
//! that [`verify_certificate`] re-checks from scratch.
//!
//! A branch set is a connected vertex set together with a switching under
//! which its positive edges span it: switching, deleting the internal edges
//! that stay negative and contracting a positive spanning tree turns it into a
//! single vertex. Balanced connected sets are the special case where no
//! internal edge has to be deleted.

mod branch;
mod dichotomy;
mod evenodd;
mod subdivision;
mod verify;

use serde::{Deserialize, Serialize};

use crate::graph::Sign;

pub use branch::{has_ktilde_minor, has_odd_minor};
pub use dichotomy::negative_path_dichotomy;
pub use evenodd::has_even_odd_minor;
pub use subdivision::{has_ktilde_subdivision, odd_subdivision_from, subdivision_to_minor};
pub use verify::{verify_certificate, Certificate, Verdict};

/// Order bound for the exhaustive minor searches.
pub const MINOR_MAX_ORDER: usize = 9;
/// Largest pattern order for subdivision search.
pub const SUBDIVISION_MAX_T: usize = 4;
/// Order bound for the negative H-path dichotomy.
pub const DICHOTOMY_MAX_ORDER: usize = 10;
pub const DICHOTOMY_MAX_K: usize = 3;
/// Largest pattern order for the odd-minor flip search.
pub const ODD_MAX_T: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pattern {
    /// K̃ₜ: every pair of branch sets sees both signs.
    KTilde,
    /// (Kₜ, −): every pair sees a negative edge after the chosen flips.
    OddComplete,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossEdge {
    pub edge: usize,
    /// Sign after the internal switchings and the flips.
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossPair {
    pub i: usize,
    pub j: usize,
    pub edges: Vec<CrossEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorCertificate {
    pub pattern: Pattern,
    /// Sorted vertex lists.
    pub branch_sets: Vec<Vec<usize>>,
    /// Per set, the switching of each of its vertices (aligned with the set).
    pub internal_switchings: Vec<Vec<Sign>>,
    /// Per set, edge indices of a spanning tree that is positive after the
    /// internal switching.
    pub spanning_trees: Vec<Vec<usize>>,
    /// Whole-set re-switch per branch set.
    pub flips: Vec<Sign>,
    pub cross_edges: Vec<CrossPair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenOddTree {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenOddCertificate {
    /// Colour 0 or 1 per vertex.
    pub coloring: Vec<u8>,
    pub trees: Vec<EvenOddTree>,
}

/// A path given by its vertex sequence and the edges between consecutive
/// vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathWitness {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairPaths {
    pub i: usize,
    pub j: usize,
    /// Both run from `branch_vertices[i]` to `branch_vertices[j]`.
    pub positive: PathWitness,
    pub negative: PathWitness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionCertificate {
    pub branch_vertices: Vec<usize>,
    pub paths: Vec<PairPaths>,
}

/// A subdivision of (Kₜ, −) in which every branch path is negative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddSubdivision {
    pub branch_vertices: Vec<usize>,
    pub paths: Vec<(usize, usize, PathWitness)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DichotomyResult {
    /// `k` vertex-disjoint negative H-paths.
    Paths(Vec<PathWitness>),
    /// At most `2k − 2` vertices meeting every negative H-path.
    HittingSet(Vec<usize>),
}
