//! Conjecture and theorem scans over bounded corpora.
//!
//! A scan evaluates one check on every instance of a corpus, grouped by
//! order. Instances run in parallel; results are folded in corpus order, so
//! the record does not depend on the thread count.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumerate::{enumerate_all, enumerate_unsigned, SIGNED_MAX_ORDER, UNSIGNED_MAX_ORDER};
use super::generate::{random_dichotomy_instance, random_multi, random_simple, rng_for};
use crate::balance::max_positive_switching;
use crate::canon::{canonical_form_bounded, HARD_MAX_ORDER};
use crate::color::{chi_b, classical::chi, ChiB};
use crate::error::{Error, Result};
use crate::fraclp::{chi_f, chi_fb};
use crate::graph::{Sign, SignedGraph, SimpleGraph};
use crate::minor::{
    has_even_odd_minor, has_ktilde_minor, has_ktilde_subdivision, has_odd_minor, negative_path_dichotomy,
    odd_subdivision_from, subdivision_to_minor, verify_certificate, Certificate, DichotomyResult, Verdict,
};
use crate::quotient::{all_quotients, balanced_quotient, verify_quotient, ALL_QUOTIENTS_MAX_ORDER};
use crate::rational::{format_ratio, int, ratio, Rational};

/// Extremal graphs up to this order carry a canonical form.
pub const CANON_MAX_ORDER: usize = 10;

/// Findings kept in full; the counts stay exact.
pub const MAX_FINDINGS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckName {
    SignedHadwiger,
    OddRelation,
    EvenOdd,
    FractionalBound,
    SubdivisionTable,
    QuotientAudit,
    TildeIdentity,
    FractionalTilde,
    SpanningBalanced,
    Dichotomy,
}

impl CheckName {
    pub const ALL: [CheckName; 10] = [
        CheckName::SignedHadwiger,
        CheckName::OddRelation,
        CheckName::EvenOdd,
        CheckName::FractionalBound,
        CheckName::SubdivisionTable,
        CheckName::QuotientAudit,
        CheckName::TildeIdentity,
        CheckName::FractionalTilde,
        CheckName::SpanningBalanced,
        CheckName::Dichotomy,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::SignedHadwiger => "signed-hadwiger",
            CheckName::OddRelation => "odd-relation",
            CheckName::EvenOdd => "even-odd",
            CheckName::FractionalBound => "fractional-bound",
            CheckName::SubdivisionTable => "subdivision-table",
            CheckName::QuotientAudit => "quotient-audit",
            CheckName::TildeIdentity => "tilde-identity",
            CheckName::FractionalTilde => "fractional-tilde",
            CheckName::SpanningBalanced => "spanning-balanced",
            CheckName::Dichotomy => "dichotomy",
        }
    }

    /// The statement a scan tests.
    pub fn claim(self) -> &'static str {
        match self {
            CheckName::SignedHadwiger => "every signed graph with chi_b >= t has a K~t-minor (conjecture)",
            CheckName::OddRelation => "chi_b(G,-) = ceil(chi(G)/2)",
            CheckName::EvenOdd => {
                "K_(2t-2) has no even-odd-K_t-minor; even-odd-K_t-minors of G are the K~t-minors of (G,-)"
            }
            CheckName::FractionalBound => "chi_fb <= 2t-2 without a K~t-minor, and chi_fb <= chi_b",
            CheckName::SubdivisionTable => "a K~t-subdivision yields a K~t-minor and a (K_t,-)-subdivision",
            CheckName::QuotientAudit => {
                "the balanced quotient is a minor and a homomorphic image with chi_b(quotient) = chi(underlying graph)"
            }
            CheckName::TildeIdentity => "chi(G) = chi_b(G~)",
            CheckName::FractionalTilde => "chi_fb(G~) = chi_f(G)",
            CheckName::SpanningBalanced => "some switching has a positive spanning subgraph H with d_H(v) >= d_G(v)/2",
            CheckName::Dichotomy => "k disjoint negative H-paths, or at most 2k-2 vertices meeting all of them",
        }
    }

    /// What the extremum column holds.
    pub fn metric(self) -> &'static str {
        match self {
            CheckName::SignedHadwiger => "max chi_b without a K~t-minor",
            CheckName::OddRelation => "max chi_b(G,-)",
            CheckName::EvenOdd => "max chi without an even-odd-K_t-minor",
            CheckName::FractionalBound => "max chi_fb without a K~t-minor",
            CheckName::SubdivisionTable => "max chi_b without a K~t-subdivision",
            CheckName::QuotientAudit => "max chi_b of the quotient",
            CheckName::TildeIdentity => "max chi",
            CheckName::FractionalTilde => "max chi_f",
            CheckName::SpanningBalanced => "min d_H(v)/d_G(v)",
            CheckName::Dichotomy => "max hitting set size",
        }
    }

    /// Conjecture checks report counterexamples as findings; for the rest a
    /// counterexample is a defect.
    pub fn theorem_backed(self) -> bool {
        self != CheckName::SignedHadwiger
    }

    fn minimise(self) -> bool {
        self == CheckName::SpanningBalanced
    }

    fn unsigned(self) -> bool {
        matches!(
            self,
            CheckName::OddRelation | CheckName::EvenOdd | CheckName::TildeIdentity | CheckName::FractionalTilde
        )
    }

    /// Largest order for the exhaustive and the random corpus.
    fn order_bounds(self) -> (usize, usize) {
        match self {
            CheckName::SignedHadwiger | CheckName::FractionalBound | CheckName::SubdivisionTable => {
                (SIGNED_MAX_ORDER, 9)
            }
            CheckName::QuotientAudit => (SIGNED_MAX_ORDER, 9),
            CheckName::SpanningBalanced => (SIGNED_MAX_ORDER, 64),
            CheckName::EvenOdd => (UNSIGNED_MAX_ORDER, 9),
            CheckName::OddRelation | CheckName::TildeIdentity | CheckName::FractionalTilde => (UNSIGNED_MAX_ORDER, 10),
            CheckName::Dichotomy => (0, 10),
        }
    }

    fn t_range(self) -> (usize, usize) {
        match self {
            CheckName::SubdivisionTable => (1, 4),
            CheckName::EvenOdd => (1, 5),
            CheckName::Dichotomy => (1, 3),
            CheckName::SignedHadwiger | CheckName::FractionalBound | CheckName::QuotientAudit => (1, 9),
            _ => (0, usize::MAX),
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown check {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Corpus {
    /// Every switching-isomorphism class of each order `1..=n`.
    All,
    /// `count` graphs, instance `i` drawn from ChaCha8 seeded with `seed` on
    /// stream `i`, order uniform in `1..=n`.
    Random { seed: u64, count: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSpec {
    pub check: CheckName,
    pub t: usize,
    pub n: usize,
    pub corpus: Corpus,
}

impl ScanSpec {
    pub fn validate(&self) -> Result<()> {
        let (all_max, random_max) = self.check.order_bounds();
        let bound = match self.corpus {
            Corpus::All => all_max,
            Corpus::Random { .. } => random_max,
        };
        if bound == 0 {
            return Err(Error::InvalidParams(format!("{} needs a random corpus", self.check)));
        }
        if self.n == 0 || self.n > bound {
            return Err(Error::InvalidParams(format!("{}: n must be in 1..={bound}, got {}", self.check, self.n)));
        }
        let (lo, hi) = self.check.t_range();
        if self.t < lo || self.t > hi {
            return Err(Error::InvalidParams(format!("{}: t must be in {lo}..={hi}, got {}", self.check, self.t)));
        }
        Ok(())
    }
}

/// One corpus member. Unsigned checks store the all-positive signing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: SignedGraph,
    pub h: Option<Vec<usize>>,
    pub k: Option<usize>,
}

impl Instance {
    fn plain(graph: SignedGraph) -> Self {
        Instance { graph, h: None, k: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extremum {
    pub value: String,
    /// Sign-list text of the witness graph.
    pub graph: String,
    /// Hex canonical form of the witness graph.
    pub canonical: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub n: usize,
    pub graph: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderRow {
    pub n: usize,
    pub graphs: usize,
    pub counterexamples: usize,
    pub extremum: Option<Extremum>,
    pub tallies: BTreeMap<String, usize>,
}

pub const REPORT_FORMAT: &str = "sgchroma-report/1";
pub const REPORT_LABEL: &str = "bounded-order estimates";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalRecord {
    pub format: String,
    pub label: String,
    pub spec: ScanSpec,
    pub claim: String,
    pub metric: String,
    pub theorem_backed: bool,
    pub prng: String,
    pub rows: Vec<OrderRow>,
    pub counterexamples: usize,
    pub findings: Vec<Finding>,
}

impl ExtremalRecord {
    pub fn empty(spec: ScanSpec) -> Self {
        ExtremalRecord {
            format: REPORT_FORMAT.into(),
            label: REPORT_LABEL.into(),
            spec,
            claim: spec.check.claim().into(),
            metric: spec.check.metric().into(),
            theorem_backed: spec.check.theorem_backed(),
            prng: match spec.corpus {
                Corpus::All => "none".into(),
                Corpus::Random { seed, .. } => format!("ChaCha8 seed {seed}, one stream per instance"),
            },
            rows: Vec::new(),
            counterexamples: 0,
            findings: Vec::new(),
        }
    }

    pub fn graphs(&self) -> usize {
        self.rows.iter().map(|r| r.graphs).sum()
    }

    /// Re-evaluates every stored extremal graph and checks that it still has
    /// the recorded value.
    pub fn reverify(&self) -> Result<()> {
        for row in &self.rows {
            let Some(ext) = &row.extremum else { continue };
            let graph = SignedGraph::parse(&ext.graph)?;
            if graph.n() <= CANON_MAX_ORDER && canonical_form_bounded(&graph, CANON_MAX_ORDER)?.to_hex() != ext.canonical {
                return Err(Error::InvalidCertificate(format!("order {}: canonical form does not match", row.n)));
            }
            let inst = Instance { graph, h: ext.h.clone(), k: ext.k };
            let out = evaluate(self.spec.check, self.spec.t, &inst);
            let got = out.metric.as_ref().map(format_ratio);
            if got.as_deref() != Some(ext.value.as_str()) {
                return Err(Error::InvalidCertificate(format!(
                    "order {}: stored extremum {} re-evaluates to {got:?}",
                    row.n, ext.value
                )));
            }
        }
        Ok(())
    }
}

/// The corpus of one order, in a fixed order.
pub fn corpus_for_order(spec: &ScanSpec, order: usize) -> Result<Vec<Instance>> {
    match spec.corpus {
        Corpus::All => Ok(if spec.check.unsigned() {
            enumerate_unsigned(order)?.into_iter().map(|g| Instance::plain(g.with_sign(Sign::Pos))).collect()
        } else {
            enumerate_all(order, false)?.into_iter().map(Instance::plain).collect()
        }),
        Corpus::Random { .. } => Ok(random_corpus(spec).into_iter().filter(|i| i.graph.n() == order).collect()),
    }
}

fn random_corpus(spec: &ScanSpec) -> Vec<Instance> {
    let Corpus::Random { seed, count } = spec.corpus else { return Vec::new() };
    (0..count as u64)
        .map(|i| {
            let mut rng = rng_for(seed, i);
            if spec.check == CheckName::Dichotomy {
                let (graph, h, k) = random_dichotomy_instance(spec.n, spec.t, &mut rng);
                return Instance { graph, h: Some(h), k: Some(k) };
            }
            let order = rng.random_range(1..=spec.n);
            let graph = if spec.check.unsigned() {
                random_simple(order, 0.5, &mut rng).with_sign(Sign::Pos)
            } else {
                random_multi(order, [3, 2, 2, 1], &mut rng)
            };
            Instance::plain(graph)
        })
        .collect()
}

pub fn run_scan(spec: &ScanSpec) -> Result<ExtremalRecord> {
    resume_scan(spec, ExtremalRecord::empty(*spec), |_| Ok(()))
}

/// Scans the orders after the last row of `record`, calling `saved` after
/// each completed order.
pub(crate) fn resume_scan(
    spec: &ScanSpec,
    mut record: ExtremalRecord,
    mut saved: impl FnMut(&ExtremalRecord) -> Result<()>,
) -> Result<ExtremalRecord> {
    spec.validate()?;
    let first = match spec.corpus {
        Corpus::Random { .. } if spec.check == CheckName::Dichotomy => 2,
        _ => 1,
    };
    let done = record.rows.last().map_or(0, |r| r.n);
    let random = matches!(spec.corpus, Corpus::Random { .. }).then(|| random_corpus(spec));
    for order in first.max(done + 1)..=spec.n {
        let corpus = match &random {
            Some(all) => all.iter().filter(|i| i.graph.n() == order).cloned().collect(),
            None => corpus_for_order(spec, order)?,
        };
        let row = scan_order(spec, order, &corpus, &mut record.findings);
        record.counterexamples += row.counterexamples;
        record.rows.push(row);
        saved(&record)?;
    }
    Ok(record)
}

/// Like [`run_scan`] on a dedicated pool of `threads` workers.
pub fn run_scan_with_threads(spec: &ScanSpec, threads: usize) -> Result<ExtremalRecord> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::InvalidParams(e.to_string()))?;
    pool.install(|| run_scan(spec))
}

pub(crate) fn scan_order(spec: &ScanSpec, order: usize, corpus: &[Instance], findings: &mut Vec<Finding>) -> OrderRow {
    let outcomes: Vec<Outcome> = corpus.par_iter().map(|inst| evaluate(spec.check, spec.t, inst)).collect();
    let mut row = OrderRow { n: order, graphs: corpus.len(), counterexamples: 0, extremum: None, tallies: BTreeMap::new() };
    let mut best: Option<Rational> = None;
    for (inst, out) in corpus.iter().zip(outcomes) {
        for tally in out.tallies {
            *row.tallies.entry(tally.to_string()).or_default() += 1;
        }
        if let Some(detail) = out.defect {
            row.counterexamples += 1;
            if findings.len() < MAX_FINDINGS {
                findings.push(Finding { n: order, graph: inst.graph.to_text(), h: inst.h.clone(), k: inst.k, detail });
            }
        }
        if let Some(v) = out.metric {
            let better = match &best {
                None => true,
                Some(b) if spec.check.minimise() => v < *b,
                Some(b) => v > *b,
            };
            if better {
                row.extremum = Some(Extremum {
                    value: format_ratio(&v),
                    graph: inst.graph.to_text(),
                    canonical: canonical_form_bounded(&inst.graph, CANON_MAX_ORDER)
                        .map_or_else(|e| format!("unavailable: {e}"), |f| f.to_hex()),
                    h: inst.h.clone(),
                    k: inst.k,
                });
                best = Some(v);
            }
        }
    }
    row
}

/// Result of one check on one instance.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub metric: Option<Rational>,
    pub defect: Option<String>,
    pub tallies: Vec<&'static str>,
}

pub fn evaluate(check: CheckName, t: usize, inst: &Instance) -> Outcome {
    let g = &inst.graph;
    let run = || -> Result<Outcome> {
        match check {
            CheckName::SignedHadwiger => signed_hadwiger(g, t),
            CheckName::OddRelation => odd_relation(&g.underlying()),
            CheckName::EvenOdd => even_odd(&g.underlying(), t),
            CheckName::FractionalBound => fractional_bound(g, t),
            CheckName::SubdivisionTable => subdivision_table(g, t),
            CheckName::QuotientAudit => quotient_audit(g, t),
            CheckName::TildeIdentity => tilde_identity(&g.underlying()),
            CheckName::FractionalTilde => fractional_tilde(&g.underlying()),
            CheckName::SpanningBalanced => spanning_balanced(g),
            CheckName::Dichotomy => {
                let h = inst.h.as_deref().ok_or_else(|| Error::InvalidParams("dichotomy instance without H".into()))?;
                dichotomy(g, h, inst.k.unwrap_or(t))
            }
        }
    };
    run().unwrap_or_else(|e| Outcome { defect: Some(format!("error: {e}")), ..Outcome::default() })
}

fn finite_chi_b(g: &SignedGraph) -> Result<usize> {
    match chi_b(g)? {
        ChiB::Finite { k, .. } => Ok(k),
        ChiB::Infinite => Err(Error::NegativeLoop { vertex: g.negative_loop_vertex().unwrap_or(0) }),
    }
}

fn invalid(v: Verdict, what: &str) -> Option<String> {
    match v {
        Verdict::Valid => None,
        Verdict::Violation { rule, detail } => Some(format!("{what} certificate rejected ({rule}): {detail}")),
    }
}

fn signed_hadwiger(g: &SignedGraph, t: usize) -> Result<Outcome> {
    let k = finite_chi_b(g)?;
    let mut out = Outcome::default();
    match has_ktilde_minor(g, t)? {
        Some(c) => {
            out.tallies.push("minor");
            out.defect = invalid(verify_certificate(g, &Certificate::Minor(c)), "minor");
        }
        None => {
            out.tallies.push("minor-free");
            out.metric = Some(int(k as i64));
            if k >= t {
                out.defect = Some(format!("chi_b = {k} >= {t} without a K~{t}-minor"));
            }
        }
    }
    Ok(out)
}

fn odd_relation(g: &SimpleGraph) -> Result<Outcome> {
    let c = chi(g)?;
    let b = finite_chi_b(&g.minus())?;
    let mut out = Outcome { metric: Some(int(b as i64)), ..Outcome::default() };
    if b != c.div_ceil(2) {
        out.defect = Some(format!("chi = {c} but chi_b(G,-) = {b}"));
    }
    Ok(out)
}

fn even_odd(g: &SimpleGraph, t: usize) -> Result<Outcome> {
    let signed = g.with_sign(Sign::Pos);
    let minus = g.minus();
    let eo = has_even_odd_minor(g, t)?;
    let kt = has_ktilde_minor(&minus, t)?;
    let mut out = Outcome::default();
    let mut defects = Vec::new();
    if let Some(c) = &eo {
        defects.extend(invalid(verify_certificate(&signed, &Certificate::EvenOdd(c.clone())), "even-odd"));
        if has_odd_minor(&minus, t)?.is_none() {
            defects.push(format!("even-odd-K{t}-minor but no (K{t},-)-minor of (G,-)"));
        }
        if g.n() == 2 * t - 2 && g.is_complete() {
            defects.push(format!("K_{} has an even-odd-K{t}-minor", g.n()));
        }
    }
    if let Some(c) = kt.clone() {
        defects.extend(invalid(verify_certificate(&minus, &Certificate::Minor(c)), "minor"));
    }
    if eo.is_some() != kt.is_some() {
        defects.push(format!("even-odd search says {} but K~{t}-minor search of (G,-) says {}", eo.is_some(), kt.is_some()));
    }
    if eo.is_some() {
        out.tallies.push("even-odd-minor");
    } else {
        out.tallies.push("no-even-odd-minor");
        out.metric = Some(int(chi(g)? as i64));
    }
    out.defect = (!defects.is_empty()).then(|| defects.join("; "));
    Ok(out)
}

fn fractional_bound(g: &SignedGraph, t: usize) -> Result<Outcome> {
    let (v, _) = chi_fb(g)?;
    let b = finite_chi_b(g)?;
    let mut out = Outcome::default();
    let mut defects = Vec::new();
    if v > int(b as i64) {
        defects.push(format!("chi_fb = {} exceeds chi_b = {b}", format_ratio(&v)));
    }
    match has_ktilde_minor(g, t)? {
        Some(_) => out.tallies.push("minor"),
        None => {
            out.tallies.push("minor-free");
            let bound = 2 * t as i64 - 2;
            if v > int(bound) {
                defects.push(format!("chi_fb = {} > {bound} without a K~{t}-minor", format_ratio(&v)));
            }
            out.metric = Some(v);
        }
    }
    out.defect = (!defects.is_empty()).then(|| defects.join("; "));
    Ok(out)
}

fn subdivision_table(g: &SignedGraph, t: usize) -> Result<Outcome> {
    let mut out = Outcome::default();
    match has_ktilde_subdivision(g, t)? {
        Some(c) => {
            out.tallies.push("subdivision");
            let mut defects = Vec::new();
            defects.extend(invalid(verify_certificate(g, &Certificate::Subdivision(c.clone())), "subdivision"));
            let m = subdivision_to_minor(g, &c)?;
            defects.extend(invalid(verify_certificate(g, &Certificate::Minor(m)), "converted minor"));
            let odd = odd_subdivision_from(&c);
            defects.extend(invalid(verify_certificate(g, &Certificate::OddSubdivision(odd)), "odd subdivision"));
            if has_ktilde_minor(g, t)?.is_none() {
                defects.push(format!("K~{t}-subdivision but the minor search finds no K~{t}-minor"));
            }
            out.defect = (!defects.is_empty()).then(|| defects.join("; "));
        }
        None => {
            out.tallies.push("subdivision-free");
            out.metric = Some(int(finite_chi_b(g)? as i64));
        }
    }
    Ok(out)
}

fn quotient_audit(g: &SignedGraph, t: usize) -> Result<Outcome> {
    let q = balanced_quotient(g)?;
    let mut defects = Vec::new();
    defects.extend(invalid(verify_quotient(g, &q), "quotient"));
    let bg = finite_chi_b(g)?;
    let bq = finite_chi_b(&q.quotient)?;
    let mut out = Outcome { metric: Some(int(bq as i64)), ..Outcome::default() };
    // the homomorphism pulls colourings back, so this direction is proven
    if bq < bg {
        defects.push(format!("chi_b(quotient) = {bq} < chi_b(G) = {bg}, but colourings pull back"));
    }
    // the literal inequality from the proof; it does not follow from the
    // homomorphism and is tallied, not treated as a defect
    out.tallies.push(if bq <= bg { "proof-line-holds" } else { "proof-line-fails" });
    let h = q.quotient.underlying();
    let ch = chi(&h)?;
    if ch != bq {
        defects.push(format!("chi_b(quotient) = {bq} but chi of its underlying graph is {ch}"));
    }
    if has_ktilde_minor(&q.quotient, t)?.is_some() != has_clique_minor(&h, t) {
        defects.push(format!("K~{t}-minor of the quotient disagrees with a K_{t}-minor of its underlying graph"));
    }
    if g.n() <= ALL_QUOTIENTS_MAX_ORDER {
        let all = all_quotients(g)?;
        let mut best = usize::MAX;
        let mut forms = std::collections::BTreeSet::new();
        for alt in &all {
            defects.extend(invalid(verify_quotient(g, alt), "alternative quotient"));
            best = best.min(finite_chi_b(&alt.quotient)?);
            forms.insert(canonical_form_bounded(&alt.quotient, HARD_MAX_ORDER)?);
        }
        out.tallies.push(if best == bg { "some-choice-attains" } else { "no-choice-attains" });
        out.tallies.push(if forms.len() == 1 { "choice-independent" } else { "choice-dependent" });
    }
    out.defect = (!defects.is_empty()).then(|| defects.join("; "));
    Ok(out)
}

/// `K_t`-minor of an unsigned graph by brute force over connected sets.
fn has_clique_minor(g: &SimpleGraph, t: usize) -> bool {
    let n = g.n();
    let connected = |s: u64| {
        let mut seen = s & s.wrapping_neg();
        loop {
            let grown = (0..n).filter(|&v| seen >> v & 1 == 1).fold(seen, |m, v| m | (g.adj(v) & s));
            if grown == seen {
                return seen == s;
            }
            seen = grown;
        }
    };
    let sets: Vec<u64> = (1u64..1 << n).filter(|&s| connected(s)).collect();
    let touches = |a: u64, b: u64| (0..n).any(|v| a >> v & 1 == 1 && g.adj(v) & b != 0);
    fn pick(sets: &[u64], t: usize, from: usize, chosen: &mut Vec<u64>, touches: &dyn Fn(u64, u64) -> bool) -> bool {
        if chosen.len() == t {
            return true;
        }
        for i in from..sets.len() {
            let s = sets[i];
            if chosen.iter().all(|&c| c & s == 0 && touches(c, s)) {
                chosen.push(s);
                if pick(sets, t, i + 1, chosen, touches) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    pick(&sets, t, 0, &mut Vec::new(), &touches)
}

fn tilde_identity(g: &SimpleGraph) -> Result<Outcome> {
    let c = chi(g)?;
    let b = finite_chi_b(&g.tilde())?;
    let mut out = Outcome { metric: Some(int(c as i64)), ..Outcome::default() };
    if b != c {
        out.defect = Some(format!("chi = {c} but chi_b(G~) = {b}"));
    }
    Ok(out)
}

fn fractional_tilde(g: &SimpleGraph) -> Result<Outcome> {
    let f = chi_f(g)?;
    let (fb, _) = chi_fb(&g.tilde())?;
    let mut out = Outcome { metric: Some(f.clone()), ..Outcome::default() };
    if f != fb {
        out.defect = Some(format!("chi_f = {} but chi_fb(G~) = {}", format_ratio(&f), format_ratio(&fb)));
    }
    Ok(out)
}

fn spanning_balanced(g: &SignedGraph) -> Result<Outcome> {
    let (_, h) = max_positive_switching(g)?;
    let (dg, dh) = (g.degrees(), h.degrees());
    let mut out = Outcome::default();
    if h.edges().iter().any(|e| e.sign.is_neg()) {
        out.defect = Some("spanning subgraph has a negative edge".into());
    } else if let Some(v) = (0..g.n()).find(|&v| 2 * dh[v] < dg[v]) {
        out.defect = Some(format!("vertex {v}: d_H = {} < d_G/2 = {}/2", dh[v], dg[v]));
    }
    out.metric = (0..g.n()).filter(|&v| dg[v] > 0).map(|v| ratio(dh[v] as i64, dg[v] as i64)).min();
    Ok(out)
}

fn dichotomy(g: &SignedGraph, h: &[usize], k: usize) -> Result<Outcome> {
    let mut out = Outcome::default();
    match negative_path_dichotomy(g, h, k) {
        Ok(result) => {
            if let DichotomyResult::HittingSet(x) = &result {
                out.metric = Some(int(x.len() as i64));
                out.tallies.push("hitting-set");
            } else {
                out.tallies.push("disjoint-paths");
            }
            let cert = Certificate::Dichotomy { h: h.to_vec(), k, result };
            out.defect = invalid(verify_certificate(g, &cert), "dichotomy");
        }
        Err(Error::CriticalDefect(m)) => {
            out.tallies.push("critical-defect");
            out.defect = Some(m);
        }
        Err(e) => return Err(e),
    }
    Ok(out)
}

/// `value` as a float for display; exact values stay in the record.
pub fn approx(value: &str) -> Option<f64> {
    crate::rational::parse_ratio(value).ok().and_then(|r| r.to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all(check: CheckName, t: usize, n: usize) -> ScanSpec {
        ScanSpec { check, t, n, corpus: Corpus::All }
    }

    #[test]
    fn signed_hadwiger_two_self_test() {
        let r = run_scan(&all(CheckName::SignedHadwiger, 2, 4)).unwrap();
        assert_eq!(r.counterexamples, 0);
        assert_eq!(r.graphs(), 1 + 3 + 11 + 82);
        // K~2-minor-free means balanced, so chi_b is at most 1
        assert!(r.rows.iter().all(|row| row.extremum.as_ref().unwrap().value == "1/1"));
        r.reverify().unwrap();
    }

    #[test]
    fn even_odd_on_k4() {
        let inst = Instance::plain(SimpleGraph::complete(4).with_sign(Sign::Pos));
        let out = evaluate(CheckName::EvenOdd, 3, &inst);
        assert_eq!(out.defect, None);
        assert_eq!(out.tallies, vec!["no-even-odd-minor"]);
    }

    #[test]
    fn spec_validation() {
        assert!(all(CheckName::SignedHadwiger, 2, 7).validate().is_err());
        assert!(all(CheckName::Dichotomy, 1, 5).validate().is_err());
        assert!(all(CheckName::SubdivisionTable, 5, 4).validate().is_err());
        assert!(all(CheckName::TildeIdentity, 0, 7).validate().is_ok());
        assert_eq!("quotient-audit".parse::<CheckName>().unwrap(), CheckName::QuotientAudit);
        assert!("hadwiger".parse::<CheckName>().is_err());
    }

    #[test]
    fn clique_minor_oracle() {
        assert!(has_clique_minor(&SimpleGraph::petersen(), 5));
        assert!(!has_clique_minor(&SimpleGraph::cycle(6), 4));
        assert!(has_clique_minor(&SimpleGraph::cycle(6), 3));
    }

    #[test]
    fn thread_count_does_not_change_the_record() {
        let spec = ScanSpec { check: CheckName::SpanningBalanced, t: 0, n: 12, corpus: Corpus::Random { seed: 5, count: 60 } };
        let a = run_scan_with_threads(&spec, 1).unwrap();
        let b = run_scan_with_threads(&spec, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.graphs(), 60);
    }
}
