//! Maximal lines, the Gasca–Maeztu check, incidence counting around a node,
//! Cayley–Bacharach dependence for products of lines, and the randomized
//! counterexample search.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gc::{certify_gc, line_incidences, GCCertificate};
use crate::gen::{self, generate, GeneratorKind, GeneratorSpec};
use crate::geom::{are_parallel, intersect, line_through, Line, Point};
use crate::interp::{is_essentially_dependent_at, NodeSet};
use crate::poly::DEFAULT_MAX_DEGREE;

/// Lines through exactly `n + 1` nodes, with their nodes.
///
/// A line through more than `n + 1` nodes is reported as
/// [`Error::TooManyCollinear`]; it cannot occur in a poised set.
pub fn maximal_lines(xs: &NodeSet) -> Result<BTreeMap<Line, Vec<usize>>> {
    let n = xs.degree();
    let mut out = BTreeMap::new();
    for (l, nodes) in line_incidences(xs) {
        if nodes.len() > n + 1 {
            return Err(Error::TooManyCollinear {
                line: l.to_string(),
                count: nodes.len(),
                max: n + 1,
            });
        }
        if nodes.len() == n + 1 {
            out.insert(l, nodes);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalLine {
    pub line: Line,
    pub nodes: Vec<usize>,
    /// Number of nodes whose fundamental polynomial has this line as factor.
    pub users: usize,
}

/// Self-contained data for reproducing a failed check elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub certificate: GCCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GMReport {
    pub degree: usize,
    pub satisfied: bool,
    pub maximal_lines: Vec<MaximalLine>,
    /// k ↦ number of k-node lines (k ≥ 2).
    pub line_histogram: BTreeMap<usize, usize>,
    /// k ↦ (use count ↦ number of k-node lines used that many times).
    pub use_counts: BTreeMap<usize, BTreeMap<usize, usize>>,
    pub counterexample: Option<Counterexample>,
}

pub fn verify_gm(xs: &NodeSet) -> Result<GMReport> {
    let cert = certify_gc(xs)?.certificate()?;
    gm_report(&cert)
}

/// The report for an already certified set.
pub fn gm_report(cert: &GCCertificate) -> Result<GMReport> {
    let xs = &cert.nodeset;
    let n = xs.degree();
    let incid = line_incidences(xs);
    let used = cert.used_line_index();
    let mut line_histogram = BTreeMap::new();
    let mut use_counts: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
    let mut maximal = Vec::new();
    for (l, nodes) in &incid {
        let k = nodes.len();
        if k > n + 1 {
            return Err(Error::TooManyCollinear {
                line: l.to_string(),
                count: k,
                max: n + 1,
            });
        }
        *line_histogram.entry(k).or_insert(0) += 1;
        *use_counts.entry(k).or_default().entry(used.use_count(l)).or_insert(0) += 1;
        if k == n + 1 {
            maximal.push(MaximalLine {
                line: l.clone(),
                nodes: nodes.clone(),
                users: used.use_count(l),
            });
        }
    }
    let satisfied = !maximal.is_empty();
    Ok(GMReport {
        degree: n,
        satisfied,
        maximal_lines: maximal,
        line_histogram,
        use_counts,
        counterexample: (!satisfied).then(|| Counterexample {
            certificate: cert.clone(),
        }),
    })
}

/// Nodes on at least two maximal lines.
pub fn classify_2m_nodes(xs: &NodeSet) -> Result<BTreeSet<usize>> {
    let mut hits = vec![0usize; xs.len()];
    for nodes in maximal_lines(xs)?.values() {
        for &j in nodes {
            hits[j] += 1;
        }
    }
    Ok((0..xs.len()).filter(|&j| hits[j] >= 2).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceProfile {
    pub center: usize,
    pub target: Vec<usize>,
    /// k ↦ number of lines through the center meeting the target in k points.
    pub counts: BTreeMap<usize, usize>,
}

impl IncidenceProfile {
    pub fn weighted_sum(&self) -> usize {
        self.counts.iter().map(|(k, c)| k * c).sum()
    }
}

/// Groups `target` (default: every other node) by the line joining each
/// point to the center.
pub fn incidence_profile(xs: &NodeSet, center: usize, target: Option<&[usize]>) -> Result<IncidenceProfile> {
    let c = xs.node(center)?.clone();
    let target: Vec<usize> = match target {
        Some(t) => {
            let set: BTreeSet<usize> = t.iter().copied().collect();
            if set.contains(&center) {
                return Err(Error::CenterInTarget);
            }
            if let Some(&bad) = set.iter().find(|&&j| j >= xs.len()) {
                return Err(Error::NodeIndex(bad));
            }
            set.into_iter().collect()
        }
        None => (0..xs.len()).filter(|&j| j != center).collect(),
    };
    let mut per_line: BTreeMap<Line, usize> = BTreeMap::new();
    for &j in &target {
        let l = line_through(&c, &xs.nodes()[j])?;
        *per_line.entry(l).or_insert(0) += 1;
    }
    let mut counts = BTreeMap::new();
    for k in per_line.into_values() {
        *counts.entry(k).or_insert(0) += 1;
    }
    let profile = IncidenceProfile {
        center,
        target,
        counts,
    };
    assert_eq!(profile.weighted_sum(), profile.target.len(), "each target point lies on one line through the center");
    Ok(profile)
}

/// The `m·n` intersection points of two groups of lines, or
/// [`Error::DegenerateIntersection`] when a cross pair is parallel or
/// identical or two intersection points coincide.
pub fn cross_intersections(lines_m: &[Line], lines_n: &[Line]) -> Result<Vec<Point>> {
    let mut pts = Vec::with_capacity(lines_m.len() * lines_n.len());
    let mut seen = BTreeSet::new();
    for a in lines_m {
        for b in lines_n {
            if a == b || are_parallel(a, b) {
                return Err(Error::DegenerateIntersection);
            }
            let p = intersect(a, b)?;
            if !seen.insert(p.clone()) {
                return Err(Error::DegenerateIntersection);
            }
            pts.push(p);
        }
    }
    Ok(pts)
}

/// Whether the intersection points of a degree-m and a degree-n product of
/// lines are essentially (m + n − 3)-dependent.
pub fn cayley_bacharach_check(lines_m: &[Line], lines_n: &[Line]) -> Result<bool> {
    if lines_m.is_empty() || lines_n.is_empty() {
        return Err(Error::DegenerateIntersection);
    }
    let pts = cross_intersections(lines_m, lines_n)?;
    let degree = lines_m.len() + lines_n.len();
    if degree < 3 {
        // Only the zero polynomial has negative degree.
        return Ok(true);
    }
    Ok(is_essentially_dependent_at(&pts, degree - 3))
}

/// Random line groups whose products meet in `m·n` distinct points.
pub fn random_cayley_bacharach_instance(m: usize, n: usize, seed: u64, bound: u32) -> Result<(Vec<Line>, Vec<Line>)> {
    let mut rng = gen::prng(seed);
    for _ in 0..gen::DEFAULT_RETRY_LIMIT {
        let a: Vec<Line> = (0..m).map(|_| gen::random_line(&mut rng, bound)).collect();
        let b: Vec<Line> = (0..n).map(|_| gen::random_line(&mut rng, bound)).collect();
        if cross_intersections(&a, &b).is_ok() {
            return Ok((a, b));
        }
    }
    Err(Error::RetryLimitExceeded(gen::DEFAULT_RETRY_LIMIT))
}

/// Which generators a search draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchKinds {
    /// Cycle through all kinds by trial index.
    Mixed,
    Only(GeneratorKind),
}

impl SearchKinds {
    pub fn kind_for(self, trial: usize) -> GeneratorKind {
        match self {
            SearchKinds::Mixed => GeneratorKind::ALL[trial % GeneratorKind::ALL.len()],
            SearchKinds::Only(k) => k,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SearchKinds::Mixed => "mixed",
            SearchKinds::Only(k) => k.name(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialFailure {
    pub trial: usize,
    pub kind: GeneratorKind,
    pub seed: u64,
    pub error: Option<String>,
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSummary {
    pub degree: usize,
    pub kinds: SearchKinds,
    pub seed: u64,
    pub trials: usize,
    pub certified: usize,
    pub gm_satisfied: usize,
    /// Certified sets where some node uses a line twice.
    pub multiplicity_sets: usize,
    pub failures: Vec<TrialFailure>,
    pub use_counts: BTreeMap<usize, BTreeMap<usize, usize>>,
}

enum TrialOutcome {
    Ok { report: GMReport, multiplicity: bool },
    GenerationFailed(String),
}

/// Generates `trials` GC sets and checks each for a maximal line.
///
/// Trial `i` uses seed [`gen::trial_seed`]`(seed, i)`; trials run in
/// parallel and are merged by index.
pub fn search_counterexample(degree: usize, trials: usize, seed: u64, kinds: SearchKinds) -> Result<SearchSummary> {
    if degree > DEFAULT_MAX_DEGREE {
        return Err(Error::DegreeTooLarge(degree, DEFAULT_MAX_DEGREE));
    }
    let outcomes: Vec<(usize, GeneratorKind, u64, TrialOutcome)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let kind = kinds.kind_for(i);
            let s = gen::trial_seed(seed, i as u64);
            let outcome = match generate(&GeneratorSpec::new(kind, degree, s)).and_then(|g| {
                let multiplicity = g.certificate.any_multiplicity();
                Ok((gm_report(&g.certificate)?, multiplicity))
            }) {
                Ok((report, multiplicity)) => TrialOutcome::Ok { report, multiplicity },
                Err(e) => TrialOutcome::GenerationFailed(e.to_string()),
            };
            (i, kind, s, outcome)
        })
        .collect();
    let mut summary = SearchSummary {
        degree,
        kinds,
        seed,
        trials,
        certified: 0,
        gm_satisfied: 0,
        multiplicity_sets: 0,
        failures: Vec::new(),
        use_counts: BTreeMap::new(),
    };
    for (trial, kind, s, outcome) in outcomes {
        match outcome {
            TrialOutcome::Ok { report, multiplicity } => {
                summary.certified += 1;
                summary.multiplicity_sets += usize::from(multiplicity);
                for (k, hist) in &report.use_counts {
                    let dst = summary.use_counts.entry(*k).or_default();
                    for (u, c) in hist {
                        *dst.entry(*u).or_insert(0) += c;
                    }
                }
                if report.satisfied {
                    summary.gm_satisfied += 1;
                } else {
                    summary.failures.push(TrialFailure {
                        trial,
                        kind,
                        seed: s,
                        error: None,
                        counterexample: report.counterexample,
                    });
                }
            }
            TrialOutcome::GenerationFailed(e) => summary.failures.push(TrialFailure {
                trial,
                kind,
                seed: s,
                error: Some(e),
                counterexample: None,
            }),
        }
    }
    Ok(summary)
}
