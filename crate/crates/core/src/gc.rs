//! GC certification: factor each fundamental polynomial into lines.
//!
//! A line used by a node must pass through at least two nodes, so the
//! factor search only considers lines spanned by node pairs. Factors are
//! peeled by exact division; unique factorization makes the greedy order
//! irrelevant.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::{is_incident, line_through, Line, Scalar};
use crate::interp::{self, NodeSet};
use crate::poly::{IntPoly, Poly};

/// Every line through at least two nodes, with the nodes on it (sorted).
pub fn line_incidences(xs: &NodeSet) -> BTreeMap<Line, Vec<usize>> {
    let mut map: BTreeMap<Line, BTreeSet<usize>> = BTreeMap::new();
    let nodes = xs.nodes();
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            let l = line_through(&nodes[i], &nodes[j]).expect("nodes are distinct");
            let e = map.entry(l).or_default();
            e.insert(i);
            e.insert(j);
        }
    }
    map.into_iter().map(|(l, s)| (l, s.into_iter().collect())).collect()
}

pub fn candidate_lines(xs: &NodeSet) -> BTreeSet<Line> {
    line_incidences(xs).into_keys().collect()
}

/// Splits `p` into `constant · ∏ lines` using only `candidates`.
///
/// Lines are returned in canonical order, repeated according to
/// multiplicity.
pub fn factor_into_lines<'a>(
    p: &Poly,
    candidates: impl IntoIterator<Item = &'a Line>,
) -> Result<(Vec<Line>, Scalar)> {
    let degree = p.effective_degree().ok_or(Error::ZeroPolynomial)?;
    let (content, prim) = IntPoly::primitive_part(p);
    let mut residual = prim.trimmed();
    let mut lines = Vec::with_capacity(degree);
    for l in candidates {
        if residual.degree_bound == 0 {
            break;
        }
        while let Some(q) = residual.divide_by_line(l) {
            residual = q.trimmed();
            lines.push(l.clone());
            if residual.degree_bound == 0 {
                break;
            }
        }
    }
    if residual.degree_bound != 0 || lines.len() != degree {
        return Err(Error::NotProductOfCandidateLines {
            residual_degree: residual.degree_bound,
        });
    }
    lines.sort();
    let unit = Scalar::from_integer(residual.coeffs[0].clone());
    Ok((lines, content * unit))
}

/// Factorization of one node's fundamental polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeCertificate {
    pub node: usize,
    pub constant: Scalar,
    /// Canonically sorted, with multiplicity.
    pub lines: Vec<Line>,
    /// For each distinct line, the nodes on it where the cofactor is nonzero.
    pub witnesses: BTreeMap<Line, Vec<usize>>,
}

impl NodeCertificate {
    /// The fundamental polynomial rebuilt from the factors.
    pub fn expand(&self) -> Poly {
        self.lines
            .iter()
            .fold(Poly::constant(self.constant.clone()), |p, l| p.multiply_line(l))
    }

    pub fn distinct_lines(&self) -> BTreeSet<Line> {
        self.lines.iter().cloned().collect()
    }

    pub fn has_multiplicity(&self) -> bool {
        self.lines.windows(2).any(|w| w[0] == w[1])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GCCertificate {
    pub nodeset: NodeSet,
    pub nodes: Vec<NodeCertificate>,
}

/// Which nodes use each line.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UsedLineIndex {
    pub users: BTreeMap<Line, BTreeSet<usize>>,
}

impl UsedLineIndex {
    pub fn use_count(&self, l: &Line) -> usize {
        self.users.get(l).map_or(0, BTreeSet::len)
    }
}

impl GCCertificate {
    pub fn degree(&self) -> usize {
        self.nodeset.degree()
    }

    pub fn node(&self, k: usize) -> Result<&NodeCertificate> {
        self.nodes.get(k).ok_or(Error::NodeIndex(k))
    }

    pub fn used_line_index(&self) -> UsedLineIndex {
        let mut idx = UsedLineIndex::default();
        for nc in &self.nodes {
            for l in &nc.lines {
                idx.users.entry(l.clone()).or_default().insert(nc.node);
            }
        }
        idx
    }

    pub fn any_multiplicity(&self) -> bool {
        self.nodes.iter().any(NodeCertificate::has_multiplicity)
    }

    /// Re-checks every certificate invariant by direct evaluation, without
    /// reference to the solver that produced the fundamental polynomials.
    pub fn verify(&self) -> std::result::Result<(), String> {
        let pts = self.nodeset.nodes();
        let n = self.degree();
        if self.nodes.len() != pts.len() {
            return Err("certificate count differs from node count".into());
        }
        for (k, nc) in self.nodes.iter().enumerate() {
            if nc.node != k {
                return Err(format!("entry {k} is labelled node {}", nc.node));
            }
            if nc.lines.len() != n || nc.constant.is_zero() {
                return Err(format!("node {k}: expected {n} factors and a nonzero constant"));
            }
            for (j, p) in pts.iter().enumerate() {
                let v = nc
                    .lines
                    .iter()
                    .fold(nc.constant.clone(), |acc, l| acc * l.eval(p));
                let expect = if j == k { Scalar::one() } else { Scalar::zero() };
                if v != expect {
                    return Err(format!("node {k}: value at node {j} is not the Kronecker delta"));
                }
            }
            for l in nc.distinct_lines() {
                let on = pts.iter().filter(|p| is_incident(p, &l)).count();
                if on < 2 {
                    return Err(format!("node {k}: line {l} passes through {on} nodes"));
                }
                let wit = nc.witnesses.get(&l).ok_or(format!("node {k}: no witnesses for {l}"))?;
                if wit.len() < 2 {
                    return Err(format!("node {k}: line {l} has {} witnesses", wit.len()));
                }
                for &w in wit {
                    let p = &pts[w];
                    if !is_incident(p, &l) || cofactor_value(nc, &l, p).is_zero() {
                        return Err(format!("node {k}: witness {w} invalid for line {l}"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Value at `p` of the fundamental polynomial with one copy of `l` removed.
fn cofactor_value(nc: &NodeCertificate, l: &Line, p: &crate::geom::Point) -> Scalar {
    let mut skipped = false;
    nc.lines.iter().fold(nc.constant.clone(), |acc, m| {
        if !skipped && m == l {
            skipped = true;
            acc
        } else {
            acc * m.eval(p)
        }
    })
}

/// A node whose fundamental polynomial does not split over candidate lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotGcWitness {
    pub node: usize,
    pub fundamental: Poly,
    pub residual_degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GcVerdict {
    Certified(GCCertificate),
    NotGc(NotGcWitness),
}

impl GcVerdict {
    pub fn certificate(self) -> Result<GCCertificate> {
        match self {
            GcVerdict::Certified(c) => Ok(c),
            GcVerdict::NotGc(w) => Err(Error::NotGC(w.node)),
        }
    }
}

pub fn certify_gc(xs: &NodeSet) -> Result<GcVerdict> {
    if !interp::is_poised(xs) {
        return Err(Error::NotPoised);
    }
    let fundamentals = interp::fundamentals(xs)?;
    let incidences = line_incidences(xs);
    let pts = xs.nodes();
    let outcomes: Vec<std::result::Result<NodeCertificate, NotGcWitness>> = fundamentals
        .into_par_iter()
        .map(|f| {
            let k = f.node_index;
            // A used line cannot pass through the node itself.
            let cands = incidences.keys().filter(|l| !is_incident(&pts[k], l));
            match factor_into_lines(&f.poly, cands) {
                Ok((lines, constant)) => {
                    let mut nc = NodeCertificate {
                        node: k,
                        constant,
                        lines,
                        witnesses: BTreeMap::new(),
                    };
                    nc.witnesses = nc
                        .distinct_lines()
                        .into_iter()
                        .map(|l| {
                            let w = incidences[&l]
                                .iter()
                                .copied()
                                .filter(|&j| !cofactor_value(&nc, &l, &pts[j]).is_zero())
                                .collect();
                            (l, w)
                        })
                        .collect();
                    Ok(nc)
                }
                Err(e) => Err(NotGcWitness {
                    node: k,
                    fundamental: f.poly,
                    residual_degree: match e {
                        Error::NotProductOfCandidateLines { residual_degree } => residual_degree,
                        _ => 0,
                    },
                }),
            }
        })
        .collect();
    let mut nodes = Vec::with_capacity(outcomes.len());
    for o in outcomes {
        match o {
            Ok(nc) => nodes.push(nc),
            Err(w) => return Ok(GcVerdict::NotGc(w)),
        }
    }
    Ok(GcVerdict::Certified(GCCertificate {
        nodeset: xs.clone(),
        nodes,
    }))
}

/// The distinct lines used by node `k`.
pub fn used_lines_of(cert: &GCCertificate, k: usize) -> Result<BTreeSet<Line>> {
    Ok(cert.node(k)?.distinct_lines())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{int, ratio, Point};

    fn l(a: i64, b: i64, c: i64) -> Line {
        Line::from_ints(a, b, c).unwrap()
    }

    fn set(n: usize, pts: &[(i64, i64)]) -> NodeSet {
        NodeSet::new(n, pts.iter().map(|&(x, y)| Point::from_ints(x, y)).collect()).unwrap()
    }

    #[test]
    fn candidate_counts() {
        assert_eq!(candidate_lines(&set(1, &[(0, 0), (1, 0), (0, 1)])).len(), 3);
        assert_eq!(candidate_lines(&set(1, &[(0, 0), (1, 1), (2, 2)])).len(), 1);
    }

    #[test]
    fn factor_examples() {
        let p = Poly::constant(int(2))
            .multiply_line(&l(1, -1, 0))
            .multiply_line(&l(1, 1, -1));
        let cands = [l(1, 0, 0), l(1, 1, -1), l(1, -1, 0)];
        let (lines, c) = factor_into_lines(&p, &cands).unwrap();
        assert_eq!(lines, vec![l(1, -1, 0), l(1, 1, -1)]);
        assert_eq!(c, int(2));

        let conic = Poly::from_terms(2, &[(int(1), 2, 0), (int(1), 0, 2), (int(-1), 0, 0)]);
        assert!(matches!(
            factor_into_lines(&conic, &cands),
            Err(Error::NotProductOfCandidateLines { residual_degree: 2 })
        ));
    }

    #[test]
    fn factor_with_multiplicity() {
        let p = Poly::constant(ratio(-3, 4))
            .multiply_line(&l(2, 1, -1))
            .multiply_line(&l(2, 1, -1))
            .multiply_line(&l(0, 1, 5));
        let (lines, c) = factor_into_lines(&p, &[l(0, 1, 5), l(2, 1, -1)]).unwrap();
        assert_eq!(lines, vec![l(0, 1, 5), l(2, 1, -1), l(2, 1, -1)]);
        assert_eq!(c, ratio(-3, 4));
    }

    #[test]
    fn constant_factors_trivially() {
        let (lines, c) = factor_into_lines(&Poly::constant(ratio(5, 3)), &[]).unwrap();
        assert!(lines.is_empty());
        assert_eq!(c, ratio(5, 3));
    }

    #[test]
    fn triangle_certificate() {
        let xs = set(1, &[(0, 0), (1, 0), (0, 1)]);
        let cert = certify_gc(&xs).unwrap().certificate().unwrap();
        cert.verify().unwrap();
        assert_eq!(used_lines_of(&cert, 0).unwrap(), [l(1, 1, -1)].into());
        assert_eq!(used_lines_of(&cert, 1).unwrap(), [l(1, 0, 0)].into());
        assert_eq!(cert.nodes[0].witnesses[&l(1, 1, -1)], vec![1, 2]);
    }

    #[test]
    fn non_poised_rejected() {
        assert_eq!(certify_gc(&set(1, &[(0, 0), (1, 1), (2, 2)])), Err(Error::NotPoised));
    }

    #[test]
    fn perturbed_gc2_is_not_gc() {
        // principal lattice of degree 2 (scaled) with one node moved off-pattern
        let xs = set(2, &[(0, 0), (2, 0), (4, 0), (0, 2), (3, 3), (0, 4)]);
        assert!(interp::is_poised(&xs));
        match certify_gc(&xs).unwrap() {
            GcVerdict::NotGc(w) => assert!(w.residual_degree >= 1),
            GcVerdict::Certified(_) => panic!("perturbed set certified"),
        }
    }
}
