//! Maximal line sequences and maximal distribution sequences.
//!
//! For a node `A` of a GC_n set, the n used lines are ordered greedily: each
//! next line is one covering the most nodes of `X ∖ {A}` not yet covered by
//! earlier lines. The number of newly covered nodes per step is the count
//! vector `(k_1, …, k_n)`. A node is *primary* for the first line of the
//! order containing it and *secondary* for later lines through it.
//!
//! Ties are broken by canonical line order, which makes [`greedy_mdseq`]
//! deterministic; [`enumerate_mdseqs`] explores every tie so determinism
//! cannot hide a second count vector.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gc::GCCertificate;
use crate::geom::{intersect, is_incident, Line, Point};
use crate::poly::{dim_pi, Poly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MLineSequence {
    pub node: usize,
    pub lines: Vec<Line>,
    pub counts: Vec<usize>,
    /// Node index → position of the line it is primary for.
    pub primary: BTreeMap<usize, usize>,
    /// All nodes of `X ∖ {A}` on each line, by position.
    pub line_nodes: Vec<Vec<usize>>,
    /// Nodes of `X ∖ {A}` on none of the lines (empty for GC sets).
    pub uncovered: Vec<usize>,
    pub fixed_first: Option<Line>,
    /// Size of the node set, for the `N − 1` law.
    pub set_size: usize,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MDSequence {
    pub counts: Vec<usize>,
}

fn nodes_on(points: &[Point], node: usize, l: &Line) -> Vec<usize> {
    points
        .iter()
        .enumerate()
        .filter(|&(j, p)| j != node && is_incident(p, l))
        .map(|(j, _)| j)
        .collect()
}

impl MLineSequence {
    /// Counts and primary assignment for `lines` taken in the given order.
    /// No greedy check is made; see [`MLineSequence::is_greedy`].
    pub fn with_order(
        points: &[Point],
        degree: usize,
        node: usize,
        lines: Vec<Line>,
        fixed_first: Option<Line>,
    ) -> Self {
        let line_nodes: Vec<Vec<usize>> = lines.iter().map(|l| nodes_on(points, node, l)).collect();
        let mut primary = BTreeMap::new();
        let mut counts = Vec::with_capacity(lines.len());
        for (pos, on) in line_nodes.iter().enumerate() {
            let mut k = 0;
            for &j in on {
                if let std::collections::btree_map::Entry::Vacant(e) = primary.entry(j) {
                    e.insert(pos);
                    k += 1;
                }
            }
            counts.push(k);
        }
        let uncovered = (0..points.len())
            .filter(|j| *j != node && !primary.contains_key(j))
            .collect();
        MLineSequence {
            node,
            lines,
            counts,
            primary,
            line_nodes,
            uncovered,
            fixed_first,
            set_size: points.len(),
            degree,
        }
    }

    /// Greedy order over `lines`, optionally forcing a first line.
    pub fn greedy(
        points: &[Point],
        degree: usize,
        node: usize,
        lines: &BTreeSet<Line>,
        first: Option<&Line>,
    ) -> Self {
        let incid: BTreeMap<&Line, Vec<usize>> =
            lines.iter().map(|l| (l, nodes_on(points, node, l))).collect();
        let mut remaining: Vec<&Line> = lines.iter().collect();
        let mut covered: HashSet<usize> = HashSet::new();
        let mut order = Vec::with_capacity(lines.len());
        if let Some(f) = first {
            remaining.retain(|l| *l != f);
            covered.extend(nodes_on(points, node, f));
            order.push(f.clone());
        }
        while !remaining.is_empty() {
            // `remaining` is in canonical order; max_by_key keeps the last
            // maximum, so scan in reverse to keep the first.
            let (idx, _) = remaining
                .iter()
                .enumerate()
                .rev()
                .max_by_key(|(_, l)| incid[*l].iter().filter(|j| !covered.contains(j)).count())
                .unwrap();
            let l = remaining.remove(idx);
            covered.extend(incid[l].iter().copied());
            order.push(l.clone());
        }
        MLineSequence::with_order(points, degree, node, order, first.cloned())
    }

    pub fn mdsequence(&self) -> MDSequence {
        MDSequence {
            counts: self.counts.clone(),
        }
    }

    /// Nodes whose primary line is at `pos`.
    pub fn primary_nodes_of(&self, pos: usize) -> Vec<usize> {
        self.primary
            .iter()
            .filter(|&(_, &p)| p == pos)
            .map(|(&j, _)| j)
            .collect()
    }

    /// Nodes lying on the line at `pos` but primary for an earlier line.
    pub fn secondary_nodes_of(&self, pos: usize) -> Vec<usize> {
        self.line_nodes[pos]
            .iter()
            .copied()
            .filter(|j| self.primary.get(j) != Some(&pos))
            .collect()
    }

    fn greedy_start(&self) -> usize {
        usize::from(self.fixed_first.is_some() && self.lines.first() == self.fixed_first.as_ref())
    }

    /// No later line covers more uncovered nodes than the one chosen, at
    /// every step (from the second step on for a forced first line).
    pub fn is_greedy(&self) -> bool {
        let mut covered: HashSet<usize> = HashSet::new();
        for (pos, on) in self.line_nodes.iter().enumerate() {
            let new = |v: &Vec<usize>| v.iter().filter(|j| !covered.contains(j)).count();
            if pos >= self.greedy_start() {
                let k = new(on);
                if self.line_nodes[pos + 1..].iter().any(|v| new(v) > k) {
                    return false;
                }
            }
            covered.extend(on.iter().copied());
        }
        true
    }

    /// Violations of the count laws: non-increasing order, sum `N − 1`,
    /// and every count at least 2.
    pub fn law_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let start = self.greedy_start();
        for i in 1..self.counts.len() {
            if i - 1 >= start && self.counts[i] > self.counts[i - 1] {
                out.push(format!("count increases at position {i}"));
            }
        }
        let sum: usize = self.counts.iter().sum();
        if sum != dim_pi(self.degree) - 1 || sum != self.set_size - 1 {
            out.push(format!("counts sum to {sum}, expected {}", dim_pi(self.degree) - 1));
        }
        for (i, &k) in self.counts.iter().enumerate() {
            if k < 2 {
                out.push(format!("position {i} has {k} primary nodes"));
            }
        }
        out
    }
}

fn node_lines(cert: &GCCertificate, k: usize) -> Result<BTreeSet<Line>> {
    let nc = cert.node(k)?;
    if nc.has_multiplicity() {
        return Err(Error::MultiplicityPresent(k));
    }
    Ok(nc.distinct_lines())
}

pub fn greedy_mdseq(cert: &GCCertificate, k: usize) -> Result<MLineSequence> {
    let lines = node_lines(cert, k)?;
    let xs = &cert.nodeset;
    Ok(MLineSequence::greedy(xs.nodes(), xs.degree(), k, &lines, None))
}

pub fn fixed_first_mdseq(cert: &GCCertificate, k: usize, l: &Line) -> Result<MLineSequence> {
    let lines = node_lines(cert, k)?;
    if !lines.contains(l) {
        return Err(Error::LineNotUsed(l.to_string()));
    }
    let xs = &cert.nodeset;
    Ok(MLineSequence::greedy(xs.nodes(), xs.degree(), k, &lines, Some(l)))
}

/// Every count vector reachable by resolving greedy ties in all possible ways.
pub fn enumerate_mdseqs(cert: &GCCertificate, k: usize) -> Result<BTreeSet<MDSequence>> {
    let lines: Vec<Line> = node_lines(cert, k)?.into_iter().collect();
    let pts = cert.nodeset.nodes();
    let incid: Vec<Vec<usize>> = lines.iter().map(|l| nodes_on(pts, k, l)).collect();
    Ok(enumerate_counts(&incid))
}

/// Exhaustive tie exploration over line incidence lists. A state is the set
/// of chosen lines plus the counts so far; identical states are expanded once.
pub fn enumerate_counts(incid: &[Vec<usize>]) -> BTreeSet<MDSequence> {
    let n = incid.len();
    let mut out = BTreeSet::new();
    let mut seen: HashSet<(Vec<bool>, Vec<usize>)> = HashSet::new();
    let mut stack: Vec<(Vec<bool>, Vec<usize>)> = vec![(vec![false; n], Vec::new())];
    while let Some((chosen, counts)) = stack.pop() {
        if counts.len() == n {
            out.insert(MDSequence { counts });
            continue;
        }
        let covered: HashSet<usize> = (0..n)
            .filter(|&i| chosen[i])
            .flat_map(|i| incid[i].iter().copied())
            .collect();
        let fresh: Vec<(usize, usize)> = (0..n)
            .filter(|&i| !chosen[i])
            .map(|i| (i, incid[i].iter().filter(|j| !covered.contains(j)).count()))
            .collect();
        let best = fresh.iter().map(|&(_, c)| c).max().unwrap();
        for &(i, c) in fresh.iter().filter(|&&(_, c)| c == best) {
            let mut ch = chosen.clone();
            ch[i] = true;
            let mut cs = counts.clone();
            cs.push(c);
            if seen.insert((ch.clone(), cs.clone())) {
                stack.push((ch, cs));
            }
        }
    }
    out
}

/// Checks the adjacent-swap property at positions `i` and `i + 1` of a
/// sequence whose counts agree there: the swapped order is still greedy, and
/// an intersection node of the two lines is secondary for both.
pub fn verify_swap_property(seq: &MLineSequence, points: &[Point], i: usize) -> Result<bool> {
    if i + 1 >= seq.counts.len() || seq.counts[i] != seq.counts[i + 1] {
        return Err(Error::CountsUnequal(i, i + 1));
    }
    let mut order = seq.lines.clone();
    order.swap(i, i + 1);
    let swapped = MLineSequence::with_order(points, seq.degree, seq.node, order, seq.fixed_first.clone());
    if !swapped.is_greedy() {
        return Ok(false);
    }
    if let Ok(p) = intersect(&seq.lines[i], &seq.lines[i + 1]) {
        if let Some(j) = points.iter().position(|q| *q == p) {
            if j != seq.node && seq.primary.get(&j).is_none_or(|&pos| pos >= i) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Iterated division of `p ∈ Π_{m−1}` by lines carrying `m, m−1, …` primary
/// zeros. `suffix[t]` is a line with the zeros assigned to it; zeros of a
/// line must avoid all earlier lines in the list.
pub fn primary_zero_divisibility(p: &Poly, suffix: &[(Line, Vec<Point>)]) -> Result<Poly> {
    let m = p.degree_bound() + 1;
    for (t, (l, zeros)) in suffix.iter().enumerate() {
        let want = m.checked_sub(t).filter(|w| *w > 0).ok_or_else(|| {
            Error::PrimaryZeros(format!("too many lines for a polynomial of degree {}", m - 1))
        })?;
        let distinct: BTreeSet<&Point> = zeros.iter().collect();
        if distinct.len() != want || zeros.len() != want {
            return Err(Error::PrimaryZeros(format!(
                "line {t} has {} distinct zeros, expected {want}",
                distinct.len()
            )));
        }
        for z in zeros {
            if !is_incident(z, l) {
                return Err(Error::PrimaryZeros(format!("{z} is not on line {l}")));
            }
            if suffix[..t].iter().any(|(e, _)| is_incident(z, e)) {
                return Err(Error::PrimaryZeros(format!("{z} lies on an earlier line")));
            }
            if !p.evaluate(z).is_zero() {
                return Err(Error::PrimaryZeros(format!("polynomial does not vanish at {z}")));
            }
        }
    }
    let mut r = p.clone();
    for (l, _) in suffix {
        if r.is_zero() {
            // Lower-degree zero polynomial: the remaining divisions are trivial.
            let d = r.degree_bound().saturating_sub(1);
            r = Poly::zero(d);
            continue;
        }
        r = r.divide_by_line(l)?;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gc::certify_gc;
    use crate::gen::{generate, nodes_of_lines, GeneratorKind, GeneratorSpec};
    use crate::geom::{int, ratio};

    fn l(a: i64, b: i64, c: i64) -> Line {
        Line::from_ints(a, b, c).unwrap()
    }

    fn pts(v: &[(i64, i64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::from_ints(x, y)).collect()
    }

    fn cy(n: usize, seed: u64) -> GCCertificate {
        generate(&GeneratorSpec::new(GeneratorKind::ChungYao, n, seed)).unwrap().certificate
    }

    #[test]
    fn chung_yao_counts() {
        for (n, expect) in [(2, vec![3, 2]), (3, vec![4, 3, 2]), (5, vec![6, 5, 4, 3, 2])] {
            let cert = cy(n, 7);
            for k in 0..cert.nodes.len() {
                let s = greedy_mdseq(&cert, k).unwrap();
                assert_eq!(s.counts, expect);
                assert!(s.is_greedy());
                assert!(s.law_violations().is_empty());
                assert!(s.uncovered.is_empty());
            }
        }
    }

    #[test]
    fn chung_yao_unique_mdseq() {
        let cert = cy(3, 11);
        let all = enumerate_mdseqs(&cert, 0).unwrap();
        assert_eq!(all.into_iter().collect::<Vec<_>>(), vec![MDSequence { counts: vec![4, 3, 2] }]);
        let c1 = cy(1, 5);
        assert_eq!(enumerate_mdseqs(&c1, 2).unwrap().len(), 1);
    }

    #[test]
    fn fixed_first() {
        let cert = cy(5, 3);
        for l in cert.nodes[4].distinct_lines() {
            let s = fixed_first_mdseq(&cert, 4, &l).unwrap();
            assert_eq!(s.lines[0], l);
            assert_eq!(s.counts, vec![6, 5, 4, 3, 2]);
        }
        let not_used = cert.nodes[5].lines.iter().find(|m| !cert.nodes[4].lines.contains(m));
        if let Some(m) = not_used {
            assert!(matches!(fixed_first_mdseq(&cert, 4, m), Err(Error::LineNotUsed(_))));
        }
    }

    #[test]
    fn multiplicity_is_reported() {
        let mut cert = cy(2, 1);
        let dup = cert.nodes[0].lines[0].clone();
        cert.nodes[0].lines = vec![dup.clone(), dup];
        assert_eq!(greedy_mdseq(&cert, 0), Err(Error::MultiplicityPresent(0)));
        assert_eq!(enumerate_mdseqs(&cert, 0), Err(Error::MultiplicityPresent(0)));
    }

    #[test]
    fn swap_with_equal_counts_and_shared_primary() {
        // x+y=2 first, then x=1 and y=1 with three new nodes each; their
        // intersection (1,1) is primary for the first line.
        let mut p = pts(&[(9, 9)]);
        p.extend(pts(&[(1, 1), (0, 2), (2, 0), (3, -1), (-1, 3)]));
        p.extend(pts(&[(1, 2), (1, 3), (1, 4)]));
        p.extend(pts(&[(2, 1), (3, 1), (4, 1)]));
        let lines: BTreeSet<Line> = [l(1, 1, -2), l(1, 0, -1), l(0, 1, -1)].into();
        let s = MLineSequence::greedy(&p, 3, 0, &lines, None);
        assert_eq!(s.counts, vec![5, 3, 3]);
        assert!(verify_swap_property(&s, &p, 1).unwrap());
        assert_eq!(verify_swap_property(&s, &p, 0), Err(Error::CountsUnequal(0, 1)));
    }

    #[test]
    fn swap_rejects_corrupted_order() {
        // Lines with equal counts whose intersection node is primary for the
        // first of them: only possible in a non-greedy order.
        let mut p = pts(&[(9, 9)]);
        p.extend(pts(&[(1, 1), (1, 2), (1, 3)]));
        p.extend(pts(&[(2, 1), (3, 1), (4, 1)]));
        p.extend(pts(&[(5, 5), (6, 6)]));
        let order = vec![l(1, 0, -1), l(0, 1, -1), l(1, -1, 0)];
        let s = MLineSequence::with_order(&p, 3, 0, order, None);
        assert_eq!(s.counts, vec![3, 3, 2]);
        assert!(!s.is_greedy());
        assert!(!verify_swap_property(&s, &p, 0).unwrap());
    }

    #[test]
    fn primary_zero_single_and_double() {
        // p ∈ Π_4 with 5 zeros on y = 0
        let line = l(0, 1, 0);
        let r = Poly::from_terms(3, &[(int(2), 3, 0), (int(-1), 1, 1), (int(7), 0, 0)]);
        let p = r.multiply_line(&line);
        let zeros: Vec<Point> = (0..5).map(|t| Point::new(int(t), int(0))).collect();
        assert_eq!(primary_zero_divisibility(&p, &[(line.clone(), zeros.clone())]).unwrap(), r);

        // (5, 4) primary zeros on y = 0 then x = 1
        let second = l(1, 0, -1);
        let r2 = Poly::from_terms(2, &[(ratio(1, 3), 1, 1), (int(1), 0, 0)]);
        let p2 = r2.multiply_line(&second).multiply_line(&line);
        let z2: Vec<Point> = (1..5).map(|t| Point::new(int(1), int(t))).collect();
        let got = primary_zero_divisibility(&p2, &[(line.clone(), zeros.clone()), (second.clone(), z2.clone())]).unwrap();
        assert_eq!(got, r2);

        // a zero shared with the earlier line is not primary
        let mut bad = z2.clone();
        bad[0] = Point::new(int(1), int(0));
        assert!(matches!(
            primary_zero_divisibility(&p2, &[(line, zeros), (second, bad)]),
            Err(Error::PrimaryZeros(_))
        ));
    }

    #[test]
    fn principal_lattice_unique_sequences() {
        let g = generate(&GeneratorSpec::new(GeneratorKind::Principal, 4, 0)).unwrap();
        for k in 0..g.nodeset.len() {
            let all = enumerate_mdseqs(&g.certificate, k).unwrap();
            assert_eq!(all.len(), 1);
            assert_eq!(all.first().unwrap().counts, greedy_mdseq(&g.certificate, k).unwrap().counts);
        }
    }

    #[test]
    fn triangle_of_lines() {
        let xs = nodes_of_lines(1, &[l(1, 0, 0), l(0, 1, 0), l(1, 1, -1)]).unwrap();
        let cert = certify_gc(&xs).unwrap().certificate().unwrap();
        let s = greedy_mdseq(&cert, 0).unwrap();
        assert_eq!(s.counts, vec![2]);
    }
}
