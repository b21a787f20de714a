//! Vandermonde systems: poisedness, independence, fundamental polynomials
//! and Lagrange interpolation, all decided by exact rank and solve.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geom::{Point, Scalar};
use crate::linalg::{self, Echelon, RationalMatrix};
use crate::poly::{dim_pi, monomials, Poly, DEFAULT_MAX_DEGREE};

/// A finite set of distinct nodes tagged with an interpolation degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeSet {
    degree: usize,
    nodes: Vec<Point>,
    labels: Option<Vec<String>>,
}

impl NodeSet {
    pub fn new(degree: usize, nodes: Vec<Point>) -> Result<Self> {
        Self::with_labels(degree, nodes, None)
    }

    pub fn with_labels(degree: usize, nodes: Vec<Point>, labels: Option<Vec<String>>) -> Result<Self> {
        if degree > DEFAULT_MAX_DEGREE {
            return Err(Error::DegreeTooLarge(degree, DEFAULT_MAX_DEGREE));
        }
        let mut seen = std::collections::HashSet::with_capacity(nodes.len());
        for (i, p) in nodes.iter().enumerate() {
            if !seen.insert(p) {
                return Err(Error::DuplicateNode(i));
            }
        }
        if let Some(l) = &labels {
            if l.len() != nodes.len() {
                return Err(Error::LengthMismatch {
                    expected: nodes.len(),
                    got: l.len(),
                });
            }
        }
        Ok(NodeSet {
            degree,
            nodes,
            labels,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nodes(&self) -> &[Point] {
        &self.nodes
    }

    pub fn node(&self, k: usize) -> Result<&Point> {
        self.nodes.get(k).ok_or(Error::NodeIndex(k))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Image of the set under a point map; labels and degree carry over.
    pub fn map_points(&self, f: impl Fn(&Point) -> Point) -> Result<Self> {
        NodeSet::with_labels(
            self.degree,
            self.nodes.iter().map(f).collect(),
            self.labels.clone(),
        )
    }
}

/// Monomial values `x^i y^j` at `p`, graded-lex order, total degree ≤ `n`.
pub fn monomial_row(p: &Point, n: usize) -> Vec<Scalar> {
    let mut xp = vec![Scalar::one()];
    let mut yp = vec![Scalar::one()];
    for k in 1..=n {
        xp.push(&xp[k - 1] * &p.x);
        yp.push(&yp[k - 1] * &p.y);
    }
    monomials(n).map(|(i, j)| &xp[i] * &yp[j]).collect()
}

pub fn vandermonde_at(points: &[Point], n: usize) -> RationalMatrix {
    points.iter().map(|p| monomial_row(p, n)).collect()
}

/// One row per node, one column per monomial of degree ≤ `xs.degree()`.
pub fn vandermonde(xs: &NodeSet) -> RationalMatrix {
    vandermonde_at(&xs.nodes, xs.degree)
}

pub fn is_poised(xs: &NodeSet) -> bool {
    xs.len() == dim_pi(xs.degree) && linalg::rank(&vandermonde(xs)) == xs.len()
}

pub fn is_independent(xs: &NodeSet) -> bool {
    is_independent_at(xs.nodes(), xs.degree)
}

pub fn is_independent_at(points: &[Point], n: usize) -> bool {
    points.len() <= dim_pi(n) && linalg::rank(&vandermonde_at(points, n)) == points.len()
}

/// True when no node has a fundamental polynomial of degree `m`.
pub fn is_essentially_dependent(xs: &NodeSet, m: usize) -> bool {
    is_essentially_dependent_at(xs.nodes(), m)
}

pub fn is_essentially_dependent_at(points: &[Point], m: usize) -> bool {
    let v = vandermonde_at(points, m);
    (0..points.len()).all(|k| !has_fundamental(&v, k))
}

/// Whether the system "vanish at all other rows, 1 at row `k`" is feasible.
fn has_fundamental(v: &RationalMatrix, k: usize) -> bool {
    let rhs: Vec<Scalar> = (0..v.len()).map(|i| delta(i, k)).collect();
    linalg::is_consistent(v, &rhs)
}

fn delta(i: usize, k: usize) -> Scalar {
    if i == k {
        Scalar::one()
    } else {
        Scalar::zero()
    }
}

/// A fundamental polynomial together with the node it belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalSolution {
    pub node_index: usize,
    pub poly: Poly,
}

/// All fundamental polynomials of a poised set from one elimination.
pub fn fundamentals(xs: &NodeSet) -> Result<Vec<FundamentalSolution>> {
    let n = xs.len();
    if n != dim_pi(xs.degree) {
        return Err(Error::NotPoised);
    }
    // Coefficients c_k solve V c_k = e_k.
    let identity: RationalMatrix = (0..n).map(|k| (0..n).map(|i| delta(i, k)).collect()).collect();
    let cols = linalg::solve_square(&vandermonde(xs), &identity).ok_or(Error::NotPoised)?;
    cols.into_iter()
        .enumerate()
        .map(|(k, c)| {
            Ok(FundamentalSolution {
                node_index: k,
                poly: Poly::from_coeffs(xs.degree, c)?,
            })
        })
        .collect()
}

pub fn fundamental(xs: &NodeSet, k: usize) -> Result<FundamentalSolution> {
    xs.node(k)?;
    let n = xs.len();
    if n != dim_pi(xs.degree) {
        return Err(Error::NotPoised);
    }
    let e: Vec<Scalar> = (0..n).map(|i| delta(i, k)).collect();
    let mut sol = linalg::solve_square(&vandermonde(xs), &[e]).ok_or(Error::NotPoised)?;
    Ok(FundamentalSolution {
        node_index: k,
        poly: Poly::from_coeffs(xs.degree, sol.pop().unwrap())?,
    })
}

/// The unique polynomial of degree ≤ n taking `values` at the nodes.
pub fn interpolate(xs: &NodeSet, values: &[Scalar]) -> Result<Poly> {
    if values.len() != xs.len() {
        return Err(Error::LengthMismatch {
            expected: xs.len(),
            got: values.len(),
        });
    }
    if xs.len() != dim_pi(xs.degree) {
        return Err(Error::NotPoised);
    }
    let mut sol = linalg::solve_square(&vandermonde(xs), &[values.to_vec()]).ok_or(Error::NotPoised)?;
    Poly::from_coeffs(xs.degree, sol.pop().unwrap())
}

/// A nonzero polynomial of degree ≤ n vanishing at every node, if any.
pub fn annihilator(xs: &NodeSet) -> Option<Poly> {
    let cols = dim_pi(xs.degree);
    let v = vandermonde(xs);
    let e = Echelon::new(&v, cols);
    let k = if xs.is_empty() {
        let mut k = vec![Scalar::zero(); cols];
        k[0] = Scalar::one();
        k
    } else {
        e.kernel_vector(cols)?
    };
    Poly::from_coeffs(xs.degree, k).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{int, ratio};

    fn set(n: usize, pts: &[(i64, i64)]) -> NodeSet {
        NodeSet::new(n, pts.iter().map(|&(x, y)| Point::from_ints(x, y)).collect()).unwrap()
    }

    fn principal(n: usize) -> NodeSet {
        let mut pts = Vec::new();
        for i in 0..=n as i64 {
            for j in 0..=(n as i64 - i) {
                pts.push(Point::new(ratio(i, n as i64), ratio(j, n as i64)));
            }
        }
        NodeSet::new(n, pts).unwrap()
    }

    #[test]
    fn vandermonde_shapes() {
        assert_eq!(vandermonde(&set(0, &[(3, 4)])), vec![vec![int(1)]]);
        let v = vandermonde(&set(1, &[(0, 0), (1, 0), (0, 1)]));
        assert_eq!(
            v,
            vec![
                vec![int(1), int(0), int(0)],
                vec![int(1), int(1), int(0)],
                vec![int(1), int(0), int(1)]
            ]
        );
        let v5 = vandermonde(&principal(5));
        assert_eq!((v5.len(), v5[0].len()), (21, 21));
    }

    #[test]
    fn poisedness() {
        assert!(!is_poised(&set(1, &[(0, 0), (1, 1), (2, 2)])));
        assert!(is_poised(&set(1, &[(0, 0), (1, 0), (0, 1)])));
        assert!(is_poised(&principal(5)));
        assert!(!is_poised(&set(1, &[(0, 0), (1, 0)])));
    }

    #[test]
    fn fundamentals_small() {
        let xs = set(1, &[(0, 0), (1, 0), (0, 1)]);
        let p0 = fundamental(&xs, 0).unwrap().poly;
        assert_eq!(p0, Poly::from_terms(1, &[(int(1), 0, 0), (int(-1), 1, 0), (int(-1), 0, 1)]));
        assert_eq!(fundamental(&xs, 1).unwrap().poly, Poly::from_terms(1, &[(int(1), 1, 0)]));
        let bad = set(1, &[(0, 0), (1, 1), (2, 2)]);
        assert_eq!(fundamental(&bad, 0), Err(Error::NotPoised));
        assert_eq!(fundamental(&xs, 5), Err(Error::NodeIndex(5)));
    }

    #[test]
    fn kronecker_on_principal() {
        let xs = principal(4);
        for f in fundamentals(&xs).unwrap() {
            for (j, p) in xs.nodes().iter().enumerate() {
                assert_eq!(f.poly.evaluate(p), delta(j, f.node_index));
            }
        }
    }

    #[test]
    fn independence() {
        assert!(is_independent(&set(0, &[(5, 5)])));
        assert!(is_independent(&set(3, &[(5, 5)])));
        // n + 2 collinear nodes at degree n
        assert!(!is_independent(&set(2, &[(0, 0), (1, 1), (2, 2), (3, 3)])));
        let grid: Vec<(i64, i64)> = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).collect();
        assert!(!is_independent(&set(3, &grid)));
        // more nodes than the dimension
        assert!(!is_independent(&set(0, &[(0, 0), (1, 0)])));
    }

    #[test]
    fn essential_dependence() {
        assert!(!is_essentially_dependent(&set(0, &[(1, 2)]), 0));
        assert!(!is_essentially_dependent(&set(0, &[(1, 2)]), 3));
        let on_line: Vec<(i64, i64)> = (0..5).map(|t| (t, 2 * t + 1)).collect();
        assert!(is_essentially_dependent(&set(3, &on_line), 3));
        assert!(!is_essentially_dependent(&set(3, &on_line[..4]), 3));
        let grid: Vec<(i64, i64)> = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).collect();
        assert!(is_essentially_dependent(&set(3, &grid), 3));
        // the grid is dependent at degree 3 but not essentially so at degree 4
        assert!(!is_essentially_dependent(&set(3, &grid), 4));
    }

    #[test]
    fn interpolation() {
        let xs = principal(2);
        assert!(interpolate(&xs, &vec![int(0); 6]).unwrap().is_zero());
        let q = Poly::from_terms(2, &[(int(1), 2, 0), (int(-1), 0, 1)]);
        let vals: Vec<Scalar> = xs.nodes().iter().map(|p| q.evaluate(p)).collect();
        assert_eq!(interpolate(&xs, &vals).unwrap(), q);
        let e3: Vec<Scalar> = (0..6).map(|i| delta(i, 3)).collect();
        assert_eq!(interpolate(&xs, &e3).unwrap(), fundamental(&xs, 3).unwrap().poly);
        assert!(matches!(interpolate(&xs, &[int(1)]), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn annihilator_exists_iff_not_poised() {
        assert!(annihilator(&principal(3)).is_none());
        let bad = set(1, &[(0, 0), (1, 1), (2, 2)]);
        let p = annihilator(&bad).unwrap();
        assert!(!p.is_zero());
        assert!(bad.nodes().iter().all(|x| p.evaluate(x).is_zero()));
    }

    #[test]
    fn duplicate_nodes_rejected() {
        let r = NodeSet::new(1, vec![Point::from_ints(0, 0), Point::from_ints(0, 0)]);
        assert_eq!(r, Err(Error::DuplicateNode(1)));
    }
}
