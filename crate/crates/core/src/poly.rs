//! Dense bivariate polynomials of bounded total degree.
//!
//! Coefficients are stored in graded-lexicographic order: all monomials of
//! total degree `d` come before those of degree `d + 1`, and within degree
//! `d` the order is `x^d, x^(d-1) y, …, y^d`. For degree bound 2 the layout
//! is `1, x, y, x², xy, y²`. This order is global; certificates and
//! serialized polynomials depend on it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geom::{fmt_scalar, Line, Point, Scalar};

/// Largest degree accepted by node sets and generators unless overridden.
pub const DEFAULT_MAX_DEGREE: usize = 12;

/// Dimension of the space of polynomials of total degree at most `n`.
pub fn dim_pi(n: usize) -> usize {
    (n + 1) * (n + 2) / 2
}

/// Position of `x^i y^j` in the graded-lex coefficient table.
#[inline]
pub fn monomial_index(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

/// Exponent pairs `(i, j)` in table order for total degree up to `n`.
pub fn monomials(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=n).flat_map(|d| (0..=d).map(move |j| (d - j, j)))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    degree_bound: usize,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn zero(degree_bound: usize) -> Self {
        Poly {
            degree_bound,
            coeffs: vec![Scalar::zero(); dim_pi(degree_bound)],
        }
    }

    pub fn constant(c: Scalar) -> Self {
        Poly {
            degree_bound: 0,
            coeffs: vec![c],
        }
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    /// Builds a polynomial from its coefficient table.
    pub fn from_coeffs(degree_bound: usize, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() != dim_pi(degree_bound) {
            return Err(Error::LengthMismatch {
                expected: dim_pi(degree_bound),
                got: coeffs.len(),
            });
        }
        Ok(Poly {
            degree_bound,
            coeffs,
        })
    }

    /// Sum of `c · x^i y^j` terms.
    pub fn from_terms(degree_bound: usize, terms: &[(Scalar, usize, usize)]) -> Self {
        let mut p = Poly::zero(degree_bound);
        for (c, i, j) in terms {
            assert!(i + j <= degree_bound, "term exceeds degree bound");
            p.coeffs[monomial_index(*i, *j)] += c;
        }
        p
    }

    /// The linear polynomial of a line.
    pub fn from_line(l: &Line) -> Self {
        let mut p = Poly::zero(1);
        p.coeffs[0] = Scalar::from_integer(l.c().clone());
        p.coeffs[1] = Scalar::from_integer(l.a().clone());
        p.coeffs[2] = Scalar::from_integer(l.b().clone());
        p
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> &Scalar {
        &self.coeffs[monomial_index(i, j)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Highest total degree with a nonzero coefficient; `None` for zero.
    pub fn effective_degree(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .map(|k| monomials(self.degree_bound).nth(k).map(|(i, j)| i + j).unwrap())
    }

    /// Same polynomial viewed in a space with a different degree bound.
    pub fn with_degree_bound(&self, n: usize) -> Result<Self> {
        if let Some(d) = self.effective_degree() {
            if d > n {
                return Err(Error::DegreeTooLarge(d, n));
            }
        }
        let mut out = Poly::zero(n);
        let keep = dim_pi(n).min(self.coeffs.len());
        out.coeffs[..keep].clone_from_slice(&self.coeffs[..keep]);
        Ok(out)
    }

    pub fn evaluate(&self, pt: &Point) -> Scalar {
        // Horner in y for each power of x would need a reshuffle; the table is
        // small enough that precomputed powers are simpler.
        let n = self.degree_bound;
        let mut xp = Vec::with_capacity(n + 1);
        let mut yp = Vec::with_capacity(n + 1);
        xp.push(Scalar::one());
        yp.push(Scalar::one());
        for k in 1..=n {
            xp.push(&xp[k - 1] * &pt.x);
            yp.push(&yp[k - 1] * &pt.y);
        }
        monomials(n)
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .fold(Scalar::zero(), |acc, ((i, j), c)| acc + c * &xp[i] * &yp[j])
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Poly {
            degree_bound: self.degree_bound,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// `p · ℓ`, with degree bound raised by one.
    pub fn multiply_line(&self, l: &Line) -> Self {
        let (a, b, c) = (
            Scalar::from_integer(l.a().clone()),
            Scalar::from_integer(l.b().clone()),
            Scalar::from_integer(l.c().clone()),
        );
        let mut out = Poly::zero(self.degree_bound + 1);
        for ((i, j), t) in monomials(self.degree_bound).zip(&self.coeffs) {
            if t.is_zero() {
                continue;
            }
            out.coeffs[monomial_index(i + 1, j)] += &a * t;
            out.coeffs[monomial_index(i, j + 1)] += &b * t;
            out.coeffs[monomial_index(i, j)] += &c * t;
        }
        out
    }

    /// Exact quotient `r` with `p = ℓ · r`.
    ///
    /// Division with respect to the lex order in which the leading term of
    /// `ℓ` is `b·y` (or `a·x` when `b = 0`). A single polynomial is its own
    /// Gröbner basis, so `ℓ | p` exactly when the remainder, a polynomial in
    /// the other variable alone, vanishes.
    pub fn divide_by_line(&self, l: &Line) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.degree_bound == 0 {
            return Err(Error::NotDivisible);
        }
        let a = Scalar::from_integer(l.a().clone());
        let b = Scalar::from_integer(l.b().clone());
        let c = Scalar::from_integer(l.c().clone());
        let n = self.degree_bound;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::zero(); dim_pi(n - 1)];
        // Orient so that `lead` multiplies the eliminated variable `v` and
        // `other` multiplies the remaining variable `u`.
        let y_lead = !l.b().is_zero();
        let (lead, other) = if y_lead { (&b, &a) } else { (&a, &b) };
        let at = |u: usize, v: usize| {
            if y_lead {
                monomial_index(u, v)
            } else {
                monomial_index(v, u)
            }
        };
        for v in (1..=n).rev() {
            for u in (0..=n - v).rev() {
                let t = std::mem::take(&mut rem[at(u, v)]);
                if t.is_zero() {
                    continue;
                }
                let q = t / lead;
                if !other.is_zero() {
                    rem[at(u + 1, v - 1)] -= other * &q;
                }
                if !c.is_zero() {
                    rem[at(u, v - 1)] -= &c * &q;
                }
                quot[at(u, v - 1)] = q;
            }
        }
        if rem.iter().any(|r| !r.is_zero()) {
            return Err(Error::NotDivisible);
        }
        Ok(Poly {
            degree_bound: n - 1,
            coeffs: quot,
        })
    }

    /// Full product; degree bounds add.
    pub fn mul_poly(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.degree_bound + other.degree_bound);
        for ((i, j), s) in monomials(self.degree_bound).zip(&self.coeffs) {
            if s.is_zero() {
                continue;
            }
            for ((k, l), t) in monomials(other.degree_bound).zip(&other.coeffs) {
                if !t.is_zero() {
                    out.coeffs[monomial_index(i + k, j + l)] += s * t;
                }
            }
        }
        out
    }

    fn zip_with(&self, other: &Poly, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Poly {
        let n = self.degree_bound.max(other.degree_bound);
        let zero = Scalar::zero();
        let coeffs = (0..dim_pi(n))
            .map(|k| {
                f(
                    self.coeffs.get(k).unwrap_or(&zero),
                    other.coeffs.get(k).unwrap_or(&zero),
                )
            })
            .collect();
        Poly {
            degree_bound: n,
            coeffs,
        }
    }

    /// Coefficientwise equality regardless of degree bound.
    pub fn same_as(&self, other: &Poly) -> bool {
        (self - other).is_zero()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.mul_poly(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Scalar::one())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((i, j), c) in monomials(self.degree_bound).zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let mono = match (i, j) {
                (0, 0) => String::new(),
                _ => {
                    let xs = match i {
                        0 => String::new(),
                        1 => "x".into(),
                        _ => format!("x^{i}"),
                    };
                    let ys = match j {
                        0 => String::new(),
                        1 => "y".into(),
                        _ => format!("y^{j}"),
                    };
                    xs + &ys
                }
            };
            let neg = c.is_negative();
            let mag = c.abs();
            let body = if mono.is_empty() {
                fmt_scalar(&mag)
            } else if mag.is_one() {
                mono
            } else {
                format!("{}*{}", fmt_scalar(&mag), mono)
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Integer-coefficient polynomial used on the factoring hot path.
///
/// Over the integers, a primitive linear factor divides exactly when the
/// quotient is integral (Gauss's lemma), so a non-integral step rejects the
/// candidate immediately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct IntPoly {
    pub degree_bound: usize,
    pub coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Splits `p` into `content · primitive` with integer `primitive`.
    pub fn primitive_part(p: &Poly) -> (Scalar, IntPoly) {
        let den = p
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            g = BigInt::one();
        }
        let coeffs = ints.into_iter().map(|c| c / &g).collect();
        (
            Scalar::new(g, den),
            IntPoly {
                degree_bound: p.degree_bound,
                coeffs,
            },
        )
    }

    pub fn effective_degree(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .map(|k| monomials(self.degree_bound).nth(k).map(|(i, j)| i + j).unwrap())
    }

    /// Exact quotient by a primitive integer line, or `None`.
    pub fn divide_by_line(&self, l: &Line) -> Option<IntPoly> {
        let n = self.degree_bound;
        if n == 0 {
            return None;
        }
        let y_lead = !l.b().is_zero();
        let (lead, other) = if y_lead { (l.b(), l.a()) } else { (l.a(), l.b()) };
        let c = l.c();
        let at = |u: usize, v: usize| {
            if y_lead {
                monomial_index(u, v)
            } else {
                monomial_index(v, u)
            }
        };
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); dim_pi(n - 1)];
        for v in (1..=n).rev() {
            for u in (0..=n - v).rev() {
                let t = std::mem::take(&mut rem[at(u, v)]);
                if t.is_zero() {
                    continue;
                }
                let (q, r) = t.div_rem(lead);
                if !r.is_zero() {
                    return None;
                }
                if !other.is_zero() {
                    rem[at(u + 1, v - 1)] -= other * &q;
                }
                if !c.is_zero() {
                    rem[at(u, v - 1)] -= c * &q;
                }
                quot[at(u, v - 1)] = q;
            }
        }
        if rem.iter().any(|r| !r.is_zero()) {
            return None;
        }
        Some(IntPoly {
            degree_bound: n - 1,
            coeffs: quot,
        })
    }

    /// Drops the degree bound to the effective degree.
    pub fn trimmed(mut self) -> IntPoly {
        let d = self.effective_degree().unwrap_or(0);
        self.coeffs.truncate(dim_pi(d));
        self.degree_bound = d;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{int, ratio};

    fn line(a: i64, b: i64, c: i64) -> Line {
        Line::from_ints(a, b, c).unwrap()
    }

    #[test]
    fn dim_pi_values() {
        assert_eq!(dim_pi(0), 1);
        assert_eq!(dim_pi(2), 6);
        assert_eq!(dim_pi(5), 21);
        assert_eq!(monomials(2).collect::<Vec<_>>(), [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]);
        for (k, (i, j)) in monomials(6).enumerate() {
            assert_eq!(monomial_index(i, j), k);
        }
    }

    #[test]
    fn evaluate_examples() {
        let p = Poly::from_terms(2, &[(int(1), 2, 0), (int(1), 0, 1)]);
        assert_eq!(p.evaluate(&Point::from_ints(2, 3)), int(7));
        assert_eq!(Poly::zero(3).evaluate(&Point::new(ratio(1, 7), int(9))), int(0));
        let q = Poly::one().multiply_line(&line(1, -1, 0)).multiply_line(&line(1, 1, -1));
        assert_eq!(q.evaluate(&Point::new(ratio(1, 2), ratio(1, 2))), int(0));
    }

    #[test]
    fn multiply_line_examples() {
        assert_eq!(
            Poly::one().multiply_line(&line(1, -1, 0)),
            Poly::from_terms(1, &[(int(1), 1, 0), (int(-1), 0, 1)])
        );
        let x = Poly::from_terms(1, &[(int(1), 1, 0)]);
        assert_eq!(x.multiply_line(&line(0, 1, 0)), Poly::from_terms(2, &[(int(1), 1, 1)]));
        let s = Poly::from_terms(1, &[(int(1), 1, 0), (int(1), 0, 1)]);
        let expect = Poly::from_terms(
            2,
            &[
                (int(1), 2, 0),
                (int(2), 1, 1),
                (int(1), 0, 2),
                (int(-1), 1, 0),
                (int(-1), 0, 1),
            ],
        );
        assert_eq!(s.multiply_line(&line(1, 1, -1)), expect);
    }

    #[test]
    fn divide_examples() {
        let p = Poly::one().multiply_line(&line(1, -1, 0)).multiply_line(&line(1, 1, 0));
        assert_eq!(
            p.divide_by_line(&line(1, -1, 0)).unwrap(),
            Poly::from_terms(1, &[(int(1), 1, 0), (int(1), 0, 1)])
        );
        let q = Poly::from_terms(2, &[(int(1), 2, 0), (int(1), 0, 0)]);
        assert_eq!(q.divide_by_line(&line(1, 0, 0)), Err(Error::NotDivisible));
        assert_eq!(Poly::zero(2).divide_by_line(&line(1, 0, 0)), Err(Error::ZeroPolynomial));
        assert_eq!(Poly::constant(int(3)).divide_by_line(&line(1, 0, 0)), Err(Error::NotDivisible));
    }

    #[test]
    fn vertical_line_division() {
        let l = line(3, 0, -2);
        let r = Poly::from_terms(2, &[(ratio(1, 2), 0, 2), (int(-3), 1, 0), (int(5), 0, 0)]);
        assert_eq!(r.multiply_line(&l).divide_by_line(&l).unwrap(), r);
    }

    #[test]
    fn int_path_agrees() {
        let l1 = line(2, -3, 5);
        let l2 = line(0, 7, -1);
        let p = Poly::constant(ratio(-5, 6)).multiply_line(&l1).multiply_line(&l2);
        let (content, prim) = IntPoly::primitive_part(&p);
        let q = prim.divide_by_line(&l1).unwrap();
        assert!(q.divide_by_line(&l1).is_none());
        let r = q.divide_by_line(&l2).unwrap().trimmed();
        assert_eq!(r.degree_bound, 0);
        assert_eq!(content * Scalar::from_integer(r.coeffs[0].clone()), ratio(-5, 6));
    }

    #[test]
    fn display() {
        let p = Poly::from_terms(2, &[(int(1), 0, 0), (int(-1), 1, 0), (ratio(-2, 3), 1, 1)]);
        assert_eq!(p.to_string(), "1 - x - 2/3*xy");
        assert_eq!(Poly::zero(1).to_string(), "0");
        assert_eq!(p.effective_degree(), Some(2));
        assert_eq!(Poly::zero(4).effective_degree(), None);
    }
}
