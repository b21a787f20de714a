//! Exact rational plane geometry.
//!
//! Points carry arbitrary-precision rational coordinates. Lines are stored
//! as coprime integer triples `(a, b, c)` for the zero set of `a·x + b·y + c`
//! with the first nonzero coefficient positive, so two lines are equal
//! exactly when their triples are.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

/// Parses an integer or `p/q` literal into a [`Scalar`].
pub fn scalar(text: &str) -> Result<Scalar> {
    let bad = || Error::BadRational(text.to_string());
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

pub fn int(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Canonical `p/q` (or `p` for integers) rendering of a scalar.
pub fn fmt_scalar(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(int(x), int(y))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fmt_scalar(&self.x), fmt_scalar(&self.y))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl Line {
    /// Builds the canonical representative of `a·x + b·y + c = 0`.
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::DegenerateLine);
        }
        let g = a.gcd(&b).gcd(&c);
        let (mut a, mut b, mut c) = (a / &g, b / &g, c / &g);
        let lead = if !a.is_zero() { &a } else { &b };
        if lead.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        Ok(Line { a, b, c })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        Line::new(a.into(), b.into(), c.into())
    }

    /// Canonical line for rational coefficients.
    pub fn from_rational(a: &Scalar, b: &Scalar, c: &Scalar) -> Result<Self> {
        let l = a.denom().lcm(b.denom()).lcm(c.denom());
        let scale = |s: &Scalar| s.numer() * (&l / s.denom());
        Line::new(scale(a), scale(b), scale(c))
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    /// Value of `a·x + b·y + c` at `p`.
    pub fn eval(&self, p: &Point) -> Scalar {
        let a = Scalar::from_integer(self.a.clone());
        let b = Scalar::from_integer(self.b.clone());
        let c = Scalar::from_integer(self.c.clone());
        a * &p.x + b * &p.y + c
    }

    /// Two distinct rational points on the line (used for clipping and tests).
    pub fn sample_points(&self) -> (Point, Point) {
        // A point plus the direction (-b, a).
        let base = if !self.b.is_zero() {
            Point::new(Scalar::zero(), Scalar::new(-self.c.clone(), self.b.clone()))
        } else {
            Point::new(Scalar::new(-self.c.clone(), self.a.clone()), Scalar::zero())
        };
        let other = Point::new(
            &base.x - Scalar::from_integer(self.b.clone()),
            &base.y + Scalar::from_integer(self.a.clone()),
        );
        (base, other)
    }

    /// The point at parameter `t` along `base + t·(-b, a)`.
    pub fn point_at(&self, t: &Scalar) -> Point {
        let (base, _) = self.sample_points();
        Point::new(
            base.x - t * Scalar::from_integer(self.b.clone()),
            base.y + t * Scalar::from_integer(self.a.clone()),
        )
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.c)
    }
}

pub fn line_through(p: &Point, q: &Point) -> Result<Line> {
    if p == q {
        return Err(Error::IdenticalPoints);
    }
    // (y1 - y2) x + (x2 - x1) y + (x1 y2 - x2 y1) = 0
    let a = &p.y - &q.y;
    let b = &q.x - &p.x;
    let c = &p.x * &q.y - &q.x * &p.y;
    Line::from_rational(&a, &b, &c)
}

pub fn intersect(l1: &Line, l2: &Line) -> Result<Point> {
    if l1 == l2 {
        return Err(Error::IdenticalLines);
    }
    let det = &l1.a * &l2.b - &l2.a * &l1.b;
    if det.is_zero() {
        return Err(Error::Parallel);
    }
    let x = &l1.b * &l2.c - &l2.b * &l1.c;
    let y = &l2.a * &l1.c - &l1.a * &l2.c;
    Ok(Point::new(
        Scalar::new(x, det.clone()),
        Scalar::new(y, det),
    ))
}

pub fn is_incident(p: &Point, l: &Line) -> bool {
    l.eval(p).is_zero()
}

pub fn are_parallel(l1: &Line, l2: &Line) -> bool {
    (&l1.a * &l2.b - &l2.a * &l1.b).is_zero()
}

/// No two lines parallel and no three concurrent.
pub fn general_position(lines: &[Line]) -> Result<bool> {
    for (i, l) in lines.iter().enumerate() {
        if lines[i + 1..].contains(l) {
            return Err(Error::DuplicateLine(l.to_string()));
        }
    }
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let p = match intersect(&lines[i], &lines[j]) {
                Ok(p) => p,
                Err(_) => return Ok(false),
            };
            if lines[j + 1..].iter().any(|l| is_incident(&p, l)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
