//! Fraction-free (Bareiss) elimination over the integers.
//!
//! Rational matrices are first scaled row by row to integer matrices; row
//! scaling preserves rank and the solution set of `A x = b` when applied to
//! the augmented row. Every division in the elimination is exact, so there
//! is no coefficient growth beyond the size of the minors involved.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::geom::Scalar;

pub type RationalMatrix = Vec<Vec<Scalar>>;

fn integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let den = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    row.iter().map(|c| c.numer() * (&den / c.denom())).collect()
}

/// Row echelon form produced by fraction-free elimination.
#[derive(Debug, Clone)]
pub struct Echelon {
    rows: Vec<Vec<BigInt>>,
    /// Column of each pivot, in row order.
    pivots: Vec<usize>,
}

impl Echelon {
    /// Eliminates using pivots from the first `pivot_cols` columns only;
    /// columns beyond are carried along (augmented right-hand sides).
    pub fn new(matrix: &[Vec<Scalar>], pivot_cols: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = matrix.iter().map(|r| integer_row(r)).collect();
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for col in 0..pivot_cols.min(width) {
            if r == height {
                break;
            }
            // Smallest nonzero entry keeps the intermediate minors short.
            let Some(p) = (r..height)
                .filter(|&i| !rows[i][col].is_zero())
                .min_by_key(|&i| rows[i][col].bits())
            else {
                continue;
            };
            rows.swap(r, p);
            let (head, tail) = rows.split_at_mut(r + 1);
            let pivot_row = &head[r];
            let pv = &pivot_row[col];
            for row in tail.iter_mut() {
                let f = std::mem::take(&mut row[col]);
                for j in col + 1..width {
                    let v = pv * &row[j] - &f * &pivot_row[j];
                    row[j] = v / &prev;
                }
            }
            // Entries left of `col` in lower rows are already zero.
            prev = pv.clone();
            pivots.push(col);
            r += 1;
        }
        Echelon { rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Rank of the full (pivot plus carried) matrix.
    pub fn augmented_rank(&self) -> usize {
        let r = self.rank();
        r + usize::from(self.rows[r..].iter().any(|row| row.iter().any(|v| !v.is_zero())))
    }

    /// Back-substitution for a nonsingular square system with `k` carried
    /// right-hand-side columns; returns one solution vector per column.
    pub fn solve(&self, n: usize) -> Option<Vec<Vec<Scalar>>> {
        if self.rank() != n || self.pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return None;
        }
        let width = self.rows.first().map_or(0, Vec::len);
        let rhs_count = width - n;
        let mut out = vec![vec![Scalar::zero(); n]; rhs_count];
        for (k, sol) in out.iter_mut().enumerate() {
            for i in (0..n).rev() {
                let row = &self.rows[i];
                let mut acc = Scalar::from_integer(row[n + k].clone());
                for j in i + 1..n {
                    if !row[j].is_zero() {
                        acc -= Scalar::from_integer(row[j].clone()) * &sol[j];
                    }
                }
                sol[i] = acc / Scalar::from_integer(row[i].clone());
            }
        }
        Some(out)
    }

    /// A nonzero vector in the kernel of the pivot block, if one exists.
    pub fn kernel_vector(&self, cols: usize) -> Option<Vec<Scalar>> {
        let free = (0..cols).find(|c| !self.pivots.contains(c))?;
        let mut x = vec![Scalar::zero(); cols];
        x[free] = Scalar::one();
        for (i, &pc) in self.pivots.iter().enumerate().rev() {
            let row = &self.rows[i];
            let mut acc = Scalar::zero();
            for j in pc + 1..cols {
                if !row[j].is_zero() {
                    acc -= Scalar::from_integer(row[j].clone()) * &x[j];
                }
            }
            x[pc] = acc / Scalar::from_integer(row[pc].clone());
        }
        Some(x)
    }
}

/// A basis of the kernel of `matrix`, one vector per free column.
pub fn nullspace(matrix: &[Vec<Scalar>], cols: usize) -> Vec<Vec<Scalar>> {
    let e = Echelon::new(matrix, cols);
    (0..cols)
        .filter(|c| !e.pivots.contains(c))
        .map(|free| {
            let mut x = vec![Scalar::zero(); cols];
            x[free] = Scalar::one();
            for (i, &pc) in e.pivots.iter().enumerate().rev() {
                let row = &e.rows[i];
                let mut acc = Scalar::zero();
                for j in pc + 1..cols {
                    if !row[j].is_zero() && !x[j].is_zero() {
                        acc -= Scalar::from_integer(row[j].clone()) * &x[j];
                    }
                }
                x[pc] = acc / Scalar::from_integer(row[pc].clone());
            }
            x
        })
        .collect()
}

pub fn rank(matrix: &[Vec<Scalar>]) -> usize {
    let cols = matrix.first().map_or(0, Vec::len);
    Echelon::new(matrix, cols).rank()
}

/// Solves `A X = B` for square nonsingular `A`; `rhs` lists the columns of `B`.
pub fn solve_square(a: &[Vec<Scalar>], rhs: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) || rhs.iter().any(|c| c.len() != n) {
        return None;
    }
    let augmented: RationalMatrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(rhs.iter().map(|col| col[i].clone()));
            r
        })
        .collect();
    Echelon::new(&augmented, n).solve(n)
}

/// Whether `A x = b` has a solution, by comparing ranks.
pub fn is_consistent(a: &[Vec<Scalar>], b: &[Scalar]) -> bool {
    let cols = a.first().map_or(0, Vec::len);
    let augmented: RationalMatrix = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let e = Echelon::new(&augmented, cols);
    e.rank() == e.augmented_rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{int, ratio};

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn rank_small() {
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&m(&[&[0, 1, 2], &[0, 2, 5], &[0, 0, 0]])), 2);
        assert_eq!(rank(&m(&[&[1, 0], &[0, 1], &[1, 1]])), 2);
        let with_fracs = vec![vec![ratio(1, 2), ratio(1, 3)], vec![ratio(3, 2), int(1)]];
        assert_eq!(rank(&with_fracs), 1);
    }

    #[test]
    fn solve_inverse() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let id: RationalMatrix = (0..3)
            .map(|k| (0..3).map(|i| int((i == k) as i64)).collect())
            .collect();
        let inv = solve_square(&a, &id).unwrap();
        for (k, col) in inv.iter().enumerate() {
            for (i, row) in a.iter().enumerate() {
                let dot: Scalar = row.iter().zip(col).map(|(x, y)| x * y).sum();
                assert_eq!(dot, int((i == k) as i64));
            }
        }
        assert!(solve_square(&m(&[&[1, 2], &[2, 4]]), &[vec![int(1), int(0)]]).is_none());
    }

    #[test]
    fn consistency_and_kernel() {
        let a = m(&[&[1, 1], &[2, 2]]);
        assert!(is_consistent(&a, &[int(1), int(2)]));
        assert!(!is_consistent(&a, &[int(1), int(0)]));
        let e = Echelon::new(&a, 2);
        let k = e.kernel_vector(2).unwrap();
        assert_eq!(&k[0] + &k[1], int(0));
        assert!(Echelon::new(&m(&[&[1, 0], &[0, 1]]), 2).kernel_vector(2).is_none());
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 7, 9]]);
        let basis = nullspace(&a, 4);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            for row in &a {
                assert_eq!(row.iter().zip(v).map(|(x, y)| x * y).sum::<Scalar>(), int(0));
            }
        }
    }
}
