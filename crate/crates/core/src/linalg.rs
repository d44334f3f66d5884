//! Dense exact linear algebra over the rationals.
//!
//! Elimination clears denominators row by row and runs fraction-free
//! (Bareiss) elimination over the integers; only the final normalization to
//! reduced row-echelon form divides.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> RatMatrix {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(size, size);
        for i in 0..size {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows. Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> RatMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        RatMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Leading `k × k` block.
    pub fn leading(&self, k: usize) -> RatMatrix {
        RatMatrix::from_rows(
            (0..k)
                .map(|r| self.row(r)[..k].to_vec())
                .collect(),
        )
    }

    /// Rows scaled to integers; the row space is unchanged.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                row.iter()
                    .map(|v| v.numer() * (&lcm / v.denom()))
                    .collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        bareiss(self.integer_rows(), self.cols).pivots.len()
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return Rational::one();
        }
        // Undo the per-row integer scaling afterwards.
        let mut scale = Rational::one();
        for r in 0..self.rows {
            let lcm = self
                .row(r)
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            scale /= Rational::from_integer(lcm);
        }
        let echelon = bareiss(self.integer_rows(), self.cols);
        if echelon.pivots.len() < self.rows {
            return Rational::zero();
        }
        let last = echelon.rows[self.rows - 1][self.cols - 1].clone();
        let det = if echelon.swaps.is_multiple_of(2) { last } else { -last };
        Rational::from_integer(det) * scale
    }
}

struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    swaps: usize,
}

/// Fraction-free forward elimination. Pivot rows are chosen as the first row
/// (at or below the current one) with a nonzero entry in the column.
fn bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            swaps += 1;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..cols {
                let v = &pivot_row[c] * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    Echelon {
        rows: a,
        pivots,
        swaps,
    }
}

/// Reduced row-echelon form and the pivot columns.
pub fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let echelon = bareiss(m.integer_rows(), m.cols);
    let mut rows: Vec<Vec<Rational>> = echelon
        .rows
        .into_iter()
        .map(|r| r.into_iter().map(Rational::from_integer).collect())
        .collect();
    let pivots = echelon.pivots;
    for (k, &c) in pivots.iter().enumerate().rev() {
        let inv = rows[k][c].recip();
        for v in rows[k].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let (above, from) = rows.split_at_mut(k);
        let pivot_row = &from[0];
        for row in above.iter_mut() {
            let factor = row[c].clone();
            if factor.is_zero() {
                continue;
            }
            for (v, p) in row.iter_mut().zip(pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
    }
    let mut out = RatMatrix::zeros(m.rows, m.cols);
    for (r, row) in rows.into_iter().enumerate() {
        for (c, v) in row.into_iter().enumerate() {
            out.set(r, c, v);
        }
    }
    (out, pivots)
}

/// Basis of `{x : Mx = 0}`: one vector per free column, in column order,
/// with that free variable set to 1 and the other free variables 0.
pub fn nullspace(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); m.cols];
            v[f] = Rational::one();
            for (k, &c) in pivots.iter().enumerate() {
                v[c] = -r.get(k, f).clone();
            }
            v
        })
        .collect()
}

/// True when every leading principal minor is strictly positive.
pub fn is_positive_definite(m: &RatMatrix) -> bool {
    m.rows == m.cols && (1..=m.rows).all(|k| m.leading(k).determinant().is_positive())
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn rref_examples() {
        let id = RatMatrix::identity(3);
        assert_eq!(rref(&id), (id.clone(), vec![0, 1, 2]));

        let m = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(rref(&m), (RatMatrix::from_i64(&[&[1, 2], &[0, 0]]), vec![0]));

        let m = RatMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(rref(&m), (RatMatrix::identity(2), vec![0, 1]));
    }

    #[test]
    fn rref_with_fractions() {
        let m = RatMatrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 3), int(1)],
            vec![int(1), ratio(2, 3), int(3)],
        ]);
        let (r, p) = rref(&m);
        assert_eq!(p, vec![0, 2]);
        assert_eq!(r.row(0), &[int(1), ratio(2, 3), int(0)]);
        assert_eq!(r.row(1), &[int(0), int(0), int(1)]);
    }

    #[test]
    fn nullspace_examples() {
        let m = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(nullspace(&m), vec![vec![int(-2), int(1)]]);
        assert!(nullspace(&RatMatrix::identity(3)).is_empty());
        let z = RatMatrix::zeros(2, 3);
        assert_eq!(
            nullspace(&z),
            vec![
                vec![int(1), int(0), int(0)],
                vec![int(0), int(1), int(0)],
                vec![int(0), int(0), int(1)],
            ]
        );
    }

    #[test]
    fn determinants() {
        let m = RatMatrix::from_i64(&[&[0, 2, 1], &[1, 1, 0], &[3, 0, 1]]);
        // cofactor expansion along the first row: -2(1) + 1(-3)
        assert_eq!(m.determinant(), int(-5));
        let h = RatMatrix::from_rows(vec![
            vec![int(1), ratio(1, 2)],
            vec![ratio(1, 2), ratio(1, 3)],
        ]);
        assert_eq!(h.determinant(), ratio(1, 12));
        assert_eq!(RatMatrix::from_i64(&[&[1, 2], &[2, 4]]).determinant(), int(0));
    }

    #[test]
    fn definiteness() {
        assert!(is_positive_definite(&RatMatrix::identity(3)));
        assert!(!is_positive_definite(&RatMatrix::from_i64(&[
            &[1, 0, 0],
            &[0, 1, -2],
            &[0, -2, 1]
        ])));
    }
}
