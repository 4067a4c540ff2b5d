//! Exact dense linear algebra over ℚ or 𝔽ₚ.
//!
//! Rational matrices are reduced with fraction-free (Bareiss) forward
//! elimination on an integer copy, followed by a single normalization and
//! back-substitution pass. Prime-field matrices use plain Gauss–Jordan. In
//! both cases the pivot in each column is the first non-zero entry at or
//! below the current row, so identical inputs give identical outputs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{common_denominator, BaseRing, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    base: BaseRing,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Reduced row echelon form together with its rank and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(base: BaseRing, rows: usize, cols: usize) -> Self {
        let base = base.field();
        ExactMatrix { base, rows, cols, entries: vec![base.zero(); rows * cols] }
    }

    pub fn identity(base: BaseRing, n: usize) -> Self {
        let mut m = Self::zeros(base, n, n);
        for i in 0..n {
            m.set(i, i, m.base.one());
        }
        m
    }

    /// Build from row vectors. Integer data is lifted to ℚ.
    pub fn from_rows(base: BaseRing, cols: usize, rows: &[Vec<Scalar>]) -> Result<Self> {
        let base_field = base.field();
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: row.len() });
            }
            for s in row {
                if !s.belongs_to(base_field) {
                    return Err(Error::BaseMismatch(base_field));
                }
                entries.push(s.clone());
            }
        }
        Ok(ExactMatrix { base: base_field, rows: rows.len(), cols, entries })
    }

    /// Build from column vectors.
    pub fn from_columns(base: BaseRing, rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Self::zeros(base, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, got: col.len() });
            }
            for (r, s) in col.iter().enumerate() {
                if !s.belongs_to(m.base) {
                    return Err(Error::BaseMismatch(m.base));
                }
                m.set(r, c, s.clone());
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::from_i64(BaseRing::Rational, v)).collect())
            .collect();
        Self::from_rows(BaseRing::Rational, cols, &data).expect("rectangular input")
    }

    pub fn base(&self) -> BaseRing {
        self.base
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.base.zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }
}

pub fn rref(m: &ExactMatrix) -> Rref {
    match m.base {
        BaseRing::Prime(_) => rref_gauss_jordan(m),
        _ => rref_fraction_free(m),
    }
}

fn rref_gauss_jordan(m: &ExactMatrix) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        swap_rows(&mut a.entries, a.cols, p, row);
        let inv = a.get(row, col).inv().expect("non-zero pivot");
        for c in col..a.cols {
            let v = a.get(row, c) * &inv;
            a.set(row, c, v);
        }
        for r in 0..a.rows {
            if r == row || a.get(r, col).is_zero() {
                continue;
            }
            let factor = a.get(r, col).clone();
            for c in col..a.cols {
                let v = a.get(r, c) - &(&factor * a.get(row, c));
                a.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    Rref { rank: pivots.len(), matrix: a, pivots }
}

fn rref_fraction_free(m: &ExactMatrix) -> Rref {
    let (rows, cols) = (m.rows, m.cols);
    // Clear denominators row by row; row scaling leaves the RREF unchanged.
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| {
            let row = m.row(r);
            let den = common_denominator(row);
            row.iter()
                .map(|s| {
                    let q = s.as_rational().expect("rational entry");
                    (q * BigRational::from_integer(den.clone())).to_integer()
                })
                .collect()
        })
        .collect();

    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut k = 0;
    for c in 0..cols {
        if k == rows {
            break;
        }
        let Some(p) = (k..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(p, k);
        for i in k + 1..rows {
            for j in c + 1..cols {
                let num = &a[k][c] * &a[i][j] - &a[i][c] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[k][c].clone();
        pivots.push(c);
        k += 1;
    }

    // Normalize pivot rows and clear above each pivot, bottom-up.
    let mut out: Vec<Vec<BigRational>> = a
        .into_iter()
        .map(|row| row.into_iter().map(BigRational::from_integer).collect())
        .collect();
    for (r, &pc) in pivots.iter().enumerate().rev() {
        let pivot = out[r][pc].clone();
        for v in out[r][pc..].iter_mut() {
            *v = &*v / &pivot;
        }
        for above in 0..r {
            if out[above][pc].is_zero() {
                continue;
            }
            let factor = out[above][pc].clone();
            for c in pc..cols {
                let delta = &factor * &out[r][c];
                out[above][c] -= delta;
            }
        }
    }
    let entries = out.into_iter().flatten().map(Scalar::Rat).collect();
    Rref {
        rank: pivots.len(),
        matrix: ExactMatrix { base: m.base, rows, cols, entries },
        pivots,
    }
}

fn swap_rows(entries: &mut [Scalar], cols: usize, a: usize, b: usize) {
    if a == b {
        return;
    }
    let (lo, hi) = (a.min(b), a.max(b));
    let (head, tail) = entries.split_at_mut(hi * cols);
    head[lo * cols..(lo + 1) * cols].swap_with_slice(&mut tail[..cols]);
}

/// A basis of the right kernel `{v : M v = 0}`, one vector per free column.
pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vec<Scalar>> {
    let red = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![m.base.zero(); m.cols];
            v[free] = m.base.one();
            for (r, &pc) in red.pivots.iter().enumerate() {
                v[pc] = -red.matrix.get(r, free);
            }
            v
        })
        .collect()
}

/// Some solution of `M x = b`, or `None` when the system is inconsistent.
pub fn solve(m: &ExactMatrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch { expected: m.rows, got: b.len() });
    }
    let mut aug = ExactMatrix::zeros(m.base, m.rows, m.cols + 1);
    for r in 0..m.rows {
        for c in 0..m.cols {
            aug.set(r, c, m.get(r, c).clone());
        }
        if !b[r].belongs_to(m.base) {
            return Err(Error::BaseMismatch(m.base));
        }
        aug.set(r, m.cols, b[r].clone());
    }
    let red = rref(&aug);
    if red.pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![m.base.zero(); m.cols];
    for (r, &pc) in red.pivots.iter().enumerate() {
        x[pc] = red.matrix.get(r, m.cols).clone();
    }
    let check = m.mul_vec(&x)?;
    assert_eq!(check, b, "solve produced a vector that does not verify");
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        Scalar::from_i64(BaseRing::Rational, v)
    }

    #[test]
    fn rref_examples() {
        let r = rref(&ExactMatrix::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!((r.rank, r.pivots.clone()), (1, vec![0]));
        assert_eq!(r.matrix, ExactMatrix::from_i64(&[&[1, 2], &[0, 0]]));

        let id = ExactMatrix::identity(BaseRing::Rational, 3);
        let r = rref(&id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.matrix, id);

        let r = rref(&ExactMatrix::from_i64(&[&[0, 1], &[1, 0]]));
        assert_eq!(r.rank, 2);
        assert_eq!(r.matrix, ExactMatrix::identity(BaseRing::Rational, 2));

        let empty = ExactMatrix::zeros(BaseRing::Rational, 0, 0);
        assert_eq!(rref(&empty).rank, 0);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&ExactMatrix::from_i64(&[&[1, 1]]));
        assert_eq!(k, vec![vec![q(-1), q(1)]]);
        assert!(kernel_basis(&ExactMatrix::identity(BaseRing::Rational, 4)).is_empty());
        assert_eq!(kernel_basis(&ExactMatrix::zeros(BaseRing::Rational, 2, 3)).len(), 3);
    }

    #[test]
    fn solve_examples() {
        let id = ExactMatrix::identity(BaseRing::Rational, 3);
        let b = vec![q(1), q(-2), Scalar::from_ratio(1, 3)];
        assert_eq!(solve(&id, &b).unwrap().unwrap(), b);

        let m = ExactMatrix::from_i64(&[&[1, 1]]);
        let x = solve(&m, &[q(2)]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), vec![q(2)]);

        let m = ExactMatrix::from_i64(&[&[1], &[1]]);
        assert!(solve(&m, &[q(1), q(2)]).unwrap().is_none());
        assert!(matches!(solve(&m, &[q(1)]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn prime_field_elimination() {
        let f = BaseRing::Prime(3);
        let rows: Vec<Vec<Scalar>> = vec![
            vec![Scalar::residue(1, 3), Scalar::residue(2, 3)],
            vec![Scalar::residue(2, 3), Scalar::residue(1, 3)],
        ];
        // second row = 2 * first row mod 3
        let m = ExactMatrix::from_rows(f, 2, &rows).unwrap();
        let r = rref(&m);
        assert_eq!(r.rank, 1);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).unwrap().iter().all(Scalar::is_zero));
    }

    #[test]
    fn base_mismatch_rejected() {
        let rows = vec![vec![Scalar::residue(1, 5)]];
        assert!(matches!(ExactMatrix::from_rows(BaseRing::Rational, 1, &rows), Err(Error::BaseMismatch(_))));
    }
}
