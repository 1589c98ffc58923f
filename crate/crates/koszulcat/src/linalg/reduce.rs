//! Row reduction to reduced row echelon form.
//!
//! Two paths produce the same (unique) RREF: sparse Gauss-Jordan for any
//! field, and fraction-free Bareiss-style Gauss-Jordan on integer rows for
//! dense rational input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::{axpy_row, Matrix, SparseRow};
use super::scalar::{integer_row, Field, Scalar};

/// Tuning knobs for elimination. Results never depend on them.
#[derive(Clone, Copy, Debug)]
pub struct ReduceConfig {
    /// Rational matrices at or above this density use the fraction-free path.
    pub dense_threshold: f64,
    /// Matrices with fewer entries than this always use the sparse path.
    pub dense_min_entries: usize,
}

impl Default for ReduceConfig {
    fn default() -> Self {
        ReduceConfig { dense_threshold: 0.3, dense_min_entries: 64 }
    }
}

/// Reduced row echelon form of a matrix.
///
/// `rows[i]` has a leading 1 in column `pivots[i]` and zeros in every other
/// pivot column. Pivots are only taken in columns `< pivot_limit`; rows that
/// survive elimination with support only at or beyond the limit are kept in
/// `residual`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub cols: usize,
    pub pivot_limit: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<SparseRow>,
    pub residual: Vec<SparseRow>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns below the pivot limit that carry no pivot.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.pivot_limit];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.pivot_limit).filter(|&j| !is_pivot[j]).collect()
    }
}

pub fn rref(m: &Matrix) -> Echelon {
    rref_with(m, m.cols(), ReduceConfig::default())
}

pub fn rref_limited(m: &Matrix, pivot_limit: usize) -> Echelon {
    rref_with(m, pivot_limit, ReduceConfig::default())
}

pub fn rref_with(m: &Matrix, pivot_limit: usize, config: ReduceConfig) -> Echelon {
    assert!(pivot_limit <= m.cols());
    let dense = m.field() == Field::Rational
        && m.nnz() >= config.dense_min_entries
        && m.density() >= config.dense_threshold;
    let e = if dense {
        bareiss(m, pivot_limit).unwrap_or_else(|| gauss_jordan(m, pivot_limit))
    } else {
        gauss_jordan(m, pivot_limit)
    };
    debug_assert!(e.rank() <= m.rows().min(m.cols()));
    e
}

/// Sparse Gauss-Jordan. Keeps the pivot rows fully reduced against each
/// other at all times, so reducing a new row is a single pass.
pub fn gauss_jordan(m: &Matrix, pivot_limit: usize) -> Echelon {
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; m.cols()];
    let mut pivots: Vec<usize> = Vec::new();
    let mut rows: Vec<SparseRow> = Vec::new();
    let mut residual: Vec<SparseRow> = Vec::new();

    for i in 0..m.rows() {
        let mut row: SparseRow = m.row(i).to_vec();
        let hits: Vec<(usize, Scalar)> = row
            .iter()
            .filter_map(|(j, v)| pivot_of_col[*j].map(|r| (r, v.clone())))
            .collect();
        for (r, c) in hits {
            row = axpy_row(&row, &c, &rows[r]);
        }
        if row.is_empty() {
            continue;
        }
        let Some(lead) = row.iter().position(|(j, _)| *j < pivot_limit) else {
            residual.push(row);
            continue;
        };
        let col = row[lead].0;
        let inv = row[lead].1.inv().expect("nonzero pivot");
        for (_, v) in row.iter_mut() {
            v.mul_assign_ref(&inv);
        }
        for other in rows.iter_mut() {
            if let Ok(k) = other.binary_search_by_key(&col, |(j, _)| *j) {
                let c = other[k].1.clone();
                *other = axpy_row(other, &c, &row);
            }
        }
        pivot_of_col[col] = Some(rows.len());
        pivots.push(col);
        rows.push(row);
    }
    sort_echelon(m.cols(), pivot_limit, pivots, rows, residual)
}

fn sort_echelon(
    cols: usize,
    pivot_limit: usize,
    pivots: Vec<usize>,
    rows: Vec<SparseRow>,
    residual: Vec<SparseRow>,
) -> Echelon {
    let mut order: Vec<usize> = (0..pivots.len()).collect();
    order.sort_by_key(|&k| pivots[k]);
    let mut rows: Vec<Option<SparseRow>> = rows.into_iter().map(Some).collect();
    Echelon {
        cols,
        pivot_limit,
        pivots: order.iter().map(|&k| pivots[k]).collect(),
        rows: order.iter().map(|&k| rows[k].take().unwrap()).collect(),
        residual,
    }
}

/// Fraction-free Gauss-Jordan on the integer matrix obtained by clearing
/// denominators row by row. Every intermediate entry is a minor of the
/// input, so all divisions are exact. Returns `None` if that ever fails to
/// hold, in which case the caller falls back to the sparse path.
pub fn bareiss(m: &Matrix, pivot_limit: usize) -> Option<Echelon> {
    let (nr, nc) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = m
        .to_dense()
        .into_iter()
        .map(|row| {
            let rat: Vec<BigRational> =
                row.iter().map(|s| s.as_rational().cloned().expect("rational matrix")).collect();
            integer_row(&rat)
        })
        .collect();
    let mut prev = BigInt::one();
    let mut r = 0usize;
    let mut pivots = Vec::new();
    for c in 0..pivot_limit {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let piv = a[r][c].clone();
        for i in 0..nr {
            if i == r {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..nc {
                if j == c {
                    continue;
                }
                let num = &piv * &a[i][j] - &f * &a[r][j];
                let (q, rem) = num.div_rem(&prev);
                if !rem.is_zero() {
                    return None;
                }
                a[i][j] = q;
            }
            a[i][c] = BigInt::zero();
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    let to_row = |ints: &[BigInt], scale: &BigInt| -> SparseRow {
        ints.iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (j, Scalar::Rational(BigRational::new(v.clone(), scale.clone()))))
            .collect()
    };
    let rows: Vec<SparseRow> =
        pivots.iter().enumerate().map(|(i, &c)| to_row(&a[i], &a[i][c])).collect();
    let residual: Vec<SparseRow> = a[r..]
        .iter()
        .map(|ints| to_row(ints, &BigInt::one()))
        .filter(|row| !row.is_empty())
        .collect();
    Some(Echelon { cols: nc, pivot_limit, pivots, rows, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn forced(m: &Matrix) -> (Echelon, Echelon) {
        (gauss_jordan(m, m.cols()), bareiss(m, m.cols()).expect("exact divisions"))
    }

    #[test]
    fn both_paths_agree_on_small_examples() {
        let q = Field::Rational;
        let samples = [
            Matrix::from_i64(q, &[&[2, 4, 1], &[1, 2, 3], &[3, 6, 4]]),
            Matrix::from_i64(q, &[&[0, 0, 1], &[0, 2, 0], &[5, 0, 0]]),
            Matrix::from_i64(q, &[&[1, 1], &[1, 1]]),
            Matrix::from_i64(q, &[&[0, 0], &[0, 0]]),
        ];
        for m in samples {
            let (g, b) = forced(&m);
            assert_eq!(g.pivots, b.pivots);
            assert_eq!(g.rows, b.rows);
        }
    }

    #[test]
    fn limited_pivots_keep_residual() {
        let q = Field::Rational;
        // [1 1 | 1], [1 1 | 2]: inconsistent system.
        let m = Matrix::from_i64(q, &[&[1, 1, 1], &[1, 1, 2]]);
        let e = gauss_jordan(&m, 2);
        assert_eq!(e.pivots, vec![0]);
        assert_eq!(e.residual.len(), 1);
        let b = bareiss(&m, 2).unwrap();
        assert_eq!(b.pivots, vec![0]);
        assert_eq!(b.residual.len(), 1);
    }

    #[test]
    fn prime_field_reduction() {
        let f = Field::prime(3).unwrap();
        // rows (1,1) and (1,-2) coincide mod 3
        let m = Matrix::from_i64(f, &[&[1, 1], &[1, -2]]);
        assert_eq!(rref(&m).rank(), 1);
    }
}
