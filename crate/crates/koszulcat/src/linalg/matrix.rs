use std::fmt;

use super::scalar::{Field, Scalar};

/// Dense coordinate vector.
pub type Vector = Vec<Scalar>;

/// Sparse row-major matrix over a single field.
///
/// Each row is a list of `(column, value)` pairs sorted by column with no
/// explicit zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Scalar)>>,
}

pub(crate) type SparseRow = Vec<(usize, Scalar)>;

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let one = field.one();
        Matrix {
            field,
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, one.clone())]).collect(),
        }
    }

    /// Build from dense rows. All rows must have length `cols`.
    pub fn from_dense(field: Field, rows: usize, cols: usize, values: Vec<Vec<Scalar>>) -> Matrix {
        assert_eq!(values.len(), rows, "row count");
        let data = values
            .into_iter()
            .map(|row| {
                assert_eq!(row.len(), cols, "column count");
                row.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Matrix { field, rows, cols, data }
    }

    /// Small integer matrices, mostly for tests and presets.
    pub fn from_i64(field: Field, values: &[&[i64]]) -> Matrix {
        let rows = values.len();
        let cols = values.first().map_or(0, |r| r.len());
        let dense = values
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Matrix::from_dense(field, rows, cols, dense)
    }

    /// Build from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets<I>(field: Field, rows: usize, cols: usize, entries: I) -> Matrix
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut data: Vec<SparseRow> = vec![Vec::new(); rows];
        for (i, j, v) in entries {
            assert!(i < rows && j < cols, "triplet ({i},{j}) outside {rows}x{cols}");
            data[i].push((j, v));
        }
        for row in &mut data {
            *row = normalize_row(std::mem::take(row));
        }
        Matrix { field, rows, cols, data }
    }

    pub(crate) fn from_sparse_rows(field: Field, cols: usize, data: Vec<SparseRow>) -> Matrix {
        Matrix { field, rows: data.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Matrix {
        let mut data: Vec<SparseRow> = vec![Vec::new(); rows];
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    data[i].push((j, v.clone()));
                }
            }
        }
        Matrix { field, rows, cols: columns.len(), data }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, Scalar)] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn density(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            return 0.0;
        }
        self.nnz() as f64 / (self.rows as f64 * self.cols as f64)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self
                .data
                .iter()
                .enumerate()
                .all(|(i, r)| r.len() == 1 && r[0].0 == i && r[0].1.is_one())
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vector> {
        self.data
            .iter()
            .map(|row| {
                let mut dense = vec![self.field.zero(); self.cols];
                for (j, v) in row {
                    dense[*j] = v.clone();
                }
                dense
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut data: Vec<SparseRow> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                data[*j].push((i, v.clone()));
            }
        }
        Matrix { field: self.field, rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "product of {}x{} and {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        assert_eq!(self.field, other.field, "mixed fields");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut terms: SparseRow = Vec::new();
                for (k, a) in row {
                    terms.extend(other.data[*k].iter().map(|(j, b)| (*j, a * b)));
                }
                normalize_row(terms)
            })
            .collect();
        Matrix { field: self.field, rows: self.rows, cols: other.cols, data }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "vector length");
        self.data
            .iter()
            .map(|row| {
                let mut acc = self.field.zero();
                for (j, a) in row {
                    if !v[*j].is_zero() {
                        acc += &(a * &v[*j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.combine(other, true)
    }

    fn combine(&self, other: &Matrix, subtract: bool) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sum");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| merge_rows(a, b, subtract))
            .collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        if c.is_zero() {
            return Matrix::zeros(self.field, self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|row| row.iter().map(|(j, v)| (*j, v * c)).collect())
            .collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Matrix, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        *self = self.add(&other.scale(c));
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&-self.field.one())
    }

    /// Horizontal concatenation `[a | b | ...]`.
    pub fn hstack(field: Field, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let mut data: Vec<SparseRow> = vec![Vec::new(); rows];
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row count");
            for (i, row) in b.data.iter().enumerate() {
                data[i].extend(row.iter().map(|(j, v)| (j + offset, v.clone())));
            }
            offset += b.cols;
        }
        Matrix { field, rows, cols: offset, data }
    }

    /// Vertical concatenation.
    pub fn vstack(field: Field, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let mut data = Vec::new();
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column count");
            data.extend(b.data.iter().cloned());
        }
        Matrix { field, rows: data.len(), cols, data }
    }

    pub fn block_diag(field: Field, blocks: &[&Matrix]) -> Matrix {
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::new();
        let mut offset = 0;
        for b in blocks {
            for row in &b.data {
                data.push(row.iter().map(|(j, v)| (j + offset, v.clone())).collect());
            }
            offset += b.cols;
        }
        Matrix { field, rows: data.len(), cols, data }
    }

    /// Write `block` into `self` with its top-left corner at `(r0, c0)`,
    /// adding to whatever is already there.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for (i, row) in block.data.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            let shifted: SparseRow = row.iter().map(|(j, v)| (j + c0, v.clone())).collect();
            let target = &mut self.data[r0 + i];
            *target = merge_rows(target, &shifted, false);
        }
    }

    /// Sub-matrix of the given row and column ranges.
    pub fn slice(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let data = self.data[rows.clone()]
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(j, _)| cols.contains(j))
                    .map(|(j, v)| (j - cols.start, v.clone()))
                    .collect()
            })
            .collect();
        Matrix { field: self.field, rows: rows.len(), cols: cols.len(), data }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let data = rows.iter().map(|&i| self.data[i].clone()).collect();
        Matrix { field: self.field, rows: rows.len(), cols: self.cols, data }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut position = vec![usize::MAX; self.cols];
        for (k, &j) in cols.iter().enumerate() {
            position[j] = k;
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut out: SparseRow = row
                    .iter()
                    .filter(|(j, _)| position[*j] != usize::MAX)
                    .map(|(j, v)| (position[*j], v.clone()))
                    .collect();
                out.sort_by_key(|(j, _)| *j);
                out
            })
            .collect();
        Matrix { field: self.field, rows: self.rows, cols: cols.len(), data }
    }

    /// Exact entries as strings, row by row (used in reports and witnesses).
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.to_dense()
            .into_iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect())
            .collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|v| match v {
                Scalar::Modular { value, .. } => value.to_string(),
                other => other.to_string(),
            }).collect();
            writeln!(f, "  [{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

pub(crate) fn normalize_row(mut row: SparseRow) -> SparseRow {
    row.sort_by_key(|(j, _)| *j);
    let mut out: SparseRow = Vec::with_capacity(row.len());
    for (j, v) in row {
        match out.last_mut() {
            Some((k, acc)) if *k == j => *acc += &v,
            _ => out.push((j, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

pub(crate) fn merge_rows(a: &[(usize, Scalar)], b: &[(usize, Scalar)], subtract: bool) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut k) = (0, 0);
    while i < a.len() || k < b.len() {
        let take_a = k >= b.len() || (i < a.len() && a[i].0 < b[k].0);
        let take_b = i >= a.len() || (k < b.len() && b[k].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = if subtract { -&b[k].1 } else { b[k].1.clone() };
            out.push((b[k].0, v));
            k += 1;
        } else {
            let v = if subtract { &a[i].1 - &b[k].1 } else { &a[i].1 + &b[k].1 };
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            k += 1;
        }
    }
    out
}

/// `a - c * b` for sparse rows.
pub(crate) fn axpy_row(a: &[(usize, Scalar)], c: &Scalar, b: &[(usize, Scalar)]) -> SparseRow {
    let scaled: SparseRow = b.iter().map(|(j, v)| (*j, c * v)).collect();
    merge_rows(a, &scaled, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let q = Field::Rational;
        let a = Matrix::from_i64(q, &[&[1, 2], &[0, 1]]);
        let b = Matrix::from_i64(q, &[&[1, 0], &[3, 1]]);
        assert_eq!(a.mul(&b), Matrix::from_i64(q, &[&[7, 2], &[3, 1]]));
        assert_eq!(a.transpose(), Matrix::from_i64(q, &[&[1, 0], &[2, 1]]));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn stacking_and_blocks() {
        let q = Field::Rational;
        let i2 = Matrix::identity(q, 2);
        let h = Matrix::hstack(q, 2, &[&i2, &i2]);
        assert_eq!(h.cols(), 4);
        let v = Matrix::vstack(q, 2, &[&i2, &i2]);
        assert_eq!(v.rows(), 4);
        let mut z = Matrix::zeros(q, 3, 3);
        z.add_block(1, 1, &i2);
        assert_eq!(z.get(2, 2), q.one());
        assert_eq!(z.slice(1..3, 1..3), i2);
        assert_eq!(Matrix::block_diag(q, &[&i2, &Matrix::identity(q, 1)]), Matrix::identity(q, 3));
    }

    #[test]
    fn triplets_sum_duplicates() {
        let q = Field::Rational;
        let m = Matrix::from_triplets(q, 1, 2, [(0, 1, q.from_i64(2)), (0, 1, q.from_i64(-2))]);
        assert!(m.is_zero());
    }
}
