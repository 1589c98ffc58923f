use super::matrix::{Matrix, Vector};
use super::reduce::{rref, rref_limited, Echelon};
use super::scalar::Field;
use crate::error::{Error, Result};

/// A subspace of `field^ambient` given by linearly independent columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: usize,
    /// `ambient x dim`, columns independent.
    pub basis: Matrix,
}

/// Quotient of a space by a subspace: `projection` is surjective with kernel
/// exactly the subspace and `projection * lift = id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub dim: usize,
    pub projection: Matrix,
    pub lift: Matrix,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::zeros(field, ambient, 0) }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::identity(field, ambient) }
    }

    /// Span of arbitrary (possibly dependent) columns, in canonical form.
    pub fn span(columns: &Matrix) -> Subspace {
        image(columns)
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn vectors(&self) -> Vec<Vector> {
        (0..self.dim()).map(|j| self.basis.column(j)).collect()
    }

    pub fn contains(&self, v: &[crate::linalg::Scalar]) -> bool {
        let col = Matrix::from_columns(self.field(), self.ambient, &[v.to_vec()]);
        self.contains_all(&col)
    }

    /// Every column of `m` lies in the subspace.
    pub fn contains_all(&self, m: &Matrix) -> bool {
        assert_eq!(m.rows(), self.ambient, "ambient mismatch");
        let stacked = Matrix::hstack(self.field(), self.ambient, &[&self.basis, m]);
        rank(&stacked) == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.contains_all(&other.basis)
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient
            && self.dim() == other.dim()
            && self.contains_subspace(other)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let stacked = Matrix::hstack(self.field(), self.ambient, &[&self.basis, &other.basis]);
        image(&stacked)
    }
}

pub fn rank(m: &Matrix) -> usize {
    // Eliminate along the shorter side.
    if m.rows() <= m.cols() {
        rref(m).rank()
    } else {
        rref(&m.transpose()).rank()
    }
}

fn kernel_from_echelon(field: Field, e: &Echelon) -> Subspace {
    let free = e.free_columns();
    let columns: Vec<Vector> = free
        .iter()
        .map(|&f| {
            let mut v = vec![field.zero(); e.cols];
            v[f] = field.one();
            for (row, &p) in e.rows.iter().zip(&e.pivots) {
                if let Ok(k) = row.binary_search_by_key(&f, |(j, _)| *j) {
                    v[p] = -&row[k].1;
                }
            }
            v
        })
        .collect();
    Subspace { ambient: e.cols, basis: Matrix::from_columns(field, e.cols, &columns) }
}

/// `{v : m v = 0}`. Basis vectors are indexed by the free columns of the
/// RREF in increasing order, so the first one is the lexicographically
/// first kernel vector in that canonical basis.
pub fn kernel(m: &Matrix) -> Subspace {
    let e = rref(m);
    let k = kernel_from_echelon(m.field(), &e);
    debug_assert_eq!(k.dim() + e.rank(), m.cols(), "rank-nullity");
    k
}

/// Column space of `m`, as the RREF rows of `m^T` turned into columns.
pub fn image(m: &Matrix) -> Subspace {
    let e = rref(&m.transpose());
    let basis = Matrix::from_sparse_rows(m.field(), m.rows(), e.rows).transpose();
    Subspace { ambient: m.rows(), basis }
}

/// Quotient of `field^ambient` by `sub`. The quotient basis is the set of
/// coordinate vectors outside the pivot columns of `sub`.
pub fn quotient(ambient: usize, sub: &Subspace) -> Result<Quotient> {
    if sub.ambient != ambient {
        return Err(Error::Dimension(format!(
            "subspace of a {}-dimensional space used in a {ambient}-dimensional quotient",
            sub.ambient
        )));
    }
    Ok(quotient_by_rows(&sub.basis.transpose()))
}

/// Quotient of `field^cols` by the row space of `relations`.
pub fn quotient_by_rows(relations: &Matrix) -> Quotient {
    let field = relations.field();
    let ambient = relations.cols();
    let e = rref(relations);
    let free = e.free_columns();
    let mut position = vec![usize::MAX; ambient];
    for (q, &j) in free.iter().enumerate() {
        position[j] = q;
    }
    let mut entries = Vec::new();
    for (q, &j) in free.iter().enumerate() {
        entries.push((q, j, field.one()));
    }
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        for (j, v) in row {
            if position[*j] != usize::MAX {
                entries.push((position[*j], p, -v));
            }
        }
    }
    let dim = free.len();
    let projection = Matrix::from_triplets(field, dim, ambient, entries);
    let lift = Matrix::from_triplets(
        field,
        ambient,
        dim,
        free.iter().enumerate().map(|(q, &j)| (j, q, field.one())),
    );
    Quotient { dim, projection, lift }
}

/// Solve `m x = b` for a matrix right-hand side; `None` if inconsistent.
/// Free variables are set to zero.
pub fn solve(m: &Matrix, b: &Matrix) -> Option<Matrix> {
    assert_eq!(m.rows(), b.rows(), "solve: row mismatch");
    let field = m.field();
    let aug = Matrix::hstack(field, m.rows(), &[m, b]);
    let e = rref_limited(&aug, m.cols());
    if e.residual.iter().any(|r| !r.is_empty()) {
        return None;
    }
    let mut entries = Vec::new();
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        for (j, v) in row {
            if *j >= m.cols() {
                entries.push((p, j - m.cols(), v.clone()));
            }
        }
    }
    Some(Matrix::from_triplets(field, m.cols(), b.cols(), entries))
}

/// Some `s` with `m s = id`.
pub fn section_of_surjection(m: &Matrix) -> Result<Matrix> {
    let id = Matrix::identity(m.field(), m.rows());
    solve(m, &id).ok_or_else(|| {
        Error::NoSection(format!(
            "{}x{} map of rank {} is not surjective",
            m.rows(),
            m.cols(),
            rank(m)
        ))
    })
}

/// Kronecker product; row `(i, k)` of the result is `i * b.rows() + k`,
/// i.e. the left factor is the slow index.
pub fn kronecker(a: &Matrix, b: &Matrix) -> Matrix {
    let field = a.field();
    let mut entries = Vec::with_capacity(a.nnz() * b.nnz());
    for i in 0..a.rows() {
        for (j, x) in a.row(i) {
            for k in 0..b.rows() {
                for (l, y) in b.row(k) {
                    entries.push((i * b.rows() + k, j * b.cols() + l, x * y));
                }
            }
        }
    }
    Matrix::from_triplets(field, a.rows() * b.rows(), a.cols() * b.cols(), entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&Matrix::zeros(q(), 2, 2)).dim(), 2);
        assert_eq!(kernel(&Matrix::identity(q(), 3)).dim(), 0);
        let k = kernel(&Matrix::from_i64(q(), &[&[1, 1]]));
        assert_eq!(k.dim(), 1);
        assert_eq!(k.vectors()[0], vec![q().from_i64(-1), q().from_i64(1)]);
        // same line as (1, -1)
        assert!(k.contains(&[q().from_i64(1), q().from_i64(-1)]));
    }

    #[test]
    fn image_examples() {
        assert_eq!(image(&Matrix::identity(q(), 4)).dim(), 4);
        assert_eq!(image(&Matrix::zeros(q(), 3, 2)).dim(), 0);
        assert_eq!(image(&Matrix::from_i64(q(), &[&[1, 1], &[1, 1]])).dim(), 1);
    }

    #[test]
    fn quotient_examples() {
        let t = quotient(3, &Subspace::zero(q(), 3)).unwrap();
        assert_eq!(t.dim, 3);
        assert!(t.projection.is_identity());
        assert_eq!(quotient(3, &Subspace::full(q(), 3)).unwrap().dim, 0);

        let line = Subspace::span(&Matrix::from_i64(q(), &[&[1], &[-1]]));
        let quo = quotient(2, &line).unwrap();
        assert_eq!(quo.dim, 1);
        assert!(quo.projection.mul(&line.basis).is_zero());
        assert!(quo.projection.mul(&quo.lift).is_identity());
        let s = section_of_surjection(&quo.projection).unwrap();
        assert!(quo.projection.mul(&s).is_identity());

        assert!(quotient(2, &Subspace::zero(q(), 3)).is_err());
    }

    #[test]
    fn section_examples() {
        assert!(section_of_surjection(&Matrix::identity(q(), 2)).unwrap().is_identity());
        let s = section_of_surjection(&Matrix::from_i64(q(), &[&[1, 0]])).unwrap();
        assert_eq!(s, Matrix::from_i64(q(), &[&[1], &[0]]));
        assert!(section_of_surjection(&Matrix::from_i64(q(), &[&[1, 1], &[1, 1]])).is_err());
    }

    #[test]
    fn kronecker_examples() {
        let c = Matrix::from_i64(q(), &[&[3]]);
        let m = Matrix::from_i64(q(), &[&[1, 2], &[0, 1]]);
        assert_eq!(kronecker(&c, &m), m.scale(&q().from_i64(3)));
        assert!(kronecker(&Matrix::identity(q(), 2), &Matrix::identity(q(), 3)).is_identity());
        let n = Matrix::from_i64(q(), &[&[0, 1], &[0, 0]]);
        assert_eq!(rank(&kronecker(&n, &n)), 1);
    }

    #[test]
    fn solve_reports_inconsistency() {
        let m = Matrix::from_i64(q(), &[&[1, 1], &[1, 1]]);
        assert!(solve(&m, &Matrix::from_i64(q(), &[&[1], &[2]])).is_none());
        let x = solve(&m, &Matrix::from_i64(q(), &[&[2], &[2]])).unwrap();
        assert_eq!(m.mul(&x), Matrix::from_i64(q(), &[&[2], &[2]]));
    }
}
