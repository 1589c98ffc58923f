//! Exact linear algebra over `Q` and `F_p`.

mod matrix;
mod reduce;
mod scalar;
mod subspace;

pub use matrix::{Matrix, Vector};
pub use reduce::{bareiss, gauss_jordan, rref, rref_limited, rref_with, Echelon, ReduceConfig};
pub use scalar::{Field, Scalar};
pub use subspace::{
    image, kernel, kronecker, quotient, quotient_by_rows, rank, section_of_surjection, solve, Quotient, Subspace,
};

/// Basis vector `e_i` of length `n`.
pub fn unit_vector(field: Field, n: usize, i: usize) -> Vector {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn vector_strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}
