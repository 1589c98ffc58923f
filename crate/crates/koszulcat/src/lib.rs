//! Exact computations with monoids in functor categories over finite,
//! strict, linear symmetric monoidal categories: Koszul complexes, regular
//! sequences, polynomial monoids, Hochschild cohomology and relative
//! syzygy resolutions.

pub mod error;
pub mod hochschild;
pub mod koszul;
pub mod category;
pub mod linalg;
pub mod monoid;
pub mod poly;
pub mod problem;
pub mod report;
pub mod syzygy;
pub mod tasks;
pub mod validation;

pub use error::{Error, Result};
