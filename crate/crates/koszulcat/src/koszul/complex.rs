use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::category::Category;
use crate::error::{Error, Result};
use crate::linalg::{kernel, rank, solve, Field, Matrix};
use crate::validation::ValidationReport;

/// A bounded complex of graded functors, stored cellwise.
///
/// Term `k` of the vectors has homological index `lowest + k`; the
/// differential `diffs[k]` goes from term `k + 1` to term `k`. Every cell
/// `(x, e)` is an independent complex of vector spaces.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub field: Field,
    pub category: Arc<Category>,
    pub lowest: isize,
    /// `dims[term][x][e]`
    pub dims: Vec<Vec<Vec<usize>>>,
    /// `diffs[k][x][e]: term k+1 -> term k`
    pub diffs: Vec<Vec<Vec<Matrix>>>,
}

/// Graded dimension table `[x][e]`.
pub type DimTable = Vec<Vec<usize>>;

impl ChainComplex {
    pub fn terms(&self) -> usize {
        self.dims.len()
    }

    pub fn top(&self) -> isize {
        self.lowest + self.terms() as isize - 1
    }

    pub fn levels(&self) -> usize {
        self.dims.first().and_then(|t| t.first()).map_or(0, Vec::len)
    }

    pub fn objects(&self) -> usize {
        self.category.object_count()
    }

    fn index(&self, p: isize) -> Option<usize> {
        (p >= self.lowest && p <= self.top()).then(|| (p - self.lowest) as usize)
    }

    pub fn dim(&self, p: isize, x: usize, e: usize) -> usize {
        self.index(p).map_or(0, |k| self.dims[k][x][e])
    }

    /// `d_p : C_p -> C_{p-1}` at a cell (zero outside the complex).
    pub fn diff(&self, p: isize, x: usize, e: usize) -> Matrix {
        match (self.index(p), self.index(p - 1)) {
            (Some(_), Some(k)) => self.diffs[k][x][e].clone(),
            _ => Matrix::zeros(self.field, self.dim(p - 1, x, e), self.dim(p, x, e)),
        }
    }

    /// `d ∘ d = 0` at every cell, as exact matrix identities.
    pub fn check_dd(&self) -> ValidationReport {
        let mut r = ValidationReport::new("d∘d = 0");
        for p in self.lowest + 2..=self.top() {
            for x in 0..self.objects() {
                for e in 0..self.levels() {
                    let dd = self.diff(p - 1, x, e).mul(&self.diff(p, x, e));
                    r.check("d∘d = 0", dd.is_zero(), || {
                        format!("d_{} d_{} at ({}, {e})", p - 1, p, self.category.objects[x])
                    });
                }
            }
        }
        r
    }

    /// `dim ker d_p - rank d_{p+1}` at one cell.
    pub fn homology_cell(&self, p: isize, x: usize, e: usize) -> usize {
        let n = self.dim(p, x, e);
        if n == 0 {
            return 0;
        }
        let kernel_dim = n - rank(&self.diff(p, x, e));
        kernel_dim - rank(&self.diff(p + 1, x, e))
    }

    /// Homology dimensions on the cells `e ≤ max_cell`, computed in parallel
    /// with deterministic output order.
    pub fn homology(&self, p: isize, max_cell: usize) -> DimTable {
        let levels = (max_cell + 1).min(self.levels());
        let cells: Vec<(usize, usize)> = (0..self.objects()).flat_map(|x| (0..levels).map(move |e| (x, e))).collect();
        let values: Vec<usize> = cells.par_iter().map(|&(x, e)| self.homology_cell(p, x, e)).collect();
        values.chunks(levels.max(1)).map(<[usize]>::to_vec).take(self.objects()).collect()
    }

    /// Cycles `ker d_p` at a cell, as columns.
    pub fn cycles(&self, p: isize, x: usize, e: usize) -> Matrix {
        kernel(&self.diff(p, x, e)).basis
    }

    /// A complex with one more term below: `target` with `map: C_lowest -> target`.
    pub fn augment(&self, target: DimTable, map: Vec<Vec<Matrix>>) -> ChainComplex {
        let mut dims = vec![target];
        dims.extend(self.dims.iter().cloned());
        let mut diffs = vec![map];
        diffs.extend(self.diffs.iter().cloned());
        ChainComplex { field: self.field, category: self.category.clone(), lowest: self.lowest - 1, dims, diffs }
    }

    /// A contracting homotopy `h` with `dh + hd = id` on the cells
    /// `e ≤ max_cell`, built from sections: `h_lowest` is a section of the
    /// first differential and `h_k` solves `d h_k = id - h_{k-1} d`.
    pub fn contracting_homotopy(&self, max_cell: usize) -> Result<Homotopy> {
        let levels = (max_cell + 1).min(self.levels());
        let cells: Vec<(usize, usize)> = (0..self.objects()).flat_map(|x| (0..levels).map(move |e| (x, e))).collect();
        let per_cell: Vec<Result<Vec<Matrix>>> = cells.par_iter().map(|&(x, e)| self.cell_homotopy(x, e)).collect();
        let mut maps = vec![vec![Vec::with_capacity(levels); self.objects()]; self.terms()];
        for ((x, _), h) in cells.iter().zip(per_cell) {
            for (k, m) in h?.into_iter().enumerate() {
                maps[k][*x].push(m);
            }
        }
        Ok(Homotopy { lowest: self.lowest, levels, maps })
    }

    fn cell_homotopy(&self, x: usize, e: usize) -> Result<Vec<Matrix>> {
        let field = self.field;
        let mut hs: Vec<Matrix> = Vec::with_capacity(self.terms());
        for k in 0..self.terms() {
            let p = self.lowest + k as isize;
            let n = self.dim(p, x, e);
            let d_up = self.diff(p + 1, x, e);
            let mut rhs = Matrix::identity(field, n);
            if k > 0 {
                rhs = rhs.sub(&hs[k - 1].mul(&self.diff(p, x, e)));
            }
            let h = solve(&d_up, &rhs).ok_or_else(|| {
                Error::NoSection(format!(
                    "no contracting homotopy at term {p}, cell ({}, {e}): the complex is not exact there",
                    self.category.objects[x]
                ))
            })?;
            hs.push(h);
        }
        Ok(hs)
    }

    /// Checks `d_{p+1} h_p + h_{p-1} d_p = id` on every term and cell.
    pub fn verify_homotopy(&self, h: &Homotopy) -> ValidationReport {
        let mut r = ValidationReport::new("contracting homotopy");
        for k in 0..self.terms() {
            let p = self.lowest + k as isize;
            for x in 0..self.objects() {
                for e in 0..h.levels {
                    let mut lhs = self.diff(p + 1, x, e).mul(&h.maps[k][x][e]);
                    if k > 0 {
                        lhs = lhs.add(&h.maps[k - 1][x][e].mul(&self.diff(p, x, e)));
                    }
                    r.check("dh + hd = id", lhs.is_identity(), || {
                        format!("term {p}, cell ({}, {e})", self.category.objects[x])
                    });
                }
            }
        }
        r
    }

    /// Every cell of every term is exact in the given range.
    pub fn is_exact(&self, max_cell: usize) -> bool {
        (self.lowest..=self.top()).all(|p| self.homology(p, max_cell).iter().flatten().all(|&h| h == 0))
    }
}

/// `maps[k][x][e]: C_{lowest+k} -> C_{lowest+k+1}`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub lowest: isize,
    pub levels: usize,
    pub maps: Vec<Vec<Vec<Matrix>>>,
}

/// Summary of a homotopy verification for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCertificate {
    pub cells_checked: usize,
    pub failures: usize,
    pub natural: Option<bool>,
}

impl SplitCertificate {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.natural.unwrap_or(true)
    }
}
