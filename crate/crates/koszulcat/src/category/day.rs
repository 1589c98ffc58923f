use std::collections::HashMap;

use rayon::prelude::*;

use super::validate::check_shapes;
use super::{Category, Combo, Representation};
use crate::error::{Error, Result};
use crate::linalg::{quotient_by_rows, Matrix, Quotient, Scalar};

/// One summand `X(y_1◇...◇y_k, x) ⊗ F_1(y_1)_{d_1} ⊗ ... ⊗ F_k(y_k)_{d_k}`
/// of the coend presentation, restricted to a single basis morphism `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DayBlock {
    pub objects: Vec<usize>,
    pub degrees: Vec<usize>,
    pub morphism: usize,
    pub offset: usize,
    /// Dimensions of the factors; the tensor index has the first factor slowest.
    pub factor_dims: Vec<usize>,
}

impl DayBlock {
    pub fn size(&self) -> usize {
        self.factor_dims.iter().product()
    }

    /// Flat index of a multi-index within the block.
    pub fn tensor_index(&self, idx: &[usize]) -> usize {
        flat_index(&self.factor_dims, idx)
    }
}

/// Generators and the quotient onto `(F_1 ⊛ ... ⊛ F_k)(x)_d`.
#[derive(Clone, Debug)]
pub struct DayCell {
    pub blocks: Vec<DayBlock>,
    pub ambient: usize,
    pub quotient: Quotient,
    index: HashMap<(Vec<usize>, Vec<usize>, usize), usize>,
}

impl DayCell {
    pub fn dim(&self) -> usize {
        self.quotient.dim
    }

    pub fn block(&self, objects: &[usize], degrees: &[usize], morphism: usize) -> Option<&DayBlock> {
        self.index
            .get(&(objects.to_vec(), degrees.to_vec(), morphism))
            .map(|&b| &self.blocks[b])
    }
}

#[derive(Clone, Debug)]
pub struct DayProduct {
    pub factors: usize,
    /// `cells[x][d]`
    pub cells: Vec<Vec<DayCell>>,
    pub rep: Representation,
}

impl DayProduct {
    /// Class of `[h ⊗ v_1 ⊗ ... ⊗ v_k]` in `(⊛F)(x)_d`, where `h` is a
    /// combination in `hom(◇y, x)` and the `v_i` are vectors in `F_i(y_i)_{d_i}`.
    pub fn class_of(&self, x: usize, objects: &[usize], degrees: &[usize], h: &Combo, parts: &[&[Scalar]]) -> Vec<Scalar> {
        let d: usize = degrees.iter().sum();
        let cell = &self.cells[x][d];
        let field = self.rep.field;
        let mut amb = vec![field.zero(); cell.ambient];
        for (m, c) in h {
            let Some(block) = cell.block(objects, degrees, *m) else { continue };
            for_each_multi(&block.factor_dims, |idx| {
                let mut coeff = c.clone();
                for (i, &j) in idx.iter().enumerate() {
                    if coeff.is_zero() {
                        break;
                    }
                    coeff = &coeff * &parts[i][j];
                }
                if !coeff.is_zero() {
                    amb[block.offset + block.tensor_index(idx)] += &coeff;
                }
            });
        }
        cell.quotient.projection.mul_vec(&amb)
    }
}

/// `F ⊛ G`.
pub fn day_convolution(cat: &Category, f: &Representation, g: &Representation) -> Result<DayProduct> {
    day_convolution_many(cat, &[f, g])
}

/// `F_1 ⊛ ... ⊛ F_k` as a coend, computed cell by cell. All factors must
/// have the same number of degrees; the product degree is the sum.
pub fn day_convolution_many(cat: &Category, factors: &[&Representation]) -> Result<DayProduct> {
    if factors.is_empty() {
        return Err(Error::Input("Day convolution needs at least one factor".into()));
    }
    for f in factors {
        check_shapes(cat, f)?;
    }
    let levels = factors[0].levels();
    if factors.iter().any(|f| f.levels() != levels) {
        return Err(Error::Dimension("Day convolution factors have different degree counts".into()));
    }
    let n = cat.object_count();
    let cells_flat: Vec<DayCell> = (0..n * levels)
        .into_par_iter()
        .map(|c| build_cell(cat, factors, c / levels, c % levels))
        .collect();
    let mut cells: Vec<Vec<DayCell>> = Vec::with_capacity(n);
    let mut it = cells_flat.into_iter();
    for _ in 0..n {
        cells.push(it.by_ref().take(levels).collect());
    }

    let dims: Vec<Vec<usize>> = cells.iter().map(|row| row.iter().map(DayCell::dim).collect()).collect();
    let mut rep = Representation::constant_dims(cat, dims);
    for (chi, info) in cat.morphisms.iter().enumerate() {
        for d in 0..levels {
            let (src, dst) = (&cells[info.source][d], &cells[info.target][d]);
            let mut entries = Vec::new();
            for b in &src.blocks {
                let image = cat.compose(&cat.basis_combo(chi), &cat.basis_combo(b.morphism));
                for (m, c) in image {
                    let target = dst.block(&b.objects, &b.degrees, m).expect("block exists on both ends");
                    for t in 0..b.size() {
                        entries.push((target.offset + t, b.offset + t, c.clone()));
                    }
                }
            }
            let g = Matrix::from_triplets(cat.field, dst.ambient, src.ambient, entries);
            rep.actions[chi][d] = dst.quotient.projection.mul(&g).mul(&src.quotient.lift);
        }
    }
    Ok(DayProduct { factors: factors.len(), cells, rep })
}

fn build_cell(cat: &Category, factors: &[&Representation], x: usize, d: usize) -> DayCell {
    let k = factors.len();
    let n = cat.object_count();
    let field = cat.field;
    let mut blocks = Vec::new();
    let mut index = HashMap::new();
    let mut offset = 0;
    for_each_multi(&vec![n; k], |objects| {
        let src = cat.tensor_objs(objects);
        for_each_composition(d, k, |degrees| {
            let factor_dims: Vec<usize> =
                (0..k).map(|i| factors[i].dims[objects[i]][degrees[i]]).collect();
            let size: usize = factor_dims.iter().product();
            if size == 0 {
                return;
            }
            for &h in cat.hom(src, x) {
                index.insert((objects.to_vec(), degrees.to_vec(), h), blocks.len());
                blocks.push(DayBlock {
                    objects: objects.to_vec(),
                    degrees: degrees.to_vec(),
                    morphism: h,
                    offset,
                    factor_dims: factor_dims.clone(),
                });
                offset += size;
            }
        });
    });
    let ambient = offset;
    let cell = DayCell { blocks, ambient, quotient: quotient_by_rows(&Matrix::zeros(field, 0, ambient)), index };

    // [h ⊗ ..F_i(φ)f_i..] = [(h ∘ (id ◇ .. φ .. ◇ id)) ⊗ ..f_i..] for φ: w -> y_i.
    let mut rows: Vec<Vec<(usize, Scalar)>> = Vec::new();
    for b in &cell.blocks {
        for i in 0..k {
            let yi = b.objects[i];
            for w in 0..n {
                for &phi in cat.hom(w, yi) {
                    if cat.identity_id(yi) == Some(phi) {
                        continue;
                    }
                    let di = b.degrees[i];
                    let wdim = factors[i].dims[w][di];
                    if wdim == 0 {
                        continue;
                    }
                    let parts: Vec<Combo> = (0..k)
                        .map(|j| if j == i { cat.basis_combo(phi) } else { cat.identities[b.objects[j]].clone() })
                        .collect();
                    let h2 = cat.compose(&cat.basis_combo(b.morphism), &cat.tensor_mors(&parts));
                    let mut objects2 = b.objects.clone();
                    objects2[i] = w;
                    let mut src_dims = b.factor_dims.clone();
                    src_dims[i] = wdim;
                    let action = &factors[i].actions[phi][di];
                    for_each_multi(&src_dims, |idx| {
                        let mut row = Vec::new();
                        let mut moved = idx.to_vec();
                        for (r, c) in action.column(idx[i]).into_iter().enumerate() {
                            if !c.is_zero() {
                                moved[i] = r;
                                row.push((b.offset + b.tensor_index(&moved), c));
                            }
                        }
                        for (m, c) in &h2 {
                            let b2 = cell.block(&objects2, &b.degrees, *m).expect("source block exists");
                            row.push((b2.offset + b2.tensor_index(idx), -c));
                        }
                        rows.push(row);
                    });
                }
            }
        }
    }
    let entries = rows
        .iter()
        .enumerate()
        .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v.clone())));
    let relations = Matrix::from_triplets(field, rows.len(), ambient, entries);
    DayCell { quotient: quotient_by_rows(&relations), ..cell }
}

pub(crate) fn flat_index(dims: &[usize], idx: &[usize]) -> usize {
    dims.iter().zip(idx).fold(0, |acc, (&n, &i)| acc * n + i)
}

/// Calls `f` on every multi-index below `dims`, last coordinate fastest.
pub(crate) fn for_each_multi(dims: &[usize], mut f: impl FnMut(&[usize])) {
    if dims.contains(&0) {
        return;
    }
    let mut idx = vec![0; dims.len()];
    loop {
        f(&idx);
        let mut i = dims.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < dims[i] {
                break;
            }
            idx[i] = 0;
        }
    }
}

/// Calls `f` on every `k`-tuple of non-negative integers summing to `d`,
/// in lexicographic order.
pub(crate) fn for_each_composition(d: usize, k: usize, mut f: impl FnMut(&[usize])) {
    fn rec(rest: usize, slot: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if slot + 1 == cur.len() {
            cur[slot] = rest;
            f(cur);
            return;
        }
        for v in 0..=rest {
            cur[slot] = v;
            rec(rest - v, slot + 1, cur, f);
        }
    }
    if k == 0 {
        if d == 0 {
            f(&[]);
        }
        return;
    }
    let mut cur = vec![0; k];
    rec(d, 0, &mut cur, &mut f);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_in_order() {
        let mut seen = Vec::new();
        for_each_composition(2, 2, |c| seen.push(c.to_vec()));
        assert_eq!(seen, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn multi_indices_last_fastest() {
        let mut seen = Vec::new();
        for_each_multi(&[2, 2], |c| seen.push(c.to_vec()));
        assert_eq!(seen, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(flat_index(&[2, 3], &[1, 2]), 5);
    }
}
