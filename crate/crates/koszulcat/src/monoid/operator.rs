use std::collections::BTreeMap;

use super::{Element, Module, Monoid};
use crate::error::{Error, Result};
use crate::linalg::{kronecker, Field, Matrix};

/// A natural family of linear maps between graded carriers, stored as
/// blocks `(x, from_level, to_level)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearOperator {
    pub field: Field,
    /// `source[x][level]`
    pub source: Vec<Vec<usize>>,
    pub target: Vec<Vec<usize>>,
    pub blocks: BTreeMap<(usize, usize, usize), Matrix>,
}

impl LinearOperator {
    pub fn zero(field: Field, source: Vec<Vec<usize>>, target: Vec<Vec<usize>>) -> LinearOperator {
        LinearOperator { field, source, target, blocks: BTreeMap::new() }
    }

    pub fn block(&self, x: usize, from: usize, to: usize) -> Matrix {
        self.blocks
            .get(&(x, from, to))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field, self.target[x][to], self.source[x][from]))
    }

    /// Levels `k` such that some block raises the level by exactly `k`.
    pub fn shifts(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.blocks.iter().filter(|(_, m)| !m.is_zero()).map(|(&(_, f, t), _)| t - f).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// The map on the whole of `x`, levels stacked in order.
    pub fn total(&self, x: usize) -> Matrix {
        let (so, to) = (offsets(&self.source[x]), offsets(&self.target[x]));
        let mut m = Matrix::zeros(self.field, self.target[x].iter().sum(), self.source[x].iter().sum());
        for (&(y, f, t), b) in &self.blocks {
            if y == x {
                m.add_block(to[t], so[f], b);
            }
        }
        m
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearOperator) -> LinearOperator {
        let mut blocks: BTreeMap<(usize, usize, usize), Matrix> = BTreeMap::new();
        for (&(x, f, m), b) in &other.blocks {
            for (&(_, _, t), a) in self.blocks.range((x, m, 0)..(x, m + 1, 0)) {
                let prod = a.mul(b);
                match blocks.get_mut(&(x, f, t)) {
                    Some(acc) => acc.add_scaled(&prod, &self.field.one()),
                    None => {
                        blocks.insert((x, f, t), prod);
                    }
                }
            }
        }
        LinearOperator { field: self.field, source: other.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn sub(&self, other: &LinearOperator) -> LinearOperator {
        let mut blocks = self.blocks.clone();
        for (k, b) in &other.blocks {
            let neg = -&self.field.one();
            match blocks.get_mut(k) {
                Some(acc) => acc.add_scaled(b, &neg),
                None => {
                    blocks.insert(*k, b.neg());
                }
            }
        }
        LinearOperator { field: self.field, source: self.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(Matrix::is_zero)
    }
}

fn offsets(dims: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    dims.iter()
        .map(|&n| {
            let o = acc;
            acc += n;
            o
        })
        .collect()
}

fn check_element(a: &Monoid, elt: &Element) -> Result<()> {
    if elt.object != a.unit_object() {
        return Err(Error::WrongObject(format!(
            "{} lives at {}, multiplication operators need an element of A({})",
            a.describe(elt),
            a.category.objects[elt.object],
            a.category.objects[a.unit_object()]
        )));
    }
    if elt.parts.len() != a.levels()
        || elt.parts.iter().enumerate().any(|(d, p)| p.len() != a.dim(elt.object, d))
    {
        return Err(Error::Dimension("element coordinates do not match the carrier".into()));
    }
    Ok(())
}

/// `L_a : M(x) -> M(x)`, `m ↦ a × m` for `a ∈ A(1)` (strict unit).
pub fn mult_operator(a: &Monoid, elt: &Element, m: &Module) -> Result<LinearOperator> {
    check_element(a, elt)?;
    let action = m.left.as_ref().ok_or_else(|| Error::Input(format!("{} has no left action", m.name)))?;
    Ok(build(a, elt, m, |x, k, d| {
        let p = action.block(a.unit_object(), k, x, d)?;
        let col = Matrix::from_columns(a.field(), elt.parts[k].len(), &[elt.parts[k].clone()]);
        Some(p.mul(&kronecker(&col, &Matrix::identity(a.field(), m.dim(x, d)))))
    }))
}

/// `R_a : M(x) -> M(x)`, `m ↦ m × a`.
pub fn right_mult_operator(a: &Monoid, elt: &Element, m: &Module) -> Result<LinearOperator> {
    check_element(a, elt)?;
    let action = m.right.as_ref().ok_or_else(|| Error::Input(format!("{} has no right action", m.name)))?;
    Ok(build(a, elt, m, |x, k, d| {
        let p = action.block(x, d, a.unit_object(), k)?;
        let col = Matrix::from_columns(a.field(), elt.parts[k].len(), &[elt.parts[k].clone()]);
        Some(p.mul(&kronecker(&Matrix::identity(a.field(), m.dim(x, d)), &col)))
    }))
}

fn build(
    a: &Monoid,
    elt: &Element,
    m: &Module,
    block: impl Fn(usize, usize, usize) -> Option<Matrix>,
) -> LinearOperator {
    let levels = m.levels();
    let mut op = LinearOperator::zero(a.field(), m.carrier.dims.clone(), m.carrier.dims.clone());
    for x in 0..a.category.object_count() {
        for k in elt.support() {
            for d in 0..levels.saturating_sub(k) {
                if let Some(b) = block(x, k, d) {
                    op.blocks.insert((x, d, d + k), b);
                }
            }
        }
    }
    op
}
