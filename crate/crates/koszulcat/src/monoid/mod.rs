//! Monoids in the functor category, given by pairings
//! `A(x)_{d1} ⊗ A(y)_{d2} -> A(x◇y)_{d1+d2}`, and their modules.

mod module;
mod operator;
pub mod presets;
mod regular;
mod validate;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::category::{Category, Representation};
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vector, kronecker, Field, Matrix, Scalar, Vector};
use crate::poly::PolyInfo;

pub use module::{cyclic_quotient, generated_submodule, identity_module, quotient_module, Action, GradedSubspace, Module, QuotientModule};
pub use operator::{mult_operator, right_mult_operator, LinearOperator};
pub(crate) use regular::image_of;
pub use regular::{is_regular, is_regular_sequence, RegularStage, RegularityCertificate, Witness};
pub use validate::{commutant, is_central, is_commutative, validate_module, validate_monoid};

/// `(x, d1, y, d2)`: the pairing block from `(x, d1) ⊗ (y, d2)`.
pub type PairKey = (usize, usize, usize, usize);

/// How internal degrees are stored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Grading {
    /// Ungraded; one level.
    Exact,
    /// Levels `0..=cap`; products landing above `cap` are dropped.
    Truncated { cap: usize },
    /// A truncated object with all levels collapsed into one.
    Totalized { cap: usize },
}

impl Grading {
    pub fn levels(self) -> usize {
        match self {
            Grading::Truncated { cap } => cap + 1,
            _ => 1,
        }
    }

    pub fn cap(self) -> Option<usize> {
        match self {
            Grading::Exact => None,
            Grading::Truncated { cap } | Grading::Totalized { cap } => Some(cap),
        }
    }
}

/// An element of `A(x)` (or `M(x)`), one coordinate vector per level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub object: usize,
    pub parts: Vec<Vector>,
}

impl Element {
    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| is_zero_vector(p))
    }

    /// Levels carrying a nonzero part.
    pub fn support(&self) -> Vec<usize> {
        (0..self.parts.len()).filter(|&d| !is_zero_vector(&self.parts[d])).collect()
    }

    /// The level of a homogeneous nonzero element.
    pub fn homogeneous_level(&self) -> Option<usize> {
        match self.support().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element {
            object: self.object,
            parts: self.parts.iter().map(|p| p.iter().map(|v| v * c).collect()).collect(),
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        assert_eq!(self.object, other.object, "adding elements at different objects");
        Element {
            object: self.object,
            parts: self
                .parts
                .iter()
                .zip(&other.parts)
                .map(|(a, b)| a.iter().zip(b).map(|(u, v)| u + v).collect())
                .collect(),
        }
    }

    pub fn neg(&self) -> Element {
        Element { object: self.object, parts: self.parts.iter().map(|p| p.iter().map(|v| -v).collect()).collect() }
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.neg())
    }
}

/// Per-basis-vector polynomial weights `[x][level][i]`.
pub type Weights = Vec<Vec<Vec<usize>>>;

pub(crate) fn default_weights(rep: &Representation, grading: Grading) -> Weights {
    rep.dims
        .iter()
        .map(|per| {
            per.iter()
                .enumerate()
                .map(|(d, &n)| vec![if matches!(grading, Grading::Truncated { .. }) { d } else { 0 }; n])
                .collect()
        })
        .collect()
}

/// A monoid in `Fun(X, Vect)` given by structure constants.
#[derive(Clone, Debug)]
pub struct Monoid {
    pub name: String,
    pub category: Arc<Category>,
    pub carrier: Representation,
    pub grading: Grading,
    pub unit: Element,
    /// Every key with `d1 + d2 < levels` is present.
    pub products: BTreeMap<PairKey, Matrix>,
    /// `labels[x][level][i]`
    pub labels: Vec<Vec<Vec<String>>>,
    pub weights: Weights,
    pub poly: Option<Arc<PolyInfo>>,
    /// Some product was dropped by truncation.
    pub truncated: bool,
}

impl Monoid {
    /// Assembles a monoid; missing pairing blocks are zero. No axioms are
    /// checked here (see [`validate_monoid`]).
    pub fn new(
        name: impl Into<String>,
        category: Arc<Category>,
        carrier: Representation,
        grading: Grading,
        unit: Element,
        mut products: BTreeMap<PairKey, Matrix>,
        labels: Option<Vec<Vec<Vec<String>>>>,
    ) -> Result<Monoid> {
        if carrier.levels() != grading.levels() {
            return Err(Error::Dimension(format!(
                "carrier has {} levels, grading expects {}",
                carrier.levels(),
                grading.levels()
            )));
        }
        crate::category::check_shapes(&category, &carrier)?;
        let field = carrier.field;
        let levels = grading.levels();
        let n = category.object_count();
        if unit.object != category.unit || unit.parts.len() != levels {
            return Err(Error::WrongObject("the unit must live at the unit object".into()));
        }
        for (d, p) in unit.parts.iter().enumerate() {
            if p.len() != carrier.dims[unit.object][d] {
                return Err(Error::Dimension("unit has the wrong length".into()));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = category.tensor_obj(x, y);
                for d1 in 0..levels {
                    for d2 in 0..levels - d1 {
                        let shape = (
                            carrier.dims[xy][d1 + d2],
                            carrier.dims[x][d1] * carrier.dims[y][d2],
                        );
                        let m = products
                            .entry((x, d1, y, d2))
                            .or_insert_with(|| Matrix::zeros(field, shape.0, shape.1));
                        if (m.rows(), m.cols()) != shape {
                            return Err(Error::Dimension(format!(
                                "pairing ({}, {}) in degrees ({d1}, {d2}) is {}x{}, expected {}x{}",
                                category.objects[x],
                                category.objects[y],
                                m.rows(),
                                m.cols(),
                                shape.0,
                                shape.1
                            )));
                        }
                    }
                }
            }
        }
        products.retain(|&(_, d1, _, d2), _| d1 + d2 < levels);
        let labels = labels.unwrap_or_else(|| default_labels(&carrier));
        let weights = default_weights(&carrier, grading);
        Ok(Monoid {
            name: name.into(),
            category,
            carrier,
            grading,
            unit,
            products,
            labels,
            weights,
            poly: None,
            truncated: false,
        })
    }

    pub fn field(&self) -> Field {
        self.carrier.field
    }

    pub fn levels(&self) -> usize {
        self.grading.levels()
    }

    pub fn dim(&self, x: usize, d: usize) -> usize {
        self.carrier.dims[x][d]
    }

    pub fn pairing(&self, x: usize, d1: usize, y: usize, d2: usize) -> Option<&Matrix> {
        self.products.get(&(x, d1, y, d2))
    }

    pub fn unit_object(&self) -> usize {
        self.category.unit
    }

    pub fn zero_element(&self, x: usize) -> Element {
        let f = self.field();
        Element { object: x, parts: (0..self.levels()).map(|d| vec![f.zero(); self.dim(x, d)]).collect() }
    }

    pub fn basis_element(&self, x: usize, d: usize, i: usize) -> Element {
        let mut e = self.zero_element(x);
        e.parts[d][i] = self.field().one();
        e
    }

    /// `a × b ∈ A(x◇y)`, dropping parts above the cap.
    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        let xy = self.category.tensor_obj(a.object, b.object);
        let mut out = self.zero_element(xy);
        for d1 in a.support() {
            for d2 in b.support() {
                if let Some(p) = self.pairing(a.object, d1, b.object, d2) {
                    let col = Matrix::from_columns(self.field(), a.parts[d1].len(), &[a.parts[d1].clone()]);
                    let colb = Matrix::from_columns(self.field(), b.parts[d2].len(), &[b.parts[d2].clone()]);
                    let v = p.mul(&kronecker(&col, &colb)).column(0);
                    for (o, x) in out.parts[d1 + d2].iter_mut().zip(v) {
                        *o += &x;
                    }
                }
            }
        }
        out
    }

    /// `A(φ)` applied to an element, for a basis morphism `φ`.
    pub fn act(&self, morphism: usize, e: &Element) -> Element {
        let info = &self.category.morphisms[morphism];
        assert_eq!(info.source, e.object);
        Element {
            object: info.target,
            parts: e
                .parts
                .iter()
                .enumerate()
                .map(|(d, p)| self.carrier.actions[morphism][d].mul_vec(p))
                .collect(),
        }
    }

    /// Human-readable form using basis labels.
    pub fn describe(&self, e: &Element) -> String {
        describe_parts(&self.labels[e.object], &e.parts)
    }

    /// Smallest and largest polynomial weight over the support.
    pub fn weight_range(&self, e: &Element) -> Option<(usize, usize)> {
        weight_range(&self.weights[e.object], &e.parts)
    }

    /// All levels collapsed into one; products above the cap stay dropped.
    pub fn totalize(&self) -> Monoid {
        if self.levels() == 1 {
            return self.clone();
        }
        let cap = self.grading.cap().unwrap_or(0);
        let carrier = self.carrier.totalize();
        let products = totalize_table(&self.category, &self.products, &self.carrier, &self.carrier, &self.carrier);
        let unit = Element { object: self.unit.object, parts: vec![self.unit.parts.concat()] };
        let labels = self.labels.iter().map(|per| vec![per.concat()]).collect();
        let weights = self.weights.iter().map(|per| vec![per.concat()]).collect();
        Monoid {
            name: format!("{} (total)", self.name),
            category: self.category.clone(),
            carrier,
            grading: Grading::Totalized { cap },
            unit,
            products,
            labels,
            weights,
            poly: self.poly.clone(),
            truncated: self.truncated,
        }
    }

    /// Element of the totalized monoid corresponding to `e`.
    pub fn totalize_element(&self, e: &Element) -> Element {
        Element { object: e.object, parts: vec![e.parts.concat()] }
    }
}

/// Collapses a graded pairing table `U ⊗ V -> W` into one level.
pub(crate) fn totalize_table(
    cat: &Category,
    table: &BTreeMap<PairKey, Matrix>,
    u: &Representation,
    v: &Representation,
    w: &Representation,
) -> BTreeMap<PairKey, Matrix> {
    let field = u.field;
    let n = cat.object_count();
    let (ou, ov, ow) = (level_offsets(u), level_offsets(v), level_offsets(w));
    let mut entries: BTreeMap<(usize, usize), Vec<(usize, usize, Scalar)>> = BTreeMap::new();
    for (&(x, d1, y, d2), m) in table {
        let xy = cat.tensor_obj(x, y);
        let (dy, ty) = (v.dims[y][d2], v.total_dim(y));
        let out = entries.entry((x, y)).or_default();
        for r in 0..m.rows() {
            for (c, val) in m.row(r) {
                let (a, b) = (c / dy, c % dy);
                let col = (ou[x][d1] + a) * ty + ov[y][d2] + b;
                out.push((ow[xy][d1 + d2] + r, col, val.clone()));
            }
        }
    }
    let mut result = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            let xy = cat.tensor_obj(x, y);
            let e = entries.remove(&(x, y)).unwrap_or_default();
            result.insert(
                (x, 0, y, 0),
                Matrix::from_triplets(field, w.total_dim(xy), u.total_dim(x) * v.total_dim(y), e),
            );
        }
    }
    result
}

pub(crate) fn level_offsets(rep: &Representation) -> Vec<Vec<usize>> {
    rep.dims
        .iter()
        .map(|per| {
            let mut acc = 0;
            per.iter()
                .map(|&n| {
                    let o = acc;
                    acc += n;
                    o
                })
                .collect()
        })
        .collect()
}

pub(crate) fn default_labels(rep: &Representation) -> Vec<Vec<Vec<String>>> {
    rep.dims
        .iter()
        .enumerate()
        .map(|(x, per)| {
            per.iter()
                .enumerate()
                .map(|(d, &n)| (0..n).map(|i| format!("e{x}_{d}_{i}")).collect())
                .collect()
        })
        .collect()
}

pub(crate) fn weight_range(weights: &[Vec<usize>], parts: &[Vector]) -> Option<(usize, usize)> {
    let mut range: Option<(usize, usize)> = None;
    for (w, p) in weights.iter().zip(parts) {
        for (wi, v) in w.iter().zip(p) {
            if !v.is_zero() {
                range = Some(match range {
                    None => (*wi, *wi),
                    Some((lo, hi)) => (lo.min(*wi), hi.max(*wi)),
                });
            }
        }
    }
    range
}

pub(crate) fn describe_parts(labels: &[Vec<String>], parts: &[Vector]) -> String {
    let mut terms = Vec::new();
    for (ls, p) in labels.iter().zip(parts) {
        for (l, v) in ls.iter().zip(p) {
            if v.is_zero() {
                continue;
            }
            let neg_one = -&v.field().one();
            terms.push(if v.is_one() {
                l.clone()
            } else if *v == neg_one {
                format!("-{l}")
            } else {
                format!("{v}*{l}")
            });
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

/// Structure constants `a × b` as the Kronecker-basis column `a * dim(y) + b`.
pub(crate) fn pairing_from_fn(
    field: Field,
    rows: usize,
    dx: usize,
    dy: usize,
    mut f: impl FnMut(usize, usize) -> Vec<(usize, Scalar)>,
) -> Matrix {
    let mut entries = Vec::new();
    for a in 0..dx {
        for b in 0..dy {
            for (r, v) in f(a, b) {
                entries.push((r, a * dy + b, v));
            }
        }
    }
    Matrix::from_triplets(field, rows, dx * dy, entries)
}
