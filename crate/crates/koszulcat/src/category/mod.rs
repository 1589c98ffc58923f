//! Finite strict linear symmetric monoidal categories, their
//! representations, and Day convolution.

mod day;
pub mod presets;
mod representation;
mod validate;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};

pub use day::{day_convolution, day_convolution_many, DayBlock, DayCell, DayProduct};
pub use representation::{identity_functor, Representation};
pub use validate::{validate_presentation, validate_representation};
pub(crate) use validate::check_shapes;

/// Linear combination of basis morphisms, sorted by id, no zero terms.
pub type Combo = Vec<(usize, Scalar)>;

pub fn combo_normalize(mut terms: Combo) -> Combo {
    terms.sort_by_key(|(id, _)| *id);
    let mut out: Combo = Vec::with_capacity(terms.len());
    for (id, c) in terms {
        match out.last_mut() {
            Some((k, acc)) if *k == id => *acc += &c,
            _ => out.push((id, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

pub fn combo_sub(a: &Combo, b: &Combo) -> Combo {
    let mut terms = a.clone();
    terms.extend(b.iter().map(|(id, c)| (*id, -c)));
    combo_normalize(terms)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Backend {
    Trivial,
    FiniteStrict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismInfo {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A desk-scale, strict, R-linear symmetric monoidal category.
///
/// Every hom space has a finite basis of named morphisms with global ids.
/// Composition, the tensor `◇` on morphisms, identities and symmetries are
/// stored as structure constants on those bases.
#[derive(Clone, Debug)]
pub struct Category {
    pub field: Field,
    pub backend: Backend,
    pub objects: Vec<String>,
    pub unit: usize,
    pub morphisms: Vec<MorphismInfo>,
    /// `homs[x][y]`: ids of the basis of hom(x, y).
    pub homs: Vec<Vec<Vec<usize>>>,
    pub identities: Vec<Combo>,
    /// `(outer, inner) -> outer ∘ inner`; absent means zero.
    pub composition: BTreeMap<(usize, usize), Combo>,
    /// `diamond_obj[x][y] = x ◇ y`.
    pub diamond_obj: Vec<Vec<usize>>,
    /// `(f, g) -> f ◇ g`; absent means zero.
    pub diamond_mor: BTreeMap<(usize, usize), Combo>,
    /// `symmetry[x][y] ∈ hom(x◇y, y◇x)`.
    pub symmetry: Vec<Vec<Combo>>,
}

impl Category {
    /// One object `1` with `hom(1,1) = R·id`.
    pub fn trivial(field: Field) -> Category {
        let mut b = CategoryBuilder::new(field, Backend::Trivial, vec!["1".into()], 0);
        b.add_morphism("id", 0, 0);
        b.build().expect("trivial category is well formed")
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::Input(format!("unknown object {name:?}")))
    }

    pub fn morphism_index(&self, name: &str) -> Result<usize> {
        self.morphisms
            .iter()
            .position(|m| m.name == name)
            .ok_or_else(|| Error::Input(format!("unknown morphism {name:?}")))
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.homs[x][y]
    }

    pub fn tensor_obj(&self, x: usize, y: usize) -> usize {
        self.diamond_obj[x][y]
    }

    /// `y_1 ◇ ... ◇ y_k` (the unit for an empty list).
    pub fn tensor_objs(&self, ys: &[usize]) -> usize {
        ys.iter().fold(self.unit, |acc, &y| self.diamond_obj[acc][y])
    }

    pub fn basis_combo(&self, id: usize) -> Combo {
        vec![(id, self.field.one())]
    }

    pub fn compose(&self, outer: &Combo, inner: &Combo) -> Combo {
        let mut terms = Vec::new();
        for (o, co) in outer {
            for (i, ci) in inner {
                if let Some(r) = self.composition.get(&(*o, *i)) {
                    let c = co * ci;
                    terms.extend(r.iter().map(|(id, v)| (*id, v * &c)));
                }
            }
        }
        combo_normalize(terms)
    }

    pub fn tensor_mor(&self, a: &Combo, b: &Combo) -> Combo {
        let mut terms = Vec::new();
        for (f, cf) in a {
            for (g, cg) in b {
                if let Some(r) = self.diamond_mor.get(&(*f, *g)) {
                    let c = cf * cg;
                    terms.extend(r.iter().map(|(id, v)| (*id, v * &c)));
                }
            }
        }
        combo_normalize(terms)
    }

    /// Left fold of `◇` over morphism combinations.
    pub fn tensor_mors(&self, parts: &[Combo]) -> Combo {
        let mut acc = self.identities[self.unit].clone();
        for p in parts {
            acc = self.tensor_mor(&acc, p);
        }
        acc
    }

    /// The single basis id of `id_x` when the identity is a basis element.
    pub fn identity_id(&self, x: usize) -> Option<usize> {
        match self.identities[x].as_slice() {
            [(id, c)] if c.is_one() => Some(*id),
            _ => None,
        }
    }

    pub fn describe_combo(&self, c: &Combo) -> String {
        if c.is_empty() {
            return "0".into();
        }
        c.iter()
            .map(|(id, v)| {
                if v.is_one() {
                    self.morphisms[*id].name.clone()
                } else {
                    format!("{v}*{}", self.morphisms[*id].name)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Incremental construction with defaults: identity compositions,
/// `id ◇ id = id`, and identity symmetries where `x◇y = y◇x`.
pub struct CategoryBuilder {
    cat: Category,
    explicit_symmetry: Vec<Vec<bool>>,
}

impl CategoryBuilder {
    pub fn new(field: Field, backend: Backend, objects: Vec<String>, unit: usize) -> CategoryBuilder {
        let n = objects.len();
        let diamond_obj = if n == 1 { vec![vec![0]] } else { vec![vec![usize::MAX; n]; n] };
        CategoryBuilder {
            cat: Category {
                field,
                backend,
                objects,
                unit,
                morphisms: Vec::new(),
                homs: vec![vec![Vec::new(); n]; n],
                identities: vec![Vec::new(); n],
                composition: BTreeMap::new(),
                diamond_obj,
                diamond_mor: BTreeMap::new(),
                symmetry: vec![vec![Vec::new(); n]; n],
            },
            explicit_symmetry: vec![vec![false; n]; n],
        }
    }

    pub fn field(&self) -> Field {
        self.cat.field
    }

    pub fn category(&self) -> &Category {
        &self.cat
    }

    /// Adds a basis morphism. A morphism named `id`, `id_<object>` or `1_<object>`
    /// from an object to itself becomes that object's identity unless one
    /// was set explicitly.
    pub fn add_morphism(&mut self, name: &str, source: usize, target: usize) -> usize {
        let id = self.cat.morphisms.len();
        self.cat.morphisms.push(MorphismInfo { name: name.to_string(), source, target });
        self.cat.homs[source][target].push(id);
        let obj = &self.cat.objects[source];
        let is_identity_name =
            name == "id" || name == format!("id_{obj}") || name == format!("1_{obj}");
        if source == target && is_identity_name && self.cat.identities[source].is_empty() {
            self.cat.identities[source] = vec![(id, self.cat.field.one())];
        }
        id
    }

    pub fn set_identity(&mut self, x: usize, c: Combo) {
        self.cat.identities[x] = combo_normalize(c);
    }

    pub fn set_tensor_obj(&mut self, x: usize, y: usize, z: usize) {
        self.cat.diamond_obj[x][y] = z;
    }

    pub fn set_composition(&mut self, outer: usize, inner: usize, c: Combo) {
        self.cat.composition.insert((outer, inner), combo_normalize(c));
    }

    pub fn set_tensor_mor(&mut self, f: usize, g: usize, c: Combo) {
        self.cat.diamond_mor.insert((f, g), combo_normalize(c));
    }

    pub fn set_symmetry(&mut self, x: usize, y: usize, c: Combo) {
        self.cat.symmetry[x][y] = combo_normalize(c);
        self.explicit_symmetry[x][y] = true;
    }

    pub fn build(mut self) -> Result<Category> {
        let n = self.cat.objects.len();
        let one = self.cat.field.one();
        if self.cat.unit >= n {
            return Err(Error::Input("unit object out of range".into()));
        }
        for x in 0..n {
            for y in 0..n {
                if self.cat.diamond_obj[x][y] >= n {
                    return Err(Error::Input(format!(
                        "object tensor {} ◇ {} is undefined; object sets must be closed under ◇",
                        self.cat.objects[x], self.cat.objects[y]
                    )));
                }
            }
        }
        for x in 0..n {
            if self.cat.identities[x].is_empty() {
                return Err(Error::Input(format!(
                    "object {} has no identity morphism",
                    self.cat.objects[x]
                )));
            }
        }
        // id ∘ f = f = f ∘ id where the identity is a basis element
        for f in 0..self.cat.morphisms.len() {
            let MorphismInfo { source, target, .. } = self.cat.morphisms[f].clone();
            if let Some(idt) = self.cat.identity_id(target) {
                self.cat.composition.entry((idt, f)).or_insert_with(|| vec![(f, one.clone())]);
            }
            if let Some(ids) = self.cat.identity_id(source) {
                self.cat.composition.entry((f, ids)).or_insert_with(|| vec![(f, one.clone())]);
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = self.cat.diamond_obj[x][y];
                if let (Some(ix), Some(iy)) = (self.cat.identity_id(x), self.cat.identity_id(y)) {
                    let ixy = self.cat.identities[xy].clone();
                    self.cat.diamond_mor.entry((ix, iy)).or_insert(ixy);
                }
                if !self.explicit_symmetry[x][y] {
                    if xy == self.cat.diamond_obj[y][x] {
                        self.cat.symmetry[x][y] = self.cat.identities[xy].clone();
                    } else {
                        return Err(Error::Input(format!(
                            "symmetry {} ◇ {} -> {} ◇ {} must be given explicitly",
                            self.cat.objects[x], self.cat.objects[y],
                            self.cat.objects[y], self.cat.objects[x]
                        )));
                    }
                }
            }
        }
        Ok(self.cat)
    }
}
