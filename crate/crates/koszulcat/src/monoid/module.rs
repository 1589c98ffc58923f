use std::collections::BTreeMap;
use std::sync::Arc;

use super::{
    default_labels, default_weights, describe_parts, totalize_table, Element, Grading, Monoid, PairKey, Weights,
};
use crate::category::{Category, Representation};
use crate::error::{Error, Result};
use crate::linalg::{image, kronecker, quotient, Matrix, Quotient, Subspace};

/// One side of a module structure.
///
/// Left blocks are keyed `(x, d1, y, d2)` for `a ∈ A(x)_{d1}`, `m ∈ M(y)_{d2}`
/// with column `a * dim M + m`; right blocks are keyed `(x, d1, y, d2)` for
/// `m ∈ M(x)_{d1}`, `a ∈ A(y)_{d2}` with column `m * dim A + a`.
#[derive(Clone, Debug)]
pub struct Action {
    pub monoid: Arc<Monoid>,
    pub maps: BTreeMap<PairKey, Matrix>,
}

impl Action {
    pub fn block(&self, x: usize, d1: usize, y: usize, d2: usize) -> Option<&Matrix> {
        self.maps.get(&(x, d1, y, d2))
    }
}

/// Left, right or bimodule over monoids in the same functor category.
#[derive(Clone, Debug)]
pub struct Module {
    pub name: String,
    pub category: Arc<Category>,
    pub carrier: Representation,
    pub grading: Grading,
    pub left: Option<Action>,
    pub right: Option<Action>,
    pub labels: Vec<Vec<Vec<String>>>,
    pub weights: Weights,
}

/// Graded subspace `[x][level]` of a carrier.
pub type GradedSubspace = Vec<Vec<Subspace>>;

impl Module {
    /// Builds a module from action tables; missing blocks are zero.
    pub fn new(
        name: impl Into<String>,
        carrier: Representation,
        grading: Grading,
        left: Option<(Arc<Monoid>, BTreeMap<PairKey, Matrix>)>,
        right: Option<(Arc<Monoid>, BTreeMap<PairKey, Matrix>)>,
    ) -> Result<Module> {
        let monoid = left
            .as_ref()
            .or(right.as_ref())
            .map(|(a, _)| a.clone())
            .ok_or_else(|| Error::Input("a module needs at least one action".into()))?;
        let cat = monoid.category.clone();
        crate::category::check_shapes(&cat, &carrier)?;
        if carrier.levels() != grading.levels() {
            return Err(Error::Dimension("module carrier and grading disagree on levels".into()));
        }
        let levels = grading.levels();
        let field = carrier.field;
        let n = cat.object_count();
        let fill = |a: &Arc<Monoid>, mut maps: BTreeMap<PairKey, Matrix>, left_side: bool| -> Result<Action> {
            if a.levels() != levels || !Arc::ptr_eq(&a.category, &cat) && a.category.objects != cat.objects {
                return Err(Error::Input(format!("monoid {} does not match the module's grading or category", a.name)));
            }
            for x in 0..n {
                for y in 0..n {
                    let xy = cat.tensor_obj(x, y);
                    for d1 in 0..levels {
                        for d2 in 0..levels - d1 {
                            let cols = if left_side {
                                a.dim(x, d1) * carrier.dims[y][d2]
                            } else {
                                carrier.dims[x][d1] * a.dim(y, d2)
                            };
                            let shape = (carrier.dims[xy][d1 + d2], cols);
                            let m = maps.entry((x, d1, y, d2)).or_insert_with(|| Matrix::zeros(field, shape.0, shape.1));
                            if (m.rows(), m.cols()) != shape {
                                return Err(Error::Dimension(format!(
                                    "{} action block ({}, {}) in degrees ({d1}, {d2}) is {}x{}, expected {}x{}",
                                    if left_side { "left" } else { "right" },
                                    cat.objects[x],
                                    cat.objects[y],
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
            maps.retain(|&(_, d1, _, d2), _| d1 + d2 < levels);
            Ok(Action { monoid: a.clone(), maps })
        };
        let left = left.map(|(a, m)| fill(&a, m, true)).transpose()?;
        let right = right.map(|(a, m)| fill(&a, m, false)).transpose()?;
        Ok(Module {
            name: name.into(),
            category: cat,
            labels: default_labels(&carrier),
            weights: default_weights(&carrier, grading),
            carrier,
            grading,
            left,
            right,
        })
    }

    /// `A` as a bimodule over itself.
    pub fn regular(a: &Arc<Monoid>) -> Module {
        let action = Action { monoid: a.clone(), maps: a.products.clone() };
        Module {
            name: a.name.clone(),
            category: a.category.clone(),
            carrier: a.carrier.clone(),
            grading: a.grading,
            left: Some(action.clone()),
            right: Some(action),
            labels: a.labels.clone(),
            weights: a.weights.clone(),
        }
    }

    pub fn field(&self) -> crate::linalg::Field {
        self.carrier.field
    }

    pub fn levels(&self) -> usize {
        self.grading.levels()
    }

    pub fn dim(&self, x: usize, d: usize) -> usize {
        self.carrier.dims[x][d]
    }

    /// The monoid acting from the left, or else from the right.
    pub fn monoid(&self) -> &Arc<Monoid> {
        &self.left.as_ref().or(self.right.as_ref()).expect("module has an action").monoid
    }

    pub fn forget_left(&self) -> Module {
        Module { left: None, ..self.clone() }
    }

    pub fn forget_right(&self) -> Module {
        Module { right: None, ..self.clone() }
    }

    pub fn zero_element(&self, x: usize) -> Element {
        let f = self.field();
        Element { object: x, parts: (0..self.levels()).map(|d| vec![f.zero(); self.dim(x, d)]).collect() }
    }

    pub fn describe(&self, e: &Element) -> String {
        describe_parts(&self.labels[e.object], &e.parts)
    }

    /// `a · m` for the left action.
    pub fn act_left(&self, a: &Element, m: &Element) -> Result<Element> {
        let action = self.left.as_ref().ok_or_else(|| Error::Input(format!("{} has no left action", self.name)))?;
        Ok(self.apply(&action.maps, a, m))
    }

    /// `m · a` for the right action.
    pub fn act_right(&self, m: &Element, a: &Element) -> Result<Element> {
        let action = self.right.as_ref().ok_or_else(|| Error::Input(format!("{} has no right action", self.name)))?;
        Ok(self.apply(&action.maps, m, a))
    }

    fn apply(&self, maps: &BTreeMap<PairKey, Matrix>, u: &Element, v: &Element) -> Element {
        let field = self.field();
        let xy = self.category.tensor_obj(u.object, v.object);
        let mut out = self.zero_element(xy);
        for d1 in u.support() {
            for d2 in v.support() {
                if let Some(p) = maps.get(&(u.object, d1, v.object, d2)) {
                    let cu = Matrix::from_columns(field, u.parts[d1].len(), &[u.parts[d1].clone()]);
                    let cv = Matrix::from_columns(field, v.parts[d2].len(), &[v.parts[d2].clone()]);
                    let r = p.mul(&kronecker(&cu, &cv)).column(0);
                    for (o, x) in out.parts[d1 + d2].iter_mut().zip(r) {
                        *o += &x;
                    }
                }
            }
        }
        out
    }

    /// All levels collapsed into one, acting through `total`, the
    /// totalization of the acting monoid.
    pub fn totalize(&self, total: &Arc<Monoid>) -> Module {
        if self.levels() == 1 {
            return self.clone();
        }
        let cat = &self.category;
        let a = self.monoid();
        let left = self.left.as_ref().map(|act| Action {
            monoid: total.clone(),
            maps: totalize_table(cat, &act.maps, &a.carrier, &self.carrier, &self.carrier),
        });
        let right = self.right.as_ref().map(|act| Action {
            monoid: total.clone(),
            maps: totalize_table(cat, &act.maps, &self.carrier, &a.carrier, &self.carrier),
        });
        Module {
            name: self.name.clone(),
            category: cat.clone(),
            carrier: self.carrier.totalize(),
            grading: Grading::Totalized { cap: self.grading.cap().unwrap_or(0) },
            left,
            right,
            labels: self.labels.iter().map(|per| vec![per.concat()]).collect(),
            weights: self.weights.iter().map(|per| vec![per.concat()]).collect(),
        }
    }
}

/// The left ideal `A⟨α_1, ..., α_k⟩`: at `(x, d)` the span of all
/// `a × α_i` with `a ∈ A(x)_{d - deg α_i}`. Generators live at the unit
/// object and must be homogeneous when `A` has several levels.
pub fn generated_submodule(a: &Monoid, gens: &[Element]) -> Result<GradedSubspace> {
    let field = a.field();
    let unit = a.unit_object();
    let levels = a.levels();
    let mut homogeneous = Vec::new();
    for g in gens {
        if g.object != unit {
            return Err(Error::WrongObject(format!(
                "generator {} lives at {}, not at the unit object",
                a.describe(g),
                a.category.objects[g.object]
            )));
        }
        if g.is_zero() {
            continue;
        }
        match g.homogeneous_level() {
            Some(k) => homogeneous.push((k, g)),
            None => {
                return Err(Error::Input(format!(
                    "generator {} is not homogeneous; totalize the monoid first",
                    a.describe(g)
                )))
            }
        }
    }
    let n = a.category.object_count();
    let mut out = Vec::with_capacity(n);
    for x in 0..n {
        let mut per = Vec::with_capacity(levels);
        for d in 0..levels {
            let mut blocks = Vec::new();
            for &(k, g) in &homogeneous {
                if k > d {
                    continue;
                }
                // a ↦ a × g
                let p = a.pairing(x, d - k, unit, k).expect("pairing block");
                let g_col = Matrix::from_columns(field, g.parts[k].len(), &[g.parts[k].clone()]);
                blocks.push(p.mul(&kronecker(&Matrix::identity(field, a.dim(x, d - k)), &g_col)));
            }
            let refs: Vec<&Matrix> = blocks.iter().collect();
            per.push(image(&Matrix::hstack(field, a.dim(x, d), &refs)));
        }
        out.push(per);
    }
    Ok(out)
}

/// A quotient module with its cellwise projections.
#[derive(Clone, Debug)]
pub struct QuotientModule {
    pub module: Module,
    /// `projections[x][level]`
    pub projections: Vec<Vec<Quotient>>,
}

/// `M / N` for an action-stable graded subspace `N`.
pub fn quotient_module(m: &Module, sub: &GradedSubspace) -> Result<QuotientModule> {
    let cat = &m.category;
    let n = cat.object_count();
    let levels = m.levels();
    let field = m.field();
    if sub.len() != n || sub.iter().any(|per| per.len() != levels) {
        return Err(Error::Dimension("submodule shape does not match the module".into()));
    }
    for x in 0..n {
        for d in 0..levels {
            if sub[x][d].ambient != m.dim(x, d) {
                return Err(Error::Dimension(format!(
                    "submodule at ({}, {d}) has ambient {} but the module has dimension {}",
                    cat.objects[x],
                    sub[x][d].ambient,
                    m.dim(x, d)
                )));
            }
        }
    }

    // Stability.
    for (id, info) in cat.morphisms.iter().enumerate() {
        for d in 0..levels {
            let img = m.carrier.actions[id][d].mul(&sub[info.source][d].basis);
            if !sub[info.target][d].contains_all(&img) {
                return Err(Error::Unstable(format!("not stable under M({}) in degree {d}", info.name)));
            }
        }
    }
    if let Some(act) = &m.left {
        for (&(x, d1, y, d2), p) in &act.maps {
            let img = p.mul(&kronecker(&Matrix::identity(field, act.monoid.dim(x, d1)), &sub[y][d2].basis));
            if !sub[cat.tensor_obj(x, y)][d1 + d2].contains_all(&img) {
                let culprit = (0..act.monoid.dim(x, d1))
                    .find(|&i| {
                        let col = p.mul(&kronecker(&unit_col(field, act.monoid.dim(x, d1), i), &sub[y][d2].basis));
                        !sub[cat.tensor_obj(x, y)][d1 + d2].contains_all(&col)
                    })
                    .unwrap_or(0);
                return Err(Error::Unstable(format!(
                    "left multiplication by {} leaves the submodule",
                    act.monoid.labels[x][d1][culprit]
                )));
            }
        }
    }
    if let Some(act) = &m.right {
        for (&(x, d1, y, d2), p) in &act.maps {
            let img = p.mul(&kronecker(&sub[x][d1].basis, &Matrix::identity(field, act.monoid.dim(y, d2))));
            if !sub[cat.tensor_obj(x, y)][d1 + d2].contains_all(&img) {
                let culprit = (0..act.monoid.dim(y, d2))
                    .find(|&i| {
                        let col = p.mul(&kronecker(&sub[x][d1].basis, &unit_col(field, act.monoid.dim(y, d2), i)));
                        !sub[cat.tensor_obj(x, y)][d1 + d2].contains_all(&col)
                    })
                    .unwrap_or(0);
                return Err(Error::Unstable(format!(
                    "right multiplication by {} leaves the submodule",
                    act.monoid.labels[y][d2][culprit]
                )));
            }
        }
    }

    let projections: Vec<Vec<Quotient>> = (0..n)
        .map(|x| (0..levels).map(|d| quotient(m.dim(x, d), &sub[x][d]).expect("ambient checked")).collect())
        .collect();
    let dims: Vec<Vec<usize>> = projections.iter().map(|per| per.iter().map(|q| q.dim).collect()).collect();
    let mut carrier = Representation::constant_dims(cat, dims);
    for (id, info) in cat.morphisms.iter().enumerate() {
        for d in 0..levels {
            let (qs, qt) = (&projections[info.source][d], &projections[info.target][d]);
            carrier.actions[id][d] = qt.projection.mul(&m.carrier.actions[id][d]).mul(&qs.lift);
        }
    }
    let induce = |act: &Action, left_side: bool| -> Action {
        let maps = act
            .maps
            .iter()
            .map(|(&(x, d1, y, d2), p)| {
                let q = &projections[cat.tensor_obj(x, y)][d1 + d2];
                let source = if left_side {
                    kronecker(&Matrix::identity(field, act.monoid.dim(x, d1)), &projections[y][d2].lift)
                } else {
                    kronecker(&projections[x][d1].lift, &Matrix::identity(field, act.monoid.dim(y, d2)))
                };
                ((x, d1, y, d2), q.projection.mul(p).mul(&source))
            })
            .collect();
        Action { monoid: act.monoid.clone(), maps }
    };
    let labels = (0..n)
        .map(|x| {
            (0..levels)
                .map(|d| {
                    let lift = &projections[x][d].lift;
                    (0..lift.cols())
                        .map(|j| {
                            let i = lift.column(j).iter().position(|v| !v.is_zero()).expect("coordinate lift");
                            format!("[{}]", m.labels[x][d][i])
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let weights = (0..n)
        .map(|x| {
            (0..levels)
                .map(|d| {
                    let lift = &projections[x][d].lift;
                    (0..lift.cols())
                        .map(|j| {
                            let i = lift.column(j).iter().position(|v| !v.is_zero()).expect("coordinate lift");
                            m.weights[x][d][i]
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let module = Module {
        name: format!("{}/N", m.name),
        category: cat.clone(),
        carrier,
        grading: m.grading,
        left: m.left.as_ref().map(|a| induce(a, true)),
        right: m.right.as_ref().map(|a| induce(a, false)),
        labels,
        weights,
    };
    Ok(QuotientModule { module, projections })
}

/// `A / A⟨gens⟩`; a bimodule when the ideal is two-sided, otherwise a left
/// module.
pub fn cyclic_quotient(a: &Arc<Monoid>, gens: &[Element]) -> Result<Module> {
    let sub = generated_submodule(a, gens)?;
    let regular = Module::regular(a);
    let mut q = match quotient_module(&regular, &sub) {
        Ok(q) => q.module,
        Err(Error::Unstable(_)) => quotient_module(&regular.forget_right(), &sub)?.module,
        Err(e) => return Err(e),
    };
    let names: Vec<String> = gens.iter().map(|g| a.describe(g)).collect();
    q.name = format!("{}/({})", a.name, names.join(", "));
    Ok(q)
}

/// Every functor `F` is an `I`-bimodule: `f · m = F(f ◇ id)(m)` and
/// `m · f = F(id ◇ f)(m)` for `f ∈ X(1, x)`.
pub fn identity_module(i: &Arc<Monoid>, name: impl Into<String>, rep: Representation) -> Result<Module> {
    let cat = i.category.clone();
    if i.grading != Grading::Exact || i.carrier != crate::category::identity_functor(&cat) {
        return Err(Error::Input(format!("{} is not the unit monoid I", i.name)));
    }
    if rep.levels() != 1 {
        return Err(Error::Dimension("representations of I must be ungraded".into()));
    }
    crate::category::check_shapes(&cat, &rep)?;
    let field = cat.field;
    let one = cat.unit;
    let n = cat.object_count();
    let (mut left, mut right) = (BTreeMap::new(), BTreeMap::new());
    for x in 0..n {
        for y in 0..n {
            let xy = cat.tensor_obj(x, y);
            let (bx, by) = (cat.hom(one, x), cat.hom(one, y));
            let blocks: Vec<Matrix> = bx
                .iter()
                .map(|&f| rep.act(&cat, &cat.tensor_mor(&cat.basis_combo(f), &cat.identities[y]), y, xy, 0))
                .collect();
            let refs: Vec<&Matrix> = blocks.iter().collect();
            left.insert((x, 0, y, 0), Matrix::hstack(field, rep.dims[xy][0], &refs));
            // columns m * dim I(y) + f
            let dx = rep.dims[x][0];
            let mut cols = vec![Vec::new(); dx * by.len()];
            for (j, &f) in by.iter().enumerate() {
                let act = rep.act(&cat, &cat.tensor_mor(&cat.identities[x], &cat.basis_combo(f)), x, xy, 0);
                for m in 0..dx {
                    cols[m * by.len() + j] = act.column(m);
                }
            }
            right.insert((x, 0, y, 0), Matrix::from_columns(field, rep.dims[xy][0], &cols));
        }
    }
    let mut m = Module::new(name, rep, Grading::Exact, Some((i.clone(), left)), Some((i.clone(), right)))?;
    m.labels = (0..n)
        .map(|x| vec![(0..m.carrier.dims[x][0]).map(|k| format!("m{k}@{}", cat.objects[x])).collect()])
        .collect();
    Ok(m)
}

fn unit_col(field: crate::linalg::Field, n: usize, i: usize) -> Matrix {
    Matrix::from_triplets(field, n, 1, [(i, 0, field.one())])
}
