use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::category::{day_convolution, day_convolution_many, Combo, DayProduct, Representation};
use crate::error::{Error, Result};
use crate::koszul::DimTable;
use crate::linalg::{quotient_by_rows, rank, Matrix, Quotient, Scalar};
use crate::monoid::{default_labels, default_weights, Action, Module, Monoid};

/// `M ⊗_A N` as the cokernel of `δ = σ_r ⊗ N - M ⊗ σ_l` on the Day
/// product `M ⊛ N`.
#[derive(Clone, Debug)]
pub struct TensorOver {
    pub module: Module,
    pub day: DayProduct,
    /// `quotients[x][d]`, from Day classes to the coequalizer.
    pub quotients: Vec<Vec<Quotient>>,
    /// `rank δ` per cell.
    pub relation_ranks: DimTable,
    /// `projection ∘ δ = 0` was verified on every cell.
    pub kills_relations: bool,
}

impl TensorOver {
    pub fn dims(&self) -> &DimTable {
        &self.module.carrier.dims
    }
}

fn same_monoid(a: &Monoid, b: &Monoid) -> bool {
    a.name == b.name && a.carrier.dims == b.carrier.dims && a.products == b.products
}

/// `M ⊗_A N` for a right `A`-module `M` and a left `A`-module `N`. Outer
/// actions (left on `M`, right on `N`) are carried over.
pub fn tensor_over_monoid(m: &Module, n: &Module) -> Result<TensorOver> {
    let (Some(ra), Some(la)) = (&m.right, &n.left) else {
        return Err(Error::Input(format!("{} needs a right action and {} a left action", m.name, n.name)));
    };
    let a = &ra.monoid;
    if !same_monoid(a, &la.monoid) {
        return Err(Error::Input(format!(
            "{} is a right {}-module but {} is a left {}-module",
            m.name, a.name, n.name, la.monoid.name
        )));
    }
    if m.levels() != n.levels() || a.levels() != m.levels() {
        return Err(Error::Dimension("M, A and N must have the same number of levels".into()));
    }
    let cat = m.category.clone();
    let field = m.field();
    let objects = cat.object_count();
    let levels = m.levels();
    let day = day_convolution(&cat, &m.carrier, &n.carrier)?;
    let triple = day_convolution_many(&cat, &[&m.carrier, &a.carrier, &n.carrier])?;

    let mut quotients = Vec::with_capacity(objects);
    let mut relation_ranks = Vec::with_capacity(objects);
    let mut kills_relations = true;
    for x in 0..objects {
        let (mut qs, mut rs) = (Vec::new(), Vec::new());
        for d in 0..levels {
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            for b in &triple.cells[x][d].blocks {
                let (y1, y2, y3) = (b.objects[0], b.objects[1], b.objects[2]);
                let (d1, d2, d3) = (b.degrees[0], b.degrees[1], b.degrees[2]);
                let (y12, y23) = (cat.tensor_obj(y1, y2), cat.tensor_obj(y2, y3));
                if cat.tensor_obj(y12, y3) != cat.tensor_obj(y1, y23) {
                    return Err(Error::Precondition("the monoidal product is not strictly associative".into()));
                }
                let h: Combo = cat.basis_combo(b.morphism);
                let right = &ra.maps[&(y1, d1, y2, d2)];
                let left = &la.maps[&(y2, d2, y3, d3)];
                let (dm, da, dn) = (b.factor_dims[0], b.factor_dims[1], b.factor_dims[2]);
                for i in 0..dm {
                    for j in 0..da {
                        let ma = right.column(i * da + j);
                        for k in 0..dn {
                            let an = left.column(j * dn + k);
                            let nk = unit(field, dn, k);
                            let mi = unit(field, dm, i);
                            let lhs = day.class_of(x, &[y12, y3], &[d1 + d2, d3], &h, &[&ma, &nk]);
                            let rhs = day.class_of(x, &[y1, y23], &[d1, d2 + d3], &h, &[&mi, &an]);
                            let row: Vec<Scalar> = lhs.iter().zip(&rhs).map(|(p, q)| p - q).collect();
                            if row.iter().any(|v| !v.is_zero()) {
                                rows.push(row);
                            }
                        }
                    }
                }
            }
            let dim = day.cells[x][d].dim();
            let rel = Matrix::from_dense(field, rows.len(), dim, rows);
            let q = quotient_by_rows(&rel);
            kills_relations &= q.projection.mul(&rel.transpose()).is_zero();
            rs.push(rank(&rel));
            qs.push(q);
        }
        quotients.push(qs);
        relation_ranks.push(rs);
    }

    let dims: DimTable = quotients.iter().map(|qs| qs.iter().map(|q| q.dim).collect()).collect();
    let mut carrier = Representation::constant_dims(&cat, dims);
    for (phi, info) in cat.morphisms.iter().enumerate() {
        for d in 0..levels {
            carrier.actions[phi][d] = quotients[info.target][d]
                .projection
                .mul(&day.rep.actions[phi][d])
                .mul(&quotients[info.source][d].lift);
        }
    }
    let outer = Outer { cat: &cat, day: &day, quotients: &quotients, carrier: &carrier, levels };
    let left = m.left.as_ref().map(|act| (act.monoid.clone(), outer.induce(act, true)));
    let right = n.right.as_ref().map(|act| (act.monoid.clone(), outer.induce(act, false)));
    let grading = m.grading;
    let module = Module {
        name: format!("{} ⊗_{} {}", m.name, a.name, n.name),
        category: cat.clone(),
        labels: default_labels(&carrier),
        weights: default_weights(&carrier, grading),
        carrier,
        grading,
        left: left.map(|(monoid, maps)| Action { monoid, maps }),
        right: right.map(|(monoid, maps)| Action { monoid, maps }),
    };
    Ok(TensorOver { module, day, quotients, relation_ranks, kills_relations })
}

fn unit(field: crate::linalg::Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

struct Outer<'a> {
    cat: &'a Arc<crate::category::Category>,
    day: &'a DayProduct,
    quotients: &'a [Vec<Quotient>],
    carrier: &'a Representation,
    levels: usize,
}

impl Outer<'_> {
    /// Outer action blocks on the coequalizer. Left: `b · [h; m ⊗ n] =
    /// [id ◇ h; b m ⊗ n]`; right: `[h; m ⊗ n] · b = [h ◇ id; m ⊗ n b]`.
    fn induce(&self, act: &Action, left: bool) -> BTreeMap<(usize, usize, usize, usize), Matrix> {
        let cat = self.cat;
        let field = cat.field;
        let b_mon = &act.monoid;
        let objects = cat.object_count();
        let mut maps = BTreeMap::new();
        for z in 0..objects {
            for x in 0..objects {
                for f in 0..self.levels {
                    for d in 0..self.levels - f {
                        // z carries the outer monoid, x the coequalizer.
                        let target = if left { cat.tensor_obj(z, x) } else { cat.tensor_obj(x, z) };
                        let db = b_mon.dim(z, f);
                        let dt = self.carrier.dims[x][d];
                        let q_src = &self.quotients[x][d];
                        let q_dst = &self.quotients[target][f + d];
                        let cell = &self.day.cells[x][d];
                        let mut cols = Vec::with_capacity(db * dt);
                        let lifted = cell.quotient.lift.mul(&q_src.lift);
                        let pairs: Vec<(usize, usize)> =
                            if left { (0..db).flat_map(|i| (0..dt).map(move |t| (i, t))).collect() } else {
                                (0..dt).flat_map(|t| (0..db).map(move |i| (i, t))).collect()
                            };
                        for (bi, t) in pairs {
                            let amb = lifted.column(t);
                            let mut acc = vec![field.zero(); self.day.cells[target][f + d].dim()];
                            for blk in &cell.blocks {
                                let (y1, y2) = (blk.objects[0], blk.objects[1]);
                                let (d1, d2) = (blk.degrees[0], blk.degrees[1]);
                                let h = cat.basis_combo(blk.morphism);
                                let (dm, dn) = (blk.factor_dims[0], blk.factor_dims[1]);
                                for i in 0..dm {
                                    for j in 0..dn {
                                        let c = &amb[blk.offset + i * dn + j];
                                        if c.is_zero() {
                                            continue;
                                        }
                                        let class = if left {
                                            let moved = act.maps[&(z, f, y1, d1)].column(bi * dm + i);
                                            let h2 = cat.tensor_mor(&cat.identities[z], &h);
                                            let nj = unit(field, dn, j);
                                            self.day.class_of(
                                                target,
                                                &[cat.tensor_obj(z, y1), y2],
                                                &[f + d1, d2],
                                                &h2,
                                                &[&moved, &nj],
                                            )
                                        } else {
                                            let moved = act.maps[&(y2, d2, z, f)].column(j * db + bi);
                                            let h2 = cat.tensor_mor(&h, &cat.identities[z]);
                                            let mi = unit(field, dm, i);
                                            self.day.class_of(
                                                target,
                                                &[y1, cat.tensor_obj(y2, z)],
                                                &[d1, d2 + f],
                                                &h2,
                                                &[&mi, &moved],
                                            )
                                        };
                                        for (a, v) in acc.iter_mut().zip(class) {
                                            *a += &(c * &v);
                                        }
                                    }
                                }
                            }
                            cols.push(q_dst.projection.mul_vec(&acc));
                        }
                        maps.insert(
                            if left { (z, f, x, d) } else { (x, d, z, f) },
                            Matrix::from_columns(field, self.carrier.dims[target][f + d], &cols),
                        );
                    }
                }
            }
        }
        maps
    }
}

/// Restricting `M ⊗_A N` to a right `E`-module agrees with
/// `(M restricted) ⊗_A N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionCertificate {
    pub full_dims: DimTable,
    pub restricted_dims: DimTable,
    pub dims_equal: bool,
    /// The canonical map induced by the identity of `M ⊛ N` is invertible.
    pub canonical_invertible: bool,
    /// The canonical map intertwines the right `E`-actions.
    pub actions_agree: bool,
}

impl RestrictionCertificate {
    pub fn passed(&self) -> bool {
        self.dims_equal && self.canonical_invertible && self.actions_agree
    }
}

/// Compares `R_E(M ⊗_A N)` with `R_A(M) ⊗_A N` for a `(D, A)`-bimodule `M`
/// and an `(A, E)`-bimodule `N`.
pub fn check_restriction_compatibility(m: &Module, n: &Module) -> Result<RestrictionCertificate> {
    let full = tensor_over_monoid(m, n)?;
    let restricted = tensor_over_monoid(&m.forget_left(), n)?;
    let cat = &m.category;
    let objects = cat.object_count();
    let levels = m.levels();
    let mut canonical = Vec::new();
    let mut invertible = true;
    for x in 0..objects {
        let mut per = Vec::new();
        for d in 0..levels {
            let c = full.quotients[x][d].projection.mul(&restricted.quotients[x][d].lift);
            invertible &= c.rows() == c.cols() && rank(&c) == c.cols();
            per.push(c);
        }
        canonical.push(per);
    }
    let mut actions_agree = true;
    if let (Some(fr), Some(rr)) = (&full.module.right, &restricted.module.right) {
        let field = m.field();
        for (&(x, d, z, f), act_f) in &fr.maps {
            let act_r = &rr.maps[&(x, d, z, f)];
            let xz = cat.tensor_obj(x, z);
            let id = Matrix::identity(field, fr.monoid.dim(z, f));
            let lhs = canonical[xz][d + f].mul(act_r);
            let rhs = act_f.mul(&crate::linalg::kronecker(&canonical[x][d], &id));
            actions_agree &= lhs == rhs;
        }
    }
    Ok(RestrictionCertificate {
        full_dims: full.dims().clone(),
        restricted_dims: restricted.dims().clone(),
        dims_equal: full.dims() == restricted.dims(),
        canonical_invertible: invertible,
        actions_agree,
    })
}
