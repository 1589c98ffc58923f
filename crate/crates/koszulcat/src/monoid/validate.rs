use std::collections::BTreeMap;

use super::{Element, Module, Monoid, PairKey};
use crate::category::{validate_representation, Category, Representation};
use crate::error::Result;
use crate::linalg::{kernel, kronecker, Matrix, Subspace};
use crate::validation::ValidationReport;

type Table = BTreeMap<PairKey, Matrix>;

/// `(U ⊗ V) ⊗ W -> ..` along `outer_l ∘ (inner_l ⊗ 1)` versus
/// `outer_r ∘ (1 ⊗ inner_r)`.
#[allow(clippy::too_many_arguments)]
fn check_assoc(
    r: &mut ValidationReport,
    axiom: &str,
    cat: &Category,
    levels: usize,
    u: &Representation,
    w: &Representation,
    outer_l: &Table,
    inner_l: &Table,
    outer_r: &Table,
    inner_r: &Table,
) {
    let field = u.field;
    let n = cat.object_count();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (xy, yz) = (cat.tensor_obj(x, y), cat.tensor_obj(y, z));
                for d1 in 0..levels {
                    for d2 in 0..levels - d1 {
                        for d3 in 0..levels - d1 - d2 {
                            let lhs = outer_l[&(xy, d1 + d2, z, d3)]
                                .mul(&kronecker(&inner_l[&(x, d1, y, d2)], &Matrix::identity(field, w.dims[z][d3])));
                            let rhs = outer_r[&(x, d1, yz, d2 + d3)]
                                .mul(&kronecker(&Matrix::identity(field, u.dims[x][d1]), &inner_r[&(y, d2, z, d3)]));
                            r.check(axiom, lhs == rhs, || {
                                format!(
                                    "objects ({}, {}, {}) degrees ({d1}, {d2}, {d3})",
                                    cat.objects[x], cat.objects[y], cat.objects[z]
                                )
                            });
                        }
                    }
                }
            }
        }
    }
}

/// Naturality of a pairing `U ⊗ V -> W` in both arguments.
fn check_natural(
    r: &mut ValidationReport,
    axiom: &str,
    cat: &Category,
    levels: usize,
    (u, v, w): (&Representation, &Representation, &Representation),
    p: &Table,
) {
    let field = u.field;
    let n = cat.object_count();
    for (phi, info) in cat.morphisms.iter().enumerate() {
        let phi_c = cat.basis_combo(phi);
        for y in 0..n {
            let left = cat.tensor_mor(&phi_c, &cat.identities[y]);
            let right = cat.tensor_mor(&cat.identities[y], &phi_c);
            let (s, t) = (info.source, info.target);
            for d1 in 0..levels {
                for d2 in 0..levels - d1 {
                    // φ ◇ id_y
                    let lhs = w
                        .act(cat, &left, cat.tensor_obj(s, y), cat.tensor_obj(t, y), d1 + d2)
                        .mul(&p[&(s, d1, y, d2)]);
                    let rhs = p[&(t, d1, y, d2)]
                        .mul(&kronecker(&u.actions[phi][d1], &Matrix::identity(field, v.dims[y][d2])));
                    r.check(axiom, lhs == rhs, || {
                        format!("{} ◇ id_{} in degrees ({d1}, {d2})", info.name, cat.objects[y])
                    });
                    // id_y ◇ φ
                    let lhs = w
                        .act(cat, &right, cat.tensor_obj(y, s), cat.tensor_obj(y, t), d1 + d2)
                        .mul(&p[&(y, d1, s, d2)]);
                    let rhs = p[&(y, d1, t, d2)]
                        .mul(&kronecker(&Matrix::identity(field, u.dims[y][d1]), &v.actions[phi][d2]));
                    r.check(axiom, lhs == rhs, || {
                        format!("id_{} ◇ {} in degrees ({d1}, {d2})", cat.objects[y], info.name)
                    });
                }
            }
        }
    }
}

/// `ε × m = m` (left) or `m × ε = m` (right) for a pairing with the unit.
fn check_unit(
    r: &mut ValidationReport,
    axiom: &str,
    cat: &Category,
    levels: usize,
    m_rep: &Representation,
    unit: &Element,
    p: &Table,
    left_side: bool,
) {
    let field = m_rep.field;
    let one = cat.unit;
    for x in 0..cat.object_count() {
        for d in 0..levels {
            let mut ok = true;
            for k in 0..levels - d {
                let eps = Matrix::from_columns(field, unit.parts[k].len(), &[unit.parts[k].clone()]);
                let id = Matrix::identity(field, m_rep.dims[x][d]);
                let image = if left_side {
                    p[&(one, k, x, d)].mul(&kronecker(&eps, &id))
                } else {
                    p[&(x, d, one, k)].mul(&kronecker(&id, &eps))
                };
                ok &= if k == 0 { image.is_identity() } else { image.is_zero() };
            }
            r.check(axiom, ok, || format!("object {} degree {d}", cat.objects[x]));
        }
    }
}

/// Associativity, unit laws and naturality of the pairing on all basis
/// combinations, together with the functor axioms of the carrier.
pub fn validate_monoid(a: &Monoid) -> Result<ValidationReport> {
    let cat = &a.category;
    let mut r = ValidationReport::new(format!("monoid {}", a.name));
    r.merge(validate_representation(cat, &a.carrier)?);
    let levels = a.levels();
    let p = &a.products;
    check_assoc(&mut r, "associativity", cat, levels, &a.carrier, &a.carrier, p, p, p, p);
    check_unit(&mut r, "left unit", cat, levels, &a.carrier, &a.unit, p, true);
    check_unit(&mut r, "right unit", cat, levels, &a.carrier, &a.unit, p, false);
    check_natural(&mut r, "pairing naturality", cat, levels, (&a.carrier, &a.carrier, &a.carrier), p);
    Ok(r)
}

/// Module axioms for every side present, plus compatibility of the two
/// sides for a bimodule.
pub fn validate_module(m: &Module) -> Result<ValidationReport> {
    let cat = &m.category;
    let mut r = ValidationReport::new(format!("module {}", m.name));
    r.merge(validate_representation(cat, &m.carrier)?);
    let levels = m.levels();
    if let Some(l) = &m.left {
        let a = &l.monoid;
        check_assoc(&mut r, "left action associativity", cat, levels, &a.carrier, &m.carrier, &l.maps, &a.products, &l.maps, &l.maps);
        check_unit(&mut r, "left action unit", cat, levels, &m.carrier, &a.unit, &l.maps, true);
        check_natural(&mut r, "left action naturality", cat, levels, (&a.carrier, &m.carrier, &m.carrier), &l.maps);
    }
    if let Some(rt) = &m.right {
        let a = &rt.monoid;
        check_assoc(&mut r, "right action associativity", cat, levels, &m.carrier, &a.carrier, &rt.maps, &rt.maps, &rt.maps, &a.products);
        check_unit(&mut r, "right action unit", cat, levels, &m.carrier, &a.unit, &rt.maps, false);
        check_natural(&mut r, "right action naturality", cat, levels, (&m.carrier, &a.carrier, &m.carrier), &rt.maps);
    }
    if let (Some(l), Some(rt)) = (&m.left, &m.right) {
        check_assoc(
            &mut r,
            "bimodule compatibility",
            cat,
            levels,
            &l.monoid.carrier,
            &rt.monoid.carrier,
            &rt.maps,
            &l.maps,
            &l.maps,
            &rt.maps,
        );
    }
    Ok(r)
}

/// `C_A(x)` per level: all `b ∈ A(x)_e` with `a × b = A(s_{x,y})(b × a)` for
/// every basis vector `a` of every `A(y)_d`.
pub fn commutant(a: &Monoid, x: usize) -> Vec<Subspace> {
    let cat = &a.category;
    let field = a.field();
    let levels = a.levels();
    (0..levels)
        .map(|e| {
            let dx = a.dim(x, e);
            let mut eqs = Vec::new();
            for y in 0..cat.object_count() {
                let (xy, yx) = (cat.tensor_obj(x, y), cat.tensor_obj(y, x));
                for d in 0..levels - e {
                    let dy = a.dim(y, d);
                    let s = a.carrier.act(cat, &cat.symmetry[x][y], xy, yx, d + e);
                    let ab = &a.products[&(y, d, x, e)];
                    let ba = s.mul(&a.products[&(x, e, y, d)]);
                    for i in 0..dy {
                        let lhs = ab.select_columns(&(i * dx..(i + 1) * dx).collect::<Vec<_>>());
                        let rhs = ba.select_columns(&(0..dx).map(|b| b * dy + i).collect::<Vec<_>>());
                        eqs.push(lhs.sub(&rhs));
                    }
                }
            }
            let refs: Vec<&Matrix> = eqs.iter().collect();
            kernel(&Matrix::vstack(field, dx, &refs))
        })
        .collect()
}

/// Whether an element of `A(1)` lies in the commutant.
pub fn is_central(a: &Monoid, elt: &Element) -> bool {
    let cat = &a.category;
    let field = a.field();
    let one = cat.unit;
    let levels = a.levels();
    for k in elt.support() {
        let g = Matrix::from_columns(field, elt.parts[k].len(), &[elt.parts[k].clone()]);
        for y in 0..cat.object_count() {
            for d in 0..levels - k {
                let id = Matrix::identity(field, a.dim(y, d));
                let right = a.products[&(y, d, one, k)].mul(&kronecker(&id, &g));
                let s = a.carrier.act(cat, &cat.symmetry[one][y], cat.tensor_obj(one, y), cat.tensor_obj(y, one), d + k);
                let left = s.mul(&a.products[&(one, k, y, d)].mul(&kronecker(&g, &id)));
                if left != right {
                    return false;
                }
            }
        }
    }
    true
}

/// `a × b = A(s)(b × a)` for all basis pairs.
pub fn is_commutative(a: &Monoid) -> bool {
    let cat = &a.category;
    let levels = a.levels();
    let n = cat.object_count();
    for x in 0..n {
        for y in 0..n {
            for d1 in 0..levels {
                for d2 in 0..levels - d1 {
                    let (dx, dy) = (a.dim(x, d1), a.dim(y, d2));
                    let s = a.carrier.act(cat, &cat.symmetry[x][y], cat.tensor_obj(x, y), cat.tensor_obj(y, x), d1 + d2);
                    let lhs = s.mul(&a.products[&(x, d1, y, d2)]);
                    let swapped: Vec<usize> = (0..dx * dy).map(|c| (c % dy) * dx + c / dy).collect();
                    let rhs = a.products[&(y, d2, x, d1)].select_columns(&swapped);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}
