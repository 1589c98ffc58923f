use super::{combo_sub, Backend, Category, Representation};
use crate::error::{Error, Result};
use crate::validation::ValidationReport;

/// Exhaustive check of the strict symmetric monoidal category axioms on
/// all basis combinations.
pub fn validate_presentation(cat: &Category) -> ValidationReport {
    let mut r = ValidationReport::new("category");
    let n = cat.object_count();
    let name = |m: usize| cat.morphisms[m].name.clone();
    let obj = |x: usize| cat.objects[x].clone();

    if cat.backend == Backend::Trivial {
        let ok = n == 1
            && cat.hom(0, 0).len() == 1
            && cat.identity_id(0).is_some();
        r.check("trivial backend shape", ok, || {
            "trivial backend needs one object with hom(1,1) = R·id".into()
        });
    }

    // Typing of structure constants.
    for (&(o, i), c) in &cat.composition {
        let (mo, mi) = (&cat.morphisms[o], &cat.morphisms[i]);
        let typed = mo.source == mi.target
            && c.iter().all(|(id, _)| {
                cat.morphisms[*id].source == mi.source && cat.morphisms[*id].target == mo.target
            });
        r.check("composition typing", typed, || format!("{} ∘ {}", name(o), name(i)));
    }
    for (&(f, g), c) in &cat.diamond_mor {
        let (mf, mg) = (&cat.morphisms[f], &cat.morphisms[g]);
        let src = cat.tensor_obj(mf.source, mg.source);
        let dst = cat.tensor_obj(mf.target, mg.target);
        let typed = c
            .iter()
            .all(|(id, _)| cat.morphisms[*id].source == src && cat.morphisms[*id].target == dst);
        r.check("tensor typing", typed, || format!("{} ◇ {}", name(f), name(g)));
    }
    for x in 0..n {
        let typed = cat.identities[x]
            .iter()
            .all(|(id, _)| cat.morphisms[*id].source == x && cat.morphisms[*id].target == x);
        r.check("identity typing", typed, || format!("id_{}", obj(x)));
        for y in 0..n {
            let (xy, yx) = (cat.tensor_obj(x, y), cat.tensor_obj(y, x));
            let typed = cat.symmetry[x][y]
                .iter()
                .all(|(id, _)| cat.morphisms[*id].source == xy && cat.morphisms[*id].target == yx);
            r.check("symmetry typing", typed, || format!("s({}, {})", obj(x), obj(y)));
        }
    }

    // Objects: strict associativity and unit.
    for x in 0..n {
        r.check("unit object", cat.tensor_obj(cat.unit, x) == x && cat.tensor_obj(x, cat.unit) == x, || {
            format!("1 ◇ {0} or {0} ◇ 1", obj(x))
        });
        for y in 0..n {
            for z in 0..n {
                let ok = cat.tensor_obj(cat.tensor_obj(x, y), z) == cat.tensor_obj(x, cat.tensor_obj(y, z));
                r.check("object associativity", ok, || format!("({}, {}, {})", obj(x), obj(y), obj(z)));
            }
        }
    }

    let basis = |m: usize| cat.basis_combo(m);
    let morphs = 0..cat.morphisms.len();

    // Composition: identities and associativity.
    for f in morphs.clone() {
        let mf = &cat.morphisms[f];
        let left = cat.compose(&cat.identities[mf.target], &basis(f));
        let right = cat.compose(&basis(f), &cat.identities[mf.source]);
        r.check("identity law", left == basis(f) && right == basis(f), || name(f).to_string());
    }
    for h in morphs.clone() {
        for g in composable_before(cat, h) {
            for f in composable_before(cat, g) {
                let lhs = cat.compose(&cat.compose(&basis(h), &basis(g)), &basis(f));
                let rhs = cat.compose(&basis(h), &cat.compose(&basis(g), &basis(f)));
                r.check("composition associativity", lhs == rhs, || {
                    format!("({}, {}, {})", name(h), name(g), name(f))
                });
            }
        }
    }

    // Tensor on morphisms: identities, strict associativity, unit,
    // interchange law.
    for x in 0..n {
        for y in 0..n {
            let ok = cat.tensor_mor(&cat.identities[x], &cat.identities[y])
                == cat.identities[cat.tensor_obj(x, y)];
            r.check("tensor of identities", ok, || format!("id_{} ◇ id_{}", obj(x), obj(y)));
        }
    }
    for f in morphs.clone() {
        let unit_id = &cat.identities[cat.unit];
        let ok = cat.tensor_mor(unit_id, &basis(f)) == basis(f)
            && cat.tensor_mor(&basis(f), unit_id) == basis(f);
        r.check("tensor unit", ok, || format!("id_1 ◇ {0}, {0} ◇ id_1", name(f)));
        for g in morphs.clone() {
            for h in morphs.clone() {
                let lhs = cat.tensor_mor(&cat.tensor_mor(&basis(f), &basis(g)), &basis(h));
                let rhs = cat.tensor_mor(&basis(f), &cat.tensor_mor(&basis(g), &basis(h)));
                r.check("tensor associativity", lhs == rhs, || {
                    format!("({}, {}, {})", name(f), name(g), name(h))
                });
            }
        }
    }
    for f in morphs.clone() {
        for f2 in composable_before(cat, f) {
            for g in morphs.clone() {
                for g2 in composable_before(cat, g) {
                    let lhs = cat.tensor_mor(
                        &cat.compose(&basis(f), &basis(f2)),
                        &cat.compose(&basis(g), &basis(g2)),
                    );
                    let rhs = cat.compose(
                        &cat.tensor_mor(&basis(f), &basis(g)),
                        &cat.tensor_mor(&basis(f2), &basis(g2)),
                    );
                    r.check("interchange law", lhs == rhs, || {
                        format!("({} ∘ {}) ◇ ({} ∘ {})", name(f), name(f2), name(g), name(g2))
                    });
                }
            }
        }
    }

    // Symmetry: involutive, natural, hexagon (strict form).
    for x in 0..n {
        for y in 0..n {
            let back = cat.compose(&cat.symmetry[y][x], &cat.symmetry[x][y]);
            r.check("symmetry involutive", back == cat.identities[cat.tensor_obj(x, y)], || {
                format!("s({1}, {0}) ∘ s({0}, {1})", obj(x), obj(y))
            });
            for z in 0..n {
                // s(x, y◇z) = (id_y ◇ s(x, z)) ∘ (s(x, y) ◇ id_z)
                let lhs = &cat.symmetry[x][cat.tensor_obj(y, z)];
                let rhs = cat.compose(
                    &cat.tensor_mor(&cat.identities[y], &cat.symmetry[x][z]),
                    &cat.tensor_mor(&cat.symmetry[x][y], &cat.identities[z]),
                );
                r.check("hexagon", combo_sub(lhs, &rhs).is_empty(), || {
                    format!("({}, {}, {})", obj(x), obj(y), obj(z))
                });
            }
        }
    }
    for f in morphs.clone() {
        for g in morphs.clone() {
            let (mf, mg) = (&cat.morphisms[f], &cat.morphisms[g]);
            let lhs = cat.compose(&cat.symmetry[mf.target][mg.target], &cat.tensor_mor(&basis(f), &basis(g)));
            let rhs = cat.compose(&cat.tensor_mor(&basis(g), &basis(f)), &cat.symmetry[mf.source][mg.source]);
            r.check("symmetry naturality", lhs == rhs, || format!("({}, {})", name(f), name(g)));
        }
    }
    r
}

fn composable_before(cat: &Category, f: usize) -> Vec<usize> {
    let src = cat.morphisms[f].source;
    (0..cat.object_count()).flat_map(|w| cat.hom(w, src).to_vec()).collect()
}

/// Functor axioms on generators. Shape mismatches are structural errors.
pub fn validate_representation(cat: &Category, rep: &Representation) -> Result<ValidationReport> {
    check_shapes(cat, rep)?;
    let mut r = ValidationReport::new("representation");
    let levels = rep.levels();
    for d in 0..levels {
        for x in 0..cat.object_count() {
            let id = rep.act(cat, &cat.identities[x], x, x, d);
            r.check("functor identity", id.is_identity(), || {
                format!("F(id_{}) in degree {d}", cat.objects[x])
            });
        }
        for g in 0..cat.morphisms.len() {
            let mg = &cat.morphisms[g];
            for f in composable_before(cat, g) {
                let mf = &cat.morphisms[f];
                let lhs = rep.actions[g][d].mul(&rep.actions[f][d]);
                let comp = cat.compose(&cat.basis_combo(g), &cat.basis_combo(f));
                let rhs = rep.act(cat, &comp, mf.source, mg.target, d);
                r.check("functor composition", lhs == rhs, || {
                    format!("F({}) F({}) in degree {d}", cat.morphisms[g].name, mf.name)
                });
            }
        }
    }
    Ok(r)
}

pub(crate) fn check_shapes(cat: &Category, rep: &Representation) -> Result<()> {
    if rep.dims.len() != cat.object_count() || rep.actions.len() != cat.morphisms.len() {
        return Err(Error::Dimension(format!(
            "representation has {} spaces and {} action lists; the category has {} objects and {} morphisms",
            rep.dims.len(),
            rep.actions.len(),
            cat.object_count(),
            cat.morphisms.len()
        )));
    }
    let levels = rep.levels();
    for (m, per_degree) in rep.actions.iter().enumerate() {
        let info = &cat.morphisms[m];
        if per_degree.len() != levels {
            return Err(Error::Dimension(format!("action of {} has wrong degree count", info.name)));
        }
        for (d, a) in per_degree.iter().enumerate() {
            let want = (rep.dims[info.target][d], rep.dims[info.source][d]);
            if (a.rows(), a.cols()) != want {
                return Err(Error::Dimension(format!(
                    "action of {} in degree {d} is {}x{}, expected {}x{}",
                    info.name,
                    a.rows(),
                    a.cols(),
                    want.0,
                    want.1
                )));
            }
        }
    }
    Ok(())
}
