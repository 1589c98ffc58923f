//! Small categories used by examples and tests.

use super::{Backend, Category, CategoryBuilder, Representation};
use crate::linalg::{Field, Matrix};

pub fn trivial(field: Field) -> Category {
    Category::trivial(field)
}

/// Two objects `e, g` with `◇` the multiplication of `C_2` and
/// `hom(x, x) = R[C_2] = span{id_x, s_x}`. Morphisms tensor by the group
/// product; the symmetry is the identity.
pub fn c2conv(field: Field) -> Category {
    let mut b = CategoryBuilder::new(field, Backend::FiniteStrict, vec!["e".into(), "g".into()], 0);
    let (e, g) = (0, 1);
    b.set_tensor_obj(e, e, e);
    b.set_tensor_obj(e, g, g);
    b.set_tensor_obj(g, e, g);
    b.set_tensor_obj(g, g, e);
    let ids = [b.add_morphism("id_e", e, e), b.add_morphism("id_g", g, g)];
    let ss = [b.add_morphism("s_e", e, e), b.add_morphism("s_g", g, g)];
    let one = field.one();
    for x in 0..2 {
        b.set_composition(ss[x], ss[x], vec![(ids[x], one.clone())]);
    }
    // (group element, object) pairs multiply componentwise.
    let elem = |m: usize| if ids.contains(&m) { (0, if m == ids[0] { 0 } else { 1 }) } else { (1, if m == ss[0] { 0 } else { 1 }) };
    for &f in ids.iter().chain(&ss) {
        for &h in ids.iter().chain(&ss) {
            let (gf, xf) = elem(f);
            let (gh, xh) = elem(h);
            let obj = xf ^ xh;
            let m = if gf ^ gh == 0 { ids[obj] } else { ss[obj] };
            b.set_tensor_mor(f, h, vec![(m, one.clone())]);
        }
    }
    b.build().expect("c2conv is well formed")
}

/// Three objects whose tensor is commutative but not associative:
/// `(a◇a)◇b = 1` while `a◇(a◇b) = b`.
pub fn broken_associativity(field: Field) -> Category {
    let names = ["1", "a", "b"];
    let mut b = CategoryBuilder::new(field, Backend::FiniteStrict, names.iter().map(|s| s.to_string()).collect(), 0);
    let table = [[0, 1, 2], [1, 2, 1], [2, 1, 0]];
    for (x, row) in table.iter().enumerate() {
        for (y, &z) in row.iter().enumerate() {
            b.set_tensor_obj(x, y, z);
        }
    }
    for (x, name) in names.iter().enumerate() {
        b.add_morphism(&format!("id_{name}"), x, x);
    }
    b.build().expect("builder accepts the table; validation rejects it")
}

/// The regular representation on `c2conv`: two-dimensional at each object,
/// `s` acting by the swap.
pub fn c2_regular(cat: &Category) -> Representation {
    let field = cat.field;
    let mut rep = Representation::constant_dims(cat, vec![vec![2]; cat.object_count()]);
    let swap = Matrix::from_i64(field, &[&[0, 1], &[1, 0]]);
    for (id, m) in cat.morphisms.iter().enumerate() {
        rep.actions[id][0] = if m.name.starts_with("id") { Matrix::identity(field, 2) } else { swap.clone() };
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{day_convolution, identity_functor, validate_presentation, validate_representation};

    #[test]
    fn c2conv_is_valid() {
        let cat = c2conv(Field::Rational);
        let r = validate_presentation(&cat);
        assert!(r.passed(), "{:?}", r.violations);
        assert!(validate_presentation(&trivial(Field::Rational)).passed());
    }

    #[test]
    fn unit_functor_dims() {
        let cat = c2conv(Field::Rational);
        let i = identity_functor(&cat);
        assert_eq!(i.dims, vec![vec![2], vec![0]]);
        assert!(validate_representation(&cat, &i).unwrap().passed());
    }

    #[test]
    fn day_unit_laws_on_dims() {
        let cat = c2conv(Field::Rational);
        let i = identity_functor(&cat);
        let f = c2_regular(&cat);
        assert!(validate_representation(&cat, &f).unwrap().passed());
        let if_ = day_convolution(&cat, &i, &f).unwrap();
        assert_eq!(if_.rep.dims, f.dims);
        assert!(validate_representation(&cat, &if_.rep).unwrap().passed());
        let ii = day_convolution(&cat, &i, &i).unwrap();
        assert_eq!(ii.rep.dims, i.dims);
        let ff = day_convolution(&cat, &f, &f).unwrap();
        assert!(validate_representation(&cat, &ff.rep).unwrap().passed());
    }

    #[test]
    fn broken_triple_is_named() {
        let r = validate_presentation(&broken_associativity(Field::Rational));
        assert!(!r.passed());
        assert!(r
            .violations
            .iter()
            .any(|v| v.axiom == "object associativity" && v.location == "(a, a, b)"));
    }

    #[test]
    fn non_functorial_action_is_reported() {
        let cat = c2conv(Field::Rational);
        let mut f = c2_regular(&cat);
        let s = cat.morphism_index("s_g").unwrap();
        f.actions[s][0] = Matrix::from_i64(Field::Rational, &[&[1, 1], &[0, 1]]);
        let r = validate_representation(&cat, &f).unwrap();
        assert!(!r.passed());
        assert!(r.violations.iter().any(|v| v.axiom == "functor composition"));
    }
}
