//! Ready-made monoids.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{pairing_from_fn, Element, Grading, Monoid};
use crate::category::{identity_functor, Category, Representation};
use crate::error::Result;
use crate::linalg::{Field, Matrix, Scalar};

/// A finite-dimensional algebra on the trivial backend from its
/// multiplication table on a basis.
pub fn algebra(
    field: Field,
    name: &str,
    labels: &[&str],
    unit: usize,
    mut mult: impl FnMut(usize, usize) -> Vec<(usize, Scalar)>,
) -> Result<Monoid> {
    let cat = Arc::new(Category::trivial(field));
    let n = labels.len();
    let mut carrier = Representation::constant_dims(&cat, vec![vec![n]]);
    carrier.actions[0][0] = Matrix::identity(field, n);
    let mut products = BTreeMap::new();
    products.insert((0, 0, 0, 0), pairing_from_fn(field, n, n, n, &mut mult));
    let mut u = vec![field.zero(); n];
    u[unit] = field.one();
    Monoid::new(
        name,
        cat,
        carrier,
        Grading::Exact,
        Element { object: 0, parts: vec![u] },
        products,
        Some(vec![vec![labels.iter().map(|s| s.to_string()).collect()]]),
    )
}

/// The ground field as a monoid on the trivial backend.
pub fn ground(field: Field) -> Monoid {
    algebra(field, "Q", &["1"], 0, |_, _| vec![(0, field.one())]).expect("ground field")
}

/// `Q[x]/(x²)` with basis `{1, x}`.
pub fn dual_numbers(field: Field) -> Monoid {
    algebra(field, "Q[x]/(x^2)", &["1", "x"], 0, |i, j| match i + j {
        0 => vec![(0, field.one())],
        1 => vec![(1, field.one())],
        _ => vec![],
    })
    .expect("dual numbers")
}

/// Group algebra from a multiplication table of group element indices.
pub fn group_algebra(field: Field, name: &str, labels: &[&str], table: &[Vec<usize>]) -> Result<Monoid> {
    let e = (0..labels.len())
        .find(|&i| (0..labels.len()).all(|j| table[i][j] == j))
        .unwrap_or(0);
    algebra(field, name, labels, e, |i, j| vec![(table[i][j], field.one())])
}

/// `Q[C_n]` with basis `g^0, ..., g^{n-1}`.
pub fn cyclic_group_algebra(field: Field, n: usize) -> Monoid {
    let labels: Vec<String> = (0..n).map(|i| if i == 0 { "1".into() } else { format!("g^{i}") }).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    group_algebra(field, &format!("Q[C{n}]"), &refs, &table).expect("cyclic group")
}

/// Permutations of `{0, 1, 2}` in lexicographic order of one-line notation.
pub fn s3_elements() -> Vec<[usize; 3]> {
    vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
}

/// `Q[S_3]` with product `(στ)(i) = σ(τ(i))`.
pub fn s3_group_algebra(field: Field) -> Monoid {
    let perms = s3_elements();
    let labels = ["e", "(23)", "(12)", "(123)", "(132)", "(13)"];
    let table: Vec<Vec<usize>> = perms
        .iter()
        .map(|s| {
            perms
                .iter()
                .map(|t| {
                    let st = [s[t[0]], s[t[1]], s[t[2]]];
                    perms.iter().position(|p| *p == st).expect("closed")
                })
                .collect()
        })
        .collect();
    group_algebra(field, "Q[S3]", &labels, &table).expect("S3")
}

/// The unit functor `I = X(1, -)` with pairing `f ⊗ g ↦ f ◇ g`.
pub fn identity_monoid(cat: &Arc<Category>) -> Result<Monoid> {
    let field = cat.field;
    let carrier = identity_functor(cat);
    let n = cat.object_count();
    let one = cat.unit;
    let mut products = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            let xy = cat.tensor_obj(x, y);
            let (bx, by, bxy) = (cat.hom(one, x), cat.hom(one, y), cat.hom(one, xy));
            let p = pairing_from_fn(field, bxy.len(), bx.len(), by.len(), |a, b| {
                cat.tensor_mor(&cat.basis_combo(bx[a]), &cat.basis_combo(by[b]))
                    .into_iter()
                    .map(|(id, c)| (bxy.iter().position(|&m| m == id).expect("f ◇ g in hom(1, x◇y)"), c))
                    .collect()
            });
            products.insert((x, 0, y, 0), p);
        }
    }
    let basis = cat.hom(one, one);
    let mut u = vec![field.zero(); basis.len()];
    for (id, c) in &cat.identities[one] {
        u[basis.iter().position(|m| m == id).expect("identity in hom(1, 1)")] = c.clone();
    }
    let labels = (0..n)
        .map(|x| vec![cat.hom(one, x).iter().map(|&m| cat.morphisms[m].name.clone()).collect()])
        .collect();
    Monoid::new("I", cat.clone(), carrier, Grading::Exact, Element { object: one, parts: vec![u] }, products, Some(labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::presets::c2conv;
    use crate::monoid::{commutant, validate_monoid};

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn presets_are_monoids() {
        for m in [ground(q()), dual_numbers(q()), s3_group_algebra(q()), cyclic_group_algebra(q(), 4)] {
            let r = validate_monoid(&m).unwrap();
            assert!(r.passed(), "{}: {:?}", m.name, r.violations);
        }
        let cat = Arc::new(c2conv(q()));
        let i = identity_monoid(&cat).unwrap();
        assert!(validate_monoid(&i).unwrap().passed());
    }

    #[test]
    fn perturbed_constant_breaks_associativity() {
        let mut m = s3_group_algebra(q());
        let p = m.products.get_mut(&(0, 0, 0, 0)).unwrap();
        // (12)(12) = (23) instead of e
        let mut dense = p.to_dense();
        dense[0][2 * 6 + 2] = q().zero();
        dense[1][2 * 6 + 2] = q().one();
        *p = Matrix::from_dense(q(), 6, 36, dense);
        let r = validate_monoid(&m).unwrap();
        assert!(r.violations.iter().any(|v| v.axiom == "associativity"));
    }

    #[test]
    fn commutant_dimensions() {
        assert_eq!(commutant(&dual_numbers(q()), 0)[0].dim(), 2);
        assert_eq!(commutant(&s3_group_algebra(q()), 0)[0].dim(), 3);
        assert_eq!(commutant(&cyclic_group_algebra(q(), 5), 0)[0].dim(), 5);
    }
}
