use std::sync::Arc;

use proptest::prelude::*;

use koszulcat::koszul::build_koszul;
use koszulcat::linalg::{bareiss, gauss_jordan, kernel, rank, Field, Matrix};
use koszulcat::monoid::presets::{dual_numbers, ground};
use koszulcat::monoid::{cyclic_quotient, Element, Module};
use koszulcat::poly::{polynomial_monoid, variable_element};
use koszulcat::problem::{Located, Problem};
use koszulcat::syzygy::tensor_over_monoid;

fn matrix(field: Field, rows: &[Vec<i64>]) -> Matrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Matrix::from_i64(field, &refs)
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..=4, c), r))
}

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::prime(5).unwrap()), Just(Field::prime(7).unwrap())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalars_round_trip_through_text(num in -50i64..50, den in 1i64..20, f in field()) {
        let text = format!("{num}/{den}");
        if let Ok(s) = f.parse(&text) {
            prop_assert_eq!(f.parse(&s.to_string()).unwrap(), s);
        }
    }

    #[test]
    fn nonzero_scalars_invert(v in -30i64..30, f in field()) {
        let s = f.from_i64(v);
        match s.inv() {
            Some(i) => prop_assert!((s * i).is_one()),
            None => prop_assert!(s.is_zero()),
        }
    }

    #[test]
    fn rank_nullity(rows in small_matrix(), f in field()) {
        let m = matrix(f, &rows);
        prop_assert_eq!(rank(&m) + kernel(&m).dim(), m.cols());
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
        prop_assert!(m.mul(&kernel(&m).basis).is_zero());
    }

    #[test]
    fn fraction_free_and_sparse_elimination_agree(rows in small_matrix()) {
        let m = matrix(Field::Rational, &rows);
        let gj = gauss_jordan(&m, m.cols());
        if let Some(b) = bareiss(&m, m.cols()) {
            prop_assert_eq!(b.rank(), gj.rank());
            prop_assert_eq!(b.pivots, gj.pivots);
        }
    }

    #[test]
    fn koszul_differentials_square_to_zero(coeffs in prop::collection::vec((-3i64..=3, -3i64..=3, -3i64..=3), 1..=3)) {
        let a = Arc::new(polynomial_monoid(&Arc::new(ground(Field::Rational)), 2, 4).unwrap());
        let (t1, t2) = (variable_element(&a, 1).unwrap(), variable_element(&a, 2).unwrap());
        let f = a.field();
        let alpha: Vec<Element> = coeffs
            .iter()
            .map(|&(p, q, r)| {
                let lin = t1.scale(&f.from_i64(p)).add(&t2.scale(&f.from_i64(q)));
                lin.add(&a.multiply(&t1, &t2).scale(&f.from_i64(r)))
            })
            .collect();
        let k = build_koszul(&a, &alpha, None).unwrap();
        prop_assert!(k.complex.check_dd().passed());
    }

    #[test]
    fn tensor_over_a_commutative_monoid_is_symmetric(k in 0usize..=4, l in 0usize..=4) {
        let a = Arc::new(polynomial_monoid(&Arc::new(ground(Field::Rational)), 1, 4).unwrap());
        let t = variable_element(&a, 1).unwrap();
        let pow = |n: usize| (0..n).fold(a.unit.clone(), |acc, _| a.multiply(&acc, &t));
        let m = cyclic_quotient(&a, &[pow(k)]).unwrap();
        let n = cyclic_quotient(&a, &[pow(l)]).unwrap();
        let mn = tensor_over_monoid(&m, &n).unwrap();
        let nm = tensor_over_monoid(&n, &m).unwrap();
        prop_assert_eq!(mn.dims(), nm.dims());
        // A/(t^k) ⊗ A/(t^l) = A/(t^min(k,l)).
        let expected: Vec<usize> = (0..=4).map(|d| usize::from(d < k.min(l))).collect();
        prop_assert_eq!(&mn.dims()[0], &expected);
    }

    #[test]
    fn described_elements_parse_back(c in prop::collection::vec(-5i64..=5, 6)) {
        let src = "field = \"Q\"\n[monoid]\nkind = \"algebra\"\nbasis = [\"1\"]\nunit = \"1\"\nvariables = [\"x\", \"y\"]\ncap = 2\n";
        let problem = Problem::parse(src, "mem.kz", None).unwrap();
        let a = problem.monoid(None).unwrap();
        let f = a.field();
        let mut e = a.zero_element(0);
        let mut it = c.iter();
        for part in e.parts.iter_mut() {
            for slot in part.iter_mut() {
                *slot = f.from_i64(*it.next().unwrap());
            }
        }
        let text = a.describe(&e);
        let back = problem.element(&Located::argument(text.clone(), "--alpha"), &a).unwrap();
        prop_assert_eq!(back, e, "{}", text);
    }
}

#[test]
fn dual_numbers_module_dimensions() {
    let a = Arc::new(dual_numbers(Field::Rational));
    let x = a.basis_element(0, 0, 1);
    let k = cyclic_quotient(&a, &[x]).unwrap();
    assert_eq!(k.carrier.dims, vec![vec![1]]);
    assert_eq!(Module::regular(&a).carrier.dims, vec![vec![2]]);
}
