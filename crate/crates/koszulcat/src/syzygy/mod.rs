//! Tensor products over a monoid and finite split resolutions of
//! `A_n`-modules.

mod tensor;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

pub use tensor::{check_restriction_compatibility, tensor_over_monoid, RestrictionCertificate, TensorOver};

use crate::category::Representation;
use crate::error::{Error, Result};
use crate::hochschild::EnvelopingData;
use crate::koszul::{assemble, ChainComplex, DimTable, Homotopy, SplitCertificate};
use crate::linalg::{kronecker, Matrix};
use crate::monoid::{default_weights, mult_operator, Grading, LinearOperator, Module};
use crate::poly::{binomial, monomial_count, monomial_label, monomial_times, monomials, variable_element};

/// A term of the resolution exhibited as induced from `F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeTag {
    pub term: usize,
    /// `K_p(A_n) ⊗_I M = (A_n ⊗ M)^{C(n, p)}`
    pub copies: usize,
    pub induced_from: String,
    /// Dimensions agree with `C(n, p) · dim (A_n ⊗ M)` on every cell.
    pub dims_match: bool,
}

/// `0 -> K_n(A_n) ⊗ M -> ... -> A_n ⊗ M -> M -> 0` with certificates.
#[derive(Clone, Debug)]
pub struct SyzygyResolution {
    pub n: usize,
    pub window: usize,
    pub module: String,
    /// Terms `p = 0..=n`, without `M`.
    pub complex: ChainComplex,
    /// `M` in homological degree `-1`.
    pub augmented: ChainComplex,
    pub dd_zero: bool,
    pub exact: bool,
    /// `homology[p][x][e]` of the unaugmented complex on the window.
    pub homology: Vec<DimTable>,
    pub h0_matches_module: bool,
    pub homotopy: Homotopy,
    pub split: SplitCertificate,
    /// Whether the pointwise homotopy also commutes with the `X`-action.
    pub homotopy_natural: bool,
    pub tags: Vec<FreeTag>,
    pub length: usize,
}

impl SyzygyResolution {
    pub fn passed(&self) -> bool {
        self.dd_zero
            && self.exact
            && self.h0_matches_module
            && self.split.passed()
            && self.tags.iter().all(|t| t.dims_match)
            && self.length <= self.n + 1
    }
}

/// Offsets of the blocks `u^a ⊗ M_{d-k}` inside `(A_n ⊗ M)(x)_d`, `k` ascending.
fn induced_offsets(m: &Module, n: usize, x: usize, d: usize) -> Vec<usize> {
    let mut off = 0;
    (0..=d)
        .map(|k| {
            let o = off;
            off += monomial_count(n, k) * m.dim(x, d - k);
            o
        })
        .collect()
}

/// `A_n ⊗_I M ≅ M[u]`, graded by total degree and truncated at the cap of `M`.
fn induced_module(m: &Module, n: usize, vars: &[String]) -> Module {
    let cat = &m.category;
    let field = m.field();
    let levels = m.levels();
    let objects = cat.object_count();
    let dims: DimTable = (0..objects)
        .map(|x| (0..levels).map(|d| (0..=d).map(|k| monomial_count(n, k) * m.dim(x, d - k)).sum()).collect())
        .collect();
    let mut carrier = Representation { field, dims: dims.clone(), actions: Vec::new() };
    carrier.actions = cat
        .morphisms
        .iter()
        .enumerate()
        .map(|(phi, _)| {
            (0..levels)
                .map(|d| {
                    let blocks: Vec<Matrix> = (0..=d)
                        .map(|k| kronecker(&Matrix::identity(field, monomial_count(n, k)), &m.carrier.actions[phi][d - k]))
                        .collect();
                    let refs: Vec<&Matrix> = blocks.iter().collect();
                    Matrix::block_diag(field, &refs)
                })
                .collect()
        })
        .collect();
    let labels = (0..objects)
        .map(|x| {
            (0..levels)
                .map(|d| {
                    (0..=d)
                        .flat_map(|k| {
                            let ls = &m.labels[x][d - k];
                            monomials(n, k).into_iter().flat_map(move |a| {
                                let mono = monomial_label(vars, &a);
                                ls.iter().map(move |l| format!("{mono}⊗{l}"))
                            })
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Module {
        name: format!("A_n ⊗ {}", m.name),
        category: cat.clone(),
        weights: default_weights(&carrier, m.grading),
        carrier,
        grading: m.grading,
        left: None,
        right: None,
        labels,
    }
}

/// `L_{u_i - t_i}` on `M[u]`: `u^a ⊗ m ↦ u^{a + e_i} ⊗ m - u^a ⊗ t_i m`.
fn difference_operator(m: &Module, induced: &Module, t_i: &LinearOperator, n: usize, i: usize) -> LinearOperator {
    let field = m.field();
    let levels = m.levels();
    let objects = m.category.object_count();
    let index: Vec<HashMap<Vec<usize>, usize>> =
        (0..levels).map(|k| monomials(n, k).into_iter().enumerate().map(|(p, a)| (a, p)).collect()).collect();
    let mut blocks = BTreeMap::new();
    for x in 0..objects {
        for d in 0..levels.saturating_sub(1) {
            let (src, dst) = (induced_offsets(m, n, x, d), induced_offsets(m, n, x, d + 1));
            let mut entries = Vec::new();
            for k in 0..=d {
                let dm = m.dim(x, d - k);
                let t = t_i.block(x, d - k, d - k + 1);
                let dm1 = m.dim(x, d - k + 1);
                for (a, &pa) in &index[k] {
                    let mut up = a.clone();
                    up[i] += 1;
                    let pu = index[k + 1][&up];
                    for b in 0..dm {
                        let col = src[k] + pa * dm + b;
                        entries.push((dst[k + 1] + pu * dm + b, col, field.one()));
                        for (r, v) in t.column(b).into_iter().enumerate() {
                            if !v.is_zero() {
                                entries.push((dst[k] + pa * dm1 + r, col, -v));
                            }
                        }
                    }
                }
            }
            let rows = induced.dim(x, d + 1);
            blocks.insert((x, d, d + 1), Matrix::from_triplets(field, rows, induced.dim(x, d), entries));
        }
    }
    LinearOperator { field, source: induced.carrier.dims.clone(), target: induced.carrier.dims.clone(), blocks }
}

/// Builds the resolution of an `A_n`-module `M` obtained from the Koszul
/// bimodule resolution by `- ⊗_{A_n} M`, in the form
/// `K_p(A_n) ⊗_I M ≅ ⊕_{|S| = p} M[u]` with `d` built from `u_i - t_i`, and
/// certifies it on the window `d ≤ cap - n`.
pub fn build_syzygy_resolution(e: &EnvelopingData, m: &Module) -> Result<SyzygyResolution> {
    let an = &e.an;
    let Some(left) = &m.left else {
        return Err(Error::Input(format!("{} has no left action", m.name)));
    };
    if left.monoid.name != an.name || m.levels() != an.levels() || m.grading != (Grading::Truncated { cap: e.cap }) {
        return Err(Error::Input(format!("{} is not a module over {}", m.name, an.name)));
    }
    let n = e.n;
    let window = e.cap.checked_sub(n).ok_or_else(|| {
        Error::Window(format!("cap {} is below n = {n}; no degree can be certified", e.cap))
    })?;
    let field = m.field();
    let objects = m.category.object_count();
    let levels = m.levels();
    let vars: Vec<String> = if n == 1 { vec!["u".into()] } else { (1..=n).map(|i| format!("u{i}")).collect() };
    let induced = induced_module(m, n, &vars);

    let operators: Vec<LinearOperator> = (1..=n)
        .map(|i| {
            let t = mult_operator(an, &variable_element(an, i)?, m)?;
            Ok(difference_operator(m, &induced, &t, n, i - 1))
        })
        .collect::<Result<_>>()?;
    let degrees = vec![1; n];
    let complex = assemble(&induced, &operators, &degrees);

    let base = &an.poly.as_ref().expect("A_n is polynomial").base;
    let mut cache: HashMap<Vec<usize>, LinearOperator> = HashMap::new();
    let mut eps = Vec::with_capacity(objects);
    for x in 0..objects {
        let mut per = Vec::with_capacity(levels);
        for d in 0..levels {
            let offs = induced_offsets(m, n, x, d);
            let mut out = Matrix::zeros(field, m.dim(x, d), induced.dim(x, d));
            for k in 0..=d {
                let dm = m.dim(x, d - k);
                for (pa, a) in monomials(n, k).into_iter().enumerate() {
                    if !cache.contains_key(&a) {
                        let op = mult_operator(an, &monomial_times(an, &base.unit, &a), m)?;
                        cache.insert(a.clone(), op);
                    }
                    out.add_block(0, offs[k] + pa * dm, &cache[&a].block(x, d - k, d));
                }
            }
            per.push(out);
        }
        eps.push(per);
    }
    let augmented = complex.augment(m.carrier.dims.clone(), eps);

    let dd_zero = augmented.check_dd().passed();
    let exact = augmented.is_exact(window);
    let homology: Vec<DimTable> = (0..=n).map(|p| complex.homology(p as isize, window)).collect();
    let m_dims: DimTable = m.carrier.dims.iter().map(|per| per[..=window].to_vec()).collect();
    let h0_matches_module = homology[0] == m_dims;

    let homotopy = augmented.contracting_homotopy(window)?;
    let report = augmented.verify_homotopy(&homotopy);
    let split = SplitCertificate { cells_checked: report.checked(), failures: report.violations.len(), natural: None };
    let subsets: Vec<Vec<Vec<usize>>> = (0..=n).map(|p| crate::koszul::subsets(n, p)).collect();
    let homotopy_natural = m.category.morphisms.iter().enumerate().all(|(phi, info)| {
        (0..homotopy.levels).all(|c| {
            (0..=n + 1).all(|term| {
                let act = |t: usize| {
                    if t == 0 {
                        m.carrier.actions[phi][c].clone()
                    } else if t <= n + 1 {
                        crate::koszul::term_morphism_action(&induced, &subsets[t - 1], &degrees, phi, c)
                    } else {
                        Matrix::zeros(field, 0, 0)
                    }
                };
                let upper = if term <= n { act(term + 1) } else { Matrix::zeros(field, 0, 0) };
                homotopy.maps[term][info.target][c].mul(&act(term))
                    == upper.mul(&homotopy.maps[term][info.source][c])
            })
        })
    });

    let tags = (0..=n)
        .map(|p| {
            let copies = binomial(n, p);
            let dims_match = (0..objects).all(|x| {
                (0..levels).all(|c| {
                    let expect = if c >= p {
                        copies * (0..=c - p).map(|k| monomial_count(n, k) * m.dim(x, c - p - k)).sum::<usize>()
                    } else {
                        0
                    };
                    complex.dim(p as isize, x, c) == expect
                })
            });
            FreeTag { term: p, copies, induced_from: format!("{} ⊗_I {}", an.name, m.name), dims_match }
        })
        .collect();
    let length = complex.terms();
    Ok(SyzygyResolution {
        n,
        window,
        module: m.name.clone(),
        complex,
        augmented,
        dd_zero,
        exact,
        homology,
        h0_matches_module,
        homotopy,
        split,
        homotopy_natural,
        tags,
        length,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::hochschild::{build_enveloping, certify_tensor_idempotent};
    use crate::linalg::Field;
    use crate::monoid::presets::{dual_numbers, ground};
    use crate::monoid::cyclic_quotient;

    fn enveloping(n: usize, cap: usize) -> EnvelopingData {
        let a = Arc::new(ground(Field::Rational));
        let cert = certify_tensor_idempotent(&a).unwrap();
        build_enveloping(&a, &cert, n, cap).unwrap()
    }

    #[test]
    fn resolution_of_the_residue_field() {
        let e = enveloping(1, 4);
        let t = variable_element(&e.an, 1).unwrap();
        let m = cyclic_quotient(&e.an, &[t]).unwrap();
        assert_eq!(m.carrier.dims, vec![vec![1, 0, 0, 0, 0]]);
        let r = build_syzygy_resolution(&e, &m).unwrap();
        assert!(r.passed(), "{:?} {:?}", r.split, r.homology);
        assert_eq!(r.length, 2);
        assert!(r.homotopy_natural);
    }

    #[test]
    fn resolution_of_the_regular_module() {
        let e = enveloping(2, 4);
        let m = Module::regular(&e.an);
        let r = build_syzygy_resolution(&e, &m).unwrap();
        assert!(r.passed());
        assert_eq!(r.homology[0], vec![vec![1, 2, 3]]);
        assert_eq!(r.length, 3);
    }

    #[test]
    fn tensor_over_dual_numbers() {
        let a = Arc::new(dual_numbers(Field::Rational));
        let reg = Module::regular(&a);
        let x = a.basis_element(0, 0, 1);
        let k = cyclic_quotient(&a, &[x]).unwrap();
        assert_eq!(tensor_over_monoid(&reg, &reg).unwrap().dims(), &vec![vec![2]]);
        assert_eq!(tensor_over_monoid(&reg, &k).unwrap().dims(), &vec![vec![1]]);
        assert_eq!(tensor_over_monoid(&k, &k).unwrap().dims(), &vec![vec![1]]);
        let c = check_restriction_compatibility(&reg, &reg).unwrap();
        assert!(c.passed(), "{c:?}");
    }

    #[test]
    fn graded_tensor_collapses() {
        let e = enveloping(1, 3);
        let t = variable_element(&e.an, 1).unwrap();
        let reg = Module::regular(&e.an);
        let k = cyclic_quotient(&e.an, &[t]).unwrap();
        assert_eq!(tensor_over_monoid(&reg, &k).unwrap().dims(), &vec![vec![1, 0, 0, 0]]);
        assert_eq!(tensor_over_monoid(&reg, &reg).unwrap().dims(), &vec![vec![1, 1, 1, 1]]);
    }
}
