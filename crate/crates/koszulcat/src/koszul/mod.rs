//! Koszul complexes `K(α)` of central elements, their homology, the
//! resolution check and the Pascal decomposition.

mod complex;
mod pascal;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kronecker, Field, Matrix};
use crate::monoid::{
    is_central, is_regular_sequence, mult_operator, quotient_module, Element, Grading, LinearOperator, Module,
    Monoid, RegularityCertificate,
};
use crate::validation::ValidationReport;

pub use complex::{ChainComplex, DimTable, Homotopy, SplitCertificate};
pub use pascal::{pascal_split, PascalCertificate};

/// `p`-subsets of `{0, ..., n-1}` in lexicographic order.
pub fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p <= n {
        rec(0, n, p, &mut Vec::new(), &mut out);
    }
    out
}

/// `K(α) ⊗ M`: term `p` is `⊕_{|S| = p} M`, summand `S` at cell `e` holding
/// `M_{e - k(S)}` with `k(S) = Σ_{i ∈ S} deg α_i`, and
/// `d_S = Σ_k (-1)^{k+1} L_{α_{i_k}}` into the summand `S \ {i_k}`.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    pub complex: ChainComplex,
    pub monoid: Arc<Monoid>,
    pub module: Module,
    pub elements: Vec<Element>,
    pub descriptions: Vec<String>,
    pub operators: Vec<LinearOperator>,
    /// `deg α_i` (zero when ungraded or totalized).
    pub degrees: Vec<usize>,
    /// `subsets[p]`
    pub subsets: Vec<Vec<Vec<usize>>>,
    /// Largest certified cell.
    pub window: usize,
    /// Nonhomogeneous `α` forced all levels into one.
    pub totalized: bool,
}

impl KoszulComplex {
    pub fn n(&self) -> usize {
        self.elements.len()
    }

    /// `dim` of each term as a count of copies of `M`.
    pub fn term_ranks(&self) -> Vec<usize> {
        self.subsets.iter().map(Vec::len).collect()
    }

    /// Offsets of the summands of term `p` at cell `(x, e)`.
    pub fn summand_offsets(&self, p: usize, x: usize, e: usize) -> Vec<(usize, Option<usize>)> {
        summand_layout(&self.module, &self.subsets[p], &self.degrees, x, e)
    }

    /// Homology on the certified window; a wider request is an error.
    pub fn homology(&self, p: usize, max_cell: usize) -> Result<DimTable> {
        if max_cell > self.window {
            return Err(Error::Window(format!(
                "requested degrees up to {max_cell}, certified only up to {}",
                self.window
            )));
        }
        Ok(self.complex.homology(p as isize, max_cell))
    }

    /// Action of the morphism `phi` on term `p` at cell `e`.
    pub fn morphism_action(&self, p: usize, phi: usize, e: usize) -> Matrix {
        term_morphism_action(&self.module, &self.subsets[p], &self.degrees, phi, e)
    }

    /// The left `A`-action and the `X`-action commute with `d`.
    pub fn check_module_morphisms(&self) -> ValidationReport {
        let mut r = ValidationReport::new("Koszul differentials are module morphisms");
        let cat = &self.module.category;
        let field = self.complex.field;
        let levels = self.complex.levels();
        let n_obj = cat.object_count();
        let a = &self.monoid;
        let left = self.module.left.as_ref().expect("left module");
        for p in 1..=self.n() {
            for x in 0..n_obj {
                for e in 0..levels {
                    let d = self.complex.diff(p as isize, x, e);
                    for (phi, info) in cat.morphisms.iter().enumerate() {
                        if info.source != x {
                            continue;
                        }
                        let act = |q: usize| self.morphism_action(q, phi, e);
                        let ok = self.complex.diff(p as isize, info.target, e).mul(&act(p)) == act(p - 1).mul(&d);
                        r.check("naturality of d", ok, || format!("{} at term {p}, degree {e}", info.name));
                    }
                    for y in 0..n_obj {
                        let yx = cat.tensor_obj(y, x);
                        for f in 0..levels - e {
                            for i in 0..a.dim(y, f) {
                                let col = Matrix::from_triplets(field, a.dim(y, f), 1, [(i, 0, field.one())]);
                                let act = |q: usize| {
                                    self.term_diagonal(q, x, yx, e, e + f, |lvl, _| {
                                        left.maps[&(y, f, x, lvl)]
                                            .mul(&kronecker(&col, &Matrix::identity(field, self.module.dim(x, lvl))))
                                    })
                                };
                                let ok = self.complex.diff(p as isize, yx, e + f).mul(&act(p)) == act(p - 1).mul(&d);
                                r.check("A-linearity of d", ok, || {
                                    format!("{} at term {p}, degree {e}", a.labels[y][f][i])
                                });
                            }
                        }
                    }
                }
            }
        }
        r
    }

    /// Block-diagonal map on term `p` from cell `(x, e)` to `(y, e2)` acting
    /// by `f(level, S)` on each summand.
    fn term_diagonal(
        &self,
        p: usize,
        x: usize,
        y: usize,
        e: usize,
        e2: usize,
        f: impl Fn(usize, &[usize]) -> Matrix,
    ) -> Matrix {
        let field = self.complex.field;
        let src = self.summand_offsets(p, x, e);
        let dst = self.summand_offsets(p, y, e2);
        let mut m = Matrix::zeros(field, self.complex.dim(p as isize, y, e2), self.complex.dim(p as isize, x, e));
        for (s, ((so, sl), (to, tl))) in self.subsets[p].iter().zip(src.iter().zip(&dst)) {
            if let (Some(lvl), Some(_)) = (sl, tl) {
                m.add_block(*to, *so, &f(*lvl, s));
            }
        }
        m
    }
}

/// `(offset, M-level)` of each summand at a cell; the level is `None` when
/// the summand is zero there.
pub(crate) fn summand_layout(
    m: &Module,
    subsets: &[Vec<usize>],
    degrees: &[usize],
    x: usize,
    e: usize,
) -> Vec<(usize, Option<usize>)> {
    let mut off = 0;
    subsets
        .iter()
        .map(|s| {
            let k: usize = s.iter().map(|&i| degrees[i]).sum();
            let lvl = e.checked_sub(k).filter(|&l| l < m.levels());
            let o = off;
            off += lvl.map_or(0, |l| m.dim(x, l));
            (o, lvl)
        })
        .collect()
}

/// `X(phi)` acting summandwise on a Koszul term at cell `e`.
pub(crate) fn term_morphism_action(m: &Module, subsets: &[Vec<usize>], degrees: &[usize], phi: usize, e: usize) -> Matrix {
    let info = &m.category.morphisms[phi];
    let src = summand_layout(m, subsets, degrees, info.source, e);
    let dst = summand_layout(m, subsets, degrees, info.target, e);
    let size = |layout: &[(usize, Option<usize>)], x: usize| {
        layout.last().map_or(0, |&(o, l)| o + l.map_or(0, |l| m.dim(x, l)))
    };
    let mut out = Matrix::zeros(m.field(), size(&dst, info.target), size(&src, info.source));
    for ((so, sl), (to, _)) in src.into_iter().zip(dst) {
        if let Some(lvl) = sl {
            out.add_block(to, so, &m.carrier.actions[phi][lvl]);
        }
    }
    out
}

/// Assembles the complex from operators `L_i` raising the level by
/// `degrees[i]`.
pub(crate) fn assemble(m: &Module, operators: &[LinearOperator], degrees: &[usize]) -> ChainComplex {
    let n = operators.len();
    let cat = m.category.clone();
    let field = m.field();
    let levels = m.levels();
    let objs = cat.object_count();
    let subs: Vec<Vec<Vec<usize>>> = (0..=n).map(|p| subsets(n, p)).collect();
    let layouts: Vec<Vec<Vec<Vec<(usize, Option<usize>)>>>> = (0..=n)
        .map(|p| (0..objs).map(|x| (0..levels).map(|e| summand_layout(m, &subs[p], degrees, x, e)).collect()).collect())
        .collect();
    let dims: Vec<Vec<Vec<usize>>> = (0..=n)
        .map(|p| {
            (0..objs)
                .map(|x| {
                    (0..levels)
                        .map(|e| {
                            subs[p]
                                .iter()
                                .zip(&layouts[p][x][e])
                                .map(|(_, (_, l))| l.map_or(0, |l| m.dim(x, l)))
                                .sum()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut diffs = Vec::with_capacity(n);
    for p in 1..=n {
        let index_of = |s: &[usize]| subs[p - 1].binary_search_by(|t| t.as_slice().cmp(s)).expect("face");
        let per_obj = (0..objs)
            .map(|x| {
                (0..levels)
                    .map(|e| {
                        let mut d = Matrix::zeros(field, dims[p - 1][x][e], dims[p][x][e]);
                        for (s, &(so, sl)) in subs[p].iter().zip(&layouts[p][x][e]) {
                            let Some(from) = sl else { continue };
                            for (k, &i) in s.iter().enumerate() {
                                let face: Vec<usize> = s.iter().copied().filter(|&j| j != i).collect();
                                let (to_off, to_lvl) = layouts[p - 1][x][e][index_of(&face)];
                                let Some(to) = to_lvl else { continue };
                                let mut block = operators[i].block(x, from, to);
                                if k % 2 == 1 {
                                    block = block.neg();
                                }
                                d.add_block(to_off, so, &block);
                            }
                        }
                        d
                    })
                    .collect()
            })
            .collect();
        diffs.push(per_obj);
    }
    ChainComplex { field, category: cat, lowest: 0, dims, diffs }
}

/// Builds `K(α) ⊗ M` (with `M = A` when no module is given). Every `α_i`
/// must lie in `C_A(1)`. Nonhomogeneous `α` over a graded `A` are handled
/// by collapsing all levels into one; the result is then flagged.
pub fn build_koszul(a: &Arc<Monoid>, alpha: &[Element], m: Option<&Module>) -> Result<KoszulComplex> {
    if alpha.is_empty() {
        return Err(Error::Input("the Koszul complex needs at least one element (n ≥ 1)".into()));
    }
    for g in alpha {
        if g.object != a.unit_object() {
            return Err(Error::WrongObject(format!("{} is not at the unit object", a.describe(g))));
        }
        if !is_central(a, g) {
            return Err(Error::NotCentral(format!("{} is not in the commutant", a.describe(g))));
        }
    }
    let module = m.cloned().unwrap_or_else(|| Module::regular(a));
    let descriptions: Vec<String> = alpha.iter().map(|g| a.describe(g)).collect();
    let graded = a.levels() > 1;
    let homogeneous = alpha.iter().all(|g| g.is_zero() || g.homogeneous_level().is_some());
    let (monoid, module, elements, totalized) = if graded && !homogeneous {
        let total = Arc::new(a.totalize());
        let tm = module.totalize(&total);
        let els = alpha.iter().map(|g| a.totalize_element(g)).collect();
        (total, tm, els, true)
    } else {
        (a.clone(), module, alpha.to_vec(), false)
    };
    let degrees: Vec<usize> = elements.iter().map(|g| g.homogeneous_level().unwrap_or(0)).collect();
    let window = match monoid.grading {
        Grading::Truncated { cap } => {
            let top = degrees.iter().copied().max().unwrap_or(0);
            cap.checked_sub(top).ok_or_else(|| {
                Error::Window(format!("cap {cap} is below the element degree {top}"))
            })?
        }
        _ => 0,
    };
    let operators: Vec<LinearOperator> =
        elements.iter().map(|g| mult_operator(&monoid, g, &module)).collect::<Result<_>>()?;
    let complex = assemble(&module, &operators, &degrees);
    let n = elements.len();
    Ok(KoszulComplex {
        complex,
        monoid,
        module,
        elements,
        descriptions,
        operators,
        degrees,
        subsets: (0..=n).map(|p| subsets(n, p)).collect(),
        window,
        totalized,
    })
}

/// Outcome of the resolution check for one sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionCertificate {
    pub regularity: RegularityCertificate,
    pub window: usize,
    pub totalized: bool,
    pub dd_zero: bool,
    /// `homology[p][x][e]` on the window.
    pub homology: Vec<DimTable>,
    /// Dimensions of `M / (α) M` on the window.
    pub quotient_dims: DimTable,
    pub higher_vanish: bool,
    pub h0_matches_quotient: bool,
    /// `(p, object, degree, dim)` for every nonzero `H_p`, `p ≥ 1`.
    pub nonzero_homology: Vec<(usize, String, usize, usize)>,
    /// Regular implies acyclic with `H_0 = M/(α)M`.
    pub consistent: bool,
}

impl ResolutionCertificate {
    pub fn passed(&self) -> bool {
        self.dd_zero && self.consistent && self.h0_matches_quotient
    }
}

/// Runs the regular-sequence check and compares it with the homology of
/// `K(α) ⊗ M` on the certified window.
pub fn check_resolution(a: &Arc<Monoid>, alpha: &[Element], m: Option<&Module>) -> Result<ResolutionCertificate> {
    let k = build_koszul(a, alpha, m)?;
    let regularity = is_regular_sequence(&k.monoid, &k.elements, &k.module)?;
    let dd_zero = k.complex.check_dd().passed();
    let window = k.window;
    let homology: Vec<DimTable> = (0..=k.n()).map(|p| k.complex.homology(p as isize, window)).collect();

    let mut sub = crate::monoid::image_of(&k.monoid, &k.elements[0], &k.module)?;
    for g in &k.elements[1..] {
        let more = crate::monoid::image_of(&k.monoid, g, &k.module)?;
        for (row, extra) in sub.iter_mut().zip(more) {
            for (s, t) in row.iter_mut().zip(extra) {
                *s = s.sum(&t);
            }
        }
    }
    let quotient = quotient_module(&k.module, &sub)?;
    let quotient_dims: DimTable = quotient
        .module
        .carrier
        .dims
        .iter()
        .map(|per| per.iter().take(window + 1).copied().collect())
        .collect();
    let h0_matches_quotient = homology[0] == quotient_dims;
    let cat = &k.module.category;
    let mut nonzero = Vec::new();
    for (p, table) in homology.iter().enumerate().skip(1) {
        for (x, per) in table.iter().enumerate() {
            for (e, &h) in per.iter().enumerate() {
                if h > 0 {
                    nonzero.push((p, cat.objects[x].clone(), e, h));
                }
            }
        }
    }
    let higher_vanish = nonzero.is_empty();
    let consistent = !regularity.regular || (higher_vanish && h0_matches_quotient);
    Ok(ResolutionCertificate {
        regularity,
        window,
        totalized: k.totalized,
        dd_zero,
        homology,
        quotient_dims,
        higher_vanish,
        h0_matches_quotient,
        nonzero_homology: nonzero,
        consistent,
    })
}

/// Field of a complex, for callers that only hold the Koszul wrapper.
pub fn field_of(k: &KoszulComplex) -> Field {
    k.complex.field
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::monoid::presets::{dual_numbers, ground};
    use crate::poly::{polynomial_monoid, variable_element};

    fn q() -> Field {
        Field::Rational
    }

    fn poly(n: usize, cap: usize) -> (Arc<Monoid>, Vec<Element>) {
        let g = Arc::new(polynomial_monoid(&Arc::new(ground(q())), n, cap).unwrap());
        let vars = (1..=n).map(|i| variable_element(&g, i).unwrap()).collect();
        (g, vars)
    }

    #[test]
    fn lex_subsets() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn two_variables_resolve_the_ground_field() {
        let (g, vars) = poly(2, 4);
        let k = build_koszul(&g, &vars, None).unwrap();
        assert_eq!(k.term_ranks(), vec![1, 2, 1]);
        assert_eq!(k.window, 3);
        assert!(k.complex.check_dd().passed());
        assert!(k.check_module_morphisms().passed());
        let c = check_resolution(&g, &vars, None).unwrap();
        assert!(c.regularity.regular);
        assert_eq!(c.homology[0], vec![vec![1, 0, 0, 0]]);
        assert!(c.higher_vanish && c.passed());
        assert!(k.homology(0, 4).is_err());
    }

    #[test]
    fn dual_numbers_have_first_homology() {
        let a = Arc::new(dual_numbers(q()));
        let x = a.basis_element(0, 0, 1);
        let c = check_resolution(&a, &[x], None).unwrap();
        assert!(!c.regularity.regular);
        assert_eq!(c.homology[1], vec![vec![1]]);
        assert_eq!(c.homology[0], vec![vec![1]]);
        assert!(c.consistent && c.dd_zero);
    }

    #[test]
    fn three_elements_square_to_zero() {
        let (g, vars) = poly(3, 3);
        let k = build_koszul(&g, &vars, None).unwrap();
        assert_eq!(k.term_ranks(), vec![1, 3, 3, 1]);
        assert!(k.complex.check_dd().passed());
        let c = check_resolution(&g, &vars, None).unwrap();
        assert_eq!(c.homology[0], vec![vec![1, 0, 0]]);
        assert!(c.passed());
    }

    #[test]
    fn cone_decomposition() {
        let (g, vars) = poly(2, 4);
        let c = pascal_split(&g, &vars, None).unwrap();
        assert!(c.passed(), "{:?}", c.report.violations);
        assert!(c.cycles_checked > 0);
        let a = Arc::new(dual_numbers(q()));
        let x = a.basis_element(0, 0, 1);
        let c = pascal_split(&a, &[x.clone(), x], None).unwrap();
        assert!(c.passed(), "{:?}", c.report.violations);
    }

    #[test]
    fn rejects_bad_input() {
        let (g, _) = poly(1, 2);
        assert!(matches!(build_koszul(&g, &[], None), Err(Error::Input(_))));
        let s3 = Arc::new(crate::monoid::presets::s3_group_algebra(q()));
        let swap = s3.basis_element(0, 0, 2);
        assert!(matches!(build_koszul(&s3, &[swap], None), Err(Error::NotCentral(_))));
    }

    #[test]
    fn nonhomogeneous_elements_totalize() {
        let (g, vars) = poly(1, 3);
        let one = g.unit.clone();
        let k = build_koszul(&g, &[one.add(&vars[0])], None).unwrap();
        assert!(k.totalized);
        assert_eq!(k.complex.levels(), 1);
        assert!(k.complex.check_dd().passed());
    }
}
