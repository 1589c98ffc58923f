//! Polynomial monoids `A[t_1, ..., t_n]` graded by total degree and
//! truncated at a cap.
//!
//! Within a degree the basis is ordered with the monomial slowest and the
//! basis of `A` fastest. Monomials of one degree are in graded
//! lexicographic order: `t1^2, t1*t2, t2^2, ...`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::category::{day_convolution, Representation};
use crate::error::{Error, Result};
use crate::linalg::{kronecker, rank, Matrix, Scalar};
use crate::monoid::{Action, Element, Grading, Module, Monoid, PairKey};

pub type MultiIndex = Vec<usize>;

/// Exponent vectors of total degree `d` in `n` variables, lexicographically
/// decreasing.
pub fn monomials(n: usize, d: usize) -> Vec<MultiIndex> {
    fn rec(n: usize, d: usize, prefix: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
        if n == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// `C(n + d - 1, d)`, the number of monomials of degree `d` in `n` variables.
pub fn monomial_count(n: usize, d: usize) -> usize {
    if n == 0 {
        return usize::from(d == 0);
    }
    binomial(n + d - 1, d)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

pub fn monomial_label(vars: &[String], mono: &[usize]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(mono)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn combined_label(base: &str, mono: &str) -> String {
    match (base, mono) {
        (b, "1") => b.to_string(),
        ("1", m) => m.to_string(),
        (b, m) => format!("{b}*{m}"),
    }
}

/// Bookkeeping shared by a polynomial monoid and the modules built on it.
#[derive(Debug)]
pub struct PolyInfo {
    pub base: Arc<Monoid>,
    pub variables: Vec<String>,
    pub cap: usize,
    /// `monomials[d]`
    pub monomials: Vec<Vec<MultiIndex>>,
    index: HashMap<MultiIndex, usize>,
}

impl PolyInfo {
    pub fn new(base: Arc<Monoid>, variables: Vec<String>, cap: usize) -> PolyInfo {
        let n = variables.len();
        let monos: Vec<Vec<MultiIndex>> = (0..=cap).map(|d| monomials(n, d)).collect();
        let mut index = HashMap::new();
        for per in &monos {
            for (i, m) in per.iter().enumerate() {
                index.insert(m.clone(), i);
            }
        }
        PolyInfo { base, variables, cap, monomials: monos, index }
    }

    pub fn n(&self) -> usize {
        self.variables.len()
    }

    /// Position of a monomial within its degree.
    pub fn position(&self, mono: &[usize]) -> Option<usize> {
        self.index.get(mono).copied()
    }

    pub fn count(&self, d: usize) -> usize {
        self.monomials[d].len()
    }

    /// Carrier `V[t]` for an ungraded representation `V`.
    pub fn extend_carrier(&self, v: &Representation) -> Representation {
        let field = v.field;
        let dims = v.dims.iter().map(|per| (0..=self.cap).map(|d| self.count(d) * per[0]).collect()).collect();
        let actions = v
            .actions
            .iter()
            .map(|per| (0..=self.cap).map(|d| kronecker(&Matrix::identity(field, self.count(d)), &per[0])).collect())
            .collect();
        Representation { field, dims, actions }
    }

    pub fn extend_labels(&self, labels: &[Vec<Vec<String>>]) -> Vec<Vec<Vec<String>>> {
        labels
            .iter()
            .map(|per| {
                (0..=self.cap)
                    .map(|d| {
                        self.monomials[d]
                            .iter()
                            .flat_map(|m| {
                                let ml = monomial_label(&self.variables, m);
                                per[0].iter().map(move |b| combined_label(b, &ml))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    /// Extends a pairing block `U(x) ⊗ V(y) -> W(x◇y)` to
    /// `U[t]_{d1} ⊗ V[t]_{d2} -> W[t]_{d1+d2}` by `(u t^i)(v t^j) = (u v) t^{i+j}`.
    pub fn extend_block(&self, base: &Matrix, du: usize, dv: usize, dw: usize, d1: usize, d2: usize) -> Matrix {
        let (m1, m2) = (&self.monomials[d1], &self.monomials[d2]);
        let rows = self.count(d1 + d2) * dw;
        let cols = m1.len() * du * m2.len() * dv;
        let base_t = base.transpose();
        let mut entries = Vec::new();
        for (i, mi) in m1.iter().enumerate() {
            for (j, mj) in m2.iter().enumerate() {
                let sum: MultiIndex = mi.iter().zip(mj).map(|(a, b)| a + b).collect();
                let k = self.position(&sum).expect("monomial of degree d1 + d2");
                for a in 0..du {
                    for b in 0..dv {
                        let col = (i * du + a) * (m2.len() * dv) + j * dv + b;
                        for (c, v) in base_t.row(a * dv + b) {
                            entries.push((k * dw + c, col, v.clone()));
                        }
                    }
                }
            }
        }
        Matrix::from_triplets(base.field(), rows, cols, entries)
    }

    fn extend_table(
        &self,
        table: &BTreeMap<PairKey, Matrix>,
        cat: &crate::category::Category,
        u: &Representation,
        v: &Representation,
        w: &Representation,
    ) -> BTreeMap<PairKey, Matrix> {
        let n = cat.object_count();
        let mut out = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                let xy = cat.tensor_obj(x, y);
                let base = &table[&(x, 0, y, 0)];
                for d1 in 0..=self.cap {
                    for d2 in 0..=self.cap - d1 {
                        let m = self.extend_block(base, u.dims[x][0], v.dims[y][0], w.dims[xy][0], d1, d2);
                        out.insert((x, d1, y, d2), m);
                    }
                }
            }
        }
        out
    }
}

/// `A_n = A[t_1, ..., t_n]` truncated at `cap`. With `n = 0` this is `A`.
pub fn polynomial_monoid(a: &Arc<Monoid>, n: usize, cap: usize) -> Result<Monoid> {
    let vars: Vec<String> = if n == 1 { vec!["t".into()] } else { (1..=n).map(|i| format!("t{i}")).collect() };
    polynomial_monoid_named(a, &vars, cap)
}

/// As [`polynomial_monoid`] with chosen variable names.
pub fn polynomial_monoid_named(a: &Arc<Monoid>, vars: &[String], cap: usize) -> Result<Monoid> {
    if vars.is_empty() {
        return Ok((**a).clone());
    }
    if a.grading != Grading::Exact {
        return Err(Error::Input(format!("{} is already graded; polynomial monoids need an ungraded base", a.name)));
    }
    let mut seen = std::collections::HashSet::new();
    for v in vars {
        if !seen.insert(v) {
            return Err(Error::Input(format!("variable {v} appears twice")));
        }
    }
    let info = Arc::new(PolyInfo::new(a.clone(), vars.to_vec(), cap));
    let cat = &a.category;
    let carrier = info.extend_carrier(&a.carrier);
    let products = info.extend_table(&a.products, cat, &a.carrier, &a.carrier, &a.carrier);
    let field = a.field();
    let mut parts: Vec<Vec<Scalar>> = (0..=cap).map(|d| vec![field.zero(); carrier.dims[a.unit.object][d]]).collect();
    parts[0] = a.unit.parts[0].clone();
    let labels = info.extend_labels(&a.labels);
    let name = format!("{}[{}]", a.name, vars.join(","));
    let mut m = Monoid::new(name, cat.clone(), carrier, Grading::Truncated { cap }, Element { object: a.unit.object, parts }, products, Some(labels))?;
    m.poly = Some(info);
    m.truncated = true;
    Ok(m)
}

/// `ε t_i` in degree one at the unit object (`i` counted from 1).
pub fn variable_element(g: &Monoid, i: usize) -> Result<Element> {
    let info = g.poly.as_ref().ok_or_else(|| Error::Input(format!("{} has no variables", g.name)))?;
    if i == 0 || i > info.n() {
        return Err(Error::Range(format!("variable index {i} outside 1..={}", info.n())));
    }
    if info.cap == 0 {
        return Err(Error::Window("cap 0 leaves no room for a variable".into()));
    }
    let mut mono = vec![0; info.n()];
    mono[i - 1] = 1;
    let eps = &info.base.unit;
    Ok(monomial_times(g, eps, &mono))
}

/// `a t^mono` for `a ∈ A(x)` (ungraded element of the base).
pub fn monomial_times(g: &Monoid, a: &Element, mono: &[usize]) -> Element {
    let info = g.poly.as_ref().expect("polynomial monoid");
    let d: usize = mono.iter().sum();
    let x = a.object;
    let dim_a = info.base.dim(x, 0);
    let mut e = g.zero_element(x);
    if d <= info.cap {
        let k = info.position(mono).expect("monomial");
        for (i, v) in a.parts[0].iter().enumerate() {
            e.parts[d][k * dim_a + i] = v.clone();
        }
    }
    e
}

/// `M[t]` as a module over `A[t]` for an ungraded `A`-module `M`.
pub fn polynomial_module(m: &Module, g: &Arc<Monoid>) -> Result<Module> {
    let info = g.poly.as_ref().ok_or_else(|| Error::Input(format!("{} has no variables", g.name)))?;
    if m.grading != Grading::Exact {
        return Err(Error::Input("polynomial modules need an ungraded base module".into()));
    }
    let cat = &m.category;
    let a = &info.base;
    let carrier = info.extend_carrier(&m.carrier);
    let left = m.left.as_ref().map(|act| Action {
        monoid: g.clone(),
        maps: info.extend_table(&act.maps, cat, &a.carrier, &m.carrier, &m.carrier),
    });
    let right = m.right.as_ref().map(|act| Action {
        monoid: g.clone(),
        maps: info.extend_table(&act.maps, cat, &m.carrier, &a.carrier, &m.carrier),
    });
    let grading = Grading::Truncated { cap: info.cap };
    Ok(Module {
        name: format!("{}[{}]", m.name, info.variables.join(",")),
        category: cat.clone(),
        weights: crate::monoid::default_weights(&carrier, grading),
        labels: info.extend_labels(&m.labels),
        carrier,
        grading,
        left,
        right,
    })
}

/// Certificate for `C[u] ⊗ D[v] ≅ E[u, v]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeCertificate {
    pub witness_invertible: bool,
    pub witness_natural: bool,
    pub unit_preserved: bool,
    /// `Φ` invertible in each degree (trivial backend).
    pub phi_invertible: Option<Vec<bool>>,
    /// `Φ(g y) = Φ(g) Φ(y)` for algebra generators `g` and basis `y`
    /// (trivial backend).
    pub multiplicative: Option<bool>,
    pub dims: Vec<usize>,
}

impl MergeCertificate {
    pub fn passed(&self) -> bool {
        self.witness_invertible
            && self.witness_natural
            && self.unit_preserved
            && self.phi_invertible.as_ref().is_none_or(|v| v.iter().all(|&b| b))
            && self.multiplicative.unwrap_or(true)
    }
}

/// Builds `E[u, v]` from `C[u]`, `D[v]` and a monoid isomorphism
/// `w: C ⊗ D -> E` given per object on the Day product, and certifies the
/// identification `Φ(c u^i ⊗ d v^j) = w(c ⊗ d) u^i v^j`.
pub fn merge_variables(
    c: &Monoid,
    d: &Monoid,
    e: &Arc<Monoid>,
    witness: &[Matrix],
) -> Result<(Monoid, MergeCertificate)> {
    let (Some(ci), dinfo) = (c.poly.as_ref(), d.poly.as_ref()) else {
        return Err(Error::Input(format!("{} has no variables", c.name)));
    };
    let Some(di) = dinfo else {
        let cert = MergeCertificate {
            witness_invertible: true,
            witness_natural: true,
            unit_preserved: true,
            phi_invertible: None,
            multiplicative: None,
            dims: c.carrier.dims[c.unit_object()].clone(),
        };
        return Ok((c.clone(), cert));
    };
    if ci.cap != di.cap {
        return Err(Error::Input("merged polynomial monoids must share a cap".into()));
    }
    let cap = ci.cap;
    let cat = &e.category;
    let field = e.field();
    let day = day_convolution(cat, &ci.base.carrier, &di.base.carrier)?;
    if witness.len() != cat.object_count() {
        return Err(Error::Dimension("witness needs one matrix per object".into()));
    }
    let mut invertible = true;
    for (x, w) in witness.iter().enumerate() {
        let n = day.rep.dims[x][0];
        if (w.rows(), w.cols()) != (e.dim(x, 0), n) {
            return Err(Error::Dimension(format!("witness at {} has the wrong shape", cat.objects[x])));
        }
        invertible &= w.rows() == w.cols() && rank(w) == n;
    }
    if !invertible {
        return Err(Error::NotIsomorphism("the witness C ⊗ D -> E is not invertible at every object".into()));
    }
    let natural = cat.morphisms.iter().enumerate().all(|(id, info)| {
        e.carrier.actions[id][0].mul(&witness[info.source]) == witness[info.target].mul(&day.rep.actions[id][0])
    });
    let one = cat.unit;
    let eps = day.class_of(
        one,
        &[one, one],
        &[0, 0],
        &cat.identities[one],
        &[&ci.base.unit.parts[0], &di.base.unit.parts[0]],
    );
    let unit_preserved = witness[one].mul_vec(&eps) == e.unit.parts[0];

    let mut vars = ci.variables.clone();
    vars.extend(di.variables.iter().cloned());
    let merged = polynomial_monoid_named(e, &vars, cap)?;
    let dims = merged.carrier.dims[one].clone();

    let (phi_invertible, multiplicative) = if cat.object_count() == 1 && cat.hom(0, 0).len() == 1 {
        let phi = |p: &Element, q: &Element| phi_simple(ci, di, &merged, &witness[0], p, q);
        let mut inv = Vec::new();
        for k in 0..=cap {
            let mut cols = Vec::new();
            for i in 0..=k {
                for bp in 0..c.dim(0, i) {
                    for bq in 0..d.dim(0, k - i) {
                        cols.push(phi(&c.basis_element(0, i, bp), &d.basis_element(0, k - i, bq)).parts[k].clone());
                    }
                }
            }
            let m = Matrix::from_columns(field, merged.dim(0, k), &cols);
            inv.push(m.rows() == m.cols() && rank(&m) == m.cols());
        }
        // Generators: c ⊗ 1, 1 ⊗ d, u_i ⊗ 1, 1 ⊗ v_j.
        let mut gens: Vec<(Element, Element)> = Vec::new();
        for b in 0..c.dim(0, 0) {
            gens.push((c.basis_element(0, 0, b), d.unit.clone()));
        }
        for b in 0..d.dim(0, 0) {
            gens.push((c.unit.clone(), d.basis_element(0, 0, b)));
        }
        if cap > 0 {
            for i in 1..=ci.n() {
                gens.push((variable_element(c, i)?, d.unit.clone()));
            }
            for j in 1..=di.n() {
                gens.push((c.unit.clone(), variable_element(d, j)?));
            }
        }
        let mut ok = true;
        'outer: for (gp, gq) in &gens {
            for k in 0..=cap {
                for i in 0..=k {
                    for bp in 0..c.dim(0, i) {
                        for bq in 0..d.dim(0, k - i) {
                            let (yp, yq) = (c.basis_element(0, i, bp), d.basis_element(0, k - i, bq));
                            let lhs = phi(&c.multiply(gp, &yp), &d.multiply(gq, &yq));
                            let rhs = merged.multiply(&phi(gp, gq), &phi(&yp, &yq));
                            if lhs != rhs {
                                ok = false;
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        (Some(inv), Some(ok))
    } else {
        (None, None)
    };
    let cert = MergeCertificate {
        witness_invertible: invertible,
        witness_natural: natural,
        unit_preserved,
        phi_invertible,
        multiplicative,
        dims,
    };
    Ok((merged, cert))
}

/// `Φ(p ⊗ q)` on the trivial backend.
fn phi_simple(ci: &PolyInfo, di: &PolyInfo, merged: &Monoid, w: &Matrix, p: &Element, q: &Element) -> Element {
    let (dc, dd) = (ci.base.dim(0, 0), di.base.dim(0, 0));
    let de = merged.poly.as_ref().expect("merged is polynomial").base.dim(0, 0);
    let info = merged.poly.as_ref().expect("merged is polynomial");
    let mut out = merged.zero_element(0);
    let wt = w.transpose();
    for (i, pi) in p.parts.iter().enumerate() {
        for (j, qj) in q.parts.iter().enumerate() {
            if i + j > info.cap {
                continue;
            }
            for (ip, pv) in pi.iter().enumerate() {
                if pv.is_zero() {
                    continue;
                }
                let (mp, cb) = (ip / dc, ip % dc);
                for (iq, qv) in qj.iter().enumerate() {
                    if qv.is_zero() {
                        continue;
                    }
                    let (mq, db) = (iq / dd, iq % dd);
                    let mut mono = ci.monomials[i][mp].clone();
                    mono.extend(di.monomials[j][mq].iter());
                    let k = info.position(&mono).expect("merged monomial");
                    let coeff = pv * qv;
                    for (r, v) in wt.row(cb * dd + db) {
                        out.parts[i + j][k * de + r] += &(v * &coeff);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::monoid::presets::{dual_numbers, ground};
    use crate::monoid::validate_monoid;

    #[test]
    fn monomial_order_and_counts() {
        assert_eq!(monomials(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomial_count(3, 4), 15);
        for n in 1..4 {
            for d in 0..5 {
                assert_eq!(monomials(n, d).len(), monomial_count(n, d));
            }
        }
    }

    #[test]
    fn polynomial_dims() {
        let q = Arc::new(ground(Field::Rational));
        let a1 = polynomial_monoid(&q, 1, 3).unwrap();
        assert_eq!(a1.carrier.dims[0], vec![1, 1, 1, 1]);
        let a2 = polynomial_monoid(&q, 2, 2).unwrap();
        assert_eq!(a2.carrier.dims[0], vec![1, 2, 3]);
        let dn = polynomial_monoid(&Arc::new(dual_numbers(Field::Rational)), 1, 2).unwrap();
        assert_eq!(dn.carrier.dims[0], vec![2, 2, 2]);
        for m in [&a1, &a2, &dn] {
            assert!(validate_monoid(m).unwrap().passed());
        }
        assert_eq!(polynomial_monoid(&q, 0, 3).unwrap().carrier.dims[0], vec![1]);
    }

    #[test]
    fn merge_two_univariate() {
        let q = Arc::new(ground(Field::Rational));
        let cu = polynomial_monoid_named(&q, &["u".into()], 4).unwrap();
        let dv = polynomial_monoid_named(&q, &["v".into()], 4).unwrap();
        let w = vec![Matrix::identity(Field::Rational, 1)];
        let (m, cert) = merge_variables(&cu, &dv, &q, &w).unwrap();
        assert!(cert.passed(), "{cert:?}");
        assert_eq!(m.carrier.dims[0], vec![1, 2, 3, 4, 5]);
    }
}
