//! `K(α_1..α_n)` as the cone of `±L_{α_n}` on `K(α_1..α_{n-1})`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{assemble, build_koszul, subsets, summand_layout, ChainComplex, KoszulComplex};
use crate::error::{Error, Result};
use crate::linalg::{image, solve, Matrix};
use crate::monoid::{Element, Module, Monoid};
use crate::validation::ValidationReport;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PascalCertificate {
    pub n: usize,
    pub report: ValidationReport,
    /// Cycles whose connecting image was compared with `±α_n z`.
    pub cycles_checked: usize,
}

impl PascalCertificate {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

struct Split<'a> {
    k: &'a KoszulComplex,
    small: ChainComplex,
    small_subsets: Vec<Vec<Vec<usize>>>,
    kn: usize,
}

impl Split<'_> {
    fn module(&self) -> &Module {
        &self.k.module
    }

    fn big_layout(&self, p: usize, x: usize, e: usize) -> Vec<(usize, Option<usize>)> {
        summand_layout(self.module(), &self.k.subsets[p], &self.k.degrees, x, e)
    }

    fn small_layout(&self, p: usize, x: usize, e: usize) -> Vec<(usize, Option<usize>)> {
        let n = self.k.n();
        summand_layout(self.module(), &self.small_subsets[p], &self.k.degrees[..n - 1], x, e)
    }

    fn small_dim(&self, p: isize, x: usize, e: usize) -> usize {
        self.small.dim(p, x, e)
    }

    fn big_dim(&self, p: isize, x: usize, e: usize) -> usize {
        self.k.complex.dim(p, x, e)
    }

    /// `ι_p: K'_p(x, e) -> K_p(x, e)`, `S ↦ S`.
    fn iota(&self, p: usize, x: usize, e: usize) -> Matrix {
        let field = self.k.complex.field;
        let mut m = Matrix::zeros(field, self.big_dim(p as isize, x, e), self.small_dim(p as isize, x, e));
        if p >= self.small_subsets.len() {
            return m;
        }
        let big = self.big_layout(p, x, e);
        for (s, (so, sl)) in self.small_subsets[p].iter().zip(self.small_layout(p, x, e)) {
            let Some(lvl) = sl else { continue };
            let pos = self.k.subsets[p].iter().position(|t| t == s).expect("subset");
            m.add_block(big[pos].0, so, &Matrix::identity(field, self.module().dim(x, lvl)));
        }
        m
    }

    /// `σ_p: K'_{p-1}(x, e - k_n) -> K_p(x, e)`, `S ↦ S ∪ {n}`.
    fn sigma(&self, p: usize, x: usize, e: usize) -> Matrix {
        let field = self.k.complex.field;
        let last = self.k.n() - 1;
        let rows = self.big_dim(p as isize, x, e);
        let Some(shifted) = e.checked_sub(self.kn).filter(|_| p >= 1) else {
            return Matrix::zeros(field, rows, 0);
        };
        let mut m = Matrix::zeros(field, rows, self.small_dim(p as isize - 1, x, shifted));
        let big = self.big_layout(p, x, e);
        for (s, (so, sl)) in self.small_subsets[p - 1].iter().zip(self.small_layout(p - 1, x, shifted)) {
            let Some(lvl) = sl else { continue };
            let mut t = s.clone();
            t.push(last);
            let pos = self.k.subsets[p].iter().position(|u| *u == t).expect("subset");
            m.add_block(big[pos].0, so, &Matrix::identity(field, self.module().dim(x, lvl)));
        }
        m
    }

    /// `L_{α_n}` on `K'_q`, from cell `e - k_n` to cell `e`.
    fn mult_last(&self, q: usize, x: usize, e: usize) -> Matrix {
        let field = self.k.complex.field;
        let rows = self.small_dim(q as isize, x, e);
        let Some(shifted) = e.checked_sub(self.kn) else {
            return Matrix::zeros(field, rows, 0);
        };
        let mut m = Matrix::zeros(field, rows, self.small_dim(q as isize, x, shifted));
        if q >= self.small_subsets.len() {
            return m;
        }
        let op = self.k.operators.last().expect("n ≥ 1");
        let src = self.small_layout(q, x, shifted);
        let dst = self.small_layout(q, x, e);
        for ((so, sl), (to, tl)) in src.into_iter().zip(dst) {
            if let (Some(from), Some(into)) = (sl, tl) {
                m.add_block(to, so, &op.block(x, from, into));
            }
        }
        m
    }
}

/// Checks the decomposition `K_p = K'_p ⊕ K'_{p-1}[deg α_n]` with
/// `K' = K(α_1..α_{n-1})`: the inclusion and projection maps are chain maps
/// and split each other, the differential has the cone form, and the
/// connecting map `H_{p-1}(K')[deg α_n] -> H_{p-1}(K')` is `(-1)^{p-1} α_n`.
pub fn pascal_split(a: &Arc<Monoid>, alpha: &[Element], m: Option<&Module>) -> Result<PascalCertificate> {
    if alpha.is_empty() {
        return Err(Error::Input("the decomposition needs n ≥ 1".into()));
    }
    let k = build_koszul(a, alpha, m)?;
    let n = k.n();
    let small = assemble(&k.module, &k.operators[..n - 1], &k.degrees[..n - 1]);
    let split = Split {
        k: &k,
        small,
        small_subsets: (0..n).map(|p| subsets(n - 1, p)).collect(),
        kn: k.degrees[n - 1],
    };
    let field = k.complex.field;
    let objects = k.module.category.object_count();
    let names = &k.module.category.objects;
    let levels = (k.window + 1).min(k.complex.levels());
    let mut r = ValidationReport::new("Koszul cone decomposition");
    let mut cycles_checked = 0;
    for p in 0..=n {
        let pi = p as isize;
        for x in 0..objects {
            for e in 0..levels {
                let at = || format!("term {p}, cell ({}, {e})", names[x]);
                let d = k.complex.diff(pi, x, e);
                let iota = split.iota(p, x, e);
                let rho = iota.transpose();
                let sigma = split.sigma(p, x, e);
                let tau = sigma.transpose();

                if p >= 1 {
                    let lhs = d.mul(&iota);
                    let rhs = split.iota(p - 1, x, e).mul(&split.small.diff(pi, x, e));
                    r.check("ι is a chain map", lhs == rhs, at);
                }
                if p >= 1 && e >= split.kn {
                    let shifted = e - split.kn;
                    let lhs = split.sigma(p - 1, x, e).transpose().mul(&d);
                    let rhs = split.small.diff(pi - 1, x, shifted).mul(&tau);
                    r.check("τ is a chain map", lhs == rhs, at);

                    let mut cone = split.mult_last(p - 1, x, e);
                    if p % 2 == 0 {
                        cone = cone.neg();
                    }
                    let lhs = d.mul(&sigma);
                    let rhs = split
                        .iota(p - 1, x, e)
                        .mul(&cone)
                        .add(&split.sigma(p - 1, x, e).mul(&split.small.diff(pi - 1, x, shifted)));
                    r.check("cone form of d", lhs == rhs, at);

                    // Connecting map through an arbitrary lift of each cycle.
                    let cycles = split.small.cycles(pi - 1, x, shifted);
                    if cycles.cols() > 0 {
                        let lift = solve(&tau, &cycles);
                        r.check("τ is surjective", lift.is_some(), at);
                        if let Some(y) = lift {
                            let dy = d.mul(&y);
                            let w = split.iota(p - 1, x, e).transpose().mul(&dy);
                            r.check("d of a lift lies in K'", split.iota(p - 1, x, e).mul(&w) == dy, at);
                            let diff = w.sub(&cone.mul(&cycles));
                            let bounds = image(&split.small.diff(pi, x, e));
                            r.check("connecting map is ±α_n", bounds.contains_all(&diff), at);
                            let canonical = d.mul(&sigma.mul(&cycles));
                            r.check(
                                "connecting map is ±α_n on the canonical lift",
                                canonical == split.iota(p - 1, x, e).mul(&cone.mul(&cycles)),
                                at,
                            );
                            cycles_checked += cycles.cols();
                        }
                    }
                }
                let big = split.big_dim(pi, x, e);
                r.check("τι = 0", tau.mul(&iota).is_zero(), at);
                r.check("ρι = id", rho.mul(&iota).is_identity(), at);
                r.check("τσ = id", tau.mul(&sigma).is_identity(), at);
                let total = iota.mul(&rho).add(&sigma.mul(&tau));
                r.check("ιρ + στ = id", total == Matrix::identity(field, big), at);
            }
        }
    }
    Ok(PascalCertificate { n, report: r, cycles_checked })
}
