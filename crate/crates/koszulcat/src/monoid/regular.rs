use serde::{Deserialize, Serialize};

use super::{is_central, mult_operator, quotient_module, Element, Module, Monoid};
use crate::error::{Error, Result};
use crate::linalg::{image, kernel, vector_strings, Matrix};

/// A nonzero `m` with `α × m = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub object: String,
    /// Coordinates per level, as exact strings.
    pub coordinates: Vec<Vec<String>>,
    pub description: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularStage {
    pub index: usize,
    pub element: String,
    pub injective: bool,
    /// Largest source weight on which injectivity was checked (`None` when
    /// ungraded: every element was checked).
    pub window: Option<usize>,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityCertificate {
    pub regular: bool,
    pub cap: Option<usize>,
    pub stages: Vec<RegularStage>,
    /// Whether `M / (α_1, ..., α_n) M` is nonzero (sequences only).
    pub quotient_nonzero: Option<bool>,
    /// Dimensions `[x][level]` of the final quotient (sequences only).
    pub quotient_dims: Option<Vec<Vec<usize>>>,
    pub failure: Option<String>,
}

impl RegularityCertificate {
    /// Smallest window over the stages.
    pub fn window(&self) -> Option<usize> {
        self.stages.iter().filter_map(|s| s.window).min()
    }
}

fn require_central(a: &Monoid, elt: &Element) -> Result<()> {
    if elt.object != a.unit_object() {
        return Err(Error::WrongObject(format!(
            "{} must live at the unit object",
            a.describe(elt)
        )));
    }
    if !is_central(a, elt) {
        return Err(Error::NotCentral(format!("{} is not in the commutant of {}", a.describe(elt), a.name)));
    }
    Ok(())
}

/// Injectivity of `L_α` on every `M(x)`, restricted in the graded case to
/// source weights `≤ cap - max deg α`.
fn stage(a: &Monoid, elt: &Element, m: &Module, index: usize) -> Result<RegularStage> {
    let element = a.describe(elt);
    let cap = m.grading.cap();
    let top = a.weight_range(elt).map_or(0, |(_, hi)| hi);
    let window = match cap {
        Some(c) if top > c => {
            return Err(Error::Window(format!("{element} has degree {top}, above the cap {c}")));
        }
        Some(c) => Some(c - top),
        None => None,
    };
    let op = mult_operator(a, elt, m)?;
    for x in 0..m.category.object_count() {
        let weights: Vec<usize> = m.weights[x].concat();
        let cols: Vec<usize> = (0..weights.len()).filter(|&i| window.is_none_or(|w| weights[i] <= w)).collect();
        let restricted = op.total(x).select_columns(&cols);
        let k = kernel(&restricted);
        if k.dim() > 0 {
            let v = k.basis.column(0);
            let mut flat = vec![m.field().zero(); weights.len()];
            for (c, val) in cols.iter().zip(v) {
                flat[*c] = val;
            }
            let mut parts = Vec::new();
            let mut at = 0;
            for d in 0..m.levels() {
                parts.push(flat[at..at + m.dim(x, d)].to_vec());
                at += m.dim(x, d);
            }
            let w = Element { object: x, parts };
            return Ok(RegularStage {
                index,
                element,
                injective: false,
                window,
                witness: Some(Witness {
                    object: m.category.objects[x].clone(),
                    coordinates: w.parts.iter().map(|p| vector_strings(p)).collect(),
                    description: m.describe(&w),
                }),
            });
        }
    }
    Ok(RegularStage { index, element, injective: true, window, witness: None })
}

/// Whether `α ∈ C_A(1)` acts injectively on `M` (Definition of an
/// `M`-regular element, restricted to the certified window).
pub fn is_regular(a: &Monoid, elt: &Element, m: &Module) -> Result<RegularityCertificate> {
    require_central(a, elt)?;
    let s = stage(a, elt, m, 1)?;
    let regular = s.injective;
    let failure = s.witness.as_ref().map(|w| format!("{} × {} = 0", s.element, w.description));
    Ok(RegularityCertificate {
        regular,
        cap: m.grading.cap(),
        stages: vec![s],
        quotient_nonzero: None,
        quotient_dims: None,
        failure,
    })
}

/// `α_1` is `M`-regular, `α_2` is `M/α_1 M`-regular, ..., and the final
/// quotient is nonzero.
pub fn is_regular_sequence(a: &Monoid, gens: &[Element], m: &Module) -> Result<RegularityCertificate> {
    for g in gens {
        require_central(a, g)?;
    }
    let cap = m.grading.cap();
    let mut current = m.clone();
    let mut stages = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let s = stage(a, g, &current, i + 1)?;
        if !s.injective {
            let failure = format!(
                "item {} fails: {} × {} = 0 in the quotient",
                i + 1,
                s.element,
                s.witness.as_ref().map_or("?".into(), |w| w.description.clone())
            );
            stages.push(s);
            return Ok(RegularityCertificate {
                regular: false,
                cap,
                stages,
                quotient_nonzero: None,
                quotient_dims: None,
                failure: Some(failure),
            });
        }
        stages.push(s);
        current = quotient_module(&current, &image_of(a, g, &current)?)?.module;
    }
    let dims = current.carrier.dims.clone();
    let nonzero = dims.iter().flatten().any(|&n| n > 0);
    Ok(RegularityCertificate {
        regular: nonzero,
        cap,
        stages,
        quotient_nonzero: Some(nonzero),
        quotient_dims: Some(dims),
        failure: (!nonzero).then(|| "the quotient by the sequence is zero".to_string()),
    })
}

/// `α M` as a graded subspace; `α` must be homogeneous when `M` has
/// several levels.
pub(crate) fn image_of(a: &Monoid, elt: &Element, m: &Module) -> Result<Vec<Vec<crate::linalg::Subspace>>> {
    if m.levels() > 1 && elt.homogeneous_level().is_none() && !elt.is_zero() {
        return Err(Error::Input(format!(
            "{} is not homogeneous; totalize before taking quotients",
            a.describe(elt)
        )));
    }
    let op = mult_operator(a, elt, m)?;
    let field = m.field();
    Ok((0..m.category.object_count())
        .map(|x| {
            (0..m.levels())
                .map(|d| {
                    let blocks: Vec<Matrix> = (0..=d).map(|f| op.block(x, f, d)).collect();
                    let refs: Vec<&Matrix> = blocks.iter().collect();
                    image(&Matrix::hstack(field, m.dim(x, d), &refs))
                })
                .collect()
        })
        .collect())
}
