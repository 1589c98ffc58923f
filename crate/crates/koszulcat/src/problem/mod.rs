//! Problem files (`.kz`): TOML holding a field, a backend, an optional
//! category presentation, a monoid, named modules and a task block.
//! The grammar is documented in `docs/problem-format.md` at the repository root.

pub mod expr;

use std::collections::BTreeMap;
use std::ops::Range;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use toml::Spanned;

use crate::category::{Backend, Category, CategoryBuilder, Combo, Representation};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};
use crate::monoid::presets::{algebra, group_algebra, identity_monoid};
use crate::monoid::{cyclic_quotient, identity_module, Element, Module, Monoid};
use crate::poly::{polynomial_monoid_named, variable_element};
use expr::{Domain, ExprError, Linear};

type Triple = Spanned<Vec<String>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    field: Option<Spanned<String>>,
    backend: Option<Spanned<String>>,
    category: Option<RawCategory>,
    monoid: Option<RawMonoid>,
    #[serde(default)]
    module: Vec<RawModule>,
    task: Option<RawTask>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCategory {
    objects: Vec<String>,
    unit: Spanned<String>,
    morphisms: Vec<Triple>,
    #[serde(default)]
    identities: Vec<Spanned<Vec<String>>>,
    tensor: Vec<Triple>,
    #[serde(default)]
    compose: Vec<Triple>,
    #[serde(default)]
    tensor_morphisms: Vec<Triple>,
    #[serde(default)]
    symmetry: Vec<Triple>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMonoid {
    name: Option<String>,
    kind: Spanned<String>,
    basis: Option<Vec<String>>,
    unit: Option<Spanned<String>>,
    #[serde(default)]
    products: Vec<Triple>,
    elements: Option<Vec<String>>,
    table: Option<Vec<Spanned<Vec<String>>>>,
    #[serde(default)]
    variables: Vec<String>,
    cap: Option<Spanned<usize>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarLit {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    name: Spanned<String>,
    kind: Spanned<String>,
    generators: Option<Vec<Spanned<String>>>,
    dims: Option<BTreeMap<String, usize>>,
    actions: Option<BTreeMap<String, Spanned<Vec<Vec<ScalarLit>>>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTask {
    command: Option<Spanned<String>>,
    alpha: Option<Vec<Spanned<String>>>,
    n: Option<usize>,
    p: Option<i64>,
    max_degree: Option<usize>,
    #[serde(default)]
    modules: Vec<String>,
    #[serde(default)]
    check_resolution: bool,
}

/// Text with the place it came from, for error positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located {
    pub text: String,
    origin: Origin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Origin {
    /// Byte span of the quoted TOML string.
    File(Range<usize>),
    Argument(String),
}

impl Located {
    /// Text given on the command line (or through the library API).
    pub fn argument(text: impl Into<String>, flag: &str) -> Located {
        Located { text: text.into(), origin: Origin::Argument(flag.into()) }
    }

    fn file(s: &Spanned<String>) -> Located {
        Located { text: s.get_ref().clone(), origin: Origin::File(s.span()) }
    }
}

#[derive(Clone, Debug)]
enum ModuleKind {
    Regular,
    /// `A/(t_1, ..., t_n)` for whichever variables the monoid has.
    Residue,
    Quotient(Vec<Located>),
    Representation(Representation),
}

#[derive(Clone, Debug)]
pub struct ModuleSpec {
    pub name: String,
    kind: ModuleKind,
}

/// Parameters from the `[task]` block; command-line flags override them.
#[derive(Clone, Debug, Default)]
pub struct TaskBlock {
    pub command: Option<String>,
    pub alpha: Vec<Located>,
    pub n: Option<usize>,
    pub p: Option<i64>,
    pub max_degree: Option<usize>,
    pub modules: Vec<String>,
    pub check_resolution: bool,
}

/// A parsed problem file.
#[derive(Clone, Debug)]
pub struct Problem {
    pub path: String,
    pub source: String,
    pub field: Field,
    pub category: Arc<Category>,
    /// The monoid before any polynomial variables are adjoined.
    pub base: Arc<Monoid>,
    pub variables: Vec<String>,
    pub cap: Option<usize>,
    pub modules: Vec<ModuleSpec>,
    pub task: TaskBlock,
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(src.len());
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

struct Ctx<'a> {
    path: &'a str,
    src: &'a str,
    field: Field,
}

impl Ctx<'_> {
    fn at(&self, span: &Range<usize>, message: impl Into<String>) -> Error {
        let (line, column) = line_col(self.src, span.start);
        Error::Parse { path: self.path.into(), line, column, message: message.into() }
    }

    fn located(&self, loc: &Located, e: ExprError) -> Error {
        match &loc.origin {
            Origin::File(span) => {
                let byte = loc.text.char_indices().nth(e.column.saturating_sub(1)).map_or(loc.text.len(), |(b, _)| b);
                let (line, column) = line_col(self.src, span.start + 1 + byte);
                Error::Parse { path: self.path.into(), line, column, message: e.message }
            }
            Origin::Argument(flag) => Error::Parse {
                path: format!("{flag} {:?}", loc.text),
                line: 1,
                column: e.column,
                message: e.message,
            },
        }
    }

    fn scalar(&self, lit: &ScalarLit, span: &Range<usize>) -> Result<Scalar> {
        match lit {
            ScalarLit::Int(v) => Ok(self.field.from_i64(*v)),
            ScalarLit::Text(t) => self.field.parse(t).map_err(|e| self.at(span, e.to_string())),
        }
    }

    fn linear(&self, names: &[String], text: &Spanned<String>) -> Result<Vec<(usize, Scalar)>> {
        self.linear_str(names, &Located::file(text))
    }

    fn linear_str(&self, names: &[String], loc: &Located) -> Result<Vec<(usize, Scalar)>> {
        let d = Linear { field: self.field, names };
        let e = expr::parse(&loc.text).map_err(|e| self.located(loc, e))?;
        let v = expr::eval(&d, &e).map_err(|e| self.located(loc, e))?;
        v.into_combo().map_err(|message| self.located(loc, ExprError { column: 1, message }))
    }
}

fn index_of(names: &[String], name: &str, what: &str, ctx: &Ctx, span: &Range<usize>) -> Result<usize> {
    names.iter().position(|n| n == name).ok_or_else(|| ctx.at(span, format!("unknown {what} {name:?}")))
}

fn triple<'a>(ctx: &Ctx, t: &'a Triple, what: &str) -> Result<(&'a str, &'a str, &'a str)> {
    match t.get_ref().as_slice() {
        [a, b, c] => Ok((a, b, c)),
        _ => Err(ctx.at(&t.span(), format!("{what} entries have the form [a, b, c]"))),
    }
}

/// Expression text inside an array entry; errors point at the array.
fn in_array(text: &str, t: &Triple) -> Spanned<String> {
    Spanned::new(t.span().start..t.span().start, text.to_string())
}

fn build_category(ctx: &Ctx, raw: &RawCategory) -> Result<Category> {
    let objects = raw.objects.clone();
    let unit = index_of(&objects, raw.unit.get_ref(), "object", ctx, &raw.unit.span())?;
    let mut b = CategoryBuilder::new(ctx.field, Backend::FiniteStrict, objects.clone(), unit);
    let mut names = Vec::new();
    for t in &raw.morphisms {
        let (name, s, d) = triple(ctx, t, "morphism")?;
        if names.iter().any(|n: &String| n == name) {
            return Err(ctx.at(&t.span(), format!("morphism {name:?} is declared twice")));
        }
        let s = index_of(&objects, s, "object", ctx, &t.span())?;
        let d = index_of(&objects, d, "object", ctx, &t.span())?;
        b.add_morphism(name, s, d);
        names.push(name.to_string());
    }
    let combo = |text: &str, t: &Triple| -> Result<Combo> { ctx.linear(&names, &in_array(text, t)) };
    for t in &raw.identities {
        let [x, e] = t.get_ref().as_slice() else {
            return Err(ctx.at(&t.span(), "identity entries have the form [object, morphism]"));
        };
        let x = index_of(&objects, x, "object", ctx, &t.span())?;
        b.set_identity(x, combo(e, t)?);
    }
    for t in &raw.tensor {
        let (x, y, z) = triple(ctx, t, "tensor")?;
        let (x, y, z) = (
            index_of(&objects, x, "object", ctx, &t.span())?,
            index_of(&objects, y, "object", ctx, &t.span())?,
            index_of(&objects, z, "object", ctx, &t.span())?,
        );
        b.set_tensor_obj(x, y, z);
    }
    for t in &raw.compose {
        let (f, g, e) = triple(ctx, t, "composition")?;
        let (f, g) = (index_of(&names, f, "morphism", ctx, &t.span())?, index_of(&names, g, "morphism", ctx, &t.span())?);
        b.set_composition(f, g, combo(e, t)?);
    }
    for t in &raw.tensor_morphisms {
        let (f, g, e) = triple(ctx, t, "morphism tensor")?;
        let (f, g) = (index_of(&names, f, "morphism", ctx, &t.span())?, index_of(&names, g, "morphism", ctx, &t.span())?);
        b.set_tensor_mor(f, g, combo(e, t)?);
    }
    for t in &raw.symmetry {
        let (x, y, e) = triple(ctx, t, "symmetry")?;
        let (x, y) = (index_of(&objects, x, "object", ctx, &t.span())?, index_of(&objects, y, "object", ctx, &t.span())?);
        b.set_symmetry(x, y, combo(e, t)?);
    }
    b.build()
}

fn build_monoid(ctx: &Ctx, cat: &Arc<Category>, raw: Option<&RawMonoid>) -> Result<Monoid> {
    let field = ctx.field;
    let Some(raw) = raw else {
        return if cat.backend == Backend::Trivial {
            algebra(field, &field.to_string(), &["1"], 0, |_, _| vec![(0, field.one())])
        } else {
            identity_monoid(cat)
        };
    };
    let kind = raw.kind.get_ref().as_str();
    if kind != "identity" && cat.backend != Backend::Trivial {
        return Err(ctx.at(&raw.kind.span(), "on the finite backend the monoid kind must be \"identity\""));
    }
    let mut m = match kind {
        "identity" => identity_monoid(cat)?,
        "algebra" => {
            let basis = raw.basis.clone().ok_or_else(|| ctx.at(&raw.kind.span(), "an algebra needs a basis"))?;
            let unit_text =
                raw.unit.as_ref().ok_or_else(|| ctx.at(&raw.kind.span(), "an algebra needs a unit"))?;
            let unit = index_of(&basis, unit_text.get_ref(), "basis element", ctx, &unit_text.span())?;
            let mut table: BTreeMap<(usize, usize), Vec<(usize, Scalar)>> = BTreeMap::new();
            for t in &raw.products {
                let (a, b, e) = triple(ctx, t, "product")?;
                let (a, b) = (
                    index_of(&basis, a, "basis element", ctx, &t.span())?,
                    index_of(&basis, b, "basis element", ctx, &t.span())?,
                );
                let value = ctx.linear(&basis, &in_array(e, t))?;
                if table.insert((a, b), value).is_some() {
                    return Err(ctx.at(&t.span(), "product defined twice"));
                }
            }
            let labels: Vec<&str> = basis.iter().map(String::as_str).collect();
            let name = raw.name.clone().unwrap_or_else(|| "A".into());
            algebra(field, &name, &labels, unit, |i, j| match table.get(&(i, j)) {
                Some(v) => v.clone(),
                None if i == unit => vec![(j, field.one())],
                None if j == unit => vec![(i, field.one())],
                None => Vec::new(),
            })?
        }
        "group" => {
            let elements = raw.elements.clone().ok_or_else(|| ctx.at(&raw.kind.span(), "a group needs elements"))?;
            let rows = raw.table.as_ref().ok_or_else(|| ctx.at(&raw.kind.span(), "a group needs a table"))?;
            if rows.len() != elements.len() {
                return Err(ctx.at(&raw.kind.span(), "the table needs one row per element"));
            }
            let mut table = Vec::new();
            for r in rows {
                if r.get_ref().len() != elements.len() {
                    return Err(ctx.at(&r.span(), "the table needs one column per element"));
                }
                table.push(
                    r.get_ref()
                        .iter()
                        .map(|g| index_of(&elements, g, "group element", ctx, &r.span()))
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            let labels: Vec<&str> = elements.iter().map(String::as_str).collect();
            group_algebra(field, raw.name.as_deref().unwrap_or("Q[G]"), &labels, &table)?
        }
        other => {
            return Err(ctx.at(&raw.kind.span(), format!("unknown monoid kind {other:?} (algebra, group, identity)")))
        }
    };
    if let Some(name) = &raw.name {
        m.name = name.clone();
    }
    Ok(m)
}

fn build_module(ctx: &Ctx, cat: &Category, raw: &RawModule) -> Result<ModuleSpec> {
    let name = raw.name.get_ref().clone();
    let kind = match raw.kind.get_ref().as_str() {
        "regular" => ModuleKind::Regular,
        "residue" => ModuleKind::Residue,
        "quotient" => {
            let gens = raw.generators.as_ref().ok_or_else(|| ctx.at(&raw.kind.span(), "a quotient needs generators"))?;
            ModuleKind::Quotient(gens.iter().map(Located::file).collect())
        }
        "representation" => {
            let dims_raw = raw.dims.clone().unwrap_or_default();
            for o in dims_raw.keys() {
                if !cat.objects.contains(o) {
                    return Err(ctx.at(&raw.name.span(), format!("unknown object {o:?} in dims")));
                }
            }
            let dims: Vec<Vec<usize>> =
                cat.objects.iter().map(|o| vec![dims_raw.get(o).copied().unwrap_or(0)]).collect();
            let mut rep = Representation::constant_dims(cat, dims.clone());
            let empty = BTreeMap::new();
            let actions = raw.actions.as_ref().unwrap_or(&empty);
            for k in actions.keys() {
                cat.morphism_index(k).map_err(|e| ctx.at(&raw.name.span(), e.to_string()))?;
            }
            for (id, info) in cat.morphisms.iter().enumerate() {
                let (r, c) = (dims[info.target][0], dims[info.source][0]);
                match actions.get(&info.name) {
                    Some(m) => {
                        let span = m.span();
                        let rows = m
                            .get_ref()
                            .iter()
                            .map(|row| row.iter().map(|v| ctx.scalar(v, &span)).collect::<Result<Vec<_>>>())
                            .collect::<Result<Vec<_>>>()?;
                        if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                            return Err(ctx.at(&span, format!("action of {} must be {r}x{c}", info.name)));
                        }
                        rep.actions[id][0] = Matrix::from_dense(ctx.field, r, c, rows);
                    }
                    None if cat.identities[info.source] == cat.basis_combo(id) => {
                        rep.actions[id][0] = Matrix::identity(ctx.field, r);
                    }
                    None => {
                        return Err(ctx.at(&raw.name.span(), format!("missing action of {}", info.name)));
                    }
                }
            }
            ModuleKind::Representation(rep)
        }
        other => {
            return Err(ctx.at(
                &raw.kind.span(),
                format!("unknown module kind {other:?} (regular, residue, quotient, representation)"),
            ))
        }
    };
    Ok(ModuleSpec { name, kind })
}

/// Elements of a monoid as expression values.
struct MonoidDomain<'a> {
    a: &'a Monoid,
}

impl Domain for MonoidDomain<'_> {
    type Value = Element;

    fn field(&self) -> Field {
        self.a.field()
    }

    fn scalar(&self, c: Scalar) -> Element {
        self.a.unit.scale(&c)
    }

    fn name(&self, name: &str) -> Result<Element, String> {
        if let Some(info) = &self.a.poly {
            if let Some(i) = info.variables.iter().position(|v| v == name) {
                return variable_element(self.a, i + 1).map_err(|e| e.to_string());
            }
        }
        for (x, per) in self.a.labels.iter().enumerate() {
            for (d, ls) in per.iter().enumerate() {
                if let Some(i) = ls.iter().position(|l| l == name) {
                    return Ok(self.a.basis_element(x, d, i));
                }
            }
        }
        Err(format!("{name:?} is neither a basis element nor a variable of {}", self.a.name))
    }

    fn add(&self, a: &Element, b: &Element) -> Result<Element, String> {
        if a.object != b.object {
            let objs = &self.a.category.objects;
            return Err(format!("cannot add elements at objects {} and {}", objs[a.object], objs[b.object]));
        }
        Ok(a.add(b))
    }

    fn neg(&self, a: &Element) -> Element {
        a.neg()
    }

    fn mul(&self, a: &Element, b: &Element) -> Result<Element, String> {
        Ok(self.a.multiply(a, b))
    }
}

impl Problem {
    pub fn load(path: impl AsRef<Path>, field: Option<Field>) -> Result<Problem> {
        let path = path.as_ref();
        let source = std::fs::read_to_string(path)?;
        Problem::parse(&source, &path.display().to_string(), field)
    }

    /// Parses a problem; `field` overrides the file's field.
    pub fn parse(source: &str, path: &str, field: Option<Field>) -> Result<Problem> {
        let raw: RawProblem = toml::from_str(source).map_err(|e| {
            let (line, column) = e.span().map_or((1, 1), |s| line_col(source, s.start));
            Error::Parse { path: path.into(), line, column, message: e.message().trim().to_string() }
        })?;
        let mut ctx = Ctx { path, src: source, field: Field::Rational };
        let file_field = match &raw.field {
            Some(f) => f.get_ref().parse::<Field>().map_err(|e| ctx.at(&f.span(), e.to_string()))?,
            None => Field::Rational,
        };
        ctx.field = field.unwrap_or(file_field);
        let backend = match raw.backend.as_ref().map(|b| (b.get_ref().as_str(), b.span())) {
            None if raw.category.is_some() => Backend::FiniteStrict,
            None | Some(("trivial", _)) => Backend::Trivial,
            Some(("finite", _)) => Backend::FiniteStrict,
            Some((other, span)) => {
                return Err(ctx.at(&span, format!("unknown backend {other:?} (trivial, finite)")));
            }
        };
        let category = match (backend, &raw.category) {
            (Backend::Trivial, None) => Category::trivial(ctx.field),
            (Backend::Trivial, Some(c)) => {
                return Err(ctx.at(&c.unit.span(), "the trivial backend takes no [category] section"));
            }
            (Backend::FiniteStrict, Some(c)) => build_category(&ctx, c)?,
            (Backend::FiniteStrict, None) => {
                return Err(Error::Parse {
                    path: path.into(),
                    line: 1,
                    column: 1,
                    message: "the finite backend needs a [category] section".into(),
                });
            }
        };
        let category = Arc::new(category);
        let base = Arc::new(build_monoid(&ctx, &category, raw.monoid.as_ref())?);
        let (variables, cap) = match &raw.monoid {
            Some(m) => {
                if let Some(c) = &m.cap {
                    if *c.get_ref() == 0 {
                        return Err(ctx.at(&c.span(), "cap must be at least 1"));
                    }
                }
                (m.variables.clone(), m.cap.as_ref().map(|c| *c.get_ref()))
            }
            None => (Vec::new(), None),
        };
        let mut modules: Vec<ModuleSpec> = Vec::new();
        for m in &raw.module {
            if modules.iter().any(|s| s.name == *m.name.get_ref()) {
                return Err(ctx.at(&m.name.span(), format!("module {:?} is declared twice", m.name.get_ref())));
            }
            modules.push(build_module(&ctx, &category, m)?);
        }
        let task = match &raw.task {
            Some(t) => TaskBlock {
                command: t.command.as_ref().map(|c| c.get_ref().clone()),
                alpha: t.alpha.iter().flatten().map(Located::file).collect(),
                n: t.n,
                p: t.p,
                max_degree: t.max_degree,
                modules: t.modules.clone(),
                check_resolution: t.check_resolution,
            },
            None => TaskBlock::default(),
        };
        Ok(Problem {
            path: path.into(),
            source: source.into(),
            field: ctx.field,
            category,
            base,
            variables,
            cap,
            modules,
            task,
        })
    }

    fn ctx(&self) -> Ctx<'_> {
        Ctx { path: &self.path, src: &self.source, field: self.field }
    }

    /// The working monoid: the base with the declared variables adjoined,
    /// truncated at `cap` (falling back to the file's cap).
    pub fn monoid(&self, cap: Option<usize>) -> Result<Arc<Monoid>> {
        if self.variables.is_empty() {
            return Ok(self.base.clone());
        }
        let cap = cap.or(self.cap).ok_or_else(|| {
            Error::Input("a monoid with variables needs a cap (set `cap` or pass --max-degree)".into())
        })?;
        if cap == 0 {
            return Err(Error::Input("the cap must be at least 1".into()));
        }
        Ok(Arc::new(polynomial_monoid_named(&self.base, &self.variables, cap)?))
    }

    /// Evaluates an expression in `a`.
    pub fn element(&self, loc: &Located, a: &Monoid) -> Result<Element> {
        let ctx = self.ctx();
        let e = expr::parse(&loc.text).map_err(|e| ctx.located(loc, e))?;
        expr::eval(&MonoidDomain { a }, &e).map_err(|e| ctx.located(loc, e))
    }

    pub fn module_names(&self) -> Vec<String> {
        self.modules.iter().map(|m| m.name.clone()).collect()
    }

    /// Builds the named module over `a`. `regular` always names `a` itself.
    pub fn module(&self, name: &str, a: &Arc<Monoid>) -> Result<Module> {
        let Some(spec) = self.modules.iter().find(|m| m.name == name) else {
            if name == "regular" {
                return Ok(Module::regular(a));
            }
            return Err(Error::Input(format!("no module named {name:?} in {}", self.path)));
        };
        let mut m = match &spec.kind {
            ModuleKind::Regular => Module::regular(a),
            ModuleKind::Residue => {
                let n = a.poly.as_ref().map_or(0, |p| p.n());
                if n == 0 {
                    return Err(Error::Input(format!("module {name:?} needs a monoid with variables")));
                }
                let vars = (1..=n).map(|i| variable_element(a, i)).collect::<Result<Vec<_>>>()?;
                cyclic_quotient(a, &vars)?
            }
            ModuleKind::Quotient(gens) => {
                let els = gens.iter().map(|g| self.element(g, a)).collect::<Result<Vec<_>>>()?;
                cyclic_quotient(a, &els)?
            }
            ModuleKind::Representation(rep) => identity_module(a, name, rep.clone())?,
        };
        m.name = spec.name.clone();
        Ok(m)
    }

    /// A linear combination of basis names, with the error positioned in
    /// `loc`.
    pub fn combination(&self, loc: &Located, names: &[String]) -> Result<Vec<(usize, Scalar)>> {
        self.ctx().linear_str(names, loc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DUAL: &str = r#"
field = "Q"

[monoid]
name = "D"
kind = "algebra"
basis = ["1", "x"]
unit = "1"
products = [["x", "x", "0"]]

[[module]]
name = "k"
kind = "quotient"
generators = ["x"]
"#;

    #[test]
    fn parses_an_algebra() {
        let p = Problem::parse(DUAL, "dual.kz", None).unwrap();
        let a = p.monoid(None).unwrap();
        assert_eq!(a.carrier.dims, vec![vec![2]]);
        let x = p.element(&Located::argument("x", "--alpha"), &a).unwrap();
        assert!(a.multiply(&x, &x).is_zero());
        let k = p.module("k", &a).unwrap();
        assert_eq!(k.carrier.dims, vec![vec![1]]);
        let two = p.element(&Located::argument("2 - 3/2", "--alpha"), &a).unwrap();
        assert_eq!(two, a.unit.scale(&Field::Rational.parse("1/2").unwrap()));
    }

    #[test]
    fn errors_carry_positions() {
        let bad = DUAL.replace("[\"x\", \"x\", \"0\"]", "[\"x\", \"y\", \"0\"]");
        match Problem::parse(&bad, "dual.kz", None) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 9),
            other => panic!("{other:?}"),
        }
        let bad = DUAL.replace("generators = [\"x\"]", "generators = [\"x + q\"]");
        let p = Problem::parse(&bad, "dual.kz", None).unwrap();
        let a = p.monoid(None).unwrap();
        match p.module("k", &a) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (14, 20)),
            other => panic!("{other:?}"),
        }
        match p.element(&Located::argument("x +", "--alpha"), &a) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(Problem::parse("field = ", "x.kz", None), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(Problem::parse("colour = 1", "x.kz", None), Err(Error::Parse { .. })));
    }

    #[test]
    fn variables_need_a_cap() {
        let src = "[monoid]\nkind = \"algebra\"\nbasis = [\"1\"]\nunit = \"1\"\nvariables = [\"x\", \"y\"]\n";
        let p = Problem::parse(src, "p.kz", None).unwrap();
        assert!(p.monoid(None).is_err());
        let g = p.monoid(Some(3)).unwrap();
        let e = p.element(&Located::argument("x*y - y x + x^2", "--alpha"), &g).unwrap();
        assert_eq!(e.homogeneous_level(), Some(2));
    }
}
