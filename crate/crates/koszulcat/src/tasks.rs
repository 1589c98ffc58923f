//! Dispatch of the command verbs on a parsed problem.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::category::{validate_presentation, validate_representation, Backend};
use crate::error::{Error, Result};
use crate::hochschild::{
    build_enveloping, certify_tensor_idempotent, hochschild_cohomology, EnvelopingData, TensorIdempotentCertificate,
};
use crate::koszul::{build_koszul, check_resolution, DimTable};
use crate::linalg::Field;
use crate::monoid::{
    commutant, is_central, is_regular_sequence, validate_module, validate_monoid, Element, Grading, Module, Monoid,
    RegularityCertificate,
};
use crate::poly::polynomial_monoid;
use crate::problem::{Located, Problem};
use crate::report::{Certificate, DimensionTable, Entry, GradedReport, ProblemEcho, TaskEcho};
use crate::syzygy::{build_syzygy_resolution, tensor_over_monoid};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Koszul,
    RegularCheck,
    Commutant,
    TensorIdem,
    Hh,
    Syzygy,
    TensorOver,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Validate,
        Command::Koszul,
        Command::RegularCheck,
        Command::Commutant,
        Command::TensorIdem,
        Command::Hh,
        Command::Syzygy,
        Command::TensorOver,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Koszul => "koszul",
            Command::RegularCheck => "regular-check",
            Command::Commutant => "commutant",
            Command::TensorIdem => "tensor-idem",
            Command::Hh => "hh",
            Command::Syzygy => "syzygy",
            Command::TensorOver => "tensor-over",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Command> {
        Command::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Input(format!("unknown command {s:?}")))
    }
}

/// Parameters of one run. Unset fields fall back to the problem's
/// `[task]` block.
#[derive(Clone, Debug, Default)]
pub struct TaskOptions {
    pub command: Option<Command>,
    pub alpha: Option<Vec<String>>,
    pub n: Option<usize>,
    pub p: Option<i64>,
    pub max_degree: Option<usize>,
    pub modules: Option<Vec<String>>,
    pub check_resolution: bool,
}

/// A fully resolved task.
#[derive(Clone, Debug)]
pub struct Task {
    pub command: Command,
    pub alpha: Vec<Located>,
    pub n: Option<usize>,
    pub p: Option<i64>,
    pub max_degree: Option<usize>,
    pub modules: Vec<String>,
    pub check_resolution: bool,
}

impl Task {
    pub fn resolve(problem: &Problem, opts: &TaskOptions) -> Result<Task> {
        let block = &problem.task;
        let command = match (opts.command, &block.command) {
            (Some(c), _) => c,
            (None, Some(c)) => c.parse()?,
            (None, None) => return Err(Error::Input("no command given and the file has no [task] command".into())),
        };
        let alpha = match &opts.alpha {
            Some(list) => list.iter().map(|a| Located::argument(a.clone(), "--alpha")).collect(),
            None => block.alpha.clone(),
        };
        if opts.max_degree == Some(0) || block.max_degree == Some(0) && opts.max_degree.is_none() {
            return Err(Error::Input("--max-degree must be at least 1".into()));
        }
        Ok(Task {
            command,
            alpha,
            n: opts.n.or(block.n),
            p: opts.p.or(block.p),
            max_degree: opts.max_degree.or(block.max_degree),
            modules: opts.modules.clone().unwrap_or_else(|| block.modules.clone()),
            check_resolution: opts.check_resolution || block.check_resolution,
        })
    }

    fn echo(&self, field: Field) -> TaskEcho {
        TaskEcho {
            command: self.command.to_string(),
            field: field.to_string(),
            alpha: self.alpha.iter().map(|a| a.text.clone()).collect(),
            n: self.n,
            p: self.p,
            max_degree: self.max_degree,
            modules: self.modules.clone(),
            check_resolution: self.check_resolution,
        }
    }
}

/// Runs the task on a private thread pool (`None`: rayon's default).
pub fn run_with_threads(problem: &Problem, task: &Task, threads: Option<usize>) -> Result<GradedReport> {
    match threads {
        None => run(problem, task),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Input(format!("cannot start {n} threads: {e}")))?;
            pool.install(|| run(problem, task))
        }
    }
}

pub fn run(problem: &Problem, task: &Task) -> Result<GradedReport> {
    let mut r = GradedReport::new(
        task.echo(problem.field),
        ProblemEcho { path: problem.path.clone(), source: problem.source.clone() },
    );
    match task.command {
        Command::Validate => validate(problem, task, &mut r)?,
        Command::Koszul => koszul(problem, task, &mut r)?,
        Command::RegularCheck => regular_check(problem, task, &mut r)?,
        Command::Commutant => commutant_task(problem, task, &mut r)?,
        Command::TensorIdem => tensor_idem(problem, &mut r)?,
        Command::Hh => hh(problem, task, &mut r)?,
        Command::Syzygy => syzygy(problem, task, &mut r)?,
        Command::TensorOver => tensor_over(problem, task, &mut r)?,
    }
    Ok(r)
}

/// Outcome of re-running the problem embedded in a report.
#[derive(Clone, Debug)]
pub struct Replay {
    pub report: GradedReport,
    pub identical: bool,
}

pub fn replay(original: &GradedReport, threads: Option<usize>) -> Result<Replay> {
    let echo = &original.task;
    let field: Field = echo.field.parse()?;
    let problem = Problem::parse(&original.problem.source, &original.problem.path, Some(field))?;
    let task = Task {
        command: echo.command.parse()?,
        alpha: echo.alpha.iter().map(|a| Located::argument(a.clone(), "--alpha")).collect(),
        n: echo.n,
        p: echo.p,
        max_degree: echo.max_degree,
        modules: echo.modules.clone(),
        check_resolution: echo.check_resolution,
    };
    let report = run_with_threads(&problem, &task, threads)?;
    let identical = report == *original;
    Ok(Replay { report, identical })
}

fn describe_grading(a: &Monoid, r: &mut GradedReport) {
    r.monoid = a.name.clone();
    r.grading = match a.grading {
        Grading::Exact => "ungraded".into(),
        Grading::Truncated { cap } => format!("truncated at {cap}"),
        Grading::Totalized { cap } => format!("totalized, truncated at {cap}"),
    };
    r.truncated |= a.truncated;
}

fn objects(a: &Monoid) -> &[String] {
    &a.category.objects
}

fn elements(problem: &Problem, task: &Task, a: &Monoid) -> Result<Vec<Element>> {
    if task.alpha.is_empty() {
        return Err(Error::Input("no elements given (use --alpha)".into()));
    }
    task.alpha.iter().map(|l| problem.element(l, a)).collect()
}

fn module_arg(problem: &Problem, task: &Task, i: usize, a: &Arc<Monoid>) -> Result<Option<Module>> {
    task.modules.get(i).map(|name| problem.module(name, a)).transpose()
}

fn regularity_certificate(c: &RegularityCertificate) -> Certificate {
    let witness = c.stages.iter().find_map(|s| {
        s.witness.as_ref().map(|w| {
            format!("{} kills {} at {} (coordinates {:?})", s.element, w.description, w.object, w.coordinates)
        })
    });
    let mut cert = Certificate::new("regular sequence", c.regular).witness(witness.or_else(|| c.failure.clone()));
    for s in &c.stages {
        let window = s.window.map_or(String::new(), |w| format!(" on weights ≤ {w}"));
        cert = cert.detail(format!(
            "stage {}: {} {}{window}",
            s.index + 1,
            s.element,
            if s.injective { "injective" } else { "not injective" }
        ));
    }
    if c.quotient_nonzero == Some(false) {
        cert = cert.detail("the final quotient is zero");
    }
    cert
}

fn validate(problem: &Problem, task: &Task, r: &mut GradedReport) -> Result<()> {
    let cat = &problem.category;
    let presentation = validate_presentation(cat);
    let ok = presentation.passed();
    r.monoid = problem.base.name.clone();
    if cat.backend == Backend::FiniteStrict {
        r.certify(Certificate::from_validation("category presentation", &presentation));
    }
    if !ok {
        r.notes.push("the presentation is invalid; monoid and modules were not checked".into());
        return Ok(());
    }
    let a = problem.monoid(task.max_degree)?;
    describe_grading(&a, r);
    r.window = a.grading.cap();
    r.tables.push(DimensionTable::single(a.name.clone(), 0, objects(&a), &a.carrier.dims, None));
    r.certify(Certificate::from_validation("carrier functor", &validate_representation(cat, &a.carrier)?));
    r.certify(Certificate::from_validation(format!("monoid {}", a.name), &validate_monoid(&a)?));
    // Modules of a variable-free file live over A_n when -n is given.
    let over = match (problem.variables.is_empty(), task.n, task.max_degree.or(problem.cap)) {
        (true, Some(n), Some(cap)) if n > 0 => {
            let an = Arc::new(polynomial_monoid(&a, n, cap)?);
            r.certify(Certificate::from_validation(format!("monoid {}", an.name), &validate_monoid(&an)?));
            an
        }
        _ => a.clone(),
    };
    for name in problem.module_names() {
        let m = problem.module(&name, &over)?;
        r.tables.push(DimensionTable::single(format!("module {name}"), 0, objects(&a), &m.carrier.dims, None));
        r.certify(Certificate::from_validation(format!("module {name}"), &validate_module(&m)?));
    }
    Ok(())
}

fn koszul(problem: &Problem, task: &Task, r: &mut GradedReport) -> Result<()> {
    let a = problem.monoid(task.max_degree)?;
    describe_grading(&a, r);
    let alpha = elements(problem, task, &a)?;
    let m = module_arg(problem, task, 0, &a)?;
    let k = build_koszul(&a, &alpha, m.as_ref())?;
    if k.totalized {
        describe_grading(&k.monoid, r);
        r.notes.push("the elements are not homogeneous; all degrees were collapsed into one".into());
    }
    let window = k.window;
    let graded = k.complex.levels() > 1;
    r.window = graded.then_some(window);
    let cap = if graded { Some(window) } else { None };
    let objs = objects(&a).to_vec();
    let mut terms = DimensionTable::new("terms");
    let mut homology = DimensionTable::new("homology");
    for p in 0..=k.n() {
        let dims: DimTable = k.complex.dims[p].clone();
        terms.push(p as i64, &objs, &dims, cap);
        homology.push(p as i64, &objs, &k.homology(p, if graded { window } else { 0 })?, None);
    }
    r.tables.push(terms);
    r.tables.push(homology);
    r.notes.push(format!(
        "term ranks (copies of {}): {:?}; elements: {}",
        k.module.name,
        k.term_ranks(),
        k.descriptions.join(", ")
    ));
    r.certify(Certificate::from_validation("d∘d = 0", &k.complex.check_dd()));
    if k.module.left.is_some() {
        r.certify(Certificate::from_validation("differentials are module maps", &k.check_module_morphisms()));
    }
    if task.check_resolution {
        let c = check_resolution(&a, &alpha, m.as_ref())?;
        r.certify(regularity_certificate(&c.regularity));
        let mut res = Certificate::new("resolution theorem", c.consistent && c.h0_matches_quotient && c.dd_zero);
        if !c.regularity.regular {
            res = res.detail("not regular: the theorem makes no claim; homology reported as a cross-check");
        }
        for (p, o, e, h) in &c.nonzero_homology {
            res = res.detail(format!("H_{p} at ({o}, {e}) has dimension {h}"));
        }
        r.certify(res);
        r.certify(Certificate::new("H_0 = M/(α)M", c.h0_matches_quotient));
        r.tables.push(DimensionTable::single("M/(α)M", 0, &objs, &c.quotient_dims, None));
    }
    Ok(())
}

fn regular_check(problem: &Problem, task: &Task, r: &mut GradedReport) -> Result<()> {
    let a = problem.monoid(task.max_degree)?;
    describe_grading(&a, r);
    let alpha = elements(problem, task, &a)?;
    let m = module_arg(problem, task, 0, &a)?.unwrap_or_else(|| Module::regular(&a));
    let c = is_regular_sequence(&a, &alpha, &m)?;
    r.window = c.window();
    if let Some(q) = &c.quotient_dims {
        r.tables.push(DimensionTable::single("M/(α)M", 0, objects(&a), q, c.window()));
    }
    r.certify(regularity_certificate(&c));
    Ok(())
}

fn commutant_task(problem: &Problem, task: &Task, r: &mut GradedReport) -> Result<()> {
    let a = problem.monoid(task.max_degree)?;
    describe_grading(&a, r);
    r.window = a.grading.cap();
    let mut table = DimensionTable::new("commutant");
    let objs = objects(&a).to_vec();
    for (x, name) in objs.iter().enumerate() {
        for (d, sub) in commutant(&a, x).iter().enumerate() {
            table.entries.push(Entry { homological: 0, object: name.clone(), degree: d, dim: sub.dim() });
            for v in sub.vectors() {
                let mut e = a.zero_element(x);
                e.parts[d] = v;
                r.notes.push(format!("C_A({name}) degree {d}: {}", a.describe(&e)));
            }
        }
    }
    r.tables.push(table);
    let alpha = if task.alpha.is_empty() { Vec::new() } else { elements(problem, task, &a)? };
    for (loc, g) in task.alpha.iter().zip(alpha) {
        r.certify(Certificate::new(format!("{} is central", loc.text), g.object == a.unit_object() && is_central(&a, &g)));
    }
    Ok(())
}

fn idempotence_certificate(c: &TensorIdempotentCertificate) -> Certificate {
    let mode = match c.mode {
        Some(m) => serde_json::to_value(m).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default(),
        None => "none".into(),
    };
    let mut cert = Certificate::new(format!("{} is tensor idempotent and commutative", c.monoid), c.passed())
        .witness(c.failure.clone())
        .detail(format!("mode: {mode}"))
        .detail(format!("commutative: {}", c.commutative))
        .detail(format!("direct and quotient-of-I modes consistent: {}", c.consistent));
    for (i, (o, day, dim, rank)) in c.ranks.iter().enumerate() {
        cert = cert.detail(format!(
            "{o}: μ from dim {day} to dim {dim} has rank {rank}; e_A surjective: {}",
            c.quotient_of_i[i]
        ));
    }
    cert
}

fn tensor_idem(problem: &Problem, r: &mut GradedReport) -> Result<()> {
    let a = &problem.base;
    describe_grading(a, r);
    let c = certify_tensor_idempotent(a)?;
    let objs = objects(a).to_vec();
    let day: DimTable = c.ranks.iter().map(|(_, d, _, _)| vec![*d]).collect();
    let rank: DimTable = c.ranks.iter().map(|(_, _, _, k)| vec![*k]).collect();
    r.tables.push(DimensionTable::single("A", 0, &objs, &a.carrier.dims, None));
    r.tables.push(DimensionTable::single("A⊛A", 0, &objs, &day, None));
    r.tables.push(DimensionTable::single("rank μ", 0, &objs, &rank, None));
    let direct = c.direct.iter().all(|&b| b) && c.well_defined.iter().all(|&b| b);
    let quotient = c.quotient_of_i.iter().all(|&b| b);
    r.certify(Certificate::new("direct mode: μ_A invertible", direct).informational());
    r.certify(Certificate::new("quotient-of-I mode: e_A surjective", quotient).informational());
    r.certify(idempotence_certificate(&c));
    Ok(())
}

/// The enveloping data for `hh` and `syzygy`; refuses when the base is not
/// tensor idempotent.
fn enveloping(problem: &Problem, task: &Task, r: &mut GradedReport) -> Result<EnvelopingData> {
    let a = &problem.base;
    let n = task.n.or((!problem.variables.is_empty()).then_some(problem.variables.len())).ok_or_else(|| {
        Error::Input("give the number of variables with -n".into())
    })?;
    let cap = task.max_degree.or(problem.cap).ok_or_else(|| Error::Input("give the cap with --max-degree".into()))?;
    let cert = certify_tensor_idempotent(a)?;
    if !cert.passed() {
        return Err(Error::Precondition(format!(
            "{} is not certified tensor idempotent and commutative: {}",
            a.name,
            cert.failure.clone().unwrap_or_else(|| "no mode succeeded".into())
        )));
    }
    r.certify(idempotence_certificate(&cert));
    let e = build_enveloping(a, &cert, n, cap)?;
    describe_grading(&e.an, r);
    let ec = &e.certificate;
    r.certify(
        Certificate::new("ker π = J in the enveloping monoid", ec.passed())
            .detail(format!("J ⊆ ker π: {}", ec.ideal_in_kernel))
            .detail(format!("ker π ⊆ J: {}", ec.kernel_in_ideal))
            .detail(format!("dim J + dim A_n = dim A_2n: {}", ec.dims_add_up))
            .detail(format!("π multiplicative and unital: {}", ec.multiplicative && ec.unital)),
    );
    Ok(e)
}

fn hh(problem: &Problem, task: &Task, r: &mut GradedReport) -> Result<()> {
    let p = task.p.ok_or_else(|| Error::Input("give the cohomological degree with -p".into()))?;
    let e = enveloping(problem, task, r)?;
    let m = module_arg(problem, task, 0, &e.an)?;
    let h = hochschild_cohomology(&e, m.as_ref(), p as isize)?;
    r.window = Some(h.window);
    let objs = objects(&e.an).to_vec();
    r.tables.push(DimensionTable::single(format!("HH^{p}"), p, &objs, &h.dims, Some(h.window)));
    r.tables.push(DimensionTable::single("cochains", p, &objs, &h.cochain_dims, Some(h.window)));
    r.notes.push(format!("coefficients: {}", h.coefficients));
    let phi = Certificate::new("cochain differentials vanish (Φ = 0)", h.phi_zero).checked(h.phi_checked);
    r.certify(if m.is_none() { phi } else { phi.informational() });
    if h.vanishing {
        r.certify(Certificate::new(format!("HH^{p} = 0 for p > n = {}", h.n), h.dims.iter().flatten().all(|&d| d == 0)));
    }
    if let Some(ok) = h.matches_theorem {
        r.certify(Certificate::new("dim HH^p = C(n, p) · dim A_n", ok));
    }
    Ok(())
}

fn syzygy(problem: &Problem, task: &Task, r: &mut GradedReport) -> Result<()> {
    let name = task.modules.first().ok_or_else(|| Error::Input("give the module to resolve with --module".into()))?;
    let e = enveloping(problem, task, r)?;
    let m = problem.module(name, &e.an)?;
    let s = build_syzygy_resolution(&e, &m)?;
    r.window = Some(s.window);
    let objs = objects(&e.an).to_vec();
    let mut terms = DimensionTable::new("terms");
    let mut homology = DimensionTable::new("homology");
    for p in 0..=s.n {
        terms.push(p as i64, &objs, &s.complex.dims[p], Some(s.window));
        homology.push(p as i64, &objs, &s.homology[p], Some(s.window));
    }
    r.tables.push(terms);
    r.tables.push(homology);
    r.tables.push(DimensionTable::single(format!("module {}", m.name), -1, &objs, &m.carrier.dims, Some(s.window)));
    r.notes.push(format!("resolution length {}", s.length));
    r.certify(Certificate::new("d∘d = 0", s.dd_zero));
    r.certify(Certificate::new("augmented complex is exact", s.exact));
    r.certify(Certificate::new("H_0 = M", s.h0_matches_module));
    r.certify(
        Certificate::new("contracting homotopy: dh + hd = id", s.split.passed())
            .checked(s.split.cells_checked)
            .witness((s.split.failures > 0).then(|| format!("{} cells fail", s.split.failures))),
    );
    r.certify(Certificate::new("homotopy commutes with the category action", s.homotopy_natural).informational());
    let mut tags = Certificate::new("terms are induced from the base", s.tags.iter().all(|t| t.dims_match));
    for t in &s.tags {
        tags = tags.detail(format!("term {}: {} copies of {}", t.term, t.copies, t.induced_from));
    }
    r.certify(tags);
    r.certify(Certificate::new(format!("length ≤ n + 1 = {}", s.n + 1), s.length <= s.n + 1));
    Ok(())
}

fn tensor_over(problem: &Problem, task: &Task, r: &mut GradedReport) -> Result<()> {
    let a = problem.monoid(task.max_degree)?;
    describe_grading(&a, r);
    r.window = a.grading.cap();
    let [m_name, n_name] = task.modules.as_slice() else {
        return Err(Error::Input("tensor-over needs exactly two modules (--module M --module N)".into()));
    };
    let m = problem.module(m_name, &a)?;
    let n = problem.module(n_name, &a)?;
    let t = tensor_over_monoid(&m, &n)?;
    let objs = objects(&a).to_vec();
    let day: DimTable = t.day.cells.iter().map(|per| per.iter().map(|c| c.dim()).collect()).collect();
    r.tables.push(DimensionTable::single(format!("{m_name} ⊛ {n_name}"), 0, &objs, &day, None));
    r.tables.push(DimensionTable::single(format!("{m_name} ⊗_A {n_name}"), 0, &objs, t.dims(), None));
    r.tables.push(DimensionTable::single("relation rank", 0, &objs, &t.relation_ranks, None));
    r.certify(Certificate::new("projection kills the relations", t.kills_relations));
    Ok(())
}
