//! C ABI for the koszulcat engine.
//!
//! Problems and reports are opaque handles. Every fallible call returns a
//! [`KzStatus`]; on failure [`kz_last_error_message`] describes the error
//! for the calling thread. Strings returned by the library are owned by the
//! caller and released with [`kz_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use serde::Deserialize;

use koszulcat::linalg::Field;
use koszulcat::problem::Problem;
use koszulcat::report::GradedReport;
use koszulcat::tasks::{run_with_threads, Command, Task, TaskOptions};
use koszulcat::Error;

/// Status codes; `OK`, `MATH_ERROR` and `INPUT_ERROR` match the exit codes
/// of the command-line tool.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KzStatus {
    Ok = 0,
    /// A mathematical refusal: non-central element, failed precondition.
    MathError = 1,
    /// Malformed problem, unknown command, bad options, window errors.
    InputError = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    /// A panic inside the library.
    Internal = 5,
}

/// A parsed problem file.
pub struct KzProblem {
    problem: Problem,
}

/// The result of one task.
pub struct KzReport {
    report: GradedReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(text).expect("no interior NUL")));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(KzStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let status = if e.is_input_error() { KzStatus::InputError } else { KzStatus::MathError };
        Failure(status, e.to_string())
    }
}

/// Runs `f`, turning errors and panics into a status and the thread's
/// last error message.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> KzStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KzStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(panic) => {
            let what = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal error: {what}"));
            KzStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(KzStatus::NullPointer, format!("{what} is NULL")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(KzStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn optional_text<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        Ok(None)
    } else {
        text(p, what).map(Some)
    }
}

fn out_ptr<T>(out: *mut *mut T) -> Result<&'static mut *mut T, Failure> {
    if out.is_null() {
        return Err(Failure(KzStatus::NullPointer, "output pointer is NULL".into()));
    }
    // SAFETY: checked non-null; the caller passes a writable location.
    Ok(unsafe { &mut *out })
}

fn field_override(field: Option<&str>) -> Result<Option<Field>, Failure> {
    field.map(|f| f.parse::<Field>().map_err(Failure::from)).transpose()
}

/// Parses a problem from source text. `path` (nullable) is used in error
/// positions and `field` (nullable) overrides the file's field.
///
/// # Safety
/// String arguments must be NUL-terminated or NULL where allowed; `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn kz_problem_from_str(
    source: *const c_char,
    path: *const c_char,
    field: *const c_char,
    out: *mut *mut KzProblem,
) -> KzStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let source = text(source, "source")?;
        let path = optional_text(path, "path")?.unwrap_or("<memory>");
        let field = field_override(optional_text(field, "field")?)?;
        let problem = Problem::parse(source, path, field)?;
        *out = Box::into_raw(Box::new(KzProblem { problem }));
        Ok(())
    })
}

/// Reads and parses a problem file.
///
/// # Safety
/// As for [`kz_problem_from_str`].
#[no_mangle]
pub unsafe extern "C" fn kz_problem_from_file(
    path: *const c_char,
    field: *const c_char,
    out: *mut *mut KzProblem,
) -> KzStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let path = text(path, "path")?;
        let field = field_override(optional_text(field, "field")?)?;
        let problem = Problem::load(path, field)?;
        *out = Box::into_raw(Box::new(KzProblem { problem }));
        Ok(())
    })
}

/// # Safety
/// `problem` must come from this library and not be freed twice. NULL is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn kz_problem_free(problem: *mut KzProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Options for [`kz_run_task`], given as a JSON object. Missing fields
/// fall back to the problem's `[task]` block.
#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Options {
    alpha: Option<Vec<String>>,
    n: Option<usize>,
    p: Option<i64>,
    max_degree: Option<usize>,
    modules: Option<Vec<String>>,
    #[serde(default)]
    check_resolution: bool,
    threads: Option<usize>,
}

fn run(problem: &KzProblem, command: Option<&str>, options: Options, out: *mut *mut KzReport) -> Result<(), Failure> {
    let out = out_ptr(out)?;
    *out = ptr::null_mut();
    let command = command.map(str::parse::<Command>).transpose()?;
    let opts = TaskOptions {
        command,
        alpha: options.alpha,
        n: options.n,
        p: options.p,
        max_degree: options.max_degree,
        modules: options.modules,
        check_resolution: options.check_resolution,
    };
    let task = Task::resolve(&problem.problem, &opts)?;
    let report = run_with_threads(&problem.problem, &task, options.threads)?;
    *out = Box::into_raw(Box::new(KzReport { report }));
    Ok(())
}

unsafe fn problem_ref<'a>(p: *const KzProblem) -> Result<&'a KzProblem, Failure> {
    p.as_ref().ok_or_else(|| Failure(KzStatus::NullPointer, "problem is NULL".into()))
}

/// Runs a task. `command` (nullable: use the file's `[task]`) is one of
/// `validate`, `koszul`, `regular-check`, `commutant`, `tensor-idem`, `hh`,
/// `syzygy`, `tensor-over`. `options_json` (nullable) may set `alpha`,
/// `n`, `p`, `max_degree`, `modules`, `check_resolution` and `threads`.
///
/// A report is produced whenever the computation ran, including when a
/// certificate failed; check [`kz_report_passed`].
///
/// # Safety
/// `problem` must be a live handle; strings NUL-terminated or NULL; `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn kz_run_task(
    problem: *const KzProblem,
    command: *const c_char,
    options_json: *const c_char,
    out: *mut *mut KzReport,
) -> KzStatus {
    guard(|| {
        let problem = problem_ref(problem)?;
        let command = optional_text(command, "command")?;
        let options = match optional_text(options_json, "options")? {
            Some(json) => serde_json::from_str(json)
                .map_err(|e| Failure(KzStatus::InputError, format!("options: {e}")))?,
            None => Options::default(),
        };
        run(problem, command, options, out)
    })
}

/// Checks the category, monoid and module axioms.
///
/// # Safety
/// As for [`kz_run_task`].
#[no_mangle]
pub unsafe extern "C" fn kz_validate(problem: *const KzProblem, out: *mut *mut KzReport) -> KzStatus {
    guard(|| run(problem_ref(problem)?, Some("validate"), Options::default(), out))
}

/// Koszul complex of the comma-separated elements `alpha` (nullable: use
/// the file's).
///
/// # Safety
/// As for [`kz_run_task`].
#[no_mangle]
pub unsafe extern "C" fn kz_koszul(
    problem: *const KzProblem,
    alpha: *const c_char,
    check_resolution: bool,
    out: *mut *mut KzReport,
) -> KzStatus {
    guard(|| {
        let alpha = optional_text(alpha, "alpha")?.map(|a| a.split(',').map(|s| s.trim().to_string()).collect());
        run(problem_ref(problem)?, Some("koszul"), Options { alpha, check_resolution, ..Options::default() }, out)
    })
}

fn optional_count(v: i64) -> Option<usize> {
    usize::try_from(v).ok()
}

/// `HH^p(A_n, coefficients)`; a negative `n` uses the problem's value.
/// `module` is nullable (coefficients `A_n`).
///
/// # Safety
/// As for [`kz_run_task`].
#[no_mangle]
pub unsafe extern "C" fn kz_hh(
    problem: *const KzProblem,
    n: i64,
    p: i64,
    module: *const c_char,
    out: *mut *mut KzReport,
) -> KzStatus {
    guard(|| {
        let modules = optional_text(module, "module")?.map(|m| vec![m.to_string()]);
        let options = Options { n: optional_count(n), p: Some(p), modules, ..Options::default() };
        run(problem_ref(problem)?, Some("hh"), options, out)
    })
}

/// Syzygy resolution of `module` over `A_n`; a negative `n` uses the
/// problem's value.
///
/// # Safety
/// As for [`kz_run_task`].
#[no_mangle]
pub unsafe extern "C" fn kz_syzygy(
    problem: *const KzProblem,
    n: i64,
    module: *const c_char,
    out: *mut *mut KzReport,
) -> KzStatus {
    guard(|| {
        let modules = optional_text(module, "module")?.map(|m| vec![m.to_string()]);
        let options = Options { n: optional_count(n), modules, ..Options::default() };
        run(problem_ref(problem)?, Some("syzygy"), options, out)
    })
}

/// Whether every required certificate passed; false for NULL.
///
/// # Safety
/// `report` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn kz_report_passed(report: *const KzReport) -> bool {
    report.as_ref().is_some_and(|r| r.report.passed)
}

fn owned(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior NUL").into_raw()
}

/// The report as JSON; free with [`kz_string_free`]. NULL for a NULL
/// report.
///
/// # Safety
/// `report` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn kz_report_json(report: *const KzReport) -> *mut c_char {
    report.as_ref().map_or(ptr::null_mut(), |r| owned(r.report.to_json()))
}

/// The report as aligned text tables; free with [`kz_string_free`].
///
/// # Safety
/// `report` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn kz_report_text(report: *const KzReport) -> *mut c_char {
    report.as_ref().map_or(ptr::null_mut(), |r| owned(r.report.to_text()))
}

/// # Safety
/// `report` must come from this library and not be freed twice. NULL is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn kz_report_free(report: *mut KzReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `s` must be a string returned by this library, or NULL.
#[no_mangle]
pub unsafe extern "C" fn kz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The last error on this thread, or NULL. Valid until the next call into
/// the library from the same thread; do not free.
#[no_mangle]
pub extern "C" fn kz_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn kz_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
