use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use koszulcat_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = kz_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { kz_string_free(s) };
    out
}

const GROUND: &str = "field = \"Q\"\n\n[[module]]\nname = \"k\"\nkind = \"residue\"\n\n[task]\nn = 2\nmax_degree = 4\n";

fn problem(src: &str) -> *mut KzProblem {
    let mut p = ptr::null_mut();
    let s = unsafe { kz_problem_from_str(c(src).as_ptr(), c("mem.kz").as_ptr(), ptr::null(), &mut p) };
    assert_eq!(s, KzStatus::Ok);
    p
}

#[test]
fn hochschild_through_the_c_abi() {
    let p = problem(GROUND);
    let mut r = ptr::null_mut();
    let s = unsafe { kz_run_task(p, c("hh").as_ptr(), c(r#"{"n": 2, "p": 1, "max_degree": 4}"#).as_ptr(), &mut r) };
    assert_eq!(s, KzStatus::Ok);
    assert!(unsafe { kz_report_passed(r) });
    let json: serde_json::Value = serde_json::from_str(&take(unsafe { kz_report_json(r) })).unwrap();
    let table = json["tables"].as_array().unwrap().iter().find(|t| t["name"] == "HH^1").unwrap();
    let dims: Vec<u64> = table["entries"].as_array().unwrap().iter().map(|e| e["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![2, 4, 6, 8]);
    assert!(take(unsafe { kz_report_text(r) }).contains("verdict: PASS"));
    unsafe {
        kz_report_free(r);
        kz_problem_free(p);
    }
}

#[test]
fn convenience_entry_points() {
    let p = problem(GROUND);
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { kz_validate(p, &mut r) }, KzStatus::Ok);
    assert!(unsafe { kz_report_passed(r) });
    unsafe { kz_report_free(r) };
    assert_eq!(unsafe { kz_syzygy(p, 1, c("k").as_ptr(), &mut r) }, KzStatus::Ok);
    assert!(unsafe { kz_report_passed(r) });
    unsafe { kz_report_free(r) };
    assert_eq!(unsafe { kz_hh(p, -1, 3, ptr::null(), &mut r) }, KzStatus::Ok);
    assert!(unsafe { kz_report_passed(r) });
    unsafe { kz_report_free(r) };
    assert_eq!(unsafe { kz_syzygy(p, 1, c("missing").as_ptr(), &mut r) }, KzStatus::InputError);
    assert!(r.is_null());
    assert!(!last_error().is_empty());
    unsafe { kz_problem_free(p) };
}

#[test]
fn errors_map_to_status_codes() {
    let mut p = ptr::null_mut();
    let s = unsafe { kz_problem_from_str(c("field = \"Q\"\nbogus = 1\n").as_ptr(), ptr::null(), ptr::null(), &mut p) };
    assert_eq!(s, KzStatus::InputError);
    assert!(p.is_null());
    assert!(last_error().contains("<memory>:2:"), "{}", last_error());

    assert_eq!(unsafe { kz_problem_from_str(ptr::null(), ptr::null(), ptr::null(), &mut p) }, KzStatus::NullPointer);
    let bad = [0xffu8, 0];
    assert_eq!(
        unsafe { kz_problem_from_str(bad.as_ptr().cast(), ptr::null(), ptr::null(), &mut p) },
        KzStatus::InvalidUtf8
    );

    let p = problem(GROUND);
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { kz_run_task(p, c("nope").as_ptr(), ptr::null(), &mut r) }, KzStatus::InputError);
    assert_eq!(unsafe { kz_run_task(p, c("hh").as_ptr(), c("{\"x\": 1}").as_ptr(), &mut r) }, KzStatus::InputError);
    assert_eq!(unsafe { kz_run_task(ptr::null(), ptr::null(), ptr::null(), &mut r) }, KzStatus::NullPointer);
    assert!(!unsafe { kz_report_passed(ptr::null()) });
    assert!(unsafe { kz_report_json(ptr::null()) }.is_null());
    unsafe { kz_problem_free(p) };
}

#[test]
fn non_central_elements_are_a_math_error() {
    let src = concat!(
        "field = \"Q\"\n[monoid]\nkind = \"group\"\nelements = [\"e\", \"a\", \"b\", \"c\", \"d\", \"f\"]\n",
        "table = [\n",
        "  [\"e\", \"a\", \"b\", \"c\", \"d\", \"f\"],\n",
        "  [\"a\", \"e\", \"c\", \"b\", \"f\", \"d\"],\n",
        "  [\"b\", \"d\", \"e\", \"f\", \"a\", \"c\"],\n",
        "  [\"c\", \"f\", \"a\", \"d\", \"e\", \"b\"],\n",
        "  [\"d\", \"b\", \"f\", \"e\", \"c\", \"a\"],\n",
        "  [\"f\", \"c\", \"d\", \"a\", \"b\", \"e\"],\n",
        "]\n",
    );
    let p = problem(src);
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { kz_koszul(p, c("a").as_ptr(), false, &mut r) }, KzStatus::MathError, "{}", last_error());
    unsafe { kz_problem_free(p) };
}

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links_from_c() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = manifest.join("include/koszulcat.h");
    assert!(std::fs::read_to_string(&header).unwrap().contains("kz_run_task"));
    let lib = target_dir().join("libkoszulcat_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).ends_with("ok\n"));
}
