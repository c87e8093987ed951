use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use catsq_ffi::*;

fn parse(text: &str) -> (CatsqStatus, *mut CatsqWorkspace) {
    let text = CString::new(text).unwrap();
    let mut ws = ptr::null_mut();
    let st = unsafe { catsq_workspace_parse(text.as_ptr(), &mut ws) };
    (st, ws)
}

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name);
    std::fs::read_to_string(path).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    catsq_string_free(s);
    out
}

fn last_error() -> Option<String> {
    let p = catsq_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

fn check(ws: *const CatsqWorkspace, prop: &str, name: Option<&str>, loc: CatsqLocalizer) -> (CatsqStatus, String) {
    let prop = CString::new(prop).unwrap();
    let name = name.map(|n| CString::new(n).unwrap());
    let mut json = ptr::null_mut();
    let st = unsafe {
        catsq_check(
            ws,
            prop.as_ptr(),
            name.as_ref().map_or(ptr::null(), |n| n.as_ptr()),
            ptr::null(),
            loc,
            false,
            &mut json,
        )
    };
    let json = if json.is_null() { String::new() } else { unsafe { take(json) } };
    (st, json)
}

#[test]
fn wgr_square_through_the_c_interface() {
    let (st, ws) = parse(&fixture("wgr.catsq"));
    assert_eq!(st, CatsqStatus::Ok);
    assert_eq!(unsafe { catsq_workspace_count(ws, CatsqItem::Squares) }, 1);
    assert_eq!(unsafe { catsq_workspace_count(ws, CatsqItem::Categories) }, 2);

    let (st, _) = check(ws, "exact", None, CatsqLocalizer::W0);
    assert_eq!(st, CatsqStatus::Fails);
    let (st, json) = check(ws, "exact", Some("Swgr"), CatsqLocalizer::Wgr);
    assert_eq!(st, CatsqStatus::Fails);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["verdict"], "fails");
    assert_eq!(v["witnesses"][0]["location"], "(•,•,β)");
    let (st, _) = check(ws, "weak-exact", None, CatsqLocalizer::Wgr);
    assert_eq!(st, CatsqStatus::Ok);
    let (st, _) = check(ws, "weak-exact", None, CatsqLocalizer::W0);
    assert_eq!(st, CatsqStatus::Fails);
    let (st, _) = check(ws, "oracle", None, CatsqLocalizer::W0);
    assert_eq!(st, CatsqStatus::Fails);

    let (st, json) = check(ws, "exact", Some("nope"), CatsqLocalizer::W0);
    assert_eq!(st, CatsqStatus::InvalidInput);
    assert!(json.contains("nope"));
    assert!(last_error().is_some());
    let (st, _) = check(ws, "frobnicate", None, CatsqLocalizer::W0);
    assert_eq!(st, CatsqStatus::InvalidInput);

    unsafe { catsq_workspace_free(ws) };
}

#[test]
fn comma_square_is_exact() {
    let (st, ws) = parse(&fixture("comma.catsq"));
    assert_eq!(st, CatsqStatus::Ok);
    for loc in [CatsqLocalizer::W0, CatsqLocalizer::Wgr] {
        let (st, json) = check(ws, "exact", None, loc);
        assert_eq!(st, CatsqStatus::Ok, "{json}");
    }
    unsafe { catsq_workspace_free(ws) };
}

#[test]
fn kan_sizes_and_classification() {
    let (st, ws) = parse(&fixture("kan.catsq"));
    assert_eq!(st, CatsqStatus::Ok);
    for (right, sizes) in [(true, [2, 2, 3]), (false, [2, 3, 3])] {
        let mut json = ptr::null_mut();
        let st = unsafe { catsq_kan(ws, right, ptr::null(), ptr::null(), &mut json) };
        assert_eq!(st, CatsqStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&unsafe { take(json) }).unwrap();
        let got: Vec<u64> = v["sizes"].as_object().unwrap().values().map(|x| x.as_u64().unwrap()).collect();
        assert_eq!(got, sizes);
    }
    unsafe { catsq_workspace_free(ws) };

    let (st, ws) = parse(&fixture("classify.catsq"));
    assert_eq!(st, CatsqStatus::Ok);
    let cat = CString::new("parallel").unwrap();
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { catsq_classify(ws, cat.as_ptr(), &mut json) }, CatsqStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&unsafe { take(json) }).unwrap();
    assert!(v["classification"].is_string());
    unsafe { catsq_workspace_free(ws) };
}

#[test]
fn errors_and_null_handling() {
    let (st, ws) = parse("category X { objects: a, a }");
    assert_eq!(st, CatsqStatus::InvalidInput);
    assert!(ws.is_null());
    assert!(last_error().unwrap().contains("1:"));

    let mut ws = ptr::null_mut();
    assert_eq!(unsafe { catsq_workspace_parse(ptr::null(), &mut ws) }, CatsqStatus::NullPointer);
    let text = CString::new("").unwrap();
    assert_eq!(unsafe { catsq_workspace_parse(text.as_ptr(), ptr::null_mut()) }, CatsqStatus::NullPointer);
    let bad = [0xffu8 as c_char, 0];
    assert_eq!(unsafe { catsq_workspace_parse(bad.as_ptr(), &mut ws) }, CatsqStatus::InvalidUtf8);

    let prop = CString::new("exact").unwrap();
    let st = unsafe {
        catsq_check(ptr::null(), prop.as_ptr(), ptr::null(), ptr::null(), CatsqLocalizer::W0, false, ptr::null_mut())
    };
    assert_eq!(st, CatsqStatus::NullPointer);
    assert_eq!(unsafe { catsq_workspace_count(ptr::null(), CatsqItem::Functors) }, 0);
    unsafe {
        catsq_workspace_free(ptr::null_mut());
        catsq_string_free(ptr::null_mut());
    }

    let (st, ws) = parse("category e { objects: x }");
    assert_eq!(st, CatsqStatus::Ok);
    assert!(last_error().is_none());
    unsafe { catsq_workspace_free(ws) };
}

#[test]
fn generated_workspace_round_trips_through_text() {
    let ws = catsq_workspace_generate(7, 3, 6);
    assert!(!ws.is_null());
    assert_eq!(unsafe { catsq_workspace_count(ws, CatsqItem::Squares) }, 1);
    assert_eq!(unsafe { catsq_workspace_count(ws, CatsqItem::Presheaves) }, 1);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { catsq_workspace_to_text(ws, &mut text) }, CatsqStatus::Ok);
    let text = unsafe { take(text) };
    let (st, again) = parse(&text);
    assert_eq!(st, CatsqStatus::Ok, "{:?}", last_error());
    let mut text2 = ptr::null_mut();
    assert_eq!(unsafe { catsq_workspace_to_text(again, &mut text2) }, CatsqStatus::Ok);
    assert_eq!(text, unsafe { take(text2) });
    let (st, _) = check(ws, "exact", Some("D"), CatsqLocalizer::W0);
    assert!(matches!(st, CatsqStatus::Ok | CatsqStatus::Fails));
    unsafe {
        catsq_workspace_free(ws);
        catsq_workspace_free(again);
    }
}

#[test]
fn header_declares_the_interface() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/catsq.h")).unwrap();
    for f in [
        "catsq_workspace_parse",
        "catsq_workspace_generate",
        "catsq_workspace_free",
        "catsq_workspace_count",
        "catsq_workspace_to_text",
        "catsq_check",
        "catsq_kan",
        "catsq_classify",
        "catsq_last_error",
        "catsq_string_free",
        "typedef struct CatsqWorkspace CatsqWorkspace",
        "CATSQ_STATUS_SIZE_GUARD = 3",
    ] {
        assert!(header.contains(f), "missing {f}");
    }
}

/// Compiles and runs the C smoke test against the static library when a C
/// compiler and the archive are available.
#[test]
fn c_program_links_and_runs() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libcatsq_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library or C compiler");
        return;
    }
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let out = tempfile::tempdir().unwrap();
    let bin = out.path().join("smoke");
    let status = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "exit {:?}: {}", run.status.code(), String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).contains("\"verdict\": \"fails\""));
}
