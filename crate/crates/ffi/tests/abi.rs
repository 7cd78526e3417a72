use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use metakit_ffi::*;

const IMAGES: &str = include_str!("../../core/fixtures/overlapping_images.rel");

fn last_error() -> String {
    let p = mk_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

struct Owned(*mut MkRel);

impl Drop for Owned {
    fn drop(&mut self) {
        unsafe { mk_rel_free(self.0) }
    }
}

fn parse(text: &str, index: usize) -> Owned {
    let c = CString::new(text).unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { mk_rel_parse(c.as_ptr(), index, &mut r) }, MkStatus::Ok);
    Owned(r)
}

fn classify(r: &Owned) -> MkClassification {
    let mut c = MkClassification::default();
    assert_eq!(unsafe { mk_rel_classify(r.0, &mut c) }, MkStatus::Ok);
    c
}

#[test]
fn parse_inspect_and_render() {
    let r = parse(IMAGES, 0);
    let (mut s, mut t) = (0, 0);
    assert_eq!(unsafe { mk_rel_dims(r.0, &mut s, &mut t) }, MkStatus::Ok);
    assert_eq!((s, t), (5, 5));
    let mut hit = false;
    unsafe {
        assert_eq!(mk_rel_get(r.0, 2, 1, &mut hit), MkStatus::Ok);
        assert!(hit, "a2 -> b3");
        assert_eq!(mk_rel_get(r.0, 0, 0, &mut hit), MkStatus::Ok);
        assert!(!hit);
        assert_eq!(mk_rel_get(r.0, 5, 0, &mut hit), MkStatus::OutOfRange);
    }
    assert!(last_error().contains("outside"));

    let mut text = ptr::null_mut();
    assert_eq!(unsafe { mk_rel_render(r.0, &mut text) }, MkStatus::Ok);
    let rendered = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_string();
    unsafe { mk_string_free(text) };
    let again = parse(&rendered, 0);
    let mut eq = false;
    assert_eq!(unsafe { mk_rel_equal(r.0, again.0, &mut eq) }, MkStatus::Ok);
    assert!(eq);
}

#[test]
fn overlapping_images_are_not_difunctional() {
    let r = parse(IMAGES, 0);
    let c = classify(&r);
    assert!(!c.difunctional && !c.simple && !c.entire);
    let pruned = IMAGES.replace("a2 -> b4\n", "").replace("a4 -> b4\n", "");
    assert!(classify(&parse(&pruned, 0)).difunctional);
}

#[test]
fn operators_and_eval_agree() {
    let r = parse(IMAGES, 0);
    let mut conv = ptr::null_mut();
    let mut comp = ptr::null_mut();
    unsafe {
        assert_eq!(mk_rel_converse(r.0, &mut conv), MkStatus::Ok);
        assert_eq!(mk_rel_compose(r.0, conv, &mut comp), MkStatus::Ok);
    }
    let (conv, comp) = (Owned(conv), Owned(comp));

    let expr = CString::new("R ; conv R").unwrap();
    let name = CString::new("R").unwrap();
    let names = [name.as_ptr()];
    let rels = [r.0 as *const MkRel];
    let mut ev = ptr::null_mut();
    assert_eq!(unsafe { mk_rel_eval(expr.as_ptr(), names.as_ptr(), rels.as_ptr(), 1, 4, &mut ev) }, MkStatus::Ok);
    let ev = Owned(ev);
    let mut eq = false;
    assert_eq!(unsafe { mk_rel_equal(comp.0, ev.0, &mut eq) }, MkStatus::Ok);
    assert!(eq);

    // R sd R is an equivalence on the source.
    let mut sd = ptr::null_mut();
    assert_eq!(unsafe { mk_rel_sym_divide(r.0, r.0, &mut sd) }, MkStatus::Ok);
    let sd = Owned(sd);
    let mut hit = false;
    assert_eq!(unsafe { mk_rel_get(sd.0, 2, 4, &mut hit) }, MkStatus::Ok);
    assert!(hit, "a3 and a5 have the same image");

    // R·R needs the target of R to be its source.
    let mut bad = ptr::null_mut();
    assert_eq!(unsafe { mk_rel_compose(r.0, r.0, &mut bad) }, MkStatus::Type);
    assert!(bad.is_null());
    assert!(!last_error().is_empty());
    drop(conv);
}

#[test]
fn errors_are_reported() {
    let mut r = ptr::null_mut();
    let junk = CString::new("rel A(2) -> B\n").unwrap();
    unsafe {
        assert_eq!(mk_rel_parse(ptr::null(), 0, &mut r), MkStatus::NullArgument);
        assert_eq!(mk_rel_parse(junk.as_ptr(), 0, &mut r), MkStatus::Parse);
        assert!(last_error().starts_with("line 1"));
        let fixture = CString::new(IMAGES).unwrap();
        assert_eq!(mk_rel_parse(fixture.as_ptr(), 3, &mut r), MkStatus::OutOfRange);
        assert_eq!(mk_rel_parse(fixture.as_ptr(), 0, ptr::null_mut()), MkStatus::NullArgument);
    }
    assert!(r.is_null());
    let bad = CString::new("R ;").unwrap();
    assert_eq!(unsafe { mk_rel_eval(bad.as_ptr(), ptr::null(), ptr::null(), 0, 4, &mut r) }, MkStatus::Parse);
    unsafe { mk_rel_free(ptr::null_mut()) };
    unsafe { mk_string_free(ptr::null_mut()) };
}

#[test]
fn last_error_is_per_thread() {
    let junk = CString::new("nonsense").unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { mk_rel_parse(junk.as_ptr(), 0, &mut r) }, MkStatus::Parse);
    std::thread::spawn(|| assert!(mk_last_error().is_null())).join().unwrap();
}

#[test]
fn law_runner() {
    let mut cfg = MkLawConfig {
        max_size: 0,
        random_max_size: 0,
        samples: 0,
        seed: 0,
        power_bound: 0,
        depth: 0,
        alphabet: 0,
        budget: 0,
        timing: true,
    };
    assert_eq!(unsafe { mk_law_config_default(&mut cfg) }, MkStatus::Ok);
    assert_eq!((cfg.max_size, cfg.samples, cfg.timing), (2, 500, false));
    cfg.samples = 40;
    let only = CString::new("eq-16, eq-20").unwrap();
    let mut verdict = MkLawStatus::Fail;
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { mk_laws_run(&cfg, only.as_ptr(), &mut verdict, &mut json) }, MkStatus::Ok);
    assert_eq!(verdict, MkLawStatus::Pass);
    let report = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_string();
    unsafe { mk_string_free(json) };
    assert!(report.contains("\"eq-16\"") && report.contains("\"eq-20\""));

    let unknown = CString::new("eq-9999").unwrap();
    assert_eq!(unsafe { mk_laws_run(&cfg, unknown.as_ptr(), &mut verdict, ptr::null_mut()) }, MkStatus::UnknownLaw);
    assert!(last_error().contains("eq-9999"));
}

#[test]
fn algorithms() {
    let xs = [3usize, 1, 2, 1, 0];
    let mut out = [0usize; 5];
    unsafe {
        assert_eq!(mk_quicksort(xs.as_ptr(), xs.len(), out.as_mut_ptr()), MkStatus::Ok);
        assert_eq!(out, [0, 1, 1, 2, 3]);
        out = [0; 5];
        assert_eq!(mk_mergesort(xs.as_ptr(), xs.len(), out.as_mut_ptr()), MkStatus::Ok);
        assert_eq!(out, [0, 1, 1, 2, 3]);
        assert_eq!(mk_quicksort(ptr::null(), 0, ptr::null_mut()), MkStatus::Ok);
    }
    let mut h = 0;
    let leaves = [1usize, 1, 1, 1];
    assert_eq!(unsafe { mk_min_height(leaves.as_ptr(), 4, &mut h) }, MkStatus::Ok);
    assert_eq!(h, 3);
    assert_eq!(unsafe { mk_min_height(leaves.as_ptr(), 0, &mut h) }, MkStatus::OutOfRange);
}

#[test]
fn header_is_current_and_compiles() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/metakit.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for sym in [
        "mk_last_error",
        "mk_rel_parse",
        "mk_rel_sym_divide",
        "mk_rel_classify",
        "mk_laws_run",
        "MK_STATUS_OK",
        "typedef struct MkRel MkRel",
    ] {
        assert!(text.contains(sym), "header lacks {sym}");
    }
    let Ok(status) = Command::new("cc").args(["-fsyntax-only", "-x", "c", "-std=c99"]).arg(&header).status() else {
        eprintln!("no C compiler; skipped the syntax check");
        return;
    };
    assert!(status.success());
}

/// Builds and runs `tests/c/smoke.c` against the static library that cargo
/// produced alongside this test binary.
#[test]
fn c_program_links_and_runs() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile = exe.parent().and_then(Path::parent).unwrap();
    let lib = profile.join("libmetakit_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no static library or C compiler; skipped");
        return;
    }
    let bin = std::env::temp_dir().join(format!("metakit-smoke-{}", std::process::id()));
    let built = Command::new("cc")
        .arg("-std=c99")
        .arg("-I")
        .arg(dir.join("include"))
        .arg(dir.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(built.success());
    let run = Command::new(&bin).output().unwrap();
    let _ = std::fs::remove_file(&bin);
    assert!(run.status.success(), "{run:?}");
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
