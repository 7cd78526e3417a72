//! C ABI over `metakit`.
//!
//! Every fallible call returns an [`MkStatus`]; on anything other than
//! `MK_STATUS_OK` the message is available from [`mk_last_error`] until the
//! next failing call on the same thread. Relations are opaque `MkRel`
//! handles released with [`mk_rel_free`]; strings handed out by the library
//! are released with [`mk_string_free`].

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use metakit::algorithms::{build_min_height, height, mergesort, quicksort};
use metakit::finrel::expr::Expr;
use metakit::finrel::{parse_fixtures, write_fixture};
use metakit::laws::{self, GenConfig, Status};
use metakit::{Rel, RelError};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MkStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// Carriers of the operands do not line up, or a bound was exceeded.
    Type = 4,
    OutOfRange = 5,
    UnknownLaw = 6,
    Panic = 7,
}

/// Overall verdict of a law run.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MkLawStatus {
    Pass = 0,
    PassVacuous = 1,
    Fail = 2,
    Alarm = 3,
}

/// Opaque relation handle.
pub struct MkRel(Rel);

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MkClassification {
    pub entire: bool,
    pub simple: bool,
    pub surjective: bool,
    pub injective: bool,
    pub function: bool,
    pub difunctional: bool,
}

/// Mirrors the law generator settings; fill with [`mk_law_config_default`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MkLawConfig {
    pub max_size: usize,
    pub random_max_size: usize,
    pub samples: usize,
    pub seed: u64,
    pub power_bound: usize,
    pub depth: usize,
    pub alphabet: usize,
    pub budget: u64,
    pub timing: bool,
}

impl From<&GenConfig> for MkLawConfig {
    fn from(c: &GenConfig) -> Self {
        MkLawConfig {
            max_size: c.max_size,
            random_max_size: c.random_max_size,
            samples: c.samples,
            seed: c.seed,
            power_bound: c.power_bound,
            depth: c.depth,
            alphabet: c.alphabet,
            budget: c.budget,
            timing: c.timing,
        }
    }
}

impl From<&MkLawConfig> for GenConfig {
    fn from(c: &MkLawConfig) -> Self {
        GenConfig {
            max_size: c.max_size,
            random_max_size: c.random_max_size,
            samples: c.samples,
            seed: c.seed,
            power_bound: c.power_bound,
            depth: c.depth,
            alphabet: c.alphabet,
            budget: c.budget,
            timing: c.timing,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(MkStatus, String);

type Outcome = Result<(), Failure>;

fn fail(status: MkStatus, msg: impl Into<String>) -> Failure {
    Failure(status, msg.into())
}

fn type_error(e: RelError) -> Failure {
    fail(MkStatus::Type, e.to_string())
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

/// Runs `body`, turning errors and panics into a status plus last-error text.
fn guard(body: impl FnOnce() -> Outcome) -> MkStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => MkStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            MkStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(fail(MkStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(MkStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn rel<'a>(p: *const MkRel, what: &str) -> Result<&'a Rel, Failure> {
    p.as_ref().map(|h| &h.0).ok_or_else(|| fail(MkStatus::NullArgument, format!("{what} is null")))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| fail(MkStatus::NullArgument, "output pointer is null"))
}

unsafe fn slice<'a, T>(p: *const T, n: usize, what: &str) -> Result<&'a [T], Failure> {
    if n == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(fail(MkStatus::NullArgument, format!("{what} is null")));
    }
    Ok(std::slice::from_raw_parts(p, n))
}

fn handle(r: Rel) -> *mut MkRel {
    Box::into_raw(Box::new(MkRel(r)))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Message of the last failing call on this thread, or null if none.
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn mk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses fixture text and returns the relation block at `index`.
///
/// # Safety
/// `fixture` must be a NUL-terminated string; `out_rel` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mk_rel_parse(fixture: *const c_char, index: usize, out_rel: *mut *mut MkRel) -> MkStatus {
    guard(|| {
        let o = out(out_rel)?;
        let rels = parse_fixtures(text(fixture, "fixture")?).map_err(|e| fail(MkStatus::Parse, e.to_string()))?;
        let n = rels.len();
        let r = rels
            .into_iter()
            .nth(index)
            .ok_or_else(|| fail(MkStatus::OutOfRange, format!("fixture has {n} relations, asked for index {index}")))?;
        *o = handle(r.rel);
        Ok(())
    })
}

/// # Safety
/// `r` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mk_rel_free(r: *mut MkRel) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `r` must be a live handle; `src_len` and `tgt_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mk_rel_dims(r: *const MkRel, src_len: *mut usize, tgt_len: *mut usize) -> MkStatus {
    guard(|| {
        let r = rel(r, "relation")?;
        *out(src_len)? = r.src().len();
        *out(tgt_len)? = r.tgt().len();
        Ok(())
    })
}

/// Whether target `t` is related to source `s` (both zero-based).
///
/// # Safety
/// `r` must be a live handle; `related` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mk_rel_get(r: *const MkRel, t: usize, s: usize, related: *mut bool) -> MkStatus {
    guard(|| {
        let r = rel(r, "relation")?;
        let o = out(related)?;
        if t >= r.tgt().len() || s >= r.src().len() {
            return Err(fail(
                MkStatus::OutOfRange,
                format!("({t}, {s}) outside a {}x{} relation", r.tgt().len(), r.src().len()),
            ));
        }
        *o = r.get(t, s);
        Ok(())
    })
}

/// # Safety
/// `a` and `b` must be live handles; `equal` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mk_rel_equal(a: *const MkRel, b: *const MkRel, equal: *mut bool) -> MkStatus {
    guard(|| {
        *out(equal)? = rel(a, "left operand")? == rel(b, "right operand")?;
        Ok(())
    })
}

/// # Safety
/// `r` must be a live handle; `out_rel` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mk_rel_converse(r: *const MkRel, out_rel: *mut *mut MkRel) -> MkStatus {
    guard(|| {
        let r = rel(r, "relation")?;
        *out(out_rel)? = handle(r.converse());
        Ok(())
    })
}

unsafe fn binary(
    a: *const MkRel,
    b: *const MkRel,
    out_rel: *mut *mut MkRel,
    op: fn(&Rel, &Rel) -> Result<Rel, RelError>,
) -> MkStatus {
    guard(|| {
        let o = out(out_rel)?;
        let r = op(rel(a, "left operand")?, rel(b, "right operand")?).map_err(type_error)?;
        *o = handle(r);
        Ok(())
    })
}

/// `a·b`.
///
/// # Safety
/// `a` and `b` must be live handles; `out_rel` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mk_rel_compose(a: *const MkRel, b: *const MkRel, out_rel: *mut *mut MkRel) -> MkStatus {
    binary(a, b, out_rel, Rel::compose)
}

/// # Safety
/// As for [`mk_rel_compose`].
#[no_mangle]
pub unsafe extern "C" fn mk_rel_meet(a: *const MkRel, b: *const MkRel, out_rel: *mut *mut MkRel) -> MkStatus {
    binary(a, b, out_rel, Rel::meet)
}

/// # Safety
/// As for [`mk_rel_compose`].
#[no_mangle]
pub unsafe extern "C" fn mk_rel_join(a: *const MkRel, b: *const MkRel, out_rel: *mut *mut MkRel) -> MkStatus {
    binary(a, b, out_rel, Rel::join)
}

/// `a \ b`.
///
/// # Safety
/// As for [`mk_rel_compose`].
#[no_mangle]
pub unsafe extern "C" fn mk_rel_left_divide(a: *const MkRel, b: *const MkRel, out_rel: *mut *mut MkRel) -> MkStatus {
    binary(a, b, out_rel, Rel::left_divide)
}

/// `a / b`.
///
/// # Safety
/// As for [`mk_rel_compose`].
#[no_mangle]
pub unsafe extern "C" fn mk_rel_right_divide(a: *const MkRel, b: *const MkRel, out_rel: *mut *mut MkRel) -> MkStatus {
    binary(a, b, out_rel, Rel::right_divide)
}

/// Symmetric division of `a` by `b`.
///
/// # Safety
/// As for [`mk_rel_compose`].
#[no_mangle]
pub unsafe extern "C" fn mk_rel_sym_divide(a: *const MkRel, b: *const MkRel, out_rel: *mut *mut MkRel) -> MkStatus {
    binary(a, b, out_rel, Rel::sym_divide)
}

/// `a ↾ b` for an endo `b` on the target of `a`.
///
/// # Safety
/// As for [`mk_rel_compose`].
#[no_mangle]
pub unsafe extern "C" fn mk_rel_shrink(a: *const MkRel, b: *const MkRel, out_rel: *mut *mut MkRel) -> MkStatus {
    binary(a, b, out_rel, Rel::shrink)
}

/// Evaluates an expression over `n` named relations, with the same syntax as
/// `metakit rel`.
///
/// # Safety
/// `expr` must be a NUL-terminated string; `names` and `rels` must each point
/// to `n` valid entries; `out_rel` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mk_rel_eval(
    expr: *const c_char,
    names: *const *const c_char,
    rels: *const *const MkRel,
    n: usize,
    power_bound: usize,
    out_rel: *mut *mut MkRel,
) -> MkStatus {
    guard(|| {
        let o = out(out_rel)?;
        let e = Expr::parse(text(expr, "expression")?).map_err(|e| fail(MkStatus::Parse, e.to_string()))?;
        let mut env = BTreeMap::new();
        for (&name, &r) in slice(names, n, "names")?.iter().zip(slice(rels, n, "relations")?) {
            env.insert(text(name, "relation name")?.to_string(), rel(r, "relation")?.clone());
        }
        *o = handle(e.eval(&env, power_bound).map_err(|e| fail(MkStatus::Type, e.to_string()))?);
        Ok(())
    })
}

/// # Safety
/// `r` must be a live handle; `flags` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mk_rel_classify(r: *const MkRel, flags: *mut MkClassification) -> MkStatus {
    guard(|| {
        let c = rel(r, "relation")?.classify();
        *out(flags)? = MkClassification {
            entire: c.entire,
            simple: c.simple,
            surjective: c.surjective,
            injective: c.injective,
            function: c.function,
            difunctional: c.difunctional,
        };
        Ok(())
    })
}

/// Renders `r` in fixture syntax. Free the result with [`mk_string_free`].
///
/// # Safety
/// `r` must be a live handle; `out_text` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mk_rel_render(r: *const MkRel, out_text: *mut *mut c_char) -> MkStatus {
    guard(|| {
        let s = write_fixture(None, rel(r, "relation")?);
        *out(out_text)? = c_string(s);
        Ok(())
    })
}

/// # Safety
/// `cfg` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mk_law_config_default(cfg: *mut MkLawConfig) -> MkStatus {
    guard(|| {
        *out(cfg)? = MkLawConfig::from(&GenConfig::default());
        Ok(())
    })
}

/// Runs the law catalogue, or the comma-separated ids in `only` when it is
/// non-null. The JSON report goes to `out_json` when that is non-null; free
/// it with [`mk_string_free`].
///
/// # Safety
/// `cfg` must be readable; `only` must be null or NUL-terminated;
/// `verdict` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mk_laws_run(
    cfg: *const MkLawConfig,
    only: *const c_char,
    verdict: *mut MkLawStatus,
    out_json: *mut *mut c_char,
) -> MkStatus {
    guard(|| {
        let cfg = GenConfig::from(cfg.as_ref().ok_or_else(|| fail(MkStatus::NullArgument, "config is null"))?);
        let v = out(verdict)?;
        let report = if only.is_null() {
            laws::run_all(&cfg)
        } else {
            let mut picked = Vec::new();
            for id in text(only, "law list")?.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                picked.push(
                    laws::law(id).ok_or_else(|| fail(MkStatus::UnknownLaw, format!("unknown law {id:?}")))?.clone(),
                );
            }
            laws::run_laws(&picked, &cfg)
        };
        *v = match report.status {
            Status::Pass => MkLawStatus::Pass,
            Status::PassVacuous => MkLawStatus::PassVacuous,
            Status::Fail => MkLawStatus::Fail,
            Status::Alarm => MkLawStatus::Alarm,
        };
        if let Some(o) = out_json.as_mut() {
            *o = c_string(report.to_json());
        }
        Ok(())
    })
}

unsafe fn sort_into(xs: *const usize, n: usize, sorted: *mut usize, sort: fn(&[usize]) -> Vec<usize>) -> MkStatus {
    guard(|| {
        let ys = sort(slice(xs, n, "input")?);
        if n > 0 && sorted.is_null() {
            return Err(fail(MkStatus::NullArgument, "output buffer is null"));
        }
        ptr::copy_nonoverlapping(ys.as_ptr(), sorted, n);
        Ok(())
    })
}

/// Quicksort of `n` values into `sorted`, which must hold `n` entries.
///
/// # Safety
/// `xs` must hold `n` readable values and `sorted` `n` writable ones.
#[no_mangle]
pub unsafe extern "C" fn mk_quicksort(xs: *const usize, n: usize, sorted: *mut usize) -> MkStatus {
    sort_into(xs, n, sorted, quicksort)
}

/// Mergesort of `n` values into `sorted`, which must hold `n` entries.
///
/// # Safety
/// As for [`mk_quicksort`].
#[no_mangle]
pub unsafe extern "C" fn mk_mergesort(xs: *const usize, n: usize, sorted: *mut usize) -> MkStatus {
    sort_into(xs, n, sorted, mergesort)
}

/// Height of the minimum-height tree with leaf heights `xs`, in order.
///
/// # Safety
/// `xs` must hold `n` readable values; `out_height` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mk_min_height(xs: *const usize, n: usize, out_height: *mut usize) -> MkStatus {
    guard(|| {
        let o = out(out_height)?;
        let t = build_min_height(slice(xs, n, "input")?).map_err(|e| fail(MkStatus::OutOfRange, e.to_string()))?;
        *o = height(&t);
        Ok(())
    })
}
