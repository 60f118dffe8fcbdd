//! C ABI over `charsub`.
//!
//! Groups are passed as opaque `CharsubShape` handles. Every call returns a
//! `CharsubStatus`; results come back through out-parameters, structured
//! results as NUL-terminated JSON strings that the caller releases with
//! `charsub_string_free`. After a failing call, `charsub_last_error` gives a
//! message for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::{Arc, OnceLock};

use charsub::classify::classify_lattice;
use charsub::config::Caps;
use charsub::group::GroupShape;
use charsub::harness::{build_corpus, resolve_claims, verify_claims, VerifyOptions};
use charsub::invariance::{CharacteristicLattice, GroupContext, SubgroupSummary};
use charsub::lattice::{enumerate_subgroups, Subgroup};
use charsub::Error;
use serde_json::json;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharsubStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    CapExceeded = 3,
    Internal = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharsubKind {
    All = 0,
    Characteristic = 1,
    FullyInvariant = 2,
}

/// Opaque handle to a group `⊕ Z(p^{k_i})` and its cached subgroup data.
pub struct CharsubShape {
    ctx: GroupContext,
    lattice: OnceLock<CharacteristicLattice>,
}

impl CharsubShape {
    fn lattice(&self) -> &CharacteristicLattice {
        self.lattice.get_or_init(|| self.ctx.lattice())
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> CharsubStatus {
    if e.is_cap() {
        CharsubStatus::CapExceeded
    } else {
        CharsubStatus::InvalidArgument
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (CharsubStatus, String)>) -> CharsubStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            CharsubStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            CharsubStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (CharsubStatus, String) {
    (status_of(&e), e.to_string())
}

fn null() -> (CharsubStatus, String) {
    (CharsubStatus::NullPointer, "null pointer argument".into())
}

unsafe fn shape_ref<'a>(
    shape: *const CharsubShape,
) -> Result<&'a CharsubShape, (CharsubStatus, String)> {
    shape.as_ref().ok_or_else(null)
}

unsafe fn write_json(
    out: *mut *mut c_char,
    v: serde_json::Value,
) -> Result<(), (CharsubStatus, String)> {
    let s = serde_json::to_string(&v).map_err(|e| (CharsubStatus::Internal, e.to_string()))?;
    let c = CString::new(s).map_err(|e| (CharsubStatus::Internal, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Creates a shape from a prime and `len` exponents (any order).
///
/// # Safety
/// `exponents` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn charsub_shape_new(
    prime: u64,
    exponents: *const u32,
    len: usize,
    out: *mut *mut CharsubShape,
) -> CharsubStatus {
    guard(|| {
        if out.is_null() || (exponents.is_null() && len > 0) {
            return Err(null());
        }
        let ks: &[u32] = if len == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(exponents, len)
        };
        let caps = Caps::from_env();
        let shape = GroupShape::with_cap(prime, ks, caps.carrier).map_err(lib_err)?;
        let handle = Box::new(CharsubShape {
            ctx: GroupContext::new(Arc::new(shape)),
            lattice: OnceLock::new(),
        });
        *out = Box::into_raw(handle);
        Ok(())
    })
}

/// Releases a shape. Null is ignored.
///
/// # Safety
/// `shape` must come from `charsub_shape_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn charsub_shape_free(shape: *mut CharsubShape) {
    if !shape.is_null() {
        drop(Box::from_raw(shape));
    }
}

/// # Safety
/// `shape` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn charsub_shape_order(
    shape: *const CharsubShape,
    out: *mut u64,
) -> CharsubStatus {
    guard(|| {
        let s = shape_ref(shape)?;
        *out.as_mut().ok_or_else(null)? = s.ctx.shape().order();
        Ok(())
    })
}

/// Classification verdict as JSON.
///
/// # Safety
/// `shape` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn charsub_classify_json(
    shape: *const CharsubShape,
    out: *mut *mut c_char,
) -> CharsubStatus {
    guard(|| {
        let s = shape_ref(shape)?;
        if out.is_null() {
            return Err(null());
        }
        write_json(out, json!(classify_lattice(s.lattice())))
    })
}

/// Subgroup list as JSON: order, generators, type and invariance flags.
///
/// # Safety
/// `shape` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn charsub_enumerate_json(
    shape: *const CharsubShape,
    kind: CharsubKind,
    out: *mut *mut c_char,
) -> CharsubStatus {
    guard(|| {
        let s = shape_ref(shape)?;
        if out.is_null() {
            return Err(null());
        }
        let entry = |h: &Subgroup, ch: bool, fi: bool| {
            let mut v = json!(SubgroupSummary::of(h));
            v["characteristic"] = json!(ch);
            v["fully_invariant"] = json!(fi);
            v
        };
        let list: Vec<serde_json::Value> = match kind {
            CharsubKind::All => enumerate_subgroups(s.ctx.shape(), Caps::from_env().enumeration)
                .map_err(lib_err)?
                .iter()
                .map(|h| entry(h, s.ctx.is_characteristic(h), s.ctx.is_fully_invariant(h)))
                .collect(),
            _ => s
                .lattice()
                .entries
                .iter()
                .filter(|e| kind == CharsubKind::Characteristic || e.fully_invariant)
                .map(|e| entry(&e.subgroup, true, e.fully_invariant))
                .collect(),
        };
        write_json(out, json!(list))
    })
}

/// Spans `n_gens` elements, each `rank` coordinates, flattened row by row.
unsafe fn span_from(
    s: &CharsubShape,
    coords: *const i64,
    n_gens: usize,
) -> Result<Subgroup, (CharsubStatus, String)> {
    let shape = s.ctx.shape();
    let rank = shape.rank();
    if coords.is_null() && n_gens > 0 {
        return Err(null());
    }
    let flat: &[i64] = if n_gens == 0 {
        &[]
    } else {
        std::slice::from_raw_parts(coords, n_gens * rank)
    };
    let gens = flat
        .chunks(rank.max(1))
        .take(n_gens)
        .map(|c| shape.element(c))
        .collect::<charsub::Result<Vec<_>>>()
        .map_err(lib_err)?;
    Subgroup::span(shape, &gens).map_err(lib_err)
}

/// Whether the subgroup generated by the given elements is characteristic.
///
/// # Safety
/// `coords` must hold `n_gens * rank` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn charsub_is_characteristic(
    shape: *const CharsubShape,
    coords: *const i64,
    n_gens: usize,
    out: *mut bool,
) -> CharsubStatus {
    guard(|| {
        let s = shape_ref(shape)?;
        let h = span_from(s, coords, n_gens)?;
        *out.as_mut().ok_or_else(null)? = s.ctx.is_characteristic(&h);
        Ok(())
    })
}

/// Whether the subgroup generated by the given elements is fully invariant.
///
/// # Safety
/// As for `charsub_is_characteristic`.
#[no_mangle]
pub unsafe extern "C" fn charsub_is_fully_invariant(
    shape: *const CharsubShape,
    coords: *const i64,
    n_gens: usize,
    out: *mut bool,
) -> CharsubStatus {
    guard(|| {
        let s = shape_ref(shape)?;
        let h = span_from(s, coords, n_gens)?;
        *out.as_mut().ok_or_else(null)? = s.ctx.is_fully_invariant(&h);
        Ok(())
    })
}

/// Runs claims (`"all"` or a comma list) over every group of order at most
/// `max_order`, returning a JSON array of reports. Violations are reported in
/// the JSON, not through the status.
///
/// # Safety
/// `claims` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn charsub_verify_json(
    prime: u64,
    max_order: u64,
    claims: *const c_char,
    jobs: usize,
    out: *mut *mut c_char,
) -> CharsubStatus {
    guard(|| {
        if claims.is_null() || out.is_null() {
            return Err(null());
        }
        let spec = CStr::from_ptr(claims)
            .to_str()
            .map_err(|e| (CharsubStatus::InvalidArgument, e.to_string()))?;
        let selected = resolve_claims(spec).map_err(lib_err)?;
        let caps = Caps::from_env();
        let corpus = build_corpus(prime, max_order, caps.carrier).map_err(lib_err)?;
        let opts = VerifyOptions {
            jobs: jobs.max(1),
            cache: None,
            caps,
        };
        let reports = verify_claims(&selected, &corpus, opts).map_err(lib_err)?;
        write_json(out, json!(reports))
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn charsub_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failing call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn charsub_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn charsub_version() -> *const c_char {
    static V: &CStr =
        match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
            Ok(v) => v,
            Err(_) => panic!("version string"),
        };
    V.as_ptr()
}
