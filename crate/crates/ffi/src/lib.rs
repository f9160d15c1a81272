//! C ABI over `nilbruhat`.
//!
//! Every call returns an [`NbStatus`]; on failure the message is available
//! from [`nb_last_error`] on the same thread. Handles are opaque and owned by
//! the caller, who releases them with the matching `*_free` function.
//! Strings handed out by the library are released with [`nb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nilbruhat::atlas::{Context, OrbitLabel};
use nilbruhat::perm::{bruhat_leq, Permutation};
use nilbruhat::poset::{hasse, leq};
use nilbruhat::tangent::{bk_span, t_k_set, tangent_dim_upper, tangent_lower_bound, verdict, Verdict};
use nilbruhat::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    CapExceeded = 4,
    OutOfRange = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NbVerdict {
    Smooth = 0,
    Singular = 1,
    Unknown = 2,
}

/// A context `(n, k)`.
pub struct NbContext {
    inner: Context,
}

/// One orbit label, tied to the `(n, k)` it was made for.
pub struct NbLabel {
    n: usize,
    k: usize,
    inner: OrbitLabel,
}

/// An ordered list of labels.
pub struct NbLabelList {
    n: usize,
    k: usize,
    items: Vec<OrbitLabel>,
}

/// Tangent-space numbers of one label. `exact_tangent_dim` is only filled
/// in when `is_upper` is set and is 0 otherwise.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NbTangentBounds {
    pub dimension: usize,
    pub t_k: usize,
    pub lower_bound: usize,
    pub bk_span: usize,
    pub is_upper: bool,
    pub exact_tangent_dim: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: NbStatus, msg: impl Into<String>) -> NbStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> NbStatus {
    let status = match &e {
        e if e.is_cap() => NbStatus::CapExceeded,
        Error::Parse(_) => NbStatus::Parse,
        Error::IndexOutOfRange { .. } => NbStatus::OutOfRange,
        _ => NbStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> NbStatus) -> NbStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(NbStatus::Internal, "internal panic"),
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, NbStatus> {
    p.as_ref().ok_or_else(|| fail(NbStatus::NullPointer, format!("{what} is null")))
}

unsafe fn write<T>(out: *mut T, value: T) -> NbStatus {
    if out.is_null() {
        return fail(NbStatus::NullPointer, "output pointer is null");
    }
    out.write(value);
    NbStatus::Ok
}

fn same_context(ctx: &Context, lbl: &NbLabel) -> Result<(), NbStatus> {
    if (ctx.n(), ctx.k()) == (lbl.n, lbl.k) {
        Ok(())
    } else {
        Err(fail(
            NbStatus::InvalidArgument,
            format!("label belongs to ({}, {}), context is ({}, {})", lbl.n, lbl.k, ctx.n(), ctx.k()),
        ))
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Message from the previous call on this thread if it failed, or null. The
/// pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn nb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, released once.
#[no_mangle]
pub unsafe extern "C" fn nb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nb_context_new(n: usize, k: usize, out: *mut *mut NbContext) -> NbStatus {
    guard(|| match Context::new(n, k) {
        Ok(inner) => write(out, Box::into_raw(Box::new(NbContext { inner }))),
        Err(e) => from_error(e),
    })
}

/// # Safety
/// `ctx` must be null or a handle from [`nb_context_new`], released once.
#[no_mangle]
pub unsafe extern "C" fn nb_context_free(ctx: *mut NbContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Number of orbit labels, saturating at `SIZE_MAX`.
///
/// # Safety
/// `ctx` must be a live context handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nb_context_label_count(ctx: *const NbContext, out: *mut usize) -> NbStatus {
    guard(|| {
        let ctx = tri!(deref(ctx, "context"));
        write(out, usize::try_from(ctx.inner.label_count()).unwrap_or(usize::MAX))
    })
}

/// All labels, sorted by dimension; fails with `CapExceeded` when `n > cap`.
///
/// # Safety
/// `ctx` must be a live context handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nb_context_enumerate(
    ctx: *const NbContext,
    cap: usize,
    out: *mut *mut NbLabelList,
) -> NbStatus {
    guard(|| {
        let ctx = tri!(deref(ctx, "context"));
        match ctx.inner.enumerate_labels(cap) {
            Ok(items) => {
                let list = NbLabelList {
                    n: ctx.inner.n(),
                    k: ctx.inner.k(),
                    items,
                };
                write(out, Box::into_raw(Box::new(list)))
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `list` must be null or a live list handle, released once.
#[no_mangle]
pub unsafe extern "C" fn nb_label_list_free(list: *mut NbLabelList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// Length of a label list; 0 for null.
///
/// # Safety
/// `list` must be null or a live list handle.
#[no_mangle]
pub unsafe extern "C" fn nb_label_list_len(list: *const NbLabelList) -> usize {
    list.as_ref().map_or(0, |l| l.items.len())
}

/// Copies entry `index` into a new label handle.
///
/// # Safety
/// `list` must be a live list handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nb_label_list_get(
    list: *const NbLabelList,
    index: usize,
    out: *mut *mut NbLabel,
) -> NbStatus {
    guard(|| {
        let list = tri!(deref(list, "list"));
        let Some(item) = list.items.get(index) else {
            return fail(NbStatus::OutOfRange, format!("index {index} of {}", list.items.len()));
        };
        let lbl = NbLabel {
            n: list.n,
            k: list.k,
            inner: item.clone(),
        };
        write(out, Box::into_raw(Box::new(lbl)))
    })
}

/// Parses `sigma=… alpha=…` in one-line notation or as `s1.s3.s2` words.
///
/// # Safety
/// `ctx` must be a live context handle, `text` a nul-terminated string and
/// `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nb_label_parse(
    ctx: *const NbContext,
    text: *const c_char,
    out: *mut *mut NbLabel,
) -> NbStatus {
    guard(|| {
        let ctx = tri!(deref(ctx, "context"));
        if text.is_null() {
            return fail(NbStatus::NullPointer, "text is null");
        }
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(NbStatus::Parse, "text is not UTF-8");
        };
        match ctx.inner.parse_label(text) {
            Ok(inner) => {
                let lbl = NbLabel {
                    n: ctx.inner.n(),
                    k: ctx.inner.k(),
                    inner,
                };
                write(out, Box::into_raw(Box::new(lbl)))
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `lbl` must be null or a live label handle, released once.
#[no_mangle]
pub unsafe extern "C" fn nb_label_free(lbl: *mut NbLabel) {
    if !lbl.is_null() {
        drop(Box::from_raw(lbl));
    }
}

/// `sigma=… alpha=…` text; release with [`nb_string_free`].
///
/// # Safety
/// `lbl` must be a live label handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nb_label_to_string(lbl: *const NbLabel, out: *mut *mut c_char) -> NbStatus {
    guard(|| {
        let lbl = tri!(deref(lbl, "label"));
        write(out, into_c_string(lbl.inner.to_string()))
    })
}

/// # Safety
/// Handles must be live and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nb_label_dimension(ctx: *const NbContext, lbl: *const NbLabel, out: *mut usize) -> NbStatus {
    guard(|| {
        let ctx = tri!(deref(ctx, "context"));
        let lbl = tri!(deref(lbl, "label"));
        tri!(same_context(&ctx.inner, lbl));
        write(out, ctx.inner.dimension(&lbl.inner))
    })
}

/// Closure order: `*out` is true when the orbit of `a` lies in the closure of `b`.
///
/// # Safety
/// Handles must be live and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nb_orbit_leq(
    ctx: *const NbContext,
    a: *const NbLabel,
    b: *const NbLabel,
    out: *mut bool,
) -> NbStatus {
    guard(|| {
        let ctx = tri!(deref(ctx, "context"));
        let a = tri!(deref(a, "first label"));
        let b = tri!(deref(b, "second label"));
        tri!(same_context(&ctx.inner, a));
        tri!(same_context(&ctx.inner, b));
        write(out, leq(&ctx.inner, &a.inner, &b.inner))
    })
}

/// Singularity verdict; `rule` receives 1..6 for the deciding rule, or 0.
///
/// # Safety
/// Handles must be live; `out` and `rule` valid for writes (`rule` may be null).
#[no_mangle]
pub unsafe extern "C" fn nb_verdict(
    ctx: *const NbContext,
    lbl: *const NbLabel,
    out: *mut NbVerdict,
    rule: *mut u8,
) -> NbStatus {
    guard(|| {
        let ctx = tri!(deref(ctx, "context"));
        let lbl = tri!(deref(lbl, "label"));
        tri!(same_context(&ctx.inner, lbl));
        let report = verdict(&ctx.inner, &lbl.inner);
        if !rule.is_null() {
            rule.write(report.rule.map_or(0, |r| r as u8 + 1));
        }
        let v = match report.verdict {
            Verdict::Smooth => NbVerdict::Smooth,
            Verdict::Singular => NbVerdict::Singular,
            Verdict::Unknown => NbVerdict::Unknown,
        };
        write(out, v)
    })
}

/// # Safety
/// Handles must be live and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nb_tangent_bounds(
    ctx: *const NbContext,
    lbl: *const NbLabel,
    out: *mut NbTangentBounds,
) -> NbStatus {
    guard(|| {
        let ctx = tri!(deref(ctx, "context"));
        let lbl = tri!(deref(lbl, "label"));
        tri!(same_context(&ctx.inner, lbl));
        let (c, l) = (&ctx.inner, &lbl.inner);
        let bounds = NbTangentBounds {
            dimension: c.dimension(l),
            t_k: t_k_set(c, l).len(),
            lower_bound: tangent_lower_bound(c, l),
            bk_span: bk_span(c, l),
            is_upper: c.is_upper(l),
            exact_tangent_dim: tangent_dim_upper(c, l).unwrap_or(0),
        };
        write(out, bounds)
    })
}

unsafe fn export_graph(
    ctx: *const NbContext,
    cap: usize,
    out: *mut *mut c_char,
    render: fn(&nilbruhat::poset::BruhatGraph) -> String,
) -> NbStatus {
    guard(|| {
        let ctx = tri!(deref(ctx, "context"));
        match hasse(&ctx.inner, cap) {
            Ok(mut g) => {
                g.annotate(|l| Some(verdict(&ctx.inner, l).verdict == Verdict::Singular));
                write(out, into_c_string(render(&g)))
            }
            Err(e) => from_error(e),
        }
    })
}

/// Hasse diagram as JSON; release with [`nb_string_free`].
///
/// # Safety
/// `ctx` must be a live context handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nb_hasse_json(ctx: *const NbContext, cap: usize, out: *mut *mut c_char) -> NbStatus {
    export_graph(ctx, cap, out, |g| g.export_json())
}

/// Hasse diagram as Graphviz DOT; release with [`nb_string_free`].
///
/// # Safety
/// `ctx` must be a live context handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nb_hasse_dot(ctx: *const NbContext, cap: usize, out: *mut *mut c_char) -> NbStatus {
    export_graph(ctx, cap, out, |g| g.export_dot())
}

/// Bruhat order on `S_len`, permutations given 1-based in one-line notation.
///
/// # Safety
/// `u` and `w` must point to `len` readable values; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nb_bruhat_leq(u: *const u32, w: *const u32, len: usize, out: *mut bool) -> NbStatus {
    guard(|| {
        if len > 0 && (u.is_null() || w.is_null()) {
            return fail(NbStatus::NullPointer, "permutation is null");
        }
        let read = |p: *const u32| -> Result<Permutation, NbStatus> {
            let images = if len == 0 {
                Vec::new()
            } else {
                std::slice::from_raw_parts(p, len).iter().map(|&v| v as usize).collect()
            };
            Permutation::from_images(images).map_err(from_error)
        };
        let u = tri!(read(u));
        let w = tri!(read(w));
        match bruhat_leq(&u, &w) {
            Ok(b) => write(out, b),
            Err(e) => from_error(e),
        }
    })
}
