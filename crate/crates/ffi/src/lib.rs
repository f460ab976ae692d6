//! C interface to `sphfun`.
//!
//! A context fixes (n, m, mu, degree bound). Queries return NUL-terminated JSON
//! strings owned by the caller and released with [`sphfun_string_free`]. Every
//! fallible call returns a [`SphfunStatus`]; the message for the most recent
//! failure on the calling thread is available from [`sphfun_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sphfun::bottoms::MuSpec;
use sphfun::cli::{self, CommandKind, Format, JobSpec};
use sphfun::rootdata::RankPair;
use sphfun::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SphfunStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    ComputationFailed = 4,
    /// The computation finished but one of its internal checks did not hold.
    CheckFailed = 5,
    Panic = 6,
}

/// Opaque handle.
pub struct SphfunContext {
    mu: MuSpec,
    degree_bound: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn classify(e: &Error) -> SphfunStatus {
    match e {
        Error::InvalidRankPair { .. }
        | Error::InvalidMu(_)
        | Error::UnknownLabel(_)
        | Error::IndexOutOfRange { .. }
        | Error::NotDominant
        | Error::CapExceeded { .. } => SphfunStatus::InvalidArgument,
        _ => SphfunStatus::ComputationFailed,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (SphfunStatus, String)>) -> SphfunStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SphfunStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SphfunStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (SphfunStatus, String) {
    (classify(&e), e.to_string())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, (SphfunStatus, String)> {
    if p.is_null() {
        return Err((SphfunStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (SphfunStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn context<'a>(ctx: *const SphfunContext) -> Result<&'a SphfunContext, (SphfunStatus, String)> {
    ctx.as_ref().ok_or((SphfunStatus::NullPointer, "null context".into()))
}

fn job(ctx: &SphfunContext, kind: CommandKind) -> JobSpec {
    JobSpec {
        kind,
        ctx: Some(ctx.mu.ctx),
        mu: Some(ctx.mu),
        degree_bound: ctx.degree_bound,
        format: Format::Json,
        float: false,
        label: None,
        zonal_index: None,
        emit_samples: None,
        cap: sphfun::oracle::DEFAULT_CAP,
        criteria: Vec::new(),
        cache_dir: None,
    }
}

unsafe fn deliver(job: &JobSpec, out: *mut *mut c_char) -> Result<(), (SphfunStatus, String)> {
    if out.is_null() {
        return Err((SphfunStatus::NullPointer, "null output pointer".into()));
    }
    *out = ptr::null_mut();
    let outcome = cli::run(job).map_err(lib_err)?;
    let text = serde_json::to_string(&outcome.json).expect("json");
    *out = CString::new(text).expect("json has no NUL").into_raw();
    if outcome.pass {
        Ok(())
    } else {
        Err((SphfunStatus::CheckFailed, "an internal consistency check failed; see the \"pass\" fields".into()))
    }
}

/// Create a context for SU(n+m) and the K-type `mu` (`"wedge:s,b"` or `"rankone:a,b"`).
///
/// # Safety
/// `mu` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sphfun_context_new(
    n: usize,
    m: usize,
    mu: *const c_char,
    degree_bound: u32,
    out: *mut *mut SphfunContext,
) -> SphfunStatus {
    guard(|| {
        if out.is_null() {
            return Err((SphfunStatus::NullPointer, "null output pointer".into()));
        }
        *out = ptr::null_mut();
        let text = read_str(mu)?;
        let ctx = RankPair::new(n, m).map_err(lib_err)?;
        let mu = MuSpec::parse(ctx, text).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(SphfunContext { mu, degree_bound }));
        Ok(())
    })
}

/// # Safety
/// `ctx` must come from [`sphfun_context_new`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sphfun_context_free(ctx: *mut SphfunContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Labels, weights and Casimir eigenvalues up to the context's degree bound.
///
/// # Safety
/// `ctx` must be a live context and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sphfun_spectrum_json(ctx: *const SphfunContext, out: *mut *mut c_char) -> SphfunStatus {
    guard(|| deliver(&job(context(ctx)?, CommandKind::Bottom), out))
}

/// Spherical functions. `label` is `"<bottom index>:<d_1,..,d_n>"`, or null for
/// every label within the degree bound.
///
/// # Safety
/// `ctx` must be a live context, `label` null or a valid string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sphfun_spherical_json(
    ctx: *const SphfunContext,
    label: *const c_char,
    out: *mut *mut c_char,
) -> SphfunStatus {
    guard(|| {
        let c = context(ctx)?;
        let mut j = job(c, CommandKind::Spherical);
        if !label.is_null() {
            j.label = Some(cli::parse_label(&c.mu, read_str(label)?).map_err(lib_err)?);
        }
        deliver(&j, out)
    })
}

/// Gram matrix of the spherical functions, optionally with quadrature values.
///
/// # Safety
/// `ctx` must be a live context and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sphfun_orthogonality_json(
    ctx: *const SphfunContext,
    with_float: bool,
    out: *mut *mut c_char,
) -> SphfunStatus {
    guard(|| {
        let mut j = job(context(ctx)?, CommandKind::Orthogonality);
        j.float = with_float;
        deliver(&j, out)
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sphfun_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn sphfun_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[no_mangle]
pub extern "C" fn sphfun_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take(p: *mut c_char) -> serde_json::Value {
        let v = serde_json::from_str(CStr::from_ptr(p).to_str().unwrap()).unwrap();
        sphfun_string_free(p);
        v
    }

    #[test]
    fn round_trip() {
        unsafe {
            let mut ctx = ptr::null_mut();
            let mu = cstr("wedge:1,0");
            assert_eq!(sphfun_context_new(2, 3, mu.as_ptr(), 1, &mut ctx), SphfunStatus::Ok);
            assert!(sphfun_last_error().is_null());

            let mut out = ptr::null_mut();
            assert_eq!(sphfun_spectrum_json(ctx, &mut out), SphfunStatus::Ok);
            assert!(take(out).as_array().unwrap().len() >= 2);

            let label = cstr("1:0,0");
            assert_eq!(sphfun_spherical_json(ctx, label.as_ptr(), &mut out), SphfunStatus::Ok);
            let v = take(out);
            assert_eq!(v["functions"][0]["checks"]["eigen_equation"], true);

            assert_eq!(sphfun_orthogonality_json(ctx, true, &mut out), SphfunStatus::Ok);
            assert_eq!(take(out)["pass"], true);
            sphfun_context_free(ctx);
        }
    }

    #[test]
    fn errors() {
        unsafe {
            let mut ctx = ptr::null_mut();
            let bad = cstr("wedge:9,0");
            assert_eq!(sphfun_context_new(2, 3, bad.as_ptr(), 1, &mut ctx), SphfunStatus::InvalidArgument);
            assert!(ctx.is_null());
            assert!(!sphfun_last_error().is_null());
            assert_eq!(sphfun_context_new(3, 2, cstr("wedge:0,0").as_ptr(), 1, &mut ctx), SphfunStatus::InvalidArgument);
            assert_eq!(sphfun_context_new(2, 3, ptr::null(), 1, &mut ctx), SphfunStatus::NullPointer);
            let mut out = ptr::null_mut();
            assert_eq!(sphfun_spectrum_json(ptr::null(), &mut out), SphfunStatus::NullPointer);

            assert_eq!(sphfun_context_new(1, 1, cstr("rankone:2,0").as_ptr(), 0, &mut ctx), SphfunStatus::Ok);
            let label = cstr("7:0");
            assert_eq!(sphfun_spherical_json(ctx, label.as_ptr(), &mut out), SphfunStatus::InvalidArgument);
            assert!(out.is_null());
            let msg = CStr::from_ptr(sphfun_last_error()).to_str().unwrap();
            assert!(msg.contains("7:0"), "{msg}");
            sphfun_context_free(ctx);
            sphfun_context_free(ptr::null_mut());
            sphfun_string_free(ptr::null_mut());
            assert_eq!(CStr::from_ptr(sphfun_version()).to_str().unwrap(), env!("CARGO_PKG_VERSION"));
        }
    }
}
