//! C ABI over `projconn`.
//!
//! Every function returns a [`ProjconnStatus`]. On failure a message is
//! stored per thread and can be read with [`projconn_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use projconn::catalog::{self, EllipsoidCotangent, SphereLineBundle};
use projconn::verify;
use projconn::{Derivation, Error, ProjectivePresentation, QuotientRing, Variables};

#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ProjconnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    UnknownExample = 5,
    Math = 6,
    Panic = 7,
}

/// Quotient ring `Q(i)[vars]/(f)`.
pub struct ProjconnRing {
    ring: QuotientRing,
}

enum Built {
    Ellipsoid(Box<EllipsoidCotangent>),
    Sphere(Box<SphereLineBundle>),
}

/// A catalog example at fixed parameters.
pub struct ProjconnExample {
    id: &'static str,
    p: u32,
    q: u32,
    r: u32,
    built: Built,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> ProjconnStatus {
    match e {
        Error::Syntax { .. } | Error::UnknownVariable { .. } | Error::NegativeExponent { .. } => {
            ProjconnStatus::Parse
        }
        Error::UnknownExample(_) | Error::UnknownCheck { .. } => ProjconnStatus::UnknownExample,
        Error::InvalidParameter(_) | Error::InvalidModulus(_) | Error::IndexOutOfRange { .. } => {
            ProjconnStatus::InvalidArgument
        }
        _ => ProjconnStatus::Math,
    }
}

struct Fail(ProjconnStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> ProjconnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            ProjconnStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            ProjconnStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(ProjconnStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(ProjconnStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn check_out<T>(out: *mut T) -> Result<(), Fail> {
    if out.is_null() {
        Err(Fail(
            ProjconnStatus::NullPointer,
            "output pointer is null".into(),
        ))
    } else {
        Ok(())
    }
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c =
        CString::new(s).map_err(|_| Fail(ProjconnStatus::Math, "string contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread; empty after success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn projconn_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn projconn_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn projconn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates the ring with modulus `modulus` over comma-separated `vars`
/// (`"x,y,z"` when `vars` is null).
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn projconn_ring_new(
    modulus: *const c_char,
    vars: *const c_char,
    out: *mut *mut ProjconnRing,
) -> ProjconnStatus {
    guard(|| {
        check_out(out)?;
        *out = ptr::null_mut();
        let modulus = text(modulus, "modulus")?;
        let vars = if vars.is_null() {
            Variables::xyz()
        } else {
            Variables::parse_list(text(vars, "vars")?)?
        };
        let ring = QuotientRing::from_text(modulus, &vars)?;
        *out = Box::into_raw(Box::new(ProjconnRing { ring }));
        Ok(())
    })
}

/// # Safety
/// `ring` must be null or a handle from [`projconn_ring_new`].
#[no_mangle]
pub unsafe extern "C" fn projconn_ring_free(ring: *mut ProjconnRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

unsafe fn ring_ref<'a>(ring: *const ProjconnRing) -> Result<&'a ProjconnRing, Fail> {
    ring.as_ref()
        .ok_or_else(|| Fail(ProjconnStatus::NullPointer, "ring is null".into()))
}

/// Canonical normal form of `expression` in the ring.
///
/// # Safety
/// `ring` must be a live handle; `expression` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn projconn_ring_normal_form(
    ring: *const ProjconnRing,
    expression: *const c_char,
    out: *mut *mut c_char,
) -> ProjconnStatus {
    guard(|| {
        check_out(out)?;
        *out = ptr::null_mut();
        let r = ring_ref(ring)?;
        let e = r.ring.parse(text(expression, "expression")?)?;
        write_string(out, e.to_string())
    })
}

/// Sets `*out` to whether `expression` is zero in the ring.
///
/// # Safety
/// As for [`projconn_ring_normal_form`].
#[no_mangle]
pub unsafe extern "C" fn projconn_ring_is_zero(
    ring: *const ProjconnRing,
    expression: *const c_char,
    out: *mut bool,
) -> ProjconnStatus {
    guard(|| {
        check_out(out)?;
        let r = ring_ref(ring)?;
        *out = r.ring.parse(text(expression, "expression")?)?.is_zero();
        Ok(())
    })
}

/// Builds `example` (`"ellipsoid"` or `"sphere"`) at `(p, q, r)`.
///
/// # Safety
/// `example` must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn projconn_example_new(
    example: *const c_char,
    p: u32,
    q: u32,
    r: u32,
    out: *mut *mut ProjconnExample,
) -> ProjconnStatus {
    guard(|| {
        check_out(out)?;
        *out = ptr::null_mut();
        let (id, built) = match text(example, "example")? {
            catalog::ELLIPSOID => (
                catalog::ELLIPSOID,
                Built::Ellipsoid(Box::new(catalog::build_ellipsoid_cotangent(p, q, r)?)),
            ),
            catalog::SPHERE => (
                catalog::SPHERE,
                Built::Sphere(Box::new(catalog::build_sphere_line_bundle(p, q, r)?)),
            ),
            other => return Err(Error::UnknownExample(other.to_string()).into()),
        };
        *out = Box::into_raw(Box::new(ProjconnExample { id, p, q, r, built }));
        Ok(())
    })
}

/// # Safety
/// `example` must be null or a handle from [`projconn_example_new`].
#[no_mangle]
pub unsafe extern "C" fn projconn_example_free(example: *mut ProjconnExample) {
    if !example.is_null() {
        drop(Box::from_raw(example));
    }
}

unsafe fn example_ref<'a>(example: *const ProjconnExample) -> Result<&'a ProjconnExample, Fail> {
    example
        .as_ref()
        .ok_or_else(|| Fail(ProjconnStatus::NullPointer, "example is null".into()))
}

/// Runs the verification suite and returns the JSON report. `*passed` is
/// set to whether no check failed; it may be null.
///
/// # Safety
/// `example` must be a live handle; `out` writable; `passed` null or writable.
#[no_mangle]
pub unsafe extern "C" fn projconn_example_verify_json(
    example: *const ProjconnExample,
    parallelism: u32,
    out: *mut *mut c_char,
    passed: *mut bool,
) -> ProjconnStatus {
    guard(|| {
        check_out(out)?;
        *out = ptr::null_mut();
        let ex = example_ref(example)?;
        let rep = verify::verify(ex.id, ex.p, ex.q, ex.r, parallelism.max(1) as usize)?;
        if !passed.is_null() {
            *passed = rep.passed();
        }
        write_string(out, rep.to_json())
    })
}

/// Curvature report for derivations `i` and `j` (0-based, below 3) as JSON.
/// The sphere uses the presentation with idempotent `(P + I)/2`.
///
/// # Safety
/// `example` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn projconn_example_curvature_json(
    example: *const ProjconnExample,
    i: usize,
    j: usize,
    out: *mut *mut c_char,
) -> ProjconnStatus {
    guard(|| {
        check_out(out)?;
        *out = ptr::null_mut();
        let ex = example_ref(example)?;
        let (pres, ds, labels): (&ProjectivePresentation, &[Derivation; 3], [&str; 3]) =
            match &ex.built {
                Built::Ellipsoid(e) => (&e.presentation, &e.derivations, ["d1", "d2", "d3"]),
                Built::Sphere(s) => (&s.idempotent, &s.derivations, ["D1", "D2", "D3"]),
            };
        if i >= 3 || j >= 3 {
            return Err(Error::IndexOutOfRange {
                index: i.max(j),
                arity: 3,
            }
            .into());
        }
        let report = pres.curvature_report((labels[i], labels[j]), &ds[i], &ds[j])?;
        write_string(
            out,
            serde_json::to_string(&report).expect("report serializes"),
        )
    })
}

/// Ambient rank of the example's module presentation.
///
/// # Safety
/// `example` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn projconn_example_ambient_rank(
    example: *const ProjconnExample,
    out: *mut usize,
) -> ProjconnStatus {
    guard(|| {
        check_out(out)?;
        let ex = example_ref(example)?;
        *out = match &ex.built {
            Built::Ellipsoid(e) => e.presentation.ambient_rank(),
            Built::Sphere(s) => s.line_bundle.ambient_rank(),
        };
        Ok(())
    })
}
