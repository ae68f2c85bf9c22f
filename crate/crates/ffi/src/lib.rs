//! C ABI over euclid-lab.
//!
//! Monoids and elements are opaque heap handles released with their
//! `_free` function. Every fallible call returns an [`ELStatus`]; on failure
//! [`el_last_error`] describes the most recent error on the calling thread.
//! Strings returned through `char **` out-parameters are owned by the caller
//! and released with [`el_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use euclid_lab::cli::run_command;
use euclid_lab::dsl::{parse_element, parse_monoid_spec};
use euclid_lab::euclid::bezout;
use euclid_lab::factorization::is_irreducible;
use euclid_lab::{Element, Error, Limits, MonoidDescriptor};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ELStatus {
    Ok = 0,
    InvalidInput = 1,
    Syntax = 2,
    NotAMember = 3,
    NotClosed = 4,
    Mismatch = 5,
    BoundExceeded = 6,
    Unsupported = 7,
    NullPointer = 8,
    /// A panic was caught at the boundary.
    Internal = 9,
}

/// A validated monoid descriptor.
pub struct ELMonoid {
    desc: MonoidDescriptor,
}

/// An element of some monoid.
pub struct ELElement {
    element: Element,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> ELStatus {
    match e {
        Error::InvalidInput(_) | Error::Precondition(_) | Error::MalformedTrace(_) => ELStatus::InvalidInput,
        Error::Syntax { .. } => ELStatus::Syntax,
        Error::NotAMember { .. } => ELStatus::NotAMember,
        Error::NotClosed { .. } => ELStatus::NotClosed,
        Error::DescriptorMismatch { .. } => ELStatus::Mismatch,
        Error::BoundExceeded { .. } => ELStatus::BoundExceeded,
        Error::Unsupported(_) => ELStatus::Unsupported,
    }
}

struct Failure(ELStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(ELStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ELStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ELStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            ELStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(ELStatus::InvalidInput, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

/// The message for the last failed call on this thread, or null. Valid
/// until the next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn el_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn el_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `"nat"`, `"congruence R mod M"` or `"quadratic D"`.
///
/// # Safety
/// `spec` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn el_monoid_parse(spec: *const c_char, out: *mut *mut ELMonoid) -> ELStatus {
    guard(|| {
        let desc = parse_monoid_spec(text(spec, "spec")?)?;
        put(out, Box::into_raw(Box::new(ELMonoid { desc })), "out")
    })
}

/// # Safety
/// `m` is null or a live monoid handle.
#[no_mangle]
pub unsafe extern "C" fn el_monoid_free(m: *mut ELMonoid) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Canonical specification text.
///
/// # Safety
/// `m` is a live monoid handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn el_monoid_render(m: *const ELMonoid, out: *mut *mut c_char) -> ELStatus {
    guard(|| {
        let m = handle(m, "monoid")?;
        put(out, owned_string(m.desc.to_string()), "out")
    })
}

/// Parses an element literal: decimal, `(a,b)` or `a+b*sqrt(d)`.
///
/// # Safety
/// `m` is a live monoid handle, `literal` a nul-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn el_element_parse(
    m: *const ELMonoid,
    literal: *const c_char,
    out: *mut *mut ELElement,
) -> ELStatus {
    guard(|| {
        let m = handle(m, "monoid")?;
        let element = parse_element(m.desc, text(literal, "literal")?)?;
        put(out, Box::into_raw(Box::new(ELElement { element })), "out")
    })
}

/// # Safety
/// `e` is null or a live element handle.
#[no_mangle]
pub unsafe extern "C" fn el_element_free(e: *mut ELElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Decimal for integer monoids, `(a,b)` for quadratic ones.
///
/// # Safety
/// `e` is a live element handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn el_element_render(e: *const ELElement, out: *mut *mut c_char) -> ELStatus {
    guard(|| {
        let e = handle(e, "element")?;
        put(out, owned_string(e.element.to_pair_form()), "out")
    })
}

/// # Safety
/// `a` and `b` are live element handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn el_element_mul(
    a: *const ELElement,
    b: *const ELElement,
    out: *mut *mut ELElement,
) -> ELStatus {
    guard(|| {
        let (a, b) = (handle(a, "a")?, handle(b, "b")?);
        let element = a.element.mul(&b.element)?;
        put(out, Box::into_raw(Box::new(ELElement { element })), "out")
    })
}

/// Sets `*out` to `x / d`, or to null when `d` does not divide `x`.
///
/// # Safety
/// `x` and `d` are live element handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn el_element_try_divide(
    x: *const ELElement,
    d: *const ELElement,
    out: *mut *mut ELElement,
) -> ELStatus {
    guard(|| {
        let (x, d) = (handle(x, "x")?, handle(d, "d")?);
        let q = x
            .element
            .try_divide(&d.element)?
            .map_or(ptr::null_mut(), |element| Box::into_raw(Box::new(ELElement { element })));
        put(out, q, "out")
    })
}

/// # Safety
/// `x` is a live element handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn el_element_is_irreducible(x: *const ELElement, out: *mut bool) -> ELStatus {
    guard(|| {
        let x = handle(x, "x")?;
        put(out, is_irreducible(&x.element, &Limits::default())?, "out")
    })
}

/// `g = gcd(a, b)` with `s·a + t·b = g`; `a` and `b` must be positive.
///
/// # Safety
/// `g`, `s` and `t` are writable.
#[no_mangle]
pub unsafe extern "C" fn el_bezout_u64(a: u64, b: u64, g: *mut u64, s: *mut i64, t: *mut i64) -> ELStatus {
    guard(|| {
        let cert = bezout(&a, &b)?;
        let word = |v: &num_bigint::BigInt| {
            i64::try_from(v).map_err(|_| Failure(ELStatus::BoundExceeded, format!("{v} does not fit in 64 bits")))
        };
        let (cs, ct) = (word(&cert.s)?, word(&cert.t)?);
        put(g, cert.g, "g")?;
        put(s, cs, "s")?;
        put(t, ct, "t")
    })
}

/// Runs one command-line invocation (without the program name) and
/// returns its standard output and exit status. `*exit_status` follows the
/// command-line contract: 0 holds, 1 refuted, 2 usage error, 3 bound
/// exceeded. On 2 and 3 `*out` holds the error text.
///
/// # Safety
/// `argv` points to `argc` nul-terminated strings; `out` and `exit_status`
/// are writable.
#[no_mangle]
pub unsafe extern "C" fn el_run(
    argv: *const *const c_char,
    argc: usize,
    out: *mut *mut c_char,
    exit_status: *mut c_int,
) -> ELStatus {
    guard(|| {
        if argv.is_null() && argc > 0 {
            return Err(null("argv"));
        }
        let mut args = vec!["euclid-lab".to_string()];
        for i in 0..argc {
            args.push(text(*argv.add(i), "argument")?.to_string());
        }
        let outcome = run_command(args);
        let body = if outcome.status <= 1 { outcome.stdout } else { outcome.stderr };
        put(exit_status, outcome.status, "exit_status")?;
        put(out, owned_string(body), "out")
    })
}
