//! C ABI over the `currents` library.
//!
//! Objects are opaque handles created by `*_new`/`*_parse` and released by
//! the matching `*_free`. Every fallible call returns a `CurrentsStatus`;
//! on failure `currents_last_error` describes the error on the calling
//! thread. Strings returned by the library are freed with
//! `currents_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use currents::current::RationalCurrent;
use currents::decomposition::{is_binding, Geometry};
use currents::dt::ArcSystem;
use currents::hyperbolic::HyperbolicStructure;
use currents::intersection::{current_pairing, self_intersection};
use currents::mcg::parse_mapping_class;
use currents::measures::{homogeneous_ball_volume, simplex_integral};
use currents::surface::{RibbonSpine, SurfaceSig};
use currents::Error;
use num_traits::ToPrimitive;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurrentsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Precondition = 3,
    Budget = 4,
    Overflow = 5,
    Panic = 6,
}

/// A surface with its standard spine and default hyperbolic structure.
pub struct CurrentsSurface {
    spine: RibbonSpine,
    h: HyperbolicStructure,
}

/// A rational current on a particular surface.
pub struct CurrentsCurrent {
    current: RationalCurrent,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(e: Error) -> CurrentsStatus {
    set_error(&e.to_string());
    if e.exit_code() == 3 {
        CurrentsStatus::Budget
    } else {
        CurrentsStatus::Precondition
    }
}

fn guard<F: FnOnce() -> CurrentsStatus>(f: F) -> CurrentsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == CurrentsStatus::Ok {
                set_error("");
            }
            s
        }
        Err(_) => {
            set_error("internal panic");
            CurrentsStatus::Panic
        }
    }
}

macro_rules! deref {
    ($p:expr) => {
        match unsafe { $p.as_ref() } {
            Some(x) => x,
            None => {
                set_error(concat!("null pointer: ", stringify!($p)));
                return CurrentsStatus::NullPointer;
            }
        }
    };
}

macro_rules! out {
    ($p:expr) => {
        match unsafe { $p.as_mut() } {
            Some(x) => x,
            None => {
                set_error(concat!("null output pointer: ", stringify!($p)));
                return CurrentsStatus::NullPointer;
            }
        }
    };
}

macro_rules! string {
    ($p:expr) => {{
        if $p.is_null() {
            set_error(concat!("null string: ", stringify!($p)));
            return CurrentsStatus::NullPointer;
        }
        match unsafe { CStr::from_ptr($p) }.to_str() {
            Ok(s) => s,
            Err(_) => {
                set_error(concat!("string is not UTF-8: ", stringify!($p)));
                return CurrentsStatus::InvalidUtf8;
            }
        }
    }};
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(x) => x,
            Err(e) => return fail(e),
        }
    };
}

/// Message for the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn currents_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn currents_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn currents_surface_new(
    genus: u32,
    boundary: u32,
    out: *mut *mut CurrentsSurface,
) -> CurrentsStatus {
    guard(|| {
        let out = out!(out);
        *out = ptr::null_mut();
        let spine = tri!(SurfaceSig::new(genus, boundary).and_then(RibbonSpine::standard));
        let h = tri!(HyperbolicStructure::default_for(&spine));
        *out = Box::into_raw(Box::new(CurrentsSurface { spine, h }));
        CurrentsStatus::Ok
    })
}

/// # Safety
/// `s` must be null or a handle from `currents_surface_new`.
#[no_mangle]
pub unsafe extern "C" fn currents_surface_free(s: *mut CurrentsSurface) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Parses text such as `"2*a + 1/2*abAB + bndry(1)"`.
///
/// # Safety
/// `s` must be a valid surface handle, `text` a NUL-terminated string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn currents_current_parse(
    s: *const CurrentsSurface,
    text: *const c_char,
    out: *mut *mut CurrentsCurrent,
) -> CurrentsStatus {
    guard(|| {
        let out = out!(out);
        *out = ptr::null_mut();
        let s = deref!(s);
        let text = string!(text);
        let current = tri!(RationalCurrent::parse(text, &s.spine));
        *out = Box::into_raw(Box::new(CurrentsCurrent { current }));
        CurrentsStatus::Ok
    })
}

/// # Safety
/// `c` must be null or a handle from `currents_current_parse`.
#[no_mangle]
pub unsafe extern "C" fn currents_current_free(c: *mut CurrentsCurrent) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Canonical text of a current; free with `currents_string_free`.
///
/// # Safety
/// `c` must be a valid current handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn currents_current_to_string(
    c: *const CurrentsCurrent,
    out: *mut *mut c_char,
) -> CurrentsStatus {
    guard(|| {
        let out = out!(out);
        *out = ptr::null_mut();
        let c = deref!(c);
        let text = CString::new(c.current.to_string()).expect("no interior NUL");
        *out = text.into_raw();
        CurrentsStatus::Ok
    })
}

/// Intersection pairing as the fraction `num / den`.
///
/// # Safety
/// All pointers must be valid; both currents must live on `s`.
#[no_mangle]
pub unsafe extern "C" fn currents_intersection(
    s: *const CurrentsSurface,
    c1: *const CurrentsCurrent,
    c2: *const CurrentsCurrent,
    num: *mut i64,
    den: *mut i64,
) -> CurrentsStatus {
    guard(|| {
        let (num, den) = (out!(num), out!(den));
        let s = deref!(s);
        let (c1, c2) = (deref!(c1), deref!(c2));
        let w = current_pairing(&s.spine, &c1.current, &c2.current);
        *num = *w.numer();
        *den = *w.denom();
        CurrentsStatus::Ok
    })
}

/// Self-intersection number of the primitive class of `word`.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn currents_self_intersection(
    s: *const CurrentsSurface,
    word: *const c_char,
    out: *mut u64,
) -> CurrentsStatus {
    guard(|| {
        let out = out!(out);
        let s = deref!(s);
        let word = string!(word);
        let (class, _) = tri!(s.spine.class(word));
        *out = self_intersection(&s.spine, &class);
        CurrentsStatus::Ok
    })
}

/// Image of a current under a product of twist generators such as
/// `"Ta*Tb^-1"`; the result is a new handle.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn currents_apply_mapping_class(
    s: *const CurrentsSurface,
    phi: *const c_char,
    c: *const CurrentsCurrent,
    out: *mut *mut CurrentsCurrent,
) -> CurrentsStatus {
    guard(|| {
        let out = out!(out);
        *out = ptr::null_mut();
        let s = deref!(s);
        let phi = string!(phi);
        let c = deref!(c);
        let f = tri!(parse_mapping_class(&s.spine, phi));
        *out = Box::into_raw(Box::new(CurrentsCurrent {
            current: f.apply_current(&c.current),
        }));
        CurrentsStatus::Ok
    })
}

/// Hyperbolic length of a current in the default structure.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn currents_length(
    s: *const CurrentsSurface,
    c: *const CurrentsCurrent,
    out: *mut f64,
) -> CurrentsStatus {
    guard(|| {
        let out = out!(out);
        let s = deref!(s);
        let c = deref!(c);
        *out = s.h.current_length(&c.current);
        CurrentsStatus::Ok
    })
}

/// Census counts `b'(L)` (all) and `b(L)` (no peripheral components) in the
/// default structure.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn currents_census_count(
    s: *const CurrentsSurface,
    l: f64,
    count_all: *mut u64,
    count_internal: *mut u64,
) -> CurrentsStatus {
    guard(|| {
        let (all, internal) = (out!(count_all), out!(count_internal));
        let s = deref!(s);
        let arcs = tri!(ArcSystem::from_structure(&s.h));
        let rec = tri!(arcs.census(l));
        *all = rec.count_all;
        *internal = rec.count_internal;
        CurrentsStatus::Ok
    })
}

/// Writes 1 to `out` if the current is binding, 0 otherwise.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn currents_is_binding(
    s: *const CurrentsSurface,
    c: *const CurrentsCurrent,
    out: *mut i32,
) -> CurrentsStatus {
    guard(|| {
        let out = out!(out);
        let s = deref!(s);
        let c = deref!(c);
        let geo = tri!(Geometry::new(s.h.clone()));
        let r = tri!(is_binding(&geo, &c.current, None));
        *out = r.binding as i32;
        CurrentsStatus::Ok
    })
}

/// Ball volume of a homogeneous measure of degree `d`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn currents_homogeneous_ball_volume(
    d: f64,
    n_r: u32,
    l: f64,
    ell_c: f64,
    m_th_b: f64,
    out: *mut f64,
) -> CurrentsStatus {
    guard(|| {
        let out = out!(out);
        *out = tri!(homogeneous_ball_volume(d, n_r, l, ell_c, m_th_b)).value;
        CurrentsStatus::Ok
    })
}

/// Exact simplex constant as `num / den`; `Overflow` if it does not fit.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn currents_simplex_integral(big_n: u32, n: u32, num: *mut i64, den: *mut i64) -> CurrentsStatus {
    guard(|| {
        let (num, den) = (out!(num), out!(den));
        let c = tri!(simplex_integral(big_n, n));
        match (c.exact.numer().to_i64(), c.exact.denom().to_i64()) {
            (Some(p), Some(q)) => {
                *num = p;
                *den = q;
                CurrentsStatus::Ok
            }
            _ => {
                set_error("simplex constant does not fit in 64 bits");
                CurrentsStatus::Overflow
            }
        }
    })
}
