//! C ABI over `covosc`.
//!
//! Every entry point returns a [`CovStatus`] and writes results through out
//! pointers. On failure the out pointers are left untouched and a message is
//! available from [`covosc_last_error`] on the same thread.
//!
//! Expansions are exposed as an opaque [`CovFockExpansion`] handle created by
//! [`covosc_expand`] and released with [`covosc_expansion_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use covosc::density;
use covosc::lorentz;
use covosc::oscillator::{self, Rapidity, SpacetimePoint};
use covosc::special_functions;
use covosc::squeeze::{self, FockCoefficients};
use covosc::Error;

/// Result codes shared by every function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CovStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfRange = 3,
    NonConvergence = 4,
    NumericalFailure = 5,
    Panic = 6,
}

impl From<&Error> for CovStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::RapidityOutOfRange { .. }
            | Error::VelocityOutOfRange(_)
            | Error::InvalidOrder(_) => CovStatus::OutOfRange,
            Error::NonConvergence { .. } => CovStatus::NonConvergence,
            Error::IntegrationFailure(_) => CovStatus::NumericalFailure,
            _ => CovStatus::InvalidArgument,
        }
    }
}

/// Opaque truncated Fock expansion.
pub struct CovFockExpansion {
    inner: FockCoefficients,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn guard<F: FnOnce() -> Result<(), (CovStatus, String)>>(f: F) -> CovStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CovStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            CovStatus::Panic
        }
    }
}

fn lift(e: Error) -> (CovStatus, String) {
    ((&e).into(), e.to_string())
}

fn null(name: &str) -> (CovStatus, String) {
    (CovStatus::NullPointer, format!("{name} is null"))
}

fn write<T>(out: *mut T, name: &str, v: T) -> Result<(), (CovStatus, String)> {
    if out.is_null() {
        return Err(null(name));
    }
    // SAFETY: non-null, caller guarantees it points to writable storage.
    unsafe { out.write(v) };
    Ok(())
}

fn rapidity(eta: f64) -> Result<Rapidity, (CovStatus, String)> {
    Rapidity::new(eta).map_err(lift)
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn covosc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Unit-norm oscillator eigenfunction φ_n(z).
///
/// # Safety
/// `out` must be null or point to writable storage for one `double`.
#[no_mangle]
pub unsafe extern "C" fn covosc_phi(n: usize, z: f64, out: *mut f64) -> CovStatus {
    guard(|| write(out, "out", special_functions::phi(n, z)))
}

/// Boosted wave function ψⁿ_η(z, t).
///
/// # Safety
/// `out` must be null or point to writable storage for one `double`.
#[no_mangle]
pub unsafe extern "C" fn covosc_psi_boosted(
    n: usize,
    eta: f64,
    z: f64,
    t: f64,
    out: *mut f64,
) -> CovStatus {
    guard(|| {
        let v = oscillator::psi_boosted(n, rapidity(eta)?, SpacetimePoint::new(z, t));
        write(out, "out", v)
    })
}

/// Fock coefficient c_k of ψⁿ_η.
///
/// # Safety
/// `out` must be null or point to writable storage for one `double`.
#[no_mangle]
pub unsafe extern "C" fn covosc_coefficient(
    n: usize,
    k: usize,
    eta: f64,
    out: *mut f64,
) -> CovStatus {
    guard(|| write(out, "out", squeeze::coefficient(n, k, rapidity(eta)?)))
}

/// Entropy of the reduced state at rapidity `eta`.
///
/// # Safety
/// `out` must be null or point to writable storage for one `double`.
#[no_mangle]
pub unsafe extern "C" fn covosc_entropy(eta: f64, out: *mut f64) -> CovStatus {
    guard(|| write(out, "out", density::entropy(rapidity(eta)?)))
}

/// Purity Tr ρ² of the reduced state.
///
/// # Safety
/// `out` must be null or point to writable storage for one `double`.
#[no_mangle]
pub unsafe extern "C" fn covosc_purity(eta: f64, out: *mut f64) -> CovStatus {
    guard(|| write(out, "out", density::purity(rapidity(eta)?)))
}

/// Reduced density kernel ρ(z, z′).
///
/// # Safety
/// `out` must be null or point to writable storage for one `double`.
#[no_mangle]
pub unsafe extern "C" fn covosc_reduced_density(
    eta: f64,
    z: f64,
    zp: f64,
    out: *mut f64,
) -> CovStatus {
    guard(|| {
        write(
            out,
            "out",
            density::reduced_density_closed(rapidity(eta)?, z, zp),
        )
    })
}

/// Boost along axis 3 as a row-major 4×4 matrix in (x, y, z, t) order.
///
/// # Safety
/// `out` must be null or point to 16 writable `double`s.
#[no_mangle]
pub unsafe extern "C" fn covosc_boost_matrix(eta: f64, out: *mut f64) -> CovStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let b = lorentz::boost_matrix(eta).map_err(lift)?;
        for (r, row) in b.entries().iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                // SAFETY: caller guarantees 16 slots.
                unsafe { out.add(4 * r + c).write(*v) };
            }
        }
        Ok(())
    })
}

/// Expands ψⁿ_η until `1 − Σ c_k² < tol` and stores a new handle in `out`.
///
/// # Safety
/// `out` must be null or point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn covosc_expand(
    n: usize,
    eta: f64,
    tol: f64,
    out: *mut *mut CovFockExpansion,
) -> CovStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = squeeze::expand(n, rapidity(eta)?, tol).map_err(lift)?;
        write(
            out,
            "out",
            Box::into_raw(Box::new(CovFockExpansion { inner })),
        )
    })
}

/// Number of retained coefficients (truncation index + 1).
///
/// # Safety
/// `h` must be null or a live handle from [`covosc_expand`].
#[no_mangle]
pub unsafe extern "C" fn covosc_expansion_len(
    h: *const CovFockExpansion,
    out: *mut usize,
) -> CovStatus {
    guard(|| {
        // SAFETY: caller guarantees h is live or null.
        let h = unsafe { h.as_ref() }.ok_or_else(|| null("handle"))?;
        write(out, "out", h.inner.coeffs.len())
    })
}

/// Certified tail `1 − Σ c_k²` of the expansion.
///
/// # Safety
/// `h` must be null or a live handle from [`covosc_expand`].
#[no_mangle]
pub unsafe extern "C" fn covosc_expansion_tail(
    h: *const CovFockExpansion,
    out: *mut f64,
) -> CovStatus {
    guard(|| {
        let h = unsafe { h.as_ref() }.ok_or_else(|| null("handle"))?;
        write(out, "out", h.inner.tail_bound)
    })
}

/// Coefficient `k` of the expansion.
///
/// # Safety
/// `h` must be null or a live handle from [`covosc_expand`].
#[no_mangle]
pub unsafe extern "C" fn covosc_expansion_get(
    h: *const CovFockExpansion,
    k: usize,
    out: *mut f64,
) -> CovStatus {
    guard(|| {
        let h = unsafe { h.as_ref() }.ok_or_else(|| null("handle"))?;
        let len = h.inner.coeffs.len();
        let v = *h
            .inner
            .coeffs
            .get(k)
            .ok_or_else(|| (CovStatus::OutOfRange, format!("index {k} >= length {len}")))?;
        write(out, "out", v)
    })
}

/// Truncated series evaluated at (z, t).
///
/// # Safety
/// `h` must be null or a live handle from [`covosc_expand`].
#[no_mangle]
pub unsafe extern "C" fn covosc_expansion_reconstruct(
    h: *const CovFockExpansion,
    z: f64,
    t: f64,
    out: *mut f64,
) -> CovStatus {
    guard(|| {
        let h = unsafe { h.as_ref() }.ok_or_else(|| null("handle"))?;
        write(
            out,
            "out",
            squeeze::reconstruct(&h.inner, SpacetimePoint::new(z, t)),
        )
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `h` must be null or a handle from [`covosc_expand`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn covosc_expansion_free(h: *mut CovFockExpansion) {
    if !h.is_null() {
        // SAFETY: produced by Box::into_raw in covosc_expand.
        drop(unsafe { Box::from_raw(h) });
    }
}
