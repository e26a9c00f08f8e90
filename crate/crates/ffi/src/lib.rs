//! C interface to `trl`. Tensors are opaque handles; every fallible call
//! returns a [`TrlStatus`] and leaves a message for [`trl_last_error_message`].
//! Strings returned through out-pointers must be released with
//! [`trl_string_free`], tensors with [`trl_tensor_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use trl::analytic::{analytic_rank, point_count_stratified, CountBudget};
use trl::bounds::{chain_report, matmul_gr_formula, ChainConfig};
use trl::geometric::gr_exact;
use trl::groebner::BuchbergerConfig;
use trl::io::{parse_tensor, serialize_tensor};
use trl::linalg::Prime;
use trl::tensor::{identity_tensor, matmul_tensor, w_tensor, Tensor3};
use trl::Error;

/// Opaque tensor handle.
pub struct TrlTensor(Tensor3);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrlStatus {
    Ok = 0,
    InvalidInput = 1,
    DimensionMismatch = 2,
    NotPrime = 3,
    NonInteger = 4,
    BudgetExceeded = 5,
    InvariantViolation = 6,
    NullPointer = 7,
    Panic = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> TrlStatus {
    match e {
        Error::InvalidInput(_) => TrlStatus::InvalidInput,
        Error::DimensionMismatch(_) => TrlStatus::DimensionMismatch,
        Error::NotPrime(_) => TrlStatus::NotPrime,
        Error::NonInteger => TrlStatus::NonInteger,
        Error::BudgetExceeded(_) => TrlStatus::BudgetExceeded,
        Error::InvariantViolation(_) => TrlStatus::InvariantViolation,
    }
}

enum Failure {
    Lib(Error),
    Null(&'static str),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TrlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TrlStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer passed as {what}"));
            TrlStatus::NullPointer
        }
        Err(_) => {
            set_error("internal panic".into());
            TrlStatus::Panic
        }
    }
}

unsafe fn tensor_ref<'a>(t: *const TrlTensor) -> Result<&'a Tensor3, Failure> {
    t.as_ref().map(|t| &t.0).ok_or(Failure::Null("tensor"))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

unsafe fn put_tensor(out: *mut *mut TrlTensor, t: Tensor3) -> Result<(), Failure> {
    *out_ref(out, "out")? = Box::into_raw(Box::new(TrlTensor(t)));
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. Owned by the
/// library and valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn trl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn trl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a tensor file document.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trl_tensor_from_json(json: *const c_char, out: *mut *mut TrlTensor) -> TrlStatus {
    guard(|| {
        if json.is_null() {
            return Err(Failure::Null("json"));
        }
        let s = CStr::from_ptr(json)
            .to_str()
            .map_err(|_| Error::InvalidInput("tensor document is not UTF-8".into()))?;
        put_tensor(out, parse_tensor(s)?)
    })
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trl_tensor_identity(r: usize, out: *mut *mut TrlTensor) -> TrlStatus {
    guard(|| put_tensor(out, identity_tensor(r)?))
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trl_tensor_w(out: *mut *mut TrlTensor) -> TrlStatus {
    guard(|| put_tensor(out, w_tensor()))
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trl_tensor_matmul(e: usize, h: usize, l: usize, out: *mut *mut TrlTensor) -> TrlStatus {
    guard(|| put_tensor(out, matmul_tensor(e, h, l)?))
}

/// # Safety
/// `t` must be NULL or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn trl_tensor_free(t: *mut TrlTensor) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `t` must be a live handle; `dims` must point to three writable values.
#[no_mangle]
pub unsafe extern "C" fn trl_tensor_dims(t: *const TrlTensor, dims: *mut usize) -> TrlStatus {
    guard(|| {
        let t = tensor_ref(t)?;
        if dims.is_null() {
            return Err(Failure::Null("dims"));
        }
        ptr::copy_nonoverlapping(t.dims().as_ptr(), dims, 3);
        Ok(())
    })
}

/// # Safety
/// `t` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trl_tensor_to_json(t: *const TrlTensor, out: *mut *mut c_char) -> TrlStatus {
    guard(|| {
        let s = serialize_tensor(tensor_ref(t)?);
        *out_ref(out, "out")? = into_c_string(s);
        Ok(())
    })
}

/// Exact geometric rank with `axis` eliminated. `max_pairs` of 0 selects the
/// default S-pair budget.
///
/// # Safety
/// `t` must be a live handle; `gr` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trl_gr_exact(t: *const TrlTensor, axis: usize, max_pairs: u64, gr: *mut usize) -> TrlStatus {
    guard(|| {
        let t = tensor_ref(t)?;
        let mut cfg = BuchbergerConfig::default();
        if max_pairs > 0 {
            cfg.max_pairs = max_pairs;
        }
        let g = gr_exact(t, axis, &cfg)?;
        *out_ref(gr, "gr")? = g.gr;
        Ok(())
    })
}

/// `|V(T_p)(F_p)|` as a decimal string.
///
/// # Safety
/// `t` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trl_point_count(t: *const TrlTensor, p: u64, out: *mut *mut c_char) -> TrlStatus {
    guard(|| {
        let t = tensor_ref(t)?;
        let c = point_count_stratified(t, Prime::new(p)?, None, &CountBudget::default())?;
        *out_ref(out, "out")? = into_c_string(c.count.to_string());
        Ok(())
    })
}

/// # Safety
/// `t` must be a live handle; `ar` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trl_analytic_rank(t: *const TrlTensor, p: u64, ar: *mut f64) -> TrlStatus {
    guard(|| {
        let t = tensor_ref(t)?;
        *out_ref(ar, "ar")? = analytic_rank(t, Prime::new(p)?, &CountBudget::default())?;
        Ok(())
    })
}

/// The bound chain as JSON. `primes` may be NULL when `nprimes` is 0.
///
/// # Safety
/// `t` must be a live handle; `primes` must hold `nprimes` values; `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trl_chain_report_json(
    t: *const TrlTensor,
    primes: *const u64,
    nprimes: usize,
    out: *mut *mut c_char,
) -> TrlStatus {
    guard(|| {
        let t = tensor_ref(t)?;
        let ps = if nprimes == 0 {
            None
        } else {
            if primes.is_null() {
                return Err(Failure::Null("primes"));
            }
            let raw = std::slice::from_raw_parts(primes, nprimes);
            Some(raw.iter().map(|&p| Prime::new(p)).collect::<trl::Result<Vec<_>>>()?)
        };
        let report = chain_report(t, ps.as_deref(), &ChainConfig::default())?;
        let json = serde_json::to_string(&report).expect("reports always serialize");
        *out_ref(out, "out")? = into_c_string(json);
        Ok(())
    })
}

/// Closed-form geometric rank of the `<e,h,l>` matrix multiplication tensor.
#[no_mangle]
pub extern "C" fn trl_matmul_gr_formula(e: usize, h: usize, l: usize) -> usize {
    matmul_gr_formula(e, h, l)
}
