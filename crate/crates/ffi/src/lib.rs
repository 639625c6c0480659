//! C ABI for randmono.
//!
//! Ideals are opaque `RmIdeal` handles created by `rm_ideal_parse`,
//! `rm_ideal_radical` or `rm_sample_er` and released with `rm_ideal_free`.
//! Every fallible call returns an `RmStatus`; on failure
//! `rm_last_error_message` describes the most recent error on the calling
//! thread. Strings returned to the caller are released with `rm_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use randmono::asymptotics::{self, AsymptoticsError};
use randmono::exact::{self, ExactError};
use randmono::rational::rational;
use randmono::sampling::{self, ErParams, ParamError, Seed};
use randmono::text::{self, TextError};
use randmono::topology::{self, TopologyError};
use randmono::{IdealError, MonomialIdeal};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    /// A size guard was exceeded.
    TooLarge = 4,
    /// The output buffer is too short.
    BufferTooSmall = 5,
    Panic = 6,
}

/// Opaque monomial ideal.
pub struct RmIdeal {
    inner: MonomialIdeal,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(RmStatus, String);

impl Failure {
    fn invalid(msg: impl Into<String>) -> Self {
        Failure(RmStatus::InvalidArgument, msg.into())
    }
}

macro_rules! failure_from {
    ($ty:ty, $default:expr, $($guard:pat),*) => {
        impl From<$ty> for Failure {
            fn from(e: $ty) -> Self {
                #[allow(unreachable_patterns)]
                let status = match e {
                    $($guard => RmStatus::TooLarge,)*
                    _ => $default,
                };
                Failure(status, e.to_string())
            }
        }
    };
}

failure_from!(TextError, RmStatus::ParseError,);
failure_from!(IdealError, RmStatus::InvalidArgument,);
failure_from!(ParamError, RmStatus::InvalidArgument, ParamError::TooLarge { .. });
failure_from!(ExactError, RmStatus::InvalidArgument, ExactError::TooLarge { .. });
failure_from!(TopologyError, RmStatus::InvalidArgument, TopologyError::TooManyVertices { .. });
failure_from!(AsymptoticsError, RmStatus::InvalidArgument, AsymptoticsError::NonConvergent { .. });

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> RmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RmStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            RmStatus::Panic
        }
    }
}

unsafe fn ideal_ref<'a>(ideal: *const RmIdeal) -> Result<&'a MonomialIdeal, Failure> {
    ideal
        .as_ref()
        .map(|i| &i.inner)
        .ok_or(Failure(RmStatus::NullPointer, "null ideal handle".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(RmStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

fn boxed(ideal: MonomialIdeal) -> *mut RmIdeal {
    Box::into_raw(Box::new(RmIdeal { inner: ideal }))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copy of the calling thread's last error message, or NULL if none.
/// Release with `rm_string_free`.
#[no_mangle]
pub extern "C" fn rm_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |s| s.clone().into_raw()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn rm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the ideal text format (`n D` line, then one exponent vector per line).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_ideal_parse(text: *const c_char, out: *mut *mut RmIdeal) -> RmStatus {
    guard(|| {
        if text.is_null() {
            return Err(Failure(RmStatus::NullPointer, "null text".into()));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| Failure(RmStatus::ParseError, "text is not UTF-8".into()))?;
        let ideal = text::parse_ideal(s)?;
        write_out(out, boxed(ideal))
    })
}

/// # Safety
/// `ideal` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rm_ideal_free(ideal: *mut RmIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// Serializes to the ideal text format. Release with `rm_string_free`.
///
/// # Safety
/// `ideal` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_ideal_to_text(ideal: *const RmIdeal, out: *mut *mut c_char) -> RmStatus {
    guard(|| {
        let i = ideal_ref(ideal)?;
        write_out(out, c_string(text::format_ideal(i)))
    })
}

/// # Safety
/// `ideal` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_ideal_num_generators(ideal: *const RmIdeal, out: *mut usize) -> RmStatus {
    guard(|| write_out(out, ideal_ref(ideal)?.generators().len()))
}

/// # Safety
/// `ideal` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_ideal_krull_dimension(ideal: *const RmIdeal, out: *mut usize) -> RmStatus {
    guard(|| write_out(out, exact::krull_dimension(ideal_ref(ideal)?)))
}

/// Writes `h(1), ..., h(D)` into `out`, which must hold `len >= D` values.
///
/// # Safety
/// `ideal` must be a live handle; `out` must point to `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn rm_ideal_hilbert(ideal: *const RmIdeal, out: *mut u64, len: usize) -> RmStatus {
    guard(|| {
        let h = ideal_ref(ideal)?.hilbert_vector();
        copy_out(&h.0, out, len)
    })
}

unsafe fn copy_out(values: &[u64], out: *mut u64, len: usize) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(RmStatus::NullPointer, "null output buffer".into()));
    }
    if len < values.len() {
        return Err(Failure(
            RmStatus::BufferTooSmall,
            format!("buffer holds {len} values, {} needed", values.len()),
        ));
    }
    ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    Ok(())
}

/// Number of non-constant standard monomials of degree at most D.
///
/// # Safety
/// `ideal` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_ideal_standard_count(ideal: *const RmIdeal, out: *mut u64) -> RmStatus {
    guard(|| {
        let i = ideal_ref(ideal)?;
        write_out(out, i.standard_count(i.max_degree()))
    })
}

/// # Safety
/// `ideal` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_ideal_is_strongly_generic(ideal: *const RmIdeal, out: *mut bool) -> RmStatus {
    guard(|| write_out(out, ideal_ref(ideal)?.is_strongly_generic()))
}

/// # Safety
/// `ideal` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_ideal_radical(ideal: *const RmIdeal, out: *mut *mut RmIdeal) -> RmStatus {
    guard(|| write_out(out, boxed(ideal_ref(ideal)?.radical())))
}

/// Reduced Z/2 Betti numbers `b~_0, ..., b~_{n-1}` of the Stanley–Reisner
/// complex of the ideal, or of its radical when `radical` is true.
///
/// # Safety
/// `ideal` must be a live handle; `out` must point to `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn rm_ideal_homology(ideal: *const RmIdeal, radical: bool, out: *mut u64, len: usize) -> RmStatus {
    guard(|| {
        let i = ideal_ref(ideal)?;
        let betti = if radical {
            topology::radical_homology(i)?
        } else {
            topology::z2_homology(&topology::stanley_reisner_complex(i)?)?
        };
        copy_out(&betti, out, len)
    })
}

/// Exact probability of the ideal under the ER-type model with
/// `p = p_num / p_den`, as the string `"a/b"`. Release with `rm_string_free`.
///
/// # Safety
/// `ideal` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_prob_ideal_er(
    ideal: *const RmIdeal,
    p_num: i64,
    p_den: i64,
    out: *mut *mut c_char,
) -> RmStatus {
    guard(|| {
        let i = ideal_ref(ideal)?;
        if p_den <= 0 {
            return Err(Failure::invalid("denominator must be positive"));
        }
        let params = ErParams::new(i.num_vars(), i.max_degree(), rational(p_num, p_den))?;
        let prob = exact::prob_ideal_er(i, &params)?;
        write_out(out, c_string(prob.to_string()))
    })
}

/// Draw `sample` of stream `stream` under seed `seed` from the ER-type model.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_sample_er(
    n: usize,
    max_degree: u32,
    p: f64,
    seed: u64,
    stream: u64,
    sample: u64,
    out: *mut *mut RmIdeal,
) -> RmStatus {
    guard(|| {
        let params = ErParams::new(n, max_degree, p)?;
        let draw = sampling::sample_er(&params, &Seed::with_stream(seed, stream), sample)?;
        write_out(out, boxed(draw.ideal))
    })
}

/// Limit of the expected number of minimal generators as D grows, to
/// absolute tolerance `eps`; `error_bound` receives the certified bound.
///
/// # Safety
/// `value` and `error_bound` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_expected_beta1_limit(
    n: u32,
    p: f64,
    eps: f64,
    value: *mut f64,
    error_bound: *mut f64,
) -> RmStatus {
    guard(|| {
        let v = asymptotics::expected_beta1_limit(n, p, eps)?;
        write_out(value, v.value)?;
        write_out(error_bound, v.error_bound)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    unsafe fn parse(s: &str) -> *mut RmIdeal {
        let c = CString::new(s).unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(rm_ideal_parse(c.as_ptr(), &mut out), RmStatus::Ok);
        out
    }

    unsafe fn take(s: *mut c_char) -> String {
        let owned = CStr::from_ptr(s).to_str().unwrap().to_string();
        rm_string_free(s);
        owned
    }

    #[test]
    fn round_trip_and_invariants() {
        unsafe {
            let i = parse("2 2\n1 0\n0 2\n");
            let mut k = 9;
            assert_eq!(rm_ideal_krull_dimension(i, &mut k), RmStatus::Ok);
            assert_eq!(k, 0);
            let mut h = [0u64; 2];
            assert_eq!(rm_ideal_hilbert(i, h.as_mut_ptr(), 2), RmStatus::Ok);
            assert_eq!(h, [1, 0]);
            assert_eq!(rm_ideal_hilbert(i, h.as_mut_ptr(), 1), RmStatus::BufferTooSmall);
            let mut s = ptr::null_mut();
            assert_eq!(rm_ideal_to_text(i, &mut s), RmStatus::Ok);
            assert!(take(s).ends_with("2 2\n1 0\n0 2\n"));
            rm_ideal_free(i);
        }
    }

    #[test]
    fn zero_ideal_probability() {
        unsafe {
            let i = parse("2 2\n");
            let mut s = ptr::null_mut();
            assert_eq!(rm_prob_ideal_er(i, 1, 2, &mut s), RmStatus::Ok);
            assert_eq!(take(s), "1/32");
            rm_ideal_free(i);
        }
    }

    #[test]
    fn errors_are_reported() {
        unsafe {
            let bad = CString::new("2 2\n3 0\n").unwrap();
            let mut out = ptr::null_mut();
            assert_eq!(rm_ideal_parse(bad.as_ptr(), &mut out), RmStatus::ParseError);
            assert!(out.is_null());
            assert!(!take(rm_last_error_message()).is_empty());
            assert_eq!(rm_ideal_parse(ptr::null(), &mut out), RmStatus::NullPointer);
            let mut k = 0;
            assert_eq!(rm_ideal_krull_dimension(ptr::null(), &mut k), RmStatus::NullPointer);
            assert_eq!(rm_sample_er(2, 2, 1.5, 0, 0, 0, &mut out), RmStatus::InvalidArgument);
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        unsafe {
            let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
            assert_eq!(rm_sample_er(3, 4, 0.2, 7, 1, 3, &mut a), RmStatus::Ok);
            assert_eq!(rm_sample_er(3, 4, 0.2, 7, 1, 3, &mut b), RmStatus::Ok);
            assert_eq!((*a).inner, (*b).inner);
            rm_ideal_free(a);
            rm_ideal_free(b);
        }
    }
}
