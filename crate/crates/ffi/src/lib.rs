//! C ABI over `lpalg`.
//!
//! Seeds cross the boundary as opaque `LpSeed` handles; reports come back as
//! JSON strings owned by the caller and released with `lp_string_free`. Every
//! fallible call returns an `LpStatus`, and on failure the message is kept
//! per thread for `lp_last_error_message`. Directions are 0-based.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use lpalg::bounds::{check_condition_1_2, format_laurent, GeneratorRing, SeedContext};
use lpalg::budget::base_budget;
use lpalg::laurent::check_laurent_phenomenon;
use lpalg::mutation::mutate;
use lpalg::poly::Poly;
use lpalg::seed::{exchange_laurent, LPSeed};
use lpalg::Error;
use serde_json::{json, Value};

/// Opaque seed handle.
pub struct LpSeed(LPSeed);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    InvalidSeed = 5,
    Condition = 6,
    Rejected = 7,
    Consistency = 8,
    Io = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpBound {
    Upper = 0,
    Lower = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpMembership {
    NotMember = 0,
    Member = 1,
    /// The lower-bound search ran out of budget.
    Undecided = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> LpStatus {
    match e {
        Error::Domain(_) => LpStatus::Domain,
        Error::Parse(_) => LpStatus::Parse,
        Error::InvalidSeed(_) => LpStatus::InvalidSeed,
        Error::Condition(_) => LpStatus::Condition,
        Error::Rejected(_) => LpStatus::Rejected,
        Error::Consistency(_) => LpStatus::Consistency,
        Error::Io(_) => LpStatus::Io,
    }
}

enum Failure {
    Status(LpStatus, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Run `f`, translating errors and panics into a status and the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> LpStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LpStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Status(s, msg))) => {
            set_error(msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            LpStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure::Status(LpStatus::NullArgument, format!("{what} is null"))
}

unsafe fn seed_ref<'a>(s: *const LpSeed) -> Result<&'a LPSeed, Failure> {
    s.as_ref().map(|s| &s.0).ok_or_else(|| null("seed"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Status(LpStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

fn give_string(v: &Value, out: &mut *mut c_char) -> Result<(), Failure> {
    let text = serde_json::to_string(v).map_err(|e| Failure::Lib(e.into()))?;
    *out = CString::new(text).expect("JSON has no nul").into_raw();
    Ok(())
}

/// Parse a seed from its JSON file format.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_seed_from_json(json: *const c_char, out: *mut *mut LpSeed) -> LpStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = std::ptr::null_mut();
        let s = LPSeed::from_json_str(str_arg(json, "json")?)?;
        *out = Box::into_raw(Box::new(LpSeed(s)));
        Ok(())
    })
}

/// Release a seed. Null is ignored.
///
/// # Safety
/// `seed` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn lp_seed_free(seed: *mut LpSeed) {
    if !seed.is_null() {
        drop(Box::from_raw(seed));
    }
}

/// Number of active variables.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn lp_seed_rank(seed: *const LpSeed, out: *mut usize) -> LpStatus {
    guard(|| {
        *out_arg(out, "out")? = seed_ref(seed)?.rank();
        Ok(())
    })
}

/// Mutate in direction `k` into a new seed; the input is left unchanged.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn lp_seed_mutate(seed: *const LpSeed, k: usize, out: *mut *mut LpSeed) -> LpStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = std::ptr::null_mut();
        let m = mutate(seed_ref(seed)?, k)?;
        *out = Box::into_raw(Box::new(LpSeed(m)));
        Ok(())
    })
}

/// The seed in its JSON file format.
///
/// # Safety
/// Pointers must be valid; free the result with `lp_string_free`.
#[no_mangle]
pub unsafe extern "C" fn lp_seed_to_json(seed: *const LpSeed, out: *mut *mut c_char) -> LpStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        give_string(&seed_ref(seed)?.to_json(), out)
    })
}

/// `{"hat": {var: F̂}, "denominators": {var: F/F̂}, "trivial": bool}`.
///
/// # Safety
/// Pointers must be valid; free the result with `lp_string_free`.
#[no_mangle]
pub unsafe extern "C" fn lp_seed_hat_json(seed: *const LpSeed, out: *mut *mut c_char) -> LpStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let s = seed_ref(seed)?;
        let h = exchange_laurent(s)?;
        let mut hats = serde_json::Map::new();
        let mut dens = serde_json::Map::new();
        for j in 0..s.rank() {
            hats.insert(s.name(j).into(), json!(format_laurent(&h.hat[j], s.names())));
            dens.insert(s.name(j).into(), json!(s.format(&Poly::monomial(h.denominator(j, s.nvars())))));
        }
        give_string(&json!({ "hat": hats, "denominators": dens, "trivial": h.is_trivial() }), out)
    })
}

/// Check every cluster variable reached by words up to `max_len`; `out` is 1
/// when all of them are Laurent in the initial cluster.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn lp_laurent_check(seed: *const LpSeed, max_len: usize, out: *mut i32) -> LpStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = check_laurent_phenomenon(seed_ref(seed)?, max_len)?.all_laurent as i32;
        Ok(())
    })
}

/// The bound condition clause by clause, as JSON.
///
/// # Safety
/// Pointers must be valid; free the result with `lp_string_free`.
#[no_mangle]
pub unsafe extern "C" fn lp_condition12_json(seed: *const LpSeed, out: *mut *mut c_char) -> LpStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let r = check_condition_1_2(seed_ref(seed)?)?;
        give_string(&serde_json::to_value(&r).map_err(|e| Failure::Lib(e.into()))?, out)
    })
}

/// Membership of `expr`, written in the cluster variables, their primed
/// partners `x'` and the frozen variables, in the upper or lower bound.
/// `which` takes an `LpBound` value.
///
/// # Safety
/// Pointers must be valid and `expr` nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn lp_member(seed: *const LpSeed, expr: *const c_char, which: i32, out: *mut LpMembership) -> LpStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let s = seed_ref(seed)?;
        let expr = str_arg(expr, "expr")?;
        let which = match which {
            0 => LpBound::Upper,
            1 => LpBound::Lower,
            other => return Err(Failure::Lib(Error::Domain(format!("unknown bound {other}")))),
        };
        let ctx = SeedContext::new(s)?;
        let y = ctx.expand_generators(&GeneratorRing::new(s).parse(expr)?)?;
        *out = match which {
            LpBound::Upper => {
                if ctx.upper_member_ratfn(&y)?.member {
                    LpMembership::Member
                } else {
                    LpMembership::NotMember
                }
            }
            LpBound::Lower => match ctx.lower_member(&y, base_budget() as usize)? {
                lpalg::bounds::LowerVerdict::Member(_) => LpMembership::Member,
                lpalg::bounds::LowerVerdict::NonMember { .. } => LpMembership::NotMember,
                lpalg::bounds::LowerVerdict::BudgetExhausted { .. } => LpMembership::Undecided,
            },
        };
        Ok(())
    })
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn lp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn lp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}
