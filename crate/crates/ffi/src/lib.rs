//! C ABI over the multhopf library.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free`. Every fallible call returns an
//! [`MhStatus`]; on anything other than `MhStatus::Ok` the message is
//! available from [`mh_last_error`] on the same thread. Strings returned to
//! C are released with [`mh_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use multhopf::hopf::verify::verify_mha_axioms;
use multhopf::instances::resolve_hopf;
use multhopf::report::Report;
use multhopf::suite::{run_suite, Selection, Suite, SuiteConfig};
use multhopf::{Error, RegularMha};

/// Result codes. One per library error kind, plus the boundary failures.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MhStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Panic = 3,
    DomainMismatch = 10,
    NoSolution = 11,
    PositionOutOfRange = 12,
    UncoveredLeg = 13,
    NotFound = 14,
    InfiniteDimensionalNoOracle = 15,
    Undecidable = 16,
    Singular = 17,
    InfiniteDimensional = 18,
    NotUnitalHomomorphism = 19,
    NotHopf = 20,
    UnverifiedAction = 21,
    CommutationFailed = 22,
    NotInner = 23,
    CocycleInvalid = 24,
    NotFiniteDimensional = 25,
    AlgebraMismatch = 26,
    CoactionInvalid = 27,
    UnknownInstance = 28,
    MalformedSpec = 29,
    Io = 30,
}

impl From<&Error> for MhStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::DomainMismatch { .. } => MhStatus::DomainMismatch,
            Error::NoSolution => MhStatus::NoSolution,
            Error::PositionOutOfRange { .. } => MhStatus::PositionOutOfRange,
            Error::UncoveredLeg { .. } => MhStatus::UncoveredLeg,
            Error::NotFound(_) => MhStatus::NotFound,
            Error::InfiniteDimensionalNoOracle(_) => MhStatus::InfiniteDimensionalNoOracle,
            Error::Undecidable(_) => MhStatus::Undecidable,
            Error::Singular(_) => MhStatus::Singular,
            Error::InfiniteDimensional(_) => MhStatus::InfiniteDimensional,
            Error::NotUnitalHomomorphism(_) => MhStatus::NotUnitalHomomorphism,
            Error::NotHopf(_) => MhStatus::NotHopf,
            Error::UnverifiedAction(_) => MhStatus::UnverifiedAction,
            Error::CommutationFailed { .. } => MhStatus::CommutationFailed,
            Error::NotInner(_) => MhStatus::NotInner,
            Error::CocycleInvalid(_) => MhStatus::CocycleInvalid,
            Error::NotFiniteDimensional(_) => MhStatus::NotFiniteDimensional,
            Error::AlgebraMismatch(_) => MhStatus::AlgebraMismatch,
            Error::CoactionInvalid(_) => MhStatus::CoactionInvalid,
            Error::UnknownInstance(_) => MhStatus::UnknownInstance,
            Error::MalformedSpec { .. } => MhStatus::MalformedSpec,
            Error::Io(_) => MhStatus::Io,
        }
    }
}

/// Opaque handle to a regular multiplier Hopf algebra.
pub struct MhInstance(RegularMha);

/// Opaque handle to a verification report.
pub struct MhReport(Report);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Runs `f` behind the boundary: clears the last error, converts library
/// errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (MhStatus, String)>) -> MhStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MhStatus::Ok,
        Ok(Err((code, msg))) => {
            set_error(msg);
            code
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(msg);
            MhStatus::Panic
        }
    }
}

fn lib(e: Error) -> (MhStatus, String) {
    ((&e).into(), format!("{}: {}", e.kind(), e))
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, (MhStatus, String)> {
    if p.is_null() {
        return Err((MhStatus::NullPointer, format!("{} is null", name)));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (MhStatus::InvalidUtf8, format!("{} is not UTF-8", name)))
}

unsafe fn opt_str_arg<'a>(p: *const c_char, name: &str) -> Result<Option<&'a str>, (MhStatus, String)> {
    if p.is_null() {
        Ok(None)
    } else {
        str_arg(p, name).map(Some)
    }
}

fn non_null<T>(p: *const T, name: &str) -> Result<(), (MhStatus, String)> {
    if p.is_null() {
        Err((MhStatus::NullPointer, format!("{} is null", name)))
    } else {
        Ok(())
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

/// Message of the last failed call on this thread, or null. Owned by the
/// library and valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn mh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn mh_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Resolves an instance id such as `C[S3]` or `dual(K(Z3))`, or a path to
/// an instance JSON file.
///
/// # Safety
/// `id` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mh_instance_new(id: *const c_char, out: *mut *mut MhInstance) -> MhStatus {
    guard(|| {
        non_null(out, "out")?;
        let id = str_arg(id, "id")?;
        let h = resolve_hopf(id).map_err(lib)?;
        *out = Box::into_raw(Box::new(MhInstance(h)));
        Ok(())
    })
}

/// Releases an instance. Null is ignored.
///
/// # Safety
/// `h` must come from [`mh_instance_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mh_instance_free(h: *mut MhInstance) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Canonical id of the instance; free with [`mh_string_free`].
///
/// # Safety
/// `h` must be a live instance handle.
#[no_mangle]
pub unsafe extern "C" fn mh_instance_id(h: *const MhInstance) -> *mut c_char {
    match h.as_ref() {
        Some(h) => into_c_string(h.0.id()),
        None => ptr::null_mut(),
    }
}

/// Writes the dimension to `dim` and returns `Ok` for finite instances;
/// returns `InfiniteDimensional` otherwise.
///
/// # Safety
/// `h` must be a live instance handle; `dim` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mh_instance_dim(h: *const MhInstance, dim: *mut usize) -> MhStatus {
    guard(|| {
        non_null(dim, "dim")?;
        let h = h.as_ref().ok_or((MhStatus::NullPointer, "instance is null".into()))?;
        match h.0.dim() {
            Some(n) => {
                *dim = n;
                Ok(())
            }
            None => Err(lib(Error::InfiniteDimensional(h.0.id()))),
        }
    })
}

/// Checks the multiplier Hopf algebra axioms on the basis, or on the window
/// of the given radius for countable instances.
///
/// # Safety
/// `h` must be a live instance handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mh_instance_verify_axioms(
    h: *const MhInstance,
    radius: i64,
    out: *mut *mut MhReport,
) -> MhStatus {
    guard(|| {
        non_null(out, "out")?;
        let h = h.as_ref().ok_or((MhStatus::NullPointer, "instance is null".into()))?;
        let keys = h.0.finite_basis().unwrap_or_else(|| h.0.sample_basis(radius));
        *out = Box::into_raw(Box::new(MhReport(verify_mha_axioms(&h.0, &keys))));
        Ok(())
    })
}

/// Runs a named suite (`axioms`, `integrals`, `actions`, `smash`, `pairing`,
/// `duality` or `all`). `instance` and `group` narrow the selection and may
/// be null; `radius` is the window for countable instances.
///
/// # Safety
/// String arguments must be nul-terminated or null where allowed; `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn mh_run_suite(
    suite: *const c_char,
    instance: *const c_char,
    group: *const c_char,
    radius: i64,
    seed: u64,
    out: *mut *mut MhReport,
) -> MhStatus {
    guard(|| {
        non_null(out, "out")?;
        let suite: Suite = str_arg(suite, "suite")?.parse().map_err(lib)?;
        let sel = Selection {
            instances: opt_str_arg(instance, "instance")?.map(|s| vec![s.to_string()]).unwrap_or_default(),
            groups: opt_str_arg(group, "group")?
                .map(|s| vec![s.to_string()])
                .unwrap_or_else(|| Selection::default().groups),
            ..Selection::default()
        };
        let cfg = SuiteConfig { radius, seed, ..SuiteConfig::default() };
        let report = run_suite(suite, &sel, &cfg).map_err(lib)?;
        *out = Box::into_raw(Box::new(MhReport(report)));
        Ok(())
    })
}

/// Releases a report. Null is ignored.
///
/// # Safety
/// `r` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mh_report_free(r: *mut MhReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Number of entries; 0 for null.
///
/// # Safety
/// `r` must be a live report handle or null.
#[no_mangle]
pub unsafe extern "C" fn mh_report_len(r: *const MhReport) -> usize {
    r.as_ref().map_or(0, |r| r.0.entries.len())
}

/// Number of failing entries; 0 for null.
///
/// # Safety
/// `r` must be a live report handle or null.
#[no_mangle]
pub unsafe extern "C" fn mh_report_failures(r: *const MhReport) -> usize {
    r.as_ref().map_or(0, |r| r.0.failures().len())
}

/// True when no entry failed.
///
/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn mh_report_all_passed(r: *const MhReport) -> bool {
    r.as_ref().is_some_and(|r| r.0.all_passed())
}

/// The report as JSON lines; free with [`mh_string_free`].
///
/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn mh_report_json(r: *const MhReport) -> *mut c_char {
    match r.as_ref() {
        Some(r) => into_c_string(r.0.to_json_lines()),
        None => ptr::null_mut(),
    }
}
