//! C interface to `mirror-stokes`.
//!
//! Results live behind opaque handles that the caller releases with the
//! matching `*_free` function. Every fallible call returns an [`MsStatus`];
//! on failure a message is kept per thread and read with
//! [`ms_last_error_message`]. Matrices cross the boundary as row-major
//! `int64_t` buffers.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use mirror_stokes::braid::{search_equivalence, SearchLimits};
use mirror_stokes::euler::gram_matrix;
use mirror_stokes::intmat::IntMatrix;
use mirror_stokes::pipeline::{run_stokes_pipeline, NumericSettings, RunInputs, StokesRun};
use mirror_stokes::{Error, ErrorKind};

/// Status codes. The nonzero error values agree with the exit codes of the
/// command-line tool.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MsStatus {
    Ok = 0,
    Other = 1,
    Parse = 2,
    InadmissibleDirection = 3,
    Tracking = 4,
    Degeneracy = 5,
    NullArgument = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

impl From<ErrorKind> for MsStatus {
    fn from(kind: ErrorKind) -> Self {
        match kind {
            ErrorKind::Parse => MsStatus::Parse,
            ErrorKind::InadmissibleDirection => MsStatus::InadmissibleDirection,
            ErrorKind::Tracking => MsStatus::Tracking,
            ErrorKind::Degeneracy => MsStatus::Degeneracy,
            ErrorKind::Other => MsStatus::Other,
        }
    }
}

/// Output of one Stokes computation.
pub struct MsStokesResult {
    run: StokesRun,
}

/// Outcome of a braid search.
pub struct MsBraidCertificate {
    word: CString,
    signs: Vec<i64>,
    transformed: IntMatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: MsStatus, msg: impl Into<String>) -> MsStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> MsStatus {
    fail(e.kind().into(), e.to_string())
}

fn guard(body: impl FnOnce() -> MsStatus) -> MsStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(s) => s,
        Err(_) => fail(MsStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, MsStatus> {
    if p.is_null() {
        return Err(fail(MsStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(MsStatus::Parse, format!("{what} is not UTF-8")))
}

unsafe fn write_matrix(m: &IntMatrix, out: *mut i64, len: usize) -> MsStatus {
    if out.is_null() {
        return fail(MsStatus::NullArgument, "output buffer is null");
    }
    let need = m.rows() * m.cols();
    if len < need {
        return fail(MsStatus::BufferTooSmall, format!("buffer holds {len} entries, {need} needed"));
    }
    let buf = std::slice::from_raw_parts_mut(out, need);
    for (k, v) in m.to_rows().into_iter().flatten().enumerate() {
        buf[k] = v;
    }
    MsStatus::Ok
}

unsafe fn read_matrix(p: *const i64, n: usize, what: &str) -> Result<IntMatrix, MsStatus> {
    if p.is_null() {
        return Err(fail(MsStatus::NullArgument, format!("{what} is null")));
    }
    let flat = std::slice::from_raw_parts(p, n * n);
    let rows: Vec<Vec<i64>> = flat.chunks(n.max(1)).map(<[i64]>::to_vec).collect();
    IntMatrix::from_rows(&rows).map_err(|e| fail(MsStatus::Parse, e.to_string()))
}

fn into_c_string(s: String) -> *mut c_char {
    match CString::new(s) {
        Ok(c) => c.into_raw(),
        Err(_) => {
            set_error("string contains a nul byte");
            std::ptr::null_mut()
        }
    }
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn ms_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn ms_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}

/// Runs the full pipeline for `f` (e.g. "x + x^-3") in the direction
/// `alpha_phase` (e.g. "pi/8"). The seed is taken from MIRROR_STOKES_SEED
/// when set.
///
/// # Safety
/// `f` and `alpha_phase` must be nul-terminated strings; `out` must be a
/// valid pointer. On success `*out` owns a result for [`ms_stokes_free`].
#[no_mangle]
pub unsafe extern "C" fn ms_stokes_run(f: *const c_char, alpha_phase: *const c_char, out: *mut *mut MsStokesResult) -> MsStatus {
    guard(|| {
        if out.is_null() {
            return fail(MsStatus::NullArgument, "out is null");
        }
        *out = std::ptr::null_mut();
        let f = match read_str(f, "f") {
            Ok(s) => s,
            Err(s) => return s,
        };
        let phase = match read_str(alpha_phase, "alpha_phase") {
            Ok(s) => s,
            Err(s) => return s,
        };
        let inputs = (|| -> mirror_stokes::Result<RunInputs> {
            Ok(RunInputs {
                f: f.to_string(),
                alpha_phase: phase.parse()?,
                settings: NumericSettings::default().with_env_seed()?,
            })
        })();
        match inputs.and_then(|i| run_stokes_pipeline(&i)) {
            Ok(run) => {
                *out = Box::into_raw(Box::new(MsStokesResult { run }));
                MsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Size of the Stokes matrices (the number of sheets), or 0 for null.
///
/// # Safety
/// `r` must be null or a live result.
#[no_mangle]
pub unsafe extern "C" fn ms_stokes_dim(r: *const MsStokesResult) -> usize {
    r.as_ref().map_or(0, |r| r.run.stokes.s_beta.rows())
}

/// Copies S_β into `out` (row-major, `len` ≥ dim²).
///
/// # Safety
/// `r` must be a live result and `out` must point to `len` writable entries.
#[no_mangle]
pub unsafe extern "C" fn ms_stokes_s_beta(r: *const MsStokesResult, out: *mut i64, len: usize) -> MsStatus {
    guard(|| match r.as_ref() {
        Some(r) => write_matrix(&r.run.stokes.s_beta, out, len),
        None => fail(MsStatus::NullArgument, "result is null"),
    })
}

/// Copies S_{−β} into `out` (row-major, `len` ≥ dim²).
///
/// # Safety
/// As for [`ms_stokes_s_beta`].
#[no_mangle]
pub unsafe extern "C" fn ms_stokes_s_minus_beta(r: *const MsStokesResult, out: *mut i64, len: usize) -> MsStatus {
    guard(|| match r.as_ref() {
        Some(r) => write_matrix(&r.run.stokes.s_minus_beta, out, len),
        None => fail(MsStatus::NullArgument, "result is null"),
    })
}

/// The run manifest as JSON, released with [`ms_string_free`]. Null on failure.
///
/// # Safety
/// `r` must be null or a live result.
#[no_mangle]
pub unsafe extern "C" fn ms_stokes_to_json(r: *const MsStokesResult, with_timings: bool) -> *mut c_char {
    let mut text = None;
    let status = guard(|| match r.as_ref() {
        Some(r) => match r.run.manifest.to_json(with_timings) {
            Ok(t) => {
                text = Some(t);
                MsStatus::Ok
            }
            Err(e) => from_error(e),
        },
        None => fail(MsStatus::NullArgument, "result is null"),
    });
    match (status, text) {
        (MsStatus::Ok, Some(t)) => into_c_string(t),
        _ => std::ptr::null_mut(),
    }
}

/// # Safety
/// `r` must be null or a result not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ms_stokes_free(r: *mut MsStokesResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ms_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Gram matrix of the Euler pairing for P(a,b); it has size a+b.
///
/// # Safety
/// `out` must point to `len` writable entries.
#[no_mangle]
pub unsafe extern "C" fn ms_gram_matrix(a: u32, b: u32, out: *mut i64, len: usize) -> MsStatus {
    guard(|| {
        if a == 0 || b == 0 {
            return fail(MsStatus::Parse, "weights must be positive");
        }
        write_matrix(&gram_matrix(a, b).matrix, out, len)
    })
}

/// Searches for a braid word and signs taking `source` to `target`, both
/// n×n row-major. `max_depth` 0 means the default depth.
///
/// # Safety
/// `source` and `target` must point to n² readable entries and `out` must be
/// a valid pointer. On success `*out` is released with [`ms_braid_free`].
#[no_mangle]
pub unsafe extern "C" fn ms_braid_search(
    source: *const i64,
    target: *const i64,
    n: usize,
    max_depth: usize,
    out: *mut *mut MsBraidCertificate,
) -> MsStatus {
    guard(|| {
        if out.is_null() {
            return fail(MsStatus::NullArgument, "out is null");
        }
        *out = std::ptr::null_mut();
        let (s, t) = match (read_matrix(source, n, "source"), read_matrix(target, n, "target")) {
            (Ok(s), Ok(t)) => (s, t),
            (Err(e), _) | (_, Err(e)) => return e,
        };
        let mut limits = SearchLimits::default();
        if max_depth > 0 {
            limits.max_depth = max_depth;
        }
        match search_equivalence(&s, &t, limits) {
            Ok(cert) => {
                let word = CString::new(cert.word.to_string()).expect("letters have no nul");
                *out = Box::into_raw(Box::new(MsBraidCertificate {
                    word,
                    signs: cert.signs,
                    transformed: cert.transformed,
                }));
                MsStatus::Ok
            }
            Err(e) => from_error(e.into()),
        }
    })
}

/// The word, e.g. "b1 b2^-1"; empty for the identity. Owned by the certificate.
///
/// # Safety
/// `c` must be null or a live certificate.
#[no_mangle]
pub unsafe extern "C" fn ms_braid_word(c: *const MsBraidCertificate) -> *const c_char {
    c.as_ref().map_or(std::ptr::null(), |c| c.word.as_ptr())
}

/// Copies the n signs (±1) into `out`.
///
/// # Safety
/// `c` must be a live certificate and `out` must point to `len` writable entries.
#[no_mangle]
pub unsafe extern "C" fn ms_braid_signs(c: *const MsBraidCertificate, out: *mut i64, len: usize) -> MsStatus {
    guard(|| {
        let Some(c) = c.as_ref() else {
            return fail(MsStatus::NullArgument, "certificate is null");
        };
        let row = IntMatrix::from_rows(std::slice::from_ref(&c.signs)).expect("one row");
        write_matrix(&row, out, len)
    })
}

/// Copies the transformed source (equal to the target) into `out`.
///
/// # Safety
/// As for [`ms_braid_signs`], with `len` ≥ n².
#[no_mangle]
pub unsafe extern "C" fn ms_braid_transformed(c: *const MsBraidCertificate, out: *mut i64, len: usize) -> MsStatus {
    guard(|| match c.as_ref() {
        Some(c) => write_matrix(&c.transformed, out, len),
        None => fail(MsStatus::NullArgument, "certificate is null"),
    })
}

/// # Safety
/// `c` must be null or a certificate not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ms_braid_free(c: *mut MsBraidCertificate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}
