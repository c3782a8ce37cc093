//! C ABI for the sademr text processing framework.
//!
//! Conventions:
//!
//! * Handles (`SademrSimplifier`, `SademrStore`) are opaque pointers
//!   created and freed by this library; free functions accept NULL.
//! * Functions that produce strings return a `char*` owned by the caller,
//!   to be released with [`sademr_string_free`]; NULL signals an error.
//! * Status-returning functions use [`SademrStatus`]; anything other than
//!   `Ok` leaves a message retrievable via [`sademr_last_error`], valid on
//!   the calling thread until the next failing call.
//! * Panics never cross the boundary; they turn into `Panic` status/NULL.
//!
//! The header `include/sademr.h` is generated by cbindgen at build time.

use std::cell::RefCell;
use std::collections::HashSet;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;
use std::time::Duration;

use sademr::console::{run_sequential, ConsoleError};
use sademr::engine::{run_job, EngineError, FailurePlan, JobSpec, MapperKind, ReducerKind};
use sademr::simplify::{simplify_line, stem, ConfigError, SimplifierConfig};
use sademr::store::{CorpusStore, StoreConfig, StoreError};

/// Result of every fallible FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SademrStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// An argument failed validation (bad names, bad config, bad spec).
    InvalidArgument = 2,
    /// Input bytes were not valid UTF-8.
    Utf8Error = 3,
    /// A named file or block does not exist.
    NotFound = 4,
    /// The target already exists (stored file, non-empty output dir).
    AlreadyExists = 5,
    /// No reachable replica for a block.
    Unavailable = 6,
    IoError = 7,
    /// The job could not finish (lost all workers, lost a block).
    JobFailed = 8,
    /// An internal panic was caught at the boundary.
    Panic = 9,
}

/// Summary of a finished job.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SademrJobResult {
    pub tasks_total: u64,
    pub tasks_retried: u64,
    pub wall_ms: u64,
}

/// Opaque simplifier configuration handle.
pub struct SademrSimplifier {
    inner: SimplifierConfig,
}

/// Opaque block store handle.
pub struct SademrStore {
    inner: CorpusStore,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: impl Into<String>) {
    let message = message.into();
    let cstring = CString::new(message.replace('\0', "?"))
        .unwrap_or_else(|_| CString::new("error message unavailable").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

/// Message for the most recent failure on this thread, or NULL. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sademr_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null(), |msg| msg.as_ptr())
    })
}

/// Library version as a static string; never freed by the caller.
#[no_mangle]
pub extern "C" fn sademr_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

trait ToStatus {
    fn status(&self) -> SademrStatus;
}

impl ToStatus for StoreError {
    fn status(&self) -> SademrStatus {
        match self {
            StoreError::InvalidUtf8 { .. } => SademrStatus::Utf8Error,
            StoreError::AlreadyExists(_) => SademrStatus::AlreadyExists,
            StoreError::UnknownFile(_) | StoreError::UnknownBlock(_) => SademrStatus::NotFound,
            StoreError::BlockUnavailable(_) => SademrStatus::Unavailable,
            StoreError::InvalidConfig(_) | StoreError::InvalidFileName(_) => {
                SademrStatus::InvalidArgument
            }
            StoreError::CorruptManifest { .. } => SademrStatus::IoError,
            StoreError::Io { .. } => SademrStatus::IoError,
        }
    }
}

impl ToStatus for EngineError {
    fn status(&self) -> SademrStatus {
        match self {
            EngineError::UnknownMapper(_)
            | EngineError::UnknownReducer(_)
            | EngineError::InvalidSpec(_) => SademrStatus::InvalidArgument,
            EngineError::OutputDirNotEmpty(_) => SademrStatus::AlreadyExists,
            EngineError::NoSurvivingWorkers | EngineError::BlockUnavailable(_) => {
                SademrStatus::JobFailed
            }
            EngineError::Store(e) => e.status(),
            EngineError::Io { .. } => SademrStatus::IoError,
        }
    }
}

impl ToStatus for ConsoleError {
    fn status(&self) -> SademrStatus {
        match self {
            ConsoleError::InvalidUtf8 { .. } => SademrStatus::Utf8Error,
            _ => SademrStatus::IoError,
        }
    }
}

impl ToStatus for ConfigError {
    fn status(&self) -> SademrStatus {
        match self {
            ConfigError::Invalid { .. } => SademrStatus::InvalidArgument,
            ConfigError::Io { .. } => SademrStatus::IoError,
        }
    }
}

fn fail<E: ToStatus + std::fmt::Display>(err: E) -> SademrStatus {
    set_last_error(err.to_string());
    err.status()
}

/// NULL-checked &CStr -> &str.
unsafe fn arg_str<'a>(ptr: *const c_char, name: &str) -> Result<&'a str, SademrStatus> {
    if ptr.is_null() {
        set_last_error(format!("{name} must not be NULL"));
        return Err(SademrStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_last_error(format!("{name} is not valid UTF-8"));
        SademrStatus::Utf8Error
    })
}

fn to_cstring(s: String) -> *mut c_char {
    match CString::new(s) {
        Ok(cstring) => cstring.into_raw(),
        Err(_) => {
            set_last_error("output contained an interior NUL byte");
            ptr::null_mut()
        }
    }
}

fn guard_status(body: impl FnOnce() -> SademrStatus) -> SademrStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_last_error("internal panic");
            SademrStatus::Panic
        }
    }
}

fn guard_ptr<T>(body: impl FnOnce() -> *mut T) -> *mut T {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(p) => p,
        Err(_) => {
            set_last_error("internal panic");
            ptr::null_mut()
        }
    }
}

/// Frees a string returned by this library. NULL is a no-op.
///
/// # Safety
/// `s` must have been returned by a sademr function and not freed before.
#[no_mangle]
pub unsafe extern "C" fn sademr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a simplifier from the shipped stopword and suffix data.
#[no_mangle]
pub extern "C" fn sademr_simplifier_new() -> *mut SademrSimplifier {
    guard_ptr(|| {
        Box::into_raw(Box::new(SademrSimplifier {
            inner: SimplifierConfig::shipped(),
        }))
    })
}

/// Creates a simplifier from override files; either path may be NULL to
/// keep the shipped data for that side. NULL return means error.
///
/// # Safety
/// Non-NULL paths must be NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn sademr_simplifier_from_files(
    stopwords_path: *const c_char,
    suffixes_path: *const c_char,
) -> *mut SademrSimplifier {
    guard_ptr(|| {
        let stopwords = if stopwords_path.is_null() {
            None
        } else {
            match arg_str(stopwords_path, "stopwords_path") {
                Ok(s) => Some(PathBuf::from(s)),
                Err(_) => return ptr::null_mut(),
            }
        };
        let suffixes = if suffixes_path.is_null() {
            None
        } else {
            match arg_str(suffixes_path, "suffixes_path") {
                Ok(s) => Some(PathBuf::from(s)),
                Err(_) => return ptr::null_mut(),
            }
        };
        match SimplifierConfig::from_files(stopwords.as_deref(), suffixes.as_deref()) {
            Ok(inner) => Box::into_raw(Box::new(SademrSimplifier { inner })),
            Err(e) => {
                fail(e);
                ptr::null_mut()
            }
        }
    })
}

/// # Safety
/// `simplifier` must come from a sademr constructor; double free is UB.
#[no_mangle]
pub unsafe extern "C" fn sademr_simplifier_free(simplifier: *mut SademrSimplifier) {
    if !simplifier.is_null() {
        drop(Box::from_raw(simplifier));
    }
}

unsafe fn simplifier_ref(
    handle: *const SademrSimplifier,
    default: &mut Option<SimplifierConfig>,
) -> &SimplifierConfig {
    if handle.is_null() {
        default.get_or_insert_with(SimplifierConfig::shipped)
    } else {
        &(*handle).inner
    }
}

/// Simplifies one line; caller frees the result. NULL means error.
///
/// # Safety
/// `simplifier` must be a live handle (or NULL for shipped defaults);
/// `line` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn sademr_simplify_line(
    simplifier: *const SademrSimplifier,
    line: *const c_char,
) -> *mut c_char {
    guard_ptr(|| {
        let line = match arg_str(line, "line") {
            Ok(s) => s,
            Err(_) => return ptr::null_mut(),
        };
        let mut default = None;
        let config = simplifier_ref(simplifier, &mut default);
        to_cstring(simplify_line(line, config))
    })
}

/// Stems one already-lowercased word; caller frees the result.
///
/// # Safety
/// Same contract as [`sademr_simplify_line`].
#[no_mangle]
pub unsafe extern "C" fn sademr_stem(
    simplifier: *const SademrSimplifier,
    word: *const c_char,
) -> *mut c_char {
    guard_ptr(|| {
        let word = match arg_str(word, "word") {
            Ok(s) => s,
            Err(_) => return ptr::null_mut(),
        };
        let mut default = None;
        let config = simplifier_ref(simplifier, &mut default);
        to_cstring(stem(word, config))
    })
}

/// Opens (creating if needed) a block store rooted at `root`. Pass 0 for
/// any numeric knob to take its default (64 MiB blocks, 3 replicas,
/// 7 nodes). NULL return means error.
///
/// # Safety
/// `root` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn sademr_store_open(
    root: *const c_char,
    block_size: u64,
    replication: u32,
    nodes: u32,
) -> *mut SademrStore {
    guard_ptr(|| {
        let root = match arg_str(root, "root") {
            Ok(s) => s,
            Err(_) => return ptr::null_mut(),
        };
        let defaults = StoreConfig::default();
        let config = match StoreConfig::new(
            if block_size == 0 {
                defaults.block_size()
            } else {
                block_size
            },
            if replication == 0 {
                defaults.replication()
            } else {
                replication as usize
            },
            if nodes == 0 {
                defaults.node_count()
            } else {
                nodes as usize
            },
        ) {
            Ok(config) => config,
            Err(e) => {
                fail(e);
                return ptr::null_mut();
            }
        };
        match CorpusStore::open(root, config) {
            Ok(inner) => Box::into_raw(Box::new(SademrStore { inner })),
            Err(e) => {
                fail(e);
                ptr::null_mut()
            }
        }
    })
}

/// # Safety
/// `store` must come from [`sademr_store_open`]; double free is UB.
#[no_mangle]
pub unsafe extern "C" fn sademr_store_free(store: *mut SademrStore) {
    if !store.is_null() {
        drop(Box::from_raw(store));
    }
}

/// Splits `content` (`len` bytes of UTF-8) into replicated blocks stored
/// under `name`.
///
/// # Safety
/// `store` must be live; `name` NUL-terminated; `content` must point to
/// `len` readable bytes (may be NULL only when `len` is 0).
#[no_mangle]
pub unsafe extern "C" fn sademr_store_put_file(
    store: *const SademrStore,
    name: *const c_char,
    content: *const u8,
    len: usize,
) -> SademrStatus {
    guard_status(|| {
        if store.is_null() {
            set_last_error("store must not be NULL");
            return SademrStatus::NullArgument;
        }
        let name = match arg_str(name, "name") {
            Ok(s) => s,
            Err(status) => return status,
        };
        if content.is_null() && len > 0 {
            set_last_error("content must not be NULL when len > 0");
            return SademrStatus::NullArgument;
        }
        let bytes: &[u8] = if len == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(content, len)
        };
        match (*store).inner.put_file(name, bytes) {
            Ok(_) => SademrStatus::Ok,
            Err(e) => fail(e),
        }
    })
}

/// Reconstructs a stored file; caller frees the result. NULL means error.
///
/// # Safety
/// `store` must be live; `name` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn sademr_store_read_file(
    store: *const SademrStore,
    name: *const c_char,
) -> *mut c_char {
    guard_ptr(|| {
        if store.is_null() {
            set_last_error("store must not be NULL");
            return ptr::null_mut();
        }
        let name = match arg_str(name, "name") {
            Ok(s) => s,
            Err(_) => return ptr::null_mut(),
        };
        match (*store).inner.read_file(name) {
            Ok(content) => to_cstring(content),
            Err(e) => {
                fail(e);
                ptr::null_mut()
            }
        }
    })
}

/// Stored file names as one newline-joined string; caller frees it.
///
/// # Safety
/// `store` must be live.
#[no_mangle]
pub unsafe extern "C" fn sademr_store_list_files(store: *const SademrStore) -> *mut c_char {
    guard_ptr(|| {
        if store.is_null() {
            set_last_error("store must not be NULL");
            return ptr::null_mut();
        }
        match (*store).inner.list_files() {
            Ok(names) => to_cstring(names.join("\n")),
            Err(e) => {
                fail(e);
                ptr::null_mut()
            }
        }
    })
}

/// Runs a job over stored files.
///
/// `inputs` is an array of `input_count` stored file names. `reducer` may
/// be NULL for a map-only job. `simplifier` may be NULL for the shipped
/// configuration. `fail_worker < 0` disables failure injection; otherwise
/// that worker dies mid-task after completing `after_tasks` tasks.
/// On success, `*result` (if non-NULL) is filled in.
///
/// # Safety
/// Pointer arguments must satisfy the usual liveness rules; `inputs` must
/// point to `input_count` valid NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn sademr_job_run(
    store: *const SademrStore,
    inputs: *const *const c_char,
    input_count: usize,
    mapper: *const c_char,
    reducer: *const c_char,
    workers: u32,
    output_dir: *const c_char,
    task_overhead_ms: u64,
    fail_worker: i64,
    after_tasks: u64,
    simplifier: *const SademrSimplifier,
    result: *mut SademrJobResult,
) -> SademrStatus {
    guard_status(|| {
        if store.is_null() {
            set_last_error("store must not be NULL");
            return SademrStatus::NullArgument;
        }
        if inputs.is_null() {
            set_last_error("inputs must not be NULL");
            return SademrStatus::NullArgument;
        }
        let mut input_names = Vec::with_capacity(input_count);
        for i in 0..input_count {
            let name_ptr = *inputs.add(i);
            match arg_str(name_ptr, "inputs[]") {
                Ok(s) => input_names.push(s.to_string()),
                Err(status) => return status,
            }
        }
        let mapper: MapperKind = match arg_str(mapper, "mapper") {
            Ok(s) => match s.parse() {
                Ok(kind) => kind,
                Err(e) => return fail::<EngineError>(e),
            },
            Err(status) => return status,
        };
        let reducer: ReducerKind = if reducer.is_null() {
            ReducerKind::None
        } else {
            match arg_str(reducer, "reducer") {
                Ok(s) => match s.parse() {
                    Ok(kind) => kind,
                    Err(e) => return fail::<EngineError>(e),
                },
                Err(status) => return status,
            }
        };
        let output_dir = match arg_str(output_dir, "output_dir") {
            Ok(s) => PathBuf::from(s),
            Err(status) => return status,
        };
        let failure_plan = if fail_worker < 0 {
            None
        } else {
            Some(FailurePlan {
                worker: fail_worker as usize,
                after_tasks: after_tasks as usize,
            })
        };
        let spec = JobSpec {
            inputs: input_names,
            mapper,
            reducer,
            workers: workers as usize,
            output_dir,
            task_overhead: Duration::from_millis(task_overhead_ms),
            failure_plan,
        };
        let mut default = None;
        let config = simplifier_ref(simplifier, &mut default);
        match run_job(&(*store).inner, &spec, config) {
            Ok(job) => {
                if !result.is_null() {
                    *result = SademrJobResult {
                        tasks_total: job.tasks_total as u64,
                        tasks_retried: job.tasks_retried,
                        wall_ms: job.wall_time.as_millis() as u64,
                    };
                }
                SademrStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Sequential baseline over `input_count` file paths, writing simplified
/// lines to `output_path`. On success fills `lines_out` and `wall_ms_out`
/// when non-NULL.
///
/// # Safety
/// `inputs` must point to `input_count` valid NUL-terminated paths;
/// `output_path` must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn sademr_console_run(
    inputs: *const *const c_char,
    input_count: usize,
    output_path: *const c_char,
    simplifier: *const SademrSimplifier,
    lines_out: *mut u64,
    wall_ms_out: *mut u64,
) -> SademrStatus {
    guard_status(|| {
        if inputs.is_null() {
            set_last_error("inputs must not be NULL");
            return SademrStatus::NullArgument;
        }
        let mut paths = Vec::with_capacity(input_count);
        for i in 0..input_count {
            match arg_str(*inputs.add(i), "inputs[]") {
                Ok(s) => paths.push(PathBuf::from(s)),
                Err(status) => return status,
            }
        }
        let output_path = match arg_str(output_path, "output_path") {
            Ok(s) => PathBuf::from(s),
            Err(status) => return status,
        };
        let mut default = None;
        let config = simplifier_ref(simplifier, &mut default);
        match run_sequential(&paths, config, &output_path) {
            Ok(run) => {
                if !lines_out.is_null() {
                    *lines_out = run.lines_processed;
                }
                if !wall_ms_out.is_null() {
                    *wall_ms_out = run.wall_time.as_millis() as u64;
                }
                SademrStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Reads a block through replica failover; `failed_nodes` is an array of
/// node ordinals to treat as down. Caller frees the result.
///
/// # Safety
/// `store` and `file_name` as elsewhere; `failed_nodes` must point to
/// `failed_count` readable u32 values (or be NULL with count 0).
#[no_mangle]
pub unsafe extern "C" fn sademr_store_get_block(
    store: *const SademrStore,
    file_name: *const c_char,
    block_index: usize,
    failed_nodes: *const u32,
    failed_count: usize,
) -> *mut c_char {
    guard_ptr(|| {
        if store.is_null() {
            set_last_error("store must not be NULL");
            return ptr::null_mut();
        }
        let file_name = match arg_str(file_name, "file_name") {
            Ok(s) => s,
            Err(_) => return ptr::null_mut(),
        };
        if failed_nodes.is_null() && failed_count > 0 {
            set_last_error("failed_nodes must not be NULL when failed_count > 0");
            return ptr::null_mut();
        }
        let failed: HashSet<sademr::store::NodeId> = (0..failed_count)
            .map(|i| sademr::store::NodeId::new(*failed_nodes.add(i) as usize))
            .collect();
        let id = sademr::store::BlockId::new(file_name, block_index);
        match (*store).inner.get_block(&id, &failed) {
            Ok(content) => to_cstring(content),
            Err(e) => {
                fail(e);
                ptr::null_mut()
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take_string(ptr: *mut c_char) -> String {
        assert!(!ptr.is_null(), "unexpected NULL: {}", last_error());
        let s = CStr::from_ptr(ptr).to_str().unwrap().to_string();
        sademr_string_free(ptr);
        s
    }

    fn last_error() -> String {
        let ptr = sademr_last_error();
        if ptr.is_null() {
            String::new()
        } else {
            unsafe { CStr::from_ptr(ptr).to_str().unwrap().to_string() }
        }
    }

    #[test]
    fn version_is_a_static_string() {
        let ptr = sademr_version();
        assert!(!ptr.is_null());
        let version = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap();
        assert_eq!(version, env!("CARGO_PKG_VERSION"));
    }

    #[test]
    fn simplify_through_the_boundary() {
        let simplifier = sademr_simplifier_new();
        assert!(!simplifier.is_null());
        let line = cstr("Feshe itiraz davası, ya da kanunda");
        let out = unsafe { take_string(sademr_simplify_line(simplifier, line.as_ptr())) };
        assert_eq!(out, "fesh itiraz dava kanun");
        unsafe { sademr_simplifier_free(simplifier) };
    }

    #[test]
    fn stem_pairs_hold_through_the_boundary() {
        let word = cstr("davası");
        let out = unsafe { take_string(sademr_stem(ptr::null(), word.as_ptr())) };
        assert_eq!(out, "dava");
    }

    #[test]
    fn null_line_sets_error() {
        let out = unsafe { sademr_simplify_line(ptr::null(), ptr::null()) };
        assert!(out.is_null());
        assert!(last_error().contains("line"));
    }

    #[test]
    fn simplifier_from_bad_path_reports_it() {
        let bad = cstr("/no/such/stopword-file");
        let handle = unsafe { sademr_simplifier_from_files(bad.as_ptr(), ptr::null()) };
        assert!(handle.is_null());
        assert!(last_error().contains("/no/such/stopword-file"));
    }

    #[test]
    fn store_round_trip_and_duplicate_detection() {
        let dir = tempfile::tempdir().unwrap();
        let root = cstr(dir.path().join("store").to_str().unwrap());
        let store = unsafe { sademr_store_open(root.as_ptr(), 32, 2, 3) };
        assert!(!store.is_null());

        let name = cstr("doc.txt");
        let content = "uzun bir satır burada\nikinci satır\n";
        let status =
            unsafe { sademr_store_put_file(store, name.as_ptr(), content.as_ptr(), content.len()) };
        assert_eq!(status, SademrStatus::Ok);

        let dup =
            unsafe { sademr_store_put_file(store, name.as_ptr(), content.as_ptr(), content.len()) };
        assert_eq!(dup, SademrStatus::AlreadyExists);

        let listing = unsafe { take_string(sademr_store_list_files(store)) };
        assert_eq!(listing, "doc.txt");

        let read_back = unsafe { take_string(sademr_store_read_file(store, name.as_ptr())) };
        assert_eq!(read_back, content);

        let block = unsafe {
            take_string(sademr_store_get_block(
                store,
                name.as_ptr(),
                0,
                ptr::null(),
                0,
            ))
        };
        assert!(content.starts_with(&block));

        let missing = cstr("missing");
        let gone = unsafe { sademr_store_read_file(store, missing.as_ptr()) };
        assert!(gone.is_null());
        assert!(last_error().contains("missing"));

        unsafe { sademr_store_free(store) };
    }

    #[test]
    fn put_rejects_invalid_utf8_bytes() {
        let dir = tempfile::tempdir().unwrap();
        let root = cstr(dir.path().join("store").to_str().unwrap());
        let store = unsafe { sademr_store_open(root.as_ptr(), 0, 0, 0) };
        let name = cstr("bad");
        let bytes = [0x66u8, 0xff, 0x67];
        let status =
            unsafe { sademr_store_put_file(store, name.as_ptr(), bytes.as_ptr(), bytes.len()) };
        assert_eq!(status, SademrStatus::Utf8Error);
        assert!(last_error().contains("offset 1"));
        unsafe { sademr_store_free(store) };
    }

    #[test]
    fn job_runs_end_to_end_through_the_boundary() {
        let dir = tempfile::tempdir().unwrap();
        let root = cstr(dir.path().join("store").to_str().unwrap());
        let store = unsafe { sademr_store_open(root.as_ptr(), 64, 2, 3) };
        let name = cstr("corpus");
        let content = "işçilerin davası görülür\n".repeat(12);
        let status =
            unsafe { sademr_store_put_file(store, name.as_ptr(), content.as_ptr(), content.len()) };
        assert_eq!(status, SademrStatus::Ok);

        let out_dir = dir.path().join("out");
        let out = cstr(out_dir.to_str().unwrap());
        let mapper = cstr("simplify");
        let inputs = [name.as_ptr()];
        let mut result = SademrJobResult::default();
        let status = unsafe {
            sademr_job_run(
                store,
                inputs.as_ptr(),
                1,
                mapper.as_ptr(),
                ptr::null(),
                2,
                out.as_ptr(),
                0,
                -1,
                0,
                ptr::null(),
                &mut result,
            )
        };
        assert_eq!(status, SademrStatus::Ok, "{}", last_error());
        assert!(result.tasks_total > 1);
        assert_eq!(result.tasks_retried, 0);
        assert!(out_dir.join("_JOB").exists());
        assert!(out_dir.join("part-00000").exists());

        // Unknown mapper comes back as InvalidArgument before anything runs.
        let out2 = cstr(dir.path().join("out2").to_str().unwrap());
        let bogus = cstr("bogus");
        let status = unsafe {
            sademr_job_run(
                store,
                inputs.as_ptr(),
                1,
                bogus.as_ptr(),
                ptr::null(),
                2,
                out2.as_ptr(),
                0,
                -1,
                0,
                ptr::null(),
                ptr::null_mut(),
            )
        };
        assert_eq!(status, SademrStatus::InvalidArgument);

        unsafe { sademr_store_free(store) };
    }

    #[test]
    fn console_runs_through_the_boundary() {
        let dir = tempfile::tempdir().unwrap();
        let input_path = dir.path().join("in.txt");
        std::fs::write(&input_path, "davası kanunda\nusule\n").unwrap();
        let input = cstr(input_path.to_str().unwrap());
        let output_path = dir.path().join("out.txt");
        let output = cstr(output_path.to_str().unwrap());
        let inputs = [input.as_ptr()];
        let mut lines = 0u64;
        let mut wall_ms = 0u64;
        let status = unsafe {
            sademr_console_run(
                inputs.as_ptr(),
                1,
                output.as_ptr(),
                ptr::null(),
                &mut lines,
                &mut wall_ms,
            )
        };
        assert_eq!(status, SademrStatus::Ok, "{}", last_error());
        assert_eq!(lines, 2);
        assert_eq!(
            std::fs::read_to_string(&output_path).unwrap(),
            "dava kanun\nusul\n"
        );
    }

    #[test]
    fn free_functions_accept_null() {
        unsafe {
            sademr_string_free(ptr::null_mut());
            sademr_simplifier_free(ptr::null_mut());
            sademr_store_free(ptr::null_mut());
        }
    }

    #[test]
    fn generated_header_exists_and_names_the_api() {
        let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("include")
            .join("sademr.h");
        let text = std::fs::read_to_string(&header).expect("header generated at build time");
        for symbol in [
            "sademr_simplify_line",
            "sademr_store_open",
            "sademr_job_run",
            "sademr_console_run",
            "SademrStatus",
            "SademrJobResult",
        ] {
            assert!(text.contains(symbol), "header lacks {symbol}");
        }
    }
}
