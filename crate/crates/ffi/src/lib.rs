//! C ABI over the `itsched` simulator.
//!
//! Handles are opaque and owned by the caller once returned; release them
//! with the matching `*_free`. Every fallible call returns an
//! [`ItschedStatus`] and, on failure, stores a message retrievable with
//! [`itsched_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use itsched::report::TraceDoc;
use itsched::{compute_metrics, simulate, MetricsSummary, ScheduleTrace, SchedulingPolicy, Workload};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ItschedStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidWorkload = 3,
    InvalidPolicy = 4,
    OutOfRange = 5,
    Serialization = 6,
    Panic = 7,
}

/// A validated process set.
pub struct ItschedWorkload {
    inner: Workload,
}

/// A finished simulation together with its metrics.
pub struct ItschedTrace {
    workload: Workload,
    policy: String,
    trace: ScheduleTrace,
    metrics: MetricsSummary,
}

/// One contiguous dispatch of a process.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ItschedSegment {
    pub pid: u32,
    pub round: u32,
    pub start: u64,
    pub end: u64,
    pub quantum: u64,
}

/// Averages are exact fractions; `num / den` in lowest terms.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ItschedMetrics {
    pub avg_turnaround_num: u64,
    pub avg_turnaround_den: u64,
    pub avg_waiting_num: u64,
    pub avg_waiting_den: u64,
    pub context_switches: u64,
    pub makespan: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ItschedProcessMetrics {
    pub pid: u32,
    pub burst: u64,
    pub completion: u64,
    pub turnaround: u64,
    pub waiting: u64,
    pub response: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: ItschedStatus, msg: impl Into<String>) -> ItschedStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> ItschedStatus) -> ItschedStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            fail(ItschedStatus::Panic, msg)
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, ItschedStatus> {
    if s.is_null() {
        return Err(fail(ItschedStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(ItschedStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

macro_rules! non_null {
    ($p:expr, $name:literal) => {
        if $p.is_null() {
            return fail(ItschedStatus::NullPointer, concat!($name, " is null"));
        }
    };
}

/// Message for the most recent failure on this thread, or null.
///
/// The pointer stays valid until the next `itsched_*` call on the thread.
#[no_mangle]
pub extern "C" fn itsched_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static, NUL-terminated crate version.
#[no_mangle]
pub extern "C" fn itsched_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parse `id,burst,priority` CSV text.
///
/// # Safety
/// `csv` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn itsched_workload_from_csv(
    csv: *const c_char,
    out: *mut *mut ItschedWorkload,
) -> ItschedStatus {
    guard(|| {
        non_null!(out, "out");
        *out = ptr::null_mut();
        let text = match read_str(csv, "csv") {
            Ok(t) => t,
            Err(s) => return s,
        };
        match Workload::parse_csv(text) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(ItschedWorkload { inner }));
                ItschedStatus::Ok
            }
            Err(e) => fail(ItschedStatus::InvalidWorkload, e.to_string()),
        }
    })
}

/// Build a workload from parallel arrays; process ids are 1..=n.
///
/// # Safety
/// `bursts` and `priorities` must each point to `n` readable elements.
#[no_mangle]
pub unsafe extern "C" fn itsched_workload_from_arrays(
    bursts: *const u64,
    priorities: *const u32,
    n: usize,
    out: *mut *mut ItschedWorkload,
) -> ItschedStatus {
    guard(|| {
        non_null!(out, "out");
        *out = ptr::null_mut();
        if n == 0 {
            return fail(ItschedStatus::InvalidWorkload, "workload has no processes");
        }
        non_null!(bursts, "bursts");
        non_null!(priorities, "priorities");
        let b = std::slice::from_raw_parts(bursts, n);
        let p = std::slice::from_raw_parts(priorities, n);
        match Workload::from_bursts_and_priorities(b, p) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(ItschedWorkload { inner }));
                ItschedStatus::Ok
            }
            Err(e) => fail(ItschedStatus::InvalidWorkload, e.to_string()),
        }
    })
}

/// Number of processes, or 0 for null.
///
/// # Safety
/// `w` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn itsched_workload_len(w: *const ItschedWorkload) -> usize {
    w.as_ref().map_or(0, |w| w.inner.len())
}

/// # Safety
/// `w` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn itsched_workload_free(w: *mut ItschedWorkload) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Run `policy` over `w`. Names are those accepted by the CLI
/// (`proposed`, `pbdrr`, `its-rr`, `rr:<q>`, `srtn`, `fcfs`);
/// `static_ots` is the fixed slice for `pbdrr` and `its-rr`.
///
/// # Safety
/// `w` must be a live handle, `policy` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn itsched_simulate(
    w: *const ItschedWorkload,
    policy: *const c_char,
    static_ots: u64,
    out: *mut *mut ItschedTrace,
) -> ItschedStatus {
    guard(|| {
        non_null!(out, "out");
        *out = ptr::null_mut();
        non_null!(w, "workload");
        let name = match read_str(policy, "policy") {
            Ok(t) => t,
            Err(s) => return s,
        };
        let policy = match SchedulingPolicy::from_name(name, static_ots) {
            Ok(p) => p,
            Err(e) => return fail(ItschedStatus::InvalidPolicy, e.to_string()),
        };
        let workload = (*w).inner.clone();
        let trace = simulate(&workload, &policy);
        let metrics = compute_metrics(&trace, &workload).expect("engine trace is complete");
        let t = ItschedTrace { workload, policy: policy.name(), trace, metrics };
        *out = Box::into_raw(Box::new(t));
        ItschedStatus::Ok
    })
}

/// # Safety
/// `t` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn itsched_trace_free(t: *mut ItschedTrace) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of dispatch segments, or 0 for null.
///
/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn itsched_trace_segment_count(t: *const ItschedTrace) -> usize {
    t.as_ref().map_or(0, |t| t.trace.segments.len())
}

/// # Safety
/// `t` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn itsched_trace_segment(
    t: *const ItschedTrace,
    index: usize,
    out: *mut ItschedSegment,
) -> ItschedStatus {
    guard(|| {
        non_null!(t, "trace");
        non_null!(out, "out");
        let segs = &(*t).trace.segments;
        let Some(s) = segs.get(index) else {
            return fail(ItschedStatus::OutOfRange, format!("segment {index} of {}", segs.len()));
        };
        *out = ItschedSegment { pid: s.pid, round: s.round, start: s.start, end: s.end, quantum: s.quantum_assigned };
        ItschedStatus::Ok
    })
}

/// # Safety
/// `t` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn itsched_trace_metrics(t: *const ItschedTrace, out: *mut ItschedMetrics) -> ItschedStatus {
    guard(|| {
        non_null!(t, "trace");
        non_null!(out, "out");
        let t = &*t;
        let m = &t.metrics;
        *out = ItschedMetrics {
            avg_turnaround_num: *m.avg_turnaround.numer(),
            avg_turnaround_den: *m.avg_turnaround.denom(),
            avg_waiting_num: *m.avg_waiting.numer(),
            avg_waiting_den: *m.avg_waiting.denom(),
            context_switches: m.context_switches,
            makespan: t.trace.makespan(),
        };
        ItschedStatus::Ok
    })
}

/// Per-process figures by process id.
///
/// # Safety
/// `t` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn itsched_trace_process(
    t: *const ItschedTrace,
    pid: u32,
    out: *mut ItschedProcessMetrics,
) -> ItschedStatus {
    guard(|| {
        non_null!(t, "trace");
        non_null!(out, "out");
        let Some(p) = (*t).metrics.process(pid) else {
            return fail(ItschedStatus::OutOfRange, format!("no process with id {pid}"));
        };
        *out = ItschedProcessMetrics {
            pid: p.pid,
            burst: p.burst,
            completion: p.completion,
            turnaround: p.turnaround,
            waiting: p.waiting,
            response: p.response,
        };
        ItschedStatus::Ok
    })
}

/// Serialise the trace in the CLI's JSON layout. Free the result with
/// [`itsched_string_free`].
///
/// # Safety
/// `t` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn itsched_trace_to_json(t: *const ItschedTrace, out: *mut *mut c_char) -> ItschedStatus {
    guard(|| {
        non_null!(out, "out");
        *out = ptr::null_mut();
        non_null!(t, "trace");
        let t = &*t;
        let doc = TraceDoc::new(&t.workload, &t.policy, &t.trace, Some(&t.metrics));
        match doc.to_json().map(CString::new) {
            Ok(Ok(s)) => {
                *out = s.into_raw();
                ItschedStatus::Ok
            }
            Ok(Err(e)) => fail(ItschedStatus::Serialization, e.to_string()),
            Err(e) => fail(ItschedStatus::Serialization, e.to_string()),
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn itsched_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
