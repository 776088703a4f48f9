#pragma once

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum ItschedStatus {
  ITSCHED_STATUS_OK = 0,
  ITSCHED_STATUS_NULL_POINTER = 1,
  ITSCHED_STATUS_INVALID_UTF8 = 2,
  ITSCHED_STATUS_INVALID_WORKLOAD = 3,
  ITSCHED_STATUS_INVALID_POLICY = 4,
  ITSCHED_STATUS_OUT_OF_RANGE = 5,
  ITSCHED_STATUS_SERIALIZATION = 6,
  ITSCHED_STATUS_PANIC = 7,
} ItschedStatus;

// A finished simulation together with its metrics.
typedef struct ItschedTrace ItschedTrace;

// A validated process set.
typedef struct ItschedWorkload ItschedWorkload;

// One contiguous dispatch of a process.
typedef struct ItschedSegment {
  uint32_t pid;
  uint32_t round;
  uint64_t start;
  uint64_t end;
  uint64_t quantum;
} ItschedSegment;

// Averages are exact fractions; `num / den` in lowest terms.
typedef struct ItschedMetrics {
  uint64_t avg_turnaround_num;
  uint64_t avg_turnaround_den;
  uint64_t avg_waiting_num;
  uint64_t avg_waiting_den;
  uint64_t context_switches;
  uint64_t makespan;
} ItschedMetrics;

typedef struct ItschedProcessMetrics {
  uint32_t pid;
  uint64_t burst;
  uint64_t completion;
  uint64_t turnaround;
  uint64_t waiting;
  uint64_t response;
} ItschedProcessMetrics;

// Message for the most recent failure on this thread, or null.
//
// The pointer stays valid until the next `itsched_*` call on the thread.
const char *itsched_last_error(void);

// Static, NUL-terminated crate version.
const char *itsched_version(void);

// Parse `id,burst,priority` CSV text.
//
// # Safety
// `csv` must be a NUL-terminated string and `out` a writable pointer.
enum ItschedStatus itsched_workload_from_csv(const char *csv, struct ItschedWorkload **out);

// Build a workload from parallel arrays; process ids are 1..=n.
//
// # Safety
// `bursts` and `priorities` must each point to `n` readable elements.
enum ItschedStatus itsched_workload_from_arrays(const uint64_t *bursts,
                                                const uint32_t *priorities,
                                                size_t n,
                                                struct ItschedWorkload **out);

// Number of processes, or 0 for null.
//
// # Safety
// `w` must be null or a live handle.
size_t itsched_workload_len(const struct ItschedWorkload *w);

// # Safety
// `w` must be null or a handle not yet freed.
void itsched_workload_free(struct ItschedWorkload *w);

// Run `policy` over `w`. Names are those accepted by the CLI
// (`proposed`, `pbdrr`, `its-rr`, `rr:<q>`, `srtn`, `fcfs`);
// `static_ots` is the fixed slice for `pbdrr` and `its-rr`.
//
// # Safety
// `w` must be a live handle, `policy` a NUL-terminated string, `out` writable.
enum ItschedStatus itsched_simulate(const struct ItschedWorkload *w,
                                    const char *policy,
                                    uint64_t static_ots,
                                    struct ItschedTrace **out);

// # Safety
// `t` must be null or a handle not yet freed.
void itsched_trace_free(struct ItschedTrace *t);

// Number of dispatch segments, or 0 for null.
//
// # Safety
// `t` must be null or a live handle.
size_t itsched_trace_segment_count(const struct ItschedTrace *t);

// # Safety
// `t` must be a live handle and `out` writable.
enum ItschedStatus itsched_trace_segment(const struct ItschedTrace *t,
                                         size_t index,
                                         struct ItschedSegment *out);

// # Safety
// `t` must be a live handle and `out` writable.
enum ItschedStatus itsched_trace_metrics(const struct ItschedTrace *t, struct ItschedMetrics *out);

// Per-process figures by process id.
//
// # Safety
// `t` must be a live handle and `out` writable.
enum ItschedStatus itsched_trace_process(const struct ItschedTrace *t,
                                         uint32_t pid,
                                         struct ItschedProcessMetrics *out);

// Serialise the trace in the CLI's JSON layout. Free the result with
// [`itsched_string_free`].
//
// # Safety
// `t` must be a live handle and `out` writable.
enum ItschedStatus itsched_trace_to_json(const struct ItschedTrace *t, char **out);

// # Safety
// `s` must be null or a string returned by this library and not yet freed.
void itsched_string_free(char *s);
