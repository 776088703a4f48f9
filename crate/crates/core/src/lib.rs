//! Deterministic single-CPU scheduling simulator.
//!
//! The centerpiece is a dynamic round robin whose per-round dispatch order is
//! shortest-remaining-time-next and whose quantum grows from a per-process
//! intelligent time slice (ITS). The ITS is built from an original time slice
//! derived from the workload's burst range and the process priority, plus
//! priority, shortness and context-switch components.
//!
//! All processes arrive at t = 0 and the CPU never idles, so a schedule is a
//! tiling of `[0, Σ bursts)` by dispatch segments.
//!
//! ```
//! use itsched::{simulate, compute_metrics, SchedulingPolicy, Workload};
//!
//! let w = Workload::from_bursts_and_priorities(&[5, 12, 16, 21, 23], &[2, 3, 1, 4, 5]).unwrap();
//! let trace = simulate(&w, &SchedulingPolicy::static_its_rr(4));
//! let m = compute_metrics(&trace, &w).unwrap();
//! assert_eq!(m.display_avg_turnaround(), "51.2");
//! assert_eq!(m.context_switches, 19);
//! ```

pub mod cli;
pub mod engine;
pub mod metrics;
pub mod reference;
pub mod report;
pub mod schedulers;
pub mod timeslice;
pub mod workload;

pub use engine::{proposed_quantum, simulate, DispatchSegment, ScheduleTrace};
pub use metrics::{compute_metrics, format_tenths, MetricsError, MetricsSummary, ProcessMetrics};
pub use schedulers::{DispatchOrder, PolicyError, QuantumRule, SchedulingPolicy, SliceBasis};
pub use timeslice::{
    compute_components, compute_components_static, compute_csc, compute_ots, compute_pc, compute_range, compute_sc,
    BurstRange, SliceComponents,
};
pub use workload::{generate_workload, BurstOrder, ProcessSpec, Workload, WorkloadError};
