//! Multi-policy comparisons and their text/JSON/CSV renderings.

mod export;
mod gantt;
mod table;

use std::thread;

pub use export::{
    comparison_csv, components_csv, export_json, read_json, segments_csv, AverageDoc, ExportError, MetricsDoc,
    ReportDoc, RowDoc, TraceDoc,
};
pub use gantt::{boundaries, render_gantt};
pub use table::{comparison_table, component_notes, components_table, fmt_table, process_table, quanta_table};

use crate::engine::{simulate, ScheduleTrace};
use crate::metrics::{compute_metrics, MetricsError, MetricsSummary};
use crate::schedulers::SchedulingPolicy;
use crate::workload::Workload;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonRow {
    pub policy: String,
    pub metrics: MetricsSummary,
    pub trace: Option<ScheduleTrace>,
}

/// One workload, one row per policy, in the order the policies were given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonReport {
    pub workload: Workload,
    pub rows: Vec<ComparisonRow>,
}

impl ComparisonReport {
    pub fn row(&self, policy: &str) -> Option<&ComparisonRow> {
        self.rows.iter().find(|r| r.policy == policy)
    }
}

/// Simulates every policy on `w` (concurrently) and collects rows in input order.
pub fn compare(
    w: &Workload,
    policies: &[SchedulingPolicy],
    keep_traces: bool,
) -> Result<ComparisonReport, MetricsError> {
    let results: Vec<Result<ComparisonRow, MetricsError>> = thread::scope(|s| {
        let handles: Vec<_> = policies
            .iter()
            .map(|policy| {
                s.spawn(move || {
                    let trace = simulate(w, policy);
                    let metrics = compute_metrics(&trace, w)?;
                    Ok(ComparisonRow { policy: policy.name(), metrics, trace: keep_traces.then_some(trace) })
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("simulation thread panicked")).collect()
    });
    Ok(ComparisonReport { workload: w.clone(), rows: results.into_iter().collect::<Result<_, _>>()? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    #[test]
    fn rows_follow_input_order() {
        let w = Workload::from_bursts_and_priorities(&[5, 12, 16, 21, 23], &[2, 3, 1, 4, 5]).unwrap();
        let policies = ["fcfs", "proposed", "its-rr", "srtn"].map(|n| SchedulingPolicy::from_name(n, 4).unwrap());
        let r = compare(&w, &policies, false).unwrap();
        let names: Vec<&str> = r.rows.iter().map(|r| r.policy.as_str()).collect();
        assert_eq!(names, ["fcfs", "proposed", "its-rr", "srtn"]);
        let mean_burst = Ratio::new(w.total_burst(), w.len() as u64);
        for row in &r.rows {
            assert_eq!(row.metrics.avg_waiting + mean_burst, row.metrics.avg_turnaround);
            assert!(row.trace.is_none());
        }
    }
}
