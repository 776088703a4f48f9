//! Waiting, turnaround and response times plus the context switch count.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::ScheduleTrace;
use crate::workload::{Pid, Workload};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricsError {
    #[error("trace mentions process {0}, which is not in the workload")]
    UnknownPid(Pid),
    #[error("process {pid}: trace runs it for {executed} units, burst is {burst}")]
    BurstMismatch { pid: Pid, executed: u64, burst: u64 },
    #[error("process {0} never completes in the trace")]
    Incomplete(Pid),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProcessMetrics {
    pub pid: Pid,
    pub burst: u64,
    pub completion: u64,
    pub turnaround: u64,
    pub waiting: u64,
    pub response: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricsSummary {
    /// In workload order.
    pub per_process: Vec<ProcessMetrics>,
    pub avg_turnaround: Ratio<u64>,
    pub avg_waiting: Ratio<u64>,
    pub context_switches: u64,
}

impl MetricsSummary {
    pub fn display_avg_turnaround(&self) -> String {
        format_tenths(self.avg_turnaround)
    }

    pub fn display_avg_waiting(&self) -> String {
        format_tenths(self.avg_waiting)
    }

    pub fn process(&self, pid: Pid) -> Option<&ProcessMetrics> {
        self.per_process.iter().find(|m| m.pid == pid)
    }
}

/// Rounds to one decimal place, halves away from zero.
pub fn format_tenths(r: Ratio<u64>) -> String {
    let (num, den) = (*r.numer() as u128, *r.denom() as u128);
    let tenths = (num * 20 + den) / (2 * den);
    format!("{}.{}", tenths / 10, tenths % 10)
}

pub fn compute_metrics(trace: &ScheduleTrace, w: &Workload) -> Result<MetricsSummary, MetricsError> {
    let mut executed: BTreeMap<Pid, u64> = BTreeMap::new();
    let mut first_start: BTreeMap<Pid, u64> = BTreeMap::new();
    for s in &trace.segments {
        if w.get(s.pid).is_none() {
            return Err(MetricsError::UnknownPid(s.pid));
        }
        *executed.entry(s.pid).or_default() += s.duration();
        first_start.entry(s.pid).or_insert(s.start);
    }
    if let Some(&pid) = trace.completion.keys().find(|pid| w.get(**pid).is_none()) {
        return Err(MetricsError::UnknownPid(pid));
    }

    let mut per_process = Vec::with_capacity(w.len());
    for p in w.processes() {
        let ran = executed.get(&p.id).copied().unwrap_or(0);
        if ran != p.burst_time {
            return Err(MetricsError::BurstMismatch { pid: p.id, executed: ran, burst: p.burst_time });
        }
        let completion = *trace.completion.get(&p.id).ok_or(MetricsError::Incomplete(p.id))?;
        // arrival is 0 for everyone
        let turnaround = completion;
        let waiting = turnaround.checked_sub(p.burst_time).ok_or(MetricsError::BurstMismatch {
            pid: p.id,
            executed: completion,
            burst: p.burst_time,
        })?;
        per_process.push(ProcessMetrics {
            pid: p.id,
            burst: p.burst_time,
            completion,
            turnaround,
            waiting,
            response: first_start[&p.id],
        });
    }

    let n = w.len() as u64;
    let tat_sum: u64 = per_process.iter().map(|m| m.turnaround).sum();
    let wt_sum: u64 = per_process.iter().map(|m| m.waiting).sum();
    Ok(MetricsSummary {
        per_process,
        avg_turnaround: Ratio::new(tat_sum, n),
        avg_waiting: Ratio::new(wt_sum, n),
        context_switches: (trace.merged().len() as u64).saturating_sub(1),
    })
}
