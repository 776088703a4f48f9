//! Machine-readable exports.
//!
//! JSON is written with sorted keys. Averages carry a one-decimal display
//! string next to the exact numerator and denominator.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use num_rational::Ratio;
use serde::{de::DeserializeOwned, Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{DispatchSegment, ScheduleTrace};
use crate::metrics::{format_tenths, MetricsSummary, ProcessMetrics};
use crate::timeslice::SliceComponents;
use crate::workload::{Pid, ProcessSpec, Workload, WorkloadError};

use super::{ComparisonReport, ComparisonRow};

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("writing {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Workload(#[from] WorkloadError),
    #[error("inconsistent document: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AverageDoc {
    pub display: String,
    pub num: u64,
    pub den: u64,
}

impl From<Ratio<u64>> for AverageDoc {
    fn from(r: Ratio<u64>) -> Self {
        Self { display: format_tenths(r), num: *r.numer(), den: *r.denom() }
    }
}

impl TryFrom<&AverageDoc> for Ratio<u64> {
    type Error = ExportError;

    fn try_from(a: &AverageDoc) -> Result<Self, ExportError> {
        if a.den == 0 {
            return Err(ExportError::Inconsistent("zero denominator".into()));
        }
        Ok(Ratio::new(a.num, a.den))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricsDoc {
    pub avg_tat: AverageDoc,
    pub avg_wt: AverageDoc,
    pub context_switches: u64,
    pub processes: Vec<ProcessMetrics>,
}

impl From<&MetricsSummary> for MetricsDoc {
    fn from(m: &MetricsSummary) -> Self {
        Self {
            avg_tat: m.avg_turnaround.into(),
            avg_wt: m.avg_waiting.into(),
            context_switches: m.context_switches,
            processes: m.per_process.clone(),
        }
    }
}

impl TryFrom<&MetricsDoc> for MetricsSummary {
    type Error = ExportError;

    fn try_from(d: &MetricsDoc) -> Result<Self, ExportError> {
        Ok(Self {
            per_process: d.processes.clone(),
            avg_turnaround: (&d.avg_tat).try_into()?,
            avg_waiting: (&d.avg_wt).try_into()?,
            context_switches: d.context_switches,
        })
    }
}

/// One simulated schedule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDoc {
    pub workload: Vec<ProcessSpec>,
    pub policy: String,
    pub segments: Vec<DispatchSegment>,
    pub completion: BTreeMap<Pid, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metrics: Option<MetricsDoc>,
}

impl TraceDoc {
    pub fn new(w: &Workload, policy: &str, trace: &ScheduleTrace, metrics: Option<&MetricsSummary>) -> Self {
        Self {
            workload: w.processes().to_vec(),
            policy: policy.to_string(),
            segments: trace.segments.clone(),
            completion: trace.completion.clone(),
            metrics: metrics.map(MetricsDoc::from),
        }
    }

    pub fn into_parts(self) -> Result<(Workload, String, ScheduleTrace), ExportError> {
        let w = Workload::new(self.workload)?;
        let trace = ScheduleTrace { segments: self.segments, completion: self.completion };
        Ok((w, self.policy, trace))
    }

    pub fn to_json(&self) -> Result<String, ExportError> {
        to_sorted_json(self)
    }

    pub fn from_json(text: &str) -> Result<Self, ExportError> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowDoc {
    pub policy: String,
    pub metrics: MetricsDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segments: Option<Vec<DispatchSegment>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub completion: Option<BTreeMap<Pid, u64>>,
}

/// A multi-policy comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub workload: Vec<ProcessSpec>,
    pub rows: Vec<RowDoc>,
}

impl From<&ComparisonReport> for ReportDoc {
    fn from(r: &ComparisonReport) -> Self {
        Self {
            workload: r.workload.processes().to_vec(),
            rows: r
                .rows
                .iter()
                .map(|row| RowDoc {
                    policy: row.policy.clone(),
                    metrics: (&row.metrics).into(),
                    segments: row.trace.as_ref().map(|t| t.segments.clone()),
                    completion: row.trace.as_ref().map(|t| t.completion.clone()),
                })
                .collect(),
        }
    }
}

impl ReportDoc {
    pub fn into_report(self) -> Result<ComparisonReport, ExportError> {
        let workload = Workload::new(self.workload)?;
        let rows = self
            .rows
            .into_iter()
            .map(|row| {
                let trace = match (row.segments, row.completion) {
                    (Some(segments), Some(completion)) => Some(ScheduleTrace { segments, completion }),
                    (None, None) => None,
                    _ => {
                        return Err(ExportError::Inconsistent(format!(
                            "row {} has segments or completion but not both",
                            row.policy
                        )))
                    }
                };
                Ok(ComparisonRow { metrics: (&row.metrics).try_into()?, policy: row.policy, trace })
            })
            .collect::<Result<_, _>>()?;
        Ok(ComparisonReport { workload, rows })
    }

    pub fn to_json(&self) -> Result<String, ExportError> {
        to_sorted_json(self)
    }

    pub fn from_json(text: &str) -> Result<Self, ExportError> {
        Ok(serde_json::from_str(text)?)
    }
}

fn to_sorted_json<T: Serialize>(doc: &T) -> Result<String, ExportError> {
    // serde_json::Map is ordered by key unless `preserve_order` is enabled.
    let value = serde_json::to_value(doc)?;
    let mut s = serde_json::to_string_pretty(&value)?;
    s.push('\n');
    Ok(s)
}

/// Writes `doc` as sorted-key JSON to `path`.
pub fn export_json<T: Serialize>(doc: &T, path: &Path) -> Result<(), ExportError> {
    let text = to_sorted_json(doc)?;
    fs::write(path, text).map_err(|source| ExportError::Io { path: path.display().to_string(), source })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, ExportError> {
    let text =
        fs::read_to_string(path).map_err(|source| ExportError::Io { path: path.display().to_string(), source })?;
    Ok(serde_json::from_str(&text)?)
}

pub fn segments_csv(trace: &ScheduleTrace) -> String {
    let mut out = String::from("pid,start,end,round,quantum\n");
    for s in &trace.segments {
        out.push_str(&format!("{},{},{},{},{}\n", s.pid, s.start, s.end, s.round, s.quantum_assigned));
    }
    out
}

pub fn comparison_csv(report: &ComparisonReport) -> String {
    let mut out = String::from("policy,avg_tat,avg_wt,cs,avg_tat_num,avg_tat_den,avg_wt_num,avg_wt_den\n");
    for r in &report.rows {
        let m = &r.metrics;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.policy,
            format_tenths(m.avg_turnaround),
            format_tenths(m.avg_waiting),
            m.context_switches,
            m.avg_turnaround.numer(),
            m.avg_turnaround.denom(),
            m.avg_waiting.numer(),
            m.avg_waiting.denom(),
        ));
    }
    out
}

pub fn components_csv(w: &Workload, comps: &[SliceComponents]) -> String {
    let mut out = String::from("id,burst,priority,ots,pc,sc,csc,its\n");
    for (p, c) in w.processes().iter().zip(comps) {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            p.id, p.burst_time, p.priority, c.ots, c.pc as u8, c.sc as u8, c.csc, c.its
        ));
    }
    out
}
