//! Process workloads: validation, CSV parsing/serialization and synthetic
//! generation.
//!
//! Submission order is part of the data: the shortness component of the
//! time slice compares each process with the one submitted before it.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Process label.
pub type Pid = u32;

/// One CPU-bound process. Arrival is always t = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProcessSpec {
    pub id: Pid,
    #[serde(rename = "burst")]
    pub burst_time: u64,
    /// 1 is the most urgent level.
    pub priority: u32,
}

impl ProcessSpec {
    pub fn new(id: Pid, burst_time: u64, priority: u32) -> Self {
        Self { id, burst_time, priority }
    }
}

#[derive(Debug, Error)]
pub enum WorkloadError {
    #[error("workload has no processes")]
    Empty,
    #[error("bad header: {0} (expected `id,burst,priority`)")]
    Header(String),
    #[error("row {row}: {reason}")]
    Malformed { row: usize, reason: String },
    #[error("row {row}: process {id} has non-positive burst time")]
    NonPositiveBurst { row: usize, id: Pid },
    #[error("row {row}: process {id} has priority {priority}, must be >= 1")]
    InvalidPriority { row: usize, id: Pid, priority: u32 },
    #[error("row {row}: id {id} already used")]
    DuplicateId { row: usize, id: Pid },
    #[error("row {row}: process {id} arrives at {arrival}; nonzero arrival times are unsupported by the model")]
    NonzeroArrival { row: usize, id: Pid, arrival: u64 },
    #[error("invalid generator argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Ordered, validated list of processes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Workload {
    processes: Vec<ProcessSpec>,
}

impl Workload {
    /// Validates and wraps `processes`. Rows are numbered from 1 in errors.
    pub fn new(processes: Vec<ProcessSpec>) -> Result<Self, WorkloadError> {
        if processes.is_empty() {
            return Err(WorkloadError::Empty);
        }
        let mut seen = HashSet::with_capacity(processes.len());
        for (i, p) in processes.iter().enumerate() {
            validate(p, i + 1, &mut seen)?;
        }
        Ok(Self { processes })
    }

    /// Builds a workload labelled P1..Pn from parallel burst/priority slices.
    pub fn from_bursts_and_priorities(bursts: &[u64], priorities: &[u32]) -> Result<Self, WorkloadError> {
        if bursts.len() != priorities.len() {
            return Err(WorkloadError::InvalidArgument(format!(
                "{} bursts but {} priorities",
                bursts.len(),
                priorities.len()
            )));
        }
        let processes = bursts
            .iter()
            .zip(priorities)
            .enumerate()
            .map(|(i, (&b, &p))| ProcessSpec::new(i as Pid + 1, b, p))
            .collect();
        Self::new(processes)
    }

    pub fn processes(&self) -> &[ProcessSpec] {
        &self.processes
    }

    pub fn len(&self) -> usize {
        self.processes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.processes.is_empty()
    }

    pub fn get(&self, pid: Pid) -> Option<&ProcessSpec> {
        self.processes.iter().find(|p| p.id == pid)
    }

    pub fn total_burst(&self) -> u64 {
        self.processes.iter().map(|p| p.burst_time).sum()
    }

    pub fn max_burst(&self) -> u64 {
        self.processes.iter().map(|p| p.burst_time).max().unwrap_or(0)
    }

    pub fn min_burst(&self) -> u64 {
        self.processes.iter().map(|p| p.burst_time).min().unwrap_or(0)
    }

    pub fn bursts(&self) -> Vec<u64> {
        self.processes.iter().map(|p| p.burst_time).collect()
    }

    pub fn priorities(&self) -> Vec<u32> {
        self.processes.iter().map(|p| p.priority).collect()
    }

    /// Parses `id,burst,priority` CSV. An `arrival` column is accepted as long
    /// as every value is 0.
    pub fn parse_csv(text: &str) -> Result<Self, WorkloadError> {
        let mut reader = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(text.as_bytes());

        let headers = reader.headers()?.clone();
        let column = |name: &str| headers.iter().position(|h| h.eq_ignore_ascii_case(name));
        let (id_col, burst_col, prio_col) = match (column("id"), column("burst"), column("priority")) {
            (Some(a), Some(b), Some(c)) => (a, b, c),
            _ => return Err(WorkloadError::Header(headers.iter().collect::<Vec<_>>().join(","))),
        };
        let arrival_col = column("arrival");

        let mut processes = Vec::new();
        let mut seen = HashSet::new();
        for (i, record) in reader.records().enumerate() {
            let row = i + 1;
            let record = record.map_err(|e| WorkloadError::Malformed { row, reason: e.to_string() })?;
            if record.iter().all(str::is_empty) {
                continue;
            }
            let field = |col: usize, name: &str| -> Result<&str, WorkloadError> {
                record
                    .get(col)
                    .ok_or_else(|| WorkloadError::Malformed { row, reason: format!("missing `{name}` field") })
            };
            let id: Pid = parse_int(field(id_col, "id")?, "id", row)?;
            let burst: i64 = parse_int(field(burst_col, "burst")?, "burst", row)?;
            let priority: i64 = parse_int(field(prio_col, "priority")?, "priority", row)?;
            if burst <= 0 {
                return Err(WorkloadError::NonPositiveBurst { row, id });
            }
            if priority < 1 || priority > u32::MAX as i64 {
                return Err(WorkloadError::InvalidPriority {
                    row,
                    id,
                    priority: priority.clamp(0, u32::MAX as i64) as u32,
                });
            }
            if let Some(col) = arrival_col {
                let arrival: u64 = parse_int(field(col, "arrival")?, "arrival", row)?;
                if arrival != 0 {
                    return Err(WorkloadError::NonzeroArrival { row, id, arrival });
                }
            }
            let p = ProcessSpec::new(id, burst as u64, priority as u32);
            validate(&p, row, &mut seen)?;
            processes.push(p);
        }
        if processes.is_empty() {
            return Err(WorkloadError::Empty);
        }
        Ok(Self { processes })
    }

    /// Inverse of [`Workload::parse_csv`]: header plus one row per process.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,burst,priority\n");
        for p in &self.processes {
            out.push_str(&format!("{},{},{}\n", p.id, p.burst_time, p.priority));
        }
        out
    }
}

impl<'de> Deserialize<'de> for Workload {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let processes = Vec::<ProcessSpec>::deserialize(d)?;
        Workload::new(processes).map_err(serde::de::Error::custom)
    }
}

fn validate(p: &ProcessSpec, row: usize, seen: &mut HashSet<Pid>) -> Result<(), WorkloadError> {
    if p.id == 0 {
        return Err(WorkloadError::Malformed { row, reason: "id must be positive".into() });
    }
    if p.burst_time == 0 {
        return Err(WorkloadError::NonPositiveBurst { row, id: p.id });
    }
    if p.priority == 0 {
        return Err(WorkloadError::InvalidPriority { row, id: p.id, priority: 0 });
    }
    if !seen.insert(p.id) {
        return Err(WorkloadError::DuplicateId { row, id: p.id });
    }
    Ok(())
}

fn parse_int<T: FromStr>(s: &str, name: &str, row: usize) -> Result<T, WorkloadError> {
    s.parse().map_err(|_| WorkloadError::Malformed { row, reason: format!("`{name}` is not an integer: {s:?}") })
}

/// Shape of a synthetic burst sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BurstOrder {
    Increasing,
    Decreasing,
    Random,
}

impl FromStr for BurstOrder {
    type Err = WorkloadError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "increasing" => Ok(Self::Increasing),
            "decreasing" => Ok(Self::Decreasing),
            "random" => Ok(Self::Random),
            other => Err(WorkloadError::InvalidArgument(format!("unknown order {other:?}"))),
        }
    }
}

impl fmt::Display for BurstOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Increasing => "increasing",
            Self::Decreasing => "decreasing",
            Self::Random => "random",
        })
    }
}

/// Deterministic synthetic workload with ids 1..=n. Ranges are inclusive.
pub fn generate_workload(
    n: usize,
    order: BurstOrder,
    burst_range: (u64, u64),
    priority_range: (u32, u32),
    seed: u64,
) -> Result<Workload, WorkloadError> {
    if n == 0 {
        return Err(WorkloadError::InvalidArgument("n must be >= 1".into()));
    }
    let (blo, bhi) = burst_range;
    if blo < 1 || blo > bhi {
        return Err(WorkloadError::InvalidArgument(format!("burst range {blo}:{bhi}")));
    }
    let (plo, phi) = priority_range;
    if plo < 1 || plo > phi {
        return Err(WorkloadError::InvalidArgument(format!("priority range {plo}:{phi}")));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bursts: Vec<u64> = (0..n).map(|_| rng.gen_range(blo..=bhi)).collect();
    match order {
        BurstOrder::Increasing => bursts.sort_unstable(),
        BurstOrder::Decreasing => bursts.sort_unstable_by(|a, b| b.cmp(a)),
        BurstOrder::Random => {}
    }
    let processes = bursts
        .into_iter()
        .enumerate()
        .map(|(i, b)| ProcessSpec::new(i as Pid + 1, b, rng.gen_range(plo..=phi)))
        .collect();
    Workload::new(processes)
}
