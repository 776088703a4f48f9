//! Scheduling policies.
//!
//! A policy is a dispatch order (applied at every round boundary) plus a
//! quantum rule. The engine drives both; policies hold no state.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::engine::proposed_quantum;
use crate::timeslice::{compute_components, compute_components_static, SliceComponents};
use crate::workload::{Pid, Workload};

/// Static OTS used by the fixed-slice comparators when none is given.
pub const DEFAULT_STATIC_OTS: u64 = 4;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolicyError {
    #[error("unknown policy {0:?} (expected proposed, pbdrr, its-rr, rr:<q>, srtn or fcfs)")]
    Unknown(String),
    #[error("round robin quantum must be >= 1, got {0}")]
    InvalidQuantum(u64),
    #[error("static OTS must be >= 1")]
    InvalidStaticOts,
}

/// Order in which live processes are visited within a round.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DispatchOrder {
    /// Submission order every round.
    Submission,
    /// Ascending remaining burst, ties by ascending pid.
    ShortestRemaining,
}

/// Where the OTS part of a slice comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SliceBasis {
    /// Derived from the workload's burst range and each priority.
    Range,
    /// A constant OTS for every process.
    Static(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuantumRule {
    /// Half ITS (or full ITS when SC = 1) in round 1, then ×1.5 (or ×2) per
    /// round, with the run-to-completion rule when at most 2 units would remain.
    Dynamic(SliceBasis),
    /// ITS on every visit.
    Its(SliceBasis),
    /// Constant quantum.
    Fixed(u64),
    /// Run to completion.
    ToCompletion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolicyKind {
    Proposed,
    Pbdrr,
    StaticItsRr,
    ClassicRr,
    Srtn,
    Fcfs,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchedulingPolicy {
    kind: PolicyKind,
    order: DispatchOrder,
    quantum: QuantumRule,
}

impl SchedulingPolicy {
    /// Dynamic round robin with SRTN ordering and range-derived slices.
    pub fn proposed() -> Self {
        Self {
            kind: PolicyKind::Proposed,
            order: DispatchOrder::ShortestRemaining,
            quantum: QuantumRule::Dynamic(SliceBasis::Range),
        }
    }

    /// Priority-based dynamic round robin: same quantum growth as
    /// [`SchedulingPolicy::proposed`] but a constant OTS and no re-sorting.
    pub fn pbdrr(static_ots: u64) -> Self {
        Self {
            kind: PolicyKind::Pbdrr,
            order: DispatchOrder::Submission,
            quantum: QuantumRule::Dynamic(SliceBasis::Static(static_ots)),
        }
    }

    /// Cyclic round robin whose quantum is each process's (static) ITS.
    pub fn static_its_rr(static_ots: u64) -> Self {
        Self {
            kind: PolicyKind::StaticItsRr,
            order: DispatchOrder::Submission,
            quantum: QuantumRule::Its(SliceBasis::Static(static_ots)),
        }
    }

    pub fn classic_rr(quantum: u64) -> Result<Self, PolicyError> {
        if quantum == 0 {
            return Err(PolicyError::InvalidQuantum(quantum));
        }
        Ok(Self { kind: PolicyKind::ClassicRr, order: DispatchOrder::Submission, quantum: QuantumRule::Fixed(quantum) })
    }

    /// Shortest remaining time next. With every arrival at t = 0 nothing ever
    /// preempts, so each process runs to completion in ascending burst order.
    pub fn srtn() -> Self {
        Self { kind: PolicyKind::Srtn, order: DispatchOrder::ShortestRemaining, quantum: QuantumRule::ToCompletion }
    }

    pub fn fcfs() -> Self {
        Self { kind: PolicyKind::Fcfs, order: DispatchOrder::Submission, quantum: QuantumRule::ToCompletion }
    }

    /// An arbitrary order/quantum pairing, named `custom`.
    pub fn custom(order: DispatchOrder, quantum: QuantumRule) -> Self {
        Self { kind: PolicyKind::Custom, order, quantum }
    }

    /// Parses a CLI policy name. `static_ots` applies to `pbdrr` and `its-rr`.
    pub fn from_name(name: &str, static_ots: u64) -> Result<Self, PolicyError> {
        if static_ots == 0 {
            return Err(PolicyError::InvalidStaticOts);
        }
        match name.trim() {
            "proposed" => Ok(Self::proposed()),
            "pbdrr" => Ok(Self::pbdrr(static_ots)),
            "its-rr" => Ok(Self::static_its_rr(static_ots)),
            "srtn" => Ok(Self::srtn()),
            "fcfs" => Ok(Self::fcfs()),
            other => match other.strip_prefix("rr:") {
                Some(q) => {
                    let q = q.parse().map_err(|_| PolicyError::Unknown(other.to_string()))?;
                    Self::classic_rr(q)
                }
                None => Err(PolicyError::Unknown(other.to_string())),
            },
        }
    }

    pub fn kind(&self) -> PolicyKind {
        self.kind
    }

    pub fn order(&self) -> DispatchOrder {
        self.order
    }

    pub fn quantum_rule(&self) -> QuantumRule {
        self.quantum
    }

    /// The name accepted by [`SchedulingPolicy::from_name`].
    pub fn name(&self) -> String {
        match self.kind {
            PolicyKind::Proposed => "proposed".into(),
            PolicyKind::Pbdrr => "pbdrr".into(),
            PolicyKind::StaticItsRr => "its-rr".into(),
            PolicyKind::ClassicRr => match self.quantum {
                QuantumRule::Fixed(q) => format!("rr:{q}"),
                _ => unreachable!(),
            },
            PolicyKind::Srtn => "srtn".into(),
            PolicyKind::Fcfs => "fcfs".into(),
            PolicyKind::Custom => "custom".into(),
        }
    }

    /// Slice components this policy schedules from, if it uses any.
    pub fn slice_components(&self, w: &Workload) -> Option<Vec<SliceComponents>> {
        let basis = match self.quantum {
            QuantumRule::Dynamic(b) | QuantumRule::Its(b) => b,
            QuantumRule::Fixed(_) | QuantumRule::ToCompletion => return None,
        };
        Some(match basis {
            SliceBasis::Range => compute_components(w),
            SliceBasis::Static(ots) => compute_components_static(w, ots),
        })
    }

    pub(crate) fn bind(&self, w: &Workload) -> BoundPolicy {
        BoundPolicy { order: self.order, quantum: self.quantum, slices: self.slice_components(w).unwrap_or_default() }
    }
}

impl fmt::Display for SchedulingPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for SchedulingPolicy {
    type Err = PolicyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_name(s, DEFAULT_STATIC_OTS)
    }
}

/// A policy resolved against one workload's slice data.
pub(crate) struct BoundPolicy {
    order: DispatchOrder,
    quantum: QuantumRule,
    slices: Vec<SliceComponents>,
}

/// Live-process view handed to the ordering rule.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LiveEntry {
    pub index: usize,
    pub pid: Pid,
    pub remaining: u64,
}

impl BoundPolicy {
    /// Reorders `live` in place. `live` arrives in submission order.
    pub fn arrange(&self, live: &mut [LiveEntry]) {
        match self.order {
            DispatchOrder::Submission => {}
            DispatchOrder::ShortestRemaining => live.sort_by_key(|e| (e.remaining, e.pid)),
        }
    }

    /// TQ for the process at workload position `index`.
    pub fn quantum(&self, index: usize, round: u32, prev_tq: Option<u64>, remaining: u64) -> u64 {
        match self.quantum {
            QuantumRule::Dynamic(_) => {
                let s = &self.slices[index];
                proposed_quantum(s.its, s.sc, round, prev_tq, remaining)
            }
            QuantumRule::Its(_) => self.slices[index].its,
            QuantumRule::Fixed(q) => q,
            QuantumRule::ToCompletion => remaining,
        }
    }
}
