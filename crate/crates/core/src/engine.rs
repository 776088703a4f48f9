//! Round-driven dispatch loop.
//!
//! Each round the live processes are arranged by the policy's ordering rule,
//! then each receives exactly one grant. The order is fixed for the whole
//! round; completions inside a round do not trigger a re-sort.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::schedulers::{LiveEntry, SchedulingPolicy};
use crate::workload::{Pid, Workload};

/// One contiguous CPU grant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DispatchSegment {
    pub pid: Pid,
    pub start: u64,
    pub end: u64,
    pub round: u32,
    /// TQ granted, before capping at the remaining burst.
    #[serde(rename = "quantum")]
    pub quantum_assigned: u64,
}

impl DispatchSegment {
    pub fn duration(&self) -> u64 {
        self.end - self.start
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ScheduleTrace {
    pub segments: Vec<DispatchSegment>,
    pub completion: BTreeMap<Pid, u64>,
}

impl ScheduleTrace {
    pub fn makespan(&self) -> u64 {
        self.segments.last().map_or(0, |s| s.end)
    }

    pub fn rounds(&self) -> u32 {
        self.segments.iter().map(|s| s.round).max().unwrap_or(0)
    }

    /// Executed time per round for `pid`, in round order.
    pub fn quanta(&self, pid: Pid) -> Vec<u64> {
        self.segments.iter().filter(|s| s.pid == pid).map(DispatchSegment::duration).collect()
    }

    /// Segments with back-to-back runs of one process fused, as `(pid, start, end)`.
    pub fn merged(&self) -> Vec<(Pid, u64, u64)> {
        let mut out: Vec<(Pid, u64, u64)> = Vec::with_capacity(self.segments.len());
        for s in &self.segments {
            match out.last_mut() {
                Some(last) if last.0 == s.pid && last.2 == s.start => last.2 = s.end,
                _ => out.push((s.pid, s.start, s.end)),
            }
        }
        out
    }
}

/// Time quantum for one dispatch under the dynamic rule.
///
/// Round 1 grants `⌈its/2⌉` (SC = 0) or `its` (SC = 1). Later rounds grow the
/// previous TQ by `⌈tq/2⌉` (SC = 0) or double it (SC = 1). If at most 2 units
/// would be left over, the grant becomes the whole remaining burst.
pub fn proposed_quantum(its: u64, sc: bool, round: u32, prev_tq: Option<u64>, rbt: u64) -> u64 {
    debug_assert!(its >= 1 && rbt >= 1);
    debug_assert_eq!(prev_tq.is_some(), round > 1);
    let base = match prev_tq.filter(|_| round > 1) {
        None if sc => its,
        None => its.div_ceil(2),
        Some(prev) if sc => prev.saturating_mul(2),
        Some(prev) => prev.saturating_add(prev.div_ceil(2)),
    };
    if rbt <= base.saturating_add(2) {
        rbt
    } else {
        base
    }
}

/// Per-process bookkeeping between rounds.
#[derive(Debug, Clone)]
struct RoundState {
    round: u32,
    remaining: Vec<u64>,
    prev_tq: Vec<Option<u64>>,
}

impl RoundState {
    fn new(w: &Workload) -> Self {
        Self { round: 1, remaining: w.bursts(), prev_tq: vec![None; w.len()] }
    }

    fn live(&self, w: &Workload) -> Vec<LiveEntry> {
        w.processes()
            .iter()
            .enumerate()
            .filter(|(i, _)| self.remaining[*i] > 0)
            .map(|(index, p)| LiveEntry { index, pid: p.id, remaining: self.remaining[index] })
            .collect()
    }
}

/// Runs `w` to completion under `policy`.
pub fn simulate(w: &Workload, policy: &SchedulingPolicy) -> ScheduleTrace {
    let bound = policy.bind(w);
    let mut state = RoundState::new(w);
    let mut trace = ScheduleTrace::default();
    let mut clock = 0u64;

    loop {
        let mut live = state.live(w);
        if live.is_empty() {
            break;
        }
        bound.arrange(&mut live);
        for entry in live {
            let i = entry.index;
            let rbt = state.remaining[i];
            let tq = bound.quantum(i, state.round, state.prev_tq[i], rbt);
            assert!(tq >= 1, "policy {policy} granted an empty quantum");
            let run = tq.min(rbt);
            trace.segments.push(DispatchSegment {
                pid: entry.pid,
                start: clock,
                end: clock + run,
                round: state.round,
                quantum_assigned: tq,
            });
            clock += run;
            state.remaining[i] -= run;
            state.prev_tq[i] = Some(tq);
            if state.remaining[i] == 0 {
                trace.completion.insert(entry.pid, clock);
            }
        }
        state.round += 1;
    }
    trace
}
