//! Tick-by-tick reference simulator.
//!
//! Advances the clock one unit at a time and re-derives every dispatch
//! choice from the policy rules. It shares nothing with the engine's
//! dispatch loop; only the slice components (golden-tested separately) are
//! taken from the library.

// ceilings are spelled out by hand so they share no helper with the engine
#![allow(clippy::manual_div_ceil)]

use itsched::schedulers::PolicyKind;
use itsched::{
    compute_components, compute_components_static, DispatchSegment, QuantumRule, SchedulingPolicy, SliceBasis, Workload,
};

#[derive(Debug, Clone, Copy)]
pub enum OraclePolicy {
    Proposed,
    Pbdrr(u64),
    ItsRr(u64),
    Rr(u64),
    Srtn,
    Fcfs,
}

impl OraclePolicy {
    /// Picks up the policy's identity and its numeric knobs only.
    pub fn from_policy(p: &SchedulingPolicy) -> Self {
        let knob = match p.quantum_rule() {
            QuantumRule::Dynamic(SliceBasis::Static(v))
            | QuantumRule::Its(SliceBasis::Static(v))
            | QuantumRule::Fixed(v) => v,
            _ => 0,
        };
        match p.kind() {
            PolicyKind::Proposed => Self::Proposed,
            PolicyKind::Pbdrr => Self::Pbdrr(knob),
            PolicyKind::StaticItsRr => Self::ItsRr(knob),
            PolicyKind::ClassicRr => Self::Rr(knob),
            PolicyKind::Srtn => Self::Srtn,
            PolicyKind::Fcfs => Self::Fcfs,
            PolicyKind::Custom => unimplemented!("oracle covers the named policies only"),
        }
    }

    fn sorts_by_remaining(self) -> bool {
        matches!(self, Self::Proposed | Self::Srtn)
    }
}

struct Grant {
    who: usize,
    left: u64,
    assigned: u64,
    round: u32,
    serial: usize,
}

pub fn step_simulate(w: &Workload, policy: OraclePolicy) -> Vec<DispatchSegment> {
    let procs = w.processes();
    let n = procs.len();
    let slices = match policy {
        OraclePolicy::Proposed => compute_components(w),
        OraclePolicy::Pbdrr(ots) | OraclePolicy::ItsRr(ots) => compute_components_static(w, ots),
        _ => Vec::new(),
    };

    let mut rem: Vec<u64> = procs.iter().map(|p| p.burst_time).collect();
    let mut last_tq: Vec<u64> = vec![0; n];
    let mut round = 0u32;
    // processes still owed a dispatch this round, with their remaining time
    // as of the round boundary
    let mut owed: Vec<(usize, u64)> = Vec::new();
    let mut grant: Option<Grant> = None;
    let mut serial = 0usize;
    // (pid, round, assigned, serial) for each tick
    let mut ticks: Vec<(u32, u32, u64, usize)> = Vec::new();

    while rem.iter().any(|&r| r > 0) {
        if grant.is_none() {
            if owed.is_empty() {
                round += 1;
                owed = (0..n).filter(|&i| rem[i] > 0).map(|i| (i, rem[i])).collect();
            }
            let pick = if policy.sorts_by_remaining() {
                (0..owed.len()).min_by_key(|&k| (owed[k].1, procs[owed[k].0].id)).unwrap()
            } else {
                0
            };
            let (who, _) = owed.remove(pick);
            let r = rem[who] as i64;
            let tq = match policy {
                OraclePolicy::Proposed | OraclePolicy::Pbdrr(_) => {
                    let s = &slices[who];
                    let mut tq = if round == 1 {
                        if s.sc {
                            s.its
                        } else {
                            (s.its + 1) / 2
                        }
                    } else if s.sc {
                        last_tq[who] * 2
                    } else {
                        last_tq[who] + (last_tq[who] + 1) / 2
                    };
                    if r - tq as i64 <= 2 {
                        tq = rem[who];
                    }
                    tq
                }
                OraclePolicy::ItsRr(_) => slices[who].its,
                OraclePolicy::Rr(q) => q,
                OraclePolicy::Srtn | OraclePolicy::Fcfs => rem[who],
            };
            last_tq[who] = tq;
            serial += 1;
            grant = Some(Grant { who, left: tq, assigned: tq, round, serial });
        }

        let g = grant.as_mut().unwrap();
        rem[g.who] -= 1;
        g.left -= 1;
        ticks.push((procs[g.who].id, g.round, g.assigned, g.serial));
        if g.left == 0 || rem[g.who] == 0 {
            grant = None;
        }
    }

    let mut segments: Vec<DispatchSegment> = Vec::new();
    let mut last_serial = usize::MAX;
    for (t, &(pid, round, assigned, serial)) in ticks.iter().enumerate() {
        let t = t as u64;
        if serial == last_serial {
            segments.last_mut().unwrap().end = t + 1;
        } else {
            segments.push(DispatchSegment { pid, start: t, end: t + 1, round, quantum_assigned: assigned });
            last_serial = serial;
        }
    }
    segments
}
