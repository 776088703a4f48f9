//! Per-process slice components.
//!
//! `ITS = OTS + PC + SC + CSC`, computed once for the whole workload before
//! scheduling starts:
//!
//! * OTS, the original time slice: `⌈(range · n) / (priority · n)⌉`, where the
//!   number of priority levels is taken to be the process count `n`.
//! * PC, the priority component: 1 for processes at the most urgent level present.
//! * SC, the shortness component: 1 when the burst is shorter than the previous
//!   process's burst in submission order.
//! * CSC, the context switch component: pads the slice so a nearly-fitting
//!   process finishes in one dispatch.
//!
//! All arithmetic is integral; the range is carried in half units.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::workload::{ProcessSpec, Workload};

/// `(max burst + min burst) / 2`, stored as the (integral) numerator so that
/// half-unit values stay exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BurstRange {
    twice: u64,
}

impl BurstRange {
    pub fn from_twice(twice: u64) -> Self {
        Self { twice }
    }

    /// Twice the range, i.e. `max + min`.
    pub fn twice(self) -> u64 {
        self.twice
    }

    pub fn as_ratio(self) -> Ratio<u64> {
        Ratio::new(self.twice, 2)
    }
}

impl fmt::Display for BurstRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice.is_multiple_of(2) {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}.5", self.twice / 2)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceComponents {
    pub range: BurstRange,
    pub ots: u64,
    pub pc: bool,
    pub sc: bool,
    pub csc: u64,
    pub its: u64,
}

impl SliceComponents {
    fn assemble(range: BurstRange, p: &ProcessSpec, ots: u64, pc: bool, sc: bool) -> Self {
        let csc = compute_csc(p, ots, pc, sc);
        Self { range, ots, pc, sc, csc, its: ots + pc as u64 + sc as u64 + csc }
    }
}

pub fn compute_range(w: &Workload) -> BurstRange {
    BurstRange::from_twice(w.max_burst() + w.min_burst())
}

/// Original time slice, rounded up.
pub fn compute_ots(p: &ProcessSpec, range: BurstRange, n: usize) -> u64 {
    assert!(range.twice() > 0 && n > 0 && p.priority > 0);
    let n = n as u128;
    let priority_levels = n;
    // range · n / (priority · levels), with range = twice / 2
    let num = range.twice() as u128 * n;
    let den = 2 * p.priority as u128 * priority_levels;
    num.div_ceil(den) as u64
}

/// 1 iff `p` sits at the workload's most urgent (numerically smallest) priority.
pub fn compute_pc(p: &ProcessSpec, w: &Workload) -> bool {
    let top = w.processes().iter().map(|q| q.priority).min().unwrap_or(p.priority);
    p.priority == top
}

/// 1 iff the process at `index` is shorter than its predecessor.
pub fn compute_sc(index: usize, w: &Workload) -> bool {
    let procs = w.processes();
    index > 0 && procs[index].burst_time < procs[index - 1].burst_time
}

/// `balance = burst − (ots + pc + sc)`. The whole burst when the balance is
/// negative, the balance itself when it is below `ots`, otherwise 0.
pub fn compute_csc(p: &ProcessSpec, ots: u64, pc: bool, sc: bool) -> u64 {
    let slice = ots + pc as u64 + sc as u64;
    match p.burst_time.checked_sub(slice) {
        None => p.burst_time,
        Some(balance) if balance < ots => balance,
        Some(_) => 0,
    }
}

/// Slice components for every process, in submission order.
pub fn compute_components(w: &Workload) -> Vec<SliceComponents> {
    let range = compute_range(w);
    let n = w.len();
    w.processes()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let ots = compute_ots(p, range, n);
            SliceComponents::assemble(range, p, ots, compute_pc(p, w), compute_sc(i, w))
        })
        .collect()
}

/// Same as [`compute_components`] but with a constant OTS for every process,
/// as used by the static-slice comparator policies.
pub fn compute_components_static(w: &Workload, static_ots: u64) -> Vec<SliceComponents> {
    assert!(static_ots >= 1, "static OTS must be >= 1");
    let range = compute_range(w);
    w.processes()
        .iter()
        .enumerate()
        .map(|(i, p)| SliceComponents::assemble(range, p, static_ots, compute_pc(p, w), compute_sc(i, w)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wl(bursts: &[u64], prios: &[u32]) -> Workload {
        Workload::from_bursts_and_priorities(bursts, prios).unwrap()
    }

    fn field<T>(c: &[SliceComponents], f: impl Fn(&SliceComponents) -> T) -> Vec<T> {
        c.iter().map(f).collect()
    }

    #[test]
    fn range_values() {
        assert_eq!(compute_range(&wl(&[25, 60, 12, 43, 5], &[3, 1, 2, 1, 1])).to_string(), "32.5");
        assert_eq!(compute_range(&wl(&[5, 12, 16, 21, 23], &[2, 3, 1, 4, 5])).to_string(), "14");
        let r = compute_range(&wl(&[7], &[1]));
        assert_eq!(r.as_ratio(), Ratio::from_integer(7));
    }

    #[test]
    fn ots_rounds_up() {
        let r = BurstRange::from_twice(65);
        assert_eq!(compute_ots(&ProcessSpec::new(1, 25, 3), r, 5), 11);
        assert_eq!(compute_ots(&ProcessSpec::new(3, 12, 2), r, 5), 17);
        assert_eq!(compute_ots(&ProcessSpec::new(4, 21, 4), BurstRange::from_twice(28), 5), 4);
        assert_eq!(compute_ots(&ProcessSpec::new(1, 7, 1), BurstRange::from_twice(14), 1), 7);
    }

    #[test]
    fn pc_marks_most_urgent_level() {
        let w = wl(&[25, 60, 12, 43, 5], &[3, 1, 2, 1, 1]);
        let pcs: Vec<bool> = w.processes().iter().map(|p| compute_pc(p, &w)).collect();
        assert_eq!(pcs, vec![false, true, false, true, true]);

        let w = wl(&[5, 12, 16, 21, 23], &[2, 3, 1, 4, 5]);
        assert!(!compute_pc(&w.processes()[0], &w));
        let w = wl(&[9], &[4]);
        assert!(compute_pc(&w.processes()[0], &w));
    }

    #[test]
    fn sc_compares_with_predecessor() {
        let w = wl(&[25, 60, 12, 43, 5], &[3, 1, 2, 1, 1]);
        assert!(compute_sc(2, &w));
        assert!(!compute_sc(0, &w));
        let w = wl(&[11, 53, 8, 41, 20], &[3, 1, 2, 4, 5]);
        assert!(compute_sc(4, &w));
    }

    #[test]
    fn csc_branches() {
        assert_eq!(compute_csc(&ProcessSpec::new(2, 53, 1), 31, true, false), 21);
        assert_eq!(compute_csc(&ProcessSpec::new(3, 8, 2), 16, false, true), 8);
        assert_eq!(compute_csc(&ProcessSpec::new(4, 41, 4), 8, false, false), 0);
        assert_eq!(compute_csc(&ProcessSpec::new(1, 10, 1), 10, false, false), 0);
    }

    #[test]
    fn random_workload_components() {
        let c = compute_components(&wl(&[11, 53, 8, 41, 20], &[3, 1, 2, 4, 5]));
        assert_eq!(field(&c, |s| s.ots), vec![11, 31, 16, 8, 7]);
        assert_eq!(field(&c, |s| s.csc), vec![0, 21, 8, 0, 0]);
        assert_eq!(field(&c, |s| s.its), vec![11, 53, 25, 8, 8]);
    }

    #[test]
    fn increasing_workload_components() {
        let c = compute_components(&wl(&[5, 12, 16, 21, 23], &[2, 3, 1, 4, 5]));
        assert_eq!(field(&c, |s| s.ots), vec![7, 5, 14, 4, 3]);
        assert_eq!(field(&c, |s| s.pc), vec![false, false, true, false, false]);
        assert!(c.iter().all(|s| !s.sc));
    }

    #[test]
    fn single_process_components() {
        let c = compute_components(&wl(&[9], &[1]));
        assert_eq!(c[0].range.to_string(), "9");
        assert_eq!((c[0].ots, c[0].pc, c[0].sc, c[0].csc, c[0].its), (9, true, false, 9, 19));
    }

    #[test]
    fn static_components_match_fixed_slice_tables() {
        let c = compute_components_static(&wl(&[5, 12, 16, 21, 23], &[2, 3, 1, 4, 5]), 4);
        assert_eq!(field(&c, |s| s.csc), vec![1, 0, 0, 0, 0]);
        assert_eq!(field(&c, |s| s.its), vec![5, 4, 5, 4, 4]);
        let c = compute_components_static(&wl(&[11, 53, 8, 41, 20], &[3, 1, 2, 4, 5]), 4);
        assert_eq!(field(&c, |s| s.its), vec![4, 5, 8, 4, 5]);
    }
}
