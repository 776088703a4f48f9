//! Published values for the three reference data sets (the five-process
//! illustration, the increasing-burst set and the random-burst set), used by
//! `--paper-notes` to flag cells where the printed numbers and the rules
//! implemented here disagree.

use crate::workload::Workload;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PublishedSummary {
    /// Averages in tenths of a time unit (51.2 is 512).
    pub avg_tat_tenths: u64,
    pub avg_wt_tenths: u64,
    pub context_switches: u64,
}

/// Printed values for one (workload, policy) pair. `None` columns were not printed.
#[derive(Debug, Clone, Copy)]
pub struct PublishedRun {
    pub case: &'static str,
    pub policy: &'static str,
    pub bursts: &'static [u64],
    pub priorities: &'static [u32],
    pub ots: Option<&'static [u64]>,
    pub pc: Option<&'static [u64]>,
    pub sc: Option<&'static [u64]>,
    pub csc: Option<&'static [u64]>,
    pub its: Option<&'static [u64]>,
    /// Executed time per round, one row per process. Rows may be a prefix of
    /// the full schedule (the illustration only gives round 1).
    pub quanta: Option<&'static [&'static [u64]]>,
    pub summary: Option<PublishedSummary>,
}

const ILLUSTRATION_BURSTS: &[u64] = &[25, 60, 12, 43, 5];
const ILLUSTRATION_PRIORITIES: &[u32] = &[3, 1, 2, 1, 1];
pub const INCREASING_BURSTS: &[u64] = &[5, 12, 16, 21, 23];
pub const INCREASING_PRIORITIES: &[u32] = &[2, 3, 1, 4, 5];
pub const DECREASING_BURSTS: &[u64] = &[31, 23, 16, 9, 1];
pub const DECREASING_PRIORITIES: &[u32] = &[2, 1, 4, 5, 3];
pub const RANDOM_BURSTS: &[u64] = &[11, 53, 8, 41, 20];
pub const RANDOM_PRIORITIES: &[u32] = &[3, 1, 2, 4, 5];

const fn summary(avg_tat_tenths: u64, avg_wt_tenths: u64, context_switches: u64) -> Option<PublishedSummary> {
    Some(PublishedSummary { avg_tat_tenths, avg_wt_tenths, context_switches })
}

pub static PUBLISHED: &[PublishedRun] = &[
    PublishedRun {
        case: "illustration",
        policy: "proposed",
        bursts: ILLUSTRATION_BURSTS,
        priorities: ILLUSTRATION_PRIORITIES,
        ots: Some(&[11, 33, 17, 33, 33]),
        pc: Some(&[0, 1, 0, 1, 1]),
        sc: Some(&[0, 0, 1, 0, 1]),
        csc: Some(&[0, 0, 12, 9, 5]),
        its: Some(&[11, 34, 30, 43, 5]),
        quanta: Some(&[&[6], &[17], &[12], &[22], &[5]]),
        summary: None,
    },
    PublishedRun {
        case: "increasing",
        policy: "its-rr",
        bursts: INCREASING_BURSTS,
        priorities: INCREASING_PRIORITIES,
        ots: Some(&[4, 4, 4, 4, 4]),
        pc: Some(&[0, 0, 1, 0, 0]),
        sc: Some(&[0, 0, 0, 0, 0]),
        csc: Some(&[1, 0, 0, 0, 0]),
        its: Some(&[5, 4, 5, 4, 4]),
        quanta: None,
        summary: summary(512, 358, 19),
    },
    PublishedRun {
        case: "increasing",
        policy: "pbdrr",
        bursts: INCREASING_BURSTS,
        priorities: INCREASING_PRIORITIES,
        ots: None,
        pc: None,
        sc: Some(&[0, 0, 0, 0, 0]),
        csc: None,
        its: Some(&[5, 4, 5, 4, 4]),
        quanta: Some(&[&[5], &[2, 3, 7], &[3, 5, 8], &[2, 3, 5, 8, 3], &[2, 3, 5, 8, 5]]),
        summary: summary(464, 310, 17),
    },
    PublishedRun {
        case: "increasing",
        policy: "proposed",
        bursts: INCREASING_BURSTS,
        priorities: INCREASING_PRIORITIES,
        ots: Some(&[7, 5, 14, 4, 3]),
        pc: None,
        sc: None,
        csc: Some(&[5, 0, 2, 0, 0]),
        its: Some(&[12, 5, 17, 4, 3]),
        quanta: Some(&[&[5], &[3, 5, 4], &[9, 7], &[2, 3, 5, 8, 3], &[2, 3, 5, 8, 5]]),
        summary: summary(460, 306, 15),
    },
    PublishedRun {
        case: "random",
        policy: "its-rr",
        bursts: RANDOM_BURSTS,
        priorities: RANDOM_PRIORITIES,
        ots: Some(&[4, 4, 4, 4, 4]),
        pc: Some(&[0, 1, 0, 0, 0]),
        sc: Some(&[0, 0, 1, 0, 1]),
        csc: Some(&[0, 0, 3, 0, 0]),
        its: Some(&[4, 5, 8, 4, 5]),
        quanta: None,
        summary: summary(808, 542, 29),
    },
    PublishedRun {
        case: "random",
        policy: "pbdrr",
        bursts: RANDOM_BURSTS,
        priorities: RANDOM_PRIORITIES,
        ots: None,
        pc: None,
        sc: Some(&[0, 0, 1, 0, 1]),
        csc: None,
        its: Some(&[4, 5, 8, 4, 5]),
        quanta: Some(&[&[2, 3, 6], &[3, 5, 8, 12, 18, 7], &[8], &[2, 3, 5, 8, 12, 11], &[5, 10, 5]]),
        summary: summary(760, 492, 18),
    },
    PublishedRun {
        case: "random",
        policy: "proposed",
        bursts: RANDOM_BURSTS,
        priorities: RANDOM_PRIORITIES,
        ots: Some(&[10, 31, 16, 8, 6]),
        pc: None,
        sc: None,
        csc: Some(&[1, 21, 8, 0, 0]),
        its: Some(&[11, 53, 25, 8, 7]),
        quanta: Some(&[&[6, 5], &[27, 26], &[8], &[4, 6, 9, 15, 7], &[7, 13]]),
        summary: summary(728, 362, 9),
    },
];

/// Printed values for `policy` on `w`, if `w` is one of the reference sets.
pub fn lookup(w: &Workload, policy: &str) -> Option<&'static PublishedRun> {
    let bursts = w.bursts();
    let priorities = w.priorities();
    PUBLISHED
        .iter()
        .find(|r| r.policy == policy && r.bursts == bursts.as_slice() && r.priorities == priorities.as_slice())
}

/// Name of the reference set `w` matches, if any.
pub fn case_name(w: &Workload) -> Option<&'static str> {
    let bursts = w.bursts();
    let priorities = w.priorities();
    if bursts == DECREASING_BURSTS && priorities == DECREASING_PRIORITIES {
        return Some("decreasing");
    }
    PUBLISHED.iter().find(|r| r.bursts == bursts.as_slice() && r.priorities == priorities.as_slice()).map(|r| r.case)
}

/// Builds one of the reference workloads by name.
pub fn workload(case: &str) -> Option<Workload> {
    let (b, p) = match case {
        "illustration" => (ILLUSTRATION_BURSTS, ILLUSTRATION_PRIORITIES),
        "increasing" => (INCREASING_BURSTS, INCREASING_PRIORITIES),
        "decreasing" => (DECREASING_BURSTS, DECREASING_PRIORITIES),
        "random" => (RANDOM_BURSTS, RANDOM_PRIORITIES),
        _ => return None,
    };
    Workload::from_bursts_and_priorities(b, p).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_matches_exact_data_only() {
        let w = workload("random").unwrap();
        assert_eq!(lookup(&w, "proposed").unwrap().case, "random");
        assert!(lookup(&w, "fcfs").is_none());
        assert_eq!(case_name(&workload("decreasing").unwrap()), Some("decreasing"));
        let other = Workload::from_bursts_and_priorities(&[11, 53, 8, 41, 20], &[1, 1, 1, 1, 1]).unwrap();
        assert!(case_name(&other).is_none());
    }
}
