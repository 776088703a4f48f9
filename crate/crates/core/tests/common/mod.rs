#![allow(dead_code)]

pub mod oracle;

use itsched::{SchedulingPolicy, Workload};
use proptest::prelude::*;

/// Every implemented policy, with a few round robin quanta picked relative
/// to the workload.
pub fn all_policies(w: &Workload) -> Vec<SchedulingPolicy> {
    let max = w.max_burst();
    vec![
        SchedulingPolicy::proposed(),
        SchedulingPolicy::pbdrr(4),
        SchedulingPolicy::static_its_rr(4),
        SchedulingPolicy::static_its_rr(1),
        SchedulingPolicy::classic_rr(1).unwrap(),
        SchedulingPolicy::classic_rr(4).unwrap(),
        SchedulingPolicy::classic_rr(max).unwrap(),
        SchedulingPolicy::srtn(),
        SchedulingPolicy::fcfs(),
    ]
}

pub fn workload_strategy(max_n: usize, max_burst: u64, max_priority: u32) -> impl Strategy<Value = Workload> {
    prop::collection::vec((1..=max_burst, 1..=max_priority), 1..=max_n).prop_map(|rows| {
        let (bursts, prios): (Vec<u64>, Vec<u32>) = rows.into_iter().unzip();
        Workload::from_bursts_and_priorities(&bursts, &prios).unwrap()
    })
}
