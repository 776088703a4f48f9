mod common;

use std::collections::{BTreeMap, HashMap};

use num_rational::Ratio;
use proptest::prelude::*;

use common::{all_policies, workload_strategy};
use itsched::report::{boundaries, ReportDoc, TraceDoc};
use itsched::{
    compute_components, compute_metrics, compute_ots, compute_range, generate_workload, report, simulate, BurstOrder,
    DispatchOrder, ProcessSpec, QuantumRule, SchedulingPolicy, SliceBasis, Workload,
};

fn scaled(w: &Workload, k: u64) -> Workload {
    let procs = w.processes().iter().map(|p| ProcessSpec::new(p.id, p.burst_time * k, p.priority)).collect();
    Workload::new(procs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn csv_round_trip(w in workload_strategy(30, 1000, 20)) {
        prop_assert_eq!(Workload::parse_csv(&w.to_csv()).unwrap(), w);
    }

    #[test]
    fn generator_is_pure_and_in_range(
        n in 1usize..60,
        order in prop_oneof![Just(BurstOrder::Increasing), Just(BurstOrder::Decreasing), Just(BurstOrder::Random)],
        blo in 1u64..50, bspan in 0u64..500,
        plo in 1u32..5, pspan in 0u32..6,
        seed in any::<u64>(),
    ) {
        let a = generate_workload(n, order, (blo, blo + bspan), (plo, plo + pspan), seed).unwrap();
        let b = generate_workload(n, order, (blo, blo + bspan), (plo, plo + pspan), seed).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.len(), n);
        prop_assert!(a.bursts().iter().all(|x| (blo..=blo + bspan).contains(x)));
        prop_assert!(a.priorities().iter().all(|x| (plo..=plo + pspan).contains(x)));
    }

    #[test]
    fn slice_component_invariants(w in workload_strategy(30, 500, 10)) {
        let comps = compute_components(&w);
        prop_assert!(!comps[0].sc);
        for (p, c) in w.processes().iter().zip(&comps) {
            prop_assert_eq!(c.its, c.ots + c.pc as u64 + c.sc as u64 + c.csc);
            prop_assert!(c.ots >= 1);
            if c.csc > 0 {
                prop_assert!(c.its >= p.burst_time);
            }
        }
    }

    #[test]
    fn ots_antimonotone_in_priority(twice in 2u64..2000, n in 1usize..50, a in 1u32..20, b in 1u32..20) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let range = itsched::BurstRange::from_twice(twice);
        let urgent = compute_ots(&ProcessSpec::new(1, 1, lo), range, n);
        let lax = compute_ots(&ProcessSpec::new(1, 1, hi), range, n);
        prop_assert!(urgent >= lax);
    }

    #[test]
    fn sc_on_monotone_sequences(mut bursts in prop::collection::btree_set(1u64..1000, 1..30)) {
        let inc: Vec<u64> = std::mem::take(&mut bursts).into_iter().collect();
        let w = Workload::from_bursts_and_priorities(&inc, &vec![1; inc.len()]).unwrap();
        prop_assert!(compute_components(&w).iter().all(|c| !c.sc));
        let dec: Vec<u64> = inc.iter().rev().copied().collect();
        let w = Workload::from_bursts_and_priorities(&dec, &vec![1; dec.len()]).unwrap();
        let sc: Vec<bool> = compute_components(&w).iter().map(|c| c.sc).collect();
        prop_assert!(!sc[0]);
        prop_assert!(sc[1..].iter().all(|&s| s));
    }

    #[test]
    fn scaling_bursts_scales_range(w in workload_strategy(20, 200, 10), k in 1u64..20) {
        let big = scaled(&w, k);
        let r = compute_range(&w);
        prop_assert_eq!(compute_range(&big).twice(), r.twice() * k);
        for (p, c) in big.processes().iter().zip(compute_components(&big)) {
            let exact = r.as_ratio() * Ratio::from_integer(k) / Ratio::from_integer(p.priority as u64);
            prop_assert_eq!(c.ots, exact.ceil().to_integer());
        }
    }

    #[test]
    fn engine_round_structure(w in workload_strategy(25, 300, 8)) {
        for policy in all_policies(&w) {
            let trace = simulate(&w, &policy);
            let mut remaining: BTreeMap<u32, u64> = w.processes().iter().map(|p| (p.id, p.burst_time)).collect();
            let mut last_round: HashMap<u32, u32> = HashMap::new();
            for round in trace.segments.chunk_by(|a, b| a.round == b.round) {
                // a round visits exactly the processes alive at its start, once each
                let mut visited: Vec<u32> = round.iter().map(|s| s.pid).collect();
                visited.sort_unstable();
                let alive: Vec<u32> = remaining.iter().filter(|(_, r)| **r > 0).map(|(p, _)| *p).collect();
                prop_assert_eq!(visited, alive);
                for s in round {
                    prop_assert!(s.start < s.end);
                    prop_assert!(s.duration() <= s.quantum_assigned);
                    let rem = remaining.get_mut(&s.pid).unwrap();
                    prop_assert!(s.duration() <= *rem);
                    *rem -= s.duration();
                    if let Some(prev) = last_round.insert(s.pid, s.round) {
                        prop_assert!(s.round > prev);
                    }
                    if *rem == 0 {
                        prop_assert_eq!(trace.completion[&s.pid], s.end);
                    }
                }
            }
            prop_assert!(remaining.values().all(|r| *r == 0));
            prop_assert_eq!(trace.completion.len(), w.len());
        }
    }

    #[test]
    fn quantum_growth_follows_rule(w in workload_strategy(20, 400, 8)) {
        for policy in [SchedulingPolicy::proposed(), SchedulingPolicy::pbdrr(4)] {
            let comps = policy.slice_components(&w).unwrap();
            let trace = simulate(&w, &policy);
            for (p, c) in w.processes().iter().zip(&comps) {
                let grants: Vec<_> = trace.segments.iter().filter(|s| s.pid == p.id).collect();
                for pair in grants.windows(2) {
                    let prev = pair[0].quantum_assigned;
                    let grown = if c.sc { 2 * prev } else { prev + prev.div_ceil(2) };
                    // the final grant may be the whole remainder instead
                    let next = pair[1];
                    let is_last = next.end == trace.completion[&p.id];
                    prop_assert!(next.quantum_assigned == grown || is_last);
                }
                let first = grants[0];
                let base = if c.sc { c.its } else { c.its.div_ceil(2) };
                prop_assert!(first.quantum_assigned == base || first.end == trace.completion[&p.id]);
            }
        }
    }

    #[test]
    fn ordering_is_the_only_difference(w in workload_strategy(12, 200, 6)) {
        for (sorted, fixed) in [
            (SchedulingPolicy::proposed(),
             SchedulingPolicy::custom(DispatchOrder::Submission, QuantumRule::Dynamic(SliceBasis::Range))),
            (SchedulingPolicy::custom(DispatchOrder::ShortestRemaining, QuantumRule::Dynamic(SliceBasis::Static(4))),
             SchedulingPolicy::pbdrr(4)),
        ] {
            let a = simulate(&w, &sorted);
            let in_submission_order = a.segments.chunk_by(|x, y| x.round == y.round).all(|round| {
                round.windows(2).all(|p| {
                    let pos = |pid| w.processes().iter().position(|q| q.id == pid).unwrap();
                    pos(p[0].pid) < pos(p[1].pid)
                })
            });
            if in_submission_order {
                prop_assert_eq!(&a, &simulate(&w, &fixed));
            }
        }
    }

    #[test]
    fn metrics_invariants(w in workload_strategy(30, 500, 10)) {
        let mean = Ratio::new(w.total_burst(), w.len() as u64);
        for policy in all_policies(&w) {
            let t = simulate(&w, &policy);
            let m = compute_metrics(&t, &w).unwrap();
            prop_assert_eq!(m.avg_waiting + mean, m.avg_turnaround);
            for p in &m.per_process {
                prop_assert_eq!(p.waiting, p.turnaround - p.burst);
                prop_assert!(p.response <= p.waiting);
            }
            prop_assert_eq!(m.context_switches == 0, w.len() == 1);
        }
    }

    #[test]
    fn relabelling_permutes_metrics(w in workload_strategy(15, 100, 5), salt in 1u32..1000) {
        let t = simulate(&w, &SchedulingPolicy::proposed());
        let m = compute_metrics(&t, &w).unwrap();
        // fresh labels, reversed, so sorted-by-pid iteration changes too
        let n = w.len() as u32;
        let relabel = |pid: u32| salt + n - pid;
        let w2 = Workload::new(
            w.processes().iter().map(|p| ProcessSpec::new(relabel(p.id), p.burst_time, p.priority)).collect(),
        ).unwrap();
        let mut t2 = t.clone();
        for s in &mut t2.segments {
            s.pid = relabel(s.pid);
        }
        t2.completion = t.completion.iter().map(|(k, v)| (relabel(*k), *v)).collect();
        let m2 = compute_metrics(&t2, &w2).unwrap();
        prop_assert_eq!(m.avg_turnaround, m2.avg_turnaround);
        prop_assert_eq!(m.avg_waiting, m2.avg_waiting);
        prop_assert_eq!(m.context_switches, m2.context_switches);
        for (a, b) in m.per_process.iter().zip(&m2.per_process) {
            prop_assert_eq!(relabel(a.pid), b.pid);
            prop_assert_eq!((a.turnaround, a.waiting, a.response), (b.turnaround, b.waiting, b.response));
        }
    }

    #[test]
    fn gantt_boundaries_match_merged_segments(w in workload_strategy(20, 200, 5)) {
        for policy in all_policies(&w) {
            let t = simulate(&w, &policy);
            let chart = report::render_gantt(&t);
            let stamps: Vec<u64> = chart.lines().nth(1).unwrap().split_whitespace().map(|s| s.parse().unwrap()).collect();
            prop_assert_eq!(&stamps, &boundaries(&t));
            prop_assert_eq!(*stamps.last().unwrap(), w.total_burst());
            prop_assert_eq!(stamps.len(), t.merged().len() + 1);
        }
    }

    #[test]
    fn json_round_trips(w in workload_strategy(10, 80, 5)) {
        let policy = SchedulingPolicy::proposed();
        let t = simulate(&w, &policy);
        let m = compute_metrics(&t, &w).unwrap();
        let doc = TraceDoc::new(&w, &policy.name(), &t, Some(&m));
        let (w2, name, t2) = TraceDoc::from_json(&doc.to_json().unwrap()).unwrap().into_parts().unwrap();
        prop_assert_eq!(w2, w.clone());
        prop_assert_eq!(name, "proposed");
        prop_assert_eq!(t2, t);

        let cmp = report::compare(&w, &all_policies(&w), true).unwrap();
        let back = ReportDoc::from_json(&ReportDoc::from(&cmp).to_json().unwrap()).unwrap().into_report().unwrap();
        prop_assert_eq!(back, cmp);
    }
}
