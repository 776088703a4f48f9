//! Plain-text tables.

use crate::engine::ScheduleTrace;
use crate::metrics::{format_tenths, MetricsSummary};
use crate::reference::PublishedRun;
use crate::timeslice::SliceComponents;
use crate::workload::Workload;

use super::ComparisonReport;

pub fn fmt_table<S: AsRef<str>>(headings: &[&str], rows: &[Vec<S>]) -> String {
    let ncols = headings.len();
    let mut widths: Vec<usize> = headings.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        assert_eq!(ncols, row.len());
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.as_ref().chars().count());
        }
    }

    let mut out = String::new();
    push_row(&mut out, headings, &widths);
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    out.push_str(&rule.join("-+-"));
    out.push('\n');
    for row in rows {
        push_row(&mut out, row, &widths);
    }
    out
}

fn push_row<S: AsRef<str>>(out: &mut String, row: &[S], widths: &[usize]) {
    let cells: Vec<String> = row.iter().zip(widths).map(|(c, w)| format!("{:<w$}", c.as_ref(), w = *w)).collect();
    out.push_str(cells.join(" | ").trim_end());
    out.push('\n');
}

pub fn comparison_table(report: &ComparisonReport) -> String {
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.policy.clone(),
                format_tenths(r.metrics.avg_turnaround),
                format_tenths(r.metrics.avg_waiting),
                r.metrics.context_switches.to_string(),
            ]
        })
        .collect();
    fmt_table(&["Policy", "Avg TAT", "Avg WT", "CS"], &rows)
}

pub fn process_table(m: &MetricsSummary) -> String {
    let rows: Vec<Vec<String>> = m
        .per_process
        .iter()
        .map(|p| {
            vec![
                format!("P{}", p.pid),
                p.burst.to_string(),
                p.completion.to_string(),
                p.turnaround.to_string(),
                p.waiting.to_string(),
                p.response.to_string(),
            ]
        })
        .collect();
    fmt_table(&["Process", "Burst", "Done", "TAT", "WT", "RT"], &rows)
}

/// OTS/PC/SC/CSC/ITS per process. With `published`, a trailing column lists
/// the printed values that differ from the computed ones.
pub fn components_table(w: &Workload, comps: &[SliceComponents], published: Option<&PublishedRun>) -> String {
    let mut headings = vec!["Process", "Burst", "Priority", "OTS", "PC", "SC", "CSC", "ITS"];
    if published.is_some() {
        headings.push("Published");
    }
    let rows: Vec<Vec<String>> = w
        .processes()
        .iter()
        .zip(comps)
        .enumerate()
        .map(|(i, (p, c))| {
            let mut row = vec![
                format!("P{}", p.id),
                p.burst_time.to_string(),
                p.priority.to_string(),
                c.ots.to_string(),
                (c.pc as u8).to_string(),
                (c.sc as u8).to_string(),
                c.csc.to_string(),
                c.its.to_string(),
            ];
            if let Some(pubd) = published {
                row.push(component_notes(pubd, i, c).join(" "));
            }
            row
        })
        .collect();
    let mut out = format!("Range = {}\n", comps.first().map(|c| c.range.to_string()).unwrap_or_default());
    out.push_str(&fmt_table(&headings, &rows));
    out
}

/// `name=value` for each printed component of process `i` that differs from `c`.
pub fn component_notes(published: &PublishedRun, i: usize, c: &SliceComponents) -> Vec<String> {
    let ours = [
        ("ots", published.ots, c.ots),
        ("pc", published.pc, c.pc as u64),
        ("sc", published.sc, c.sc as u64),
        ("csc", published.csc, c.csc),
        ("its", published.its, c.its),
    ];
    ours.iter()
        .filter_map(|(name, col, v)| {
            let printed = col.and_then(|col| col.get(i).copied())?;
            (printed != *v).then(|| format!("{name}={printed}"))
        })
        .collect()
}

/// Executed time per round, one row per process. With `published`, cells that
/// differ from the printed value are suffixed `[printed]`.
pub fn quanta_table(w: &Workload, trace: &ScheduleTrace, published: Option<&PublishedRun>) -> String {
    let rounds = trace.rounds() as usize;
    let titles: Vec<String> = (1..=rounds).map(|r| format!("R{r}")).collect();
    let mut headings = vec!["Process"];
    headings.extend(titles.iter().map(String::as_str));
    let rows: Vec<Vec<String>> = w
        .processes()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let ours = trace.quanta(p.id);
            let printed: &[u64] = published.and_then(|r| r.quanta).and_then(|q| q.get(i).copied()).unwrap_or(&[]);
            let mut row = vec![format!("P{}", p.id)];
            for r in 0..rounds {
                let cell = match (ours.get(r), printed.get(r)) {
                    (Some(a), Some(b)) if a != b => format!("{a} [{b}]"),
                    (None, Some(b)) => format!("- [{b}]"),
                    (Some(a), _) => a.to_string(),
                    (None, None) => "-".into(),
                };
                row.push(cell);
            }
            row
        })
        .collect();
    fmt_table(&headings, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aligned_columns() {
        let t = fmt_table(&["a", "long"], &[vec!["xyz", "1"], vec!["q", "22"]]);
        assert_eq!(t, "a   | long\n----+-----\nxyz | 1\nq   | 22\n");
    }
}
