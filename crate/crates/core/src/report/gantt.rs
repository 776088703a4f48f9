use crate::engine::ScheduleTrace;

/// Two-line ASCII Gantt chart: process labels over boundary timestamps.
/// Back-to-back runs of one process share a cell.
///
/// ```text
/// | P3 | P1 | P5 |
/// 0    8    14   21
/// ```
pub fn render_gantt(trace: &ScheduleTrace) -> String {
    let cells = trace.merged();
    let Some(&(_, _, last_end)) = cells.last() else {
        return String::new();
    };

    let mut labels = String::new();
    let mut stamps = String::new();
    for &(pid, start, _) in &cells {
        let label = format!("P{pid}");
        let start = start.to_string();
        let width = (label.len() + 2).max(start.len() + 1);
        labels.push('|');
        labels.push_str(&format!("{label:^width$}"));
        stamps.push_str(&format!("{start:<w$}", w = width + 1));
    }
    labels.push('|');
    stamps.push_str(&last_end.to_string());
    format!("{labels}\n{stamps}\n")
}

/// Boundary timestamps as rendered on the second line.
pub fn boundaries(trace: &ScheduleTrace) -> Vec<u64> {
    let cells = trace.merged();
    let mut out: Vec<u64> = cells.iter().map(|c| c.1).collect();
    if let Some(last) = cells.last() {
        out.push(last.2);
    }
    out
}
