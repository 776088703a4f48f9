//! Command-line front end.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::engine::simulate;
use crate::metrics::{compute_metrics, format_tenths, MetricsError, MetricsSummary};
use crate::reference::{self, PublishedRun, PublishedSummary};
use crate::report::{self, ExportError, ReportDoc, TraceDoc};
use crate::schedulers::{PolicyError, SchedulingPolicy, DEFAULT_STATIC_OTS};
use crate::timeslice::{compute_components, compute_components_static};
use crate::workload::{generate_workload, BurstOrder, Workload, WorkloadError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Workload(#[from] WorkloadError),
    #[error(transparent)]
    Policy(#[from] PolicyError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Export(#[from] ExportError),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(name = "itsched", version, about = "Single-CPU scheduling simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one policy on one workload: Gantt chart and metrics.
    Simulate(SimulateArgs),
    /// Run several policies on one workload and tabulate their metrics.
    Compare(CompareArgs),
    /// Emit a synthetic workload as CSV.
    Generate(GenerateArgs),
    /// Show the OTS/PC/SC/CSC/ITS table for a workload.
    Components(ComponentsArgs),
}

#[derive(Debug, Args)]
pub struct WorkloadSource {
    /// Workload CSV (`id,burst,priority`).
    #[arg(long, conflicts_with = "dataset", required_unless_present = "dataset")]
    pub workload: Option<PathBuf>,
    /// Built-in reference set: illustration, increasing, decreasing or random.
    #[arg(long)]
    pub dataset: Option<String>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub source: WorkloadSource,
    /// proposed, pbdrr, its-rr, rr:<q> (or rr with --quantum), srtn, fcfs.
    #[arg(long, default_value = "proposed")]
    pub policy: String,
    /// Static OTS for its-rr and pbdrr.
    #[arg(long, default_value_t = DEFAULT_STATIC_OTS)]
    pub static_ots: u64,
    /// Quantum for `--policy rr`.
    #[arg(long)]
    pub quantum: Option<u64>,
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Write the segment list as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Annotate cells where published values differ from the computed ones.
    #[arg(long)]
    pub paper_notes: bool,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub source: WorkloadSource,
    /// Comma-separated policy names.
    #[arg(long, value_delimiter = ',', default_value = "its-rr,pbdrr,proposed")]
    pub policies: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_STATIC_OTS)]
    pub static_ots: u64,
    #[arg(long)]
    pub quantum: Option<u64>,
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Include full traces in the JSON export.
    #[arg(long)]
    pub traces: bool,
    /// Add the published aggregate row next to each computed row.
    #[arg(long)]
    pub paper_notes: bool,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, default_value_t = 5)]
    pub n: usize,
    #[arg(long, default_value = "random")]
    pub order: BurstOrder,
    #[arg(long, default_value = "1:100", value_parser = parse_span::<u64>)]
    pub burst_range: (u64, u64),
    #[arg(long, default_value = "1:5", value_parser = parse_span::<u32>)]
    pub priority_range: (u32, u32),
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also write the CSV here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ComponentsArgs {
    #[command(flatten)]
    pub source: WorkloadSource,
    /// Use a constant OTS instead of the range-derived one.
    #[arg(long)]
    pub static_ots: Option<u64>,
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub paper_notes: bool,
}

fn parse_span<T: std::str::FromStr>(s: &str) -> Result<(T, T), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let lo = lo.trim().parse().map_err(|_| format!("bad lower bound in {s:?}"))?;
    let hi = hi.trim().parse().map_err(|_| format!("bad upper bound in {s:?}"))?;
    Ok((lo, hi))
}

/// Parses `args` (including the program name) and runs the command, writing
/// normal output to `out` and diagnostics to `err`. Returns the exit status.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match run(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate(a) => cmd_simulate(a, out),
        Command::Compare(a) => cmd_compare(a, out),
        Command::Generate(a) => cmd_generate(a, out),
        Command::Components(a) => cmd_components(a, out),
    }
}

fn load(source: &WorkloadSource) -> Result<Workload, CliError> {
    if let Some(name) = &source.dataset {
        return reference::workload(name).ok_or_else(|| CliError::Usage(format!("unknown dataset {name:?}")));
    }
    let path = source.workload.as_ref().expect("clap enforces one source");
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    Ok(Workload::parse_csv(&text)?)
}

fn resolve_policy(name: &str, static_ots: u64, quantum: Option<u64>) -> Result<SchedulingPolicy, CliError> {
    match (name.trim(), quantum) {
        ("rr", Some(q)) => Ok(SchedulingPolicy::classic_rr(q)?),
        ("rr", None) => Err(CliError::Usage("policy `rr` needs --quantum <q> (or use rr:<q>)".into())),
        (other, _) => Ok(SchedulingPolicy::from_name(other, static_ots)?),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn io_err(e: io::Error) -> CliError {
    CliError::Io { path: "<stdout>".into(), source: e }
}

fn describe(w: &Workload) -> String {
    let mut s = format!("{} processes, total burst {}", w.len(), w.total_burst());
    if let Some(case) = reference::case_name(w) {
        s.push_str(&format!(" ({case} reference set)"));
    }
    s
}

fn summary_line(m: &MetricsSummary) -> String {
    format!(
        "Avg TAT {} ({}/{})  Avg WT {} ({}/{})  CS {}",
        m.display_avg_turnaround(),
        m.avg_turnaround.numer(),
        m.avg_turnaround.denom(),
        m.display_avg_waiting(),
        m.avg_waiting.numer(),
        m.avg_waiting.denom(),
        m.context_switches
    )
}

fn published_line(s: &PublishedSummary) -> String {
    format!(
        "Published: Avg TAT {}.{}  Avg WT {}.{}  CS {}",
        s.avg_tat_tenths / 10,
        s.avg_tat_tenths % 10,
        s.avg_wt_tenths / 10,
        s.avg_wt_tenths % 10,
        s.context_switches
    )
}

fn published_for(w: &Workload, policy: &SchedulingPolicy, static_ots: u64) -> Option<&'static PublishedRun> {
    // printed comparator tables all use a static OTS of 4
    let static_ok = static_ots == DEFAULT_STATIC_OTS || !matches!(policy.name().as_str(), "pbdrr" | "its-rr");
    static_ok.then(|| reference::lookup(w, &policy.name())).flatten()
}

fn cmd_simulate(a: SimulateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let w = load(&a.source)?;
    let policy = resolve_policy(&a.policy, a.static_ots, a.quantum)?;
    let trace = simulate(&w, &policy);
    let metrics = compute_metrics(&trace, &w)?;
    let published = a.paper_notes.then(|| published_for(&w, &policy, a.static_ots)).flatten();

    let mut text = format!("Workload: {}\nPolicy: {}\n\n", describe(&w), policy);
    if let Some(comps) = policy.slice_components(&w) {
        text.push_str(&report::components_table(&w, &comps, published));
        text.push('\n');
    }
    text.push_str(&report::render_gantt(&trace));
    text.push('\n');
    text.push_str("Executed time per round\n");
    text.push_str(&report::quanta_table(&w, &trace, published));
    text.push('\n');
    text.push_str(&report::process_table(&metrics));
    text.push_str(&summary_line(&metrics));
    text.push('\n');
    if a.paper_notes {
        match published.and_then(|p| p.summary) {
            Some(s) => text.push_str(&(published_line(&s) + "\n")),
            None => text.push_str("No published values for this workload/policy.\n"),
        }
    }
    out.write_all(text.as_bytes()).map_err(io_err)?;

    if let Some(path) = &a.json {
        report::export_json(&TraceDoc::new(&w, &policy.name(), &trace, Some(&metrics)), path)?;
    }
    if let Some(path) = &a.csv {
        write_file(path, &report::segments_csv(&trace))?;
    }
    Ok(())
}

fn cmd_compare(a: CompareArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let w = load(&a.source)?;
    if a.policies.is_empty() {
        return Err(CliError::Usage("no policies given".into()));
    }
    let policies =
        a.policies.iter().map(|name| resolve_policy(name, a.static_ots, a.quantum)).collect::<Result<Vec<_>, _>>()?;
    let cmp = report::compare(&w, &policies, a.traces)?;

    let mut text = format!("Workload: {}\n\n", describe(&w));
    text.push_str(&report::comparison_table(&cmp));
    if a.paper_notes {
        let rows: Vec<Vec<String>> = policies
            .iter()
            .filter_map(|p| {
                let s = published_for(&w, p, a.static_ots)?.summary?;
                let row = cmp.row(&p.name())?;
                Some(vec![
                    p.name(),
                    format!("{}.{}", s.avg_tat_tenths / 10, s.avg_tat_tenths % 10),
                    format_tenths(row.metrics.avg_turnaround),
                    format!("{}.{}", s.avg_wt_tenths / 10, s.avg_wt_tenths % 10),
                    format_tenths(row.metrics.avg_waiting),
                    s.context_switches.to_string(),
                    row.metrics.context_switches.to_string(),
                ])
            })
            .collect();
        text.push('\n');
        if rows.is_empty() {
            text.push_str("No published values for this workload.\n");
        } else {
            text.push_str(&report::fmt_table(
                &["Policy", "TAT printed", "TAT ours", "WT printed", "WT ours", "CS printed", "CS ours"],
                &rows,
            ));
        }
    }
    out.write_all(text.as_bytes()).map_err(io_err)?;

    if let Some(path) = &a.json {
        report::export_json(&ReportDoc::from(&cmp), path)?;
    }
    if let Some(path) = &a.csv {
        write_file(path, &report::comparison_csv(&cmp))?;
    }
    Ok(())
}

fn cmd_generate(a: GenerateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let w = generate_workload(a.n, a.order, a.burst_range, a.priority_range, a.seed)?;
    let csv = w.to_csv();
    out.write_all(csv.as_bytes()).map_err(io_err)?;
    if let Some(path) = &a.csv {
        write_file(path, &csv)?;
    }
    Ok(())
}

fn cmd_components(a: ComponentsArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let w = load(&a.source)?;
    let (comps, policy_name) = match a.static_ots {
        Some(0) => return Err(PolicyError::InvalidStaticOts.into()),
        Some(ots) => (compute_components_static(&w, ots), "its-rr"),
        None => (compute_components(&w), "proposed"),
    };
    let published = match a.static_ots {
        Some(ots) if ots != DEFAULT_STATIC_OTS => None,
        _ => a.paper_notes.then(|| reference::lookup(&w, policy_name)).flatten(),
    };
    let mut text = format!("Workload: {}\n", describe(&w));
    text.push_str(&report::components_table(&w, &comps, published));
    if a.paper_notes && published.is_none() {
        text.push_str("No published values for this workload.\n");
    }
    out.write_all(text.as_bytes()).map_err(io_err)?;

    if let Some(path) = &a.json {
        let value = serde_json::json!({
            "workload": w.processes(),
            "components": comps,
        });
        report::export_json(&value, path)?;
    }
    if let Some(path) = &a.csv {
        write_file(path, &report::components_csv(&w, &comps))?;
    }
    Ok(())
}
