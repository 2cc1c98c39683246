//! The subcommands, each producing its full output as text.

use serde::Serialize;

use logchern::arrangement::{ArrangementSpec, ExtensionChoice};
use logchern::exact::{rational_to_string, to_f64};
use logchern::library::{builtin, BUILTIN_NAMES};
use logchern::log_chern::{ratio_scan, ScanConfig};
use logchern::number::{census, CensusRow};
use logchern::report::{analyze, render_text};
use logchern::resolution::{build_resolution, to_dot};
use logchern::surface::{
    converge, converge_one, count_solutions, ConvergenceOutcome, ConvergenceRow, NodeRecord, RootCoverModel,
};

use crate::error::{CliError, CliResult};
use crate::Format;

/// Text to write, and the checks that did not hold.
#[derive(Debug, Default)]
pub struct Outcome {
    pub text: String,
    pub failed: Vec<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            failed: Vec::new(),
        }
    }
}

fn unsupported(command: &str, format: Format) -> CliError {
    CliError::Usage(format!("{command} does not support --format {format}"))
}

fn json<T: Serialize + ?Sized>(value: &T) -> CliResult<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Right-aligned columns separated by two spaces.
fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut all: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
    all.extend(rows.iter().cloned());
    let widths: Vec<usize> = (0..header.len())
        .map(|j| all.iter().map(|r| r[j].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in &all {
        let cells: Vec<String> = r.iter().zip(&widths).map(|(c, &w)| format!("{c:>w$}")).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn tabular(format: Format, command: &str, header: &[&str], rows: &[Vec<String>]) -> CliResult<String> {
    match format {
        Format::Csv => csv_text(header, rows),
        Format::Table => Ok(aligned(header, rows)),
        other => Err(unsupported(command, other)),
    }
}

pub fn cmd_analyze(spec: &ArrangementSpec, choices: &[ExtensionChoice], format: Format) -> CliResult<Outcome> {
    let report = analyze(spec, choices)?;
    let text = match format {
        Format::Table => render_text(&report),
        Format::Json => json(&report)?,
        other => return Err(unsupported("analyze", other)),
    };
    Ok(Outcome::ok(text))
}

#[derive(Serialize)]
struct SampleRecord<'a> {
    label: &'a str,
    removed: &'a ExtensionChoice,
    #[serde(flatten)]
    row: &'a ConvergenceRow,
    nodes: Vec<NodeRecord>,
}

pub fn cmd_sample(
    spec: &ArrangementSpec,
    choice: &ExtensionChoice,
    p: u64,
    seed: u64,
    retries: u32,
    format: Format,
) -> CliResult<Outcome> {
    let model = RootCoverModel::new(spec, choice)?;
    let row = converge_one(&model, p, seed, retries)?;
    let nodes = model.nodes(&row.solution)?;
    let text = match format {
        Format::Json => json(&SampleRecord {
            label: &spec.label,
            removed: choice,
            row: &row,
            nodes,
        })?,
        Format::Csv | Format::Table => tabular(format, "sample", &CONVERGE_HEADER, &[converge_cells(&row)])?,
        other => return Err(unsupported("sample", other)),
    };
    Ok(Outcome::ok(text))
}

/// Column order of convergence sweeps.
pub const CONVERGE_HEADER: [&str; 11] = [
    "p", "seed", "attempts", "good", "bad_nodes", "c1sq", "c2", "ratio", "ratio_approx", "CCF", "LCF",
];

fn converge_cells(r: &ConvergenceRow) -> Vec<String> {
    let inv = &r.invariants;
    vec![
        r.p.to_string(),
        r.seed.to_string(),
        r.attempts.to_string(),
        inv.good.to_string(),
        inv.bad_nodes.to_string(),
        rational_to_string(&inv.c1sq),
        rational_to_string(&inv.c2),
        rational_to_string(&inv.ratio),
        format!("{:.6}", to_f64(&inv.ratio)),
        rational_to_string(&inv.ccf),
        rational_to_string(&inv.lcf),
    ]
}

pub fn cmd_converge(
    spec: &ArrangementSpec,
    choice: &ExtensionChoice,
    primes: &[u64],
    seed: u64,
    retries: u32,
    format: Format,
) -> CliResult<Outcome> {
    let outcomes = converge(spec, choice, primes, seed, retries)?;
    let failed: Vec<String> = outcomes
        .iter()
        .filter_map(|o| match o {
            ConvergenceOutcome::Failure(f) => Some(format!("p = {}: {}", f.p, f.error)),
            ConvergenceOutcome::Row(_) => None,
        })
        .collect();
    let text = match format {
        Format::Json => json(&outcomes)?,
        _ => {
            let rows: Vec<Vec<String>> = outcomes.iter().filter_map(|o| o.row()).map(converge_cells).collect();
            tabular(format, "converge", &CONVERGE_HEADER, &rows)?
        }
    };
    Ok(Outcome { text, failed })
}

pub const CENSUS_HEADER: [&str; 6] = ["p", "bad_count", "bound", "max_l", "max_12s", "within_bound"];

fn census_cells(r: &CensusRow) -> Vec<String> {
    vec![
        r.p.to_string(),
        r.bad_count.to_string(),
        format!("{:.4}", r.bound),
        r.max_l.to_string(),
        format!("{:.4}", r.max_12s),
        r.within_bound().to_string(),
    ]
}

pub fn cmd_badset(primes: &[u64], format: Format) -> CliResult<Outcome> {
    let rows = census(primes);
    let failed = rows
        .iter()
        .filter(|r| !r.within_bound())
        .map(|r| format!("p = {}: {} bad residues, bound {:.4}", r.p, r.bad_count, r.bound))
        .collect();
    let text = match format {
        Format::Json => json(&rows)?,
        _ => {
            let cells: Vec<Vec<String>> = rows.iter().map(census_cells).collect();
            tabular(format, "badset", &CENSUS_HEADER, &cells)?
        }
    };
    Ok(Outcome { text, failed })
}

pub const COUNT_HEADER: [&str; 5] = ["p", "exact", "estimate", "estimate_approx", "relative_error"];

pub fn cmd_count(
    spec: &ArrangementSpec,
    choice: &ExtensionChoice,
    primes: &[u64],
    budget: u64,
    format: Format,
) -> CliResult<Outcome> {
    let counts = primes
        .iter()
        .map(|&p| count_solutions(spec, choice, p, budget))
        .collect::<Result<Vec<_>, _>>()?;
    let text = match format {
        Format::Json => json(&counts)?,
        _ => {
            let rows: Vec<Vec<String>> = counts
                .iter()
                .map(|c| {
                    vec![
                        c.p.to_string(),
                        c.exact.clone(),
                        rational_to_string(&c.estimate),
                        format!("{:.3}", to_f64(&c.estimate)),
                        format!("{:.6}", to_f64(&c.relative_error())),
                    ]
                })
                .collect();
            tabular(format, "count", &COUNT_HEADER, &rows)?
        }
    };
    Ok(Outcome::ok(text))
}

pub fn cmd_scan(spec: &ArrangementSpec, budget: usize, seed: u64, format: Format) -> CliResult<Outcome> {
    let result = ratio_scan(
        spec,
        &ScanConfig {
            candidates: None,
            budget,
            seed,
        },
    )?;
    let text = match format {
        Format::Json => json(&result)?,
        Format::Table => format!(
            "best removal set: {}\nc1^2 = {}, c2 = {}, ratio = {}\nevaluated {} choices{}\n",
            if result.best.is_extended() { "{}".to_string() } else { result.best.to_string() },
            result.pair.c1sq,
            result.pair.c2,
            rational_to_string(&result.ratio),
            result.evaluated,
            if result.exhaustive { " (exhaustive)" } else { "" }
        ),
        other => return Err(unsupported("scan", other)),
    };
    Ok(Outcome::ok(text))
}

pub fn cmd_dot(spec: &ArrangementSpec, choice: &ExtensionChoice) -> CliResult<Outcome> {
    Ok(Outcome::ok(to_dot(&build_resolution(spec, choice)?)))
}

/// JSON of a built-in arrangement, or the list of names.
pub fn cmd_export(name: Option<&str>) -> CliResult<Outcome> {
    match name {
        Some(name) => Ok(Outcome::ok(builtin(name)?.to_json() + "\n")),
        None => Ok(Outcome::ok(BUILTIN_NAMES.join("\n") + "\n")),
    }
}
