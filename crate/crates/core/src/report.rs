//! Summary of an arrangement: invariants, log Chern numbers for several
//! extension choices and the inequality checks.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arrangement::{ArrangementSpec, Classification, ExtensionChoice, FiberStats};
use crate::error::Result;
use crate::exact;
use crate::log_chern::{check_inequalities, log_chern_partial, InequalityReport, LogChernPair};

/// Longest repeating block shown in decimal renderings of ratios.
pub const MAX_PERIOD: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Column {
    pub removed: ExtensionChoice,
    pub label: String,
    pub pair: LogChernPair,
    #[serde(with = "exact::big_rational")]
    pub ratio: BigRational,
    pub decimal: String,
    pub inequalities: InequalityReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub label: String,
    pub genus: u64,
    pub degree: u64,
    pub d: usize,
    pub delta: usize,
    pub char_p: Option<u64>,
    pub classification: Classification,
    pub tau: u64,
    pub blowups: u64,
    pub fibers: Vec<FiberStats>,
    pub removable: Vec<usize>,
    pub columns: Vec<Column>,
}

impl AnalysisReport {
    pub fn all_hold(&self) -> bool {
        self.columns.iter().all(|c| c.inequalities.all_hold())
    }
}

fn choice_label(c: &ExtensionChoice) -> String {
    if c.is_extended() {
        "{}".to_string()
    } else {
        c.to_string()
    }
}

pub fn analyze(spec: &ArrangementSpec, choices: &[ExtensionChoice]) -> Result<AnalysisReport> {
    spec.ensure_valid()?;
    let default = [ExtensionChoice::extended()];
    let choices = if choices.is_empty() { &default[..] } else { choices };
    let mut columns = Vec::with_capacity(choices.len());
    for choice in choices {
        let pair = log_chern_partial(spec, choice)?;
        let ratio = pair.ratio().expect("c2 is positive for valid choices");
        columns.push(Column {
            removed: choice.clone(),
            label: choice_label(choice),
            decimal: exact::repeating_decimal(&ratio, MAX_PERIOD),
            ratio,
            pair,
            inequalities: check_inequalities(spec, choice)?,
        });
    }
    Ok(AnalysisReport {
        label: spec.label.clone(),
        genus: spec.genus,
        degree: spec.degree,
        d: spec.num_sections,
        delta: spec.delta(),
        char_p: spec.char_p,
        classification: spec.classify()?,
        tau: spec.tau()?,
        blowups: spec.num_blowups()?,
        fibers: (1..=spec.delta())
            .map(|f| spec.fiber_stats(f))
            .collect::<Result<_>>()?,
        removable: spec.removable_fibers(),
        columns,
    })
}

/// Text table with one column per extension choice and rows for the removed
/// fibers, both log Chern numbers and their ratio.
pub fn render_table(report: &AnalysisReport) -> String {
    let mut rows: Vec<Vec<String>> = vec![
        vec!["Xi".into()],
        vec!["c1^2".into()],
        vec!["c2".into()],
        vec!["c1^2/c2".into()],
        vec!["exact".into()],
    ];
    for c in &report.columns {
        rows[0].push(c.label.clone());
        rows[1].push(c.pair.c1sq.to_string());
        rows[2].push(c.pair.c2.to_string());
        rows[3].push(c.decimal.clone());
        rows[4].push(exact::rational_to_string(&c.ratio));
    }
    let ncol = rows[0].len();
    let widths: Vec<usize> = (0..ncol)
        .map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    let sep: String = widths
        .iter()
        .map(|w| "-".repeat(w + 2))
        .collect::<Vec<_>>()
        .join("+");
    let mut out = String::new();
    out.push_str(&format!("+{sep}+\n"));
    for r in &rows {
        let cells: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(cell, &w)| format!(" {cell:>w$} "))
            .collect();
        out.push_str(&format!("|{}|\n", cells.join("|")));
        out.push_str(&format!("+{sep}+\n"));
    }
    out
}

/// Header lines plus the table and any failed inequality.
pub fn render_text(report: &AnalysisReport) -> String {
    let mut out = format!(
        "{}: g = {}, e = {}, d = {}, delta = {}, {}\n",
        report.label, report.genus, report.degree, report.d, report.delta, report.classification
    );
    if let Some(p) = report.char_p {
        out.push_str(&format!("characteristic {p}\n"));
    }
    out.push_str(&format!("tau = {}, blow-ups = {}\n", report.tau, report.blowups));
    let stats: Vec<String> = report
        .fibers
        .iter()
        .enumerate()
        .map(|(i, s)| format!("F{}({},{})", i + 1, s.k_o, s.k))
        .collect();
    out.push_str(&format!("fibers (k_o,k): {}\n", stats.join(" ")));
    out.push_str(&render_table(report));
    for c in &report.columns {
        for check in &c.inequalities.checks {
            if !check.holds {
                let tag = if check.applicable { "FAILS" } else { "fails (not applicable)" };
                out.push_str(&format!(
                    "{} {}: {} [{} vs {}]\n",
                    c.label,
                    tag,
                    check.name,
                    exact::rational_to_string(&check.lhs),
                    exact::rational_to_string(&check.rhs)
                ));
            }
        }
    }
    out
}
