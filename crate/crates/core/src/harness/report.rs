//! Comparison tables and plot series.
//!
//! CSV conventions: comma separated, header row first, objective values in
//! scientific notation with six significant digits (`1.23457e-5`),
//! integer quantities bare. Evaluation means are rounded to the nearest
//! integer.

use std::fmt::Write as _;
use std::path::Path;

use super::CampaignStats;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Value {
    Objective(f64),
    Count(f64),
}

impl Value {
    fn render(self) -> String {
        match self {
            Value::Objective(v) => format_objective(v),
            Value::Count(v) => format!("{}", v.round() as u64),
        }
    }
}

pub(crate) fn format_objective(v: f64) -> String {
    format!("{v:.5e}")
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub label: Vec<String>,
    pub values: Vec<Value>,
    /// Cells holding the best (lowest) mean of their comparison group.
    pub marked: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<TableRow>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.label.iter().cloned().chain(row.values.iter().map(|v| v.render())).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Aligned plain-text rendering; best cells carry a trailing `*`.
    pub fn to_text(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| {
                let values = row.values.iter().zip(&row.marked).map(|(v, &m)| {
                    if m {
                        format!("{}*", v.render())
                    } else {
                        format!("{} ", v.render())
                    }
                });
                row.label.iter().cloned().chain(values).collect()
            })
            .collect();
        let widths: Vec<usize> = (0..self.header.len())
            .map(|c| rows.iter().map(|r| r[c].len()).chain([self.header[c].len()]).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for line in std::iter::once(&self.header).chain(&rows) {
            let cells: Vec<String> = line.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
            writeln!(out, "{}", cells.join("  ").trim_end()).unwrap();
        }
        out
    }
}

/// How campaigns are laid out in a comparison table.
#[derive(Clone, Debug, PartialEq)]
pub enum Layout {
    /// One MO row and one AE row per problem, one column per algorithm.
    Benchmark,
    /// One row per (algorithm, city count), one column per cycle budget.
    Tsp { cycles: Vec<u64> },
}

fn check_comparable(stats: &[CampaignStats]) -> Result<Vec<String>> {
    let first = stats.first().ok_or_else(|| Error::Mismatch("no campaigns to compare".into()))?;
    let tags: Vec<String> = first.algorithms.iter().map(|a| a.algorithm.tag()).collect();
    if tags.is_empty() {
        return Err(Error::Mismatch(format!("campaign `{}` has no algorithms", first.problem)));
    }
    for s in &stats[1..] {
        let other: Vec<String> = s.algorithms.iter().map(|a| a.algorithm.tag()).collect();
        if other != tags {
            return Err(Error::Mismatch(format!(
                "`{}` ran [{}] but `{}` ran [{}]",
                first.problem,
                tags.join(" "),
                s.problem,
                other.join(" ")
            )));
        }
    }
    Ok(tags)
}

fn argmin_marks(values: &[f64]) -> Vec<bool> {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    values.iter().map(|&v| v == min).collect()
}

pub fn compare_table(stats: &[CampaignStats], layout: &Layout) -> Result<Table> {
    let tags = check_comparable(stats)?;
    match layout {
        Layout::Benchmark => {
            if let Some(s) = stats.iter().find(|s| s.is_tsp) {
                return Err(Error::Mismatch(format!("`{}` is a TSP campaign", s.problem)));
            }
            let header = ["problem", "measure"].iter().map(|s| s.to_string()).chain(tags).collect();
            let mut rows = Vec::new();
            for s in stats {
                let mo: Vec<f64> = s.algorithms.iter().map(|a| a.mean_objective).collect();
                let ae: Vec<f64> = s.algorithms.iter().map(|a| a.mean_evaluations).collect();
                rows.push(TableRow {
                    label: vec![s.problem.clone(), "MO".into()],
                    marked: argmin_marks(&mo),
                    values: mo.into_iter().map(Value::Objective).collect(),
                });
                rows.push(TableRow {
                    label: vec![s.problem.clone(), "AE".into()],
                    marked: argmin_marks(&ae),
                    values: ae.into_iter().map(Value::Count).collect(),
                });
            }
            Ok(Table { header, rows })
        }
        Layout::Tsp { cycles } => {
            if let Some(s) = stats.iter().find(|s| !s.is_tsp) {
                return Err(Error::Mismatch(format!("`{}` is not a TSP campaign", s.problem)));
            }
            if cycles.is_empty() {
                return Err(Error::Config("empty cycle grid".into()));
            }
            let header = ["algorithm", "dimension"]
                .iter()
                .map(|s| s.to_string())
                .chain(cycles.iter().map(|c| c.to_string()))
                .collect();
            let mut rows = Vec::new();
            for (a, tag) in tags.iter().enumerate() {
                for s in stats {
                    let values: Vec<Value> =
                        cycles.iter().map(|&c| Value::Objective(s.algorithms[a].mean_best_at(c))).collect();
                    // Best algorithm per (dimension, cycle budget).
                    let marked = cycles
                        .iter()
                        .map(|&c| {
                            let mine = s.algorithms[a].mean_best_at(c);
                            s.algorithms.iter().all(|o| mine <= o.mean_best_at(c))
                        })
                        .collect();
                    rows.push(TableRow { label: vec![tag.clone(), s.dimension.to_string()], values, marked });
                }
            }
            Ok(Table { header, rows })
        }
    }
}

/// Per-cycle mean-best series: `cycle,<tag>_mean_best,...`.
pub fn plot_csv(stats: &CampaignStats) -> String {
    let mut out = String::from("cycle");
    for a in &stats.algorithms {
        write!(out, ",{}_mean_best", a.algorithm.tag()).unwrap();
    }
    out.push('\n');
    let len = stats.algorithms.iter().map(|a| a.mean_curve.len()).max().unwrap_or(0);
    for c in 1..=len as u64 {
        write!(out, "{c}").unwrap();
        for a in &stats.algorithms {
            write!(out, ",{}", format_objective(a.mean_best_at(c))).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn emit_plot_data(stats: &CampaignStats, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, plot_csv(stats)).map_err(|e| Error::io(path, e))
}

/// Every run of the campaign: `algorithm,run,seed,best,evaluations,evaluations_to_success`.
pub fn runs_csv(stats: &CampaignStats) -> String {
    let mut out = String::from("algorithm,run,seed,best,evaluations,evaluations_to_success\n");
    for a in &stats.algorithms {
        for (i, r) in a.runs.iter().enumerate() {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                a.algorithm.tag(),
                i,
                r.seed,
                format_objective(r.result.best_objective),
                r.result.evaluations,
                r.result.evaluations_to_success
            )
            .unwrap();
        }
    }
    out
}
