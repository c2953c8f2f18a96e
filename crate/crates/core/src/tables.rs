//! The per-type constant table and the two threshold-formula tables, as
//! text, JSON or CSV.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::json;

use crate::error::{invalid, Error, Result};
use crate::rootsys::{CartanType, Family, RootSystem};
use crate::weightcomb::structural_constants;

pub const SCHEMA: &str = "chevbounds/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => invalid(format!("unknown format {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Structural,
    ComparisonEven,
    ComparisonOdd,
}

impl FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "structural" => Ok(TableKind::Structural),
            "comparison-p2" => Ok(TableKind::ComparisonEven),
            "comparison-odd" => Ok(TableKind::ComparisonOdd),
            other => invalid(format!("unknown table {other:?}")),
        }
    }
}

impl TableKind {
    pub fn name(self) -> &'static str {
        match self {
            TableKind::Structural => "structural",
            TableKind::ComparisonEven => "comparison-p2",
            TableKind::ComparisonOdd => "comparison-odd",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralRow {
    #[serde(rename = "type")]
    pub label: String,
    pub c: String,
    pub t: String,
    pub ct: String,
}

const CLASSICAL_RANKS: std::ops::RangeInclusive<usize> = 1..=8;

fn constants(family: Family, rank: usize) -> Option<(i64, u64)> {
    let t = CartanType::new(family, rank).ok()?;
    Some(structural_constants(&RootSystem::new(t).ok()?))
}

/// One symbolic row for a classical family. `D_n` is summarized by its even
/// ranks; see [`structural_notes`].
fn classical_row(family: Family) -> Result<StructuralRow> {
    let label = format!("{family}_n");
    let samples: Vec<(usize, i64, u64)> = CLASSICAL_RANKS
        .filter(|&n| family != Family::D || n % 2 == 0)
        .filter_map(|n| constants(family, n).map(|(c, t)| (n, c, t)))
        .collect();
    let (_, c0, t0) = samples[0];
    if samples.iter().any(|&(_, c, _)| c != c0) {
        return Err(Error::Contradiction(format!("c varies with rank in family {family}")));
    }
    if family == Family::A {
        if samples.iter().any(|&(n, _, t)| t != n as u64 + 1) {
            return Err(Error::Contradiction("fundamental group exponent of A_n is not n+1".into()));
        }
        let sym = if c0 == 1 { "n+1".to_string() } else { format!("{c0}(n+1)") };
        return Ok(StructuralRow { label, c: c0.to_string(), t: "n+1".into(), ct: sym });
    }
    if samples.iter().any(|&(_, _, t)| t != t0) {
        return Err(Error::Contradiction(format!("t varies with rank in family {family}")));
    }
    Ok(StructuralRow { label, c: c0.to_string(), t: t0.to_string(), ct: (c0 * t0 as i64).to_string() })
}

pub fn structural_rows() -> Result<Vec<StructuralRow>> {
    let mut rows = Vec::new();
    for family in [Family::A, Family::B, Family::C, Family::D] {
        rows.push(classical_row(family)?);
    }
    for (family, rank) in [(Family::E, 6), (Family::E, 7), (Family::E, 8), (Family::F, 4), (Family::G, 2)] {
        let (c, t) = constants(family, rank).expect("exceptional types build");
        rows.push(StructuralRow {
            label: format!("{family}{rank}"),
            c: c.to_string(),
            t: t.to_string(),
            ct: (c * t as i64).to_string(),
        });
    }
    Ok(rows)
}

/// Caveats on the symbolic rows.
pub fn structural_notes() -> Vec<String> {
    let odd: Vec<String> = CLASSICAL_RANKS
        .filter(|n| n % 2 == 1)
        .filter_map(|n| constants(Family::D, n).map(|(_, t)| format!("D{n}: t={t}")))
        .collect();
    vec![format!("the D_n row holds for even n; for odd n the group is cyclic of order 4 ({})", odd.join(", "))]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaRow {
    pub source: &'static str,
    pub e_formula: &'static str,
    pub f_formula: &'static str,
}

pub const NORMALIZATION_NOTE: &str =
    "both rows use s >= e and r >= floor(e)+f+1; the CPSVDK f is one less than its published value";

pub fn comparison_rows(kind: TableKind) -> Vec<FormulaRow> {
    match kind {
        TableKind::ComparisonEven => vec![
            FormulaRow { source: "CPSVDK", e_formula: "max{ctm-1, 0}", f_formula: "floor(log_2(t*c(M)+1))+1" },
            FormulaRow { source: "uniform", e_formula: "m", f_formula: "ceil(log_2(d(M)+1))" },
        ],
        TableKind::ComparisonOdd => vec![
            FormulaRow {
                source: "CPSVDK",
                e_formula: "max{floor((ctm-1)/(p-1)), floor((c*t_p(lambda)*(m-1)-1)/(p-1))+1}",
                f_formula: "floor(log_p(t*c(M)+1))+1",
            },
            FormulaRow { source: "uniform", e_formula: "m/(p-2)", f_formula: "ceil(log_p(d(M)+1))" },
        ],
        TableKind::Structural => Vec::new(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Fixed-width grid with a rule under the header; `right[i]` right-aligns column `i`.
fn text_grid(header: &[&str], right: &[bool], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|i| rows.iter().map(|r| r[i].chars().count()).chain([header[i].chars().count()]).max().unwrap())
        .collect();
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .zip(right)
            .map(|((c, &w), &r)| {
                let pad = " ".repeat(w - c.chars().count());
                if r {
                    format!("{pad}{c}")
                } else {
                    format!("{c}{pad}")
                }
            })
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = String::new();
    let _ = writeln!(out, "{}", line(header.to_vec()));
    let _ = writeln!(out, "{}", "-".repeat(widths.iter().sum::<usize>() + 2 * (widths.len() - 1)));
    for r in rows {
        let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()));
    }
    out
}

pub fn emit_table(kind: TableKind, format: OutputFormat) -> Result<String> {
    match kind {
        TableKind::Structural => {
            let rows = structural_rows()?;
            Ok(match format {
                OutputFormat::Csv => {
                    let mut out = String::from("type,c,t,ct\n");
                    for r in &rows {
                        let _ = writeln!(out, "{},{},{},{}", r.label, r.c, r.t, r.ct);
                    }
                    out
                }
                OutputFormat::Json => {
                    let doc = json!({ "schema": SCHEMA, "table": kind.name(), "rows": rows });
                    serde_json::to_string_pretty(&doc).expect("rows serialize") + "\n"
                }
                OutputFormat::Text => {
                    let cells: Vec<Vec<String>> =
                        rows.iter().map(|r| vec![r.label.clone(), r.c.clone(), r.t.clone(), r.ct.clone()]).collect();
                    text_grid(&["Φ", "c", "t", "c·t"], &[false, true, true, true], &cells)
                }
            })
        }
        TableKind::ComparisonEven | TableKind::ComparisonOdd => {
            let rows = comparison_rows(kind);
            Ok(match format {
                OutputFormat::Csv => {
                    let mut out = String::from("source,e_formula,f_formula\n");
                    for r in &rows {
                        let _ = writeln!(out, "{},{},{}", r.source, csv_field(r.e_formula), csv_field(r.f_formula));
                    }
                    out
                }
                OutputFormat::Json => {
                    let doc =
                        json!({ "schema": SCHEMA, "table": kind.name(), "rows": rows, "note": NORMALIZATION_NOTE });
                    serde_json::to_string_pretty(&doc).expect("rows serialize") + "\n"
                }
                OutputFormat::Text => {
                    let cells: Vec<Vec<String>> = rows
                        .iter()
                        .map(|r| vec![r.source.to_string(), r.e_formula.to_string(), r.f_formula.to_string()])
                        .collect();
                    let mut out = text_grid(&["source", "e", "f"], &[false; 3], &cells);
                    let _ = writeln!(out, "note: {NORMALIZATION_NOTE}");
                    out
                }
            })
        }
    }
}
