// SPDX-License-Identifier: Apache-2.0

//! Result records and their CSV/JSON encodings.
//!
//! The CSV header is fixed and every float is printed with six decimals, so
//! a given set of runs always produces the same bytes.

use std::io::{Read, Write};

use pbit_core::RunResult;
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

pub const CSV_COLUMNS: [&str; 16] = [
    "run_id",
    "graph",
    "policy",
    "tau_ns",
    "c",
    "b",
    "d_ns",
    "time_ns",
    "seed",
    "final_cut",
    "normalized_cut",
    "final_energy",
    "pbits_physical",
    "cost_norm",
    "d_tau_ratio",
    "applied_updates",
];

/// One run, flattened for output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub run_id: u64,
    pub graph: String,
    pub policy: String,
    pub tau_ns: f64,
    pub c: f64,
    pub b: u32,
    pub d_ns: f64,
    pub time_ns: f64,
    pub seed: u64,
    pub final_cut: i64,
    pub normalized_cut: f64,
    pub final_energy: f64,
    pub pbits_physical: usize,
    pub cost_norm: f64,
    pub d_tau_ratio: f64,
    pub applied_updates: u64,
}

impl Record {
    pub fn from_result(run_id: u64, r: &RunResult) -> Self {
        Record {
            run_id,
            graph: r.graph.clone(),
            policy: r.config.policy.name().to_string(),
            tau_ns: r.config.tau_ns,
            c: r.config.c,
            b: r.config.bits,
            d_ns: r.config.d_ns,
            time_ns: r.config.t_total_ns,
            seed: r.seed,
            final_cut: r.final_cut,
            normalized_cut: r.normalized_cut,
            final_energy: r.final_energy,
            pbits_physical: r.pbits_physical,
            cost_norm: r.cost_norm,
            d_tau_ratio: r.d_tau_ratio,
            applied_updates: r.applied_updates,
        }
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.run_id,
            self.graph,
            self.policy,
            fixed(self.tau_ns),
            fixed(self.c),
            self.b,
            fixed(self.d_ns),
            fixed(self.time_ns),
            self.seed,
            self.final_cut,
            fixed(self.normalized_cut),
            fixed(self.final_energy),
            self.pbits_physical,
            fixed(self.cost_norm),
            fixed(self.d_tau_ratio),
            self.applied_updates,
        )
    }
}

/// Six-decimal fixed formatting; negative zero prints as zero.
pub fn fixed(x: f64) -> String {
    format!("{:.6}", x + 0.0)
}

pub fn csv_header() -> String {
    CSV_COLUMNS.join(",")
}

pub fn write_csv<W: Write>(mut out: W, records: &[Record]) -> Result<()> {
    let mut text = csv_header();
    text.push('\n');
    for r in records {
        text.push_str(&r.csv_row());
        text.push('\n');
    }
    out.write_all(text.as_bytes()).map_err(io_err)?;
    Ok(())
}

/// Writes a JSON array, or a bare object when `single` is set and there is
/// exactly one record.
pub fn write_json<W: Write>(mut out: W, records: &[Record], single: bool) -> Result<()> {
    match records {
        [one] if single => serde_json::to_writer_pretty(&mut out, one)?,
        _ => serde_json::to_writer_pretty(&mut out, records)?,
    }
    out.write_all(b"\n").map_err(io_err)?;
    Ok(())
}

/// Reads records, checking that every schema column is present.
pub fn read_csv<R: Read>(input: R) -> Result<Vec<Record>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let headers = reader.headers()?.clone();
    let mut index = [0usize; CSV_COLUMNS.len()];
    for (slot, col) in index.iter_mut().zip(CSV_COLUMNS) {
        *slot = headers
            .iter()
            .position(|h| h == col)
            .ok_or_else(|| HarnessError::Schema(format!("missing column `{col}`")))?;
    }

    let mut records = Vec::new();
    for (row, rec) in reader.records().enumerate() {
        let rec = rec?;
        let line = row + 2;
        let field = |k: usize| rec.get(index[k]).unwrap_or("");
        records.push(Record {
            run_id: parse(field(0), CSV_COLUMNS[0], line)?,
            graph: field(1).to_string(),
            policy: field(2).to_string(),
            tau_ns: parse(field(3), CSV_COLUMNS[3], line)?,
            c: parse(field(4), CSV_COLUMNS[4], line)?,
            b: parse(field(5), CSV_COLUMNS[5], line)?,
            d_ns: parse(field(6), CSV_COLUMNS[6], line)?,
            time_ns: parse(field(7), CSV_COLUMNS[7], line)?,
            seed: parse(field(8), CSV_COLUMNS[8], line)?,
            final_cut: parse(field(9), CSV_COLUMNS[9], line)?,
            normalized_cut: parse(field(10), CSV_COLUMNS[10], line)?,
            final_energy: parse(field(11), CSV_COLUMNS[11], line)?,
            pbits_physical: parse(field(12), CSV_COLUMNS[12], line)?,
            cost_norm: parse(field(13), CSV_COLUMNS[13], line)?,
            d_tau_ratio: parse(field(14), CSV_COLUMNS[14], line)?,
            applied_updates: parse(field(15), CSV_COLUMNS[15], line)?,
        });
    }
    Ok(records)
}

fn parse<T: std::str::FromStr>(text: &str, column: &str, line: usize) -> Result<T> {
    text.parse()
        .map_err(|_| HarnessError::Schema(format!("line {line}: bad value `{text}` in column `{column}`")))
}

/// Energy traces as `run_id,t_ns,energy`.
pub fn write_traces<W: Write>(mut out: W, traces: &[(u64, Vec<(f64, f64)>)]) -> Result<()> {
    let mut text = String::from("run_id,t_ns,energy\n");
    for (id, trace) in traces {
        for &(t, h) in trace {
            text.push_str(&format!("{id},{},{}\n", fixed(t), fixed(h)));
        }
    }
    out.write_all(text.as_bytes()).map_err(io_err)?;
    Ok(())
}

fn io_err(source: std::io::Error) -> HarnessError {
    HarnessError::Io {
        path: "<output>".into(),
        source,
    }
}
