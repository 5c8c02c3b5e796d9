//! Serialized shapes of the command outputs and the writer.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use crate::{CliError, Format};

#[derive(Serialize)]
pub struct JackTable {
    pub table: &'static str,
    pub alpha: String,
    pub n: usize,
    pub entries: Vec<JackRow>,
}

#[derive(Serialize)]
pub struct JackRow {
    pub lambda: Vec<usize>,
    pub jack: String,
    pub norm: String,
}

#[derive(Serialize)]
pub struct OperatorTable {
    pub table: &'static str,
    pub name: String,
    pub alpha: String,
    pub degree: usize,
    pub columns: Vec<OperatorColumn>,
}

#[derive(Serialize)]
pub struct OperatorColumn {
    pub mu: Vec<usize>,
    pub image: String,
}

#[derive(Serialize)]
pub struct CoeffTableOut {
    pub kind: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    pub entries: Vec<CoeffRow>,
}

#[derive(Serialize)]
pub struct CoeffRow {
    pub pi: Vec<usize>,
    pub mu: Vec<usize>,
    pub nu: Vec<usize>,
    /// The coefficient: a polynomial in `a` in symbolic mode, a rational
    /// number otherwise.
    #[serde(rename = "alpha")]
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
}

#[derive(Serialize)]
pub struct MomentsTable {
    pub table: &'static str,
    pub lambda: Vec<usize>,
    pub alpha: String,
    pub entries: Vec<MomentRow>,
}

#[derive(Serialize)]
pub struct MomentRow {
    pub order: usize,
    pub value: String,
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

pub fn partition_label(p: &[usize]) -> String {
    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}

pub fn format_or(format: Option<Format>, default: Format) -> Format {
    format.unwrap_or(default)
}
