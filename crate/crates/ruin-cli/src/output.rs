//! Table serialization. CSV carries 17 significant digits (round-trip safe)
//! with LF line endings; JSON is one compact object per report. Both are
//! byte-stable for identical inputs.

use ruin::oracles::EmpiricalPmf;
use ruin::HopProbabilities;
use serde::Serialize;
use std::io::Write;
use std::path::Path;

#[derive(Serialize)]
pub struct ParamsOut {
    pub pr: f64,
    pub pl: f64,
    pub pp: f64,
}

impl From<&HopProbabilities> for ParamsOut {
    fn from(p: &HopProbabilities) -> Self {
        ParamsOut {
            pr: p.pr(),
            pl: p.pl(),
            pp: p.pp(),
        }
    }
}

#[derive(Serialize)]
pub struct Row {
    pub t: u64,
    pub p: f64,
}

impl Row {
    pub fn new(t: u64, p: f64) -> Self {
        Row { t, p }
    }
}

#[derive(Serialize)]
pub struct PmfTable {
    pub params: ParamsOut,
    pub method: &'static str,
    pub x: u64,
    pub rows: Vec<Row>,
}

impl PmfTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,p\n");
        for row in &self.rows {
            out.push_str(&format!("{},{:.16e}\n", row.t, row.p));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("serializable");
        s.push('\n');
        s
    }
}

#[derive(Serialize)]
pub struct MomentRow {
    pub quantity: String,
    pub closed_form: Option<f64>,
    pub bottom_up: Option<f64>,
}

#[derive(Serialize)]
pub struct MomentsReport {
    pub params: ParamsOut,
    pub x: u64,
    pub rows: Vec<MomentRow>,
}

fn opt_cell(v: Option<f64>) -> String {
    v.map(|v| format!("{v:.16e}")).unwrap_or_default()
}

impl MomentsReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("quantity,closed_form,bottom_up\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{}\n",
                row.quantity,
                opt_cell(row.closed_form),
                opt_cell(row.bottom_up)
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("serializable");
        s.push('\n');
        s
    }
}

#[derive(Serialize)]
pub struct MgfReport {
    pub params: ParamsOut,
    pub x: u64,
    pub s: f64,
    pub m: f64,
    pub s_max: f64,
}

impl MgfReport {
    pub fn to_csv(&self) -> String {
        format!(
            "s,m,s_max\n{:.16e},{:.16e},{:.16e}\n",
            self.s, self.m, self.s_max
        )
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("serializable");
        s.push('\n');
        s
    }
}

/// Sparse rows `t,count` for absorbed walks, then one `censored,n` row.
pub fn histogram_csv(hist: &EmpiricalPmf) -> String {
    let mut out = String::from("t,count\n");
    for (t, &count) in hist.counts.iter().enumerate() {
        if count > 0 {
            out.push_str(&format!("{t},{count}\n"));
        }
    }
    out.push_str(&format!("censored,{}\n", hist.censored));
    out
}

pub fn histogram_json(hist: &EmpiricalPmf) -> String {
    let mut s = serde_json::to_string(hist).expect("serializable");
    s.push('\n');
    s
}

/// Writes to the path, or stdout when no path is given.
pub fn emit(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}
