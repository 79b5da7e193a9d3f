//! Data behind the survey figure: `P(50, t)` against `t` for six parameter
//! sets, three leftward-drift values with two `pr` choices each.
//!
//! The emitted grid is every integer step up to 2000 and then geometrically
//! spaced points up to 1e5; tails that underflow `f64` keep their log values
//! so slope diagnostics stay meaningful.

use crate::error::Result;
use crate::exact::pmf;
use crate::params::{HopProbabilities, StartPosition, TimeIndex};
use serde::Serialize;

/// Start position used by all panels.
pub const FIG2_X: u64 = 50;

/// Drift values, one panel per value.
pub const FIG2_DELTA_P: [f64; 3] = [0.2, 0.1, 0.0];

/// The two curves per panel.
pub const FIG2_PR: [f64; 2] = [0.1, 0.3];

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Fig2Row {
    pub t: u64,
    pub p: f64,
    pub log_p: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Fig2Curve {
    pub delta_p: f64,
    pub pr: f64,
    pub pl: f64,
    pub pp: f64,
    pub x: u64,
    pub rows: Vec<Fig2Row>,
}

impl Fig2Curve {
    pub fn params(&self) -> HopProbabilities {
        HopProbabilities::strict(self.pr, self.pl, self.pp).expect("curve parameters are strict")
    }
}

/// Dense integers to 2000, then 3% geometric steps to 1e5.
pub fn default_grid() -> Vec<u64> {
    let mut ts: Vec<u64> = (50..=2000).collect();
    let mut t = 2000.0f64;
    while t < 1e5 {
        t *= 1.03;
        ts.push(t.round().min(1e5) as u64);
    }
    ts.dedup();
    ts
}

/// One curve: `pl = pr + delta_p`, `pp` inferred, evaluated on `grid`.
pub fn curve(delta_p: f64, pr: f64, x: u64, grid: &[u64]) -> Result<Fig2Curve> {
    let pl = pr + delta_p;
    let pp = 1.0 - pr - pl;
    let params = HopProbabilities::strict(pr, pl, pp)?;
    let rows = grid
        .iter()
        .map(|&t| {
            let v = pmf(StartPosition(x), TimeIndex(t), &params)?;
            Ok(Fig2Row {
                t,
                p: v.value,
                log_p: v.log_value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Fig2Curve {
        delta_p,
        pr,
        pl,
        pp,
        x,
        rows,
    })
}

/// All six curves on the default grid.
pub fn curves() -> Result<Vec<Fig2Curve>> {
    let grid = default_grid();
    let mut out = Vec::with_capacity(6);
    for &dp in &FIG2_DELTA_P {
        for &pr in &FIG2_PR {
            out.push(curve(dp, pr, FIG2_X, &grid)?);
        }
    }
    Ok(out)
}

/// Rises to a single peak then falls, ties allowed (the underflowed tail is a
/// run of zeros).
pub fn is_unimodal(values: &[f64]) -> bool {
    let Some(peak) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
    else {
        return true;
    };
    values[..peak].windows(2).all(|w| w[0] <= w[1])
        && values[peak..].windows(2).all(|w| w[0] >= w[1])
}
