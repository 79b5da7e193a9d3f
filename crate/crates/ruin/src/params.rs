//! Walk parameters and the positions/times they act on.
//!
//! A step of the walk moves right with probability `pr`, left with `pl`, and
//! stays put with the halting probability `pp`. Strict parameters live on the
//! probability simplex `pr + pl + pp = 1`; the non-strict mode drops that
//! constraint because the series identities remain valid for arbitrary
//! non-negative parameter values and are exercised there.

use crate::error::{Error, Result};
use serde::Serialize;

/// Absolute tolerance on `pr + pl + pp = 1` in strict mode.
pub const SIMPLEX_TOL: f64 = 1e-12;

/// The hop-probability triple `(pr, pl, pp)`.
///
/// Immutable after construction. `strict` records which construction path was
/// used; operations that need a genuine probability distribution require it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HopProbabilities {
    pr: f64,
    pl: f64,
    pp: f64,
    strict: bool,
}

/// Lattice site the walk starts from; `0` is the absorbing origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct StartPosition(pub u64);

/// Discrete step count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct TimeIndex(pub u64);

fn check_finite(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::NotFinite { name, value });
    }
    Ok(())
}

fn check_non_negative(name: &'static str, value: f64) -> Result<()> {
    if value < 0.0 {
        return Err(Error::NegativeProbability { name, value });
    }
    Ok(())
}

/// Validates a hop triple.
///
/// Strict mode enforces the simplex constraint; non-strict mode only requires
/// finite, non-negative entries (the identity checks evaluate the formulas at
/// points like `pl = pp = 1`).
pub fn validate(pr: f64, pl: f64, pp: f64, strict: bool) -> Result<HopProbabilities> {
    for (name, value) in [("pr", pr), ("pl", pl), ("pp", pp)] {
        check_finite(name, value)?;
        check_non_negative(name, value)?;
    }
    if strict {
        let sum = pr + pl + pp;
        if (sum - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::SimplexViolation { sum });
        }
    }
    Ok(HopProbabilities { pr, pl, pp, strict })
}

impl HopProbabilities {
    /// Strict constructor: `pr + pl + pp = 1` within [`SIMPLEX_TOL`].
    pub fn strict(pr: f64, pl: f64, pp: f64) -> Result<Self> {
        validate(pr, pl, pp, true)
    }

    /// Non-strict constructor for identity checks; only non-negativity holds.
    pub fn non_strict(pr: f64, pl: f64, pp: f64) -> Result<Self> {
        validate(pr, pl, pp, false)
    }

    pub fn pr(&self) -> f64 {
        self.pr
    }

    pub fn pl(&self) -> f64 {
        self.pl
    }

    pub fn pp(&self) -> f64 {
        self.pp
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    /// Net leftward drift per step, `pl - pr`.
    pub fn delta_p(&self) -> f64 {
        self.pl - self.pr
    }

    /// Base of the geometric long-time tail, `pp + 2 sqrt(pr pl)`.
    ///
    /// For strict parameters this is at most 1, with equality exactly when
    /// `pr = pl` (AM-GM).
    pub fn decay_rate(&self) -> f64 {
        self.pp + 2.0 * (self.pr * self.pl).sqrt()
    }

    pub(crate) fn require_strict(&self, op: &'static str) -> Result<()> {
        if !self.strict {
            return Err(Error::domain(format!(
                "{op} requires strict (simplex) parameters"
            )));
        }
        Ok(())
    }
}
