//! Long-time behavior: the geometric/power-law dichotomy of the tail, the
//! continuum-limit inverse Gaussian density, and the series identity obtained
//! by evaluating the generating function off the probability simplex.
//!
//! The tail of `P(x, t)` decays like `(pp + 2 sqrt(pr pl))^t t^(-3/2)`. The
//! geometric base equals 1 exactly when `pr = pl`, leaving the bare `t^(-3/2)`
//! power law; otherwise the exponential factor dominates. All evaluations here
//! are assembled in log space so `rate^(t-1)` at `t = 10^6` cannot underflow
//! before the final exponentiation.

use crate::error::{Error, Result};
use crate::exact::{pmf_raw, Method, PmfValue};
use crate::numeric::KahanSum;
use crate::params::{HopProbabilities, StartPosition, TimeIndex};
use serde::Serialize;

/// Tail model `P(x, t) ~ prefactor * decay_rate^t * t^power` with `power`
/// fixed at -3/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticForm {
    pub prefactor: f64,
    pub decay_rate: f64,
    pub power: f64,
}

/// Geometric tail base `pp + 2 sqrt(pr pl)`; 1 exactly when `pr = pl` (AM-GM).
pub fn decay_rate(params: &HopProbabilities) -> f64 {
    params.decay_rate()
}

fn log_asymptotic(x: u64, t: u64, params: &HopProbabilities) -> f64 {
    let (pr, pl) = (params.pr(), params.pl());
    let rate = params.decay_rate();
    let xf = x as f64;
    (xf).ln() - (2.0 * std::f64::consts::PI.sqrt()).ln()
        + (1.0 - xf) / 2.0 * pr.ln()
        + (1.0 + xf) / 2.0 * pl.ln()
        + (t as f64 - 1.0) * rate.ln()
        + 1.5 * (rate.ln() - 0.5 * (pr * pl).ln())
        - 1.5 * (t as f64).ln()
}

/// Tail parameters of `P(x, .)` for strict parameters with `pr, pl > 0`.
pub fn asymptotic_form(x: StartPosition, params: &HopProbabilities) -> Result<AsymptoticForm> {
    params.require_strict("asymptotic_form")?;
    if params.pr() * params.pl() == 0.0 {
        return Err(Error::domain("asymptotic form requires pr > 0 and pl > 0"));
    }
    if x.0 < 1 {
        return Err(Error::domain("asymptotic form requires x >= 1"));
    }
    let rate = params.decay_rate();
    // P ~ prefactor * rate^t * t^(-3/2): fold rate^(t-1) = rate^t / rate
    let log_prefactor = log_asymptotic(x.0, 1, params) - rate.ln();
    Ok(AsymptoticForm {
        prefactor: log_prefactor.exp(),
        decay_rate: rate,
        power: -1.5,
    })
}

/// Long-time approximation
/// `P(x,t) ~ x/(2 sqrt(pi)) pr^((1-x)/2) pl^((1+x)/2) rate^(t-1) (rate/sqrt(pr pl))^(3/2) t^(-3/2)`.
pub fn asymptotic_pmf(
    x: StartPosition,
    t: TimeIndex,
    params: &HopProbabilities,
) -> Result<PmfValue> {
    params.require_strict("asymptotic_pmf")?;
    if params.pr() * params.pl() == 0.0 {
        return Err(Error::domain("asymptotic_pmf requires pr > 0 and pl > 0"));
    }
    if x.0 < 1 || t.0 < 1 {
        return Err(Error::domain("asymptotic_pmf requires x >= 1 and t >= 1"));
    }
    let log_value = log_asymptotic(x.0, t.0, params);
    Ok(PmfValue {
        value: log_value.exp(),
        log_value,
        method: Method::Asymptotic,
    })
}

/// Symmetric-case power law `P(x,t) ~ x/(2 sqrt(pi p)) t^(-3/2)` for
/// `pr = pl = p`.
pub fn power_law_pmf(x: StartPosition, t: TimeIndex, p: f64) -> Result<f64> {
    if !(p > 0.0) {
        return Err(Error::domain("power_law_pmf requires p > 0"));
    }
    if t.0 < 1 {
        return Err(Error::domain("power_law_pmf requires t >= 1"));
    }
    Ok(x.0 as f64 / (2.0 * (std::f64::consts::PI * p).sqrt()) * (t.0 as f64).powf(-1.5))
}

/// Continuum-limit parameters: drift `v` (sign convention `(pr - pl) d/e -> v`,
/// so leftward drift is negative), diffusion coefficient `D > 0` of the
/// underlying simple walk, and the halting probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContinuumParams {
    pub v: f64,
    pub d: f64,
    pub pp: f64,
}

impl ContinuumParams {
    pub fn new(v: f64, d: f64, pp: f64) -> Result<Self> {
        if !d.is_finite() || d <= 0.0 {
            return Err(Error::domain(format!("diffusion coefficient {d} must be positive")));
        }
        if !(0.0..1.0).contains(&pp) {
            return Err(Error::domain(format!("pp = {pp} outside [0, 1)")));
        }
        if !v.is_finite() {
            return Err(Error::NotFinite { name: "v", value: v });
        }
        Ok(ContinuumParams { v, d, pp })
    }
}

/// First-passage density of the continuum limit (inverse Gaussian):
/// `rho(xi, tau) = xi / sqrt(4 pi (1-pp) D tau^3) exp(-(xi + v tau)^2 / (4 (1-pp) D tau))`.
///
/// Halting enters only through the rescaled diffusion coefficient `(1-pp) D`.
pub fn inverse_gaussian_density(xi: f64, tau: f64, cp: &ContinuumParams) -> Result<f64> {
    if !(xi > 0.0) {
        return Err(Error::domain(format!("xi = {xi} must be positive")));
    }
    if !(tau > 0.0) {
        return Err(Error::domain(format!("tau = {tau} must be positive")));
    }
    let d_eff = (1.0 - cp.pp) * cp.d;
    let spread = 4.0 * d_eff * tau;
    let shift = xi + cp.v * tau;
    Ok(xi / (std::f64::consts::PI * spread * tau * tau).sqrt() * (-shift * shift / spread).exp())
}

/// Truncation gap of the series identity
/// `sum_t e^(st) binom(t-1, x-1) F((x-t)/2, (x-t+1)/2; x+1; z) = M`-form RHS,
/// at the substitution `pr = z/4`, `pl = pp = 1` (non-strict parameters) and
/// general `s` in the convergence region `e^s (1 + sqrt(z)) < 1`.
pub fn series_identity_gap_at(x: u32, z: f64, s: f64, t_trunc: u64) -> Result<f64> {
    if x < 1 {
        return Err(Error::domain("x must be a positive integer"));
    }
    if !(0.0 < z && z < 1.0) {
        return Err(Error::domain(format!("z = {z} outside (0, 1)")));
    }
    if t_trunc < x as u64 {
        return Err(Error::domain("t_trunc must be at least x"));
    }
    let growth = s.exp() * (1.0 + z.sqrt());
    if growth >= 1.0 {
        return Err(Error::domain(format!(
            "series diverges: e^s (1 + sqrt(z)) = {growth} >= 1"
        )));
    }
    // partial sum of e^(st) P(x, t; z/4, 1, 1); the formula never used the
    // simplex constraint, so the off-simplex evaluation is legitimate
    let pr = z / 4.0;
    let mut acc = KahanSum::new();
    for t in (x as u64)..=t_trunc {
        let (_, log_p) = pmf_raw(x as u64, t, pr, 1.0, 1.0);
        let log_term = log_p + s * t as f64;
        if log_term > f64::NEG_INFINITY {
            acc.add(log_term.exp());
        }
    }
    // RHS: (A - sqrt(A^2 - B))^x with A = 2(e^{-s} - 1)/z, B = 4/z, in the
    // cancellation-free form
    let a = 2.0 * ((-s).exp() - 1.0) / z;
    let b = 4.0 / z;
    let disc = (a * a - b).max(0.0);
    let rhs = (b / (a + disc.sqrt())).powi(x as i32);
    Ok((acc.value() - rhs).abs())
}

/// The named `e^{-s} = 2` instance: partial sums of
/// `sum_t 2^(-t) binom(t-1, x-1) F(...; z)` against `((2 - 2 sqrt(1-z))/z)^x`.
pub fn series_identity_gap(x: u32, z: f64, t_trunc: u64) -> Result<f64> {
    series_identity_gap_at(x, z, -std::f64::consts::LN_2, t_trunc)
}

/// Ordinary least-squares slope of `ys` against `xs`.
pub fn ols_slope(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2, "need at least two points to fit a slope");
    let n = xs.len() as f64;
    let xm = xs.iter().sum::<f64>() / n;
    let ym = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        num += (x - xm) * (y - ym);
        den += (x - xm) * (x - xm);
    }
    num / den
}
