//! Independent routes to the same distribution: the defining recursion on a
//! dense grid, quadrature on the integral representation, and direct Monte
//! Carlo simulation. These validate the closed forms and double as the
//! production paths for bulk grids and empirical work.

use crate::error::{Error, Result};
use crate::exact::{Method, PmfValue};
use crate::numeric::{log_factorial, KahanSum};
use crate::params::{HopProbabilities, StartPosition, TimeIndex};
use crate::quadrature::unit_rule;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Default cap on stored grid cells (~1 GiB of f64).
pub const DEFAULT_CELL_BUDGET: u128 = 1 << 27;

/// Versioned identifier of the sampling scheme stored in every histogram.
pub const RNG_ALGORITHM: &str = "chacha8/substream-per-sample/v1";

/// Dense table of `P(x, t)` filled by the defining recursion.
#[derive(Debug, Clone)]
pub struct DpGrid {
    x_max: u64,
    t_max: u64,
    params: HopProbabilities,
    /// column-major in t: entry (x, t) at `t * (x_max + 1) + x`
    values: Vec<f64>,
}

impl DpGrid {
    pub fn x_max(&self) -> u64 {
        self.x_max
    }

    pub fn t_max(&self) -> u64 {
        self.t_max
    }

    pub fn params(&self) -> &HopProbabilities {
        &self.params
    }

    pub fn value(&self, x: u64, t: u64) -> f64 {
        assert!(x <= self.x_max && t <= self.t_max, "index out of grid");
        self.values[(t * (self.x_max + 1) + x) as usize]
    }

    pub fn pmf_value(&self, x: u64, t: u64) -> PmfValue {
        let v = self.value(x, t);
        PmfValue {
            value: v,
            log_value: if v > 0.0 { v.ln() } else { f64::NEG_INFINITY },
            method: Method::Dp,
        }
    }

    /// `sum_t t^k P(x, t)` over the stored columns, compensated.
    pub fn weighted_time_sum(&self, x: u64, k: u32) -> f64 {
        let mut acc = KahanSum::new();
        for t in 0..=self.t_max {
            let v = self.value(x, t);
            if v != 0.0 {
                acc.add((t as f64).powi(k as i32) * v);
            }
        }
        acc.value()
    }
}

/// Fills `P(x, t)` for `x <= x_max`, `t <= t_max` by iterating
/// `P(x, t+1) = pr P(x+1, t) + pl P(x-1, t) + pp P(x, t)` with
/// `P(0,0) = 1`, `P(x,0) = 0` (x >= 1), `P(0,t) = 0` (t >= 1).
///
/// The rolling working column extends to `max(x_max, t_max) + 1` sites, so
/// truncation never reaches the stored rows (entries with `x > t` are exactly
/// zero). Memory for the result is `(x_max+1)(t_max+1)` cells, checked
/// against the budget.
pub fn dp_grid(x_max: u64, t_max: u64, params: &HopProbabilities) -> Result<DpGrid> {
    dp_grid_with_budget(x_max, t_max, params, DEFAULT_CELL_BUDGET)
}

pub fn dp_grid_with_budget(
    x_max: u64,
    t_max: u64,
    params: &HopProbabilities,
    budget: u128,
) -> Result<DpGrid> {
    params.require_strict("dp_grid")?;
    if x_max < 1 {
        return Err(Error::domain("dp_grid requires x_max >= 1"));
    }
    let cells = (x_max as u128 + 1) * (t_max as u128 + 1);
    if cells > budget {
        return Err(Error::Capacity { cells, budget });
    }
    let (pr, pl, pp) = (params.pr(), params.pl(), params.pp());
    let width = x_max.max(t_max) as usize + 1;
    // one leading ghost cell (x = width) so the update can read x+1 freely
    let mut prev = vec![0.0f64; width + 2];
    let mut next = vec![0.0f64; width + 2];
    prev[0] = 1.0;

    let stride = (x_max + 1) as usize;
    let mut values = vec![0.0f64; stride * (t_max as usize + 1)];
    values[0] = 1.0;

    for t in 1..=t_max as usize {
        next[0] = 0.0;
        for x in 1..=width {
            next[x] = pr * prev[x + 1] + pl * prev[x - 1] + pp * prev[x];
        }
        values[t * stride..t * stride + stride].copy_from_slice(&next[..stride]);
        std::mem::swap(&mut prev, &mut next);
    }

    Ok(DpGrid {
        x_max,
        t_max,
        params: *params,
        values,
    })
}

/// Node count for the trigonometric integrands: the integrand is a finite
/// Fourier series of degree at most `t + x`, and this count drives the error
/// to the e-12 range.
fn node_count(x: u64, t: u64) -> usize {
    64.max((t + x + 16) as usize)
}

/// `int_0^1 cos^(t-1)(pi phi) sin(pi phi) sin(pi x phi) dphi` by quadrature.
pub fn trig_integral(x: StartPosition, t: TimeIndex) -> f64 {
    let (x, t) = (x.0, t.0);
    assert!(x >= 1 && t >= 1, "trig_integral requires x >= 1, t >= 1");
    let rule = unit_rule(node_count(x, t));
    rule.integrate(|phi| {
        let pi_phi = std::f64::consts::PI * phi;
        pi_phi.cos().powi(t as i32 - 1) * pi_phi.sin() * (x as f64 * pi_phi).sin()
    })
}

/// Combinatorial closed form of the same integral:
/// `x/2^t (t-1)! / (((t+x)/2)! ((t-x)/2)!)` for same-parity `x, t`, else 0.
pub fn trig_integral_closed_form(x: StartPosition, t: TimeIndex) -> f64 {
    let (x, t) = (x.0, t.0);
    assert!(x >= 1 && t >= 1);
    if t < x || (t + x) % 2 != 0 {
        return 0.0;
    }
    let log = (x as f64).ln() - t as f64 * std::f64::consts::LN_2 + log_factorial(t - 1)
        - log_factorial((t + x) / 2)
        - log_factorial((t - x) / 2);
    log.exp()
}

/// Quadrature route to the pmf:
/// `P = 2 pr^((1-x)/2) pl^((1+x)/2) int_0^1 (pp + 2 sqrt(pr pl) cos(pi phi))^(t-1) sin(pi phi) sin(pi x phi) dphi`.
///
/// Requires `pr > 0` and `pl > 0` (the prefactor is undefined otherwise).
/// The oscillatory cancellation inside the integral amplifies roundoff by
/// roughly `(pl/pr)^((x-1)/2)`, so absolute accuracy degrades once that
/// factor reaches ~1e5; callers wanting deep-left-drift values at large `x`
/// should use the series path.
pub fn pmf_integral(
    x: StartPosition,
    t: TimeIndex,
    params: &HopProbabilities,
) -> Result<PmfValue> {
    params.require_strict("pmf_integral")?;
    let (pr, pl, pp) = (params.pr(), params.pl(), params.pp());
    if pr == 0.0 || pl == 0.0 {
        return Err(Error::domain("pmf_integral requires pr > 0 and pl > 0"));
    }
    let (x, t) = (x.0, t.0);
    if x < 1 || t < 1 {
        return Err(Error::domain("pmf_integral requires x >= 1 and t >= 1"));
    }
    let amplitude = 2.0 * (pr * pl).sqrt();
    let rule = unit_rule(node_count(x, t));
    let integral = rule.integrate(|phi| {
        let pi_phi = std::f64::consts::PI * phi;
        (pp + amplitude * pi_phi.cos()).powi(t as i32 - 1)
            * pi_phi.sin()
            * (x as f64 * pi_phi).sin()
    });
    let log_pre = std::f64::consts::LN_2 + (1.0 - x as f64) / 2.0 * pr.ln()
        + (1.0 + x as f64) / 2.0 * pl.ln();
    if integral <= 0.0 {
        // off-support values land here as quadrature noise around zero
        return Ok(PmfValue {
            value: 0.0,
            log_value: f64::NEG_INFINITY,
            method: Method::Integral,
        });
    }
    let log_value = log_pre + integral.ln();
    Ok(PmfValue {
        value: log_value.exp(),
        log_value,
        method: Method::Integral,
    })
}

/// Outcome of one simulated walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkOutcome {
    Absorbed(TimeIndex),
    Censored,
}

/// Runs a single walk until absorption at the origin or `t_cap` steps.
///
/// Step choice compares one uniform variate against the cumulative
/// `(pr, pr + pl)`: right, then left, then halt. Deterministic given the
/// generator state; `params` must be strict.
pub fn simulate_one(
    x: StartPosition,
    params: &HopProbabilities,
    t_cap: TimeIndex,
    rng: &mut impl Rng,
) -> WalkOutcome {
    debug_assert!(params.is_strict());
    let (pr, pl) = (params.pr(), params.pl());
    let mut pos = x.0;
    if pos == 0 {
        return WalkOutcome::Absorbed(TimeIndex(0));
    }
    for t in 1..=t_cap.0 {
        let u: f64 = rng.random();
        if u < pr {
            pos += 1;
        } else if u < pr + pl {
            pos -= 1;
        }
        if pos == 0 {
            return WalkOutcome::Absorbed(TimeIndex(t));
        }
    }
    WalkOutcome::Censored
}

/// Histogram of absorption times over independent walks.
///
/// Sample `i` always consumes substream `i` of the seed, so the histogram
/// depends only on `(seed, n_samples)` no matter how the work is scheduled,
/// and censored walks are counted, never dropped.
#[derive(Debug, Clone, Serialize)]
pub struct EmpiricalPmf {
    pub x: u64,
    pub params: HopProbabilities,
    pub t_cap: u64,
    pub n_samples: u64,
    pub seed: u64,
    pub rng_algorithm: String,
    /// counts[t] = number of walks absorbed exactly at step t, 0 <= t <= t_cap
    pub counts: Vec<u64>,
    pub censored: u64,
}

impl EmpiricalPmf {
    pub fn frequency(&self, t: u64) -> f64 {
        self.counts[t as usize] as f64 / self.n_samples as f64
    }

    pub fn pmf_value(&self, t: u64) -> PmfValue {
        let v = self.frequency(t);
        PmfValue {
            value: v,
            log_value: if v > 0.0 { v.ln() } else { f64::NEG_INFINITY },
            method: Method::MonteCarlo,
        }
    }
}

pub fn empirical_pmf(
    x: StartPosition,
    params: &HopProbabilities,
    n_samples: u64,
    t_cap: TimeIndex,
    seed: u64,
) -> Result<EmpiricalPmf> {
    params.require_strict("empirical_pmf")?;
    if n_samples < 1 {
        return Err(Error::domain("n_samples must be at least 1"));
    }
    let mut counts = vec![0u64; t_cap.0 as usize + 1];
    let mut censored = 0u64;
    for i in 0..n_samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i);
        match simulate_one(x, params, t_cap, &mut rng) {
            WalkOutcome::Absorbed(t) => counts[t.0 as usize] += 1,
            WalkOutcome::Censored => censored += 1,
        }
    }
    Ok(EmpiricalPmf {
        x: x.0,
        params: *params,
        t_cap: t_cap.0,
        n_samples,
        seed,
        rng_algorithm: RNG_ALGORITHM.to_string(),
        counts,
        censored,
    })
}
