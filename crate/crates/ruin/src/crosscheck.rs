//! Cross-method equivalence sweeps: the series, recursion-grid,
//! hypergeometric, and quadrature routes evaluated over a common grid of
//! positions, times, and sampled parameter triples, with the worst
//! discrepancies reported per method pair.

use crate::error::Result;
use crate::exact::{pmf, pmf_via_2f1};
use crate::oracles::{dp_grid, pmf_integral};
use crate::params::{HopProbabilities, StartPosition, TimeIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CrosscheckConfig {
    pub x_max: u64,
    pub t_max: u64,
    pub triples: usize,
    pub seed: u64,
    /// |exact - dp| and |exact - integral| bound
    pub tol_abs: f64,
    /// exact vs 2F1 relative bound
    pub tol_rel: f64,
    /// recursion-identity residual bound
    pub tol_recursion: f64,
    /// smallest allowed component of a sampled triple
    pub min_component: f64,
    /// cap on pl/pr when sampling; the quadrature route loses absolute
    /// accuracy like (pl/pr)^((x-1)/2) * ulp, so triples beyond roughly 2.2
    /// at x = 30 cannot meet an 1e-10 absolute bound in f64
    pub max_left_right_ratio: f64,
}

impl Default for CrosscheckConfig {
    fn default() -> Self {
        CrosscheckConfig {
            x_max: 30,
            t_max: 200,
            triples: 25,
            seed: 20_240_817,
            tol_abs: 1e-10,
            tol_rel: 1e-9,
            tol_recursion: 1e-12,
            min_component: 0.02,
            max_left_right_ratio: 2.2,
        }
    }
}

impl CrosscheckConfig {
    /// Smaller grid for interactive runs.
    pub fn quick() -> Self {
        CrosscheckConfig {
            x_max: 10,
            t_max: 60,
            triples: 5,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct WorstCase {
    pub x: u64,
    pub t: u64,
    pub pr: f64,
    pub pl: f64,
    pub pp: f64,
    pub discrepancy: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairStats {
    pub pair: &'static str,
    /// worst absolute (or relative, for the 2F1 pair) discrepancy seen
    pub max_discrepancy: f64,
    pub tolerance: f64,
    pub worst: Option<WorstCase>,
}

impl PairStats {
    fn new(pair: &'static str, tolerance: f64) -> Self {
        PairStats {
            pair,
            max_discrepancy: 0.0,
            tolerance,
            worst: None,
        }
    }

    fn update(&mut self, d: f64, x: u64, t: u64, p: &HopProbabilities) {
        if d > self.max_discrepancy {
            self.max_discrepancy = d;
            self.worst = Some(WorstCase {
                x,
                t,
                pr: p.pr(),
                pl: p.pl(),
                pp: p.pp(),
                discrepancy: d,
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.max_discrepancy <= self.tolerance
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CrosscheckReport {
    pub config: CrosscheckConfig,
    pub pairs: Vec<PairStats>,
    pub failures: Vec<String>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Uniform simplex triples (sorted-spacings construction), resampled until
/// every component clears `min_component` and `pl <= ratio * pr`.
pub fn sample_triples(
    n: usize,
    seed: u64,
    min_component: f64,
    max_left_right_ratio: f64,
) -> Vec<HopProbabilities> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let (a, b): (f64, f64) = (rng.random(), rng.random());
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let (pr, pl, pp) = (lo, hi - lo, 1.0 - hi);
        if pr.min(pl).min(pp) < min_component {
            continue;
        }
        if pl > max_left_right_ratio * pr {
            continue;
        }
        out.push(HopProbabilities::strict(pr, pl, pp).expect("construction is on the simplex"));
    }
    out
}

/// Runs the sweep. Every (x, t) point of every triple is evaluated by all
/// four routes; the recursion identity is checked on the series route.
pub fn run(config: &CrosscheckConfig) -> Result<CrosscheckReport> {
    let triples = sample_triples(
        config.triples,
        config.seed,
        config.min_component,
        config.max_left_right_ratio,
    );
    let mut dp_pair = PairStats::new("exact-vs-dp (abs)", config.tol_abs);
    let mut hyp_pair = PairStats::new("exact-vs-2f1 (rel)", config.tol_rel);
    let mut int_pair = PairStats::new("exact-vs-integral (abs)", config.tol_abs);
    let mut rec_pair = PairStats::new("recursion-residual (abs)", config.tol_recursion);

    for params in &triples {
        let grid = dp_grid(config.x_max + 1, config.t_max + 1, params)?;
        // exact table up to x_max+1 / t_max+1 feeds every comparison
        let width = (config.x_max + 2) as usize;
        let height = (config.t_max + 2) as usize;
        let mut exact = vec![0.0f64; width * height];
        for x in 0..width as u64 {
            for t in 0..height as u64 {
                exact[x as usize * height + t as usize] =
                    pmf(StartPosition(x), TimeIndex(t), params)?.value;
            }
        }
        let at = |x: u64, t: u64| exact[x as usize * height + t as usize];

        for x in 1..=config.x_max {
            for t in x..=config.t_max {
                let e = at(x, t);

                let d = (e - grid.value(x, t)).abs();
                dp_pair.update(d, x, t, params);

                let h = pmf_via_2f1(StartPosition(x), TimeIndex(t), params)?;
                if e > 1e-280 || h.value > 1e-280 {
                    let rel = (e - h.value).abs() / e.max(h.value);
                    hyp_pair.update(rel, x, t, params);
                }

                let q = pmf_integral(StartPosition(x), TimeIndex(t), params)?;
                int_pair.update((e - q.value).abs(), x, t, params);

                let residual = (at(x, t + 1)
                    - (params.pr() * at(x + 1, t)
                        + params.pl() * at(x.saturating_sub(1), t)
                        + params.pp() * at(x, t)))
                .abs();
                rec_pair.update(residual, x, t, params);
            }
        }
    }

    let pairs = vec![dp_pair, hyp_pair, int_pair, rec_pair];
    let failures = pairs
        .iter()
        .filter(|p| !p.passed())
        .map(|p| {
            let w = p.worst.as_ref().expect("failing pair has a worst case");
            format!(
                "{}: {} > {} at x={}, t={}, (pr, pl, pp) = ({}, {}, {})",
                p.pair, p.max_discrepancy, p.tolerance, w.x, w.t, w.pr, w.pl, w.pp
            )
        })
        .collect();

    Ok(CrosscheckReport {
        config: config.clone(),
        pairs,
        failures,
    })
}
