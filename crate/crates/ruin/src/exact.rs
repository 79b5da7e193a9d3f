//! Closed-form evaluation of the first-hitting-time distribution.
//!
//! `P(x, t)` is the probability that a walker started at site `x > 0` first
//! reaches the origin exactly at step `t`. Without halting (`pp = 0`) this is
//! the classic ballot-style formula [`classic_pmf`]; with halting the
//! distribution is the finite sum evaluated by [`pmf`], classifying paths by
//! their number of halting steps. The equivalent hypergeometric closed form
//! [`pmf_via_2f1`] is kept as an independent route for cross-validation.
//!
//! The production path sums non-negative terms assembled in log space, so
//! values stay meaningful far below the `f64` underflow threshold via
//! [`PmfValue::log_value`].

use crate::error::{Error, Result};
use crate::hypergeom::gauss_2f1_terminating_log;
use crate::numeric::{log_factorial, sum_exp_scaled};
use crate::params::{HopProbabilities, StartPosition, TimeIndex};
use serde::Serialize;

/// Which route produced a probability value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Dp,
    Integral,
    MonteCarlo,
    Asymptotic,
}

/// A probability together with its log and provenance.
///
/// `value = exp(log_value)` whenever `value > 0`; when the probability
/// underflows `f64`, `value` is `0` and `log_value` still carries the
/// magnitude (or `-inf` off the support).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PmfValue {
    pub value: f64,
    pub log_value: f64,
    pub method: Method,
}

impl PmfValue {
    fn zero(method: Method) -> Self {
        PmfValue {
            value: 0.0,
            log_value: f64::NEG_INFINITY,
            method,
        }
    }
}

/// `e * ln(base)` under the convention `0^0 = 1` (exponent 0 contributes
/// nothing even at base 0).
fn pow_log(base: f64, exponent: u64) -> f64 {
    if exponent == 0 {
        0.0
    } else if base == 0.0 {
        f64::NEG_INFINITY
    } else {
        exponent as f64 * base.ln()
    }
}

/// Log of the k-th term of the halting-walk sum:
/// `pr^k pl^(x+k) pp^(t-x-2k) x (t-1)! / ((x+k)! k! (t-x-2k)!)`.
fn log_term(x: u64, t: u64, k: u64, pr: f64, pl: f64, pp: f64) -> f64 {
    let halts = t - x - 2 * k;
    (x as f64).ln() + (log_factorial(t - 1) - log_factorial(x + k))
        - log_factorial(k)
        - log_factorial(halts)
        + pow_log(pr, k)
        + pow_log(pl, x + k)
        + pow_log(pp, halts)
}

/// Raw finite-sum evaluation, valid for any non-negative parameters
/// (the formula does not use `pr + pl + pp = 1`). Returns `(value, log_value)`.
pub(crate) fn pmf_raw(x: u64, t: u64, pr: f64, pl: f64, pp: f64) -> (f64, f64) {
    if x == 0 {
        return if t == 0 {
            (1.0, 0.0)
        } else {
            (0.0, f64::NEG_INFINITY)
        };
    }
    if t < x {
        return (0.0, f64::NEG_INFINITY);
    }
    let k_max = (t - x) / 2;
    let logs: Vec<f64> = (0..=k_max).map(|k| log_term(x, t, k, pr, pl, pp)).collect();
    sum_exp_scaled(&logs)
}

/// Classic ruin pmf (no halting): requires `pr + pl = 1`.
///
/// Nonzero only when `t` and `x` have the same parity and `t >= x >= 1`;
/// `(x=0, t=0)` is 1 and `(x=0, t>=1)` is 0.
pub fn classic_pmf(
    x: StartPosition,
    t: TimeIndex,
    pr: f64,
    pl: f64,
) -> Result<PmfValue> {
    for (name, value) in [("pr", pr), ("pl", pl)] {
        if !value.is_finite() {
            return Err(Error::NotFinite { name, value });
        }
        if value < 0.0 {
            return Err(Error::NegativeProbability { name, value });
        }
    }
    let sum = pr + pl;
    if (sum - 1.0).abs() > 1e-12 {
        return Err(Error::PairNotNormalized { sum });
    }
    let (x, t) = (x.0, t.0);
    // same floating-point path as the halting sum with pp = 0: only the
    // k = (t-x)/2 term survives
    let (value, log_value) = pmf_raw(x, t, pr, pl, 0.0);
    Ok(PmfValue {
        value,
        log_value,
        method: Method::ClosedForm,
    })
}

/// First-hitting-time pmf of the halting walk, by the finite sum over the
/// number of rightward hops.
pub fn pmf(x: StartPosition, t: TimeIndex, params: &HopProbabilities) -> Result<PmfValue> {
    params.require_strict("pmf")?;
    let (value, log_value) = pmf_raw(x.0, t.0, params.pr(), params.pl(), params.pp());
    Ok(PmfValue {
        value,
        log_value,
        method: Method::ClosedForm,
    })
}

/// The same pmf through the hypergeometric closed form
/// `pl^x pp^(t-x) (t-1)!/((x-1)!(t-x)!) F((x-t)/2, (x-t+1)/2; x+1; 4 pr pl / pp^2)`.
///
/// Requires `pp > 0` (the argument of F is otherwise infinite) and `x >= 1`;
/// use [`pmf`] for those cases.
pub fn pmf_via_2f1(x: StartPosition, t: TimeIndex, params: &HopProbabilities) -> Result<PmfValue> {
    params.require_strict("pmf_via_2f1")?;
    let (pr, pl, pp) = (params.pr(), params.pl(), params.pp());
    if pp == 0.0 {
        return Err(Error::domain("pmf_via_2f1 requires pp > 0; use pmf"));
    }
    let (x, t) = (x.0, t.0);
    if x < 1 {
        return Err(Error::domain("pmf_via_2f1 requires x >= 1; use pmf"));
    }
    // 1/(t-x)! = 0 makes everything past the horizon vanish
    if t < x {
        return Ok(PmfValue::zero(Method::ClosedForm));
    }
    let a = (x as f64 - t as f64) / 2.0;
    let b = (x as f64 - t as f64 + 1.0) / 2.0;
    let c = x as f64 + 1.0;
    let z = 4.0 * pr * pl / (pp * pp);
    let (sign, log_f) = gauss_2f1_terminating_log(a, b, c, z)?;
    debug_assert!(sign >= 0.0, "halting-walk 2F1 terms are non-negative");
    let log_pre = pow_log(pl, x) + pow_log(pp, t - x) + log_factorial(t - 1)
        - log_factorial(x - 1)
        - log_factorial(t - x);
    let log_value = log_pre + log_f;
    if sign <= 0.0 || log_value == f64::NEG_INFINITY {
        return Ok(PmfValue::zero(Method::ClosedForm));
    }
    Ok(PmfValue {
        value: log_value.exp(),
        log_value,
        method: Method::ClosedForm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn strict(pr: f64, pl: f64, pp: f64) -> HopProbabilities {
        HopProbabilities::strict(pr, pl, pp).unwrap()
    }

    /// Brute-force path enumeration: walk all 3^t step sequences.
    fn enumerated_pmf(x: u64, t: u64, pr: f64, pl: f64, pp: f64) -> f64 {
        if x == 0 {
            return if t == 0 { 1.0 } else { 0.0 };
        }
        if t == 0 {
            return 0.0;
        }
        let mut total = 0.0;
        let mut steps = vec![0u8; t as usize];
        loop {
            let mut pos = x as i64;
            let mut prob = 1.0;
            let mut hit_at = None;
            for (i, &s) in steps.iter().enumerate() {
                prob *= match s {
                    0 => {
                        pos += 1;
                        pr
                    }
                    1 => {
                        pos -= 1;
                        pl
                    }
                    _ => pp,
                };
                if pos == 0 {
                    hit_at = Some(i as u64 + 1);
                    break;
                }
            }
            if hit_at == Some(t) {
                total += prob;
            }
            // next base-3 sequence
            let mut carry = true;
            for s in steps.iter_mut() {
                if *s == 2 {
                    *s = 0;
                } else {
                    *s += 1;
                    carry = false;
                    break;
                }
            }
            if carry {
                break;
            }
        }
        total
    }

    #[test]
    fn classic_examples() {
        let v = classic_pmf(StartPosition(1), TimeIndex(1), 0.4, 0.6).unwrap();
        assert_relative_eq!(v.value, 0.6, max_relative = 1e-14);
        // opposite parity
        let v = classic_pmf(StartPosition(1), TimeIndex(2), 0.4, 0.6).unwrap();
        assert_eq!(v.value, 0.0);
        // 2 of the 16 four-step paths from x=2 first hit the origin at t=4
        let v = classic_pmf(StartPosition(2), TimeIndex(4), 0.5, 0.5).unwrap();
        assert_relative_eq!(v.value, 0.125, max_relative = 1e-14);
    }

    #[test]
    fn classic_boundaries() {
        assert_eq!(
            classic_pmf(StartPosition(0), TimeIndex(0), 0.5, 0.5)
                .unwrap()
                .value,
            1.0
        );
        assert_eq!(
            classic_pmf(StartPosition(0), TimeIndex(3), 0.5, 0.5)
                .unwrap()
                .value,
            0.0
        );
        assert_eq!(
            classic_pmf(StartPosition(5), TimeIndex(3), 0.5, 0.5)
                .unwrap()
                .value,
            0.0
        );
    }

    #[test]
    fn classic_rejects_unnormalized_pair() {
        assert!(matches!(
            classic_pmf(StartPosition(1), TimeIndex(1), 0.4, 0.5),
            Err(Error::PairNotNormalized { .. })
        ));
    }

    #[test]
    fn pmf_boundaries() {
        let p = strict(0.3, 0.5, 0.2);
        assert_eq!(pmf(StartPosition(2), TimeIndex(1), &p).unwrap().value, 0.0);
        assert_eq!(pmf(StartPosition(0), TimeIndex(0), &p).unwrap().value, 1.0);
        assert_eq!(pmf(StartPosition(0), TimeIndex(7), &p).unwrap().value, 0.0);
    }

    #[test]
    fn pmf_hand_enumerated_examples() {
        let p = strict(0.3, 0.5, 0.2);
        // only path of length 2: halt then left
        assert_relative_eq!(
            pmf(StartPosition(1), TimeIndex(2), &p).unwrap().value,
            0.10,
            max_relative = 1e-13
        );
        // (H,H,L) = 0.2*0.2*0.5 and (R,L,L) = 0.3*0.5*0.5
        assert_relative_eq!(
            pmf(StartPosition(1), TimeIndex(3), &p).unwrap().value,
            0.095,
            max_relative = 1e-13
        );
    }

    #[test]
    fn pmf_matches_path_enumeration() {
        for (pr, pl, pp) in [(0.3, 0.5, 0.2), (0.25, 0.25, 0.5), (0.4, 0.6, 0.0)] {
            let p = strict(pr, pl, pp);
            for x in 1..=3u64 {
                for t in x..=9 {
                    let got = pmf(StartPosition(x), TimeIndex(t), &p).unwrap().value;
                    let want = enumerated_pmf(x, t, pr, pl, pp);
                    assert_abs_diff_eq!(got, want, epsilon = 1e-13);
                }
            }
        }
    }

    #[test]
    fn pmf_requires_strict_params() {
        let p = HopProbabilities::non_strict(0.25, 1.0, 1.0).unwrap();
        assert!(pmf(StartPosition(1), TimeIndex(3), &p).is_err());
    }

    #[test]
    fn pmf_with_zero_pp_reduces_to_classic() {
        let p = strict(0.4, 0.6, 0.0);
        for x in 0..=8u64 {
            for t in 0..=40 {
                let a = pmf(StartPosition(x), TimeIndex(t), &p).unwrap().value;
                let b = classic_pmf(StartPosition(x), TimeIndex(t), 0.4, 0.6)
                    .unwrap()
                    .value;
                assert_abs_diff_eq!(a, b, epsilon = 1e-12 * a.max(1e-300));
            }
        }
    }

    #[test]
    fn pmf_degenerate_pr_zero_is_negative_binomial() {
        // only k = 0 contributes: C(t-1, x-1) pl^x pp^(t-x)
        let p = strict(0.0, 0.7, 0.3);
        let x = 3u64;
        for t in 3..=20u64 {
            let got = pmf(StartPosition(x), TimeIndex(t), &p).unwrap().value;
            let binom = (log_factorial(t - 1) - log_factorial(x - 1) - log_factorial(t - x)).exp();
            let want = binom * 0.7f64.powi(x as i32) * 0.3f64.powi((t - x) as i32);
            assert_relative_eq!(got, want, max_relative = 1e-12);
        }
    }

    #[test]
    fn pmf_log_value_survives_underflow() {
        let p = strict(0.1, 0.3, 0.6);
        let v = pmf(StartPosition(50), TimeIndex(100_000), &p).unwrap();
        assert_eq!(v.value, 0.0);
        assert!(v.log_value.is_finite());
        assert!(v.log_value < -5000.0);
    }

    #[test]
    fn via_2f1_examples() {
        let p = strict(0.3, 0.5, 0.2);
        let v = pmf_via_2f1(StartPosition(1), TimeIndex(1), &p).unwrap();
        assert_relative_eq!(v.value, 0.5, max_relative = 1e-13);
        let v = pmf_via_2f1(StartPosition(1), TimeIndex(3), &p).unwrap();
        assert_relative_eq!(v.value, 0.095, max_relative = 1e-12);
        let v = pmf_via_2f1(StartPosition(50), TimeIndex(49), &p).unwrap();
        assert_eq!(v.value, 0.0);
    }

    #[test]
    fn via_2f1_rejects_zero_pp_and_zero_x() {
        let p = strict(0.4, 0.6, 0.0);
        assert!(pmf_via_2f1(StartPosition(1), TimeIndex(3), &p).is_err());
        let p = strict(0.3, 0.5, 0.2);
        assert!(pmf_via_2f1(StartPosition(0), TimeIndex(3), &p).is_err());
    }

    #[test]
    fn via_2f1_agrees_with_sum_even_for_small_pp() {
        // small pp makes the 2F1 argument large; the log-scaled series keeps
        // the route finite
        for (pr, pl, pp) in [(0.3, 0.5, 0.2), (0.475, 0.475, 0.05), (0.05, 0.9, 0.05)] {
            let p = strict(pr, pl, pp);
            for x in [1u64, 5, 13, 20] {
                for t in [x, x + 1, x + 7, 60, 120] {
                    let a = pmf(StartPosition(x), TimeIndex(t), &p).unwrap();
                    let b = pmf_via_2f1(StartPosition(x), TimeIndex(t), &p).unwrap();
                    if a.value > 1e-280 {
                        assert_relative_eq!(a.value, b.value, max_relative = 1e-9);
                    } else {
                        assert_abs_diff_eq!(a.value, b.value, epsilon = 1e-290);
                    }
                }
            }
        }
    }

    #[test]
    fn convolution_in_start_position() {
        // T_{x+y} is the independent sum of T_x and T_y, so the pmfs convolve
        let p = strict(0.3, 0.5, 0.2);
        let t_max = 200u64;
        let table = |x: u64| -> Vec<f64> {
            (0..=t_max)
                .map(|t| pmf(StartPosition(x), TimeIndex(t), &p).unwrap().value)
                .collect()
        };
        for (x, y) in [(1u64, 1u64), (2, 3), (5, 5)] {
            let px = table(x);
            let py = table(y);
            let pxy = table(x + y);
            for t in 0..=t_max {
                let conv: f64 = (0..=t).map(|s| px[s as usize] * py[(t - s) as usize]).sum();
                assert_abs_diff_eq!(conv, pxy[t as usize], epsilon = 1e-10);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn recursion_identity_holds(
            seed_pr in 0.01f64..0.98,
            frac in 0.01f64..0.99,
            x in 1u64..30,
            t in 1u64..300,
        ) {
            // P(x, t+1) = pr P(x+1, t) + pl P(x-1, t) + pp P(x, t)
            let pr = seed_pr;
            let pl = (1.0 - pr) * frac;
            let pp = 1.0 - pr - pl;
            let p = strict(pr, pl, pp);
            prop_assume!(t >= x.saturating_sub(1));
            let lhs = pmf(StartPosition(x), TimeIndex(t + 1), &p).unwrap().value;
            let rhs = pr * pmf(StartPosition(x + 1), TimeIndex(t), &p).unwrap().value
                + pl * pmf(StartPosition(x - 1), TimeIndex(t), &p).unwrap().value
                + pp * pmf(StartPosition(x), TimeIndex(t), &p).unwrap().value;
            prop_assert!((lhs - rhs).abs() <= 1e-12, "residual {}", (lhs - rhs).abs());
        }

        #[test]
        fn pmf_non_negative_and_within_unit(
            x in 0u64..40,
            t in 0u64..250,
        ) {
            let p = strict(0.3, 0.5, 0.2);
            let v = pmf(StartPosition(x), TimeIndex(t), &p).unwrap();
            prop_assert!(v.value >= 0.0 && v.value <= 1.0);
            if t < x {
                prop_assert_eq!(v.value, 0.0);
            }
        }

        #[test]
        fn parity_support_when_no_halting(x in 1u64..20, t in 0u64..100) {
            let p = strict(0.45, 0.55, 0.0);
            let v = pmf(StartPosition(x), TimeIndex(t), &p).unwrap();
            if (t + x) % 2 == 1 {
                prop_assert_eq!(v.value, 0.0);
            }
        }
    }
}
