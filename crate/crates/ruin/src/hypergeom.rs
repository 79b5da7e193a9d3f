//! Terminating Gauss hypergeometric series and the gamma-function identities
//! behind the closed-form solution, exposed as checkable operations.
//!
//! The probability formulas only ever need 2F1 with a non-positive-integer
//! parameter, so the series is a finite sum. Terms are summed in index order
//! with Kahan compensation; in the probabilistic use all terms are
//! non-negative, so ordering is not a stability concern.

use crate::error::{Error, Result};
use crate::numeric::{log_factorial, ln_gamma, Dd, KahanSum};

/// Rising factorial `(alpha)_k = alpha (alpha+1) ... (alpha+k-1)`; 1 for k = 0.
pub fn pochhammer(alpha: f64, k: u64) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        acc *= alpha + i as f64;
    }
    acc
}

fn non_positive_integer(x: f64) -> Option<u64> {
    if x <= 0.0 && x.fract() == 0.0 && x >= -(u64::MAX as f64) {
        Some((-x) as u64)
    } else {
        None
    }
}

/// A terminating (or explicitly truncated) 2F1 evaluation plan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TerminatingSeriesSpec {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub z: f64,
    /// Number of nonzero terms summed.
    pub term_count: u64,
}

impl TerminatingSeriesSpec {
    /// Plans the sum for parameters where `a` or `b` is a non-positive
    /// integer, so the series terminates by itself.
    pub fn new(a: f64, b: f64, c: f64, z: f64) -> Result<Self> {
        let last = match (non_positive_integer(a), non_positive_integer(b)) {
            (Some(na), Some(nb)) => na.min(nb),
            (Some(na), None) => na,
            (None, Some(nb)) => nb,
            (None, None) => return Err(Error::NonTerminatingSeries { a, b }),
        };
        let term_count = last + 1;
        if let Some(nc) = non_positive_integer(c) {
            // (c)_k hits zero at k = nc + 1; fatal if reached before the end
            if nc < last {
                return Err(Error::domain(format!(
                    "2F1 parameter c = {c} reaches a pole before the series terminates"
                )));
            }
        }
        Ok(Self {
            a,
            b,
            c,
            z,
            term_count,
        })
    }

    /// Caller-supplied truncation after `term_count` terms.
    pub fn with_truncation(a: f64, b: f64, c: f64, z: f64, term_count: u64) -> Result<Self> {
        if let Some(nc) = non_positive_integer(c) {
            if nc + 1 < term_count {
                return Err(Error::domain(format!(
                    "2F1 parameter c = {c} reaches a pole within the requested {term_count} terms"
                )));
            }
        }
        Ok(Self {
            a,
            b,
            c,
            z,
            term_count,
        })
    }

    /// Sums the series in index order with compensation.
    pub fn eval(&self) -> f64 {
        let mut acc = KahanSum::new();
        let mut term = 1.0;
        acc.add(term);
        for k in 0..self.term_count.saturating_sub(1) {
            let kf = k as f64;
            term *= (self.a + kf) * (self.b + kf) / ((self.c + kf) * (kf + 1.0)) * self.z;
            if term == 0.0 {
                break;
            }
            acc.add(term);
        }
        acc.value()
    }
}

/// Terminating 2F1(a, b; c; z); requires `a` or `b` to be a non-positive
/// integer.
pub fn gauss_2f1_terminating(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    Ok(TerminatingSeriesSpec::new(a, b, c, z)?.eval())
}

/// Terminating 2F1 evaluated in log space: returns `(sign, ln |F|)`.
///
/// Keeps huge values representable; the pmf route uses this because the
/// argument `4 pr pl / pp^2` can make the plain sum overflow long before the
/// final probability does.
pub fn gauss_2f1_terminating_log(a: f64, b: f64, c: f64, z: f64) -> Result<(f64, f64)> {
    let spec = TerminatingSeriesSpec::new(a, b, c, z)?;
    if spec.term_count == 1 || z == 0.0 {
        return Ok((1.0, 0.0));
    }
    // per-term log magnitude and sign
    let mut logs = Vec::with_capacity(spec.term_count as usize);
    let mut signs = Vec::with_capacity(spec.term_count as usize);
    let mut log_term = 0.0;
    let mut sign = 1.0;
    logs.push(log_term);
    signs.push(sign);
    for k in 0..spec.term_count - 1 {
        let kf = k as f64;
        let fa = a + kf;
        let fb = b + kf;
        let fc = c + kf;
        if fa == 0.0 || fb == 0.0 {
            break;
        }
        log_term += fa.abs().ln() + fb.abs().ln() - fc.abs().ln() - (kf + 1.0).ln() + z.abs().ln();
        sign *= fa.signum() * fb.signum() * fc.signum() * z.signum();
        logs.push(log_term);
        signs.push(sign);
    }
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut acc = KahanSum::new();
    for (l, s) in logs.iter().zip(&signs) {
        acc.add(s * (l - max).exp());
    }
    let total = acc.value();
    Ok((total.signum(), max + total.abs().ln()))
}

/// |series - elementary form| for `F(x/2, (x+1)/2; x+1; z) = ((2 - 2 sqrt(1-z))/z)^x`.
///
/// Both sides are evaluated in double-double arithmetic so the reported gap
/// reflects the identity, not `f64` summation noise; the series is truncated
/// once a term drops below 1e-17 of the partial sum.
pub fn elementary_2f1_identity_gap(x: u32, z: f64) -> Result<f64> {
    if x < 1 {
        return Err(Error::domain("x must be a positive integer"));
    }
    if !(0.0 < z && z < 1.0) {
        return Err(Error::domain(format!("z = {z} outside (0, 1)")));
    }
    let a = Dd::from_f64(x as f64).div(Dd::from_f64(2.0));
    let b = Dd::from_f64((x + 1) as f64).div(Dd::from_f64(2.0));
    let c = Dd::from_f64((x + 1) as f64);
    let zd = Dd::from_f64(z);

    let mut term = Dd::from_f64(1.0);
    let mut sum = term;
    for k in 0..200_000u64 {
        let kf = Dd::from_f64(k as f64);
        let num = a.add(kf).mul(b.add(kf)).mul(zd);
        let den = c.add(kf).mul(Dd::from_f64((k + 1) as f64));
        term = term.mul(num.div(den));
        sum = sum.add(term);
        if term.abs().to_f64() < 1e-17 * sum.abs().to_f64() {
            break;
        }
    }

    let one = Dd::from_f64(1.0);
    let two = Dd::from_f64(2.0);
    let sqrt_one_minus_z = one.sub(zd).sqrt();
    let base = two.sub(two.mul(sqrt_one_minus_z)).div(zd);
    let rhs = base.powi(x);

    Ok(sum.sub(rhs).abs().to_f64())
}

/// Relative gap of the factorial-to-gamma rewriting
/// `1/(t-x-2k)! = 2^{2k} / Gamma(t+1-x) * ratio of Gammas at (x-t)/2 offsets`,
/// with the reflection-formula `(-1)^k` factors tracked as explicit signs on
/// log magnitudes.
pub fn gamma_expression_identity_gap(x: u64, t: u64, k: u64) -> Result<f64> {
    if x < 1 {
        return Err(Error::domain("x must be a positive integer"));
    }
    if t <= x {
        return Err(Error::domain(format!("need t > x, got x = {x}, t = {t}")));
    }
    if t < x + 2 * k {
        return Err(Error::domain(format!(
            "t - x - 2k = {} is negative",
            t as i64 - x as i64 - 2 * k as i64
        )));
    }
    let lhs = (-log_factorial(t - x - 2 * k)).exp();

    // reflection turns each Gamma ratio at negative arguments into a ratio at
    // positive ones times (-1)^k
    let u = (t - x) as f64 / 2.0;
    let kf = k as f64;
    let sign_half = if k % 2 == 0 { 1.0 } else { -1.0 }; // from Gamma(u + 1/2 - k)
    let sign_int = if k % 2 == 0 { 1.0 } else { -1.0 }; // from Gamma(u + 1 - k)
    let log_mag = -ln_gamma((t + 1 - x) as f64)
        + (ln_gamma(u + 0.5) - ln_gamma(u + 0.5 - kf))
        + (ln_gamma(u + 1.0) - ln_gamma(u + 1.0 - kf))
        + 2.0 * kf * std::f64::consts::LN_2;
    let rhs = sign_half * sign_int * log_mag.exp();

    Ok(((rhs - lhs) / lhs).abs())
}

/// Coefficients `binom(t-1, k) / 2^(t-1)` of the finite Fourier expansion
/// `cos^(t-1)(pi phi) = sum_k coeff_k cos((2k - t + 1) pi phi)`.
pub fn cos_power_fourier_coeffs(t: u64) -> Vec<f64> {
    assert!(t >= 1, "t must be positive");
    let n = t - 1;
    let mut coeffs = Vec::with_capacity(t as usize);
    let mut c = 0.5f64.powi(n as i32);
    coeffs.push(c);
    for k in 0..n {
        c *= (n - k) as f64 / (k + 1) as f64;
        coeffs.push(c);
    }
    coeffs
}
