//! Shared numeric kernels: log-factorial, log-gamma, compensated summation,
//! and a small double-double type for identity checks that need better than
//! `f64` working precision.

use once_cell::sync::Lazy;

/// ln(n!) for n <= EXACT_MAX, from exact `u128` factorials.
const EXACT_MAX: u64 = 33;

static LN_FACTORIAL_TABLE: Lazy<[f64; (EXACT_MAX + 1) as usize]> = Lazy::new(|| {
    let mut table = [0.0; (EXACT_MAX + 1) as usize];
    let mut acc: u128 = 1;
    for n in 1..=EXACT_MAX {
        acc *= n as u128;
        table[n as usize] = (acc as f64).ln();
    }
    table
});

/// ln(n!), exact-table for small n and a Stirling series beyond.
///
/// Relative accuracy is a few ulp everywhere (the Stirling remainder after the
/// 1/(1680 n^7) term is below 1e-17 for n >= 34).
pub fn log_factorial(n: u64) -> f64 {
    if n <= EXACT_MAX {
        return LN_FACTORIAL_TABLE[n as usize];
    }
    let x = n as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    // ln n! = (n + 1/2) ln n - n + ln(2 pi)/2 + 1/(12n) - 1/(360 n^3) + ...
    (x + 0.5) * x.ln() - x
        + 0.5 * (2.0 * std::f64::consts::PI).ln()
        + inv * (1.0 / 12.0 + inv2 * (-1.0 / 360.0 + inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))
}

/// Lanczos g=7 coefficients (9 terms), ~15 significant digits for x > 0.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln Gamma(x) for positive real x.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0, "ln_gamma requires x > 0, got {x}");
    if x < 0.5 {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return (std::f64::consts::PI / (std::f64::consts::PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

/// Kahan compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Sums exp(l) over log-space terms without overflow or premature underflow.
///
/// Returns `(value, log_value)` where `log_value = max + ln(sum exp(l - max))`
/// stays finite even when `value` underflows to zero.
pub fn sum_exp_scaled(log_terms: &[f64]) -> (f64, f64) {
    let max = log_terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return (0.0, f64::NEG_INFINITY);
    }
    let mut acc = KahanSum::new();
    for &l in log_terms {
        acc.add((l - max).exp());
    }
    let log_value = max + acc.value().ln();
    (log_value.exp(), log_value)
}

/// Double-double value: an unevaluated sum `hi + lo` with |lo| <= ulp(hi)/2.
///
/// Only the handful of operations the identity checks need. Not a general
/// purpose type; keep it crate-internal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    pub fn sub(self, other: Dd) -> Dd {
        self.add(Dd {
            hi: -other.hi,
            lo: -other.lo,
        })
    }

    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul(Dd::from_f64(q1)));
        let q2 = (r.hi + r.lo) / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }

    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 {
            return Dd::from_f64(0.0);
        }
        let y = self.hi.sqrt();
        // one Newton correction: y + (self - y^2) / (2y)
        let y_dd = Dd::from_f64(y);
        let r = self.sub(y_dd.mul(y_dd));
        let corr = r.hi / (2.0 * y);
        let (hi, lo) = quick_two_sum(y, corr);
        Dd { hi, lo }
    }

    pub fn powi(self, mut n: u32) -> Dd {
        let mut base = self;
        let mut acc = Dd::from_f64(1.0);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            n >>= 1;
        }
        acc
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            Dd {
                hi: -self.hi,
                lo: -self.lo,
            }
        } else {
            self
        }
    }
}
