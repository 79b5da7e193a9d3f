//! Duration moments: the elementary moment generating function, the
//! closed-form low moments, an inductive solver for arbitrary order, and the
//! total ruin probability.
//!
//! `M_x(s)` exists for `s <= s_max = -ln(pp + 2 sqrt(pr pl))`. Moments are
//! finite only for `pl > pr`; otherwise the distribution is defective or
//! heavy-tailed and the operations return [`Error::DivergentMoment`] rather
//! than infinity, because without conditioning on ruin the quantity is not
//! well posed.

use crate::error::{Error, Result};
use crate::params::{HopProbabilities, StartPosition};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

/// An MGF evaluation together with the argument actually used and the domain
/// boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MgfValue {
    pub value: f64,
    pub s: f64,
    pub s_max: f64,
}

/// Domain boundary `-ln(pp + 2 sqrt(pr pl))` of the MGF.
pub fn s_max(params: &HopProbabilities) -> f64 {
    -params.decay_rate().ln()
}

/// `M_x(s) = ((e^{-s} - pp)/(2 pr) - sqrt(((e^{-s} - pp)/(2 pr))^2 - pl/pr))^x`.
///
/// Evaluated in the cancellation-free form `B / (A + sqrt(A^2 - B))` and as
/// the limit `(pl/(e^{-s} - pp))^x` when `pr = 0`. Arguments within 1e-14
/// above `s_max` are clamped onto the boundary.
pub fn mgf(x: StartPosition, s: f64, params: &HopProbabilities) -> Result<MgfValue> {
    params.require_strict("mgf")?;
    if !s.is_finite() {
        return Err(Error::NotFinite { name: "s", value: s });
    }
    let bound = s_max(params);
    if s > bound + 1e-14 {
        return Err(Error::domain(format!(
            "s = {s} beyond the MGF domain boundary s_max = {bound}"
        )));
    }
    let s_eff = s.min(bound);
    let x = x.0;
    if x == 0 {
        return Ok(MgfValue {
            value: 1.0,
            s: s_eff,
            s_max: bound,
        });
    }
    let (pr, pl, pp) = (params.pr(), params.pl(), params.pp());
    let value = if pr == 0.0 {
        if pl == 0.0 {
            // frozen walker: never absorbed
            0.0
        } else {
            (pl / ((-s_eff).exp() - pp)).powi(x as i32)
        }
    } else {
        let a = ((-s_eff).exp() - pp) / (2.0 * pr);
        let b = pl / pr;
        let disc = (a * a - b).max(0.0);
        let m1 = b / (a + disc.sqrt());
        m1.powi(x as i32)
    };
    Ok(MgfValue {
        value,
        s: s_eff,
        s_max: bound,
    })
}

/// `sum_t P(x, t)`: 1 when `pl >= pr`, else `(pl/pr)^x`; equals `M_x(0)`.
pub fn total_ruin_probability(x: StartPosition, params: &HopProbabilities) -> Result<f64> {
    params.require_strict("total_ruin_probability")?;
    let x = x.0;
    if x == 0 {
        return Ok(1.0);
    }
    let (pr, pl) = (params.pr(), params.pl());
    if pl == 0.0 {
        // includes the frozen pr = pl = 0 walker
        return Ok(0.0);
    }
    Ok(if pl >= pr {
        1.0
    } else {
        (pl / pr).powi(x as i32)
    })
}

fn require_convergent(params: &HopProbabilities) -> Result<f64> {
    let delta = params.delta_p();
    if delta <= 0.0 {
        return Err(Error::DivergentMoment { delta_p: delta });
    }
    Ok(delta)
}

/// `<T_x> = x / (pl - pr)`.
pub fn mean(x: StartPosition, params: &HopProbabilities) -> Result<f64> {
    params.require_strict("mean")?;
    let delta = require_convergent(params)?;
    Ok(x.0 as f64 / delta)
}

fn variance_slope(params: &HopProbabilities) -> Result<f64> {
    let delta = require_convergent(params)?;
    let sigma = params.pl() + params.pr();
    Ok(sigma / delta.powi(3) - 1.0 / delta)
}

/// `<T_x^2> = x^2/(pl-pr)^2 + ((pl+pr)/(pl-pr)^3 - 1/(pl-pr)) x`; the linear
/// coefficient equals `(pp(1-pp) + 4 pr pl)/(pl-pr)^3` on the simplex.
pub fn second_moment(x: StartPosition, params: &HopProbabilities) -> Result<f64> {
    params.require_strict("second_moment")?;
    let delta = require_convergent(params)?;
    let x = x.0 as f64;
    Ok(x * x / (delta * delta) + variance_slope(params)? * x)
}

/// `V(T_x) = <T_x^2> - <T_x>^2`; the quadratic parts cancel.
pub fn variance(x: StartPosition, params: &HopProbabilities) -> Result<f64> {
    params.require_strict("variance")?;
    Ok(variance_slope(params)? * x.0 as f64)
}

/// Third moment, degree-3 polynomial in x produced by the same inductive
/// scheme as [`moment_poly`].
pub fn third_moment(x: StartPosition, params: &HopProbabilities) -> Result<f64> {
    params.require_strict("third_moment")?;
    let delta = require_convergent(params)?;
    let sigma = params.pl() + params.pr();
    let x = x.0 as f64;
    let c3 = 1.0 / delta.powi(3);
    let c2 = 3.0 * (sigma / delta.powi(4) - 1.0 / (delta * delta));
    let c1 = (2.0 * sigma * sigma + 4.0 * params.pl() * params.pr()) / delta.powi(5)
        - 3.0 * sigma / delta.powi(3)
        + 1.0 / delta;
    Ok(c3 * x.powi(3) + c2 * x * x + c1 * x)
}

/// `<T_x^k>` as the polynomial `sum_i C_i x^i` (no constant term).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentPolynomial {
    pub order: usize,
    /// `coefficients[i]` multiplies `x^i`; index 0 is always zero.
    pub coefficients: Vec<f64>,
}

impl MomentPolynomial {
    /// `C_i` in the spec's 1-based numbering.
    pub fn coefficient(&self, i: usize) -> f64 {
        self.coefficients[i]
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coefficients.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

/// Scalar the inductive solver runs over: `f64` or exact rationals.
pub trait MomentScalar:
    Clone
    + PartialEq
    + Zero
    + One
    + std::ops::Neg<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Div<Output = Self>
{
    fn from_u64(n: u64) -> Self;
}

impl MomentScalar for f64 {
    fn from_u64(n: u64) -> Self {
        n as f64
    }
}

impl MomentScalar for BigRational {
    fn from_u64(n: u64) -> Self {
        BigRational::from_integer(n.into())
    }
}

fn binomial_u64(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Bottom-up construction of the moment polynomials up to order `k_max`.
///
/// Expanding `t^k` in powers of `t + 1` in the defining recursion gives, for
/// each order, the linear difference equation
/// `pr m(x+1) - (pr + pl) m(x) + pl m(x-1) = sum_{j<k} C(k,j) (-1)^(k-j) m_j(x)`
/// whose polynomial particular solution is found by a triangular solve; the
/// homogeneous parts `A + B (pl/pr)^x` are excluded by `m(0) = 0` and
/// finiteness as `pr -> 0`.
///
/// Returns polynomials indexed by order; entry 0 is the constant 1.
fn moment_polys_generic<T: MomentScalar>(pr: &T, pl: &T, k_max: usize) -> Vec<Vec<T>> {
    assert!(k_max <= 33, "binomials beyond k = 33 overflow u64");
    let mut polys: Vec<Vec<T>> = vec![vec![T::one()]];
    let minus_one = T::zero() - T::one();

    // sign-aware binomial as T
    let signed_binomial = |n: u64, k: u64, negative: bool| -> T {
        let b = T::from_u64(binomial_u64(n, k));
        if negative {
            minus_one.clone() * b
        } else {
            b
        }
    };

    for order in 1..=k_max {
        let kf = order as u64;
        // inhomogeneous polynomial S(x) = sum_{j<k} C(k,j) (-1)^(k-j) m_j(x)
        let mut s = vec![T::zero(); order]; // degrees 0..k-1
        for (j, poly) in polys.iter().enumerate().take(order) {
            let coeff = signed_binomial(kf, j as u64, (order - j) % 2 == 1);
            for (d, c) in poly.iter().enumerate() {
                s[d] = s[d].clone() + coeff.clone() * c.clone();
            }
        }

        // L[x^i] = sum_{d<i} C(i,d) (pr + pl (-1)^(i-d)) x^d; solve top down
        let mut a = vec![T::zero(); order + 1];
        for d in (0..order).rev() {
            let mut rhs = s[d].clone();
            for i in (d + 2)..=order {
                let parity = (i - d) % 2 == 1;
                let weight = if parity {
                    pr.clone() - pl.clone()
                } else {
                    pr.clone() + pl.clone()
                };
                rhs = rhs - T::from_u64(binomial_u64(i as u64, d as u64)) * weight * a[i].clone();
            }
            // diagonal: C(d+1, d) (pr - pl)
            let diag = T::from_u64(d as u64 + 1) * (pr.clone() - pl.clone());
            a[d + 1] = rhs / diag;
        }
        polys.push(a);
    }
    polys
}

/// Moment polynomials 1..=k for one parameter set, computed once and shared.
///
/// Immutable after construction; pass the ladder around instead of
/// recomputing lower orders.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentLadder {
    params: HopProbabilities,
    polys: Vec<MomentPolynomial>,
}

impl MomentLadder {
    pub fn up_to(params: &HopProbabilities, k_max: usize) -> Result<Self> {
        params.require_strict("moment_poly")?;
        require_convergent(params)?;
        if k_max < 1 {
            return Err(Error::domain("moment order must be at least 1"));
        }
        let raw = moment_polys_generic(&params.pr(), &params.pl(), k_max);
        let polys: Vec<MomentPolynomial> = raw
            .into_iter()
            .enumerate()
            .skip(1)
            .map(|(order, coefficients)| MomentPolynomial {
                order,
                coefficients,
            })
            .collect();

        let ladder = MomentLadder {
            params: *params,
            polys,
        };
        ladder.check_residuals()?;
        Ok(ladder)
    }

    /// Verifies `pr m(x+1) - (pr+pl) m(x) + pl m(x-1) = S(x)` at integer
    /// points; floating-point coefficient loss near `pl = pr` surfaces here.
    fn check_residuals(&self) -> Result<()> {
        let (pr, pl) = (self.params.pr(), self.params.pl());
        for poly in &self.polys {
            let order = poly.order;
            for x in 1..=(order as u64 + 2) {
                let xf = x as f64;
                let lhs =
                    pr * poly.eval(xf + 1.0) - (pr + pl) * poly.eval(xf) + pl * poly.eval(xf - 1.0);
                let mut s = 0.0;
                for j in 0..order {
                    let sign = if (order - j) % 2 == 1 { -1.0 } else { 1.0 };
                    let mj = if j == 0 {
                        1.0
                    } else {
                        self.polys[j - 1].eval(xf)
                    };
                    s += sign * binomial_u64(order as u64, j as u64) as f64 * mj;
                }
                let residual = (lhs - s).abs() / s.abs().max(1.0);
                if residual > 1e-10 {
                    return Err(Error::Precision { residual });
                }
            }
        }
        Ok(())
    }

    pub fn max_order(&self) -> usize {
        self.polys.len()
    }

    pub fn polynomial(&self, k: usize) -> &MomentPolynomial {
        &self.polys[k - 1]
    }

    /// `<T_x^k>`.
    pub fn moment(&self, k: usize, x: StartPosition) -> f64 {
        self.polynomial(k).eval(x.0 as f64)
    }
}

/// The degree-k moment polynomial for one order.
pub fn moment_poly(k: usize, params: &HopProbabilities) -> Result<MomentPolynomial> {
    Ok(MomentLadder::up_to(params, k)?.polynomial(k).clone())
}

/// Exact-rational moment polynomial: coefficients `C_1..C_k` of `<T_x^k>`
/// for rational `pr`, `pl` with `pl > pr`. Index 0 of the result is the zero
/// constant term.
pub fn moment_poly_rational(
    k: usize,
    pr: &BigRational,
    pl: &BigRational,
) -> Result<Vec<BigRational>> {
    if k < 1 {
        return Err(Error::domain("moment order must be at least 1"));
    }
    if pl <= pr {
        use num_traits::ToPrimitive;
        return Err(Error::DivergentMoment {
            delta_p: (pl - pr).to_f64().unwrap_or(0.0),
        });
    }
    Ok(moment_polys_generic(pr, pl, k).pop().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::dp_grid;
    use crate::params::TimeIndex;
    use approx::assert_relative_eq;
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn strict(pr: f64, pl: f64, pp: f64) -> HopProbabilities {
        HopProbabilities::strict(pr, pl, pp).unwrap()
    }

    #[test]
    fn mgf_at_zero_is_total_ruin() {
        // defective case: (pl/pr)^x
        let p = strict(0.4, 0.2, 0.4);
        let m = mgf(StartPosition(3), 0.0, &p).unwrap();
        assert_relative_eq!(m.value, 0.125, max_relative = 1e-13);
        // recurrent case
        let p = strict(0.2, 0.4, 0.4);
        let m = mgf(StartPosition(2), 0.0, &p).unwrap();
        assert_relative_eq!(m.value, 1.0, max_relative = 1e-13);
        // zeroth power
        let p = strict(0.3, 0.5, 0.2);
        assert_eq!(mgf(StartPosition(0), -0.7, &p).unwrap().value, 1.0);
    }

    #[test]
    fn mgf_domain_boundary() {
        let p = strict(0.3, 0.5, 0.2);
        let bound = s_max(&p);
        assert_relative_eq!(bound, -p.decay_rate().ln(), max_relative = 1e-15);
        // s = s_max is accepted (sqrt of zero)
        let m = mgf(StartPosition(2), bound, &p).unwrap();
        assert!(m.value.is_finite());
        assert_relative_eq!(m.value, (p.pl() / p.pr()), max_relative = 1e-7);
        // slightly above within rounding clamps
        assert!(mgf(StartPosition(2), bound + 5e-15, &p).is_ok());
        // clearly above errors
        assert!(mgf(StartPosition(2), bound + 1e-6, &p).is_err());
    }

    #[test]
    fn mgf_pr_zero_limit_path() {
        let p = strict(0.0, 0.7, 0.3);
        // T_x = x + NegBin: M_x(s) = (pl e^s / (1 - pp e^s))^x
        for (x, s) in [(1u64, -0.5f64), (3, -0.1), (5, 0.0)] {
            let m = mgf(StartPosition(x), s, &p).unwrap();
            let want = (0.7 * s.exp() / (1.0 - 0.3 * s.exp())).powi(x as i32);
            assert_relative_eq!(m.value, want, max_relative = 1e-12);
        }
        // frozen walker
        let p = strict(0.0, 0.0, 1.0);
        assert_eq!(mgf(StartPosition(4), -1.0, &p).unwrap().value, 0.0);
    }

    #[test]
    fn mgf_matches_pmf_transform() {
        // M_x(s) = sum_t e^(st) P(x, t), truncated with a geometric tail bound
        use crate::exact::pmf;
        let p = strict(0.3, 0.5, 0.2);
        let bound = s_max(&p);
        for x in [1u64, 3, 7] {
            for s in [-1.0, -0.3, 0.0, bound - 0.06] {
                let q = s.exp() * p.decay_rate();
                assert!(q < 1.0);
                let mut sum = 0.0;
                let mut t = 0u64;
                loop {
                    let term =
                        (s * t as f64).exp() * pmf(StartPosition(x), TimeIndex(t), &p).unwrap().value;
                    sum += term;
                    t += 1;
                    if t > 50 && term / (1.0 - q) < 1e-12 * sum {
                        break;
                    }
                }
                let m = mgf(StartPosition(x), s, &p).unwrap();
                assert_relative_eq!(m.value, sum, max_relative = 1e-7);
            }
        }
    }

    #[test]
    fn mgf_derivatives_match_moments() {
        // 4th-order central stencils at s = 0, h = 1e-5
        let p = strict(0.3, 0.5, 0.2);
        let h = 1e-5;
        for x in [1u64, 5] {
            let m = |s: f64| mgf(StartPosition(x), s, &p).unwrap().value;
            let d1 = (m(-2.0 * h) - 8.0 * m(-h) + 8.0 * m(h) - m(2.0 * h)) / (12.0 * h);
            assert_relative_eq!(d1, mean(StartPosition(x), &p).unwrap(), max_relative = 1e-5);
            let d2 = (-m(2.0 * h) + 16.0 * m(h) - 30.0 * m(0.0) + 16.0 * m(-h) - m(-2.0 * h))
                / (12.0 * h * h);
            assert_relative_eq!(
                d2,
                second_moment(StartPosition(x), &p).unwrap(),
                max_relative = 1e-5
            );
        }
    }

    #[test]
    fn total_ruin_examples() {
        let p = strict(0.25, 0.25, 0.5);
        assert_eq!(total_ruin_probability(StartPosition(5), &p).unwrap(), 1.0);
        let p = strict(0.4, 0.2, 0.4);
        assert_relative_eq!(
            total_ruin_probability(StartPosition(3), &p).unwrap(),
            0.125,
            max_relative = 1e-14
        );
        assert_eq!(total_ruin_probability(StartPosition(0), &p).unwrap(), 1.0);
        // frozen walker never reaches the origin
        let p = strict(0.0, 0.0, 1.0);
        assert_eq!(total_ruin_probability(StartPosition(2), &p).unwrap(), 0.0);
    }

    #[test]
    fn closed_form_examples() {
        let p = strict(0.3, 0.5, 0.2);
        assert_relative_eq!(mean(StartPosition(5), &p).unwrap(), 25.0, max_relative = 1e-13);
        assert_eq!(mean(StartPosition(0), &p).unwrap(), 0.0);
        assert_eq!(second_moment(StartPosition(0), &p).unwrap(), 0.0);
        let p = strict(0.4, 0.6, 0.0);
        assert_relative_eq!(
            variance(StartPosition(1), &p).unwrap(),
            120.0,
            max_relative = 1e-10
        );
    }

    #[test]
    fn divergent_moment_errors() {
        let p = strict(0.4, 0.4, 0.2);
        assert!(matches!(
            mean(StartPosition(4), &p),
            Err(Error::DivergentMoment { .. })
        ));
        let p = strict(0.5, 0.3, 0.2);
        assert!(third_moment(StartPosition(1), &p).is_err());
        assert!(MomentLadder::up_to(&p, 3).is_err());
    }

    #[test]
    fn closed_forms_match_dp_sums() {
        let p = strict(0.3, 0.5, 0.2);
        let g = dp_grid(10, 6000, &p).unwrap();
        for x in [1u64, 3, 5, 10] {
            let m1 = g.weighted_time_sum(x, 1);
            let m2 = g.weighted_time_sum(x, 2);
            let m3 = g.weighted_time_sum(x, 3);
            assert_relative_eq!(m1, mean(StartPosition(x), &p).unwrap(), max_relative = 1e-9);
            assert_relative_eq!(
                m2,
                second_moment(StartPosition(x), &p).unwrap(),
                max_relative = 1e-8
            );
            assert_relative_eq!(
                m3,
                third_moment(StartPosition(x), &p).unwrap(),
                max_relative = 1e-6
            );
            assert_relative_eq!(
                m2 - m1 * m1,
                variance(StartPosition(x), &p).unwrap(),
                max_relative = 1e-6
            );
        }
    }

    #[test]
    fn second_moment_equivalent_rewriting() {
        // linear coefficient equals (pp(1-pp) + 4 pr pl)/(pl-pr)^3 on the simplex
        for (pr, pl, pp) in [(0.3, 0.5, 0.2), (0.1, 0.4, 0.5), (0.2, 0.8, 0.0)] {
            let p = strict(pr, pl, pp);
            let delta = pl - pr;
            let alt = (pp * (1.0 - pp) + 4.0 * pr * pl) / delta.powi(3);
            assert_relative_eq!(
                variance_slope(&p).unwrap(),
                alt,
                max_relative = 1e-11
            );
        }
    }

    #[test]
    fn moment_poly_low_orders_match_closed_forms() {
        let p = strict(0.3, 0.5, 0.2);
        let delta = 0.2;
        let sigma = 0.8;
        let k1 = moment_poly(1, &p).unwrap();
        assert_relative_eq!(k1.coefficient(1), 1.0 / delta, max_relative = 1e-12);
        let k2 = moment_poly(2, &p).unwrap();
        assert_relative_eq!(k2.coefficient(2), 1.0 / (delta * delta), max_relative = 1e-12);
        assert_relative_eq!(
            k2.coefficient(1),
            sigma / delta.powi(3) - 1.0 / delta,
            max_relative = 1e-11
        );
        let k3 = moment_poly(3, &p).unwrap();
        for x in [1u64, 2, 7] {
            assert_relative_eq!(
                k3.eval(x as f64),
                third_moment(StartPosition(x), &p).unwrap(),
                max_relative = 1e-11
            );
        }
    }

    #[test]
    fn moment_poly_matches_dp_sums_to_order_five() {
        for (pr, pl, pp) in [(0.3, 0.5, 0.2), (0.2, 0.6, 0.2)] {
            let p = strict(pr, pl, pp);
            let ladder = MomentLadder::up_to(&p, 5).unwrap();
            let g = dp_grid(10, 10_000, &p).unwrap();
            for k in 1..=5usize {
                for x in [1u64, 4, 10] {
                    let dp = g.weighted_time_sum(x, k as u32);
                    let poly = ladder.moment(k, StartPosition(x));
                    assert_relative_eq!(dp, poly, max_relative = 1e-6);
                }
            }
        }
    }

    #[test]
    fn ladder_shares_lower_orders() {
        let p = strict(0.3, 0.5, 0.2);
        let ladder = MomentLadder::up_to(&p, 5).unwrap();
        let standalone = moment_poly(3, &p).unwrap();
        assert_eq!(ladder.polynomial(3), &standalone);
        assert_eq!(ladder.max_order(), 5);
    }

    #[test]
    fn rational_mode_is_exact() {
        let pr = BigRational::new(BigInt::from(3), BigInt::from(10));
        let pl = BigRational::new(BigInt::from(1), BigInt::from(2));
        let coeffs = moment_poly_rational(3, &pr, &pl).unwrap();
        // C_3 = 1/delta^3 = 125, C_2 = 3(sigma/delta^4 - 1/delta^2) = 1425
        assert_eq!(coeffs[3], BigRational::from_integer(125.into()));
        assert_eq!(coeffs[2], BigRational::from_integer(1425.into()));
        assert_eq!(coeffs[1], BigRational::from_integer(5580.into()));
        assert!(coeffs[0].is_zero());

        // and the f64 route agrees with the exact one
        let p = strict(0.3, 0.5, 0.2);
        let poly = moment_poly(3, &p).unwrap();
        for i in 1..=3usize {
            assert_relative_eq!(
                poly.coefficient(i),
                coeffs[i].to_f64().unwrap(),
                max_relative = 1e-11
            );
        }
    }

    #[test]
    fn rational_mode_rejects_divergent() {
        let pr = BigRational::new(BigInt::from(1), BigInt::from(2));
        let pl = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert!(moment_poly_rational(2, &pr, &pl).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn mgf_has_power_structure(
            pr in 0.05f64..0.45,
            frac in 0.1f64..0.9,
            x in 1u64..10,
        ) {
            // M_x(s) = M_1(s)^x
            let pl = pr + (1.0 - 2.0 * pr) * frac;
            let pp = 1.0 - pr - pl;
            prop_assume!(pp >= 0.0);
            let p = strict(pr, pl, pp);
            let bound = s_max(&p);
            for s in [bound - 1.0, bound / 2.0, bound] {
                let mx = mgf(StartPosition(x), s, &p).unwrap().value;
                let m1 = mgf(StartPosition(1), s, &p).unwrap().value;
                prop_assert!((mx - m1.powi(x as i32)).abs() <= 1e-12 * mx.abs().max(1.0));
            }
        }

        #[test]
        fn total_ruin_equals_mgf_at_zero(
            pr in 0.02f64..0.9,
            frac in 0.05f64..0.95,
            x in 0u64..12,
        ) {
            let pl = (1.0 - pr) * frac;
            let pp = 1.0 - pr - pl;
            let p = strict(pr, pl, pp);
            let a = total_ruin_probability(StartPosition(x), &p).unwrap();
            let b = mgf(StartPosition(x), 0.0, &p).unwrap().value;
            prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0));
        }
    }
}
