//! Ordered factorization counts, the limiting expected number of minimal
//! generators as `D -> infinity`, its two-variable Lambert form, Stirling
//! numbers of the second kind and polylogarithms of negative integer order.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

/// Hard cap on the number of series terms.
pub const MAX_TERMS: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymptoticsError {
    #[error("p = {0} must lie strictly between 0 and 1")]
    BadProbability(f64),
    #[error("n must be at least 1")]
    NoVariables,
    #[error("tolerance {eps} not reachable within {limit} terms")]
    NonConvergent { eps: f64, limit: u64 },
    #[error("argument {0} outside (0, 1)")]
    BadArgument(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesValue {
    pub value: f64,
    /// Bound on `|value - exact sum|`: analytic tail bound plus a rounding allowance.
    pub error_bound: f64,
    pub terms: u64,
}

/// Compensated (Neumaier) summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// `tau_r(k)`: ordered factorizations of `k` into `r` factors, by
/// `tau_r(k) = sum_{d | k} tau_{r-1}(d)` with `tau_1 = 1`.
pub fn tau(r: u32, k: u64) -> u64 {
    assert!(r >= 1 && k >= 1, "tau needs r >= 1 and k >= 1");
    let mut memo = HashMap::new();
    tau_memo(r, k, &mut memo)
}

fn tau_memo(r: u32, k: u64, memo: &mut HashMap<(u32, u64), u64>) -> u64 {
    if r == 1 || k == 1 {
        return 1;
    }
    if let Some(&v) = memo.get(&(r, k)) {
        return v;
    }
    let mut total = 0;
    let mut d = 1;
    while d * d <= k {
        if k % d == 0 {
            total += tau_memo(r - 1, d, memo);
            if d * d != k {
                total += tau_memo(r - 1, k / d, memo);
            }
        }
        d += 1;
    }
    memo.insert((r, k), total);
    total
}

/// `tau_r(k)` for `k = 0..=max_k` (entry 0 is unused and set to 0), by
/// repeated Dirichlet convolution with the constant function.
pub fn tau_table(r: u32, max_k: usize) -> Vec<u64> {
    assert!(r >= 1);
    let mut cur = vec![1u64; max_k + 1];
    cur[0] = 0;
    for _ in 1..r {
        let mut next = vec![0u64; max_k + 1];
        for d in 1..=max_k {
            let v = cur[d];
            let mut m = d;
            while m <= max_k {
                next[m] = next[m].saturating_add(v);
                m += d;
            }
        }
        cur = next;
    }
    cur
}

fn check_p(p: f64) -> Result<(), AsymptoticsError> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(AsymptoticsError::BadProbability(p))
    }
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|i| f64::from(i).ln()).sum()
}

/// Upper bound on `sum_{m >= start} m^n q^m` with `q = e^{-lambda}`, valid once
/// `start - 1` is past the maximum of `x^n q^x`; `None` before that point.
fn power_tail_bound(n: u32, lambda: f64, start: u64) -> Option<f64> {
    let a = start as f64 - 1.0;
    if a < f64::from(n) / lambda {
        return None;
    }
    // integral from a to infinity of x^n e^{-lambda x} = Gamma(n+1, lambda a) / lambda^{n+1}
    let z = lambda * a;
    let ln_nf = ln_factorial(n);
    let mut total = 0.0;
    for j in 0..=n {
        let ln_term = -z + f64::from(j) * z.ln() - ln_factorial(j) + ln_nf - f64::from(n + 1) * lambda.ln();
        total += ln_term.exp();
    }
    Some(total)
}

/// Tail bound of `p sum_{k >= terms} tau_n(k+2) q^k` using `tau_n(m) <= m^n`.
fn limit_tail_bound(n: u32, p: f64, terms: u64) -> Option<f64> {
    let lambda = -(-p).ln_1p();
    let q2 = (2.0 * (-p).ln_1p()).exp();
    power_tail_bound(n, lambda, terms + 2).map(|b| p * b / q2)
}

fn terms_for(eps: f64, bound: impl Fn(u64) -> Option<f64>) -> Result<u64, AsymptoticsError> {
    let mut k: u64 = 16;
    while k <= MAX_TERMS {
        if bound(k).is_some_and(|b| b <= eps) {
            // shrink back to the smallest power-of-two-refined count that still works
            let (mut lo, mut hi) = (k / 2, k);
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                if bound(mid).is_some_and(|b| b <= eps) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Ok(hi);
        }
        k *= 2;
    }
    Err(AsymptoticsError::NonConvergent { eps, limit: MAX_TERMS })
}

/// `lim_{D -> inf} E[beta_1] = p sum_{k >= 0} tau_n(k+2) (1-p)^k`, truncated so
/// that the tail (bounded through `tau_n(m) <= m^n`) is at most `eps`.
pub fn expected_beta1_limit(n: u32, p: f64, eps: f64) -> Result<SeriesValue, AsymptoticsError> {
    if n == 0 {
        return Err(AsymptoticsError::NoVariables);
    }
    check_p(p)?;
    let terms = terms_for(eps, |k| limit_tail_bound(n, p, k))?;
    let tail = limit_tail_bound(n, p, terms).unwrap_or(f64::INFINITY);
    let taus = tau_table(n, terms as usize + 1);
    let ln_q = (-p).ln_1p();
    let mut sum = CompensatedSum::default();
    for k in 0..terms {
        sum.add(taus[k as usize + 2] as f64 * (k as f64 * ln_q).exp());
    }
    let value = p * sum.value();
    Ok(SeriesValue {
        value,
        error_bound: tail + 16.0 * f64::EPSILON * value,
        terms,
    })
}

/// Two-variable limit via the Lambert series
/// `p/(1-p)^2 sum_{k >= 1} q^k/(1-q^k) - p/(1-p)`, `q = 1-p`.
pub fn expected_beta1_2vars_lambert(p: f64, eps: f64) -> Result<SeriesValue, AsymptoticsError> {
    check_p(p)?;
    let ln_q = (-p).ln_1p();
    let q = 1.0 - p;
    let scale = p / (q * q);
    // sum_{k > K} q^k/(1-q^k) <= q^{K+1} / ((1-q)(1-q^{K+1}))
    let tail = |k: u64| -> Option<f64> {
        let qk = ((k + 1) as f64 * ln_q).exp();
        Some(scale * qk / (p * -((k + 1) as f64 * ln_q).exp_m1()))
    };
    let terms = terms_for(eps, tail)?;
    let mut sum = CompensatedSum::default();
    for k in 1..=terms {
        let x = k as f64 * ln_q;
        sum.add(x.exp() / -x.exp_m1());
    }
    let value = scale * sum.value() - p / q;
    Ok(SeriesValue {
        value,
        error_bound: tail(terms).unwrap_or(f64::INFINITY) + 16.0 * f64::EPSILON * scale * sum.value(),
        terms,
    })
}

/// Stirling number of the second kind `S(m, k)`.
pub fn stirling2(m: u32, k: u32) -> u128 {
    if k > m {
        return 0;
    }
    let mut row = vec![0u128; k as usize + 1];
    row[0] = 1;
    for i in 1..=m as usize {
        for j in (1..=k.min(i as u32) as usize).rev() {
            row[j] = j as u128 * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    row[k as usize]
}

/// `Li_{-n}(x) = sum_{j=0}^{n} j! S(n+1, j+1) (x/(1-x))^{j+1}` for `0 < x < 1`.
pub fn polylog_neg(n: u32, x: f64) -> Result<f64, AsymptoticsError> {
    if !(x > 0.0 && x < 1.0) {
        return Err(AsymptoticsError::BadArgument(x));
    }
    let r = x / (1.0 - x);
    let mut factorial = 1.0f64;
    let mut total = 0.0;
    for j in 0..=n {
        if j > 0 {
            factorial *= f64::from(j);
        }
        total += factorial * stirling2(n + 1, j + 1) as f64 * r.powi(j as i32 + 1);
    }
    Ok(total)
}

/// Bounds `n <= lim E[beta_1] <= p (1-p)^{-2} Li_{-n}(1-p)`.
pub fn beta1_limit_bounds(n: u32, p: f64) -> Result<(f64, f64), AsymptoticsError> {
    if n == 0 {
        return Err(AsymptoticsError::NoVariables);
    }
    check_p(p)?;
    let q = 1.0 - p;
    Ok((f64::from(n), p / (q * q) * polylog_neg(n, q)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_values() {
        assert_eq!(tau(3, 4), 6);
        assert_eq!(tau(2, 12), 6);
        for r in 1..6 {
            assert_eq!(tau(r, 1), 1);
        }
        let t = tau_table(3, 100);
        for k in 1..=100 {
            assert_eq!(t[k], tau(3, k as u64));
        }
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(4, 2), 7);
        assert_eq!(stirling2(5, 3), 25);
        assert_eq!(stirling2(0, 0), 1);
        assert_eq!(stirling2(3, 0), 0);
    }

    #[test]
    fn polylog_order_minus_one() {
        assert!((polylog_neg(1, 0.5).unwrap() - 2.0).abs() < 1e-12);
        assert!((polylog_neg(0, 0.25).unwrap() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn one_variable_limit_is_one() {
        for p in [0.5, 0.1, 0.01] {
            let v = expected_beta1_limit(1, p, 1e-10).unwrap();
            assert!((v.value - 1.0).abs() <= v.error_bound + 1e-12, "{v:?}");
        }
    }

    #[test]
    fn bad_inputs() {
        assert!(expected_beta1_limit(2, 0.0, 1e-9).is_err());
        assert!(expected_beta1_2vars_lambert(1.0, 1e-9).is_err());
        assert!(polylog_neg(2, 1.0).is_err());
    }

    #[test]
    fn compensated_sum() {
        let mut s = CompensatedSum::default();
        s.add(1e16);
        s.add(1.0);
        s.add(-1e16);
        assert_eq!(s.value(), 1.0);
    }
}
