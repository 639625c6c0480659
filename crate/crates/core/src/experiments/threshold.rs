//! Finite-size checks of threshold behaviour, the critical region of the
//! zero-ideal property, and homology frequency campaigns.

use num_traits::One;
use serde::Serialize;

use super::{estimate, estimate_many, EstimateRecord, ExperimentError, HomologyVariant, Property};
use crate::monomial::count_up_to;
use crate::rational::{ExactProb, Rational};
use crate::sampling::Seed;

/// Number of standard errors tolerated when comparing two frequencies.
pub const NOISE_SIGMAS: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Trend {
    /// Non-decreasing along the grid, heading to 1.
    Increasing,
    /// Non-increasing along the grid, heading to 0.
    Decreasing,
}

fn slack(se_a: f64, se_b: f64) -> f64 {
    NOISE_SIGMAS * (se_a * se_a + se_b * se_b).sqrt()
}

/// Monotone in the given direction up to sampling noise, for every pair of points.
pub fn check_trend(freqs: &[f64], std_errors: &[f64], trend: Trend) -> bool {
    assert_eq!(freqs.len(), std_errors.len());
    (0..freqs.len()).all(|i| {
        (i + 1..freqs.len()).all(|j| {
            let s = slack(std_errors[i], std_errors[j]);
            match trend {
                Trend::Increasing => freqs[j] >= freqs[i] - s,
                Trend::Decreasing => freqs[j] <= freqs[i] + s,
            }
        })
    })
}

/// Rises then falls (either part may be empty) up to sampling noise.
pub fn is_unimodal(freqs: &[f64], std_errors: &[f64]) -> bool {
    if freqs.is_empty() {
        return true;
    }
    (0..freqs.len()).any(|peak| {
        check_trend(&freqs[..=peak], &std_errors[..=peak], Trend::Increasing)
            && check_trend(&freqs[peak..], &std_errors[peak..], Trend::Decreasing)
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckPoint {
    /// The grid variable (`D`, `n` or `d`) this point belongs to.
    pub grid_value: u32,
    pub n: usize,
    #[serde(rename = "D")]
    pub max_degree: u32,
    pub p: f64,
    pub property: Property,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdCheck {
    pub name: String,
    pub points: Vec<CheckPoint>,
    pub trend: Trend,
    /// Required final frequency: above this for an increasing trend, below for a decreasing one.
    pub endpoint: Option<f64>,
    pub samples: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdOutcome {
    pub name: String,
    pub records: Vec<EstimateRecord>,
    pub trend: Trend,
    pub monotone: bool,
    pub endpoint_ok: bool,
}

impl ThresholdOutcome {
    pub fn passed(&self) -> bool {
        self.monotone && self.endpoint_ok
    }

    pub fn freqs(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.freq).collect()
    }
}

/// Estimates every point (point `k` uses stream `k`) and checks the trend.
pub fn run_threshold_check(check: &ThresholdCheck) -> Result<ThresholdOutcome, ExperimentError> {
    let records = check
        .points
        .iter()
        .enumerate()
        .map(|(k, pt)| {
            estimate(
                pt.property,
                pt.n,
                pt.max_degree,
                pt.p,
                check.samples,
                Seed::with_stream(check.seed, k as u64),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    let freqs: Vec<f64> = records.iter().map(|r| r.freq).collect();
    let ses: Vec<f64> = records.iter().map(EstimateRecord::std_error).collect();
    let monotone = check_trend(&freqs, &ses, check.trend);
    let endpoint_ok = match (check.endpoint, freqs.last()) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(b), Some(&last)) => match check.trend {
            Trend::Increasing => last > b,
            Trend::Decreasing => last < b,
        },
    };
    Ok(ThresholdOutcome {
        name: check.name.clone(),
        records,
        trend: check.trend,
        monotone,
        endpoint_ok,
    })
}

fn side(below: bool) -> &'static str {
    if below {
        "below"
    } else {
        "above"
    }
}

/// `dim <= t-1` has threshold `D^-t` as `D` grows: at `p = D^{-t-delta}` the
/// frequency falls toward 0, at `p = D^{-t+delta}` it rises toward 1.
pub fn krull_threshold_check(t: u32, n: usize, d_grid: &[u32], delta: f64, below: bool, samples: u64, seed: u64) -> ThresholdCheck {
    assert!(t >= 1);
    let exponent = if below { f64::from(t) + delta } else { f64::from(t) - delta };
    ThresholdCheck {
        name: format!("dim<={} {} D^-{t} (n={n})", t - 1, side(below)),
        points: d_grid
            .iter()
            .map(|&d| CheckPoint {
                grid_value: d,
                n,
                max_degree: d,
                p: f64::from(d).powf(-exponent),
                property: Property::DimLe(t as usize - 1),
            })
            .collect(),
        trend: if below { Trend::Decreasing } else { Trend::Increasing },
        endpoint: Some(if below { 0.2 } else { 0.8 }),
        samples,
        seed,
    }
}

/// The zero ideal has threshold `D^-n`: likely below, unlikely above.
pub fn zero_ideal_threshold_check(n: usize, d_grid: &[u32], delta: f64, below: bool, samples: u64, seed: u64) -> ThresholdCheck {
    let exponent = if below { n as f64 + delta } else { n as f64 - delta };
    ThresholdCheck {
        name: format!("zero-ideal {} D^-{n}", side(below)),
        points: d_grid
            .iter()
            .map(|&d| CheckPoint {
                grid_value: d,
                n,
                max_degree: d,
                p: f64::from(d).powf(-exponent),
                property: Property::ZeroIdeal,
            })
            .collect(),
        trend: if below { Trend::Increasing } else { Trend::Decreasing },
        endpoint: Some(if below { 0.8 } else { 0.2 }),
        samples,
        seed,
    }
}

/// No generator of degree `<= d` has threshold `d^-n` in `d`: with `n` and `D`
/// fixed and `d` along the grid, `p = d^{-n-delta}` makes it likely and
/// `p = d^{-n+delta}` unlikely.
pub fn initdeg_band_check(
    n: usize,
    max_degree: u32,
    d_grid: &[u32],
    delta: f64,
    below: bool,
    samples: u64,
    seed: u64,
) -> ThresholdCheck {
    let exponent = if below { n as f64 + delta } else { n as f64 - delta };
    ThresholdCheck {
        name: format!("initdeg>d {} d^-{n} (n={n}, D={max_degree})", side(below)),
        points: d_grid
            .iter()
            .map(|&d| CheckPoint {
                grid_value: d,
                n,
                max_degree,
                p: f64::from(d).powf(-exponent),
                property: Property::InitdegGt(d),
            })
            .collect(),
        trend: if below { Trend::Increasing } else { Trend::Decreasing },
        endpoint: Some(if below { 0.8 } else { 0.2 }),
        samples,
        seed,
    }
}

/// At `p = D^{-exponent}` with `exponent > t`, monomials of support `<= t`
/// disappear as `D` grows. Trend only; convergence is slow.
pub fn support_lemma_check(n: usize, t: usize, d_grid: &[u32], exponent: f64, samples: u64, seed: u64) -> ThresholdCheck {
    ThresholdCheck {
        name: format!("no-support<={t} at D^-{exponent} (n={n})"),
        points: d_grid
            .iter()
            .map(|&d| CheckPoint {
                grid_value: d,
                n,
                max_degree: d,
                p: f64::from(d).powf(-exponent),
                property: Property::NoSupportLe(t),
            })
            .collect(),
        trend: Trend::Increasing,
        endpoint: None,
        samples,
        seed,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CriticalRegime {
    /// `p = 1 / (C(n+D, D) - 1)`.
    Critical,
    /// `p = n^-D`.
    NPowerMinusD,
    /// `p = D^-n`.
    DPowerMinusN,
}

/// Exact mean and variance of `|B|` at one grid point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalRow {
    pub n: usize,
    #[serde(rename = "D")]
    pub max_degree: u32,
    pub p: ExactProb,
    pub monomials: u64,
    #[serde(serialize_with = "ser_rational")]
    pub mean: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub variance: Rational,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

/// `E|B| = M p` and `Var|B| = M p (1-p)` with `M = C(n+D, D) - 1`.
pub fn critical_region_check(regime: CriticalRegime, grid: &[(usize, u32)]) -> Vec<CriticalRow> {
    grid.iter()
        .map(|&(n, d)| {
            let m = count_up_to(n, d);
            let p = match regime {
                CriticalRegime::Critical => Rational::new(1.into(), m.into()),
                CriticalRegime::NPowerMinusD => Rational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(n), d as usize)),
                CriticalRegime::DPowerMinusN => Rational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(d), n)),
            };
            let mean = Rational::from_integer(m.into()) * &p;
            let variance = &mean * (Rational::one() - &p);
            CriticalRow {
                n,
                max_degree: d,
                p: ExactProb::new(p).expect("probability"),
                monomials: m,
                mean,
                variance,
            }
        })
        .collect()
}

/// Frequencies of non-zero reduced homology in each dimension along a `p` grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomologyCampaign {
    pub n: usize,
    #[serde(rename = "D")]
    pub max_degree: u32,
    pub variant: HomologyVariant,
    pub p_grid: Vec<f64>,
    /// `curves[i][k]`: estimate for dimension `i` at `p_grid[k]`.
    pub curves: Vec<Vec<EstimateRecord>>,
}

impl HomologyCampaign {
    pub fn freqs(&self, i: usize) -> Vec<f64> {
        self.curves[i].iter().map(|r| r.freq).collect()
    }

    pub fn is_unimodal(&self, i: usize) -> bool {
        let ses: Vec<f64> = self.curves[i].iter().map(EstimateRecord::std_error).collect();
        is_unimodal(&self.freqs(i), &ses)
    }

    /// Grid index of the largest frequency in dimension `i`; `None` if the curve is identically 0.
    pub fn peak(&self, i: usize) -> Option<usize> {
        let f = self.freqs(i);
        let best = f.iter().copied().fold(0.0, f64::max);
        (best > 0.0).then(|| f.iter().position(|&x| x == best).expect("maximum present"))
    }
}

/// Point `k` of the grid uses stream `k`; all dimensions share the draws.
pub fn homology_campaign(
    n: usize,
    max_degree: u32,
    p_grid: &[f64],
    samples: u64,
    seed: u64,
    variant: HomologyVariant,
) -> Result<HomologyCampaign, ExperimentError> {
    if n > 7 {
        return Err(ExperimentError::Invalid("homology experiments support n <= 7".into()));
    }
    let props: Vec<Property> = (0..n).map(|i| Property::HomologyNonzero { i, variant }).collect();
    let mut curves = vec![Vec::new(); n];
    for (k, &p) in p_grid.iter().enumerate() {
        let recs = estimate_many(&props, n, max_degree, p, samples, Seed::with_stream(seed, k as u64))?;
        for (i, r) in recs.into_iter().enumerate() {
            curves[i].push(r);
        }
    }
    Ok(HomologyCampaign {
        n,
        max_degree,
        variant,
        p_grid: p_grid.to_vec(),
        curves,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rational;

    #[test]
    fn trends() {
        let zero = [0.0; 4];
        assert!(check_trend(&[0.1, 0.2, 0.2, 0.9], &zero, Trend::Increasing));
        assert!(!check_trend(&[0.1, 0.3, 0.2], &zero[..3], Trend::Increasing));
        assert!(check_trend(&[0.1, 0.3, 0.2], &[0.05, 0.05, 0.05], Trend::Increasing));
        assert!(check_trend(&[0.9, 0.5, 0.1], &zero[..3], Trend::Decreasing));
        assert!(is_unimodal(&[0.0, 0.4, 0.9, 0.3, 0.0], &[0.0; 5]));
        assert!(is_unimodal(&[0.5, 0.4], &[0.0; 2]));
        assert!(!is_unimodal(&[0.5, 0.1, 0.6, 0.1], &[0.0; 4]));
    }

    #[test]
    fn critical_point() {
        let rows = critical_region_check(CriticalRegime::Critical, &[(2, 2), (3, 4)]);
        for r in rows {
            assert!(r.mean.is_one());
            assert_eq!(r.variance, Rational::one() - r.p.value());
        }
        let rows = critical_region_check(CriticalRegime::NPowerMinusD, &[(2, 3)]);
        assert_eq!(rows[0].mean, rational(9, 8));
    }
}
