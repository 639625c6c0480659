//! Seeded Monte Carlo estimation of ideal properties, parameter sweeps and
//! threshold checks.

mod sweep;
mod threshold;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{krull_dimension, Hypergraph};
use crate::ideal::MonomialIdeal;
use crate::monomial::{binomial, count_up_to, enumerate_monomials, grlex_rank, EnumMode, Monomial};
use crate::sampling::{ErParams, GeneralParams, ParamError, Sample, Sampler, Seed, Threshold, MAX_SAMPLER_MONOMIALS};
use crate::topology::{radical_homology, stanley_reisner_complex, z2_homology};

pub use sweep::{
    default_p_grid, render_csv, render_json, render_svg, sweep, write_atomic, write_sweep_outputs, SweepOutcome, SweepSpec, TrendKind,
    TrendReport, CSV_HEADER, SWEEP_FORMAT_HEADER,
};
pub use threshold::{
    check_trend, critical_region_check, homology_campaign, initdeg_band_check, is_unimodal, krull_threshold_check,
    run_threshold_check, support_lemma_check, zero_ideal_threshold_check, CheckPoint, CriticalRegime, CriticalRow,
    HomologyCampaign, ThresholdCheck, ThresholdOutcome, Trend,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExperimentError {
    #[error("unknown property {0:?}")]
    UnknownProperty(String),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("{0}")]
    Invalid(String),
    #[error("I/O error: {0}")]
    Io(String),
}

/// Which random ideal a homology property is evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HomologyVariant {
    /// Stanley–Reisner complex of the radical of an ER-type draw.
    Radical,
    /// Stanley–Reisner complex of a draw restricted to square-free monomials.
    SquareFree,
}

/// A yes/no property of a random ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    DimEq(usize),
    DimLe(usize),
    ZeroIdeal,
    InitdegEq(u32),
    /// No generator of degree `<= d`; holds for the zero ideal.
    InitdegGt(u32),
    /// Every minimal generator has degree `<= b`; holds for the zero ideal.
    DcLe(u32),
    StronglyGeneric,
    /// Reduced Z/2 homology in dimension `i` is non-zero.
    HomologyNonzero { i: usize, variant: HomologyVariant },
    /// No drawn monomial has support size `<= t`.
    NoSupportLe(usize),
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::DimEq(t) => write!(f, "dim={t}"),
            Property::DimLe(t) => write!(f, "dim<={t}"),
            Property::ZeroIdeal => f.write_str("zero-ideal"),
            Property::InitdegEq(d) => write!(f, "initdeg={d}"),
            Property::InitdegGt(d) => write!(f, "initdeg>{d}"),
            Property::DcLe(b) => write!(f, "dc<={b}"),
            Property::StronglyGeneric => f.write_str("strongly-generic"),
            Property::HomologyNonzero { i, variant: HomologyVariant::Radical } => write!(f, "homology[{i}]"),
            Property::HomologyNonzero { i, variant: HomologyVariant::SquareFree } => write!(f, "sf-homology[{i}]"),
            Property::NoSupportLe(t) => write!(f, "no-support<={t}"),
        }
    }
}

impl FromStr for Property {
    type Err = ExperimentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ExperimentError::UnknownProperty(s.to_string());
        let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
        let bracket = |rest: &str| -> Result<usize, ExperimentError> {
            let inner = rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
            Ok(num(inner)? as usize)
        };
        if s == "zero-ideal" {
            return Ok(Property::ZeroIdeal);
        }
        if s == "strongly-generic" {
            return Ok(Property::StronglyGeneric);
        }
        if let Some(r) = s.strip_prefix("dim<=") {
            return Ok(Property::DimLe(num(r)? as usize));
        }
        if let Some(r) = s.strip_prefix("dim=") {
            return Ok(Property::DimEq(num(r)? as usize));
        }
        if let Some(r) = s.strip_prefix("initdeg>") {
            return Ok(Property::InitdegGt(num(r)?));
        }
        if let Some(r) = s.strip_prefix("initdeg=") {
            return Ok(Property::InitdegEq(num(r)?));
        }
        if let Some(r) = s.strip_prefix("dc<=") {
            return Ok(Property::DcLe(num(r)?));
        }
        if let Some(r) = s.strip_prefix("no-support<=") {
            return Ok(Property::NoSupportLe(num(r)? as usize));
        }
        if let Some(r) = s.strip_prefix("sf-homology") {
            return Ok(Property::HomologyNonzero {
                i: bracket(r)?,
                variant: HomologyVariant::SquareFree,
            });
        }
        if let Some(r) = s.strip_prefix("homology") {
            return Ok(Property::HomologyNonzero {
                i: bracket(r)?,
                variant: HomologyVariant::Radical,
            });
        }
        Err(bad())
    }
}

impl Serialize for Property {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Property {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Property {
    /// Evaluates the property on a drawn generating set and its ideal.
    pub fn holds(&self, sample: &Sample) -> bool {
        let ideal = &sample.ideal;
        match *self {
            Property::DimEq(t) => krull_dimension(ideal) == t,
            Property::DimLe(t) => krull_dimension(ideal) <= t,
            Property::ZeroIdeal => ideal.is_zero(),
            Property::InitdegEq(d) => ideal.initial_degree().is_ok_and(|x| x == d),
            Property::InitdegGt(d) => ideal.initial_degree().map_or(true, |x| x > d),
            Property::DcLe(b) => ideal.degree_complexity().map_or(true, |x| x <= b),
            Property::StronglyGeneric => ideal.is_strongly_generic(),
            Property::HomologyNonzero { i, variant } => homology_nonzero(ideal, i, variant),
            Property::NoSupportLe(t) => sample.set.iter().all(|m| m.support_mask().count_ones() as usize > t),
        }
    }

    /// Whether [`Evaluator`] decides the property without building the full draw.
    pub fn has_fast_path(&self, n: usize) -> bool {
        match self {
            Property::ZeroIdeal | Property::InitdegEq(_) | Property::InitdegGt(_) | Property::NoSupportLe(_) => true,
            Property::DimEq(_) | Property::DimLe(_) => n <= FAST_DIM_MAX_VARS,
            _ => false,
        }
    }

    fn uses_square_free_model(&self) -> bool {
        matches!(
            self,
            Property::HomologyNonzero {
                variant: HomologyVariant::SquareFree,
                ..
            }
        )
    }
}

fn homology_nonzero(ideal: &MonomialIdeal, i: usize, variant: HomologyVariant) -> bool {
    let betti = match variant {
        HomologyVariant::Radical => radical_homology(ideal),
        HomologyVariant::SquareFree => stanley_reisner_complex(ideal).and_then(|y| z2_homology(&y)),
    };
    betti.is_ok_and(|b| b.get(i).is_some_and(|&x| x > 0))
}

/// General-model parameters drawing each square-free monomial of degree at
/// most `D` with probability `p`.
pub fn square_free_params(n: usize, max_degree: u32, p: f64) -> Result<GeneralParams<f64>, ParamError> {
    let probs = enumerate_monomials(n, max_degree, EnumMode::UpTo)
        .into_iter()
        .filter(Monomial::is_square_free)
        .map(|m| (m, p))
        .collect();
    GeneralParams::new(n, max_degree, probs)
}

/// Largest `n` for which the Krull dimension is computed from a support bitmap.
const FAST_DIM_MAX_VARS: usize = 16;

/// Decides a property for sample `s` of a seed, reading only the random items
/// the property depends on. Every path agrees with [`Property::holds`] on the
/// full draw.
pub struct Evaluator {
    kind: EvalKind,
}

enum EvalKind {
    Full { sampler: Sampler, property: Property },
    /// Holds iff none of the first `prefix` items is drawn.
    NonePrefix { t: Threshold, prefix: u64 },
    /// Holds iff none of `[0, lo)` and some of `[lo, hi)` is drawn.
    FirstIn { t: Threshold, lo: u64, hi: u64 },
    Dim { t: Threshold, n: usize, supports: Vec<u32>, target: usize, at_most: bool },
    NoneOf { t: Threshold, ranks: Vec<u64> },
}

impl Evaluator {
    pub fn new(property: Property, n: usize, max_degree: u32, p: f64) -> Result<Self, ExperimentError> {
        let er = ErParams::new(n, max_degree, p)?;
        let t = Threshold::from_probability(&p);
        let m = count_up_to(n, max_degree);
        let kind = match property {
            _ if property.uses_square_free_model() => EvalKind::Full {
                sampler: Sampler::general(&square_free_params(n, max_degree, p)?)?,
                property,
            },
            Property::ZeroIdeal => EvalKind::NonePrefix { t, prefix: m },
            Property::InitdegGt(d) => EvalKind::NonePrefix {
                t,
                prefix: count_up_to(n, d.min(max_degree)),
            },
            Property::InitdegEq(d) if d >= 1 && d <= max_degree => EvalKind::FirstIn {
                t,
                lo: count_up_to(n, d - 1),
                hi: count_up_to(n, d),
            },
            Property::InitdegEq(_) => EvalKind::FirstIn { t, lo: 0, hi: 0 },
            Property::DimEq(target) | Property::DimLe(target) if n <= FAST_DIM_MAX_VARS => {
                if m > MAX_SAMPLER_MONOMIALS {
                    return Err(ParamError::TooLarge {
                        what: "number of candidate monomials",
                        limit: MAX_SAMPLER_MONOMIALS,
                    }
                    .into());
                }
                EvalKind::Dim {
                    t,
                    n,
                    supports: enumerate_monomials(n, max_degree, EnumMode::UpTo)
                        .iter()
                        .map(Monomial::support_mask)
                        .collect(),
                    target,
                    at_most: matches!(property, Property::DimLe(_)),
                }
            }
            Property::NoSupportLe(s) => EvalKind::NoneOf {
                t,
                ranks: low_support_ranks(n, max_degree, s)?,
            },
            _ => EvalKind::Full {
                sampler: Sampler::er(&er)?,
                property,
            },
        };
        Ok(Evaluator { kind })
    }

    pub fn holds(&self, seed: &Seed, sample: u64) -> bool {
        match &self.kind {
            EvalKind::Full { sampler, property } => property.holds(&sampler.sample(seed, sample)),
            EvalKind::NonePrefix { t, prefix } => {
                if t.is_never() {
                    return true;
                }
                let mut draws = seed.items(sample);
                (0..*prefix).all(|_| !t.accepts(draws.next_word()))
            }
            EvalKind::FirstIn { t, lo, hi } => {
                if t.is_never() {
                    return false;
                }
                let mut draws = seed.items(sample);
                for k in 0..*hi {
                    if t.accepts(draws.next_word()) {
                        return k >= *lo;
                    }
                }
                false
            }
            EvalKind::Dim {
                t,
                n,
                supports,
                target,
                at_most,
            } => {
                let mut seen = vec![false; 1 << n];
                if !t.is_never() {
                    let mut draws = seed.items(sample);
                    for &s in supports {
                        if t.accepts(draws.next_word()) {
                            seen[s as usize] = true;
                        }
                    }
                }
                let edges = (1..1u32 << n).filter(|&s| seen[s as usize]);
                let h = Hypergraph::new(*n, edges).minimal_edges();
                let dim = n - h.transversal_number();
                if *at_most {
                    dim <= *target
                } else {
                    dim == *target
                }
            }
            EvalKind::NoneOf { t, ranks } => {
                if t.is_never() {
                    return true;
                }
                none_drawn(seed, sample, *t, ranks)
            }
        }
    }
}

/// Reads the sorted item positions in `ranks`, stepping sequentially across
/// short gaps and seeking across long ones.
fn none_drawn(seed: &Seed, sample: u64, t: Threshold, ranks: &[u64]) -> bool {
    const SEEK_GAP: u64 = 64;
    let mut draws: Option<crate::sampling::ItemDraws> = None;
    for &r in ranks {
        let reuse = draws.as_ref().is_some_and(|d| d.position() <= r && r - d.position() < SEEK_GAP);
        if !reuse {
            draws = Some(seed.items_from(sample, r));
        }
        let d = draws.as_mut().expect("stream initialized");
        while d.position() < r {
            d.next_word();
        }
        if t.accepts(d.next_word()) {
            return false;
        }
    }
    true
}

/// Sorted enumeration ranks of the monomials of degree `<= D` with support
/// size between 1 and `t`.
fn low_support_ranks(n: usize, max_degree: u32, t: usize) -> Result<Vec<u64>, ExperimentError> {
    let count: u64 = (1..=t.min(n) as u64)
        .map(|s| binomial(n as u64, s) * binomial(u64::from(max_degree), s))
        .sum();
    if count > MAX_SAMPLER_MONOMIALS {
        return Err(ParamError::TooLarge {
            what: "number of low-support monomials",
            limit: MAX_SAMPLER_MONOMIALS,
        }
        .into());
    }
    let mut ranks = Vec::with_capacity(count as usize);
    let mut exps = vec![0u32; n];
    for mask in 1..(1u64 << n) {
        let size = mask.count_ones() as usize;
        if size > t {
            continue;
        }
        let vars: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        fill_positive(&vars, 0, max_degree, &mut exps, &mut ranks);
    }
    ranks.sort_unstable();
    Ok(ranks)
}

fn fill_positive(vars: &[usize], pos: usize, budget: u32, exps: &mut [u32], out: &mut Vec<u64>) {
    if pos == vars.len() {
        out.push(grlex_rank(exps));
        return;
    }
    let remaining = (vars.len() - pos - 1) as u32;
    if budget < remaining + 1 {
        return;
    }
    for e in 1..=budget - remaining {
        exps[vars[pos]] = e;
        fill_positive(vars, pos + 1, budget - e, exps, out);
    }
    exps[vars[pos]] = 0;
}

/// Wilson score interval for `successes` out of `trials` at normal quantile `z`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if successes == trials { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

/// 97.5% standard normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateRecord {
    pub n: usize,
    #[serde(rename = "D")]
    pub max_degree: u32,
    pub p: f64,
    pub property: Property,
    pub successes: u64,
    pub freq: f64,
    pub lo: f64,
    pub hi: f64,
    #[serde(rename = "N")]
    pub samples: u64,
    pub seed: u64,
    pub stream: u64,
}

impl EstimateRecord {
    /// Binomial standard error of the frequency.
    pub fn std_error(&self) -> f64 {
        (self.freq * (1.0 - self.freq) / self.samples as f64).sqrt()
    }
}

/// Frequency of `property` over samples `0..samples` drawn from the ER-type
/// model (or its square-free restriction for square-free homology).
pub fn estimate(
    property: Property,
    n: usize,
    max_degree: u32,
    p: f64,
    samples: u64,
    seed: Seed,
) -> Result<EstimateRecord, ExperimentError> {
    if samples == 0 {
        return Err(ExperimentError::NoSamples);
    }
    let eval = Evaluator::new(property, n, max_degree, p)?;
    let successes = (0..samples).into_par_iter().filter(|&s| eval.holds(&seed, s)).count() as u64;
    Ok(record(property, n, max_degree, p, successes, samples, seed))
}

/// Estimates several properties on the same draws.
pub fn estimate_many(
    properties: &[Property],
    n: usize,
    max_degree: u32,
    p: f64,
    samples: u64,
    seed: Seed,
) -> Result<Vec<EstimateRecord>, ExperimentError> {
    if samples == 0 {
        return Err(ExperimentError::NoSamples);
    }
    let (fast, full): (Vec<Property>, Vec<Property>) = properties
        .iter()
        .partition(|q| q.has_fast_path(n));
    let mut counts: BTreeMap<Property, u64> = BTreeMap::new();
    for prop in &fast {
        let eval = Evaluator::new(*prop, n, max_degree, p)?;
        let c = (0..samples).into_par_iter().filter(|&s| eval.holds(&seed, s)).count() as u64;
        counts.insert(*prop, c);
    }
    let (er_props, sf_props): (Vec<Property>, Vec<Property>) = full.iter().partition(|p| !p.uses_square_free_model());
    for (props, sampler) in [
        (er_props, Sampler::er(&ErParams::new(n, max_degree, p)?)),
        (sf_props, Sampler::general(&square_free_params(n, max_degree, p)?)),
    ] {
        if props.is_empty() {
            continue;
        }
        let sampler = sampler?;
        let per: Vec<u64> = (0..samples)
            .into_par_iter()
            .map(|s| {
                let draw = sampler.sample(&seed, s);
                props.iter().map(|q| u64::from(q.holds(&draw))).collect::<Vec<u64>>()
            })
            .reduce(
                || vec![0; props.len()],
                |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect(),
            );
        for (q, c) in props.iter().zip(per) {
            counts.insert(*q, c);
        }
    }
    Ok(properties
        .iter()
        .map(|q| record(*q, n, max_degree, p, counts[q], samples, seed))
        .collect())
}

fn record(property: Property, n: usize, max_degree: u32, p: f64, successes: u64, samples: u64, seed: Seed) -> EstimateRecord {
    let (lo, hi) = wilson_interval(successes, samples, Z95);
    EstimateRecord {
        n,
        max_degree,
        p,
        property,
        successes,
        freq: successes as f64 / samples as f64,
        lo,
        hi,
        samples,
        seed: seed.master,
        stream: seed.stream,
    }
}
