//! Random monomial sets under the ER-type, graded and general models, the
//! Costa–Farber parameterization of the general model, and a hierarchical
//! Costa–Farber complex sampler.

mod cf;
mod rng;

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::ideal::{minimalize, MonomialIdeal};
use crate::monomial::{count_up_to, enumerate_monomials, EnumMode, Monomial, MonomialSet};
use crate::rational::Probability;

pub use cf::{cf_hierarchical_distribution, cf_parameters, sample_cf_complex, CfParams, MAX_CF_VERTICES};
pub use rng::{ItemDraws, Seed, Threshold, MAX_ITEMS, MAX_SAMPLES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("n must be at least 1")]
    NoVariables,
    #[error("degree bound D must be at least 1")]
    ZeroDegree,
    #[error("probability {0} outside [0, 1]")]
    BadProbability(String),
    #[error("expected {expected} per-degree probabilities, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("probability given for invalid monomial {0}")]
    BadMonomial(String),
    #[error("Costa-Farber dimension r = {r} must satisfy r <= n - 1 = {max}")]
    CfDimension { r: usize, max: usize },
    #[error("Costa-Farber parameters need D = r + 1 = {expected}, got D = {got}")]
    CfDegree { expected: u32, got: u32 },
    #[error("{what} exceeds the supported size ({limit})")]
    TooLarge { what: &'static str, limit: u64 },
}

fn check_prob<P: Probability>(p: &P) -> Result<(), ParamError> {
    if p.in_unit_interval() {
        Ok(())
    } else {
        Err(ParamError::BadProbability(p.to_string()))
    }
}

fn check_dims(n: usize, max_degree: u32) -> Result<(), ParamError> {
    if n == 0 {
        return Err(ParamError::NoVariables);
    }
    if max_degree == 0 {
        return Err(ParamError::ZeroDegree);
    }
    Ok(())
}

/// ER-type model: each non-constant monomial of degree at most `D` is
/// included independently with probability `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct ErParams<P = f64> {
    pub n: usize,
    pub max_degree: u32,
    pub p: P,
}

impl<P: Probability> ErParams<P> {
    pub fn new(n: usize, max_degree: u32, p: P) -> Result<Self, ParamError> {
        check_dims(n, max_degree)?;
        check_prob(&p)?;
        Ok(ErParams { n, max_degree, p })
    }

    /// The same model written as a graded model.
    pub fn to_graded(&self) -> GradedParams<P> {
        GradedParams {
            n: self.n,
            max_degree: self.max_degree,
            p_vec: vec![self.p.clone(); self.max_degree as usize],
        }
    }
}

/// Graded model: a degree-`d` monomial is included with probability `p_vec[d-1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedParams<P = f64> {
    pub n: usize,
    pub max_degree: u32,
    pub p_vec: Vec<P>,
}

impl<P: Probability> GradedParams<P> {
    pub fn new(n: usize, max_degree: u32, p_vec: Vec<P>) -> Result<Self, ParamError> {
        check_dims(n, max_degree)?;
        if p_vec.len() != max_degree as usize {
            return Err(ParamError::WrongLength {
                expected: max_degree as usize,
                got: p_vec.len(),
            });
        }
        p_vec.iter().try_for_each(check_prob)?;
        Ok(GradedParams { n, max_degree, p_vec })
    }

    pub fn p_for_degree(&self, d: u32) -> &P {
        &self.p_vec[d as usize - 1]
    }
}

/// General model: every monomial carries its own inclusion probability;
/// unlisted monomials have probability 0.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralParams<P = f64> {
    pub n: usize,
    pub max_degree: u32,
    pub probs: BTreeMap<Monomial, P>,
}

impl<P: Probability> GeneralParams<P> {
    pub fn new(n: usize, max_degree: u32, probs: BTreeMap<Monomial, P>) -> Result<Self, ParamError> {
        check_dims(n, max_degree)?;
        for (m, p) in &probs {
            if m.num_vars() != n || m.is_constant() || m.degree() > max_degree {
                return Err(ParamError::BadMonomial(m.to_string()));
            }
            check_prob(p)?;
        }
        Ok(GeneralParams { n, max_degree, probs })
    }

    pub fn get(&self, m: &Monomial) -> Option<&P> {
        self.probs.get(m)
    }

    /// ER-type parameters embedded in the general model.
    pub fn from_er(er: &ErParams<P>) -> Self {
        let probs = enumerate_monomials(er.n, er.max_degree, EnumMode::UpTo)
            .into_iter()
            .map(|m| (m, er.p.clone()))
            .collect();
        GeneralParams {
            n: er.n,
            max_degree: er.max_degree,
            probs,
        }
    }
}

/// A generating set together with the ideal it generates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    pub set: MonomialSet,
    pub ideal: MonomialIdeal,
}

/// Candidate monomials with their inclusion thresholds, ready for repeated
/// draws. Candidate `k` consumes item `k` of each sample's random stream.
#[derive(Debug, Clone)]
pub struct Sampler {
    n: usize,
    max_degree: u32,
    monomials: Vec<Monomial>,
    thresholds: Vec<Threshold>,
}

/// Guard on the number of candidate monomials a [`Sampler`] materializes.
pub const MAX_SAMPLER_MONOMIALS: u64 = 50_000_000;

impl Sampler {
    fn build<F>(n: usize, max_degree: u32, threshold: F) -> Result<Self, ParamError>
    where
        F: Fn(&Monomial) -> Threshold,
    {
        if count_up_to(n, max_degree) > MAX_SAMPLER_MONOMIALS {
            return Err(ParamError::TooLarge {
                what: "number of candidate monomials",
                limit: MAX_SAMPLER_MONOMIALS,
            });
        }
        let monomials = enumerate_monomials(n, max_degree, EnumMode::UpTo);
        let thresholds = monomials.iter().map(threshold).collect();
        Ok(Sampler {
            n,
            max_degree,
            monomials,
            thresholds,
        })
    }

    pub fn er<P: Probability>(params: &ErParams<P>) -> Result<Self, ParamError> {
        let t = Threshold::from_probability(&params.p);
        Self::build(params.n, params.max_degree, |_| t)
    }

    pub fn graded<P: Probability>(params: &GradedParams<P>) -> Result<Self, ParamError> {
        let ts: Vec<Threshold> = params.p_vec.iter().map(Threshold::from_probability).collect();
        Self::build(params.n, params.max_degree, |m| ts[m.degree() as usize - 1])
    }

    pub fn general<P: Probability>(params: &GeneralParams<P>) -> Result<Self, ParamError> {
        Self::build(params.n, params.max_degree, |m| {
            params.get(m).map_or(Threshold::NEVER, Threshold::from_probability)
        })
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Indices (into [`Sampler::monomials`]) of the monomials drawn in `sample`.
    pub fn draw_indices(&self, seed: &Seed, sample: u64) -> Vec<usize> {
        let mut draws = seed.items(sample);
        self.thresholds
            .iter()
            .enumerate()
            .filter_map(|(k, t)| t.accepts(draws.next_word()).then_some(k))
            .collect()
    }

    pub fn sample(&self, seed: &Seed, sample: u64) -> Sample {
        let members = self
            .draw_indices(seed, sample)
            .into_iter()
            .map(|k| self.monomials[k].clone())
            .collect();
        let set = MonomialSet::from_sorted_unchecked(self.n, self.max_degree, members);
        let ideal = minimalize(&set);
        Sample { set, ideal }
    }

    /// Samples `0..count`, computed in parallel; the result does not depend on
    /// the number of worker threads.
    pub fn sample_batch(&self, seed: &Seed, count: u64) -> Vec<Sample> {
        (0..count).into_par_iter().map(|s| self.sample(seed, s)).collect()
    }
}

/// One draw from the ER-type model; `sample` is the draw counter.
pub fn sample_er<P: Probability>(params: &ErParams<P>, seed: &Seed, sample: u64) -> Result<Sample, ParamError> {
    Ok(Sampler::er(params)?.sample(seed, sample))
}

pub fn sample_graded<P: Probability>(
    params: &GradedParams<P>,
    seed: &Seed,
    sample: u64,
) -> Result<Sample, ParamError> {
    Ok(Sampler::graded(params)?.sample(seed, sample))
}

pub fn sample_general<P: Probability>(
    params: &GeneralParams<P>,
    seed: &Seed,
    sample: u64,
) -> Result<Sample, ParamError> {
    Ok(Sampler::general(params)?.sample(seed, sample))
}
