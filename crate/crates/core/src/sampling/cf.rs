//! The Costa–Farber model of random simplicial complexes: a hierarchical
//! sampler, its exact law, and its embedding in the general monomial model.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;

use super::{check_prob, GeneralParams, ParamError, Seed, Threshold};
use crate::monomial::{enumerate_monomials, EnumMode};
use crate::rational::{pow, ExactProb, Probability, Rational};
use crate::topology::{candidates, SimplicialComplex};

/// Largest vertex count accepted by the Costa–Farber sampler.
pub const MAX_CF_VERTICES: usize = 20;
/// Largest vertex count for the exact hierarchical distribution.
pub const MAX_CF_EXACT_VERTICES: usize = 5;

/// Retention probabilities `p~_0, ..., p~_r` for faces of dimension `0..=r`;
/// faces of dimension above `r` are never retained.
#[derive(Debug, Clone, PartialEq)]
pub struct CfParams<P = f64> {
    pub n: usize,
    pub p_tilde: Vec<P>,
}

impl<P: Probability> CfParams<P> {
    pub fn new(n: usize, p_tilde: Vec<P>) -> Result<Self, ParamError> {
        if n == 0 {
            return Err(ParamError::NoVariables);
        }
        if n > MAX_CF_VERTICES {
            return Err(ParamError::TooLarge {
                what: "Costa-Farber vertex count",
                limit: MAX_CF_VERTICES as u64,
            });
        }
        if p_tilde.is_empty() || p_tilde.len() > n {
            return Err(ParamError::CfDimension {
                r: p_tilde.len().saturating_sub(1),
                max: n - 1,
            });
        }
        p_tilde.iter().try_for_each(check_prob)?;
        Ok(CfParams { n, p_tilde })
    }

    /// Maximal face dimension `r`.
    pub fn r(&self) -> usize {
        self.p_tilde.len() - 1
    }
}

/// General-model probabilities realizing the Costa–Farber model with degree
/// bound `D = r + 1`: a square-free monomial of degree `j` gets `1 - p~_{j-1}`,
/// every other monomial gets 0.
pub fn cf_parameters<P: Probability>(cf: &CfParams<P>, max_degree: u32) -> Result<GeneralParams<P>, ParamError> {
    let expected = cf.r() as u32 + 1;
    if max_degree != expected {
        return Err(ParamError::CfDegree {
            expected,
            got: max_degree,
        });
    }
    let probs = enumerate_monomials(cf.n, max_degree, EnumMode::UpTo)
        .into_iter()
        .filter(|m| m.is_square_free())
        .map(|m| {
            let p = cf.p_tilde[m.degree() as usize - 1].complement();
            (m, p)
        })
        .collect();
    GeneralParams::new(cf.n, max_degree, probs)
}

/// One hierarchical draw: vertices are kept with probability `p~_0`, then each
/// `j`-set whose facets were all kept is kept with probability `p~_{j-1}`.
/// The decision for face `σ` uses item `mask(σ)` of the sample's stream.
pub fn sample_cf_complex<P: Probability>(cf: &CfParams<P>, seed: &Seed, sample: u64) -> SimplicialComplex {
    let mut faces: BTreeSet<u32> = [0].into_iter().collect();
    for (level, p) in cf.p_tilde.iter().enumerate() {
        let t = Threshold::from_probability(p);
        let kept: Vec<u32> = candidates(cf.n, level + 1, &faces)
            .into_iter()
            .filter(|&m| t.accepts(seed.item(sample, u64::from(m))))
            .collect();
        if kept.is_empty() {
            break;
        }
        faces.extend(kept);
    }
    SimplicialComplex::from_faces_unchecked(cf.n, faces)
}

/// Exact law of [`sample_cf_complex`], by enumerating every retention pattern.
pub fn cf_hierarchical_distribution(
    cf: &CfParams<Rational>,
) -> Result<BTreeMap<SimplicialComplex, ExactProb>, ParamError> {
    if cf.n > MAX_CF_EXACT_VERTICES {
        return Err(ParamError::TooLarge {
            what: "vertex count for the exact Costa-Farber distribution",
            limit: MAX_CF_EXACT_VERTICES as u64,
        });
    }
    let mut out: BTreeMap<SimplicialComplex, Rational> = BTreeMap::new();
    let start: BTreeSet<u32> = [0].into_iter().collect();
    descend(cf, 0, start, Rational::one(), &mut out);
    Ok(out.into_iter().map(|(y, p)| (y, ExactProb::from_unchecked(p))).collect())
}

fn descend(
    cf: &CfParams<Rational>,
    level: usize,
    faces: BTreeSet<u32>,
    weight: Rational,
    out: &mut BTreeMap<SimplicialComplex, Rational>,
) {
    let cands = if level < cf.p_tilde.len() {
        candidates(cf.n, level + 1, &faces)
    } else {
        Vec::new()
    };
    if cands.is_empty() {
        *out.entry(SimplicialComplex::from_faces_unchecked(cf.n, faces))
            .or_default() += weight;
        return;
    }
    let p = &cf.p_tilde[level];
    let q = p.complement();
    let k = cands.len();
    for choice in 0..1u64 << k {
        let kept = choice.count_ones() as u64;
        let w = &weight * pow(p, kept) * pow(&q, k as u64 - kept);
        if w == Rational::from_integer(0.into()) {
            continue;
        }
        let mut next = faces.clone();
        next.extend((0..k).filter(|i| choice >> i & 1 == 1).map(|i| cands[i]));
        descend(cf, level + 1, next, w, out);
    }
}
