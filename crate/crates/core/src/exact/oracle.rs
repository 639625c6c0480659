//! Brute-force law of the random ideal: every subset of the candidate
//! monomials is visited once and its probability is credited to the ideal it
//! generates.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rayon::prelude::*;

use super::ExactError;
use crate::ideal::MonomialIdeal;
use crate::monomial::{count_up_to, enumerate_monomials, EnumMode, Monomial};
use crate::rational::{pow, ExactProb, Probability, Rational};
use crate::sampling::{ErParams, GradedParams};

/// Largest number of candidate monomials the oracle will enumerate.
pub const MAX_ORACLE_MONOMIALS: u64 = 25;

/// Subset counts grouped by generated ideal and by how many monomials of each
/// degree were drawn; independent of the inclusion probabilities.
#[derive(Debug, Clone)]
pub struct SubsetCensus {
    n: usize,
    max_degree: u32,
    monomials: Vec<Monomial>,
    per_degree: Vec<u32>,
    /// minimal-generator mask -> (packed degree profile -> subset count)
    cells: BTreeMap<u32, BTreeMap<u128, u64>>,
}

const PROFILE_BITS: u32 = 5;

impl SubsetCensus {
    pub fn build(n: usize, max_degree: u32) -> Result<Self, ExactError> {
        let total = count_up_to(n, max_degree);
        if n == 0 || max_degree == 0 || total > MAX_ORACLE_MONOMIALS {
            return Err(ExactError::TooLarge {
                what: "number of candidate monomials for the oracle",
                limit: MAX_ORACLE_MONOMIALS,
            });
        }
        let monomials = enumerate_monomials(n, max_degree, EnumMode::UpTo);
        let m = monomials.len();
        // strict_divisors[i]: mask of indices j != i with monomial j dividing monomial i
        let strict_divisors: Vec<u32> = (0..m)
            .map(|i| {
                (0..m)
                    .filter(|&j| j != i && monomials[j].divides_unchecked(&monomials[i]))
                    .fold(0u32, |acc, j| acc | 1 << j)
            })
            .collect();
        let mut degree_masks = vec![0u32; max_degree as usize];
        for (i, mono) in monomials.iter().enumerate() {
            degree_masks[mono.degree() as usize - 1] |= 1 << i;
        }
        let per_degree = degree_masks.iter().map(|d| d.count_ones()).collect();
        let subsets: u64 = 1 << m;
        let chunk: u64 = 1 << 16;
        let cells = (0..subsets.div_ceil(chunk))
            .into_par_iter()
            .map(|c| {
                let mut local: HashMap<(u32, u128), u64> = HashMap::new();
                for s in (c * chunk)..((c + 1) * chunk).min(subsets) {
                    let s = s as u32;
                    let mut minimal = 0u32;
                    let mut rest = s;
                    while rest != 0 {
                        let i = rest.trailing_zeros();
                        rest &= rest - 1;
                        if strict_divisors[i as usize] & s == 0 {
                            minimal |= 1 << i;
                        }
                    }
                    let profile = degree_masks
                        .iter()
                        .enumerate()
                        .fold(0u128, |acc, (d, dm)| acc | u128::from((s & dm).count_ones()) << (PROFILE_BITS * d as u32));
                    *local.entry((minimal, profile)).or_default() += 1;
                }
                local
            })
            .reduce(HashMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_default() += v;
                }
                a
            });
        let mut grouped: BTreeMap<u32, BTreeMap<u128, u64>> = BTreeMap::new();
        for ((minimal, profile), count) in cells {
            grouped.entry(minimal).or_default().insert(profile, count);
        }
        Ok(SubsetCensus {
            n,
            max_degree,
            monomials,
            per_degree,
            cells: grouped,
        })
    }

    pub fn num_monomials(&self) -> usize {
        self.monomials.len()
    }

    fn ideal_of(&self, mask: u32) -> MonomialIdeal {
        let gens = (0..self.monomials.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.monomials[i].clone())
            .collect();
        MonomialIdeal::from_minimal_unchecked(self.n, self.max_degree, gens)
    }

    /// Number of generating sets producing each ideal.
    pub fn generating_set_counts(&self) -> BTreeMap<MonomialIdeal, u64> {
        self.cells
            .iter()
            .map(|(&mask, profiles)| (self.ideal_of(mask), profiles.values().sum()))
            .collect()
    }

    /// The induced law under per-degree inclusion probabilities.
    pub fn distribution(&self, p_vec: &[Rational]) -> BTreeMap<MonomialIdeal, ExactProb> {
        assert_eq!(p_vec.len(), self.max_degree as usize);
        // weight[d][k] = p_d^k (1-p_d)^{N_d - k}
        let weights: Vec<Vec<Rational>> = p_vec
            .iter()
            .zip(&self.per_degree)
            .map(|(p, &count)| {
                let q = p.complement();
                (0..=count)
                    .map(|k| pow(p, u64::from(k)) * pow(&q, u64::from(count - k)))
                    .collect()
            })
            .collect();
        self.cells
            .iter()
            .map(|(&mask, profiles)| {
                let mut total = Rational::zero();
                for (&profile, &count) in profiles {
                    let mut w = Rational::from_integer(count.into());
                    for (d, wd) in weights.iter().enumerate() {
                        let k = (profile >> (PROFILE_BITS * d as u32)) & 0x1f;
                        w *= &wd[k as usize];
                    }
                    total += w;
                }
                (self.ideal_of(mask), ExactProb::from_unchecked(total))
            })
            .collect()
    }
}

/// Exact law of the ER-type random ideal by enumerating all `2^M` generating sets.
pub fn brute_force_distribution(params: &ErParams<Rational>) -> Result<BTreeMap<MonomialIdeal, ExactProb>, ExactError> {
    brute_force_distribution_graded(&params.to_graded())
}

/// Exact law of the graded random ideal by enumerating all `2^M` generating sets.
pub fn brute_force_distribution_graded(
    params: &GradedParams<Rational>,
) -> Result<BTreeMap<MonomialIdeal, ExactProb>, ExactError> {
    Ok(SubsetCensus::build(params.n, params.max_degree)?.distribution(&params.p_vec))
}
