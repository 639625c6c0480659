//! Exact probability that the random ideal equals a given ideal.

use num_traits::{One, Zero};

use super::ExactError;
use crate::ideal::MonomialIdeal;
use crate::monomial::{enumerate_monomials, EnumMode};
use crate::rational::{pow, ExactProb, Probability, Rational};
use crate::sampling::{ErParams, GeneralParams, GradedParams};

fn check_ideal(ideal: &MonomialIdeal, n: usize, max_degree: u32) -> Result<MonomialIdeal, ExactError> {
    if ideal.num_vars() != n {
        return Err(ExactError::DimensionMismatch {
            expected: n,
            got: ideal.num_vars(),
        });
    }
    if let Some(g) = ideal.generators().iter().find(|g| g.degree() > max_degree) {
        return Err(ExactError::GeneratorExceedsDegree {
            generator: g.to_string(),
            bound: max_degree,
        });
    }
    Ok(ideal.with_max_degree(max_degree)?)
}

/// `p^{beta_1} (1-p)^{S(I,D)}` where `S(I,D)` counts the non-constant
/// standard monomials of degree at most `D`.
pub fn prob_ideal_er(ideal: &MonomialIdeal, params: &ErParams<Rational>) -> Result<ExactProb, ExactError> {
    let ideal = check_ideal(ideal, params.n, params.max_degree)?;
    let beta = ideal.total_betti_1() as u64;
    let standard = ideal.standard_count(params.max_degree);
    let q = params.p.complement();
    Ok(ExactProb::from_unchecked(pow(&params.p, beta) * pow(&q, standard)))
}

/// `prod_d p_d^{beta_{1,d}} (1-p_d)^{h_I(d)}`.
pub fn prob_ideal_graded(ideal: &MonomialIdeal, params: &GradedParams<Rational>) -> Result<ExactProb, ExactError> {
    let ideal = check_ideal(ideal, params.n, params.max_degree)?;
    let betti = ideal.graded_betti_1();
    let hilbert = ideal.hilbert_vector();
    let mut value = Rational::one();
    for d in 1..=params.max_degree {
        let p = params.p_for_degree(d);
        value *= pow(p, betti.0[d as usize - 1]) * pow(&p.complement(), hilbert.at(d));
    }
    Ok(ExactProb::from_unchecked(value))
}

/// `prod_{g minimal} p_g * prod_{m not in I} (1 - p_m)` over monomials of degree at most `D`.
pub fn prob_ideal_general(ideal: &MonomialIdeal, params: &GeneralParams<Rational>) -> Result<ExactProb, ExactError> {
    let ideal = check_ideal(ideal, params.n, params.max_degree)?;
    let zero = Rational::zero();
    let mut value = Rational::one();
    for g in ideal.generators() {
        value *= params.get(g).unwrap_or(&zero).clone();
    }
    for m in enumerate_monomials(params.n, params.max_degree, EnumMode::UpTo) {
        if !ideal.contains_unchecked(&m) {
            if let Some(p) = params.get(&m) {
                value *= p.complement();
            }
        }
        if value.is_zero() {
            break;
        }
    }
    Ok(ExactProb::from_unchecked(value))
}
