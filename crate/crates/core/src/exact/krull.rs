//! Distribution of the Krull dimension of `S/I` under the ER-type model.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::hypergraph::{Clutter, Hypergraph};
use super::ExactError;
use crate::monomial::{binomial, count_up_to};
use crate::rational::{pow, ExactProb, Probability, Rational};
use crate::sampling::ErParams;

/// Largest vertex count for clutter enumeration.
pub const MAX_CLUTTER_VERTICES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum KrullMethod {
    /// Sum over clutters with the matching transversal number.
    ClutterSum,
    /// Closed formulas for `t = 0, 1, n-1, n`.
    ClosedForm,
}

/// Every clutter on `n` vertices with transversal number `tau`.
pub fn enumerate_clutters(n: usize, tau: usize) -> Result<Vec<Clutter>, ExactError> {
    if n > MAX_CLUTTER_VERTICES {
        return Err(ExactError::TooLarge {
            what: "vertex count for clutter enumeration",
            limit: MAX_CLUTTER_VERTICES as u64,
        });
    }
    if tau > n {
        return Err(ExactError::TOutOfRange { t: tau, n });
    }
    let subsets: Vec<u32> = (1..1u32 << n).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    antichains(&subsets, 0, &mut chosen, &mut |edges| {
        let h = Hypergraph::new(n, edges.iter().copied());
        if h.transversal_number() == tau {
            out.push(Clutter::new(h).expect("antichain"));
        }
    });
    Ok(out)
}

fn antichains(subsets: &[u32], start: usize, chosen: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
    visit(chosen);
    for i in start..subsets.len() {
        let s = subsets[i];
        if chosen.iter().all(|&c| c & s != c && c & s != s) {
            chosen.push(s);
            antichains(subsets, i + 1, chosen, visit);
            chosen.pop();
        }
    }
}

/// Number of non-constant monomials of degree at most `max_degree` whose
/// support is exactly a given set of `size` variables, counted degree by degree.
pub fn support_exact_count(size: u32, max_degree: u32) -> u64 {
    if size == 0 {
        return 0;
    }
    // compositions of k into `size` positive parts: C(k-1, size-1)
    (size..=max_degree)
        .map(|k| binomial(u64::from(k - 1), u64::from(size - 1)))
        .sum()
}

/// `P(dim S/I = t)`.
pub fn krull_dim_distribution(params: &ErParams<Rational>, t: usize, method: KrullMethod) -> Result<ExactProb, ExactError> {
    let n = params.n;
    if t > n {
        return Err(ExactError::TOutOfRange { t, n });
    }
    let value = match method {
        KrullMethod::ClutterSum => clutter_sum(params, t)?,
        KrullMethod::ClosedForm => closed_form(params, t)?,
    };
    Ok(ExactProb::from_unchecked(value))
}

/// `P(dim S/I = t)` for every `t = 0..=n`.
pub fn krull_dim_distribution_all(params: &ErParams<Rational>, method: KrullMethod) -> Result<Vec<ExactProb>, ExactError> {
    (0..=params.n).map(|t| krull_dim_distribution(params, t, method)).collect()
}

fn clutter_sum(params: &ErParams<Rational>, t: usize) -> Result<Rational, ExactError> {
    let n = params.n;
    let q = params.p.complement();
    // absent[s] = P(no monomial of support exactly sigma), |sigma| = s
    let absent: Vec<Rational> = (0..=n as u32)
        .map(|s| pow(&q, support_exact_count(s, params.max_degree)))
        .collect();
    let mut total = Rational::zero();
    for c in enumerate_clutters(n, n - t)? {
        let mut term = Rational::one();
        for e in c.edges() {
            term *= Rational::one() - &absent[e.count_ones() as usize];
        }
        for sigma in 1..1u32 << n {
            if c.edges().all(|e| e & sigma != e) {
                term *= &absent[sigma.count_ones() as usize];
            }
        }
        total += term;
    }
    Ok(total)
}

fn closed_form(params: &ErParams<Rational>, t: usize) -> Result<Rational, ExactError> {
    let n = params.n;
    match t {
        0 => Ok(form_zero(params)),
        _ if t == n => Ok(form_n(params)),
        1 => Ok(form_one(params)),
        _ if t == n - 1 => Ok(form_n_minus_one(params)),
        2 if n == 4 => {
            let others = form_zero(params) + form_one(params) + form_n_minus_one(params) + form_n(params);
            Ok(Rational::one() - others)
        }
        _ => Err(ExactError::ClosedFormUnavailable { n, t }),
    }
}

fn form_zero(params: &ErParams<Rational>) -> Rational {
    let q = params.p.complement();
    pow(&(Rational::one() - pow(&q, u64::from(params.max_degree))), params.n as u64)
}

fn form_one(params: &ErParams<Rational>) -> Rational {
    let n = params.n as u64;
    let d = u64::from(params.max_degree);
    let q = params.p.complement();
    let single = Rational::one() - pow(&q, d);
    let pair = Rational::one() - pow(&q, binomial(d, 2));
    (0..n)
        .map(|j| {
            Rational::from_integer(binomial(n, j).into())
                * pow(&single, j)
                * pow(&q, d * (n - j))
                * pow(&pair, binomial(n - j, 2))
        })
        .sum()
}

fn form_n_minus_one(params: &ErParams<Rational>) -> Rational {
    let n = params.n;
    let d = params.max_degree;
    let q = params.p.complement();
    let m = count_up_to(n, d);
    let mut total = -pow(&q, m);
    for j in 1..=n as u64 {
        let divisible = binomial(n as u64 + u64::from(d) - j, n as u64);
        let term = Rational::from_integer(binomial(n as u64, j).into()) * pow(&q, m - divisible);
        if j % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn form_n(params: &ErParams<Rational>) -> Rational {
    pow(&params.p.complement(), count_up_to(params.n, params.max_degree))
}
