//! Counting monomial ideals by Hilbert function and graded first Betti
//! numbers, lex-segment ideals, and the exact law of the Hilbert function.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::ideal::{minimalize, BettiVector, HilbertVector, MonomialIdeal};
use crate::monomial::{binomial, count_degree, count_up_to, enumerate_monomials, EnumMode, Monomial, MonomialSet};
use crate::rational::{pow, ExactProb, Probability, Rational};
use crate::sampling::ErParams;

/// Largest number of candidate monomials for the ideal census.
pub const MAX_CENSUS_MONOMIALS: u64 = 25;
/// Largest number of monomials in a single degree for the NMon backtracking.
pub const MAX_DEGREE_WIDTH: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountingError {
    #[error("{what} exceeds the supported size ({limit})")]
    TooLarge { what: &'static str, limit: u64 },
    #[error("Hilbert vector has length {got}, expected D = {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("Hilbert vector {h} is not attainable (fails at degree {degree})")]
    NotAttainable { h: HilbertVector, degree: u32 },
    #[error("n and D must be at least 1")]
    Degenerate,
}

fn check_dims(n: usize, max_degree: u32) -> Result<(), CountingError> {
    if n == 0 || max_degree == 0 {
        Err(CountingError::Degenerate)
    } else {
        Ok(())
    }
}

/// Every monomial ideal in `n` variables generated in degree at most `D`.
#[derive(Debug, Clone, Serialize)]
pub struct IdealCensus {
    pub n: usize,
    pub max_degree: u32,
    pub ideals: Vec<MonomialIdeal>,
}

impl IdealCensus {
    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    /// Number of ideals with each `(h, beta)` pair.
    pub fn counts(&self) -> BTreeMap<(HilbertVector, BettiVector), u64> {
        let mut out = BTreeMap::new();
        for i in &self.ideals {
            *out.entry((i.hilbert_vector(), i.graded_betti_1())).or_default() += 1;
        }
        out
    }

    pub fn with_hilbert<'a>(&'a self, h: &'a HilbertVector) -> impl Iterator<Item = &'a MonomialIdeal> + 'a {
        self.ideals.iter().filter(move |i| &i.hilbert_vector() == h)
    }
}

/// All antichains of the divisibility order on the non-constant monomials of
/// degree at most `D`, the zero ideal included.
pub fn enumerate_monomial_ideals(n: usize, max_degree: u32) -> Result<IdealCensus, CountingError> {
    check_dims(n, max_degree)?;
    if count_up_to(n, max_degree) > MAX_CENSUS_MONOMIALS {
        return Err(CountingError::TooLarge {
            what: "number of candidate monomials for the census",
            limit: MAX_CENSUS_MONOMIALS,
        });
    }
    let monomials = enumerate_monomials(n, max_degree, EnumMode::UpTo);
    let mut ideals = Vec::new();
    let mut chosen: Vec<Monomial> = Vec::new();
    walk_antichains(&monomials, 0, &mut chosen, &mut |gens| {
        ideals.push(MonomialIdeal::from_minimal_unchecked(n, max_degree, gens.to_vec()));
    });
    Ok(IdealCensus { n, max_degree, ideals })
}

fn walk_antichains(monomials: &[Monomial], start: usize, chosen: &mut Vec<Monomial>, visit: &mut dyn FnMut(&[Monomial])) {
    visit(chosen);
    for i in start..monomials.len() {
        // degree-ascending order: a later monomial never divides an earlier one
        if chosen.iter().all(|c| !c.divides_unchecked(&monomials[i])) {
            chosen.push(monomials[i].clone());
            walk_antichains(monomials, i + 1, chosen, visit);
            chosen.pop();
        }
    }
}

/// Degree-by-degree multiplication tables: `up[d][i]` is the bit set of
/// degree-`d+1` monomials `x_v * m_i` for the `i`-th degree-`d` monomial.
struct DegreeTables {
    width: Vec<usize>,
    up: Vec<Vec<u64>>,
}

impl DegreeTables {
    fn new(n: usize, max_degree: u32) -> Result<Self, CountingError> {
        let levels: Vec<Vec<Monomial>> = (0..=max_degree)
            .map(|d| enumerate_monomials(n, d, EnumMode::Exact))
            .collect();
        if levels.iter().any(|l| l.len() as u64 > MAX_DEGREE_WIDTH) {
            return Err(CountingError::TooLarge {
                what: "number of monomials in one degree",
                limit: MAX_DEGREE_WIDTH,
            });
        }
        let up = (0..max_degree as usize)
            .map(|d| {
                let next: BTreeMap<&Monomial, usize> = levels[d + 1].iter().enumerate().map(|(k, m)| (m, k)).collect();
                levels[d]
                    .iter()
                    .map(|m| {
                        (0..n).fold(0u64, |acc, v| {
                            let mut e = m.exponents().to_vec();
                            e[v] += 1;
                            acc | 1 << next[&Monomial::new(e)]
                        })
                    })
                    .collect()
            })
            .collect();
        Ok(DegreeTables {
            width: levels.iter().map(Vec::len).collect(),
            up,
        })
    }

    /// Degree-`d+1` monomials divisible by some member of `set` (degree `d`).
    fn shadow(&self, d: usize, set: u64) -> u64 {
        let mut out = 0;
        let mut rest = set;
        while rest != 0 {
            out |= self.up[d][rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        out
    }
}

/// Number of monomial ideals with Hilbert function `h(1..D)` and graded first
/// Betti numbers `beta(1..D)`.
pub fn nmon(n: usize, max_degree: u32, h: &HilbertVector, beta: &BettiVector) -> Result<u64, CountingError> {
    check_dims(n, max_degree)?;
    let len = max_degree as usize;
    if h.0.len() != len {
        return Err(CountingError::WrongLength { expected: len, got: h.0.len() });
    }
    if beta.0.len() != len {
        return Err(CountingError::WrongLength {
            expected: len,
            got: beta.0.len(),
        });
    }
    if (1..=max_degree).any(|d| h.at(d) > count_degree(n, d)) {
        return Ok(0);
    }
    let tables = DegreeTables::new(n, max_degree)?;
    Ok(count_levels(&tables, h, beta, 1, 0))
}

/// `set` holds the ideal's degree-`(d-1)` monomials.
fn count_levels(tables: &DegreeTables, h: &HilbertVector, beta: &BettiVector, d: u32, set: u64) -> u64 {
    let width = tables.width[d as usize];
    let shadow = if d == 1 { 0 } else { tables.shadow(d as usize - 1, set) };
    let required = width as u64 - h.at(d);
    let forced = u64::from(shadow.count_ones());
    if required < forced || required - forced != beta.0[d as usize - 1] {
        return 0;
    }
    let free: Vec<u32> = (0..width as u32).filter(|i| shadow >> i & 1 == 0).collect();
    let k = beta.0[d as usize - 1] as usize;
    if d == h.max_degree() {
        return binomial(free.len() as u64, k as u64);
    }
    let mut total = 0;
    for_each_subset(&free, k, &mut |extra| {
        total += count_levels(tables, h, beta, d + 1, shadow | extra);
    });
    total
}

fn for_each_subset(items: &[u32], k: usize, f: &mut dyn FnMut(u64)) {
    fn go(items: &[u32], k: usize, start: usize, acc: u64, f: &mut dyn FnMut(u64)) {
        if k == 0 {
            f(acc);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k {
                break;
            }
            go(items, k - 1, i + 1, acc | 1 << items[i], f);
        }
    }
    go(items, k, 0, 0, f);
}

/// The lex-segment ideal with Hilbert function `h(1..D)`: in each degree it
/// holds the lexicographically largest monomials.
pub fn lex_segment_ideal(h: &HilbertVector, n: usize, max_degree: u32) -> Result<MonomialIdeal, CountingError> {
    check_dims(n, max_degree)?;
    if h.0.len() != max_degree as usize {
        return Err(CountingError::WrongLength {
            expected: max_degree as usize,
            got: h.0.len(),
        });
    }
    let mut members = Vec::new();
    let mut previous: Vec<Monomial> = Vec::new();
    for d in 1..=max_degree {
        let available = count_degree(n, d);
        if h.at(d) > available {
            return Err(CountingError::NotAttainable { h: h.clone(), degree: d });
        }
        let mut level = enumerate_monomials(n, d, EnumMode::Exact);
        level.sort_by(|a, b| b.cmp_lex(a));
        level.truncate((available - h.at(d)) as usize);
        let shadow_ok = previous.iter().all(|m| {
            (0..n).all(|v| {
                let mut e = m.exponents().to_vec();
                e[v] += 1;
                let up = Monomial::new(e);
                level.contains(&up)
            })
        });
        if !shadow_ok {
            return Err(CountingError::NotAttainable { h: h.clone(), degree: d });
        }
        members.extend(level.iter().cloned());
        previous = level;
    }
    let set = MonomialSet::new(n, max_degree, members).expect("monomials within bounds");
    Ok(minimalize(&set))
}

/// Graded first Betti numbers of the lex-segment ideal for `h`; they bound
/// those of every ideal with Hilbert function `h`.
pub fn lex_betti_bounds(h: &HilbertVector, n: usize, max_degree: u32) -> Result<BettiVector, CountingError> {
    Ok(lex_segment_ideal(h, n, max_degree)?.graded_betti_1())
}

/// Every `h(1..D)` realized by some monomial ideal, in lexicographic order.
pub fn attainable_hilbert_vectors(n: usize, max_degree: u32) -> Result<Vec<HilbertVector>, CountingError> {
    check_dims(n, max_degree)?;
    let caps: Vec<u64> = (1..=max_degree).map(|d| count_degree(n, d)).collect();
    let combos = caps.iter().try_fold(1u64, |acc, c| acc.checked_mul(c + 1));
    if combos.is_none_or(|c| c > 10_000_000) {
        return Err(CountingError::TooLarge {
            what: "number of candidate Hilbert vectors",
            limit: 10_000_000,
        });
    }
    let mut out = Vec::new();
    let mut h = vec![0u64; caps.len()];
    loop {
        let hv = HilbertVector(h.clone());
        if lex_segment_ideal(&hv, n, max_degree).is_ok() {
            out.push(hv);
        }
        // odometer increment, last coordinate fastest
        let mut i = caps.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if h[i] < caps[i] {
                h[i] += 1;
                break;
            }
            h[i] = 0;
        }
    }
}

/// `P(h_I = h)` as the sum over `beta <= beta^L` of
/// `NMon(n, D, h, beta) p^{|beta|} (1-p)^{h(1)+...+h(D)}`; zero when `h` is unattainable.
pub fn prob_hilbert(params: &ErParams<Rational>, h: &HilbertVector) -> Result<ExactProb, CountingError> {
    let (n, max_degree) = (params.n, params.max_degree);
    let bound = match lex_betti_bounds(h, n, max_degree) {
        Ok(b) => b,
        Err(CountingError::NotAttainable { .. }) => return Ok(ExactProb::zero()),
        Err(e) => return Err(e),
    };
    let tables = DegreeTables::new(n, max_degree)?;
    let q = params.p.complement();
    let standard = pow(&q, h.total());
    let mut total = Rational::zero();
    let mut beta = vec![0u64; bound.0.len()];
    loop {
        let count = count_levels(&tables, h, &BettiVector(beta.clone()), 1, 0);
        if count > 0 {
            let size: u64 = beta.iter().sum();
            total += Rational::from_integer(count.into()) * pow(&params.p, size) * &standard;
        }
        let mut i = beta.len();
        loop {
            if i == 0 {
                return Ok(ExactProb::from_unchecked(total));
            }
            i -= 1;
            if beta[i] < bound.0[i] {
                beta[i] += 1;
                break;
            }
            beta[i] = 0;
        }
    }
}
