//! Monomial ideals given by their minimal generating antichain.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::monomial::{count_degree, enumerate_monomials, EnumMode, Monomial, MonomialError, MonomialSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error(transparent)]
    Monomial(#[from] MonomialError),
    #[error("{0} is undefined for the zero ideal")]
    UndefinedForZeroIdeal(&'static str),
}

/// Hilbert function values `h(1), ..., h(D)`; index 0 holds `h(1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HilbertVector(pub Vec<u64>);

impl HilbertVector {
    /// `h(d)` for `1 <= d <= D`.
    pub fn at(&self, d: u32) -> u64 {
        self.0[d as usize - 1]
    }

    pub fn max_degree(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Hilbert function of the whole ring `k[x_1..x_n]` truncated at `D`.
    pub fn full(n: usize, max_degree: u32) -> Self {
        HilbertVector((1..=max_degree).map(|d| count_degree(n, d)).collect())
    }
}

impl fmt::Display for HilbertVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_vec(f, &self.0)
    }
}

/// First graded Betti numbers `beta_{1,1}, ..., beta_{1,D}`; index 0 holds degree 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiVector(pub Vec<u64>);

impl BettiVector {
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Componentwise `self <= other`; vectors of different length are padded with zeros.
    pub fn le_componentwise(&self, other: &BettiVector) -> bool {
        let len = self.0.len().max(other.0.len());
        (0..len).all(|i| self.0.get(i).copied().unwrap_or(0) <= other.0.get(i).copied().unwrap_or(0))
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_vec(f, &self.0)
    }
}

fn write_vec(f: &mut fmt::Formatter<'_>, v: &[u64]) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

/// A monomial ideal in `n` variables generated in degree at most `max_degree`,
/// stored as its minimal generators in enumeration order. The empty generator
/// list is the zero ideal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialIdeal {
    n: usize,
    max_degree: u32,
    gens: Vec<Monomial>,
}

/// The divisibility-minimal elements of `set`; they generate the same ideal.
pub fn minimalize(set: &MonomialSet) -> MonomialIdeal {
    // Set order is degree-ascending, so every divisor of a candidate has
    // already been seen when the candidate is examined.
    let mut gens: Vec<Monomial> = Vec::new();
    for m in set.iter() {
        if !gens.iter().any(|g| g.divides_unchecked(m)) {
            gens.push(m.clone());
        }
    }
    MonomialIdeal {
        n: set.num_vars(),
        max_degree: set.max_degree(),
        gens,
    }
}

impl MonomialIdeal {
    pub fn zero(n: usize, max_degree: u32) -> Self {
        MonomialIdeal {
            n,
            max_degree,
            gens: Vec::new(),
        }
    }

    /// `<x_1, ..., x_n>`.
    pub fn maximal(n: usize, max_degree: u32) -> Self {
        MonomialIdeal {
            n,
            max_degree,
            gens: (0..n).map(|i| Monomial::var(i, n)).collect(),
        }
    }

    /// The ideal generated by `gens` (any generating set; it is minimalized).
    pub fn from_generators<I>(n: usize, max_degree: u32, gens: I) -> Result<Self, IdealError>
    where
        I: IntoIterator<Item = Monomial>,
    {
        Ok(minimalize(&MonomialSet::new(n, max_degree, gens)?))
    }

    /// Builds an ideal from generators already known to be a sorted antichain.
    pub(crate) fn from_minimal_unchecked(n: usize, max_degree: u32, gens: Vec<Monomial>) -> Self {
        debug_assert!(gens.windows(2).all(|w| w[0] < w[1]));
        MonomialIdeal { n, max_degree, gens }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// The same ideal viewed with another degree bound.
    pub fn with_max_degree(&self, max_degree: u32) -> Result<Self, IdealError> {
        if let Some(g) = self.gens.iter().find(|g| g.degree() > max_degree) {
            return Err(MonomialError::DegreeExceedsBound {
                degree: g.degree(),
                bound: max_degree,
            }
            .into());
        }
        Ok(MonomialIdeal {
            max_degree,
            ..self.clone()
        })
    }

    pub fn contains(&self, m: &Monomial) -> Result<bool, IdealError> {
        if m.num_vars() != self.n {
            return Err(MonomialError::DimensionMismatch {
                expected: self.n,
                got: m.num_vars(),
            }
            .into());
        }
        Ok(self.contains_unchecked(m))
    }

    pub(crate) fn contains_unchecked(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides_unchecked(m))
    }

    /// Number of degree-`d` monomials outside the ideal.
    pub fn hilbert_function(&self, d: u32) -> u64 {
        if self.is_zero() {
            return count_degree(self.n, d);
        }
        enumerate_monomials(self.n, d, EnumMode::Exact)
            .iter()
            .filter(|m| !self.contains_unchecked(m))
            .count() as u64
    }

    /// `h(1..=D)` for this ideal's degree bound.
    pub fn hilbert_vector(&self) -> HilbertVector {
        self.hilbert_vector_to(self.max_degree)
    }

    pub fn hilbert_vector_to(&self, max_degree: u32) -> HilbertVector {
        HilbertVector((1..=max_degree).map(|d| self.hilbert_function(d)).collect())
    }

    /// Non-constant standard monomials of degree at most `max_degree`:
    /// `h(1) + ... + h(D)`.
    pub fn standard_count(&self, max_degree: u32) -> u64 {
        (1..=max_degree).map(|d| self.hilbert_function(d)).sum()
    }

    /// Minimal generators counted by degree, `beta_{1,1..D}` with `D` the degree bound.
    pub fn graded_betti_1(&self) -> BettiVector {
        let mut v = vec![0u64; self.max_degree as usize];
        for g in &self.gens {
            v[g.degree() as usize - 1] += 1;
        }
        BettiVector(v)
    }

    pub fn total_betti_1(&self) -> usize {
        self.gens.len()
    }

    pub fn initial_degree(&self) -> Result<u32, IdealError> {
        // generators are sorted by degree
        self.gens
            .first()
            .map(Monomial::degree)
            .ok_or(IdealError::UndefinedForZeroIdeal("initial degree"))
    }

    /// Largest degree of a minimal generator.
    pub fn degree_complexity(&self) -> Result<u32, IdealError> {
        self.gens
            .last()
            .map(Monomial::degree)
            .ok_or(IdealError::UndefinedForZeroIdeal("degree complexity"))
    }

    pub fn is_square_free(&self) -> bool {
        self.gens.iter().all(Monomial::is_square_free)
    }

    pub fn radical(&self) -> MonomialIdeal {
        let parts = self.gens.iter().map(Monomial::square_free_part).collect();
        minimalize(&MonomialSet::from_sorted_unchecked(self.n, self.max_degree, parts))
    }

    /// No two minimal generators share a positive exponent in the same variable.
    pub fn is_strongly_generic(&self) -> bool {
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                let clash = a
                    .exponents()
                    .iter()
                    .zip(b.exponents())
                    .any(|(x, y)| x == y && *x != 0);
                if clash {
                    return false;
                }
            }
        }
        true
    }

    /// Supports of the minimal generators as bit sets (`n <= 32`).
    pub fn support_masks(&self) -> Vec<u32> {
        self.gens.iter().map(Monomial::support_mask).collect()
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in n={} D={}", self.n, self.max_degree)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("<0>");
        }
        f.write_str("<")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}
