//! Monomials as exponent vectors, finite monomial sets and the graded-lex
//! enumeration every other module relies on for deterministic ordering.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("dimension mismatch: expected {expected} variables, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the constant monomial cannot be a generator")]
    Constant,
    #[error("monomial of degree {degree} exceeds the degree bound {bound}")]
    DegreeExceedsBound { degree: u32, bound: u32 },
    #[error("at least one variable is required")]
    NoVariables,
}

/// The monomial `x^a = x_1^{a_1} ... x_n^{a_n}`, stored by its exponent vector.
///
/// `Ord` is the enumeration order used throughout the crate: ascending total
/// degree, and within a degree the lexicographically largest exponent vector
/// first (`x^2, xy, y^2`). It is only meaningful between monomials with the
/// same number of variables.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    pub fn var(i: usize, n: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Monomial { exps }
    }

    /// The square-free monomial whose support is the bit set `mask`.
    pub fn from_support_mask(mask: u32, n: usize) -> Self {
        Monomial {
            exps: (0..n).map(|i| (mask >> i) & 1).collect(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_square_free(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Componentwise comparison: `self | other`.
    pub fn divides(&self, other: &Monomial) -> Result<bool, MonomialError> {
        self.check_same_n(other)?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn divides_unchecked(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// Indices of the variables with positive exponent.
    pub fn support(&self) -> BTreeSet<usize> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Support as a bit set; bit `i` is variable `i`. Requires `n <= 32`.
    pub fn support_mask(&self) -> u32 {
        debug_assert!(self.exps.len() <= 32);
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    pub fn square_free_part(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&e| e.min(1)).collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    /// Pure lexicographic comparison of exponent vectors (`x_1 > x_2 > ...`).
    pub fn cmp_lex(&self, other: &Monomial) -> Ordering {
        self.exps.cmp(&other.exps)
    }

    fn check_same_n(&self, other: &Monomial) -> Result<(), MonomialError> {
        if self.exps.len() != other.exps.len() {
            return Err(MonomialError::DimensionMismatch {
                expected: self.exps.len(),
                got: other.exps.len(),
            });
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A finite set of non-constant monomials of degree at most `max_degree`
/// in `n` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialSet {
    n: usize,
    max_degree: u32,
    members: BTreeSet<Monomial>,
}

impl MonomialSet {
    pub fn empty(n: usize, max_degree: u32) -> Self {
        MonomialSet {
            n,
            max_degree,
            members: BTreeSet::new(),
        }
    }

    pub fn new<I>(n: usize, max_degree: u32, members: I) -> Result<Self, MonomialError>
    where
        I: IntoIterator<Item = Monomial>,
    {
        let mut set = Self::empty(n, max_degree);
        for m in members {
            set.insert(m)?;
        }
        Ok(set)
    }

    pub fn insert(&mut self, m: Monomial) -> Result<bool, MonomialError> {
        if m.num_vars() != self.n {
            return Err(MonomialError::DimensionMismatch {
                expected: self.n,
                got: m.num_vars(),
            });
        }
        if m.is_constant() {
            return Err(MonomialError::Constant);
        }
        if m.degree() > self.max_degree {
            return Err(MonomialError::DegreeExceedsBound {
                degree: m.degree(),
                bound: self.max_degree,
            });
        }
        Ok(self.members.insert(m))
    }

    pub(crate) fn from_sorted_unchecked(n: usize, max_degree: u32, members: BTreeSet<Monomial>) -> Self {
        MonomialSet { n, max_degree, members }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.members.iter()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.members.contains(m)
    }
}

impl<'a> IntoIterator for &'a MonomialSet {
    type Item = &'a Monomial;
    type IntoIter = std::collections::btree_set::Iter<'a, Monomial>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// `C(n, k)`; panics on overflow of `u64`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// Number of monomials of degree exactly `d` in `n` variables.
pub fn count_degree(n: usize, d: u32) -> u64 {
    if n == 0 {
        return u64::from(d == 0);
    }
    binomial(n as u64 + u64::from(d) - 1, u64::from(d))
}

/// Number of non-constant monomials of degree at most `d` in `n` variables.
pub fn count_up_to(n: usize, d: u32) -> u64 {
    binomial(n as u64 + u64::from(d), u64::from(d)) - 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumMode {
    /// Monomials of degree exactly `d`.
    Exact,
    /// Non-constant monomials of degree at most `d`.
    UpTo,
}

/// All monomials of the requested degrees in enumeration order.
pub fn enumerate_monomials(n: usize, d: u32, mode: EnumMode) -> Vec<Monomial> {
    let mut out = Vec::new();
    let degrees = match mode {
        EnumMode::Exact => d..=d,
        EnumMode::UpTo => 1..=d,
    };
    let mut buf = vec![0u32; n];
    for deg in degrees {
        push_degree(&mut buf, 0, deg, &mut out);
    }
    out
}

fn push_degree(buf: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if buf.is_empty() {
        if remaining == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return;
    }
    if pos + 1 == buf.len() {
        buf[pos] = remaining;
        out.push(Monomial::new(buf.to_vec()));
        buf[pos] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        buf[pos] = e;
        push_degree(buf, pos + 1, remaining - e, out);
    }
    buf[pos] = 0;
}

/// Position of a non-constant monomial in `enumerate_monomials(n, D, UpTo)`;
/// independent of `D` as long as `deg <= D`.
pub fn grlex_rank(exps: &[u32]) -> u64 {
    let n = exps.len();
    let deg: u32 = exps.iter().sum();
    debug_assert!(deg > 0);
    let below = count_up_to(n, deg - 1);
    let mut within = 0u64;
    let mut r = u64::from(deg);
    for (i, &a) in exps.iter().enumerate().take(n.saturating_sub(1)) {
        let m = (n - i - 1) as u64;
        let a = u64::from(a);
        if r > a {
            within += binomial(r - a - 1 + m, m);
        }
        r -= a;
    }
    below + within
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn divisibility() {
        assert!(m(&[1, 0]).divides(&m(&[2, 0])).unwrap());
        assert!(!m(&[2, 1]).divides(&m(&[1, 1])).unwrap());
        assert!(Monomial::one(3).divides(&m(&[0, 4, 1])).unwrap());
        assert_eq!(
            m(&[1, 0]).divides(&m(&[1, 0, 0])),
            Err(MonomialError::DimensionMismatch { expected: 2, got: 3 })
        );
    }

    #[test]
    fn supports() {
        assert_eq!(m(&[1, 0, 2]).support(), [0, 2].into_iter().collect());
        assert!(Monomial::one(3).support().is_empty());
        assert_eq!(m(&[1, 1, 1]).support(), [0, 1, 2].into_iter().collect());
        assert_eq!(m(&[1, 0, 2]).support_mask(), 0b101);
    }

    #[test]
    fn enumeration_examples() {
        let exact = enumerate_monomials(2, 2, EnumMode::Exact);
        assert_eq!(exact, vec![m(&[2, 0]), m(&[1, 1]), m(&[0, 2])]);
        assert_eq!(enumerate_monomials(2, 2, EnumMode::UpTo).len(), 5);
        assert_eq!(
            enumerate_monomials(3, 1, EnumMode::UpTo),
            vec![m(&[1, 0, 0]), m(&[0, 1, 0]), m(&[0, 0, 1])]
        );
    }

    #[test]
    fn enumeration_counts_and_order() {
        for n in 1..5 {
            for d in 0..6 {
                let ex = enumerate_monomials(n, d, EnumMode::Exact);
                assert_eq!(ex.len() as u64, count_degree(n, d));
                let up = enumerate_monomials(n, d, EnumMode::UpTo);
                assert_eq!(up.len() as u64, count_up_to(n, d));
                assert!(up.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn rank_matches_enumeration() {
        for n in 1..5 {
            let all = enumerate_monomials(n, 6, EnumMode::UpTo);
            for (k, mono) in all.iter().enumerate() {
                assert_eq!(grlex_rank(mono.exponents()), k as u64, "{mono}");
            }
        }
    }

    #[test]
    fn set_rejects_bad_members() {
        let mut s = MonomialSet::empty(2, 2);
        assert_eq!(s.insert(Monomial::one(2)), Err(MonomialError::Constant));
        assert!(matches!(
            s.insert(m(&[2, 1])),
            Err(MonomialError::DegreeExceedsBound { degree: 3, bound: 2 })
        ));
        assert!(s.insert(m(&[1, 1])).unwrap());
        assert!(!s.insert(m(&[1, 1])).unwrap());
    }

    #[test]
    fn display() {
        assert_eq!(m(&[1, 0, 2]).to_string(), "x1*x3^2");
        assert_eq!(Monomial::one(2).to_string(), "1");
    }
}
