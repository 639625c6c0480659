//! Simplicial complexes on `{0, ..., n-1}`, the Stanley–Reisner correspondence
//! with square-free monomial ideals, and reduced homology over Z/2.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use num_traits::One;

use crate::exact::prob_ideal_general;
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::rational::{pow, ExactProb, Probability, Rational};
use crate::sampling::{cf_hierarchical_distribution, cf_parameters, CfParams};

/// Largest vertex count for which faces are enumerated.
pub const MAX_VERTICES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("ideal {0} is not square-free")]
    NotSquareFree(String),
    #[error("the void complex has no Stanley-Reisner ideal or homology")]
    Void,
    #[error("vertex count {n} exceeds the supported maximum {limit}")]
    TooManyVertices { n: usize, limit: usize },
    #[error("face family is not closed under taking subsets")]
    NotClosed,
    #[error("face {0:#b} uses a vertex outside the ground set")]
    BadFace(u32),
}

fn check_n(n: usize, limit: usize) -> Result<(), TopologyError> {
    if n > limit {
        Err(TopologyError::TooManyVertices { n, limit })
    } else {
        Ok(())
    }
}

/// A downward-closed family of subsets of the vertex set, each stored as a
/// bit mask. The family with no faces at all is the void complex; `{∅}` is the
/// empty complex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplicialComplex {
    n: usize,
    faces: BTreeSet<u32>,
}

impl SimplicialComplex {
    pub fn void(n: usize) -> Self {
        SimplicialComplex {
            n,
            faces: BTreeSet::new(),
        }
    }

    /// The complex `{∅}`.
    pub fn empty(n: usize) -> Self {
        SimplicialComplex {
            n,
            faces: [0].into_iter().collect(),
        }
    }

    pub fn full_simplex(n: usize) -> Result<Self, TopologyError> {
        check_n(n, MAX_VERTICES)?;
        Ok(SimplicialComplex {
            n,
            faces: (0..1u32 << n).collect(),
        })
    }

    /// Downward closure of `facets`; an empty facet list gives the void complex.
    pub fn from_facets(n: usize, facets: &[u32]) -> Result<Self, TopologyError> {
        check_n(n, MAX_VERTICES)?;
        let mut faces = BTreeSet::new();
        for &f in facets {
            check_face(n, f)?;
            let mut sub = f;
            loop {
                faces.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f;
            }
        }
        Ok(SimplicialComplex { n, faces })
    }

    /// A complex from its full face list, which must be closed under subsets.
    pub fn from_faces<I: IntoIterator<Item = u32>>(n: usize, faces: I) -> Result<Self, TopologyError> {
        check_n(n, MAX_VERTICES)?;
        let faces: BTreeSet<u32> = faces.into_iter().collect();
        for &f in &faces {
            check_face(n, f)?;
            if (0..n).any(|i| f & (1 << i) != 0 && !faces.contains(&(f & !(1 << i)))) {
                return Err(TopologyError::NotClosed);
            }
        }
        Ok(SimplicialComplex { n, faces })
    }

    pub(crate) fn from_faces_unchecked(n: usize, faces: BTreeSet<u32>) -> Self {
        SimplicialComplex { n, faces }
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn faces(&self) -> impl Iterator<Item = u32> + '_ {
        self.faces.iter().copied()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn contains_face(&self, face: u32) -> bool {
        self.faces.contains(&face)
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    /// Largest face size minus one; `None` for the void complex, `Some(-1)` for `{∅}`.
    pub fn dimension(&self) -> Option<i32> {
        self.faces.iter().map(|f| f.count_ones() as i32 - 1).max()
    }

    /// `f_i` = number of faces of dimension `i`, for `i = 0..n-1`.
    pub fn f_vector(&self) -> Vec<u64> {
        let mut f = vec![0u64; self.n];
        for &face in &self.faces {
            if face != 0 {
                f[face.count_ones() as usize - 1] += 1;
            }
        }
        f
    }

    /// Non-faces all of whose proper subsets are faces, in increasing mask order.
    pub fn minimal_non_faces(&self) -> Vec<u32> {
        if self.is_void() {
            return vec![0];
        }
        let mut out = Vec::new();
        for mask in 1..(1u32 << self.n) {
            if !self.faces.contains(&mask)
                && (0..self.n).all(|i| mask & (1 << i) == 0 || self.faces.contains(&(mask & !(1 << i))))
            {
                out.push(mask);
            }
        }
        out
    }

    /// `e_i` = number of minimal non-faces of dimension `i`, for `i = 0..n-1`.
    pub fn e_vector(&self) -> Vec<u64> {
        let mut e = vec![0u64; self.n];
        for mask in self.minimal_non_faces() {
            if mask != 0 {
                e[mask.count_ones() as usize - 1] += 1;
            }
        }
        e
    }

    /// The complex with every vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> SimplicialComplex {
        assert_eq!(perm.len(), self.n);
        let faces = self
            .faces
            .iter()
            .map(|&f| {
                (0..self.n)
                    .filter(|&i| f & (1 << i) != 0)
                    .fold(0u32, |acc, i| acc | (1 << perm[i]))
            })
            .collect();
        SimplicialComplex { n: self.n, faces }
    }
}

fn check_face(n: usize, face: u32) -> Result<(), TopologyError> {
    if n < 32 && face >> n != 0 {
        Err(TopologyError::BadFace(face))
    } else {
        Ok(())
    }
}

fn format_face(face: u32, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    f.write_str("{")?;
    let mut first = true;
    for i in 0..32 {
        if face & (1 << i) != 0 {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
            first = false;
        }
    }
    f.write_str("}")
}

impl fmt::Display for SimplicialComplex {
    /// Faces listed with 1-based vertex labels, e.g. `[{}, {1}, {2}, {1,2}]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_void() {
            return f.write_str("void");
        }
        let mut faces: Vec<u32> = self.faces.iter().copied().collect();
        faces.sort_by_key(|&m| (m.count_ones(), (0..32).filter(|i| m & (1 << i) != 0).collect::<Vec<u32>>()));
        f.write_str("[")?;
        for (k, face) in faces.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            format_face(*face, f)?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for SimplicialComplex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The complex of all vertex sets whose square-free monomial lies outside `ideal`.
pub fn stanley_reisner_complex(ideal: &MonomialIdeal) -> Result<SimplicialComplex, TopologyError> {
    if !ideal.is_square_free() {
        return Err(TopologyError::NotSquareFree(ideal.to_string()));
    }
    let n = ideal.num_vars();
    check_n(n, MAX_VERTICES)?;
    let gens = ideal.support_masks();
    let faces = (0..1u32 << n)
        .filter(|&face| gens.iter().all(|&g| g & face != g))
        .collect();
    Ok(SimplicialComplex { n, faces })
}

/// The ideal generated by the minimal non-faces of `complex`, with degree cap `n`.
pub fn stanley_reisner_ideal(complex: &SimplicialComplex) -> Result<MonomialIdeal, TopologyError> {
    let n = complex.num_vertices();
    ideal_from_non_faces(complex, n.max(1) as u32, n as u32)
}

/// The ideal generated by the minimal non-faces of size at most `r + 1`, with
/// degree cap `r + 1`. For complexes of dimension at most `r` this is injective
/// and is the ideal a general-model draw with degree bound `r + 1` produces.
pub fn truncated_stanley_reisner_ideal(complex: &SimplicialComplex, r: u32) -> Result<MonomialIdeal, TopologyError> {
    ideal_from_non_faces(complex, r + 1, r + 1)
}

fn ideal_from_non_faces(complex: &SimplicialComplex, cap: u32, max_size: u32) -> Result<MonomialIdeal, TopologyError> {
    if complex.is_void() {
        return Err(TopologyError::Void);
    }
    let n = complex.num_vertices();
    let mut gens: Vec<Monomial> = complex
        .minimal_non_faces()
        .into_iter()
        .filter(|m| m.count_ones() <= max_size)
        .map(|m| Monomial::from_support_mask(m, n))
        .collect();
    gens.sort();
    Ok(MonomialIdeal::from_minimal_unchecked(n, cap, gens))
}

/// Reduced Betti numbers over Z/2, `b~_0, ..., b~_{n-1}`.
pub fn z2_homology(complex: &SimplicialComplex) -> Result<Vec<u64>, TopologyError> {
    if complex.is_void() {
        return Err(TopologyError::Void);
    }
    let n = complex.num_vertices();
    check_n(n, MAX_VERTICES)?;
    // by_dim[k] holds the faces with k vertices, k = 0..=n.
    let mut by_dim: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for f in complex.faces() {
        by_dim[f.count_ones() as usize].push(f);
    }
    // rank[k] = rank of the boundary map from k-vertex faces to (k-1)-vertex faces.
    let mut rank = vec![0u64; n + 2];
    for k in 1..=n {
        rank[k] = boundary_rank(&by_dim[k], &by_dim[k - 1]);
    }
    Ok((0..n)
        .map(|i| {
            let k = i + 1;
            by_dim[k].len() as u64 - rank[k] - rank[k + 1]
        })
        .collect())
}

fn boundary_rank(faces: &[u32], facets_below: &[u32]) -> u64 {
    if faces.is_empty() || facets_below.is_empty() {
        return 0;
    }
    let index: BTreeMap<u32, u32> = facets_below.iter().enumerate().map(|(i, &f)| (f, i as u32)).collect();
    // Sparse elimination keyed on the largest column index of each row.
    let mut pivots: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    let mut rank = 0;
    for &face in faces {
        let mut row: Vec<u32> = (0..32)
            .filter(|i| face & (1 << i) != 0)
            .filter_map(|i| index.get(&(face & !(1 << i))).copied())
            .collect();
        row.sort_unstable();
        while let Some(&low) = row.last() {
            match pivots.get(&low) {
                Some(p) => row = symmetric_difference(&row, p),
                None => {
                    pivots.insert(low, row);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn symmetric_difference(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Reduced Z/2 homology of the Stanley–Reisner complex of the radical of `ideal`.
pub fn radical_homology(ideal: &MonomialIdeal) -> Result<Vec<u64>, TopologyError> {
    z2_homology(&stanley_reisner_complex(&ideal.radical())?)
}

/// Every non-void complex on `n` vertices with faces of at most `max_size` vertices.
pub fn enumerate_complexes(n: usize, max_size: usize) -> Result<Vec<SimplicialComplex>, TopologyError> {
    check_n(n, 6)?;
    let mut out = Vec::new();
    let start: BTreeSet<u32> = [0].into_iter().collect();
    extend_levels(n, 1, max_size.min(n), start, &mut out);
    Ok(out)
}

/// Candidates at `size`: sets of that size whose every facet is present.
pub(crate) fn candidates(n: usize, size: usize, faces: &BTreeSet<u32>) -> Vec<u32> {
    (0..1u32 << n)
        .filter(|m| m.count_ones() as usize == size)
        .filter(|&m| (0..n).all(|i| m & (1 << i) == 0 || faces.contains(&(m & !(1 << i)))))
        .collect()
}

fn extend_levels(n: usize, size: usize, max_size: usize, faces: BTreeSet<u32>, out: &mut Vec<SimplicialComplex>) {
    if size > max_size {
        out.push(SimplicialComplex { n, faces });
        return;
    }
    let cands = candidates(n, size, &faces);
    for choice in 0..1u64 << cands.len() {
        let mut next = faces.clone();
        next.extend(cands.iter().enumerate().filter(|(k, _)| choice >> k & 1 == 1).map(|(_, &m)| m));
        extend_levels(n, size + 1, max_size, next, out);
    }
}

/// Vertex limit for [`cf_distribution_table`].
pub const MAX_CF_TABLE_VERTICES: usize = 4;

/// One complex of the Costa–Farber law, with its probability computed three ways.
#[derive(Debug, Clone, PartialEq)]
pub struct CfRow {
    pub complex: SimplicialComplex,
    /// Truncated Stanley–Reisner ideal with degree cap `r + 1`.
    pub ideal: MonomialIdeal,
    /// `prod_i p~_i^{f_i} (1 - p~_i)^{e_i}`.
    pub formula: ExactProb,
    /// Probability of `ideal` under the general model from `cf_parameters`.
    pub general_model: ExactProb,
    /// Probability of the complex under hierarchical sampling.
    pub hierarchical: ExactProb,
}

impl CfRow {
    pub fn agrees(&self) -> bool {
        self.formula == self.general_model && self.formula == self.hierarchical
    }
}

/// Every non-void complex of dimension at most `r` with its Costa–Farber
/// probability, from the face/minimal-non-face formula, the general monomial
/// model and the hierarchical sampler.
pub fn cf_distribution_table(cf: &CfParams<Rational>) -> Result<Vec<CfRow>, TopologyError> {
    check_n(cf.n, MAX_CF_TABLE_VERTICES)?;
    let r = cf.r();
    let d = r as u32 + 1;
    let general = cf_parameters(cf, d).expect("degree bound is r + 1");
    let hierarchical = cf_hierarchical_distribution(cf).expect("within the exact vertex limit");
    let mut rows = Vec::new();
    for complex in enumerate_complexes(cf.n, r + 1)? {
        let f = complex.f_vector();
        let e = complex.e_vector();
        let mut formula = Rational::one();
        for (i, p) in cf.p_tilde.iter().enumerate() {
            let fi = f.get(i).copied().unwrap_or(0);
            let ei = e.get(i).copied().unwrap_or(0);
            formula *= pow(p, fi) * pow(&p.complement(), ei);
        }
        let ideal = truncated_stanley_reisner_ideal(&complex, r as u32)?;
        let general_model = prob_ideal_general(&ideal, &general).expect("parameters match the ideal");
        let hier = hierarchical.get(&complex).cloned().unwrap_or_else(ExactProb::zero);
        rows.push(CfRow {
            complex,
            ideal,
            formula: ExactProb::from_unchecked(formula),
            general_model,
            hierarchical: hier,
        });
    }
    Ok(rows)
}
