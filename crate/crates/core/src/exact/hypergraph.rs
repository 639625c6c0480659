//! Hypergraphs on `{0, ..., n-1}` with edges stored as bit masks.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::ideal::MonomialIdeal;
use crate::monomial::MonomialSet;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Hypergraph {
    n: usize,
    edges: BTreeSet<u32>,
}

impl Hypergraph {
    /// Empty edges are dropped and duplicates collapse.
    pub fn new<I: IntoIterator<Item = u32>>(n: usize, edges: I) -> Self {
        assert!(n <= 32, "at most 32 vertices");
        let edges = edges.into_iter().filter(|&e| e != 0).collect();
        Hypergraph { n, edges }
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = u32> + '_ {
        self.edges.iter().copied()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn is_clutter(&self) -> bool {
        self.edges
            .iter()
            .all(|&a| self.edges.iter().all(|&b| a == b || a & b != a))
    }

    /// Edges that contain no other edge.
    pub fn minimal_edges(&self) -> Clutter {
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|&a| !self.edges.iter().any(|&b| b != a && a & b == b))
            .collect();
        Clutter(Hypergraph { n: self.n, edges })
    }

    /// Whether `set` meets every edge.
    pub fn is_transversal(&self, set: u32) -> bool {
        self.edges.iter().all(|&e| e & set != 0)
    }

    /// Minimum size of a vertex set meeting every edge; 0 without edges.
    pub fn transversal_number(&self) -> usize {
        for k in 0..=self.n {
            if subsets_of_size(self.n, k).any(|s| self.is_transversal(s)) {
                return k;
            }
        }
        unreachable!("the full vertex set meets every non-empty edge")
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, e) in self.edges.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            let verts: Vec<String> = (0..self.n).filter(|i| e >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
            write!(f, "{{{}}}", verts.join(","))?;
        }
        f.write_str("}")
    }
}

/// A hypergraph whose edges form an antichain under inclusion.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Clutter(Hypergraph);

impl Clutter {
    pub fn new(h: Hypergraph) -> Option<Self> {
        h.is_clutter().then_some(Clutter(h))
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.0
    }
}

impl std::ops::Deref for Clutter {
    type Target = Hypergraph;

    fn deref(&self) -> &Hypergraph {
        &self.0
    }
}

impl fmt::Debug for Clutter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// All `k`-subsets of `{0..n-1}` as masks, in increasing order.
pub(crate) fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u32> {
    let limit: u64 = 1 << n;
    let mut next: Option<u64> = if k > n {
        None
    } else {
        Some((1u64 << k) - 1)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        if cur >= limit {
            return None;
        }
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            Some((((r ^ cur) >> 2) / c) | r)
        };
        Some(cur as u32)
    })
}

/// Edges are the supports of the members of `set`.
pub fn support_hypergraph(set: &MonomialSet) -> Hypergraph {
    Hypergraph::new(set.num_vars(), set.iter().map(|m| m.support_mask()))
}

/// Edges are the supports of the minimal generators of `ideal`.
pub fn ideal_support_hypergraph(ideal: &MonomialIdeal) -> Hypergraph {
    Hypergraph::new(ideal.num_vars(), ideal.support_masks())
}

/// `dim S/I = n - c(G)` where `G` is the support hypergraph of the generators.
pub fn krull_dimension(ideal: &MonomialIdeal) -> usize {
    ideal.num_vars() - ideal_support_hypergraph(ideal).transversal_number()
}
