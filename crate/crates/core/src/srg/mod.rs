//! The collinearity graph Γ and its strongly-regular structure.
//!
//! Adjacency rows are packed bit sets, so every common-neighbour count in
//! this module is a word-wise AND followed by a popcount.

mod partition;
mod profile;

pub use partition::{
    check_3_regularity, local_partition, refine, scan_triads, triad_trace, LocalPartition,
    RefinedPartition, RegularityCheck, TriadScan, TriadSelection,
};
pub use profile::{
    adjacency_profile, derived_profile, pair_law_check, refined_counts_check, AdjacencyProfile,
    DerivedProfile, PairLaw, RefinedCounts,
};

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::AnalysisError;
use crate::geometry::GQStructure;

/// Constants of the GQ(4,16) point graph and its local structure.
pub mod q54 {
    /// `|Γ(p) ∩ Γ(q) ∩ Γ(r)|` for every triad.
    pub const TRIAD_TRACE: usize = 5;
    /// `|A|` for every non-edge.
    pub const A_SIZE: usize = 17;
    pub const B_SIZE: usize = 204;
    pub const C_SIZE: usize = 51;
    pub const A1_SIZE: usize = 5;
    pub const A2_SIZE: usize = 12;
    pub const B1_SIZE: usize = 39;
    pub const B2_SIZE: usize = 164;
    pub const C1_SIZE: usize = 12;
    /// `|B′ ∩ N₀|`: 12 lines on r missing A, two B′ points each.
    pub const B1_N0: usize = 24;
    /// `|B′ ∩ N₁|`: 5 lines on r through A′, three B′ points each.
    pub const B1_N1: usize = 15;
    /// `|Γ(a) ∩ B′ ∩ N₀|` for `a ∈ A″`.
    pub const A2_B1_N0: usize = 10;
    /// Block counts through an i-subset of A, i = 0..3.
    pub const LAMBDAS: [i64; 4] = [204, 60, 15, 3];
    /// Same for the derived design at a point, i = 0..2.
    pub const DERIVED_LAMBDAS: [i64; 3] = [60, 15, 3];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrgParams {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl SrgParams {
    pub const Q54: Self = Self { v: 325, k: 68, lambda: 3, mu: 17 };

    /// `k(k − λ − 1) = (v − k − 1)μ`
    pub fn is_feasible(&self) -> bool {
        self.v > self.k
            && self.k > self.lambda
            && self.k * (self.k - self.lambda - 1) == (self.v - self.k - 1) * self.mu
    }
}

impl std::fmt::Display for SrgParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{},{})", self.v, self.k, self.lambda, self.mu)
    }
}

/// Why a graph is not strongly regular; pairs are the first offenders in
/// ascending `(u, v)` order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SrgFailure {
    NoVertices,
    Loop { vertex: usize },
    Asymmetric { u: usize, v: usize },
    Complete,
    Null,
    Degree { vertex: usize, degree: usize, expected: usize },
    Lambda { u: usize, v: usize, common: usize, expected: usize },
    Mu { u: usize, v: usize, common: usize, expected: usize },
}

impl std::fmt::Display for SrgFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::NoVertices => write!(f, "graph has no vertices"),
            Self::Loop { vertex } => write!(f, "vertex {vertex} is adjacent to itself"),
            Self::Asymmetric { u, v } => write!(f, "{u} ~ {v} but not {v} ~ {u}"),
            Self::Complete => write!(f, "graph is complete"),
            Self::Null => write!(f, "graph has no edges"),
            Self::Degree { vertex, degree, expected } => {
                write!(f, "vertex {vertex} has degree {degree}, expected {expected}")
            }
            Self::Lambda { u, v, common, expected } => {
                write!(f, "edge {{{u},{v}}} has {common} common neighbours, expected λ = {expected}")
            }
            Self::Mu { u, v, common, expected } => {
                write!(f, "non-edge {{{u},{v}}} has {common} common neighbours, expected μ = {expected}")
            }
        }
    }
}

/// Simple undirected graph on `0..n` stored as adjacency bit rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointGraph {
    rows: Vec<BitSet>,
}

impl PointGraph {
    /// Rows are taken as given; [`verify_srg`] reports asymmetry or loops.
    pub fn from_rows(rows: Vec<BitSet>) -> Self {
        Self { rows }
    }

    pub fn complete(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = BitSet::full(n);
                r.remove(i);
                r
            })
            .collect();
        Self { rows }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn neighbours(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Vertices different from `v` and not adjacent to it.
    pub fn non_neighbours(&self, v: usize) -> BitSet {
        let mut out = self.rows[v].complement();
        out.remove(v);
        out
    }

    #[inline]
    pub fn common_count(&self, u: usize, v: usize) -> usize {
        self.rows[u].intersection_count(&self.rows[v])
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), AnalysisError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(AnalysisError::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    /// Copy with the edge `{u, v}` removed.
    pub fn without_edge(&self, u: usize, v: usize) -> Self {
        let mut rows = self.rows.clone();
        rows[u].remove(v);
        rows[v].remove(u);
        Self { rows }
    }

    /// Non-edges `{p, q}` with `p < q`, in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |p| {
            self.non_neighbours(p)
                .iter()
                .filter(move |&q| q > p)
                .map(move |q| (p, q))
                .collect::<Vec<_>>()
        })
    }

    /// The lexicographically first non-edge.
    pub fn canonical_non_edge(&self) -> Option<(usize, usize)> {
        self.non_edges().next()
    }
}

/// Collinearity graph of `s`: adjacent iff distinct and on a common line.
pub fn point_graph(s: &GQStructure) -> PointGraph {
    PointGraph::from_rows(s.collinearity_rows())
}

/// Checks every vertex and every unordered pair. Parameters are read off
/// vertex 0, the first edge and the first non-edge.
pub fn verify_srg(g: &PointGraph) -> Result<SrgParams, SrgFailure> {
    let n = g.n();
    if n == 0 {
        return Err(SrgFailure::NoVertices);
    }
    for u in 0..n {
        if g.adjacent(u, u) {
            return Err(SrgFailure::Loop { vertex: u });
        }
        for v in g.neighbours(u).iter() {
            if !g.adjacent(v, u) {
                return Err(SrgFailure::Asymmetric { u, v });
            }
        }
    }
    let edges = g.edge_count();
    if edges == 0 {
        return Err(SrgFailure::Null);
    }
    if edges == n * (n - 1) / 2 {
        return Err(SrgFailure::Complete);
    }

    let k = g.degree(0);
    if let Some(vertex) = (0..n).find(|&v| g.degree(v) != k) {
        return Err(SrgFailure::Degree { vertex, degree: g.degree(vertex), expected: k });
    }

    let mut lambda = None;
    let mut mu = None;
    for u in 0..n {
        for v in u + 1..n {
            let common = g.common_count(u, v);
            let (slot, adjacent) = if g.adjacent(u, v) { (&mut lambda, true) } else { (&mut mu, false) };
            match *slot {
                None => *slot = Some(common),
                Some(expected) if expected != common => {
                    return Err(if adjacent {
                        SrgFailure::Lambda { u, v, common, expected }
                    } else {
                        SrgFailure::Mu { u, v, common, expected }
                    });
                }
                Some(_) => {}
            }
        }
    }
    Ok(SrgParams {
        v: n,
        k,
        lambda: lambda.expect("graph has an edge"),
        mu: mu.expect("graph has a non-edge"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::build_quadric_quadrangle;

    #[test]
    fn feasibility_identity() {
        assert!(SrgParams::Q54.is_feasible());
        assert_eq!(68 * (68 - 3 - 1), (325 - 68 - 1) * 17);
        assert!(!SrgParams { v: 325, k: 68, lambda: 3, mu: 16 }.is_feasible());
    }

    #[test]
    fn q54_point_graph() {
        let s = build_quadric_quadrangle();
        let g = point_graph(&s);
        assert!((0..g.n()).all(|v| g.degree(v) == 68));
        assert_eq!(g.edge_count(), 11050);
        let line = &s.lines()[42];
        assert!(g.adjacent(line[0], line[4]));
        assert_eq!(verify_srg(&g), Ok(SrgParams::Q54));
        assert_eq!(g.non_edges().count(), 41600);
        assert_eq!(g.canonical_non_edge(), Some((0, 52)));
    }

    #[test]
    fn complete_and_null_graphs_fail() {
        assert_eq!(verify_srg(&PointGraph::complete(5)), Err(SrgFailure::Complete));
        let null = PointGraph::from_rows(vec![BitSet::new(4); 4]);
        assert_eq!(verify_srg(&null), Err(SrgFailure::Null));
    }

    #[test]
    fn removing_an_edge_breaks_regularity() {
        let g = point_graph(&build_quadric_quadrangle());
        let v = g.neighbours(7).iter().next().unwrap();
        let broken = g.without_edge(7, v);
        match verify_srg(&broken) {
            Err(SrgFailure::Degree { degree: 67, expected: 68, .. }) => {}
            Err(SrgFailure::Degree { degree: 68, expected: 67, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn asymmetric_rows_are_reported() {
        let mut rows = vec![BitSet::new(3); 3];
        rows[0].insert(1);
        assert_eq!(
            verify_srg(&PointGraph::from_rows(rows)),
            Err(SrgFailure::Asymmetric { u: 0, v: 1 })
        );
    }
}
