//! Adjacency profiles of `B` against `A′`, and the local counts built on them.

use serde::{Deserialize, Serialize};

use super::{q54, LocalPartition, PointGraph, RefinedPartition};
use crate::bitset::BitSet;
use crate::error::AnalysisError;

/// `N_i` = vertices of `B` with exactly `i` neighbours in `A′`, and `n_i = |N_i|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyProfile {
    pub counts: Vec<usize>,
    pub classes: Vec<BitSet>,
}

impl AdjacencyProfile {
    /// `Σ n_i`
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// `Σ i·n_i`
    pub fn weighted_total(&self) -> usize {
        self.counts.iter().enumerate().map(|(i, n)| i * n).sum()
    }

    pub fn counts_i64(&self) -> Vec<i64> {
        self.counts.iter().map(|&n| n as i64).collect()
    }

    /// Index `i` with `v ∈ N_i`.
    pub fn class_of(&self, v: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(v))
    }
}

pub fn adjacency_profile(g: &PointGraph, part: &RefinedPartition) -> AdjacencyProfile {
    let width = part.a1.count();
    let mut classes = vec![BitSet::new(g.n()); width + 1];
    for y in part.base.b.iter() {
        classes[g.neighbours(y).intersection_count(&part.a1)].insert(y);
    }
    let counts = classes.iter().map(BitSet::count).collect();
    AdjacencyProfile { counts, classes }
}

/// `|B′ ∩ N_i|` for each `i`, and `|Γ(a) ∩ B′ ∩ N₀|` for each `a ∈ A″`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinedCounts {
    pub b1_by_class: Vec<usize>,
    pub a2_b1_n0: Vec<(usize, usize)>,
}

impl RefinedCounts {
    /// GQ(4,16) values: `B′ = (B′∩N₀) ⊔ (B′∩N₁)` of sizes 24 and 15, and
    /// `|Γ(a) ∩ B′ ∩ N₀| = 10` for every `a ∈ A″`.
    pub fn matches_q54(&self) -> bool {
        self.b1_by_class.first() == Some(&q54::B1_N0)
            && self.b1_by_class.get(1) == Some(&q54::B1_N1)
            && self.b1_by_class.iter().skip(2).all(|&c| c == 0)
            && self.a2_b1_n0.len() == q54::A2_SIZE
            && self.a2_b1_n0.iter().all(|&(_, c)| c == q54::A2_B1_N0)
    }
}

pub fn refined_counts_check(g: &PointGraph, part: &RefinedPartition, profile: &AdjacencyProfile) -> RefinedCounts {
    let b1_by_class = profile
        .classes
        .iter()
        .map(|class| class.intersection_count(&part.b1))
        .collect();
    let b1_n0 = part.b1.intersection(&profile.classes[0]);
    let a2_b1_n0 = part
        .a2
        .iter()
        .map(|a| (a, g.neighbours(a).intersection_count(&b1_n0)))
        .collect();
    RefinedCounts { b1_by_class, a2_b1_n0 }
}

/// Common neighbours of two non-adjacent `x, y ∈ B`, split by part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairLaw {
    pub x: usize,
    pub y: usize,
    /// `k = |Γ(x) ∩ Γ(y) ∩ A|`
    pub k: usize,
    pub in_b: usize,
    pub in_c: usize,
    pub in_d: usize,
}

impl PairLaw {
    /// `|·∩B| = 7 + k` and `|·∩C| = |·∩D| = 5 − k`.
    pub fn holds(&self) -> bool {
        let trace = q54::TRIAD_TRACE;
        self.k <= trace
            && self.in_c == trace - self.k
            && self.in_d == trace - self.k
            && self.in_b == 7 + self.k
    }

    pub fn total(&self) -> usize {
        self.k + self.in_b + self.in_c + self.in_d
    }
}

pub fn pair_law_check(g: &PointGraph, part: &LocalPartition, x: usize, y: usize) -> Result<PairLaw, AnalysisError> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    for v in [x, y] {
        if !part.b.contains(v) {
            return Err(AnalysisError::NotInSet { vertex: v, set: "B" });
        }
    }
    if x == y {
        return Err(AnalysisError::NotDistinct(x));
    }
    if g.adjacent(x, y) {
        return Err(AnalysisError::Adjacent(x, y));
    }
    let common = g.neighbours(x).intersection(g.neighbours(y));
    Ok(PairLaw {
        x,
        y,
        k: common.intersection_count(&part.a),
        in_b: common.intersection_count(&part.b),
        in_c: common.intersection_count(&part.c),
        in_d: common.intersection_count(&part.d),
    })
}

/// `m_i(a) = |Γ(a) ∩ N_i|` for `a ∈ A″`, `i = 0..|A′|−1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedProfile {
    pub a: usize,
    pub counts: Vec<usize>,
}

impl DerivedProfile {
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn counts_i64(&self) -> Vec<i64> {
        self.counts.iter().map(|&n| n as i64).collect()
    }
}

/// `N_{|A′|}` is excluded: a vertex adjacent to all of `A′` has its whole
/// trace there, so it cannot also be adjacent to `a ∈ A″`.
pub fn derived_profile(
    g: &PointGraph,
    part: &RefinedPartition,
    profile: &AdjacencyProfile,
    a: usize,
) -> Result<DerivedProfile, AnalysisError> {
    g.check_vertex(a)?;
    if !part.a2.contains(a) {
        return Err(AnalysisError::NotInSet { vertex: a, set: "A″" });
    }
    let top = profile.classes.len() - 1;
    let counts = profile.classes[..top]
        .iter()
        .map(|class| g.neighbours(a).intersection_count(class))
        .collect();
    Ok(DerivedProfile { a, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::build_quadric_quadrangle;
    use crate::srg::{local_partition, point_graph, refine};

    #[test]
    fn canonical_profile_values() {
        let g = point_graph(&build_quadric_quadrangle());
        let part = local_partition(&g, 0, 52).unwrap();
        for r in part.b.iter().take(10) {
            let rp = refine(&g, &part, r).unwrap();
            let prof = adjacency_profile(&g, &rp);
            // Frozen from an independent brute force over Q(5,4).
            assert_eq!(prof.counts, vec![36, 45, 120, 0, 0, 3]);
            assert_eq!(prof.total(), 204);
            assert_eq!(prof.weighted_total(), 300);
            assert_eq!(prof.class_of(r), Some(5));

            assert!(refined_counts_check(&g, &rp, &prof).matches_q54());
            for a in rp.a2.iter() {
                let dp = derived_profile(&g, &rp, &prof, a).unwrap();
                assert_eq!(dp.counts, vec![15, 15, 30, 0, 0]);
            }
            let a = rp.a1.iter().next().unwrap();
            assert!(derived_profile(&g, &rp, &prof, a).is_err());
        }
    }

    #[test]
    fn pair_law_on_some_pairs() {
        let g = point_graph(&build_quadric_quadrangle());
        let part = local_partition(&g, 0, 52).unwrap();
        let bs = part.b.to_vec();
        let x = bs[0];
        for &y in &bs[1..] {
            if g.adjacent(x, y) {
                assert_eq!(pair_law_check(&g, &part, x, y), Err(AnalysisError::Adjacent(x, y)));
                continue;
            }
            let law = pair_law_check(&g, &part, x, y).unwrap();
            assert!(law.holds(), "{law:?}");
            assert_eq!(law.total(), 17);
        }
        assert!(pair_law_check(&g, &part, x, 0).is_err());
    }
}
