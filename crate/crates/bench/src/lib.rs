//! Shared fixtures for the pipeline benchmarks.

use gq_core::srg::{local_partition, point_graph, LocalPartition};
use gq_core::{build_quadric_quadrangle, GQStructure, PointGraph};

pub struct Fixture {
    pub structure: GQStructure,
    pub graph: PointGraph,
    pub partition: LocalPartition,
}

/// Q(5,4), its point graph, and the partition at the canonical non-edge.
pub fn fixture() -> Fixture {
    let structure = build_quadric_quadrangle();
    let graph = point_graph(&structure);
    let (p, q) = graph.canonical_non_edge().expect("Q(5,4) has non-edges");
    let partition = local_partition(&graph, p, q).expect("canonical non-edge partitions");
    Fixture { structure, graph, partition }
}
