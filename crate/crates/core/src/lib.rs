//! Construction of the generalized quadrangle Q(5,4) over GF(4), exhaustive
//! verification of its point graph and local designs, and exact replays of
//! the counting argument that rules out any other GQ(4,16).
//!
//! Module map:
//!
//! - [`field`]: GF(4) table arithmetic.
//! - [`geometry`]: PG(5,4), the elliptic form, Q(5,4), GQ axioms, file format.
//! - [`srg`]: point graph, strong regularity, local partitions and profiles.
//! - [`design`]: the 3-design on a non-edge's common neighbours.
//! - [`counting`]: exact binomial counting systems, feasibility scans, replays.
//! - [`report`]: verification suites and the JSON/text report.

pub mod bitset;
pub mod counting;
pub mod design;
pub mod error;
pub mod field;
pub mod geometry;
pub mod report;
pub mod srg;

pub use bitset::BitSet;
pub use error::{AnalysisError, CountingError, DesignError, FieldError, GeometryError, ParseError, ReportError};
pub use field::{ff_add, ff_inv, ff_mul, ff_trace, FieldElement};
pub use geometry::{
    build_quadric_quadrangle, check_gq_axioms, line_through, parse_geometry, write_geometry,
    GQParams, GQStructure, ProjectivePoint, QuadraticForm,
};
pub use counting::{
    enumerate_feasible_profiles, replay_lemma, solve_counting_system, AffineSolutionFamily, CountingSystem,
    ExactRational, LemmaId, ProofTrace,
};
pub use design::Design;
pub use report::{run_verification, VerificationReport, VerifyOptions};
pub use srg::{PointGraph, SrgParams};
