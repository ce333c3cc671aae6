//! Exact counting systems, integer feasibility scans, and proof replays.

mod feasible;
mod replay;
mod system;

pub use feasible::{enumerate_feasible_profiles, Constraint, Relation, SearchBox};
pub use replay::{
    replay_lemma, replay_lemma_with, Citation, Claim, ClaimKind, Claims, LemmaId, ProofTrace, Step, StepKind,
    Verdict, BOX_BOUND,
};
pub use system::{solve_counting_system, AffineSolutionFamily, CountingSystem, ExactRational};
