//! Fundamental groupoid analysis: vertex-group presentations, abelian
//! invariants, essential cocycles, collapse proofs and embeddability.

pub mod collapse;
pub mod pi1;
pub mod report;
pub mod rewrite;

pub use collapse::{collapse_search, collapse_search_with, CollapseProof, SearchSummary};
pub use pi1::{
    abelianized_invariants, fundamental_group_presentation, universal_abelian_cocycle, AbelianInvariants, GroupPresentation,
    TreeContraction,
};
pub use report::{
    embeddability_report, essential_cocycle_search, grading_function, simply_connected_test, simply_connected_window,
    CocycleHint, EmbeddabilityReport, EssentialCocycle, Grading, GradingFailure, SimplyConnected, Verdict, Witness,
};
pub use rewrite::{Completion, Limits, Step};
