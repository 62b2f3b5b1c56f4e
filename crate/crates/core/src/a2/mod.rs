//! Ã₂-groups from triellas: normal forms, the shape δ, and the 2-graphs Λ_T and Σ_T.

pub mod lambda;
pub mod oracle;
pub mod plane;
pub mod sigma;
pub mod word;

pub use lambda::{elements_of_shape, lambda_t, LambdaT, MorphismCheck};
pub use oracle::{confluence_oracle, ConfluenceReport, Violation};
pub use plane::{build_plane, ProjectivePlane, Triella};
pub use sigma::{check_window, SigmaCheck, SigmaT};
pub use word::{A2Group, Letter, Rewrite, Rule, Side, SignedWord, UnitMaps};
