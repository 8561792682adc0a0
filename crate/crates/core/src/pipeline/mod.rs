//! The lemma pipeline: the unbalanced bipartite lemma, the large-subset
//! split, the ball/path structure machinery with its sparsification and
//! branchable-vertex analysis, the max-degree lemma, and the top-level
//! dispatcher. Every stage re-verifies its own postconditions and every
//! certificate is checked induced against the graph it was found in.

mod largesub;
mod main_theorem;
mod maxdegree;
mod report;
mod structure;
mod unbalanced;

pub use largesub::{lemma_largesub, LargesubOutcome};
pub use main_theorem::theorem_main;
pub use maxdegree::lemma_maxdegree;
pub use report::PipelineReport;
pub use structure::{
    assemble_from_structure, assemble_path_structure, ball_decomposition, branchable_set,
    build_structure, sparsify_structure, BallDecomposition, BranchWitness, PathStructure,
    StructureGraph,
};
pub use unbalanced::lemma_unbalanced;
