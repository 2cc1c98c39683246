//! Random `p`-th root covers of the log resolution branched along the
//! boundary: weighted partitions of `p`, multiplicities, node residues and
//! the Chern numbers of the cover.

mod converge;
mod invariants;
mod nodes;
mod solutions;

pub use converge::{converge, converge_one, good_frequency, ConvergenceFailure, ConvergenceOutcome, ConvergenceRow, DEFAULT_RETRIES};
pub use invariants::{ccf_lcf, chern_of_x, root_cover_chern, RootCoverModel, SurfaceInvariants};
pub use nodes::{
    assign_multiplicities, classify_nodes, multiplicity_forms, node_residue, node_templates, LinearForm,
    MultiplicityAssignment, NodeRecord, NodeTemplate, NodeType,
};
pub use solutions::{count_solutions, rng_for, sample_solution, PartitionSolution, SolutionCount, SolutionSpace};
