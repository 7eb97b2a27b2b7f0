//! Treewidth dynamic programming for qualitative constraint calculi.
//!
//! Instances are conjunctions of DNF constraints over the basic relations of
//! a calculus (point algebra, Allen's interval algebra, block algebras, the
//! cardinal direction calculus, RCC5, RCC8, phylogeny trees). The solver
//! computes, for each node of a nice tree decomposition, the set of complete
//! satisfiable networks on the bag that extend to the subtree below.

pub mod calculi;
pub mod calculus;
pub mod error;
pub mod generate;
pub mod graph;
pub mod instance;
pub mod model;
pub mod network;
pub mod oracle;
pub mod reductions;
pub mod solver;
pub mod td;

pub use calculus::{implies, enumerate_certificates, BasicRelation, Calculus, CalculusKind};
pub use error::{Error, Result};
pub use graph::Graph;
pub use instance::{parse_instance, serialize_instance, Atom, Constraint, Instance, Literal};
pub use model::Model;
pub use network::{AtomicNetwork, RelId, Tuple, Var};
pub use solver::{solve, IntroduceStrategy, Solution, SolveOptions, Stats};
pub use td::{decompose, make_nice, make_nice_weighted, NiceDecomposition, TdMode, TreeDecomposition};
