//! Concrete calculi: deciders, enumerators and model realizers.

pub mod cardinal;
pub mod interval;
pub(crate) mod ordinal;
pub mod partition;
pub mod phylo;
pub mod point;
pub mod region;

pub use partition::{enumerate_ordered_partitions, OrderedPartition};
pub use phylo::{phylo_decide, PhyloTreeModel};
pub use point::pa_decide;
pub use region::{rcc5_drpo_model, CompositionTable, Rcc5SetModel, Region};
