//! Graph parameters and structural predicates backing class bounds,
//! transform guarantees and solver pruning.

pub mod arboricity;
pub mod chromatic;
pub mod mad;
pub mod orientation;
pub mod planarity;
pub mod predicates;
pub mod treewidth;
