//! Graph covering numbers: exact solvers for the global, union, local and
//! folded variants, separating families, parameter bindings and
//! cover-to-cover transforms.

pub mod classes;
pub mod cover;
pub mod flow;
pub mod graph;
pub mod iso;
pub mod params;
pub mod rational;
pub mod solver;

pub use graph::{disjoint_union, DiGraph, Graph};
pub use rational::Rational;
