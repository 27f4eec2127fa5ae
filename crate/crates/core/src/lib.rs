//! Finite wallspaces, their dual CAT(0) cube complexes, and diagnostics for
//! the separation and finiteness properties that govern those complexes.
//!
//! The pipeline is: build a [`Wallspace`] (by hand, from a generator, or
//! from JSON), [`validate`](Wallspace::validate) it, construct the dual
//! complex with [`dual::build_dual`], then query or verify it.

pub mod action;
pub mod bitset;
pub mod caps;
pub mod clique;
pub mod dual;
pub mod error;
pub mod generators;
pub mod geometric;
pub mod groups;
pub mod hemi;
pub mod io;
pub mod metric;
pub mod separation;
pub mod wallspace;

pub use bitset::BitSet;
pub use caps::Caps;
pub use error::{Error, Result};
pub use metric::Metric;
pub use wallspace::{Side, Wall, WallPairClass, Wallspace};
