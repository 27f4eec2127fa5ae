//! The cube complex dual to a finite wallspace.
//!
//! Vertices are orientations (one side per wall, bit set means the right
//! side) whose chosen halfspaces pairwise intersect. Edges join orientations
//! differing on one wall, and a cube is present whenever its boundary is.

pub mod build;
pub mod checks;
pub mod complex;
pub mod convex;
pub mod iso;
pub mod loops;
pub mod npc;
pub mod order;

pub use build::{
    build_dual, canonical_cube, cube_from_family, enumerate_all_orientations, path_to_canonical, BuildOptions,
    CubeMethod, PathToCanonical,
};
pub use checks::{converse_witness, hyperplane_profile, hyperplanes_osculate, maximal_bijection};
pub use complex::{Cube, CubeComplex, Edge, StoredCube};
pub use convex::{is_convex, ConvexityReport};
pub use iso::{check_labelled_isomorphism, WallMap};
pub use loops::{contract_loop, sample_loop, LoopTrace, Move};
pub use npc::{verify_npc, NpcReport, NpcViolation};
