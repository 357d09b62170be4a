//! Central extensions of commutative A-loops by cyclic groups.

mod solver;
mod vector;

pub use solver::{
    classify_extensions, coboundary_space, cocycle_space, cocycle_system, complement_and_orbits, ClassificationReport,
    CocycleFlags, OrbitData, ORBIT_LIMIT,
};
pub use vector::CocycleVector;
