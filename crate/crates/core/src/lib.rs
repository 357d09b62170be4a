//! Construction, analysis and enumeration of finite commutative automorphic
//! loops given by Cayley tables.

pub mod catalog;
pub mod cocycle;
pub mod construct;
pub mod error;
pub mod iso;
pub mod linalg;
pub mod perm;
pub mod structure;
pub mod table;
pub mod verify;

pub use error::{Error, Result};
pub use perm::{Permutation, PermutationGroup};
pub use table::{Element, LoopTable, Side};
