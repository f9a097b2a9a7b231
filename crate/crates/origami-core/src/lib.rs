//! Minimal [1,1]-origamis: constructions, spin parity, monodromy groups,
//! `−I` symmetry, SL(2,Z) orbits and homology actions.

pub mod error;
pub mod families;
pub mod kz;
pub mod linalg;
pub mod monodromy;
pub mod origami;
pub mod perm;
pub mod poly;
pub mod search;
pub mod sl2z;
pub mod spin;
pub mod symmetry;

pub use error::{Error, Result};
pub use origami::{ComponentTag, Origami, StratumSignature};
pub use perm::{CycleType, Permutation};
