//! Exact big Witt vectors over pluggable commutative rings, the universal
//! polynomials behind them, and the big de Rham-Witt complex of the integers.

pub mod arith;
pub mod cli;
pub mod basis;
pub mod drw;
pub mod error;
pub mod laws;
pub mod ptypical;
pub mod ring;
pub mod series_coords;
pub mod truncation;
pub mod universal;
pub mod witt;

pub use basis::{teich_basis, BasisWittInt, FormalOneForm};
pub use error::{Result, WittError};
pub use ring::{Ring, RingElement, RingSpec, Value};
pub use truncation::TruncationSet;
pub use witt::{GhostVector, Strategy, WittVector};
