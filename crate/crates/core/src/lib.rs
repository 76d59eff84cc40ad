//! Stabilizer quantum error correction toolkit.
//!
//! Pauli algebra in the binary symplectic picture, stabilizer and CSS codes,
//! Clifford tableau simulation with a dense state-vector oracle,
//! fault-tolerant gadgets checked by exhaustive Pauli fault injection, and
//! extended-rectangle threshold analysis.
//!
//! The crate is `no_std` and needs only `alloc`. File IO, the command line
//! and threading live in the `stabkit` companion crate.

#![no_std]

extern crate alloc;

pub mod bits;
pub mod clifford;
pub mod codes;
pub mod dense;
pub mod error;
pub mod exrec;
pub mod ft;
pub mod gf4;
pub mod pauli;

pub use bits::{BitMatrix, BitVec};
pub use codes::StabilizerCode;
pub use error::{Error, Result};
pub use gf4::{gf4_decode, gf4_encode, trace_inner, Gf4, Gf4Vector};
pub use pauli::{PauliKind, PauliOperator};
