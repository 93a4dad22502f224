//! Exact combinatorics for Kazhdan–Lusztig polynomials of type A and the
//! Zelevinsky multisegment posets they parametrize.
//!
//! The crate is `no_std` and only needs `alloc`. Everything that touches
//! files, the environment or a terminal lives in the `klms` crate.
//!
//! Module map:
//!
//! * [`poly`]: integer polynomials in `q^{1/2}`.
//! * [`perm`]: the symmetric group, Bruhat order and parabolic cosets.
//! * [`kl`]: KL polynomials, `mu`, parabolic variants and decomposition data.
//! * [`multiseg`]: segments, multisegments and the posets `S(a)`.
//! * [`param`]: the maps between double cosets and multisegment posets.
//! * [`reduce`]: reduction of a multisegment to parabolic type.
//! * [`verify`]: exhaustive property suites.

#![no_std]

extern crate alloc;

mod bitset;
mod error;

pub mod kl;
pub mod multiseg;
pub mod param;
pub mod perm;
pub mod poly;
pub mod reduce;
pub mod verify;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use kl::{KLEngine, KlPool, SummandTriple};
pub use multiseg::{Multisegment, MsPoset, Segment};
pub use param::ParamContext;
pub use reduce::{Realization, ReductionWitness};
pub use perm::{GenSet, Permutation};
pub use poly::HalfExpPoly;

