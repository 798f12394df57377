//! Core algorithms for iterated centralizers, upper central series, and
//! ordinal-indexed envelope chains on concrete groups.
//!
//! The crate is split along the two kinds of ambient group it can work in:
//!
//! * [`group`], [`chains`], [`harness`], [`catalog`] — finite groups given by
//!   a multiplication table or a permutation representation, together with
//!   the chain machinery and an executable battery of theorem checks.
//! * [`gl2`] — an exact symbolic monomial-matrix group over free
//!   transcendentals and dyadic roots of unity, where the chains genuinely
//!   pass through the limit ordinals `w` and `w+1`.
//!
//! Everything here is `no_std` (with `alloc`); IO, file formats and the
//! command line live in the companion `envelope-cli` crate.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod catalog;
pub mod chains;
pub mod gl2;
pub mod group;
pub mod harness;
pub mod ordinal;
pub mod rng;

pub use chains::{
    envelope_chain, envelope_step, iterated_centralizer_chain, stabilization_index,
    upper_central_series, ChainDirection, ChainError, ChainRecord,
};
pub use group::{FiniteGroup, GroupError, Subgroup};
pub use ordinal::{OrdinalError, SmallOrdinal};
