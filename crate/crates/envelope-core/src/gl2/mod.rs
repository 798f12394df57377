//! Exact symbolic case study: a 2x2 monomial-matrix group over free
//! transcendentals and dyadic roots of unity, where the envelope chain of a
//! hypercentral subgroup genuinely passes through the limit ordinals `w`
//! and `w+1` before it stabilizes.
//!
//! The ambient group is generated by diagonal matrices with entries in
//! `t_1, ..., t_m` (free multiplicative generators) times dyadic roots of
//! unity, together with the antidiagonal swap. All arithmetic is exact
//! ([`SymScalar`], [`MonomialElem`]); all subgroup predicates are decidable
//! shapes ([`SubgroupShape`]); the chains are derived by the
//! successor/limit recursions over those shapes ([`derived_envelope`],
//! [`derived_iterated_centralizer`]); and [`audit_claimed_chain`] confronts
//! the derived chain with the claimed one on seeded samples.

mod audit;
mod derive;
mod elem;
mod scalar;
mod shape;

pub use audit::{
    audit_claimed_chain, chain_table, cross_validate_generator_reduction, AuditOptions,
    AuditReport, ChainTableRow,
};
pub use derive::{
    derived_envelope, derived_iterated_centralizer, envelope_shape_chain, first_entry_index,
    index_cap, iterated_centralizer_shape_chain, upper_central_shape_chain, NamedSubgroupPredicate,
    PredName, ShapeChain,
};
pub use elem::MonomialElem;
pub use scalar::{DyadicRoot, SymScalar};
pub use shape::{
    centralizer_step, commutator_condition_holds, EntriesCond, MemberRule, RatioCond, SubgroupShape,
};

use core::fmt;

use crate::ordinal::SmallOrdinal;

/// Number of free transcendental generators used by default.
pub const DEFAULT_ARITY: usize = 3;

/// Errors from the symbolic case study.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gl2Error {
    /// Two scalars over different generator arities were combined.
    ArityMismatch { expected: usize, got: usize },
    /// A chain index beyond the supported range `<= w+2`.
    IndexOutOfRange(SmallOrdinal),
    /// A limit branch was reached without a stall or recognized
    /// progression; no value is fabricated.
    LimitNotRecognized(alloc::string::String),
}

impl fmt::Display for Gl2Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gl2Error::ArityMismatch { expected, got } => {
                write!(f, "scalar arity mismatch: expected {expected}, got {got}")
            }
            Gl2Error::IndexOutOfRange(a) => write!(f, "chain index {a} is out of range"),
            Gl2Error::LimitNotRecognized(why) => write!(f, "limit not recognized: {why}"),
        }
    }
}

impl core::error::Error for Gl2Error {}
