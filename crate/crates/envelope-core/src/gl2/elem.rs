//! Elements of the 2x2 monomial group over [`SymScalar`] entries.
//!
//! An element is `diag(a, b) * S^swap` where `S` is the antidiagonal swap
//! matrix with unit entries: `swap = false` is the diagonal matrix with
//! entries `a, b`; `swap = true` is the antidiagonal matrix with `a` top
//! right and `b` bottom left. The product law is matrix multiplication:
//! `S * diag(c, d) = diag(d, c) * S`, so
//!
//! `diag(a,b) S^s * diag(c,d) S^t = diag(a*c', b*d') S^(s xor t)`
//!
//! with `(c', d') = (d, c)` when `s` is set and `(c, d)` otherwise.

use core::fmt;

use super::scalar::{DyadicRoot, SymScalar};
use super::Gl2Error;

/// A 2x2 monomial matrix with [`SymScalar`] entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialElem {
    swap: bool,
    a: SymScalar,
    b: SymScalar,
}

impl MonomialElem {
    pub fn identity(arity: usize) -> Self {
        MonomialElem {
            swap: false,
            a: SymScalar::one(arity),
            b: SymScalar::one(arity),
        }
    }

    /// The swap matrix `S` (antidiagonal with unit entries).
    pub fn swap_matrix(arity: usize) -> Self {
        MonomialElem {
            swap: true,
            a: SymScalar::one(arity),
            b: SymScalar::one(arity),
        }
    }

    pub fn diagonal(a: SymScalar, b: SymScalar) -> Result<Self, Gl2Error> {
        check_arity(&a, &b)?;
        Ok(MonomialElem { swap: false, a, b })
    }

    pub fn antidiagonal(a: SymScalar, b: SymScalar) -> Result<Self, Gl2Error> {
        check_arity(&a, &b)?;
        Ok(MonomialElem { swap: true, a, b })
    }

    /// Diagonal matrix with dyadic-root entries, a generator-shape of the
    /// torsion subgroup.
    pub fn torsion_diag(arity: usize, z1: DyadicRoot, z2: DyadicRoot) -> Self {
        MonomialElem {
            swap: false,
            a: SymScalar::root_only(arity, z1),
            b: SymScalar::root_only(arity, z2),
        }
    }

    pub fn is_swap(&self) -> bool {
        self.swap
    }

    pub fn is_diagonal(&self) -> bool {
        !self.swap
    }

    pub fn entry_a(&self) -> &SymScalar {
        &self.a
    }

    pub fn entry_b(&self) -> &SymScalar {
        &self.b
    }

    pub fn arity(&self) -> usize {
        self.a.arity()
    }

    pub fn is_identity(&self) -> bool {
        !self.swap && self.a.is_one() && self.b.is_one()
    }

    /// The entry ratio `a / b`, the quantity every chain membership
    /// condition here reduces to.
    pub fn ratio(&self) -> SymScalar {
        self.a.div(&self.b).expect("entries share arity")
    }

    pub fn mul(&self, other: &MonomialElem) -> Result<MonomialElem, Gl2Error> {
        let (c, d) = if self.swap {
            (&other.b, &other.a)
        } else {
            (&other.a, &other.b)
        };
        Ok(MonomialElem {
            swap: self.swap ^ other.swap,
            a: self.a.mul(c)?,
            b: self.b.mul(d)?,
        })
    }

    pub fn inv(&self) -> MonomialElem {
        if self.swap {
            // (diag(a,b) S)^-1 = S diag(a^-1, b^-1) = diag(b^-1, a^-1) S
            MonomialElem {
                swap: true,
                a: self.b.inv(),
                b: self.a.inv(),
            }
        } else {
            MonomialElem {
                swap: false,
                a: self.a.inv(),
                b: self.b.inv(),
            }
        }
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    pub fn commutator(&self, other: &MonomialElem) -> Result<MonomialElem, Gl2Error> {
        self.inv().mul(&other.inv())?.mul(self)?.mul(other)
    }

    /// `y^-1 x y`.
    pub fn conjugate_by(&self, y: &MonomialElem) -> Result<MonomialElem, Gl2Error> {
        y.inv().mul(self)?.mul(y)
    }
}

fn check_arity(a: &SymScalar, b: &SymScalar) -> Result<(), Gl2Error> {
    if a.arity() != b.arity() {
        return Err(Gl2Error::ArityMismatch {
            expected: a.arity(),
            got: b.arity(),
        });
    }
    Ok(())
}

impl fmt::Display for MonomialElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.swap { "adiag" } else { "diag" };
        write!(f, "{kind}({}, {})", self.a, self.b)
    }
}

impl fmt::Debug for MonomialElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
