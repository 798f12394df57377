//! Exact scalars for the monomial group: dyadic roots of unity and
//! monomials in free transcendental generators.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::Gl2Error;

/// A root of unity of 2-power order, stored as the reduced fraction
/// `numerator / 2^log2_den` of a full turn. The invariant is
/// `numerator < 2^log2_den` with `numerator` odd, or `(0, 0)` for 1.
/// Multiplication is addition of fractions mod 1, so the element order
/// is exactly `2^log2_den`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyadicRoot {
    numerator: u64,
    log2_den: u32,
}

impl DyadicRoot {
    pub const ONE: DyadicRoot = DyadicRoot {
        numerator: 0,
        log2_den: 0,
    };

    /// `-1`, the root of order 2.
    pub const MINUS_ONE: DyadicRoot = DyadicRoot {
        numerator: 1,
        log2_den: 1,
    };

    /// The reduced root `numerator / 2^log2_den` of a full turn.
    pub fn new(numerator: u64, log2_den: u32) -> Self {
        assert!(log2_den <= 62, "dyadic depth out of range");
        let mut r = DyadicRoot {
            numerator: numerator % (1u64 << log2_den),
            log2_den,
        };
        r.reduce();
        r
    }

    /// A primitive root of order `2^depth`.
    pub fn primitive(depth: u32) -> Self {
        DyadicRoot::new(1, depth)
    }

    fn reduce(&mut self) {
        while self.log2_den > 0 && self.numerator.is_multiple_of(2) {
            self.numerator /= 2;
            self.log2_den -= 1;
        }
        if self.log2_den == 0 {
            self.numerator = 0;
        }
    }

    pub fn is_one(&self) -> bool {
        self.log2_den == 0
    }

    /// Multiplicative order, a power of two.
    pub fn order(&self) -> u64 {
        1u64 << self.log2_den
    }

    pub fn log2_order(&self) -> u32 {
        self.log2_den
    }

    pub fn mul(&self, other: &DyadicRoot) -> DyadicRoot {
        let depth = self.log2_den.max(other.log2_den);
        let a = self.numerator << (depth - self.log2_den);
        let b = other.numerator << (depth - other.log2_den);
        DyadicRoot::new(a.wrapping_add(b), depth)
    }

    pub fn inv(&self) -> DyadicRoot {
        if self.is_one() {
            *self
        } else {
            DyadicRoot::new((1u64 << self.log2_den) - self.numerator, self.log2_den)
        }
    }

    pub fn pow(&self, k: i64) -> DyadicRoot {
        if self.is_one() {
            return *self;
        }
        let order = 1i128 << self.log2_den;
        let e = (k as i128).rem_euclid(order) as u64;
        // numerator * e mod 2^depth; 128-bit keeps the product exact
        let num = ((self.numerator as u128 * e as u128) % (1u128 << self.log2_den)) as u64;
        DyadicRoot::new(num, self.log2_den)
    }
}

impl fmt::Debug for DyadicRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for DyadicRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            write!(f, "1")
        } else if *self == DyadicRoot::MINUS_ONE {
            write!(f, "-1")
        } else {
            write!(f, "z({}/{})", self.numerator, 1u64 << self.log2_den)
        }
    }
}

/// A monomial `t_1^(e_1) ... t_m^(e_m) * z` over `m` free transcendental
/// generators with a dyadic root `z`. These form the scalar entries of the
/// monomial matrices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymScalar {
    exponents: Vec<i64>,
    root: DyadicRoot,
}

impl SymScalar {
    pub fn one(arity: usize) -> Self {
        SymScalar {
            exponents: vec![0; arity],
            root: DyadicRoot::ONE,
        }
    }

    pub fn new(exponents: Vec<i64>, root: DyadicRoot) -> Self {
        SymScalar { exponents, root }
    }

    pub fn root_only(arity: usize, root: DyadicRoot) -> Self {
        SymScalar {
            exponents: vec![0; arity],
            root,
        }
    }

    /// The generator `t_index`.
    pub fn generator(arity: usize, index: usize) -> Self {
        let mut exponents = vec![0; arity];
        exponents[index] = 1;
        SymScalar {
            exponents,
            root: DyadicRoot::ONE,
        }
    }

    pub fn arity(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn root(&self) -> DyadicRoot {
        self.root
    }

    pub fn is_one(&self) -> bool {
        self.is_torsion() && self.root.is_one()
    }

    /// Torsion means the transcendental part is trivial: the scalar is a
    /// root of unity.
    pub fn is_torsion(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    fn check_arity(&self, other: &SymScalar) -> Result<(), Gl2Error> {
        if self.arity() != other.arity() {
            return Err(Gl2Error::ArityMismatch {
                expected: self.arity(),
                got: other.arity(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &SymScalar) -> Result<SymScalar, Gl2Error> {
        self.check_arity(other)?;
        Ok(SymScalar {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
            root: self.root.mul(&other.root),
        })
    }

    pub fn inv(&self) -> SymScalar {
        SymScalar {
            exponents: self.exponents.iter().map(|&e| -e).collect(),
            root: self.root.inv(),
        }
    }

    /// `self / other`.
    pub fn div(&self, other: &SymScalar) -> Result<SymScalar, Gl2Error> {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i64) -> SymScalar {
        SymScalar {
            exponents: self.exponents.iter().map(|&e| e * k).collect(),
            root: self.root.pow(k),
        }
    }
}

impl fmt::Debug for SymScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SymScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (i, &e) in self.exponents.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("t{}", i + 1)),
                _ => parts.push(format!("t{}^{}", i + 1, e)),
            }
        }
        if !self.root.is_one() || parts.is_empty() {
            parts.push(format!("{}", self.root));
        }
        write!(f, "{}", parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn roots_reduce_and_multiply_mod_one() {
        let half = DyadicRoot::new(1, 1);
        assert_eq!(half.mul(&half), DyadicRoot::ONE);
        // 2/4 reduces to 1/2
        assert_eq!(DyadicRoot::new(2, 2), half);
        let quarter = DyadicRoot::new(1, 2);
        assert_eq!(quarter.mul(&quarter), half);
        assert_eq!(quarter.mul(&quarter.inv()), DyadicRoot::ONE);
        // 3/4 + 1/2 = 5/4 = 1/4
        assert_eq!(DyadicRoot::new(3, 2).mul(&half), quarter);
    }

    #[test]
    fn root_orders_are_powers_of_two() {
        for depth in 0..8 {
            let r = DyadicRoot::primitive(depth);
            assert_eq!(r.order(), 1 << depth);
            assert!(r.pow(1 << depth).is_one());
            if depth > 0 {
                assert!(!r.pow(1 << (depth - 1)).is_one());
            }
        }
    }

    #[test]
    fn pow_handles_negative_exponents() {
        let r = DyadicRoot::primitive(3);
        assert_eq!(r.pow(-1), r.inv());
        assert_eq!(r.pow(-3), r.inv().pow(3));
        assert_eq!(r.pow(0), DyadicRoot::ONE);
    }

    #[test]
    fn scalars_form_an_abelian_group() {
        let t1 = SymScalar::generator(3, 0);
        let t2 = SymScalar::generator(3, 1);
        let z = SymScalar::root_only(3, DyadicRoot::primitive(2));
        let a = t1.mul(&z).unwrap();
        let b = t2.mul(&t1.pow(-2)).unwrap();
        assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        assert!(a.mul(&a.inv()).unwrap().is_one());
        assert!(!a.is_torsion());
        assert!(z.is_torsion());
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let a = SymScalar::one(2);
        let b = SymScalar::one(3);
        assert!(matches!(a.mul(&b), Err(Gl2Error::ArityMismatch { .. })));
    }

    #[test]
    fn display_is_compact() {
        let t1 = SymScalar::generator(2, 0);
        let s = t1
            .pow(2)
            .mul(&SymScalar::root_only(2, DyadicRoot::MINUS_ONE))
            .unwrap();
        assert_eq!(s.to_string(), "t1^2*-1");
        assert_eq!(SymScalar::one(2).to_string(), "1");
    }
}
