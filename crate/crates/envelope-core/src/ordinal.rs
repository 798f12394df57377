//! Ordinals below `w^2`, the index type of every chain in this crate.
//!
//! An ordinal is stored as `w * omega_coeff + finite_part`. The coefficient
//! is capped at 3: nothing computed here ever needs an index beyond `w*3`,
//! and requests past the cap are an error rather than a silent truncation.

use alloc::string::String;
use core::fmt;
use core::str::FromStr;

/// Largest allowed `w`-coefficient.
pub const OMEGA_COEFF_CAP: u32 = 3;

/// An ordinal `w * a + b` with `a <= 3`, ordered lexicographically on `(a, b)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SmallOrdinal {
    omega_coeff: u32,
    finite_part: u32,
}

/// Errors from ordinal construction and parsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrdinalError {
    /// `w`-coefficient beyond [`OMEGA_COEFF_CAP`].
    CapExceeded { omega_coeff: u32 },
    /// A literal that does not match the grammar `0 | n | w | w+n | w*a | w*a+n`.
    Malformed(String),
    /// Predecessor requested for a non-successor ordinal.
    NotASuccessor(SmallOrdinal),
}

impl fmt::Display for OrdinalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrdinalError::CapExceeded { omega_coeff } => {
                write!(
                    f,
                    "ordinal coefficient w*{omega_coeff} exceeds the cap w*{OMEGA_COEFF_CAP}"
                )
            }
            OrdinalError::Malformed(s) => write!(f, "malformed ordinal literal {s:?}"),
            OrdinalError::NotASuccessor(o) => write!(f, "{o} is not a successor ordinal"),
        }
    }
}

impl core::error::Error for OrdinalError {}

impl SmallOrdinal {
    pub const ZERO: SmallOrdinal = SmallOrdinal {
        omega_coeff: 0,
        finite_part: 0,
    };
    pub const OMEGA: SmallOrdinal = SmallOrdinal {
        omega_coeff: 1,
        finite_part: 0,
    };

    pub fn new(omega_coeff: u32, finite_part: u32) -> Result<Self, OrdinalError> {
        if omega_coeff > OMEGA_COEFF_CAP {
            return Err(OrdinalError::CapExceeded { omega_coeff });
        }
        Ok(SmallOrdinal {
            omega_coeff,
            finite_part,
        })
    }

    /// The finite ordinal `n`.
    pub fn finite(n: u32) -> Self {
        SmallOrdinal {
            omega_coeff: 0,
            finite_part: n,
        }
    }

    /// `w + n`.
    pub fn omega_plus(n: u32) -> Self {
        SmallOrdinal {
            omega_coeff: 1,
            finite_part: n,
        }
    }

    pub fn omega_coeff(&self) -> u32 {
        self.omega_coeff
    }

    pub fn finite_part(&self) -> u32 {
        self.finite_part
    }

    pub fn is_zero(&self) -> bool {
        self.omega_coeff == 0 && self.finite_part == 0
    }

    /// Limit ordinals are the nonzero multiples of `w`.
    pub fn is_limit(&self) -> bool {
        self.omega_coeff > 0 && self.finite_part == 0
    }

    /// Successor ordinals are exactly those with a nonzero finite part.
    pub fn is_successor(&self) -> bool {
        self.finite_part > 0
    }

    pub fn is_finite(&self) -> bool {
        self.omega_coeff == 0
    }

    pub fn successor(&self) -> Self {
        SmallOrdinal {
            omega_coeff: self.omega_coeff,
            finite_part: self.finite_part + 1,
        }
    }

    /// Unique predecessor of a successor ordinal.
    pub fn predecessor(&self) -> Result<Self, OrdinalError> {
        if !self.is_successor() {
            return Err(OrdinalError::NotASuccessor(*self));
        }
        Ok(SmallOrdinal {
            omega_coeff: self.omega_coeff,
            finite_part: self.finite_part - 1,
        })
    }

    /// Largest limit ordinal `<= self`, or zero when `self` is finite.
    pub fn limit_base(&self) -> Self {
        SmallOrdinal {
            omega_coeff: self.omega_coeff,
            finite_part: 0,
        }
    }
}

impl fmt::Display for SmallOrdinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.omega_coeff, self.finite_part) {
            (0, n) => write!(f, "{n}"),
            (1, 0) => write!(f, "w"),
            (1, n) => write!(f, "w+{n}"),
            (a, 0) => write!(f, "w*{a}"),
            (a, n) => write!(f, "w*{a}+{n}"),
        }
    }
}

impl fmt::Debug for SmallOrdinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for SmallOrdinal {
    type Err = OrdinalError;

    /// Parses the literal grammar `"0" | "3" | "w" | "w+1" | "w*2+5"`.
    fn from_str(s: &str) -> Result<Self, OrdinalError> {
        let bad = || OrdinalError::Malformed(String::from(s));
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('w') {
            let (coeff, rest) = match rest.strip_prefix('*') {
                Some(r) => {
                    let (digits, tail) = match r.find('+') {
                        Some(i) => (&r[..i], &r[i..]),
                        None => (r, ""),
                    };
                    (digits.parse::<u32>().map_err(|_| bad())?, tail)
                }
                None => (1, rest),
            };
            let finite = match rest.strip_prefix('+') {
                Some(digits) => digits.parse::<u32>().map_err(|_| bad())?,
                None if rest.is_empty() => 0,
                None => return Err(bad()),
            };
            SmallOrdinal::new(coeff, finite)
        } else {
            let n = s.parse::<u32>().map_err(|_| bad())?;
            Ok(SmallOrdinal::finite(n))
        }
    }
}
