//! Permutations on `1..=degree`, stored 0-based, with cycle notation IO.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::GroupError;

/// A permutation of `0..degree`. Products compose left to right:
/// `(a.then(b))(x) = b(a(x))`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Perm(Vec<u16>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u16).collect())
    }

    /// Builds a permutation from its 0-based image vector.
    pub fn from_images(images: &[usize]) -> Result<Perm, GroupError> {
        let degree = images.len();
        let mut hit = vec![false; degree];
        for &p in images {
            if p >= degree || hit[p] {
                return Err(GroupError::MalformedCycleNotation {
                    input: format!("{images:?}"),
                    reason: "image vector is not a bijection".to_string(),
                });
            }
            hit[p] = true;
        }
        Ok(Perm(images.iter().map(|&p| p as u16).collect()))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// Apply `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut img = vec![0u16; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            img[p as usize] = i as u16;
        }
        Perm(img)
    }

    /// Parses one permutation in cycle notation on points `1..=degree`,
    /// e.g. `"(1 2 3)(4 5)"`. `"()"` and the empty string are the identity.
    pub fn parse_cycles(degree: usize, input: &str) -> Result<Perm, GroupError> {
        let err = |reason: String| GroupError::MalformedCycleNotation {
            input: input.to_string(),
            reason,
        };
        if degree == 0 || degree > u16::MAX as usize {
            return Err(err(format!("unsupported degree {degree}")));
        }
        let mut img: Vec<u16> = (0..degree as u16).collect();
        let mut moved = vec![false; degree];

        let mut rest = input.trim();
        while !rest.is_empty() {
            let Some(open) = rest.strip_prefix('(') else {
                return Err(err("expected '('".to_string()));
            };
            let Some(close) = open.find(')') else {
                return Err(err("unbalanced parenthesis".to_string()));
            };
            let body = &open[..close];
            rest = open[close + 1..].trim_start();

            let mut cycle = Vec::new();
            for token in body.split_whitespace() {
                let point: usize = token
                    .parse()
                    .map_err(|_| err(format!("{token:?} is not a point")))?;
                if point == 0 || point > degree {
                    return Err(err(format!("point {point} outside 1..={degree}")));
                }
                if moved[point - 1] {
                    return Err(err(format!("point {point} appears twice")));
                }
                moved[point - 1] = true;
                cycle.push(point - 1);
            }
            for (k, &p) in cycle.iter().enumerate() {
                img[p] = cycle[(k + 1) % cycle.len()] as u16;
            }
        }
        Ok(Perm(img))
    }

    /// Canonical cycle notation: cycles ordered by least moved point, each
    /// cycle starting at its least point, fixed points omitted. The identity
    /// prints as `"()"`.
    pub fn to_cycle_string(&self) -> String {
        let mut out = String::new();
        let mut seen = vec![false; self.degree()];
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            out.push('(');
            let mut p = start;
            loop {
                seen[p] = true;
                if p != start {
                    out.push(' ');
                }
                out.push_str(&(p + 1).to_string());
                p = self.image(p);
                if p == start {
                    break;
                }
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        let p = Perm::parse_cycles(5, "(1 2 3)(4 5)").unwrap();
        assert_eq!(p.to_cycle_string(), "(1 2 3)(4 5)");
        assert_eq!(Perm::parse_cycles(4, "()").unwrap(), Perm::identity(4));
        assert_eq!(Perm::parse_cycles(4, "").unwrap(), Perm::identity(4));
        // non-least starting point normalizes
        let q = Perm::parse_cycles(3, "(3 1 2)").unwrap();
        assert_eq!(q.to_cycle_string(), "(1 2 3)");
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = Perm::parse_cycles(3, "(1 2)").unwrap();
        let b = Perm::parse_cycles(3, "(2 3)").unwrap();
        // apply (1 2) then (2 3): 1 -> 2 -> 3
        assert_eq!(a.then(&b).image(0), 2);
    }

    #[test]
    fn inverse_composes_to_identity() {
        let p = Perm::parse_cycles(6, "(1 4 2)(3 6)").unwrap();
        assert!(p.then(&p.inverse()).is_identity());
        assert!(p.inverse().then(&p).is_identity());
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(Perm::parse_cycles(3, "(1 2").is_err());
        assert!(Perm::parse_cycles(3, "(1 4)").is_err());
        assert!(Perm::parse_cycles(3, "(1 2)(2 3)").is_err());
        assert!(Perm::parse_cycles(3, "1 2 3").is_err());
        assert!(Perm::parse_cycles(3, "(1 x)").is_err());
    }
}
