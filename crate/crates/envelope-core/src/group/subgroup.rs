//! Subgroups as sorted member sets, the universal currency of every chain
//! operation. Membership and intersection use a bitset when the parent is
//! small enough; above [`BITSET_LIMIT`] a binary search takes over.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{FiniteGroup, GroupError};

/// Parents up to this order give their subgroups a membership bitset.
pub const BITSET_LIMIT: usize = 4096;

/// A subgroup of a parent [`FiniteGroup`], stored as a sorted id set.
///
/// Subgroups of different parents are never comparable: equality across
/// parents is simply `false`, and mixing parents in subgroup algebra is a
/// caller bug that panics.
#[derive(Clone)]
pub struct Subgroup<'g> {
    parent: &'g FiniteGroup,
    members: Vec<u32>,
    bits: Option<Vec<u64>>,
}

impl<'g> Subgroup<'g> {
    /// Validates that `members` is a subgroup: in range, contains the
    /// identity, closed under products and inverses.
    pub fn new(
        parent: &'g FiniteGroup,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Self, GroupError> {
        let mut ids: Vec<u32> = Vec::new();
        for m in members {
            if m >= parent.order() {
                return Err(GroupError::InvalidElementId {
                    id: m,
                    order: parent.order(),
                });
            }
            ids.push(m as u32);
        }
        ids.sort_unstable();
        ids.dedup();

        let sub = Self::from_sorted_unchecked(parent, ids);
        sub.validate()?;
        Ok(sub)
    }

    fn validate(&self) -> Result<(), GroupError> {
        let g = self.parent;
        if !self.contains(g.identity()) {
            return Err(GroupError::NotASubgroup {
                reason: String::from("missing the identity"),
            });
        }
        for a in self.members() {
            if !self.contains(g.inv(a)) {
                return Err(GroupError::NotASubgroup {
                    reason: format!("inverse of {} escapes the set", g.label(a)),
                });
            }
            for b in self.members() {
                if !self.contains(g.mul(a, b)) {
                    return Err(GroupError::NotASubgroup {
                        reason: format!("product {} * {} escapes the set", g.label(a), g.label(b)),
                    });
                }
            }
        }
        // Lagrange; cannot fail once closure holds, kept as a tripwire.
        if !g.order().is_multiple_of(self.order()) {
            return Err(GroupError::NotASubgroup {
                reason: format!("order {} does not divide {}", self.order(), g.order()),
            });
        }
        Ok(())
    }

    /// Internal constructor for member sets known to be subgroups.
    pub(crate) fn from_sorted_unchecked(parent: &'g FiniteGroup, members: Vec<u32>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        let bits = (parent.order() <= BITSET_LIMIT).then(|| {
            let mut bits = vec![0u64; parent.order().div_ceil(64)];
            for &m in &members {
                bits[m as usize / 64] |= 1u64 << (m % 64);
            }
            bits
        });
        Subgroup {
            parent,
            members,
            bits,
        }
    }

    pub fn parent(&self) -> &'g FiniteGroup {
        self.parent
    }

    pub(crate) fn assert_parent(&self, g: &FiniteGroup) {
        assert!(
            core::ptr::eq(self.parent, g),
            "subgroup used with a different parent group"
        );
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    #[inline]
    pub fn contains(&self, id: usize) -> bool {
        match &self.bits {
            Some(bits) => bits[id / 64] & (1u64 << (id % 64)) != 0,
            None => self.members.binary_search(&(id as u32)).is_ok(),
        }
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().map(|&m| m as usize)
    }

    pub(crate) fn member_ids(&self) -> &[u32] {
        &self.members
    }

    pub fn member_vec(&self) -> Vec<usize> {
        self.members().collect()
    }

    pub fn intersect(&self, other: &Subgroup<'g>) -> Subgroup<'g> {
        other.assert_parent(self.parent);
        let members = match (&self.bits, &other.bits) {
            (Some(a), Some(b)) => {
                let mut out = Vec::new();
                for (word, merged) in a.iter().zip(b).map(|(x, y)| x & y).enumerate() {
                    let mut m = merged;
                    while m != 0 {
                        let bit = m.trailing_zeros();
                        out.push(word as u32 * 64 + bit);
                        m &= m - 1;
                    }
                }
                out
            }
            _ => self
                .members
                .iter()
                .copied()
                .filter(|&m| other.contains(m as usize))
                .collect(),
        };
        Subgroup::from_sorted_unchecked(self.parent, members)
    }

    pub fn is_subset_of(&self, other: &Subgroup<'g>) -> bool {
        other.assert_parent(self.parent);
        self.members().all(|m| other.contains(m))
    }

    /// `x^-1 H x`.
    pub fn conjugate_by(&self, x: usize) -> Subgroup<'g> {
        let g = self.parent;
        let mut members: Vec<u32> = self.members().map(|m| g.conjugate(m, x) as u32).collect();
        members.sort_unstable();
        Subgroup::from_sorted_unchecked(g, members)
    }

    /// Whether all pairs of members commute.
    pub fn is_abelian_subgroup(&self) -> bool {
        let g = self.parent;
        let m = &self.members;
        m.iter().enumerate().all(|(i, &a)| {
            m[i + 1..]
                .iter()
                .all(|&b| g.mul(a as usize, b as usize) == g.mul(b as usize, a as usize))
        })
    }

    /// First pair of non-commuting members, if any.
    pub fn non_commuting_pair(&self) -> Option<(usize, usize)> {
        let g = self.parent;
        for (i, &a) in self.members.iter().enumerate() {
            for &b in &self.members[i + 1..] {
                if g.mul(a as usize, b as usize) != g.mul(b as usize, a as usize) {
                    return Some((a as usize, b as usize));
                }
            }
        }
        None
    }

    /// Member labels, in id order.
    pub fn labels(&self) -> Vec<String> {
        self.members()
            .map(|m| String::from(self.parent.label(m)))
            .collect()
    }
}

impl PartialEq for Subgroup<'_> {
    fn eq(&self, other: &Self) -> bool {
        core::ptr::eq(self.parent, other.parent) && self.members == other.members
    }
}

impl Eq for Subgroup<'_> {}

impl fmt::Debug for Subgroup<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{{")?;
        for (i, m) in self.members().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.parent.label(m))?;
        }
        write!(f, "}}")
    }
}
