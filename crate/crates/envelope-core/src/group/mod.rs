//! Finite groups and the primitive subgroup algebra.
//!
//! A [`FiniteGroup`] is an element-indexed multiplication structure: element
//! ids are `0..order`, and the product of two ids is another id. Groups of
//! order at most [`TABLE_LIMIT`] carry a dense multiplication table; larger
//! groups built from permutations compose their permutations on demand, so a
//! constructed group is immutable and freely shareable across threads.
//!
//! All chain machinery ([`crate::chains`]) is built from the operations here:
//! generated subgroups, centralizers, normalizers, commutator subgroups and
//! derived series, each available relative to the whole group or to an
//! ambient [`Subgroup`].

mod lattice;
mod perm;
mod subgroup;

pub use lattice::{centralizer_lattice, CentralizerLattice, CentralizerLatticeEntry};
pub use perm::Perm;
pub use subgroup::Subgroup;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::rng::DetRng;

/// Orders up to this bound get a dense multiplication table.
pub const TABLE_LIMIT: usize = 512;

/// Associativity is verified exhaustively up to [`TABLE_LIMIT`]; above it,
/// `10 * order` random triples are checked instead.
const RANDOM_TRIPLES_PER_ELEMENT: usize = 10;

/// Default cap on enumerated group order.
pub const DEFAULT_ORDER_CAP: usize = 20_000;

/// Errors raised while building or using a [`FiniteGroup`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupError {
    /// `(a*b)*c != a*(b*c)` for the named element ids.
    NotAssociative { a: usize, b: usize, c: usize },
    /// No two-sided neutral element exists in the table.
    NoIdentity,
    /// The named element has no two-sided inverse.
    MissingInverse { element: usize },
    /// The table is not square or contains an out-of-range id.
    MalformedTable { reason: String },
    /// Enumeration exceeded the configured order cap.
    OrderCapExceeded { cap: usize },
    /// A generator string does not parse as cycle notation.
    MalformedCycleNotation { input: String, reason: String },
    /// An element id outside `0..order`.
    InvalidElementId { id: usize, order: usize },
    /// A member set failed subgroup validation.
    NotASubgroup { reason: String },
    /// Two elements were given the same label.
    DuplicateLabel { label: String },
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::NotAssociative { a, b, c } => {
                write!(
                    f,
                    "multiplication is not associative on the triple ({a}, {b}, {c})"
                )
            }
            GroupError::NoIdentity => write!(f, "no two-sided identity element"),
            GroupError::MissingInverse { element } => {
                write!(f, "element {element} has no two-sided inverse")
            }
            GroupError::MalformedTable { reason } => write!(f, "malformed table: {reason}"),
            GroupError::OrderCapExceeded { cap } => {
                write!(f, "group enumeration exceeded the order cap {cap}")
            }
            GroupError::MalformedCycleNotation { input, reason } => {
                write!(f, "malformed cycle notation {input:?}: {reason}")
            }
            GroupError::InvalidElementId { id, order } => {
                write!(
                    f,
                    "element id {id} out of range for a group of order {order}"
                )
            }
            GroupError::NotASubgroup { reason } => write!(f, "not a subgroup: {reason}"),
            GroupError::DuplicateLabel { label } => write!(f, "duplicate element label {label:?}"),
        }
    }
}

impl core::error::Error for GroupError {}

enum Backend {
    /// Row-major `order x order` table of element ids.
    Table(Vec<u32>),
    /// Permutations composed on demand; products are located through the
    /// sorted index. No caching: the group stays immutable and `Sync`.
    Perms {
        perms: Vec<Perm>,
        index: BTreeMap<Perm, u32>,
    },
}

/// A finite group on element ids `0..order`.
pub struct FiniteGroup {
    order: usize,
    backend: Backend,
    identity: usize,
    inv: Vec<u32>,
    labels: Vec<String>,
    label_index: BTreeMap<String, u32>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("identity", &self.identity)
            .finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// Builds a group from a row-major Cayley table, locating the identity
    /// and inverses and verifying the group axioms.
    pub fn from_cayley_table(table: &[Vec<usize>]) -> Result<Self, GroupError> {
        Self::from_cayley_table_labeled(table, None)
    }

    pub fn from_cayley_table_labeled(
        table: &[Vec<usize>],
        labels: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::MalformedTable {
                reason: "empty table".to_string(),
            });
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::MalformedTable {
                    reason: format!("row {i} has length {} in a table of size {n}", row.len()),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::MalformedTable {
                        reason: format!("entry ({i}, {j}) = {v} is not an element id below {n}"),
                    });
                }
                flat.push(v as u32);
            }
        }
        Self::from_flat_table(n, flat, labels)
    }

    pub(crate) fn from_flat_table(
        n: usize,
        flat: Vec<u32>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        debug_assert_eq!(flat.len(), n * n);
        let mul = |a: usize, b: usize| flat[a * n + b] as usize;

        let identity = (0..n)
            .find(|&e| (0..n).all(|j| mul(e, j) == j && mul(j, e) == j))
            .ok_or(GroupError::NoIdentity)?;

        let mut inv = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| mul(a, b) == identity && mul(b, a) == identity) {
                Some(b) => inv.push(b as u32),
                None => return Err(GroupError::MissingInverse { element: a }),
            }
        }

        verify_associativity(n, &mul)?;

        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(l) => {
                return Err(GroupError::MalformedTable {
                    reason: format!("{} labels for {n} elements", l.len()),
                })
            }
            None => (0..n).map(|i| format!("g{i}")).collect(),
        };
        let label_index = build_label_index(&labels)?;

        Ok(FiniteGroup {
            order: n,
            backend: Backend::Table(flat),
            identity,
            inv,
            labels,
            label_index,
        })
    }

    /// Enumerates the group generated by permutations given in cycle
    /// notation, e.g. `"(1 2 3)(4 5)"`, acting on points `1..=degree`.
    ///
    /// Element labels are canonical cycle-notation strings and element ids
    /// follow breadth-first discovery order from the identity.
    pub fn from_permutation_generators(
        degree: usize,
        generators: &[&str],
        order_cap: usize,
    ) -> Result<Self, GroupError> {
        let gens: Vec<Perm> = generators
            .iter()
            .map(|s| Perm::parse_cycles(degree, s))
            .collect::<Result<_, _>>()?;
        Self::from_permutations(degree, &gens, order_cap)
    }

    /// Same as [`Self::from_permutation_generators`] but from parsed
    /// permutations.
    pub fn from_permutations(
        degree: usize,
        generators: &[Perm],
        order_cap: usize,
    ) -> Result<Self, GroupError> {
        for g in generators {
            if g.degree() != degree {
                return Err(GroupError::MalformedCycleNotation {
                    input: g.to_cycle_string(),
                    reason: format!("degree {} does not match {degree}", g.degree()),
                });
            }
        }

        // Breadth-first closure from the identity. In a finite group the
        // closure under products already contains all inverses.
        let id = Perm::identity(degree);
        let mut perms = vec![id.clone()];
        let mut index = BTreeMap::new();
        index.insert(id, 0u32);
        let mut head = 0usize;
        while head < perms.len() {
            let current = perms[head].clone();
            head += 1;
            for g in generators {
                let product = current.then(g);
                if !index.contains_key(&product) {
                    if perms.len() >= order_cap {
                        return Err(GroupError::OrderCapExceeded { cap: order_cap });
                    }
                    index.insert(product.clone(), perms.len() as u32);
                    perms.push(product);
                }
            }
        }

        let n = perms.len();
        let labels: Vec<String> = perms.iter().map(Perm::to_cycle_string).collect();
        let label_index = build_label_index(&labels)?;

        if n <= TABLE_LIMIT {
            let mut flat = Vec::with_capacity(n * n);
            for a in &perms {
                for b in &perms {
                    flat.push(index[&a.then(b)]);
                }
            }
            let mut group = Self::from_flat_table(n, flat, Some(labels))?;
            // Discovery order starts at the identity, so id 0 is neutral.
            debug_assert_eq!(group.identity, 0);
            group.label_index = build_label_index(&group.labels)?;
            Ok(group)
        } else {
            let mul = |a: usize, b: usize| index[&perms[a].then(&perms[b])] as usize;
            verify_associativity(n, &mul)?;
            let inv: Vec<u32> = perms.iter().map(|p| index[&p.inverse()]).collect();
            Ok(FiniteGroup {
                order: n,
                backend: Backend::Perms { perms, index },
                identity: 0,
                inv,
                labels,
                label_index,
            })
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Product of two element ids.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < self.order && b < self.order);
        match &self.backend {
            Backend::Table(flat) => flat[a * self.order + b] as usize,
            Backend::Perms { perms, index } => index[&perms[a].then(&perms[b])] as usize,
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let t = self.mul(self.inv(a), self.inv(b));
        self.mul(self.mul(t, a), b)
    }

    /// `x^-1 a x`.
    #[inline]
    pub fn conjugate(&self, a: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(x), a), x)
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).map(|&i| i as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }

    /// Multiplicative order of an element.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The whole group as a subgroup of itself.
    pub fn full_subgroup(&self) -> Subgroup<'_> {
        Subgroup::from_sorted_unchecked(self, (0..self.order as u32).collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup<'_> {
        Subgroup::from_sorted_unchecked(self, vec![self.identity as u32])
    }

    /// Smallest subgroup containing `seed`; the closure operator `< . >`.
    pub fn generated_subgroup(&self, seed: &[usize]) -> Result<Subgroup<'_>, GroupError> {
        for &s in seed {
            if s >= self.order {
                return Err(GroupError::InvalidElementId {
                    id: s,
                    order: self.order,
                });
            }
        }
        Ok(self.closure_unchecked(seed))
    }

    pub(crate) fn closure_unchecked(&self, seed: &[usize]) -> Subgroup<'_> {
        let mut present = vec![false; self.order];
        let mut queue: Vec<usize> = Vec::with_capacity(seed.len() + 1);
        present[self.identity] = true;
        queue.push(self.identity);
        for &s in seed {
            if !present[s] {
                present[s] = true;
                queue.push(s);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &s in seed {
                let p = self.mul(x, s);
                if !present[p] {
                    present[p] = true;
                    queue.push(p);
                }
            }
        }
        let members: Vec<u32> = (0..self.order as u32)
            .filter(|&i| present[i as usize])
            .collect();
        Subgroup::from_sorted_unchecked(self, members)
    }

    /// Elements of the whole group commuting with every element of `set`.
    pub fn centralizer(&self, set: &[usize]) -> Subgroup<'_> {
        self.centralizer_in(&self.full_subgroup(), set)
    }

    /// Elements of `ambient` commuting with every element of `set`.
    pub fn centralizer_in<'g>(&'g self, ambient: &Subgroup<'g>, set: &[usize]) -> Subgroup<'g> {
        ambient.assert_parent(self);
        let members: Vec<u32> = ambient
            .member_ids()
            .iter()
            .copied()
            .filter(|&g| {
                set.iter()
                    .all(|&s| self.mul(g as usize, s) == self.mul(s, g as usize))
            })
            .collect();
        Subgroup::from_sorted_unchecked(self, members)
    }

    /// Center of an ambient subgroup, as a group in its own right.
    pub fn center_of<'g>(&'g self, ambient: &Subgroup<'g>) -> Subgroup<'g> {
        self.centralizer_in(ambient, &ambient.members().collect::<Vec<_>>())
    }

    pub fn center(&self) -> Subgroup<'_> {
        self.center_of(&self.full_subgroup())
    }

    /// `{ g in G | g^-1 H g = H }`.
    pub fn normalizer<'g>(&'g self, h: &Subgroup<'g>) -> Subgroup<'g> {
        self.normalizer_in(&self.full_subgroup(), h)
    }

    pub fn normalizer_in<'g>(&'g self, ambient: &Subgroup<'g>, h: &Subgroup<'g>) -> Subgroup<'g> {
        ambient.assert_parent(self);
        h.assert_parent(self);
        let members: Vec<u32> = ambient
            .member_ids()
            .iter()
            .copied()
            .filter(|&g| {
                h.members()
                    .all(|m| h.contains(self.conjugate(m, g as usize)))
            })
            .collect();
        Subgroup::from_sorted_unchecked(self, members)
    }

    /// `[A, B] = < [a, b] : a in A, b in B >`.
    pub fn commutator_subgroup<'g>(&'g self, a: &Subgroup<'g>, b: &Subgroup<'g>) -> Subgroup<'g> {
        a.assert_parent(self);
        b.assert_parent(self);
        let mut seen = vec![false; self.order];
        let mut gens = Vec::new();
        for x in a.members() {
            for y in b.members() {
                let c = self.commutator(x, y);
                if !seen[c] {
                    seen[c] = true;
                    gens.push(c);
                }
            }
        }
        self.closure_unchecked(&gens)
    }

    /// Derived series `G >= G' >= G'' >= ...` until stabilization, and
    /// whether the terminal term is trivial.
    pub fn derived_series(&self) -> (Vec<Subgroup<'_>>, bool) {
        self.derived_series_of(&self.full_subgroup())
    }

    pub fn derived_series_of<'g>(&'g self, ambient: &Subgroup<'g>) -> (Vec<Subgroup<'g>>, bool) {
        let mut series = vec![ambient.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.commutator_subgroup(last, last);
            if &next == last {
                break;
            }
            series.push(next);
        }
        let solvable = series.last().unwrap().is_trivial();
        (series, solvable)
    }

    /// A small generating set for a subgroup, chosen greedily over the
    /// member list; deterministic.
    pub fn minimal_generators(&self, h: &Subgroup<'_>) -> Vec<usize> {
        h.assert_parent(self);
        let mut gens: Vec<usize> = Vec::new();
        let mut span = self.trivial_subgroup();
        for m in h.members() {
            if !span.contains(m) {
                gens.push(m);
                span = self.closure_unchecked(&gens);
                if span.order() == h.order() {
                    break;
                }
            }
        }
        gens
    }

    /// Direct product, with labels `"(a,b)"`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
        let n = self.order * other.order;
        let encode = |a: usize, b: usize| a * other.order + b;
        let mut flat = Vec::with_capacity(n * n);
        for a1 in 0..self.order {
            for b1 in 0..other.order {
                for a2 in 0..self.order {
                    for b2 in 0..other.order {
                        flat.push(encode(self.mul(a1, a2), other.mul(b1, b2)) as u32);
                    }
                }
            }
        }
        let labels = (0..self.order)
            .flat_map(|a| {
                (0..other.order).map(move |b| format!("({},{})", self.labels[a], other.labels[b]))
            })
            .collect();
        FiniteGroup::from_flat_table(n, flat, Some(labels))
    }
}

fn build_label_index(labels: &[String]) -> Result<BTreeMap<String, u32>, GroupError> {
    let mut map = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        if map.insert(l.clone(), i as u32).is_some() {
            return Err(GroupError::DuplicateLabel { label: l.clone() });
        }
    }
    Ok(map)
}

fn verify_associativity(n: usize, mul: &dyn Fn(usize, usize) -> usize) -> Result<(), GroupError> {
    if n <= TABLE_LIMIT {
        for a in 0..n {
            for b in 0..n {
                let ab = mul(a, b);
                for c in 0..n {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
    } else {
        let mut rng = DetRng::seed_from_u64(0x5eed_a550c);
        for _ in 0..RANDOM_TRIPLES_PER_ELEMENT * n {
            let a = rng.range_u32(n as u32) as usize;
            let b = rng.range_u32(n as u32) as usize;
            let c = rng.range_u32(n as u32) as usize;
            if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                return Err(GroupError::NotAssociative { a, b, c });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests;
