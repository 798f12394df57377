//! Ordinal-indexed chains on finite groups: upper central series `Z_a`,
//! iterated centralizers `C^a(H)`, and envelope chains `E_a(H)`.
//!
//! The recursions are, for an ambient group `A` and a subgroup `H <= A`:
//!
//! * `C^0(H) = 1`; at a successor `a`,
//!   `C^a(H) = { x in intersection of N_A(C^b(H)) over b < a | [x, H] <= C^(a-1)(H) }`;
//!   at a limit, the union of the earlier terms.
//! * `Z_a(A) = C^a_A(A)`, which collapses to the usual
//!   `Z_(k+1) = { x | [x, A] <= Z_k }` since every term is normal.
//! * `E_0(H) = A`; at a successor `a`,
//!   `E_a(H) = { g in E_(a-1) | [g, C^a_(E_(a-1))(H)] <= C^(a-1)_(E_(a-1))(H) }`,
//!   both iterated centralizers taken inside `E_(a-1)`; at a limit, the
//!   intersection of the earlier terms.
//!
//! On a finite group every chain becomes constant after finitely many steps,
//! so a limit term is the literal union (ascending) or intersection
//! (descending) of all recorded earlier terms. The limit branch is executed,
//! not short-circuited. Permanence past the first repetition is a theorem
//! for the ascending chains but is *not* assumed for envelopes: descending
//! records only clamp where they have actually been computed, and the
//! verification harness probes beyond the first repetition separately.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::group::{FiniteGroup, Subgroup};
use crate::ordinal::{OrdinalError, SmallOrdinal};

/// Whether a chain grows or shrinks with its index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainDirection {
    Ascending,
    Descending,
}

/// Errors from chain computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainError {
    /// An operation that needs a successor ordinal got a limit or zero.
    IndexNotSuccessor(SmallOrdinal),
    /// No repetition was recorded within the requested index range.
    NotYetStable,
    /// The designated subgroup is not contained in the ambient subgroup.
    SubgroupNotContained,
    Ordinal(OrdinalError),
}

impl fmt::Display for ChainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainError::IndexNotSuccessor(a) => write!(f, "index {a} is not a successor ordinal"),
            ChainError::NotYetStable => {
                write!(f, "chain shows no repetition within the computed range")
            }
            ChainError::SubgroupNotContained => {
                write!(f, "subgroup is not contained in the ambient subgroup")
            }
            ChainError::Ordinal(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ChainError {}

impl From<OrdinalError> for ChainError {
    fn from(e: OrdinalError) -> Self {
        ChainError::Ordinal(e)
    }
}

/// An ordinal-indexed monotone sequence of subgroups with stabilization
/// bookkeeping and, for ascending chains, per-element first-entry indices.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainRecord<'g> {
    direction: ChainDirection,
    terms: BTreeMap<SmallOrdinal, Subgroup<'g>>,
    stabilization: Option<SmallOrdinal>,
    first_entry: Option<BTreeMap<usize, SmallOrdinal>>,
}

impl<'g> ChainRecord<'g> {
    /// Assembles a record from raw parts without validation. The chain
    /// drivers in this module produce only well-formed records; this
    /// constructor exists so that shape checks can be exercised against
    /// deliberately corrupted records.
    pub fn from_parts(
        direction: ChainDirection,
        terms: BTreeMap<SmallOrdinal, Subgroup<'g>>,
        stabilization: Option<SmallOrdinal>,
        first_entry: Option<BTreeMap<usize, SmallOrdinal>>,
    ) -> Self {
        ChainRecord {
            direction,
            terms,
            stabilization,
            first_entry,
        }
    }

    pub fn direction(&self) -> ChainDirection {
        self.direction
    }

    pub fn terms(&self) -> &BTreeMap<SmallOrdinal, Subgroup<'g>> {
        &self.terms
    }

    pub fn recorded_indices(&self) -> impl Iterator<Item = SmallOrdinal> + '_ {
        self.terms.keys().copied()
    }

    pub fn last_recorded(&self) -> (SmallOrdinal, &Subgroup<'g>) {
        let (&i, t) = self
            .terms
            .iter()
            .next_back()
            .expect("chain records are never empty");
        (i, t)
    }

    /// Index at which the record stabilized, if a repetition was recorded.
    pub fn stabilization(&self) -> Option<SmallOrdinal> {
        self.stabilization
    }

    /// First-entry indices of an ascending chain: for every element that
    /// appears strictly after the base term, the least recorded index
    /// containing it. Elements of the base term are not listed.
    pub fn first_entry(&self) -> Option<&BTreeMap<usize, SmallOrdinal>> {
        self.first_entry.as_ref()
    }

    /// Value of the chain at `index`.
    ///
    /// Recorded indices are answered exactly. An unrecorded index sandwiched
    /// between two equal recorded terms is forced by monotonicity and is
    /// answered with that value. Past the recorded range an ascending record
    /// answers with its stabilized value (permanence after a repetition is a
    /// theorem for the ascending recursions); a descending record answers
    /// only what monotonicity forces.
    pub fn term_at(&self, index: SmallOrdinal) -> Option<&Subgroup<'g>> {
        if let Some(t) = self.terms.get(&index) {
            return Some(t);
        }
        let (&below, term) = self.terms.range(..=index).next_back()?;
        if let Some((_, above)) = self.terms.range(index..).next() {
            return (term == above).then_some(term);
        }
        match self.direction {
            ChainDirection::Ascending => self.stabilization.filter(|&s| below >= s).map(|_| term),
            ChainDirection::Descending => None,
        }
    }
}

/// Least recorded index from which every recorded later term is equal.
///
/// Errors with [`ChainError::NotYetStable`] when the record contains no
/// repetition (the last two recorded terms differ, so permanence has not
/// been witnessed).
pub fn stabilization_index(chain: &ChainRecord<'_>) -> Result<SmallOrdinal, ChainError> {
    let entries: Vec<(&SmallOrdinal, &Subgroup<'_>)> = chain.terms.iter().collect();
    let (last_index, last_term) = entries.last().copied().ok_or(ChainError::NotYetStable)?;
    let mut s = *last_index;
    for (&i, t) in entries.iter().rev().skip(1) {
        if t == &last_term {
            s = i;
        } else {
            break;
        }
    }
    if s == *last_index {
        return Err(ChainError::NotYetStable);
    }
    Ok(s)
}

/// Upper central series of the whole group; see [`upper_central_series_in`].
pub fn upper_central_series(g: &FiniteGroup) -> (ChainRecord<'_>, Option<u32>) {
    upper_central_series_in(&g.full_subgroup())
}

/// Ascending series `Z_0 = 1 <= Z_1 <= ...` of an ambient subgroup, driven
/// until it repeats, together with the nilpotency class: the least `k` with
/// `Z_k` equal to the ambient, absent when the series stops short.
///
/// For a finite group the stabilized term is the hypercenter, and being
/// hypercentral coincides with being nilpotent.
pub fn upper_central_series_in<'g>(ambient: &Subgroup<'g>) -> (ChainRecord<'g>, Option<u32>) {
    let g = ambient.parent();
    let record = drive(
        ChainDirection::Ascending,
        g.trivial_subgroup(),
        None,
        |_, earlier| {
            let prev = &earlier
                .last()
                .expect("successor step sees its predecessor")
                .1;
            let members: Vec<usize> = ambient
                .members()
                .filter(|&x| ambient.members().all(|e| prev.contains(g.commutator(x, e))))
                .collect();
            // a repeated term repeats forever: the condition only mentions
            // the previous term
            (subgroup_from_members(g, members), true)
        },
    );
    let class = record
        .terms
        .iter()
        .find(|(_, t)| t.order() == ambient.order())
        .map(|(i, _)| i.finite_part());
    (record, class)
}

/// Iterated centralizer chain of `h` in the whole group.
pub fn iterated_centralizer_chain<'g>(
    g: &'g FiniteGroup,
    h: &Subgroup<'g>,
    max_index: SmallOrdinal,
) -> Result<ChainRecord<'g>, ChainError> {
    iterated_centralizer_chain_in(&g.full_subgroup(), h, max_index)
}

/// Iterated centralizer chain of `h` inside an ambient subgroup, the
/// ascending recursion with the literal normalizer side condition: a
/// successor term keeps exactly the ambient elements normalizing every
/// earlier term whose commutators with `h` land in the previous term.
pub fn iterated_centralizer_chain_in<'g>(
    ambient: &Subgroup<'g>,
    h: &Subgroup<'g>,
    max_index: SmallOrdinal,
) -> Result<ChainRecord<'g>, ChainError> {
    if !h.is_subset_of(ambient) {
        return Err(ChainError::SubgroupNotContained);
    }
    let g = ambient.parent();
    let record = drive(
        ChainDirection::Ascending,
        g.trivial_subgroup(),
        Some(max_index),
        |_, earlier| {
            let prev = &earlier
                .last()
                .expect("successor step sees its predecessor")
                .1;
            // intersection of ambient normalizers of the distinct earlier terms
            let mut candidates = ambient.clone();
            let mut done: Vec<&Subgroup<'g>> = Vec::new();
            for (_, t) in earlier {
                if !done.contains(&t) {
                    candidates = candidates.intersect(&g.normalizer_in(ambient, t));
                    done.push(t);
                }
            }
            let members: Vec<usize> = candidates
                .members()
                .filter(|&x| h.members().all(|hh| prev.contains(g.commutator(x, hh))))
                .collect();
            // ascending recursions repeat permanently after one repetition
            (subgroup_from_members(g, members), true)
        },
    );
    Ok(record)
}

/// One successor step of the envelope recursion:
/// `{ g in prev | [g, C^a_prev(h)] <= C^(a-1)_prev(h) }` with both iterated
/// centralizers computed inside `prev`.
pub fn envelope_step<'g>(
    prev: &Subgroup<'g>,
    h: &Subgroup<'g>,
    alpha: SmallOrdinal,
) -> Result<Subgroup<'g>, ChainError> {
    if !alpha.is_successor() {
        return Err(ChainError::IndexNotSuccessor(alpha));
    }
    if !h.is_subset_of(prev) {
        return Err(ChainError::SubgroupNotContained);
    }
    let g = prev.parent();
    let chain = iterated_centralizer_chain_in(prev, h, alpha)?;
    let c_alpha = chain.term_at(alpha).expect("chain computed through alpha");
    let c_pred = chain
        .term_at(alpha.predecessor()?)
        .expect("chain computed through alpha - 1");
    let members: Vec<usize> = prev
        .members()
        .filter(|&x| {
            c_alpha
                .members()
                .all(|c| c_pred.contains(g.commutator(x, c)))
        })
        .collect();
    Ok(subgroup_from_members(g, members))
}

/// Descending envelope chain `E_0 = G >= E_1 >= ...` of `h` in `g`, with
/// limit terms taken as intersections of all recorded earlier terms.
pub fn envelope_chain<'g>(
    g: &'g FiniteGroup,
    h: &Subgroup<'g>,
    max_index: SmallOrdinal,
) -> Result<ChainRecord<'g>, ChainError> {
    envelope_chain_in(&g.full_subgroup(), h, max_index)
}

pub fn envelope_chain_in<'g>(
    ambient: &Subgroup<'g>,
    h: &Subgroup<'g>,
    max_index: SmallOrdinal,
) -> Result<ChainRecord<'g>, ChainError> {
    if !h.is_subset_of(ambient) {
        return Err(ChainError::SubgroupNotContained);
    }
    // A stalled envelope may still drop later, because the superscript keeps
    // climbing while the ambient repeats. The stall is permanent exactly
    // when the iterated centralizer chain inside the stalled ambient has
    // itself stabilized at or below the current index: from there on the
    // successor condition stops changing. The driver therefore keeps
    // stepping past repetitions until that inner stabilization is witnessed.
    let record = drive(
        ChainDirection::Descending,
        ambient.clone(),
        Some(max_index),
        |idx, earlier| {
            let prev = &earlier
                .last()
                .expect("successor step sees its predecessor")
                .1;
            let inner = iterated_centralizer_chain_in(prev, h, idx)
                .expect("H is contained in every envelope term");
            let c_alpha = inner.term_at(idx).expect("computed through the index");
            let c_pred = inner
                .term_at(idx.predecessor().expect("driver passes successor indices"))
                .expect("computed through the predecessor");
            let g = prev.parent();
            let members: Vec<usize> = prev
                .members()
                .filter(|&x| {
                    c_alpha
                        .members()
                        .all(|c| c_pred.contains(g.commutator(x, c)))
                })
                .collect();
            let term = subgroup_from_members(g, members);
            let permanent_if_stalled =
                !idx.is_finite() || inner.stabilization().is_some_and(|s| s < idx);
            (term, permanent_if_stalled)
        },
    );
    debug_assert!(record.terms.values().all(|t| h.is_subset_of(t)));
    Ok(record)
}

/// Generic chain driver.
///
/// Computes the base term at 0, then per limit segment: the limit value as
/// the literal union/intersection of all recorded earlier terms, followed by
/// successor terms. The final segment runs literally through the finite part
/// of `max`; earlier segments (and the `max = None` case) stop at the first
/// repetition, which a finite group must reach.
fn drive<'g>(
    direction: ChainDirection,
    base: Subgroup<'g>,
    max: Option<SmallOrdinal>,
    mut successor: impl FnMut(SmallOrdinal, &[(SmallOrdinal, Subgroup<'g>)]) -> (Subgroup<'g>, bool),
) -> ChainRecord<'g> {
    let g = base.parent();
    let mut recorded: Vec<(SmallOrdinal, Subgroup<'g>)> = Vec::new();
    let mut first_entry: BTreeMap<usize, SmallOrdinal> = BTreeMap::new();

    recorded.push((SmallOrdinal::ZERO, base));

    let max_coeff = max.map_or(0, |m| m.omega_coeff());
    'segments: for coeff in 0..=max_coeff {
        if coeff > 0 {
            let limit = SmallOrdinal::new(coeff, 0).expect("coefficient within cap");
            let value = match direction {
                ChainDirection::Ascending => union_of(g, &recorded),
                ChainDirection::Descending => intersection_of(&recorded),
            };
            // a limit introduces no first entries: anything in the union is
            // already in some earlier term (and entered at a successor)
            recorded.push((limit, value));
        }
        let literal_target = max
            .filter(|m| m.omega_coeff() == coeff)
            .map(|m| m.finite_part());
        let mut k = 0u32;
        loop {
            k += 1;
            if literal_target.is_some_and(|t| k > t) {
                continue 'segments;
            }
            let idx = SmallOrdinal::new(coeff, k).expect("coefficient within cap");
            let (term, permanent_if_stalled) = successor(idx, &recorded);
            let prev = &recorded.last().expect("non-empty").1;
            let repeated = &term == prev;
            if direction == ChainDirection::Ascending {
                for m in term.members() {
                    if !prev.contains(m) {
                        first_entry.entry(m).or_insert(idx);
                    }
                }
            }
            recorded.push((idx, term));
            if repeated && permanent_if_stalled && literal_target.is_none() {
                continue 'segments;
            }
            assert!(
                (k as usize) <= 2 * g.order() + literal_target.map_or(2, |t| t as usize + 2),
                "chain failed to reach a permanent repetition within the order bound"
            );
        }
    }

    let terms: BTreeMap<SmallOrdinal, Subgroup<'g>> = recorded.into_iter().collect();
    let mut record = ChainRecord {
        direction,
        terms,
        stabilization: None,
        first_entry: (direction == ChainDirection::Ascending).then_some(first_entry),
    };
    record.stabilization = stabilization_index(&record).ok();
    record
}

fn union_of<'g>(g: &'g FiniteGroup, recorded: &[(SmallOrdinal, Subgroup<'g>)]) -> Subgroup<'g> {
    let mut present = alloc::vec![false; g.order()];
    for (_, t) in recorded {
        for m in t.members() {
            present[m] = true;
        }
    }
    let members: Vec<usize> = (0..g.order()).filter(|&m| present[m]).collect();
    subgroup_from_members(g, members)
}

fn intersection_of<'g>(recorded: &[(SmallOrdinal, Subgroup<'g>)]) -> Subgroup<'g> {
    let mut iter = recorded.iter().map(|(_, t)| t);
    let first = iter.next().expect("non-empty").clone();
    iter.fold(first, |acc, t| acc.intersect(t))
}

fn subgroup_from_members<'g>(g: &'g FiniteGroup, members: Vec<usize>) -> Subgroup<'g> {
    let sub = Subgroup::from_sorted_unchecked(g, members.into_iter().map(|m| m as u32).collect());
    debug_assert!(
        Subgroup::new(g, sub.members()).is_ok(),
        "chain step produced a non-subgroup"
    );
    sub
}
