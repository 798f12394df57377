//! The lattice of centralizer subgroups `{ C_G(S) : S subset of G }`,
//! computed as the intersection closure of the single-element centralizers.
//! Its longest strictly descending chain is the finite witness for the
//! chain condition on centralizers.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{FiniteGroup, GroupError, Subgroup};

/// One lattice node together with a witness subset `S` whose centralizer it is.
#[derive(Clone, Debug)]
pub struct CentralizerLatticeEntry<'g> {
    pub subgroup: Subgroup<'g>,
    /// A subset `S` with `C_G(S)` equal to `subgroup`.
    pub witnesses: Vec<usize>,
}

#[derive(Debug)]
pub struct CentralizerLattice<'g> {
    /// All distinct centralizers, ordered by descending size then member set.
    pub entries: Vec<CentralizerLatticeEntry<'g>>,
    /// Number of subgroups in the longest strictly descending chain.
    pub max_chain_length: usize,
}

/// Enumerates every centralizer subgroup of `g`.
///
/// `C_G(S) = intersection of C_G(s) over s in S`, so the lattice is the
/// closure of `{ G } u { C_G(x) }` under pairwise intersection; witnesses
/// accumulate the generating subsets.
pub fn centralizer_lattice(
    g: &FiniteGroup,
    order_cap: usize,
) -> Result<CentralizerLattice<'_>, GroupError> {
    if g.order() > order_cap {
        return Err(GroupError::OrderCapExceeded { cap: order_cap });
    }

    let mut by_members: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
    by_members.insert(g.full_subgroup().member_ids().to_vec(), Vec::new());
    let mut worklist: Vec<(Vec<u32>, Vec<usize>)> = Vec::new();
    for x in g.elements() {
        let c = g.centralizer(&[x]);
        let key = c.member_ids().to_vec();
        if !by_members.contains_key(&key) {
            by_members.insert(key.clone(), vec![x]);
            worklist.push((key, vec![x]));
        }
    }

    // Intersect until no new subgroup appears.
    while let Some((members, witness)) = worklist.pop() {
        let snapshot: Vec<(Vec<u32>, Vec<usize>)> = by_members
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        for (other, other_witness) in snapshot {
            let meet: Vec<u32> = members
                .iter()
                .copied()
                .filter(|m| other.binary_search(m).is_ok())
                .collect();
            if !by_members.contains_key(&meet) {
                let mut w: Vec<usize> = witness.clone();
                w.extend(other_witness);
                w.sort_unstable();
                w.dedup();
                by_members.insert(meet.clone(), w.clone());
                worklist.push((meet, w));
            }
        }
    }

    let mut entries: Vec<CentralizerLatticeEntry<'_>> = by_members
        .into_iter()
        .map(|(members, witnesses)| CentralizerLatticeEntry {
            subgroup: Subgroup::from_sorted_unchecked(g, members),
            witnesses,
        })
        .collect();
    entries.sort_by(|a, b| {
        b.subgroup
            .order()
            .cmp(&a.subgroup.order())
            .then_with(|| a.subgroup.member_ids().cmp(b.subgroup.member_ids()))
    });

    // Longest descending chain by DP over the inclusion order. Entries are
    // sorted large-to-small, so every proper superset precedes its subsets.
    let mut longest = vec![1usize; entries.len()];
    for i in 0..entries.len() {
        for j in 0..i {
            if entries[i].subgroup.order() < entries[j].subgroup.order()
                && entries[i].subgroup.is_subset_of(&entries[j].subgroup)
            {
                longest[i] = longest[i].max(longest[j] + 1);
            }
        }
    }
    let max_chain_length = longest.iter().copied().max().unwrap_or(0);

    Ok(CentralizerLattice {
        entries,
        max_chain_length,
    })
}
