//! Cross-validation of the symbolic shape calculus against the exhaustive
//! finite-group engine.
//!
//! Truncating the monomial group at dyadic depth `d` (no transcendental
//! generators, roots of unity of order dividing `2^d`) yields a finite
//! group of order `2^(2d+1)` whose multiplication table is built from the
//! exact symbolic arithmetic. Below the truncation bound the chains of the
//! finite group are the restrictions of the symbolically derived ones, so
//! the two engines must agree set-for-set:
//!
//! * `Z_k` of the truncation equals the shape-predicted center ladder for
//!   `k <= d`; the swap part enters exactly at `k = d+1`, making the
//!   truncation nilpotent of class `d+1` (the degrees `d+1` march toward
//!   the transfinite degree of the untruncated subgroup as `d` grows);
//! * the first iterated centralizers and the first envelope of the
//!   diagonal-only subgroup match their shape predictions.

use std::collections::BTreeMap;

use envelope_core::gl2::{
    upper_central_shape_chain, DyadicRoot, MonomialElem, SubgroupShape, SymScalar,
};
use envelope_core::{
    envelope_chain, iterated_centralizer_chain, upper_central_series, FiniteGroup, SmallOrdinal,
    Subgroup,
};

/// All monomial matrices over the roots of unity of order dividing `2^d`,
/// as exact symbolic elements.
fn truncated_elements(depth: u32) -> Vec<MonomialElem> {
    let roots: Vec<DyadicRoot> = (0..1u64 << depth)
        .map(|n| DyadicRoot::new(n, depth))
        .collect();
    let mut out = Vec::new();
    for swap in [false, true] {
        for &a in &roots {
            for &b in &roots {
                let a = SymScalar::root_only(0, a);
                let b = SymScalar::root_only(0, b);
                let elem = if swap {
                    MonomialElem::antidiagonal(a, b).unwrap()
                } else {
                    MonomialElem::diagonal(a, b).unwrap()
                };
                out.push(elem);
            }
        }
    }
    out
}

/// The truncation as a table-backed finite group, plus the element list in
/// id order.
fn truncated_group(depth: u32) -> (FiniteGroup, Vec<MonomialElem>) {
    let elems = truncated_elements(depth);
    let index: BTreeMap<String, usize> = elems
        .iter()
        .enumerate()
        .map(|(i, e)| (e.to_string(), i))
        .collect();
    let table: Vec<Vec<usize>> = elems
        .iter()
        .map(|a| {
            elems
                .iter()
                .map(|b| index[&a.mul(b).unwrap().to_string()])
                .collect()
        })
        .collect();
    let labels: Vec<String> = elems.iter().map(|e| e.to_string()).collect();
    let group = FiniteGroup::from_cayley_table_labeled(&table, Some(labels)).unwrap();
    (group, elems)
}

/// Members of `g` whose symbolic counterparts satisfy `shape`.
fn restriction<'g>(
    g: &'g FiniteGroup,
    elems: &[MonomialElem],
    shape: &SubgroupShape,
) -> Subgroup<'g> {
    let members = (0..g.order()).filter(|&i| shape.contains(&elems[i]));
    Subgroup::new(g, members).expect("shape restrictions are subgroups here")
}

#[test]
fn truncated_monomial_groups_have_the_predicted_orders() {
    for depth in 1..=3 {
        let (g, _) = truncated_group(depth);
        assert_eq!(g.order(), 1 << (2 * depth + 1));
        assert!(!g.is_abelian());
    }
}

#[test]
fn center_ladders_agree_below_the_truncation_bound() {
    for depth in 1..=3u32 {
        let (g, elems) = truncated_group(depth);
        let (ucs, class) = upper_central_series(&g);

        // the finite truncation is nilpotent of class exactly d+1
        assert_eq!(class, Some(depth + 1), "depth {depth}");

        // below the bound, Z_k of the truncation is the restriction of the
        // symbolically derived center ladder of the full monomial group
        let shapes =
            upper_central_shape_chain(&SubgroupShape::ambient(), SmallOrdinal::finite(depth))
                .unwrap();
        for k in 0..=depth {
            let idx = SmallOrdinal::finite(k);
            let from_table = ucs.term_at(idx).expect("recorded");
            let from_shapes = restriction(&g, &elems, shapes.term_at(idx).unwrap());
            assert_eq!(from_table, &from_shapes, "Z_{k} disagrees at depth {depth}");
        }

        // at d+1 the swap part enters and the whole truncation is central
        assert!(ucs
            .term_at(SmallOrdinal::finite(depth + 1))
            .unwrap()
            .is_full());
    }
}

#[test]
fn diagonal_subgroup_chains_agree_with_the_shape_predictions() {
    // the diagonal-only reading of the designated subgroup, truncated
    for depth in 1..=2u32 {
        let (g, elems) = truncated_group(depth);
        let h = restriction(&g, &elems, &SubgroupShape::torsion_diagonal());
        assert_eq!(h.order(), 1 << (2 * depth));

        // C^1 is the diagonal part, C^2 climbs back to everything; both
        // match the symbolic derivation for the untruncated group
        let icc = iterated_centralizer_chain(&g, &h, SmallOrdinal::finite(2)).unwrap();
        let diag = restriction(&g, &elems, &SubgroupShape::diagonal_group());
        assert_eq!(icc.term_at(SmallOrdinal::finite(1)).unwrap(), &diag);
        assert!(icc.term_at(SmallOrdinal::finite(2)).unwrap().is_full());

        // the first envelope collapses to the diagonal part, as the
        // symbolic printed-reading audit derives
        let env = envelope_chain(&g, &h, SmallOrdinal::finite(1)).unwrap();
        assert_eq!(env.term_at(SmallOrdinal::finite(1)).unwrap(), &diag);
    }
}

#[test]
fn scalar_restriction_is_the_center() {
    for depth in 1..=3u32 {
        let (g, elems) = truncated_group(depth);
        let scalars = restriction(&g, &elems, &SubgroupShape::scalars());
        assert_eq!(g.center(), scalars);
    }
}
