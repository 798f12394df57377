use super::*;
use crate::catalog;
use alloc::collections::BTreeSet;

/// Independent oracle: permutations of `{0,1,2}` as arrays, composed
/// directly, without going through [`Perm`].
fn s3_table_by_composition() -> (Vec<[usize; 3]>, Vec<Vec<usize>>) {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let compose = |p: &[usize; 3], q: &[usize; 3]| [q[p[0]], q[p[1]], q[p[2]]];
    let table = perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| {
                    let pq = compose(p, q);
                    perms.iter().position(|r| *r == pq).unwrap()
                })
                .collect()
        })
        .collect();
    (perms, table)
}

#[test]
fn trivial_table_is_the_trivial_group() {
    let g = FiniteGroup::from_cayley_table(&[vec![0]]).unwrap();
    assert_eq!(g.order(), 1);
    assert_eq!(g.identity(), 0);
}

#[test]
fn order_two_table() {
    let g = FiniteGroup::from_cayley_table(&[vec![0, 1], vec![1, 0]]).unwrap();
    assert_eq!(g.order(), 2);
    assert_eq!(g.inv(1), 1);
}

#[test]
fn s3_table_from_composition_oracle() {
    let (_, table) = s3_table_by_composition();
    let g = FiniteGroup::from_cayley_table(&table).unwrap();
    assert_eq!(g.order(), 6);
    assert!(!g.is_abelian());
    // two generators suffice
    let gens = g.minimal_generators(&g.full_subgroup());
    assert!(
        gens.len() <= 2,
        "S_3 needs at most 2 generators, got {gens:?}"
    );
}

#[test]
fn bad_tables_are_named() {
    // break associativity but keep identity/inverses: a 3-element "table"
    let t = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 1]];
    match FiniteGroup::from_cayley_table(&t) {
        Err(GroupError::NotAssociative { .. }) | Err(GroupError::MissingInverse { .. }) => {}
        other => panic!("expected a named axiom violation, got {other:?}"),
    }
    let no_id = vec![vec![0, 0], vec![0, 0]];
    assert!(matches!(
        FiniteGroup::from_cayley_table(&no_id),
        Err(GroupError::NoIdentity)
    ));
    let ragged = vec![vec![0, 1], vec![1]];
    assert!(matches!(
        FiniteGroup::from_cayley_table(&ragged),
        Err(GroupError::MalformedTable { .. })
    ));
    let out_of_range = vec![vec![0, 1], vec![1, 2]];
    assert!(matches!(
        FiniteGroup::from_cayley_table(&out_of_range),
        Err(GroupError::MalformedTable { .. })
    ));
}

#[test]
fn permutation_generators_s3_and_d8() {
    let s3 = FiniteGroup::from_permutation_generators(3, &["(1 2 3)", "(1 2)"], 20_000).unwrap();
    assert_eq!(s3.order(), 6);
    let d8 = FiniteGroup::from_permutation_generators(4, &["(1 2 3 4)", "(1 3)"], 20_000).unwrap();
    assert_eq!(d8.order(), 8);
    let trivial = FiniteGroup::from_permutation_generators(1, &[], 20_000).unwrap();
    assert_eq!(trivial.order(), 1);
}

#[test]
fn order_cap_is_enforced() {
    assert_eq!(
        FiniteGroup::from_permutation_generators(5, &["(1 2 3 4 5)", "(1 2)"], 100).unwrap_err(),
        GroupError::OrderCapExceeded { cap: 100 }
    );
}

#[test]
fn generated_subgroup_examples() {
    let s3 = catalog::symmetric(3).unwrap();
    // empty seed
    assert_eq!(s3.generated_subgroup(&[]).unwrap(), s3.trivial_subgroup());
    // <(1 2 3)> = A_3
    let c = s3.element_by_label("(1 2 3)").unwrap();
    let a3 = s3.generated_subgroup(&[c]).unwrap();
    assert_eq!(a3.order(), 3);
    let expected: BTreeSet<&str> = ["()", "(1 2 3)", "(1 3 2)"].into_iter().collect();
    let got: BTreeSet<&str> = a3.members().map(|m| s3.label(m)).collect();
    assert_eq!(got, expected);

    // D_8: <r^2, s> = {1, r2, s, r2s}
    let d8 = catalog::dihedral(8).unwrap();
    let r2 = d8.element_by_label("r2").unwrap();
    let s = d8.element_by_label("s").unwrap();
    let v = d8.generated_subgroup(&[r2, s]).unwrap();
    let got: BTreeSet<&str> = v.members().map(|m| d8.label(m)).collect();
    assert_eq!(got, ["1", "r2", "s", "r2s"].into_iter().collect());
}

#[test]
fn centralizer_examples() {
    // abelian group: centralizer of anything is everything
    let c4 = catalog::cyclic(4).unwrap();
    for x in c4.elements() {
        assert!(c4.centralizer(&[x]).is_full());
    }

    let s3 = catalog::symmetric(3).unwrap();
    let c = s3.element_by_label("(1 2 3)").unwrap();
    let z = s3.centralizer(&[c]);
    assert_eq!(z, s3.generated_subgroup(&[c]).unwrap());

    // Q_8: C(a) = <a> = {1, a, a2, a3}
    let q8 = catalog::generalized_quaternion(8).unwrap();
    let i = q8.element_by_label("a").unwrap();
    let ci = q8.centralizer(&[i]);
    assert_eq!(ci, q8.generated_subgroup(&[i]).unwrap());
    assert_eq!(ci.order(), 4);
}

#[test]
fn normalizer_examples() {
    let s3 = catalog::symmetric(3).unwrap();
    assert!(s3.normalizer(&s3.full_subgroup()).is_full());

    let t = s3.element_by_label("(1 2)").unwrap();
    let h = s3.generated_subgroup(&[t]).unwrap();
    assert_eq!(s3.normalizer(&h), h);

    let s4 = catalog::symmetric(4).unwrap();
    let c4 = s4.element_by_label("(1 2 3 4)").unwrap();
    let h = s4.generated_subgroup(&[c4]).unwrap();
    let n = s4.normalizer(&h);
    assert_eq!(n.order(), 8);
    assert!(h.is_subset_of(&n));
    assert!(s4.centralizer(&h.member_vec()).is_subset_of(&n));
}

#[test]
fn commutator_subgroup_examples() {
    let s3 = catalog::symmetric(3).unwrap();
    let full = s3.full_subgroup();
    // central factor: [Z, G] = 1
    let derived = s3.commutator_subgroup(&full, &full);
    assert_eq!(derived.order(), 3);
    assert_eq!(
        s3.commutator_subgroup(&s3.trivial_subgroup(), &full),
        s3.trivial_subgroup()
    );

    let d8 = catalog::dihedral(8).unwrap();
    let full = d8.full_subgroup();
    let derived = d8.commutator_subgroup(&full, &full);
    let r2 = d8.element_by_label("r2").unwrap();
    assert_eq!(derived, d8.generated_subgroup(&[r2]).unwrap());
}

#[test]
fn derived_series_examples() {
    let c6 = catalog::cyclic(6).unwrap();
    let (series, solvable) = c6.derived_series();
    assert_eq!(series.len(), 2);
    assert!(series[1].is_trivial());
    assert!(solvable);

    let s4 = catalog::symmetric(4).unwrap();
    let (series, solvable) = s4.derived_series();
    let orders: Vec<usize> = series.iter().map(Subgroup::order).collect();
    assert_eq!(orders, vec![24, 12, 4, 1]);
    assert!(solvable);

    let a5 = catalog::alternating(5).unwrap();
    let (series, solvable) = a5.derived_series();
    assert_eq!(series.last().unwrap().order(), 60);
    assert!(!solvable);
}

/// Oracle for the lattice: centralizers of all `2^n` subsets, deduplicated.
fn lattice_by_all_subsets(g: &FiniteGroup) -> BTreeSet<Vec<u32>> {
    let n = g.order();
    assert!(n <= 10, "oracle is exponential");
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        out.insert(g.centralizer(&subset).member_ids().to_vec());
    }
    out
}

#[test]
fn centralizer_lattice_matches_subset_oracle() {
    for g in [
        catalog::cyclic(6).unwrap(),
        catalog::symmetric(3).unwrap(),
        catalog::dihedral(8).unwrap(),
        catalog::generalized_quaternion(8).unwrap(),
    ] {
        let lattice = centralizer_lattice(&g, 20_000).unwrap();
        let got: BTreeSet<Vec<u32>> = lattice
            .entries
            .iter()
            .map(|e| e.subgroup.member_ids().to_vec())
            .collect();
        assert_eq!(got, lattice_by_all_subsets(&g));
        // each witness reproduces its subgroup
        for e in &lattice.entries {
            assert_eq!(g.centralizer(&e.witnesses), e.subgroup);
        }
    }
}

#[test]
fn centralizer_lattice_shapes() {
    let c6 = catalog::cyclic(6).unwrap();
    let l = centralizer_lattice(&c6, 20_000).unwrap();
    assert_eq!(l.entries.len(), 1);
    assert_eq!(l.max_chain_length, 1);

    let s3 = catalog::symmetric(3).unwrap();
    let l = centralizer_lattice(&s3, 20_000).unwrap();
    assert_eq!(l.entries.len(), 6);
    assert_eq!(l.max_chain_length, 3);

    let d8 = catalog::dihedral(8).unwrap();
    let l = centralizer_lattice(&d8, 20_000).unwrap();
    // oracle-computed: D_8, <r>, two Klein subgroups, center
    assert_eq!(l.entries.len(), 5);
    assert_eq!(l.max_chain_length, 3);

    assert!(matches!(
        centralizer_lattice(&d8, 4),
        Err(GroupError::OrderCapExceeded { cap: 4 })
    ));
}

#[test]
fn double_centralizer_laws() {
    for g in [
        catalog::symmetric(4).unwrap(),
        catalog::dihedral(16).unwrap(),
        catalog::generalized_quaternion(16).unwrap(),
    ] {
        let lattice = centralizer_lattice(&g, 20_000).unwrap();
        for entry in &lattice.entries {
            let s = entry.subgroup.member_vec();
            let cc = g.centralizer(&g.centralizer(&s).member_vec());
            // S <= C(C(S)) and C(C(C(S))) = C(S)
            assert!(entry.subgroup.is_subset_of(&cc));
            let c = g.centralizer(&s);
            let ccc = g.centralizer(&cc.member_vec());
            assert_eq!(ccc, c);
        }
    }
}

#[test]
fn double_centralizer_of_abelian_is_abelian() {
    // C_G(C_G(H)) abelian for abelian H, across a mixed bag of groups
    for g in [
        catalog::symmetric(4).unwrap(),
        catalog::dihedral(12).unwrap(),
        catalog::generalized_quaternion(16).unwrap(),
        catalog::heisenberg(3).unwrap(),
    ] {
        for x in g.elements() {
            let h = g.generated_subgroup(&[x]).unwrap();
            assert!(h.is_abelian_subgroup());
            let cc = g.centralizer(&g.centralizer(&h.member_vec()).member_vec());
            assert!(
                cc.is_abelian_subgroup(),
                "double centralizer of {h:?} not abelian in order-{}",
                g.order()
            );
        }
    }
}

#[test]
fn centralizer_is_intersection_of_pointwise_centralizers() {
    // exhaustive over all subsets of size <= 3
    for g in [
        catalog::symmetric(3).unwrap(),
        catalog::dihedral(8).unwrap(),
    ] {
        for a in g.elements() {
            assert_eq!(
                g.centralizer(&[a]),
                g.full_subgroup().intersect(&g.centralizer(&[a]))
            );
            for b in g.elements() {
                for c in g.elements() {
                    let joint = g.centralizer(&[a, b, c]);
                    let meet = g
                        .centralizer(&[a])
                        .intersect(&g.centralizer(&[b]))
                        .intersect(&g.centralizer(&[c]));
                    assert_eq!(joint, meet);
                }
            }
        }
    }
}

#[test]
fn subgroup_validation_rejects_non_subgroups() {
    let s3 = catalog::symmetric(3).unwrap();
    let t = s3.element_by_label("(1 2)").unwrap();
    let c = s3.element_by_label("(1 2 3)").unwrap();
    // missing identity
    assert!(matches!(
        Subgroup::new(&s3, [t]),
        Err(GroupError::NotASubgroup { .. })
    ));
    // not closed
    assert!(matches!(
        Subgroup::new(&s3, [s3.identity(), t, c]),
        Err(GroupError::NotASubgroup { .. })
    ));
    // valid
    assert!(Subgroup::new(&s3, [s3.identity(), t]).is_ok());
    // out of range
    assert!(matches!(
        Subgroup::new(&s3, [99]),
        Err(GroupError::InvalidElementId { .. })
    ));
}

#[test]
fn subgroups_of_different_parents_never_compare_equal() {
    let a = catalog::cyclic(4).unwrap();
    let b = catalog::cyclic(4).unwrap();
    assert_ne!(a.full_subgroup(), b.full_subgroup());
    assert_eq!(a.full_subgroup(), a.full_subgroup());
}

#[test]
fn direct_product_orders_and_labels() {
    let v4 = catalog::cyclic(2)
        .unwrap()
        .direct_product(&catalog::cyclic(2).unwrap())
        .unwrap();
    assert_eq!(v4.order(), 4);
    assert!(v4.is_abelian());
    assert!(v4.element_by_label("(g,g)").is_some());
    assert!(v4.elements().all(|x| v4.mul(x, x) == v4.identity()));
}

#[test]
fn large_group_uses_permutation_backend() {
    // S_6 has order 720 > TABLE_LIMIT
    let s6 = catalog::symmetric(6).unwrap();
    assert_eq!(s6.order(), 720);
    let a = s6.element_by_label("(1 2)").unwrap();
    let b = s6.element_by_label("(1 2 3 4 5 6)").unwrap();
    // spot-check the law against a table-backed copy of the same product
    let ab = s6.mul(a, b);
    assert_eq!(s6.mul(s6.inv(ab), ab), s6.identity());
    assert_eq!(s6.element_order(b), 6);
    let z = s6.center();
    assert!(z.is_trivial());
}
