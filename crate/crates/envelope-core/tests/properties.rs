//! Property tests for the algebraic invariants: closure-operator laws,
//! centralizer identities, chain monotonicity, ordinal arithmetic, and the
//! exact symbolic arithmetic of the case study.

use std::sync::OnceLock;

use proptest::prelude::*;

use envelope_core::gl2::{DyadicRoot, MonomialElem, SubgroupShape, SymScalar};
use envelope_core::harness::{check_hypercenter_ascent, CheckConfig, Pair, Verdict};
use envelope_core::rng::DetRng;
use envelope_core::{
    catalog, envelope_chain, iterated_centralizer_chain, FiniteGroup, SmallOrdinal,
};

fn corpus() -> &'static Vec<FiniteGroup> {
    static CORPUS: OnceLock<Vec<FiniteGroup>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        vec![
            catalog::cyclic(12).unwrap(),
            catalog::symmetric(4).unwrap(),
            catalog::dihedral(16).unwrap(),
            catalog::generalized_quaternion(16).unwrap(),
            catalog::heisenberg(3).unwrap(),
            catalog::alternating(5).unwrap(),
        ]
    })
}

fn group_and_elements(
    max_elems: usize,
) -> impl Strategy<Value = (usize, Vec<prop::sample::Index>)> {
    (
        0..corpus().len(),
        prop::collection::vec(any::<prop::sample::Index>(), 0..=max_elems),
    )
}

fn pick(g: &FiniteGroup, indices: &[prop::sample::Index]) -> Vec<usize> {
    indices.iter().map(|i| i.index(g.order())).collect()
}

proptest! {
    #[test]
    fn generated_subgroup_is_a_closure_operator(
        (gi, seed) in group_and_elements(4),
        extra in any::<prop::sample::Index>(),
    ) {
        let g = &corpus()[gi];
        let seed = pick(g, &seed);
        let span = g.generated_subgroup(&seed).unwrap();
        // extensive
        prop_assert!(seed.iter().all(|&s| span.contains(s)));
        // idempotent
        let again = g.generated_subgroup(&span.member_vec()).unwrap();
        prop_assert_eq!(&again, &span);
        // monotone: adding a generator only grows the subgroup
        let mut bigger_seed = seed.clone();
        bigger_seed.push(extra.index(g.order()));
        let bigger = g.generated_subgroup(&bigger_seed).unwrap();
        prop_assert!(span.is_subset_of(&bigger));
    }

    #[test]
    fn centralizer_is_the_meet_of_pointwise_centralizers(
        (gi, set) in group_and_elements(6),
    ) {
        let g = &corpus()[gi];
        let set = pick(g, &set);
        let joint = g.centralizer(&set);
        let meet = set.iter().fold(g.full_subgroup(), |acc, &s| {
            acc.intersect(&g.centralizer(&[s]))
        });
        prop_assert_eq!(joint, meet);
    }

    #[test]
    fn double_centralizer_laws_hold_for_arbitrary_subsets(
        (gi, set) in group_and_elements(5),
    ) {
        let g = &corpus()[gi];
        let set = pick(g, &set);
        let c = g.centralizer(&set);
        let cc = g.centralizer(&c.member_vec());
        // S is contained in its double centralizer
        prop_assert!(set.iter().all(|&s| cc.contains(s)));
        // C(C(C(S))) = C(S)
        let ccc = g.centralizer(&cc.member_vec());
        prop_assert_eq!(ccc, c);
    }

    #[test]
    fn double_centralizer_of_an_abelian_subgroup_is_abelian(
        (gi, seed) in group_and_elements(3),
    ) {
        let g = &corpus()[gi];
        let h = g.generated_subgroup(&pick(g, &seed)).unwrap();
        prop_assume!(h.is_abelian_subgroup());
        let cc = g.centralizer(&g.centralizer(&h.member_vec()).member_vec());
        prop_assert!(cc.is_abelian_subgroup());
    }

    #[test]
    fn normalizer_contains_centralizer_contains_center(
        (gi, seed) in group_and_elements(3),
    ) {
        let g = &corpus()[gi];
        let h = g.generated_subgroup(&pick(g, &seed)).unwrap();
        let n = g.normalizer(&h);
        let c = g.centralizer(&h.member_vec());
        let z = g.center();
        prop_assert!(c.is_subset_of(&n));
        prop_assert!(z.is_subset_of(&c));
        prop_assert!(h.is_subset_of(&n));
    }

    #[test]
    fn chain_monotonicity_and_first_entries(
        (gi, seed) in group_and_elements(2),
    ) {
        let g = &corpus()[gi];
        let h = g.generated_subgroup(&pick(g, &seed)).unwrap();

        let env = envelope_chain(g, &h, SmallOrdinal::omega_plus(1)).unwrap();
        let terms: Vec<_> = env.terms().values().collect();
        for w in terms.windows(2) {
            prop_assert!(w[1].is_subset_of(w[0]));
        }
        prop_assert!(terms.iter().all(|t| h.is_subset_of(t)));

        let icc = iterated_centralizer_chain(g, &h, SmallOrdinal::omega_plus(1)).unwrap();
        let terms: Vec<_> = icc.terms().values().collect();
        for w in terms.windows(2) {
            prop_assert!(w[0].is_subset_of(w[1]));
        }
        for (&elem, &idx) in icc.first_entry().unwrap() {
            prop_assert!(idx.is_successor());
            prop_assert!(icc.term_at(idx).unwrap().contains(elem));
        }
    }

    #[test]
    fn hypercenters_of_envelopes_ascend(
        (gi, seed) in group_and_elements(2),
    ) {
        let g = &corpus()[gi];
        let h = g.generated_subgroup(&pick(g, &seed)).unwrap();
        let pair = Pair::new(g, "corpus", h);
        let report = check_hypercenter_ascent(&pair, &CheckConfig::default());
        prop_assert_eq!(report.verdict, Verdict::Pass);
    }

    #[test]
    fn ordinal_order_is_lexicographic_and_literals_round_trip(
        a in 0u32..=3, b in 0u32..2000, c in 0u32..=3, d in 0u32..2000,
    ) {
        let x = SmallOrdinal::new(a, b).unwrap();
        let y = SmallOrdinal::new(c, d).unwrap();
        prop_assert_eq!(x < y, (a, b) < (c, d));
        let text = x.to_string();
        let parsed: SmallOrdinal = text.parse().unwrap();
        prop_assert_eq!(parsed, x);
        // successor/predecessor are inverse on successors
        prop_assert_eq!(x.successor().predecessor().unwrap(), x);
    }

    #[test]
    fn dyadic_roots_form_a_group_of_two_power_order(
        n1 in 0u64..1024, d1 in 0u32..=10,
        n2 in 0u64..1024, d2 in 0u32..=10,
    ) {
        let a = DyadicRoot::new(n1, d1);
        let b = DyadicRoot::new(n2, d2);
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.mul(&a.inv()).is_one());
        let order = a.order();
        prop_assert!(order.is_power_of_two());
        prop_assert!(a.pow(order as i64).is_one());
    }

    #[test]
    fn monomial_elements_satisfy_the_group_laws(seed in any::<u64>()) {
        let mut rng = DetRng::seed_from_u64(seed);
        let ambient = SubgroupShape::ambient();
        let x = ambient.sample(3, &mut rng);
        let y = ambient.sample(3, &mut rng);
        let z = ambient.sample(3, &mut rng);
        let lhs = x.mul(&y).unwrap().mul(&z).unwrap();
        let rhs = x.mul(&y.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(x.mul(&x.inv()).unwrap().is_identity());
        // commutators are always diagonal, and [x, y]^-1 = [y, x]
        let c = x.commutator(&y).unwrap();
        prop_assert!(c.is_diagonal());
        prop_assert_eq!(c.inv(), y.commutator(&x).unwrap());
    }

    #[test]
    fn scalar_arithmetic_is_exact(
        e1 in -5i64..=5, e2 in -5i64..=5, d in 0u32..=6, k in -8i64..=8,
    ) {
        let t = SymScalar::new(vec![e1, e2], DyadicRoot::primitive(d));
        prop_assert_eq!(t.pow(0), SymScalar::one(2));
        let square = t.mul(&t).unwrap();
        prop_assert_eq!(&square, &t.pow(2));
        prop_assert_eq!(t.pow(k).mul(&t.pow(-k)).unwrap(), SymScalar::one(2));
    }
}

#[test]
fn swap_conjugation_inverts_ratios() {
    let mut rng = DetRng::seed_from_u64(3);
    let swap = MonomialElem::swap_matrix(3);
    for _ in 0..100 {
        let d = SubgroupShape::diagonal_group().sample(3, &mut rng);
        let conj = d.conjugate_by(&swap).unwrap();
        assert_eq!(conj.ratio(), d.ratio().inv());
    }
}
