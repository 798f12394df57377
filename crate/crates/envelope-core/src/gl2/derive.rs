//! Ordinal-indexed chain derivation over [`SubgroupShape`] predicates.
//!
//! The successor branch is [`centralizer_step`]; the limit branch is taken
//! literally but symbolically: the union of an ascending run of shapes that
//! differ only by a strictly growing `ratio^(2^j) = 1` bound is the shape
//! with a dyadic-ratio constraint. That extrapolation is sound once the
//! index has passed every bound occurring in the fixed ambient and target
//! shapes: beyond that point the step map acts uniformly in `j`, which the
//! driver enforces before accepting a progression.

use alloc::string::String;
use alloc::vec::Vec;

use super::elem::MonomialElem;
use super::shape::{centralizer_step, MemberRule, RatioCond, SubgroupShape};
use super::Gl2Error;
use crate::chains::ChainDirection;
use crate::ordinal::SmallOrdinal;

/// Hard ceiling on successor steps inside one limit segment.
const SEGMENT_STEP_CAP: u32 = 64;

/// Largest ordinal the case-study operations accept.
pub fn index_cap() -> SmallOrdinal {
    SmallOrdinal::omega_plus(2)
}

/// The named subgroups of the case study.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PredName {
    /// The designated hypercentral subgroup (torsion entries, swap included).
    HInf,
    /// Its printed-generator reading: torsion diagonals only.
    HInfPrinted,
    Diag,
    Monomial,
    Scalars,
    ClaimedE(SmallOrdinal),
    DerivedC(SmallOrdinal),
    DerivedE(SmallOrdinal),
    DerivedZ(SmallOrdinal),
}

impl core::fmt::Display for PredName {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            PredName::HInf => write!(f, "H"),
            PredName::HInfPrinted => write!(f, "H_printed"),
            PredName::Diag => write!(f, "Diag"),
            PredName::Monomial => write!(f, "Monomial"),
            PredName::Scalars => write!(f, "Scalars"),
            PredName::ClaimedE(a) => write!(f, "claimed E({a})"),
            PredName::DerivedC(a) => write!(f, "C({a})"),
            PredName::DerivedE(a) => write!(f, "E({a})"),
            PredName::DerivedZ(a) => write!(f, "Z({a})"),
        }
    }
}

/// A named decidable membership predicate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedSubgroupPredicate {
    pub name: PredName,
    pub shape: SubgroupShape,
}

impl NamedSubgroupPredicate {
    pub fn contains(&self, x: &MonomialElem) -> bool {
        self.shape.contains(x)
    }
}

/// An ordinal-indexed run of shapes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeChain {
    pub direction: ChainDirection,
    pub terms: Vec<(SmallOrdinal, SubgroupShape)>,
    pub stabilization: Option<SmallOrdinal>,
}

impl ShapeChain {
    pub fn term_at(&self, index: SmallOrdinal) -> Option<&SubgroupShape> {
        if let Some((_, t)) = self.terms.iter().find(|(i, _)| *i == index) {
            return Some(t);
        }
        let below = self.terms.iter().rfind(|(i, _)| *i < index);
        let above = self.terms.iter().find(|(i, _)| *i > index);
        match (below, above) {
            // sandwiched between equal recorded values: forced by monotonicity
            (Some((_, lo)), Some((_, hi))) if lo == hi => Some(lo),
            (Some((i, t)), None)
                if self.direction == ChainDirection::Ascending
                    && self.stabilization.is_some_and(|s| *i >= s) =>
            {
                Some(t)
            }
            _ => None,
        }
    }

    fn last(&self) -> &SubgroupShape {
        &self.terms.last().expect("chains are never empty").1
    }

    fn recompute_stabilization(&mut self) {
        let last = *self.last();
        let mut s = None;
        for (i, t) in self.terms.iter().rev() {
            if *t == last {
                s = Some(*i);
            } else {
                break;
            }
        }
        // stabilization needs a recorded repetition
        if s == self.terms.last().map(|(i, _)| *i) {
            s = None;
        }
        self.stabilization = s;
    }
}

/// Iterated centralizer chain of `target` inside `ambient`, as shapes.
pub fn iterated_centralizer_shape_chain(
    ambient: &SubgroupShape,
    target: &SubgroupShape,
    max: SmallOrdinal,
) -> Result<ShapeChain, Gl2Error> {
    drive(
        ChainDirection::Ascending,
        SubgroupShape::trivial(),
        max,
        uniformity_bound(&[ambient, target]),
        |recorded| {
            let prev = &recorded.last().expect("non-empty").1;
            let earlier: Vec<SubgroupShape> = recorded.iter().map(|(_, s)| *s).collect();
            // the step is a function of the previous terms alone, so a
            // repetition repeats forever
            (centralizer_step(ambient, target, prev, &earlier), true)
        },
    )
}

/// Upper central series of `ambient`: the iterated centralizer of the
/// ambient in itself.
pub fn upper_central_shape_chain(
    ambient: &SubgroupShape,
    max: SmallOrdinal,
) -> Result<ShapeChain, Gl2Error> {
    iterated_centralizer_shape_chain(ambient, ambient, max)
}

/// Envelope chain of the designated subgroup inside the full monomial
/// group: successors by the envelope step inside the previous term, limits
/// by intersection.
pub fn envelope_shape_chain(
    target: &SubgroupShape,
    max: SmallOrdinal,
) -> Result<ShapeChain, Gl2Error> {
    let ambient = SubgroupShape::ambient();
    drive(
        ChainDirection::Descending,
        ambient,
        max,
        uniformity_bound(&[target]),
        |recorded| {
            let (idx, prev) = recorded.last().expect("non-empty");
            let next_idx = idx.successor();
            let c_chain = iterated_centralizer_shape_chain(prev, target, next_idx)
                .expect("inner chain within the same cap");
            let c_alpha = *c_chain
                .term_at(next_idx)
                .expect("computed through the index");
            let c_prev = *c_chain
                .term_at(next_idx.predecessor().expect("successor index"))
                .expect("computed through the predecessor");
            // the step depends on the index through the inner chain, so a
            // stall is only known permanent once that chain has stabilized;
            // otherwise the driver waits for a second stall in the uniform
            // regime, where the step map is shift-invariant
            let permanent_if_stalled = c_chain.stabilization.is_some_and(|s| s < next_idx);
            (
                centralizer_step(prev, &c_alpha, &c_prev, &[]),
                permanent_if_stalled,
            )
        },
    )
}

/// Exact membership predicate for the iterated centralizer `C^alpha` of the
/// designated subgroup in the full monomial group, `alpha <= w+2`.
pub fn derived_iterated_centralizer(
    alpha: SmallOrdinal,
) -> Result<NamedSubgroupPredicate, Gl2Error> {
    check_cap(alpha)?;
    let chain = iterated_centralizer_shape_chain(
        &SubgroupShape::ambient(),
        &SubgroupShape::torsion_monomial(),
        alpha,
    )?;
    Ok(NamedSubgroupPredicate {
        name: PredName::DerivedC(alpha),
        shape: *chain.term_at(alpha).expect("computed through alpha"),
    })
}

/// Exact membership predicate for the envelope `E_alpha` of the designated
/// subgroup in the full monomial group, `alpha <= w+2`.
pub fn derived_envelope(alpha: SmallOrdinal) -> Result<NamedSubgroupPredicate, Gl2Error> {
    check_cap(alpha)?;
    let chain = envelope_shape_chain(&SubgroupShape::torsion_monomial(), alpha)?;
    Ok(NamedSubgroupPredicate {
        name: PredName::DerivedE(alpha),
        shape: *chain.term_at(alpha).expect("computed through alpha"),
    })
}

/// Least index at which `x` appears in the iterated centralizer chain of
/// `target` inside `ambient`, scanning finite levels literally.
pub fn first_entry_index(
    ambient: &SubgroupShape,
    target: &SubgroupShape,
    x: &MonomialElem,
    cap: u32,
) -> Option<SmallOrdinal> {
    let mut terms = alloc::vec![(SmallOrdinal::ZERO, SubgroupShape::trivial())];
    if terms[0].1.contains(x) {
        return Some(SmallOrdinal::ZERO);
    }
    for k in 1..=cap {
        let prev = terms.last().expect("non-empty").1;
        let earlier: Vec<SubgroupShape> = terms.iter().map(|(_, s)| *s).collect();
        let next = centralizer_step(ambient, target, &prev, &earlier);
        if next.contains(x) {
            return Some(SmallOrdinal::finite(k));
        }
        terms.push((SmallOrdinal::finite(k), next));
    }
    None
}

fn check_cap(alpha: SmallOrdinal) -> Result<(), Gl2Error> {
    if alpha > index_cap() {
        return Err(Gl2Error::IndexOutOfRange(alpha));
    }
    Ok(())
}

/// Largest `ratio^(2^j) = 1` bound appearing in the fixed shapes;
/// progressions are only trusted beyond it.
fn uniformity_bound(shapes: &[&SubgroupShape]) -> u32 {
    shapes
        .iter()
        .flat_map(|s| [Some(&s.diag), s.swap.as_ref()])
        .flatten()
        .map(|r| match r.ratio {
            RatioCond::OrderDiv(j) => j,
            _ => 0,
        })
        .max()
        .unwrap_or(0)
}

fn drive(
    direction: ChainDirection,
    base: SubgroupShape,
    max: SmallOrdinal,
    uniformity: u32,
    mut successor: impl FnMut(&[(SmallOrdinal, SubgroupShape)]) -> (SubgroupShape, bool),
) -> Result<ShapeChain, Gl2Error> {
    let mut recorded: Vec<(SmallOrdinal, SubgroupShape)> = alloc::vec![(SmallOrdinal::ZERO, base)];

    'segments: for coeff in 0..=max.omega_coeff() {
        if coeff > 0 {
            let limit = SmallOrdinal::new(coeff, 0).expect("within cap");
            let value = symbolic_limit(direction, &recorded)?;
            recorded.push((limit, value));
        }
        let literal_target = (coeff == max.omega_coeff()).then_some(max.finite_part());
        let mut k = 0u32;
        loop {
            k += 1;
            if literal_target.is_some_and(|t| k > t) {
                continue 'segments;
            }
            if k > SEGMENT_STEP_CAP {
                return Err(Gl2Error::LimitNotRecognized(String::from(
                    "no repetition or recognized progression within the step cap",
                )));
            }
            let idx = SmallOrdinal::new(coeff, k).expect("within cap");
            let (term, permanent_if_stalled) = successor(&recorded);
            let n = recorded.len();
            let repeated = term == recorded[n - 1].1;
            let double_stall = repeated && n >= 2 && recorded[n - 1].1 == recorded[n - 2].1;
            recorded.push((idx, term));
            if literal_target.is_some() {
                continue;
            }
            let stall_settled =
                repeated && (permanent_if_stalled || (double_stall && k >= uniformity + 3));
            if stall_settled
                || (direction == ChainDirection::Ascending
                    && progression(&recorded, uniformity).is_some())
            {
                continue 'segments;
            }
        }
    }

    let mut chain = ShapeChain {
        direction,
        terms: recorded,
        stabilization: None,
    };
    chain.recompute_stabilization();
    Ok(chain)
}

/// The value of the limit branch over everything recorded so far.
///
/// Ascending: the union, either a stalled chain's final value or the
/// dyadic-ratio closure of a recognized progression. Descending: the
/// intersection, which for a stalled chain is its final value.
fn symbolic_limit(
    direction: ChainDirection,
    recorded: &[(SmallOrdinal, SubgroupShape)],
) -> Result<SubgroupShape, Gl2Error> {
    let n = recorded.len();
    if n >= 2 && recorded[n - 1].1 == recorded[n - 2].1 {
        return Ok(recorded[n - 1].1);
    }
    match direction {
        ChainDirection::Ascending => {
            if let Some(limit) = progression(recorded, 0) {
                return Ok(limit);
            }
            Err(Gl2Error::LimitNotRecognized(String::from(
                "ascending run neither stalls nor progresses",
            )))
        }
        ChainDirection::Descending => {
            // a finite stall is the only descending pattern arising here;
            // fold the intersection for good measure
            let mut iter = recorded.iter().map(|(_, s)| s);
            let first = *iter.next().expect("non-empty");
            let meet = iter.fold(first, |acc, s| acc.intersect(s));
            if meet == recorded[n - 1].1 {
                Ok(meet)
            } else {
                Err(Gl2Error::LimitNotRecognized(String::from(
                    "descending run does not stall",
                )))
            }
        }
    }
}

/// Recognizes three trailing terms that agree except for a strictly
/// arithmetic `OrderDiv` progression on both member rules, with the index
/// already past `uniformity`; returns the union of the full ladder.
fn progression(
    recorded: &[(SmallOrdinal, SubgroupShape)],
    uniformity: u32,
) -> Option<SubgroupShape> {
    let n = recorded.len();
    if n < 3 {
        return None;
    }
    let (s1, s2, s3) = (&recorded[n - 3].1, &recorded[n - 2].1, &recorded[n - 1].1);
    let diag = rule_progression_limit(&s1.diag, &s2.diag, &s3.diag, uniformity)?;
    let swap = match (&s1.swap, &s2.swap, &s3.swap) {
        (None, None, None) => None,
        (Some(a), Some(b), Some(c)) => Some(rule_progression_limit(a, b, c, uniformity)?),
        _ => return None,
    };
    Some(SubgroupShape::new(diag, swap))
}

fn rule_progression_limit(
    a: &MemberRule,
    b: &MemberRule,
    c: &MemberRule,
    uniformity: u32,
) -> Option<MemberRule> {
    if a.entries != b.entries || b.entries != c.entries {
        return None;
    }
    if a == b && b == c {
        return Some(*c);
    }
    match (a.ratio, b.ratio, c.ratio) {
        (RatioCond::OrderDiv(i), RatioCond::OrderDiv(j), RatioCond::OrderDiv(k))
            if j > i && k - j == j - i && i > uniformity =>
        {
            Some(MemberRule {
                entries: c.entries,
                ratio: RatioCond::Torsion,
            })
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl2::scalar::{DyadicRoot, SymScalar};
    use crate::gl2::shape::EntriesCond;
    use crate::rng::DetRng;

    fn w() -> SmallOrdinal {
        SmallOrdinal::OMEGA
    }

    fn wp(n: u32) -> SmallOrdinal {
        SmallOrdinal::omega_plus(n)
    }

    #[test]
    fn base_cases_collapse_as_expected() {
        // C^0 = 1
        let c0 = derived_iterated_centralizer(SmallOrdinal::ZERO).unwrap();
        assert_eq!(c0.shape, SubgroupShape::trivial());
        // C^1 = the scalar matrices
        let c1 = derived_iterated_centralizer(SmallOrdinal::finite(1)).unwrap();
        assert_eq!(c1.shape, SubgroupShape::scalars());
        // E_0 = the ambient group
        let e0 = derived_envelope(SmallOrdinal::ZERO).unwrap();
        assert_eq!(e0.shape, SubgroupShape::ambient());
    }

    #[test]
    fn finite_centralizer_ladder_bounds_the_ratio_order() {
        for k in 1..6u32 {
            let ck = derived_iterated_centralizer(SmallOrdinal::finite(k)).unwrap();
            assert_eq!(
                ck.shape,
                SubgroupShape::new(
                    MemberRule {
                        entries: EntriesCond::Any,
                        ratio: RatioCond::OrderDiv(k - 1)
                    },
                    None
                ),
                "k = {k}"
            );
        }
    }

    #[test]
    fn limit_and_beyond_match_the_worked_example() {
        // C^w: diagonal with dyadic ratio
        let cw = derived_iterated_centralizer(w()).unwrap();
        assert_eq!(
            cw.shape,
            SubgroupShape::new(
                MemberRule {
                    entries: EntriesCond::Any,
                    ratio: RatioCond::Torsion
                },
                None
            )
        );
        // C^(w+1): the swap part appears
        let cw1 = derived_iterated_centralizer(wp(1)).unwrap();
        assert_eq!(cw1.shape, SubgroupShape::dyadic_ratio_monomial());
        // C^(w+2) = C^(w+1): the chain stabilizes
        let cw2 = derived_iterated_centralizer(wp(2)).unwrap();
        assert_eq!(cw2.shape, cw1.shape);
    }

    #[test]
    fn envelope_values_match_the_worked_example() {
        for alpha in [
            SmallOrdinal::finite(1),
            SmallOrdinal::finite(2),
            SmallOrdinal::finite(3),
            w(),
        ] {
            let e = derived_envelope(alpha).unwrap();
            assert_eq!(e.shape, SubgroupShape::ambient(), "alpha = {alpha}");
        }
        let ew1 = derived_envelope(wp(1)).unwrap();
        assert_eq!(ew1.shape, SubgroupShape::dyadic_ratio_monomial());
        let ew2 = derived_envelope(wp(2)).unwrap();
        assert_eq!(ew2.shape, ew1.shape);
    }

    #[test]
    fn printed_reading_gives_the_diagonal_envelope() {
        let chain =
            envelope_shape_chain(&SubgroupShape::torsion_diagonal(), SmallOrdinal::finite(2))
                .unwrap();
        assert_eq!(
            chain.term_at(SmallOrdinal::finite(1)).unwrap(),
            &SubgroupShape::diagonal_group()
        );
    }

    #[test]
    fn index_cap_is_enforced() {
        let too_far = SmallOrdinal::omega_plus(3);
        assert!(matches!(
            derived_iterated_centralizer(too_far),
            Err(Gl2Error::IndexOutOfRange(_))
        ));
        assert!(matches!(
            derived_envelope(too_far),
            Err(Gl2Error::IndexOutOfRange(_))
        ));
    }

    #[test]
    fn upper_central_series_of_the_stable_envelope_reaches_it_at_w_plus_1() {
        let e = SubgroupShape::dyadic_ratio_monomial();
        let chain = upper_central_shape_chain(&e, wp(1)).unwrap();
        // Z_1 = scalars, finite terms climb the ratio ladder
        assert_eq!(
            chain.term_at(SmallOrdinal::finite(1)).unwrap(),
            &SubgroupShape::scalars()
        );
        let zw = chain.term_at(w()).unwrap();
        assert_eq!(
            zw,
            &SubgroupShape::new(
                MemberRule {
                    entries: EntriesCond::Any,
                    ratio: RatioCond::Torsion
                },
                None
            )
        );
        // Z_(w+1) = the whole subgroup: hypercentral of degree w+1
        assert_eq!(chain.term_at(wp(1)).unwrap(), &e);
    }

    #[test]
    fn ambient_group_is_not_hypercentral() {
        let m = SubgroupShape::ambient();
        let chain = upper_central_shape_chain(&m, wp(2)).unwrap();
        let zw = chain.term_at(w()).unwrap();
        assert_eq!(chain.term_at(wp(1)).unwrap(), zw);
        assert_eq!(chain.term_at(wp(2)).unwrap(), zw);
        assert_ne!(zw, &m);
    }

    #[test]
    fn first_entry_levels_are_finite_successors_matching_ratio_order() {
        let ambient = SubgroupShape::ambient();
        let target = SubgroupShape::torsion_monomial();
        for depth in 0..6u32 {
            let x = MonomialElem::diagonal(
                SymScalar::root_only(3, DyadicRoot::primitive(depth)),
                SymScalar::one(3),
            )
            .unwrap();
            let idx = first_entry_index(&ambient, &target, &x, 32).unwrap();
            let expected = if depth == 0 {
                SmallOrdinal::ZERO // the identity sits in the base term
            } else {
                SmallOrdinal::finite(depth + 1)
            };
            assert_eq!(idx, expected);
        }
    }

    #[test]
    fn sampled_members_of_the_limit_enter_at_finite_successors() {
        let ambient = SubgroupShape::ambient();
        let target = SubgroupShape::torsion_monomial();
        let cw = derived_iterated_centralizer(w()).unwrap();
        let mut rng = DetRng::seed_from_u64(11);
        for _ in 0..200 {
            let x = cw.shape.sample(3, &mut rng);
            let idx = first_entry_index(&ambient, &target, &x, 32).expect("member of the union");
            assert!(idx.is_successor() || x.is_identity());
        }
    }
}
