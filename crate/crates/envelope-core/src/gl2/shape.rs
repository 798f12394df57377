//! A closed algebra of subgroup predicates on the monomial group.
//!
//! Every subgroup arising in the chains here is cut out by independent
//! constraints on the entries and on the entry ratio `a/b`, separately for
//! diagonal and antidiagonal members. Commutators in the monomial group are
//! always diagonal and depend only on entry ratios, so the successor-step
//! conditions (commutator containment and normalizer membership, with their
//! universal quantifiers over an infinite subgroup) reduce to exact,
//! decidable constraints in the same family. [`centralizer_step`] is that
//! reduction; the sampling oracle in the audit cross-validates it.

use alloc::format;
use alloc::string::String;
use core::fmt;

use super::elem::MonomialElem;
use super::scalar::{DyadicRoot, SymScalar};
use crate::rng::DetRng;

/// Constraint on a single entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntriesCond {
    /// The entry is 1.
    One,
    /// The entry is a dyadic root of unity (no transcendental part).
    Torsion,
    /// No constraint.
    Any,
}

/// Constraint on the entry ratio `a/b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RatioCond {
    /// `(a/b)^(2^j) = 1`; `OrderDiv(0)` means `a = b`.
    OrderDiv(u32),
    /// `a/b` is a dyadic root of unity.
    Torsion,
    /// No constraint.
    Any,
}

impl EntriesCond {
    fn accepts(&self, s: &SymScalar) -> bool {
        match self {
            EntriesCond::One => s.is_one(),
            EntriesCond::Torsion => s.is_torsion(),
            EntriesCond::Any => true,
        }
    }

    fn le(&self, other: &EntriesCond) -> bool {
        use EntriesCond::*;
        matches!(
            (self, other),
            (One, _) | (Torsion, Torsion | Any) | (Any, Any)
        )
    }

    fn meet(&self, other: &EntriesCond) -> EntriesCond {
        if self.le(other) {
            *self
        } else {
            debug_assert!(other.le(self));
            *other
        }
    }
}

impl RatioCond {
    pub fn accepts(&self, s: &SymScalar) -> bool {
        match self {
            RatioCond::OrderDiv(j) => s.is_torsion() && s.root().log2_order() <= *j,
            RatioCond::Torsion => s.is_torsion(),
            RatioCond::Any => true,
        }
    }

    fn le(&self, other: &RatioCond) -> bool {
        use RatioCond::*;
        match (self, other) {
            (OrderDiv(i), OrderDiv(j)) => i <= j,
            (OrderDiv(_), _) => true,
            (Torsion, Torsion | Any) => true,
            (Any, Any) => true,
            _ => false,
        }
    }

    fn meet(&self, other: &RatioCond) -> RatioCond {
        if self.le(other) {
            *self
        } else {
            debug_assert!(other.le(self));
            *other
        }
    }
}

/// Entry and ratio constraints for one kind of member (diagonal or swap).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MemberRule {
    pub entries: EntriesCond,
    pub ratio: RatioCond,
}

impl MemberRule {
    pub const FREE: MemberRule = MemberRule {
        entries: EntriesCond::Any,
        ratio: RatioCond::Any,
    };

    fn canonical(mut self) -> MemberRule {
        match self.entries {
            // both entries 1 forces ratio 1
            EntriesCond::One => self.ratio = RatioCond::OrderDiv(0),
            // torsion entries make "torsion ratio" redundant
            EntriesCond::Torsion => {
                if self.ratio == RatioCond::Torsion {
                    self.ratio = RatioCond::Any;
                }
            }
            EntriesCond::Any => {}
        }
        self
    }

    fn accepts(&self, a: &SymScalar, b: &SymScalar) -> bool {
        self.entries.accepts(a)
            && self.entries.accepts(b)
            && self.ratio.accepts(&a.div(b).expect("entries share arity"))
    }

    /// The exact set of ratios realized by accepted pairs.
    fn ratio_range(&self) -> RatioCond {
        let implied = match self.entries {
            EntriesCond::One => RatioCond::OrderDiv(0),
            EntriesCond::Torsion => RatioCond::Torsion,
            EntriesCond::Any => RatioCond::Any,
        };
        self.ratio.meet(&implied)
    }

    fn le(&self, other: &MemberRule) -> bool {
        self.entries.le(&other.entries) && self.ratio_range().le(&other.ratio_range())
    }

    fn meet(&self, other: &MemberRule) -> MemberRule {
        MemberRule {
            entries: self.entries.meet(&other.entries),
            ratio: self.ratio.meet(&other.ratio),
        }
        .canonical()
    }
}

/// A decidable subgroup predicate: a rule for diagonal members and,
/// optionally, a rule for antidiagonal (swap) members.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubgroupShape {
    pub diag: MemberRule,
    pub swap: Option<MemberRule>,
}

impl SubgroupShape {
    pub fn new(diag: MemberRule, swap: Option<MemberRule>) -> Self {
        SubgroupShape {
            diag: diag.canonical(),
            swap: swap.map(MemberRule::canonical),
        }
    }

    /// The trivial subgroup.
    pub fn trivial() -> Self {
        SubgroupShape::new(
            MemberRule {
                entries: EntriesCond::One,
                ratio: RatioCond::OrderDiv(0),
            },
            None,
        )
    }

    /// The whole monomial group.
    pub fn ambient() -> Self {
        SubgroupShape::new(MemberRule::FREE, Some(MemberRule::FREE))
    }

    /// All diagonal matrices.
    pub fn diagonal_group() -> Self {
        SubgroupShape::new(MemberRule::FREE, None)
    }

    /// Scalar matrices `diag(a, a)`.
    pub fn scalars() -> Self {
        SubgroupShape::new(
            MemberRule {
                entries: EntriesCond::Any,
                ratio: RatioCond::OrderDiv(0),
            },
            None,
        )
    }

    /// The designated subgroup: torsion entries, swap included.
    pub fn torsion_monomial() -> Self {
        let rule = MemberRule {
            entries: EntriesCond::Torsion,
            ratio: RatioCond::Any,
        };
        SubgroupShape::new(rule, Some(rule))
    }

    /// The printed-generator reading of the designated subgroup: torsion
    /// diagonals only.
    pub fn torsion_diagonal() -> Self {
        SubgroupShape::new(
            MemberRule {
                entries: EntriesCond::Torsion,
                ratio: RatioCond::Any,
            },
            None,
        )
    }

    /// Any entries, dyadic entry ratio, swap included.
    pub fn dyadic_ratio_monomial() -> Self {
        let rule = MemberRule {
            entries: EntriesCond::Any,
            ratio: RatioCond::Torsion,
        };
        SubgroupShape::new(rule, Some(rule))
    }

    pub fn contains(&self, x: &MonomialElem) -> bool {
        let rule = if x.is_swap() {
            match &self.swap {
                Some(r) => r,
                None => return false,
            }
        } else {
            &self.diag
        };
        rule.accepts(x.entry_a(), x.entry_b())
    }

    pub fn is_subset_of(&self, other: &SubgroupShape) -> bool {
        let diag_ok = self.diag.le(&other.diag);
        let swap_ok = match (&self.swap, &other.swap) {
            (None, _) => true,
            (Some(a), Some(b)) => a.le(b),
            (Some(_), None) => false,
        };
        diag_ok && swap_ok
    }

    pub fn intersect(&self, other: &SubgroupShape) -> SubgroupShape {
        let swap = match (&self.swap, &other.swap) {
            (Some(a), Some(b)) => Some(a.meet(b)),
            _ => None,
        };
        SubgroupShape::new(self.diag.meet(&other.diag), swap)
    }

    /// Draws a member: entries per the rule (exponents uniform in
    /// `[-3, 3]`, dyadic depth uniform in `[0, 6]`), the second entry set
    /// through a ratio drawn from the ratio constraint.
    pub fn sample(&self, arity: usize, rng: &mut DetRng) -> MonomialElem {
        let use_swap = match &self.swap {
            Some(_) => rng.coin(),
            None => false,
        };
        let rule = if use_swap {
            self.swap.as_ref().unwrap()
        } else {
            &self.diag
        };

        let a = sample_entry(rule.entries, arity, rng);
        let b = match rule.ratio {
            RatioCond::Any => sample_entry(rule.entries, arity, rng),
            cond => {
                let ratio = sample_ratio(cond, arity, rng);
                a.div(&ratio).expect("same arity")
            }
        };
        let elem = if use_swap {
            MonomialElem::antidiagonal(a, b).expect("same arity")
        } else {
            MonomialElem::diagonal(a, b).expect("same arity")
        };
        debug_assert!(self.contains(&elem));
        elem
    }

    /// Short human-readable description.
    pub fn describe(&self) -> String {
        if *self == SubgroupShape::trivial() {
            return String::from("trivial subgroup {1}");
        }
        if *self == SubgroupShape::ambient() {
            return String::from("the whole monomial group");
        }
        let diag = describe_rule(&self.diag);
        match &self.swap {
            None => format!("diagonal only, {diag}"),
            Some(s) if *s == self.diag => format!("with swap part, {diag}"),
            Some(s) => format!("diagonal: {diag}; swap part: {}", describe_rule(s)),
        }
    }
}

impl fmt::Display for SubgroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

fn describe_rule(rule: &MemberRule) -> String {
    let entries = match rule.entries {
        EntriesCond::One => "unit entries",
        EntriesCond::Torsion => "dyadic-root entries",
        EntriesCond::Any => "free entries",
    };
    let ratio = match rule.ratio {
        RatioCond::OrderDiv(0) => String::from("equal entries"),
        RatioCond::OrderDiv(j) => format!("ratio^(2^{j}) = 1"),
        RatioCond::Torsion => String::from("dyadic ratio"),
        RatioCond::Any => String::from("free ratio"),
    };
    format!("{entries}, {ratio}")
}

fn sample_entry(cond: EntriesCond, arity: usize, rng: &mut DetRng) -> SymScalar {
    match cond {
        EntriesCond::One => SymScalar::one(arity),
        EntriesCond::Torsion => SymScalar::root_only(arity, sample_root(6, rng)),
        EntriesCond::Any => {
            let exponents = (0..arity).map(|_| rng.range_i64(-3, 3)).collect();
            SymScalar::new(exponents, sample_root(6, rng))
        }
    }
}

fn sample_ratio(cond: RatioCond, arity: usize, rng: &mut DetRng) -> SymScalar {
    match cond {
        RatioCond::OrderDiv(j) => {
            let depth = rng.range_u32(j.min(6) + 1);
            SymScalar::root_only(arity, sample_root_at_depth(depth, rng))
        }
        RatioCond::Torsion => SymScalar::root_only(arity, sample_root(6, rng)),
        RatioCond::Any => sample_entry(EntriesCond::Any, arity, rng),
    }
}

fn sample_root(max_depth: u32, rng: &mut DetRng) -> DyadicRoot {
    sample_root_at_depth(rng.range_u32(max_depth + 1), rng)
}

fn sample_root_at_depth(depth: u32, rng: &mut DetRng) -> DyadicRoot {
    if depth == 0 {
        return DyadicRoot::ONE;
    }
    // odd numerator: a primitive root of order 2^depth
    let num = rng.range_u32(1u32 << (depth - 1)) as u64 * 2 + 1;
    DyadicRoot::new(num, depth)
}

// ---------------------------------------------------------------------------
// The successor-step calculus
// ---------------------------------------------------------------------------

/// Does `rule` accept `(v, v^-1)` for every ratio `v` in `range`?
///
/// This decides the commutator conditions that do not involve the candidate:
/// `[x, diag(c, d)] = diag(v, v^-1)` with `v = c/d` for a swap candidate.
fn accepts_conjugate_pairs(rule: &MemberRule, range: &RatioCond) -> bool {
    let entries_ok = match rule.entries {
        EntriesCond::One => range.le(&RatioCond::OrderDiv(0)),
        EntriesCond::Torsion => range.le(&RatioCond::Torsion),
        EntriesCond::Any => true,
    };
    // the pair has ratio v^2: (v^2)^(2^i) = 1 iff v^(2^(i+1)) = 1
    let ratio_ok = match rule.ratio {
        RatioCond::OrderDiv(i) => range.le(&RatioCond::OrderDiv(i + 1)),
        RatioCond::Torsion => range.le(&RatioCond::Torsion),
        RatioCond::Any => true,
    };
    entries_ok && ratio_ok
}

/// The constraint on `w` under which `rule` accepts `(w*v, w^-1 * v^-1)`
/// for every `v` in `range`; `None` when no `w` works.
///
/// This decides the conditions that do involve the candidate's ratio:
/// commutators of a swap candidate with swap members, and the action of a
/// candidate on the swap part of a normalized term.
fn conjugate_pair_constraint(rule: &MemberRule, range: &RatioCond) -> Option<RatioCond> {
    let entries = match rule.entries {
        EntriesCond::One => {
            if range.le(&RatioCond::OrderDiv(0)) {
                RatioCond::OrderDiv(0)
            } else {
                return None;
            }
        }
        EntriesCond::Torsion => {
            if range.le(&RatioCond::Torsion) {
                RatioCond::Torsion
            } else {
                return None;
            }
        }
        EntriesCond::Any => RatioCond::Any,
    };
    // the pair has ratio w^2 v^2
    let ratio = match rule.ratio {
        RatioCond::OrderDiv(i) => {
            if range.le(&RatioCond::OrderDiv(i + 1)) {
                RatioCond::OrderDiv(i + 1)
            } else {
                return None;
            }
        }
        RatioCond::Torsion => {
            if range.le(&RatioCond::Torsion) {
                RatioCond::Torsion
            } else {
                return None;
            }
        }
        RatioCond::Any => RatioCond::Any,
    };
    Some(entries.meet(&ratio))
}

/// Constraint on a diagonal candidate's ratio for it to normalize `e`.
///
/// Conjugation by `diag(a, b)` fixes diagonal matrices and maps a swap
/// member `adiag(p, q)` to `adiag(p * s, q / s)` with `s = b/a`, so only the
/// swap part of `e` constrains the candidate.
fn normalized_by_diagonal(e: &SubgroupShape) -> RatioCond {
    conjugation_constraint(e.swap.as_ref())
}

/// Constraint on a swap candidate's ratio for it to normalize `e`.
///
/// Conjugation by `adiag(a, b)` maps `diag(p, q)` to `diag(q, p)` (every
/// rule here is symmetric in the ratio, so that part is free) and maps
/// `adiag(p, q)` to `adiag(q * u, p / u)` with `u = a/b`.
fn normalized_by_swap(e: &SubgroupShape) -> RatioCond {
    conjugation_constraint(e.swap.as_ref())
}

fn conjugation_constraint(swap_rule: Option<&MemberRule>) -> RatioCond {
    let Some(rule) = swap_rule else {
        return RatioCond::Any;
    };
    let entries = match rule.entries {
        EntriesCond::One => RatioCond::OrderDiv(0),
        EntriesCond::Torsion => RatioCond::Torsion,
        EntriesCond::Any => RatioCond::Any,
    };
    // image ratio is (p/q)^(+-1) * u^2 with p/q already satisfying the rule
    let ratio = match rule.ratio {
        RatioCond::OrderDiv(i) => RatioCond::OrderDiv(i + 1),
        RatioCond::Torsion => RatioCond::Torsion,
        RatioCond::Any => RatioCond::Any,
    };
    entries.meet(&ratio)
}

/// One successor step of the iterated-centralizer recursion, as shapes:
///
/// `{ x in ambient | x normalizes every term in earlier,
///    [x, target] inside prev }`.
///
/// With an empty `earlier` this is also the envelope successor step
/// `{ g in ambient | [g, c_alpha] inside c_prev }` for
/// `target = c_alpha`, `prev = c_prev`.
///
/// The universal quantifiers over `target` reduce to the ratio ranges of its
/// two member kinds: commutators in the monomial group are diagonal and
/// depend only on ratios ([`MonomialElem::commutator`] realizes exactly
/// `[diag x, adiag h] = diag(r^-1, r)`, `[adiag x, diag h] = diag(v, v^-1)`
/// and `[adiag x, adiag h] = diag(u/v, v/u)` for ratios `r, u` of `x` and
/// `v` of `h`).
pub fn centralizer_step(
    ambient: &SubgroupShape,
    target: &SubgroupShape,
    prev: &SubgroupShape,
    earlier: &[SubgroupShape],
) -> SubgroupShape {
    // Diagonal candidates: commutators with diagonal members vanish; a
    // commutator with any swap member is diag(r^-1, r), independent of the
    // member; conjugation constraints come from each earlier term.
    let mut diag_ratio = ambient.diag.ratio;
    for e in earlier {
        diag_ratio = diag_ratio.meet(&normalized_by_diagonal(e));
    }
    if target.swap.is_some() {
        let c = conjugate_pair_constraint(&prev.diag, &RatioCond::OrderDiv(0))
            .expect("a singleton range always admits w = 1");
        diag_ratio = diag_ratio.meet(&c);
    }
    let diag = MemberRule {
        entries: ambient.diag.entries,
        ratio: diag_ratio,
    };

    // Swap candidates exist when the ambient has them, commutators with the
    // target's diagonal range land in prev, and the remaining constraints
    // are satisfiable.
    let swap = ambient.swap.as_ref().and_then(|ambient_rule| {
        if !accepts_conjugate_pairs(&prev.diag, &target.diag.ratio_range()) {
            return None;
        }
        let mut ratio = ambient_rule.ratio;
        for e in earlier {
            ratio = ratio.meet(&normalized_by_swap(e));
        }
        if let Some(target_swap) = &target.swap {
            ratio = ratio.meet(&conjugate_pair_constraint(
                &prev.diag,
                &target_swap.ratio_range(),
            )?);
        }
        Some(MemberRule {
            entries: ambient_rule.entries,
            ratio,
        })
    });

    SubgroupShape::new(diag, swap)
}

/// The reduced commutator condition for one concrete element:
/// `[x, h] in prev` for every `h` in `target`, decided through the finitely
/// many schematic cases instead of the infinite quantifier.
///
/// For diagonal `x` with ratio `r`, commutators with diagonal members
/// vanish and commutators with any swap member equal `diag(r^-1, r)`. For a
/// swap `x` with ratio `u`, commutators with diagonal members run over
/// `diag(v, v^-1)` for `v` in the target's diagonal ratio range, and
/// commutators with swap members over `diag(u/v, v/u)` for `v` in its swap
/// ratio range. Every range of the shape family is realized by actual
/// members and closed under inverses, so the reduction is exact.
pub fn commutator_condition_holds(
    x: &MonomialElem,
    target: &SubgroupShape,
    prev: &SubgroupShape,
) -> bool {
    if x.is_diagonal() {
        match &target.swap {
            None => true,
            Some(_) => {
                concrete_conjugate_pairs_ok(&prev.diag, &x.ratio().inv(), &RatioCond::OrderDiv(0))
            }
        }
    } else {
        let diag_ok = accepts_conjugate_pairs(&prev.diag, &target.diag.ratio_range());
        let swap_ok = match &target.swap {
            None => true,
            Some(ts) => concrete_conjugate_pairs_ok(&prev.diag, &x.ratio(), &ts.ratio_range()),
        };
        diag_ok && swap_ok
    }
}

/// Does `rule` accept `(w*v, w^-1 * v^-1)` for the concrete scalar `w` and
/// every `v` in `range`?
fn concrete_conjugate_pairs_ok(rule: &MemberRule, w: &SymScalar, range: &RatioCond) -> bool {
    let entries_ok = match rule.entries {
        EntriesCond::One => range.le(&RatioCond::OrderDiv(0)) && w.is_one(),
        EntriesCond::Torsion => range.le(&RatioCond::Torsion) && w.is_torsion(),
        EntriesCond::Any => true,
    };
    // the pair has ratio w^2 v^2
    let ratio_ok = match rule.ratio {
        RatioCond::OrderDiv(i) => {
            range.le(&RatioCond::OrderDiv(i + 1))
                && w.is_torsion()
                && w.root().log2_order() <= i + 1
        }
        RatioCond::Torsion => range.le(&RatioCond::Torsion) && w.is_torsion(),
        RatioCond::Any => true,
    };
    entries_ok && ratio_ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn designated_subgroup_membership_examples() {
        use crate::gl2::scalar::{DyadicRoot, SymScalar};
        use crate::gl2::MonomialElem;
        let h = SubgroupShape::torsion_monomial();
        // a torsion diagonal belongs
        let half = MonomialElem::torsion_diag(3, DyadicRoot::MINUS_ONE, DyadicRoot::ONE);
        assert!(h.contains(&half));
        // a transcendental entry does not
        let t = MonomialElem::diagonal(SymScalar::generator(3, 0), SymScalar::one(3)).unwrap();
        assert!(!h.contains(&t));
        // the swap part with torsion entries belongs
        let s = MonomialElem::antidiagonal(
            SymScalar::root_only(3, DyadicRoot::primitive(3)),
            SymScalar::one(3),
        )
        .unwrap();
        assert!(h.contains(&s));
        assert!(h.contains(&MonomialElem::swap_matrix(3)));
        // but not with a transcendental entry
        let bad =
            MonomialElem::antidiagonal(SymScalar::generator(3, 1), SymScalar::one(3)).unwrap();
        assert!(!h.contains(&bad));
    }

    #[test]
    fn canonical_forms_identify_equal_sets() {
        // torsion entries make a torsion-ratio constraint redundant
        let a = SubgroupShape::new(
            MemberRule {
                entries: EntriesCond::Torsion,
                ratio: RatioCond::Torsion,
            },
            None,
        );
        let b = SubgroupShape::torsion_diagonal();
        assert_eq!(a, b);
        // unit entries force ratio 1
        let c = SubgroupShape::new(
            MemberRule {
                entries: EntriesCond::One,
                ratio: RatioCond::Any,
            },
            None,
        );
        assert_eq!(c, SubgroupShape::trivial());
    }

    #[test]
    fn membership_agrees_with_the_constraints() {
        let mut rng = DetRng::seed_from_u64(5);
        let shapes = [
            SubgroupShape::trivial(),
            SubgroupShape::scalars(),
            SubgroupShape::diagonal_group(),
            SubgroupShape::torsion_monomial(),
            SubgroupShape::dyadic_ratio_monomial(),
            SubgroupShape::ambient(),
        ];
        for shape in &shapes {
            for _ in 0..200 {
                let x = shape.sample(3, &mut rng);
                assert!(shape.contains(&x), "{shape}: {x}");
            }
        }
    }

    #[test]
    fn inclusion_order_matches_sampled_membership() {
        let mut rng = DetRng::seed_from_u64(6);
        let shapes = vec![
            SubgroupShape::trivial(),
            SubgroupShape::scalars(),
            SubgroupShape::torsion_diagonal(),
            SubgroupShape::diagonal_group(),
            SubgroupShape::torsion_monomial(),
            SubgroupShape::dyadic_ratio_monomial(),
            SubgroupShape::ambient(),
        ];
        for a in &shapes {
            for b in &shapes {
                if a.is_subset_of(b) {
                    for _ in 0..100 {
                        let x = a.sample(3, &mut rng);
                        assert!(b.contains(&x), "{a} <= {b} but {x} escapes");
                    }
                } else {
                    // inclusion fails: some sample must escape
                    let escaped = (0..400).any(|_| !b.contains(&a.sample(3, &mut rng)));
                    assert!(escaped, "{a} not <= {b} but no sample escapes");
                }
            }
        }
    }

    #[test]
    fn intersection_is_the_set_meet_on_samples() {
        let mut rng = DetRng::seed_from_u64(7);
        let a = SubgroupShape::dyadic_ratio_monomial();
        let b = SubgroupShape::torsion_monomial();
        let meet = a.intersect(&b);
        assert_eq!(meet, SubgroupShape::torsion_monomial());
        let c = SubgroupShape::diagonal_group();
        let meet2 = a.intersect(&c);
        for _ in 0..200 {
            let x = meet2.sample(3, &mut rng);
            assert!(a.contains(&x) && c.contains(&x));
        }
    }

    #[test]
    fn sampled_products_stay_inside_each_shape() {
        // subgroup closure of the named predicates, on seeded pairs
        let mut rng = DetRng::seed_from_u64(8);
        let shapes = [
            SubgroupShape::scalars(),
            SubgroupShape::diagonal_group(),
            SubgroupShape::torsion_monomial(),
            SubgroupShape::dyadic_ratio_monomial(),
            SubgroupShape::ambient(),
        ];
        for shape in &shapes {
            for _ in 0..300 {
                let x = shape.sample(3, &mut rng);
                let y = shape.sample(3, &mut rng);
                assert!(shape.contains(&x.mul(&y).unwrap()), "{shape} not closed");
                assert!(shape.contains(&x.inv()), "{shape} not inverse-closed");
            }
        }
    }
}
