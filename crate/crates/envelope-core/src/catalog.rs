//! Constructors for the named groups of the corpus: cyclic, dihedral,
//! generalized quaternion, symmetric, alternating, Heisenberg mod p.
//!
//! Word groups get symbolic labels (`r2s`, `a3b`, `x2yz`); permutation
//! groups are labeled by cycle notation. Construction is deterministic and
//! label-stable, and every table passes the full group-axiom validation in
//! [`FiniteGroup::from_cayley_table`].

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::group::{FiniteGroup, GroupError, DEFAULT_ORDER_CAP};

/// Cyclic group of order `n`, labels `1, g, g2, ...`.
pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::MalformedTable {
            reason: "cyclic group of order 0".into(),
        });
    }
    let mut flat = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            flat.push(((a + b) % n) as u32);
        }
    }
    let labels = (0..n).map(|i| power_label("g", i)).collect();
    FiniteGroup::from_flat_table(n, flat, Some(labels))
}

/// Dihedral group of the given (even, >= 2) order; generators `r`, `s` with
/// labels `1, r, r2, ..., s, rs, r2s, ...`.
pub fn dihedral(order: usize) -> Result<FiniteGroup, GroupError> {
    if order < 2 || !order.is_multiple_of(2) {
        return Err(GroupError::MalformedTable {
            reason: format!("dihedral group needs an even order >= 2, got {order}"),
        });
    }
    let n = order / 2;
    // id = i + n*j encodes r^i s^j
    let encode = |i: usize, j: usize| (i % n) + n * j;
    let mut flat = vec![0u32; order * order];
    for i in 0..n {
        for j in 0..2 {
            for k in 0..n {
                for l in 0..2 {
                    // (r^i s^j)(r^k s^l) = r^(i + (-1)^j k) s^(j+l)
                    let rot = if j == 0 {
                        (i + k) % n
                    } else {
                        (i + n - k % n) % n
                    };
                    flat[encode(i, j) * order + encode(k, l)] = encode(rot, (j + l) % 2) as u32;
                }
            }
        }
    }
    let mut labels = vec![String::new(); order];
    for i in 0..n {
        labels[encode(i, 0)] = power_label("r", i);
        labels[encode(i, 1)] = reflection_label("r", i, "s");
    }
    FiniteGroup::from_flat_table(order, flat, Some(labels))
}

/// Generalized quaternion group of order `2^m`, `m >= 3`: relations
/// `a^(2^(m-1)) = 1`, `b^2 = a^(2^(m-2))`, `b^-1 a b = a^-1`.
pub fn generalized_quaternion(order: usize) -> Result<FiniteGroup, GroupError> {
    if order < 8 || !order.is_power_of_two() {
        return Err(GroupError::MalformedTable {
            reason: format!("generalized quaternion group needs an order 2^m >= 8, got {order}"),
        });
    }
    let q = order / 2;
    let encode = |i: usize, j: usize| (i % q) + q * j;
    let mut flat = vec![0u32; order * order];
    for i in 0..q {
        for j in 0..2 {
            for k in 0..q {
                for l in 0..2 {
                    let mut rot = if j == 0 {
                        (i + k) % q
                    } else {
                        (i + q - k % q) % q
                    };
                    if j == 1 && l == 1 {
                        rot = (rot + q / 2) % q;
                    }
                    flat[encode(i, j) * order + encode(k, l)] = encode(rot, (j + l) % 2) as u32;
                }
            }
        }
    }
    let mut labels = vec![String::new(); order];
    for i in 0..q {
        labels[encode(i, 0)] = power_label("a", i);
        labels[encode(i, 1)] = reflection_label("a", i, "b");
    }
    FiniteGroup::from_flat_table(order, flat, Some(labels))
}

/// Symmetric group on `n <= 6` points, labeled by cycle notation.
pub fn symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 || n > 6 {
        return Err(GroupError::MalformedTable {
            reason: format!("symmetric group supported for 1..=6 points, got {n}"),
        });
    }
    if n == 1 {
        return FiniteGroup::from_permutation_generators(1, &[], DEFAULT_ORDER_CAP);
    }
    let transposition = "(1 2)".to_string();
    let cycle = long_cycle(1, n);
    FiniteGroup::from_permutation_generators(n, &[&transposition, &cycle], DEFAULT_ORDER_CAP)
}

/// Alternating group on `n <= 6` points, labeled by cycle notation.
pub fn alternating(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 || n > 6 {
        return Err(GroupError::MalformedTable {
            reason: format!("alternating group supported for 1..=6 points, got {n}"),
        });
    }
    match n {
        1 | 2 => FiniteGroup::from_permutation_generators(n.max(1), &[], DEFAULT_ORDER_CAP),
        3 => FiniteGroup::from_permutation_generators(3, &["(1 2 3)"], DEFAULT_ORDER_CAP),
        // (1 2 3) plus an n-cycle (n odd) or (n-1)-cycle on 2..n (n even)
        _ => {
            let cycle = if n % 2 == 1 {
                long_cycle(1, n)
            } else {
                long_cycle(2, n)
            };
            FiniteGroup::from_permutation_generators(n, &["(1 2 3)", &cycle], DEFAULT_ORDER_CAP)
        }
    }
}

/// Heisenberg group mod `p` (`p <= 7` prime): upper unitriangular 3x3
/// matrices `(a, b, c)` with product `(a+a', b+b', c+c'+a*b')`, labels in
/// the generators `x = (1,0,0)`, `y = (0,1,0)`, `z = (0,0,1)`.
pub fn heisenberg(p: usize) -> Result<FiniteGroup, GroupError> {
    if ![2, 3, 5, 7].contains(&p) {
        return Err(GroupError::MalformedTable {
            reason: format!("Heisenberg group supported for p in {{2,3,5,7}}, got {p}"),
        });
    }
    let n = p * p * p;
    let encode = |a: usize, b: usize, c: usize| (a * p + b) * p + c;
    let mut flat = vec![0u32; n * n];
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for a2 in 0..p {
                    for b2 in 0..p {
                        for c2 in 0..p {
                            let prod = encode((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
                            flat[encode(a, b, c) * n + encode(a2, b2, c2)] = prod as u32;
                        }
                    }
                }
            }
        }
    }
    let mut labels = vec![String::new(); n];
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                let mut s = String::new();
                s.push_str(&monomial_part("x", a));
                s.push_str(&monomial_part("y", b));
                s.push_str(&monomial_part("z", c));
                if s.is_empty() {
                    s.push('1');
                }
                labels[encode(a, b, c)] = s;
            }
        }
    }
    FiniteGroup::from_flat_table(n, flat, Some(labels))
}

fn power_label(gen: &str, exp: usize) -> String {
    match exp {
        0 => "1".to_string(),
        1 => gen.to_string(),
        _ => format!("{gen}{exp}"),
    }
}

fn reflection_label(gen: &str, exp: usize, refl: &str) -> String {
    match exp {
        0 => refl.to_string(),
        1 => format!("{gen}{refl}"),
        _ => format!("{gen}{exp}{refl}"),
    }
}

fn monomial_part(gen: &str, exp: usize) -> String {
    match exp {
        0 => String::new(),
        1 => gen.to_string(),
        _ => format!("{gen}{exp}"),
    }
}

fn long_cycle(from: usize, to: usize) -> String {
    let mut s = String::from("(");
    for p in from..=to {
        if p > from {
            s.push(' ');
        }
        s.push_str(&p.to_string());
    }
    s.push(')');
    s
}
