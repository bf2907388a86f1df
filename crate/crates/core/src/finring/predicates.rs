use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::group::Elem;
use super::ideal::{absorbs, centralizer, ideal_closure, span_products, Ideal, Side};
use super::ring::FinRing;
use super::subgroup::Subgroup;
use crate::error::{Error, Result};
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unitality {
    pub left_unital: bool,
    pub right_unital: bool,
    pub unital: bool,
    pub left_s_unital: bool,
    pub right_s_unital: bool,
    pub s_unital: bool,
    pub locally_unital: bool,
    pub idempotent_ring: bool,
}

/// `e` in `a` with `e x = x` for every `x` in `a`.
pub fn left_identity(r: &FinRing, a: &Subgroup) -> Option<Elem> {
    par::find_first_in(a.elements(), |&e| a.basis().iter().all(|&x| r.mul(e, x) == x)).copied()
}

pub fn right_identity(r: &FinRing, a: &Subgroup) -> Option<Elem> {
    par::find_first_in(a.elements(), |&e| a.basis().iter().all(|&x| r.mul(x, e) == x)).copied()
}

/// First `x` in `m` with no `e` in `units` satisfying `e x = x`
/// (or `x e = x` for [`Side::Right`]).
pub fn s_unit_failure(r: &FinRing, m: &Subgroup, units: &Subgroup, side: Side) -> Option<Elem> {
    let fixes = |e: Elem, x: Elem| match side {
        Side::Left => r.mul(e, x) == x,
        Side::Right => r.mul(x, e) == x,
        Side::Both => r.mul(e, x) == x && r.mul(x, e) == x,
    };
    par::find_first_in(m.elements(), |&x| !units.elements().iter().any(|&e| fixes(e, x))).copied()
}

/// `c` in `a` with `c x = x c = x` for all `x` in `xs`.
pub fn common_s_unit(r: &FinRing, a: &Subgroup, xs: &[Elem]) -> Option<Elem> {
    par::find_first_in(a.elements(), |&c| {
        xs.iter().all(|&x| r.mul(c, x) == x && r.mul(x, c) == x)
    })
    .copied()
}

/// Unitality predicates of the subring `a` of `r`.
pub fn unitality_of(r: &FinRing, a: &Subgroup) -> Unitality {
    let left_unital = left_identity(r, a).is_some();
    let right_unital = right_identity(r, a).is_some();
    let left_s_unital = s_unit_failure(r, a, a, Side::Left).is_none();
    let right_s_unital = s_unit_failure(r, a, a, Side::Right).is_none();
    // a finite set is its own largest finite subset
    let locally_unital = par::find_first_in(a.elements(), |&e| {
        r.mul(e, e) == e && a.basis().iter().all(|&x| r.mul(e, x) == x && r.mul(x, e) == x)
    })
    .is_some();
    let idempotent_ring = span_products(r, a, a) == *a;
    Unitality {
        left_unital,
        right_unital,
        unital: left_unital && right_unital,
        left_s_unital,
        right_s_unital,
        s_unital: left_s_unital && right_s_unital,
        locally_unital,
        idempotent_ring,
    }
}

pub fn unitality(r: &FinRing) -> Unitality {
    unitality_of(r, &Subgroup::whole(r.group()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimodulePredicates {
    pub left_s_unital: bool,
    pub right_s_unital: bool,
    pub left_unital: bool,
    pub right_unital: bool,
    pub left_unitary: bool,
    pub right_unitary: bool,
}

/// Unitality of `m` as a left `aleft`-module and right `bright`-module.
pub fn bimodule_predicates(
    r: &FinRing,
    m: &Subgroup,
    aleft: &Subgroup,
    bright: &Subgroup,
) -> Result<BimodulePredicates> {
    if let Some((x, y)) = absorbs(r, m, aleft, Side::Left) {
        return Err(Error::NotAModule(format!(
            "{} * {} leaves the module",
            r.fmt_elem(x),
            r.fmt_elem(y)
        )));
    }
    if let Some((x, y)) = absorbs(r, m, bright, Side::Right) {
        return Err(Error::NotAModule(format!(
            "{} * {} leaves the module",
            r.fmt_elem(x),
            r.fmt_elem(y)
        )));
    }
    let all_fixed_left =
        |e: Elem| m.basis().iter().all(|&x| r.mul(e, x) == x);
    let all_fixed_right =
        |e: Elem| m.basis().iter().all(|&x| r.mul(x, e) == x);
    Ok(BimodulePredicates {
        left_s_unital: s_unit_failure(r, m, aleft, Side::Left).is_none(),
        right_s_unital: s_unit_failure(r, m, bright, Side::Right).is_none(),
        left_unital: par::find_first_in(aleft.elements(), |&e| all_fixed_left(e)).is_some(),
        right_unital: par::find_first_in(bright.elements(), |&e| all_fixed_right(e)).is_some(),
        left_unitary: span_products(r, aleft, m) == *m,
        right_unitary: span_products(r, m, bright) == *m,
    })
}

/// A nonzero element whose two-sided ideal is proper, with that ideal.
/// `None` means the ring is simple or zero; see [`is_simple`].
pub fn proper_ideal_witness(r: &FinRing) -> Option<(Elem, Ideal)> {
    let n = r.order();
    par::find_map_first(n, |x| {
        if x == 0 {
            return None;
        }
        let i = ideal_closure(r, &[x], Side::Both);
        (!i.is_whole()).then_some((x, i))
    })
}

/// Every two-sided ideal, as sums of principal ideals, or `None` if there
/// are more than `limit`.
pub fn all_ideals(r: &FinRing, limit: usize) -> Option<Vec<Subgroup>> {
    let g = r.group();
    let principal = par::map(r.order(), |x| ideal_closure(r, &[x], Side::Both).into_subgroup());
    let mut seen: HashSet<Vec<Elem>> = HashSet::new();
    let mut out: Vec<Subgroup> = Vec::new();
    for p in principal {
        if seen.insert(p.elements().to_vec()) {
            out.push(p);
        }
    }
    let mut i = 0;
    while i < out.len() {
        for j in 0..i {
            let s = out[i].sum(g, &out[j]);
            if seen.insert(s.elements().to_vec()) {
                if out.len() >= limit {
                    return None;
                }
                out.push(s);
            }
        }
        i += 1;
    }
    Some(out)
}

/// Nonzero ring whose only two-sided ideals are `{0}` and itself.
pub fn is_simple(r: &FinRing) -> bool {
    !r.is_zero_ring() && proper_ideal_witness(r).is_none()
}

/// `C_R(a) = a`.
pub fn is_maximal_commutative(r: &FinRing, a: &Subgroup) -> bool {
    centralizer(r, a) == *a
}

/// A nonzero `x` whose ideal meets `b` only in zero; `None` means every
/// nonzero ideal of `r` meets `b` nontrivially.
pub fn ideal_intersection_failure(r: &FinRing, b: &Subgroup) -> Option<Elem> {
    par::find_first(r.order(), |x| {
        x != 0 && {
            let i = ideal_closure(r, &[x], Side::Both);
            b.nonzero().all(|y| !i.contains(y))
        }
    })
}

pub fn has_ideal_intersection_property(r: &FinRing, b: &Subgroup) -> bool {
    ideal_intersection_failure(r, b).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::build;

    #[test]
    fn field_is_all_true() {
        let f = build::prime_field(2).unwrap();
        let u = unitality(&f);
        assert!(u.unital && u.s_unital && u.locally_unital && u.idempotent_ring);
        assert!(is_simple(&f));
    }

    #[test]
    fn zero_multiplication_is_all_false() {
        let z = build::zero_ring(vec![2], 4096).unwrap();
        let u = unitality(&z);
        assert!(!u.left_unital && !u.right_unital && !u.unital);
        assert!(!u.left_s_unital && !u.right_s_unital && !u.locally_unital && !u.idempotent_ring);
        assert_eq!(common_s_unit(&z, &Subgroup::whole(z.group()), &[1]), None);
        assert_eq!(common_s_unit(&z, &Subgroup::whole(z.group()), &[]), Some(0));
    }

    #[test]
    fn bimodule_examples() {
        let f = build::prime_field(2).unwrap();
        let r = build::product(&f, &f, 4096).unwrap();
        let g = r.group();
        let m = Subgroup::closure(g, &[r.elem(&[1, 0])]);
        let a = Subgroup::closure(g, &[r.elem(&[0, 1])]);
        let p = bimodule_predicates(&r, &m, &a, &m).unwrap();
        assert!(!p.left_s_unital && !p.left_unitary && !p.left_unital);
        assert!(p.right_s_unital && p.right_unitary);
        let zero = Subgroup::zero(g);
        let p = bimodule_predicates(&r, &zero, &a, &a).unwrap();
        assert!(p.left_s_unital && p.right_unital && p.left_unitary);
        let whole = Subgroup::whole(g);
        assert!(matches!(
            bimodule_predicates(&r, &m, &whole, &whole).map(|p| p.left_unital),
            Ok(true)
        ));
        assert!(bimodule_predicates(&r, &zero, &whole, &whole).is_ok());
        let sub = Subgroup::closure(g, &[r.elem(&[1, 1])]);
        assert!(matches!(
            bimodule_predicates(&r, &sub, &whole, &whole),
            Err(Error::NotAModule(_))
        ));
    }

    #[test]
    fn simplicity_examples() {
        let f = build::prime_field(2).unwrap();
        let r = build::product(&f, &f, 4096).unwrap();
        assert!(!is_simple(&r));
        let m = build::matrix_ring(&f, 2, 4096).unwrap();
        assert!(is_simple(&m));
        assert!(!is_simple(&build::zero_ring(vec![], 4096).unwrap()));
    }
}
