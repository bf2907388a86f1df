use std::ops::Deref;

use super::group::Elem;
use super::ring::FinRing;
use super::subgroup::Subgroup;
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
    Both,
}

impl Side {
    fn left(self) -> bool {
        matches!(self, Side::Left | Side::Both)
    }

    fn right(self) -> bool {
        matches!(self, Side::Right | Side::Both)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    pub group: Subgroup,
    pub side: Side,
}

impl Deref for Ideal {
    type Target = Subgroup;
    fn deref(&self) -> &Subgroup {
        &self.group
    }
}

impl Ideal {
    pub fn into_subgroup(self) -> Subgroup {
        self.group
    }
}

pub fn subgroup_closure(r: &FinRing, gens: &[Elem]) -> Subgroup {
    Subgroup::closure(r.group(), gens)
}

/// Smallest ideal of the given side containing `gens`.
///
/// Every new additive generator is multiplied by each ring generator on the
/// requested side(s). Bilinearity makes this sufficient without assuming
/// associativity.
pub fn ideal_closure(r: &FinRing, gens: &[Elem], side: Side) -> Ideal {
    let g = r.group();
    let ring_basis = g.basis_elems();
    let mut h = Subgroup::zero(g);
    let mut queue: Vec<Elem> = Vec::new();
    for &x in gens {
        if h.extend(g, x) {
            queue.push(x);
        }
    }
    while let Some(x) = queue.pop() {
        for &e in &ring_basis {
            if side.left() {
                let y = r.mul(e, x);
                if h.extend(g, y) {
                    queue.push(y);
                }
            }
            if side.right() {
                let y = r.mul(x, e);
                if h.extend(g, y) {
                    queue.push(y);
                }
            }
        }
    }
    h.finish();
    h.set_generators(gens);
    Ideal { group: h, side }
}

/// Additive span of `{ab : a in A, b in B}`.
pub fn span_products(r: &FinRing, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut prods = Vec::with_capacity(a.basis().len() * b.basis().len());
    for &x in a.basis() {
        for &y in b.basis() {
            prods.push(r.mul(x, y));
        }
    }
    Subgroup::closure(r.group(), &prods)
}

/// Whether `A M ⊆ M` (side Left), `M A ⊆ M` (Right) or both.
pub fn absorbs(r: &FinRing, m: &Subgroup, a: &Subgroup, side: Side) -> Option<(Elem, Elem)> {
    for &x in a.basis() {
        for &y in m.basis() {
            if side.left() && !m.contains(r.mul(x, y)) {
                return Some((x, y));
            }
            if side.right() && !m.contains(r.mul(y, x)) {
                return Some((y, x));
            }
        }
    }
    None
}

pub fn is_ideal(r: &FinRing, m: &Subgroup, side: Side) -> bool {
    absorbs(r, m, &Subgroup::whole(r.group()), side).is_none()
}

/// Whether `m` is closed under multiplication.
pub fn is_subring(r: &FinRing, m: &Subgroup) -> bool {
    absorbs(r, m, m, Side::Left).is_none()
}

/// `{ x in R : xm = mx for all m in M }`.
pub fn centralizer(r: &FinRing, m: &Subgroup) -> Subgroup {
    centralizer_in(r, &Subgroup::whole(r.group()), m)
}

/// `{ x in within : xm = mx for all m in M }`.
pub fn centralizer_in(r: &FinRing, within: &Subgroup, m: &Subgroup) -> Subgroup {
    let basis = m.basis();
    let keep = par::map_slice(within.elements(), |&x| {
        basis.iter().all(|&y| r.mul(x, y) == r.mul(y, x))
    });
    let elems: Vec<Elem> = within
        .elements()
        .iter()
        .zip(keep)
        .filter_map(|(&x, k)| k.then_some(x))
        .collect();
    Subgroup::from_closed_set(r.group(), &elems)
}

pub fn center(r: &FinRing) -> Subgroup {
    centralizer(r, &Subgroup::whole(r.group()))
}

/// Center of the subring `a` (elements of `a` commuting with all of `a`).
pub fn center_of(r: &FinRing, a: &Subgroup) -> Subgroup {
    centralizer_in(r, a, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::build;

    #[test]
    fn matrix_ideal_is_everything() {
        let m = build::matrix_ring(&build::prime_field(2).unwrap(), 2, 4096).unwrap();
        let e11 = m.elem(&[1, 0, 0, 0]);
        assert!(ideal_closure(&m, &[e11], Side::Both).is_whole());
        let left = ideal_closure(&m, &[e11], Side::Left);
        assert_eq!(left.order(), 4);
        assert_eq!(ideal_closure(&m, &[0], Side::Both).order(), 1);
    }

    #[test]
    fn product_ideal() {
        let f = build::prime_field(2).unwrap();
        let r = build::product(&f, &f, 4096).unwrap();
        let i = ideal_closure(&r, &[r.elem(&[1, 0])], Side::Both);
        assert_eq!(i.elements(), &[0, r.elem(&[1, 0])]);
    }

    #[test]
    fn matrix_center() {
        let m = build::matrix_ring(&build::prime_field(2).unwrap(), 2, 4096).unwrap();
        let z = center(&m);
        assert_eq!(z.elements(), &[0, m.elem(&[1, 0, 0, 1])]);
        assert!(centralizer(&m, &Subgroup::zero(m.group())).is_whole());
    }
}
