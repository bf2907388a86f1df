use std::collections::HashMap;
use std::fmt;

use super::group::{Elem, FinAbGroup};
use super::intmat::{left_kernel, smith, IntMat};
use crate::error::{Error, Result};

/// An additive subgroup, stored as a membership mask over the parent group
/// together with its sorted element list.
#[derive(Clone)]
pub struct Subgroup {
    members: Vec<bool>,
    elems: Vec<Elem>,
    // generators that actually enlarged the group during closure
    basis: Vec<Elem>,
    // generating set as supplied by the caller
    gens: Vec<Elem>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.elems.len())
            .field("basis", &self.basis)
            .finish()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn zero(g: &FinAbGroup) -> Self {
        let mut members = vec![false; g.order()];
        members[0] = true;
        Subgroup {
            members,
            elems: vec![0],
            basis: Vec::new(),
            gens: Vec::new(),
        }
    }

    pub fn whole(g: &FinAbGroup) -> Self {
        Subgroup::closure(g, &g.basis_elems())
    }

    /// Smallest subgroup containing `gens`, by incremental coset expansion.
    pub fn closure(g: &FinAbGroup, gens: &[Elem]) -> Self {
        let mut h = Subgroup::zero(g);
        for &x in gens {
            h.extend(g, x);
        }
        h.gens = gens.to_vec();
        h.elems.sort_unstable();
        h
    }

    /// Subgroup from a set already known to be closed.
    pub fn from_closed_set(g: &FinAbGroup, elems: &[Elem]) -> Self {
        let h = Subgroup::closure(g, elems);
        debug_assert_eq!(h.order(), elems.len());
        h
    }

    /// Adds `x`, returning whether the group grew. Leaves `elems` unsorted.
    pub(crate) fn extend(&mut self, g: &FinAbGroup, x: Elem) -> bool {
        if self.members[x] {
            return false;
        }
        let base = self.elems.clone();
        let mut shift = x;
        while !self.members[shift] {
            for &h in &base {
                let y = g.add(h, shift);
                self.members[y] = true;
                self.elems.push(y);
            }
            shift = g.add(shift, x);
        }
        self.basis.push(x);
        true
    }

    pub(crate) fn set_generators(&mut self, gens: &[Elem]) {
        self.gens = gens.to_vec();
    }

    pub(crate) fn finish(&mut self) {
        self.elems.sort_unstable();
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.members[x]
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn is_zero(&self) -> bool {
        self.elems.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elems.len() == self.members.len()
    }

    /// Sorted elements.
    pub fn elements(&self) -> &[Elem] {
        &self.elems
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elems.iter().copied().filter(|&x| x != 0)
    }

    /// An irredundant generating set.
    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.elems.iter().all(|&x| other.contains(x))
    }

    /// First element of `self` outside `other`.
    pub fn first_outside(&self, other: &Subgroup) -> Option<Elem> {
        self.elems.iter().copied().find(|&x| !other.contains(x))
    }

    pub fn sum(&self, g: &FinAbGroup, other: &Subgroup) -> Subgroup {
        let mut h = self.clone();
        for &x in &other.basis {
            h.extend(g, x);
        }
        h.gens = self.basis.iter().chain(&other.basis).copied().collect();
        h.finish();
        h
    }

    pub fn intersection(&self, g: &FinAbGroup, other: &Subgroup) -> Subgroup {
        let common: Vec<Elem> = self
            .elems
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect();
        Subgroup::from_closed_set(g, &common)
    }

    /// Image under an additive map; `f` must be a homomorphism on `self`.
    pub fn image(&self, g: &FinAbGroup, f: impl Fn(Elem) -> Elem) -> Subgroup {
        let imgs: Vec<Elem> = self.basis.iter().map(|&x| f(x)).collect();
        Subgroup::closure(g, &imgs)
    }

    /// A decomposition of `self` as a product of cyclic groups.
    pub fn cyclic_basis(&self, g: &FinAbGroup) -> CyclicBasis {
        CyclicBasis::new(g, self)
    }
}

/// Generators `f_1..f_r` of orders `n_1..n_r` with `self = <f_1> x ... x <f_r>`,
/// together with the coordinate lookup of every element.
#[derive(Clone, Debug)]
pub struct CyclicBasis {
    pub gens: Vec<(Elem, u32)>,
    coords: HashMap<Elem, usize>,
    strides: Vec<usize>,
}

impl CyclicBasis {
    fn new(g: &FinAbGroup, h: &Subgroup) -> Self {
        let hs = h.basis();
        let m = hs.len();
        let k = g.rank();
        let gens: Vec<(Elem, u32)> = if m == 0 {
            Vec::new()
        } else {
            // relations among the h_j: left kernel of [H; diag(d)]
            let mut rows: Vec<Vec<i128>> = hs
                .iter()
                .map(|&x| g.digits(x).into_iter().map(i128::from).collect())
                .collect();
            for (i, &d) in g.ranks().iter().enumerate() {
                let mut r = vec![0i128; k];
                r[i] = d as i128;
                rows.push(r);
            }
            let ker = left_kernel(&IntMat::from_rows(&rows, k));
            let rel_rows: Vec<Vec<i128>> = (0..ker.rows()).map(|i| ker.row(i)[..m].to_vec()).collect();
            let s = smith(&IntMat::from_rows(&rel_rows, m));
            (0..m)
                .filter(|&i| s.diagonal[i] != 1)
                .map(|i| {
                    assert!(s.diagonal[i] > 0, "finite subgroup has full-rank relations");
                    let mut acc = 0;
                    for (j, &hj) in hs.iter().enumerate() {
                        let c = s.v_inv[(i, j)].rem_euclid(g.elem_order(hj) as i128) as i64;
                        acc = g.add(acc, g.scale(c, hj));
                    }
                    (acc, s.diagonal[i] as u32)
                })
                .collect()
        };
        let r = gens.len();
        let mut strides = vec![1usize; r];
        for i in (0..r.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * gens[i + 1].1 as usize;
        }
        let total: usize = gens.iter().map(|&(_, n)| n as usize).product();
        let mut coords = HashMap::with_capacity(total);
        for idx in 0..total {
            let mut x = 0;
            for (i, &(f, n)) in gens.iter().enumerate() {
                let c = (idx / strides[i]) % n as usize;
                x = g.add(x, g.scale(c as i64, f));
            }
            coords.insert(x, idx);
        }
        assert_eq!(coords.len(), h.order(), "cyclic decomposition must be bijective");
        CyclicBasis {
            gens,
            coords,
            strides,
        }
    }

    pub fn ranks(&self) -> Vec<u32> {
        self.gens.iter().map(|&(_, n)| n).collect()
    }

    /// Mixed-radix coordinate index of `x`.
    pub fn coord_index(&self, x: Elem) -> Option<usize> {
        self.coords.get(&x).copied()
    }

    pub fn coord(&self, idx: usize, i: usize) -> u32 {
        ((idx / self.strides[i]) % self.gens[i].1 as usize) as u32
    }
}

/// Fails with `MalformedSpec` if `x` is not a valid element index.
pub fn check_elem(g: &FinAbGroup, x: Elem) -> Result<()> {
    if x < g.order() {
        Ok(())
    } else {
        Err(Error::MalformedSpec(format!("element index {x} out of range")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_examples() {
        let g = FinAbGroup::new(vec![2, 2], 100).unwrap();
        assert_eq!(Subgroup::closure(&g, &[]).elements(), &[0]);
        let h = Subgroup::closure(&g, &[g.from_digits(&[1i64, 0])]);
        assert_eq!(h.elements(), &[0, 2]);
        assert!(Subgroup::closure(&g, &[1, 2, 3]).is_whole());
    }

    #[test]
    fn closure_in_mixed_group() {
        let g = FinAbGroup::new(vec![4, 6], 100).unwrap();
        let h = Subgroup::closure(&g, &[g.from_digits(&[2i64, 3]), g.from_digits(&[0i64, 2])]);
        assert_eq!(h.order(), 6);
        for &a in h.elements() {
            for &b in h.elements() {
                assert!(h.contains(g.add(a, b)));
            }
        }
    }

    #[test]
    fn cyclic_basis_of_diagonal_subgroup() {
        let g = FinAbGroup::new(vec![4, 2], 100).unwrap();
        let h = Subgroup::closure(&g, &[g.from_digits(&[1i64, 1])]);
        let cb = h.cyclic_basis(&g);
        assert_eq!(cb.ranks(), vec![4]);
        let w = Subgroup::whole(&g).cyclic_basis(&g);
        let mut r = w.ranks();
        r.sort();
        assert_eq!(r, vec![2, 4]);
        assert_eq!(Subgroup::zero(&g).cyclic_basis(&g).ranks(), Vec::<u32>::new());
    }
}
