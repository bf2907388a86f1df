//! Subgroups of `⊕ Z/d_i` held as full-rank lattices in `Z^r` that contain
//! `diag(d)`, so membership and quotients never enumerate elements.

use super::group::{Elem, FinAbGroup};
use super::intmat::{smith, IntMat};
use crate::error::{Error, Result};

/// Echelon basis: row `j` is zero before column `j` and its pivot divides
/// `d_j`. The index of the lattice is the product of the pivots.
#[derive(Clone, Debug)]
pub struct Lattice {
    moduli: Vec<i128>,
    rows: Vec<Vec<i128>>,
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

impl Lattice {
    /// The zero subgroup.
    pub fn new(ranks: &[u32]) -> Self {
        let moduli: Vec<i128> = ranks.iter().map(|&d| i128::from(d)).collect();
        let rows = (0..moduli.len())
            .map(|j| {
                let mut row = vec![0; moduli.len()];
                row[j] = moduli[j];
                row
            })
            .collect();
        Lattice { moduli, rows }
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    fn reduce_tail(&self, v: &mut [i128], from: usize) {
        for k in from..v.len() {
            v[k] = v[k].rem_euclid(self.moduli[k]);
        }
    }

    /// Adds `v` to the subgroup; returns whether it was new.
    pub fn insert(&mut self, v: &[i128]) -> bool {
        let mut v = v.to_vec();
        self.reduce_tail(&mut v, 0);
        let mut changed = false;
        for j in 0..v.len() {
            let x = v[j];
            if x == 0 {
                continue;
            }
            let h = self.rows[j][j];
            if x % h == 0 {
                let q = x / h;
                for k in j..v.len() {
                    v[k] -= q * self.rows[j][k];
                }
            } else {
                // [[a, b], [x/g, -h/g]] is unimodular
                let (g, a, b) = ext_gcd(h, x);
                let row = std::mem::take(&mut self.rows[j]);
                let mut new_row = vec![0; v.len()];
                for k in j..v.len() {
                    new_row[k] = a * row[k] + b * v[k];
                    v[k] = (x / g) * row[k] - (h / g) * v[k];
                }
                new_row[j] = g;
                self.reduce_tail(&mut new_row, j + 1);
                self.rows[j] = new_row;
                changed = true;
            }
            v[j] = 0;
            self.reduce_tail(&mut v, j + 1);
        }
        changed
    }

    pub fn contains(&self, v: &[i128]) -> bool {
        let mut v = v.to_vec();
        self.reduce_tail(&mut v, 0);
        for j in 0..v.len() {
            let x = v[j];
            if x == 0 {
                continue;
            }
            let h = self.rows[j][j];
            if x % h != 0 {
                return false;
            }
            let q = x / h;
            for k in j..v.len() {
                v[k] -= q * self.rows[j][k];
            }
            self.reduce_tail(&mut v, j + 1);
        }
        true
    }

    /// Order of the quotient group.
    pub fn index(&self) -> u128 {
        (0..self.rank()).map(|j| self.rows[j][j] as u128).product()
    }

    /// Order of the subgroup.
    pub fn order(&self) -> u128 {
        (0..self.rank())
            .map(|j| (self.moduli[j] / self.rows[j][j]) as u128)
            .product()
    }

    pub fn is_zero(&self) -> bool {
        (0..self.rank()).all(|j| self.rows[j][j] == self.moduli[j])
    }

    /// Rows spanning the lattice, including the relation rows.
    pub fn rows(&self) -> &[Vec<i128>] {
        &self.rows
    }

    /// The quotient `(⊕ Z/d_i) / self` in cyclic-product form.
    pub fn quotient(&self, cap: usize) -> Result<LatticeQuotient> {
        let idx = self.index();
        if idx > cap as u128 {
            return Err(Error::cap("quotient elements", idx, cap));
        }
        let r = self.rank();
        let s = smith(&IntMat::from_rows(&self.rows, r));
        let kept: Vec<usize> = (0..r).filter(|&j| s.diagonal[j] != 1).collect();
        let group = FinAbGroup::new(kept.iter().map(|&j| s.diagonal[j] as u32).collect(), cap)?;
        let cols = kept
            .iter()
            .map(|&j| (0..r).map(|i| s.v[(i, j)]).collect())
            .collect();
        let lifts = kept
            .iter()
            .map(|&j| {
                let mut row = s.v_inv.row(j).to_vec();
                self.reduce_tail(&mut row, 0);
                row
            })
            .collect();
        Ok(LatticeQuotient { group, cols, lifts })
    }
}

/// Projection `Z^r → ⊕ Z/q_t` and lifts of the quotient generators.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    pub group: FinAbGroup,
    cols: Vec<Vec<i128>>,
    lifts: Vec<Vec<i128>>,
}

impl LatticeQuotient {
    pub fn project(&self, v: &[i128]) -> Elem {
        let coords: Vec<i128> = self
            .cols
            .iter()
            .map(|c| c.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect();
        self.group.from_digits(&coords)
    }

    /// Preimage of quotient generator `t`.
    pub fn lift_generator(&self, t: usize) -> &[i128] {
        &self.lifts[t]
    }

    /// A preimage of `q`, not reduced.
    pub fn lift(&self, q: Elem) -> Vec<i128> {
        let r = self.lifts.first().map_or(0, Vec::len);
        let mut out = vec![0; r];
        for (t, d) in self.group.digits(q).into_iter().enumerate() {
            for (o, x) in out.iter_mut().zip(&self.lifts[t]) {
                *o += i128::from(d) * x;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_and_full() {
        let mut l = Lattice::new(&[4, 2]);
        assert!(l.is_zero());
        assert_eq!(l.index(), 8);
        assert!(!l.insert(&[4, 2]));
        assert!(l.insert(&[1, 0]));
        assert!(l.contains(&[3, 0]));
        assert!(!l.contains(&[0, 1]));
        assert!(l.insert(&[0, 1]));
        assert_eq!(l.index(), 1);
    }

    #[test]
    fn quotient_matches_enumeration() {
        // Z/4 x Z/2 modulo <(2,1)> is cyclic of order 4
        let mut l = Lattice::new(&[4, 2]);
        l.insert(&[2, 1]);
        assert_eq!(l.order(), 2);
        let q = l.quotient(4096).unwrap();
        assert_eq!(q.group.ranks(), &[4]);
        assert_eq!(q.project(&[2, 1]), 0);
        assert_ne!(q.project(&[1, 0]), 0);
        for x in 0..4 {
            assert_eq!(q.project(&q.lift(x)), x);
        }
    }

    #[test]
    fn mixed_moduli_gcd() {
        let mut l = Lattice::new(&[6, 4]);
        l.insert(&[4, 2]);
        l.insert(&[3, 3]);
        let g = FinAbGroup::new(vec![6, 4], 4096).unwrap();
        let mut members = std::collections::HashSet::new();
        for a in 0..6i128 {
            for b in 0..4i128 {
                members.insert(((4 * a + 3 * b).rem_euclid(6), (2 * a + 3 * b).rem_euclid(4)));
            }
        }
        assert_eq!(l.order() as usize, members.len());
        for x in 0..g.order() {
            let d = g.digits(x);
            let v = [i128::from(d[0]), i128::from(d[1])];
            assert_eq!(l.contains(&v), members.contains(&(v[0], v[1])));
        }
    }
}
