use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finring::{CyclicBasis, Elem, FinAbGroup, FinRing, Subgroup};
use crate::invsgrp::SElem;
use crate::paction::PartialAction;
use crate::syscheck::SystemRing;

// block and coordinates of a product of two generators
type Product = (SElem, Vec<i128>);

/// Largest number of cyclic generators of `L_π` handled symbolically.
pub const MAX_LPI_GENERATORS: usize = 512;

/// `L_π`: formal sums `Σ a_s δ_s` with `a_s ∈ D_s` and product
/// `(a_s δ_s)(b_t δ_t) = π_s(π_{s*}(a_s) b_t) δ_{st}`, held as coordinate
/// vectors so that it never has to be enumerated.
///
/// Block `s` holds the coordinates of `a_s` in a cyclic basis of `D_s`;
/// earlier blocks are more significant.
#[derive(Clone, Debug)]
pub struct SymbolicLPi {
    pub action: Arc<PartialAction>,
    bases: Vec<CyclicBasis>,
    offsets: Vec<usize>,
    ranks: Vec<u32>,
    // product of generators i and j: (block, coordinates within the block)
    consts: Vec<Product>,
}

impl SymbolicLPi {
    pub fn new(action: Arc<PartialAction>) -> Result<Self> {
        let a = action.ring();
        let ag = a.group();
        let sg = action.sgrp();
        let bases: Vec<CyclicBasis> = action.domains().iter().map(|d| d.cyclic_basis(ag)).collect();
        let mut offsets = Vec::with_capacity(bases.len() + 1);
        offsets.push(0);
        for b in &bases {
            offsets.push(offsets.last().unwrap() + b.gens.len());
        }
        let r = *offsets.last().unwrap();
        if r > MAX_LPI_GENERATORS {
            return Err(Error::cap("L_pi generators", r as u128, MAX_LPI_GENERATORS));
        }
        let ranks: Vec<u32> = bases.iter().flat_map(|b| b.ranks()).collect();
        let gens: Vec<(SElem, Elem)> = sg
            .elements()
            .flat_map(|s| bases[s].gens.iter().map(move |&(f, _)| (s, f)))
            .collect();
        let rows: Vec<Result<Vec<Product>>> = crate::par::map(r, |i| {
            let (s, x) = gens[i];
            let back = action.apply(sg.star(s), x).expect("x in D_s");
            gens.iter()
                .map(|&(t, y)| {
                    let st = sg.mul(s, t);
                    let z = action.apply(s, a.mul(back, y)).ok_or_else(|| {
                        Error::InternalInconsistency(format!(
                            "pi_{}(pi_{}(a) b) undefined",
                            sg.label(s),
                            sg.label(sg.star(s))
                        ))
                    })?;
                    let idx = bases[st].coord_index(z).ok_or_else(|| {
                        Error::InternalInconsistency(format!("product leaves D_{}", sg.label(st)))
                    })?;
                    let b = &bases[st];
                    Ok((st, (0..b.gens.len()).map(|k| i128::from(b.coord(idx, k))).collect()))
                })
                .collect()
        });
        let mut consts = Vec::with_capacity(r * r);
        for row in rows {
            consts.extend(row?);
        }
        Ok(SymbolicLPi {
            action,
            bases,
            offsets,
            ranks,
            consts,
        })
    }

    /// Number of cyclic generators.
    pub fn rank(&self) -> usize {
        self.ranks.len()
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    /// `Π_s |D_s|`.
    pub fn order(&self) -> u128 {
        self.ranks.iter().map(|&d| u128::from(d)).product()
    }

    pub fn zero(&self) -> Vec<i128> {
        vec![0; self.rank()]
    }

    /// Coordinates of `a δ_s`.
    pub fn embed(&self, s: SElem, a: Elem) -> Option<Vec<i128>> {
        let b = &self.bases[s];
        let idx = b.coord_index(a)?;
        let mut v = self.zero();
        for k in 0..b.gens.len() {
            v[self.offsets[s] + k] = i128::from(b.coord(idx, k));
        }
        Some(v)
    }

    /// The coefficient `a_s` of `v`.
    pub fn coefficient(&self, v: &[i128], s: SElem) -> Elem {
        let g = self.action.ring().group();
        self.bases[s].gens.iter().enumerate().fold(0, |acc, (k, &(f, _))| {
            let c = v[self.offsets[s] + k];
            g.add(acc, g.scale(c.rem_euclid(i128::from(self.ranks[self.offsets[s] + k])) as i64, f))
        })
    }

    /// `Σ_s a_s` in `A`.
    pub fn collapse(&self, v: &[i128]) -> Elem {
        let a = self.action.ring();
        (0..self.bases.len()).fold(0, |acc, s| a.add(acc, self.coefficient(v, s)))
    }

    pub fn reduce(&self, v: &mut [i128]) {
        for (x, &d) in v.iter_mut().zip(&self.ranks) {
            *x = x.rem_euclid(i128::from(d));
        }
    }

    pub fn mul(&self, u: &[i128], v: &[i128]) -> Vec<i128> {
        let r = self.rank();
        let mut out = self.zero();
        for (i, &x) in u.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (j, &y) in v.iter().enumerate().filter(|(_, &y)| y != 0) {
                let (blk, ref c) = self.consts[i * r + j];
                let off = self.offsets[blk];
                for (k, &ck) in c.iter().enumerate() {
                    out[off + k] += x * y * ck;
                }
            }
            self.reduce(&mut out);
        }
        out
    }

    /// Product with generator `i` on the left (`left`) or right.
    pub fn mul_generator(&self, i: usize, v: &[i128], left: bool) -> Vec<i128> {
        let mut e = self.zero();
        e[i] = 1;
        if left {
            self.mul(&e, v)
        } else {
            self.mul(v, &e)
        }
    }
}

/// `L_π` as an enumerated ring with its grading; only built when it fits
/// the element cap.
#[derive(Clone, Debug)]
pub struct LPiRing {
    pub sym: Arc<SymbolicLPi>,
    pub ring: Arc<FinRing>,
    pub grading: SystemRing,
}

impl LPiRing {
    /// Fails with `CapExceeded` when `Π_s |D_s| > cap`.
    pub fn new(action: Arc<PartialAction>, cap: usize) -> Result<Self> {
        LPiRing::from_symbolic(Arc::new(SymbolicLPi::new(action)?), cap)
    }

    pub fn from_symbolic(sym: Arc<SymbolicLPi>, cap: usize) -> Result<Self> {
        let needed = sym.order();
        if needed > cap as u128 {
            return Err(Error::cap("L_pi elements", needed, cap));
        }
        let group = FinAbGroup::new(sym.ranks.clone(), cap)?;
        let r = sym.rank();
        let mut consts = vec![0; r * r];
        for (c, (blk, digits)) in consts.iter_mut().zip(&sym.consts) {
            let mut v = sym.zero();
            v[sym.offsets[*blk]..sym.offsets[*blk] + digits.len()].copy_from_slice(digits);
            *c = group.from_digits(&v);
        }
        let ring = Arc::new(FinRing::new("L_pi", group, consts)?);
        let action = &sym.action;
        let components = action
            .sgrp()
            .elements()
            .map(|s| {
                let gens: Vec<Elem> = action
                    .domain(s)
                    .basis()
                    .iter()
                    .map(|&x| ring.group().from_digits(&sym.embed(s, x).expect("x in D_s")))
                    .collect();
                Subgroup::closure(ring.group(), &gens)
            })
            .collect();
        let grading = SystemRing::new(ring.clone(), action.sgrp_arc().clone(), components)?;
        Ok(LPiRing { sym, ring, grading })
    }

    pub fn action(&self) -> &PartialAction {
        &self.sym.action
    }

    pub fn to_vec(&self, x: Elem) -> Vec<i128> {
        self.ring.group().digits(x).into_iter().map(i128::from).collect()
    }

    /// `a δ_s`.
    pub fn embed(&self, s: SElem, a: Elem) -> Option<Elem> {
        self.sym.embed(s, a).map(|v| self.ring.group().from_digits(&v))
    }

    /// The coefficient `a_s` of `x`.
    pub fn coefficient(&self, x: Elem, s: SElem) -> Elem {
        self.sym.coefficient(&self.to_vec(x), s)
    }

    /// `Σ_s a_s` in `A`.
    pub fn collapse(&self, x: Elem) -> Elem {
        self.sym.collapse(&self.to_vec(x))
    }

    /// `X δ_s` for a subgroup `X` of `D_s`.
    pub fn embed_subgroup(&self, s: SElem, x: &Subgroup) -> Subgroup {
        let gens: Vec<Elem> = x
            .basis()
            .iter()
            .map(|&a| self.embed(s, a).expect("subgroup of the domain"))
            .collect();
        Subgroup::closure(self.ring.group(), &gens)
    }
}

pub(crate) fn block_elements(g: &FinAbGroup, b: &CyclicBasis) -> Vec<Elem> {
    let total: usize = b.gens.iter().map(|&(_, n)| n as usize).product();
    (0..total)
        .map(|idx| {
            b.gens.iter().enumerate().fold(0, |acc, (i, &(f, _))| {
                g.add(acc, g.scale(b.coord(idx, i) as i64, f))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::build;
    use crate::invsgrp::{FinGroupoid, InverseSemigroup};
    use crate::paction::GroupoidPartialAction;

    #[test]
    fn trivial_action_gives_base_ring() {
        let f = Arc::new(build::galois_field(2, 2, 4096).unwrap());
        let sg = Arc::new(InverseSemigroup::trivial("e"));
        let pa = PartialAction::from_fn(f.clone(), sg, vec![Subgroup::whole(f.group())], |_, x| x).unwrap();
        let l = LPiRing::new(Arc::new(pa), 4096).unwrap();
        assert_eq!(l.ring.order(), 4);
        for x in l.ring.elements() {
            for y in l.ring.elements() {
                let (a, b) = (l.collapse(x), l.collapse(y));
                assert_eq!(l.collapse(l.ring.mul(x, y)), f.mul(a, b));
            }
        }
    }

    #[test]
    fn pair_groupoid_ring_data() {
        let g = Arc::new(FinGroupoid::pair(2).unwrap());
        let gpa = GroupoidPartialAction::groupoid_ring_data(&build::prime_field(2).unwrap(), g, 4096).unwrap();
        let pa = Arc::new(gpa.induced_action().unwrap());
        let l = LPiRing::new(pa, 4096).unwrap();
        assert_eq!(l.ring.order(), 16);
        assert!(l.ring.is_associative());
        assert!(l.grading.is_graded());
        // the symbolic product agrees with the table
        for x in l.ring.elements() {
            for y in l.ring.elements() {
                let v = l.sym.mul(&l.to_vec(x), &l.to_vec(y));
                assert_eq!(l.ring.group().from_digits(&v), l.ring.mul(x, y));
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = Arc::new(FinGroupoid::pair(2).unwrap());
        let gpa = GroupoidPartialAction::groupoid_ring_data(&build::prime_field(2).unwrap(), g, 4096).unwrap();
        let pa = Arc::new(gpa.induced_action().unwrap());
        assert!(LPiRing::new(pa, 8).unwrap_err().is_cap());
    }
}
