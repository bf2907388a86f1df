use std::sync::Arc;

use super::lpi::{LPiRing, SymbolicLPi};
use crate::error::{Error, Result};
use crate::finring::{Elem, FinRing, Lattice, LatticeQuotient, Subgroup};
use crate::invsgrp::SElem;
use crate::paction::{extend_additively, PartialAction};
use crate::syscheck::SystemRing;

/// `A ⋊_π S = L_π / I` with its grading and the maps `t` and `i`.
///
/// The quotient is computed on coordinate vectors, so only its own
/// elements are enumerated; `lpi` is present when `L_π` itself fits the cap.
#[derive(Clone, Debug)]
pub struct SkewRing {
    pub sym: Arc<SymbolicLPi>,
    pub lpi: Option<LPiRing>,
    pub relation_ideal: Lattice,
    pub ring: Arc<FinRing>,
    pub grading: SystemRing,
    quotient: LatticeQuotient,
    // t on quotient elements, when t vanishes on I
    tmap: std::result::Result<Vec<Elem>, String>,
    // i on elements of A, when it is well defined
    imap: std::result::Result<Vec<Elem>, String>,
}

impl SkewRing {
    /// Fails with `CapExceeded` when the quotient has more than `cap`
    /// elements; `L_π` is enumerated only when it has at most `cap`.
    pub fn new(action: Arc<PartialAction>, cap: usize) -> Result<Self> {
        let sym = Arc::new(SymbolicLPi::new(action)?);
        let lpi = match LPiRing::from_symbolic(sym.clone(), cap) {
            Ok(l) => Some(l),
            Err(e) if e.is_cap() => None,
            Err(e) => return Err(e),
        };
        SkewRing::build(sym, lpi, cap)
    }

    fn build(sym: Arc<SymbolicLPi>, lpi: Option<LPiRing>, cap: usize) -> Result<Self> {
        let pa = sym.action.clone();
        let sg = pa.sgrp();
        let mut gens = Vec::new();
        for (r, s) in sg.strict_order_pairs() {
            for &a in pa.domain(r).basis() {
                let ar = sym.embed(r, a).expect("a in D_r");
                let as_ = sym.embed(s, a).ok_or_else(|| {
                    Error::InternalInconsistency(format!(
                        "D_{} is not contained in D_{} although {} <= {}",
                        sg.label(r),
                        sg.label(s),
                        sg.label(r),
                        sg.label(s)
                    ))
                })?;
                gens.push(ar.iter().zip(&as_).map(|(x, y)| x - y).collect::<Vec<i128>>());
            }
        }
        let relation_ideal = ideal_closure(&sym, gens);
        let quotient = relation_ideal.quotient(cap)?;
        let qk = quotient.group.rank();
        let mut consts = vec![0; qk * qk];
        for a in 0..qk {
            for b in 0..qk {
                let p = sym.mul(quotient.lift_generator(a), quotient.lift_generator(b));
                consts[a * qk + b] = quotient.project(&p);
            }
        }
        let ring = Arc::new(FinRing::new("A x_pi S", quotient.group.clone(), consts)?);
        let class = |s: SElem, a: Elem| quotient.project(&sym.embed(s, a).expect("a in D_s"));
        let components = sg
            .elements()
            .map(|s| {
                let gens: Vec<Elem> = pa.domain(s).basis().iter().map(|&x| class(s, x)).collect();
                Subgroup::closure(ring.group(), &gens)
            })
            .collect();
        let grading = SystemRing::new(ring.clone(), pa.sgrp_arc().clone(), components)?;

        let a = pa.ring();
        let tmap = match relation_ideal.rows().iter().find(|v| sym.collapse(v) != 0) {
            Some(v) => Err(format!("t is {} on a relation", a.fmt_elem(sym.collapse(v)))),
            None => Ok(crate::par::map(ring.order(), |q| sym.collapse(&quotient.lift(q)))),
        };
        let mut pairs = Vec::new();
        for e in sg.idempotents() {
            for &x in pa.domain(e).basis() {
                pairs.push((x, class(e, x)));
            }
        }
        let imap = match extend_additively(a.group(), ring.group(), &pairs) {
            Ok(m) if m.len() == a.order() => Ok(a.elements().map(|x| m[&x]).collect()),
            Ok(_) => Err("the idempotent domains do not span A".to_string()),
            Err(x) => Err(format!("two decompositions of {} have different images", a.fmt_elem(x))),
        };
        Ok(SkewRing {
            sym,
            lpi,
            relation_ideal,
            ring,
            grading,
            quotient,
            tmap,
            imap,
        })
    }

    pub fn action(&self) -> &PartialAction {
        &self.sym.action
    }

    /// Class of a coordinate vector of `L_π`.
    pub fn project_vec(&self, v: &[i128]) -> Elem {
        self.quotient.project(v)
    }

    /// Class of an element of the enumerated `L_π`.
    pub fn project(&self, x: Elem) -> Elem {
        let lpi = self.lpi.as_ref().expect("L_pi is enumerated");
        self.quotient.project(&lpi.to_vec(x))
    }

    /// Some coordinate vector in the class `q`.
    pub fn representative(&self, q: Elem) -> Vec<i128> {
        let mut v = self.quotient.lift(q);
        self.sym.reduce(&mut v);
        v
    }

    /// `\overline{a δ_s}`.
    pub fn class_of(&self, s: SElem, a: Elem) -> Option<Elem> {
        self.sym.embed(s, a).map(|v| self.quotient.project(&v))
    }

    /// `t(Σ ā_i δ_{s_i}) = Σ a_i`, or `TNotWellDefined` if `t` does not
    /// vanish on the relation ideal.
    pub fn tmap(&self) -> Result<&[Elem]> {
        self.tmap.as_deref().map_err(|w| Error::TNotWellDefined(w.clone()))
    }

    /// `i(Σ a_e) = Σ \overline{a_e δ_e}` over idempotents `e`, when the
    /// choice of decomposition does not matter.
    pub fn imap(&self) -> std::result::Result<&[Elem], &str> {
        self.imap.as_deref().map_err(String::as_str)
    }

    /// `i(A)`, or `R_0` when `i` is not defined.
    pub fn base_image(&self) -> Subgroup {
        match self.imap() {
            Ok(i) => {
                let a = self.action().ring();
                let gens: Vec<Elem> = a.group().basis_elems().into_iter().map(|x| i[x]).collect();
                Subgroup::closure(self.ring.group(), &gens)
            }
            Err(_) => self.grading.r0().clone(),
        }
    }

    /// Checks that `i` is an injective ring homomorphism onto `R_0` with
    /// `t ∘ i = id_A` and `i ∘ t = id` on `R_0`, returning the first
    /// failure.
    pub fn identification_failure(&self) -> Option<String> {
        let a = self.action().ring();
        let q = &*self.ring;
        let i = match self.imap() {
            Ok(i) => i,
            Err(w) => return Some(format!("i is not well defined: {w}")),
        };
        let t = match self.tmap() {
            Ok(t) => t,
            Err(e) => return Some(e.to_string()),
        };
        let basis = a.group().basis_elems();
        for &x in &basis {
            for &y in &basis {
                if i[a.mul(x, y)] != q.mul(i[x], i[y]) {
                    return Some(format!("i is not multiplicative at {} * {}", a.fmt_elem(x), a.fmt_elem(y)));
                }
            }
        }
        if let Some(x) = a.elements().find(|&x| t[i[x]] != x) {
            return Some(format!("t(i({})) = {}", a.fmt_elem(x), a.fmt_elem(t[i[x]])));
        }
        let r0 = self.grading.r0();
        if let Some(&z) = r0.elements().iter().find(|&&z| i[t[z]] != z) {
            return Some(format!("i(t({})) differs", q.fmt_elem(z)));
        }
        if self.base_image() != *r0 {
            return Some("i(A) differs from R_0".into());
        }
        None
    }
}

/// Two-sided ideal of `L_π` generated by `gens`, as a lattice.
fn ideal_closure(sym: &SymbolicLPi, gens: Vec<Vec<i128>>) -> Lattice {
    let mut lat = Lattice::new(sym.ranks());
    let mut queue = gens;
    // products of anything already spanned are spanned by products of the
    // vectors that enlarged the lattice
    while let Some(v) = queue.pop() {
        if !lat.insert(&v) {
            continue;
        }
        for i in 0..sym.rank() {
            queue.push(sym.mul_generator(i, &v, true));
            queue.push(sym.mul_generator(i, &v, false));
        }
    }
    lat
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{build, is_simple};
    use crate::invsgrp::{FinGroupoid, InverseSemigroup};
    use crate::paction::GroupoidPartialAction;

    #[test]
    fn trivial_action_quotient_is_base() {
        let f = Arc::new(build::prime_field(3).unwrap());
        let sg = Arc::new(InverseSemigroup::trivial("e"));
        let pa = PartialAction::from_fn(f.clone(), sg, vec![Subgroup::whole(f.group())], |_, x| x).unwrap();
        let sk = SkewRing::new(Arc::new(pa), 4096).unwrap();
        assert!(sk.relation_ideal.is_zero());
        assert_eq!(sk.ring.order(), 3);
        assert!(sk.identification_failure().is_none());
    }

    #[test]
    fn pair_groupoid_is_matrix_ring() {
        let g = Arc::new(FinGroupoid::pair(2).unwrap());
        let gpa = GroupoidPartialAction::groupoid_ring_data(&build::prime_field(2).unwrap(), g, 4096).unwrap();
        let sk = SkewRing::new(Arc::new(gpa.induced_action().unwrap()), 4096).unwrap();
        assert_eq!(sk.ring.order(), 16);
        assert!(is_simple(&sk.ring));
        assert!(sk.identification_failure().is_none());
        // projection of the enumerated L_pi is a surjective ring map
        let lpi = sk.lpi.as_ref().unwrap();
        let l = &*lpi.ring;
        let mut hit = vec![false; sk.ring.order()];
        for x in l.elements() {
            hit[sk.project(x)] = true;
            for y in l.elements() {
                assert_eq!(sk.project(l.mul(x, y)), sk.ring.mul(sk.project(x), sk.project(y)));
            }
        }
        assert!(hit.into_iter().all(|h| h));
    }
}
