use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finring::{span_products, Elem, FinRing, Subgroup};
use crate::invsgrp::{InverseSemigroup, SElem};
use crate::par;
use crate::verdict::Fact;

/// A ring with additive subgroups `R_s`, one per semigroup element, that sum
/// to the ring and satisfy `R_s R_t ⊆ R_st`.
#[derive(Clone, Debug)]
pub struct SystemRing {
    ring: Arc<FinRing>,
    sgrp: Arc<InverseSemigroup>,
    components: Vec<Subgroup>,
    r0: Subgroup,
    degrees: OnceLock<Option<Vec<u32>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralPredicates {
    pub graded: bool,
    pub strong: Fact,
    pub coherent: Fact,
    pub idempotent_coherent: Fact,
    pub symmetric: Fact,
    pub left_nondeg_idempotent_base: Fact,
    pub right_nondeg_idempotent_base: Fact,
    pub left_nondeg_all_base: Fact,
    pub right_nondeg_all_base: Fact,
}

impl SystemRing {
    pub fn new(
        ring: Arc<FinRing>,
        sgrp: Arc<InverseSemigroup>,
        components: Vec<Subgroup>,
    ) -> Result<Self> {
        if components.len() != sgrp.size() {
            return Err(Error::MalformedSpec(format!(
                "{} components for a semigroup of size {}",
                components.len(),
                sgrp.size()
            )));
        }
        let g = ring.group();
        let mut total = Subgroup::zero(g);
        for c in &components {
            total = total.sum(g, c);
        }
        if let Some(x) = Subgroup::whole(g).first_outside(&total) {
            return Err(Error::SumNotWhole(ring.fmt_elem(x)));
        }
        for s in sgrp.elements() {
            for t in sgrp.elements() {
                let target = &components[sgrp.mul(s, t)];
                for &a in components[s].basis() {
                    for &b in components[t].basis() {
                        let ab = ring.mul(a, b);
                        if !target.contains(ab) {
                            return Err(Error::ProductEscapes {
                                s: sgrp.label(s).to_string(),
                                t: sgrp.label(t).to_string(),
                                witness: format!(
                                    "{} * {} = {}",
                                    ring.fmt_elem(a),
                                    ring.fmt_elem(b),
                                    ring.fmt_elem(ab)
                                ),
                            });
                        }
                    }
                }
            }
        }
        let mut r0 = Subgroup::zero(g);
        for e in sgrp.idempotents() {
            r0 = r0.sum(g, &components[e]);
        }
        Ok(SystemRing {
            ring,
            sgrp,
            components,
            r0,
            degrees: OnceLock::new(),
        })
    }

    pub fn ring(&self) -> &FinRing {
        &self.ring
    }

    pub fn ring_arc(&self) -> &Arc<FinRing> {
        &self.ring
    }

    pub fn sgrp(&self) -> &InverseSemigroup {
        &self.sgrp
    }

    pub fn sgrp_arc(&self) -> &Arc<InverseSemigroup> {
        &self.sgrp
    }

    pub fn component(&self, s: SElem) -> &Subgroup {
        &self.components[s]
    }

    pub fn components(&self) -> &[Subgroup] {
        &self.components
    }

    /// `R_0`, the sum of the components at idempotents.
    pub fn r0(&self) -> &Subgroup {
        &self.r0
    }

    fn label(&self, s: SElem) -> &str {
        self.sgrp.label(s)
    }

    fn fmt(&self, x: Elem) -> String {
        self.ring.fmt_elem(x)
    }

    /// `R_s R_{s*}` as an additive subgroup.
    pub fn left_epsilon_ring(&self, s: SElem) -> Subgroup {
        span_products(&self.ring, &self.components[s], &self.components[self.sgrp.star(s)])
    }

    /// `R_{s*} R_s` as an additive subgroup.
    pub fn right_epsilon_ring(&self, s: SElem) -> Subgroup {
        span_products(&self.ring, &self.components[self.sgrp.star(s)], &self.components[s])
    }

    pub fn is_graded(&self) -> bool {
        let prod = self
            .components
            .iter()
            .try_fold(1usize, |acc, c| acc.checked_mul(c.order()));
        prod == Some(self.ring.order())
    }

    pub fn strong(&self) -> Fact {
        let n = self.sgrp.size();
        let bad = par::find_first(n * n, |i| {
            let (s, t) = (i / n, i % n);
            span_products(&self.ring, &self.components[s], &self.components[t])
                != self.components[self.sgrp.mul(s, t)]
        });
        Fact::from_failure(bad.map(|i| {
            format!("R_{} R_{} != R_{}", self.label(i / n), self.label(i % n), {
                self.label(self.sgrp.mul(i / n, i % n))
            })
        }))
    }

    pub fn coherent(&self) -> Fact {
        for (s, t) in self.sgrp.strict_order_pairs() {
            if let Some(x) = self.components[s].first_outside(&self.components[t]) {
                return Fact::no(format!(
                    "{} <= {} but {} in R_{} not in R_{}",
                    self.label(s),
                    self.label(t),
                    self.fmt(x),
                    self.label(s),
                    self.label(t)
                ));
            }
        }
        Fact::yes()
    }

    pub fn idempotent_coherent(&self) -> Fact {
        for s in self.sgrp.elements() {
            let c = &self.components[s];
            for &a in self.r0.basis() {
                for &b in c.basis() {
                    if !c.contains(self.ring.mul(a, b)) {
                        return Fact::no(format!(
                            "{} * {} leaves R_{}",
                            self.fmt(a),
                            self.fmt(b),
                            self.label(s)
                        ));
                    }
                    if !c.contains(self.ring.mul(b, a)) {
                        return Fact::no(format!(
                            "{} * {} leaves R_{}",
                            self.fmt(b),
                            self.fmt(a),
                            self.label(s)
                        ));
                    }
                }
            }
        }
        Fact::yes()
    }

    /// `(R_s R_{s*}) R_s = R_s` for every `s`.
    pub fn symmetric(&self) -> Fact {
        for s in self.sgrp.elements() {
            let lhs = span_products(&self.ring, &self.left_epsilon_ring(s), &self.components[s]);
            if lhs != self.components[s] {
                return Fact::no(format!("R_s R_s* R_s != R_s at s = {}", self.label(s)));
            }
        }
        Fact::yes()
    }

    /// Non-degeneracy; `all_base` quantifies over every `s` instead of only
    /// the idempotents.
    pub fn nondegenerate(&self, left: bool, all_base: bool) -> Fact {
        let sg = &self.sgrp;
        for s in sg.elements() {
            if !all_base && !sg.is_idempotent(s) {
                continue;
            }
            let partners: Vec<SElem> = sg
                .elements()
                .filter(|&t| {
                    let st = if left { sg.mul(t, s) } else { sg.mul(s, t) };
                    sg.is_idempotent(st)
                })
                .collect();
            let bad = par::find_first_in(self.components[s].elements(), |&r| {
                r != 0
                    && !partners.iter().any(|&t| {
                        self.components[t].basis().iter().any(|&x| {
                            let p = if left { self.ring.mul(x, r) } else { self.ring.mul(r, x) };
                            p != 0
                        })
                    })
            });
            if let Some(&r) = bad {
                return Fact::no(format!(
                    "{} in R_{} is annihilated by every admissible component",
                    self.fmt(r),
                    self.label(s)
                ));
            }
        }
        Fact::yes()
    }

    pub fn structural_predicates(&self) -> StructuralPredicates {
        StructuralPredicates {
            graded: self.is_graded(),
            strong: self.strong(),
            coherent: self.coherent(),
            idempotent_coherent: self.idempotent_coherent(),
            symmetric: self.symmetric(),
            left_nondeg_idempotent_base: self.nondegenerate(true, false),
            right_nondeg_idempotent_base: self.nondegenerate(false, false),
            left_nondeg_all_base: self.nondegenerate(true, true),
            right_nondeg_all_base: self.nondegenerate(false, true),
        }
    }

    /// Number of nonzero homogeneous components of `r`; only for graded
    /// systems, where the decomposition is unique.
    pub fn degree(&self, r: Elem) -> Result<u32> {
        let table = self.degrees.get_or_init(|| {
            if !self.is_graded() {
                return None;
            }
            let g = self.ring.group();
            let mut deg: Vec<Option<u32>> = vec![None; self.ring.order()];
            deg[0] = Some(0);
            let mut reached = vec![0usize];
            for c in &self.components {
                let mut next = Vec::with_capacity(reached.len() * c.order());
                for &x in &reached {
                    let dx = deg[x].expect("reached");
                    for &y in c.nonzero().collect::<Vec<_>>().iter() {
                        let z = g.add(x, y);
                        if deg[z].is_none() {
                            deg[z] = Some(dx + 1);
                            next.push(z);
                        }
                    }
                }
                reached.extend(next);
            }
            Some(deg.into_iter().map(|d| d.unwrap_or(u32::MAX)).collect())
        });
        match table {
            Some(t) => Ok(t[r]),
            None => Err(Error::NotGraded),
        }
    }

    /// Whether `i` equals the sum of its intersections with the components.
    pub fn is_spanned_by_homogeneous(&self, i: &Subgroup) -> bool {
        let g = self.ring.group();
        let mut acc = Subgroup::zero(g);
        for c in &self.components {
            acc = acc.sum(g, &i.intersection(g, c));
        }
        acc == *i
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::build;

    /// `F_2[C_2]` graded by the group with adjoined zero `{1, g, o}`.
    fn group_ring_c2() -> SystemRing {
        // basis: (1,0) = 1, (0,1) = g; g g = 1
        let ring = FinRing::from_spec(
            "F2[C2]",
            vec![2, 2],
            &[(0, 0, vec![1, 0]), (0, 1, vec![0, 1]), (1, 0, vec![0, 1]), (1, 1, vec![1, 0])],
            4096,
        )
        .unwrap();
        let sg = crate::invsgrp::FinGroupoid::cyclic(2).unwrap().induced_semigroup();
        let g = ring.group();
        let comps = vec![
            Subgroup::closure(g, &[ring.elem(&[1, 0])]),
            Subgroup::closure(g, &[ring.elem(&[0, 1])]),
            Subgroup::zero(g),
        ];
        SystemRing::new(Arc::new(ring), Arc::new(sg), comps).unwrap()
    }

    #[test]
    fn group_ring_structure() {
        let sr = group_ring_c2();
        let p = sr.structural_predicates();
        assert!(p.graded);
        assert!(p.coherent.holds && p.idempotent_coherent.holds && p.symmetric.holds);
        assert!(p.strong.holds);
        assert!(p.left_nondeg_all_base.holds && p.right_nondeg_idempotent_base.holds);
        assert_eq!(sr.degree(0).unwrap(), 0);
        assert_eq!(sr.degree(sr.ring().elem(&[1, 0])).unwrap(), 1);
        assert_eq!(sr.degree(sr.ring().elem(&[1, 1])).unwrap(), 2);
    }

    #[test]
    fn broken_systems_rejected() {
        let f = build::prime_field(2).unwrap();
        let r = Arc::new(build::product(&f, &f, 4096).unwrap());
        let sg = Arc::new(InverseSemigroup::trivial("e"));
        let g = r.group();
        let half = Subgroup::closure(g, &[r.elem(&[1, 0])]);
        assert!(matches!(
            SystemRing::new(r.clone(), sg.clone(), vec![half]),
            Err(Error::SumNotWhole(_))
        ));
        let c2 = Arc::new(crate::invsgrp::FinGroupoid::cyclic(2).unwrap().induced_semigroup());
        let diag = Subgroup::closure(g, &[r.elem(&[1, 1])]);
        let (whole, zero) = (Subgroup::whole(g), Subgroup::zero(g));
        let e = SystemRing::new(r.clone(), c2, vec![diag, whole, zero]);
        assert!(matches!(e, Err(Error::ProductEscapes { .. })));
    }

    #[test]
    fn degree_requires_grading() {
        let f = build::prime_field(2).unwrap();
        let r = Arc::new(f);
        let c2 = Arc::new(crate::invsgrp::FinGroupoid::cyclic(2).unwrap().induced_semigroup());
        let g = r.group();
        let whole = Subgroup::whole(g);
        let sr = SystemRing::new(r.clone(), c2, vec![whole.clone(), whole.clone(), whole]).unwrap();
        assert!(!sr.is_graded());
        assert_eq!(sr.degree(1), Err(Error::NotGraded));
    }
}
