use super::system::SystemRing;
use crate::error::{Error, Result};
use crate::finring::{
    center_of, centralizer, has_ideal_intersection_property, ideal_closure, is_ideal, Elem, Ideal,
    Side, Subgroup,
};
use crate::invsgrp::SElem;
use crate::par;
use crate::verdict::Fact;

impl SystemRing {
    /// Sum of the intersections of `j` with every component.
    fn homogeneous_part(&self, j: &Subgroup) -> Subgroup {
        let g = self.ring().group();
        let mut gens = Vec::new();
        for c in self.components() {
            gens.extend_from_slice(j.intersection(g, c).basis());
        }
        Subgroup::closure(g, &gens)
    }

    /// Smallest system ideal containing the nonzero homogeneous element `h`
    /// of `R_s`.
    pub fn system_ideal_closure(&self, h: Elem, s: SElem) -> Result<Ideal> {
        if h == 0 || !self.component(s).contains(h) {
            return Err(Error::NotHomogeneous(format!(
                "{} / {}",
                self.ring().fmt_elem(h),
                self.sgrp().label(s)
            )));
        }
        Ok(self.system_ideal_closure_unchecked(h))
    }

    fn system_ideal_closure_unchecked(&self, h: Elem) -> Ideal {
        let ring = self.ring();
        let mut j = Subgroup::closure(ring.group(), &[h]);
        loop {
            let i = ideal_closure(ring, j.basis(), Side::Both);
            let next = self.homogeneous_part(&i);
            if next == j {
                debug_assert!(is_ideal(ring, &next, Side::Both));
                let mut group = next;
                group.set_generators(&[h]);
                return Ideal {
                    group,
                    side: Side::Both,
                };
            }
            j = next;
        }
    }

    /// Ideal that equals the sum of its homogeneous parts.
    pub fn is_system_ideal(&self, i: &Subgroup) -> bool {
        is_ideal(self.ring(), i, Side::Both) && self.is_spanned_by_homogeneous(i)
    }

    /// A nonzero homogeneous element whose system ideal is proper.
    pub fn system_simplicity_failure(&self) -> Option<(SElem, Elem, Ideal)> {
        if self.ring().is_zero_ring() {
            return None;
        }
        let pairs: Vec<(SElem, Elem)> = self
            .sgrp()
            .elements()
            .flat_map(|s| self.component(s).nonzero().map(move |h| (s, h)))
            .collect();
        par::find_map_first(pairs.len(), |i| {
            let (s, h) = pairs[i];
            let closure = self.system_ideal_closure_unchecked(h);
            (!closure.is_whole()).then_some((s, h, closure))
        })
    }

    /// The only system ideals are `{0}` and the ring, which is nonzero.
    pub fn system_simple(&self) -> Fact {
        if self.ring().is_zero_ring() {
            return Fact::no("zero ring");
        }
        match self.system_simplicity_failure() {
            None => Fact::yes(),
            Some((s, h, i)) => Fact::no(format!(
                "{} in R_{} generates a proper system ideal of order {}",
                self.ring().fmt_elem(h),
                self.sgrp().label(s),
                i.order()
            )),
        }
    }

    /// `C_R(Z(R_0)) ⊆ R_0`.
    pub fn centralizer_condition(&self) -> Fact {
        let z = center_of(self.ring(), self.r0());
        let c = centralizer(self.ring(), &z);
        match c.first_outside(self.r0()) {
            None => Fact::yes(),
            Some(x) => Fact::no(format!(
                "{} centralizes Z(R_0) but is not in R_0",
                self.ring().fmt_elem(x)
            )),
        }
    }

    /// `C_R(R_0) = R_0`.
    pub fn r0_maximal_commutative(&self) -> Fact {
        let c = centralizer(self.ring(), self.r0());
        if let Some(x) = c.first_outside(self.r0()) {
            return Fact::no(format!(
                "{} commutes with R_0 but is not in R_0",
                self.ring().fmt_elem(x)
            ));
        }
        if let Some(x) = self.r0().first_outside(&c) {
            return Fact::no(format!("R_0 is not commutative at {}", self.ring().fmt_elem(x)));
        }
        Fact::yes()
    }

    /// Every nonzero ideal meets `C_R(Z(R_0))` nontrivially.
    pub fn intersection_property_with_centralizer(&self) -> bool {
        let z = center_of(self.ring(), self.r0());
        let c = centralizer(self.ring(), &z);
        has_ideal_intersection_property(self.ring(), &c)
    }
}
