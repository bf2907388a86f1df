use super::lpi::LPiRing;
use super::skew_ring::SkewRing;
use crate::finring::{
    center_of, centralizer, has_ideal_intersection_property, is_maximal_commutative,
    proper_ideal_witness, span_products, unitality, unitality_of,
};
use crate::syscheck::Property;
use crate::verdict::{Fact, SystemVerdict};

/// Largest number of ideals of `A` enumerated for the domain identity.
const IDEAL_ENUMERATION_LIMIT: usize = 512;

const LPI_CHECK_NAMES: &[&str] = &[
    "lpi-graded",
    "lpi-component-products-are-domain-squares",
    "lpi-epsilon-ring-unitality-matches-domain-square",
    "lpi-triple-products-are-domain-cubes",
    "lpi-symmetric-iff-domains-idempotent",
    "lpi-epsilon-strong-iff-action-s-unital/left",
    "lpi-epsilon-strong-iff-action-s-unital/right",
    "lpi-associative-when-action-s-unital/left",
    "lpi-associative-when-action-s-unital/right",
    "lpi-epsilon-strong-unital-when-action-unital",
];

/// Facts about the base ring and its image that the theorem lines share.
#[derive(Clone, Debug)]
pub struct BaseFacts {
    pub action_s_unital: bool,
    pub ring_s_unital: bool,
    pub commutative: bool,
    pub s_simple: Fact,
    pub system_simple: Fact,
    pub simple: Fact,
    pub centralizer_in_base: Fact,
    pub maximal_commutative: bool,
    pub intersection_property: bool,
    pub faithful: Fact,
    pub domains_nonzero: bool,
}

impl SkewRing {
    pub fn base_facts(&self) -> BaseFacts {
        let pa = self.action();
        let q = &*self.ring;
        let base = self.base_image();
        let z = center_of(q, &base);
        let c = centralizer(q, &z);
        let centralizer_in_base = match c.first_outside(&base) {
            None => Fact::yes(),
            Some(x) => Fact::no(format!("{} centralizes Z(A) but is not in A", q.fmt_elem(x))),
        };
        let simple = if q.is_zero_ring() {
            Fact::no("zero ring")
        } else {
            match proper_ideal_witness(q) {
                None => Fact::yes(),
                Some((x, i)) => Fact::no(format!(
                    "{} generates a proper ideal of order {}",
                    q.fmt_elem(x),
                    i.order()
                )),
            }
        };
        BaseFacts {
            action_s_unital: pa.action_unitality().s_unital.holds,
            ring_s_unital: unitality(pa.ring()).s_unital,
            commutative: pa.ring().is_commutative(),
            s_simple: pa.is_s_simple(),
            system_simple: self.grading.system_simple(),
            simple,
            centralizer_in_base,
            maximal_commutative: is_maximal_commutative(q, &base),
            intersection_property: has_ideal_intersection_property(q, &base),
            faithful: pa.is_faithful(),
            domains_nonzero: pa.nonidempotent_domains_nonzero(),
        }
    }

    /// Set-theoretic identities of `L_π` and the quotient: coherence,
    /// component products, triple products, epsilon-strength versus
    /// s-unitality of the action, associativity, and the identification of
    /// `A` with `R_0`.
    pub fn structure_checks(&self) -> SystemVerdict {
        let mut v = SystemVerdict::new();
        let pa = self.action();
        let a = pa.ring();
        let coh = self.grading.coherent();
        v.check("skew-ring-coherent", coh.holds, coh.witness);
        match &self.lpi {
            Some(lpi) => v.extend(self.lpi_checks(lpi)),
            None => {
                for name in LPI_CHECK_NAMES {
                    v.skipped(*name, "L_pi cap");
                }
            }
        }

        let au = pa.action_unitality();
        let su = au.s_unital.holds && unitality(a).s_unital;


        let t_ok = self.tmap().is_ok();
        v.implication(
            "collapse-vanishes-on-relation-ideal",
            su,
            t_ok,
            self.tmap().err().map(|e| e.to_string()),
        );
        let ident = self.identification_failure();
        v.implication("base-ring-identified-with-r0", su, ident.is_none(), ident);

        v.extend(self.action_checks());
        v
    }

    /// Lines that need `L_π` enumerated.
    fn lpi_checks(&self, lpi: &LPiRing) -> SystemVerdict {
        let mut v = SystemVerdict::new();
        let pa = self.action();
        let a = pa.ring();
        let sg = pa.sgrp();
        let l = &*lpi.ring;
        let lg = &lpi.grading;
        v.check("lpi-graded", lg.is_graded(), None);
        let mut products = Fact::yes();
        let mut triples = Fact::yes();
        let mut square_units = Fact::yes();
        let mut all_idempotent = true;
        for s in sg.elements() {
            let d = pa.domain(s);
            let dd = span_products(a, d, d);
            let ddd = span_products(a, &dd, d);
            all_idempotent &= dd == *d;
            let ss = sg.mul(s, sg.star(s));
            let rr = lg.left_epsilon_ring(s);
            if products.holds && rr != lpi.embed_subgroup(ss, &dd) {
                products = Fact::no(format!("R_s R_s* differs from D_s D_s delta_ss* at s = {}", sg.label(s)));
            }
            let left = span_products(l, &rr, lg.component(s));
            let right = span_products(l, lg.component(s), &lg.right_epsilon_ring(s));
            let target = lpi.embed_subgroup(s, &ddd);
            if triples.holds && (left != target || right != target) {
                triples = Fact::no(format!("triple products differ at s = {}", sg.label(s)));
            }
            let ul = unitality_of(l, &rr);
            let ua = unitality_of(a, &dd);
            if square_units.holds
                && (ul.left_s_unital != ua.left_s_unital || ul.right_s_unital != ua.right_s_unital)
            {
                square_units = Fact::no(format!(
                    "s-unitality of R_s R_s* and D_s D_s disagree at s = {}",
                    sg.label(s)
                ));
            }
        }
        v.check("lpi-component-products-are-domain-squares", products.holds, products.witness);
        v.check("lpi-epsilon-ring-unitality-matches-domain-square", square_units.holds, square_units.witness);
        v.check("lpi-triple-products-are-domain-cubes", triples.holds, triples.witness);
        let sym = lg.symmetric();
        v.equivalence("lpi-symmetric-iff-domains-idempotent", sym.holds, all_idempotent, sym.witness);

        let au = pa.action_unitality();
        let eps = lg.epsilon_strong(Property::SUnital);
        v.equivalence(
            "lpi-epsilon-strong-iff-action-s-unital/left",
            eps.left.holds,
            au.left_s_unital.holds,
            au.left_s_unital.witness.clone(),
        );
        v.equivalence(
            "lpi-epsilon-strong-iff-action-s-unital/right",
            eps.right.holds,
            au.right_s_unital.holds,
            au.right_s_unital.witness.clone(),
        );
        let assoc_witness = l.find_nonassociative_triple().map(|(i, j, k)| {
            format!("generators {} {} {} do not associate", i + 1, j + 1, k + 1)
        });
        for (side, hyp) in [("left", au.left_s_unital.holds), ("right", au.right_s_unital.holds)] {
            v.implication(
                format!("lpi-associative-when-action-s-unital/{side}"),
                hyp,
                l.is_associative(),
                assoc_witness.clone(),
            );
        }
        let eps_unital = lg.epsilon_strong(Property::Unital);
        v.implication(
            "lpi-epsilon-strong-unital-when-action-unital",
            au.unital.holds,
            eps_unital.both.holds,
            eps_unital.both.witness,
        );
        v
    }

    /// Properties of the action itself: the ideal identity
    /// `J ∩ D_s = span(D_s J)` under s-unitality and the closure operator.
    pub fn action_checks(&self) -> SystemVerdict {
        let mut v = SystemVerdict::new();
        let pa = self.action();
        let au = pa.action_unitality();
        for (side, left, hyp) in [("left", true, au.left_s_unital.holds), ("right", false, au.right_s_unital.holds)] {
            let name = format!("domain-meets-ideal-as-product/{side}");
            if !hyp {
                v.implication(name, false, true, None);
                continue;
            }
            match crate::finring::all_ideals(pa.ring(), IDEAL_ENUMERATION_LIMIT) {
                None => v.skipped(name, "ideal count"),
                Some(_) => {
                    let bad = pa.domain_ideal_identity_failure(left, IDEAL_ENUMERATION_LIMIT);
                    let w = bad.map(|(s, j)| format!("s = {}, ideal of order {}", pa.sgrp().label(s), j.order()));
                    v.implication(name, true, w.is_none(), w);
                }
            }
        }
        let a = pa.ring();
        let mut bad = None;
        for x in a.elements() {
            let j = pa.s_invariant_closure(x);
            let again = j.basis().iter().all(|&y| pa.s_invariant_closure(y).is_subset(&j));
            if !j.contains(x) || !pa.is_s_invariant(&j) || !again {
                bad = Some(a.fmt_elem(x));
                break;
            }
        }
        v.check("invariant-closure-is-a-closure", bad.is_none(), bad);
        v
    }

    /// Simplicity of `A ⋊_π S` against S-simplicity, maximal commutativity,
    /// the ideal intersection property and faithfulness, gated on `π` and `A`
    /// being s-unital.
    pub fn theorem_verdict(&self) -> SystemVerdict {
        let f = self.base_facts();
        self.theorem_lines(&f, "s")
    }

    pub(crate) fn theorem_lines(&self, f: &BaseFacts, letter: &str) -> SystemVerdict {
        let mut v = SystemVerdict::new();
        let su = f.action_s_unital && f.ring_s_unital;
        let simple = f.simple.holds;
        let ss = f.s_simple.holds;
        v.implication(
            format!("system-simple-iff-{letter}-simple"),
            su,
            f.system_simple.holds == ss,
            Some(format!("system-simple={} {letter}-simple={ss}", f.system_simple.holds)),
        );
        let hyp = su && ss && f.centralizer_in_base.holds;
        v.implication(
            format!("{letter}-simple-and-centralizer-give-simplicity"),
            hyp,
            simple,
            if hyp { f.simple.witness.clone() } else { f.centralizer_in_base.witness.clone() },
        );
        v.implication(
            format!("commutative-simple-iff-{letter}-simple-and-maximal-commutative"),
            su && f.commutative,
            simple == (ss && f.maximal_commutative),
            Some(format!(
                "simple={simple} {letter}-simple={ss} maximal-commutative={}",
                f.maximal_commutative
            )),
        );
        v.implication(
            "maximal-commutative-iff-intersection-property",
            su && f.commutative,
            f.maximal_commutative == f.intersection_property,
            Some(format!(
                "maximal-commutative={} intersection-property={}",
                f.maximal_commutative, f.intersection_property
            )),
        );
        let nz = su && f.domains_nonzero;
        v.implication(
            "centralizer-forces-faithful",
            nz && f.centralizer_in_base.holds,
            f.faithful.holds,
            f.faithful.witness.clone(),
        );
        v.implication(
            "simple-forces-faithful",
            nz && simple,
            f.faithful.holds,
            f.faithful.witness.clone(),
        );
        v
    }

    /// Every check on this instance: structure, theorem lines, and the
    /// general system checks on `L_π` and on the quotient.
    pub fn full_report(&self) -> SystemVerdict {
        let mut v = SystemVerdict::new();
        v.timed(|v| v.extend(self.structure_checks()));
        v.timed(|v| v.extend(self.theorem_verdict()));
        match &self.lpi {
            Some(lpi) => v.timed(|v| v.extend_prefixed("lpi-system", lpi.grading.theorem_verdicts())),
            None => v.skipped("lpi-system", "L_pi cap"),
        }
        v.timed(|v| v.extend_prefixed("skew-system", self.grading.theorem_verdicts()));
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::build;
    use crate::invsgrp::FinGroupoid;
    use crate::paction::GroupoidPartialAction;
    use crate::verdict::Status;
    use std::sync::Arc;

    fn skew_of(gpa: GroupoidPartialAction) -> SkewRing {
        SkewRing::new(Arc::new(gpa.induced_action().unwrap()), 4096).unwrap()
    }

    #[test]
    fn pair_groupoid_passes() {
        let g = Arc::new(FinGroupoid::pair(2).unwrap());
        let sk = skew_of(GroupoidPartialAction::groupoid_ring_data(&build::prime_field(2).unwrap(), g, 4096).unwrap());
        let v = sk.full_report();
        assert!(!v.has_failure(), "{v}");
        assert_eq!(
            v.status("commutative-simple-iff-s-simple-and-maximal-commutative"),
            Some(&Status::Pass)
        );
        let f = sk.base_facts();
        assert!(f.simple.holds && f.s_simple.holds && f.maximal_commutative);
        let base = sk.base_image();
        assert!(span_products(&sk.ring, &base, &base).is_subset(&base));
    }

    #[test]
    fn group_ring_not_simple() {
        let g = Arc::new(FinGroupoid::cyclic(2).unwrap());
        let sk = skew_of(GroupoidPartialAction::groupoid_ring_data(&build::prime_field(2).unwrap(), g, 4096).unwrap());
        let v = sk.full_report();
        assert!(!v.has_failure(), "{v}");
        let f = sk.base_facts();
        assert!(!f.simple.holds && !f.maximal_commutative && !f.faithful.holds);
    }

    #[test]
    fn galois_skew_ring_simple() {
        let sk = skew_of(GroupoidPartialAction::galois(2, 2, 4096).unwrap());
        let f = sk.base_facts();
        assert_eq!(sk.ring.order(), 16);
        assert!(f.simple.holds && f.s_simple.holds && f.maximal_commutative);
        assert!(!sk.full_report().has_failure());
    }
}
