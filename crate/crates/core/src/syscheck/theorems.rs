use super::epsilon::Property;
use super::system::SystemRing;
use crate::finring::{is_simple, proper_ideal_witness};
use crate::verdict::SystemVerdict;

impl SystemRing {
    fn simplicity_witness(&self) -> Option<String> {
        proper_ideal_witness(self.ring()).map(|(x, i)| {
            format!(
                "{} generates a proper ideal of order {}",
                self.ring().fmt_elem(x),
                i.order()
            )
        })
    }

    /// Every implication between system properties and simplicity that holds
    /// for associative systems, evaluated on this instance. Lines whose
    /// hypotheses fail are VACUOUS.
    pub fn theorem_verdicts(&self) -> SystemVerdict {
        let mut v = SystemVerdict::new();
        let assoc = self.ring().is_associative();
        let simple = is_simple(self.ring());
        let sys_simple = self.system_simple();
        let p = self.structural_predicates();
        let central = self.centralizer_condition();
        let maxcomm = self.r0_maximal_commutative();
        let eps = self.epsilon_strong(Property::SUnital);
        let not_simple = || if simple { None } else { self.simplicity_witness() };

        v.implication(
            "simple-implies-system-simple",
            simple,
            sys_simple.holds,
            sys_simple.witness.clone(),
        );
        v.implication(
            "coherent-implies-idempotent-coherent",
            p.coherent.holds,
            p.idempotent_coherent.holds,
            p.idempotent_coherent.witness.clone(),
        );

        let mut iip: Option<bool> = None;
        let mut intersection = || *iip.get_or_insert_with(|| self.intersection_property_with_centralizer());

        for (reading, left_nd, right_nd) in [
            ("idempotent-base", &p.left_nondeg_idempotent_base, &p.right_nondeg_idempotent_base),
            ("all-base", &p.left_nondeg_all_base, &p.right_nondeg_all_base),
        ] {
            let nondeg = left_nd.holds || right_nd.holds;
            let base = assoc && p.idempotent_coherent.holds && nondeg;
            let hyp = base;
            let concl = hyp && intersection();
            v.implication(
                format!("nondegenerate-gives-intersection-property/{reading}"),
                hyp,
                concl,
                None,
            );
            let hyp = base && sys_simple.holds && central.holds;
            v.implication(
                format!("centralizer-criterion-gives-simplicity/{reading}"),
                hyp,
                simple,
                if hyp { not_simple() } else { None },
            );
            let hyp = base && maxcomm.holds;
            v.implication(
                format!("maximal-commutative-simple-iff-system-simple/{reading}"),
                hyp,
                simple == sys_simple.holds,
                Some(format!("simple={simple} system-simple={}", sys_simple.holds)),
            );
        }

        for (side, eps_side, nd_all, nd_idem) in [
            ("left", &eps.left, &p.left_nondeg_all_base, &p.left_nondeg_idempotent_base),
            ("right", &eps.right, &p.right_nondeg_all_base, &p.right_nondeg_idempotent_base),
        ] {
            let hyp = assoc && p.coherent.holds && eps_side.holds;
            let concl = hyp && nd_all.holds && nd_idem.holds && intersection();
            v.implication(
                format!("epsilon-strong-gives-nondegenerate/{side}"),
                hyp,
                concl,
                nd_all.witness.clone().or_else(|| nd_idem.witness.clone()),
            );
        }

        let hyp = assoc
            && sys_simple.holds
            && p.coherent.holds
            && (eps.left.holds || eps.right.holds)
            && central.holds;
        v.implication(
            "epsilon-strong-centralizer-gives-simplicity",
            hyp,
            simple,
            if hyp { not_simple() } else { None },
        );
        let hyp = assoc && p.coherent.holds && eps.both.holds && maxcomm.holds;
        v.implication(
            "epsilon-strong-maximal-commutative-simple-iff-system-simple",
            hyp,
            simple == sys_simple.holds,
            Some(format!("simple={simple} system-simple={}", sys_simple.holds)),
        );

        v.extend(self.epsilon_characterizations());
        v
    }
}
