use std::sync::Arc;

use super::action::{ga_partial_action, FunctionRing};
use super::algebra::SteinbergAlgebra;
use super::translation::Translation;
use crate::error::Result;
use crate::finring::{center, center_of, centralizer, is_simple, proper_ideal_witness, unitality, Elem, FinRing, Subgroup};
use crate::invsgrp::{BisectionSemigroup, FinGroupoid, DEFAULT_BISECTION_CAP};
use crate::paction::PartialAction;
use crate::verdict::{Fact, SystemVerdict};

/// An element of `K` with no central `k'` satisfying `k k' = k`.
pub fn z_s_unit_failure(k: &FinRing) -> Option<Elem> {
    let z = center(k);
    k.elements().find(|&a| !z.elements().iter().any(|&c| k.mul(a, c) == a))
}

/// `Z(K)` contains a set of s-units for `K`.
pub fn z_s_units(k: &FinRing) -> bool {
    z_s_unit_failure(k).is_none()
}

/// Everything needed for the Steinberg simplicity criteria on one pair
/// `(K, G)`.
#[derive(Clone, Debug)]
pub struct SteinbergCase {
    pub algebra: Arc<SteinbergAlgebra>,
    pub bisections: Arc<BisectionSemigroup>,
    pub functions: Arc<FunctionRing>,
    pub action: Arc<PartialAction>,
    /// `Err` holds the reason the skew ring was not built.
    pub translation: std::result::Result<Translation, String>,
}

impl SteinbergCase {
    pub fn new(coeff: Arc<FinRing>, groupoid: Arc<FinGroupoid>, cap: usize) -> Result<Self> {
        let algebra = Arc::new(SteinbergAlgebra::new(coeff.clone(), groupoid.clone(), cap)?);
        let bisections = Arc::new(BisectionSemigroup::new(groupoid.clone(), DEFAULT_BISECTION_CAP)?);
        let functions = Arc::new(FunctionRing::new(coeff, groupoid.object_count(), cap)?);
        let action = Arc::new(ga_partial_action(&functions, &bisections)?);
        let translation = match Translation::from_action(
            algebra.clone(),
            functions.clone(),
            bisections.clone(),
            action.clone(),
            cap,
        ) {
            Ok(t) => Ok(t),
            Err(e) if e.is_cap() => Err(e.to_string()),
            Err(e) => return Err(e),
        };
        Ok(SteinbergCase {
            algebra,
            bisections,
            functions,
            action,
            translation,
        })
    }

    pub fn coeff(&self) -> &FinRing {
        &self.algebra.coeff
    }

    pub fn groupoid(&self) -> &FinGroupoid {
        &self.algebra.groupoid
    }

    /// `A_K(G)` is simple, with a proper ideal as witness otherwise.
    pub fn simple(&self) -> Fact {
        let a = &*self.algebra.ring;
        if a.is_zero_ring() {
            return Fact::no("zero ring");
        }
        match proper_ideal_witness(a) {
            None => Fact::yes(),
            Some((x, i)) => Fact::no(format!("{} generates a proper ideal of order {}", a.fmt_elem(x), i.order())),
        }
    }

    /// `C(Z(T)) ⊆ T` in the skew ring, `T` its degree-zero part.
    pub fn centralizer_in_t(&self) -> Option<Fact> {
        let t = self.translation.as_ref().ok()?;
        let q = &*t.skew.ring;
        let base = t.skew.grading.r0();
        let c = centralizer(q, &center_of(q, base));
        Some(match c.first_outside(base) {
            None => Fact::yes(),
            Some(x) => Fact::no(format!("{} centralizes Z(T) but is not in T", q.fmt_elem(x))),
        })
    }

    /// `A_J(G)` for the first proper nonzero ideal `J` of `K`.
    pub fn coefficient_ideal_witness(&self) -> Option<(Subgroup, Subgroup)> {
        let (_, j) = proper_ideal_witness(self.coeff())?;
        let j = j.into_subgroup();
        let aj = self.algebra.coefficient_ideal(&j);
        Some((j, aj))
    }

    pub fn verdict(&self) -> Result<SystemVerdict> {
        let mut v = SystemVerdict::new();
        let k = self.coeff();
        let g = self.groupoid();
        let a = &*self.algebra.ring;

        v.timed(|v| {
            let w = self.algebra.groupoid_ring_failure();
            v.check("convolution-matches-groupoid-ring", w.is_none(), w);
        });
        v.timed(|v| {
            let w = self.algebra.indicator_law_failure(&self.bisections);
            v.check("indicator-products", w.is_none(), w);
        });
        let k_units = unitality(k);
        let au = self.action.action_unitality();
        v.equivalence(
            "function-action-s-unital-iff-coefficients-s-unital",
            au.s_unital.holds,
            k_units.s_unital,
            au.s_unital.witness.clone(),
        );
        match &self.translation {
            Ok(t) => {
                v.timed(|v| {
                    let w = t.decomposition_failure();
                    v.check("translation-decompositions-agree", w.is_none(), w);
                });
                v.timed(|v| {
                    let w = t.round_trip_failure();
                    v.check("translation-round-trip", w.is_none(), w);
                });
            }
            Err(why) => {
                v.skipped("translation-decompositions-agree", why.clone());
                v.skipped("translation-round-trip", why.clone());
            }
        }

        let connected = g.is_connected();
        let thin = g.is_thin();
        let effective = g.is_effective();
        let minimal = g.is_minimal()?;
        v.equivalence("minimal-iff-connected", minimal, connected, None);
        v.equivalence("effective-iff-thin", effective, thin, None);
        let faithful = self.action.is_faithful();
        v.equivalence("effective-iff-faithful", effective, faithful.holds, faithful.witness.clone());

        let zs = z_s_units(k);
        match self.centralizer_in_t() {
            Some(c) => {
                v.implication(
                    "centralizer-condition-forces-effective",
                    k_units.s_unital && c.holds,
                    effective,
                    None,
                );
                v.implication(
                    "effective-faithful-centralizer-agree",
                    zs,
                    effective == faithful.holds && faithful.holds == c.holds,
                    Some(format!("effective={effective} faithful={} centralizer={}", faithful.holds, c.holds)),
                );
            }
            None => {
                v.skipped("centralizer-condition-forces-effective", "skew ring cap");
                v.skipped("effective-faithful-centralizer-agree", "skew ring cap");
            }
        }

        let ga_simple = self.action.is_s_simple();
        v.implication("ga-simple-forces-minimal", ga_simple.holds, minimal, None);
        let k_simple = is_simple(k);
        v.implication(
            "minimal-iff-ga-simple",
            k_simple && k_units.s_unital,
            minimal == ga_simple.holds,
            Some(format!("minimal={minimal} ga-simple={}", ga_simple.holds)),
        );

        let simple = self.simple();
        v.implication(
            "simple-iff-effective-minimal-and-coefficients-simple",
            zs,
            simple.holds == (effective && minimal && k_simple),
            Some(format!(
                "simple={} effective={effective} minimal={minimal} coefficients-simple={k_simple}",
                simple.holds
            )),
        );
        v.implication(
            "simple-iff-coefficients-simple-and-matrix-groupoid",
            zs && !k.is_zero_ring(),
            simple.holds == (k_simple && connected && thin),
            Some(format!(
                "simple={} coefficients-simple={k_simple} connected={connected} thin={thin}",
                simple.holds
            )),
        );
        match self.coefficient_ideal_witness() {
            Some((j, aj)) => {
                let ok = !aj.is_zero() && !aj.is_whole() && crate::finring::is_ideal(a, &aj, crate::finring::Side::Both);
                v.implication(
                    "coefficient-ideal-is-proper",
                    true,
                    ok,
                    Some(format!("J of order {}, A_J(G) of order {}", j.order(), aj.order())),
                );
            }
            None => v.implication("coefficient-ideal-is-proper", false, true, None),
        }
        Ok(v)
    }
}
