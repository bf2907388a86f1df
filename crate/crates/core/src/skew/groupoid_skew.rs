use std::sync::Arc;

use super::lpi::block_elements;
use super::skew_ring::SkewRing;
use crate::error::{Error, Result};
use crate::finring::{CyclicBasis, Elem, FinAbGroup, FinRing};
use crate::invsgrp::Mor;
use crate::paction::GroupoidPartialAction;
use crate::verdict::SystemVerdict;

/// The partial skew groupoid ring `A *_α G`, built directly on
/// `⊕_g A_g δ_g` and through the induced semigroup action, together with the
/// element map between the two.
#[derive(Clone, Debug)]
pub struct GroupoidSkew {
    pub action: Arc<GroupoidPartialAction>,
    pub direct: Arc<FinRing>,
    pub skew: SkewRing,
    /// Image in the quotient of every element of the direct ring.
    pub identification: Vec<Elem>,
}

impl GroupoidSkew {
    pub fn new(action: Arc<GroupoidPartialAction>, cap: usize) -> Result<Self> {
        let gpd = action.groupoid();
        let a = action.ring();
        let ag = a.group();
        let n = gpd.size();
        let needed: u128 = gpd.morphisms().map(|g| action.ideal(g).order() as u128).product();
        if needed > cap as u128 {
            return Err(Error::cap("skew groupoid ring elements", needed, cap));
        }
        let bases: Vec<CyclicBasis> = gpd.morphisms().map(|g| action.ideal(g).cyclic_basis(ag)).collect();
        let blocks: Vec<Vec<Elem>> = bases.iter().map(|b| block_elements(ag, b)).collect();
        let mut weights = vec![1usize; n];
        for g in (0..n.saturating_sub(1)).rev() {
            weights[g] = weights[g + 1] * blocks[g + 1].len();
        }
        let group = FinAbGroup::new(bases.iter().flat_map(|b| b.ranks()).collect(), cap)?;
        let gens: Vec<(Mor, Elem)> = gpd
            .morphisms()
            .flat_map(|g| bases[g].gens.iter().map(move |&(f, _)| (g, f)))
            .collect();
        let k = gens.len();
        let mut consts = vec![0; k * k];
        for (i, &(g, x)) in gens.iter().enumerate() {
            let back = action.apply(gpd.inverse(g), x).expect("x in A_g");
            for (j, &(h, y)) in gens.iter().enumerate() {
                let Some(gh) = gpd.compose(g, h) else { continue };
                let z = action.apply(g, a.mul(back, y)).ok_or_else(|| {
                    Error::GroupoidAction(format!(
                        "alpha_{}(alpha_{}(a) b) undefined",
                        gpd.label(g),
                        gpd.label(gpd.inverse(g))
                    ))
                })?;
                let c = bases[gh].coord_index(z).ok_or_else(|| {
                    Error::GroupoidAction(format!("product leaves A_{}", gpd.label(gh)))
                })?;
                consts[i * k + j] = c * weights[gh];
            }
        }
        let direct = Arc::new(FinRing::new("A *_alpha G", group, consts)?);
        let skew = SkewRing::new(Arc::new(action.induced_action()?), cap)?;
        let q = &*skew.ring;
        let identification = direct
            .elements()
            .map(|x| {
                gpd.morphisms().fold(0, |acc, g| {
                    let b = &blocks[g];
                    let coef = b[(x / weights[g]) % b.len()];
                    q.add(acc, skew.class_of(g, coef).expect("coefficient in A_g"))
                })
            })
            .collect();
        Ok(GroupoidSkew {
            action,
            direct,
            skew,
            identification,
        })
    }

    /// First failure of the element map being a bijective ring homomorphism.
    pub fn identification_failure(&self) -> Option<String> {
        let d = &*self.direct;
        let q = &*self.skew.ring;
        let phi = &self.identification;
        if d.order() != q.order() {
            return Some(format!("orders differ: {} and {}", d.order(), q.order()));
        }
        let mut seen = vec![false; q.order()];
        for x in d.elements() {
            if std::mem::replace(&mut seen[phi[x]], true) {
                return Some(format!("{} shares its image", d.fmt_elem(x)));
            }
        }
        let basis = d.group().basis_elems();
        for x in d.elements() {
            for &b in &basis {
                if phi[d.add(x, b)] != q.add(phi[x], phi[b]) {
                    return Some(format!("not additive at {}", d.fmt_elem(x)));
                }
            }
        }
        for &x in &basis {
            for &y in &basis {
                if phi[d.mul(x, y)] != q.mul(phi[x], phi[y]) {
                    return Some(format!("not multiplicative at {} * {}", d.fmt_elem(x), d.fmt_elem(y)));
                }
            }
        }
        None
    }

    /// Simplicity of `A *_α G` against G-simplicity and maximal
    /// commutativity, plus the comparison of the two constructions.
    pub fn theorem_verdict(&self) -> SystemVerdict {
        let mut v = SystemVerdict::new();
        let w = self.identification_failure();
        v.check("groupoid-skew-matches-quotient", w.is_none(), w);
        let global = self.action.is_global();
        v.implication(
            "global-action-has-full-ideals",
            global.holds,
            self.action
                .groupoid()
                .morphisms()
                .all(|g| self.action.ideal(g) == self.action.object_ideal(self.action.groupoid().cod(g))),
            None,
        );
        let f = self.skew.base_facts();
        v.extend(self.skew.theorem_lines(&f, "g"));
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{build, is_simple};
    use crate::invsgrp::FinGroupoid;

    #[test]
    fn matrix_groupoid_ring() {
        let g = Arc::new(FinGroupoid::pair(2).unwrap());
        let gpa = GroupoidPartialAction::groupoid_ring_data(&build::prime_field(2).unwrap(), g, 4096).unwrap();
        let gs = GroupoidSkew::new(Arc::new(gpa), 4096).unwrap();
        assert_eq!(gs.direct.order(), 16);
        assert!(is_simple(&gs.direct));
        let v = gs.theorem_verdict();
        assert!(!v.has_failure(), "{v}");
    }

    #[test]
    fn galois() {
        let gs = GroupoidSkew::new(Arc::new(GroupoidPartialAction::galois(2, 3, 4096).unwrap()), 4096).unwrap();
        assert_eq!(gs.direct.order(), 512);
        let v = gs.theorem_verdict();
        assert!(!v.has_failure(), "{v}");
    }
}
