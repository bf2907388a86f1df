use serde::{Deserialize, Serialize};

use super::system::SystemRing;
use crate::finring::{bimodule_predicates, unitality_of, Elem, Subgroup};
use crate::invsgrp::SElem;
use crate::par;
use crate::verdict::{Fact, SystemVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Property {
    Unital,
    SUnital,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Unital => "unital",
            Property::SUnital => "s-unital",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Hand {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scope {
    /// One unit for the whole component.
    Global,
    /// A unit for a single element.
    PerElement,
}

/// A unit `ε_s` in `R_s R_{s*}` (left) or `R_{s*} R_s` (right) and the
/// component elements it fixes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsilonWitness {
    pub s: SElem,
    pub hand: Hand,
    pub unit: Elem,
    pub scope: Scope,
    /// The fixed element, for per-element witnesses.
    pub fixes: Option<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsilonStrength {
    pub left: Fact,
    pub right: Fact,
    pub both: Fact,
}

impl SystemRing {
    /// Whether `R_s` is a `P` module over `R_s R_{s*}` (left) and over
    /// `R_{s*} R_s` (right), for every `s`.
    pub fn epsilon_strong(&self, p: Property) -> EpsilonStrength {
        let mut left = Fact::yes();
        let mut right = Fact::yes();
        for s in self.sgrp().elements() {
            let (l, r) = self.module_property(s, p);
            if left.holds && !l {
                left = Fact::no(format!("left fails at s = {}", self.sgrp().label(s)));
            }
            if right.holds && !r {
                right = Fact::no(format!("right fails at s = {}", self.sgrp().label(s)));
            }
        }
        let both = Fact::new(
            left.holds && right.holds,
            left.witness.clone().or_else(|| right.witness.clone()),
        );
        EpsilonStrength { left, right, both }
    }

    fn module_property(&self, s: SElem, p: Property) -> (bool, bool) {
        let m = self.component(s);
        match bimodule_predicates(self.ring(), m, &self.left_epsilon_ring(s), &self.right_epsilon_ring(s)) {
            Ok(b) => match p {
                Property::Unital => (b.left_unital, b.right_unital),
                Property::SUnital => (b.left_s_unital, b.right_s_unital),
            },
            Err(_) => (false, false),
        }
    }

    /// Units witnessing epsilon-strength: one per `s` and hand for
    /// [`Property::Unital`], one per element for [`Property::SUnital`].
    /// `None` if some unit is missing.
    pub fn epsilon_witnesses(&self, p: Property, hand: Hand) -> Option<Vec<EpsilonWitness>> {
        let mut out = Vec::new();
        for s in self.sgrp().elements() {
            let comp = self.component(s);
            let units = match hand {
                Hand::Left => self.left_epsilon_ring(s),
                Hand::Right => self.right_epsilon_ring(s),
            };
            let fixes = |e: Elem, r: Elem| match hand {
                Hand::Left => self.ring().mul(e, r) == r,
                Hand::Right => self.ring().mul(r, e) == r,
            };
            match p {
                Property::Unital => {
                    let e = par::find_first_in(units.elements(), |&e| {
                        comp.elements().iter().all(|&r| fixes(e, r))
                    })?;
                    out.push(EpsilonWitness {
                        s,
                        hand,
                        unit: *e,
                        scope: Scope::Global,
                        fixes: None,
                    });
                }
                Property::SUnital => {
                    let found = par::map_slice(comp.elements(), |&r| {
                        units.elements().iter().copied().find(|&e| fixes(e, r))
                    });
                    for (&r, e) in comp.elements().iter().zip(found) {
                        out.push(EpsilonWitness {
                            s,
                            hand,
                            unit: e?,
                            scope: Scope::PerElement,
                            fixes: Some(r),
                        });
                    }
                }
            }
        }
        Some(out)
    }

    /// Characterisation through symmetry and the rings `R_s R_{s*}`.
    fn epsilon_via_rings(&self, p: Property, hand: Option<Hand>) -> bool {
        if !self.symmetric().holds {
            return false;
        }
        self.sgrp().elements().all(|s| {
            let u = unitality_of(self.ring(), &self.left_epsilon_ring(s));
            match (p, hand) {
                (Property::Unital, Some(Hand::Left)) => u.left_unital,
                (Property::Unital, Some(Hand::Right)) => u.right_unital,
                (Property::Unital, None) => u.unital,
                (Property::SUnital, Some(Hand::Left)) => u.left_s_unital,
                (Property::SUnital, Some(Hand::Right)) => u.right_s_unital,
                (Property::SUnital, None) => u.s_unital,
            }
        })
    }

    /// Two-sided existence of units: `ε_s r = r ε'_s = r`, with one pair per
    /// `s` for unital and one per element for s-unital.
    fn epsilon_two_sided_units(&self, p: Property) -> bool {
        let ring = self.ring();
        self.sgrp().elements().all(|s| {
            let comp: &Subgroup = self.component(s);
            let lu = self.left_epsilon_ring(s);
            let ru = self.right_epsilon_ring(s);
            match p {
                Property::Unital => {
                    let l = lu.elements().iter().any(|&e| comp.elements().iter().all(|&r| ring.mul(e, r) == r));
                    let r = ru.elements().iter().any(|&e| comp.elements().iter().all(|&r| ring.mul(r, e) == r));
                    l && r
                }
                Property::SUnital => comp.elements().iter().all(|&r| {
                    lu.elements().iter().any(|&e| ring.mul(e, r) == r)
                        && ru.elements().iter().any(|&e| ring.mul(r, e) == r)
                }),
            }
        })
    }

    /// Evaluates the three characterisations of `P` epsilon-strength (module
    /// property, symmetric plus ring property, existence of units) on each
    /// side and two-sidedly, and reports whether they agree. Non-associative
    /// rings give VACUOUS lines.
    pub fn epsilon_characterizations(&self) -> SystemVerdict {
        let mut v = SystemVerdict::new();
        let assoc = self.ring().is_associative();
        for p in [Property::Unital, Property::SUnital] {
            let strength = self.epsilon_strong(p);
            for hand in [Some(Hand::Left), Some(Hand::Right), None] {
                let side = match hand {
                    Some(Hand::Left) => "left",
                    Some(Hand::Right) => "right",
                    None => "two-sided",
                };
                let name = format!("epsilon-characterizations-agree/{}/{side}", p.name());
                if !assoc {
                    v.implication(name, false, true, Some("ring is not associative".into()));
                    continue;
                }
                let module = match hand {
                    Some(Hand::Left) => strength.left.holds,
                    Some(Hand::Right) => strength.right.holds,
                    None => strength.both.holds,
                };
                let rings = self.epsilon_via_rings(p, hand);
                let units = match hand {
                    Some(h) => self.epsilon_witnesses(p, h).is_some(),
                    None => self.epsilon_two_sided_units(p),
                };
                let agree = module == rings && rings == units;
                v.check(
                    name,
                    agree,
                    Some(format!("module={module} rings={rings} units={units}")),
                );
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{build, FinRing};
    use crate::invsgrp::{FinGroupoid, InverseSemigroup};
    use crate::verdict::Status;
    use std::sync::Arc;

    #[test]
    fn trivial_field_system_is_epsilon_strong() {
        let f = Arc::new(build::prime_field(2).unwrap());
        let sg = Arc::new(InverseSemigroup::trivial("e"));
        let sr = SystemRing::new(f.clone(), sg, vec![Subgroup::whole(f.group())]).unwrap();
        let e = sr.epsilon_strong(Property::Unital);
        assert!(e.left.holds && e.right.holds && e.both.holds);
        let w = sr.epsilon_witnesses(Property::Unital, Hand::Left).unwrap();
        assert_eq!(w[0].unit, 1);
        assert!(!sr.epsilon_characterizations().has_failure());
    }

    #[test]
    fn zero_multiplication_component_fails() {
        let z = Arc::new(FinRing::from_spec("Z2", vec![2], &[], 4096).unwrap());
        let sg = Arc::new(InverseSemigroup::trivial("e"));
        let sr = SystemRing::new(z.clone(), sg, vec![Subgroup::whole(z.group())]).unwrap();
        let e = sr.epsilon_strong(Property::SUnital);
        assert!(!e.left.holds && !e.right.holds);
        assert!(sr.epsilon_witnesses(Property::SUnital, Hand::Left).is_none());
        let v = sr.epsilon_characterizations();
        assert!(v.lines.iter().all(|l| l.status == Status::Pass));
    }

    #[test]
    fn group_ring_agreement() {
        let ring = FinRing::from_spec(
            "F2[C2]",
            vec![2, 2],
            &[(0, 0, vec![1, 0]), (0, 1, vec![0, 1]), (1, 0, vec![0, 1]), (1, 1, vec![1, 0])],
            4096,
        )
        .unwrap();
        let sg = FinGroupoid::cyclic(2).unwrap().induced_semigroup();
        let g = ring.group();
        let comps = vec![
            Subgroup::closure(g, &[ring.elem(&[1, 0])]),
            Subgroup::closure(g, &[ring.elem(&[0, 1])]),
            Subgroup::zero(g),
        ];
        let sr = SystemRing::new(Arc::new(ring), Arc::new(sg), comps).unwrap();
        assert!(sr.epsilon_strong(Property::Unital).both.holds);
        assert!(!sr.epsilon_characterizations().has_failure());
    }
}
