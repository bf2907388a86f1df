use std::sync::Arc;

use crate::error::Result;
use crate::finring::{build, Elem, FinRing, Subgroup};
use crate::invsgrp::BisectionSemigroup;
use crate::paction::PartialAction;

/// `L_c(G_0) = K^{G_0}` with pointwise operations; the value at object `x`
/// is block `x`, earlier objects more significant.
#[derive(Clone, Debug)]
pub struct FunctionRing {
    pub coeff: Arc<FinRing>,
    pub objects: usize,
    pub ring: Arc<FinRing>,
}

impl FunctionRing {
    pub fn new(coeff: Arc<FinRing>, objects: usize, cap: usize) -> Result<Self> {
        let ring = Arc::new(build::power(&coeff, objects, cap)?.with_name("L_c(G_0)"));
        Ok(FunctionRing { coeff, objects, ring })
    }

    pub fn values(&self, f: Elem) -> Vec<Elem> {
        let k = self.coeff.order();
        let mut out = vec![0; self.objects];
        let mut rest = f;
        for x in (0..self.objects).rev() {
            out[x] = rest % k;
            rest /= k;
        }
        out
    }

    pub fn from_values(&self, v: &[Elem]) -> Elem {
        let k = self.coeff.order();
        v.iter().fold(0, |acc, &x| acc * k + x)
    }

    /// `k_V` for an object mask `v`.
    pub fn constant_on(&self, k: Elem, v: u64) -> Elem {
        let vals: Vec<Elem> = (0..self.objects).map(|x| if v >> x & 1 == 1 { k } else { 0 }).collect();
        self.from_values(&vals)
    }

    /// `L_c(V)`: functions vanishing off the object mask `v`.
    pub fn supported_on(&self, v: u64) -> Subgroup {
        let kg = self.coeff.group();
        let gens: Vec<Elem> = (0..self.objects)
            .filter(|&x| v >> x & 1 == 1)
            .flat_map(|x| (0..kg.rank()).map(move |t| (x, t)))
            .map(|(x, t)| self.constant_on(kg.basis(t), 1 << x))
            .collect();
        Subgroup::closure(self.ring.group(), &gens)
    }
}

/// The partial action of `G^a` on `L_c(G_0)`: `D_U = L_c(c(U))` and
/// `π_U(f)(x) = f(θ_{U*}(x))` on `c(U)`, zero elsewhere.
pub fn ga_partial_action(fr: &FunctionRing, bis: &BisectionSemigroup) -> Result<PartialAction> {
    let sg = &bis.semigroup;
    let domains: Vec<Subgroup> = sg.elements().map(|u| fr.supported_on(bis.range(u))).collect();
    PartialAction::from_fn(fr.ring.clone(), sg.clone(), domains, |u, f| {
        let vals = fr.values(f);
        let us = sg.star(u);
        let out: Vec<Elem> = (0..fr.objects)
            .map(|x| bis.theta(us, x).map_or(0, |y| vals[y]))
            .collect();
        fr.from_values(&out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{build, unitality};
    use crate::invsgrp::{FinGroupoid, DEFAULT_BISECTION_CAP};

    fn setup(k: FinRing, g: FinGroupoid) -> (FunctionRing, BisectionSemigroup) {
        let g = Arc::new(g);
        let fr = FunctionRing::new(Arc::new(k), g.object_count(), 4096).unwrap();
        (fr, BisectionSemigroup::new(g, DEFAULT_BISECTION_CAP).unwrap())
    }

    #[test]
    fn theta_on_units_and_arrows() {
        let (_, bis) = setup(build::prime_field(2).unwrap(), FinGroupoid::pair(2).unwrap());
        let units = bis.semigroup.index_of("1|2").unwrap();
        assert_eq!(bis.theta(units, 0), Some(0));
        assert_eq!(bis.theta(units, 1), Some(1));
        // e21 goes from object 1 to object 2
        let u = bis.semigroup.index_of("e21").unwrap();
        assert_eq!(bis.theta(u, 0), Some(1));
        assert_eq!(bis.theta(u, 1), None);
    }

    #[test]
    fn actions_validate() {
        for g in [FinGroupoid::pair(2), FinGroupoid::cyclic(2), FinGroupoid::discrete(2), FinGroupoid::pair(3)] {
            let (fr, bis) = setup(build::prime_field(2).unwrap(), g.unwrap());
            let pa = ga_partial_action(&fr, &bis).unwrap();
            assert_eq!(pa.action_unitality().s_unital.holds, unitality(&fr.coeff).s_unital);
        }
    }

    #[test]
    fn zero_multiplication_coefficients_not_s_unital() {
        let z = build::zero_ring(vec![2], 16).unwrap();
        let (fr, bis) = setup(z, FinGroupoid::pair(2).unwrap());
        let pa = ga_partial_action(&fr, &bis).unwrap();
        assert!(!pa.action_unitality().s_unital.holds);
    }
}
