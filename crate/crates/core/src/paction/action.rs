use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finring::{
    all_ideals, ideal_closure, is_ideal, span_products, unitality_of, Elem, FinAbGroup, FinRing, Ideal, Side,
    Subgroup,
};
use crate::invsgrp::{InverseSemigroup, SElem};
use crate::par;
use crate::verdict::Fact;

/// A partial action of a finite inverse semigroup on a finite associative
/// ring: ideals `D_s` and ring isomorphisms `π_s: D_{s*} → D_s`, each stored
/// as a full table over the elements of `D_{s*}`.
#[derive(Clone, Debug)]
pub struct PartialAction {
    ring: Arc<FinRing>,
    sgrp: Arc<InverseSemigroup>,
    domains: Vec<Subgroup>,
    // maps[s][k] = π_s(domains[s*].elements()[k])
    maps: Vec<Vec<Elem>>,
}

/// Unitality of the family `{D_s}`; each fact names the first failing `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionUnitality {
    pub unital: Fact,
    pub locally_unital: Fact,
    pub left_s_unital: Fact,
    pub right_s_unital: Fact,
    pub s_unital: Fact,
}

/// The subgroup of `src × dst` spanned by the pairs `(x, y)`, as a map, or
/// the first element whose image would be ambiguous.
pub fn extend_additively(
    src: &FinAbGroup,
    dst: &FinAbGroup,
    pairs: &[(Elem, Elem)],
) -> std::result::Result<HashMap<Elem, Elem>, Elem> {
    let mut map: HashMap<Elem, Elem> = HashMap::from([(0, 0)]);
    for &(x, y) in pairs {
        if let Some(&old) = map.get(&x) {
            if old != y {
                return Err(x);
            }
            continue;
        }
        let base: Vec<(Elem, Elem)> = map.iter().map(|(&a, &b)| (a, b)).collect();
        let (mut sx, mut sy) = (x, y);
        while !map.contains_key(&sx) {
            for &(a, b) in &base {
                map.insert(src.add(a, sx), dst.add(b, sy));
            }
            sx = src.add(sx, x);
            sy = dst.add(sy, y);
        }
        if map[&sx] != sy {
            return Err(sx);
        }
    }
    Ok(map)
}

impl PartialAction {
    /// Validates a partial action given by full tables: `maps[s]` lists
    /// `(x, π_s(x))` for every `x` in `D_{s*}`.
    pub fn new(
        ring: Arc<FinRing>,
        sgrp: Arc<InverseSemigroup>,
        domains: Vec<Subgroup>,
        maps: Vec<Vec<(Elem, Elem)>>,
    ) -> Result<Self> {
        if domains.len() != sgrp.size() || maps.len() != sgrp.size() {
            return Err(Error::MalformedSpec(format!(
                "partial action needs one domain and one map per semigroup element ({}), got {} and {}",
                sgrp.size(),
                domains.len(),
                maps.len()
            )));
        }
        let mut tables = Vec::with_capacity(maps.len());
        for (s, pairs) in maps.iter().enumerate() {
            let dom = &domains[sgrp.star(s)];
            let mut table = vec![None; dom.order()];
            for &(x, y) in pairs {
                let k = dom.elements().binary_search(&x).map_err(|_| {
                    Error::NotIso(
                        sgrp.label(s).to_string(),
                        format!("defined at {} outside D_{}", ring.fmt_elem(x), sgrp.label(sgrp.star(s))),
                    )
                })?;
                if y >= ring.order() {
                    return Err(Error::MalformedSpec(format!("image index {y} out of range")));
                }
                match table[k] {
                    Some(old) if old != y => {
                        return Err(Error::NotIso(
                            sgrp.label(s).to_string(),
                            format!("two images for {}", ring.fmt_elem(x)),
                        ))
                    }
                    _ => table[k] = Some(y),
                }
            }
            let mut full = Vec::with_capacity(table.len());
            for (k, y) in table.into_iter().enumerate() {
                full.push(y.ok_or_else(|| {
                    Error::NotIso(
                        sgrp.label(s).to_string(),
                        format!("undefined at {}", ring.fmt_elem(dom.elements()[k])),
                    )
                })?);
            }
            tables.push(full);
        }
        let pa = PartialAction {
            ring,
            sgrp,
            domains,
            maps: tables,
        };
        pa.validate()?;
        Ok(pa)
    }

    /// Builds the tables by evaluating `f(s, x)` on each `D_{s*}`.
    pub fn from_fn(
        ring: Arc<FinRing>,
        sgrp: Arc<InverseSemigroup>,
        domains: Vec<Subgroup>,
        f: impl Fn(SElem, Elem) -> Elem,
    ) -> Result<Self> {
        if domains.len() != sgrp.size() {
            return Err(Error::MalformedSpec(format!(
                "partial action needs {} domains, got {}",
                sgrp.size(),
                domains.len()
            )));
        }
        let maps = sgrp
            .elements()
            .map(|s| domains[sgrp.star(s)].elements().iter().map(|&x| (x, f(s, x))).collect())
            .collect();
        PartialAction::new(ring, sgrp, domains, maps)
    }

    /// Builds each `π_s` as the additive extension of the given images of
    /// generators of `D_{s*}`.
    pub fn from_generator_images(
        ring: Arc<FinRing>,
        sgrp: Arc<InverseSemigroup>,
        domains: Vec<Subgroup>,
        images: Vec<Vec<(Elem, Elem)>>,
    ) -> Result<Self> {
        if images.len() != sgrp.size() {
            return Err(Error::MalformedSpec(format!(
                "partial action needs {} maps, got {}",
                sgrp.size(),
                images.len()
            )));
        }
        let mut maps = Vec::with_capacity(images.len());
        for (s, pairs) in images.iter().enumerate() {
            let map = extend_additively(ring.group(), ring.group(), pairs).map_err(|x| {
                Error::NotIso(sgrp.label(s).to_string(), format!("images are not additive at {}", ring.fmt_elem(x)))
            })?;
            let mut pairs: Vec<(Elem, Elem)> = map.into_iter().collect();
            pairs.sort_unstable();
            maps.push(pairs);
        }
        PartialAction::new(ring, sgrp, domains, maps)
    }

    fn validate(&self) -> Result<()> {
        let ring = &*self.ring;
        let sg = &*self.sgrp;
        ring.require_associative()?;
        for s in sg.elements() {
            if !is_ideal(ring, &self.domains[s], Side::Both) {
                return Err(Error::NotIdeal(sg.label(s).to_string()));
            }
        }
        for s in sg.elements() {
            self.check_iso(s)?;
        }
        self.check_sum()?;
        self.check_compatibility()?;
        self.check_composition()?;
        self.check_derived()
    }

    fn check_iso(&self, s: SElem) -> Result<()> {
        let ring = &*self.ring;
        let sg = &*self.sgrp;
        let label = || sg.label(s).to_string();
        let dom = self.domain(sg.star(s));
        let cod = self.domain(s);
        let pi = |x| self.apply(s, x).expect("x in domain");
        if pi(0) != 0 {
            return Err(Error::NotIso(label(), "0 is not fixed".into()));
        }
        for &x in dom.elements() {
            let y = pi(x);
            if !cod.contains(y) {
                return Err(Error::NotIso(
                    label(),
                    format!("image {} of {} is outside D_{}", ring.fmt_elem(y), ring.fmt_elem(x), sg.label(s)),
                ));
            }
            for &b in dom.basis() {
                if pi(ring.add(x, b)) != ring.add(y, pi(b)) {
                    return Err(Error::NotIso(
                        label(),
                        format!("not additive at {} + {}", ring.fmt_elem(x), ring.fmt_elem(b)),
                    ));
                }
            }
        }
        for &a in dom.basis() {
            for &b in dom.basis() {
                if pi(ring.mul(a, b)) != ring.mul(pi(a), pi(b)) {
                    return Err(Error::NotIso(
                        label(),
                        format!("not multiplicative at {} * {}", ring.fmt_elem(a), ring.fmt_elem(b)),
                    ));
                }
            }
        }
        if dom.order() != cod.order() {
            return Err(Error::NotIso(
                label(),
                format!("|D_{}| = {} but |D_{}| = {}", sg.label(sg.star(s)), dom.order(), sg.label(s), cod.order()),
            ));
        }
        let mut seen = vec![false; ring.order()];
        for &x in dom.elements() {
            let y = pi(x);
            if std::mem::replace(&mut seen[y], true) {
                return Err(Error::NotIso(label(), format!("not injective, {} hit twice", ring.fmt_elem(y))));
            }
        }
        Ok(())
    }

    fn check_sum(&self) -> Result<()> {
        let g = self.ring.group();
        let gens: Vec<Elem> = self.domains.iter().flat_map(|d| d.basis().iter().copied()).collect();
        let sum = Subgroup::closure(g, &gens);
        match Subgroup::whole(g).first_outside(&sum) {
            None => Ok(()),
            Some(x) => Err(Error::AxiomI(format!("{} is not in the sum of the domains", self.ring.fmt_elem(x)))),
        }
    }

    /// `π_s(D_{s*} ∩ D_t) = D_s ∩ D_{st}` for all `s, t`.
    fn check_compatibility(&self) -> Result<()> {
        let g = self.ring.group();
        let sg = &*self.sgrp;
        let n = sg.size();
        let bad = par::find_map_first(n * n, |idx| {
            let (s, t) = (idx / n, idx % n);
            let lhs = self.image(s, &self.domain(sg.star(s)).intersection(g, self.domain(t)));
            let rhs = self.domain(s).intersection(g, self.domain(sg.mul(s, t)));
            if lhs == rhs {
                return None;
            }
            let (x, side) = match lhs.first_outside(&rhs) {
                Some(x) => (x, "left"),
                None => (rhs.first_outside(&lhs).expect("sets differ"), "right"),
            };
            Some(format!(
                "s = {}, t = {}: {} lies only in the {side} side of pi_s(D_s* ∩ D_t) = D_s ∩ D_st",
                sg.label(s),
                sg.label(t),
                self.ring.fmt_elem(x)
            ))
        });
        bad.map_or(Ok(()), |w| Err(Error::AxiomII(w)))
    }

    /// `π_s(π_t(x)) = π_{st}(x)` on `D_{t*} ∩ D_{t*s*}`.
    fn check_composition(&self) -> Result<()> {
        let g = self.ring.group();
        let sg = &*self.sgrp;
        let n = sg.size();
        let bad = par::find_map_first(n * n, |idx| {
            let (s, t) = (idx / n, idx % n);
            let ts = sg.star(t);
            let common = self.domain(ts).intersection(g, self.domain(sg.mul(ts, sg.star(s))));
            let st = sg.mul(s, t);
            for &x in common.basis() {
                let y = self.apply(t, x).expect("x in D_t*");
                let lhs = self.apply(s, y);
                let rhs = self.apply(st, x);
                if lhs.is_none() || lhs != rhs {
                    return Some(format!(
                        "s = {}, t = {}, x = {}: pi_s(pi_t(x)) = {} but pi_st(x) = {}",
                        sg.label(s),
                        sg.label(t),
                        self.ring.fmt_elem(x),
                        lhs.map_or("undefined".to_string(), |z| self.ring.fmt_elem(z)),
                        rhs.map_or("undefined".to_string(), |z| self.ring.fmt_elem(z)),
                    ));
                }
            }
            None
        });
        bad.map_or(Ok(()), |w| Err(Error::AxiomIII(w)))
    }

    /// Consequences of the axioms: `π_{ss*}` is the identity on `D_{ss*}` and
    /// `π_s π_{s*}` is the identity on `D_s`.
    fn check_derived(&self) -> Result<()> {
        let sg = &*self.sgrp;
        for s in sg.elements() {
            let e = sg.mul(s, sg.star(s));
            for &x in self.domain(e).basis() {
                if self.apply(e, x) != Some(x) {
                    return Err(Error::InternalInconsistency(format!(
                        "pi_{} moves {}",
                        sg.label(e),
                        self.ring.fmt_elem(x)
                    )));
                }
            }
            for &x in self.domain(s).basis() {
                let back = self.apply(sg.star(s), x).and_then(|y| self.apply(s, y));
                if back != Some(x) {
                    return Err(Error::InternalInconsistency(format!(
                        "pi_{} pi_{} moves {}",
                        sg.label(s),
                        sg.label(sg.star(s)),
                        self.ring.fmt_elem(x)
                    )));
                }
            }
        }
        Ok(())
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

    pub fn domain(&self, s: SElem) -> &Subgroup {
        &self.domains[s]
    }

    pub fn domains(&self) -> &[Subgroup] {
        &self.domains
    }

    /// `π_s(x)`, or `None` outside `D_{s*}`.
    pub fn apply(&self, s: SElem, x: Elem) -> Option<Elem> {
        let dom = &self.domains[self.sgrp.star(s)];
        dom.elements().binary_search(&x).ok().map(|k| self.maps[s][k])
    }

    /// `π_s(h)` for a subgroup `h` of `D_{s*}`.
    pub fn image(&self, s: SElem, h: &Subgroup) -> Subgroup {
        let imgs: Vec<Elem> = h
            .basis()
            .iter()
            .map(|&x| self.apply(s, x).expect("subgroup of the domain"))
            .collect();
        Subgroup::closure(self.ring.group(), &imgs)
    }

    /// All `(x, π_s(x))` pairs.
    pub fn table(&self, s: SElem) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        let dom = &self.domains[self.sgrp.star(s)];
        dom.elements().iter().copied().zip(self.maps[s].iter().copied())
    }

    /// Ideal `J` with `π_s(J ∩ D_{s*}) ⊆ J` for every `s`.
    pub fn is_s_invariant(&self, j: &Subgroup) -> bool {
        let g = self.ring.group();
        is_ideal(&self.ring, j, Side::Both)
            && self.sgrp.elements().all(|s| {
                let part = j.intersection(g, self.domain(self.sgrp.star(s)));
                self.image(s, &part).is_subset(j)
            })
    }

    /// Smallest S-invariant ideal containing `a`.
    pub fn s_invariant_closure(&self, a: Elem) -> Ideal {
        let ring = &*self.ring;
        let g = ring.group();
        let mut j = ideal_closure(ring, &[a], Side::Both);
        loop {
            let mut gens = j.basis().to_vec();
            for s in self.sgrp.elements() {
                let part = j.intersection(g, self.domain(self.sgrp.star(s)));
                gens.extend(part.basis().iter().map(|&x| self.apply(s, x).expect("in domain")));
            }
            let next = ideal_closure(ring, &gens, Side::Both);
            if next.group == j.group {
                debug_assert!(self.is_s_invariant(&j));
                let mut group = j.into_subgroup();
                group.set_generators(&[a]);
                return Ideal {
                    group,
                    side: Side::Both,
                };
            }
            j = next;
        }
    }

    /// A nonzero element whose S-invariant closure is proper.
    pub fn s_simplicity_failure(&self) -> Option<(Elem, Ideal)> {
        if self.ring.is_zero_ring() {
            return None;
        }
        let n = self.ring.order();
        par::find_map_first(n, |a| {
            if a == 0 {
                return None;
            }
            let j = self.s_invariant_closure(a);
            (!j.is_whole()).then_some((a, j))
        })
    }

    /// `{0}` and `A` are the only S-invariant ideals, and `A` is nonzero.
    pub fn is_s_simple(&self) -> Fact {
        if self.ring.is_zero_ring() {
            return Fact::no("zero ring");
        }
        match self.s_simplicity_failure() {
            None => Fact::yes(),
            Some((a, j)) => Fact::no(format!(
                "{} generates a proper invariant ideal of order {}",
                self.ring.fmt_elem(a),
                j.order()
            )),
        }
    }

    /// A non-idempotent `s` whose map is the identity of `D_{s*}`. An empty
    /// domain counts as an identity map.
    pub fn faithfulness_failure(&self) -> Option<SElem> {
        let sg = &*self.sgrp;
        sg.elements().find(|&s| {
            !sg.is_idempotent(s)
                && self.domain(s) == self.domain(sg.star(s))
                && self.table(s).all(|(x, y)| x == y)
        })
    }

    pub fn is_faithful(&self) -> Fact {
        match self.faithfulness_failure() {
            None => Fact::yes(),
            Some(s) => Fact::no(format!("pi_{} is the identity", self.sgrp.label(s))),
        }
    }

    /// `D_s ≠ 0` for every non-idempotent `s`.
    pub fn nonidempotent_domains_nonzero(&self) -> bool {
        self.sgrp
            .elements()
            .all(|s| self.sgrp.is_idempotent(s) || !self.domain(s).is_zero())
    }

    pub fn action_unitality(&self) -> ActionUnitality {
        let per: Vec<_> = self
            .sgrp
            .elements()
            .map(|s| unitality_of(&self.ring, self.domain(s)))
            .collect();
        let fact = |f: &dyn Fn(&crate::finring::Unitality) -> bool, what: &str| {
            match per.iter().position(|u| !f(u)) {
                None => Fact::yes(),
                Some(s) => Fact::no(format!("D_{} is not {what}", self.sgrp.label(s))),
            }
        };
        ActionUnitality {
            unital: fact(&|u| u.unital, "unital"),
            locally_unital: fact(&|u| u.locally_unital, "locally unital"),
            left_s_unital: fact(&|u| u.left_s_unital, "left s-unital"),
            right_s_unital: fact(&|u| u.right_s_unital, "right s-unital"),
            s_unital: fact(&|u| u.s_unital, "s-unital"),
        }
    }

    /// First `(s, J)` with `J ∩ D_s ≠ span(D_s J)` (left) or
    /// `≠ span(J D_s)` (right), over every ideal `J` of `A`. `None` if the
    /// identity holds everywhere or there are more than `limit` ideals.
    pub fn domain_ideal_identity_failure(&self, left: bool, limit: usize) -> Option<(SElem, Subgroup)> {
        let ring = &*self.ring;
        let g = ring.group();
        let ideals = all_ideals(ring, limit)?;
        ideals.into_iter().find_map(|j| {
            self.sgrp.elements().find_map(|s| {
                let d = self.domain(s);
                let meet = j.intersection(g, d);
                let prod = if left { span_products(ring, d, &j) } else { span_products(ring, &j, d) };
                (meet != prod).then(|| (s, j.clone()))
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::build;

    fn f2() -> Arc<FinRing> {
        Arc::new(build::prime_field(2).unwrap())
    }

    #[test]
    fn trivial_action_is_valid_and_simple() {
        let a = f2();
        let sg = Arc::new(InverseSemigroup::trivial("e"));
        let pa = PartialAction::from_fn(a.clone(), sg, vec![Subgroup::whole(a.group())], |_, x| x).unwrap();
        assert!(pa.is_s_simple().holds);
        assert!(pa.is_faithful().holds);
        assert!(pa.action_unitality().unital.holds);
    }

    #[test]
    fn additive_extension() {
        let g = FinAbGroup::new(vec![2, 2], 4096).unwrap();
        let m = extend_additively(&g, &g, &[(1, 2), (2, 1)]).unwrap();
        assert_eq!(m[&3], 3);
        assert!(extend_additively(&g, &g, &[(1, 2), (1, 1)]).is_err());
        let z4 = FinAbGroup::new(vec![2, 4], 4096).unwrap();
        // order-2 element sent to an order-4 element
        assert!(extend_additively(&z4, &z4, &[(z4.basis(0), z4.basis(1))]).is_err());
    }

    #[test]
    fn swap_on_f2_squared() {
        let a = Arc::new(build::power(&build::prime_field(2).unwrap(), 2, 4096).unwrap());
        let sg = Arc::new(InverseSemigroup::from_fn(vec!["1".into(), "g".into()], |s, t| s ^ t).unwrap());
        let whole = Subgroup::whole(a.group());
        let swap = |x: Elem| ((x & 1) << 1) | (x >> 1);
        let pa = PartialAction::from_fn(a.clone(), sg, vec![whole.clone(), whole], |s, x| {
            if s == 1 {
                swap(x)
            } else {
                x
            }
        })
        .unwrap();
        assert!(pa.is_s_simple().holds);
        assert!(pa.is_faithful().holds);
        assert!(pa.domain_ideal_identity_failure(true, 64).is_none());
        let j = pa.s_invariant_closure(1);
        assert!(j.is_whole());
    }

    #[test]
    fn non_multiplicative_map_rejected() {
        let a = Arc::new(build::prime_field(3).unwrap());
        let sg = Arc::new(InverseSemigroup::trivial("e"));
        let err = PartialAction::from_fn(a.clone(), sg, vec![Subgroup::whole(a.group())], |_, x| (3 - x) % 3)
            .unwrap_err();
        assert!(matches!(err, Error::NotIso(..)), "{err}");
    }

    #[test]
    fn non_ideal_domain_rejected() {
        let a = Arc::new(build::matrix_ring(&build::prime_field(2).unwrap(), 2, 4096).unwrap());
        let sg = Arc::new(InverseSemigroup::trivial("e"));
        let e11 = a.group().basis(0);
        let d = Subgroup::closure(a.group(), &[e11]);
        let err = PartialAction::from_fn(a, sg, vec![d], |_, x| x).unwrap_err();
        assert!(matches!(err, Error::NotIdeal(_)));
    }
}
