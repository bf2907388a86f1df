use std::sync::Arc;

use super::action::PartialAction;
use crate::error::{Error, Result};
use crate::finring::{build, is_ideal, Elem, FinRing, Side, Subgroup};
use crate::invsgrp::{FinGroupoid, InverseSemigroup, Mor};
use crate::verdict::Fact;

/// A partial action of a finite groupoid on a ring: ideals `A_g` of
/// `A_{c(g)}` and isomorphisms `α_g: A_{g⁻¹} → A_g`. The ideal of an object
/// is the ideal of its identity morphism.
#[derive(Clone, Debug)]
pub struct GroupoidPartialAction {
    ring: Arc<FinRing>,
    groupoid: Arc<FinGroupoid>,
    ideals: Vec<Subgroup>,
    // maps[g][k] = α_g(ideals[g⁻¹].elements()[k])
    maps: Vec<Vec<Elem>>,
}

impl GroupoidPartialAction {
    /// Validates the data; `maps[g]` lists `(x, α_g(x))` for every `x` in
    /// `A_{g⁻¹}`.
    pub fn new(
        ring: Arc<FinRing>,
        groupoid: Arc<FinGroupoid>,
        ideals: Vec<Subgroup>,
        maps: Vec<Vec<(Elem, Elem)>>,
    ) -> Result<Self> {
        let n = groupoid.size();
        if ideals.len() != n || maps.len() != n {
            return Err(Error::MalformedSpec(format!(
                "groupoid action needs one ideal and one map per morphism ({n}), got {} and {}",
                ideals.len(),
                maps.len()
            )));
        }
        let mut tables = Vec::with_capacity(n);
        for (g, pairs) in maps.iter().enumerate() {
            let dom = &ideals[groupoid.inverse(g)];
            let mut table = vec![None; dom.order()];
            for &(x, y) in pairs {
                let k = dom.elements().binary_search(&x).map_err(|_| {
                    Error::NotIso(
                        groupoid.label(g).to_string(),
                        format!("defined at {} outside the domain", ring.fmt_elem(x)),
                    )
                })?;
                if y >= ring.order() {
                    return Err(Error::MalformedSpec(format!("image index {y} out of range")));
                }
                if table[k].is_some_and(|old| old != y) {
                    return Err(Error::NotIso(
                        groupoid.label(g).to_string(),
                        format!("two images for {}", ring.fmt_elem(x)),
                    ));
                }
                table[k] = Some(y);
            }
            let full: Option<Vec<Elem>> = table.iter().copied().collect();
            tables.push(full.ok_or_else(|| {
                let k = table.iter().position(Option::is_none).unwrap_or(0);
                Error::NotIso(
                    groupoid.label(g).to_string(),
                    format!("undefined at {}", ring.fmt_elem(dom.elements()[k])),
                )
            })?);
        }
        let gpa = GroupoidPartialAction {
            ring,
            groupoid,
            ideals,
            maps: tables,
        };
        gpa.validate()?;
        Ok(gpa)
    }

    pub fn from_fn(
        ring: Arc<FinRing>,
        groupoid: Arc<FinGroupoid>,
        ideals: Vec<Subgroup>,
        f: impl Fn(Mor, Elem) -> Elem,
    ) -> Result<Self> {
        if ideals.len() != groupoid.size() {
            return Err(Error::MalformedSpec(format!(
                "groupoid action needs {} ideals, got {}",
                groupoid.size(),
                ideals.len()
            )));
        }
        let maps = groupoid
            .morphisms()
            .map(|g| {
                ideals[groupoid.inverse(g)]
                    .elements()
                    .iter()
                    .map(|&x| (x, f(g, x)))
                    .collect()
            })
            .collect();
        GroupoidPartialAction::new(ring, groupoid, ideals, maps)
    }

    /// Groupoid ring data: `A = B^{G_0}`, `A_g = B e_{c(g)}` and `α_g` copies
    /// the `d(g)` coordinate to the `c(g)` coordinate.
    pub fn groupoid_ring_data(b: &FinRing, groupoid: Arc<FinGroupoid>, cap: usize) -> Result<Self> {
        let no = groupoid.object_count();
        let a = Arc::new(build::power(b, no, cap)?.with_name(format!("{}^{no}", b.name())));
        let bo = b.order();
        let weight = |i: usize| bo.pow((no - 1 - i) as u32);
        let embed = |i: usize, x: Elem| x * weight(i);
        let coord = |i: usize, x: Elem| (x / weight(i)) % bo;
        let corner = |i: usize| {
            let gens: Vec<Elem> = b.group().basis_elems().into_iter().map(|x| embed(i, x)).collect();
            Subgroup::closure(a.group(), &gens)
        };
        let ideals = groupoid.morphisms().map(|g| corner(groupoid.cod(g))).collect();
        let gp = groupoid.clone();
        GroupoidPartialAction::from_fn(a.clone(), groupoid, ideals, move |g, x| {
            embed(gp.cod(g), coord(gp.dom(g), x))
        })
    }

    /// The field `F_{p^n}` with its Galois group over `F_p`, generated by
    /// Frobenius, as a one-object groupoid acting globally.
    pub fn galois(p: u32, n: usize, cap: usize) -> Result<Self> {
        if n == 0 || (p as u128).checked_pow(n as u32).is_none_or(|q| q > 64) {
            return Err(Error::BadParams(format!("F_{p}^{n} is outside p^n <= 64")));
        }
        let f = Arc::new(build::galois_field(p, n, cap)?);
        let g = Arc::new(FinGroupoid::cyclic(n)?);
        let frob = build::frobenius(&f, p);
        let ideals = vec![Subgroup::whole(f.group()); n];
        GroupoidPartialAction::from_fn(f, g, ideals, move |k, x| {
            (0..k).fold(x, |y, _| frob[y])
        })
    }

    fn validate(&self) -> Result<()> {
        let ring = &*self.ring;
        let gpd = &*self.groupoid;
        let g = ring.group();
        ring.require_associative()?;
        for x in 0..gpd.object_count() {
            if !is_ideal(ring, self.object_ideal(x), Side::Both) {
                return Err(Error::NotIdeal(gpd.objects()[x].clone()));
            }
        }
        for m in gpd.morphisms() {
            let outer = self.object_ideal(gpd.cod(m));
            let inner = self.ideal(m);
            if !inner.is_subset(outer) || !is_ideal_within(ring, inner, outer) {
                return Err(Error::NotIdeal(format!(
                    "{} (not an ideal of the ideal of {})",
                    gpd.label(m),
                    gpd.objects()[gpd.cod(m)]
                )));
            }
        }
        for m in gpd.morphisms() {
            self.check_iso(m)?;
        }
        let gens: Vec<Elem> = (0..gpd.object_count())
            .flat_map(|x| self.object_ideal(x).basis().to_vec())
            .collect();
        if let Some(x) = Subgroup::whole(g).first_outside(&Subgroup::closure(g, &gens)) {
            return Err(Error::GroupoidAction(format!(
                "{} is not in the sum of the object ideals",
                ring.fmt_elem(x)
            )));
        }
        for x in 0..gpd.object_count() {
            let e = gpd.identity(x);
            if let Some((y, _)) = self.table(e).find(|&(y, z)| y != z) {
                return Err(Error::GroupoidAction(format!(
                    "alpha_{} moves {}",
                    gpd.label(e),
                    ring.fmt_elem(y)
                )));
            }
        }
        for a in gpd.morphisms() {
            for b in gpd.morphisms() {
                let Some(ab) = gpd.compose(a, b) else { continue };
                let inner = self.ideal(gpd.inverse(a)).intersection(g, self.ideal(b));
                let pre = self.preimage(b, &inner);
                let target = self.ideal(gpd.inverse(ab));
                if let Some(x) = pre.first_outside(target) {
                    return Err(Error::GroupoidAction(format!(
                        "g = {}, h = {}: {} lies in the preimage under alpha_h but not in A_(gh)^-1",
                        gpd.label(a),
                        gpd.label(b),
                        ring.fmt_elem(x)
                    )));
                }
                for &x in pre.basis() {
                    let lhs = self.apply(b, x).and_then(|y| self.apply(a, y));
                    if lhs != self.apply(ab, x) {
                        return Err(Error::GroupoidAction(format!(
                            "g = {}, h = {}: alpha_g alpha_h differs from alpha_gh at {}",
                            gpd.label(a),
                            gpd.label(b),
                            ring.fmt_elem(x)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_iso(&self, m: Mor) -> Result<()> {
        let ring = &*self.ring;
        let label = || self.groupoid.label(m).to_string();
        let dom = self.ideal(self.groupoid.inverse(m));
        let cod = self.ideal(m);
        let alpha = |x| self.apply(m, x).expect("in domain");
        for &x in dom.elements() {
            if !cod.contains(alpha(x)) {
                return Err(Error::NotIso(label(), format!("image of {} leaves A_g", ring.fmt_elem(x))));
            }
            for &b in dom.basis() {
                if alpha(ring.add(x, b)) != ring.add(alpha(x), alpha(b)) {
                    return Err(Error::NotIso(label(), format!("not additive at {}", ring.fmt_elem(x))));
                }
            }
        }
        for &x in dom.basis() {
            for &y in dom.basis() {
                if alpha(ring.mul(x, y)) != ring.mul(alpha(x), alpha(y)) {
                    return Err(Error::NotIso(
                        label(),
                        format!("not multiplicative at {} * {}", ring.fmt_elem(x), ring.fmt_elem(y)),
                    ));
                }
            }
        }
        let mut seen = vec![false; ring.order()];
        if dom.order() != cod.order()
            || dom.elements().iter().any(|&x| std::mem::replace(&mut seen[alpha(x)], true))
        {
            return Err(Error::NotIso(label(), "not a bijection onto A_g".into()));
        }
        Ok(())
    }

    pub fn ring(&self) -> &FinRing {
        &self.ring
    }

    pub fn ring_arc(&self) -> &Arc<FinRing> {
        &self.ring
    }

    pub fn groupoid(&self) -> &FinGroupoid {
        &self.groupoid
    }

    pub fn groupoid_arc(&self) -> &Arc<FinGroupoid> {
        &self.groupoid
    }

    /// `A_g`.
    pub fn ideal(&self, m: Mor) -> &Subgroup {
        &self.ideals[m]
    }

    /// `A_x`, the ideal of the identity at `x`.
    pub fn object_ideal(&self, x: usize) -> &Subgroup {
        &self.ideals[self.groupoid.identity(x)]
    }

    /// `α_g(x)`, or `None` outside `A_{g⁻¹}`.
    pub fn apply(&self, m: Mor, x: Elem) -> Option<Elem> {
        let dom = &self.ideals[self.groupoid.inverse(m)];
        dom.elements().binary_search(&x).ok().map(|k| self.maps[m][k])
    }

    pub fn table(&self, m: Mor) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        let dom = &self.ideals[self.groupoid.inverse(m)];
        dom.elements().iter().copied().zip(self.maps[m].iter().copied())
    }

    /// `α_g⁻¹(h)` for a subgroup `h` of `A_g`.
    fn preimage(&self, m: Mor, h: &Subgroup) -> Subgroup {
        let inv = self.groupoid.inverse(m);
        let gens: Vec<Elem> = h.basis().iter().filter_map(|&y| self.apply(inv, y)).collect();
        Subgroup::closure(self.ring.group(), &gens)
    }

    /// `α_g α_h = α_{gh}` as partial maps for every composable pair.
    pub fn is_global(&self) -> Fact {
        let gpd = &*self.groupoid;
        let g = self.ring.group();
        for a in gpd.morphisms() {
            for b in gpd.morphisms() {
                let Some(ab) = gpd.compose(a, b) else { continue };
                let inner = self.ideal(gpd.inverse(a)).intersection(g, self.ideal(b));
                let pre = self.preimage(b, &inner);
                if pre != *self.ideal(gpd.inverse(ab)) {
                    return Fact::no(format!(
                        "alpha_{} alpha_{} is defined on a smaller set than alpha_{}",
                        gpd.label(a),
                        gpd.label(b),
                        gpd.label(ab)
                    ));
                }
            }
        }
        Fact::yes()
    }

    /// The partial action of the induced semigroup `G_1 ∪ {o}` with
    /// `D_o = {0}`. Fails with the semigroup axiom that breaks, which happens
    /// when object ideals overlap.
    pub fn induced_action(&self) -> Result<PartialAction> {
        let sg: Arc<InverseSemigroup> = Arc::new(self.groupoid.induced_semigroup());
        let n = self.groupoid.size();
        let mut domains = self.ideals.clone();
        domains.push(Subgroup::zero(self.ring.group()));
        PartialAction::from_fn(self.ring.clone(), sg, domains, |s, x| {
            if s == n {
                0
            } else {
                self.apply(s, x).expect("in domain")
            }
        })
    }
}

/// `inner` absorbs products with `outer` on both sides.
fn is_ideal_within(r: &FinRing, inner: &Subgroup, outer: &Subgroup) -> bool {
    outer.basis().iter().all(|&a| {
        inner
            .basis()
            .iter()
            .all(|&x| inner.contains(r.mul(a, x)) && inner.contains(r.mul(x, a)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::build::prime_field;

    #[test]
    fn groupoid_ring_data_is_global() {
        let g = Arc::new(FinGroupoid::pair(2).unwrap());
        let gpa = GroupoidPartialAction::groupoid_ring_data(&prime_field(2).unwrap(), g, 4096).unwrap();
        assert!(gpa.is_global().holds);
        let pa = gpa.induced_action().unwrap();
        assert_eq!(pa.sgrp().size(), 5);
        assert!(pa.is_s_simple().holds);
        assert!(pa.is_faithful().holds);
    }

    #[test]
    fn galois_action() {
        let gpa = GroupoidPartialAction::galois(2, 2, 4096).unwrap();
        assert!(gpa.is_global().holds);
        let pa = gpa.induced_action().unwrap();
        assert!(pa.is_faithful().holds);
        assert!(pa.is_s_simple().holds);
        assert!(GroupoidPartialAction::galois(2, 7, 4096).is_err());
    }

    #[test]
    fn cyclic_group_ring_data_not_faithful() {
        let g = Arc::new(FinGroupoid::cyclic(2).unwrap());
        let gpa = GroupoidPartialAction::groupoid_ring_data(&prime_field(2).unwrap(), g, 4096).unwrap();
        let pa = gpa.induced_action().unwrap();
        assert_eq!(pa.faithfulness_failure().map(|s| pa.sgrp().label(s).to_string()), Some("g".into()));
    }

    #[test]
    fn restriction_is_partial_not_global() {
        // C2 acting on F2^2 by swapping, restricted so that g only acts on 0
        let a = Arc::new(build::power(&prime_field(2).unwrap(), 2, 4096).unwrap());
        let g = Arc::new(FinGroupoid::cyclic(2).unwrap());
        let ideals = vec![Subgroup::whole(a.group()), Subgroup::zero(a.group())];
        let gpa = GroupoidPartialAction::from_fn(a, g, ideals, |_, x| x).unwrap();
        assert!(!gpa.is_global().holds);
        assert!(gpa.induced_action().is_ok());
    }
}
