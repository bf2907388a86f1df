use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finring::{Elem, FinAbGroup, FinRing, Subgroup};
use crate::invsgrp::{BisectionSemigroup, FinGroupoid, Mor};

/// `A_K(G)` for a finite discrete groupoid: functions `G_1 → K` under
/// convolution, alongside the groupoid ring `K[G]` built from
/// `(kg)(k'g') = (kk')(gg')`.
///
/// A function is stored like `K^{|G_1|}`: the value at morphism `m` is the
/// `m`-th block of digits, earlier morphisms more significant. `K[G]` orders
/// its generators the other way round (coefficient generator first), so the
/// identification between the two is a genuine relabelling.
#[derive(Clone, Debug)]
pub struct SteinbergAlgebra {
    pub coeff: Arc<FinRing>,
    pub groupoid: Arc<FinGroupoid>,
    pub ring: Arc<FinRing>,
    pub groupoid_ring: Arc<FinRing>,
}

impl SteinbergAlgebra {
    /// Fails with `CapExceeded` when `|K|^{|G_1|} > cap`.
    pub fn new(coeff: Arc<FinRing>, groupoid: Arc<FinGroupoid>, cap: usize) -> Result<Self> {
        let n = groupoid.size();
        let needed = (coeff.order() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if needed > cap as u128 {
            return Err(Error::cap("Steinberg algebra elements", needed, cap));
        }
        coeff.require_associative()?;
        let kk = coeff.rank();
        let mut ranks = Vec::with_capacity(n * kk);
        for _ in 0..n {
            ranks.extend_from_slice(coeff.group().ranks());
        }
        let group = FinAbGroup::new(ranks, cap)?;

        // convolution of generator indicators, evaluated pointwise
        let r = n * kk;
        let kg = coeff.group();
        let mut consts = vec![0; r * r];
        for (i, c) in consts.chunks_mut(r).enumerate() {
            let mut f = vec![0; n];
            f[i / kk] = kg.basis(i % kk);
            for (j, slot) in c.iter_mut().enumerate() {
                let mut g = vec![0; n];
                g[j / kk] = kg.basis(j % kk);
                *slot = from_values(coeff.order(), &convolve(&coeff, &groupoid, &f, &g));
            }
        }
        let ring = Arc::new(FinRing::new("A_K(G)", group, consts)?);

        // K[G]: generator t * n + g is (t-th generator of K) g
        let mut gr_ranks = vec![0; r];
        for t in 0..kk {
            for g in 0..n {
                gr_ranks[t * n + g] = kg.ranks()[t];
            }
        }
        let ggroup = FinAbGroup::new(gr_ranks, cap)?;
        let mut gconsts = vec![0; r * r];
        for t in 0..kk {
            for g in groupoid.morphisms() {
                for u in 0..kk {
                    for h in groupoid.morphisms() {
                        let Some(gh) = groupoid.compose(g, h) else { continue };
                        let prod = kg.digits(coeff.mul(kg.basis(t), kg.basis(u)));
                        let mut v = vec![0u32; r];
                        for (w, d) in prod.into_iter().enumerate() {
                            v[w * n + gh] = d;
                        }
                        gconsts[(t * n + g) * r + u * n + h] = ggroup.from_digits(&v);
                    }
                }
            }
        }
        let groupoid_ring = Arc::new(FinRing::new("K[G]", ggroup, gconsts)?);
        Ok(SteinbergAlgebra {
            coeff,
            groupoid,
            ring,
            groupoid_ring,
        })
    }

    pub fn order(&self) -> usize {
        self.ring.order()
    }

    /// Values of `x` at each morphism.
    pub fn values(&self, x: Elem) -> Vec<Elem> {
        let k = self.coeff.order();
        let n = self.groupoid.size();
        let mut out = vec![0; n];
        let mut rest = x;
        for m in (0..n).rev() {
            out[m] = rest % k;
            rest /= k;
        }
        out
    }

    pub fn from_values(&self, v: &[Elem]) -> Elem {
        from_values(self.coeff.order(), v)
    }

    /// `(f * g)(a) = Σ_{bc = a} f(b) g(c)` on value vectors.
    pub fn convolve(&self, f: &[Elem], g: &[Elem]) -> Vec<Elem> {
        convolve(&self.coeff, &self.groupoid, f, g)
    }

    /// `k_U`: value `k` on the morphisms of the mask `u`.
    pub fn indicator(&self, k: Elem, u: u64) -> Elem {
        let v: Vec<Elem> = self
            .groupoid
            .morphisms()
            .map(|m| if u >> m & 1 == 1 { k } else { 0 })
            .collect();
        self.from_values(&v)
    }

    /// `Σ_g f(g) g` in `K[G]`.
    pub fn to_groupoid_ring(&self, x: Elem) -> Elem {
        let n = self.groupoid.size();
        let kg = self.coeff.group();
        let kk = kg.rank();
        let mut v = vec![0u32; n * kk];
        for (g, val) in self.values(x).into_iter().enumerate() {
            for (t, d) in kg.digits(val).into_iter().enumerate() {
                v[t * n + g] = d;
            }
        }
        self.groupoid_ring.group().from_digits(&v)
    }

    /// First disagreement between the convolution ring, pointwise
    /// convolution, and `K[G]` under `f ↦ Σ f(g) g`. All pairs are compared
    /// up to 256 elements; beyond that, every element against every
    /// additive generator on both sides.
    pub fn groupoid_ring_failure(&self) -> Option<String> {
        let a = &*self.ring;
        let kg = &*self.groupoid_ring;
        let basis = a.group().basis_elems();
        let partners: Vec<Elem> = if a.order() <= 256 { a.elements().collect() } else { basis.clone() };
        let mut seen = vec![false; kg.order()];
        for x in a.elements() {
            let phi = self.to_groupoid_ring(x);
            if std::mem::replace(&mut seen[phi], true) {
                return Some(format!("{} is not sent to a new element of K[G]", a.fmt_elem(x)));
            }
        }
        crate::par::find_map_first(a.order(), |x| {
            for &y in &partners {
                for (l, r) in [(x, y), (y, x)] {
                    let p = a.mul(l, r);
                    if self.values(p) != self.convolve(&self.values(l), &self.values(r)) {
                        return Some(format!("table product {} * {} is not the convolution", a.fmt_elem(l), a.fmt_elem(r)));
                    }
                    if self.to_groupoid_ring(p) != kg.mul(self.to_groupoid_ring(l), self.to_groupoid_ring(r)) {
                        return Some(format!("{} * {} differs in K[G]", a.fmt_elem(l), a.fmt_elem(r)));
                    }
                }
                if self.to_groupoid_ring(a.add(x, y)) != kg.add(self.to_groupoid_ring(x), self.to_groupoid_ring(y)) {
                    return Some(format!("{} + {} differs in K[G]", a.fmt_elem(x), a.fmt_elem(y)));
                }
            }
            None
        })
    }

    /// First `(k, l, U, V)` with `k_U * l_V ≠ (kl)_{UV}`.
    pub fn indicator_law_failure(&self, bis: &BisectionSemigroup) -> Option<String> {
        let k = &*self.coeff;
        let sg = &bis.semigroup;
        let nb = bis.len();
        crate::par::find_map_first(nb * nb, |p| {
            let (u, v) = (p / nb, p % nb);
            let uv = bis.mask(sg.mul(u, v));
            for a in k.elements() {
                let ka = self.indicator(a, bis.mask(u));
                for b in k.elements() {
                    let lhs = self.ring.mul(ka, self.indicator(b, bis.mask(v)));
                    if lhs != self.indicator(k.mul(a, b), uv) {
                        return Some(format!(
                            "k = {}, l = {}, U = {}, V = {}",
                            k.fmt_elem(a),
                            k.fmt_elem(b),
                            sg.label(u),
                            sg.label(v)
                        ));
                    }
                }
            }
            None
        })
    }

    /// `A_J(G)`: functions with values in the subgroup `j` of `K`.
    pub fn coefficient_ideal(&self, j: &Subgroup) -> Subgroup {
        let gens: Vec<Elem> = self
            .groupoid
            .morphisms()
            .flat_map(|m| j.basis().iter().map(move |&x| (m, x)))
            .map(|(m, x)| self.indicator(x, 1 << m))
            .collect();
        Subgroup::closure(self.ring.group(), &gens)
    }

    /// The value of `x` at morphism `m`.
    pub fn value(&self, x: Elem, m: Mor) -> Elem {
        self.values(x)[m]
    }
}

fn from_values(k: usize, v: &[Elem]) -> Elem {
    v.iter().fold(0, |acc, &x| acc * k + x)
}

fn convolve(k: &FinRing, gpd: &FinGroupoid, f: &[Elem], g: &[Elem]) -> Vec<Elem> {
    let mut out = vec![0; gpd.size()];
    for b in gpd.morphisms().filter(|&b| f[b] != 0) {
        for c in gpd.morphisms().filter(|&c| g[c] != 0) {
            if let Some(a) = gpd.compose(b, c) {
                out[a] = k.add(out[a], k.mul(f[b], g[c]));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{build, is_simple};
    use crate::invsgrp::DEFAULT_BISECTION_CAP;

    fn alg(k: FinRing, g: FinGroupoid) -> SteinbergAlgebra {
        SteinbergAlgebra::new(Arc::new(k), Arc::new(g), 4096).unwrap()
    }

    #[test]
    fn trivial_groupoid_gives_coefficients() {
        let a = alg(build::galois_field(2, 2, 64).unwrap(), FinGroupoid::discrete(1).unwrap());
        assert_eq!(a.order(), 4);
        assert!(a.groupoid_ring_failure().is_none());
        for x in a.ring.elements() {
            for y in a.ring.elements() {
                assert_eq!(a.ring.mul(x, y), a.coeff.mul(x, y));
            }
        }
    }

    #[test]
    fn pair_groupoid_is_matrices() {
        let a = alg(build::prime_field(2).unwrap(), FinGroupoid::pair(2).unwrap());
        assert_eq!(a.order(), 16);
        assert!(a.groupoid_ring_failure().is_none());
        assert!(is_simple(&a.ring));
        let bis = BisectionSemigroup::new(a.groupoid.clone(), DEFAULT_BISECTION_CAP).unwrap();
        assert!(a.indicator_law_failure(&bis).is_none());
    }

    #[test]
    fn cap_is_enforced() {
        let k = Arc::new(build::prime_field(2).unwrap());
        let g = Arc::new(FinGroupoid::pair(3).unwrap());
        assert!(SteinbergAlgebra::new(k, g, 256).unwrap_err().is_cap());
    }
}
