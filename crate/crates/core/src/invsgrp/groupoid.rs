use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::semigroup::InverseSemigroup;
use crate::error::{Error, Result};

/// Index of a morphism of a [`FinGroupoid`]. Identities come first: the
/// identity of object `x` is morphism `x`.
pub type Mor = usize;
pub type Obj = usize;

/// Groupoids with more objects than this are not searched for invariant
/// object sets.
pub const OBJECT_SUBSET_CAP: usize = 16;

#[derive(Clone)]
pub struct FinGroupoid {
    objects: Vec<String>,
    labels: Vec<String>,
    index: HashMap<String, Mor>,
    dom: Vec<Obj>,
    cod: Vec<Obj>,
    compose: Vec<Option<Mor>>,
    inverse: Vec<Mor>,
}

impl fmt::Debug for FinGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinGroupoid")
            .field("objects", &self.objects)
            .field("morphisms", &self.labels)
            .finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidPredicates {
    pub connected: bool,
    pub thin: bool,
    pub effective: bool,
    pub minimal: bool,
    pub is_matrix: bool,
}

impl FinGroupoid {
    /// Builds and validates a groupoid. `arrows` lists the non-identity
    /// morphisms as `(label, domain, codomain)`; identities are created for
    /// every object and labelled by it. `products` gives `gh` for every
    /// composable pair of non-identity morphisms (`d(g) = c(h)`).
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<(String, Obj, Obj)>,
        products: &[(Mor, Mor, Mor)],
    ) -> Result<Self> {
        let no = objects.len();
        if no == 0 {
            return Err(Error::MalformedGroupoid("no objects".into()));
        }
        let mut labels = objects.clone();
        let mut dom: Vec<Obj> = (0..no).collect();
        let mut cod: Vec<Obj> = (0..no).collect();
        for (l, d, c) in &arrows {
            if *d >= no || *c >= no {
                return Err(Error::MalformedGroupoid(format!("morphism `{l}` has an unknown end")));
            }
            labels.push(l.clone());
            dom.push(*d);
            cod.push(*c);
        }
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::MalformedGroupoid(format!("duplicate label `{l}`")));
            }
        }
        let n = labels.len();
        let mut compose = vec![None; n * n];
        for g in 0..n {
            for h in 0..n {
                if dom[g] == cod[h] {
                    if g < no {
                        compose[g * n + h] = Some(h);
                    } else if h < no {
                        compose[g * n + h] = Some(g);
                    }
                }
            }
        }
        for &(g, h, k) in products {
            if g >= n || h >= n || k >= n {
                return Err(Error::MalformedGroupoid("composition refers to unknown morphism".into()));
            }
            if dom[g] != cod[h] {
                return Err(Error::MalformedGroupoid(format!(
                    "`{}` and `{}` are not composable",
                    labels[g], labels[h]
                )));
            }
            if let Some(prev) = compose[g * n + h] {
                if prev != k {
                    return Err(Error::MalformedGroupoid(format!(
                        "conflicting composites for `{}` `{}`",
                        labels[g], labels[h]
                    )));
                }
            }
            compose[g * n + h] = Some(k);
        }
        let mut gpd = FinGroupoid {
            objects,
            labels,
            index,
            dom,
            cod,
            compose,
            inverse: Vec::new(),
        };
        gpd.validate()?;
        Ok(gpd)
    }

    fn validate(&mut self) -> Result<()> {
        let n = self.size();
        let l = |g: Mor| self.labels[g].clone();
        for g in 0..n {
            for h in 0..n {
                match self.compose[g * n + h] {
                    None if self.dom[g] == self.cod[h] => {
                        return Err(Error::MalformedGroupoid(format!(
                            "missing composite of `{}` and `{}`",
                            l(g),
                            l(h)
                        )));
                    }
                    Some(k) if self.cod[k] != self.cod[g] || self.dom[k] != self.dom[h] => {
                        return Err(Error::MalformedGroupoid(format!(
                            "composite `{}` of `{}` `{}` has the wrong ends",
                            l(k),
                            l(g),
                            l(h)
                        )));
                    }
                    _ => {}
                }
            }
        }
        for g in 0..n {
            for h in 0..n {
                let Some(gh) = self.compose(g, h) else { continue };
                for k in 0..n {
                    let Some(hk) = self.compose(h, k) else { continue };
                    if self.compose(gh, k) != self.compose(g, hk) {
                        return Err(Error::MalformedGroupoid(format!(
                            "composition not associative at `{}` `{}` `{}`",
                            l(g),
                            l(h),
                            l(k)
                        )));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let (dg, cg) = (self.dom[g], self.cod[g]);
            let inv = (0..n).find(|&h| self.compose(h, g) == Some(dg) && self.compose(g, h) == Some(cg));
            match inv {
                Some(h) => inverse.push(h),
                None => {
                    return Err(Error::MalformedGroupoid(format!("`{}` has no inverse", l(g))));
                }
            }
        }
        self.inverse = inverse;
        Ok(())
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    /// Number of morphisms `|G_1|`.
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn morphisms(&self) -> std::ops::Range<Mor> {
        0..self.size()
    }

    pub fn label(&self, g: Mor) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<Mor> {
        self.index.get(label).copied()
    }

    pub fn object_index(&self, label: &str) -> Option<Obj> {
        self.objects.iter().position(|o| o == label)
    }

    #[inline]
    pub fn dom(&self, g: Mor) -> Obj {
        self.dom[g]
    }

    #[inline]
    pub fn cod(&self, g: Mor) -> Obj {
        self.cod[g]
    }

    pub fn identity(&self, x: Obj) -> Mor {
        x
    }

    pub fn is_identity(&self, g: Mor) -> bool {
        g < self.object_count()
    }

    #[inline]
    pub fn compose(&self, g: Mor, h: Mor) -> Option<Mor> {
        self.compose[g * self.size() + h]
    }

    #[inline]
    pub fn inverse(&self, g: Mor) -> Mor {
        self.inverse[g]
    }

    /// Morphisms with `d(g) = c(g)`.
    pub fn isotropy(&self) -> Vec<Mor> {
        self.morphisms().filter(|&g| self.dom[g] == self.cod[g]).collect()
    }

    pub fn is_connected(&self) -> bool {
        let no = self.object_count();
        let mut reach = vec![vec![false; no]; no];
        for g in self.morphisms() {
            reach[self.dom[g]][self.cod[g]] = true;
        }
        reach.iter().all(|row| row.iter().all(|&b| b))
    }

    pub fn is_thin(&self) -> bool {
        let no = self.object_count();
        let mut seen = vec![false; no * no];
        for g in self.morphisms() {
            let key = self.dom[g] * no + self.cod[g];
            if seen[key] {
                return false;
            }
            seen[key] = true;
        }
        true
    }

    /// `Iso(G) = G_0`.
    pub fn is_effective(&self) -> bool {
        self.isotropy().iter().all(|&g| self.is_identity(g))
    }

    /// `d(c^{-1}(U))` for a set of objects given as a bit mask.
    pub fn saturate(&self, u: u64) -> u64 {
        let mut out = 0u64;
        for g in self.morphisms() {
            if u >> self.cod[g] & 1 == 1 {
                out |= 1 << self.dom[g];
            }
        }
        out
    }

    /// First object set other than the empty set and `G_0` with
    /// `d(c^{-1}(U)) = U`.
    pub fn proper_invariant_subset(&self) -> Result<Option<u64>> {
        let no = self.object_count();
        if no > OBJECT_SUBSET_CAP {
            return Err(Error::cap("object subsets", 1u128 << no, 1 << OBJECT_SUBSET_CAP));
        }
        let full = (1u64 << no) - 1;
        Ok((1..full).find(|&u| self.saturate(u) == u))
    }

    pub fn is_minimal(&self) -> Result<bool> {
        Ok(self.proper_invariant_subset()?.is_none())
    }

    /// All structural predicates, with the cross-checks minimal = connected
    /// and effective = thin.
    pub fn predicates(&self) -> Result<GroupoidPredicates> {
        let connected = self.is_connected();
        let thin = self.is_thin();
        let effective = self.is_effective();
        let minimal = self.is_minimal()?;
        if minimal != connected {
            return Err(Error::InternalInconsistency(format!(
                "minimal = {minimal} but connected = {connected}"
            )));
        }
        if effective != thin {
            return Err(Error::InternalInconsistency(format!(
                "effective = {effective} but thin = {thin}"
            )));
        }
        Ok(GroupoidPredicates {
            connected,
            thin,
            effective,
            minimal,
            is_matrix: connected && thin,
        })
    }

    /// The inverse semigroup `G_1 ∪ {o}`, with `o` last and labelled by the
    /// first of `o`, `o'`, `o''`, ... not already used.
    pub fn induced_semigroup(&self) -> InverseSemigroup {
        let n = self.size();
        let mut zero = "o".to_string();
        while self.index.contains_key(&zero) {
            zero.push('\'');
        }
        let mut labels = self.labels.clone();
        labels.push(zero);
        InverseSemigroup::from_fn(labels, |s, t| {
            if s == n || t == n {
                n
            } else {
                self.compose(s, t).unwrap_or(n)
            }
        })
        .expect("induced semigroup of a groupoid is inverse")
    }

    // ---- constructors ----

    /// Objects `labels`, one morphism `(i, j)` from `j` to `i` for every pair.
    pub fn matrix(labels: &[String]) -> Result<Self> {
        let n = labels.len();
        let name = |i: usize, j: usize| {
            if n <= 9 {
                format!("e{}{}", i + 1, j + 1)
            } else {
                format!("e{}_{}", i + 1, j + 1)
            }
        };
        let mut arrows = Vec::new();
        let mut id_of = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    id_of[i][j] = i;
                } else {
                    id_of[i][j] = n + arrows.len();
                    arrows.push((name(i, j), j, i));
                }
            }
        }
        let mut products = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if i != j && j != k {
                        products.push((id_of[i][j], id_of[j][k], id_of[i][k]));
                    }
                }
            }
        }
        FinGroupoid::new(labels.to_vec(), arrows, &products)
    }

    /// Matrix groupoid on objects `1..=n`.
    pub fn pair(n: usize) -> Result<Self> {
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        FinGroupoid::matrix(&labels)
    }

    /// A finite group as a one-object groupoid; element 0 must be the
    /// identity and is labelled by `object`.
    pub fn from_group(
        object: &str,
        labels: &[String],
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = labels.len();
        let arrows = (1..n).map(|g| (labels[g].clone(), 0, 0)).collect();
        let mut products = Vec::new();
        for g in 1..n {
            for h in 1..n {
                products.push((g, h, mul(g, h)));
            }
        }
        FinGroupoid::new(vec![object.to_string()], arrows, &products)
    }

    /// The cyclic group of order `m` as a one-object groupoid on object `*`,
    /// with morphisms `g`, `g2`, ..., `g{m-1}`.
    pub fn cyclic(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::BadParams("cyclic group of order 0".into()));
        }
        let labels: Vec<String> = (0..m)
            .map(|i| match i {
                0 => "*".to_string(),
                1 => "g".to_string(),
                _ => format!("g{i}"),
            })
            .collect();
        FinGroupoid::from_group("*", &labels, |a, b| (a + b) % m)
    }

    /// `n` objects with identity morphisms only.
    pub fn discrete(n: usize) -> Result<Self> {
        let objects = (1..=n).map(|i| i.to_string()).collect();
        FinGroupoid::new(objects, Vec::new(), &[])
    }

    /// Disjoint union; labels of part `i` get the prefix `{i}.` when the
    /// parts share labels.
    pub fn disjoint_union(parts: &[&FinGroupoid]) -> Result<Self> {
        let mut all = std::collections::HashSet::new();
        let clash = parts
            .iter()
            .flat_map(|p| p.labels.iter())
            .any(|l| !all.insert(l.clone()));
        let rename = |i: usize, l: &str| {
            if clash {
                format!("{}.{l}", i + 1)
            } else {
                l.to_string()
            }
        };
        let mut objects = Vec::new();
        let mut arrows = Vec::new();
        let mut products = Vec::new();
        let total_objects: usize = parts.iter().map(|p| p.object_count()).sum();
        let mut obj_off = 0;
        let mut arrow_off = 0;
        for (i, p) in parts.iter().enumerate() {
            let no = p.object_count();
            for o in p.objects() {
                objects.push(rename(i, o));
            }
            let map = |g: Mor| {
                if g < no {
                    obj_off + g
                } else {
                    total_objects + arrow_off + (g - no)
                }
            };
            for g in no..p.size() {
                arrows.push((rename(i, &p.labels[g]), obj_off + p.dom[g], obj_off + p.cod[g]));
            }
            for g in no..p.size() {
                for h in no..p.size() {
                    if let Some(k) = p.compose(g, h) {
                        products.push((map(g), map(h), map(k)));
                    }
                }
            }
            obj_off += no;
            arrow_off += p.size() - no;
        }
        FinGroupoid::new(objects, arrows, &products)
    }

    /// Product groupoid; objects and morphisms are labelled `a.b`.
    pub fn product(a: &FinGroupoid, b: &FinGroupoid) -> Result<Self> {
        let (na, nb) = (a.object_count(), b.object_count());
        let mut objects = Vec::new();
        for x in 0..na {
            for y in 0..nb {
                objects.push(format!("{}.{}", a.objects[x], b.objects[y]));
            }
        }
        // index of morphism (g, h) in the new groupoid
        let mut idx = vec![vec![0; b.size()]; a.size()];
        let mut arrows = Vec::new();
        for g in a.morphisms() {
            for h in b.morphisms() {
                if a.is_identity(g) && b.is_identity(h) {
                    idx[g][h] = g * nb + h;
                } else {
                    idx[g][h] = na * nb + arrows.len();
                    arrows.push((
                        format!("{}.{}", a.labels[g], b.labels[h]),
                        a.dom[g] * nb + b.dom[h],
                        a.cod[g] * nb + b.cod[h],
                    ));
                }
            }
        }
        let mut products = Vec::new();
        for g1 in a.morphisms() {
            for h1 in b.morphisms() {
                for g2 in a.morphisms() {
                    for h2 in b.morphisms() {
                        if let (Some(g), Some(h)) = (a.compose(g1, g2), b.compose(h1, h2)) {
                            products.push((idx[g1][h1], idx[g2][h2], idx[g][h]));
                        }
                    }
                }
            }
        }
        FinGroupoid::new(objects, arrows, &products)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_groupoids() {
        for n in 1..=3 {
            let g = FinGroupoid::pair(n).unwrap();
            assert_eq!(g.size(), n * n);
            let p = g.predicates().unwrap();
            assert!(p.connected && p.thin && p.minimal && p.effective && p.is_matrix);
        }
        let g = FinGroupoid::pair(2).unwrap();
        let e12 = g.index_of("e12").unwrap();
        assert_eq!((g.dom(e12), g.cod(e12)), (1, 0));
        assert_eq!(g.inverse(e12), g.index_of("e21").unwrap());
    }

    #[test]
    fn discrete_and_cyclic() {
        let d = FinGroupoid::discrete(2).unwrap().predicates().unwrap();
        assert!(!d.connected && !d.minimal && d.thin);
        let c = FinGroupoid::cyclic(2).unwrap().predicates().unwrap();
        assert!(c.connected && !c.thin && !c.effective);
    }

    #[test]
    fn induced_semigroups() {
        let t = FinGroupoid::discrete(1).unwrap().induced_semigroup();
        assert_eq!(t.size(), 2);
        let s = FinGroupoid::pair(2).unwrap().induced_semigroup();
        assert_eq!(s.size(), 5);
        assert_eq!(s.zero(), Some(4));
        assert_eq!(s.label(4), "o");
    }

    #[test]
    fn unions_and_products() {
        let c2 = FinGroupoid::cyclic(2).unwrap();
        let u = FinGroupoid::disjoint_union(&[&c2, &c2]).unwrap();
        assert_eq!(u.size(), 4);
        assert!(!u.is_connected());
        let p = FinGroupoid::product(&FinGroupoid::pair(2).unwrap(), &c2).unwrap();
        assert_eq!(p.size(), 8);
        let pr = p.predicates().unwrap();
        assert!(pr.connected && !pr.thin);
    }

    #[test]
    fn rejects_bad_tables() {
        let objects = vec!["x".to_string()];
        let r = FinGroupoid::new(objects.clone(), vec![("g".into(), 0, 0)], &[]);
        assert!(matches!(r, Err(Error::MalformedGroupoid(_))));
        // g g = g makes g an idempotent non-identity without inverse
        let r = FinGroupoid::new(objects, vec![("g".into(), 0, 0)], &[(1, 1, 1)]);
        assert!(matches!(r, Err(Error::MalformedGroupoid(_))));
    }
}
