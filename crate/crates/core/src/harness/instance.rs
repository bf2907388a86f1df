//! Evaluation of parsed declarations into checked objects.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;

use super::format::{ActionData, Decl, Def, GpaDef, GroupoidDef, InstanceFile, PactionDef, RingDef, SemigroupDef, SystemDef, Vector};
use crate::error::{Error, Result};
use crate::finring::{build, Elem, FinRing, Subgroup};
use crate::invsgrp::{BisectionSemigroup, FinGroupoid, InverseSemigroup, DEFAULT_BISECTION_CAP};
use crate::paction::{extend_additively, GroupoidPartialAction, PartialAction};
use crate::skew::{LPiRing, SkewRing};
use crate::steinberg::{ga_partial_action, FunctionRing};
use crate::syscheck::SystemRing;

/// A built declaration.
#[derive(Clone, Debug)]
pub enum Entity {
    Ring(Arc<FinRing>),
    Semigroup(Arc<InverseSemigroup>),
    Groupoid(Arc<FinGroupoid>),
    System(Arc<SystemRing>),
    Paction(Arc<PartialAction>),
    Gpa(Arc<GroupoidPartialAction>),
    Steinberg(Arc<FinRing>, Arc<FinGroupoid>),
    Expect(Vec<(String, String)>),
}

/// Failure to build one declaration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceError {
    pub line: usize,
    pub name: String,
    pub error: Error,
}

impl fmt::Display for InstanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.error {
            Error::Parse { .. } => write!(f, "{}", self.error),
            e => write!(f, "line {}: `{}`: {e}", self.line, self.name),
        }
    }
}

impl std::error::Error for InstanceError {}

impl From<Error> for InstanceError {
    fn from(error: Error) -> Self {
        let line = match &error {
            Error::Parse { line, .. } => *line,
            _ => 0,
        };
        InstanceError {
            line,
            name: String::new(),
            error,
        }
    }
}

/// Every declaration of a file, built in order. Entities are keyed by
/// `kind:name`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub file: InstanceFile,
    pub cap: usize,
    pub entities: IndexMap<String, Entity>,
}

pub fn key(kind: &str, name: &str) -> String {
    format!("{kind}:{name}")
}

impl Instance {
    pub fn parse(text: &str, cap: usize) -> std::result::Result<Self, InstanceError> {
        Instance::build(InstanceFile::parse(text)?, cap)
    }

    pub fn build(file: InstanceFile, cap: usize) -> std::result::Result<Self, InstanceError> {
        let mut inst = Instance {
            file: InstanceFile::default(),
            cap,
            entities: IndexMap::new(),
        };
        for d in &file.decls {
            let e = inst.build_decl(d).map_err(|error| InstanceError {
                line: d.line,
                name: d.name.clone(),
                error,
            })?;
            inst.entities.insert(key(d.def.kind(), &d.name), e);
        }
        inst.file = file;
        Ok(inst)
    }

    pub fn get(&self, kind: &str, name: &str) -> Option<&Entity> {
        self.entities.get(&key(kind, name))
    }

    fn ring(&self, name: &str) -> Result<Arc<FinRing>> {
        match self.get("ring", name) {
            Some(Entity::Ring(r)) => Ok(r.clone()),
            _ => Err(Error::UnresolvedRef(format!("ring {name}"))),
        }
    }

    fn semigroup(&self, name: &str) -> Result<Arc<InverseSemigroup>> {
        match self.get("semigroup", name) {
            Some(Entity::Semigroup(s)) => Ok(s.clone()),
            _ => Err(Error::UnresolvedRef(format!("semigroup {name}"))),
        }
    }

    fn groupoid(&self, name: &str) -> Result<Arc<FinGroupoid>> {
        match self.get("groupoid", name) {
            Some(Entity::Groupoid(g)) => Ok(g.clone()),
            _ => Err(Error::UnresolvedRef(format!("groupoid {name}"))),
        }
    }

    fn paction(&self, name: &str) -> Result<Arc<PartialAction>> {
        match self.get("paction", name) {
            Some(Entity::Paction(p)) => Ok(p.clone()),
            _ => Err(Error::UnresolvedRef(format!("paction {name}"))),
        }
    }

    fn gpa(&self, name: &str) -> Result<Arc<GroupoidPartialAction>> {
        match self.get("gpa", name) {
            Some(Entity::Gpa(g)) => Ok(g.clone()),
            _ => Err(Error::UnresolvedRef(format!("gpa {name}"))),
        }
    }

    fn build_decl(&self, d: &Decl) -> Result<Entity> {
        let cap = self.cap;
        Ok(match &d.def {
            Def::Ring(r) => Entity::Ring(Arc::new(self.build_ring(r)?.with_name(d.name.clone()))),
            Def::Semigroup(s) => Entity::Semigroup(Arc::new(match s {
                SemigroupDef::Trivial(l) => InverseSemigroup::trivial(l),
                SemigroupDef::SymmetricInverseMonoid(n) => InverseSemigroup::symmetric_inverse_monoid(*n)?,
                SemigroupDef::Bisections(g) => {
                    let b = BisectionSemigroup::new(self.groupoid(g)?, DEFAULT_BISECTION_CAP)?;
                    (*b.semigroup).clone()
                }
                SemigroupDef::Induced(g) => self.groupoid(g)?.induced_semigroup(),
                SemigroupDef::Explicit { labels, rows } => {
                    let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
                    let mut table = Vec::with_capacity(labels.len() * labels.len());
                    for r in rows {
                        for l in r {
                            table.push(*index.get(l.as_str()).ok_or_else(|| Error::UnresolvedRef(format!("element {l}")))?);
                        }
                    }
                    InverseSemigroup::new(labels.clone(), table)?
                }
            })),
            Def::Groupoid(g) => Entity::Groupoid(Arc::new(self.build_groupoid(g)?)),
            Def::System(s) => Entity::System(Arc::new(match s {
                SystemDef::Skew(p) => SkewRing::new(self.paction(p)?, cap)?.grading,
                SystemDef::Lpi(p) => LPiRing::new(self.paction(p)?, cap)?.grading,
                SystemDef::Explicit {
                    ring,
                    semigroup,
                    components,
                } => {
                    let r = self.ring(ring)?;
                    let sg = self.semigroup(semigroup)?;
                    let comps = labelled_subgroups(&r, sg.labels(), components, |l| sg.index_of(l))?;
                    SystemRing::new(r, sg, comps)?
                }
            })),
            Def::Paction(p) => Entity::Paction(Arc::new(match p {
                PactionDef::Functions { ring, groupoid } => {
                    let k = self.ring(ring)?;
                    let g = self.groupoid(groupoid)?;
                    let bis = BisectionSemigroup::new(g.clone(), DEFAULT_BISECTION_CAP)?;
                    let fr = FunctionRing::new(k, g.object_count(), cap)?;
                    ga_partial_action(&fr, &bis)?
                }
                PactionDef::PartialBijections { ring, degree } => {
                    partial_bijections(&self.ring(ring)?, *degree, cap)?
                }
                PactionDef::Induced(h) => self.gpa(h)?.induced_action()?,
                PactionDef::Explicit(data) => {
                    let r = self.ring(&data.ring)?;
                    let sg = self.semigroup(&data.over)?;
                    let (domains, images) = action_data(&r, sg.labels(), data, |l| sg.index_of(l))?;
                    PartialAction::from_generator_images(r, sg, domains, images)?
                }
            })),
            Def::Gpa(g) => Entity::Gpa(Arc::new(match g {
                GpaDef::RingData { ring, groupoid } => {
                    GroupoidPartialAction::groupoid_ring_data(&*self.ring(ring)?, self.groupoid(groupoid)?, cap)?
                }
                GpaDef::Galois { p, n } => GroupoidPartialAction::galois(*p, *n, cap)?,
                GpaDef::Explicit(data) => {
                    let r = self.ring(&data.ring)?;
                    let gpd = self.groupoid(&data.over)?;
                    let (ideals, images) = action_data(&r, gpd.labels(), data, |l| gpd.index_of(l))?;
                    let mut maps = Vec::with_capacity(images.len());
                    for (m, pairs) in images.iter().enumerate() {
                        let map = extend_additively(r.group(), r.group(), pairs).map_err(|x| {
                            Error::NotIso(gpd.label(m).to_string(), format!("images are not additive at {}", r.fmt_elem(x)))
                        })?;
                        let mut pairs: Vec<(Elem, Elem)> = map.into_iter().collect();
                        pairs.sort_unstable();
                        maps.push(pairs);
                    }
                    GroupoidPartialAction::new(r, gpd, ideals, maps)?
                }
            })),
            Def::Steinberg { ring, groupoid } => Entity::Steinberg(self.ring(ring)?, self.groupoid(groupoid)?),
            Def::Expect(xs) => Entity::Expect(xs.clone()),
        })
    }

    fn build_ring(&self, r: &RingDef) -> Result<FinRing> {
        let cap = self.cap;
        match r {
            RingDef::Prime(p) => build::prime_field(*p),
            RingDef::Galois(p, n) => build::galois_field(*p, *n, cap),
            RingDef::Product(xs) => {
                let mut acc = (*self.ring(&xs[0])?).clone();
                for x in &xs[1..] {
                    acc = build::product(&acc, &*self.ring(x)?, cap)?;
                }
                Ok(acc)
            }
            RingDef::Power(a, n) => build::power(&*self.ring(a)?, *n, cap),
            RingDef::Matrix(a, n) => build::matrix_ring(&*self.ring(a)?, *n, cap),
            RingDef::Zero(ranks) => build::zero_ring(ranks.clone(), cap),
            RingDef::Explicit { ranks, products } => FinRing::from_spec("ring", ranks.clone(), products, cap),
        }
    }

    fn build_groupoid(&self, g: &GroupoidDef) -> Result<FinGroupoid> {
        match g {
            GroupoidDef::Pair(n) => FinGroupoid::pair(*n),
            GroupoidDef::Cyclic(m) => FinGroupoid::cyclic(*m),
            GroupoidDef::Discrete(n) => FinGroupoid::discrete(*n),
            GroupoidDef::Union(xs) => {
                let parts = xs.iter().map(|x| self.groupoid(x)).collect::<Result<Vec<_>>>()?;
                let refs: Vec<&FinGroupoid> = parts.iter().map(|p| &**p).collect();
                FinGroupoid::disjoint_union(&refs)
            }
            GroupoidDef::Product(a, b) => FinGroupoid::product(&*self.groupoid(a)?, &*self.groupoid(b)?),
            GroupoidDef::Explicit {
                objects,
                arrows,
                compose,
            } => {
                let obj = |l: &str| {
                    objects
                        .iter()
                        .position(|o| o == l)
                        .ok_or_else(|| Error::UnresolvedRef(format!("object {l}")))
                };
                let arrows_idx = arrows
                    .iter()
                    .map(|(l, d, c)| Ok((l.clone(), obj(d)?, obj(c)?)))
                    .collect::<Result<Vec<_>>>()?;
                let no = objects.len();
                let mor = |l: &str| {
                    obj(l).or_else(|_| {
                        arrows
                            .iter()
                            .position(|(a, _, _)| a == l)
                            .map(|i| no + i)
                            .ok_or_else(|| Error::UnresolvedRef(format!("morphism {l}")))
                    })
                };
                let mut products = Vec::new();
                for (g, h, k) in compose {
                    let (g, h, k) = (mor(g)?, mor(h)?, mor(k)?);
                    // composites with identities are implied; a wrong one is rejected
                    if g < no || h < no {
                        let other = if g < no { h } else { g };
                        if k != other {
                            return Err(Error::MalformedGroupoid(format!(
                                "composite with an identity must be the other factor (`{}`)",
                                compose_label(objects, arrows, other)
                            )));
                        }
                        continue;
                    }
                    products.push((g, h, k));
                }
                FinGroupoid::new(objects.clone(), arrows_idx, &products)
            }
        }
    }
}

fn compose_label(objects: &[String], arrows: &[(String, String, String)], m: usize) -> String {
    objects
        .get(m)
        .cloned()
        .unwrap_or_else(|| arrows[m - objects.len()].0.clone())
}

fn vector_elem(r: &FinRing, v: &Vector) -> Result<Elem> {
    let g = r.group();
    if v.len() != g.rank() {
        return Err(Error::MalformedSpec(format!(
            "vector {:?} has {} components, ring `{}` has {}",
            v,
            v.len(),
            r.name(),
            g.rank()
        )));
    }
    Ok(g.from_digits(v))
}

fn labelled_subgroups(
    r: &FinRing,
    labels: &[String],
    lists: &[(String, Vec<Vector>)],
    index: impl Fn(&str) -> Option<usize>,
) -> Result<Vec<Subgroup>> {
    let mut out = vec![Subgroup::zero(r.group()); labels.len()];
    for (l, gens) in lists {
        let i = index(l).ok_or_else(|| Error::UnresolvedRef(format!("element {l}")))?;
        let elems = gens.iter().map(|v| vector_elem(r, v)).collect::<Result<Vec<_>>>()?;
        out[i] = out[i].sum(r.group(), &Subgroup::closure(r.group(), &elems));
    }
    Ok(out)
}

type Images = Vec<Vec<(Elem, Elem)>>;

fn action_data(
    r: &FinRing,
    labels: &[String],
    data: &ActionData,
    index: impl Fn(&str) -> Option<usize> + Copy,
) -> Result<(Vec<Subgroup>, Images)> {
    let domains = labelled_subgroups(r, labels, &data.domains, index)?;
    let mut images = vec![Vec::new(); labels.len()];
    for (l, x, y) in &data.maps {
        let i = index(l).ok_or_else(|| Error::UnresolvedRef(format!("element {l}")))?;
        images[i].push((vector_elem(r, x)?, vector_elem(r, y)?));
    }
    Ok((domains, images))
}

/// `r` as an explicit declaration; zero products are omitted.
pub fn explicit_ring(r: &FinRing) -> RingDef {
    let g = r.group();
    let k = r.rank();
    let mut products = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let c = r.structure_constant(i, j);
            if c != 0 {
                products.push((i, j, g.digits(c).into_iter().map(|d| d as i64).collect()));
            }
        }
    }
    RingDef::Explicit {
        ranks: g.ranks().to_vec(),
        products,
    }
}

/// The symmetric inverse monoid of degree `n` acting on `K^n` by moving
/// coordinates: `π_s(f)(s(i)) = f(i)`.
pub fn partial_bijections(k: &Arc<FinRing>, n: usize, cap: usize) -> Result<PartialAction> {
    let sg = Arc::new(InverseSemigroup::symmetric_inverse_monoid(n)?);
    let fr = FunctionRing::new(k.clone(), n, cap)?;
    let maps: Vec<Vec<Option<usize>>> = sg
        .labels()
        .iter()
        .map(|l| l.chars().map(|c| c.to_digit(10).map(|d| d as usize - 1)).collect())
        .collect();
    let image_mask = |m: &[Option<usize>]| m.iter().flatten().fold(0u64, |acc, &y| acc | 1 << y);
    let domains: Vec<Subgroup> = maps.iter().map(|m| fr.supported_on(image_mask(m))).collect();
    PartialAction::from_fn(fr.ring.clone(), sg, domains, |s, f| {
        let vals = fr.values(f);
        let mut out = vec![0; n];
        for (i, y) in maps[s].iter().enumerate() {
            if let Some(y) = y {
                out[*y] = vals[i];
            }
        }
        fr.from_values(&out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_in_order() {
        let text = "[ring F2]\nprime 2\n[groupoid G]\npair 2\n[gpa H]\nring-data F2 G\n[paction P]\ninduced H\n[system S]\nskew P\n";
        let inst = Instance::parse(text, 4096).unwrap();
        assert_eq!(inst.entities.len(), 5);
        match inst.get("system", "S") {
            Some(Entity::System(s)) => assert_eq!(s.ring().order(), 16),
            _ => panic!("missing system"),
        }
    }

    #[test]
    fn forward_reference_is_unresolved() {
        let e = Instance::parse("[gpa H]\nring-data F2 G\n[ring F2]\nprime 2\n", 4096).unwrap_err();
        assert_eq!(e.line, 1);
        assert!(matches!(e.error, Error::UnresolvedRef(_)));
    }

    #[test]
    fn explicit_groupoid_and_action() {
        let text = "\
[ring F2]
prime 2
[ring A]
power F2 2
[groupoid G]
objects = x y
mor a : x -> y
mor b : y -> x
cmp a b = y
cmp b a = x
[gpa H]
ring = A
groupoid = G
ideal x = 1,0
ideal y = 0,1
ideal a = 0,1
ideal b = 1,0
map x 1,0 -> 1,0
map y 0,1 -> 0,1
map a 1,0 -> 0,1
map b 0,1 -> 1,0
";
        let inst = Instance::parse(text, 4096).unwrap();
        let Some(Entity::Gpa(h)) = inst.get("gpa", "H") else { panic!() };
        assert!(h.groupoid().is_connected());
    }

    #[test]
    fn explicit_ring_rebuilds() {
        let m = build::matrix_ring(&build::prime_field(2).unwrap(), 2, 4096).unwrap();
        let mut f = InstanceFile::default();
        f.push("M", Def::Ring(explicit_ring(&m)));
        let inst = Instance::parse(&f.to_string(), 4096).unwrap();
        let Some(Entity::Ring(r)) = inst.get("ring", "M") else { panic!() };
        for x in m.elements() {
            for y in m.elements() {
                assert_eq!(r.mul(x, y), m.mul(x, y));
            }
        }
    }

    #[test]
    fn partial_bijections_validate() {
        let k = Arc::new(build::prime_field(2).unwrap());
        let pa = partial_bijections(&k, 2, 4096).unwrap();
        assert_eq!(pa.sgrp().size(), 7);
        assert!(pa.action_unitality().s_unital.holds);
    }
}
