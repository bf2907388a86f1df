//! Seeded random instances. Every instance is commutative and s-unital, and
//! is emitted as declarations so it can be saved and rechecked.
//!
//! Three families alternate:
//! * bisection actions of small groupoids on functions of their objects;
//! * global actions of automorphism groups on products of small fields;
//! * restrictions of those to product ideals, `D_g = I ∩ σ_g(I)`.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::format::{ActionData, Def, GroupoidDef, InstanceFile, PactionDef, SemigroupDef, Vector};
use super::scenario::{declare_groupoid, declare_ring};
use crate::finring::{build, Elem, FinRing};
use crate::invsgrp::{BisectionSemigroup, DEFAULT_BISECTION_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FuzzBounds {
    /// Largest `L_π` (and Steinberg algebra) produced.
    pub cap: usize,
    /// Most field factors in the global family.
    pub max_factors: usize,
    /// Most groupoid components.
    pub max_components: usize,
}

impl Default for FuzzBounds {
    fn default() -> Self {
        FuzzBounds {
            cap: 4096,
            max_factors: 3,
            max_components: 2,
        }
    }
}

impl FuzzBounds {
    const MAX_CAP: usize = 65536;
    const MAX_FACTORS: usize = 4;
    const MAX_COMPONENTS: usize = 3;

    /// Brings every bound into its supported range, with one warning per
    /// change.
    pub fn clamped(self) -> (Self, Vec<String>) {
        let mut w = Vec::new();
        let mut clamp = |what: &str, v: usize, lo: usize, hi: usize| {
            let c = v.clamp(lo, hi);
            if c != v {
                w.push(format!("{what} {v} clamped to {c}"));
            }
            c
        };
        let b = FuzzBounds {
            cap: clamp("cap", self.cap, 16, Self::MAX_CAP),
            max_factors: clamp("max factors", self.max_factors, 1, Self::MAX_FACTORS),
            max_components: clamp("max components", self.max_components, 1, Self::MAX_COMPONENTS),
        };
        (b, w)
    }
}

#[derive(Clone, Debug)]
pub struct FuzzInstance {
    /// Short description of how the instance was drawn.
    pub label: String,
    pub file: InstanceFile,
}

#[derive(Clone, Debug)]
pub struct FuzzOutput {
    pub instances: Vec<FuzzInstance>,
    pub warnings: Vec<String>,
}

/// `count` instances drawn from `ChaCha8Rng::seed_from_u64(seed)`.
pub fn generate(seed: u64, count: usize, bounds: FuzzBounds) -> FuzzOutput {
    let (bounds, mut warnings) = bounds.clamped();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut instances = Vec::with_capacity(count);
    for i in 0..count {
        let inst = match i % 3 {
            0 => bisection_instance(&mut rng, bounds, &mut warnings),
            1 => global_instance(&mut rng, bounds, false),
            _ => global_instance(&mut rng, bounds, true),
        };
        instances.push(inst);
    }
    FuzzOutput { instances, warnings }
}

const COEFFS: &[&str] = &["F2", "F3", "F4", "F2xF2"];
const COMPONENTS: &[&str] = &["pair1", "pair2", "pair3", "cyclic2", "cyclic3"];

fn bisection_instance(rng: &mut ChaCha8Rng, b: FuzzBounds, warnings: &mut Vec<String>) -> FuzzInstance {
    for _ in 0..32 {
        let k = *COEFFS.choose(rng).expect("nonempty");
        let ncomp = rng.gen_range(1..=b.max_components);
        let comps: Vec<&str> = (0..ncomp).map(|_| *COMPONENTS.choose(rng).expect("nonempty")).collect();
        if let Some(f) = bisection_file(k, &comps, b.cap) {
            return FuzzInstance {
                label: format!("bisections of {} over {k}", comps.join("+")),
                file: f,
            };
        }
    }
    warnings.push("no admissible groupoid drawn in 32 tries; using pair2 over F2".into());
    FuzzInstance {
        label: "bisections of pair2 over F2".into(),
        file: bisection_file("F2", &["pair2"], b.cap).expect("pair2 over F2 fits every cap"),
    }
}

/// The bisection action and Steinberg algebra when `L_π` and `A_K(G)` fit.
fn bisection_file(k: &str, comps: &[&str], cap: usize) -> Option<InstanceFile> {
    let mut f = InstanceFile::default();
    let kname = declare_ring(&mut f, k).ok()?;
    let mut names = Vec::new();
    for c in comps {
        names.push(declare_groupoid(&mut f, c).ok()?);
    }
    let g = if names.len() == 1 {
        names[0].clone()
    } else {
        f.push("G", Def::Groupoid(GroupoidDef::Union(names)));
        "G".to_string()
    };
    let inst = super::Instance::build(f.clone(), cap).ok()?;
    let Some(super::Entity::Groupoid(gpd)) = inst.get("groupoid", &g) else {
        return None;
    };
    let Some(super::Entity::Ring(kr)) = inst.get("ring", &kname) else {
        return None;
    };
    let kord = kr.order() as f64;
    let bis = BisectionSemigroup::new(gpd.clone(), DEFAULT_BISECTION_CAP).ok()?;
    let support: u32 = bis.masks().iter().map(|m| m.count_ones()).sum();
    let lpi = kord.powi(support as i32);
    let steinberg = kord.powi(gpd.size() as i32);
    if lpi > cap as f64 || steinberg > cap as f64 {
        return None;
    }
    f.push("P", Def::Paction(PactionDef::Functions { ring: kname.clone(), groupoid: g.clone() }));
    f.push("A", Def::Steinberg { ring: kname, groupoid: g });
    Some(f)
}

// ---- global actions on products of fields ----

struct Factor {
    name: &'static str,
    ring: FinRing,
    /// Degree over the prime field.
    degree: usize,
    frobenius: Vec<Elem>,
}

fn factor(name: &'static str) -> Factor {
    let (p, n) = match name {
        "F2" => (2, 1),
        "F3" => (3, 1),
        _ => (2, 2),
    };
    let ring = if n == 1 {
        build::prime_field(p).expect("prime")
    } else {
        build::galois_field(p, n, 4096).expect("small field")
    };
    let frobenius = build::frobenius(&ring, p);
    Factor {
        name,
        ring,
        degree: n,
        frobenius,
    }
}

/// An automorphism of a product of fields: factor `i` goes to factor
/// `perm[i]` through the Frobenius power `exps[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Auto {
    perm: Vec<usize>,
    exps: Vec<usize>,
}

impl Auto {
    fn identity(k: usize) -> Self {
        Auto {
            perm: (0..k).collect(),
            exps: vec![0; k],
        }
    }

    /// `self ∘ other`.
    fn compose(&self, other: &Auto, degrees: &[usize]) -> Auto {
        let k = self.perm.len();
        let mut perm = vec![0; k];
        let mut exps = vec![0; k];
        for i in 0..k {
            let j = other.perm[i];
            perm[i] = self.perm[j];
            exps[i] = (other.exps[i] + self.exps[j]) % degrees[i];
        }
        Auto { perm, exps }
    }

    fn apply(&self, fs: &[Factor], x: &[Elem]) -> Vec<Elem> {
        let mut out = vec![0; x.len()];
        for (i, &xi) in x.iter().enumerate() {
            let mut y = xi;
            for _ in 0..self.exps[i] {
                y = fs[i].frobenius[y];
            }
            out[self.perm[i]] = y;
        }
        out
    }
}

fn random_auto(rng: &mut ChaCha8Rng, fs: &[Factor]) -> Auto {
    let k = fs.len();
    let mut a = Auto::identity(k);
    let mut types: Vec<&str> = fs.iter().map(|f| f.name).collect();
    types.dedup();
    for t in types {
        let slots: Vec<usize> = (0..k).filter(|&i| fs[i].name == t).collect();
        let mut shuffled = slots.clone();
        shuffled.shuffle(rng);
        for (&i, &j) in slots.iter().zip(&shuffled) {
            a.perm[i] = j;
        }
    }
    for (i, f) in fs.iter().enumerate() {
        a.exps[i] = rng.gen_range(0..f.degree);
    }
    a
}

/// Elements of the group generated by `gens`, identity first, in
/// breadth-first order.
fn generated(gens: &[Auto], degrees: &[usize]) -> Vec<Auto> {
    let mut out = vec![Auto::identity(degrees.len())];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let h = g.compose(&out[i], degrees);
            if !out.contains(&h) {
                out.push(h);
            }
        }
        i += 1;
    }
    out
}

fn digits(fs: &[Factor], x: &[Elem]) -> Vector {
    fs.iter()
        .zip(x)
        .flat_map(|(f, &xi)| f.ring.group().digits(xi).into_iter().map(|d| d as i64))
        .collect()
}

/// Basis of the product ideal on factor set `on`, as tuples.
fn ideal_basis(fs: &[Factor], on: &[usize]) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    for &i in on {
        for b in fs[i].ring.group().basis_elems() {
            let mut x = vec![0; fs.len()];
            x[i] = b;
            out.push(x);
        }
    }
    out
}

fn global_instance(rng: &mut ChaCha8Rng, b: FuzzBounds, restrict: bool) -> FuzzInstance {
    const NAMES: [&str; 3] = ["F2", "F3", "F4"];
    let (fs, group) = loop {
        let k = rng.gen_range(1..=b.max_factors);
        let mut names: Vec<&'static str> = (0..k).map(|_| *NAMES.choose(rng).expect("nonempty")).collect();
        names.sort_unstable();
        let fs: Vec<Factor> = names.iter().map(|n| factor(n)).collect();
        let order: f64 = fs.iter().map(|f| f.ring.order() as f64).product();
        if order > 64.0 {
            continue;
        }
        let degrees: Vec<usize> = fs.iter().map(|f| f.degree).collect();
        let ngens = rng.gen_range(1..=2);
        let mut gens: Vec<Auto> = (0..ngens).map(|_| random_auto(rng, &fs)).collect();
        // drop generators until the global L_pi fits
        let group = loop {
            let g = generated(&gens, &degrees);
            if order.powi(g.len() as i32) <= b.cap as f64 || gens.is_empty() {
                break g;
            }
            gens.pop();
        };
        if order.powi(group.len() as i32) <= b.cap as f64 {
            break (fs, group);
        }
    };
    let k = fs.len();
    let degrees: Vec<usize> = fs.iter().map(|f| f.degree).collect();
    let labels: Vec<String> = (0..group.len())
        .map(|i| if i == 0 { "e".to_string() } else { format!("g{i}") })
        .collect();
    let index: HashMap<&Auto, usize> = group.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let rows: Vec<Vec<String>> = group
        .iter()
        .map(|s| group.iter().map(|t| labels[index[&s.compose(t, &degrees)]].clone()).collect())
        .collect();

    let on: Vec<usize> = if restrict && k > 1 {
        let mut all: Vec<usize> = (0..k).collect();
        all.shuffle(rng);
        let keep = rng.gen_range(1..k);
        let mut on = all[..keep].to_vec();
        on.sort_unstable();
        on
    } else {
        (0..k).collect()
    };
    let sub: Vec<&Factor> = on.iter().map(|&i| &fs[i]).collect();
    let mut f = InstanceFile::default();
    let ring_name: Vec<&str> = sub.iter().map(|x| x.name).collect();
    let a = declare_ring(&mut f, &ring_name.join("x")).expect("known fields");
    f.push("S", Def::Semigroup(SemigroupDef::Explicit { labels: labels.clone(), rows }));

    // coordinates of the ideal I on `on`
    let pos: HashMap<usize, usize> = on.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let restricted: Vec<Factor> = on.iter().map(|&i| factor(fs[i].name)).collect();
    let to_sub = |x: &[Elem]| -> Vec<Elem> { on.iter().map(|&i| x[i]).collect() };
    let mut domains = Vec::new();
    let mut maps = Vec::new();
    for (gi, g) in group.iter().enumerate() {
        // D_g = I ∩ σ_g(I)
        let range: Vec<usize> = on.iter().copied().filter(|&i| pos.contains_key(&g.perm.iter().position(|&j| j == i).expect("perm"))).collect();
        let gens: Vec<Vector> = ideal_basis(&fs, &range).iter().map(|x| digits(&restricted, &to_sub(x))).collect();
        domains.push((labels[gi].clone(), gens));
        // σ_g on D_{g^-1} = I ∩ σ_g^{-1}(I)
        let source: Vec<usize> = on.iter().copied().filter(|i| pos.contains_key(&g.perm[*i])).collect();
        for x in ideal_basis(&fs, &source) {
            let y = g.apply(&fs, &x);
            maps.push((labels[gi].clone(), digits(&restricted, &to_sub(&x)), digits(&restricted, &to_sub(&y))));
        }
    }
    f.push(
        "P",
        Def::Paction(PactionDef::Explicit(ActionData {
            ring: a.clone(),
            over: "S".into(),
            domains,
            maps,
        })),
    );
    let names: Vec<&str> = fs.iter().map(|x| x.name).collect();
    let label = if on.len() < k {
        format!("group of order {} on {}, restricted to {a}", group.len(), names.join("x"))
    } else {
        format!("group of order {} on {}", group.len(), names.join("x"))
    };
    FuzzInstance { label, file: f }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{run, CheckGroup, Instance};

    #[test]
    fn deterministic() {
        let a = generate(7, 6, FuzzBounds::default());
        let b = generate(7, 6, FuzzBounds::default());
        let text = |o: &FuzzOutput| o.instances.iter().map(|i| i.file.to_string()).collect::<Vec<_>>();
        assert_eq!(text(&a), text(&b));
    }

    #[test]
    fn instances_build_and_pass() {
        for inst in generate(1, 9, FuzzBounds::default()).instances {
            let text = inst.file.to_string();
            let built = Instance::parse(&text, 4096).unwrap_or_else(|e| panic!("{}: {e}\n{text}", inst.label));
            let r = run(&built, &[CheckGroup::Skew]);
            assert!(!r.has_failure(), "{}\n{text}\n{}", inst.label, r.text());
        }
    }

    #[test]
    fn bounds_are_clamped() {
        let (b, w) = FuzzBounds { cap: 1 << 30, max_factors: 0, max_components: 2 }.clamped();
        assert_eq!(b.cap, 65536);
        assert_eq!(b.max_factors, 1);
        assert_eq!(w.len(), 2);
    }
}
