// Test-side oracles. They only use element-level ring operations and
// brute-force enumeration, never the library's own predicates.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};
use std::path::PathBuf;
use std::sync::Arc;

use skewalg::finring::{Elem, FinRing};
use skewalg::harness::{fuzz, Entity, Instance};
use skewalg::invsgrp::FinGroupoid;
use skewalg::paction::PartialAction;
use skewalg::syscheck::SystemRing;

pub const CAP: usize = 4096;

fn fixture_dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(sub)
}

fn read_dir(sub: &str) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = std::fs::read_dir(fixture_dir(sub))
        .expect("fixture directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "skw"))
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, std::fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    out
}

/// Positive fixtures, built.
pub fn fixtures() -> Vec<(String, Instance)> {
    read_dir("")
        .into_iter()
        .map(|(n, t)| {
            let inst = Instance::parse(&t, CAP).unwrap_or_else(|e| panic!("{n}: {e}"));
            (n, inst)
        })
        .collect()
}

/// Negative fixtures with the error variant named on their first line.
pub fn negative_fixtures() -> Vec<(String, String, String)> {
    read_dir("negative")
        .into_iter()
        .map(|(n, t)| {
            let want = t
                .lines()
                .next()
                .and_then(|l| l.strip_prefix("# error: "))
                .unwrap_or_else(|| panic!("{n} does not name its error"))
                .trim()
                .to_string();
            (n, want, t)
        })
        .collect()
}

pub fn failing_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_dir("failing").join(name)).unwrap()
}

pub fn fuzz_instances(seed: u64, count: usize) -> Vec<(String, Instance)> {
    fuzz::generate(seed, count, fuzz::FuzzBounds::default())
        .instances
        .into_iter()
        .enumerate()
        .map(|(i, f)| {
            let inst = Instance::build(f.file, CAP).unwrap_or_else(|e| panic!("fuzz {i} ({}): {e}", f.label));
            (format!("fuzz-{i:03} {}", f.label), inst)
        })
        .collect()
}

pub fn rings(inst: &Instance) -> Vec<Arc<FinRing>> {
    inst.entities
        .values()
        .filter_map(|e| match e {
            Entity::Ring(r) => Some(r.clone()),
            Entity::System(s) => Some(s.ring_arc().clone()),
            Entity::Paction(p) => Some(p.ring_arc().clone()),
            Entity::Steinberg(k, _) => Some(k.clone()),
            _ => None,
        })
        .collect()
}

pub fn groupoids(inst: &Instance) -> Vec<Arc<FinGroupoid>> {
    inst.entities
        .values()
        .filter_map(|e| match e {
            Entity::Groupoid(g) => Some(g.clone()),
            _ => None,
        })
        .collect()
}

pub fn actions(inst: &Instance) -> Vec<Arc<PartialAction>> {
    inst.entities
        .values()
        .filter_map(|e| match e {
            Entity::Paction(p) => Some(p.clone()),
            _ => None,
        })
        .collect()
}

pub fn systems(inst: &Instance) -> Vec<Arc<SystemRing>> {
    inst.entities
        .values()
        .filter_map(|e| match e {
            Entity::System(s) => Some(s.clone()),
            _ => None,
        })
        .collect()
}

/// Additive subgroup generated by `gens` and closed under multiplication
/// by `r` on both sides.
pub fn ideal_of(r: &FinRing, gens: &[Elem]) -> BTreeSet<Elem> {
    let mut set: BTreeSet<Elem> = BTreeSet::from([0]);
    let mut queue: Vec<Elem> = gens.to_vec();
    while let Some(x) = queue.pop() {
        if set.contains(&x) {
            continue;
        }
        let old: Vec<Elem> = set.iter().copied().collect();
        set.insert(x);
        for y in old {
            queue.push(r.add(x, y));
        }
        for y in r.elements() {
            queue.push(r.mul(x, y));
            queue.push(r.mul(y, x));
        }
    }
    set
}

/// `is_simple` read literally: nonzero, and every nonzero element
/// generates the whole ring.
pub fn simple(r: &FinRing) -> bool {
    r.order() > 1 && r.elements().skip(1).all(|x| ideal_of(r, &[x]).len() == r.order())
}

/// Every two-sided ideal, by closing sums of principal ideals.
pub fn all_ideals(r: &FinRing) -> Vec<BTreeSet<Elem>> {
    let principal: Vec<BTreeSet<Elem>> = r.elements().map(|x| ideal_of(r, &[x])).collect();
    let mut seen: HashSet<BTreeSet<Elem>> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = vec![BTreeSet::from([0])];
    while let Some(i) = queue.pop() {
        if !seen.insert(i.clone()) {
            continue;
        }
        for (x, p) in principal.iter().enumerate() {
            if !i.contains(&x) {
                let gens: Vec<Elem> = i.iter().chain(p.iter()).copied().collect();
                queue.push(ideal_of(r, &gens));
            }
        }
        out.push(i);
    }
    out
}

#[derive(Debug, PartialEq, Eq)]
pub struct Units {
    pub left_s_unital: bool,
    pub right_s_unital: bool,
    pub left_unital: bool,
    pub right_unital: bool,
}

pub fn units(r: &FinRing) -> Units {
    let left_s_unital = r.elements().all(|x| r.elements().any(|u| r.mul(u, x) == x));
    let right_s_unital = r.elements().all(|x| r.elements().any(|u| r.mul(x, u) == x));
    let left_unital = r.elements().any(|u| r.elements().all(|x| r.mul(u, x) == x));
    let right_unital = r.elements().any(|u| r.elements().all(|x| r.mul(x, u) == x));
    Units {
        left_s_unital,
        right_s_unital,
        left_unital,
        right_unital,
    }
}

pub fn centralizer(r: &FinRing, of: &[Elem]) -> BTreeSet<Elem> {
    r.elements().filter(|&x| of.iter().all(|&y| r.mul(x, y) == r.mul(y, x))).collect()
}

/// No ideal other than `0` and `A` is carried into itself by every `π_s`.
pub fn s_simple(pa: &PartialAction) -> bool {
    let a = pa.ring();
    a.order() > 1
        && all_ideals(a).iter().all(|i| {
            i.len() == 1
                || i.len() == a.order()
                || !pa.sgrp().elements().all(|s| {
                    let back = pa.sgrp().star(s);
                    i.iter().all(|&x| match pa.apply(s, x) {
                        Some(y) if pa.domain(back).contains(x) => i.contains(&y),
                        _ => true,
                    })
                })
        })
}

/// Ideals that are sums of their homogeneous parts.
pub fn system_ideals(s: &SystemRing) -> Vec<BTreeSet<Elem>> {
    let r = s.ring();
    all_ideals(r)
        .into_iter()
        .filter(|i| {
            let homog: Vec<Elem> = i
                .iter()
                .copied()
                .filter(|&x| s.components().iter().any(|c| c.contains(x)))
                .collect();
            additive_span(r, &homog) == *i
        })
        .collect()
}

pub fn additive_span(r: &FinRing, gens: &[Elem]) -> BTreeSet<Elem> {
    let mut set: BTreeSet<Elem> = BTreeSet::from([0]);
    let mut queue = gens.to_vec();
    while let Some(x) = queue.pop() {
        if set.insert(x) {
            let cur: Vec<Elem> = set.iter().copied().collect();
            queue.extend(cur.into_iter().map(|y| r.add(x, y)));
        }
    }
    set
}

pub fn connected(g: &FinGroupoid) -> bool {
    let n = g.object_count();
    let mut reach = vec![false; n];
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        if std::mem::replace(&mut reach[x], true) {
            continue;
        }
        stack.extend(g.morphisms().filter(|&m| g.dom(m) == x).map(|m| g.cod(m)));
    }
    n > 0 && reach.into_iter().all(|b| b)
}

/// For a finite discrete groupoid, effective means trivial isotropy.
pub fn effective(g: &FinGroupoid) -> bool {
    g.morphisms().all(|m| g.dom(m) != g.cod(m) || g.is_identity(m))
}
