//! Running checks over an instance and rendering the results.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::instance::{Entity, Instance, InstanceError};
use crate::error::Error;
use crate::finring::{all_ideals, build, is_simple, unitality, Elem, FinRing, Subgroup};
use crate::invsgrp::{BisectionSemigroup, FinGroupoid, DEFAULT_BISECTION_CAP};
use crate::skew::{GroupoidSkew, SkewRing};
use crate::steinberg::{ga_partial_action, FunctionRing, SteinbergCase};
use crate::syscheck::SystemRing;
use crate::verdict::{CheckLine, Status, SystemVerdict};

/// Families of checks, one per kind of declaration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckGroup {
    Ring,
    Groupoid,
    System,
    Skew,
    GroupoidSkew,
    Steinberg,
}

impl CheckGroup {
    pub const ALL: [CheckGroup; 6] = [
        CheckGroup::Ring,
        CheckGroup::Groupoid,
        CheckGroup::System,
        CheckGroup::Skew,
        CheckGroup::GroupoidSkew,
        CheckGroup::Steinberg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckGroup::Ring => "ring",
            CheckGroup::Groupoid => "groupoid",
            CheckGroup::System => "system",
            CheckGroup::Skew => "skew",
            CheckGroup::GroupoidSkew => "groupoid-skew",
            CheckGroup::Steinberg => "steinberg",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        CheckGroup::ALL.into_iter().find(|g| g.name() == s)
    }

    fn of(e: &Entity) -> Option<Self> {
        Some(match e {
            Entity::Ring(_) => CheckGroup::Ring,
            Entity::Semigroup(_) | Entity::Expect(_) => return None,
            Entity::Groupoid(_) => CheckGroup::Groupoid,
            Entity::System(_) => CheckGroup::System,
            Entity::Paction(_) => CheckGroup::Skew,
            Entity::Gpa(_) => CheckGroup::GroupoidSkew,
            Entity::Steinberg(..) => CheckGroup::Steinberg,
        })
    }
}

/// Check lines of a whole instance, named `kind:entity/check`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<CheckLine>,
}

/// Runs the selected groups on every entity. Entities are checked in
/// parallel; lines keep declaration order.
pub fn run(inst: &Instance, groups: &[CheckGroup]) -> Report {
    let selected: Vec<(&String, &Entity)> = inst
        .entities
        .iter()
        .filter(|(_, e)| CheckGroup::of(e).is_some_and(|g| groups.contains(&g)))
        .collect();
    let parts = crate::par::map(selected.len(), |i| entity_checks(selected[i].1, inst.cap));
    let mut all = SystemVerdict::new();
    for ((k, _), v) in selected.iter().zip(parts) {
        all.extend_prefixed(k, v);
    }
    for (k, e) in &inst.entities {
        if let Entity::Expect(xs) = e {
            let checked = expectations(&all, xs);
            all.extend_prefixed(k, checked);
        }
    }
    Report { lines: all.lines }
}

/// One line per expectation: PASS when the named line has the expected
/// status, FAIL when it differs, SKIPPED when it was not run.
fn expectations(actual: &SystemVerdict, xs: &[(String, String)]) -> SystemVerdict {
    let mut v = SystemVerdict::new();
    for (name, want) in xs {
        match actual.get(name) {
            Some(l) => {
                let got = l.status.to_string();
                let w = (got != *want).then(|| format!("expected {want}, got {got}"));
                v.check(name.clone(), w.is_none(), w);
            }
            None => v.skipped(name.clone(), "not run"),
        }
    }
    v
}

fn construction_failed(v: &mut SystemVerdict, name: &str, e: Error) {
    let why = if e.is_cap() { "cap" } else { "not constructible" };
    v.push(CheckLine::new(name, Status::Skipped(why.into()), Some(e.to_string())));
}

/// All checks of one entity.
pub fn entity_checks(e: &Entity, cap: usize) -> SystemVerdict {
    let mut v = SystemVerdict::new();
    match e {
        Entity::Semigroup(_) | Entity::Expect(_) => {}
        Entity::Ring(r) => v.timed(|v| v.extend(ring_checks(r))),
        Entity::Groupoid(g) => v.timed(|v| v.extend(groupoid_checks(g, cap))),
        Entity::System(s) => v.timed(|v| v.extend(system_checks(s))),
        Entity::Paction(p) => match SkewRing::new(p.clone(), cap) {
            Ok(sk) => v.extend(sk.full_report()),
            Err(e) => construction_failed(&mut v, "skew-ring", e),
        },
        Entity::Gpa(h) => v.timed(|v| match GroupoidSkew::new(h.clone(), cap) {
            Ok(gs) => v.extend(gs.theorem_verdict()),
            Err(e) => construction_failed(v, "groupoid-skew-ring", e),
        }),
        Entity::Steinberg(k, g) => match SteinbergCase::new(k.clone(), g.clone(), cap) {
            Ok(case) => match case.verdict() {
                Ok(sv) => v.extend(sv),
                Err(e) => construction_failed(&mut v, "steinberg-verdict", e),
            },
            Err(e) => construction_failed(&mut v, "steinberg-algebra", e),
        },
    }
    v
}

/// For finite rings each one-sided s-unitality is the same as having a
/// one-sided identity.
fn ring_checks(r: &FinRing) -> SystemVerdict {
    let mut v = SystemVerdict::new();
    let u = unitality(r);
    v.equivalence("s-unital-iff-unital/left", u.left_s_unital, u.left_unital, None);
    v.equivalence("s-unital-iff-unital/right", u.right_s_unital, u.right_unital, None);
    v.equivalence("s-unital-iff-unital/two-sided", u.s_unital, u.unital, None);
    v.implication("s-unital-implies-locally-unital", u.s_unital, u.locally_unital, None);
    v
}

fn groupoid_checks(g: &Arc<FinGroupoid>, cap: usize) -> SystemVerdict {
    let mut v = SystemVerdict::new();
    let minimal = match g.is_minimal() {
        Ok(m) => m,
        Err(e) => {
            construction_failed(&mut v, "minimal", e);
            return v;
        }
    };
    v.equivalence("minimal-iff-connected", minimal, g.is_connected(), None);
    v.equivalence("effective-iff-thin", g.is_effective(), g.is_thin(), None);
    // the bisection action on F_2-valued functions of the objects
    let f2 = Arc::new(build::prime_field(2).expect("2 is prime"));
    let action = BisectionSemigroup::new(g.clone(), DEFAULT_BISECTION_CAP).and_then(|bis| {
        let fr = FunctionRing::new(f2, g.object_count(), cap)?;
        ga_partial_action(&fr, &bis)
    });
    match action {
        Ok(pa) => {
            let faithful = pa.is_faithful();
            v.equivalence("effective-iff-faithful-over-f2", g.is_effective(), faithful.holds, faithful.witness);
            let s = pa.is_s_simple();
            v.equivalence("minimal-iff-ga-simple-over-f2", minimal, s.holds, s.witness);
        }
        Err(e) => {
            v.skipped("effective-iff-faithful-over-f2", if e.is_cap() { "cap" } else { "not constructible" });
            v.skipped("minimal-iff-ga-simple-over-f2", if e.is_cap() { "cap" } else { "not constructible" });
        }
    }
    v
}

/// Largest ring on which system ideal closures are compared with an
/// enumeration of all ideals.
pub const CLOSURE_ORACLE_LIMIT: usize = 64;

fn system_checks(s: &SystemRing) -> SystemVerdict {
    let mut v = s.theorem_verdicts();
    v.implication(
        "simple-ring-has-simple-system",
        is_simple(s.ring()),
        s.system_simple().holds,
        None,
    );
    if s.ring().order() <= CLOSURE_ORACLE_LIMIT {
        let w = closure_minimality_failure(s);
        v.check("system-ideal-closure-is-least", w.is_none(), w);
    } else {
        v.skipped("system-ideal-closure-is-least", "cap");
    }
    v
}

/// Compares each `system_ideal_closure(h, s)` with the intersection of all
/// ideals that contain `h` and are spanned by homogeneous elements.
fn closure_minimality_failure(s: &SystemRing) -> Option<String> {
    let r = s.ring();
    let g = r.group();
    let ideals = all_ideals(r, usize::MAX).expect("no limit");
    let homogeneous = |x: Elem| s.components().iter().any(|c| c.contains(x));
    let system: Vec<Vec<bool>> = ideals
        .iter()
        .filter(|i| {
            let hom: Vec<Elem> = i.elements().iter().copied().filter(|&x| homogeneous(x)).collect();
            Subgroup::closure(g, &hom) == **i
        })
        .map(|i| {
            let mut m = vec![false; r.order()];
            for &x in i.elements() {
                m[x] = true;
            }
            m
        })
        .collect();
    for t in s.sgrp().elements() {
        for &h in s.component(t).elements() {
            if h == 0 {
                continue;
            }
            let least: Vec<Elem> = r
                .elements()
                .filter(|&x| system.iter().filter(|m| m[h]).all(|m| m[x]))
                .collect();
            let closure = match s.system_ideal_closure(h, t) {
                Ok(c) => c,
                Err(e) => return Some(e.to_string()),
            };
            if closure.elements() != least.as_slice() {
                return Some(format!(
                    "closure of {} in component {} has order {}, least system ideal has {}",
                    r.fmt_elem(h),
                    s.sgrp().label(t),
                    closure.order(),
                    least.len()
                ));
            }
        }
    }
    None
}

impl Report {
    pub fn has_failure(&self) -> bool {
        self.lines.iter().any(CheckLine::is_fail)
    }

    /// `0` when nothing failed, `1` otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.has_failure())
    }

    pub fn get(&self, name: &str) -> Option<&CheckLine> {
        self.lines.iter().find(|l| l.name == name)
    }

    pub fn count(&self, f: impl Fn(&Status) -> bool) -> usize {
        self.lines.iter().filter(|l| f(&l.status)).count()
    }

    /// One line per check and a closing tally; no timings, so the text is
    /// identical across runs.
    pub fn text(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            let _ = writeln!(out, "{l}");
        }
        let _ = writeln!(
            out,
            "{} checks: {} pass, {} fail, {} vacuous, {} skipped",
            self.lines.len(),
            self.count(|s| *s == Status::Pass),
            self.count(|s| *s == Status::Fail),
            self.count(|s| *s == Status::Vacuous),
            self.count(|s| matches!(s, Status::Skipped(_))),
        );
        out
    }

    /// JSON lines with `name`, `status`, `witness` and `millis`; `millis` is
    /// zero unless `timings` is set.
    pub fn machine(&self, timings: bool) -> String {
        let mut out = String::new();
        for l in &self.lines {
            let rec = serde_json::json!({
                "name": l.name,
                "status": l.status.to_string(),
                "witness": l.witness,
                "millis": if timings { l.millis } else { 0 },
            });
            let _ = writeln!(out, "{rec}");
        }
        out
    }

    /// A standalone witness record for every FAIL line.
    pub fn witnesses(&self, inst: &Instance) -> Vec<Witness> {
        self.lines
            .iter()
            .filter(|l| l.is_fail())
            .map(|l| Witness {
                instance: inst.file.to_string(),
                cap: inst.cap,
                check: l.name.clone(),
                status: l.status.to_string(),
                witness: l.witness.clone(),
            })
            .collect()
    }
}

/// A failing check together with everything needed to rerun it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub instance: String,
    pub cap: usize,
    pub check: String,
    pub status: String,
    pub witness: Option<String>,
}

/// Rebuilds the instance of `w` and reruns only the entity its check
/// belongs to.
pub fn replay(w: &Witness) -> Result<CheckLine, InstanceError> {
    let inst = Instance::parse(&w.instance, w.cap)?;
    let missing = || InstanceError::from(Error::UnresolvedRef(w.check.clone()));
    let (entity, _) = w.check.split_once('/').ok_or_else(missing)?;
    let e = inst.entities.get(entity).ok_or_else(missing)?;
    if let Entity::Expect(_) = e {
        let r = run(&inst, &CheckGroup::ALL);
        return r.get(&w.check).cloned().ok_or_else(missing);
    }
    let mut v = SystemVerdict::new();
    v.extend_prefixed(entity, entity_checks(e, inst.cap));
    v.get(&w.check).cloned().ok_or_else(missing)
}
