//! Acceptance run: one line per criterion, exit status 1 if any fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use common::CAP;
use skewalg::finring::{build, unitality, Elem, FinRing, Subgroup};
use skewalg::harness::{run, scenario, CheckGroup, Entity, Instance, Report, ScenarioParams};
use skewalg::invsgrp::{BisectionSemigroup, FinGroupoid, DEFAULT_BISECTION_CAP};
use skewalg::paction::PartialAction;
use skewalg::skew::{GroupoidSkew, SkewRing};
use skewalg::steinberg::{ga_partial_action, singleton_decomposition, FunctionRing, SteinbergCase};
use skewalg::syscheck::SystemRing;
use skewalg::verdict::Status;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const FUZZ_SEED: u64 = 0x5eed;
const FUZZ_COUNT: usize = 120;
// the brute-force simplicity oracle is quadratic in the ring size
const SIMPLE_ORACLE_LIMIT: usize = 256;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn fixtures() -> &'static [(String, Instance)] {
    static F: OnceLock<Vec<(String, Instance)>> = OnceLock::new();
    F.get_or_init(common::fixtures)
}

fn fuzzed() -> &'static [(String, Instance)] {
    static F: OnceLock<Vec<(String, Instance)>> = OnceLock::new();
    F.get_or_init(|| common::fuzz_instances(FUZZ_SEED, FUZZ_COUNT))
}

/// Full reports for every fixture and fuzz instance.
fn reports() -> &'static [(String, Report)] {
    static R: OnceLock<Vec<(String, Report)>> = OnceLock::new();
    R.get_or_init(|| {
        fixtures()
            .iter()
            .chain(fuzzed())
            .map(|(n, i)| (n.clone(), run(i, &CheckGroup::ALL)))
            .collect()
    })
}

/// Every skew ring of a fixture or fuzz action, built once.
fn skew_rings() -> &'static [(String, SkewRing)] {
    static S: OnceLock<Vec<(String, SkewRing)>> = OnceLock::new();
    S.get_or_init(|| {
        let mut out = Vec::new();
        for (n, inst) in fixtures().iter().chain(fuzzed()) {
            for pa in common::actions(inst) {
                if let Ok(sk) = SkewRing::new(pa, CAP) {
                    out.push((n.clone(), sk));
                }
            }
        }
        out
    })
}

/// Lines whose check name is one of `names`: (pass, vacuous, skipped), or
/// the first failure.
fn tally(names: &[&str], pred: impl Fn(&str) -> bool) -> Result<(usize, usize, usize), String> {
    let (mut pass, mut vac, mut skip) = (0, 0, 0);
    for (inst, r) in reports() {
        for l in &r.lines {
            let check = l.name.rsplit_once('/').map_or("", |(_, c)| c);
            let full_tail = l.name.split_once('/').map_or("", |(_, c)| c);
            if !(names.contains(&check) || names.contains(&full_tail) || pred(&l.name)) {
                continue;
            }
            match &l.status {
                Status::Pass => pass += 1,
                Status::Vacuous => vac += 1,
                Status::Skipped(_) => skip += 1,
                Status::Fail => return Err(format!("{inst}: {l}")),
            }
        }
    }
    Ok((pass, vac, skip))
}

fn steinberg(inst: &Instance, name: &str) -> Result<SteinbergCase, String> {
    match inst.get("steinberg", name) {
        Some(Entity::Steinberg(k, g)) => SteinbergCase::new(k.clone(), g.clone(), CAP).map_err(err),
        _ => Err(format!("no steinberg entity {name}")),
    }
}

fn matrix_groupoid() -> Outcome {
    let start = Instant::now();
    let inst = Instance::build(scenario("matrix-groupoid", &ScenarioParams::default()).map_err(err)?, CAP).map_err(err)?;
    let case = steinberg(&inst, "A")?;
    let a = &*case.algebra.ring;
    ensure!(a.order() == 16, "A_K(G) has {} elements", a.order());
    ensure!(common::simple(a), "oracle finds a proper ideal");
    let g = case.groupoid();
    ensure!(common::effective(g) && common::connected(g), "oracle: groupoid not effective and connected");
    ensure!(g.is_effective() && g.is_minimal().map_err(err)?, "library: not effective and minimal");
    let v = case.verdict().map_err(err)?;
    ensure!(!v.has_failure(), "steinberg verdict fails: {v}");
    let r = run(&inst, &CheckGroup::ALL);
    ensure!(!r.has_failure(), "instance report has failures");
    let el = start.elapsed();
    ensure!(el < Duration::from_secs(5), "took {el:?}");
    Ok(format!("16 elements, simple, effective and minimal, {} checks without failure", r.lines.len()))
}

fn group_ring() -> Outcome {
    let start = Instant::now();
    let inst = Instance::build(scenario("group-as-groupoid", &ScenarioParams::default()).map_err(err)?, CAP).map_err(err)?;
    let case = steinberg(&inst, "A")?;
    let g = case.groupoid();
    ensure!(!g.is_thin(), "C2 reported thin");
    let a = &*case.algebra.ring;
    ensure!(!common::simple(a), "oracle finds F2[C2] simple");
    // 1 + g: the value 1 on both morphisms
    let one_plus_g = case.algebra.from_values(&vec![1; g.size()]);
    let ideal = common::ideal_of(a, &[one_plus_g]);
    ensure!(ideal.len() > 1 && ideal.len() < a.order(), "ideal of 1+g has order {}", ideal.len());
    ensure!(!case.simple().holds, "library finds F2[C2] simple");
    ensure!(!run(&inst, &CheckGroup::ALL).has_failure(), "instance report has failures");
    let el = start.elapsed();
    ensure!(el < Duration::from_secs(5), "took {el:?}");
    Ok(format!("thin = false, ideal generated by 1+g has order {} of {}", ideal.len(), a.order()))
}

fn product_coefficients() -> Outcome {
    let start = Instant::now();
    let f2 = build::prime_field(2).map_err(err)?;
    let k = Arc::new(build::product(&f2, &f2, CAP).map_err(err)?);
    let case = SteinbergCase::new(k.clone(), Arc::new(FinGroupoid::pair(2).map_err(err)?), CAP).map_err(err)?;
    let a = &*case.algebra.ring;
    ensure!(!common::simple(a), "oracle finds A_K(G) simple");
    // (1, 0) is 1 * |F2| + 0
    let j = Subgroup::closure(k.group(), &[k.elem(&[1, 0])]);
    let aj = case.algebra.coefficient_ideal(&j);
    let elems: Vec<Elem> = aj.elements().to_vec();
    ensure!(aj.order() > 1 && aj.order() < a.order(), "A_J(G) has order {}", aj.order());
    ensure!(common::ideal_of(a, &elems).len() == aj.order(), "A_J(G) is not an ideal");
    ensure!(!case.verdict().map_err(err)?.has_failure(), "steinberg verdict fails");
    let el = start.elapsed();
    ensure!(el < Duration::from_secs(10), "took {el:?}");
    Ok(format!("A_J(G) for J = F2 x 0 is an ideal of order {} in a ring of order {}", aj.order(), a.order()))
}

fn galois() -> Outcome {
    let start = Instant::now();
    let p = ScenarioParams {
        p: Some(2),
        n: Some(2),
        ..Default::default()
    };
    let inst = Instance::build(scenario("galois-field", &p).map_err(err)?, CAP).map_err(err)?;
    let Some(Entity::Gpa(h)) = inst.get("gpa", "H") else {
        return Err("no gpa entity".into());
    };
    let gs = GroupoidSkew::new(h.clone(), CAP).map_err(err)?;
    ensure!(common::simple(&gs.direct), "oracle finds F4 * Gal not simple");
    let pa = Arc::new(h.induced_action().map_err(err)?);
    ensure!(common::s_simple(&pa), "oracle finds F4 not Gal-simple");
    let q = &*gs.skew.ring;
    let base: Vec<Elem> = gs.skew.base_image().elements().to_vec();
    let c = common::centralizer(q, &base);
    ensure!(c == base.iter().copied().collect::<BTreeSet<_>>(), "centralizer of F4 has {} elements", c.len());
    let v = gs.theorem_verdict();
    ensure!(!v.has_failure(), "verdict fails: {v}");
    let el = start.elapsed();
    ensure!(el < Duration::from_secs(10), "took {el:?}");
    Ok(format!("{} elements, simple, Gal-simple, F4 maximal commutative", gs.direct.order()))
}

fn fuzz_biconditional() -> Outcome {
    let start = Instant::now();
    let name = "commutative-simple-iff-s-simple-and-maximal-commutative";
    let mut instances = BTreeSet::new();
    let mut oracle_checked = 0;
    for (inst, sk) in skew_rings().iter().filter(|(n, _)| n.starts_with("fuzz-")) {
        let pa = sk.action();
        ensure!(pa.ring().is_commutative(), "{inst}: base ring not commutative");
        ensure!(unitality(pa.ring()).s_unital, "{inst}: base ring not s-unital");
        let v = sk.theorem_verdict();
        ensure!(v.status(name) == Some(&Status::Pass), "{inst}: {name} is {:?}", v.status(name));
        let q = &*sk.ring;
        if q.order() <= SIMPLE_ORACLE_LIMIT {
            let base: Vec<Elem> = sk.base_image().elements().to_vec();
            let maxcomm = common::centralizer(q, &base) == base.iter().copied().collect::<BTreeSet<_>>();
            let simple = common::simple(q);
            let ss = common::s_simple(pa);
            ensure!(simple == (ss && maxcomm), "{inst}: oracle simple={simple} s-simple={ss} maxcomm={maxcomm}");
            oracle_checked += 1;
        }
        instances.insert(inst.clone());
    }
    ensure!(instances.len() >= 100, "only {} fuzz instances", instances.len());
    let el = start.elapsed();
    ensure!(el < Duration::from_secs(600), "took {el:?}");
    Ok(format!(
        "{} instances, zero violations, {} also confirmed by brute force",
        instances.len(),
        oracle_checked
    ))
}

/// `r ≤ s` read off the multiplication table.
fn below(s: &SystemRing, r: usize, t: usize) -> bool {
    let g = s.sgrp();
    r == g.mul(t, g.mul(g.star(r), r))
}

fn structure_lines() -> Outcome {
    let (pass, vac, skip) = tally(
        &[
            "skew-ring-coherent",
            "lpi-component-products-are-domain-squares",
            "lpi-triple-products-are-domain-cubes",
            "lpi-epsilon-strong-iff-action-s-unital/left",
            "lpi-epsilon-strong-iff-action-s-unital/right",
            "s-unital-iff-unital/left",
            "s-unital-iff-unital/right",
            "s-unital-iff-unital/two-sided",
        ],
        |_| false,
    )?;
    ensure!(pass > 0, "no lines ran");
    let mut coherent = 0;
    for (inst, sk) in skew_rings() {
        let s = &sk.grading;
        for r in s.sgrp().elements() {
            for t in s.sgrp().elements() {
                if below(s, r, t) {
                    ensure!(s.component(r).is_subset(s.component(t)), "{inst}: not coherent at {r} <= {t}");
                }
            }
        }
        coherent += 1;
    }
    Ok(format!(
        "{pass} pass, {vac} vacuous, {skip} skipped for the L_pi cap; {coherent} gradings coherent by brute force"
    ))
}

fn three_way() -> Outcome {
    let (pass, vac, skip) = tally(&["simple-implies-system-simple"], |n| {
        n.contains("epsilon-characterizations-agree/")
    })?;
    ensure!(pass > 0, "no lines ran");
    let mut checked = 0;
    for s in small_systems() {
        if common::simple(s.ring()) {
            let nontrivial = common::system_ideals(&s)
                .into_iter()
                .filter(|i| i.len() > 1 && i.len() < s.ring().order())
                .count();
            ensure!(nontrivial == 0, "simple ring with {nontrivial} proper system ideals");
        }
        checked += 1;
    }
    Ok(format!("{pass} pass, {vac} vacuous, {skip} skipped; {checked} small systems checked by brute force"))
}

fn round_trip() -> Outcome {
    let mut done = Vec::new();
    for (n, inst) in fixtures() {
        for e in inst.entities.values() {
            let Entity::Steinberg(k, g) = e else { continue };
            let size = (k.order() as u128).checked_pow(g.size() as u32);
            if size.is_none_or(|s| s > CAP as u128) {
                continue;
            }
            let start = Instant::now();
            let case = SteinbergCase::new(k.clone(), g.clone(), CAP).map_err(err)?;
            let t = case.translation.as_ref().map_err(|w| format!("{n}: no translation: {w}"))?;
            ensure!(t.round_trip_failure().is_none(), "{n}: {:?}", t.round_trip_failure());
            let a = &case.algebra;
            for f in a.ring.elements() {
                let b = t.beta_of(&singleton_decomposition(g, &a.values(f)));
                let back = t.alpha_of_vec(&t.skew.representative(b));
                ensure!(back == f, "{n}: alpha(beta({})) = {}", a.ring.fmt_elem(f), a.ring.fmt_elem(back));
            }
            let el = start.elapsed();
            ensure!(el < Duration::from_secs(60), "{n}: took {el:?}");
            done.push(format!("{n} ({})", a.order()));
        }
    }
    ensure!(!done.is_empty(), "no eligible fixtures");
    Ok(format!("{} algebras: {}", done.len(), done.join(", ")))
}

fn faithful(pa: &PartialAction) -> bool {
    let sg = pa.sgrp();
    sg.elements().filter(|&s| sg.mul(s, s) != s).all(|s| {
        let back = sg.star(s);
        pa.domain(back) != pa.domain(s) || pa.domain(back).elements().iter().any(|&x| pa.apply(s, x) != Some(x))
    })
}

fn groupoid_lines() -> Outcome {
    let f2 = Arc::new(build::prime_field(2).map_err(err)?);
    let mut seen = 0;
    for (n, inst) in fixtures() {
        let mut gs = common::groupoids(inst);
        gs.extend(inst.entities.values().filter_map(|e| match e {
            Entity::Steinberg(_, g) => Some(g.clone()),
            _ => None,
        }));
        for g in gs.into_iter().filter(|g| g.size() <= 6) {
            let bis = BisectionSemigroup::new(g.clone(), DEFAULT_BISECTION_CAP).map_err(err)?;
            let fr = FunctionRing::new(f2.clone(), g.object_count(), CAP).map_err(err)?;
            let pa = ga_partial_action(&fr, &bis).map_err(err)?;
            let eff = common::effective(&g);
            let minimal = common::connected(&g);
            ensure!(eff == g.is_effective(), "{n}: effective disagrees with oracle");
            ensure!(minimal == g.is_minimal().map_err(err)?, "{n}: minimal disagrees with oracle");
            ensure!(eff == faithful(&pa), "{n}: effective={eff} but faithful={}", faithful(&pa));
            ensure!(minimal == common::s_simple(&pa), "{n}: minimal={minimal} but Ga-simple differs");
            seen += 1;
        }
    }
    let (pass, _, _) = tally(&["effective-iff-faithful-over-f2", "minimal-iff-ga-simple-over-f2"], |_| false)?;
    ensure!(seen > 0, "no groupoids");
    Ok(format!("{seen} groupoids with at most 6 morphisms, {pass} report lines pass"))
}

/// Systems with at most 64 elements: declared ones and skew gradings.
fn small_systems() -> Vec<SystemRing> {
    let mut out: Vec<SystemRing> = Vec::new();
    for (_, inst) in fixtures().iter().chain(fuzzed()) {
        out.extend(common::systems(inst).iter().map(|s| (**s).clone()));
    }
    for (_, sk) in skew_rings() {
        out.push(sk.grading.clone());
        if let Some(l) = &sk.lpi {
            out.push(l.grading.clone());
        }
    }
    out.retain(|s| s.ring().order() <= 64);
    out
}

fn all_rings() -> Vec<Arc<FinRing>> {
    let mut out = Vec::new();
    for (_, inst) in fixtures() {
        out.extend(common::rings(inst));
    }
    for (n, sk) in skew_rings() {
        if !n.starts_with("fuzz-") && sk.ring.order() <= 512 {
            out.push(sk.ring.clone());
        }
    }
    out
}

fn oracles() -> Outcome {
    let rings = all_rings();
    for r in &rings {
        let o = common::units(r);
        let u = unitality(r);
        let lib = (u.left_s_unital, u.right_s_unital, u.left_unital, u.right_unital);
        let want = (o.left_s_unital, o.right_s_unital, o.left_unital, o.right_unital);
        ensure!(lib == want, "{}: library {lib:?}, oracle {want:?}", r.name());
        ensure!(o.left_s_unital == o.left_unital && o.right_s_unital == o.right_unital, "{}: s-unital differs from unital", r.name());
    }
    let systems = small_systems();
    let mut closures = 0;
    for s in &systems {
        let ideals = common::system_ideals(s);
        for t in s.sgrp().elements() {
            for &h in s.component(t).elements().iter().filter(|&&h| h != 0) {
                let lib: BTreeSet<Elem> = s.system_ideal_closure(h, t).map_err(err)?.elements().iter().copied().collect();
                let least = ideals
                    .iter()
                    .filter(|i| i.contains(&h))
                    .fold(None::<BTreeSet<Elem>>, |acc, i| {
                        Some(match acc {
                            None => i.clone(),
                            Some(a) => a.intersection(i).copied().collect(),
                        })
                    })
                    .expect("the whole ring contains h");
                ensure!(lib == least, "{}: closure of {} has order {}, least is {}", s.ring().name(), s.ring().fmt_elem(h), lib.len(), least.len());
                closures += 1;
            }
        }
    }
    Ok(format!("{} rings agree on unitality; {closures} closures in {} systems are least", rings.len(), systems.len()))
}

fn panic_message(p: &(dyn std::any::Any + Send)) -> String {
    p.downcast_ref::<String>()
        .cloned()
        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "panic".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("matrix groupoid over F2 gives a simple 16-element algebra", matrix_groupoid),
        ("group ring of C2 over F2 has a proper ideal containing 1+g", group_ring),
        ("F2 x F2 coefficients on the pair groupoid give a proper A_J(G)", product_coefficients),
        ("Galois skew groupoid ring over F4 is simple", galois),
        ("fuzzed simplicity biconditional for commutative s-unital actions", fuzz_biconditional),
        ("coherence, domain products and epsilon-strength lines", structure_lines),
        ("epsilon characterizations agree and simplicity passes to systems", three_way),
        ("alpha and beta are mutually inverse on small Steinberg fixtures", round_trip),
        ("effective iff faithful and minimal iff Ga-simple on small groupoids", groupoid_lines),
        ("unitality and system ideal closure match brute-force oracles", oracles),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| Err(panic_message(p.as_ref())));
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
