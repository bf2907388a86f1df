//! Named example instances and short names for rings and groupoids.

use super::format::{Def, GpaDef, GroupoidDef, InstanceFile, PactionDef, RingDef, SystemDef};
use crate::error::{Error, Result};

/// `(name, description)` of every scenario.
pub const SCENARIOS: &[(&str, &str)] = &[
    ("matrix-groupoid", "pair groupoid on n objects over K: matrix rings everywhere"),
    ("group-as-groupoid", "cyclic group of order m as a one-object groupoid over K"),
    ("disconnected", "pair groupoid on n objects next to a lone object, over K"),
    ("pair-steinberg", "Steinberg algebra of the pair groupoid on n objects over K"),
    ("galois-field", "Galois group of F_{p^n} over F_p acting on the field"),
    ("symmetric-inverse-monoid", "partial bijections of n points moving coordinates of K^n"),
];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScenarioParams {
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub p: Option<u32>,
    /// Short ring name such as `F2`, `F4` or `F2xF3`.
    pub ring: Option<String>,
}

fn prime_power(q: u32) -> Option<(u32, usize)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut n = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        n += 1;
    }
    (r == 1).then_some((p, n))
}

/// Declares the ring with short name `name` (factors `F<q>` joined by `x`)
/// and returns the declared name. Factors already present are reused.
pub fn declare_ring(file: &mut InstanceFile, name: &str) -> Result<String> {
    let bad = || Error::BadParams(format!("unknown ring `{name}`; use F<q> factors joined by x, e.g. F2xF4"));
    let factors: Vec<&str> = name.split('x').collect();
    for f in &factors {
        let q: u32 = f
            .strip_prefix("GF")
            .or_else(|| f.strip_prefix('F'))
            .and_then(|s| s.parse().ok())
            .ok_or_else(bad)?;
        let (p, n) = prime_power(q).ok_or_else(bad)?;
        let short = format!("F{q}");
        if has(file, "ring", &short) {
            continue;
        }
        let def = if n == 1 { RingDef::Prime(p) } else { RingDef::Galois(p, n) };
        file.push(short, Def::Ring(def));
    }
    let shorts: Vec<String> = factors
        .iter()
        .map(|f| format!("F{}", f.trim_start_matches("GF").trim_start_matches('F')))
        .collect();
    if shorts.len() == 1 {
        return Ok(shorts[0].clone());
    }
    let joined = shorts.join("x");
    if !has(file, "ring", &joined) {
        file.push(joined.clone(), Def::Ring(RingDef::Product(shorts)));
    }
    Ok(joined)
}

/// Declares the groupoid `pair<n>`, `cyclic<m>` or `discrete<n>`.
pub fn declare_groupoid(file: &mut InstanceFile, name: &str) -> Result<String> {
    let bad = || Error::BadParams(format!("unknown groupoid `{name}`; use pair<n>, cyclic<m> or discrete<n>"));
    let split = name.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
    let (kind, num) = name.split_at(split);
    let k: usize = num.parse().map_err(|_| bad())?;
    let def = match kind {
        "pair" => GroupoidDef::Pair(k),
        "cyclic" => GroupoidDef::Cyclic(k),
        "discrete" => GroupoidDef::Discrete(k),
        _ => return Err(bad()),
    };
    if !has(file, "groupoid", name) {
        file.push(name, Def::Groupoid(def));
    }
    Ok(name.to_string())
}

fn has(file: &InstanceFile, kind: &str, name: &str) -> bool {
    file.decls.iter().any(|d| d.def.kind() == kind && d.name == name)
}

fn positive(what: &str, v: usize, max: usize) -> Result<usize> {
    if v == 0 || v > max {
        return Err(Error::BadParams(format!("{what} = {v} is not in 1..={max}")));
    }
    Ok(v)
}

/// The groupoid ring data, its induced action and Steinberg algebra of `g`.
fn groupoid_family(f: &mut InstanceFile, k: &str, g: &str) {
    f.push("H", Def::Gpa(GpaDef::RingData { ring: k.into(), groupoid: g.into() }));
    f.push("P", Def::Paction(PactionDef::Induced("H".into())));
    f.push("S", Def::System(SystemDef::Skew("P".into())));
    f.push("A", Def::Steinberg { ring: k.into(), groupoid: g.into() });
}

pub fn scenario(name: &str, params: &ScenarioParams) -> Result<InstanceFile> {
    let mut f = InstanceFile::default();
    let ring = |f: &mut InstanceFile, default: &str| declare_ring(f, params.ring.as_deref().unwrap_or(default));
    match name {
        "matrix-groupoid" => {
            let n = positive("n", params.n.unwrap_or(2), 6)?;
            let k = ring(&mut f, "F2")?;
            let g = declare_groupoid(&mut f, &format!("pair{n}"))?;
            groupoid_family(&mut f, &k, &g);
        }
        "group-as-groupoid" => {
            let m = positive("m", params.m.unwrap_or(2), 12)?;
            let k = ring(&mut f, "F2")?;
            let g = declare_groupoid(&mut f, &format!("cyclic{m}"))?;
            groupoid_family(&mut f, &k, &g);
        }
        "disconnected" => {
            let n = positive("n", params.n.unwrap_or(2), 5)?;
            let k = ring(&mut f, "F2")?;
            let p = declare_groupoid(&mut f, &format!("pair{n}"))?;
            let o = declare_groupoid(&mut f, "pair1")?;
            f.push("G", Def::Groupoid(GroupoidDef::Union(vec![p, o])));
            groupoid_family(&mut f, &k, "G");
        }
        "pair-steinberg" => {
            let n = positive("n", params.n.unwrap_or(2), 6)?;
            let k = ring(&mut f, "F2xF2")?;
            let g = declare_groupoid(&mut f, &format!("pair{n}"))?;
            f.push("A", Def::Steinberg { ring: k, groupoid: g });
        }
        "galois-field" => {
            let p = params.p.unwrap_or(2);
            let n = positive("n", params.n.unwrap_or(3), 12)?;
            f.push("H", Def::Gpa(GpaDef::Galois { p, n }));
            f.push("P", Def::Paction(PactionDef::Induced("H".into())));
        }
        "symmetric-inverse-monoid" => {
            let n = positive("n", params.n.unwrap_or(2), 6)?;
            let k = ring(&mut f, "F2")?;
            f.push("P", Def::Paction(PactionDef::PartialBijections { ring: k, degree: n }));
        }
        _ => {
            let names: Vec<&str> = SCENARIOS.iter().map(|s| s.0).collect();
            return Err(Error::BadParams(format!("unknown scenario `{name}`; known: {}", names.join(", "))));
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{run, CheckGroup, Instance};

    #[test]
    fn every_scenario_builds() {
        for (name, _) in SCENARIOS {
            let f = scenario(name, &ScenarioParams::default()).unwrap();
            let text = f.to_string();
            Instance::parse(&text, 4096).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn short_names() {
        let mut f = InstanceFile::default();
        assert_eq!(declare_ring(&mut f, "F2xF4").unwrap(), "F2xF4");
        assert_eq!(f.decls.len(), 3);
        assert_eq!(declare_ring(&mut f, "GF4").unwrap(), "F4");
        assert_eq!(f.decls.len(), 3);
        assert!(declare_ring(&mut f, "F6").is_err());
        assert!(declare_groupoid(&mut f, "tree3").is_err());
    }

    #[test]
    fn matrix_scenario_passes() {
        let f = scenario("matrix-groupoid", &ScenarioParams::default()).unwrap();
        let inst = Instance::build(f, 4096).unwrap();
        let r = run(&inst, &CheckGroup::ALL);
        assert!(!r.has_failure(), "{}", r.text());
    }

    #[test]
    fn bad_params() {
        let p = ScenarioParams { n: Some(0), ..Default::default() };
        assert!(matches!(scenario("matrix-groupoid", &p), Err(Error::BadParams(_))));
        assert!(matches!(scenario("nope", &p), Err(Error::BadParams(_))));
    }
}
