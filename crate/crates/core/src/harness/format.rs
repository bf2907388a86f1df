//! The instance file format: parsing and emission. The grammar is
//! documented in `docs/instance-format.md`.

use std::fmt::{self, Write as _};

use crate::error::{Error, Result};

/// An additive group element as its digit vector.
pub type Vector = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingDef {
    Explicit {
        ranks: Vec<u32>,
        /// 0-based generator pairs.
        products: Vec<(usize, usize, Vector)>,
    },
    Prime(u32),
    Galois(u32, usize),
    Product(Vec<String>),
    Power(String, usize),
    Matrix(String, usize),
    Zero(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemigroupDef {
    Explicit {
        labels: Vec<String>,
        /// `rows[i][j]` is the label of `labels[i] * labels[j]`.
        rows: Vec<Vec<String>>,
    },
    Trivial(String),
    SymmetricInverseMonoid(usize),
    Bisections(String),
    Induced(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupoidDef {
    Explicit {
        objects: Vec<String>,
        /// `(label, domain, codomain)` for non-identity morphisms.
        arrows: Vec<(String, String, String)>,
        /// `(g, h, gh)`.
        compose: Vec<(String, String, String)>,
    },
    Pair(usize),
    Cyclic(usize),
    Discrete(usize),
    Union(Vec<String>),
    Product(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemDef {
    Explicit {
        ring: String,
        semigroup: String,
        /// Generators of each listed component; unlisted ones are zero.
        components: Vec<(String, Vec<Vector>)>,
    },
    /// The grading of `A x_pi S` for a partial action.
    Skew(String),
    /// The grading of `L_pi` for a partial action.
    Lpi(String),
}

/// `(label, domain or ideal generators)` and `(label, x, image of x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionData {
    pub ring: String,
    pub over: String,
    pub domains: Vec<(String, Vec<Vector>)>,
    pub maps: Vec<(String, Vector, Vector)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PactionDef {
    /// `over` names a semigroup.
    Explicit(ActionData),
    /// The bisection semigroup of a groupoid acting on functions of its objects.
    Functions { ring: String, groupoid: String },
    /// The symmetric inverse monoid of degree `n` acting on `K^n`.
    PartialBijections { ring: String, degree: usize },
    /// The semigroup action induced by a groupoid action.
    Induced(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GpaDef {
    /// `over` names a groupoid.
    Explicit(ActionData),
    RingData { ring: String, groupoid: String },
    Galois { p: u32, n: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Def {
    Ring(RingDef),
    Semigroup(SemigroupDef),
    Groupoid(GroupoidDef),
    System(SystemDef),
    Paction(PactionDef),
    Gpa(GpaDef),
    Steinberg { ring: String, groupoid: String },
    /// Expected statuses of named check lines, e.g. `PASS` or `SKIPPED(cap)`.
    Expect(Vec<(String, String)>),
}

impl Def {
    pub fn kind(&self) -> &'static str {
        match self {
            Def::Ring(_) => "ring",
            Def::Semigroup(_) => "semigroup",
            Def::Groupoid(_) => "groupoid",
            Def::System(_) => "system",
            Def::Paction(_) => "paction",
            Def::Gpa(_) => "gpa",
            Def::Steinberg { .. } => "steinberg",
            Def::Expect(_) => "expect",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decl {
    pub name: String,
    /// 1-based line of the header; 0 for generated declarations.
    pub line: usize,
    pub def: Def,
}

impl Decl {
    pub fn new(name: impl Into<String>, def: Def) -> Self {
        Decl {
            name: name.into(),
            line: 0,
            def,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InstanceFile {
    pub decls: Vec<Decl>,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T> {
    tok.parse().map_err(|_| perr(line, format!("expected a number, found `{tok}`")))
}

fn parse_vec(line: usize, tok: &str) -> Result<Vector> {
    tok.split(',').map(|t| parse_num(line, t)).collect()
}

fn fmt_vec(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    parts.join(",")
}

fn names(toks: &[&str]) -> Vec<String> {
    toks.iter().map(|s| s.to_string()).collect()
}

const KINDS: &[&str] = &["ring", "semigroup", "groupoid", "system", "paction", "gpa", "steinberg", "expect"];

/// One body line: its number and tokens.
type Line<'a> = (usize, Vec<&'a str>);

struct Section<'a> {
    line: usize,
    kind: &'a str,
    name: &'a str,
    body: Vec<Line<'a>>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut sections: Vec<Section> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(inner) = content.strip_prefix('[') {
                let inner = inner
                    .strip_suffix(']')
                    .ok_or_else(|| perr(ln, "section header must end with `]`"))?;
                let t: Vec<&str> = inner.split_whitespace().collect();
                if t.len() != 2 {
                    return Err(perr(ln, "expected `[kind name]`"));
                }
                if !KINDS.contains(&t[0]) {
                    return Err(perr(ln, format!("unknown section kind `{}`", t[0])));
                }
                sections.push(Section {
                    line: ln,
                    kind: t[0],
                    name: t[1],
                    body: Vec::new(),
                });
                continue;
            }
            let sec = sections
                .last_mut()
                .ok_or_else(|| perr(ln, "content before the first section header"))?;
            sec.body.push((ln, content.split_whitespace().collect()));
        }
        let mut decls: Vec<Decl> = Vec::new();
        for sec in &sections {
            if sec.body.is_empty() {
                return Err(perr(sec.line, format!("{} `{}` is empty", sec.kind, sec.name)));
            }
            let def = parse_section(sec)?;
            if decls.iter().any(|d| d.name == sec.name && d.def.kind() == sec.kind) {
                return Err(perr(sec.line, format!("{} `{}` is declared twice", sec.kind, sec.name)));
            }
            decls.push(Decl {
                name: sec.name.to_string(),
                line: sec.line,
                def,
            });
        }
        Ok(InstanceFile { decls })
    }

    pub fn push(&mut self, name: impl Into<String>, def: Def) {
        self.decls.push(Decl::new(name, def));
    }

    pub fn is_empty(&self) -> bool {
        self.decls.is_empty()
    }
}

fn constructors(kind: &str) -> &'static [&'static str] {
    match kind {
        "ring" => &["prime", "galois", "product", "power", "matrix", "zero"],
        "semigroup" => &["trivial", "symmetric-inverse-monoid", "bisections", "induced"],
        "groupoid" => &["pair", "cyclic", "discrete", "union", "product"],
        "system" => &["skew", "lpi"],
        "paction" => &["functions", "partial-bijections", "induced"],
        "gpa" => &["ring-data", "galois"],
        _ => &[],
    }
}

fn parse_section(sec: &Section) -> Result<Def> {
    let (ln, first) = &sec.body[0];
    if constructors(sec.kind).contains(&first[0]) {
        if let Some((extra, _)) = sec.body.get(1) {
            return Err(perr(*extra, "a constructor line must be the whole section"));
        }
        return parse_ctor(*ln, sec.kind, first);
    }
    match sec.kind {
        "ring" => parse_ring(sec),
        "semigroup" => parse_semigroup(sec),
        "groupoid" => parse_groupoid(sec),
        "system" => parse_system(sec),
        "paction" => parse_action(sec, "semigroup", "domain").map(|d| Def::Paction(PactionDef::Explicit(d))),
        "gpa" => parse_action(sec, "groupoid", "ideal").map(|d| Def::Gpa(GpaDef::Explicit(d))),
        "expect" => parse_expect(sec),
        _ => parse_steinberg(sec),
    }
}

fn arity(ln: usize, t: &[&str], n: usize) -> Result<()> {
    if t.len() != n + 1 {
        return Err(perr(ln, format!("`{}` takes {n} argument(s)", t[0])));
    }
    Ok(())
}

fn parse_ctor(ln: usize, kind: &str, t: &[&str]) -> Result<Def> {
    let args = &t[1..];
    let n = |i: usize| -> Result<usize> { parse_num(ln, args[i]) };
    let at_least_one = || {
        if args.is_empty() {
            Err(perr(ln, format!("`{}` needs at least one argument", t[0])))
        } else {
            Ok(())
        }
    };
    let one = || arity(ln, t, 1);
    let two = || arity(ln, t, 2);
    Ok(match (kind, t[0]) {
        ("ring", "prime") => {
            one()?;
            Def::Ring(RingDef::Prime(parse_num(ln, args[0])?))
        }
        ("ring", "galois") => {
            two()?;
            Def::Ring(RingDef::Galois(parse_num(ln, args[0])?, n(1)?))
        }
        ("ring", "product") => {
            at_least_one()?;
            Def::Ring(RingDef::Product(names(args)))
        }
        ("ring", "power") => {
            two()?;
            Def::Ring(RingDef::Power(args[0].into(), n(1)?))
        }
        ("ring", "matrix") => {
            two()?;
            Def::Ring(RingDef::Matrix(args[0].into(), n(1)?))
        }
        ("ring", _) => {
            at_least_one()?;
            Def::Ring(RingDef::Zero(args.iter().map(|a| parse_num(ln, a)).collect::<Result<_>>()?))
        }
        ("semigroup", "trivial") => {
            one()?;
            Def::Semigroup(SemigroupDef::Trivial(args[0].into()))
        }
        ("semigroup", "symmetric-inverse-monoid") => {
            one()?;
            Def::Semigroup(SemigroupDef::SymmetricInverseMonoid(n(0)?))
        }
        ("semigroup", "bisections") => {
            one()?;
            Def::Semigroup(SemigroupDef::Bisections(args[0].into()))
        }
        ("semigroup", _) => {
            one()?;
            Def::Semigroup(SemigroupDef::Induced(args[0].into()))
        }
        ("groupoid", "pair") => {
            one()?;
            Def::Groupoid(GroupoidDef::Pair(n(0)?))
        }
        ("groupoid", "cyclic") => {
            one()?;
            Def::Groupoid(GroupoidDef::Cyclic(n(0)?))
        }
        ("groupoid", "discrete") => {
            one()?;
            Def::Groupoid(GroupoidDef::Discrete(n(0)?))
        }
        ("groupoid", "union") => {
            at_least_one()?;
            Def::Groupoid(GroupoidDef::Union(names(args)))
        }
        ("groupoid", _) => {
            two()?;
            Def::Groupoid(GroupoidDef::Product(args[0].into(), args[1].into()))
        }
        ("system", "skew") => {
            one()?;
            Def::System(SystemDef::Skew(args[0].into()))
        }
        ("system", _) => {
            one()?;
            Def::System(SystemDef::Lpi(args[0].into()))
        }
        ("paction", "functions") => {
            two()?;
            Def::Paction(PactionDef::Functions {
                ring: args[0].into(),
                groupoid: args[1].into(),
            })
        }
        ("paction", "partial-bijections") => {
            two()?;
            Def::Paction(PactionDef::PartialBijections {
                ring: args[0].into(),
                degree: n(1)?,
            })
        }
        ("paction", _) => {
            one()?;
            Def::Paction(PactionDef::Induced(args[0].into()))
        }
        ("gpa", "ring-data") => {
            two()?;
            Def::Gpa(GpaDef::RingData {
                ring: args[0].into(),
                groupoid: args[1].into(),
            })
        }
        _ => {
            two()?;
            Def::Gpa(GpaDef::Galois {
                p: parse_num(ln, args[0])?,
                n: n(1)?,
            })
        }
    })
}

/// `key = VALUE...`: returns the values.
fn assignment<'a>(ln: usize, t: &'a [&'a str]) -> Result<&'a [&'a str]> {
    if t.len() < 3 || t[1] != "=" {
        return Err(perr(ln, format!("expected `{} = ...`", t[0])));
    }
    Ok(&t[2..])
}

/// `key LABEL = VALUE...`: returns the label and the values.
fn labelled<'a>(ln: usize, t: &'a [&'a str]) -> Result<(&'a str, &'a [&'a str])> {
    if t.len() < 3 || t[2] != "=" {
        return Err(perr(ln, format!("expected `{} LABEL = ...`", t[0])));
    }
    Ok((t[1], &t[3..]))
}

/// `key = NAME`, at most once.
fn single(ln: usize, t: &[&str], slot: &mut Option<String>) -> Result<()> {
    let v = assignment(ln, t)?;
    if v.len() != 1 {
        return Err(perr(ln, format!("`{}` names one declaration", t[0])));
    }
    if slot.replace(v[0].to_string()).is_some() {
        return Err(perr(ln, format!("`{}` given twice", t[0])));
    }
    Ok(())
}

fn required(sec: &Section, slot: Option<String>, key: &str) -> Result<String> {
    slot.ok_or_else(|| perr(sec.line, format!("{} `{}` needs `{key} = ...`", sec.kind, sec.name)))
}

fn unknown(ln: usize, kind: &str, key: &str) -> Error {
    perr(ln, format!("unknown {kind} field `{key}`"))
}

fn parse_ring(sec: &Section) -> Result<Def> {
    let mut ranks = None;
    let mut products = Vec::new();
    for (ln, t) in &sec.body {
        match t[0] {
            "ranks" => {
                let v = assignment(*ln, t)?;
                let joined = v.join("");
                ranks = Some(joined.split(',').map(|x| parse_num(*ln, x)).collect::<Result<Vec<u32>>>()?);
            }
            "mul" => {
                if t.len() != 5 || t[3] != "=" {
                    return Err(perr(*ln, "expected `mul I J = VECTOR`"));
                }
                let i: usize = parse_num(*ln, t[1])?;
                let j: usize = parse_num(*ln, t[2])?;
                if i == 0 || j == 0 {
                    return Err(perr(*ln, "generator indices start at 1"));
                }
                products.push((i - 1, j - 1, parse_vec(*ln, t[4])?));
            }
            k => return Err(unknown(*ln, "ring", k)),
        }
    }
    let ranks = ranks.ok_or_else(|| perr(sec.line, format!("ring `{}` needs `ranks = ...`", sec.name)))?;
    Ok(Def::Ring(RingDef::Explicit { ranks, products }))
}

fn parse_semigroup(sec: &Section) -> Result<Def> {
    let mut labels: Option<Vec<String>> = None;
    let mut rows = Vec::new();
    for (ln, t) in &sec.body {
        match t[0] {
            "elements" => labels = Some(names(assignment(*ln, t)?)),
            "row" => {
                let (l, r) = labelled(*ln, t)?;
                rows.push((*ln, l.to_string(), names(r)));
            }
            k => return Err(unknown(*ln, "semigroup", k)),
        }
    }
    let labels = labels.ok_or_else(|| perr(sec.line, format!("semigroup `{}` needs `elements = ...`", sec.name)))?;
    let mut ordered = vec![None; labels.len()];
    for (ln, l, r) in rows {
        let i = labels
            .iter()
            .position(|x| *x == l)
            .ok_or_else(|| perr(ln, format!("row for unknown element `{l}`")))?;
        if r.len() != labels.len() {
            return Err(perr(ln, format!("row `{l}` has {} entries, expected {}", r.len(), labels.len())));
        }
        ordered[i] = Some(r);
    }
    let rows = ordered
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.ok_or_else(|| perr(sec.line, format!("missing row for `{}`", labels[i]))))
        .collect::<Result<_>>()?;
    Ok(Def::Semigroup(SemigroupDef::Explicit { labels, rows }))
}

fn parse_groupoid(sec: &Section) -> Result<Def> {
    let mut objects = None;
    let mut arrows = Vec::new();
    let mut compose = Vec::new();
    for (ln, t) in &sec.body {
        match t[0] {
            "objects" => objects = Some(names(assignment(*ln, t)?)),
            "mor" => {
                if t.len() != 6 || t[2] != ":" || t[4] != "->" {
                    return Err(perr(*ln, "expected `mor LABEL : DOMAIN -> CODOMAIN`"));
                }
                arrows.push((t[1].into(), t[3].into(), t[5].into()));
            }
            "cmp" => {
                if t.len() != 5 || t[3] != "=" {
                    return Err(perr(*ln, "expected `cmp G H = K`"));
                }
                compose.push((t[1].into(), t[2].into(), t[4].into()));
            }
            k => return Err(unknown(*ln, "groupoid", k)),
        }
    }
    let objects = objects.ok_or_else(|| perr(sec.line, format!("groupoid `{}` needs `objects = ...`", sec.name)))?;
    Ok(Def::Groupoid(GroupoidDef::Explicit {
        objects,
        arrows,
        compose,
    }))
}

fn vectors(ln: usize, v: &[&str]) -> Result<Vec<Vector>> {
    v.iter().map(|x| parse_vec(ln, x)).collect()
}

fn parse_system(sec: &Section) -> Result<Def> {
    let (mut ring, mut semigroup) = (None, None);
    let mut components = Vec::new();
    for (ln, t) in &sec.body {
        match t[0] {
            "ring" => single(*ln, t, &mut ring)?,
            "semigroup" => single(*ln, t, &mut semigroup)?,
            "component" => {
                let (l, v) = labelled(*ln, t).or_else(|_| {
                    // `component LABEL =` with no generators is the zero component
                    if t.len() == 3 && t[2] == "=" {
                        Ok((t[1], &t[3..]))
                    } else {
                        Err(perr(*ln, "expected `component LABEL = VECTOR...`"))
                    }
                })?;
                components.push((l.to_string(), vectors(*ln, v)?));
            }
            k => return Err(unknown(*ln, "system", k)),
        }
    }
    Ok(Def::System(SystemDef::Explicit {
        ring: required(sec, ring, "ring")?,
        semigroup: required(sec, semigroup, "semigroup")?,
        components,
    }))
}

fn parse_action(sec: &Section, over_key: &str, domain_key: &str) -> Result<ActionData> {
    let (mut ring, mut over) = (None, None);
    let mut domains = Vec::new();
    let mut maps = Vec::new();
    for (ln, t) in &sec.body {
        let key = t[0];
        if key == "ring" {
            single(*ln, t, &mut ring)?;
        } else if key == over_key {
            single(*ln, t, &mut over)?;
        } else if key == domain_key {
            if t.len() < 3 || t[2] != "=" {
                return Err(perr(*ln, format!("expected `{domain_key} LABEL = VECTOR...`")));
            }
            domains.push((t[1].to_string(), vectors(*ln, &t[3..])?));
        } else if key == "map" {
            if t.len() != 5 || t[3] != "->" {
                return Err(perr(*ln, "expected `map LABEL VECTOR -> VECTOR`"));
            }
            maps.push((t[1].to_string(), parse_vec(*ln, t[2])?, parse_vec(*ln, t[4])?));
        } else {
            return Err(unknown(*ln, sec.kind, key));
        }
    }
    Ok(ActionData {
        ring: required(sec, ring, "ring")?,
        over: required(sec, over, over_key)?,
        domains,
        maps,
    })
}

fn parse_steinberg(sec: &Section) -> Result<Def> {
    let (mut ring, mut groupoid) = (None, None);
    for (ln, t) in &sec.body {
        match t[0] {
            "ring" => single(*ln, t, &mut ring)?,
            "groupoid" => single(*ln, t, &mut groupoid)?,
            k => return Err(unknown(*ln, "steinberg", k)),
        }
    }
    Ok(Def::Steinberg {
        ring: required(sec, ring, "ring")?,
        groupoid: required(sec, groupoid, "groupoid")?,
    })
}

fn is_status(s: &str) -> bool {
    matches!(s, "PASS" | "FAIL" | "VACUOUS") || (s.starts_with("SKIPPED(") && s.ends_with(')'))
}

fn parse_expect(sec: &Section) -> Result<Def> {
    let mut out = Vec::new();
    for (ln, t) in &sec.body {
        // skip reasons may contain spaces
        let status = t.get(2..).map(|r| r.join(" ")).unwrap_or_default();
        if t.len() < 3 || t[1] != "=" || !is_status(&status) {
            return Err(perr(*ln, "expected `CHECK = PASS|FAIL|VACUOUS|SKIPPED(reason)`"));
        }
        out.push((t[0].to_string(), status));
    }
    Ok(Def::Expect(out))
}

fn emit_action(out: &mut String, d: &ActionData, over_key: &str, domain_key: &str) {
    let _ = writeln!(out, "ring = {}", d.ring);
    let _ = writeln!(out, "{over_key} = {}", d.over);
    for (l, gens) in &d.domains {
        let vs: Vec<String> = gens.iter().map(|v| fmt_vec(v)).collect();
        let _ = writeln!(out, "{domain_key} {l} = {}", vs.join(" "));
    }
    for (l, x, y) in &d.maps {
        let _ = writeln!(out, "map {l} {} -> {}", fmt_vec(x), fmt_vec(y));
    }
}

fn emit_body(out: &mut String, def: &Def) {
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    match def {
        Def::Ring(r) => match r {
            RingDef::Prime(p) => line(format!("prime {p}")),
            RingDef::Galois(p, n) => line(format!("galois {p} {n}")),
            RingDef::Product(xs) => line(format!("product {}", xs.join(" "))),
            RingDef::Power(a, n) => line(format!("power {a} {n}")),
            RingDef::Matrix(a, n) => line(format!("matrix {a} {n}")),
            RingDef::Zero(rs) => {
                let rs: Vec<String> = rs.iter().map(u32::to_string).collect();
                line(format!("zero {}", rs.join(" ")))
            }
            RingDef::Explicit { ranks, products } => {
                let rs: Vec<String> = ranks.iter().map(u32::to_string).collect();
                line(format!("ranks = {}", rs.join(",")));
                for (i, j, v) in products {
                    line(format!("mul {} {} = {}", i + 1, j + 1, fmt_vec(v)));
                }
            }
        },
        Def::Semigroup(s) => match s {
            SemigroupDef::Trivial(l) => line(format!("trivial {l}")),
            SemigroupDef::SymmetricInverseMonoid(n) => line(format!("symmetric-inverse-monoid {n}")),
            SemigroupDef::Bisections(g) => line(format!("bisections {g}")),
            SemigroupDef::Induced(g) => line(format!("induced {g}")),
            SemigroupDef::Explicit { labels, rows } => {
                line(format!("elements = {}", labels.join(" ")));
                for (l, r) in labels.iter().zip(rows) {
                    line(format!("row {l} = {}", r.join(" ")));
                }
            }
        },
        Def::Groupoid(g) => match g {
            GroupoidDef::Pair(n) => line(format!("pair {n}")),
            GroupoidDef::Cyclic(n) => line(format!("cyclic {n}")),
            GroupoidDef::Discrete(n) => line(format!("discrete {n}")),
            GroupoidDef::Union(xs) => line(format!("union {}", xs.join(" "))),
            GroupoidDef::Product(a, b) => line(format!("product {a} {b}")),
            GroupoidDef::Explicit {
                objects,
                arrows,
                compose,
            } => {
                line(format!("objects = {}", objects.join(" ")));
                for (l, d, c) in arrows {
                    line(format!("mor {l} : {d} -> {c}"));
                }
                for (g, h, k) in compose {
                    line(format!("cmp {g} {h} = {k}"));
                }
            }
        },
        Def::System(s) => match s {
            SystemDef::Skew(p) => line(format!("skew {p}")),
            SystemDef::Lpi(p) => line(format!("lpi {p}")),
            SystemDef::Explicit {
                ring,
                semigroup,
                components,
            } => {
                line(format!("ring = {ring}"));
                line(format!("semigroup = {semigroup}"));
                for (l, gens) in components {
                    let vs: Vec<String> = gens.iter().map(|v| fmt_vec(v)).collect();
                    line(format!("component {l} = {}", vs.join(" ")));
                }
            }
        },
        Def::Paction(p) => match p {
            PactionDef::Functions { ring, groupoid } => line(format!("functions {ring} {groupoid}")),
            PactionDef::PartialBijections { ring, degree } => line(format!("partial-bijections {ring} {degree}")),
            PactionDef::Induced(h) => line(format!("induced {h}")),
            PactionDef::Explicit(d) => emit_action(out, d, "semigroup", "domain"),
        },
        Def::Gpa(g) => match g {
            GpaDef::RingData { ring, groupoid } => line(format!("ring-data {ring} {groupoid}")),
            GpaDef::Galois { p, n } => line(format!("galois {p} {n}")),
            GpaDef::Explicit(d) => emit_action(out, d, "groupoid", "ideal"),
        },
        Def::Steinberg { ring, groupoid } => {
            line(format!("ring = {ring}"));
            line(format!("groupoid = {groupoid}"));
        }
        Def::Expect(xs) => {
            for (c, st) in xs {
                line(format!("{c} = {st}"));
            }
        }
    }
}

impl fmt::Display for InstanceFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.decls.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            writeln!(f, "[{} {}]", d.def.kind(), d.name)?;
            let mut body = String::new();
            emit_body(&mut body, &d.def);
            for l in body.lines() {
                writeln!(f, "{}", l.trim_end())?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# two-element field and its square
[ring F2]
prime 2

[ring A]
ranks = 2,2
mul 1 1 = 1,0
mul 2 2 = 0,1

[groupoid G]
pair 2

[semigroup S]
elements = e
row e = e

[paction P]
ring = A
semigroup = S
domain e = 1,0 0,1
map e 1,0 -> 1,0
map e 0,1 -> 0,1

[steinberg St]
ring = F2
groupoid = G

[expect E]
steinberg:St/minimal-iff-connected = PASS
skew:P/lpi-system = SKIPPED(L_pi cap)
";

    fn strip(f: &InstanceFile) -> Vec<(String, Def)> {
        f.decls.iter().map(|d| (d.name.clone(), d.def.clone())).collect()
    }

    #[test]
    fn round_trip() {
        let f = InstanceFile::parse(SAMPLE).unwrap();
        assert_eq!(f.decls.len(), 7);
        assert_eq!(f.decls[1].line, 5);
        let again = InstanceFile::parse(&f.to_string()).unwrap();
        assert_eq!(strip(&f), strip(&again));
        assert_eq!(f.to_string(), again.to_string());
    }

    #[test]
    fn empty_file() {
        assert!(InstanceFile::parse("").unwrap().is_empty());
        assert!(InstanceFile::parse("# nothing\n\n").unwrap().is_empty());
    }

    #[test]
    fn errors_carry_lines() {
        let e = InstanceFile::parse("[ring A]\nprime 2\n[ring B]\nprime x\n").unwrap_err();
        assert_eq!(e, Error::Parse { line: 4, msg: "expected a number, found `x`".into() });
        let e = InstanceFile::parse("[ring A]\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = InstanceFile::parse("[widget W]\nthing\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = InstanceFile::parse("[ring A]\nprime 2\n[ring A]\nprime 3\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = InstanceFile::parse("[expect E]\nx = MAYBE\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = InstanceFile::parse("prime 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = InstanceFile::parse("[groupoid G]\nobjects = x\nmor a x -> x\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
    }
}
