//! Command-line front end: verify instance files, emit scenarios, fuzz,
//! replay failures and print individual verdicts.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use skewalg::finring::DEFAULT_CAP;
use skewalg::harness::fuzz::{generate, FuzzBounds};
use skewalg::harness::instance::explicit_ring;
use skewalg::harness::scenario::{declare_groupoid, declare_ring};
use skewalg::harness::{
    replay, run, scenario, CheckGroup, Def, Entity, Instance, InstanceFile, Report, ScenarioParams, Witness,
    SCENARIOS,
};
use skewalg::skew::{GroupoidSkew, SkewRing};
use skewalg::steinberg::SteinbergCase;
use skewalg::verdict::SystemVerdict;

#[derive(Parser)]
#[command(name = "skewalg", version, about = "Exhaustive checks on finite partial actions, skew rings and Steinberg algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Args)]
struct Output {
    /// Largest number of ring elements enumerated.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Report wall time per check in machine output.
    #[arg(long)]
    timings: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build every declaration of an instance file and run its checks.
    Verify {
        file: PathBuf,
        /// Comma-separated check groups (ring, groupoid, system, skew, groupoid-skew, steinberg).
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        /// Accepted for reproducible invocations; every check is exhaustive.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write a JSON witness record for each FAIL here.
        #[arg(long)]
        witness_out: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Emit a named example instance.
    Scenario {
        /// Scenario name; omit with --list.
        name: Option<String>,
        #[arg(long)]
        list: bool,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        p: Option<u32>,
        /// Coefficient ring, e.g. F2, F4, F2xF3.
        #[arg(long)]
        ring: Option<String>,
        /// Write the instance here instead of stdout.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Generate seeded random instances and verify each.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        max_factors: usize,
        #[arg(long, default_value_t = 2)]
        max_components: usize,
        /// Save every instance (and witnesses for failures) in this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Rerun the check recorded in a witness file.
    Replay { witness: PathBuf },
    /// Print the quotient ring of a partial action as an explicit ring.
    BuildSkew {
        file: PathBuf,
        /// Partial action to use; defaults to the only one in the file.
        #[arg(long)]
        action: Option<String>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Simplicity verdict of a skew ring built from a file.
    Verdict {
        #[arg(value_enum)]
        which: VerdictKind,
        file: PathBuf,
        /// Declaration to use; defaults to the only one of the right kind.
        #[arg(long)]
        entity: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Steinberg algebra checks.
    Steinberg {
        #[command(subcommand)]
        cmd: SteinbergCmd,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerdictKind {
    /// Skew inverse semigroup ring of a partial action.
    #[value(name = "skew-simplicity", alias = "thm5.8")]
    SkewSimplicity,
    /// Partial skew groupoid ring of a groupoid action.
    #[value(name = "groupoid-skew-simplicity", alias = "thm7.5")]
    GroupoidSkewSimplicity,
}

#[derive(Subcommand)]
enum SteinbergCmd {
    /// Simplicity and translation checks for coefficients RING and groupoid GROUPOID.
    Verdict {
        /// Short name (F2, F4, F2xF3) or a ring declared in --file.
        ring: String,
        /// Short name (pair2, cyclic3, discrete2) or a groupoid declared in --file.
        groupoid: String,
        #[arg(long)]
        file: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
}

/// Input or usage problem; exits with 2.
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

type CliResult = Result<ExitCode, Fatal>;

fn read(path: &Path) -> Result<String, Fatal> {
    fs::read_to_string(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn load(path: &Path, cap: usize) -> Result<Instance, Fatal> {
    let text = read(path)?;
    Instance::parse(&text, cap).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn print_report(r: &Report, out: &Output) {
    match out.format {
        Format::Text => print!("{}", r.text()),
        Format::Machine => print!("{}", r.machine(out.timings)),
    }
}

fn code(failed: bool) -> ExitCode {
    ExitCode::from(u8::from(failed))
}

fn parse_groups(names: &[String]) -> Result<Vec<CheckGroup>, Fatal> {
    if names.is_empty() {
        return Ok(CheckGroup::ALL.to_vec());
    }
    names
        .iter()
        .map(|n| CheckGroup::parse(n).ok_or_else(|| Fatal(format!("unknown check group `{n}`"))))
        .collect()
}

fn write_witnesses(path: &Path, ws: &[Witness]) -> Result<(), Fatal> {
    fs::write(path, serde_json::to_string_pretty(ws)?)?;
    Ok(())
}

fn verify(file: &Path, checks: &[String], witness_out: Option<&Path>, out: &Output) -> CliResult {
    let groups = parse_groups(checks)?;
    let inst = load(file, out.cap)?;
    let r = run(&inst, &groups);
    print_report(&r, out);
    if let Some(p) = witness_out {
        write_witnesses(p, &r.witnesses(&inst))?;
    }
    Ok(code(r.has_failure()))
}

fn emit_scenario(name: Option<String>, list: bool, params: ScenarioParams, emit: Option<PathBuf>) -> CliResult {
    if list || name.is_none() {
        for (n, d) in SCENARIOS {
            println!("{n:<26} {d}");
        }
        return Ok(ExitCode::SUCCESS);
    }
    let f = scenario(name.as_deref().unwrap_or_default(), &params)?;
    // reject scenarios whose objects do not fit before writing them out
    Instance::build(f.clone(), DEFAULT_CAP)?;
    match emit {
        Some(p) => fs::write(&p, f.to_string())?,
        None => print!("{f}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn fuzz(seed: u64, count: usize, bounds: FuzzBounds, out_dir: Option<PathBuf>, out: &Output) -> CliResult {
    let gen = generate(seed, count, bounds);
    for w in &gen.warnings {
        eprintln!("warning: {w}");
    }
    if let Some(d) = &out_dir {
        fs::create_dir_all(d)?;
    }
    let mut failed = false;
    for (i, fi) in gen.instances.iter().enumerate() {
        let inst = Instance::build(fi.file.clone(), out.cap)?;
        let r = run(&inst, &CheckGroup::ALL);
        failed |= r.has_failure();
        if let Some(d) = &out_dir {
            fs::write(d.join(format!("instance-{i:03}.skw")), fi.file.to_string())?;
            let ws = r.witnesses(&inst);
            if !ws.is_empty() {
                write_witnesses(&d.join(format!("witness-{i:03}.json")), &ws)?;
            }
        }
        match out.format {
            Format::Text => {
                println!("# instance {i}: {}", fi.label);
                print!("{}", r.text());
            }
            Format::Machine => print!("{}", r.machine(out.timings)),
        }
    }
    Ok(code(failed))
}

fn replay_file(path: &Path) -> CliResult {
    let text = read(path)?;
    let ws: Vec<Witness> = match serde_json::from_str::<Vec<Witness>>(&text) {
        Ok(ws) => ws,
        Err(_) => vec![serde_json::from_str::<Witness>(&text)?],
    };
    let mut failed = false;
    for w in &ws {
        let line = replay(w)?;
        failed |= line.is_fail();
        let same = line.status.to_string() == w.status;
        println!("{line}{}", if same { "" } else { " (recorded status differs)" });
    }
    Ok(code(failed))
}

fn pick<'a>(inst: &'a Instance, kind: &str, name: Option<&str>) -> Result<(&'a str, &'a Entity), Fatal> {
    let prefix = format!("{kind}:");
    let mut found = inst
        .entities
        .iter()
        .filter(|(k, _)| k.starts_with(&prefix))
        .map(|(k, e)| (&k[prefix.len()..], e));
    match name {
        Some(n) => found
            .find(|(k, _)| *k == n)
            .ok_or_else(|| Fatal(format!("no {kind} named `{n}`"))),
        None => {
            let first = found.next().ok_or_else(|| Fatal(format!("no {kind} declared")))?;
            if found.next().is_some() {
                return Err(Fatal(format!("several {kind} declarations; choose one with a name")));
            }
            Ok(first)
        }
    }
}

fn build_skew(file: &Path, action: Option<&str>, cap: usize) -> CliResult {
    let inst = load(file, cap)?;
    let (name, e) = pick(&inst, "paction", action)?;
    let Entity::Paction(pa) = e else { unreachable!() };
    let sk = SkewRing::new(pa.clone(), cap)?;
    let r = &*sk.ring;
    println!("# quotient of L_pi (order {}) by a relation ideal of order {}", sk.sym.order(), sk.sym.order() / sk.relation_ideal.index());
    println!("# order {}, associative {}, commutative {}", r.order(), r.is_associative(), r.is_commutative());
    for s in pa.sgrp().elements() {
        println!("# component {}: order {}", pa.sgrp().label(s), sk.grading.component(s).order());
    }
    let mut f = InstanceFile::default();
    f.push(format!("{name}_skew"), Def::Ring(explicit_ring(r)));
    print!("{f}");
    Ok(ExitCode::SUCCESS)
}

fn print_verdict(v: SystemVerdict, out: &Output) -> ExitCode {
    let r = Report { lines: v.lines };
    print_report(&r, out);
    code(r.has_failure())
}

fn verdict(which: VerdictKind, file: &Path, entity: Option<&str>, out: &Output) -> CliResult {
    let inst = load(file, out.cap)?;
    let v = match which {
        VerdictKind::SkewSimplicity => {
            let (_, e) = pick(&inst, "paction", entity)?;
            let Entity::Paction(pa) = e else { unreachable!() };
            SkewRing::new(pa.clone(), out.cap)?.theorem_verdict()
        }
        VerdictKind::GroupoidSkewSimplicity => {
            let (_, e) = pick(&inst, "gpa", entity)?;
            let Entity::Gpa(h) = e else { unreachable!() };
            GroupoidSkew::new(h.clone(), out.cap)?.theorem_verdict()
        }
    };
    Ok(print_verdict(v, out))
}

fn steinberg_verdict(ring: &str, groupoid: &str, file: Option<&Path>, out: &Output) -> CliResult {
    let mut decls = match file {
        Some(p) => InstanceFile::parse(&read(p)?)?,
        None => InstanceFile::default(),
    };
    let declared = |f: &InstanceFile, kind: &str, n: &str| f.decls.iter().any(|d| d.def.kind() == kind && d.name == n);
    let k = if declared(&decls, "ring", ring) { ring.to_string() } else { declare_ring(&mut decls, ring)? };
    let g = if declared(&decls, "groupoid", groupoid) {
        groupoid.to_string()
    } else {
        declare_groupoid(&mut decls, groupoid)?
    };
    let inst = Instance::build(decls, out.cap)?;
    let (Some(Entity::Ring(kr)), Some(Entity::Groupoid(gr))) = (inst.get("ring", &k), inst.get("groupoid", &g)) else {
        return Err(Fatal("ring or groupoid missing".into()));
    };
    let case = SteinbergCase::new(Arc::clone(kr), Arc::clone(gr), out.cap)?;
    Ok(print_verdict(case.verdict()?, out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Verify {
            file,
            checks,
            seed: _,
            witness_out,
            out,
        } => verify(&file, &checks, witness_out.as_deref(), &out),
        Cmd::Scenario {
            name,
            list,
            n,
            m,
            p,
            ring,
            emit,
        } => emit_scenario(name, list, ScenarioParams { n, m, p, ring }, emit),
        Cmd::Fuzz {
            seed,
            count,
            max_factors,
            max_components,
            out_dir,
            out,
        } => {
            let bounds = FuzzBounds {
                cap: out.cap,
                max_factors,
                max_components,
            };
            fuzz(seed, count, bounds, out_dir, &out)
        }
        Cmd::Replay { witness } => replay_file(&witness),
        Cmd::BuildSkew { file, action, cap } => build_skew(&file, action.as_deref(), cap),
        Cmd::Verdict {
            which,
            file,
            entity,
            out,
        } => verdict(which, &file, entity.as_deref(), &out),
        Cmd::Steinberg {
            cmd: SteinbergCmd::Verdict { ring, groupoid, file, out },
        } => steinberg_verdict(&ring, &groupoid, file.as_deref(), &out),
    };
    match result {
        Ok(c) => c,
        Err(Fatal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
