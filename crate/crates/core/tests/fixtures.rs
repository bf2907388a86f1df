mod common;

use skewalg::harness::{replay, run, CheckGroup, Instance};
use skewalg::verdict::Status;

#[test]
fn positive_fixtures_have_no_failures() {
    let all = common::fixtures();
    assert!(all.len() >= 10);
    for (name, inst) in &all {
        let r = run(inst, &CheckGroup::ALL);
        assert!(!r.has_failure(), "{name}\n{}", r.text());
        assert_eq!(r.exit_code(), 0);
    }
}

#[test]
fn negative_fixtures_name_their_error() {
    let all = common::negative_fixtures();
    assert!(all.len() >= 8);
    for (name, want, text) in all {
        let e = Instance::parse(&text, common::CAP).expect_err(&name);
        let got = format!("{:?}", e.error);
        assert!(got.starts_with(&want), "{name}: expected {want}, got {got}");
        assert!(e.line > 0, "{name}: no line number");
    }
}

#[test]
fn wrong_expectations_fail_with_replayable_witnesses() {
    let text = common::failing_fixture("wrong-expectations.skw");
    let inst = Instance::parse(&text, common::CAP).unwrap();
    let r = run(&inst, &CheckGroup::ALL);
    assert_eq!(r.exit_code(), 1);
    let fails: Vec<_> = r.lines.iter().filter(|l| l.is_fail()).collect();
    assert_eq!(fails.len(), 2);
    assert!(fails.iter().all(|l| l.name.starts_with("expect:E/") && l.witness.is_some()));
    let ws = r.witnesses(&inst);
    assert_eq!(ws.len(), 2);
    for w in ws {
        let line = replay(&w).unwrap();
        assert_eq!(line.status, Status::Fail);
        assert_eq!(line.witness, w.witness);
    }
}

#[test]
fn reports_are_deterministic() {
    for (name, inst) in common::fixtures().iter().take(4) {
        let a = run(inst, &CheckGroup::ALL);
        let b = run(inst, &CheckGroup::ALL);
        assert_eq!(a.text(), b.text(), "{name}");
        assert_eq!(a.machine(false), b.machine(false), "{name}");
    }
}

#[test]
fn emitted_fixtures_reparse() {
    for (name, inst) in common::fixtures() {
        let text = inst.file.to_string();
        let again = Instance::parse(&text, common::CAP).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(again.file.to_string(), text, "{name}");
    }
}

#[test]
fn restriction_fixture_is_not_global() {
    let inst = common::fixtures().into_iter().find(|(n, _)| n == "restriction.skw").unwrap().1;
    let Some(skewalg::harness::Entity::Gpa(h)) = inst.get("gpa", "H") else { panic!() };
    assert!(!h.is_global().holds);
    let r = run(&inst, &CheckGroup::ALL);
    assert_eq!(
        r.get("gpa:H/global-action-has-full-ideals").map(|l| &l.status),
        Some(&Status::Vacuous)
    );
}

#[test]
fn zero_multiplication_is_not_s_unital() {
    let inst = common::fixtures().into_iter().find(|(n, _)| n == "zero-multiplication.skw").unwrap().1;
    let r = run(&inst, &CheckGroup::ALL);
    assert_eq!(r.get("ring:Z/s-unital-iff-unital/two-sided").map(|l| &l.status), Some(&Status::Pass));
    assert_eq!(
        r.get("ring:Z/s-unital-implies-locally-unital").map(|l| &l.status),
        Some(&Status::Vacuous)
    );
}
