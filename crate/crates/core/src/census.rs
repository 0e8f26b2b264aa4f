//! Named suites of generated instances, classified in parallel.

use serde::{Deserialize, Serialize};

use crate::classify::{full_report, Case, Table1Line, Verdict};
use crate::error::{Error, Result};
use crate::gen::{normal_basic_battery, GeneratorSpec};
use crate::limits::Limits;

pub const SUITES: &[&str] = &["battery", "quick", "full-slopes", "negative"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub id: String,
    pub verdict: Option<Verdict>,
    pub case_tag: Option<Case>,
    pub table1: Option<Table1Line>,
    pub ok: bool,
    pub message: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub suite: String,
    pub entries: Vec<CensusEntry>,
    pub passed: usize,
    pub failed: usize,
    /// Some entry failed with a theorem violation or internal error.
    pub violation: bool,
}

enum Expect {
    /// Normal-basic with exactly one case verifying.
    NormalBasic,
    /// Line iii of the table with `k = p^d + 1`.
    FullLineIII { q: usize },
    NeitherBasic,
}

fn suite(name: &str) -> Result<Vec<(GeneratorSpec, Expect)>> {
    let gl = |p: &str, d: &str| GeneratorSpec::new("gamma_lambda", &[("p", p), ("d", d), ("lambda", "full")]);
    Ok(match name {
        "battery" => normal_basic_battery().into_iter().map(|s| (s, Expect::NormalBasic)).collect(),
        "quick" => normal_basic_battery()
            .into_iter()
            .filter(|s| !s.name.ends_with("A5"))
            .map(|s| (s, Expect::NormalBasic))
            .collect(),
        "full-slopes" => vec![
            (gl("2", "1"), Expect::FullLineIII { q: 2 }),
            (gl("3", "1"), Expect::FullLineIII { q: 3 }),
            (gl("2", "2"), Expect::FullLineIII { q: 4 }),
        ],
        "negative" => vec![(
            GeneratorSpec::new("gamma_km", &[("k", "2"), ("m", "4"), ("group", "cyclic")]),
            Expect::NeitherBasic,
        )],
        other => {
            return Err(Error::Parse(format!("unknown suite {other:?}; expected one of {}", SUITES.join(", "))))
        }
    })
}

fn run_one(spec: &GeneratorSpec, expect: &Expect, limits: &Limits) -> (CensusEntry, bool) {
    let mut entry =
        CensusEntry { id: spec.id(), verdict: None, case_tag: None, table1: None, ok: false, message: None };
    let report = spec.build(limits).and_then(|a| full_report(&a, limits));
    let r = match report {
        Ok(r) => r,
        Err(e) => {
            let violation = matches!(e, Error::TheoremViolation(_) | Error::Internal(_));
            entry.message = Some(e.to_string());
            return (entry, violation);
        }
    };
    entry.verdict = Some(r.verdict);
    entry.case_tag = r.case_tag;
    entry.table1 = r.table1.as_ref().map(|t| t.line);
    let check: std::result::Result<(), String> = match expect {
        Expect::NormalBasic => {
            let holding = r.case_checks.iter().filter(|c| c.holds).count();
            if r.normal_basic != Some(true) {
                Err("not normal-basic".into())
            } else if holding != 1 {
                Err(format!("{holding} cases hold"))
            } else {
                Ok(())
            }
        }
        Expect::FullLineIII { q } => match &r.table1 {
            Some(t) if t.line == Table1Line::LineIII && t.k == q + 1 && t.m == *q => Ok(()),
            other => Err(format!("expected line-iii with k = {} and m = {q}, got {other:?}", q + 1)),
        },
        Expect::NeitherBasic => {
            if r.verdict == Verdict::NeitherBasic {
                Ok(())
            } else {
                Err(format!("expected neither-basic, got {:?}", r.verdict))
            }
        }
    };
    entry.ok = check.is_ok();
    entry.message = check.err();
    (entry, false)
}

/// Classifies every instance of the suite, one thread per instance.
pub fn run_suite(name: &str, limits: &Limits) -> Result<CensusSummary> {
    let instances = suite(name)?;
    let results: Vec<(CensusEntry, bool)> = std::thread::scope(|scope| {
        let handles: Vec<_> = instances
            .iter()
            .map(|(spec, expect)| scope.spawn(move || run_one(spec, expect, limits)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("census worker panicked")).collect()
    });
    let passed = results.iter().filter(|(e, _)| e.ok).count();
    Ok(CensusSummary {
        suite: name.to_string(),
        failed: results.len() - passed,
        passed,
        violation: results.iter().any(|(_, v)| *v),
        entries: results.into_iter().map(|(e, _)| e).collect(),
    })
}
