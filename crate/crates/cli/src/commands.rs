use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;
use turan_core::construction::expected_family_size;
use turan_core::invariants::{fingerprint_of, InvariantTower};
use turan_core::search::{min_missing_cover, SearchConfig, SearchOutcome};
use turan_core::{
    are_isomorphic, complex_from_layout, conjectured_max, enumerate_construction4,
    exceptional_complex7, iso_classes, turan_original, Layout, TripleSystem, VertexSet,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Parse {
        path: PathBuf,
        source: turan_core::Error,
    },
    #[error(transparent)]
    Core(#[from] turan_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Complete,
    BudgetExceeded,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Complete => "complete",
            Status::BudgetExceeded => "budget-exceeded",
            Status::Error => "error",
        }
    }
}

pub struct Outcome {
    pub text: String,
    pub result: Value,
    pub status: Status,
    /// A verification ran to completion and found a violation.
    pub failed: bool,
}

impl Outcome {
    fn complete(text: String, result: Value) -> Outcome {
        Outcome {
            text,
            result,
            status: Status::Complete,
            failed: false,
        }
    }

    pub fn error(e: &CliError) -> Outcome {
        Outcome {
            text: String::new(),
            result: json!({ "message": e.to_string() }),
            status: Status::Error,
            failed: false,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match (self.status, self.failed) {
            (Status::BudgetExceeded, _) => 3,
            (Status::Error, _) => 2,
            (_, true) => 1,
            _ => 0,
        }
    }
}

/// Reads a system file, a `canonical`-prefixed system, or a layout file.
pub fn load_system(path: &Path) -> Result<TripleSystem, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let parse_err = |source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    };
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    if first.starts_with("layout") {
        let layout = Layout::parse(&text).map_err(parse_err)?;
        return Ok(complex_from_layout(&layout));
    }
    let body = if first == "canonical" {
        let at = text.find("canonical").expect("line found above") + "canonical".len();
        &text[at..]
    } else {
        &text[..]
    };
    TripleSystem::parse(body).map_err(parse_err)
}

fn load_layout(path: &Path) -> Result<Layout, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Layout::parse(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn check_n(n: usize) -> Result<(), CliError> {
    if n < 3 {
        return Err(CliError::Usage(format!(
            "need at least 3 vertices, got {n}"
        )));
    }
    Ok(())
}

fn set_list(sets: impl IntoIterator<Item = VertexSet>) -> String {
    sets.into_iter()
        .map(|s| format!("{s:?}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn enumerate(n: usize) -> Result<Outcome, CliError> {
    check_n(n)?;
    let layouts = enumerate_construction4(n)?;
    let expected = expected_family_size(n)?;
    let mut text = String::new();
    let mut complexes = Vec::new();
    for (i, layout) in layouts.iter().enumerate() {
        let ts = complex_from_layout(layout);
        writeln!(text, "# complex {} of {}", i + 1, layouts.len()).unwrap();
        text.push_str(&layout.render());
        text.push_str(&ts.render());
        text.push('\n');
        complexes.push(json!({
            "layout": layout.render(),
            "system": ts.render(),
            "triangles": ts.triangle_count(),
        }));
    }
    let count = layouts.len() as u64;
    writeln!(text, "count {count} (expected {expected})").unwrap();
    let mut out = Outcome::complete(
        text,
        json!({ "count": count, "expected": expected, "complexes": complexes }),
    );
    out.failed = count != expected;
    Ok(out)
}

pub fn verify(n: usize) -> Result<Outcome, CliError> {
    check_n(n)?;
    let layouts = enumerate_construction4(n)?;
    let target = conjectured_max(n)? as usize;
    let systems: Vec<TripleSystem> = layouts.iter().map(complex_from_layout).collect();
    let checks: Vec<Value> = systems
        .par_iter()
        .map(|ts| {
            let k4 = ts.find_k4();
            let maximal = k4.is_none() && ts.is_maximal_k4_free().unwrap_or(false);
            json!({
                "triangles": ts.triangle_count(),
                "bound_attained": ts.triangle_count() == target,
                "k4_free": k4.is_none(),
                "maximal": maximal,
            })
        })
        .collect();
    let classes = iso_classes(&systems).len();
    let expected = expected_family_size(n)? as usize;

    let mut text = format!("verify n={n} conjectured_max={target}\n");
    let mut passed = 0;
    for (i, c) in checks.iter().enumerate() {
        let ok = ["bound_attained", "k4_free", "maximal"]
            .iter()
            .all(|k| c[*k] == Value::Bool(true));
        if ok {
            passed += 1;
            writeln!(text, "complex {}: ok ({} triangles)", i + 1, c["triangles"]).unwrap();
        } else {
            let bad: Vec<&str> = ["bound_attained", "k4_free", "maximal"]
                .into_iter()
                .filter(|k| c[*k] != Value::Bool(true))
                .collect();
            writeln!(text, "complex {}: FAIL {}", i + 1, bad.join(", ")).unwrap();
        }
    }
    let distinct = classes == systems.len();
    let sized = systems.len() == expected;
    writeln!(
        text,
        "distinct canonical forms: {}/{}",
        classes,
        systems.len()
    )
    .unwrap();
    writeln!(text, "family size: {} (expected {expected})", systems.len()).unwrap();
    let pass = passed == systems.len() && distinct && sized;
    writeln!(
        text,
        "{} {}/{}",
        if pass { "pass" } else { "FAIL" },
        passed,
        systems.len()
    )
    .unwrap();
    let mut out = Outcome::complete(
        text,
        json!({
            "pass": pass,
            "complexes": checks,
            "passed": passed,
            "total": systems.len(),
            "expected": expected,
            "distinct_classes": classes,
        }),
    );
    out.failed = !pass;
    Ok(out)
}

pub fn invariants(file: &Path) -> Result<Outcome, CliError> {
    let ts = load_system(file)?;
    let tower = InvariantTower::compute(&ts);
    let record = fingerprint_of(&ts, &tower);
    let mut text = format!("n={} triangles={}\n", record.n, record.triangles);
    writeln!(text, "degrees {:?}", record.degree_sequence).unwrap();
    let census: Vec<String> = record
        .cluster_sizes
        .iter()
        .map(|(s, c)| format!("{s}:{c}"))
        .collect();
    writeln!(text, "empty cluster sizes {}", census.join(" ")).unwrap();
    writeln!(
        text,
        "empty clusters {}",
        set_list(tower.clusters.iter().map(|c| c.members))
    )
    .unwrap();
    for core in &tower.cores {
        writeln!(
            text,
            "empty core {:?} size {}",
            core.members, core.defining_size
        )
        .unwrap();
    }
    writeln!(
        text,
        "empty unions {}",
        set_list(tower.unions.iter().map(|u| u.members))
    )
    .unwrap();
    writeln!(text, "column legs {}", set_list(tower.proper_legs())).unwrap();
    let feet: BTreeSet<(VertexSet, VertexSet)> = tower
        .feet
        .iter()
        .filter(|f| f.leg.len() >= 2)
        .map(|f| (f.leg, f.foot))
        .collect();
    for (leg, foot) in feet {
        writeln!(text, "column foot {foot:?} of leg {leg:?}").unwrap();
    }
    let result = json!({
        "fingerprint": serde_json::to_value(&record).expect("plain data"),
        "clusters": tower.clusters,
        "cores": tower.cores,
        "unions": tower.unions,
        "legs": tower.legs,
        "feet": tower.feet,
    });
    Ok(Outcome::complete(text, result))
}

pub fn iso(a: &Path, b: &Path) -> Result<Outcome, CliError> {
    let x = load_system(a)?;
    let y = load_system(b)?;
    let witness = are_isomorphic(&x, &y);
    let text = match &witness {
        Some(w) => {
            let w: Vec<String> = w.iter().map(|v| v.to_string()).collect();
            format!("isomorphic\nwitness {}\n", w.join(" "))
        }
        None => "not isomorphic\n".to_string(),
    };
    Ok(Outcome::complete(
        text,
        json!({ "isomorphic": witness.is_some(), "witness": witness }),
    ))
}

pub fn search(n: usize, budget: Option<f64>, jobs: Option<usize>) -> Result<Outcome, CliError> {
    let budget = match budget {
        Some(s) if !(s >= 0.0 && s.is_finite()) => {
            return Err(CliError::Usage(format!(
                "budget must be a nonnegative number of seconds, got {s}"
            )))
        }
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    let (outcome, stats) = min_missing_cover(n, SearchConfig { budget, jobs })?;
    match outcome {
        SearchOutcome::Complete(report) => {
            let mut text = format!(
                "n={} m={} t={} conjectured={} classes={}\n",
                report.n,
                report.m,
                report.t,
                report.conjectured,
                report.classes.len()
            );
            for (i, form) in report.classes.iter().enumerate() {
                writeln!(
                    text,
                    "\n# class {} automorphisms {}",
                    i + 1,
                    form.automorphisms
                )
                .unwrap();
                text.push_str(&form.render());
            }
            writeln!(text, "# nodes {}", stats.nodes).unwrap();
            let classes: Vec<Value> = report
                .classes
                .iter()
                .map(|f| json!({ "canonical": f.render(), "automorphisms": f.automorphisms.to_string() }))
                .collect();
            let result = json!({
                "n": report.n,
                "m": report.m,
                "t": report.t,
                "conjectured": report.conjectured,
                "class_count": report.classes.len(),
                "classes": classes,
            });
            Ok(Outcome::complete(text, result))
        }
        SearchOutcome::BudgetExceeded { n, best_m } => {
            let best = best_m.map_or("none".to_string(), |m| m.to_string());
            Ok(Outcome {
                text: format!("budget exceeded: n={n} smallest cover seen {best} (incomplete)\n"),
                result: json!({ "n": n, "best_m": best_m, "complete": false }),
                status: Status::BudgetExceeded,
                failed: false,
            })
        }
    }
}

fn show_system(ts: &TripleSystem) -> Outcome {
    Outcome::complete(
        ts.render(),
        json!({ "system": ts.render(), "triangles": ts.triangle_count() }),
    )
}

pub fn show_turan(n: usize) -> Result<Outcome, CliError> {
    check_n(n)?;
    Ok(show_system(&turan_original(n)?))
}

pub fn show_exceptional7() -> Outcome {
    show_system(&exceptional_complex7())
}

pub fn show_layout(file: &Path) -> Result<Outcome, CliError> {
    Ok(show_system(&complex_from_layout(&load_layout(file)?)))
}
