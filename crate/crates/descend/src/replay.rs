//! Golden replays of the worked examples: the interval table of the running
//! example, its interval-set descent, and the Fibonacci box rows.

use std::fs;
use std::path::{Path, PathBuf};

use descend_core::compare::{classify, Classification};
use descend_core::fixpoint::{run, AnalysisConfig, AnalysisResult, Value};
use descend_core::frontend::NodeId;
use descend_core::galois::DomainId;
use similar::TextDiff;

use crate::trace::{align, config_line, render_projected};
use crate::{Error, Loaded};

pub const RUNNING_EXAMPLE: &str = include_str!("../corpus/running_example.mini");
pub const FIBONACCI: &str = include_str!("../corpus/fib.mini");

/// The replays shipped with fixtures, by fixture name.
pub const REPLAYS: [&str; 3] = ["interval_table", "interval_set_descent", "fibonacci_box"];

fn node(n: usize) -> NodeId {
    NodeId::from_number(n).expect("node numbers start at 1")
}

fn analyze(loaded: &Loaded, config: &AnalysisConfig) -> Result<AnalysisResult, Error> {
    Ok(run(&loaded.cfg, config)?)
}

fn header(loaded: &Loaded, r: &AnalysisResult) -> String {
    format!("{}\n{}\n", loaded.name(), config_line(r))
}

/// Every iterate of classical intervals, one column per sweep.
pub fn interval_table() -> Result<String, Error> {
    let loaded = Loaded::from_source("running_example.mini", RUNNING_EXAMPLE)?;
    let config = AnalysisConfig::classical(DomainId::Itv)
        .with_k(2)
        .with_widening_points(vec![node(3)]);
    let r = analyze(&loaded, &config)?;
    Ok(crate::trace::text(&loaded, &r, true))
}

/// Interval-set descent from the concretized interval post-fixpoint. The
/// last column marks nodes where the result beats the classical one.
pub fn interval_set_descent() -> Result<String, Error> {
    let loaded = Loaded::from_source("running_example.mini", RUNNING_EXAMPLE)?;
    let wp = vec![node(3)];
    let classical = analyze(
        &loaded,
        &AnalysisConfig::classical(DomainId::Itv)
            .with_k(2)
            .with_widening_points(wp.clone()),
    )?;
    let r = analyze(
        &loaded,
        &AnalysisConfig::new(DomainId::Itv, DomainId::ISet)
            .with_k(2)
            .with_widening_points(wp),
    )?;
    let names = &loaded.program.vars;
    let transfer = r.transfer.as_ref().expect("decoupled run");
    let mut rows = vec![{
        let mut h = vec!["node".to_string(), "transfer".to_string()];
        h.extend((1..=r.descending.sweeps.len()).map(|i| format!("dsc/{}", i)));
        h.push("gain".to_string());
        h
    }];
    for n in loaded.cfg.nodes() {
        let mut row = vec![n.to_string(), transfer[n.0].render(names)];
        row.extend(r.descending.sweeps.iter().map(|s| s[n.0].render(names)));
        let gain = classify(&classical.result[n.0], &r.result[n.0])? == Classification::Gt;
        row.push(if gain { "*" } else { "" }.to_string());
        rows.push(row);
    }
    Ok(header(&loaded, &r) + &align(&rows))
}

/// Per-sweep rows at one node, projected on some variables; a repeated
/// last value is reported as detected stabilization.
pub fn node_rows(
    loaded: &Loaded,
    r: &AnalysisResult,
    at: NodeId,
    vars: &[&str],
) -> Result<Vec<Vec<String>>, Error> {
    let names = &loaded.program.vars;
    let order = vars
        .iter()
        .map(|v| {
            loaded
                .program
                .var_id(v)
                .map(|id| id.0)
                .ok_or_else(|| Error::Usage(format!("unknown variable `{}`", v)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let domain = |d: DomainId| d.name().to_string();
    let mut rows = Vec::new();
    let phase = |rows: &mut Vec<Vec<String>>,
                 dom: String,
                 tag: &str,
                 sweeps: &[Vec<Value>],
                 stable: bool,
                 what: &str| {
        for (i, s) in sweeps.iter().enumerate() {
            let last = i + 1 == sweeps.len();
            let repeated = i > 0 && s[at.0] == sweeps[i - 1][at.0];
            let cell = if last && stable && repeated {
                format!("same value (detected {})", what)
            } else {
                render_projected(&s[at.0], names, &order)
            };
            rows.push(vec![dom.clone(), format!("{}/{}", tag, i + 1), cell]);
        }
    };
    phase(
        &mut rows,
        domain(r.config.ascending),
        "asc",
        &r.ascending.sweeps,
        r.ascending.stabilized,
        "post-fixpoint",
    );
    if let Some(t) = &r.transfer {
        rows.push(vec![
            domain(r.config.descending),
            "dsc/0".to_string(),
            render_projected(&t[at.0], names, &order),
        ]);
    }
    phase(
        &mut rows,
        domain(r.config.descending),
        "dsc",
        &r.descending.sweeps,
        r.descending.stabilized,
        "fixpoint",
    );
    Ok(rows)
}

/// Box rows of the inlined `fib(7)` at the loop body entry.
pub fn fibonacci_box() -> Result<String, Error> {
    let loaded = Loaded::from_source("fib.mini", FIBONACCI)?;
    let at = node(6);
    let r = analyze(
        &loaded,
        &AnalysisConfig::classical(DomainId::Box)
            .with_k(10)
            .with_widening_points(vec![at]),
    )?;
    let mut rows = vec![vec![
        "domain".to_string(),
        "phase/iter".to_string(),
        format!("value at {} on P, F, K", at),
    ]];
    rows.extend(node_rows(&loaded, &r, at, &["P", "F", "K"])?);
    Ok(header(&loaded, &r) + &align(&rows))
}

pub fn render(name: &str) -> Result<String, Error> {
    match name {
        "interval_table" => interval_table(),
        "interval_set_descent" => interval_set_descent(),
        "fibonacci_box" => fibonacci_box(),
        other => Err(Error::Usage(format!("unknown replay `{}`", other))),
    }
}

pub fn fixture_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(format!("{}.txt", name))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Match,
    /// Unified diff from the fixture to the actual rendering.
    Differs(String),
    Blessed,
}

/// Renders every replay and compares it with its fixture, or overwrites
/// the fixtures when `bless` is set.
pub fn replay_all(dir: &Path, bless: bool) -> Result<Vec<(&'static str, Outcome)>, Error> {
    let mut out = Vec::new();
    for name in REPLAYS {
        let actual = render(name)?;
        let path = fixture_path(dir, name);
        if bless {
            fs::write(&path, &actual).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            out.push((name, Outcome::Blessed));
            continue;
        }
        let expected = match fs::read_to_string(&path) {
            Ok(s) => s,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
                return Err(Error::MissingFixture(path))
            }
            Err(source) => return Err(Error::Io { path, source }),
        };
        if expected == actual {
            out.push((name, Outcome::Match));
        } else {
            let diff = TextDiff::from_lines(&expected, &actual)
                .unified_diff()
                .header(&path.display().to_string(), "actual")
                .to_string();
            out.push((name, Outcome::Differs(diff)));
        }
    }
    Ok(out)
}
