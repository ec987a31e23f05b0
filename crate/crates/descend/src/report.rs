//! Precision comparison over a set of programs, rendered as a table with
//! EQ/LT/GT/UN percentages.

use std::time::Instant;

use descend_core::compare::{compare_results, delta_eq, Classification, ComparisonReport};
use descend_core::fixpoint::{run, AnalysisConfig};
use serde::Serialize;

use crate::spec::DomainSpec;
use crate::trace::align;
use crate::{Error, Loaded};

pub const NOTE: &str =
    "invariants compared by lattice order; splitting a value into disjuncts counts as a gain";

/// Shared settings of both sides of a comparison.
#[derive(Clone, Debug, Default)]
pub struct Common {
    pub k: usize,
    pub max_disjuncts: Option<usize>,
}

fn config(spec: &DomainSpec, common: &Common) -> AnalysisConfig {
    let mut c = spec.config(common.k);
    c.max_disjuncts = common.max_disjuncts;
    c
}

/// Runs both setups on every program and classifies the widening points.
pub fn compare_programs(
    programs: &[Loaded],
    a: &DomainSpec,
    b: &DomainSpec,
    common: &Common,
) -> Result<ComparisonReport, Error> {
    let (ca, cb) = (config(a, common), config(b, common));
    let mut total = ComparisonReport::new(a.label(), b.label());
    for p in programs {
        let t0 = Instant::now();
        let ra = run(&p.cfg, &ca)?;
        let t1 = Instant::now();
        let rb = run(&p.cfg, &cb)?;
        let t2 = Instant::now();
        let part = compare_results(&p.name(), &ra, &rb)?;
        for row in part.rows {
            total.push(row);
        }
        total.add_time([t1 - t0, t2 - t1]);
    }
    Ok(total)
}

/// One line of the summary table.
#[derive(Clone, Debug, Serialize)]
pub struct SummaryRow {
    pub dom1: String,
    pub dom2: String,
    pub wps: usize,
    pub eq: f64,
    pub lt: f64,
    pub gt: f64,
    pub un: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_eq: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_dom1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_dom2: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WpJson {
    pub program: String,
    pub node: String,
    pub class: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub note: &'static str,
    pub rows: Vec<SummaryRow>,
    pub widening_points: Vec<WpJson>,
}

fn round1(x: f64) -> f64 {
    (x * 10.0).round() / 10.0
}

fn summary_row(r: &ComparisonReport, delta: Option<f64>, timing: bool) -> SummaryRow {
    let pct = |c| round1(r.tally.percent(c));
    let secs = |i: usize| {
        r.time
            .filter(|_| timing)
            .map(|t| (t[i].as_secs_f64() * 1000.0).round() / 1000.0)
    };
    SummaryRow {
        dom1: r.dom1.clone(),
        dom2: r.dom2.clone(),
        wps: r.tally.total(),
        eq: pct(Classification::Eq),
        lt: pct(Classification::Lt),
        gt: pct(Classification::Gt),
        un: pct(Classification::Un),
        delta_eq: delta.map(round1),
        time_dom1: secs(0),
        time_dom2: secs(1),
    }
}

/// Builds the summary of a main comparison, preceded by its baseline when
/// one is given. The main row then carries the EQ gain over the baseline.
pub fn summarize(
    main: &ComparisonReport,
    baseline: Option<&ComparisonReport>,
    timing: bool,
) -> Summary {
    let mut rows = Vec::new();
    if let Some(base) = baseline {
        rows.push(summary_row(base, None, timing));
    }
    rows.push(summary_row(
        main,
        baseline.map(|b| delta_eq(&main.tally, &b.tally)),
        timing,
    ));
    Summary {
        note: NOTE,
        rows,
        widening_points: main
            .rows
            .iter()
            .map(|r| WpJson {
                program: r.program.clone(),
                node: r.node.to_string(),
                class: r.class.name(),
            })
            .collect(),
    }
}

impl Summary {
    pub fn text(&self) -> String {
        let timing = self.rows.iter().any(|r| r.time_dom1.is_some());
        let delta = self.rows.iter().any(|r| r.delta_eq.is_some());
        let mut head: Vec<String> = ["DOM1", "DOM2", "#WP", "EQ", "LT", "GT", "UN"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        if delta {
            head.push("ΔEQ".to_string());
        }
        if timing {
            head.push("T1(s)".to_string());
            head.push("T2(s)".to_string());
        }
        let mut rows = vec![head];
        for r in &self.rows {
            let mut row = vec![
                r.dom1.clone(),
                r.dom2.clone(),
                r.wps.to_string(),
                format!("{:.1}", r.eq),
                format!("{:.1}", r.lt),
                format!("{:.1}", r.gt),
                format!("{:.1}", r.un),
            ];
            if delta {
                row.push(r.delta_eq.map(|d| format!("{:.1}", d)).unwrap_or_default());
            }
            if timing {
                row.push(format!("{:.3}", r.time_dom1.unwrap_or(0.0)));
                row.push(format!("{:.3}", r.time_dom2.unwrap_or(0.0)));
            }
            rows.push(row);
        }
        let mut out = format!("# {}\n", self.note);
        out.push_str(&align(&rows));
        if !self.widening_points.is_empty() {
            out.push('\n');
            let wp: Vec<Vec<String>> = self
                .widening_points
                .iter()
                .map(|w| vec![w.program.clone(), w.node.clone(), w.class.to_string()])
                .collect();
            out.push_str(&align(&wp));
        }
        out
    }
}
