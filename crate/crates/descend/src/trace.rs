//! Text and JSON renderings of analysis results.

use descend_core::fixpoint::{AnalysisResult, NarrowingMode, Value};
use descend_core::frontend::NodeId;
use descend_core::oracle::Unsound;
use serde::Serialize;
use serde_json::Map;

use crate::Loaded;

/// Renders `v`, restricted to the variables in `order` when it is a box or
/// a box set. Other values ignore the projection.
pub fn render_projected(v: &Value, names: &[String], order: &[usize]) -> String {
    match v {
        Value::Box(b) => b.render_vars(names, order),
        Value::BSet(s) if s.is_empty() => "{}".to_string(),
        Value::BSet(s) => {
            let parts: Vec<String> = s
                .elements()
                .iter()
                .map(|b| b.render_vars(names, order))
                .collect();
            format!("{{ {} }}", parts.join(" ; "))
        }
        other => other.render(names),
    }
}

/// Left-aligned columns separated by two spaces, without trailing blanks.
pub fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let mut line = String::new();
        for (c, cell) in r.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            if c + 1 < r.len() {
                line.extend(std::iter::repeat_n(' ', widths[c] - cell.chars().count()));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// A labelled column of per-node values.
pub struct Column<'a> {
    pub title: String,
    pub values: &'a [Value],
}

/// Every column of a run in order: ascending sweeps, the transferred
/// post-fixpoint (decoupled runs), descending sweeps.
pub fn columns(r: &AnalysisResult) -> Vec<Column<'_>> {
    let mut out = Vec::new();
    for (i, s) in r.ascending.sweeps.iter().enumerate() {
        out.push(Column {
            title: format!("asc/{}", i + 1),
            values: s,
        });
    }
    if let Some(t) = &r.transfer {
        out.push(Column {
            title: "transfer".to_string(),
            values: t,
        });
    }
    for (i, s) in r.descending.sweeps.iter().enumerate() {
        out.push(Column {
            title: format!("dsc/{}", i + 1),
            values: s,
        });
    }
    out
}

pub fn config_line(r: &AnalysisResult) -> String {
    let c = &r.config;
    let mode = if c.is_decoupled() {
        format!("{}:{}", c.ascending.name(), c.descending.name())
    } else {
        c.ascending.name().to_string()
    };
    let wp: Vec<String> = r.widening_points.iter().map(|n| n.to_string()).collect();
    let mut line = format!(
        "{}  k={}  widening points {}",
        mode,
        c.k,
        if wp.is_empty() {
            "none".to_string()
        } else {
            wp.join(",")
        }
    );
    if c.widening_delay > 0 {
        line.push_str(&format!("  delay={}", c.widening_delay));
    }
    if c.narrowing == NarrowingMode::Glb {
        line.push_str("  narrowing=glb");
    }
    line
}

/// Node table: one row per node, a `*` on widening points, optionally every
/// iterate column, then the final value.
pub fn text(loaded: &Loaded, r: &AnalysisResult, with_trace: bool) -> String {
    let names = &loaded.program.vars;
    let cols = if with_trace { columns(r) } else { Vec::new() };
    let mut rows = vec![{
        let mut h = vec!["node".to_string(), "wp".to_string()];
        h.extend(cols.iter().map(|c| c.title.clone()));
        h.push("final".to_string());
        h
    }];
    for n in loaded.cfg.nodes() {
        let mut row = vec![
            n.to_string(),
            if r.widening_points.contains(n) {
                "*"
            } else {
                ""
            }
            .to_string(),
        ];
        row.extend(cols.iter().map(|c| c.values[n.0].render(names)));
        row.push(r.result[n.0].render(names));
        rows.push(row);
    }
    let mut out = format!("{}\n{}\n", loaded.name(), config_line(r));
    if with_trace {
        out.push_str(&format!(
            "ascending: {} sweeps{}, descending: {} sweeps{}\n",
            r.ascending.sweeps.len(),
            if r.ascending.stabilized {
                " (post-fixpoint)"
            } else {
                ""
            },
            r.descending.sweeps.len(),
            if r.descending.stabilized {
                " (fixpoint)"
            } else {
                ""
            },
        ));
    }
    out.push_str(&align(&rows));
    out
}

#[derive(Serialize)]
struct NodeJson {
    id: usize,
    label: String,
}

#[derive(Serialize)]
struct PhaseJson {
    phase: &'static str,
    sweeps: Vec<Map<String, serde_json::Value>>,
}

#[derive(Serialize)]
struct SweepCounts {
    asc: usize,
    desc: usize,
}

#[derive(Serialize)]
struct ConfigJson {
    ascending: &'static str,
    descending: &'static str,
    k: usize,
    widening_delay: usize,
    narrowing: &'static str,
}

#[derive(Serialize)]
struct UnsoundJson {
    node: String,
    state: Vec<Option<i64>>,
}

#[derive(Serialize)]
pub struct OracleJson {
    bound: i64,
    states: usize,
    violations: Vec<UnsoundJson>,
}

impl OracleJson {
    pub fn new(bound: i64, states: usize, bad: &[Unsound]) -> Self {
        OracleJson {
            bound,
            states,
            violations: bad
                .iter()
                .map(|u| UnsoundJson {
                    node: u.node.to_string(),
                    state: u.state.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct TraceJson {
    program: String,
    variables: Vec<String>,
    config: ConfigJson,
    widening_points: Vec<String>,
    nodes: Vec<NodeJson>,
    phases: Vec<PhaseJson>,
    #[serde(rename = "final")]
    final_values: Map<String, serde_json::Value>,
    stabilized: bool,
    sweep_counts: SweepCounts,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleJson>,
}

fn assignment(names: &[String], values: &[Value]) -> Map<String, serde_json::Value> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| (NodeId(i).to_string(), v.render(names).into()))
        .collect()
}

/// JSON document of a run.
pub fn json(loaded: &Loaded, r: &AnalysisResult, oracle: Option<OracleJson>) -> serde_json::Value {
    let names = &loaded.program.vars;
    let sweeps = |s: &[Vec<Value>]| s.iter().map(|a| assignment(names, a)).collect();
    let mut phases = vec![PhaseJson {
        phase: "ascending",
        sweeps: sweeps(&r.ascending.sweeps),
    }];
    if let Some(t) = &r.transfer {
        phases.push(PhaseJson {
            phase: "transfer",
            sweeps: vec![assignment(names, t)],
        });
    }
    phases.push(PhaseJson {
        phase: "descending",
        sweeps: sweeps(&r.descending.sweeps),
    });
    let doc = TraceJson {
        program: loaded.name(),
        variables: names.clone(),
        config: ConfigJson {
            ascending: r.config.ascending.name(),
            descending: r.config.descending.name(),
            k: r.config.k,
            widening_delay: r.config.widening_delay,
            narrowing: match r.config.narrowing {
                NarrowingMode::Native => "native",
                NarrowingMode::Glb => "glb",
            },
        },
        widening_points: r.widening_points.iter().map(|n| n.to_string()).collect(),
        nodes: loaded
            .cfg
            .nodes()
            .map(|n| NodeJson {
                id: n.number(),
                label: n.to_string(),
            })
            .collect(),
        phases,
        final_values: assignment(names, &r.result),
        stabilized: r.descending.stabilized,
        sweep_counts: SweepCounts {
            asc: r.ascending.sweeps.len(),
            desc: r.descending.sweeps.len(),
        },
        oracle,
    };
    serde_json::to_value(doc).expect("trace serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn align_pads_all_but_the_last_column() {
        let rows = vec![
            vec!["a".to_string(), "bb".to_string(), "c".to_string()],
            vec!["aaa".to_string(), "b".to_string(), "".to_string()],
        ];
        assert_eq!(align(&rows), "a    bb  c\naaa  b\n");
    }
}
