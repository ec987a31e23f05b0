//! Precision classification of two analysis results.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::time::Duration;

use crate::fixpoint::{self, AnalysisConfig, AnalysisError, AnalysisResult, Value};
use crate::frontend::Cfg;
use crate::frontend::NodeId;
use crate::galois::DomainId;
use crate::lattice::Lattice;

/// How the first value relates to the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Classification {
    /// Mutually included.
    Eq,
    /// The first value is strictly more precise.
    Lt,
    /// The second value is strictly more precise.
    Gt,
    /// Incomparable.
    Un,
}

impl Classification {
    pub const ALL: [Classification; 4] = [
        Classification::Eq,
        Classification::Lt,
        Classification::Gt,
        Classification::Un,
    ];

    pub fn from_order(le: bool, ge: bool) -> Self {
        match (le, ge) {
            (true, true) => Classification::Eq,
            (true, false) => Classification::Lt,
            (false, true) => Classification::Gt,
            (false, false) => Classification::Un,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Classification::Eq => "EQ",
            Classification::Lt => "LT",
            Classification::Gt => "GT",
            Classification::Un => "UN",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompareError {
    NoCommonDomain(DomainId, DomainId),
    ShapeMismatch,
    WideningPointMismatch,
    Analysis(AnalysisError),
}

impl From<AnalysisError> for CompareError {
    fn from(e: AnalysisError) -> Self {
        CompareError::Analysis(e)
    }
}

impl fmt::Display for CompareError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompareError::NoCommonDomain(a, b) => write!(
                f,
                "values of `{}` and `{}` have no common domain",
                a.name(),
                b.name()
            ),
            CompareError::ShapeMismatch => {
                f.write_str("results were computed on different control-flow graphs")
            }
            CompareError::WideningPointMismatch => {
                f.write_str("the two configurations use different widening points")
            }
            CompareError::Analysis(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for CompareError {}

/// Classifies two values, embedding them into a common domain if needed.
pub fn classify(v1: &Value, v2: &Value) -> Result<Classification, CompareError> {
    if let (Value::Par(a), Value::Par(b)) = (v1, v2) {
        return Ok(Classification::from_order(a.leq(b), b.leq(a)));
    }
    match (v1.to_box_set(), v2.to_box_set()) {
        (Some(a), Some(b)) => Ok(Classification::from_order(a.leq(&b), b.leq(&a))),
        _ => Err(CompareError::NoCommonDomain(v1.domain(), v2.domain())),
    }
}

/// Per-class counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub eq: usize,
    pub lt: usize,
    pub gt: usize,
    pub un: usize,
}

impl Tally {
    pub fn add(&mut self, c: Classification) {
        match c {
            Classification::Eq => self.eq += 1,
            Classification::Lt => self.lt += 1,
            Classification::Gt => self.gt += 1,
            Classification::Un => self.un += 1,
        }
    }

    pub fn merge(&mut self, other: &Tally) {
        self.eq += other.eq;
        self.lt += other.lt;
        self.gt += other.gt;
        self.un += other.un;
    }

    pub fn get(&self, c: Classification) -> usize {
        match c {
            Classification::Eq => self.eq,
            Classification::Lt => self.lt,
            Classification::Gt => self.gt,
            Classification::Un => self.un,
        }
    }

    pub fn total(&self) -> usize {
        self.eq + self.lt + self.gt + self.un
    }

    /// Share of `c` in percent; 0 for an empty tally.
    pub fn percent(&self, c: Classification) -> f64 {
        match self.total() {
            0 => 0.0,
            t => 100.0 * self.get(c) as f64 / t as f64,
        }
    }
}

impl FromIterator<Classification> for Tally {
    fn from_iter<I: IntoIterator<Item = Classification>>(iter: I) -> Self {
        let mut t = Tally::default();
        for c in iter {
            t.add(c);
        }
        t
    }
}

/// Classification of every widening point of two runs over the same CFG.
/// The widening points of the first run are used.
pub fn compare_at_widening_points(
    r1: &AnalysisResult,
    r2: &AnalysisResult,
) -> Result<Vec<(NodeId, Classification)>, CompareError> {
    if r1.result.len() != r2.result.len() {
        return Err(CompareError::ShapeMismatch);
    }
    r1.widening_points
        .iter()
        .map(|n| Ok((n, classify(&r1.result[n.0], &r2.result[n.0])?)))
        .collect()
}

/// Short label of a configuration: `itv`, or `itv:iset` when decoupled.
pub fn config_label(c: &AnalysisConfig) -> String {
    if c.is_decoupled() {
        alloc::format!("{}:{}", c.ascending.name(), c.descending.name())
    } else {
        String::from(c.ascending.name())
    }
}

/// One widening point of one program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WpRow {
    pub program: String,
    pub node: NodeId,
    pub class: Classification,
}

/// Classified widening points of two configurations over some programs.
#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonReport {
    pub dom1: String,
    pub dom2: String,
    pub rows: Vec<WpRow>,
    pub tally: Tally,
    /// Analysis time of each side, when measured.
    pub time: Option<[Duration; 2]>,
}

impl ComparisonReport {
    pub fn new(dom1: String, dom2: String) -> Self {
        ComparisonReport {
            dom1,
            dom2,
            rows: Vec::new(),
            tally: Tally::default(),
            time: None,
        }
    }

    pub fn push(&mut self, row: WpRow) {
        self.tally.add(row.class);
        self.rows.push(row);
    }

    pub fn add_time(&mut self, t: [Duration; 2]) {
        let [a, b] = self.time.unwrap_or_default();
        self.time = Some([a + t[0], b + t[1]]);
    }

    /// Per-program counts, in order of first appearance.
    pub fn per_program(&self) -> Vec<(&str, Tally)> {
        let mut out: Vec<(&str, Tally)> = Vec::new();
        for r in &self.rows {
            match out.iter_mut().find(|(p, _)| *p == r.program) {
                Some((_, t)) => t.add(r.class),
                None => {
                    let mut t = Tally::default();
                    t.add(r.class);
                    out.push((&r.program, t));
                }
            }
        }
        out
    }
}

/// Classifies the final values of two already computed runs.
pub fn compare_results(
    program: &str,
    r1: &AnalysisResult,
    r2: &AnalysisResult,
) -> Result<ComparisonReport, CompareError> {
    if r1.widening_points != r2.widening_points {
        return Err(CompareError::WideningPointMismatch);
    }
    let mut report = ComparisonReport::new(config_label(&r1.config), config_label(&r2.config));
    for (node, class) in compare_at_widening_points(r1, r2)? {
        report.push(WpRow {
            program: String::from(program),
            node,
            class,
        });
    }
    Ok(report)
}

/// Runs both configurations on `cfg` and classifies their final values.
pub fn compare_runs(
    program: &str,
    cfg: &Cfg,
    c1: &AnalysisConfig,
    c2: &AnalysisConfig,
) -> Result<ComparisonReport, CompareError> {
    let r1 = fixpoint::run(cfg, c1)?;
    let r2 = fixpoint::run(cfg, c2)?;
    compare_results(program, &r1, &r2)
}

/// Concatenates rows and sums counts and times. The labels of the first
/// report are kept.
pub fn aggregate(reports: &[ComparisonReport]) -> ComparisonReport {
    let mut out = match reports.first() {
        Some(r) => ComparisonReport::new(r.dom1.clone(), r.dom2.clone()),
        None => ComparisonReport::new(String::new(), String::new()),
    };
    for r in reports {
        for row in &r.rows {
            out.push(row.clone());
        }
        if let Some(t) = r.time {
            out.add_time(t);
        }
    }
    out
}

/// Gain in EQ share (percentage points) of the decoupled tally over the
/// classical one, both measured against the same reference.
pub fn delta_eq(decoupled_vs_ref: &Tally, classical_vs_ref: &Tally) -> f64 {
    decoupled_vs_ref.percent(Classification::Eq) - classical_vs_ref.percent(Classification::Eq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{BoxSet, Interval, IntervalBox, IntervalSet, Parity, ParityEnv};
    use alloc::vec;

    fn itv(l: i64, u: i64) -> Interval {
        Interval::finite(l, u)
    }

    #[test]
    fn classes_of_intervals() {
        let a = Value::Itv(itv(0, 5));
        let b = Value::Itv(itv(0, 10));
        let c = Value::Itv(itv(3, 20));
        assert_eq!(classify(&a, &a).unwrap(), Classification::Eq);
        assert_eq!(classify(&a, &b).unwrap(), Classification::Lt);
        assert_eq!(classify(&b, &a).unwrap(), Classification::Gt);
        assert_eq!(classify(&a, &c).unwrap(), Classification::Un);
    }

    #[test]
    fn interval_against_its_set() {
        let i = Value::Itv(itv(0, 10));
        let s = Value::ISet(IntervalSet::normalize(vec![itv(0, 3), itv(5, 10)]));
        assert_eq!(classify(&s, &i).unwrap(), Classification::Lt);
        let b = Value::BSet(BoxSet::singleton(IntervalBox::from_values(vec![itv(
            0, 10,
        )])));
        assert_eq!(classify(&i, &b).unwrap(), Classification::Eq);
    }

    #[test]
    fn parity_has_no_common_domain_with_intervals() {
        let p = Value::Par(ParityEnv::from_values(vec![Parity::Even]));
        let i = Value::Itv(itv(0, 1));
        assert_eq!(
            classify(&p, &i),
            Err(CompareError::NoCommonDomain(DomainId::Par, DomainId::Itv))
        );
        assert_eq!(classify(&p, &p).unwrap(), Classification::Eq);
    }

    #[test]
    fn tally_percentages() {
        let t: Tally = [
            Classification::Eq,
            Classification::Eq,
            Classification::Lt,
            Classification::Un,
        ]
        .into_iter()
        .collect();
        assert_eq!(t.total(), 4);
        assert_eq!(t.percent(Classification::Eq), 50.0);
        assert_eq!(Tally::default().percent(Classification::Eq), 0.0);
        let base: Tally = [
            Classification::Eq,
            Classification::Gt,
            Classification::Gt,
            Classification::Gt,
        ]
        .into_iter()
        .collect();
        assert_eq!(delta_eq(&t, &base), 25.0);
    }

    fn report(classes: &[Classification]) -> ComparisonReport {
        let mut r = ComparisonReport::new("a".into(), "b".into());
        for (i, &c) in classes.iter().enumerate() {
            r.push(WpRow {
                program: alloc::format!("p{}", i % 2),
                node: NodeId(i),
                class: c,
            });
        }
        r
    }

    #[test]
    fn aggregate_sums_counts() {
        use Classification::*;
        let all = aggregate(&[report(&[Eq, Eq, Eq, Gt]), report(&[Eq, Gt])]);
        assert_eq!(
            all.tally,
            Tally {
                eq: 4,
                lt: 0,
                gt: 2,
                un: 0
            }
        );
        assert!((all.tally.percent(Eq) - 66.666).abs() < 0.01);
        let per: Tally = all
            .per_program()
            .iter()
            .fold(Tally::default(), |mut acc, (_, t)| {
                acc.merge(t);
                acc
            });
        assert_eq!(per, all.tally);
        assert_eq!(aggregate(&[]).tally.total(), 0);
    }
}
