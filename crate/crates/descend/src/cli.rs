//! The `descend` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use descend_core::fixpoint::{run as analyze_cfg, AnalysisConfig, NarrowingMode};
use descend_core::oracle::{check_soundness, collect, DEFAULT_BOUND, DEFAULT_STATE_CAP};

use crate::replay::{replay_all, Outcome};
use crate::report::{compare_programs, summarize, Common};
use crate::source::corpus_files;
use crate::spec::{widening_points, DomainSpec};
use crate::trace::{self, OracleJson};
use crate::{load, Error};

/// Directory searched by `compare` when no file is given.
pub const CORPUS_ENV: &str = "DESCEND_CORPUS";

#[derive(Debug, Parser)]
#[command(
    name = "descend",
    version,
    about = "Numerical invariants by abstract interpretation, with an optional more precise domain for the descending phase"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyze one program and print its invariants.
    Analyze(AnalyzeArgs),
    /// Classify the invariants of two setups at every widening point.
    Compare(CompareArgs),
    /// Print the control-flow graph in DOT format.
    DumpCfg { file: PathBuf },
    /// Re-run the worked examples and diff them against the golden files.
    Replay {
        /// Directory holding the golden files.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Overwrite the golden files with the current output.
        #[arg(long)]
        bless: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    file: PathBuf,
    /// Domain of the ascending phase.
    #[arg(long, default_value = "itv", conflicts_with = "a")]
    asc: String,
    /// Domain of the descending phase (defaults to the ascending one).
    #[arg(long, conflicts_with = "a")]
    desc: Option<String>,
    /// Both domains at once, as `ASC[:DESC][/K]`.
    #[arg(long)]
    a: Option<String>,
    /// Maximum number of descending sweeps.
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Sweeps of plain lub before widening starts.
    #[arg(long, default_value_t = 0)]
    delay: usize,
    /// Widening points replacing the loop heads, e.g. `3,x5`.
    #[arg(long)]
    wp: Option<String>,
    /// Narrow by glb at widening points in every domain.
    #[arg(long)]
    glb: bool,
    /// Collapse powerset values with more disjuncts into their hull.
    #[arg(long)]
    max_disjuncts: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Show every iterate, not only the final values.
    #[arg(long)]
    trace: bool,
    /// Check the result against the bounded concrete semantics.
    #[arg(long)]
    oracle: bool,
    /// Variable bound of the concrete semantics.
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    bound: i64,
}

#[derive(Debug, Args)]
struct CompareArgs {
    /// Programs to compare on; defaults to the `.mini` files of $DESCEND_CORPUS.
    files: Vec<PathBuf>,
    /// First setup, `ASC[:DESC][/K]`.
    #[arg(long)]
    a: String,
    /// Second setup, `ASC[:DESC][/K]`.
    #[arg(long)]
    b: String,
    /// Also compare this setup with the second one, and report the EQ gain
    /// of the first setup over it.
    #[arg(long)]
    baseline: Option<String>,
    /// Descending sweeps for setups without a `/K` suffix.
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long)]
    max_disjuncts: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Report analysis times.
    #[arg(long)]
    timing: bool,
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{}", text)
            } else {
                write!(err, "{}", text)
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, Error> {
    match cmd {
        Command::Analyze(a) => analyze(a, out),
        Command::Compare(c) => compare(c, out),
        Command::DumpCfg { file } => {
            let loaded = load(&file)?;
            emit(out, &loaded.cfg.to_dot())?;
            Ok(0)
        }
        Command::Replay { fixtures, bless } => {
            let dir = fixtures.unwrap_or_else(default_fixtures);
            replay(&dir, bless, out)
        }
    }
}

fn default_fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn emit(out: &mut dyn Write, s: &str) -> Result<(), Error> {
    out.write_all(s.as_bytes()).map_err(|source| Error::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

fn analysis_config(a: &AnalyzeArgs) -> Result<AnalysisConfig, Error> {
    let spec = match &a.a {
        Some(s) => DomainSpec::parse(s)?,
        None => {
            let asc = DomainSpec::parse(&a.asc)?;
            match &a.desc {
                Some(d) => DomainSpec {
                    descending: DomainSpec::parse(d)?.ascending,
                    ..asc
                },
                None => asc,
            }
        }
    };
    let mut config = spec.config(a.k);
    config.widening_delay = a.delay;
    if let Some(wp) = &a.wp {
        config.widening_points = Some(widening_points(wp)?);
    }
    if a.glb {
        config.narrowing = NarrowingMode::Glb;
    }
    config.max_disjuncts = a.max_disjuncts;
    Ok(config)
}

fn analyze(a: AnalyzeArgs, out: &mut dyn Write) -> Result<i32, Error> {
    if a.bound < 1 {
        return Err(Error::Usage("--bound must be at least 1".to_string()));
    }
    let config = analysis_config(&a)?;
    let loaded = load(&a.file)?;
    let r = analyze_cfg(&loaded.cfg, &config)?;
    let oracle = if a.oracle {
        let c = collect(&loaded.cfg, a.bound, DEFAULT_STATE_CAP)?;
        let bad = check_soundness(&c, &r.result);
        Some((c.total(), bad))
    } else {
        None
    };
    let unsound = oracle.as_ref().is_some_and(|(_, bad)| !bad.is_empty());
    match a.format {
        Format::Json => {
            let o = oracle
                .as_ref()
                .map(|(n, bad)| OracleJson::new(a.bound, *n, bad));
            let doc = trace::json(&loaded, &r, o);
            emit(
                out,
                &format!("{}\n", serde_json::to_string_pretty(&doc).expect("json")),
            )?;
        }
        Format::Text => {
            let mut s = trace::text(&loaded, &r, a.trace);
            if let Some((n, bad)) = &oracle {
                s.push_str(&format!(
                    "oracle: bound {}, {} concrete states, {} violations\n",
                    a.bound,
                    n,
                    bad.len()
                ));
                for u in bad.iter().take(20) {
                    let state: Vec<String> = loaded
                        .program
                        .vars
                        .iter()
                        .zip(&u.state)
                        .map(|(v, x)| match x {
                            Some(x) => format!("{}={}", v, x),
                            None => format!("{}=?", v),
                        })
                        .collect();
                    s.push_str(&format!("  {} escapes at {}\n", state.join(" "), u.node));
                }
            }
            emit(out, &s)?;
        }
    }
    Ok(if unsound { 1 } else { 0 })
}

fn compare(c: CompareArgs, out: &mut dyn Write) -> Result<i32, Error> {
    let files = if c.files.is_empty() {
        let dir = std::env::var_os(CORPUS_ENV).ok_or_else(|| {
            Error::Usage(format!("no input files and ${} is not set", CORPUS_ENV))
        })?;
        corpus_files(Path::new(&dir))?
    } else {
        c.files.clone()
    };
    let programs = files
        .iter()
        .map(|f| load(f))
        .collect::<Result<Vec<_>, _>>()?;
    let common = Common {
        k: c.k,
        max_disjuncts: c.max_disjuncts,
    };
    let a = DomainSpec::parse(&c.a)?;
    let b = DomainSpec::parse(&c.b)?;
    let main = compare_programs(&programs, &a, &b, &common)?;
    let base = match &c.baseline {
        Some(s) => Some(compare_programs(
            &programs,
            &DomainSpec::parse(s)?,
            &b,
            &common,
        )?),
        None => None,
    };
    let summary = summarize(&main, base.as_ref(), c.timing);
    match c.format {
        Format::Text => emit(out, &summary.text())?,
        Format::Json => emit(
            out,
            &format!(
                "{}\n",
                serde_json::to_string_pretty(&summary).expect("json")
            ),
        )?,
    }
    Ok(0)
}

fn replay(dir: &Path, bless: bool, out: &mut dyn Write) -> Result<i32, Error> {
    let mut code = 0;
    for (name, outcome) in replay_all(dir, bless)? {
        match outcome {
            Outcome::Match => emit(out, &format!("{}: ok\n", name))?,
            Outcome::Blessed => emit(out, &format!("{}: written\n", name))?,
            Outcome::Differs(diff) => {
                code = 1;
                emit(out, &format!("{}: DIFFERS\n{}", name, diff))?;
            }
        }
    }
    Ok(code)
}
