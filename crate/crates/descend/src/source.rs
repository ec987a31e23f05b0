use std::fs;
use std::path::{Path, PathBuf};

use descend_core::compare::CompareError;
use descend_core::fixpoint::AnalysisError;
use descend_core::frontend::{build_cfg, parse, Cfg, ParseError, Program};
use descend_core::oracle::OracleError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}:{source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error("{0}")]
    Analysis(#[from] AnalysisError),
    #[error("{0}")]
    Compare(#[from] CompareError),
    #[error("{0}")]
    Oracle(#[from] OracleError),
    #[error("{0}")]
    Usage(String),
    #[error("missing fixture {}", .0.display())]
    MissingFixture(PathBuf),
}

impl Error {
    /// Process exit code: 2 for usage errors, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 2,
            Error::Analysis(AnalysisError::Config(_)) => 2,
            _ => 1,
        }
    }
}

/// A parsed program with its CFG.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub path: PathBuf,
    pub program: Program,
    pub cfg: Cfg,
}

impl Loaded {
    /// File name used in reports.
    pub fn name(&self) -> String {
        self.path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| self.path.display().to_string())
    }

    pub fn from_source(path: impl Into<PathBuf>, src: &str) -> Result<Loaded, Error> {
        let path = path.into();
        let program = parse(src).map_err(|source| Error::Parse {
            path: path.clone(),
            source,
        })?;
        let cfg = build_cfg(&program);
        Ok(Loaded { path, program, cfg })
    }
}

pub fn load(path: &Path) -> Result<Loaded, Error> {
    let src = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Loaded::from_source(path, &src)
}

/// The `.mini` files of a directory, sorted by name.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, Error> {
    let io = |source| Error::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).map_err(io)? {
        let p = entry.map_err(io)?.path();
        if p.extension().is_some_and(|e| e == "mini") {
            files.push(p);
        }
    }
    files.sort();
    Ok(files)
}
