//! Run configuration: where the graph, codebook and vertex order come from.

use std::env;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use helix_core::codec::{builtin_table1, generate_codebook, Codebook, Color};
use helix_core::graph::{builtin_graph, DimacsWarning, Graph, Vertex};
use helix_core::solver::DEFAULT_MONOLITHIC_BUDGET;
use helix_core::tube::MatchMode;

use crate::error::{CliError, Result};
use crate::formats::{read_codebook, read_dimacs};
use crate::random::random_graph;

/// Environment variable overriding the monolithic strand budget.
pub const BUDGET_ENV: &str = "HELIX_BUDGET";

/// Codeword length and seed used when no codebook is named and the
/// built-in `table1` codebook does not cover the instance.
pub const FALLBACK_CODEBOOK: CodebookSource = CodebookSource::Generated {
    length: 20,
    seed: 1,
};

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    File(PathBuf),
    Builtin(String),
    Random { n: Vertex, p: f64, seed: u64 },
}

impl FromStr for GraphSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(name) = s.strip_prefix("builtin:") {
            return Ok(GraphSource::Builtin(name.to_string()));
        }
        if let Some(spec) = s.strip_prefix("random:") {
            let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
            let [n, p, seed] = parts[..] else {
                return Err(format!("random graph spec `{spec}` should be n,p,seed"));
            };
            let n: Vertex = n.parse().map_err(|_| format!("bad vertex count `{n}`"))?;
            let p: f64 = p
                .parse()
                .map_err(|_| format!("bad edge probability `{p}`"))?;
            let seed: u64 = seed.parse().map_err(|_| format!("bad seed `{seed}`"))?;
            if n == 0 {
                return Err("random graph needs at least one vertex".to_string());
            }
            if !(0.0..=1.0).contains(&p) {
                return Err(format!("edge probability {p} outside [0, 1]"));
            }
            return Ok(GraphSource::Random { n, p, seed });
        }
        Ok(GraphSource::File(PathBuf::from(s)))
    }
}

impl fmt::Display for GraphSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSource::File(path) => write!(f, "{}", path.display()),
            GraphSource::Builtin(name) => write!(f, "builtin:{name}"),
            GraphSource::Random { n, p, seed } => write!(f, "random:{n},{p},{seed}"),
        }
    }
}

pub struct LoadedGraph {
    pub graph: Graph,
    pub warnings: Vec<DimacsWarning>,
}

impl GraphSource {
    pub fn load(&self) -> Result<LoadedGraph> {
        match self {
            GraphSource::File(path) => {
                let parsed = read_dimacs(path)?;
                Ok(LoadedGraph {
                    graph: parsed.graph,
                    warnings: parsed.warnings,
                })
            }
            GraphSource::Builtin(name) => Ok(LoadedGraph {
                graph: builtin_graph(name).map_err(|e| CliError::config(e.to_string()))?,
                warnings: Vec::new(),
            }),
            GraphSource::Random { n, p, seed } => Ok(LoadedGraph {
                graph: random_graph(*n, *p, *seed)?,
                warnings: Vec::new(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodebookSource {
    /// `table1` when it covers the instance, otherwise
    /// [`FALLBACK_CODEBOOK`].
    Auto,
    Table1,
    Generated {
        length: usize,
        seed: u64,
    },
    File(PathBuf),
}

impl FromStr for CodebookSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(CodebookSource::Auto),
            "table1" => Ok(CodebookSource::Table1),
            _ => {
                if let Some(spec) = s.strip_prefix("gen:") {
                    let (length, seed) = spec.split_once(',').ok_or_else(|| {
                        format!("generated codebook spec `{spec}` should be len,seed")
                    })?;
                    let length = length
                        .trim()
                        .parse()
                        .map_err(|_| format!("bad codeword length `{length}`"))?;
                    let seed = seed
                        .trim()
                        .parse()
                        .map_err(|_| format!("bad seed `{seed}`"))?;
                    Ok(CodebookSource::Generated { length, seed })
                } else {
                    Ok(CodebookSource::File(PathBuf::from(s)))
                }
            }
        }
    }
}

impl fmt::Display for CodebookSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodebookSource::Auto => f.write_str("auto"),
            CodebookSource::Table1 => f.write_str("table1"),
            CodebookSource::Generated { length, seed } => write!(f, "gen:{length},{seed}"),
            CodebookSource::File(path) => write!(f, "{}", path.display()),
        }
    }
}

impl CodebookSource {
    /// Resolves `Auto` against the instance size.
    pub fn resolve(&self, n: Vertex, k: Color) -> CodebookSource {
        match self {
            CodebookSource::Auto if n <= 12 && k <= 3 => CodebookSource::Table1,
            CodebookSource::Auto => FALLBACK_CODEBOOK,
            other => other.clone(),
        }
    }

    /// Loads a codebook covering `n` vertices and `k` colors.
    pub fn load(&self, n: Vertex, k: Color) -> Result<Codebook> {
        let cb = match self.resolve(n, k) {
            CodebookSource::Table1 => {
                if n > 12 || k > 3 {
                    return Err(CliError::config(format!(
                        "the table1 codebook covers 12 vertices and 3 colors; this run needs {n} x {k}"
                    )));
                }
                builtin_table1()
            }
            CodebookSource::Generated { length, seed } => generate_codebook(n, k, length, seed)?,
            CodebookSource::File(path) => read_codebook(&path)?,
            CodebookSource::Auto => unreachable!("resolved above"),
        };
        if !cb.covers(n, k) {
            return Err(CliError::config(format!(
                "codebook covers {} vertices x {} colors; this run needs {n} x {k}",
                cb.vertex_count(),
                cb.color_count()
            )));
        }
        Ok(cb)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum OrderSpec {
    #[default]
    Natural,
    Explicit(Vec<Vertex>),
}

impl FromStr for OrderSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "natural" {
            return Ok(OrderSpec::Natural);
        }
        s.split(',')
            .map(|v| {
                v.trim()
                    .parse::<Vertex>()
                    .map_err(|_| format!("bad vertex `{v}` in order"))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(OrderSpec::Explicit)
    }
}

impl OrderSpec {
    pub fn as_option(&self) -> Option<Vec<Vertex>> {
        match self {
            OrderSpec::Natural => None,
            OrderSpec::Explicit(order) => Some(order.clone()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ModeChoice {
    Incremental,
    Monolithic,
    Both,
}

/// Everything `solve` and `compare` need.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub graph: GraphSource,
    pub k: Color,
    pub mode: ModeChoice,
    pub codebook: CodebookSource,
    pub match_mode: MatchMode,
    pub order: OrderSpec,
    pub trace: Option<PathBuf>,
    pub json: bool,
    pub skip_extract: Option<u64>,
}

impl RunConfig {
    pub fn new(graph: GraphSource, k: Color) -> Self {
        RunConfig {
            graph,
            k,
            mode: ModeChoice::Incremental,
            codebook: CodebookSource::Auto,
            match_mode: MatchMode::Symbolic,
            order: OrderSpec::Natural,
            trace: None,
            json: false,
            skip_extract: None,
        }
    }
}

/// Monolithic strand budget, from [`BUDGET_ENV`] if set.
pub fn monolithic_budget() -> Result<u64> {
    match env::var(BUDGET_ENV) {
        Ok(value) => value
            .trim()
            .parse()
            .map_err(|_| CliError::config(format!("{BUDGET_ENV}=`{value}` is not a strand count"))),
        Err(_) => Ok(DEFAULT_MONOLITHIC_BUDGET),
    }
}
