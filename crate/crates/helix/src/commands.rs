//! Subcommand bodies. Each returns a process exit code; stdout carries
//! reports, stderr carries diagnostics.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use helix_core::codec::{builtin_table1, generate_codebook, validate_codebook, Codebook, Color};
use helix_core::graph::{DimacsWarning, Graph, Vertex};
use helix_core::oracle::{enumerate_colorings, is_proper, Coloring};
use helix_core::solver::{solve_incremental, solve_monolithic, SolveOptions, Trace};

use crate::config::{monolithic_budget, CodebookSource, ModeChoice, RunConfig};
use crate::error::{CliError, Result};
use crate::formats::{codebook_to_json, read_codebook, traces_to_json};
use crate::report::{solve_summary, validation_json, validation_text, CompareReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREE: i32 = 3;
pub const EXIT_INVALID_CODEBOOK: i32 = 4;

/// Writes to a stream the caller owns; a closed pipe is not worth a panic.
macro_rules! emit {
    ($w:expr, $($arg:tt)*) => {
        let _ = write!($w, $($arg)*);
    };
}

fn report_error(err: &mut dyn Write, e: &CliError) -> i32 {
    emit!(err, "error: {e}\n");
    e.exit_code()
}

fn warn_dimacs(err: &mut dyn Write, warnings: &[DimacsWarning]) {
    for w in warnings {
        emit!(err, "warning: {w}\n");
    }
}

struct Instance {
    graph: Graph,
    codebook: Codebook,
}

fn load_instance(cfg: &RunConfig, err: &mut dyn Write) -> Result<Instance> {
    if cfg.k == 0 {
        return Err(CliError::config("--colors must be at least 1"));
    }
    let loaded = cfg.graph.load()?;
    warn_dimacs(err, &loaded.warnings);
    let codebook = cfg.codebook.load(loaded.graph.vertex_count(), cfg.k)?;
    Ok(Instance {
        graph: loaded.graph,
        codebook,
    })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn run_solve(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let inst = load_instance(cfg, err)?;
    let n = inst.graph.vertex_count();
    let header = format!(
        "graph: {} | codebook: {} | match: {}",
        cfg.graph,
        cfg.codebook.resolve(n, cfg.k),
        cfg.match_mode
    );

    let mut traces: Vec<Trace> = Vec::new();
    if matches!(cfg.mode, ModeChoice::Incremental | ModeChoice::Both) {
        let opts = SolveOptions {
            match_mode: cfg.match_mode,
            order: cfg.order.as_option(),
            skip_extract: cfg.skip_extract,
        };
        let (_, trace) = solve_incremental(&inst.graph, cfg.k, &inst.codebook, &opts)?;
        traces.push(trace);
    }
    if matches!(cfg.mode, ModeChoice::Monolithic | ModeChoice::Both) {
        let (_, trace) = solve_monolithic(
            &inst.graph,
            cfg.k,
            &inst.codebook,
            cfg.match_mode,
            monolithic_budget()?,
        )?;
        traces.push(trace);
    }

    if let Some(path) = &cfg.trace {
        write_file(path, &traces_to_json(&traces))?;
    }
    if cfg.json {
        emit!(out, "{}", traces_to_json(&traces));
    } else {
        for (i, trace) in traces.iter().enumerate() {
            if i > 0 {
                emit!(out, "\n");
            }
            emit!(out, "{}", solve_summary(trace, &header));
        }
        if let [a, b] = &traces[..] {
            emit!(
                out,
                "\nengines agree: {}\n",
                a.solutions == b.solutions && a.colorable == b.colorable
            );
        }
    }
    Ok(EXIT_OK)
}

/// Solves and prints a summary; `colorable: false` is still exit 0.
pub fn cmd_solve(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    run_solve(cfg, out, err).unwrap_or_else(|e| report_error(err, &e))
}

fn run_compare(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let inst = load_instance(cfg, err)?;
    let g = &inst.graph;
    let oracle: BTreeSet<Coloring> = enumerate_colorings(g, cfg.k)?.into_iter().collect();

    let opts = SolveOptions {
        match_mode: cfg.match_mode,
        order: cfg.order.as_option(),
        skip_extract: cfg.skip_extract,
    };
    let (inc, inc_trace) = solve_incremental(g, cfg.k, &inst.codebook, &opts)?;
    let (mono, mono_trace) = solve_monolithic(
        g,
        cfg.k,
        &inst.codebook,
        cfg.match_mode,
        monolithic_budget()?,
    )?;

    let report = CompareReport::build(
        cfg.graph.to_string(),
        g.vertex_count(),
        g.edge_count(),
        cfg.k,
        &[
            ("oracle", &oracle, !oracle.is_empty(), None),
            (
                "incremental",
                &inc.colorings,
                inc.colorable,
                Some(inc_trace.peak_tube_size),
            ),
            (
                "monolithic",
                &mono.colorings,
                mono.colorable,
                Some(mono_trace.peak_tube_size),
            ),
        ],
        |c| is_proper(g, c).unwrap_or(false),
    );

    if let Some(path) = &cfg.trace {
        write_file(path, &traces_to_json(&[inc_trace, mono_trace]))?;
    }
    if cfg.json {
        emit!(out, "{}", report.to_json());
    } else {
        emit!(out, "{}", report.to_text());
    }
    if report.agree {
        Ok(EXIT_OK)
    } else {
        emit!(err, "error: engines disagree\n");
        Ok(EXIT_DISAGREE)
    }
}

/// Runs the oracle and both solvers; exit 3 when their solution sets differ.
pub fn cmd_compare(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    run_compare(cfg, out, err).unwrap_or_else(|e| report_error(err, &e))
}

#[derive(Debug, Clone)]
pub struct GenerateParams {
    pub n: Vertex,
    pub k: Color,
    pub length: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

/// Writes a generated codebook as JSON to a file or stdout.
pub fn cmd_codebook_generate(
    params: &GenerateParams,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let mut run = || -> Result<i32> {
        let cb = generate_codebook(params.n, params.k, params.length, params.seed)?;
        let text = codebook_to_json(&cb);
        match &params.out {
            Some(path) => write_file(path, &text)?,
            None => {
                emit!(out, "{text}");
            }
        }
        Ok(EXIT_OK)
    };
    run().unwrap_or_else(|e| report_error(err, &e))
}

/// Validates `table1`, `gen:len,seed` (needs `n`, `k`) or a JSON file.
/// Exit 4 when the codebook is unsound or structurally broken.
pub fn cmd_codebook_validate(
    source: &CodebookSource,
    n: Vertex,
    k: Color,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let cb = match source {
        CodebookSource::Table1 | CodebookSource::Auto => Ok(builtin_table1()),
        CodebookSource::Generated { length, seed } => {
            generate_codebook(n, k, *length, *seed).map_err(CliError::from)
        }
        CodebookSource::File(path) => read_codebook(path),
    };
    let cb = match cb {
        Ok(cb) => cb,
        Err(e @ CliError::Codebook(_)) => {
            emit!(err, "error: {e}\n");
            emit!(out, "ok: false\n");
            return EXIT_INVALID_CODEBOOK;
        }
        Err(e) => return report_error(err, &e),
    };
    let report = validate_codebook(&cb);
    if json {
        emit!(out, "{}", validation_json(&report));
    } else {
        emit!(out, "{}", validation_text(&source.to_string(), &report));
    }
    if report.ok() {
        EXIT_OK
    } else {
        EXIT_INVALID_CODEBOOK
    }
}
