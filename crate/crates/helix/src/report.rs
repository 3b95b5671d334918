//! Human-readable and JSON reports.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use helix_core::codec::{Color, ValidationReport};
use helix_core::oracle::Coloring;
use helix_core::solver::{describe_coloring, Trace};
use helix_core::tube::OpCounter;
use serde::Serialize;

/// Solutions listed in a summary before the rest are elided.
pub const MAX_LISTED_SOLUTIONS: usize = 20;

/// `k^n`, or `None` when it does not fit in a `u64`.
pub fn search_space(n: u32, k: Color) -> Option<u64> {
    u64::from(k).checked_pow(n)
}

/// How many times smaller the peak is than the full space.
pub fn reduction_factor(space: Option<u64>, peak: u64) -> Option<f64> {
    match (space, peak) {
        (Some(space), p) if p > 0 => Some(space as f64 / p as f64),
        _ => None,
    }
}

fn ops_line(ops: &OpCounter) -> String {
    format!(
        "append {}, copy {}, merge {}, extract {}, detect {}, discard {} (total {})",
        ops.append,
        ops.copy,
        ops.merge,
        ops.extract,
        ops.detect,
        ops.discard,
        ops.total()
    )
}

fn slash_list(values: &[u64]) -> String {
    let parts: Vec<String> = values.iter().map(u64::to_string).collect();
    parts.join("/")
}

/// Text summary of one solver run.
pub fn solve_summary(trace: &Trace, header: &str) -> String {
    let mut out = String::new();
    let n = trace.graph.n;
    let space = search_space(n, trace.k);
    let _ = writeln!(out, "{header}");
    let _ = writeln!(
        out,
        "mode: {} ({}), n = {}, m = {}, k = {}",
        trace.mode,
        match trace.construction {
            helix_core::solver::Construction::Stepwise => "stepwise",
            helix_core::solver::Construction::Synthetic => "synthetic",
        },
        n,
        trace.graph.m,
        trace.k
    );
    let order: Vec<String> = trace.order.iter().map(u32::to_string).collect();
    let _ = writeln!(out, "order: {}", order.join(" "));

    if !trace.steps.is_empty() {
        let _ = writeln!(
            out,
            "{:>5} {:>7} {:>10} {:>20} {:>20} {:>10} {:>10}",
            "step", "vertex", "t0_before", "after_append", "after_filter", "discarded", "t0_after"
        );
        for (i, step) in trace.steps.iter().enumerate() {
            let _ = writeln!(
                out,
                "{:>5} {:>7} {:>10} {:>20} {:>20} {:>10} {:>10}",
                i + 1,
                step.vertex,
                step.t0_before,
                slash_list(&step.per_color_after_append),
                slash_list(&step.per_color_after_filter),
                step.discarded,
                step.t0_after
            );
        }
    }

    let _ = writeln!(out, "ops: {}", ops_line(&trace.op_totals));
    match space {
        Some(space) => {
            let ratio = trace.peak_tube_size as f64 / space as f64;
            let _ = write!(
                out,
                "peak tube size: {} / {} = {}/{} = {:.4}",
                trace.peak_tube_size, space, trace.peak_tube_size, space, ratio
            );
            if let Some(r) = reduction_factor(Some(space), trace.peak_tube_size) {
                let _ = write!(out, " (reduction {r:.2}x)");
            }
            let _ = writeln!(out);
        }
        None => {
            let _ = writeln!(
                out,
                "peak tube size: {} (k^n overflows)",
                trace.peak_tube_size
            );
        }
    }
    let _ = writeln!(out, "colorable: {}", trace.colorable);
    let _ = writeln!(out, "solutions: {}", trace.solutions.len());
    for (i, coloring) in trace
        .solutions
        .iter()
        .take(MAX_LISTED_SOLUTIONS)
        .enumerate()
    {
        let _ = writeln!(out, "  {:>3}: {}", i + 1, describe_coloring(coloring));
    }
    if trace.solutions.len() > MAX_LISTED_SOLUTIONS {
        let _ = writeln!(
            out,
            "  ... {} more",
            trace.solutions.len() - MAX_LISTED_SOLUTIONS
        );
    }
    out
}

/// A coloring found by one engine but not another.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub coloring: Coloring,
    pub named: String,
    /// Whether the coloring is proper, per the oracle's check.
    pub proper: bool,
    pub found_by: Vec<String>,
    pub missing_from: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EngineResult {
    pub engine: String,
    pub count: usize,
    pub colorable: bool,
    pub peak_tube_size: Option<u64>,
    pub agrees_with_oracle: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareReport {
    pub graph: String,
    pub n: u32,
    pub m: usize,
    pub k: Color,
    pub agree: bool,
    pub engines: Vec<EngineResult>,
    pub search_space: Option<u64>,
    pub reduction_factor: Option<f64>,
    pub counterexample: Option<Counterexample>,
}

impl CompareReport {
    /// Builds the report from each engine's name, solution set, colorable
    /// flag and peak. The first engine is the reference.
    pub fn build(
        graph: String,
        n: u32,
        m: usize,
        k: Color,
        engines: &[(&str, &BTreeSet<Coloring>, bool, Option<u64>)],
        is_proper: impl Fn(&[Color]) -> bool,
    ) -> CompareReport {
        let (_, reference, reference_colorable, _) = engines[0];
        let results: Vec<EngineResult> = engines
            .iter()
            .map(|&(name, set, colorable, peak)| EngineResult {
                engine: name.to_string(),
                count: set.len(),
                colorable,
                peak_tube_size: peak,
                agrees_with_oracle: set == reference && colorable == reference_colorable,
            })
            .collect();
        let agree = results.iter().all(|r| r.agrees_with_oracle);

        // Smallest coloring any two engines disagree on.
        let counterexample = engines
            .iter()
            .flat_map(|&(_, set, _, _)| set.symmetric_difference(reference))
            .min()
            .map(|coloring| Counterexample {
                coloring: coloring.clone(),
                named: describe_coloring(coloring),
                proper: is_proper(coloring),
                found_by: engines
                    .iter()
                    .filter(|(_, set, _, _)| set.contains(coloring))
                    .map(|(name, ..)| name.to_string())
                    .collect(),
                missing_from: engines
                    .iter()
                    .filter(|(_, set, _, _)| !set.contains(coloring))
                    .map(|(name, ..)| name.to_string())
                    .collect(),
            });

        let space = search_space(n, k);
        let incremental_peak = results
            .iter()
            .find(|r| r.engine == "incremental")
            .and_then(|r| r.peak_tube_size);
        CompareReport {
            graph,
            n,
            m,
            k,
            agree,
            search_space: space,
            reduction_factor: incremental_peak.and_then(|p| reduction_factor(space, p)),
            engines: results,
            counterexample,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "graph: {} (n = {}, m = {}), k = {}",
            self.graph, self.n, self.m, self.k
        );
        let _ = writeln!(
            out,
            "{:<12} {:>10} {:>10} {:>12} {:>7}",
            "engine", "solutions", "colorable", "peak", "agrees"
        );
        for r in &self.engines {
            let peak = r
                .peak_tube_size
                .map_or_else(|| "-".to_string(), |p| p.to_string());
            let _ = writeln!(
                out,
                "{:<12} {:>10} {:>10} {:>12} {:>7}",
                r.engine, r.count, r.colorable, peak, r.agrees_with_oracle
            );
        }
        if let Some(space) = self.search_space {
            let _ = writeln!(out, "k^n: {space}");
        }
        match self.reduction_factor {
            Some(r) => {
                let _ = writeln!(out, "reduction factor: {r:.2}x");
            }
            None => {
                let _ = writeln!(out, "reduction factor: n/a");
            }
        }
        let _ = writeln!(out, "agree: {}", self.agree);
        if let Some(cx) = &self.counterexample {
            let _ = writeln!(
                out,
                "counterexample: [{}] ({}), proper: {}, found by: {}, missing from: {}",
                cx.coloring
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(", "),
                cx.named,
                cx.proper,
                cx.found_by.join(", "),
                cx.missing_from.join(", ")
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }
}

#[derive(Serialize)]
struct ValidationDoc<'a> {
    #[serde(flatten)]
    report: &'a ValidationReport,
    ok: bool,
}

pub fn validation_json(report: &ValidationReport) -> String {
    let mut out = serde_json::to_string_pretty(&ValidationDoc {
        report,
        ok: report.ok(),
    })
    .expect("report serializes");
    out.push('\n');
    out
}

pub fn validation_text(label: &str, report: &ValidationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "codebook: {label}");
    let _ = writeln!(out, "duplicates: {}", report.duplicates.len());
    for (a, b) in &report.duplicates {
        let _ = writeln!(out, "  {a} == {b}");
    }
    let _ = writeln!(
        out,
        "junction violations: {}",
        report.junction_violations.len()
    );
    for v in &report.junction_violations {
        let _ = writeln!(
            out,
            "  {} inside {} + {} at offset {}",
            v.codeword, v.left, v.right, v.offset
        );
    }
    match report.min_pairwise_hamming {
        Some(d) => {
            let _ = writeln!(out, "min pairwise hamming: {d}");
        }
        None => {
            let _ = writeln!(out, "min pairwise hamming: n/a");
        }
    }
    let _ = writeln!(out, "ok: {}", report.ok());
    out
}
