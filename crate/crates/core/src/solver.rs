//! Graph k-coloring on the tube machine.
//!
//! [`solve_incremental`] grows the solution space one vertex at a time and
//! pours out infeasible strands before they are extended.
//! [`solve_monolithic`] is the classical baseline: materialize all `k^n`
//! candidate strands, then filter edge by edge.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::codec::{color_name, decode_strand, render, Codebook, CodecError, Color, Strand, Token};
use crate::graph::{Graph, Vertex};
use crate::multiset::Multiset;
use crate::oracle::{self, Coloring, OracleError};
use crate::tube::{Machine, MachineFault, MatchMode, OpCounter, Tube};

/// Largest initial tube [`solve_monolithic`] builds unless told otherwise.
pub const DEFAULT_MONOLITHIC_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum SolveMode {
    Incremental,
    Monolithic,
}

impl SolveMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveMode::Incremental => "incremental",
            SolveMode::Monolithic => "monolithic",
        }
    }
}

impl fmt::Display for SolveMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How the starting material was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Construction {
    /// Built by machine operations from a single blank strand.
    Stepwise,
    /// Enumerated outside the machine and poured in as one tube; only the
    /// filtering phase is counted.
    Synthetic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct StepRecord {
    pub vertex: Vertex,
    pub t0_before: u64,
    pub per_color_after_append: Vec<u64>,
    pub per_color_after_filter: Vec<u64>,
    pub discarded: u64,
    pub t0_after: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct GraphSummary {
    pub n: Vertex,
    pub m: usize,
}

/// Everything a run did, in the shape written to trace files.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct Trace {
    pub graph: GraphSummary,
    pub k: Color,
    pub order: Vec<Vertex>,
    pub mode: SolveMode,
    pub construction: Construction,
    pub steps: Vec<StepRecord>,
    pub op_totals: OpCounter,
    /// Most strands alive across all tubes at once.
    pub peak_tube_size: u64,
    pub colorable: bool,
    pub solutions: Vec<Coloring>,
}

/// Decoded colorings read out of the final tube.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolutionSet {
    pub colorings: BTreeSet<Coloring>,
    pub colorable: bool,
}

impl SolutionSet {
    pub fn len(&self) -> usize {
        self.colorings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colorings.is_empty()
    }
}

/// Renders a coloring as `red green blue ...`.
pub fn describe_coloring(coloring: &[Color]) -> String {
    let names: Vec<_> = coloring.iter().map(|&c| color_name(c)).collect();
    names.join(" ")
}

#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    pub match_mode: MatchMode,
    /// Vertex processing order; natural order when `None`.
    pub order: Option<Vec<Vertex>>,
    /// Test hook: skip the extract with this zero-based sequence number.
    #[doc(hidden)]
    pub skip_extract: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("need at least one color")]
    NoColors,
    #[error("codebook covers {have_n} vertices x {have_k} colors; the run needs {n} x {k}")]
    CodebookMismatch {
        n: Vertex,
        k: Color,
        have_n: Vertex,
        have_k: Color,
    },
    #[error("nucleotide matching needs a codebook that passed validation")]
    UnsoundCodebook,
    #[error("vertex order is not a permutation of 1..={0}")]
    BadOrder(Vertex),
    #[error("full solution space of {k}^{n} strands exceeds the budget of {budget}")]
    BudgetExceeded { n: Vertex, k: Color, budget: u64 },
    #[error("strand occurs more than once after step {0}")]
    Multiplicity(Vertex),
    #[error("final strand `{strand}` does not decode to a full coloring: {reason}")]
    Decode { strand: String, reason: String },
    #[error(transparent)]
    Machine(#[from] MachineFault),
}

fn check_inputs(g: &Graph, k: Color, cb: &Codebook, mode: MatchMode) -> Result<(), SolveError> {
    if k == 0 {
        return Err(SolveError::NoColors);
    }
    if !cb.covers(g.vertex_count(), k) {
        return Err(SolveError::CodebookMismatch {
            n: g.vertex_count(),
            k,
            have_n: cb.vertex_count(),
            have_k: cb.color_count(),
        });
    }
    if mode == MatchMode::Nucleotide && !cb.is_sound() {
        return Err(SolveError::UnsoundCodebook);
    }
    Ok(())
}

fn resolve_order(g: &Graph, order: Option<&[Vertex]>) -> Result<Vec<Vertex>, SolveError> {
    let n = g.vertex_count();
    let Some(order) = order else {
        return Ok(g.vertices().collect());
    };
    let distinct: BTreeSet<Vertex> = order.iter().copied().collect();
    let is_perm = order.len() == n as usize
        && distinct.len() == order.len()
        && distinct.iter().all(|&v| (1..=n).contains(&v));
    if is_perm {
        Ok(order.to_vec())
    } else {
        Err(SolveError::BadOrder(n))
    }
}

fn codeword(cb: &Codebook, vertex: Vertex, color: Color) -> &crate::codec::Codeword {
    cb.get(vertex, color)
        .expect("codebook coverage checked up front")
}

/// Reads every strand of the final tube back as a coloring of `1..=n`.
fn read_out(
    tube: &Tube,
    n: Vertex,
    cb: &Codebook,
    mode: MatchMode,
) -> Result<BTreeSet<Coloring>, SolveError> {
    let fail = |strand: &Strand, reason: String| SolveError::Decode {
        strand: format!("{:?}", strand.tokens()),
        reason,
    };
    let mut out = BTreeSet::new();
    for (strand, _) in tube.strands() {
        let tokens: Vec<Token> = match mode {
            MatchMode::Symbolic => strand.tokens().to_vec(),
            MatchMode::Nucleotide => {
                let dna =
                    render(strand, cb).map_err(|e: CodecError| fail(strand, e.to_string()))?;
                let decoded = decode_strand(&dna, cb).map_err(|e| fail(strand, e.to_string()))?;
                if &decoded != strand {
                    return Err(fail(strand, String::from("decoded tokens differ")));
                }
                decoded.tokens().to_vec()
            }
        };
        let mut coloring: Vec<Option<Color>> = vec![None; n as usize];
        for t in &tokens {
            let slot = coloring
                .get_mut((t.vertex as usize).wrapping_sub(1))
                .ok_or_else(|| fail(strand, format!("vertex {} out of range", t.vertex)))?;
            if slot.replace(t.color).is_some() {
                return Err(fail(strand, format!("vertex {} colored twice", t.vertex)));
            }
        }
        let coloring = coloring
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or_else(|| fail(strand, format!("vertex {} uncolored", i + 1))))
            .collect::<Result<Coloring, _>>()?;
        out.insert(coloring);
    }
    Ok(out)
}

fn color_label(color: Color) -> String {
    format!("T_{}", color_name(color))
}

/// Colors the vertices one at a time. Each step copies the working tube
/// into one tube per color, appends that color's codeword for the new
/// vertex, pours out strands that clash with an earlier adjacent vertex,
/// and merges the survivors back.
///
/// The working tube starts with one blank strand so that the first round
/// of appends has something to extend.
pub fn solve_incremental(
    g: &Graph,
    k: Color,
    cb: &Codebook,
    options: &SolveOptions,
) -> Result<(SolutionSet, Trace), SolveError> {
    check_inputs(g, k, cb, options.match_mode)?;
    let order = resolve_order(g, options.order.as_deref())?;
    let mode = options.match_mode;

    let labels: Vec<String> = (0..k).map(color_label).collect();
    let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
    let bad_labels: Vec<String> = (0..k).map(|c| format!("{}_bad", color_label(c))).collect();

    let mut machine = Machine::new();
    let mut t0 = machine.tube_with("T_0", [Strand::new()].into_iter().collect());
    let mut steps = Vec::with_capacity(order.len());
    let mut extract_seq = 0u64;

    for (pos, &vi) in order.iter().enumerate() {
        let t0_before = t0.len();
        let mut tubes = machine.copy_labeled(&mut t0, &labels)?;
        for (color, tube) in (0..k).zip(tubes.iter_mut()) {
            machine.append(tube, codeword(cb, vi, color))?;
            if !tube.is_set() {
                return Err(SolveError::Multiplicity(vi));
            }
        }
        let per_color_after_append: Vec<u64> = tubes.iter().map(Tube::len).collect();

        // Successive extracts for one color accumulate into a single bad tube.
        let mut bad: Vec<Option<Tube>> = vec![None; k as usize];
        for &vj in order[..pos].iter().filter(|&&vj| g.adjacent(vi, vj)) {
            for color in 0..k {
                let seq = extract_seq;
                extract_seq += 1;
                if options.skip_extract == Some(seq) {
                    continue;
                }
                let c = color as usize;
                let (plus, minus) = machine.extract_labeled(
                    &mut tubes[c],
                    codeword(cb, vj, color),
                    mode,
                    cb,
                    (&bad_labels[c], labels[c]),
                )?;
                tubes[c] = minus;
                match bad[c].as_mut() {
                    None => bad[c] = Some(plus),
                    Some(acc) => machine.merge(acc, &mut [plus])?,
                }
            }
        }
        let per_color_after_filter: Vec<u64> = tubes.iter().map(Tube::len).collect();

        machine.merge(&mut t0, &mut tubes)?;
        for tube in bad.into_iter().flatten() {
            machine.discard(tube)?;
        }
        if !t0.is_set() {
            return Err(SolveError::Multiplicity(vi));
        }

        let appended: u64 = per_color_after_append.iter().sum();
        steps.push(StepRecord {
            vertex: vi,
            t0_before,
            discarded: appended - t0.len(),
            t0_after: t0.len(),
            per_color_after_append,
            per_color_after_filter,
        });
    }

    let colorable = machine.detect(&t0)?;
    let colorings = read_out(&t0, g.vertex_count(), cb, mode)?;
    let trace = Trace {
        graph: GraphSummary {
            n: g.vertex_count(),
            m: g.edge_count(),
        },
        k,
        order,
        mode: SolveMode::Incremental,
        construction: Construction::Stepwise,
        steps,
        op_totals: machine.counter(),
        peak_tube_size: machine.peak_strands(),
        colorable,
        solutions: colorings.iter().cloned().collect(),
    };
    Ok((
        SolutionSet {
            colorings,
            colorable,
        },
        trace,
    ))
}

/// Every total assignment of `k` colors to `1..=n`, as strands in
/// lexicographic order.
fn full_space(n: Vertex, k: Color) -> Multiset<Strand> {
    let mut current = vec![Strand::new()];
    for vertex in 1..=n {
        current = current
            .into_iter()
            .flat_map(|s| {
                (0..k).map(move |color| {
                    let mut next = s.clone();
                    next.push(Token::new(vertex, color));
                    next
                })
            })
            .collect();
    }
    current.into_iter().collect()
}

/// Builds the full `k^n` tube, then for each edge `(u, v)` and color `c`
/// pours out the strands holding both `(u, c)` and `(v, c)`.
pub fn solve_monolithic(
    g: &Graph,
    k: Color,
    cb: &Codebook,
    match_mode: MatchMode,
    budget: u64,
) -> Result<(SolutionSet, Trace), SolveError> {
    check_inputs(g, k, cb, match_mode)?;
    let n = g.vertex_count();
    let space = u64::from(k)
        .checked_pow(n)
        .filter(|&size| size <= budget)
        .ok_or(SolveError::BudgetExceeded { n, k, budget })?;

    let mut machine = Machine::new();
    let mut t = machine.tube_with("T", full_space(n, k));
    debug_assert_eq!(t.len(), space);

    for (u, v) in g.edges() {
        for color in 0..k {
            let (mut with_u, rest) = machine.extract_labeled(
                &mut t,
                codeword(cb, u, color),
                match_mode,
                cb,
                ("T_u", "T"),
            )?;
            let (bad, ok) = machine.extract_labeled(
                &mut with_u,
                codeword(cb, v, color),
                match_mode,
                cb,
                ("T_bad", "T_ok"),
            )?;
            t = rest;
            machine.merge(&mut t, &mut [ok])?;
            machine.discard(bad)?;
        }
    }

    let colorable = machine.detect(&t)?;
    let colorings = read_out(&t, n, cb, match_mode)?;
    let trace = Trace {
        graph: GraphSummary {
            n,
            m: g.edge_count(),
        },
        k,
        order: g.vertices().collect(),
        mode: SolveMode::Monolithic,
        construction: Construction::Synthetic,
        steps: Vec::new(),
        op_totals: machine.counter(),
        peak_tube_size: machine.peak_strands(),
        colorable,
        solutions: colorings.iter().cloned().collect(),
    };
    Ok((
        SolutionSet {
            colorings,
            colorable,
        },
        trace,
    ))
}

/// Survivors expected after step `i` of an incremental run: the number of
/// proper colorings of the subgraph induced by the first `i` vertices of
/// `order`. Step 0 is the single blank strand.
pub fn step_census(g: &Graph, k: Color, order: &[Vertex], i: usize) -> Result<u64, OracleError> {
    if i == 0 {
        return Ok(1);
    }
    oracle::count_colorings(&g.induced(&order[..i]), k)
}
