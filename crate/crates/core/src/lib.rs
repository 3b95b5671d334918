//! A logical simulator of the Adleman-Lipton DNA computing model, and graph
//! k-coloring on top of it.
//!
//! - [`graph`]: problem instances and the DIMACS `.col` format.
//! - [`codec`]: DNA codewords, codebooks, and strand encode/render/decode.
//! - [`tube`]: tubes and the six machine operations with op accounting.
//! - [`solver`]: incremental (vertex-by-vertex, pruning) and monolithic
//!   (full `k^n` space) coloring runs, with per-step traces.
//! - [`oracle`]: an independent backtracking enumerator of proper colorings.
//!
//! The crate is `no_std` and needs only `alloc`.
#![no_std]

extern crate alloc;

pub mod codec;
pub mod graph;
pub mod multiset;
pub mod oracle;
pub mod solver;
pub mod tube;

pub use codec::{
    builtin_table1, decode_strand, encode_assignment, generate_codebook, render, validate_codebook,
    Codebook, Codeword, Color, DnaSequence, Strand, Token, ValidationReport,
};
pub use graph::{builtin_graph, parse_dimacs, render_dimacs, Graph, Vertex};
pub use multiset::Multiset;
pub use oracle::{count_colorings, enumerate_colorings, is_proper, Coloring};
pub use solver::{
    solve_incremental, solve_monolithic, step_census, SolutionSet, SolveError, SolveMode,
    SolveOptions, StepRecord, Trace,
};
pub use tube::{Machine, MachineFault, MatchMode, OpCounter, Tube};
