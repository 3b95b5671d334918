use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use helix::commands::{
    cmd_codebook_generate, cmd_codebook_validate, cmd_compare, cmd_solve, GenerateParams,
};
use helix::config::{CodebookSource, GraphSource, ModeChoice, OrderSpec, RunConfig};
use helix_core::tube::MatchMode;

#[derive(Parser)]
#[command(name = "helix", version, about = "Tube-machine graph coloring")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and print a summary.
    Solve(RunArgs),
    /// Check both solvers against exhaustive enumeration.
    Compare(RunArgs),
    /// Generate or validate codebooks.
    #[command(subcommand)]
    Codebook(CodebookCommand),
}

#[derive(Args)]
struct RunArgs {
    /// DIMACS file, builtin:NAME or random:n,p,seed.
    #[arg(long)]
    graph: GraphSource,
    #[arg(long, short = 'k')]
    colors: u32,
    /// Ignored by compare, which always runs every engine.
    #[arg(long, value_enum, default_value = "incremental")]
    mode: ModeChoice,
    /// table1, gen:len,seed or a codebook JSON file. Defaults to table1
    /// when it covers the instance, otherwise gen:20,1.
    #[arg(long, default_value = "auto")]
    codebook: CodebookSource,
    #[arg(long = "match", default_value = "symbolic")]
    match_mode: MatchMode,
    /// natural, or a comma-separated permutation of the vertices.
    #[arg(long, default_value = "natural")]
    order: OrderSpec,
    /// Write the run trace as JSON.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Drop the extract with this sequence number (fault injection).
    #[arg(long, hide = true)]
    inject_skip_extract: Option<u64>,
}

impl RunArgs {
    fn into_config(self) -> RunConfig {
        RunConfig {
            graph: self.graph,
            k: self.colors,
            mode: self.mode,
            codebook: self.codebook,
            match_mode: self.match_mode,
            order: self.order,
            trace: self.trace,
            json: self.json,
            skip_extract: self.inject_skip_extract,
        }
    }
}

#[derive(Subcommand)]
enum CodebookCommand {
    /// Write a seeded, junction-safe codebook as JSON.
    Generate {
        #[arg(long, short = 'n')]
        vertices: u32,
        #[arg(long, short = 'k')]
        colors: u32,
        #[arg(long, default_value_t = 20)]
        length: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a codebook for duplicates and junction collisions.
    Validate {
        /// table1, gen:len,seed or a codebook JSON file.
        #[arg(long, default_value = "table1")]
        codebook: CodebookSource,
        /// Size of a gen: codebook.
        #[arg(long, short = 'n', default_value_t = 12)]
        vertices: u32,
        #[arg(long, short = 'k', default_value_t = 3)]
        colors: u32,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = io::stdout().lock();
    let mut err = io::stderr().lock();
    let code = match cli.command {
        Command::Solve(args) => cmd_solve(&args.into_config(), &mut out, &mut err),
        Command::Compare(args) => cmd_compare(&args.into_config(), &mut out, &mut err),
        Command::Codebook(CodebookCommand::Generate {
            vertices,
            colors,
            length,
            seed,
            out: path,
        }) => cmd_codebook_generate(
            &GenerateParams {
                n: vertices,
                k: colors,
                length,
                seed,
                out: path,
            },
            &mut out,
            &mut err,
        ),
        Command::Codebook(CodebookCommand::Validate {
            codebook,
            vertices,
            colors,
            json,
        }) => cmd_codebook_validate(&codebook, vertices, colors, json, &mut out, &mut err),
    };
    ExitCode::from(code as u8)
}
