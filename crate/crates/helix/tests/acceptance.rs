//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Tolerances and cohort definitions are pinned below.

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use helix::config::CodebookSource;
use helix::formats::codebook_to_json;
use helix::random::random_graph;
use helix::report::{validation_json, CompareReport};
use helix_core::codec::{
    builtin_table1, decode_strand, generate_codebook, render, validate_codebook, Codebook, Color,
    Strand, Token,
};
use helix_core::graph::{builtin_graph, Graph, Vertex};
use helix_core::oracle::{enumerate_colorings, is_proper, Coloring};
use helix_core::solver::{
    solve_incremental, solve_monolithic, step_census, SolutionSet, SolveOptions, Trace,
};
use helix_core::tube::{Machine, MatchMode, OpCounter};
use helix_core::Multiset;
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUILTINS: [&str; 6] = ["k3", "k4", "p4", "c5", "k33", "petersen"];
const RANDOM_SUITE: u64 = 20;
const RANDOM_P: f64 = 0.4;
const COLORS: [Color; 3] = [2, 3, 4];

const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(10);
const MONOLITHIC_LIMIT: u64 = 2_000_000;

const COHORT_N: Vertex = 10;
const COHORT_K: Color = 3;
const COHORT_SIZE: u64 = 20;
const COHORT_SEED_BASE: u64 = 1000;
const MEDIAN_REDUCTION_FLOOR: f64 = 10.0;

const MACHINE_CASES: u32 = 1000;
const MODE_TUBES: u32 = 500;
const MODE_SEEDS: [u64; 5] = [1, 2, 3, 4, 5];
const ROUND_TRIP_CASES: u32 = 1000;
const PERMUTATIONS: usize = 10;

struct Case {
    name: String,
    graph: Graph,
}

/// Builtins, then `random_i = G(4 + i mod 7, 0.4, seed i)` for `i < 20`.
fn suite() -> Vec<Case> {
    let mut cases: Vec<Case> = BUILTINS
        .iter()
        .map(|&name| Case {
            name: format!("builtin:{name}"),
            graph: builtin_graph(name).unwrap(),
        })
        .collect();
    for i in 0..RANDOM_SUITE {
        let n = 4 + (i % 7) as Vertex;
        cases.push(Case {
            name: format!("random:{n},{RANDOM_P},{i}"),
            graph: random_graph(n, RANDOM_P, i).unwrap(),
        });
    }
    cases
}

fn codebook_for(g: &Graph, k: Color) -> Codebook {
    CodebookSource::Auto.load(g.vertex_count(), k).unwrap()
}

struct Run {
    case: usize,
    k: Color,
    solutions: SolutionSet,
    trace: Trace,
}

fn closed_form_ops(g: &Graph, k: Color, order: &[Vertex]) -> OpCounter {
    let n = order.len() as u64;
    let m = g.edge_count() as u64;
    let k = u64::from(k);
    let with_earlier = order
        .iter()
        .enumerate()
        .filter(|&(pos, &v)| order[..pos].iter().any(|&u| g.adjacent(u, v)))
        .count() as u64;
    OpCounter {
        append: n * k,
        copy: n,
        merge: n + k * (m - with_earlier),
        extract: k * m,
        detect: 1,
        discard: k * with_earlier,
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(failures: &[String], summary: String) -> Outcome {
        if failures.is_empty() {
            Outcome {
                pass: true,
                detail: summary,
            }
        } else {
            let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
            Outcome {
                pass: false,
                detail: format!(
                    "{summary}; {} failure(s): {}",
                    failures.len(),
                    shown.join("; ")
                ),
            }
        }
    }
}

fn oracle_equivalence(cases: &[Case]) -> (Outcome, Vec<Run>) {
    let start = Instant::now();
    let mut runs = Vec::new();
    let mut failures = Vec::new();
    for (i, case) in cases.iter().enumerate() {
        for k in COLORS {
            let cb = codebook_for(&case.graph, k);
            let (solutions, trace) =
                solve_incremental(&case.graph, k, &cb, &SolveOptions::default()).unwrap();
            let expected: BTreeSet<Coloring> = enumerate_colorings(&case.graph, k)
                .unwrap()
                .into_iter()
                .collect();
            if solutions.colorings != expected || solutions.colorable == expected.is_empty() {
                failures.push(format!(
                    "{} k={k}: {} vs oracle {}",
                    case.name,
                    solutions.len(),
                    expected.len()
                ));
            }
            runs.push(Run {
                case: i,
                k,
                solutions,
                trace,
            });
        }
    }
    let elapsed = start.elapsed();
    if elapsed > ORACLE_TIME_LIMIT {
        failures.push(format!("took {elapsed:?}, limit {ORACLE_TIME_LIMIT:?}"));
    }
    (
        Outcome::new(&failures, format!("{} runs in {:.2?}", runs.len(), elapsed)),
        runs,
    )
}

fn mode_equivalence(cases: &[Case], runs: &[Run]) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for run in runs {
        let g = &cases[run.case].graph;
        let fits = u64::from(run.k)
            .checked_pow(g.vertex_count())
            .is_some_and(|s| s <= MONOLITHIC_LIMIT);
        if !fits {
            continue;
        }
        let (mono, _) = solve_monolithic(
            g,
            run.k,
            &codebook_for(g, run.k),
            MatchMode::Symbolic,
            MONOLITHIC_LIMIT,
        )
        .unwrap();
        checked += 1;
        if mono != run.solutions {
            failures.push(format!("{} k={}", cases[run.case].name, run.k));
        }
    }
    Outcome::new(
        &failures,
        format!("{checked} instances with k^n <= {MONOLITHIC_LIMIT}"),
    )
}

fn checkpoints() -> Outcome {
    let solve = |name: &str| {
        let g = builtin_graph(name).unwrap();
        solve_incremental(&g, 3, &builtin_table1(), &SolveOptions::default()).unwrap()
    };
    let mut failures = Vec::new();
    let (k3, k3_trace) = solve("k3");
    if k3.len() != 6 || k3_trace.peak_tube_size != 18 {
        failures.push(format!(
            "k3: {} solutions, peak {}",
            k3.len(),
            k3_trace.peak_tube_size
        ));
    }
    let (k4, _) = solve("k4");
    if k4.colorable {
        failures.push("k4 reported colorable".to_string());
    }
    let (c5, _) = solve("c5");
    // Proper 3-colorings of a 5-cycle: 2^5 - 2.
    if c5.len() != 30 {
        failures.push(format!("c5: {} solutions", c5.len()));
    }
    Outcome::new(
        &failures,
        format!(
            "k3: {} solutions, peak {}; k4 colorable={}; c5: {} solutions",
            k3.len(),
            k3_trace.peak_tube_size,
            k4.colorable,
            c5.len()
        ),
    )
}

fn prefix_law(cases: &[Case], runs: &[Run]) -> Outcome {
    let mut failures = Vec::new();
    let mut steps = 0;
    for run in runs {
        let g = &cases[run.case].graph;
        for (i, step) in run.trace.steps.iter().enumerate() {
            steps += 1;
            let expected = step_census(g, run.k, &run.trace.order, i + 1).unwrap();
            if step.t0_after != expected {
                failures.push(format!(
                    "{} k={} step {}: {} vs {expected}",
                    cases[run.case].name,
                    run.k,
                    i + 1,
                    step.t0_after
                ));
            }
        }
    }
    Outcome::new(&failures, format!("{steps} steps checked"))
}

fn median(mut values: Vec<f64>) -> f64 {
    values.sort_by(|a, b| a.total_cmp(b));
    let mid = values.len() / 2;
    if values.len() % 2 == 0 {
        (values[mid - 1] + values[mid]) / 2.0
    } else {
        values[mid]
    }
}

fn pruning(cases: &[Case], runs: &[Run]) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for run in runs {
        let g = &cases[run.case].graph;
        if g.edge_count() == 0 || g.vertex_count() < 3 {
            continue;
        }
        checked += 1;
        let space = u64::from(run.k).pow(g.vertex_count());
        if run.trace.peak_tube_size >= space {
            failures.push(format!(
                "{} k={}: peak {} vs k^n {space}",
                cases[run.case].name, run.k, run.trace.peak_tube_size
            ));
        }
        // The compare report carries the factor.
        let oracle = &run.solutions.colorings;
        let report = CompareReport::build(
            cases[run.case].name.clone(),
            g.vertex_count(),
            g.edge_count(),
            run.k,
            &[
                ("oracle", oracle, run.solutions.colorable, None),
                (
                    "incremental",
                    oracle,
                    run.solutions.colorable,
                    Some(run.trace.peak_tube_size),
                ),
            ],
            |c| is_proper(g, c).unwrap_or(false),
        );
        if !report.to_text().contains("reduction factor: ") || report.reduction_factor.is_none() {
            failures.push(format!(
                "{}: no reduction factor in report",
                cases[run.case].name
            ));
        }
    }

    let mut factors = Vec::new();
    for i in 0..COHORT_SIZE {
        let g = random_graph(COHORT_N, RANDOM_P, COHORT_SEED_BASE + i).unwrap();
        let cb = codebook_for(&g, COHORT_K);
        let (_, trace) = solve_incremental(&g, COHORT_K, &cb, &SolveOptions::default()).unwrap();
        factors.push(u64::from(COHORT_K).pow(COHORT_N) as f64 / trace.peak_tube_size as f64);
    }
    let med = median(factors.clone());
    let lo = factors.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = factors.iter().copied().fold(0.0, f64::max);
    if med <= MEDIAN_REDUCTION_FLOOR {
        failures.push(format!(
            "cohort median reduction {med:.2}x <= {MEDIAN_REDUCTION_FLOOR}x"
        ));
    }
    Outcome::new(
        &failures,
        format!(
            "{checked} runs with peak < k^n; cohort G({COHORT_N}, {RANDOM_P}) k={COHORT_K}: median reduction {med:.2}x (min {lo:.2}x, max {hi:.2}x)"
        ),
    )
}

/// Strands over `1..=n`, vertices increasing, each present or absent.
fn arb_strand(n: Vertex, k: Color) -> impl Strategy<Value = Strand> {
    vec(proptest::option::of(0..k), n as usize).prop_map(|colors| {
        Strand::from_tokens(
            colors
                .into_iter()
                .enumerate()
                .filter_map(|(i, c)| c.map(|c| Token::new(i as Vertex + 1, c)))
                .collect(),
        )
    })
}

fn runner(cases: u32, salt: u8) -> TestRunner {
    let mut seed = [0u8; 32];
    seed[0] = salt;
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::from_seed(RngAlgorithm::ChaCha, &seed),
    )
}

fn machine_laws() -> Outcome {
    let cb = generate_codebook(6, 3, 16, 11).unwrap();
    let mut failures = Vec::new();

    let extract = runner(MACHINE_CASES, 1).run(
        &(vec(arb_strand(6, 3), 0..40), 1..=6u32, 0..3u32),
        |(strands, vertex, color)| {
            let before: Multiset<Strand> = strands.into_iter().collect();
            let cw = cb.get(vertex, color).unwrap();
            let mut m = Machine::new();
            let mut t = m.tube_with("t", before.clone());
            let (plus, minus) = m.extract(&mut t, cw, MatchMode::Symbolic, &cb).unwrap();
            prop_assert!(t.is_empty());
            prop_assert!(plus.strands().all(|(s, _)| s.contains(cw.token())));
            prop_assert!(minus.strands().all(|(s, _)| !s.contains(cw.token())));
            prop_assert_eq!(
                plus.contents().clone().union(minus.contents().clone()),
                before
            );
            Ok(())
        },
    );
    if let Err(e) = extract {
        failures.push(format!("extract partition: {e}"));
    }

    let conserve = runner(MACHINE_CASES, 2).run(
        &(
            vec(arb_strand(6, 3), 0..30),
            vec(arb_strand(6, 3), 0..30),
            1usize..5,
        ),
        |(a, b, count)| {
            let a: Multiset<Strand> = a.into_iter().collect();
            let b: Multiset<Strand> = b.into_iter().collect();
            let mut m = Machine::new();
            let mut src = m.tube_with("src", a.clone());
            let mut copies = m.copy(&mut src, count).unwrap();
            prop_assert!(src.is_empty());
            prop_assert!(copies.iter().all(|c| c.contents() == &a));
            let mut dest = m.tube_with("dest", b.clone());
            m.merge(&mut dest, &mut copies).unwrap();
            prop_assert_eq!(dest.len(), b.len() + a.len() * count as u64);
            prop_assert!(copies.iter().all(|c| c.is_empty()));
            prop_assert_eq!(m.live_strands(), dest.len());
            Ok(())
        },
    );
    if let Err(e) = conserve {
        failures.push(format!("copy/merge conservation: {e}"));
    }

    // Strands over vertices 1..=5 so that vertex 6 is always new.
    let append = runner(MACHINE_CASES, 3).run(
        &(vec(arb_strand(5, 3), 0..40), 0..3u32),
        |(strands, color)| {
            let before: Multiset<Strand> = strands.into_iter().collect();
            let cw = cb.get(6, color).unwrap();
            let mut m = Machine::new();
            let mut t = m.tube_with("t", before.clone());
            m.append(&mut t, cw).unwrap();
            prop_assert_eq!(t.len(), before.len());
            prop_assert_eq!(t.contents().distinct(), before.distinct());
            prop_assert!(t
                .strands()
                .all(|(s, _)| s.tokens().last() == Some(&cw.token())));
            Ok(())
        },
    );
    if let Err(e) = append {
        failures.push(format!("append cardinality: {e}"));
    }

    Outcome::new(
        &failures,
        format!("{MACHINE_CASES} cases each for extract, copy/merge, append"),
    )
}

fn artifact_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR"))
}

fn mode_agreement() -> Outcome {
    let mut failures = Vec::new();
    let table1 = builtin_table1();
    let table1_report = validate_codebook(&table1);
    let artifact = artifact_dir().join("table1_validation.json");
    if let Err(e) = fs::write(&artifact, validation_json(&table1_report)) {
        failures.push(format!("writing {}: {e}", artifact.display()));
    }

    let mut books: Vec<(String, Codebook)> = MODE_SEEDS
        .iter()
        .map(|&seed| {
            (
                format!("gen:20,{seed}"),
                generate_codebook(8, 3, 20, seed).unwrap(),
            )
        })
        .collect();
    if table1_report.ok() {
        books.push(("table1".to_string(), table1));
    }

    for (i, (label, cb)) in books.iter().enumerate() {
        if !validate_codebook(cb).ok() {
            failures.push(format!("{label} does not validate"));
            continue;
        }
        let n = cb.vertex_count();
        let result = runner(MODE_TUBES, 10 + i as u8).run(
            &(vec(arb_strand(n, 3), 0..30), 1..=n, 0..3u32),
            |(strands, vertex, color)| {
                let tube: Multiset<Strand> = strands.into_iter().collect();
                let cw = cb.get(vertex, color).unwrap();
                let mut m = Machine::new();
                let mut a = m.tube_with("a", tube.clone());
                let mut b = m.tube_with("b", tube);
                let (ap, an) = m.extract(&mut a, cw, MatchMode::Symbolic, cb).unwrap();
                let (bp, bn) = m.extract(&mut b, cw, MatchMode::Nucleotide, cb).unwrap();
                prop_assert_eq!(ap.contents(), bp.contents());
                prop_assert_eq!(an.contents(), bn.contents());
                Ok(())
            },
        );
        if let Err(e) = result {
            failures.push(format!("{label}: {e}"));
        }
    }
    let labels: Vec<&str> = books.iter().map(|(l, _)| l.as_str()).collect();
    Outcome::new(
        &failures,
        format!(
            "{MODE_TUBES} tubes each over [{}]; table1 validation ok={} (min hamming {:?}), written to {}",
            labels.join(", "),
            table1_report.ok(),
            table1_report.min_pairwise_hamming,
            artifact.display()
        ),
    )
}

fn op_counts(cases: &[Case], runs: &[Run]) -> Outcome {
    let mut failures = Vec::new();
    for run in runs {
        let g = &cases[run.case].graph;
        let expected = closed_form_ops(g, run.k, &run.trace.order);
        if run.trace.op_totals != expected {
            failures.push(format!(
                "{} k={}: {:?} vs {expected:?}",
                cases[run.case].name, run.k, run.trace.op_totals
            ));
        }
    }
    Outcome::new(
        &failures,
        format!("{} runs match the closed form", runs.len()),
    )
}

fn order_invariance(cases: &[Case], runs: &[Run]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut failures = Vec::new();
    let mut solved = 0;
    for run in runs {
        let g = &cases[run.case].graph;
        let cb = codebook_for(g, run.k);
        for _ in 0..PERMUTATIONS {
            let mut order: Vec<Vertex> = g.vertices().collect();
            order.shuffle(&mut rng);
            let opts = SolveOptions {
                order: Some(order.clone()),
                ..SolveOptions::default()
            };
            let (solutions, trace) = solve_incremental(g, run.k, &cb, &opts).unwrap();
            solved += 1;
            if solutions != run.solutions {
                failures.push(format!(
                    "{} k={} order {order:?}",
                    cases[run.case].name, run.k
                ));
            }
            if trace.op_totals != closed_form_ops(g, run.k, &order) {
                failures.push(format!(
                    "{} k={} order {order:?}: op counts",
                    cases[run.case].name, run.k
                ));
            }
        }
    }
    Outcome::new(&failures, format!("{solved} permuted runs"))
}

fn codebook_round_trip() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let books: Vec<Codebook> = vec![
        builtin_table1(),
        generate_codebook(12, 4, 20, 1).unwrap(),
        generate_codebook(10, 3, 12, 2).unwrap(),
    ];
    for i in 0..ROUND_TRIP_CASES {
        let cb = &books[i as usize % books.len()];
        let mut tokens = Vec::new();
        for v in 1..=cb.vertex_count() {
            if rng.random_bool(0.8) {
                tokens.push(Token::new(v, rng.random_range(0..cb.color_count())));
            }
        }
        let strand = Strand::from_tokens(tokens);
        let decoded = render(&strand, cb).and_then(|dna| decode_strand(&dna, cb));
        if decoded.as_ref() != Ok(&strand) {
            failures.push(format!("{strand:?} -> {decoded:?}"));
        }
    }
    for (n, k, len, seed) in [(5, 3, 20, 1), (12, 4, 20, 7), (24, 4, 16, 99)] {
        let a = codebook_to_json(&generate_codebook(n, k, len, seed).unwrap());
        let b = codebook_to_json(&generate_codebook(n, k, len, seed).unwrap());
        if a != b {
            failures.push(format!(
                "generate({n}, {k}, {len}, {seed}) differs between runs"
            ));
        }
    }
    Outcome::new(
        &failures,
        format!("{ROUND_TRIP_CASES} strands, 3 generator parameter sets"),
    )
}

fn main() -> ExitCode {
    let cases = suite();
    let (c1, runs) = oracle_equivalence(&cases);
    let results = [
        ("oracle equivalence", c1),
        ("mode equivalence", mode_equivalence(&cases, &runs)),
        ("hand-derived checkpoints", checkpoints()),
        ("prefix law", prefix_law(&cases, &runs)),
        ("pruning", pruning(&cases, &runs)),
        ("machine laws", machine_laws()),
        ("symbolic/nucleotide agreement", mode_agreement()),
        ("operation counts", op_counts(&cases, &runs)),
        ("order invariance", order_invariance(&cases, &runs)),
        ("codebook round trip and determinism", codebook_round_trip()),
    ];
    let mut all = true;
    for (i, (name, outcome)) in results.iter().enumerate() {
        all &= outcome.pass;
        println!(
            "criterion {:>2} {}: {} ({})",
            i + 1,
            if outcome.pass { "PASS" } else { "FAIL" },
            name,
            outcome.detail
        );
    }
    if all {
        println!("acceptance: all {} criteria passed", results.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
