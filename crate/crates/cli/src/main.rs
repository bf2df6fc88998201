//! `agforest`: agreement forests of two rooted trees from the command line.
//!
//! Exit codes: 0 success, 1 invalid forest or infeasible budget, 2 input error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use agforest::dfvs::write_edge_list;
use agforest::generate::{generate_pair, DEFAULT_CONTRACTION};
use agforest::maaf::{
    approximate_maaf_with, build_dfvs_instance, inheritance_graph, label_trees, maximalize, minimally_refine,
    DfvsMode, InheritanceGraph, MaafDiagnostics, MafMode,
};
use agforest::{approx, fpt, oracle, parse_forest, parse_newick, write_newick, Forest, PhyloTree};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser)]
#[command(name = "agforest", version, about = "Agreement forests of two rooted phylogenetic trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum agreement forest, approximate or exact
    Maf {
        #[command(flatten)]
        input: Pair,
        #[arg(long, value_enum, default_value_t = Mode::Approx)]
        mode: Mode,
        /// Largest k tried by the exact search (default: number of leaves)
        #[arg(long)]
        max_k: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Acyclic agreement forest; k bounds the hybridization number
    Maaf {
        #[command(flatten)]
        input: Pair,
        /// How the agreement forest of the first stage is computed
        #[arg(long, value_enum, default_value_t = Mode::Approx)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Dfvs::Exact)]
        dfvs: Dfvs,
        #[arg(long)]
        max_k: Option<usize>,
        /// Write the feedback vertex set instance as an edge list
        #[arg(long)]
        dump_dfvs: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Random tree pair related by prune-and-regraft moves
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        moves: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Probability of contracting each internal edge
        #[arg(long, default_value_t = DEFAULT_CONTRACTION)]
        contraction: f64,
        /// Output file for the first tree (stdout if absent)
        #[arg(long)]
        t1: Option<PathBuf>,
        /// Output file for the second tree (stdout if absent)
        #[arg(long)]
        t2: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Check a forest against two trees
    Validate {
        #[command(flatten)]
        input: Pair,
        /// Forest, one Newick tree per component
        #[arg(long)]
        forest: String,
        /// Also fail when the forest is cyclic
        #[arg(long)]
        require_acyclic: bool,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive reference solver for small instances
    Oracle {
        #[command(flatten)]
        input: Pair,
        #[arg(long, value_enum, default_value_t = Problem::Maf)]
        problem: Problem,
        #[arg(long)]
        json: bool,
    },
}

/// Trees are read from files; text that is not a file is parsed directly.
#[derive(Args)]
struct Pair {
    #[arg(long)]
    t1: String,
    #[arg(long)]
    t2: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Approx,
    Exact,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dfvs {
    Exact,
    Greedy,
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    Maf,
    Maaf,
}

/// A failed run: exit code and message.
struct Failure(u8, String);

impl From<agforest::Error> for Failure {
    fn from(e: agforest::Error) -> Self {
        use agforest::Error::*;
        let code = match e {
            Syntax { .. } | DuplicateLabel(_) | EmptyLabel | EmptyTree | EmptyCluster | LabelMismatch(_)
            | UnknownLabel(_) | GuardExceeded { .. } => 2,
            _ => 1,
        };
        Failure(code, e.to_string())
    }
}

/// Standard output of a run and its exit code.
struct Report(u8, String);

impl From<String> for Report {
    fn from(s: String) -> Self {
        Report(0, s)
    }
}

type Run = Result<Report, Failure>;

fn read_text(arg: &str) -> Result<String, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| Failure(2, format!("{arg}: {e}")))
    } else if arg.contains(['(', ')', ',', ';']) {
        Ok(arg.to_owned())
    } else {
        Err(Failure(2, format!("{arg}: no such file")))
    }
}

fn read_tree(arg: &str) -> Result<PhyloTree, Failure> {
    parse_newick(&read_text(arg)?).map_err(|e| Failure(2, format!("{arg}: {e}")))
}

fn read_pair(p: &Pair) -> Result<(PhyloTree, PhyloTree), Failure> {
    let (t1, t2) = (read_tree(&p.t1)?, read_tree(&p.t2)?);
    t1.same_leaf_set(&t2)?;
    Ok((t1, t2))
}

fn newick_lines(f: &Forest) -> Vec<String> {
    f.components().iter().map(write_newick).collect()
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn text_forest(out: &mut String, f: &Forest) {
    for line in newick_lines(f) {
        writeln!(out, "{line}").unwrap();
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct MafReport {
    mode: &'static str,
    components: usize,
    k: usize,
    cut_count: usize,
    valid: bool,
    forest: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    search_nodes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    within_branching_bound: Option<bool>,
}

fn cmd_maf(input: &Pair, mode: Mode, max_k: Option<usize>, json: bool) -> Run {
    let (t1, t2) = read_pair(input)?;
    let report = match mode {
        Mode::Approx => {
            let (forest, cuts) = approx::approximate_maf(&t1, &t2)?;
            MafReport {
                mode: "approx",
                components: forest.len(),
                k: forest.len() - 1,
                cut_count: cuts,
                valid: agforest::is_agreement_forest(&forest, &t1, &t2)?.is_valid(),
                forest: newick_lines(&forest),
                search_nodes: None,
                within_branching_bound: None,
            }
        }
        Mode::Exact => {
            let cap = max_k.unwrap_or(t1.leaf_count());
            let out = fpt::search_maf_exact(&t1, &t2, cap)?;
            let Some((forest, k)) = out.solution else {
                return Err(Failure(1, format!("no agreement forest with at most {cap} cuts")));
            };
            MafReport {
                mode: "exact",
                components: forest.len(),
                k,
                cut_count: k,
                valid: agforest::is_agreement_forest(&forest, &t1, &t2)?.is_valid(),
                forest: newick_lines(&forest),
                search_nodes: Some(out.stats.total_nodes()),
                within_branching_bound: Some(out.stats.within_branching_bound()),
            }
        }
    };
    if json {
        return Ok(to_json(&report).into());
    }
    let mut out = report.forest.iter().map(|l| format!("{l}\n")).collect::<String>();
    writeln!(out, "k = {}", report.k).unwrap();
    writeln!(out, "cuts = {}", report.cut_count).unwrap();
    writeln!(out, "valid = {}", report.valid).unwrap();
    if let Some(n) = report.search_nodes {
        writeln!(out, "search nodes = {n}").unwrap();
    }
    Ok(out.into())
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct MaafReport {
    maf_mode: MafMode,
    dfvs_mode: DfvsMode,
    hybridization_bound: usize,
    forest: Vec<String>,
    #[serde(flatten)]
    diagnostics: MaafDiagnostics,
}

fn cmd_maaf(input: &Pair, mode: Mode, dfvs: Dfvs, max_k: Option<usize>, dump: Option<&Path>, json: bool) -> Run {
    let (t1, t2) = read_pair(input)?;
    let maf_mode = match mode {
        Mode::Approx => MafMode::Approx,
        Mode::Exact => MafMode::Exact,
    };
    let dfvs_mode = match dfvs {
        Dfvs::Exact => DfvsMode::Exact,
        Dfvs::Greedy => DfvsMode::Greedy,
    };
    let r = approximate_maaf_with(&t1, &t2, maf_mode, dfvs_mode, max_k)?;
    if let Some(path) = dump {
        // Rebuild the instance from the maximal forest the pipeline used.
        let a0 = match maf_mode {
            MafMode::Approx => approx::approximate_maf(&t1, &t2)?.0,
            MafMode::Exact => fpt::solve_maf_exact(&t1, &t2, max_k.unwrap_or(t1.leaf_count()))?
                .expect("the pipeline succeeded within this budget")
                .0,
        };
        let a = minimally_refine(&t1, &t2, &maximalize(&t1, &t2, &a0)?)?;
        let d = build_dfvs_instance(&t1, &t2, &a, &label_trees(&t1, &t2, &a)?);
        std::fs::write(path, write_edge_list(&d)).map_err(|e| Failure(2, format!("{}: {e}", path.display())))?;
    }
    if json {
        return Ok(Report::from(to_json(&MaafReport {
            maf_mode,
            dfvs_mode,
            hybridization_bound: r.k,
            forest: newick_lines(&r.forest),
            diagnostics: r.diagnostics,
        })));
    }
    let d = &r.diagnostics;
    let mut out = String::new();
    text_forest(&mut out, &r.forest);
    writeln!(out, "k = {}", r.k).unwrap();
    writeln!(out, "hybridization number <= {}", r.k).unwrap();
    writeln!(out, "first-stage forest: k = {}, {} components after merging", d.maf_size, d.maximal_components)
        .unwrap();
    writeln!(out, "feedback set weight = {} over {} vertices", d.dfvs_weight, d.dfvs_vertices).unwrap();
    writeln!(out, "proper = {}, acyclic = {}, identity = {}", d.proper, d.acyclic, d.identity_holds).unwrap();
    Ok(out.into())
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct GenReport {
    n: usize,
    moves: usize,
    seed: u64,
    t1: String,
    t2: String,
    /// One more component per move suffices.
    k_upper_bound: usize,
}

fn cmd_gen(n: usize, moves: usize, seed: u64, contraction: f64, t1: Option<&Path>, t2: Option<&Path>, json: bool) -> Run {
    if n < 2 {
        return Err(Failure(2, format!("--n must be at least 2, got {n}")));
    }
    if !(0.0..=1.0).contains(&contraction) {
        return Err(Failure(2, format!("--contraction must lie in [0, 1], got {contraction}")));
    }
    let (a, b) = generate_pair(n, moves, seed, contraction);
    let (a, b) = (write_newick(&a), write_newick(&b));
    let mut out = String::new();
    for (path, text) in [(t1, &a), (t2, &b)] {
        match path {
            Some(p) => std::fs::write(p, format!("{text}\n"))
                .map_err(|e| Failure(2, format!("{}: {e}", p.display())))?,
            None if !json => writeln!(out, "{text}").unwrap(),
            None => {}
        }
    }
    if json {
        return Ok(Report::from(to_json(&GenReport {
            n,
            moves,
            seed,
            t1: a,
            t2: b,
            k_upper_bound: moves,
        })));
    }
    writeln!(out, "k <= {moves}").unwrap();
    Ok(out.into())
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ValidateReport {
    agreement_forest: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    violation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    acyclic: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    inheritance_graph: Option<InheritanceGraph>,
}

fn cmd_validate(input: &Pair, forest: &str, require_acyclic: bool, json: bool) -> Run {
    let (t1, t2) = read_pair(input)?;
    let f = parse_forest(&read_text(forest)?).map_err(|e| Failure(2, format!("{forest}: {e}")))?;
    let verdict = agforest::is_agreement_forest(&f, &t1, &t2)?;
    let ig = match verdict.is_valid() {
        true => Some(inheritance_graph(&t1, &t2, &f)?),
        false => None,
    };
    let report = ValidateReport {
        agreement_forest: verdict.is_valid(),
        violation: verdict.violation().map(ToString::to_string),
        acyclic: ig.as_ref().map(InheritanceGraph::is_acyclic),
        inheritance_graph: ig,
    };
    let ok = report.agreement_forest && (!require_acyclic || report.acyclic == Some(true));
    let out = if json {
        to_json(&report)
    } else {
        let mut out = String::new();
        match &report.violation {
            None => writeln!(out, "agreement forest: yes").unwrap(),
            Some(v) => writeln!(out, "agreement forest: no ({v})").unwrap(),
        }
        if let Some(g) = &report.inheritance_graph {
            writeln!(out, "acyclic: {}", g.is_acyclic()).unwrap();
            for (a, b) in &g.edges {
                writeln!(out, "  component {a} -> component {b}").unwrap();
            }
        }
        out
    };
    Ok(Report(if ok { 0 } else { 1 }, out))
}

#[derive(Serialize)]
struct OracleReport {
    problem: &'static str,
    k: usize,
    forest: Vec<String>,
}

fn cmd_oracle(input: &Pair, problem: Problem, json: bool) -> Run {
    let (t1, t2) = read_pair(input)?;
    let (name, (k, forest)) = match problem {
        Problem::Maf => ("maf", oracle::brute_maf(&t1, &t2)?),
        Problem::Maaf => ("maaf", oracle::brute_maaf(&t1, &t2)?),
    };
    if json {
        return Ok(Report::from(to_json(&OracleReport {
            problem: name,
            k,
            forest: newick_lines(&forest),
        })));
    }
    let mut out = String::new();
    text_forest(&mut out, &forest);
    writeln!(out, "k = {k}").unwrap();
    Ok(out.into())
}

fn run(cli: Cli) -> Run {
    match cli.command {
        Command::Maf { input, mode, max_k, json } => cmd_maf(&input, mode, max_k, json),
        Command::Maaf {
            input,
            mode,
            dfvs,
            max_k,
            dump_dfvs,
            json,
        } => cmd_maaf(&input, mode, dfvs, max_k, dump_dfvs.as_deref(), json),
        Command::Gen {
            n,
            moves,
            seed,
            contraction,
            t1,
            t2,
            json,
        } => cmd_gen(n, moves, seed, contraction, t1.as_deref(), t2.as_deref(), json),
        Command::Validate {
            input,
            forest,
            require_acyclic,
            json,
        } => cmd_validate(&input, &forest, require_acyclic, json),
        Command::Oracle { input, problem, json } => cmd_oracle(&input, problem, json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Report(code, out)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(Failure(code, msg)) => {
            eprintln!("agforest: {msg}");
            ExitCode::from(code)
        }
    }
}
