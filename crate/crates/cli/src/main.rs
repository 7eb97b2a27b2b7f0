use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qcsp::generate::{planted_ktree_instance, random_instance, RandomSpec};
use qcsp::graph::parse_edge_list;
use qcsp::instance::parse_instance_with_tables;
use qcsp::reductions::{cdc_to_ia, coloring_decomposition, coloring_to_cdc};
use qcsp::solver::IntroduceStrategy;
use qcsp::{oracle, serialize_instance, AtomicNetwork, Calculus, Instance, SolveOptions, TdMode, TreeDecomposition};

/// Directory of composition-table overrides (`<name>.json`).
const TABLES_ENV: &str = "QCSP_TABLES";

#[derive(Parser)]
#[command(name = "qcsp", version, about = "Treewidth DP solver for qualitative constraint calculi")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide an instance; exits 0 on SAT, 1 on UNSAT, 2 on error
    Solve(SolveArgs),
    /// Generate instances
    #[command(subcommand)]
    Gen(GenCmd),
    /// Print a tree decomposition of the primal graph
    Decompose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "heuristic")]
        mode: Mode,
        /// Print the nice decomposition instead
        #[arg(long)]
        nice: bool,
    },
    /// Count complete satisfiable networks on m variables
    Count {
        #[arg(long)]
        calculus: String,
        #[arg(short)]
        m: usize,
        /// Use the decider-filtered search instead of the calculus enumerator
        #[arg(long)]
        generic: bool,
    },
    /// Brute-force checks used as ground truth
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Timing data as CSV
    #[command(subcommand)]
    Bench(BenchCmd),
    /// Composition tables of the table-driven calculi
    #[command(subcommand)]
    Tables(TablesCmd),
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    input: PathBuf,
    /// Decomposition in the `id parent bag...` text format
    #[arg(long, conflicts_with = "td")]
    decomposition: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "heuristic")]
    td: Mode,
    /// Print the extracted certificate
    #[arg(long, conflicts_with = "no_witness")]
    witness: bool,
    /// Drop records as soon as possible; no certificate can be extracted
    #[arg(long)]
    no_witness: bool,
    /// Print a concrete model where the calculus has a realizer
    #[arg(long, conflicts_with = "no_witness")]
    model: bool,
    /// Write per-node statistics as CSV
    #[arg(long)]
    stats: Option<PathBuf>,
    #[arg(long)]
    parallel: bool,
    #[arg(long, value_enum, default_value = "extend")]
    strategy: Strategy,
}

#[derive(Subcommand)]
enum GenCmd {
    /// Cardinal-direction instance satisfiable iff the graph is k-colourable
    ColoringCdc {
        #[arg(long)]
        graph: PathBuf,
        #[arg(short)]
        k: usize,
        /// Also write a decomposition: one of the graph's, with the colour points in every bag
        #[arg(long, value_name = "FILE")]
        decomposition_out: Option<PathBuf>,
    },
    /// Translate a cardinal-direction instance to the interval algebra
    CdcToIa {
        #[arg(long)]
        input: PathBuf,
    },
    /// Satisfiable instance on a random w-tree with a planted model
    Ktree {
        #[arg(long, default_value = "ia")]
        calculus: String,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        w: usize,
        /// Extra relations per constraint besides the planted one
        #[arg(long, default_value_t = 2)]
        extra: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Uniformly random instance
    Random {
        #[arg(long)]
        calculus: String,
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        constraints: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Brute-force satisfiability; exits 0 on SAT, 1 on UNSAT
    Solve {
        #[arg(long)]
        input: PathBuf,
        /// Enumerate global certificates instead of choosing terms
        #[arg(long)]
        enumerative: bool,
    },
    /// Count complete satisfiable networks
    Count {
        #[arg(long)]
        calculus: String,
        #[arg(short)]
        m: usize,
    },
    /// RCC5 networks with DR/PO off the diagonal: total and satisfiable
    Drpo {
        #[arg(short)]
        m: usize,
    },
}

#[derive(Subcommand)]
enum BenchCmd {
    /// Solve planted w-tree instances of growing size
    Scaling {
        #[arg(long, default_value = "ia")]
        calculus: String,
        #[arg(long, value_delimiter = ',', default_value = "1000,2000,4000,8000")]
        sizes: Vec<usize>,
        #[arg(short, long, value_delimiter = ',', default_value = "2")]
        widths: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        runs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        parallel: bool,
    },
}

#[derive(Subcommand)]
enum TablesCmd {
    /// Print the composition table in the override file format
    Dump {
        #[arg(long)]
        calculus: String,
    },
    /// Check converse, identity and converse-distribution laws
    Check {
        #[arg(long)]
        calculus: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Heuristic,
    Exact,
}

impl From<Mode> for TdMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Heuristic => TdMode::Heuristic,
            Mode::Exact => TdMode::Exact,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Extend,
    Enumerate,
}

fn table_dir() -> Option<PathBuf> {
    std::env::var_os(TABLES_ENV).map(PathBuf::from)
}

fn calculus(name: &str) -> Result<Calculus> {
    Ok(Calculus::load(name, table_dir().as_deref())?)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_instance(path: &Path) -> Result<Instance> {
    parse_instance_with_tables(&read(path)?, table_dir().as_deref()).with_context(|| format!("{}", path.display()))
}

fn verdict(sat: bool) -> ExitCode {
    println!("{}", if sat { "SAT" } else { "UNSAT" });
    ExitCode::from(if sat { 0 } else { 1 })
}

/// Off-diagonal entries with increasing variable ids; the rest follow by
/// converse or symmetry.
fn print_certificate(inst: &Instance, net: &AtomicNetwork) {
    let calc = inst.calculus();
    for (t, r) in net.entries() {
        if !t.windows(2).all(|w| w[0] < w[1]) {
            continue;
        }
        let rel = calc.relation_name(*r);
        let names: Vec<&str> = t.iter().map(|&v| inst.name(v)).collect();
        if names.len() == 2 {
            println!("{} {rel} {}", names[0], names[1]);
        } else {
            println!("{rel}({})", names.join(", "));
        }
    }
}

fn solve(a: &SolveArgs) -> Result<ExitCode> {
    let inst = load_instance(&a.input)?;
    let decomposition = match &a.decomposition {
        Some(p) => Some(
            TreeDecomposition::parse_text(&read(p)?, &|n| inst.var(n))
                .with_context(|| format!("{}", p.display()))?,
        ),
        None => None,
    };
    let opts = SolveOptions {
        td_mode: a.td.into(),
        decomposition,
        provenance: !a.no_witness,
        strategy: match a.strategy {
            Strategy::Extend => IntroduceStrategy::Extend,
            Strategy::Enumerate => IntroduceStrategy::Enumerate,
        },
        parallel: a.parallel,
    };
    let sol = qcsp::solve(&inst, &opts)?;
    if let Some(path) = &a.stats {
        fs::write(path, sol.stats.to_csv()).with_context(|| format!("writing {}", path.display()))?;
    }
    let width = sol.stats.width;
    eprintln!(
        "width {}{}, {} nodes, peak record {}, {} us",
        width.max(0),
        if width < 0 { " (no variables)" } else { "" },
        sol.nice.len(),
        sol.stats.peak_record,
        sol.stats.decompose_micros + sol.stats.dp_micros
    );
    let code = verdict(sol.sat);
    if sol.sat && (a.witness || a.model) {
        let cert = sol.certificate(&inst)?;
        if a.witness {
            print_certificate(&inst, &cert);
        }
        if a.model {
            match inst.calculus().realize(&cert) {
                Ok(m) => print!("{}", m.describe(&|v| inst.name(v).to_string())),
                Err(qcsp::Error::NoRealizer(c)) => eprintln!("no model realizer for {c}"),
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(code)
}

fn gen(cmd: &GenCmd) -> Result<()> {
    let inst = match cmd {
        GenCmd::ColoringCdc { graph, k, decomposition_out } => {
            let g = parse_edge_list(&read(graph)?).with_context(|| format!("{}", graph.display()))?;
            let inst = coloring_to_cdc(&g, *k)?;
            if let Some(path) = decomposition_out {
                let td = coloring_decomposition(&g, *k, TdMode::Heuristic)?;
                std::fs::write(path, td.to_text(&|v| inst.name(v).to_string()))
                    .with_context(|| format!("{}", path.display()))?;
            }
            inst
        }
        GenCmd::CdcToIa { input } => cdc_to_ia(&load_instance(input)?)?,
        GenCmd::Ktree { calculus: c, n, w, extra, seed } => {
            if n <= w {
                bail!("need n > w");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            planted_ktree_instance(Arc::new(calculus(c)?), *n, *w, *extra, &mut rng)?.0
        }
        GenCmd::Random { calculus: c, vars, constraints, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            random_instance(Arc::new(calculus(c)?), &RandomSpec::new(*vars, *constraints), &mut rng)
        }
    };
    println!("{}", serialize_instance(&inst));
    Ok(())
}

fn bench(cmd: &BenchCmd) -> Result<()> {
    let BenchCmd::Scaling { calculus: c, sizes, widths, runs, seed, parallel } = cmd;
    let calc = Arc::new(calculus(c)?);
    println!("calculus,n,w,run,width,peak_record,micros");
    for &w in widths {
        for &n in sizes {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64) << 8 ^ w as u64);
            let (inst, _) = planted_ktree_instance(calc.clone(), n, w, 2, &mut rng)?;
            for run in 0..*runs {
                let opts = SolveOptions { provenance: false, parallel: *parallel, ..Default::default() };
                let start = Instant::now();
                let sol = qcsp::solve(&inst, &opts)?;
                let micros = start.elapsed().as_micros();
                if !sol.sat {
                    bail!("planted instance reported UNSAT (n={n}, w={w})");
                }
                println!("{},{n},{w},{run},{},{},{micros}", calc.name(), sol.stats.width, sol.stats.peak_record);
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Solve(a) => return solve(&a),
        Cmd::Gen(g) => gen(&g)?,
        Cmd::Decompose { input, mode, nice } => {
            let inst = load_instance(&input)?;
            let td = qcsp::decompose(&inst.primal_graph(), mode.into())?;
            let td = if nice { qcsp::make_nice(&td).as_tree_decomposition() } else { td };
            eprintln!("width {}", td.width().max(0));
            print!("{}", td.to_text(&|v| inst.name(v).to_string()));
        }
        Cmd::Count { calculus: c, m, generic } => {
            println!("{}", oracle::count_complete_satisfiable(&calculus(&c)?, m, generic)?);
        }
        Cmd::Oracle(OracleCmd::Solve { input, enumerative }) => {
            let inst = load_instance(&input)?;
            let sat = if enumerative {
                oracle::brute_solve_enumerative(&inst)?
            } else {
                oracle::brute_solve(&inst)?
            };
            return Ok(verdict(sat));
        }
        Cmd::Oracle(OracleCmd::Count { calculus: c, m }) => {
            println!("{}", oracle::count_complete_satisfiable(&calculus(&c)?, m, true)?);
        }
        Cmd::Oracle(OracleCmd::Drpo { m }) => {
            let (total, sat) = oracle::rcc5_drpo_count(m)?;
            println!("{total} networks, {sat} satisfiable");
        }
        Cmd::Bench(b) => bench(&b)?,
        Cmd::Tables(TablesCmd::Dump { calculus: c }) => {
            let Some(table) = calculus(&c)?.composition_table() else {
                bail!("{c} is not defined by a composition table");
            };
            println!("{}", serde_json::to_string_pretty(&table)?);
        }
        Cmd::Tables(TablesCmd::Check { calculus: c }) => {
            let Some(problems) = calculus(&c)?.table_problems() else {
                bail!("{c} is not defined by a composition table");
            };
            for p in &problems {
                println!("{p}");
            }
            if !problems.is_empty() {
                bail!("{} problems", problems.len());
            }
            println!("ok");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
