//! `yablo`: solve, evaluate, generate and verify from the command line.
//!
//! Exit status: 0 for a found kernel / true sentence / clean report, 1 for
//! no kernel / false sentence / failed checks, 2 for any error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use yablo_core::graph::{random_digraph, witness_chain, Digraph};
use yablo_core::kernel::{brute_force_kernels, solve};
use yablo_core::logic::{axiom, parse, theta_set, Axiom, CompiledFormula};
use yablo_core::successor::SuccessorStructure;
use yablo_core::verify::{self, Report, SuiteParams, ThetaParams};

#[derive(Parser)]
#[command(
    name = "yablo",
    version,
    about = "Digraph kernels and finite model checking"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a digraph has a kernel.
    Solve {
        /// Edge-list file, or `-` for stdin.
        graph: PathBuf,
        /// List every kernel (brute force, at most 20 nodes).
        #[arg(long)]
        enumerate: bool,
        /// Use exhaustive subset search instead of the solver.
        #[arg(long)]
        oracle: bool,
    },
    /// Evaluate a sentence, a named axiom, or a theta level on a digraph.
    #[command(group(ArgGroup::new("what").required(true).args(["formula", "theta", "axiom"])))]
    Eval {
        /// Edge-list file, or `-` for stdin.
        graph: PathBuf,
        #[arg(long)]
        formula: Option<String>,
        /// Print the set of nodes satisfying theta_n.
        #[arg(long)]
        theta: Option<usize>,
        /// A1, A2, A, S or no_odd_cycle(k).
        #[arg(long)]
        axiom: Option<String>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = ThetaParams::default().max_n)]
        max_n: usize,
        #[arg(long, default_value_t = ThetaParams::default().exhaustive_nodes)]
        exhaustive_nodes: usize,
        #[arg(long, default_value_t = ThetaParams::default().samples)]
        samples: usize,
        #[arg(long, default_value_t = ThetaParams::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = SuiteParams::default().max_total)]
        max_total: usize,
        /// Compactness parameter: the odd cycle has 2N+3 nodes.
        #[arg(long = "N", default_value_t = SuiteParams::default().compactness_n)]
        n: usize,
        #[arg(long, default_value_t = SuiteParams::default().y1_nodes)]
        y1_nodes: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a generated digraph in edge-list form.
    #[command(group(ArgGroup::new("kind").required(true).args(["witness_chain", "cycle", "successor", "random"])))]
    Gen {
        #[arg(long)]
        witness_chain: Option<usize>,
        #[arg(long)]
        cycle: Option<usize>,
        /// e.g. "cycles=[2,4] n=0 z=0"
        #[arg(long)]
        successor: Option<String>,
        #[arg(long, num_args = 3, value_names = ["N", "P", "SEED"])]
        random: Option<Vec<String>>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Fixtures,
    Thetas,
    Lemma,
    Compactness,
    Y1,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn read_graph(path: &PathBuf) -> Result<Digraph> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    Digraph::from_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn members(k: &yablo_core::VertexSet) -> String {
    k.iter().map(|v| format!(" {v}")).collect()
}

fn run(cli: Cli, out: &mut impl Write) -> Result<bool> {
    match cli.command {
        Command::Solve {
            graph,
            enumerate,
            oracle,
        } => {
            let g = read_graph(&graph)?;
            let kernels = if enumerate {
                brute_force_kernels(&g)?
            } else if oracle {
                brute_force_kernels(&g)?.into_iter().take(1).collect()
            } else {
                solve(&g).kernel().cloned().into_iter().collect()
            };
            if kernels.is_empty() {
                writeln!(out, "NO-KERNEL")?;
            }
            for k in &kernels {
                writeln!(out, "KERNEL{}", members(k))?;
            }
            Ok(!kernels.is_empty())
        }
        Command::Eval {
            graph,
            formula,
            theta,
            axiom: axiom_name,
        } => {
            let g = read_graph(&graph)?;
            if let Some(n) = theta {
                let set = theta_set(&g, n);
                writeln!(out, "{set}")?;
                return Ok(set.is_full());
            }
            let f = match (formula, axiom_name) {
                (Some(text), _) => parse(&text)?,
                (None, Some(name)) => axiom(name.parse::<Axiom>()?),
                (None, None) => unreachable!("clap requires one of the group"),
            };
            let free = f.free_vars();
            if !free.is_empty() {
                let names: Vec<_> = free.into_iter().collect();
                bail!(yablo_core::logic::LogicError::NotASentence(names));
            }
            let truth = CompiledFormula::new(&f).eval(&g, &[])?;
            writeln!(out, "{}", if truth { "TRUE" } else { "FALSE" })?;
            Ok(truth)
        }
        Command::Verify {
            suite,
            max_n,
            exhaustive_nodes,
            samples,
            seed,
            max_total,
            n,
            y1_nodes,
            format,
            out: path,
        } => {
            let thetas = ThetaParams {
                max_n,
                exhaustive_nodes,
                samples,
                seed,
            };
            let reports: Vec<Report> = match suite {
                Suite::Fixtures => vec![verify::check_fixtures()],
                Suite::Thetas => vec![verify::check_theorem_thetas(thetas)?],
                Suite::Lemma => vec![verify::check_lemma(max_total)?],
                Suite::Compactness => vec![verify::compactness_demo(n)?],
                Suite::Y1 => vec![verify::check_scheme_y1(y1_nodes)?],
                Suite::All => verify::run_all(&SuiteParams {
                    thetas,
                    max_total,
                    compactness_n: n,
                    y1_nodes,
                })?,
            };
            let text = match format {
                Format::Text => reports
                    .iter()
                    .map(Report::to_string)
                    .collect::<Vec<_>>()
                    .join("\n"),
                Format::Json => serde_json::to_string_pretty(&reports)? + "\n",
            };
            match path {
                Some(p) => {
                    fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?
                }
                None => out.write_all(text.as_bytes())?,
            }
            Ok(reports.iter().all(Report::passed))
        }
        Command::Gen {
            witness_chain: chain,
            cycle,
            successor,
            random,
        } => {
            let g = if let Some(n) = chain {
                witness_chain(n)
            } else if let Some(m) = cycle {
                if m == 0 {
                    bail!("cycle length must be positive");
                }
                Digraph::cycle(m)
            } else if let Some(spec) = successor {
                spec.parse::<SuccessorStructure>()?.realize()?
            } else if let Some(args) = random {
                let n: usize = args[0].parse().context("random: node count")?;
                let p: f64 = args[1].parse().context("random: edge probability")?;
                let seed: u64 = args[2].parse().context("random: seed")?;
                random_digraph(n, p, seed)?
            } else {
                unreachable!("clap requires one of the group")
            };
            write!(out, "{g}")?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    match run(cli, &mut stdout.lock()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
