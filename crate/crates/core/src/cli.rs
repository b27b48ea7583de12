//! Command-line front end.
//!
//! Every command prints the tool version and budgets first, then its
//! results. Standard output depends only on the inputs and budgets; timing
//! goes to standard error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::diffset::{
    feasible_parameters, multiplier_group, quartic_cyclotomy, search_exhaustive_with, search_multiplier_pruned,
    translation_classes, SearchMode, DEFAULT_DIFFSET_BUDGET,
};
use crate::enumerate::{enumerate_srings_with, EnumerateOptions, SRingCensus, DEFAULT_NODE_BUDGET};
use crate::error::{Error, Result};
use crate::groups::GroupSpec;
use crate::permgrp::DEFAULT_ELEMENT_BUDGET;
use crate::schurity::DEFAULT_SEARCH_BUDGET;
use crate::verify::{
    classification_report, schurity_report, verify_classification, verify_main1, verify_main2, verify_nonschur_family,
    verify_section4_lemmas, Budgets, Status, TheoremReport,
};

/// Exit code for a report with a counterexample.
pub const EXIT_FAIL: i32 = 1;
/// Exit code when some budget ran out.
pub const EXIT_UNKNOWN: i32 = 3;
/// Exit code for invalid input or I/O failure.
pub const EXIT_ERROR: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "schur", version, about = "Schur rings over cyclic and dihedral groups")]
pub struct RunConfig {
    #[command(flatten)]
    pub budgets: BudgetArgs,

    /// Worker threads; results do not depend on it.
    #[arg(long, env = "SCHUR_WORKERS", global = true)]
    pub workers: Option<usize>,

    /// Print reports as JSON instead of tables.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// S-ring enumeration nodes.
    #[arg(long, env = "SCHUR_NODE_BUDGET", default_value_t = DEFAULT_NODE_BUDGET, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub node_budget: u64,

    /// Automorphism and isomorphism search nodes.
    #[arg(long, env = "SCHUR_SEARCH_BUDGET", default_value_t = DEFAULT_SEARCH_BUDGET, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub search_budget: u64,

    /// Nodes when looking for a regular cyclic subgroup of `Aut(A)`.
    #[arg(long, env = "SCHUR_ELEMENT_BUDGET", default_value_t = DEFAULT_ELEMENT_BUDGET, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub element_budget: u64,

    /// Difference-set search nodes.
    #[arg(long, env = "SCHUR_DIFFSET_BUDGET", default_value_t = DEFAULT_DIFFSET_BUDGET, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub diffset_budget: u64,
}

impl From<&BudgetArgs> for Budgets {
    fn from(b: &BudgetArgs) -> Self {
        Budgets {
            nodes: b.node_budget,
            search: b.search_budget,
            elements: b.element_budget,
            diffset: b.diffset_budget,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate all S-rings over a group and write a census file.
    Enumerate {
        /// `C:n` or `D:2p`.
        #[arg(long)]
        group: GroupSpec,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Resumable progress file.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Evaluate the five classification statements on every census entry.
    Classify(CensusSource),
    /// Decide schurity of every census entry.
    Schurity(CensusSource),
    /// Search nontrivial difference sets in `C_p`.
    Diffset {
        #[arg(long)]
        p: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::UpToTranslation)]
        mode: ModeArg,
        /// Also run the multiplier-pruned search and compare (needs `p = 4q+1`).
        #[arg(long)]
        pruned: bool,
    },
    /// Run one of the theorem checks.
    Verify {
        #[arg(value_enum)]
        theorem: TheoremArg,
        /// The prime; for `nonschur`, the odd parameter `t`.
        #[arg(long, alias = "t")]
        p: u64,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quartic cyclotomic numbers modulo a prime `p = 1 (mod 4)`.
    Cyclotomy {
        #[arg(long)]
        p: u64,
    },
}

#[derive(Debug, Args)]
pub struct CensusSource {
    /// Census file written by `enumerate`.
    #[arg(long = "in", conflicts_with = "group", required_unless_present = "group")]
    pub input: Option<PathBuf>,
    /// Enumerate this group instead of reading a file.
    #[arg(long)]
    pub group: Option<GroupSpec>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    All,
    #[value(name = "up_to_translation", alias = "up-to-translation")]
    UpToTranslation,
}

impl From<ModeArg> for SearchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::All => SearchMode::All,
            ModeArg::UpToTranslation => SearchMode::UpToTranslation,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TheoremArg {
    Classification,
    Main1,
    Main2,
    Lemmas,
    Nonschur,
}

/// Parses `args` (program name first), runs the command, writes to `out`,
/// and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = write!(out, "{}", e.render());
            return code;
        }
    };
    if let Some(n) = config.workers {
        // fails only if a pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let start = Instant::now();
    let result = execute(&config, out);
    eprintln!("elapsed {:.2?}", start.elapsed());
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            EXIT_ERROR
        }
    }
}

/// Runs the command line of the current process.
pub fn main() -> i32 {
    run(std::env::args_os(), &mut std::io::stdout().lock())
}

fn status_code(s: Status) -> i32 {
    match s {
        Status::Pass => 0,
        Status::Fail => EXIT_FAIL,
        Status::FailToVerify => EXIT_UNKNOWN,
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn write_file(path: &PathBuf, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(io_err)
}

fn load_census(src: &CensusSource, budgets: &Budgets) -> Result<SRingCensus> {
    match (&src.input, src.group) {
        (Some(path), _) => SRingCensus::from_text(&std::fs::read_to_string(path).map_err(io_err)?),
        (None, Some(spec)) => enumerate(spec, budgets, None),
        (None, None) => Err(Error::InvalidArgument("need --in or --group".into())),
    }
}

fn enumerate(spec: GroupSpec, budgets: &Budgets, checkpoint: Option<PathBuf>) -> Result<SRingCensus> {
    let opts = EnumerateOptions {
        node_budget: budgets.nodes,
        checkpoint,
    };
    enumerate_srings_with(Arc::new(spec.build()?), &opts)
}

fn emit_report(config: &RunConfig, report: &TheoremReport, out: &mut dyn Write, path: Option<&PathBuf>) -> Result<i32> {
    if let Some(path) = path {
        write_file(path, &report.to_json())?;
    }
    if config.json {
        writeln!(out, "{}", report.to_json()).map_err(io_err)?;
    } else {
        write!(out, "{}", report.to_table()).map_err(io_err)?;
    }
    Ok(status_code(report.status))
}

fn execute(config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let budgets = Budgets::from(&config.budgets);
    let mut head = String::new();
    let _ = writeln!(head, "{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION"));
    let _ = writeln!(head, "budgets {budgets}");
    out.write_all(head.as_bytes()).map_err(io_err)?;

    match &config.command {
        Command::Enumerate { group, out: path, checkpoint } => {
            let census = match enumerate(*group, &budgets, checkpoint.clone()) {
                Ok(c) => c,
                Err(e @ Error::BudgetExceeded { .. }) => {
                    writeln!(out, "{e}").map_err(io_err)?;
                    return Ok(EXIT_UNKNOWN);
                }
                Err(e) => return Err(e),
            };
            let text = census.to_text();
            match path {
                Some(path) => {
                    write_file(path, &text)?;
                    writeln!(out, "{group}: {} S-rings written to {}", census.len(), path.display()).map_err(io_err)?;
                }
                None => out.write_all(text.as_bytes()).map_err(io_err)?,
            }
            Ok(0)
        }
        Command::Classify(src) => {
            let census = load_census(src, &budgets)?;
            if census.entries.first().is_some_and(|e| e.sring.group().dihedral_p().is_none()) {
                return Err(Error::InvalidArgument("classify needs a census over a dihedral group".into()));
            }
            emit_report(config, &classification_report(&census, &budgets)?, out, src.out.as_ref())
        }
        Command::Schurity(src) => {
            let census = load_census(src, &budgets)?;
            emit_report(config, &schurity_report(&census, &budgets)?, out, src.out.as_ref())
        }
        Command::Diffset { p, mode, pruned } => diffset(*p, (*mode).into(), *pruned, &budgets, out),
        Command::Verify { theorem, p, out: path } => {
            let n = *p as usize;
            let report = match theorem {
                TheoremArg::Classification => verify_classification(n, &budgets)?,
                TheoremArg::Main1 => verify_main1(n, &budgets)?,
                TheoremArg::Main2 => verify_main2(n, &budgets)?,
                TheoremArg::Lemmas => verify_section4_lemmas(n, &budgets)?,
                TheoremArg::Nonschur => verify_nonschur_family(*p, &budgets)?,
            };
            emit_report(config, &report, out, path.as_ref())
        }
        Command::Cyclotomy { p } => {
            let c = quartic_cyclotomy(*p)?;
            if config.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&c).expect("serializes")).map_err(io_err)?;
            } else {
                let mut s = String::new();
                let _ = writeln!(s, "p {}  root {}  f {}", c.p, c.root, c.f());
                let _ = writeln!(s, "x {}  y {}  orientation {:?}", c.x, c.y, c.orientation);
                let _ = writeln!(s, "(i,j)   j=0  j=1  j=2  j=3");
                for (i, row) in c.table.iter().enumerate() {
                    let _ = writeln!(s, "i={i}   {:>3}  {:>3}  {:>3}  {:>3}", row[0], row[1], row[2], row[3]);
                }
                match c.x_identity_holds() {
                    Some(ok) => {
                        let _ = writeln!(s, "x = 2f - 1 - 8(1,0): {}", if ok { "holds" } else { "FAILS" });
                    }
                    None => {
                        let _ = writeln!(s, "x = 2f - 1 - 8(1,0): not applicable, f even");
                    }
                }
                out.write_all(s.as_bytes()).map_err(io_err)?;
            }
            Ok(if c.x_identity_holds() == Some(false) { EXIT_FAIL } else { 0 })
        }
    }
}

fn diffset(p: usize, mode: SearchMode, pruned: bool, budgets: &Budgets, out: &mut dyn Write) -> Result<i32> {
    let mut s = String::new();
    let _ = writeln!(s, "p {p}  mode {}  feasible (k, lambda) {:?}", match mode {
        SearchMode::All => "all",
        SearchMode::UpToTranslation => "up_to_translation",
    }, feasible_parameters(p));
    let (found, nodes) = match search_exhaustive_with(p, mode, budgets.diffset) {
        Ok(r) => r,
        Err(e @ Error::BudgetExceeded { .. }) => {
            let _ = writeln!(s, "{e}");
            out.write_all(s.as_bytes()).map_err(io_err)?;
            return Ok(EXIT_UNKNOWN);
        }
        Err(e) => return Err(e),
    };
    let _ = writeln!(s, "{} sets, {nodes} nodes", found.len());
    for r in &found {
        let m = multiplier_group(r)?;
        let _ = writeln!(s, "{:?}  {:?}  multipliers {:?}", r.parameters(), r.elements(), m.multipliers());
    }
    let mut code = 0;
    if pruned {
        let other = search_multiplier_pruned(p)?;
        let agree = translation_classes(&other) == translation_classes(&found);
        let _ = writeln!(s, "multiplier-pruned search: {} sets, agrees {agree}", other.len());
        if !agree {
            code = EXIT_FAIL;
        }
    }
    out.write_all(s.as_bytes()).map_err(io_err)?;
    Ok(code)
}
