use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use envelope_cli::commands::{
    build_run_config, cmd_casestudy, cmd_chain, cmd_group, cmd_lattice, cmd_sweep, ChainKind,
};
use envelope_cli::resolve::effective_order_cap;

/// A workbench for iterated centralizers, upper central series, and
/// ordinal-indexed envelope chains on concrete groups.
#[derive(Parser)]
#[command(name = "envelope", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a group: order, center, derived series, nilpotency class.
    Group {
        /// Group spec: catalog:D:8, cayley:path.json, perm:path.txt,
        /// product:C:2,C:2
        #[arg(long)]
        group: String,
        /// Persist the group as a Cayley-table JSON file.
        #[arg(long)]
        save_cayley: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the envelope, iterated-centralizer, and upper central chains
    /// of one (group, subgroup) pair.
    Chain {
        #[arg(long)]
        group: String,
        /// Comma-separated element labels (or #id) generating the subgroup.
        #[arg(long)]
        subgroup: String,
        /// Largest chain index: an ordinal literal such as 5, w, or w+1.
        #[arg(long, default_value = "w")]
        max: String,
        #[arg(long, value_enum, default_value_t = ChainKind::All)]
        kind: ChainKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification battery over a corpus of groups.
    Sweep {
        /// JSON run configuration; flags override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Semicolon-separated group specs replacing the corpus.
        #[arg(long)]
        corpus: Option<String>,
        /// all | representatives | random:N:SEED
        #[arg(long)]
        policy: Option<String>,
        /// Comma-separated check ids.
        #[arg(long)]
        checks: Option<String>,
        #[arg(long)]
        probe_depth: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        /// Include per-check wall times (makes the body non-reproducible).
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Audit the symbolic monomial-matrix case study.
    Casestudy {
        #[arg(long, default_value_t = 1000)]
        samples: u32,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Candidate draws for the generator-reduction cross-validation.
        #[arg(long, default_value_t = 1000)]
        xtrials: u32,
        /// Quantifier draws per candidate.
        #[arg(long, default_value_t = 100)]
        htrials: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the centralizer lattice of a group.
    Lattice {
        #[arg(long)]
        group: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let order_cap = effective_order_cap();
    let result = match cli.command {
        Command::Group {
            group,
            save_cayley,
            out,
        } => cmd_group(&group, save_cayley.as_deref(), out.as_deref(), order_cap),
        Command::Chain {
            group,
            subgroup,
            max,
            kind,
            out,
        } => cmd_chain(&group, &subgroup, &max, kind, out.as_deref(), order_cap),
        Command::Sweep {
            config,
            corpus,
            policy,
            checks,
            probe_depth,
            seed,
            timings,
            out,
        } => {
            // configuration problems exit 2; run problems exit 1
            match build_run_config(
                config.as_ref(),
                corpus.as_deref(),
                policy.as_deref(),
                checks.as_deref(),
                probe_depth,
                seed,
                timings,
                order_cap,
            ) {
                Ok(run_config) => cmd_sweep(&run_config, out.as_deref()),
                Err(err) => {
                    eprintln!("configuration error: {err:#}");
                    return ExitCode::from(2);
                }
            }
        }
        Command::Casestudy {
            samples,
            seed,
            xtrials,
            htrials,
            out,
        } => cmd_casestudy(samples, seed, xtrials, htrials, out.as_deref()),
        Command::Lattice { group, out } => cmd_lattice(&group, out.as_deref(), order_cap),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
