//! `plalg`: command-line front end for the restricted Lie algebra toolkit.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use plalg_core::Budgets;
use serde_json::json;

use commands::{CliError, Output};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "plalg", version, about = "Restricted Lie algebras over prime fields")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    output: Format,

    /// Zero all timings so that reports compare byte for byte.
    #[arg(long, global = true)]
    stable: bool,

    /// Most subspaces an enumeration may visit.
    #[arg(long, global = true, env = "PLALG_ENUM_BUDGET", default_value_t = 1_000_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    enum_budget: u64,

    /// Most elements an element-wise scan may visit.
    #[arg(long, global = true, env = "PLALG_ELEMENT_BUDGET", default_value_t = 1_000_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    element_budget: u64,

    /// Seed for every random choice.
    #[arg(long, global = true, env = "PLALG_SEED", default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the Jacobi identity and the restricted axioms.
    Verify { file: PathBuf },
    /// Series, center, Fitting, socle, tori, Cartan and Frattini subalgebras.
    Analyze { file: PathBuf },
    /// Torus plus p-nilpotent splitting of an abelian or nilpotent p-subalgebra.
    Decompose {
        file: PathBuf,
        /// Spanning elements: basis names or coefficient vectors like 1:0:2.
        /// Defaults to the whole algebra.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        subspace: Vec<String>,
    },
    /// Write a built-in algebra as JSON.
    Construct {
        #[arg(value_enum)]
        family: commands::FamilyName,
        #[arg(long)]
        p: u32,
        /// Matrix size for gl_n.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Extension degree for field-torus.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// p-map matrix for abelian, rows separated by ';' and entries by ':'
        /// or ' '; column j is the image of e_j.
        #[arg(long)]
        pmap: Option<String>,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Run a theorem suite over algebra files.
    Theorems {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// abelian, nilpotent, soluble, module, frattini, simple or all.
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Random search for minimal simple algebras.
    Search {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        dim_max: usize,
        #[arg(long)]
        count: usize,
    },
    /// Weight decomposition of the file's module (or the adjoint module) under a torus.
    Module {
        file: PathBuf,
        /// Torus spanned by basis names or coefficient vectors.
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        torus: Vec<String>,
    },
}

fn emit(format: Format, out: &Output) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json")),
        Format::Text => print!("{}", out.text),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = commands::Config {
        budgets: Budgets {
            subspaces: cli.enum_budget as u128,
            elements: cli.element_budget as u128,
        },
        seed: cli.seed,
        stable: cli.stable,
    };
    let result = match cli.command {
        Command::Verify { file } => commands::verify(&cfg, &file),
        Command::Analyze { file } => commands::analyze(&cfg, &file),
        Command::Decompose { file, subspace } => commands::decompose(&cfg, &file, &subspace),
        Command::Construct { family, p, n, k, pmap, out } => {
            commands::construct(family, p, n, k, pmap.as_deref(), out.as_deref())
        }
        Command::Theorems { files, suite } => commands::theorems(&cfg, &files, &suite),
        Command::Search { p, dim_max, count } => commands::search(&cfg, p, dim_max, count),
        Command::Module { file, torus } => commands::module(&cfg, &file, &torus),
    };
    match result {
        Ok(out) => {
            emit(cli.output, &out);
            ExitCode::from(out.code)
        }
        Err(CliError { code, kind, message }) => {
            if cli.output == Format::Json {
                let body = json!({ "error": { "kind": kind, "message": message } });
                println!("{}", serde_json::to_string_pretty(&body).expect("json"));
            }
            eprintln!("plalg: {message}");
            ExitCode::from(code)
        }
    }
}
