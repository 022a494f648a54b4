//! `qaufbau` command-line tool.
//!
//! Exit codes: 0 success, 1 usage or flag error, 2 data or parse error.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "qaufbau",
    version,
    about = "q-deformed orbital ordering and electron configurations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Bounds {
    /// Largest principal quantum number (1..=12) [default: 7]
    #[arg(long)]
    n_max: Option<u32>,
    /// Largest orbital quantum number (0..=5) [default: 3]
    #[arg(long)]
    l_max: Option<u32>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ordering keys and shell energies, one row per orbital
    Energies {
        #[arg(long)]
        q: f64,
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Filling order; without bounds, only the 18 orbitals of the reference series
    Order {
        #[arg(long)]
        q: f64,
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Compare the filling order with madelung, ion or hydrogenic
    Compare {
        #[arg(long)]
        q: f64,
        #[arg(long)]
        reference: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Regime partition and level crossings over a q range
    Scan {
        #[arg(long)]
        q_min: f64,
        #[arg(long)]
        q_max: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Electron configuration by sequential filling
    Config {
        #[arg(long)]
        z: u32,
        /// Number of electrons [default: z]
        #[arg(long)]
        electrons: Option<u32>,
        #[arg(long)]
        q: f64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Neutral atoms whose reference configuration differs from the model
    Exceptions {
        #[arg(long)]
        q: f64,
        /// CSV with header z,symbol,configuration [default: bundled z <= 99 data]
        #[arg(long)]
        data: Option<std::path::PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };

    let result = match cli.command {
        Command::Energies { q, bounds, format } => {
            commands::energies(q, bounds.n_max, bounds.l_max, format)
        }
        Command::Order { q, bounds, format } => {
            commands::order(q, bounds.n_max, bounds.l_max, format)
        }
        Command::Compare {
            q,
            reference,
            format,
        } => commands::compare(q, &reference, format),
        Command::Scan {
            q_min,
            q_max,
            step,
            format,
        } => commands::scan(q_min, q_max, step, format),
        Command::Config {
            z,
            electrons,
            q,
            format,
        } => commands::config(z, electrons, q, format),
        Command::Exceptions { q, data, format } => commands::exceptions(q, data.as_deref(), format),
    };

    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
