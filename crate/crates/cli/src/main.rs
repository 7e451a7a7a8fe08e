//! `maxmin`: analyses of max-min convex hulls from the command line.
//!
//! Row and column indices in every report are 1-based.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use maxmin_cli::{commands, CliError};

#[derive(Debug, Parser)]
#[command(
    name = "maxmin",
    version,
    about = "Max-min convexity: rank, dimension, segments and hull membership"
)]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Max-min rank with a strongly regular witness and its certificate.
    Rank { file: PathBuf },
    /// Dimension of the hull of the columns.
    Dim {
        file: PathBuf,
        /// Also search a rational grid for the largest quasibox in the hull.
        #[arg(long)]
        oracle: bool,
        /// Grid denominator used by --oracle.
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u32).range(1..))]
        grid: u32,
    },
    /// Row and column orders bringing a k x (k+1) or k x k matrix to trapezoidal form.
    Trapezoid { file: PathBuf },
    /// Solve A x = b in max-min arithmetic.
    Solve {
        file: PathBuf,
        /// Right-hand side, one value per row.
        #[arg(required = true, num_args = 1..)]
        rhs: Vec<String>,
    },
    /// Decompose the max-min segment between two points.
    Segment {
        #[arg(short, required = true, num_args = 1..)]
        x: Vec<String>,
        #[arg(short, required = true, num_args = 1..)]
        y: Vec<String>,
    },
    /// Test whether a point lies in the hull of the columns.
    Member {
        file: PathBuf,
        #[arg(required = true, num_args = 1..)]
        point: Vec<String>,
    },
    /// Rasterize the hull of a 2-row matrix to an SVG file.
    Plot2d {
        file: PathBuf,
        /// Lattice points per unit along each axis.
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u32).range(1..))]
        resolution: u32,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    let json = cli.json;
    match cli.command {
        Command::Rank { file } => commands::rank(&file, json),
        Command::Dim { file, oracle, grid } => {
            commands::dim(&file, oracle.then_some(grid as usize), json)
        }
        Command::Trapezoid { file } => commands::trapezoid(&file, json),
        Command::Solve { file, rhs } => commands::solve(&file, &rhs, json),
        Command::Segment { x, y } => commands::segment(&x, &y, json),
        Command::Member { file, point } => commands::member(&file, &point, json),
        Command::Plot2d {
            file,
            resolution,
            output,
        } => commands::plot2d(&file, resolution as usize, &output, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("maxmin: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}
