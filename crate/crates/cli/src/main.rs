mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{CliError, Report};

#[derive(Parser, Debug)]
#[command(name = "stabkit", version, about = "Exact homology, arc complexes and stability checks")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format; json is canonical, text renders it.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized sweeps; recorded in every report.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simplicial complexes.
    Complex {
        #[command(subcommand)]
        cmd: ComplexCmd,
    },
    /// Arc complexes of the marked disc.
    Arc {
        #[command(subcommand)]
        cmd: ArcCmd,
    },
    /// Marked surface bookkeeping.
    Surface {
        #[command(subcommand)]
        cmd: SurfaceCmd,
    },
    /// Spectral sequences of double complexes.
    Ss {
        #[command(subcommand)]
        cmd: SsCmd,
    },
    /// Group actions and their spectral sequences.
    Stability {
        #[command(subcommand)]
        cmd: StabilityCmd,
    },
    /// The acceptance suite.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum ComplexCmd {
    /// Integral homology of a complex given as vertices plus maximal simplices.
    Homology {
        #[arg(long)]
        input: PathBuf,
        /// Reduced homology.
        #[arg(long)]
        reduced: bool,
        /// Restrict to the skeleton of this dimension.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        dim_cap: Option<u32>,
        /// Highest degree for the connectivity computation.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        degree_cap: Option<u32>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum FamilyArg {
    A,
    B,
    B0,
    O,
}

#[derive(Subcommand, Debug)]
pub enum ArcCmd {
    /// Build the arc complex of a disc model.
    Build {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FamilyArg::A)]
        family: FamilyArg,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        dim_cap: Option<u32>,
    },
    /// Compare the homological connectivity with the surface bound.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FamilyArg::A)]
        family: FamilyArg,
        /// Highest degree in which reduced homology is computed.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        degree_cap: Option<u32>,
    },
    /// Surgery flow of a chord simplex onto the star of an arc.
    Surgery {
        #[arg(long)]
        input: PathBuf,
        /// A chord of the simplex, e.g. `c(1,4)`; repeat for more.
        #[arg(long = "sigma", required = true)]
        sigma: Vec<String>,
        /// Target arc, e.g. `c(0,3)`.
        #[arg(long)]
        arc: String,
        /// Endpoint of the target arc to flow towards.
        #[arg(long)]
        p: u32,
    },
    /// Cut the polygon along a chord simplex and check the counting identities.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "sigma", required = true)]
        sigma: Vec<String>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum CutArg {
    O1,
    O2,
}

#[derive(Subcommand, Debug)]
pub enum SurfaceCmd {
    /// Genus, boundary and edge counts of a marked surface.
    Stats {
        #[arg(long)]
        input: PathBuf,
    },
    /// Connectivity bound of an arc complex family.
    Bound {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FamilyArg::A)]
        family: FamilyArg,
    },
    /// Surface left after cutting along a p-simplex.
    Cut {
        #[arg(long, value_enum)]
        family: CutArg,
        #[arg(long)]
        genus: i64,
        #[arg(long)]
        boundaries: i64,
        #[arg(long)]
        p: i64,
    },
    /// Replay the integer inequalities of the induction.
    Audit {
        #[arg(long, default_value_t = 30)]
        gmax: i64,
        /// Slope of the stable range as `a/b`.
        #[arg(long, default_value = "2/3")]
        slope: String,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum FiltrationArg {
    Column,
    Row,
}

#[derive(Subcommand, Debug)]
pub enum SsCmd {
    /// Run a spectral sequence to its limit.
    Run {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FiltrationArg::Column)]
        filtration: FiltrationArg,
        /// Report only the first this many pages.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        pages: Option<u32>,
        /// Fail unless E∞ vanishes in every total degree ≤ this.
        #[arg(long, allow_hyphen_values = true)]
        assert_vanish: Option<isize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum StabilityCmd {
    /// Infinite cyclic group acting on the arc line of the annulus.
    DemoAnnulus {
        /// Truncation of the line.
        #[arg(long, default_value_t = 8)]
        n: i64,
        #[arg(long, default_value_t = 2)]
        qmax: usize,
    },
    /// Compare an E¹ column with the homology of a stabilizer.
    Shapiro {
        /// `Z/n` rotating the complex, `S3` permuting three vertices, or `Z`
        /// translating the annulus line.
        #[arg(long)]
        group: String,
        /// Complex acted on; ignored for `Z`.
        #[arg(long)]
        complex: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        p: isize,
        #[arg(long, default_value_t = 2)]
        qmax: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Run every acceptance criterion.
    All {
        #[arg(long, default_value_t = 7, value_parser = clap::value_parser!(u32).range(4..=9))]
        qmax: u32,
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(i64).range(1..))]
        gmax: i64,
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Complex { cmd } => commands::complex(g, cmd),
        Command::Arc { cmd } => commands::arc(g, cmd),
        Command::Surface { cmd } => commands::surface(g, cmd),
        Command::Ss { cmd } => commands::ss(g, cmd),
        Command::Stability { cmd } => commands::stability(g, cmd),
        Command::Verify { cmd } => commands::verify(g, cmd),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(report) => {
            print!("{}", render::render(&report, cli.global.format));
            ExitCode::from(if report.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
