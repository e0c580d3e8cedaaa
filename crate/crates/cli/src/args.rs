use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "mui", version, about = "Dickson and Mui invariants with their Steenrod operations over Z/p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the output here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
    /// Only for `table`.
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build one of the named invariants.
    Invariant(InvariantArgs),
    /// Apply a Steenrod operation to an element.
    #[command(subcommand)]
    Steenrod(SteenrodCommand),
    /// Evaluate a closed formula and compare it with the Cartan oracle.
    ClosedForm(ClosedFormArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Tabulate a closed formula over r.
    Table(TableArgs),
}

#[derive(Args, Debug)]
pub struct InvariantArgs {
    #[arg(long)]
    pub p: u32,
    /// L, Lt, M, Mt, Q, U, V, bracketE or bracketX.
    #[arg(long)]
    pub name: String,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    pub s: Option<i32>,
    /// Exponents of a bracket, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub e: Vec<u32>,
}

#[derive(Subcommand, Debug)]
pub enum SteenrodCommand {
    /// `P^r`, `beta`, or the power map `d_n`.
    Apply(ApplyArgs),
    /// A Milnor basis operation `St^{S,R}`.
    Milnor(MilnorArgs),
}

#[derive(Args, Debug)]
pub struct ApplyArgs {
    #[arg(long)]
    pub p: u32,
    /// `P^r`, `beta` or `d_n`.
    #[arg(long)]
    pub op: String,
    #[arg(long)]
    pub expr: String,
    /// Number of generator pairs; inferred from the expression if omitted.
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(Args, Debug)]
pub struct MilnorArgs {
    #[arg(long, default_value_t = 3)]
    pub p: u32,
    #[arg(long = "S", value_delimiter = ',')]
    pub s: Vec<u32>,
    #[arg(long = "R", value_delimiter = ',', required = true)]
    pub r: Vec<u32>,
    #[arg(long)]
    pub expr: String,
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Formula {
    /// `P^r U_{k+1}`.
    U,
    /// `P^r Mt_{n,s}`.
    Mt,
    /// `P^r V_{k+1}`.
    V,
    /// `P^r Q_{n,s}`.
    Q,
    /// `St^{S,R} U_2`.
    StU2,
    /// `St^R V_2`.
    StV2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReadingArg {
    Completed,
    Truncated,
}

#[derive(Args, Debug)]
pub struct ClosedFormArgs {
    #[arg(long = "of", alias = "formula", value_enum, ignore_case = true)]
    pub of: Formula,
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    pub s: Option<i32>,
    #[arg(long)]
    pub r: Option<u64>,
    /// `S` of a two-pair index.
    #[arg(long = "S", value_delimiter = ',')]
    pub big_s: Vec<u32>,
    /// `R` of a two-pair index.
    #[arg(long = "R", value_delimiter = ',')]
    pub big_r: Vec<u32>,
    #[arg(long, value_enum, default_value_t = ReadingArg::Completed)]
    pub reading: ReadingArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Grid {
    /// Both degrees at most 40.
    Small,
    /// Both degrees at most 60.
    Large,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// core, invariants, steenrod, closed-forms, duality or all.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 3)]
    pub p: u32,
    #[arg(long, default_value_t = 2)]
    pub max_n: usize,
    /// Seed for the randomized property cells.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Randomized cases per property cell.
    #[arg(long)]
    pub cases: Option<usize>,
    /// Skip cells whose output degree holds more raw monomials than this.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, value_enum, default_value_t = Grid::Small)]
    pub grid: Grid,
    /// Overrides the degree cap implied by `--grid`.
    #[arg(long)]
    pub max_degree: Option<u64>,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long = "of", alias = "formula", value_enum, ignore_case = true)]
    pub of: Formula,
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    /// First row.
    #[arg(long)]
    pub r_from: Option<u64>,
    /// Last row.
    #[arg(long)]
    pub r_to: Option<u64>,
}
