use catcover_core::ExampleSpec;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "catcover", version, about = "Coverings, nerves, zeta functions and Euler characteristics of finite categories")]
pub struct Cli {
    /// Emit a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a category, filtered category, bundle or functor file.
    Validate(ValidateArgs),
    /// Sizes and structural predicates of a category.
    Info(CategoryInput),
    /// Nerve counts for n = 0..=max-n.
    Nerve(NerveArgs),
    /// Zeta function as a series and in closed form.
    Zeta(ZetaArgs),
    /// Series Euler characteristic.
    Euler(CategoryInput),
    /// Covering checks.
    #[command(subcommand)]
    Cover(CoverCommand),
    /// Filtered Euler characteristics.
    #[command(subcommand)]
    Filtered(FilteredCommand),
    /// Print a built-in example as JSON.
    Example(ExampleArgs),
}

/// A category from a file (`-` for stdin) or a built-in example.
#[derive(Debug, Args)]
pub struct CategoryInput {
    /// Category file; `-` reads stdin.
    #[arg(default_value = "-", conflicts_with = "example")]
    pub input: String,

    /// Use a built-in example, e.g. `gamma` or `fan:3`.
    #[arg(long, value_name = "NAME")]
    pub example: Option<ExampleSpec>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum FileKind {
    #[default]
    Category,
    Filtered,
    Bundle,
    Functor,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// File to check; `-` reads stdin (not for functors).
    #[arg(default_value = "-")]
    pub input: String,

    #[arg(long, value_enum, default_value_t)]
    pub kind: FileKind,

    /// Source category of a functor file (overrides `source_file`).
    #[arg(long)]
    pub source: Option<String>,

    /// Target category of a functor file (overrides `target_file`).
    #[arg(long)]
    pub target: Option<String>,
}

#[derive(Debug, Args)]
pub struct NerveArgs {
    #[command(flatten)]
    pub category: CategoryInput,

    #[arg(long, default_value_t = 6)]
    pub max_n: usize,

    /// Also count chains ending at this object.
    #[arg(long, value_name = "NAME")]
    pub object: Option<String>,
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    #[command(flatten)]
    pub category: CategoryInput,

    /// Print the series through z^N.
    #[arg(long, value_name = "N")]
    pub series: Option<usize>,

    /// Print the closed form.
    #[arg(long)]
    pub closed_form: bool,
}

/// A functor to check for the covering property.
#[derive(Debug, Args)]
pub struct CoveringInput {
    /// Either `E B P` (total, base, functor files) or a single functor file
    /// naming its source and target.
    #[arg(num_args = 0..=3, value_name = "FILE", conflicts_with_all = ["example", "bundle"])]
    pub files: Vec<String>,

    /// A built-in covering, e.g. `gamma` or `fan:3`.
    #[arg(long, value_name = "NAME", conflicts_with = "bundle")]
    pub example: Option<ExampleSpec>,

    /// A bundle file holding total, base and functor; `-` reads stdin.
    #[arg(long, value_name = "FILE")]
    pub bundle: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum CoverCommand {
    /// Check the covering condition and print the certificate.
    Check(CoveringInput),
    /// Check nerve factorization, the zeta power law and the product formula.
    Verify(CoverVerifyArgs),
}

#[derive(Debug, Args)]
pub struct CoverVerifyArgs {
    #[command(flatten)]
    pub covering: CoveringInput,

    #[arg(long, default_value_t = 8)]
    pub max_n: usize,
}

#[derive(Debug, Args)]
pub struct Truncation {
    /// Highest level L; coefficients c_0..c_L are computed.
    #[arg(long, default_value_t = 24)]
    pub levels: usize,

    /// Trailing coefficients held back to confirm a detected recurrence.
    #[arg(long, default_value_t = 6)]
    pub guard: usize,
}

#[derive(Debug, Subcommand)]
pub enum FilteredCommand {
    /// Coefficient stream, rational function and filtered Euler characteristic.
    Chi(FilteredChiArgs),
    /// Check the filtered product formula for a covering.
    Verify(FilteredVerifyArgs),
}

#[derive(Debug, Args)]
pub struct FilteredChiArgs {
    /// Filtered category file; `-` reads stdin.
    #[arg(default_value = "-", conflicts_with = "example")]
    pub input: String,

    /// `ladder`, `ladder-base`, or a finite acyclic example filtered by
    /// chain depth.
    #[arg(long, value_name = "NAME")]
    pub example: Option<ExampleSpec>,

    #[command(flatten)]
    pub truncation: Truncation,
}

#[derive(Debug, Args)]
pub struct FilteredVerifyArgs {
    /// Total and base filtered category files and a functor file.
    #[arg(num_args = 3, value_names = ["TOTAL", "BASE", "FUNCTOR"], conflicts_with = "example")]
    pub files: Vec<String>,

    /// A built-in covering: `ladder`, or a finite acyclic covering filtered
    /// by chain depth.
    #[arg(long, value_name = "NAME", required_unless_present = "files")]
    pub example: Option<ExampleSpec>,

    #[command(flatten)]
    pub truncation: Truncation,
}

#[derive(Debug, Args)]
pub struct ExampleArgs {
    /// e.g. `gamma`, `z2`, `fan:3`, `fan-base`, `ladder`,
    /// `ladder-base`, `discrete:4`, `terminal`, `cyclic-group:5`.
    #[arg(required_unless_present = "list")]
    pub name: Option<ExampleSpec>,

    /// Print total category, base and functor of a covering example.
    #[arg(long)]
    pub bundle: bool,

    /// Truncation level for the ladder examples.
    #[arg(long, default_value_t = 8)]
    pub levels: usize,

    /// List the example names.
    #[arg(long)]
    pub list: bool,
}
