use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hmcoh::hochschild::DEFAULT_BUDGET;

#[derive(Debug, Parser)]
#[command(name = "hmcoh", version, about = "Exact Hochschild-Mitchell cohomology of finite k-linear categories")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Ground field, `Q` or `F<p>`; overrides the field written in the input.
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Largest cochain space dimension allowed in any degree.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Complex {
    Normalized,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Pivot {
    Forward,
    Reverse,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Check a category and, optionally, a module, action or grading over it.
    Validate {
        category: PathBuf,
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long)]
        action: Option<PathBuf>,
        #[arg(long)]
        grading: Option<PathBuf>,
    },
    /// Hochschild-Mitchell cohomology dimensions.
    Cohomology {
        category: PathBuf,
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = Complex::Normalized)]
        complex: Complex,
    },
    /// Hochschild-Mitchell homology dimensions.
    Homology {
        category: PathBuf,
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = Complex::Normalized)]
        complex: Complex,
    },
    /// Dimension of the center, next to HH^0.
    Center { category: PathBuf },
    /// Cohomology of the order complex of a poset.
    Oracle {
        category: PathBuf,
        #[arg(long)]
        max_degree: usize,
    },
    /// The smash product by a group action and its grading.
    Smash {
        category: PathBuf,
        #[arg(long)]
        action: PathBuf,
        /// Writes the smash product as a table category file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Strong grading and the Galois certificate with properties 1-7.
    Galois {
        category: PathBuf,
        #[arg(long, required_unless_present = "grading", conflicts_with = "grading")]
        action: Option<PathBuf>,
        #[arg(long)]
        grading: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Pivot::Forward)]
        pivot: Pivot,
    },
    /// Conjugacy-class decomposition of the cohomology of `M # kG`.
    Decompose {
        category: PathBuf,
        #[arg(long)]
        action: PathBuf,
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long)]
        max_degree: usize,
    },
    /// The page `H^p(G, H^q(C, M))`.
    E2 {
        category: PathBuf,
        #[arg(long)]
        action: PathBuf,
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long)]
        max_degree: usize,
    },
    /// Cohomology of the smash product against invariants, or the E2 bound.
    Collapse {
        category: PathBuf,
        #[arg(long)]
        action: PathBuf,
        #[arg(long)]
        max_degree: usize,
    },
    /// Tower of HH over a filtered family, with window-certified limits.
    Tower {
        /// For example `tree-tower(2,7)` or `u-layered-tower(3,1)`.
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = hmcoh::towers::DEFAULT_WINDOW)]
        stages: usize,
        /// Trailing stages used for limits; defaults to all stages.
        #[arg(long)]
        window: Option<usize>,
        #[arg(long)]
        max_degree: usize,
    },
    /// Write corpus category files.
    Gen {
        /// A family label such as `crown-incidence(2,3,0)`; omit with `--corpus`.
        #[arg(required_unless_present = "corpus", conflicts_with = "corpus")]
        family: Option<String>,
        /// Write the whole standard corpus into the directory `--out`.
        #[arg(long)]
        corpus: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

impl Verb {
    pub fn name(&self) -> &'static str {
        match self {
            Verb::Validate { .. } => "validate",
            Verb::Cohomology { .. } => "cohomology",
            Verb::Homology { .. } => "homology",
            Verb::Center { .. } => "center",
            Verb::Oracle { .. } => "oracle",
            Verb::Smash { .. } => "smash",
            Verb::Galois { .. } => "galois",
            Verb::Decompose { .. } => "decompose",
            Verb::E2 { .. } => "e2",
            Verb::Collapse { .. } => "collapse",
            Verb::Tower { .. } => "tower",
            Verb::Gen { .. } => "gen",
        }
    }
}
