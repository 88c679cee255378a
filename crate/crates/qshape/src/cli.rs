use clap::{Args, Parser, Subcommand};

use crate::report::Format;

#[derive(Parser, Debug)]
#[command(name = "qshape", version, about = "Exact computations in mesh categories of stable translation quivers")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "table")]
    pub format: Format,
    /// Where to write the report; "-" for stdout.
    #[arg(long, global = true, default_value = "-")]
    pub output: String,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct CategoryArgs {
    /// JSON file with a category description ("-" for stdin).
    #[arg(long, conflicts_with_all = ["flavor", "n", "window"])]
    pub category: Option<String>,
    /// double_an or repetitive_an.
    #[arg(long)]
    pub flavor: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Window of the repetitive quiver as "i_min,i_max".
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<String>,
    /// Z, Q or mod:m.
    #[arg(long)]
    pub ring: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Input document ("-" for stdin).
    pub input: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Serialize a category: bases, graded dimensions, multiplication tables, Serre data.
    Build(CategoryArgs),
    /// Hom-space rank table.
    Dims(CategoryArgs),
    /// Arrow multiplication matrices, checked against the closed forms.
    Mult(CategoryArgs),
    /// Serre functor checks.
    SerreCheck(CategoryArgs),
    /// Closed forms against brute-force path enumeration; all built-in flavors when no category is given.
    Oracle(CategoryArgs),
    /// Check a representation or morphism document.
    Validate(InputArgs),
    /// Mesh homology, derived (co)homology and corner functors.
    Homology {
        #[command(flatten)]
        input: InputArgs,
        /// Vertex name; every interior vertex when omitted.
        #[arg(long)]
        vertex: Option<String>,
        #[arg(long, env = "QSHAPE_MAX_DEGREE")]
        max_degree: Option<usize>,
    },
    /// Exactness, projectivity and injectivity of a representation.
    Classify(InputArgs),
    /// Whether a morphism is a weak equivalence.
    Weq(InputArgs),
    /// Worked examples with built-in checks.
    #[command(subcommand)]
    Demo(Demo),
}

#[derive(Subcommand, Debug)]
pub enum Demo {
    /// A morphism that is an isomorphism on mesh homology but no weak equivalence.
    Counterexample,
    /// Random bounded complexes: homology through the representation bridge against direct computation.
    ChainComplex {
        #[arg(long, default_value_t = 50)]
        random: usize,
        #[arg(long, default_value = "Z")]
        ring: String,
        #[arg(long, default_value_t = crate::random::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_length: usize,
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
        #[arg(long, default_value_t = 3)]
        bound: i64,
    },
}
