use clap::{Args, Parser, Subcommand};

use covers::hurwitz::DEFAULT_MAX_NODES;

#[derive(Parser, Debug)]
#[command(name = "covers", version, about = "Exact computations with tree series, Hurwitz numbers and 2D gravity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
#[group(multiple = false)]
pub struct Format {
    /// Emit JSON (one object per line for tables)
    #[arg(long, global = true)]
    pub json: bool,
    /// Emit CSV with a header row
    #[arg(long, global = true)]
    pub csv: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coefficients of a series of the algebra
    Series {
        /// Y, Z, X, Xinv, A, cayley or h1, optionally raised to a power
        /// (`Z^3`, `X^-2`)
        #[arg(long, conflicts_with = "element")]
        name: Option<String>,
        /// An element as `j:c,j:c,...`, the sum of c·X^j with X = 1 - Y
        #[arg(long, allow_hyphen_values = true)]
        element: Option<String>,
        #[arg(long, default_value_t = 10)]
        order: usize,
        #[command(flatten)]
        format: Format,
    },
    /// Identify a series as a Laurent polynomial in X = 1 - Y
    Identify {
        #[arg(long, conflicts_with = "coeffs")]
        name: Option<String>,
        /// Plain coefficients c_0,c_1,... of the series
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
        #[arg(long, default_value_t = 20)]
        order: usize,
        #[arg(long, allow_hyphen_values = true, default_value_t = -3)]
        jmin: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 3)]
        jmax: i64,
        /// Coefficients to verify beyond the solve
        #[arg(long, default_value_t = 5)]
        slack: usize,
        #[command(flatten)]
        format: Format,
    },
    /// Leading asymptotic c·e^n·n^(γ-1) of an element's coefficients
    Asymptotic {
        #[arg(long, conflicts_with = "element")]
        name: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        element: Option<String>,
        #[command(flatten)]
        format: Format,
    },
    /// Path-length statistics over labeled trees, as (n, k, m, p) rows
    Cayley {
        /// Largest number of vertices
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// Largest exponent k
        #[arg(long, default_value_t = 3)]
        k: u32,
        /// Refuse tree enumeration beyond this many vertices
        #[arg(long, default_value_t = covers::cayley::DEFAULT_TREE_LIMIT)]
        limit: usize,
        #[command(flatten)]
        format: Format,
    },
    /// A Hurwitz number by counting monodromy tuples
    Hurwitz {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: u32,
        /// A ramification type `b1,b2,...`; repeat for several points
        #[arg(long, allow_hyphen_values = true)]
        mu: Vec<String>,
        /// Drop the connectedness condition (character formula)
        #[arg(long)]
        disconnected: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
        max_nodes: u128,
        #[command(flatten)]
        format: Format,
    },
    /// The generating series H_{g;μ...} and its identification
    Hseries {
        #[arg(long)]
        g: u32,
        #[arg(long, allow_hyphen_values = true)]
        mu: Vec<String>,
        /// Defaults to the smallest order the identification can verify
        #[arg(long)]
        order: Option<usize>,
        /// Also fit the normal-form polynomial (one ramification type)
        #[arg(long)]
        fit_phi: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
        max_nodes: u128,
        #[command(flatten)]
        format: Format,
    },
    /// An intersection number <tau_d1 ... tau_dp>_g from Hurwitz numbers
    Tau {
        #[arg(long)]
        g: u32,
        /// Insertions `d1,d2,...`
        #[arg(long, default_value = "")]
        d: String,
        /// Also identify the combination of generating series
        #[arg(long)]
        series: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
        max_nodes: u128,
        #[command(flatten)]
        format: Format,
    },
    /// e_g from the Painlevé I equation
    Painleve {
        #[arg(long, default_value_t = 5)]
        gmax: u32,
        #[command(flatten)]
        format: Format,
    },
    /// Rows (g, e_g, b_g, free-energy coefficient)
    Gravity {
        #[arg(long, default_value_t = 5)]
        gmax: u32,
        #[command(flatten)]
        format: Format,
    },
}
