use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "pathcalc", version, about = "Pathwise quadratic-variation calculus on sampled paths")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output file; stdout when omitted.
    #[arg(short = 'o', long, global = true)]
    pub output: Option<PathBuf>,

    /// Format of reports and tables. Paths are always CSV.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReadStyle {
    /// As written: continuous, or regulated when decorations are present.
    Auto,
    /// Linear interpolation, decorations dropped.
    Continuous,
    /// Right-continuous steps through the grid values.
    Step,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Lc,
    Rc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PhiArg {
    Square,
    Exp,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Forward,
    Backward,
}

/// A path file and the partition sequence it is read along.
#[derive(Debug, Clone, Args)]
pub struct PathInput {
    /// Path CSV (`t,value[,left,right]`); `-` reads stdin.
    #[arg(short = 'i', long)]
    pub input: PathBuf,

    /// Branching of the dyadic sequence inferred from the grid.
    #[arg(long, default_value_t = 2)]
    pub base: u32,

    /// Levels to use; defaults to all levels the grid carries.
    #[arg(long)]
    pub depth: Option<usize>,

    /// JSON sequence descriptor `{"T": .., "base": .., "depth": ..}`,
    /// overriding `--base`/`--depth`.
    #[arg(long)]
    pub sequence: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = ReadStyle::Auto)]
    pub style: ReadStyle,
}

/// Cauchy-in-level convergence test: a gap passes when
/// `gap <= abs + rel * scale`.
#[derive(Debug, Clone, Copy, Args)]
pub struct TolArgs {
    #[arg(long, default_value_t = 1e-2)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub abs_tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a path.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Exact p-variation over sub-partitions of the grid.
    Pvar {
        #[command(flatten)]
        path: PathInput,
        #[arg(long)]
        p: f64,
    },
    /// Quadratic λ-variation with continuous and jump parts.
    Bracket {
        #[command(flatten)]
        path: PathInput,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Quadratic λ-covariation of two paths on the same grid.
    Cov {
        #[command(flatten)]
        path: PathInput,
        /// Second path.
        #[arg(long)]
        with: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Per-level and fitted Hölder index estimates.
    Index {
        #[command(flatten)]
        path: PathInput,
        #[arg(long, default_value_t = 4)]
        window: usize,
    },
    /// Cauchy λ-integral of the input path against `--against`.
    Integrate {
        #[command(flatten)]
        path: PathInput,
        #[arg(long)]
        against: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Lc)]
        side: SideArg,
        /// Emit the indefinite integral as a path instead of per-level values.
        #[arg(long)]
        indefinite: bool,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Residual of the pathwise chain rule at every grid point.
    Chainrule {
        #[command(flatten)]
        path: PathInput,
        #[arg(long, value_enum)]
        phi: PhiArg,
        #[arg(long, value_enum, default_value_t = SideArg::Lc)]
        side: SideArg,
    },
    /// Doléans exponential of the input path.
    Doleans {
        #[command(flatten)]
        path: PathInput,
        #[arg(long, value_enum, default_value_t = DirectionArg::Forward)]
        direction: DirectionArg,
        /// Report the linear-equation residual instead of the path.
        #[arg(long)]
        residual: bool,
    },
    /// Round trip g -> E(g) -> generator, with both gaps.
    Duality {
        #[command(flatten)]
        path: PathInput,
    },
    /// λ-generator of a distribution path starting at 1.
    Generator {
        #[command(flatten)]
        path: PathInput,
    },
    /// Black–Scholes delta hedge along one price path.
    Hedge {
        #[arg(long = "K", default_value_t = 1.1)]
        strike: f64,
        #[arg(long, default_value_t = 0.05)]
        r: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        /// Levels to use; defaults to all levels the grid carries.
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, default_value_t = 2)]
        base: u32,
        /// Price path CSV on a dyadic grid of `[0, T]`, starting at 1.
        #[arg(long)]
        path: PathBuf,
    },
    /// Binomial price from a first-passage skeleton of a Brownian path.
    Binomial {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "T", default_value_t = 1.0)]
        t_end: f64,
        /// Depth of the Brownian path on `[0, 1.5 T]`.
        #[arg(long, default_value_t = 22)]
        depth: u32,
    },
    /// Growth of the Fourier-pair Cauchy sums against ln n.
    Nonex {
        #[arg(long, value_delimiter = ',', default_values_t = [16, 64, 256, 1024])]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = 16384)]
        kmax: usize,
        #[arg(long, default_value_t = 500)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the acceptance suite; exits 1 when a criterion fails.
    Verify {
        /// Deterministic criteria only, or smaller ensembles with `--only`.
        #[arg(long)]
        quick: bool,
        /// Criterion numbers to run.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// Brownian path by midpoint refinement on a dyadic grid.
    Brownian {
        #[arg(long)]
        depth: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "T", default_value_t = 1.0)]
        t_end: f64,
    },
    /// Fractional Brownian motion on `n` intervals by Cholesky factorization.
    Fbm {
        #[arg(long = "H")]
        hurst: f64,
        #[arg(long, default_value_t = 1024)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "T", default_value_t = 1.0)]
        t_end: f64,
    },
    /// Self-affine path on `[0, 1]`.
    Kono {
        #[arg(long)]
        depth: u32,
        #[arg(long, default_value_t = 4)]
        base: u32,
        #[arg(long = "H", default_value_t = 0.5)]
        hurst: f64,
        /// The ±1 sequence, one entry per digit.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_values_t = [1i8, 1, 1, -1])]
        x: Vec<i8>,
    },
    /// Step path on a dyadic grid, jumping at `t:delta` pairs.
    Step {
        #[arg(long)]
        depth: u32,
        #[arg(long, default_value_t = 2)]
        base: u32,
        #[arg(long = "T", default_value_t = 1.0)]
        t_end: f64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        jumps: Vec<String>,
    },
    /// First-passage skeleton `(k, τ(k), W(k))` of a continuous path.
    Skeleton {
        #[arg(short = 'i', long)]
        input: PathBuf,
        #[arg(long)]
        m: u32,
    },
    /// The conjugate Gaussian Fourier pair `(X, Y)` on a uniform grid.
    Fourier {
        #[arg(long, default_value_t = 16384)]
        kmax: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Grid intervals on `[0, 1]`.
        #[arg(long, default_value_t = 1024)]
        n: usize,
    },
}
