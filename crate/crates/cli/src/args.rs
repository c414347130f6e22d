use clap::{Args, Parser, Subcommand, ValueEnum};
use tensorcount::bruteforce::DEFAULT_BRUTE_BUDGET;
use tensorcount::counting::Method;

#[derive(Debug, Parser)]
#[command(name = "tensorcount", version, about = "Exact counts and algebra of O(N) tensor-model invariants")]
pub struct Cli {
    /// Worker threads (default: all available cores).
    #[arg(long, global = true, value_parser = positive)]
    pub threads: Option<usize>,

    /// Work budget for brute-force orbit enumeration.
    #[arg(long, global = true, env = "TENSOR_ORBIT_MAX_BRUTE", default_value_t = DEFAULT_BRUTE_BUDGET)]
    pub max_brute: u128,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Oeis,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Coset,
    Read,
    Kronecker,
    Squares,
    Brute,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Coset => Method::Coset,
            MethodArg::Read => Method::Read,
            MethodArg::Kronecker => Method::Kronecker,
            MethodArg::Squares => Method::Squares,
            MethodArg::Brute => Method::Brute,
        }
    }
}

#[derive(Debug, Args)]
pub struct SequenceArgs {
    #[arg(long)]
    pub rank: usize,
    /// Largest n; the last term counts 2n tensors.
    #[arg(long, value_parser = positive)]
    pub max_n: usize,
    #[arg(long, value_enum, default_value = "coset")]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value = "oeis")]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of invariants built from an even number of rank-d tensors.
    Count {
        #[arg(long)]
        rank: usize,
        /// Number of tensors 2n (must be even).
        #[arg(long)]
        tensors: usize,
        #[arg(long, value_enum, default_value = "coset")]
        method: MethodArg,
        /// Count connected invariants only.
        #[arg(long)]
        connected: bool,
        #[arg(long, value_enum, default_value = "oeis")]
        format: Format,
    },
    /// Terms n = 1..max-n of the invariant-counting sequence.
    Sequence {
        #[command(flatten)]
        seq: SequenceArgs,
        #[arg(long)]
        connected: bool,
        /// Compare every feasible method and exit 3 on disagreement.
        #[arg(long)]
        cross_check: bool,
    },
    /// Connected-invariant sequence.
    Connected {
        #[command(flatten)]
        seq: SequenceArgs,
    },
    /// Nonzero Kronecker coefficients at weight m.
    KroneckerTable {
        #[arg(long)]
        m: usize,
        /// Restrict to partitions with even parts.
        #[arg(long)]
        even_only: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Character table of S_m.
    CharacterTable {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// JSON report on the double-coset algebra.
    AlgebraCheck {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        tensors: usize,
        /// Random triples tested for associativity.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Gaussian correlators of observables given as permutation tuples.
    Correlator {
        /// Expected number of permutations per tuple.
        #[arg(long)]
        rank: Option<usize>,
        /// Comma-separated permutations, e.g. "(1 2)(3 4),[2,1,4,3],()".
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        tau: Option<String>,
        /// Degree of the permutations (default: inferred and rounded up to even).
        #[arg(long)]
        tensors: Option<usize>,
        #[arg(long)]
        one_point: bool,
        /// Also evaluate at this N.
        #[arg(long)]
        at: Option<u64>,
    },
    /// Symplectic K4 invariant of four rank-3 tensors.
    SymplecticK4 {
        /// Half the vector-space dimension.
        #[arg(long = "n", default_value_t = 2)]
        big_n: usize,
        /// Monomial whose coefficient to print, e.g. T_000,T_032.
        #[arg(long)]
        coeff: Option<String>,
    },
    /// Run the cross-method equalities.
    Selftest,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}
