use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qlr_core::schemes::DIAGONAL_N;

#[derive(Debug, Parser)]
#[command(
    name = "qlr",
    version,
    about = "Realism witnesses, locality classification and measurement sampling for finite-dimensional quantum states",
    after_help = "Exit codes: 0 success, 1 input error, 2 maximally mixed state (report still written), 3 weak search requested on a subsystem A that is not a qubit."
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// State file: a matrix document holding a ket (one column) or a density matrix
    #[arg(long, global = true, value_name = "PATH")]
    pub state: Option<PathBuf>,

    /// Subsystem dimensions, overriding the `dims` field of the state file
    #[arg(long, global = true, value_name = "DA,DB")]
    pub dims: Option<Dims>,

    /// Tolerance. witness: maximally-mixed threshold [default: 1e-9];
    /// classify: weak-locality residual and product-distance threshold [default: 1e-8];
    /// hjw: decomposition mismatch bound and rank cutoff [default: 1e-9]
    #[arg(long, global = true, value_name = "TOL")]
    pub tol: Option<f64>,

    /// Bloch-sphere grid points per angle for the weak-locality search
    #[arg(long, global = true, default_value_t = 48)]
    pub grid: usize,

    /// Number of simulated measurement shots
    #[arg(long, global = true, default_value_t = 100_000)]
    pub shots: u64,

    /// Seed of the sampling generator
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Output format [default: csv for sweeps, json otherwise]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Worker threads for the weak-locality grid scan (results do not depend on it)
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// rho = p|0><0| + (1-p)|1><1| with A = σx, B = σy
    SingleQubit,
    /// cos α|00> + sin α|11> with A = σx⊗σx, B = (n·σ)⊗(n·σ)
    TwoQubit,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build observables A, B whose commutator gap Tr(rho [A,B]) is nonzero for the state
    Witness,

    /// Classify a bipartite state: product form, entanglement of pure input,
    /// weak locality with a separable decomposition
    Classify {
        /// Measurement on A (operator-list document) for conditional-state information gains
        #[arg(long, value_name = "PATH")]
        measurement: Option<PathBuf>,

        /// Skip the weak-locality search
        #[arg(long)]
        no_weak: bool,
    },

    /// Evaluate one of the two measurement schemes
    Scheme {
        family: Family,

        #[command(flatten)]
        params: SchemeParams,

        /// Sweep p (single-qubit) or α (two-qubit) over LO:HI with STEPS points
        #[arg(long, value_name = "LO:HI:STEPS", allow_hyphen_values = true)]
        sweep: Option<SweepRange>,
    },

    /// Tabulate a scheme over a parameter range
    Sweep {
        family: Family,

        /// Parameter range: p (single-qubit) or α (two-qubit)
        #[arg(long, value_name = "LO:HI:STEPS", allow_hyphen_values = true)]
        range: SweepRange,

        /// Measurement direction n for the two-qubit scheme
        #[arg(long, value_name = "NX,NY,NZ", allow_hyphen_values = true, default_value = "0.7071067811865476,0.7071067811865476,0")]
        n: Direction,
    },

    /// Simulate projective measurements shot by shot
    Sample {
        /// Sample the Hermitian witness D = -i[A,B] of a scheme instead of a state file
        #[arg(long, value_name = "FAMILY")]
        scheme: Option<Family>,

        #[command(flatten)]
        params: SchemeParams,

        /// Observable to measure on --state (matrix document)
        #[arg(long, value_name = "PATH", conflicts_with_all = ["a", "b", "scheme"])]
        observable: Option<PathBuf>,

        /// First observable (matrix document); with --b samples the gap of (A, B)
        #[arg(long, value_name = "PATH", requires = "b", conflicts_with = "scheme")]
        a: Option<PathBuf>,

        /// Second observable (matrix document)
        #[arg(long, value_name = "PATH", requires = "a")]
        b: Option<PathBuf>,

        /// Measure A then B on the updated state and average the product of outcomes
        #[arg(long, requires = "a")]
        sequential: bool,
    },

    /// Find the unitary connecting two pure-state decompositions of one density matrix
    Hjw {
        /// First decomposition (vector-list document)
        #[arg(long, value_name = "PATH")]
        dec1: PathBuf,

        /// Second decomposition (vector-list document)
        #[arg(long, value_name = "PATH")]
        dec2: PathBuf,
    },
}

#[derive(Debug, Clone, Args)]
pub struct SchemeParams {
    /// Weight of |0><0| in the single-qubit scheme
    #[arg(long)]
    pub p: Option<f64>,

    /// State angle α of the two-qubit scheme, radians
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,

    /// Measurement direction n of the two-qubit scheme (unit vector)
    #[arg(long, value_name = "NX,NY,NZ", allow_hyphen_values = true, default_value = "0.7071067811865476,0.7071067811865476,0")]
    pub n: Direction,
}

fn numbers<T: FromStr>(s: &str, sep: char, what: &str) -> Result<Vec<T>, String> {
    s.split(sep)
        .map(|x| x.trim().parse::<T>().map_err(|_| format!("invalid {what} component `{x}`")))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dims(pub Vec<usize>);

impl FromStr for Dims {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let dims: Vec<usize> = numbers(s, ',', "dimension")?;
        if dims.is_empty() || dims.contains(&0) {
            return Err(format!("invalid dimensions `{s}`"));
        }
        Ok(Dims(dims))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction(pub [f64; 3]);

impl Default for Direction {
    fn default() -> Self {
        Direction(DIAGONAL_N)
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let v: Vec<f64> = numbers(s, ',', "direction")?;
        match v.as_slice() {
            &[x, y, z] => Ok(Direction([x, y, z])),
            _ => Err(format!("expected three components, got `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl FromStr for SweepRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected LO:HI:STEPS, got `{s}`"));
        }
        let lo = parts[0].trim().parse().map_err(|_| format!("invalid lower bound `{}`", parts[0]))?;
        let hi = parts[1].trim().parse().map_err(|_| format!("invalid upper bound `{}`", parts[1]))?;
        let steps = parts[2].trim().parse().map_err(|_| format!("invalid step count `{}`", parts[2]))?;
        Ok(SweepRange { lo, hi, steps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_parsers() {
        assert_eq!("2,3".parse::<Dims>().unwrap(), Dims(vec![2, 3]));
        assert!("2,0".parse::<Dims>().is_err());
        assert!("2,x".parse::<Dims>().is_err());
        assert_eq!("0,-1,0".parse::<Direction>().unwrap(), Direction([0.0, -1.0, 0.0]));
        assert!("1,0".parse::<Direction>().is_err());
        let r: SweepRange = "-1:2.5:3".parse().unwrap();
        assert_eq!((r.lo, r.hi, r.steps), (-1.0, 2.5, 3));
        assert!("0:1".parse::<SweepRange>().is_err());
    }

    #[test]
    fn default_direction_matches_core() {
        let d: Direction = "0.7071067811865476,0.7071067811865476,0".parse().unwrap();
        assert_eq!(d, Direction::default());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
