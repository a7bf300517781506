//! Command-line front end: every subcommand is a thin adapter around
//! orbitvol-core with JSON-only output on stdout.
//!
//! Exit codes: 0 success, 2 validation error (with {"error": …} on stdout),
//! 1 internal error, 64 unknown subcommand.

use std::io::Read;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use orbitvol_core::eigdensity::{
    density_unnormalized, lu_set_volume_exact_capped, lu_set_volume_mc, EigGrid,
};
use orbitvol_core::ensemble::{bravyi_slacks, haar_unitary, mix_marginals, weyl_basis, RngStream};
use orbitvol_core::exactnum::DEFAULT_EXPANSION_LIMIT;
use orbitvol_core::liegeom::{
    dim_dlu, hc_flag_volume_un, symp_volume_lu_orbit, symp_volume_un_orbit, vol_tensor_flag,
    vol_tensor_group, vol_tensor_torus, vol_torus, vol_un, OrbitSpectrum,
};
use orbitvol_core::twoqubit::{
    is_locally_diagonalizable, lu_equivalent, lu_invariants, xstate_eigenvalues, XState,
    DEFAULT_DECISION_TOL,
};
use orbitvol_core::wire::{ExactVolumeJson, MatrixJson};
use orbitvol_core::{DensityMatrix, ExactVolume};

const EXIT_OK: i32 = 0;
const EXIT_INTERNAL: i32 = 1;
const EXIT_VALIDATION: i32 = 2;
const EXIT_USAGE: i32 = 64;

#[derive(Parser)]
#[command(
    name = "orbitvol",
    version,
    about = "Volumes of sets and orbits of bipartite quantum states",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Part {
    Flag,
    Torus,
    Group,
}

/// Exactly one input source for a state: inline JSON, file path, or stdin.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct StateInput {
    /// Inline matrix JSON
    #[arg(long)]
    json: Option<String>,
    /// Path to a matrix JSON file
    #[arg(long)]
    file: Option<PathBuf>,
    /// Read matrix JSON from stdin
    #[arg(long)]
    stdin: bool,
}

impl StateInput {
    fn read(&self) -> Result<String, CliError> {
        if let Some(inline) = &self.json {
            return Ok(inline.clone());
        }
        if let Some(path) = &self.file {
            return std::fs::read_to_string(path)
                .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())));
        }
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Validation(format!("cannot read stdin: {e}")))?;
        Ok(buf)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Harish-Chandra volumes for U(n): flag manifold U(n)/T, torus, or group
    HcVolume {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "flag")]
        part: Part,
    },
    /// Volumes for the tensor group U(m)⊗U(n)
    TensorVolume {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "group")]
        part: Part,
    },
    /// Symplectic volume of the U(n) adjoint orbit through diag(values)
    SympOrbit {
        /// Comma-separated spectrum, e.g. 0.7,0.3
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<f64>,
    },
    /// Symplectic volume of the local-unitary orbit through an eigenvalue grid
    LuOrbit {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Row-major grid entries, length m·n
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<f64>,
    },
    /// Hilbert-Schmidt volume of the locally diagonalizable set
    LuVolume {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Exact polynomial expansion and simplex integration
        #[arg(long)]
        exact: bool,
        /// Monte Carlo estimate (requires --samples and --seed)
        #[arg(long)]
        mc: bool,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Override the expansion cap on m·n (default 9)
        #[arg(long, default_value_t = DEFAULT_EXPANSION_LIMIT)]
        limit: usize,
    },
    /// Unnormalized eigenvalue density at a grid
    Density {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<f64>,
    },
    /// Twelve local-unitary invariants of a two-qubit state
    LuInvariants {
        #[command(flatten)]
        input: StateInput,
    },
    /// Decide local-unitary equivalence of two two-qubit states
    LuEquivalent {
        /// Inline matrix JSON for the first state
        #[arg(long, conflicts_with = "a_file")]
        a_json: Option<String>,
        /// File with matrix JSON for the first state
        #[arg(long)]
        a_file: Option<PathBuf>,
        /// Inline matrix JSON for the second state
        #[arg(long, conflicts_with = "b_file")]
        b_json: Option<String>,
        /// File with matrix JSON for the second state
        #[arg(long)]
        b_file: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_DECISION_TOL)]
        tol: f64,
    },
    /// Decide whether a two-qubit state is locally diagonalizable
    IsLocallyDiag {
        #[command(flatten)]
        input: StateInput,
        #[arg(long, default_value_t = DEFAULT_DECISION_TOL)]
        tol: f64,
    },
    /// Closed-form eigenvalues of a two-qubit X-state
    XstateEigs {
        /// Diagonal entries ρ11,ρ22,ρ33,ρ44
        #[arg(long, value_delimiter = ',', required = true)]
        diag: Vec<f64>,
        /// ρ14 as re,im
        #[arg(long, value_delimiter = ',', default_value = "0,0")]
        rho14: Vec<f64>,
        /// ρ23 as re,im
        #[arg(long, value_delimiter = ',', default_value = "0,0")]
        rho23: Vec<f64>,
    },
    /// Bravyi marginal-compatibility check for a two-qubit spectrum
    Bravyi {
        /// Sorted spectrum λ1,λ2,λ3,λ4
        #[arg(long, value_delimiter = ',', required = true)]
        spectrum: Vec<f64>,
        #[arg(long)]
        lambda_a: f64,
        #[arg(long)]
        lambda_b: f64,
    },
    /// Discrete Weyl (clock-and-shift) unitary basis of dimension d
    Weyl {
        #[arg(long)]
        d: usize,
    },
    /// Map a d×d-bipartite state to one with maximally mixed marginals
    MixMarginals {
        #[command(flatten)]
        input: StateInput,
    },
    /// Haar-random unitaries, one matrix JSON per line
    Haar {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Dimension of the locally diagonalizable set
    Dims {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
}

enum CliError {
    Validation(String),
    Internal(String),
}

impl From<orbitvol_core::Error> for CliError {
    fn from(e: orbitvol_core::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

fn parse_state(text: &str) -> Result<DensityMatrix, CliError> {
    let wire: MatrixJson = serde_json::from_str(text)
        .map_err(|e| CliError::Validation(format!("bad matrix JSON: {e}")))?;
    Ok(wire.to_density()?)
}

fn parse_pair(values: &[f64], name: &str) -> Result<Complex64, CliError> {
    if values.len() != 2 {
        return Err(CliError::Validation(format!("--{name} needs re,im")));
    }
    Ok(Complex64::new(values[0], values[1]))
}

fn emit(value: &serde_json::Value) -> Result<(), CliError> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

fn emit_volume(v: &ExactVolume) -> Result<(), CliError> {
    emit(&serde_json::to_value(ExactVolumeJson::from(v))?)
}

fn run(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::HcVolume { n, part } => {
            if n == 0 {
                return Err(CliError::Validation("--n must be positive".into()));
            }
            let vol = match part {
                Part::Flag => hc_flag_volume_un(n),
                Part::Torus => vol_torus(n),
                Part::Group => vol_un(n),
            };
            emit_volume(&vol)
        }
        Command::TensorVolume { m, n, part } => {
            if m == 0 || n == 0 {
                return Err(CliError::Validation("--m and --n must be positive".into()));
            }
            let vol = match part {
                Part::Flag => vol_tensor_flag(m, n),
                Part::Torus => vol_tensor_torus(m, n),
                Part::Group => vol_tensor_group(m, n),
            };
            emit_volume(&vol)
        }
        Command::SympOrbit { values } => {
            let orbit = symp_volume_un_orbit(&OrbitSpectrum::new(values));
            emit(&serde_json::to_value(orbit)?)
        }
        Command::LuOrbit { m, n, values } => {
            let grid = EigGrid::new(m, n, values)?;
            emit(&serde_json::to_value(symp_volume_lu_orbit(&grid))?)
        }
        Command::LuVolume { m, n, exact, mc, samples, seed, limit } => {
            if exact == mc {
                return Err(CliError::Validation(
                    "choose exactly one of --exact or --mc".into(),
                ));
            }
            if exact {
                emit_volume(&lu_set_volume_exact_capped(m, n, limit)?)
            } else {
                let samples = samples.ok_or_else(|| {
                    CliError::Validation("--mc requires --samples".into())
                })?;
                let seed = seed.ok_or_else(|| {
                    CliError::Validation("--mc requires --seed (reproducibility is mandatory)".into())
                })?;
                let est = lu_set_volume_mc(m, n, samples, seed)?;
                emit(&serde_json::to_value(est)?)
            }
        }
        Command::Density { m, n, values } => {
            let grid = EigGrid::new(m, n, values)?;
            emit(&json!({ "value": density_unnormalized(&grid) }))
        }
        Command::LuInvariants { input } => {
            let rho = parse_state(&input.read()?)?;
            let inv = lu_invariants(&rho)?;
            emit(&json!({ "invariants": inv }))
        }
        Command::LuEquivalent { a_json, a_file, b_json, b_file, tol } => {
            let read_side = |inline: Option<String>,
                             path: Option<PathBuf>,
                             side: &str|
             -> Result<DensityMatrix, CliError> {
                let text = match (inline, path) {
                    (Some(j), None) => j,
                    (None, Some(p)) => std::fs::read_to_string(&p).map_err(|e| {
                        CliError::Validation(format!("cannot read {}: {e}", p.display()))
                    })?,
                    _ => {
                        return Err(CliError::Validation(format!(
                            "state {side} needs exactly one of --{side}-json or --{side}-file"
                        )))
                    }
                };
                parse_state(&text)
            };
            let a = read_side(a_json, a_file, "a")?;
            let b = read_side(b_json, b_file, "b")?;
            emit(&json!({ "equivalent": lu_equivalent(&a, &b, tol)? }))
        }
        Command::IsLocallyDiag { input, tol } => {
            let rho = parse_state(&input.read()?)?;
            let decision = is_locally_diagonalizable(&rho, tol)?;
            emit(&serde_json::to_value(decision)?)
        }
        Command::XstateEigs { diag, rho14, rho23 } => {
            if diag.len() != 4 {
                return Err(CliError::Validation("--diag needs four entries".into()));
            }
            let x = XState::new(
                [diag[0], diag[1], diag[2], diag[3]],
                parse_pair(&rho14, "rho14")?,
                parse_pair(&rho23, "rho23")?,
            )?;
            let spec = xstate_eigenvalues(&x);
            emit(&json!({ "eigenvalues": spec.values() }))
        }
        Command::Bravyi { spectrum, lambda_a, lambda_b } => {
            let slacks = bravyi_slacks(&spectrum, lambda_a, lambda_b)?;
            let satisfied =
                slacks.iter().all(|&s| s >= -orbitvol_core::ensemble::BRAVYI_SLACK_TOL);
            emit(&json!({ "satisfied": satisfied, "slacks": slacks }))
        }
        Command::Weyl { d } => {
            if d == 0 {
                return Err(CliError::Validation("--d must be positive".into()));
            }
            let basis = weyl_basis(d);
            let mats: Vec<MatrixJson> =
                basis.unitaries().iter().map(MatrixJson::from_matrix).collect();
            emit(&json!({ "d": d, "unitaries": mats }))
        }
        Command::MixMarginals { input } => {
            let rho = parse_state(&input.read()?)?;
            let (mixed, v) = mix_marginals(&rho)?;
            emit(&json!({
                "state": MatrixJson::from_density(&mixed),
                "unitary": MatrixJson::from_matrix(&v),
            }))
        }
        Command::Haar { n, seed, count } => {
            if n == 0 {
                return Err(CliError::Validation("--n must be positive".into()));
            }
            let mut rng = RngStream::new(seed, 0);
            for _ in 0..count {
                let u = haar_unitary(n, &mut rng);
                emit(&serde_json::to_value(MatrixJson::from_matrix(&u))?)?;
            }
            Ok(())
        }
        Command::Dims { m, n } => {
            if m == 0 || n == 0 {
                return Err(CliError::Validation("--m and --n must be positive".into()));
            }
            emit(&json!({ "dim_dlu": dim_dlu(m, n) }))
        }
    }
}

fn main() {
    if let Ok(threads) = std::env::var("ORBITVOL_THREADS") {
        if let Ok(k) = threads.trim().parse::<usize>() {
            if k >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
        }
    }

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                print!("{e}");
                std::process::exit(EXIT_OK);
            }
            ErrorKind::InvalidSubcommand => {
                eprint!("{e}");
                std::process::exit(EXIT_USAGE);
            }
            _ => {
                eprint!("{e}");
                println!("{}", json!({ "error": e.to_string() }));
                std::process::exit(EXIT_VALIDATION);
            }
        },
    };

    match run(cli.cmd) {
        Ok(()) => std::process::exit(EXIT_OK),
        Err(CliError::Validation(msg)) => {
            println!("{}", json!({ "error": msg }));
            std::process::exit(EXIT_VALIDATION);
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            std::process::exit(EXIT_INTERNAL);
        }
    }
}
