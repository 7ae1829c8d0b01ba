use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use linoptics_core::io::{
    distribution_to_csv, distribution_to_json, matrix_to_json, parse_matrix_json, to_json_string,
};
use linoptics_core::permanent::RYSER_MAX;
use linoptics_core::{
    check_orthogonal, check_symplectic, chi_square_gof, fermion_amplitude,
    fermion_distribution_with_cap, fermion_mode_probabilities, mean_photon_numbers,
    output_distribution_with_cap, permanent_naive, permanent_ryser, random_haar_unitary,
    realify_matrix, sample, transition_amplitude, validate_unitary, ComplexMatrix, Error,
    FermionState, FockBasis, OccupationVector, OutputDistribution, OutputFormat, RunConfig,
    Statistics, UnitaryMatrix, DEFAULT_BASIS_CAP, DERIVED_TOL, UNITARITY_TOL,
};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "linoptics",
    version,
    about = "Exact simulation of linear optical networks"
)]
struct Cli {
    /// Worker threads for distribution builds (0 = all cores)
    #[arg(long, global = true, env = "LINOPTICS_THREADS", default_value_t = 0)]
    threads: usize,
    /// Tolerance on max |U^dagger U - I|
    #[arg(long, global = true, default_value_t = UNITARITY_TOL)]
    tol: f64,
    /// Maximum number of basis states
    #[arg(long, global = true, default_value_t = DEFAULT_BASIS_CAP)]
    cap: usize,
    /// Largest particle number (permanent size) accepted
    #[arg(long, global = true, default_value_t = RYSER_MAX)]
    max_particles: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Permanent of a square matrix
    Permanent {
        matrix: PathBuf,
        /// Use the factorial-time reference kernel
        #[arg(long)]
        naive: bool,
    },
    /// Canonical Fock basis for d modes and n particles
    Basis {
        #[arg(long = "d")]
        modes: usize,
        #[arg(long = "n")]
        particles: usize,
        #[arg(long)]
        fermion: bool,
    },
    /// Transition amplitude between two Fock states
    Amplitude {
        matrix: PathBuf,
        #[arg(long = "in")]
        input: String,
        #[arg(long = "out")]
        output: String,
        #[arg(long)]
        fermion: bool,
    },
    /// Full output distribution
    Distribution {
        matrix: PathBuf,
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        fermion: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Per-mode mean occupations, computed without permanents
    Expect {
        matrix: PathBuf,
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        fermion: bool,
    },
    /// Sample outcomes and run a chi-square self-test
    Sample {
        matrix: PathBuf,
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        count: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        fermion: bool,
    },
    /// Unitarity, symplectic and orthogonal deviations
    Check { matrix: PathBuf },
    /// Haar-random unitary as matrix JSON
    RandomUnitary {
        #[arg(long = "d")]
        modes: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = io::stdout().lock();
    match run(cli, &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli, out: &mut impl Write) -> CliResult<()> {
    let config = RunConfig {
        unitarity_tol: cli.tol,
        basis_cap: cli.cap,
        permanent_limit: cli.max_particles,
        threads: cli.threads,
        format: OutputFormat::Json,
    };
    config.validate()?;
    if config.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build_global()
            .map_err(|e| Failure::Input(e.to_string()))?;
    }

    let text = match cli.command {
        Command::Permanent { matrix, naive } => {
            let m = load_matrix(&matrix)?;
            let (kernel, value) = if naive {
                ("naive", permanent_naive(&m)?)
            } else {
                ("ryser", permanent_ryser(&m)?)
            };
            to_json_string(
                &json!({ "kernel": kernel, "n": m.rows(), "permanent": [value.re, value.im] }),
            )?
        }
        Command::Basis {
            modes,
            particles,
            fermion,
        } => {
            let statistics = if fermion {
                Statistics::Fermi
            } else {
                Statistics::Bose
            };
            let basis = FockBasis::new(modes, particles, statistics, config.basis_cap)?;
            basis
                .states()
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join("\n")
        }
        Command::Amplitude {
            matrix,
            input,
            output,
            fermion,
        } => {
            let u = load_unitary(&matrix, &config)?;
            let (input, output) = (parse_state(&input)?, parse_state(&output)?);
            check_particles(&input, &config)?;
            let amp = if fermion {
                fermion_amplitude(
                    &u,
                    &FermionState::new(input.clone())?,
                    &FermionState::new(output.clone())?,
                )?
            } else {
                transition_amplitude(&u, &input, &output)?.value
            };
            to_json_string(&json!({
                "input": input.as_slice(),
                "output": output.as_slice(),
                "amplitude": [amp.re, amp.im],
                "probability": amp.norm_sqr(),
            }))?
        }
        Command::Distribution {
            matrix,
            input,
            fermion,
            format,
        } => {
            let u = load_unitary(&matrix, &config)?;
            let dist = distribution(&u, &parse_state(&input)?, fermion, &config)?;
            match format {
                Format::Json => distribution_to_json(&dist)?,
                Format::Csv => distribution_to_csv(&dist)?.trim_end().to_string(),
            }
        }
        Command::Expect {
            matrix,
            input,
            fermion,
        } => {
            let u = load_unitary(&matrix, &config)?;
            let input = parse_state(&input)?;
            let (key, values) = if fermion {
                (
                    "mode_probabilities",
                    fermion_mode_probabilities(&u, &FermionState::new(input.clone())?)?,
                )
            } else {
                ("mean_photon_numbers", mean_photon_numbers(&u, &input)?)
            };
            let total: f64 = values.iter().sum();
            let mut obj = serde_json::Map::new();
            obj.insert("input".into(), json!(input.as_slice()));
            obj.insert(key.into(), json!(values));
            obj.insert("total".into(), json!(total));
            to_json_string(&obj)?
        }
        Command::Sample {
            matrix,
            input,
            count,
            seed,
            fermion,
        } => {
            let u = load_unitary(&matrix, &config)?;
            let dist = distribution(&u, &parse_state(&input)?, fermion, &config)?;
            let run = sample(&dist, count, seed)?;
            let counts: Vec<_> = run
                .counts
                .iter()
                .map(|(&i, &c)| json!({ "state": dist.basis.states()[i].as_slice(), "count": c }))
                .collect();
            let gof = match chi_square_gof(&run, &dist) {
                Ok(g) => json!({
                    "statistic": g.statistic,
                    "degrees_of_freedom": g.degrees_of_freedom,
                    "p_value": g.p_value,
                    "bins": g.bins,
                }),
                Err(Error::TooFewBins(_)) => serde_json::Value::Null,
                Err(e) => return Err(e.into()),
            };
            to_json_string(&json!({
                "input": dist.input.as_slice(),
                "seed": run.seed,
                "count": run.count,
                "counts": counts,
                "chi_square": gof,
            }))?
        }
        Command::Check { matrix } => {
            let m = load_matrix(&matrix)?;
            let unitarity = m.unitarity_deviation();
            let real = realify_matrix(&m)?;
            let symplectic = check_symplectic(&real, DERIVED_TOL)?;
            let orthogonal = check_orthogonal(&real, DERIVED_TOL)?;
            let unitary = unitarity <= config.unitarity_tol;
            let report = to_json_string(&json!({
                "d": m.rows(),
                "unitarity_deviation": unitarity,
                "symplectic_deviation": symplectic.deviation,
                "orthogonal_deviation": orthogonal.deviation,
                "tolerance": config.unitarity_tol,
                "unitary": unitary,
                "symplectic": symplectic.passed,
                "orthogonal": orthogonal.passed,
            }))?;
            writeln!(out, "{report}").map_err(io_failure)?;
            if !unitary {
                return Err(Error::NotUnitary {
                    deviation: unitarity,
                    tolerance: config.unitarity_tol,
                }
                .into());
            }
            return Ok(());
        }
        Command::RandomUnitary { modes, seed } => {
            matrix_to_json(random_haar_unitary(modes, seed)?.matrix())?
        }
    };
    writeln!(out, "{text}").map_err(io_failure)
}

fn io_failure(e: io::Error) -> Failure {
    Failure::Input(e.to_string())
}

fn load_matrix(path: &Path) -> CliResult<ComplexMatrix> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let m =
        parse_matrix_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    if !m.is_square() || m.rows() == 0 {
        return Err(Failure::Input(format!(
            "{}: expected a non-empty square matrix",
            path.display()
        )));
    }
    Ok(m)
}

fn load_unitary(path: &Path, config: &RunConfig) -> CliResult<UnitaryMatrix> {
    Ok(validate_unitary(&load_matrix(path)?, config.unitarity_tol)?)
}

fn parse_state(s: &str) -> CliResult<OccupationVector> {
    Ok(s.parse()?)
}

fn check_particles(state: &OccupationVector, config: &RunConfig) -> CliResult<()> {
    let n = state.total();
    if n > config.permanent_limit {
        return Err(Failure::Input(format!(
            "{n} particles exceeds the limit of {} (see --max-particles)",
            config.permanent_limit
        )));
    }
    Ok(())
}

fn distribution(
    u: &UnitaryMatrix,
    input: &OccupationVector,
    fermion: bool,
    config: &RunConfig,
) -> CliResult<OutputDistribution> {
    check_particles(input, config)?;
    let dist = if fermion {
        fermion_distribution_with_cap(u, &FermionState::new(input.clone())?, config.basis_cap)?
    } else {
        output_distribution_with_cap(u, input, config.basis_cap)?
    };
    dist.check_normalized(linoptics_core::NORMALIZATION_TOL)?;
    Ok(dist)
}
