mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use finite_radon::complex::{self, LineComplex};
use finite_radon::data::parse_values;
use finite_radon::enumeration::{self, CountTallies, CountCheck};
use finite_radon::hyperplane::{self, HyperplaneGeometry};
use finite_radon::radon::{self, ScalarPlusOnes};
use finite_radon::{errata, BolkerReport, DataVector, GeometrySpace, IncidenceGeometry, Role};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use render::{render, Format};

/// Exact finite Radon transforms, range tests and admissible complexes.
#[derive(Debug, Parser)]
#[command(name = "finite-radon", version)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GeometryKind {
    Lines,
    Hyperplanes,
    Polygon,
}

#[derive(Debug, Args)]
struct GeometryArgs {
    #[arg(long, value_enum, default_value = "lines")]
    geometry: GeometryKind,
    #[arg(long, default_value_t = 2)]
    q: u32,
    #[arg(long, default_value_t = 3)]
    n: u32,
    /// Number of sides, for polygons.
    #[arg(long, default_value_t = 3)]
    m: usize,
}

#[derive(Debug, Args)]
struct SpaceArgs {
    #[arg(long, default_value_t = 2)]
    q: u32,
    #[arg(long, default_value_t = 3)]
    n: u32,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Incidence matrix of a geometry (`--format plain` gives the 0/1 dump).
    Matrix(GeometryArgs),
    /// Bolker constants, normal operator and an inversion round trip.
    Bolker {
        #[command(flatten)]
        geometry: GeometryArgs,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Spread sums and range membership of hyperplane data read from a file.
    Cavalieri {
        #[command(flatten)]
        space: SpaceArgs,
        /// Rationals in canonical hyperplane order.
        file: PathBuf,
    },
    /// Pattern and rank verdicts for a set of hyperplane ids.
    HyperplaneAdmissible {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(required = true)]
        planes: Vec<usize>,
    },
    /// Obstruction report for a line complex file; exits 1 if inadmissible.
    Check { file: PathBuf },
    /// Recovers point data from line sums over an admissible complex.
    Reconstruct {
        complex: PathBuf,
        /// Rationals in the complex's line order.
        data: PathBuf,
    },
    /// A kernel vector of the restricted transform; exits 1 if admissible.
    Witness { file: PathBuf },
    /// Classifies every line complex of Z_2^3.
    Census {
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        partitions: usize,
        #[arg(long)]
        verify_rank: bool,
    },
    /// Closed-form counts of omitted points and isolated lines against brute force.
    Counts {
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        partitions: usize,
    },
    /// Admissibility rate of random complexes.
    Sample {
        #[arg(long, default_value_t = 4)]
        n: u32,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Printed figures that disagree with recomputation.
    Errata,
}

/// Distinguishes input and contract errors (exit 2) from negative verdicts (exit 1).
enum Outcome {
    Ok(String),
    Negative(String),
}

fn build_geometry(args: &GeometryArgs) -> anyhow::Result<IncidenceGeometry> {
    Ok(match args.geometry {
        GeometryKind::Polygon => IncidenceGeometry::polygon(args.m)?,
        GeometryKind::Lines => IncidenceGeometry::lines(&GeometrySpace::new(args.q, args.n)?),
        GeometryKind::Hyperplanes => IncidenceGeometry::hyperplanes(&GeometrySpace::new(args.q, args.n)?)?,
    })
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_complex(path: &Path) -> anyhow::Result<LineComplex> {
    LineComplex::parse(&read(path)?).with_context(|| format!("{}", path.display()))
}

#[derive(Serialize)]
struct MatrixOut {
    rows: usize,
    cols: usize,
    matrix: Vec<String>,
}

#[derive(Serialize)]
struct RoundTrip {
    trials: usize,
    seed: u64,
    exact: usize,
}

#[derive(Serialize)]
struct BolkerOut {
    points: usize,
    blocks: usize,
    #[serde(flatten)]
    report: BolkerReport,
    injective: bool,
    normal_operator: Option<ScalarPlusOnes>,
    inverse: Option<ScalarPlusOnes>,
    round_trip: Option<RoundTrip>,
}

#[derive(Serialize)]
struct CavalieriOut {
    #[serde(flatten)]
    report: hyperplane::CavalieriReport,
    solvable: bool,
}

#[derive(Serialize)]
struct HyperplaneOut {
    planes: Vec<usize>,
    pattern: hyperplane::PatternReport,
    rank_admissible: bool,
    agree: bool,
}

#[derive(Serialize)]
struct CheckOut {
    lines: Vec<(usize, usize)>,
    flags: complex::ObstructionFlags,
    #[serde(flatten)]
    report: complex::AdmissibilityReport,
}

#[derive(Serialize)]
struct ReconstructOut {
    lines: Vec<(usize, usize)>,
    f: DataVector,
}

#[derive(Serialize)]
struct CensusOut {
    n: u32,
    partitions: usize,
    #[serde(flatten)]
    result: enumeration::CensusResult,
}

#[derive(Serialize)]
struct CountsOut {
    n: u32,
    all_agree: bool,
    point_omitting: Vec<CountCheck>,
    isolated_lines: Vec<CountCheck>,
    mixed: Vec<CountCheck>,
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let fmt = cli.format;
    let out = match &cli.command {
        Command::Matrix(args) => {
            let m = radon::radon_matrix(&build_geometry(args)?);
            match fmt {
                Format::Plain => m.dump(),
                Format::Csv => m.dump().replace(' ', ","),
                Format::Json => render(
                    &MatrixOut { rows: m.rows, cols: m.cols, matrix: m.dump().lines().map(String::from).collect() },
                    fmt,
                )?,
            }
        }
        Command::Bolker { geometry, trials, seed } => {
            let g = build_geometry(geometry)?;
            let report = radon::bolker_check(&g)?;
            let normal = report.holds.then(|| radon::normal_operator(&g)).transpose()?;
            let inverse = normal.as_ref().map(ScalarPlusOnes::inverse).transpose()?;
            let round_trip = if report.holds {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut exact = 0;
                for _ in 0..*trials {
                    let f = random_integers(&mut rng, g.x_count());
                    exact += (radon::bolker_invert(&g, &radon::radon_apply(&g, &f)?)? == f) as usize;
                }
                Some(RoundTrip { trials: *trials, seed: *seed, exact })
            } else {
                None
            };
            render(
                &BolkerOut {
                    points: g.x_count(),
                    blocks: g.y_count(),
                    report,
                    injective: radon::is_injective(&g),
                    normal_operator: normal,
                    inverse,
                    round_trip,
                },
                fmt,
            )?
        }
        Command::Cavalieri { space, file } => {
            let geo = HyperplaneGeometry::new(GeometrySpace::new(space.q, space.n)?)?;
            let g = DataVector::new(Role::Block, parse_values(&read(file)?)?);
            let report = hyperplane::cavalieri_check(&geo, &g)?;
            let member = hyperplane::range_membership(&geo, &g)?;
            let text = render(&CavalieriOut { report, solvable: member }, fmt)?;
            return Ok(if member { Outcome::Ok(text) } else { Outcome::Negative(text) });
        }
        Command::HyperplaneAdmissible { space, planes } => {
            let geo = HyperplaneGeometry::new(GeometrySpace::new(space.q, space.n)?)?;
            let pattern = hyperplane::admissible_pattern(&geo, planes)?;
            let rank = hyperplane::admissible_rank(&geo, planes)?;
            let mut sorted = planes.clone();
            sorted.sort_unstable();
            let agree = pattern.admissible == rank;
            let text = render(&HyperplaneOut { planes: sorted, pattern, rank_admissible: rank, agree }, fmt)?;
            return Ok(if rank { Outcome::Ok(text) } else { Outcome::Negative(text) });
        }
        Command::Check { file } => {
            let c = read_complex(file)?;
            let report = complex::obstruction_scan(&c)?;
            let admissible = report.admissible;
            let text = render(&CheckOut { lines: c.pairs(), flags: complex::classify(&c), report }, fmt)?;
            return Ok(if admissible { Outcome::Ok(text) } else { Outcome::Negative(text) });
        }
        Command::Reconstruct { complex: path, data } => {
            let c = read_complex(path)?;
            let g = DataVector::new(Role::Block, parse_values(&read(data)?)?);
            let f = complex::reconstruct(&c, &g)?;
            render(&ReconstructOut { lines: c.pairs(), f }, fmt)?
        }
        Command::Witness { file } => {
            let c = read_complex(file)?;
            return Ok(match complex::kernel_witness(&c) {
                Ok(w) => Outcome::Ok(render(&w, fmt)?),
                Err(finite_radon::Error::Admissible) => {
                    Outcome::Negative(render(&serde_json::json!({ "admissible": true, "witness": null }), fmt)?)
                }
                Err(e) => return Err(e.into()),
            });
        }
        Command::Census { n, partitions, verify_rank } => {
            let start = Instant::now();
            let result = enumeration::enumerate_all_complexes(*n, *partitions, *verify_rank)?;
            verbose(&format!("census took {:.2?}", start.elapsed()));
            render(&CensusOut { n: *n, partitions: *partitions, result }, fmt)?
        }
        Command::Counts { n, partitions } => {
            if *n != 3 {
                // same guard and message as the library entry points
                enumeration::count_point_omitting(*n)?;
            }
            if *partitions == 0 {
                bail!("partitions must be at least 1");
            }
            let t = CountTallies::sweep(*partitions);
            let point_omitting = enumeration::point_omitting_checks(&t);
            let isolated_lines = enumeration::isolated_line_checks(&t);
            let mixed = enumeration::mixed_checks(&t);
            let all_agree = point_omitting.iter().chain(&isolated_lines).chain(&mixed).all(|c| c.agrees);
            let text = render(&CountsOut { n: *n, all_agree, point_omitting, isolated_lines, mixed }, fmt)?;
            return Ok(if all_agree { Outcome::Ok(text) } else { Outcome::Negative(text) });
        }
        Command::Sample { n, trials, seed } => render(&complex::sample_admissibility_rate(*n, *trials, *seed)?, fmt)?,
        Command::Errata => render(&errata::errata(), fmt)?,
    };
    Ok(Outcome::Ok(out))
}

fn random_integers(rng: &mut ChaCha8Rng, len: usize) -> DataVector {
    let values: Vec<i64> = (0..len).map(|_| rng.random_range(-100..=100)).collect();
    DataVector::from_integers(Role::Point, &values)
}

/// Diagnostics on stderr when `FINITE_RADON_VERBOSE` is set; stdout is unaffected.
fn verbose(msg: &str) {
    if std::env::var_os("FINITE_RADON_VERBOSE").is_some() {
        eprintln!("{msg}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Negative(text)) => {
            print!("{text}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {}", format!("{e:#}").replace('\n', " "));
            ExitCode::from(2)
        }
    }
}
