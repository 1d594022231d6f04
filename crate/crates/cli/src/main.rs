use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use valuon::checks::run_checks;
use valuon::cone::{brion_lattice_gen, exp_integral, exp_integral_cone, zeta_p, ConeValuationInput};
use valuon::io;
use valuon::lattice::unimodular_triangulate;
use valuon::valuation::{
    basis_valuation, discrete_moment, ehrhart_tensor_coeffs, probe_set, z2_from_f, z_f, DimensionProbe,
    DEFAULT_PROBE_SEED,
};
use valuon::{BivariatePolynomial, LatticePolygon};

mod render;

use render::Renderer;

const MATCH_LABEL: &str = "rank lower bound, matches theorem";

#[derive(Parser)]
#[command(name = "valuon", version, about = "Exact unimodular valuations on lattice polygons")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Also show G-invariant polynomials in terms of p2 and p3.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Route {
    Triangles,
    Cones,
}

#[derive(clap::Args)]
struct PolygonArg {
    /// Polygon file, `{"vertices": [[x, y], ...]}`.
    #[arg(long)]
    polygon: PathBuf,
}

#[derive(clap::Args)]
struct TruncArg {
    /// Series truncation degree.
    #[arg(long, env = "VALUON_TRUNC_DEFAULT", default_value_t = 10)]
    trunc: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Unimodular triangulation, optionally followed by seeded random flips.
    Triangulate {
        #[command(flatten)]
        polygon: PolygonArg,
        #[arg(long, default_value_t = 0)]
        flips: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Discrete moment tensor L^r.
    Moment {
        #[command(flatten)]
        polygon: PolygonArg,
        #[arg(long)]
        rank: u32,
    },
    /// Ehrhart tensor coefficients L_0^r .. L_(r+2)^r.
    Ehrhart {
        #[command(flatten)]
        polygon: PolygonArg,
        #[arg(long)]
        rank: u32,
    },
    /// The one-homogeneous valuation Z_f.
    Zf {
        #[command(flatten)]
        polygon: PolygonArg,
        /// Polynomial file for f.
        #[arg(long = "f")]
        f: PathBuf,
        /// Degree of f; inferred when omitted.
        #[arg(long)]
        rank: Option<u32>,
    },
    /// The basis valuation L_1^{2k,3l}.
    Basis {
        #[command(flatten)]
        polygon: PolygonArg,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
    },
    /// The two-homogeneous lift of Z_f.
    Z2 {
        #[command(flatten)]
        polygon: PolygonArg,
        #[arg(long = "f")]
        f: PathBuf,
        #[arg(long)]
        rank: Option<u32>,
    },
    /// The d-dilative exponential valuation built from f (or from a numerator of R).
    Expval {
        #[command(flatten)]
        polygon: PolygonArg,
        #[arg(long, allow_negative_numbers = true)]
        d: i32,
        /// Generator f of degree d + 1.
        #[arg(long = "f", required_unless_present = "numerator", conflicts_with = "numerator")]
        f: Option<PathBuf>,
        /// Numerator N of R = N / (x y), homogeneous of degree d + 2.
        #[arg(long)]
        numerator: Option<PathBuf>,
        #[command(flatten)]
        trunc: TruncArg,
    },
    /// Lattice exponential sum through vertex cones.
    Brion {
        #[command(flatten)]
        polygon: PolygonArg,
        #[command(flatten)]
        trunc: TruncArg,
    },
    /// Exponential integral.
    Expint {
        #[command(flatten)]
        polygon: PolygonArg,
        #[command(flatten)]
        trunc: TruncArg,
        #[arg(long, value_enum, default_value_t = Route::Triangles)]
        route: Route,
    },
    /// Observed ranks against the dimension theorems.
    Dims {
        #[arg(long, default_value_t = 8, allow_negative_numbers = true)]
        max_d: i32,
        #[arg(long, default_value_t = 11)]
        max_r: u32,
        #[arg(long, default_value_t = DEFAULT_PROBE_SEED)]
        seed: u64,
    },
    /// The named property suite.
    Check {
        #[arg(long, default_value_t = DEFAULT_PROBE_SEED)]
        seed: u64,
        /// Only checks whose name contains this string.
        #[arg(long)]
        only: Option<String>,
    },
}

enum Failure {
    Input(String),
    Math(String),
    Mismatch(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Math(_) => 2,
            Failure::Mismatch(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Math(m) | Failure::Mismatch(m) => m,
        }
    }
}

impl From<valuon::Error> for Failure {
    fn from(e: valuon::Error) -> Self {
        match e {
            valuon::Error::Parse(_) => Failure::Input(e.to_string()),
            _ => Failure::Math(e.to_string()),
        }
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_polygon(arg: &PolygonArg) -> Result<LatticePolygon, Failure> {
    Ok(io::polygon_from_json(&read_json(&arg.polygon)?)?)
}

fn read_poly(path: &Path) -> Result<BivariatePolynomial, Failure> {
    Ok(io::poly_from_json(&read_json(path)?)?)
}

/// The homogeneous degree of `f`, or the given rank after checking it.
fn degree_of(f: &BivariatePolynomial, rank: Option<u32>) -> Result<u32, Failure> {
    let d = f.degree().unwrap_or(0);
    match rank {
        Some(r) if !f.is_zero() && !f.is_homogeneous_of(r) => Err(Failure::Input(format!(
            "f is not homogeneous of the given rank {r}"
        ))),
        Some(r) => Ok(r),
        None if f.is_homogeneous_of(d) => Ok(d),
        None => Err(Failure::Input("f is not homogeneous; pass --rank".into())),
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let out = Renderer::new(cli.format, cli.pretty);
    match &cli.command {
        Command::Triangulate { polygon, flips, seed } => {
            let p = read_polygon(polygon)?;
            let mut t = unimodular_triangulate(&p)?;
            if *flips > 0 {
                t = t.random_flips(&mut ChaCha8Rng::seed_from_u64(*seed), *flips);
            }
            Ok(out.triangulation(&t))
        }
        Command::Moment { polygon, rank } => Ok(out.poly(&discrete_moment(&read_polygon(polygon)?, *rank))),
        Command::Ehrhart { polygon, rank } => Ok(out.ehrhart(&ehrhart_tensor_coeffs(&read_polygon(polygon)?, *rank))),
        Command::Zf { polygon, f, rank } => {
            let f = read_poly(f)?;
            let r = degree_of(&f, *rank)?;
            Ok(out.poly(&z_f(&read_polygon(polygon)?, &f, r)?))
        }
        Command::Basis { polygon, k, l } => Ok(out.poly(&basis_valuation(&read_polygon(polygon)?, *k, *l)?)),
        Command::Z2 { polygon, f, rank } => {
            let f = read_poly(f)?;
            let r = degree_of(&f, *rank)?;
            Ok(out.poly(&z2_from_f(&read_polygon(polygon)?, &f, r)?))
        }
        Command::Expval {
            polygon,
            d,
            f,
            numerator,
            trunc,
        } => {
            let p = read_polygon(polygon)?;
            let input = match (f, numerator) {
                (Some(f), _) => ConeValuationInput::from_generator(&read_poly(f)?, *d)?,
                (None, Some(n)) => ConeValuationInput::new(read_poly(n)?, *d)?,
                (None, None) => unreachable!("clap requires one of --f and --numerator"),
            };
            Ok(out.series(&zeta_p(&p, &input, trunc.trunc)?))
        }
        Command::Brion { polygon, trunc } => Ok(out.series(&brion_lattice_gen(&read_polygon(polygon)?, trunc.trunc)?)),
        Command::Expint { polygon, trunc, route } => {
            let p = read_polygon(polygon)?;
            let s = match route {
                Route::Triangles => exp_integral(&p, trunc.trunc),
                Route::Cones => exp_integral_cone(&p, trunc.trunc)?,
            };
            Ok(out.series(&s))
        }
        Command::Dims { max_d, max_r, seed } => {
            let probe = DimensionProbe::new(probe_set(*seed));
            let tensor = probe.tensor_table(*max_r)?;
            let dilative = probe.dilative_table(*max_d)?;
            let text = out.dims(*seed, probe.probes().len(), &tensor, &dilative, MATCH_LABEL);
            let bad = tensor.iter().filter(|r| r.observed != r.predicted as usize).count()
                + dilative.iter().filter(|r| r.observed != r.predicted as usize).count();
            if bad > 0 {
                print!("{text}");
                return Err(Failure::Mismatch(format!("{bad} rows differ from the theorem")));
            }
            Ok(text)
        }
        Command::Check { seed, only } => {
            let outcomes = run_checks(*seed, only.as_deref());
            if outcomes.is_empty() {
                return Err(Failure::Input(format!("no check matches {:?}", only.as_deref().unwrap_or(""))));
            }
            let text = out.checks(*seed, &outcomes);
            let bad = outcomes.iter().filter(|o| o.result.is_err()).count();
            if bad > 0 {
                print!("{text}");
                return Err(Failure::Mismatch(format!("{bad} checks failed")));
            }
            Ok(text)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
