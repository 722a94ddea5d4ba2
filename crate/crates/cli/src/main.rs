//! `cubetile`: one request per invocation, one JSON document on stdout.
//!
//! Exit codes: 0 affirmative verdict, 1 negative verdict, 2 input error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cubetile::constraint::{
    certificate_index, construct_sublattice_tiling_with, decide_constraint_with, factorize_tiling_lattice,
    verify_certificate_with, DecideOptions, Triangle,
};
use cubetile::cube::{
    enumerate_open_cube_points_with, grid_coverage_oracle_with, keller_coordinate_check, lattice_window_with,
    overlap_witness, verify_lattice_tiling_with, CoverageVerdict, GridRegion,
};
use cubetile::format::{
    certificate_from_json, certificate_to_json, construction_to_json, coverage_report_to_json,
    lattice_to_json, matrix_to_json, permutation_to_json, rational_to_json, square_matrix_from_json,
    tiling_from_json, vector_from_json, vector_to_json,
};
use cubetile::lattice::{Boundary, BoxRegion};
use cubetile::linalg::{parse_rational, vec_sub};
use cubetile::periodic::{build_lattice_from_tiling, BuildOptions, PeriodicTiling, MAX_GUARANTEED_DIM};
use cubetile::spectral::{
    decide_spectral_basis_with, lattice_spectrum_check_with, pairwise_orthogonality, volume_rationality_check,
    Parallelepiped,
};
use cubetile::{Error, Execution, Lattice, QMatrix, QVector, Rational};
use num::Zero;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cubetile", version, about = "Exact unit-cube tiling decisions for lattice-constrained translation sets")]
struct Cli {
    /// Worker threads for the parallel loops (0 = one per core, 1 = sequential).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MatrixArg {
    /// JSON square matrix: a bare array of rows, or {"basis": ...} / {"matrix": ...}.
    #[arg(long)]
    matrix: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Does A·Z^d + [0,1)^d tile R^d?
    VerifyLattice(MatrixArg),
    /// Write a tiling lattice as P·G·Z^d with G lower unitriangular.
    Factorize(MatrixArg),
    /// Is there a lattice cube tiling with translates in A·Z^d? Emits a certificate.
    Decide {
        #[command(flatten)]
        input: MatrixArg,
        /// Shape of the triangular factor in the certificate.
        #[arg(long, value_enum, default_value = "lower")]
        triangle: TriangleArg,
    },
    /// Emit a tiling sublattice of A·Z^d, if one exists.
    Construct(MatrixArg),
    /// Check a certificate {P, R, G} against A.
    VerifyCertificate {
        #[command(flatten)]
        input: MatrixArg,
        #[arg(long)]
        certificate: PathBuf,
        #[arg(long, value_enum, default_value = "lower")]
        triangle: TriangleArg,
    },
    /// Extract a tiling lattice from a periodic cube tiling.
    BuildLattice {
        /// JSON tiling {"lattice": ..., "offsets": [...]}.
        #[arg(long)]
        tiling: PathBuf,
        /// Lattice that should contain the result.
        #[arg(long)]
        constraint: Option<PathBuf>,
        #[arg(long, default_value_t = MAX_GUARANTEED_DIM)]
        max_dim: usize,
        /// Run above --max-dim; a missing twin is then inconclusive.
        #[arg(long)]
        allow_high_dim: bool,
    },
    /// Is a periodic family of translates a tiling?
    ValidateTiling {
        #[arg(long)]
        tiling: PathBuf,
    },
    /// Keller's condition: some coordinate of a difference is a nonzero integer.
    KellerCheck {
        /// A difference vector, comma separated ("1/2,1,0").
        #[arg(long, conflicts_with = "tiling", required_unless_present = "tiling")]
        vector: Option<String>,
        /// Check every pair of translates of a tiling inside [-radius, radius]^d.
        #[arg(long)]
        tiling: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        radius: u32,
    },
    /// Orthogonality of exponentials on the parallelepiped B·[0,1)^d.
    SpectralCheck {
        /// Matrix B of the domain.
        #[arg(long)]
        domain: PathBuf,
        /// Lattice spectrum C·Z^d: is E(C·Z^d) an orthogonal basis?
        #[arg(long, conflicts_with = "frequencies", required_unless_present = "frequencies")]
        spectrum: Option<PathBuf>,
        /// Finite list of frequency vectors: are they pairwise orthogonal?
        #[arg(long)]
        frequencies: Option<PathBuf>,
    },
    /// Can some subset of A·Z^d be an orthogonal exponential basis on B·[0,1)^d?
    SpectralDecide {
        /// Frequency lattice A.
        #[arg(long)]
        frequencies: PathBuf,
        /// Matrix B of the domain.
        #[arg(long)]
        domain: PathBuf,
    },
    /// Is |det A| the reciprocal of an integer?
    VolumeCheck(MatrixArg),
    /// Count how many translated cubes cover each point of a rational grid.
    CoverageOracle {
        #[arg(long, conflicts_with = "tiling", required_unless_present = "tiling")]
        matrix: Option<PathBuf>,
        #[arg(long)]
        tiling: Option<PathBuf>,
        /// Lower corner: one rational for every coordinate, or a comma separated vector.
        #[arg(long, allow_hyphen_values = true)]
        lo: String,
        /// Upper corner (exclusive).
        #[arg(long, allow_hyphen_values = true)]
        hi: String,
        #[arg(long, default_value = "1/2")]
        mesh: String,
        /// Omit the per-point multiplicities.
        #[arg(long)]
        summary: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::VerifyLattice(_) => "verify-lattice",
            Command::Factorize(_) => "factorize",
            Command::Decide { .. } => "decide",
            Command::Construct(_) => "construct",
            Command::VerifyCertificate { .. } => "verify-certificate",
            Command::BuildLattice { .. } => "build-lattice",
            Command::ValidateTiling { .. } => "validate-tiling",
            Command::KellerCheck { .. } => "keller-check",
            Command::SpectralCheck { .. } => "spectral-check",
            Command::SpectralDecide { .. } => "spectral-decide",
            Command::VolumeCheck(_) => "volume-check",
            Command::CoverageOracle { .. } => "coverage-oracle",
        }
    }
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum TriangleArg {
    Lower,
    Upper,
}

impl From<TriangleArg> for Triangle {
    fn from(t: TriangleArg) -> Self {
        match t {
            TriangleArg::Lower => Triangle::Lower,
            TriangleArg::Upper => Triangle::Upper,
        }
    }
}

#[derive(Serialize)]
struct RunResult {
    command: &'static str,
    verdict: String,
    exit_code: u8,
    payload: Value,
}

struct Outcome {
    verdict: String,
    exit_code: u8,
    payload: Value,
}

impl Outcome {
    fn yes(verdict: &str, payload: Value) -> Self {
        Outcome { verdict: verdict.into(), exit_code: 0, payload }
    }

    fn no(verdict: &str, payload: Value) -> Self {
        Outcome { verdict: verdict.into(), exit_code: 1, payload }
    }

    fn decided(ok: bool, yes: &str, no: &str, payload: Value) -> Self {
        if ok {
            Self::yes(yes, payload)
        } else {
            Self::no(no, payload)
        }
    }
}

/// Everything that ends in exit code 2.
#[derive(Debug)]
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Run = std::result::Result<Outcome, Failure>;

fn read_json(path: &Path) -> std::result::Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn read_matrix(path: &Path) -> std::result::Result<QMatrix, Failure> {
    square_matrix_from_json(&read_json(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn read_tiling(path: &Path) -> std::result::Result<PeriodicTiling, Failure> {
    tiling_from_json(&read_json(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn parse_vector(text: &str) -> std::result::Result<QVector, Failure> {
    text.split(',').map(|s| parse_rational(s).map_err(Failure::from)).collect()
}

/// A corner given as a scalar expands to every coordinate.
fn parse_corner(text: &str, d: usize) -> std::result::Result<QVector, Failure> {
    let v = parse_vector(text)?;
    match v.len() {
        1 => Ok(vec![v[0].clone(); d]),
        n if n == d => Ok(v),
        n => Err(Failure(format!("corner {text:?} has {n} coordinates, expected 1 or {d}"))),
    }
}

fn self_check(ok: bool, what: &str) -> std::result::Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure(format!("internal self-check failed: {what}")))
    }
}

fn nonsingular(a: &QMatrix) -> std::result::Result<(), Failure> {
    if a.det()?.is_zero() {
        return Err(Error::SingularMatrix.into());
    }
    Ok(())
}

fn run(command: &Command, exec: Execution) -> Run {
    match command {
        Command::VerifyLattice(input) => verify_lattice(&read_matrix(&input.matrix)?, exec),
        Command::Factorize(input) => factorize(&read_matrix(&input.matrix)?),
        Command::Decide { input, triangle } => decide(&read_matrix(&input.matrix)?, (*triangle).into(), exec),
        Command::Construct(input) => construct(&read_matrix(&input.matrix)?, exec),
        Command::VerifyCertificate { input, certificate, triangle } => {
            let a = read_matrix(&input.matrix)?;
            let cert = certificate_from_json(&read_json(certificate)?)?;
            let ok = verify_certificate_with(&a, &cert, (*triangle).into())?;
            Ok(Outcome::decided(ok, "valid certificate", "invalid certificate", Value::Null))
        }
        Command::BuildLattice { tiling, constraint, max_dim, allow_high_dim } => {
            let t = read_tiling(tiling)?;
            let constraint = constraint.as_deref().map(read_matrix).transpose()?;
            build_lattice(&t, constraint, *max_dim, *allow_high_dim, exec)
        }
        Command::ValidateTiling { tiling } => {
            let t = read_tiling(tiling)?;
            let ok = t.validate()?;
            Ok(Outcome::decided(ok, "tiling", "not a tiling", json!({ "translates_per_period": t.offsets().len() })))
        }
        Command::KellerCheck { vector, tiling, radius } => match (vector, tiling) {
            (Some(v), _) => {
                let v = parse_vector(v)?;
                let ok = keller_coordinate_check(&v);
                Ok(Outcome::decided(ok, "keller holds", "keller fails", json!({ "vector": vector_to_json(&v) })))
            }
            (None, Some(path)) => keller_window(&read_tiling(path)?, *radius),
            (None, None) => Err(Failure("either --vector or --tiling is required".into())),
        },
        Command::SpectralCheck { domain, spectrum, frequencies } => {
            let b = read_matrix(domain)?;
            match (spectrum, frequencies) {
                (Some(c), _) => {
                    let c = read_matrix(c)?;
                    let ok = lattice_spectrum_check_with(&b, &c, exec)?;
                    Ok(Outcome::decided(ok, "orthogonal basis", "not an orthogonal basis", Value::Null))
                }
                (None, Some(path)) => finite_spectrum(b, &read_json(path)?),
                (None, None) => Err(Failure("either --spectrum or --frequencies is required".into())),
            }
        }
        Command::SpectralDecide { frequencies, domain } => {
            spectral_decide(&read_matrix(frequencies)?, &read_matrix(domain)?, exec)
        }
        Command::VolumeCheck(input) => {
            let a = read_matrix(&input.matrix)?;
            let det = a.det()?;
            let payload = |n: Value| json!({ "det": rational_to_json(&det), "reciprocal": n });
            Ok(match volume_rationality_check(&a)? {
                Some(n) => Outcome::yes("det reciprocal integer", payload(json!(n.to_string()))),
                None => Outcome::no("det not reciprocal integer", payload(Value::Null)),
            })
        }
        Command::CoverageOracle { matrix, tiling, lo, hi, mesh, summary } => {
            let (d, source) = match (matrix, tiling) {
                (Some(path), _) => {
                    let lattice = Lattice::new(read_matrix(path)?)?;
                    (lattice.dim(), Source::Lattice(lattice))
                }
                (None, Some(path)) => {
                    let t = read_tiling(path)?;
                    (t.dim(), Source::Tiling(t))
                }
                (None, None) => return Err(Failure("either --matrix or --tiling is required".into())),
            };
            let region = GridRegion::new(parse_corner(lo, d)?, parse_corner(hi, d)?, parse_rational(mesh)?)?;
            let translates = match &source {
                Source::Lattice(l) => lattice_window_with(l, &region, exec)?,
                Source::Tiling(t) => t.window(&region)?,
            };
            let report = grid_coverage_oracle_with(translates, &region, exec)?;
            let payload = coverage_report_to_json(&report, !summary);
            let verdict = report.verdict.as_str();
            Ok(Outcome::decided(report.verdict == CoverageVerdict::ExactCover, verdict, verdict, payload))
        }
    }
}

enum Source {
    Lattice(Lattice),
    Tiling(PeriodicTiling),
}

fn verify_lattice(a: &QMatrix, exec: Execution) -> Run {
    nonsingular(a)?;
    if verify_lattice_tiling_with(a, exec)? {
        return Ok(Outcome::yes("lattice tiling", json!({ "det": rational_to_json(&a.det()?) })));
    }
    // a nonzero k with A·k in (-1,1)^d gives two overlapping cubes; otherwise
    // the covolume is wrong and the cubes leave gaps
    let witness = enumerate_open_cube_points_with(a, exec)?
        .into_iter()
        .find(|k| k.iter().any(|x| !x.is_zero()))
        .map(|k| -> std::result::Result<Value, Failure> {
            let point = overlap_witness(a, &k)?;
            Ok(json!({ "k": k.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "point": vector_to_json(&point) }))
        })
        .transpose()?;
    Ok(Outcome::no(
        "not a lattice tiling",
        json!({ "det": rational_to_json(&a.det()?), "overlap": witness.unwrap_or(Value::Null) }),
    ))
}

fn factorize(a: &QMatrix) -> Run {
    nonsingular(a)?;
    match factorize_tiling_lattice(a) {
        Ok((p, g)) => {
            let pg = p.qmatrix().mul_mat(&g)?;
            self_check(Lattice::new(pg)?.equals(&Lattice::new(a.clone())?)?, "P·G·Z^d differs from A·Z^d")?;
            Ok(Outcome::yes("factorized", json!({ "P": permutation_to_json(&p), "G": matrix_to_json(&g) })))
        }
        Err(Error::NotATilingLattice) => Ok(Outcome::no("not a tiling lattice", Value::Null)),
        Err(e) => Err(e.into()),
    }
}

fn decide(a: &QMatrix, target: Triangle, exec: Execution) -> Run {
    let options = DecideOptions { target, execution: exec };
    Ok(match decide_constraint_with(a, options)? {
        Some(cert) => {
            self_check(
                verify_certificate_with(a, &cert, target)?,
                "certificate does not verify",
            )?;
            let index = certificate_index(&cert)?;
            let mut payload = certificate_to_json(&cert);
            payload["index"] = json!(index.to_string());
            Outcome::yes("feasible", payload)
        }
        None => Outcome::no("infeasible", Value::Null),
    })
}

fn construct(a: &QMatrix, exec: Execution) -> Run {
    Ok(match construct_sublattice_tiling_with(a, exec)? {
        Some(l) => {
            self_check(verify_lattice_tiling_with(l.basis(), exec)?, "constructed lattice does not tile")?;
            let index = Lattice::new(a.clone())?.index_of(&l)?;
            let mut payload = lattice_to_json(&l);
            payload["index"] = json!(index.to_string());
            Outcome::yes("constructed", payload)
        }
        None => Outcome::no("no tiling sublattice", Value::Null),
    })
}

fn build_lattice(
    t: &PeriodicTiling,
    constraint: Option<QMatrix>,
    max_dim: usize,
    allow_high_dim: bool,
    exec: Execution,
) -> Run {
    let d = t.dim();
    if d > max_dim && !allow_high_dim {
        return Err(Failure(format!("dimension {d} exceeds --max-dim {max_dim}; pass --allow-high-dim to run anyway")));
    }
    let constraint = constraint.map(Lattice::new).transpose()?;
    if let Some(c) = &constraint {
        if c.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: c.dim() }.into());
        }
    }
    let options = BuildOptions { allow_high_dim: allow_high_dim || d <= max_dim, execution: exec };
    let built = match build_lattice_from_tiling(t, options) {
        Ok(c) => c,
        Err(Error::NotATiling(why)) => return Ok(Outcome::no("not a tiling", json!({ "reason": why }))),
        Err(Error::NoTwinFound { dimension }) => {
            return Ok(Outcome::no("no twin found", json!({ "dimension": dimension })));
        }
        Err(e) => return Err(e.into()),
    };
    self_check(verify_lattice_tiling_with(built.lattice.basis(), exec)?, "built lattice does not tile")?;
    let mut payload = construction_to_json(&built);
    match &constraint {
        Some(c) => {
            let inside = built.lattice.is_sublattice_of(c)?;
            payload["within_constraint"] = json!(inside);
            Ok(Outcome::decided(inside, "lattice tiling", "lattice tiling outside the constraint", payload))
        }
        None => Ok(Outcome::yes("lattice tiling", payload)),
    }
}

fn keller_window(t: &PeriodicTiling, radius: u32) -> Run {
    let d = t.dim();
    let r = Rational::from_integer(radius.into());
    let window = BoxRegion {
        lo: vec![-r.clone(); d],
        hi: vec![r; d],
        lo_side: Boundary::Closed,
        hi_side: Boundary::Closed,
    };
    let translates = t.translates_in(&window)?;
    let mut violation = Value::Null;
    'outer: for (i, a) in translates.iter().enumerate() {
        for b in &translates[i + 1..] {
            if !keller_coordinate_check(&vec_sub(a, b)) {
                violation = json!([vector_to_json(a), vector_to_json(b)]);
                break 'outer;
            }
        }
    }
    let payload = json!({ "translates": translates.len(), "radius": radius, "violation": violation });
    Ok(Outcome::decided(violation.is_null(), "keller holds", "keller fails", payload))
}

fn finite_spectrum(b: QMatrix, doc: &Value) -> Run {
    let list = match doc {
        Value::Object(map) => map.get("points").ok_or_else(|| Failure("expected a \"points\" field".into()))?,
        _ => doc,
    };
    let points = list
        .as_array()
        .ok_or_else(|| Failure("frequencies must be an array of vectors".into()))?
        .iter()
        .map(vector_from_json)
        .collect::<cubetile::Result<Vec<_>>>()?;
    let domain = Parallelepiped::at_origin(b)?;
    let verdicts = pairwise_orthogonality(&domain, &points)?;
    let n = points.len();
    let first_bad = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .zip(&verdicts)
        .find(|(_, ok)| !**ok)
        .map(|((i, j), _)| json!([i, j]));
    let payload = json!({ "points": n, "non_orthogonal": first_bad.clone().unwrap_or(Value::Null) });
    Ok(Outcome::decided(first_bad.is_none(), "pairwise orthogonal", "not pairwise orthogonal", payload))
}

fn spectral_decide(a: &QMatrix, b: &QMatrix, exec: Execution) -> Run {
    let options = DecideOptions { target: Triangle::Lower, execution: exec };
    Ok(match decide_spectral_basis_with(a, b, options)? {
        Some(cert) => {
            // E(A·R·Z^d) is then an orthogonal basis on B·[0,1)^d
            let spectrum = a.mul_mat(&QMatrix::from_int(&cert.r))?;
            self_check(lattice_spectrum_check_with(b, &spectrum, exec)?, "spectrum lattice is not a basis")?;
            let mut payload = certificate_to_json(&cert);
            payload["spectrum"] = matrix_to_json(&spectrum);
            Outcome::yes("spectral basis exists", payload)
        }
        None => Outcome::no("no spectral basis", Value::Null),
    })
}

fn execution(threads: usize) -> std::result::Result<Execution, Failure> {
    if threads == 1 {
        return Ok(Execution::Sequential);
    }
    #[cfg(feature = "parallel")]
    if threads > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure(format!("thread pool: {e}")))?;
    }
    #[cfg(not(feature = "parallel"))]
    if threads > 1 {
        eprintln!("cubetile: built without the parallel feature; --threads {threads} runs sequentially");
    }
    Ok(Execution::default())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let outcome = execution(cli.threads).and_then(|exec| run(&cli.command, exec));
    let result = match outcome {
        Ok(o) => RunResult { command: name, verdict: o.verdict, exit_code: o.exit_code, payload: o.payload },
        Err(Failure(msg)) => {
            eprintln!("cubetile {name}: {msg}");
            RunResult { command: name, verdict: "input error".into(), exit_code: 2, payload: json!({ "error": msg }) }
        }
    };
    let text = serde_json::to_string_pretty(&result).expect("RunResult serializes");
    let mut stdout = std::io::stdout().lock();
    if writeln!(stdout, "{text}").is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(result.exit_code)
}
