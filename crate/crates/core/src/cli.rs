//! Command-line surface. Every command prints one JSON document on stdout:
//! `{"status": …, "payload": …, "seeds": […]}` (except `build`, which prints
//! the algebra itself). Exit codes: 0 pass, 1 fail or infeasible, 2 error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::filippov::{self, build_filippov, local_certificate, verify_der_characterization, LocalCertificate};
use crate::linalg::scalar::{self, Vector};
use crate::linalg::Matrix;
use crate::nary::json::{algebra_from_str, algebra_to_json, vector_from_json};
use crate::nary::local::{antisymmetric_space, probes_as_vectors};
use crate::nary::{
    check_anticommutativity, check_filippov, default_probes, locder_upper_bound, multi_point_witness, DerivationSpace,
    LinearMap, NaryAlgebra, WitnessTrace,
};
use crate::octonion::explore::explore_2local;
use crate::octonion::frame::{
    automorphism_from_frame, check_automorphism, frame_from_pair_approx, frame_from_pair_exact, Mode, UnitSearch,
    DEFAULT_TOL,
};
use crate::octonion::identities::check_octonion_identities;
use crate::octonion::malcev::{m8_basis_check, params_roundtrip, params_to_matrix, TernaryOctonionBracket, M8};
use crate::octonion::witness::{constructive_local_witness, ConstructiveWitness};
use crate::octonion::ExactOctonion;
use crate::sampling;

pub const SEED_ENV: &str = "NARYDER_SEED";

#[derive(Parser, Debug)]
#[command(
    name = "naryder",
    version,
    about = "Derivations and local derivations of n-ary algebras"
)]
pub struct Cli {
    /// Pretty-print the JSON and write a one-line summary to stderr.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit the algebra JSON of a built-in algebra.
    Build { algebra: String },
    /// Verify anticommutativity (and octonion identities for M8) or the Filippov identity.
    Check {
        kind: CheckKind,
        algebra: String,
        /// Random orthonormal triples for the octonion sweep.
        #[arg(long, default_value_t = 100)]
        random: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Dimension and basis of the derivation algebra.
    Der { algebra: String },
    /// Alpha/gamma parameters of an M8 derivation matrix, with round trip.
    Params { matrix: PathBuf },
    /// Upper bound for the local derivations cut out by probe vectors.
    LocderBound {
        algebra: String,
        /// `default`, or a JSON file holding a list of vectors.
        #[arg(long, default_value = "default")]
        probes: String,
        /// Extra seeded random probes.
        #[arg(long, default_value_t = 0)]
        random_probes: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Derivation matching a map at finitely many points.
    Witness {
        algebra: String,
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        points: PathBuf,
    },
    /// Derivation certificate or failing probe for a map on A_m.
    LocalCert {
        algebra: String,
        #[arg(long)]
        map: PathBuf,
    },
    /// Constructive derivation of M8 matching an antisymmetric map at a point.
    M8Witness {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        point: PathBuf,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Randomized search for pairs of points without a common derivation witness.
    #[command(name = "explore-2local")]
    Explore2local {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Octonion frame and induced automorphism from orthonormal imaginary units.
    Frame {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[command(flatten)]
        mode: ModeArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Identities,
    Filippov,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeName {
    Exact,
    Approx,
}

#[derive(Args, Debug)]
pub struct SeedArg {
    /// Defaults to $NARYDER_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
}

impl SeedArg {
    fn resolve(&self) -> Result<u64> {
        if let Some(s) = self.seed {
            return Ok(s);
        }
        match std::env::var(SEED_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::Format(format!("{SEED_ENV} must be an unsigned integer, got {v:?}"))),
            Err(_) => Ok(0),
        }
    }
}

#[derive(Args, Debug)]
pub struct ModeArgs {
    #[arg(long, value_enum, default_value_t = ModeName::Exact)]
    mode: ModeName,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Coefficient bound for the exact unit search.
    #[arg(long, default_value_t = 6)]
    search_cap: u32,
    /// Report an error instead of completing by reflections when the search fails.
    #[arg(long)]
    no_fallback: bool,
}

impl ModeArgs {
    fn mode(&self) -> Result<Mode> {
        match self.mode {
            ModeName::Exact => Ok(Mode::Exact),
            ModeName::Approx if self.tol.is_finite() && self.tol > 0.0 => Ok(Mode::Approx { tol: self.tol }),
            ModeName::Approx => Err(Error::Format(format!("tolerance must be positive, got {}", self.tol))),
        }
    }

    fn search(&self) -> UnitSearch {
        UnitSearch {
            cap: self.search_cap,
            reflection_fallback: !self.no_fallback,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Infeasible,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Infeasible => "INFEASIBLE",
            Status::Error => "ERROR",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail | Status::Infeasible => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub seeds: Vec<u64>,
}

/// What a finished invocation writes and returns.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Reply {
    result: CommandResult,
    summary: String,
}

fn reply(status: Status, payload: Value, seeds: Vec<u64>, summary: impl Into<String>) -> Reply {
    Reply {
        result: CommandResult { status, payload, seeds },
        summary: summary.into(),
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::Domain(_) => "domain",
        Error::NoExactUnit { .. } => "no_exact_unit",
        Error::NotRationalSquare { .. } => "not_rational_square",
        Error::NotM8Derivation(_) => "not_m8_derivation",
        Error::Internal(_) => "internal",
        Error::Format(_) => "format",
        Error::Json(_) => "json",
        Error::Io(_) => "io",
    }
}

fn error_outcome(kind: &str, message: &str, pretty: bool) -> Outcome {
    let doc = json!({
        "status": Status::Error,
        "error": { "kind": kind, "message": message },
    });
    Outcome {
        code: 2,
        stdout: render(&doc, pretty),
        stderr: if pretty {
            format!("ERROR ({kind}): {message}\n")
        } else {
            String::new()
        },
    }
}

fn render(v: &Value, pretty: bool) -> String {
    let mut s = if pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    }
    .expect("JSON values serialize");
    s.push('\n');
    s
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let pretty_hint = args.iter().any(|a| a == "--pretty");
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                };
            }
            return error_outcome("usage", e.to_string().trim(), pretty_hint);
        }
    };
    let pretty = cli.pretty;
    if let Command::Build { algebra } = &cli.command {
        return match build(algebra) {
            Ok(v) => Outcome {
                code: 0,
                stdout: render(&v, pretty),
                stderr: String::new(),
            },
            Err(e) => error_outcome(error_kind(&e), &e.to_string(), pretty),
        };
    }
    match dispatch(cli.command) {
        Ok(r) => {
            let doc = serde_json::to_value(&r.result).expect("plain data serializes");
            Outcome {
                code: r.result.status.exit_code(),
                stdout: render(&doc, pretty),
                stderr: if pretty {
                    format!("{}: {}\n", r.result.status.as_str(), r.summary)
                } else {
                    String::new()
                },
            }
        }
        Err(e) => error_outcome(error_kind(&e), &e.to_string(), pretty),
    }
}

fn dispatch(command: Command) -> Result<Reply> {
    match command {
        Command::Build { .. } => unreachable!("handled before dispatch"),
        Command::Check {
            kind,
            algebra,
            random,
            seed,
        } => check(kind, &algebra, random, seed.resolve()?),
        Command::Der { algebra } => der(&algebra),
        Command::Params { matrix } => params(&matrix),
        Command::LocderBound {
            algebra,
            probes,
            random_probes,
            seed,
        } => locder_bound(&algebra, &probes, random_probes, seed.resolve()?),
        Command::Witness { algebra, map, points } => witness(&algebra, &map, &points),
        Command::LocalCert { algebra, map } => local_cert(&algebra, &map),
        Command::M8Witness { map, point, mode } => m8_witness(&map, &point, &mode),
        Command::Explore2local { trials, seed } => explore(trials, seed.resolve()?),
        Command::Frame { x, y, mode } => frame(&x, &y, &mode),
    }
}

/// A resolved algebra argument. File inputs whose table equals a built-in
/// algebra are identified with it, so every command treats them alike.
enum Resolved {
    Filippov(usize, NaryAlgebra),
    M8,
    Custom(NaryAlgebra),
}

impl Resolved {
    fn name(&self) -> String {
        match self {
            Resolved::Filippov(m, _) => format!("A:{m}"),
            Resolved::M8 => "M8".into(),
            Resolved::Custom(_) => "custom".into(),
        }
    }

    fn algebra(&self) -> &NaryAlgebra {
        match self {
            Resolved::Filippov(_, a) | Resolved::Custom(a) => a,
            Resolved::M8 => &M8::shared().algebra,
        }
    }

    fn der(&self) -> DerivationSpace {
        match self {
            Resolved::M8 => M8::shared().der.clone(),
            _ => DerivationSpace::compute(self.algebra()),
        }
    }
}

fn parse_builtin(id: &str) -> Option<Result<Resolved>> {
    if id == "M8" {
        return Some(Ok(Resolved::M8));
    }
    let m = id.strip_prefix("A:")?;
    Some(match m.parse::<usize>() {
        Ok(m) if (filippov::MIN_DIM..=filippov::MAX_DIM).contains(&m) => {
            build_filippov(m).map(|a| Resolved::Filippov(m, a))
        }
        _ => Err(Error::Format(format!(
            "unknown algebra identifier {id:?}; use A:{}..A:{} or M8",
            filippov::MIN_DIM,
            filippov::MAX_DIM
        ))),
    })
}

fn resolve(arg: &str) -> Result<Resolved> {
    if let Some(r) = parse_builtin(arg) {
        return r;
    }
    let a = algebra_from_str(&read_file(Path::new(arg))?)?;
    if a.arity() == 3 && a.dim() == 8 && a == M8::shared().algebra {
        return Ok(Resolved::M8);
    }
    let m = a.dim();
    if (filippov::MIN_DIM..=filippov::MAX_DIM).contains(&m) && a.arity() == m - 1 && a == build_filippov(m)? {
        return Ok(Resolved::Filippov(m, a));
    }
    Ok(Resolved::Custom(a))
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Format(format!("cannot read {}: {e}", path.display())))
}

fn read_json(path: &Path) -> Result<Value> {
    Ok(serde_json::from_str(&read_file(path)?)?)
}

fn read_matrix(path: &Path) -> Result<Matrix> {
    let rows: Vec<Vec<String>> = serde_json::from_value(read_json(path)?)?;
    Matrix::from_strings(&rows)
}

fn read_map(path: &Path, dim: usize) -> Result<LinearMap> {
    let m = read_matrix(path)?;
    if m.rows() != dim || m.cols() != dim {
        return Err(Error::DimensionMismatch {
            context: "map",
            expected: dim,
            found: if m.rows() != dim { m.rows() } else { m.cols() },
        });
    }
    LinearMap::new(m)
}

fn read_vector(path: &Path, dim: usize) -> Result<Vector> {
    let v = vector_from_json(&read_json(path)?)?;
    crate::error::check_len("vector", dim, v.len())?;
    Ok(v)
}

fn read_vectors(path: &Path, dim: usize) -> Result<Vec<Vector>> {
    let rows: Vec<Value> = serde_json::from_value(read_json(path)?)?;
    rows.iter()
        .map(|r| {
            let v = vector_from_json(r)?;
            crate::error::check_len("vector", dim, v.len())?;
            Ok(v)
        })
        .collect()
}

fn matrix_json(m: &Matrix) -> Value {
    json!(m.to_strings())
}

fn vector_json(v: &[scalar::Rational]) -> Value {
    json!(scalar::vector_to_strings(v))
}

fn trace_json(t: &WitnessTrace) -> Value {
    json!({
        "constraints": t.constraints.iter().map(|(x, y)| json!({"x": vector_json(x), "value": vector_json(y)})).collect::<Vec<_>>(),
        "coefficients": vector_json(&t.coefficients),
        "witness": matrix_json(t.witness.matrix()),
    })
}

/// At most this many violations are listed; the count is always complete.
const LISTED_VIOLATIONS: usize = 20;

fn listed<T: Serialize>(v: &[T]) -> Value {
    json!(v.iter().take(LISTED_VIOLATIONS).collect::<Vec<_>>())
}

fn build(id: &str) -> Result<Value> {
    match parse_builtin(id) {
        Some(r) => Ok(algebra_to_json(r?.algebra())),
        None => Err(Error::Format(format!(
            "build takes a built-in identifier (A:m or M8), got {id:?}"
        ))),
    }
}

fn check(kind: CheckKind, arg: &str, random: usize, seed: u64) -> Result<Reply> {
    let r = resolve(arg)?;
    let a = r.algebra();
    match kind {
        CheckKind::Filippov => {
            let v = check_filippov(a)?;
            let status = if v.is_empty() { Status::Pass } else { Status::Fail };
            Ok(reply(
                status,
                json!({"algebra": r.name(), "identity": "filippov", "violations": v.len(), "examples": listed(&v)}),
                vec![],
                format!("{}: {} Filippov identity violations", r.name(), v.len()),
            ))
        }
        CheckKind::Identities => {
            let table = check_anticommutativity(a);
            let mut payload = json!({
                "algebra": r.name(),
                "anticommutativity_violations": table.len(),
                "anticommutativity_examples": listed(&table),
            });
            let mut ok = table.is_empty();
            let mut seeds = vec![];
            if matches!(r, Resolved::M8) {
                let direct = check_anticommutativity(&TernaryOctonionBracket);
                let oct = check_octonion_identities(random, seed)?;
                ok &= direct.is_empty() && oct.passed();
                payload["bracket_formula_anticommutativity_violations"] = json!(direct.len());
                payload["octonion"] = serde_json::to_value(&oct)?;
                seeds.push(seed);
            }
            Ok(reply(
                if ok { Status::Pass } else { Status::Fail },
                payload,
                seeds,
                format!("{}: identities {}", r.name(), if ok { "hold" } else { "fail" }),
            ))
        }
    }
}

fn der(arg: &str) -> Result<Reply> {
    let r = resolve(arg)?;
    let d = r.der();
    let basis: Vec<Value> = d.basis_maps().iter().map(|m| matrix_json(m.matrix())).collect();
    let antisymmetric = d.basis_maps().iter().all(LinearMap::is_antisymmetric);
    let mut payload = json!({
        "algebra": r.name(),
        "dim": d.dim(),
        "antisymmetric": antisymmetric,
        "basis": basis,
    });
    let mut ok = true;
    match &r {
        Resolved::Filippov(m, _) => {
            let c = verify_der_characterization(*m)?;
            ok = c.passed();
            payload["characterization"] = serde_json::to_value(&c)?;
        }
        Resolved::M8 => {
            let m8 = M8::shared();
            let c = m8_basis_check(m8)?;
            let mut gamma_ok = true;
            for b in d.basis_maps() {
                if params_roundtrip(b.matrix()).is_err() {
                    gamma_ok = false;
                }
            }
            ok = c.passed() && gamma_ok;
            payload["listed_basis"] = serde_json::to_value(&c)?;
            payload["gamma_relations_hold"] = json!(gamma_ok);
        }
        Resolved::Custom(_) => {}
    }
    Ok(reply(
        if ok { Status::Pass } else { Status::Fail },
        payload,
        vec![],
        format!("{}: Der has dimension {}", r.name(), d.dim()),
    ))
}

fn params(path: &Path) -> Result<Reply> {
    let m = read_matrix(path)?;
    match params_roundtrip(&m) {
        Ok(p) => {
            let rebuilt = params_to_matrix(&p, M8::shared())?;
            let ok = rebuilt == m;
            Ok(reply(
                if ok { Status::Pass } else { Status::Fail },
                json!({"params": p.to_json(), "matrix": matrix_json(&rebuilt), "roundtrip": ok}),
                vec![],
                "alpha/gamma parameters recovered",
            ))
        }
        Err(Error::NotM8Derivation(reason)) => Ok(reply(
            Status::Fail,
            json!({"reason": reason}),
            vec![],
            "not a derivation of M8",
        )),
        Err(e) => Err(e),
    }
}

fn locder_bound(arg: &str, probes: &str, random_probes: usize, seed: u64) -> Result<Reply> {
    let r = resolve(arg)?;
    let d = r.algebra().dim();
    let der = r.der();
    let mut points = if probes == "default" {
        probes_as_vectors(&default_probes(d))
    } else {
        read_vectors(Path::new(probes), d)?
    };
    let mut seeds = vec![];
    if random_probes > 0 {
        let mut rng = sampling::rng(seed);
        points.extend((0..random_probes).map(|_| sampling::small_vector(&mut rng, d)));
        seeds.push(seed);
    }
    let bound = locder_upper_bound(&der, &points)?;
    let antisymmetric = bound == antisymmetric_space(d);
    Ok(reply(
        Status::Pass,
        json!({
            "algebra": r.name(),
            "dim": bound.dim(),
            "antisymmetric": antisymmetric,
            "der_dim": der.dim(),
            "quotient_dim": bound.dim() - der.dim(),
            "probes": points.len(),
            "basis": bound.basis_vectors().iter().map(|v| vector_json(v)).collect::<Vec<_>>(),
        }),
        seeds,
        format!(
            "{}: local derivations lie in a space of dimension {}",
            r.name(),
            bound.dim()
        ),
    ))
}

fn witness(arg: &str, map: &Path, points: &Path) -> Result<Reply> {
    let r = resolve(arg)?;
    let d = r.algebra().dim();
    let map = read_map(map, d)?;
    let points = read_vectors(points, d)?;
    if points.is_empty() {
        return Err(Error::Format("points file must list at least one vector".into()));
    }
    let constraints = points
        .iter()
        .map(|x| Ok((x.clone(), map.apply(x)?)))
        .collect::<Result<Vec<_>>>()?;
    let der = r.der();
    Ok(match multi_point_witness(&der, &constraints)? {
        Some(t) => reply(
            Status::Pass,
            json!({"algebra": r.name(), "feasible": true, "trace": trace_json(&t)}),
            vec![],
            "a derivation matches the map at every point",
        ),
        None => reply(
            Status::Infeasible,
            json!({"algebra": r.name(), "feasible": false, "points": points.iter().map(|v| vector_json(v)).collect::<Vec<_>>()}),
            vec![],
            "no derivation matches the map at all points",
        ),
    })
}

fn local_cert(arg: &str, map: &Path) -> Result<Reply> {
    let r = resolve(arg)?;
    let Resolved::Filippov(m, a) = &r else {
        return Err(Error::Format(format!(
            "local-cert takes A:{}..A:{}",
            filippov::MIN_DIM,
            filippov::MAX_DIM
        )));
    };
    let map = read_map(map, *m)?;
    let der = DerivationSpace::compute(a);
    Ok(match local_certificate(&der, &map)? {
        LocalCertificate::Derivation(d) => reply(
            Status::Pass,
            json!({"algebra": r.name(), "certificate": "derivation", "derivation": matrix_json(d.matrix())}),
            vec![],
            "the map is a derivation",
        ),
        LocalCertificate::Counterexample(p) => reply(
            Status::Fail,
            json!({
                "algebra": r.name(),
                "certificate": "counterexample",
                "probe": p.label(),
                "point": vector_json(&p.vector()),
                "value": vector_json(&map.apply(&p.vector())?),
            }),
            vec![],
            format!("no derivation matches the map at {}", p.label()),
        ),
    })
}

fn m8_witness(map: &Path, point: &Path, mode: &ModeArgs) -> Result<Reply> {
    let m8 = M8::shared();
    let nabla = read_map(map, 8)?;
    let x = read_vector(point, 8)?;
    let oracle = multi_point_witness(&m8.der, &[(x.clone(), nabla.apply(&x)?)])?.is_some();
    let payload = match constructive_local_witness(m8, &nabla, &x, mode.mode()?, mode.search())? {
        ConstructiveWitness::Exact(w) => {
            let decomposition = w.decomposition.as_ref().map(|d| {
                json!({
                    "lambda0": scalar::to_string(&d.lambda0),
                    "lambda": scalar::to_string(&d.lambda),
                    "x1": vector_json(&d.x1.to_vec()),
                    "y1": vector_json(&d.y1.to_vec()),
                    "mu": scalar::to_string(&d.mu),
                })
            });
            json!({
                "mode": "exact",
                "case": w.case,
                "witness": matrix_json(w.map.matrix()),
                "decomposition": decomposition,
                "automorphism": w.automorphism.as_ref().map(|p| matrix_json(p.matrix())),
                "trace": trace_json(&w.trace),
                "oracle_feasible": oracle,
            })
        }
        ConstructiveWitness::Approx(w) => {
            let decomposition = w.decomposition.as_ref().map(|d| {
                json!({
                    "lambda0": scalar::to_string(&d.lambda0),
                    "lambda": d.lambda,
                    "x1": d.x1.coords(),
                    "y1": d.y1.coords(),
                    "mu": d.mu,
                })
            });
            json!({
                "mode": "approx",
                "tol": w.tol,
                "case": w.case,
                "witness": w.matrix,
                "decomposition": decomposition,
                "value_residual": w.value_residual,
                "leibniz_residual": w.leibniz_residual,
                "oracle_feasible": oracle,
            })
        }
    };
    Ok(reply(Status::Pass, payload, vec![], "witness derivation constructed"))
}

fn explore(trials: usize, seed: u64) -> Result<Reply> {
    let report = explore_2local(trials, seed)?;
    let summary = format!("{} of {} trials feasible", report.feasible, report.trials);
    Ok(reply(Status::Pass, serde_json::to_value(&report)?, vec![seed], summary))
}

fn frame(x: &Path, y: &Path, mode: &ModeArgs) -> Result<Reply> {
    let x = ExactOctonion::from_vector(&read_vector(x, 8)?)?;
    let y = ExactOctonion::from_vector(&read_vector(y, 8)?)?;
    let payload = match mode.mode()? {
        Mode::Exact => {
            let f = frame_from_pair_exact(&x, &y, mode.search())?;
            let phi = automorphism_from_frame(&f)?;
            let report = check_automorphism(&phi)?;
            json!({
                "mode": "exact",
                "elements": f.elements.iter().map(|e| vector_json(&e.to_vec())).collect::<Vec<_>>(),
                "automorphism": matrix_json(phi.matrix()),
                "automorphism_check": report,
            })
        }
        Mode::Approx { tol } => {
            let f = frame_from_pair_approx(&x.to_f64(), &y.to_f64(), tol)?;
            json!({
                "mode": "approx",
                "tol": tol,
                "elements": f.elements.iter().map(|e| e.coords()).collect::<Vec<_>>(),
                "automorphism": f.matrix(),
                "defect": f.defect(),
            })
        }
    };
    Ok(reply(Status::Pass, payload, vec![], "frame constructed"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, Value) {
        let mut all = vec!["naryder"];
        all.extend_from_slice(args);
        let o = run(all);
        (o.code, serde_json::from_str(&o.stdout).unwrap())
    }

    #[test]
    fn der_a4() {
        let (code, v) = run_args(&["der", "A:4"]);
        assert_eq!(code, 0);
        assert_eq!(v["payload"]["dim"], 6);
        assert_eq!(v["status"], "PASS");
    }

    #[test]
    fn unknown_identifier() {
        let (code, v) = run_args(&["der", "A:12"]);
        assert_eq!(code, 2);
        assert_eq!(v["status"], "ERROR");
        assert_eq!(v["error"]["kind"], "format");
        let (code, v) = run_args(&["frobnicate"]);
        assert_eq!(code, 2);
        assert_eq!(v["error"]["kind"], "usage");
    }

    #[test]
    fn build_is_raw_algebra() {
        let (code, v) = run_args(&["build", "A:5"]);
        assert_eq!(code, 0);
        assert_eq!(v["arity"], 4);
        assert_eq!(v["brackets"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn filippov_check_on_m8_fails() {
        let (code, v) = run_args(&["check", "filippov", "M8"]);
        assert_eq!(code, 1);
        assert!(v["payload"]["violations"].as_u64().unwrap() >= 1);
    }
}
