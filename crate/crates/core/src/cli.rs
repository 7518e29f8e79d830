//! Command-line front end: reads JSON inputs, runs the engines and prints the
//! results with their certificates.
//!
//! Exit codes: 0 success, 2 malformed input, 3 domain error, 4 unsupported.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::endo::{self, MonotonicityCase};
use crate::error::{Error, Result};
use crate::exactmath::rat;
use crate::exactmath::rational::format_qvector;
use crate::io::{
    self, int_matrix_value, int_vec_value, rational_value, rational_vec_value, Record,
};
use crate::oracle;
use crate::surface::{self, DuVal, ExcDivisor, GraphFamily, GraphSpec, ResolutionGraph};
use crate::toric::{
    self, CartierCheck, ConeSpec, EnvelopeFunction, IdealSpec, MonomialIdeal, ToricCone,
    ToricDivisor,
};

#[derive(Parser, Debug)]
#[command(
    name = "singvol",
    version,
    about = "Exact volumes of isolated surface and toric singularities"
)]
pub struct Cli {
    /// Output format; JSON is the stable contract, tables are for reading.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Surface singularities given by a resolution graph.
    #[command(subcommand)]
    Surface(SurfaceCommand),
    /// Affine toric singularities given by a cone.
    #[command(subcommand)]
    Toric(ToricCommand),
    /// Finite toric endomorphisms.
    #[command(subcommand)]
    Endo(EndoCommand),
    /// Check an input file (graph, cone, divisor, ideal or matrix).
    Validate { file: PathBuf },
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Exceptional divisor `{"coeffs":[...]}`; defaults to the log-discrepancy divisor.
    #[arg(long)]
    pub divisor: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum SurfaceCommand {
    /// Volume `-P²` and the Zariski decomposition behind it.
    Volume(GraphArgs),
    /// klt / lc_not_klt / not_lc from the log discrepancies.
    Classify(GraphArgs),
    /// Numerical pull-back; with `--divisor`, its coefficients are the
    /// prescribed intersection numbers with the components.
    Pullback(GraphArgs),
    /// Relative Zariski decomposition.
    Zariski(GraphArgs),
    /// Emit the graph of a standard family.
    Standard {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        g: Option<u32>,
        #[arg(long)]
        d: Option<u32>,
        /// Du Val type such as A3, D4, E6.
        #[arg(long = "type")]
        kind: Option<String>,
        /// Self-intersections of a cusp cycle, e.g. -3,-2,-2.
        #[arg(long, allow_hyphen_values = true)]
        cycle: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Cone,
    Cusp,
    #[value(alias = "du_val", alias = "duval")]
    DuVal,
}

#[derive(Args, Debug)]
pub struct ConeArg {
    #[arg(long)]
    pub cone: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum ToricCommand {
    /// Nef envelope `Env(D)` at a toric valuation, with the optimal `m`.
    Env {
        #[command(flatten)]
        cone: ConeArg,
        #[arg(long)]
        divisor: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long, hide = true)]
        oracle: bool,
    },
    /// Numerically Cartier test with a linear form or an interior witness.
    Numcartier {
        #[command(flatten)]
        cone: ConeArg,
        #[arg(long)]
        divisor: PathBuf,
    },
    /// Samuel multiplicity of an m-primary monomial ideal.
    Mult {
        #[command(flatten)]
        cone: ConeArg,
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long, hide = true)]
        oracle: bool,
    },
    /// Mixed multiplicity of `n` ideals.
    Mixed {
        #[command(flatten)]
        cone: ConeArg,
        #[arg(long, num_args = 1..)]
        ideals: Vec<PathBuf>,
        #[arg(long, hide = true)]
        oracle: bool,
    },
    /// Defect ideal `O(mD)·O(-mD)`, optionally evaluated at a valuation.
    Defect {
        #[command(flatten)]
        cone: ConeArg,
        #[arg(long)]
        divisor: PathBuf,
        #[arg(long, default_value_t = 1)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Izumi constant `c(v, w)` with `c·v - w ∈ σ`.
    Izumi {
        #[command(flatten)]
        cone: ConeArg,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// Log discrepancy at an interior valuation, with its `m = 0` certificate.
    Logdisc {
        #[command(flatten)]
        cone: ConeArg,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum EndoCommand {
    /// Check the pull-back identities at the standard sample points.
    Check {
        #[command(flatten)]
        cone: ConeArg,
        #[arg(long)]
        matrix: PathBuf,
        /// Defaults to `-K = Σ D_i`.
        #[arg(long)]
        divisor: Option<PathBuf>,
        /// Defaults to the maximal ideal.
        #[arg(long)]
        ideal: Option<PathBuf>,
    },
    /// Volume monotonicity `Vol(X) >= e(φ) Vol(Y)`.
    Monotonic {
        #[arg(long = "case", value_enum)]
        case: CaseKind,
        #[arg(long)]
        g: Option<u32>,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        e: Option<u32>,
        #[arg(long)]
        cone: Option<PathBuf>,
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CaseKind {
    #[value(alias = "surface_cover")]
    SurfaceCover,
    Toric,
}

/// Parses `argv` (including the program name), writes the result to standard
/// output and diagnostics to standard error, and returns the exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(Outcome { value, code }) => {
            let text = match cli.format {
                Format::Json => io::render_json(&value),
                Format::Table => io::render_table(&value),
            };
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let diag: Value = Record::new()
                .with("error", error_kind(&e))
                .with("message", e.to_string())
                .with("exit_code", e.exit_code())
                .into();
            let _ = err.write_all(io::render_json(&diag).as_bytes());
            e.exit_code()
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DimensionMismatch(_) => "dimension_mismatch",
        Error::Malformed(_) => "malformed",
        Error::Singular => "singular",
        Error::NotSymmetric => "not_symmetric",
        Error::NotNegativeDefinite { .. } => "not_negative_definite",
        Error::NotInCone(_) => "not_in_cone",
        Error::NotInterior(_) => "not_interior",
        Error::NotMPrimary(_) => "not_m_primary",
        Error::Domain(_) => "domain",
        Error::Unsupported(_) => "unsupported",
        Error::Json(_) => "json",
        Error::Io(_) => "io",
    }
}

struct Outcome {
    value: Value,
    code: i32,
}

impl From<Record> for Outcome {
    fn from(r: Record) -> Self {
        Outcome {
            value: r.into(),
            code: 0,
        }
    }
}

fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Surface(c) => surface_command(c),
        Command::Toric(c) => toric_command(c),
        Command::Endo(c) => endo_command(c),
        Command::Validate { file } => validate(file).map(Outcome::from),
    }
}

fn exc_value(d: &ExcDivisor) -> Value {
    rational_vec_value(&d.coeffs)
}

fn graph_and_divisor(args: &GraphArgs) -> Result<(ResolutionGraph, Option<ExcDivisor>)> {
    let g = io::load_graph(&args.graph)?;
    let d = args
        .divisor
        .as_deref()
        .map(|p| io::load_exc_divisor(p, &g))
        .transpose()?;
    Ok((g, d))
}

fn surface_command(cmd: &SurfaceCommand) -> Result<Outcome> {
    match cmd {
        SurfaceCommand::Volume(args) => {
            let (g, d) = graph_and_divisor(args)?;
            let target = d.unwrap_or_else(|| surface::log_discrepancy_divisor(&g));
            let z = surface::zariski_decompose(&g, &target)?;
            let mut r = Record::new()
                .with(
                    "volume",
                    rational_value(&surface::local_volume(&g, &target)?),
                )
                .with("nef_part", exc_value(&z.nef_part))
                .with("neg_part", exc_value(&z.neg_part));
            if args.divisor.is_none() {
                r.insert("class", surface::classify(&g).class.to_string());
            }
            Ok(r.into())
        }
        SurfaceCommand::Classify(args) => {
            let (g, _) = graph_and_divisor(args)?;
            let c = surface::classify(&g);
            Ok(Record::new()
                .with("class", c.class.to_string())
                .with("log_discrepancy", exc_value(&c.log_discrepancy))
                .into())
        }
        SurfaceCommand::Pullback(args) => {
            let (g, d) = graph_and_divisor(args)?;
            Ok(match d {
                Some(rhs) => Record::new().with(
                    "pullback",
                    exc_value(&surface::numerical_pullback(&g, &rhs.coeffs)?),
                ),
                None => Record::new()
                    .with(
                        "canonical_intersections",
                        rational_vec_value(&surface::canonical_intersections(&g)),
                    )
                    .with("discrepancies", exc_value(&surface::discrepancies(&g)))
                    .with(
                        "log_discrepancy",
                        exc_value(&surface::log_discrepancy_divisor(&g)),
                    ),
            }
            .into())
        }
        SurfaceCommand::Zariski(args) => {
            let (g, d) = graph_and_divisor(args)?;
            let target = d.unwrap_or_else(|| surface::log_discrepancy_divisor(&g));
            let z = surface::zariski_decompose(&g, &target)?;
            let p_dot = g.intersections_with_components(&z.nef_part)?;
            Ok(Record::new()
                .with("divisor", exc_value(&target))
                .with("nef_part", exc_value(&z.nef_part))
                .with("neg_part", exc_value(&z.neg_part))
                .with("nef_intersections", rational_vec_value(&p_dot))
                .with(
                    "volume",
                    rational_value(&-g.intersect(&z.nef_part, &z.nef_part)?),
                )
                .into())
        }
        SurfaceCommand::Standard {
            family,
            g,
            d,
            kind,
            cycle,
        } => {
            let fam = match family {
                Family::Cone => GraphFamily::Cone {
                    genus: g.ok_or_else(|| missing("--g"))?,
                    degree: d.ok_or_else(|| missing("--d"))?,
                },
                Family::Cusp => GraphFamily::CuspCycle(io::parse_int_vector(
                    cycle.as_deref().ok_or_else(|| missing("--cycle"))?,
                )?),
                Family::DuVal => GraphFamily::DuVal(
                    kind.as_deref()
                        .ok_or_else(|| missing("--type"))?
                        .parse::<DuVal>()?,
                ),
            };
            let spec = surface::standard_graph(&fam)?.to_spec();
            Ok(Outcome {
                value: serde_json::to_value(spec)?,
                code: 0,
            })
        }
    }
}

fn missing(flag: &str) -> Error {
    Error::Malformed(format!("missing required option {flag}"))
}

fn toric_command(cmd: &ToricCommand) -> Result<Outcome> {
    match cmd {
        ToricCommand::Env {
            cone,
            divisor,
            at,
            oracle,
        } => {
            let c = io::load_cone(&cone.cone)?;
            let d = io::load_toric_divisor(divisor, &c)?;
            let v = vector_for(&c, at)?;
            let f = EnvelopeFunction::new(&c, d)?;
            let e = f.eval(&v)?;
            let mut r = Record::new()
                .with("value", rational_value(&e.value))
                .with("optimal_m", rational_vec_value(&e.optimal_m));
            if *oracle {
                let best = oracle::vertex_max(&f.problem(&v))?;
                r.insert(
                    "oracle_value",
                    best.as_ref().map_or(Value::Null, rational_value),
                );
            }
            Ok(r.into())
        }
        ToricCommand::Numcartier { cone, divisor } => {
            let c = io::load_cone(&cone.cone)?;
            let d = io::load_toric_divisor(divisor, &c)?;
            Ok(match toric::is_numerically_cartier(&c, &d)? {
                CartierCheck::Cartier { linear_form } => Record::new()
                    .with("numerically_cartier", true)
                    .with("linear_form", rational_vec_value(&linear_form)),
                CartierCheck::NotCartier {
                    witness,
                    env_d,
                    env_neg_d,
                } => Record::new()
                    .with("numerically_cartier", false)
                    .with("witness", int_vec_value(&witness))
                    .with("env_d", rational_value(&env_d))
                    .with("env_neg_d", rational_value(&env_neg_d)),
            }
            .into())
        }
        ToricCommand::Mult {
            cone,
            ideal,
            oracle,
        } => {
            let c = io::load_cone(&cone.cone)?;
            let a = io::load_ideal(ideal, &c)?;
            let mut r = Record::new()
                .with(
                    "multiplicity",
                    rational_value(&toric::samuel_multiplicity(&c, &a)?),
                )
                .with("covolume", rational_value(&toric::covolume(&c, &a)?));
            if *oracle {
                let k = oracle_k(&a);
                r.insert("oracle_k", k);
                r.insert(
                    "oracle_multiplicity",
                    oracle::samuel_multiplicity_by_counting(&c, &a, k)?,
                );
            }
            Ok(r.into())
        }
        ToricCommand::Mixed {
            cone,
            ideals,
            oracle,
        } => {
            let c = io::load_cone(&cone.cone)?;
            let list = ideals
                .iter()
                .map(|p| io::load_ideal(p, &c))
                .collect::<Result<Vec<_>>>()?;
            let mut r = Record::new().with(
                "mixed_multiplicity",
                rational_value(&toric::mixed_multiplicity(&c, &list)?),
            );
            if *oracle {
                let k = list.iter().map(oracle_k).max().unwrap_or(1);
                r.insert("oracle_k", k);
                r.insert(
                    "oracle_mixed_multiplicity",
                    oracle::mixed_multiplicity_by_counting(&c, &list, k)?,
                );
            }
            Ok(r.into())
        }
        ToricCommand::Defect {
            cone,
            divisor,
            m,
            at,
        } => {
            let c = io::load_cone(&cone.cone)?;
            let d = io::load_toric_divisor(divisor, &c)?;
            let ideal = toric::defect_ideal(&c, &d, *m)?;
            let mut r = Record::new()
                .with("m", *m)
                .with("gens", int_matrix_value(ideal.gens()));
            if let Some(at) = at {
                let v = vector_for(&c, at)?;
                let z = toric::z_value(&c, &ideal, &v)?;
                let bound =
                    toric::envelope_value(&c, &d, &v)? + toric::envelope_value(&c, &-&d, &v)?;
                r.insert("z_value", rational_value(&z));
                r.insert("normalized", rational_value(&(&z / rat(*m))));
                r.insert("envelope_sum", rational_value(&bound));
                r.insert("gap", rational_value(&(&z / rat(*m) - &bound)));
            }
            Ok(r.into())
        }
        ToricCommand::Izumi { cone, v, w } => {
            let c = io::load_cone(&cone.cone)?;
            let (v, w) = (vector_for(&c, v)?, vector_for(&c, w)?);
            Ok(Record::new()
                .with(
                    "constant",
                    rational_value(&toric::izumi_constant(&c, &v, &w)?),
                )
                .into())
        }
        ToricCommand::Logdisc { cone, at } => {
            let c = io::load_cone(&cone.cone)?;
            let v = vector_for(&c, at)?;
            let a = toric::log_discrepancy_value(&c, &v)?;
            Ok(Record::new()
                .with("value", rational_value(&a.value))
                .with("optimal_m", rational_vec_value(&a.optimal_m))
                .with(
                    "nonnegativity_certificate",
                    rational_vec_value(&a.nonnegativity_certificate),
                )
                .into())
        }
    }
}

/// A counting depth past which small monomial ideals have polynomial colength.
fn oracle_k(a: &MonomialIdeal) -> u32 {
    let d = a
        .gens()
        .iter()
        .map(|g| g.iter().map(|x| x.abs()).sum::<i64>())
        .max()
        .unwrap_or(1);
    u32::try_from(d.clamp(2, 6)).expect("clamped") + 1
}

fn vector_for(c: &ToricCone, s: &str) -> Result<Vec<i64>> {
    let v = io::parse_int_vector(s)?;
    c.check_dim(&v)?;
    Ok(v)
}

fn endo_command(cmd: &EndoCommand) -> Result<Outcome> {
    match cmd {
        EndoCommand::Check {
            cone,
            matrix,
            divisor,
            ideal,
        } => {
            let c = io::load_cone(&cone.cone)?;
            let e = io::load_endo(matrix, &c)?;
            let d = match divisor {
                Some(p) => io::load_toric_divisor(p, &c)?,
                None => ToricDivisor::anticanonical(&c),
            };
            let a = match ideal {
                Some(p) => io::load_ideal(p, &c)?,
                None => MonomialIdeal::maximal(&c),
            };
            let ideals = if c.dim() <= toric::multiplicity::MAX_EXACT_DIM {
                vec![a]
            } else {
                vec![]
            };
            let report = endo::check_push_pull(&e, &c.sample_points(), &d, &ideals)?;
            let checks: Vec<Value> = report
                .envelope_checks
                .iter()
                .map(|s| {
                    Record::new()
                        .with("at", int_vec_value(&s.point))
                        .with("pulled_back", rational_value(&s.pulled_back))
                        .with("at_image", rational_value(&s.at_image))
                        .with("holds", s.holds())
                        .into()
                })
                .collect();
            let mut r = Record::new()
                .with("degree", report.degree)
                .with("passed", report.passed())
                .with("envelope_checks", checks)
                .with(
                    "pulled_back_divisor",
                    rational_vec_value(&endo::pullback_divisor(&e, &d)?.coeffs),
                );
            if let Some(m) = &report.multiplicity_check {
                r.insert(
                    "multiplicity_check",
                    Record::new()
                        .with("original", rational_value(&m.original))
                        .with("pulled_back", rational_value(&m.pulled_back))
                        .with("holds", m.holds()),
                );
            }
            if let Some(f) = report.first_failure() {
                r.insert("failure", f);
            }
            Ok(Outcome {
                value: r.into(),
                code: if report.passed() { 0 } else { 3 },
            })
        }
        EndoCommand::Monotonic {
            case,
            g,
            d,
            e,
            cone,
            matrix,
        } => {
            let case = match case {
                CaseKind::SurfaceCover => MonotonicityCase::SurfaceCover {
                    genus: g.ok_or_else(|| missing("--g"))?,
                    degree: d.ok_or_else(|| missing("--d"))?,
                    cover: e.ok_or_else(|| missing("--e"))?,
                },
                CaseKind::Toric => {
                    let c = io::load_cone(cone.as_deref().ok_or_else(|| missing("--cone"))?)?;
                    MonotonicityCase::Toric {
                        endo: io::load_endo(
                            matrix.as_deref().ok_or_else(|| missing("--matrix"))?,
                            &c,
                        )?,
                    }
                }
            };
            let r = endo::volume_monotonicity_report(&case)?;
            let holds = r.inequality_holds();
            Ok(Outcome {
                value: Record::new()
                    .with("source_volume", rational_value(&r.source_volume))
                    .with("target_volume", rational_value(&r.target_volume))
                    .with("degree", r.map_degree)
                    .with("certified_points", r.certified_points)
                    .with("holds", holds)
                    .with("equality", r.is_equality())
                    .into(),
                code: if holds { 0 } else { 3 },
            })
        }
    }
}

/// Recognizes the file by its keys and runs the semantic checks that apply.
pub fn validate(path: &Path) -> Result<Record> {
    let v: Value = io::read_json(path)?;
    let Value::Object(m) = &v else {
        return Err(Error::Malformed(
            "top-level JSON value must be an object".into(),
        ));
    };
    let ok = |kind: &str| Record::new().with("status", "ok").with("kind", kind);
    if m.contains_key("rays") {
        let c =
            ToricCone::from_spec(&serde_json::from_value::<ConeSpec>(v.clone()).map_err(schema)?)?;
        return Ok(ok("cone")
            .with("rays", int_matrix_value(c.rays()))
            .with("facet_normals", int_matrix_value(c.facet_normals()))
            .with("isolation", serde_json::to_value(c.isolation())?));
    }
    if m.contains_key("vertices") {
        let g = ResolutionGraph::from_spec(
            &serde_json::from_value::<GraphSpec>(v.clone()).map_err(schema)?,
        )?;
        return Ok(ok("graph").with("vertices", g.len()));
    }
    if m.contains_key("coeffs") {
        let d: ToricDivisor = serde_json::from_value(v.clone()).map_err(schema)?;
        return Ok(ok("divisor").with("coeffs", format_qvector(&d.coeffs)));
    }
    if m.contains_key("gens") {
        let a: IdealSpec = serde_json::from_value(v.clone()).map_err(schema)?;
        let n = a.gens.first().map_or(0, Vec::len);
        if a.gens.is_empty() || a.gens.iter().any(|g| g.len() != n) {
            return Err(Error::DimensionMismatch(
                "generators must be nonempty and share a length".into(),
            ));
        }
        return Ok(ok("ideal").with("dim", n));
    }
    if m.contains_key("matrix") {
        let e: endo::EndoSpec = serde_json::from_value(v.clone()).map_err(schema)?;
        let n = e.matrix.len();
        if n == 0 || e.matrix.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(
                "matrix must be square and nonempty".into(),
            ));
        }
        return Ok(ok("matrix").with("dim", n));
    }
    Err(Error::Malformed(
        "unrecognized input: expected a cone, graph, divisor, ideal or matrix".into(),
    ))
}

fn schema(e: serde_json::Error) -> Error {
    Error::Malformed(format!("schema: {e}"))
}
