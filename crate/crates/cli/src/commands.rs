//! Command definitions and dispatch.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jmult::multiplicity::{
    cycle_edges, edge_ideal, epsilon_multiplicity, hs_multiplicity, j_from_newton, j_multiplicity,
    multiplicity_report,
};
use jmult::newton::{
    analytic_spread, integral_closure, newton, saturation_closure, MonomialIdeal, NewtonData,
};
use jmult::oracle::{
    closure_filtration_length, convergence_report, count_cone_section, direct_power_j_length,
    epsilon_lengths, LengthKind, LengthSequence,
};
use jmult::toric::{toric_j_multiplicity, toric_newton, PointedCone, ToricIdeal};
use serde::Serialize;

use crate::error::CliError;
use crate::parse::{parse_input, IdealSpec};
use crate::plot::render_svg;
use crate::report::{IdealEcho, Int, NewtonJson, OracleJson, Ratio, Report, SCHEMA_VERSION};

#[derive(Parser, Debug)]
#[command(
    name = "jmult",
    version,
    about = "Multiplicities of monomial ideals from Newton polyhedra"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Read the ideal from a file (text, one generator per line, or JSON).
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
pub struct Input {
    /// Ideal, e.g. "y^4, x^2*y, x*y^2". Read from --file or stdin when absent.
    pub ideal: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Saturated closure filtration lengths (j-type).
    Closure,
    /// Local cohomology of consecutive powers (j-type).
    Direct,
    /// Lattice points of the cone sections (j-type).
    Conesec,
    /// Saturation lengths over closures of powers (ε-type).
    Epsilon,
    /// Saturation lengths over the powers themselves (ε-type).
    EpsilonDirect,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Newton polyhedron and every multiplicity.
    Newton(Input),
    /// j-multiplicity.
    J(Input),
    /// ε-multiplicity.
    Epsilon(Input),
    /// Hilbert–Samuel multiplicity of an m-primary ideal.
    Hs(Input),
    /// Analytic spread.
    Spread(Input),
    /// Integral closure.
    Intclosure(Input),
    /// Saturation of the integral closure.
    Saturation(Input),
    /// Edge ideal of a graph on vertices 1..d.
    Edgeideal {
        /// Edges such as "1-2,2-3,3-1".
        #[arg(long, conflicts_with = "cycle", required_unless_present = "cycle")]
        edges: Option<String>,
        /// The cycle C_d.
        #[arg(long)]
        cycle: Option<usize>,
        /// Number of vertices; defaults to the largest one named.
        #[arg(long)]
        vertices: Option<usize>,
    },
    /// j-multiplicity of an ideal in the semigroup ring of a pointed cone.
    #[command(name = "toric-j")]
    ToricJ {
        #[command(flatten)]
        input: Input,
        /// Cone rays such as "1,0;1,2". Overrides a cone clause in the input.
        #[arg(long)]
        rays: Option<String>,
    },
    /// Brute-force length sequence and its distance to the multiplicity.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 20)]
        nmax: u64,
        #[arg(long, value_enum, default_value_t = Mode::Closure)]
        mode: Mode,
    },
    /// SVG of conv, pyr, out and bd for a two-variable ideal.
    Plot {
        #[command(flatten)]
        input: Input,
        /// Write the SVG here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn read_spec(cli: &Cli, input: &Input, stdin: &mut dyn Read) -> Result<IdealSpec, CliError> {
    match (&input.ideal, &cli.file) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "give the ideal either inline or with --file".into(),
        )),
        (Some(text), None) => parse_input(text),
        (None, Some(path)) => parse_input(&std::fs::read_to_string(path)?),
        (None, None) => {
            let mut text = String::new();
            stdin.read_to_string(&mut text)?;
            parse_input(&text)
        }
    }
}

fn monomial_ideal(spec: &IdealSpec) -> Result<MonomialIdeal, CliError> {
    if spec.cone.is_some() {
        return Err(CliError::Unsupported(
            "this command works in the polynomial ring only; drop the cone clause".into(),
        ));
    }
    Ok(MonomialIdeal::new(spec.dim(), spec.gens.clone())?)
}

fn toric_ideal(spec: &IdealSpec, rays: Option<Vec<Vec<i64>>>) -> Result<ToricIdeal, CliError> {
    let rays = rays.or_else(|| spec.cone.clone());
    let cone = match rays {
        Some(r) => PointedCone::new(&r)?,
        None => PointedCone::orthant(spec.dim()),
    };
    if cone.dim() != spec.dim() {
        return Err(CliError::Core(jmult::error::Error::DimensionMismatch {
            expected: spec.dim(),
            found: cone.dim(),
        }));
    }
    Ok(ToricIdeal::new(cone, spec.gens.clone())?)
}

/// Parses "1,0;1,2".
fn parse_rays(text: &str) -> Result<Vec<Vec<i64>>, CliError> {
    let mut offset = 0;
    let mut rays = Vec::new();
    for chunk in text.split(';') {
        let mut ray = Vec::new();
        let mut at = offset;
        for part in chunk.split(',') {
            let lead = part.len() - part.trim_start().len();
            ray.push(part.trim().parse().map_err(|_| CliError::Parse {
                message: format!("expected an integer, found '{}'", part.trim()),
                position: at + lead,
            })?);
            at += part.len() + 1;
        }
        rays.push(ray);
        offset += chunk.len() + 1;
    }
    Ok(rays)
}

/// Parses "1-2,2-3,3-1".
fn parse_edges(text: &str) -> Result<Vec<(usize, usize)>, CliError> {
    let mut edges = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let lead = part.len() - part.trim_start().len();
        let bad = || CliError::Parse {
            message: format!("expected an edge like 1-2, found '{}'", part.trim()),
            position: offset + lead,
        };
        let (a, b) = part.trim().split_once('-').ok_or_else(bad)?;
        edges.push((
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ));
        offset += part.len() + 1;
    }
    Ok(edges)
}

fn indexed_vars(d: usize) -> Vec<String> {
    (1..=d).map(|i| format!("x{i}")).collect()
}

#[derive(Serialize)]
struct Versioned<T: Serialize> {
    version: u32,
    #[serde(flatten)]
    body: T,
}

fn json<T: Serialize>(body: T) -> String {
    serde_json::to_string(&Versioned {
        version: SCHEMA_VERSION,
        body,
    })
    .expect("report serializes")
        + "\n"
}

#[derive(Serialize)]
struct IdealOut {
    ideal: IdealEcho,
}

fn ideal_output(format: Format, spec: IdealSpec, unit: bool) -> String {
    match format {
        Format::Json => json(IdealOut {
            ideal: IdealEcho::new(&spec, unit),
        }),
        Format::Text => format!("{spec}\n"),
    }
}

fn full_report(spec: &IdealSpec) -> Result<(Report, NewtonData, Option<MonomialIdeal>), CliError> {
    if spec.cone.is_some() {
        let t = toric_ideal(spec, None)?;
        let nd = toric_newton(&t)?;
        let report = Report {
            version: SCHEMA_VERSION,
            ideal: IdealEcho::new(spec, t.is_unit()),
            newton: NewtonJson::from(&nd),
            spread: None,
            j: Int(toric_j_multiplicity(&t)?),
            epsilon: None,
            hs: None,
            oracle: None,
        };
        return Ok((report, nd, None));
    }
    let ideal = monomial_ideal(spec)?;
    let nd = newton(&ideal)?;
    let r = multiplicity_report(&ideal)?;
    let report = Report {
        version: SCHEMA_VERSION,
        ideal: IdealEcho::new(spec, ideal.is_unit()),
        newton: NewtonJson::from(&nd),
        spread: Some(r.analytic_spread),
        j: Int(r.j),
        epsilon: Some(Ratio(r.epsilon)),
        hs: r.hilbert_samuel.map(Int),
        oracle: None,
    };
    Ok((report, nd, Some(ideal)))
}

fn report_text(spec: &IdealSpec, report: &Report, nd: &NewtonData) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "ideal:    {spec}");
    if report.ideal.unit {
        let _ = writeln!(s, "          (unit ideal)");
    }
    let verts: Vec<String> = nd
        .vertices()
        .iter()
        .map(|v| {
            format!(
                "({})",
                v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
            )
        })
        .collect();
    let _ = writeln!(s, "vertices: {}", verts.join(" "));
    let _ = writeln!(s, "facets:");
    for f in nd.facets() {
        let tag = if f.bounded { "bounded" } else { "unbounded" };
        let _ = writeln!(s, "  {}  [{tag}]", f.hyperplane);
    }
    if let Some(l) = report.spread {
        let _ = writeln!(s, "spread:   {l}");
    }
    let _ = writeln!(s, "j:        {}", report.j.0);
    if let Some(e) = &report.epsilon {
        let _ = writeln!(s, "epsilon:  {}", e.0);
    }
    if let Some(h) = &report.hs {
        let _ = writeln!(s, "hs:       {}", h.0);
    }
    if let Some(o) = &report.oracle {
        let _ = writeln!(s, "oracle:   {}", o.kind);
        let _ = writeln!(s, "  {:>4}  {:>10}  normalized", "n", "length");
        for row in &o.table {
            let norm = row
                .normalized
                .as_ref()
                .map_or("-".to_string(), |r| r.0.to_string());
            let _ = writeln!(s, "  {:>4}  {:>10}  {norm}", row.n, row.length);
        }
        let _ = writeln!(
            s,
            "  target {}  gap {}  relative gap {:.4}",
            o.target.0, o.gap.0, o.relative_gap_approx
        );
    }
    s
}

fn verify(spec: &IdealSpec, nmax: u64, mode: Mode) -> Result<(Report, NewtonData), CliError> {
    if nmax == 0 {
        return Err(CliError::Usage("--nmax must be at least 1".into()));
    }
    let (mut report, nd, ideal) = full_report(spec)?;
    let need_ideal = || {
        ideal.as_ref().ok_or_else(|| {
            CliError::Unsupported("only closure and conesec modes accept a cone".into())
        })
    };
    let dim = nd.dim();
    let levels = 0..=nmax;
    let seq = match mode {
        Mode::Closure => {
            LengthSequence::collect(LengthKind::ClosureFiltrationJ, dim, levels, |n| {
                closure_filtration_length(&nd, n)
            })
        }
        Mode::Conesec => LengthSequence::collect(LengthKind::ConeSectionCount, dim, levels, |n| {
            count_cone_section(&nd, n)
        }),
        Mode::Direct => {
            let i = need_ideal()?;
            LengthSequence::collect(LengthKind::DirectPowerJ, dim, levels, |n| {
                direct_power_j_length(i, n)
            })
        }
        Mode::Epsilon | Mode::EpsilonDirect => {
            let i = need_ideal()?;
            let closure = mode == Mode::Epsilon;
            let kind = if closure {
                LengthKind::ClosureEpsilon
            } else {
                LengthKind::DirectPowerEpsilon
            };
            LengthSequence::collect(kind, dim, levels, |n| epsilon_lengths(i, &nd, n, closure))
        }
    };
    let target = match seq.kind.normalization() {
        jmult::oracle::Normalization::JType => {
            jmult::geometry::Rational::from_integer(report.j.0.clone())
        }
        jmult::oracle::Normalization::EpsilonType => {
            report.epsilon.clone().expect("polynomial ring").0
        }
    };
    let conv = convergence_report(&seq, &target)?;
    report.oracle = Some(OracleJson::new(&conv, &seq.values));
    Ok((report, nd))
}

fn value<T: Serialize + std::fmt::Display>(format: Format, key: &'static str, v: T) -> String {
    match format {
        Format::Json => {
            let mut map = serde_json::Map::new();
            map.insert(
                key.into(),
                serde_json::to_value(&v).expect("value serializes"),
            );
            json(map)
        }
        Format::Text => format!("{v}\n"),
    }
}

impl std::fmt::Display for Int {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

pub fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<String, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Newton(input) => {
            let spec = read_spec(cli, input, stdin)?;
            let (report, nd, _) = full_report(&spec)?;
            Ok(match format {
                Format::Json => serde_json::to_string(&report).expect("report serializes") + "\n",
                Format::Text => report_text(&spec, &report, &nd),
            })
        }
        Command::J(input) => {
            let spec = read_spec(cli, input, stdin)?;
            let j = if spec.cone.is_some() {
                toric_j_multiplicity(&toric_ideal(&spec, None)?)?
            } else {
                j_multiplicity(&monomial_ideal(&spec)?)?
            };
            Ok(value(format, "j", Int(j)))
        }
        Command::Epsilon(input) => {
            let spec = read_spec(cli, input, stdin)?;
            Ok(value(
                format,
                "epsilon",
                Ratio(epsilon_multiplicity(&monomial_ideal(&spec)?)?),
            ))
        }
        Command::Hs(input) => {
            let spec = read_spec(cli, input, stdin)?;
            match hs_multiplicity(&monomial_ideal(&spec)?)? {
                Some(e) => Ok(value(format, "hs", Int(e))),
                None => Err(CliError::Unsupported(
                    "the Hilbert-Samuel multiplicity needs an m-primary ideal".into(),
                )),
            }
        }
        Command::Spread(input) => {
            let spec = read_spec(cli, input, stdin)?;
            Ok(value(
                format,
                "spread",
                analytic_spread(&monomial_ideal(&spec)?)?,
            ))
        }
        Command::Intclosure(input) | Command::Saturation(input) => {
            let spec = read_spec(cli, input, stdin)?;
            let ideal = monomial_ideal(&spec)?;
            let closed = if matches!(cli.command, Command::Intclosure(_)) {
                integral_closure(&ideal)?
            } else {
                saturation_closure(&ideal)?
            };
            let out = IdealSpec {
                vars: spec.vars,
                gens: closed.exponent_vectors(),
                cone: None,
            };
            Ok(ideal_output(format, out, closed.is_unit()))
        }
        Command::Edgeideal {
            edges,
            cycle,
            vertices,
        } => {
            let edges = match (edges, cycle) {
                (Some(text), _) => parse_edges(text)?,
                (None, Some(d)) => cycle_edges(*d),
                (None, None) => unreachable!("clap requires one of --edges, --cycle"),
            };
            let named = edges.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0);
            let d = vertices.unwrap_or(named.max(cycle.unwrap_or(0)));
            let ideal = edge_ideal(d, &edges)?;
            let out = IdealSpec {
                vars: indexed_vars(d),
                gens: ideal.exponent_vectors(),
                cone: None,
            };
            Ok(ideal_output(format, out, false))
        }
        Command::ToricJ { input, rays } => {
            let spec = read_spec(cli, input, stdin)?;
            let rays = rays.as_deref().map(parse_rays).transpose()?;
            let t = toric_ideal(&spec, rays)?;
            Ok(value(format, "j", Int(j_from_newton(&toric_newton(&t)?)?)))
        }
        Command::Verify { input, nmax, mode } => {
            let spec = read_spec(cli, input, stdin)?;
            let (report, nd) = verify(&spec, *nmax, *mode)?;
            Ok(match format {
                Format::Json => serde_json::to_string(&report).expect("report serializes") + "\n",
                Format::Text => report_text(&spec, &report, &nd),
            })
        }
        Command::Plot { input, output } => {
            let spec = read_spec(cli, input, stdin)?;
            let nd = newton(&monomial_ideal(&spec)?)?;
            let svg = render_svg(&nd)?;
            match output {
                None => Ok(svg),
                Some(path) => {
                    std::fs::write(path, svg)?;
                    Ok(value(format, "written", path.display().to_string()))
                }
            }
        }
    }
}
