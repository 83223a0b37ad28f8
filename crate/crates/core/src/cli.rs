//! Command-line front end. Every command prints one JSON document.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arrangement::{
    c_minus_witness, c_plus_witness, count_chambers_formula, slice_polygons, total_chambers_formula, ArrangementReport,
    SlicePolygon,
};
use crate::decomposition::{
    canonical_decomposition, classify_parameter, representation_types, CanonicalDecomposition, DecompOptions,
    ParameterClass, RepresentationType, DEFAULT_MAX_NODES,
};
use crate::framed::{DimVector, RootListReport};
use crate::mori::{linearisation_l, mori_chamber_report, nef_cone_model, AmpleModelTag, Generator, MoriReport};
use crate::regions::DEFAULT_MAX_REGIONS;
use crate::root_data::RootDataReport;
use crate::walls::{contraction_type, pick_generic_wall_point, semismall_audit, Contraction, SemismallReport};
use crate::weyl::{reduce_to_f, WeylElement};
use crate::{instance, Arrangement, Chamber, EnumOptions, Error, FramedLattice, Kind, Location, Result, StabilityParameter};

#[derive(Debug, Parser)]
#[command(name = "mckay", version, about = "Chambers, Weyl reduction and wall crossings for framed McKay quiver varieties")]
pub struct Cli {
    #[command(flatten)]
    pub instance: InstanceSpec,

    /// Worker threads used inside enumerations.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,

    /// Cap on the number of regions held during enumeration.
    #[arg(long, global = true, env = "MCKAY_MAX_REGIONS", default_value_t = DEFAULT_MAX_REGIONS)]
    pub max_regions: usize,

    /// Cap on search nodes in decomposition searches.
    #[arg(long, global = true, env = "MCKAY_MAX_NODES", default_value_t = DEFAULT_MAX_NODES)]
    pub max_nodes: usize,

    /// Output format; `svg-data` is accepted by `plot` only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct InstanceSpec {
    /// ADE type: A, D, E or TRIVIAL.
    #[arg(long = "type", global = true, default_value = "A")]
    pub kind: Kind,
    /// Rank of the finite root system (0 for TRIVIAL).
    #[arg(long, global = true, default_value_t = 1)]
    pub rank: usize,
    /// Number of points.
    #[arg(long, global = true, default_value_t = 1)]
    pub n: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    SvgData,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Root data and the positive roots below v.
    Roots,
    /// Chambers of F (default) or of all of Theta_v.
    Chambers {
        /// Restrict to the fundamental cone F (the default).
        #[arg(long = "in-F")]
        in_f: bool,
        /// Report the closed-form count without enumerating.
        #[arg(long)]
        count_only: bool,
        /// All chambers of Theta_v instead of those in F.
        #[arg(long, conflicts_with = "in_f")]
        total: bool,
    },
    /// Analyse a parameter or a wall.
    Analyze {
        /// Comma-separated rationals `p/q`: theta_0..theta_r, or theta_inf,theta_0..theta_r.
        #[arg(long, allow_hyphen_values = true, required_unless_present = "wall", conflicts_with = "wall")]
        theta: Option<String>,
        /// `delta` or the comma-separated coordinates of a wall normal on vertices 0..r.
        #[arg(long, allow_hyphen_values = true)]
        wall: Option<String>,
    },
    /// Nef cones of the models attached to the chambers of F.
    Mori,
    /// Slice polygons of F for rank 2 types.
    Plot,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootsOutput {
    pub root_data: RootDataReport,
    #[serde(flatten)]
    pub roots: RootListReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChambersOutput {
    /// `F` or `all`.
    pub scope: String,
    pub count: String,
    pub formula: String,
    #[serde(flatten)]
    pub report: Option<ArrangementReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub w: WeylElement,
    pub theta_f: StabilityParameter,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallReport {
    pub audit: SemismallReport,
    pub contraction: Contraction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeOutput {
    pub theta: StabilityParameter,
    pub parameter_class: ParameterClass,
    pub chamber: Option<Chamber>,
    pub chamber_label: Option<String>,
    pub reduction: Reduction,
    pub linearisation: Generator,
    pub ample_model_tag: Option<AmpleModelTag>,
    pub canonical_decomposition: CanonicalDecomposition,
    pub representation_types: Vec<RepresentationType>,
    pub wall: Option<WallReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotOutput {
    pub count: usize,
    pub unbounded: usize,
    pub polygons: Vec<SlicePolygon>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvgPath {
    pub label: Option<String>,
    pub unbounded: bool,
    pub d: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvgOutput {
    pub view_box: [f64; 4],
    pub paths: Vec<SvgPath>,
}

fn parse_rationals(raw: &str) -> Result<Vec<BigRational>> {
    raw.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<BigRational>()
                .map_err(|_| Error::InvalidParameter(format!("malformed rational {s:?}")))
        })
        .collect()
}

/// Parses `theta_0..theta_r` or a full vector on `I` (which must satisfy `theta(v) = 0`).
pub fn parse_theta(l: &FramedLattice, raw: &str) -> Result<StabilityParameter> {
    let xs = parse_rationals(raw)?;
    match xs.len() {
        k if k == l.rank() + 1 => StabilityParameter::from_finite(l, &xs),
        k if k == l.dim() => StabilityParameter::from_full(l, &xs),
        k => Err(Error::DimensionMismatch { expected: l.rank() + 1, got: k }),
    }
}

/// Parses `delta` or the normal of a wall on the vertices `0..r`.
pub fn parse_wall(l: &FramedLattice, raw: &str) -> Result<DimVector> {
    if raw.trim().eq_ignore_ascii_case("delta") {
        return Ok(l.delta());
    }
    let xs = raw
        .split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|_| Error::InvalidParameter(format!("malformed integer {s:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if xs.len() != l.rank() + 1 {
        return Err(Error::DimensionMismatch { expected: l.rank() + 1, got: xs.len() });
    }
    let mut v = vec![0];
    v.extend(xs);
    Ok(DimVector(v))
}

fn chamber_label(l: &FramedLattice, arr: &Arrangement, c: &Chamber) -> Option<String> {
    let minus = arr.signs(&c_minus_witness(l)) == c.signs;
    let plus = arr.signs(&c_plus_witness(l)) == c.signs;
    match (minus, plus) {
        (true, true) => Some("C-=C+".into()),
        (true, false) => Some("C-".into()),
        (false, true) => Some("C+".into()),
        _ => None,
    }
}

fn wall_report(arr: &Arrangement, theta0: &StabilityParameter, decomp: DecompOptions) -> Result<WallReport> {
    let audit = semismall_audit(arr, theta0, decomp)?;
    let c = arr.chamber_of(&audit.theta)?;
    let k = arr.index_of(&audit.wall.hyperplane).ok_or_else(|| Error::Internal("wall lost".into()))?;
    let contraction = contraction_type(arr, &c, k)?;
    Ok(WallReport { audit, contraction })
}

fn analyze(arr: &Arrangement, theta: StabilityParameter, decomp: DecompOptions) -> Result<AnalyzeOutput> {
    let l = &arr.lattice;
    let parameter_class = classify_parameter(arr, &theta);
    let (w, theta_f) = reduce_to_f(l, &theta)?;
    let linearisation = Generator(linearisation_l(l, &theta)?);
    let (chamber, chamber_label, ample_model_tag) = match arr.locate(&theta) {
        Location::Chamber(c) => {
            let cf = arr.chamber_of(&theta_f)?;
            let tag = nef_cone_model(arr, &cf)?.ample_model_tag;
            let label = chamber_label(l, arr, &c);
            (Some(c), label, Some(tag))
        }
        Location::OnWall(_) => (None, None, None),
    };
    let wall = if arr.zero_set(&theta).len() == 1 { Some(wall_report(arr, &theta, decomp)?) } else { None };
    Ok(AnalyzeOutput {
        canonical_decomposition: canonical_decomposition(l, &l.v(), &theta, decomp)?,
        representation_types: representation_types(l, &l.v(), &theta, decomp)?,
        theta,
        parameter_class,
        chamber,
        chamber_label,
        reduction: Reduction { w, theta_f },
        linearisation,
        ample_model_tag,
        wall,
    })
}

fn to_json<T: Serialize>(x: &T) -> Result<String> {
    serde_json::to_string_pretty(x).map_err(|e| Error::Internal(format!("serialisation: {e}")))
}

fn svg(polys: &[SlicePolygon]) -> SvgOutput {
    let mut max = 0f64;
    let paths = polys
        .iter()
        .map(|p| {
            let d = p
                .vertices_approx
                .iter()
                .enumerate()
                .map(|(i, [x, y])| {
                    max = max.max(*x).max(*y);
                    format!("{}{x:.6} {:.6}", if i == 0 { "M" } else { " L" }, -y)
                })
                .collect::<String>()
                + " Z";
            SvgPath { label: p.label.clone(), unbounded: p.unbounded, d }
        })
        .collect();
    SvgOutput { view_box: [0.0, -max, max, max], paths }
}

/// Runs a parsed command and returns its output.
pub fn execute(cli: &Cli) -> Result<String> {
    let spec = &cli.instance;
    let l = instance(spec.kind, spec.rank, spec.n)?;
    let opts = EnumOptions { max_regions: cli.max_regions, jobs: cli.jobs };
    let decomp = DecompOptions { max_nodes: cli.max_nodes };
    if cli.format == Format::SvgData && !matches!(cli.command, Command::Plot) {
        return Err(Error::InvalidParameter("--format svg-data is only available for plot".into()));
    }
    let arr = Arrangement::new(&l);
    match &cli.command {
        Command::Roots => {
            let roots = l.roots_below_v()?;
            to_json(&RootsOutput { root_data: l.root_data.report(), roots: l.root_list_report(&roots) })
        }
        Command::Chambers { count_only, total, .. } => {
            let formula = if *total { total_chambers_formula(&l)? } else { count_chambers_formula(&l)? };
            let scope = if *total { "all" } else { "F" }.to_string();
            let out = if *count_only {
                ChambersOutput { scope, count: formula.to_string(), formula: formula.to_string(), report: None }
            } else {
                let chambers =
                    if *total { arr.enumerate_all_chambers(opts)? } else { arr.enumerate_chambers_in_f(opts)? };
                ChambersOutput {
                    scope,
                    count: chambers.len().to_string(),
                    formula: formula.to_string(),
                    report: Some(arr.report(chambers)),
                }
            };
            to_json(&out)
        }
        Command::Analyze { theta, wall } => {
            let theta = match (theta, wall) {
                (Some(t), _) => parse_theta(&l, t)?,
                (None, Some(w)) => {
                    let normal = parse_wall(&l, w)?;
                    let h = arr
                        .find_normal(&normal)
                        .ok_or_else(|| Error::InvalidParameter(format!("{normal} is not a wall")))?
                        .clone();
                    pick_generic_wall_point(&arr, &h)?
                }
                (None, None) => return Err(Error::InvalidParameter("one of --theta or --wall is required".into())),
            };
            to_json(&analyze(&arr, theta, decomp)?)
        }
        Command::Mori => {
            let rep: MoriReport = mori_chamber_report(&arr, opts)?;
            to_json(&rep)
        }
        Command::Plot => {
            let polygons = slice_polygons(&arr, opts)?;
            match cli.format {
                Format::Json => to_json(&PlotOutput {
                    count: polygons.len(),
                    unbounded: polygons.iter().filter(|p| p.unbounded).count(),
                    polygons,
                }),
                Format::SvgData => to_json(&svg(&polygons)),
            }
        }
    }
}

/// Entry point shared by the binary: parses arguments, prints, returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            // A closed pipe downstream is not an error of ours.
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
