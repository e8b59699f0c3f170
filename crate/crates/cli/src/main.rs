//! Command-line front end over the JSON interchange format.
//!
//! Exit codes: 0 on success / no violation, 1 on a domain violation or a
//! failed check, 2 on usage or parse errors.

mod output;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use spinal_core::canonical::canonicalize;
use spinal_core::circle_bundles::{self, MulticurveData};
use spinal_core::covers::{self, CoverSpec, SearchBounds};
use spinal_core::forms::{
    self, boundary_collar_profiles, corner_smoothing_profiles, models, thurston_threshold,
    CheckReport, Profile, ThresholdFamily, ThresholdResult, Tolerances,
};
use spinal_core::lefschetz::{self, LefschetzDescriptor};
use spinal_core::obstructions::{Exactness, ExactnessFlags};
use spinal_core::sob::{PaperId, SpinalOpenBook, SpineCircleId, VertebraId};
use spinal_core::surgery::{self, ConcatOrder};
use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "spinal", version, about = "Spinal open book toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format for structured results.
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a spinal open book file; exit 0 iff no violations.
    Validate { file: PathBuf },
    /// Symmetric/uniform/amenable classification, torsion and verdicts.
    Classify {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_base_genus: u32,
        /// Exactness flags file; defaults to all-unknown.
        #[arg(long)]
        flags: Option<PathBuf>,
    },
    /// Topological surgeries producing a new book on stdout.
    #[command(subcommand)]
    Surgery(SurgeryCmd),
    /// Bordered Lefschetz fibration commands.
    #[command(subcommand)]
    Lefschetz(LefschetzCmd),
    /// Circle bundles partitioned by multicurves.
    #[command(subcommand)]
    CircleBundle(CircleBundleCmd),
    /// Branched-cover existence queries.
    #[command(subcommand)]
    Covers(CoversCmd),
    /// Numerical form checks on coordinate charts.
    VerifyForms(VerifyForms),
}

#[derive(Subcommand)]
enum SurgeryCmd {
    /// Delete vertebrae and cap the adjacent page boundaries with disks.
    SpineRemove {
        file: PathBuf,
        /// Comma-separated vertebra ids.
        #[arg(long, value_delimiter = ',')]
        ids: Vec<u32>,
    },
    /// Delete disk vertebrae, recording boundary tori with framing 0.
    BlowUp {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        ids: Vec<u32>,
    },
    /// Replace two multiplicity-one disk vertebrae by one annulus vertebra.
    BindingSum {
        file: PathBuf,
        #[arg(long)]
        c1: u32,
        #[arg(long)]
        c2: u32,
    },
    /// Fiber connected sum of two paper components along their pages.
    FiberSum {
        file: PathBuf,
        #[arg(long)]
        j0: u32,
        #[arg(long)]
        j1: u32,
        /// Boundary-label identification, e.g. "1:2,2:1".
        #[arg(long)]
        ident: String,
        /// Concatenation order of the two families.
        #[arg(long, value_enum, default_value_t = OrderArg::FirstSecond)]
        order: OrderArg,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    FirstSecond,
    SecondFirst,
}

#[derive(Subcommand)]
enum LefschetzCmd {
    /// The spinal open book induced on the fibration boundary.
    Boundary { file: PathBuf },
}

#[derive(Subcommand)]
enum CircleBundleCmd {
    /// Build the spinal open book of the partitioned circle bundle.
    Build { file: PathBuf },
    /// Direct fillability criteria, cross-checked against the torsion
    /// engine.
    Verdicts { file: PathBuf },
}

#[derive(Subcommand)]
enum CoversCmd {
    /// Decide existence of a (branched) cover for a CoverSpec file.
    Exists { file: PathBuf },
}

#[derive(Args)]
struct VerifyForms {
    /// Model family to check.
    #[arg(long)]
    model: String,
    /// Thurston parameter K (or the scaling constant C).
    #[arg(long, default_value_t = 1.0)]
    k: f64,
    /// Interface multiplicity m.
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Slope parameter A of the threshold family.
    #[arg(long, default_value_t = -2.0, allow_hyphen_values = true)]
    a: f64,
    /// Upper end of the threshold search.
    #[arg(long, default_value_t = 100.0)]
    k_max: f64,
    /// Grid resolution per axis.
    #[arg(long, default_value_t = 32)]
    grid: usize,
    /// Collar depth for built-in boundary profiles.
    #[arg(long, default_value_t = 0.5)]
    delta: f64,
    /// CSV profile (coordinate,value) for f or F.
    #[arg(long)]
    profile_f: Option<PathBuf>,
    /// CSV profile (coordinate,value) for g or G.
    #[arg(long)]
    profile_g: Option<PathBuf>,
    /// Absolute tolerance for closed-form checks.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Tolerance for finite-difference checks.
    #[arg(long, default_value_t = 1e-6)]
    fd_tol: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<ParseFailure>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

/// Marker for exit-code-2 failures (malformed input files or arguments).
#[derive(Debug)]
struct ParseFailure(String);

impl std::fmt::Display for ParseFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ParseFailure {}

fn parse_file<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let data = std::fs::read_to_string(path)
        .map_err(|e| anyhow!(ParseFailure(format!("cannot read {}: {e}", path.display()))))?;
    serde_json::from_str(&data).map_err(|e| {
        anyhow!(ParseFailure(format!(
            "cannot parse {}: {e}",
            path.display()
        )))
    })
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Validate { file } => {
            let sob: SpinalOpenBook = parse_file(file)?;
            let report = sob.validate();
            let out = output::ValidateOutput {
                connected_components: spinal_core::sob::connected_components(&sob),
                report,
            };
            output::emit(cli.output == Output::Json, &out, |o| {
                format!("components: {}\n{}", o.connected_components, o.report)
            })?;
            Ok(if out.report.is_valid() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Classify {
            file,
            max_base_genus,
            flags,
        } => {
            let sob: SpinalOpenBook = parse_file(file)?;
            sob.require_valid()?;
            let flags = match flags {
                Some(path) => load_flags(path, &sob)?,
                None => ExactnessFlags::all_unknown(),
            };
            let out = output::classify(&sob, *max_base_genus, &flags)?;
            output::emit(cli.output == Output::Json, &out, output::classify_text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Surgery(cmd) => run_surgery(cli, cmd),
        Command::Lefschetz(LefschetzCmd::Boundary { file }) => {
            let lf: LefschetzDescriptor = parse_file(file)?;
            let bounds = SearchBounds::default();
            let sob = lefschetz::boundary_sob(&lf, &bounds)?;
            let out = output::LefschetzBoundary {
                allowable: lefschetz::is_allowable(&lf),
                euler_total: lefschetz::euler_total(&lf),
                boundary: canonicalize(&sob),
            };
            output::emit(cli.output == Output::Json, &out, |o| {
                format!(
                    "allowable: {}\neuler_total: {}\n{}",
                    o.allowable,
                    o.euler_total,
                    serde_json::to_string_pretty(&o.boundary).unwrap()
                )
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CircleBundle(CircleBundleCmd::Build { file }) => {
            let mc: MulticurveData = parse_file(file)?;
            let sob = circle_bundles::build_sob(&mc)?;
            output::emit(cli.output == Output::Json, &canonicalize(&sob), |s| {
                serde_json::to_string_pretty(s).unwrap()
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CircleBundle(CircleBundleCmd::Verdicts { file }) => {
            let mc: MulticurveData = parse_file(file)?;
            let verdicts = circle_bundles::circle_bundle_verdicts(&mc)?;
            let notes: Vec<String> = circle_bundles::self_glued_curves(&mc)
                .into_iter()
                .map(|i| format!("curve {i} has both sides on one region"))
                .collect();
            let out = output::CircleBundleVerdicts { verdicts, notes };
            output::emit(cli.output == Output::Json, &out, output::circle_bundle_text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Covers(CoversCmd::Exists { file }) => {
            let spec: CoverSpec = parse_file(file)?;
            let result = covers::exists_cover(&spec, &SearchBounds::default())?;
            output::emit(cli.output == Output::Json, &result, |r| format!("{r:?}"))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyForms(args) => run_verify_forms(cli, args),
    }
}

fn run_surgery(cli: &Cli, cmd: &SurgeryCmd) -> Result<ExitCode> {
    let (book, note) = match cmd {
        SurgeryCmd::SpineRemove { file, ids } => {
            let sob: SpinalOpenBook = parse_file(file)?;
            let ids: BTreeSet<VertebraId> = ids.iter().map(|&i| VertebraId(i)).collect();
            let (out, record) = surgery::spine_remove(&sob, &ids)?;
            (out, record.closed_page_note)
        }
        SurgeryCmd::BlowUp { file, ids } => {
            let sob: SpinalOpenBook = parse_file(file)?;
            let ids: BTreeSet<VertebraId> = ids.iter().map(|&i| VertebraId(i)).collect();
            (surgery::blow_up(&sob, &ids)?, None)
        }
        SurgeryCmd::BindingSum { file, c1, c2 } => {
            let sob: SpinalOpenBook = parse_file(file)?;
            (
                surgery::binding_sum(&sob, SpineCircleId(*c1), SpineCircleId(*c2))?,
                None,
            )
        }
        SurgeryCmd::FiberSum {
            file,
            j0,
            j1,
            ident,
            order,
        } => {
            let sob: SpinalOpenBook = parse_file(file)?;
            let ident = parse_ident(ident)?;
            let order = match order {
                OrderArg::FirstSecond => ConcatOrder::FirstThenSecond,
                OrderArg::SecondFirst => ConcatOrder::SecondThenFirst,
            };
            (
                surgery::fiber_sum_pages(&sob, PaperId(*j0), PaperId(*j1), &ident, order)?,
                None,
            )
        }
    };
    if let Some(n) = note {
        eprintln!("warning: {n}");
    }
    output::emit(cli.output == Output::Json, &canonicalize(&book), |s| {
        serde_json::to_string_pretty(s).unwrap()
    })?;
    Ok(ExitCode::SUCCESS)
}

fn parse_ident(s: &str) -> Result<BTreeMap<u32, u32>> {
    let mut out = BTreeMap::new();
    for pair in s.split(',') {
        let (from, to) = pair
            .split_once(':')
            .ok_or_else(|| anyhow!(ParseFailure(format!("bad ident pair '{pair}'"))))?;
        let from: u32 = from
            .trim()
            .parse()
            .map_err(|_| anyhow!(ParseFailure(format!("bad label '{from}'"))))?;
        let to: u32 = to
            .trim()
            .parse()
            .map_err(|_| anyhow!(ParseFailure(format!("bad label '{to}'"))))?;
        out.insert(from, to);
    }
    Ok(out)
}

#[derive(serde::Deserialize)]
struct FlagsFile {
    #[serde(default)]
    default: Option<String>,
    #[serde(default)]
    overrides: BTreeMap<u32, String>,
}

fn parse_exactness(s: &str) -> Result<Exactness> {
    match s {
        "exact" => Ok(Exactness::Exact),
        "not_exact" => Ok(Exactness::NotExact),
        "unknown" => Ok(Exactness::Unknown),
        other => Err(anyhow!(ParseFailure(format!(
            "unknown exactness '{other}'"
        )))),
    }
}

fn load_flags(path: &Path, sob: &SpinalOpenBook) -> Result<ExactnessFlags> {
    let file: FlagsFile = parse_file(path)?;
    let mut flags = match file.default.as_deref() {
        None | Some("unknown") => ExactnessFlags::all_unknown(),
        Some("exact") => ExactnessFlags::all_exact(sob),
        Some("disk_rule") => ExactnessFlags::disk_rule(sob),
        Some("not_exact") => ExactnessFlags {
            flags: sob
                .vertebrae
                .iter()
                .map(|v| (v.id, Exactness::NotExact))
                .collect(),
        },
        Some(other) => {
            return Err(anyhow!(ParseFailure(format!(
                "unknown default exactness '{other}'"
            ))))
        }
    };
    for (id, s) in file.overrides {
        flags.flags.insert(VertebraId(id), parse_exactness(&s)?);
    }
    Ok(flags)
}

fn load_profile(path: &Path) -> Result<Profile> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| anyhow!(ParseFailure(format!("bad CSV: {e}"))))?;
        if record.len() != 2 {
            return Err(anyhow!(ParseFailure(
                "profile CSV needs two columns".into()
            )));
        }
        // Skip a header row if present.
        if record[0].parse::<f64>().is_err() && xs.is_empty() {
            continue;
        }
        let x: f64 = record[0]
            .parse()
            .map_err(|_| anyhow!(ParseFailure(format!("bad coordinate '{}'", &record[0]))))?;
        let y: f64 = record[1]
            .parse()
            .map_err(|_| anyhow!(ParseFailure(format!("bad value '{}'", &record[1]))))?;
        xs.push(x);
        ys.push(y);
    }
    Profile::from_samples(xs, ys).map_err(|e| anyhow!(ParseFailure(e)))
}

fn run_verify_forms(cli: &Cli, args: &VerifyForms) -> Result<ExitCode> {
    let tol = Tolerances {
        closed_form: args.tol,
        finite_difference: args.fd_tol,
    };
    let n = args.grid;
    let reports: Vec<CheckReport> = match args.model.as_str() {
        "collar-contact" => {
            let chart = models::collar_chart_3d(n);
            vec![forms::contact_check(
                &chart,
                &models::collar_contact_form(args.k),
                &tol,
            )?]
        }
        "horizontal-contact" => {
            let chart = models::horizontal_chart_3d(n);
            vec![forms::contact_check(
                &chart,
                &models::horizontal_contact_form(args.k),
                &tol,
            )?]
        }
        "product-symplectic" => {
            let chart = models::corner_chart_4d(n.min(16));
            vec![forms::symplectic_check(
                &chart,
                &models::product_symplectic_form(args.k),
                &tol,
            )?]
        }
        "handle" => {
            let chart = models::corner_chart_4d(n.min(16));
            vec![forms::symplectic_check(
                &chart,
                &models::handle_form(args.k),
                &tol,
            )?]
        }
        "collar" => {
            let chart = models::corner_chart_4d(n.min(12));
            let (sf, sg) = match (&args.profile_f, &args.profile_g) {
                (Some(f), Some(g)) => (load_profile(f)?, load_profile(g)?),
                _ => corner_smoothing_profiles(),
            };
            forms::collar_model_check(args.k, args.m, &chart, &sf, &sg, &tol)?
        }
        "giroux-interface" => {
            let (f, g) = match (&args.profile_f, &args.profile_g) {
                (Some(f), Some(g)) => (load_profile(f)?, load_profile(g)?),
                _ => (
                    Profile::tabulate(|r| 1.0 / (1.0 + r), 1e-3, 0.5, 257),
                    Profile::tabulate(|r| 2.0 * r, 1e-3, 0.5, 257),
                ),
            };
            let (lo, hi) = f.domain();
            let chart = forms::Chart::new(vec![
                forms::Axis::interval("rho", lo, hi, n.max(17)),
                forms::Axis::circle("phi", 2),
                forms::Axis::circle("theta", 2),
            ])?;
            vec![forms::giroux_interface_check(&f, &g, &chart, &tol)?]
        }
        "boundary-profile" => {
            let (f, g) = match (&args.profile_f, &args.profile_g) {
                (Some(f), Some(g)) => (load_profile(f)?, load_profile(g)?),
                _ => boundary_collar_profiles(args.delta),
            };
            forms::boundary_profile_check(&f, &g, n.max(33), &tol)?
        }
        "threshold-vertical"
        | "threshold-slope"
        | "threshold-contact-base"
        | "threshold-symplectic"
        | "threshold-liouville"
        | "threshold-weak-scaling" => {
            return run_threshold(cli, args, &tol);
        }
        other => {
            return Err(anyhow!(ParseFailure(format!(
                "unknown model '{other}'; see the README for the model list"
            ))))
        }
    };
    output::emit(cli.output == Output::Json, &reports, |rs| {
        rs.iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join("\n")
    })?;
    Ok(if reports.iter().all(|r| r.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run_threshold(cli: &Cli, args: &VerifyForms, tol: &Tolerances) -> Result<ExitCode> {
    let n = args.grid.min(16);
    let (family, chart) = match args.model.as_str() {
        "threshold-vertical" => {
            let (lambda, sigma) = models::vertical_family();
            (
                ThresholdFamily::Contact { lambda, sigma },
                models::collar_chart_3d(n),
            )
        }
        "threshold-slope" => {
            let (lambda, sigma) = models::slope_family(args.a);
            (
                ThresholdFamily::Contact { lambda, sigma },
                models::horizontal_chart_3d(n),
            )
        }
        "threshold-contact-base" => {
            let (lambda, sigma) = models::contact_base_family();
            (
                ThresholdFamily::Contact { lambda, sigma },
                models::collar_chart_3d(n),
            )
        }
        "threshold-symplectic" => {
            let (omega, mu) = models::symplectic_slope_family(args.a);
            (
                ThresholdFamily::Symplectic { omega, mu },
                models::corner_chart_4d(n.min(10)),
            )
        }
        "threshold-liouville" => {
            let (lambda, sigma) = models::liouville_slope_family(args.a);
            (
                ThresholdFamily::Liouville { lambda, sigma },
                models::corner_chart_4d(n.min(10)),
            )
        }
        "threshold-weak-scaling" => {
            // C omega + eta with a shifted product form: symplectic for
            // large C, threshold at -a.
            let (omega, eta) = models::weak_scaling_family(args.a);
            (
                ThresholdFamily::WeakScaling { omega, eta },
                models::corner_chart_4d(n.min(10)),
            )
        }
        _ => unreachable!(),
    };
    let result = thurston_threshold(&family, &chart, args.k_max, tol)?;
    output::emit(cli.output == Output::Json, &result, |r| match r {
        ThresholdResult::Threshold(k0) => format!("threshold K0 = {k0}"),
        ThresholdResult::Unbounded => "unbounded within K_max".to_string(),
    })?;
    Ok(match result {
        ThresholdResult::Threshold(_) => ExitCode::SUCCESS,
        ThresholdResult::Unbounded => ExitCode::from(1),
    })
}
