//! The `meander` command line: `ratio`, `state-report`, `handley` and `render`.
//!
//! Exit codes: 0 on success, 1 for usage or configuration problems
//! (bad flags, unreadable inputs, unwritable outputs), 2 when data could not
//! be processed. A failing district is reported and the rest still run.

use std::collections::{BTreeMap, BTreeSet};
use std::ffi::OsString;
use std::fmt::Display;
use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{info, warn};
use meander_core::geometry::{dissolve, PlanarMultiPolygon};
use meander_core::handley::{meanderingness, ray_count, SeedSampling};
use meander_core::medial::PipelineParams;
use meander_core::metrics::{
    analyze_district, category_counts, statewide_average, DistrictAnalysis, RatioReport,
};
use rayon::prelude::*;

use crate::error::IoError;
use crate::feature::Feature;
use crate::report::{write_meander_csv, write_report_csv, MeanderRow};
use crate::utm::{project_to_utm, UtmZoneSpec};
use crate::{geojson, shapefile, svg};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "meander",
    version,
    about = "Medial-hull ratio and meanderingness of districts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Per-district medial-hull ratios as CSV.
    Ratio(RatioArgs),
    /// Ratios plus the statewide mean and per-category counts.
    StateReport(RatioArgs),
    /// Handley's meanderingness per district as CSV.
    Handley(HandleyArgs),
    /// One SVG per district with its medial axis and clipped hull.
    Render(RenderArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Geojson,
    Shapefile,
}

#[derive(Clone, Copy, Debug)]
enum ZoneChoice {
    Auto,
    Fixed(UtmZoneSpec),
}

fn parse_zone(s: &str) -> Result<ZoneChoice, String> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(ZoneChoice::Auto);
    }
    s.parse()
        .map(ZoneChoice::Fixed)
        .map_err(|e: IoError| e.to_string())
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

#[derive(Args, Debug)]
struct InputArgs {
    /// District features (GeoJSON, or a .shp with its .dbf alongside).
    #[arg(long, value_name = "PATH")]
    district: PathBuf,
    /// Input format; inferred from the file extension when omitted.
    #[arg(long, value_enum)]
    format: Option<InputFormat>,
    /// UTM zone such as 18N, or `auto` for the zone of the state's centroid.
    #[arg(long, default_value = "auto", value_parser = parse_zone)]
    zone: ZoneChoice,
    /// Only process these CD115FP codes.
    #[arg(long, value_delimiter = ',', value_name = "CD115FP")]
    only: Vec<String>,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
}

#[derive(Args, Debug)]
struct PipelineArgs {
    /// Inward buffer used to prune axis edges near the boundary, metres.
    #[arg(long, default_value_t = 200.0, value_name = "METERS")]
    buffer: f64,
    /// Douglas-Peucker tolerance, metres.
    #[arg(long, default_value_t = 500.0, value_name = "METERS")]
    simplify: f64,
    /// Points inserted per simplified edge.
    #[arg(long, default_value_t = 10, value_name = "K")]
    densify: usize,
}

impl PipelineArgs {
    fn params(&self) -> Result<PipelineParams, Failure> {
        let params = PipelineParams {
            buffer: self.buffer,
            simplify_tolerance: self.simplify,
            densify_k: self.densify,
            ..PipelineParams::default()
        };
        params.validate().map_err(Failure::usage)?;
        Ok(params)
    }
}

#[derive(Args, Debug)]
struct RatioArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Every district of the state; clips the hulls and picks the zone.
    #[arg(long, value_name = "PATH")]
    state: PathBuf,
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// CSV destination (stdout when omitted).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct HandleyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Only used to pick the UTM zone.
    #[arg(long, value_name = "PATH")]
    state: Option<PathBuf>,
    /// CSV destination (stdout when omitted).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Angle between rays, degrees; must divide 360.
    #[arg(long, default_value_t = 5.0, value_name = "D")]
    step_degrees: f64,
    /// Seeds on a square grid with this spacing instead of the automatic choice.
    #[arg(long, value_name = "METERS", value_parser = positive)]
    seed_grid: Option<f64>,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_name = "PATH")]
    state: PathBuf,
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// Directory for the SVG files; created if missing.
    #[arg(long, value_name = "PATH")]
    svg_dir: PathBuf,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Display) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }

    fn data(message: impl Display) -> Failure {
        Failure {
            code: EXIT_DATA,
            message: message.to_string(),
        }
    }
}

/// Parses `args` (program name first) and runs the command, returning the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Ratio(args) => cmd_ratio(args, false),
        Command::StateReport(args) => cmd_ratio(args, true),
        Command::Handley(args) => cmd_handley(args),
        Command::Render(args) => cmd_render(args),
    };
    result.unwrap_or_else(|f| {
        eprintln!("error: {}", f.message);
        f.code
    })
}

struct District {
    state_fips: String,
    id: String,
    geometry: PlanarMultiPolygon,
}

impl District {
    fn label(&self) -> String {
        if self.state_fips.is_empty() {
            self.id.clone()
        } else {
            format!("{}/{}", self.state_fips, self.id)
        }
    }
}

struct Dataset {
    districts: Vec<District>,
    states: BTreeMap<String, PlanarMultiPolygon>,
    zone: Option<UtmZoneSpec>,
}

impl Dataset {
    fn state_for(&self, d: &District) -> Result<&PlanarMultiPolygon, String> {
        match self.states.get(&d.state_fips) {
            Some(s) => Ok(s),
            None if self.states.len() == 1 => Ok(self.states.values().next().unwrap()),
            None => Err(format!("no state geometry with STATEFP {:?}", d.state_fips)),
        }
    }

    fn zone_label(&self) -> String {
        self.zone
            .map_or_else(|| "planar".to_string(), |z| z.to_string())
    }
}

fn read_features(path: &Path, format: Option<InputFormat>) -> Result<Vec<Feature>, Failure> {
    let open = |p: &Path| {
        File::open(p).map_err(|e| Failure::usage(format!("cannot open {}: {e}", p.display())))
    };
    let is_shp = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("shp"));
    let parsed = match format.unwrap_or(if is_shp {
        InputFormat::Shapefile
    } else {
        InputFormat::Geojson
    }) {
        InputFormat::Geojson => geojson::read_geojson(BufReader::new(open(path)?)),
        InputFormat::Shapefile => {
            let shp = open(path)?;
            let dbf_path = path.with_extension("dbf");
            let dbf = open(&dbf_path)?;
            shapefile::read_shapefile(BufReader::new(shp), BufReader::new(dbf))
        }
    };
    parsed.map_err(|e| Failure::data(format!("{}: {e}", path.display())))
}

fn choose_zone(choice: ZoneChoice, reference: &[Feature]) -> Result<UtmZoneSpec, Failure> {
    match choice {
        ZoneChoice::Fixed(z) => Ok(z),
        ZoneChoice::Auto => {
            let parts = reference
                .iter()
                .flat_map(|f| f.geometry.multipolygon().parts().iter().cloned());
            let centroid = PlanarMultiPolygon::new(parts.collect())
                .centroid()
                .ok_or_else(|| Failure::data("cannot locate the state to choose a UTM zone"))?;
            Ok(UtmZoneSpec::containing(centroid.x, centroid.y))
        }
    }
}

fn load(input: &InputArgs, state_path: Option<&Path>) -> Result<Dataset, Failure> {
    let district_features = read_features(&input.district, input.format)?;
    let state_features = state_path
        .map(|p| read_features(p, input.format))
        .transpose()?;
    let all = district_features
        .iter()
        .chain(state_features.iter().flatten());
    let geographic: BTreeSet<bool> = all.map(|f| f.geometry.is_geographic()).collect();
    if geographic.len() > 1 {
        return Err(Failure::usage(
            "district and state inputs mix lon/lat and projected coordinates",
        ));
    }
    let zone = if geographic.contains(&true) {
        let reference = state_features.as_deref().unwrap_or(&district_features);
        Some(choose_zone(input.zone, reference)?)
    } else {
        if let ZoneChoice::Fixed(z) = input.zone {
            warn!("inputs are already projected; ignoring --zone {z}");
        }
        None
    };
    let project = |features: Vec<Feature>| -> Result<Vec<PlanarMultiPolygon>, Failure> {
        features
            .into_iter()
            .map(|f| match zone {
                Some(z) => project_to_utm(&f, z).map_err(Failure::data),
                None => Ok(f),
            })
            .map(|f| f.map(|f| f.geometry.multipolygon().clone()))
            .collect()
    };

    let mut states = BTreeMap::new();
    if let Some(features) = state_features {
        let keys: Vec<String> = features
            .iter()
            .map(|f| f.state_fips().unwrap_or_default().to_string())
            .collect();
        let mut groups: BTreeMap<String, Vec<_>> = BTreeMap::new();
        for (key, geom) in keys.into_iter().zip(project(features)?) {
            groups.entry(key).or_default().extend(geom.into_parts());
        }
        for (key, parts) in groups {
            let area: f64 = parts.iter().map(|p| p.area()).sum();
            let merged = dissolve(&parts);
            if (merged.area() - area).abs() > 1e-6 * area {
                warn!(
                    "state {key:?}: dissolved area {:.0} differs from the district total {area:.0}",
                    merged.area()
                );
            }
            states.insert(key, merged);
        }
    }

    let labels: Vec<(String, String)> = district_features
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let state = f.state_fips().unwrap_or_default().to_string();
            let id = f
                .district_code()
                .map_or_else(|| i.to_string(), str::to_string);
            (state, id)
        })
        .collect();
    let only: BTreeSet<&str> = input.only.iter().map(|s| s.trim()).collect();
    let districts: Vec<District> = labels
        .into_iter()
        .zip(project(district_features)?)
        .map(|((state_fips, id), geometry)| District {
            state_fips,
            id,
            geometry,
        })
        .filter(|d| only.is_empty() || only.contains(d.id.as_str()))
        .collect();
    if districts.is_empty() {
        return Err(Failure::data("no districts selected"));
    }
    Ok(Dataset {
        districts,
        states,
        zone,
    })
}

/// Runs `work` on every district on a pool of `jobs` threads. Results keep
/// input order, so output does not depend on scheduling.
fn process<T, F>(
    data: &Dataset,
    jobs: Option<u16>,
    work: F,
) -> Result<Vec<Result<T, String>>, Failure>
where
    T: Send,
    F: Fn(&District) -> Result<T, String> + Sync,
{
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(usize::from(n));
    }
    let pool = builder.build().map_err(Failure::usage)?;
    Ok(pool.install(|| {
        data.districts
            .par_iter()
            .map(|d| {
                let start = Instant::now();
                let result = work(d);
                match &result {
                    Ok(_) => info!("district {}: done in {:.2?}", d.label(), start.elapsed()),
                    Err(e) => info!(
                        "district {}: failed after {:.2?}: {e}",
                        d.label(),
                        start.elapsed()
                    ),
                }
                result
            })
            .collect()
    }))
}

/// Splits outcomes into successes and a count of reported failures.
fn settle<T>(data: &Dataset, outcomes: Vec<Result<T, String>>) -> (Vec<T>, usize) {
    let mut ok = Vec::new();
    let mut failed = 0;
    for (d, outcome) in data.districts.iter().zip(outcomes) {
        match outcome {
            Ok(v) => ok.push(v),
            Err(e) => {
                eprintln!("district {} failed: {e}", d.label());
                failed += 1;
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} of {} districts failed", data.districts.len());
    }
    (ok, failed)
}

fn exit_code(failed: usize) -> i32 {
    if failed > 0 {
        EXIT_DATA
    } else {
        EXIT_OK
    }
}

/// Writes to `path`, or stdout when absent.
fn write_output(
    path: Option<&Path>,
    write: impl FnOnce(&mut dyn Write) -> Result<(), IoError>,
) -> Result<(), Failure> {
    let result = match path {
        Some(p) => {
            let file = File::create(p)
                .map_err(|e| Failure::usage(format!("cannot create {}: {e}", p.display())))?;
            let mut w = BufWriter::new(file);
            write(&mut w)
        }
        None => write(&mut io::stdout().lock()),
    };
    result.map_err(|e| Failure::usage(format!("cannot write output: {e}")))
}

/// Side information goes to stdout when the CSV has its own file, and to
/// stderr otherwise so piped CSV stays clean.
fn note(csv_to_file: bool, line: &str) {
    if csv_to_file {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

fn params_line(params: &PipelineParams, data: &Dataset) -> String {
    format!(
        "# buffer={} simplify={} densify={} sentinel_margin_factor={} fragment_length_cap_factor={} zone={}",
        params.buffer,
        params.simplify_tolerance,
        params.densify_k,
        params.sentinel_margin_factor,
        params.fragment_length_cap_factor,
        data.zone_label()
    )
}

fn analyze(
    data: &Dataset,
    d: &District,
    params: &PipelineParams,
) -> Result<DistrictAnalysis, String> {
    let state = data.state_for(d)?;
    let analysis = analyze_district(&d.geometry, state, params).map_err(|e| e.to_string())?;
    if analysis.hull.district_outside_state {
        warn!("district {} extends outside its state geometry", d.label());
    }
    Ok(analysis)
}

fn summary_lines(reports: &[RatioReport]) -> Vec<String> {
    let mut by_state: BTreeMap<&str, Vec<RatioReport>> = BTreeMap::new();
    for r in reports {
        by_state.entry(&r.state_fips).or_default().push(r.clone());
    }
    by_state
        .into_iter()
        .filter_map(|(state, rs)| {
            let (mean, category) = statewide_average(&rs).ok()?;
            let c = category_counts(&rs);
            let name = if state.is_empty() { "all".to_string() } else { state.to_string() };
            Some(format!(
                "state {name}: {} districts, mean ratio {mean:.2}, category {category}, counts 1:{} 2:{} 3:{} 4:{}",
                rs.len(),
                c[0],
                c[1],
                c[2],
                c[3]
            ))
        })
        .collect()
}

fn cmd_ratio(args: RatioArgs, summary: bool) -> Result<i32, Failure> {
    let params = args.pipeline.params()?;
    let data = load(&args.input, Some(&args.state))?;
    let to_file = args.out.is_some();
    note(to_file, &params_line(&params, &data));
    let outcomes = process(&data, args.input.jobs, |d| {
        analyze(&data, d, &params).map(|a| a.report.labeled(d.state_fips.clone(), d.id.clone()))
    })?;
    let (reports, failed) = settle(&data, outcomes);
    write_output(args.out.as_deref(), |w| write_report_csv(&reports, w))?;
    if summary {
        if reports.is_empty() {
            return Err(Failure::data("no district produced a ratio"));
        }
        for line in summary_lines(&reports) {
            note(to_file, &line);
        }
    }
    Ok(exit_code(failed))
}

fn cmd_handley(args: HandleyArgs) -> Result<i32, Failure> {
    let step = args.step_degrees;
    ray_count(step).map_err(|e| Failure::usage(format!("--step-degrees {step}: {e}")))?;
    let sampling = args
        .seed_grid
        .map_or(SeedSampling::Auto, SeedSampling::Grid);
    let data = load(&args.input, args.state.as_deref())?;
    let to_file = args.out.is_some();
    let seeds = args
        .seed_grid
        .map_or_else(|| "auto".to_string(), |s| format!("grid {s}"));
    note(
        to_file,
        &format!(
            "# step_degrees={step} seeds={seeds} zone={}",
            data.zone_label()
        ),
    );
    let outcomes = process(&data, args.input.jobs, |d| {
        let report = meanderingness(&d.geometry, &sampling, step).map_err(|e| e.to_string())?;
        Ok(MeanderRow {
            state_fips: d.state_fips.clone(),
            district_id: d.id.clone(),
            mu: report.mu,
            seed_count: report.seed_results.len(),
        })
    })?;
    let (rows, failed) = settle(&data, outcomes);
    write_output(args.out.as_deref(), |w| write_meander_csv(&rows, w))?;
    Ok(exit_code(failed))
}

fn file_stem(d: &District, multi_state: bool) -> String {
    let raw = if multi_state && !d.state_fips.is_empty() {
        format!("{}_{}", d.state_fips, d.id)
    } else {
        d.id.clone()
    };
    raw.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

fn cmd_render(args: RenderArgs) -> Result<i32, Failure> {
    let params = args.pipeline.params()?;
    fs::create_dir_all(&args.svg_dir)
        .map_err(|e| Failure::usage(format!("cannot create {}: {e}", args.svg_dir.display())))?;
    let data = load(&args.input, Some(&args.state))?;
    eprintln!("{}", params_line(&params, &data));
    let multi_state = data
        .districts
        .iter()
        .map(|d| &d.state_fips)
        .collect::<BTreeSet<_>>()
        .len()
        > 1;
    let outcomes = process(&data, args.input.jobs, |d| {
        let a = analyze(&data, d, &params)?;
        let mut bytes = Vec::new();
        svg::render_svg(&d.geometry, &a.medial_axis, Some(&a.hull.hull), &mut bytes)
            .map_err(|e| e.to_string())?;
        Ok((file_stem(d, multi_state), bytes))
    })?;
    let (images, failed) = settle(&data, outcomes);
    for (stem, bytes) in images {
        let path = args.svg_dir.join(format!("{stem}.svg"));
        fs::write(&path, bytes)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(exit_code(failed))
}
