//! Command line front end: generate curves, run the shortening flow, verify
//! the curvature-area inequality.
//!
//! Exit codes: 0 when everything ran and every check passed, 1 when the tool
//! ran but a verification or flow failed, 2 for usage, input, or environment
//! errors.

mod manifest;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use curveflow_core::corpus::{corpus_sweep, generate, CorpusMix, CurveKind, CurveSpec, PresetName};
use curveflow_core::curve::{read_curve, write_curve};
use curveflow_core::export::{svg_frame, trajectory_csv, SvgViewport};
use curveflow_core::flow::{run_with_observer, FlowConfig, FlowTrajectory};
use curveflow_core::verify::{verify_curve, verify_trajectory, VerificationReport, VerifyOptions};
use manifest::ManifestBuilder;
use rayon::prelude::*;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "curveflow",
    version,
    about = "Curve shortening flow and curvature-area inequality checks for closed plane curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a corpus of random curves, or a single named preset
    Gen(GenArgs),
    /// Run the shortening flow on a curve file and record the trajectory
    Flow(FlowArgs),
    /// Check the inequality and its supporting identities on curves or flows
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Number of corpus curves to generate (writes into --out-dir)
    #[arg(long, conflicts_with = "preset")]
    count: Option<usize>,
    /// Base seed; corpus slot i derives its randomness from seed + i
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Vertices per curve
    #[arg(long, default_value_t = 512)]
    n_points: usize,
    /// Corpus class weights as circle,convex,star,general
    #[arg(long, default_value = "0,0.2,0.4,0.4")]
    mix: String,
    /// Named preset to generate instead of a corpus: bean or kidney
    #[arg(long)]
    preset: Option<String>,
    /// Output directory for a corpus
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Output file for a single preset curve
    #[arg(long)]
    out: Option<PathBuf>,
    /// Manifest path; a corpus defaults to <out-dir>/manifest.json
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct FlowFlags {
    /// Working resolution; the input is resampled to this vertex count
    #[arg(long, default_value_t = 512)]
    n_points: usize,
    /// Fraction of the stable explicit step to take
    #[arg(long, default_value_t = 0.25)]
    dt_safety: f64,
    /// Steps between uniform arc-length resamplings
    #[arg(long, default_value_t = 10)]
    resample_every: usize,
    /// Flow time between trajectory samples (default: horizon / 200)
    #[arg(long)]
    sample_interval: Option<f64>,
    /// Stop once the area falls to this fraction of the initial area
    #[arg(long, default_value_t = 0.1)]
    stop_area_fraction: f64,
}

impl FlowFlags {
    fn to_config(&self) -> FlowConfig {
        FlowConfig {
            n_points: self.n_points,
            dt_safety: self.dt_safety,
            resample_every: self.resample_every,
            sample_interval: self.sample_interval,
            stop_area_fraction: self.stop_area_fraction,
        }
    }

    fn echo(&self) -> serde_json::Value {
        json!({
            "n_points": self.n_points,
            "dt_safety": self.dt_safety,
            "resample_every": self.resample_every,
            "sample_interval": self.sample_interval,
            "stop_area_fraction": self.stop_area_fraction,
        })
    }
}

#[derive(Args)]
struct FlowArgs {
    /// Input curve file ({"points": [[x, y], ...]})
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    flow: FlowFlags,
    /// Trajectory CSV output path
    #[arg(long)]
    csv: PathBuf,
    /// Write an SVG frame each time flow time passes a multiple of this
    #[arg(long)]
    svg_every: Option<f64>,
    /// Directory for SVG frames (required with --svg-every)
    #[arg(long)]
    svg_dir: Option<PathBuf>,
    /// Manifest path; defaults to <csv>.manifest.json
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Curve file, or a directory whose *.json curves are all verified
    #[arg(long)]
    input: PathBuf,
    /// Also run the shortening flow and check trajectory invariants
    #[arg(long)]
    flow: bool,
    #[command(flatten)]
    flow_flags: FlowFlags,
    /// Grid resolution for the inscribed disk bound
    #[arg(long, default_value_t = 512)]
    grid: usize,
    /// Tolerance on the main inequality margin k_max sqrt(A/pi) - 1
    #[arg(long, default_value_t = curveflow_core::verify::MAIN_INEQ_TOL_SINGLE)]
    main_tol: f64,
    /// Write the verification report here (JSON)
    #[arg(long)]
    report: Option<PathBuf>,
    /// Manifest path; defaults to <report>.manifest.json when --report is set
    #[arg(long)]
    manifest: Option<PathBuf>,
}

fn main() -> ExitCode {
    if let Ok(raw) = std::env::var("CURVEFLOW_WORKERS") {
        match raw.parse::<usize>() {
            Ok(workers) if workers >= 1 => {
                if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(workers).build_global()
                {
                    eprintln!("error: configuring {workers} workers: {e}");
                    return ExitCode::from(2);
                }
            }
            _ => {
                eprintln!("error: CURVEFLOW_WORKERS must be a positive integer, got {raw:?}");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Flow(args) => cmd_flow(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn parse_mix(text: &str) -> anyhow::Result<CorpusMix> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("mix {text:?} must be four comma-separated numbers"))?;
    if parts.len() != 4 {
        bail!("mix {text:?} must have exactly four weights: circle,convex,star,general");
    }
    Ok(CorpusMix { circle: parts[0], convex: parts[1], star: parts[2], general: parts[3] })
}

fn parse_preset(name: &str) -> anyhow::Result<PresetName> {
    match name.to_ascii_lowercase().as_str() {
        "bean" => Ok(PresetName::Bean),
        "kidney" => Ok(PresetName::Kidney),
        other => bail!("unknown preset {other:?}; expected bean or kidney"),
    }
}

fn sibling_manifest(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

fn cmd_gen(args: GenArgs) -> anyhow::Result<bool> {
    match (args.count, &args.preset) {
        (Some(count), None) => {
            let out_dir = args
                .out_dir
                .clone()
                .context("--out-dir is required when generating a corpus")?;
            if args.out.is_some() {
                bail!("--out applies to --preset; corpora use --out-dir");
            }
            let mix = parse_mix(&args.mix)?;
            std::fs::create_dir_all(&out_dir)
                .with_context(|| format!("creating {}", out_dir.display()))?;
            let curves = corpus_sweep(count, args.seed, &mix, args.n_points)?;
            let mut mb = ManifestBuilder::new(
                "gen",
                json!({
                    "count": count,
                    "seed": args.seed,
                    "n_points": args.n_points,
                    "mix": args.mix,
                }),
            );
            for (i, generated) in curves.iter().enumerate() {
                let path = out_dir.join(format!("curve_{i:04}.json"));
                write_curve(&path, &generated.curve)?;
                mb.add_output(&path);
            }
            let specs: Vec<&CurveSpec> = curves.iter().map(|g| &g.spec).collect();
            let specs_path = out_dir.join("specs.json");
            std::fs::write(&specs_path, serde_json::to_string_pretty(&specs)?)?;
            mb.add_output(&specs_path);
            let manifest_path = args.manifest.unwrap_or_else(|| out_dir.join("manifest.json"));
            mb.write(&manifest_path)?;
            println!("wrote {count} curves to {}", out_dir.display());
            Ok(true)
        }
        (None, Some(preset)) => {
            let out = args.out.clone().context("--out is required with --preset")?;
            if args.out_dir.is_some() {
                bail!("--out-dir applies to --count; presets use --out");
            }
            let spec = CurveSpec {
                kind: CurveKind::Preset { name: parse_preset(preset)? },
                seed: args.seed,
                n_points: args.n_points,
            };
            let curve = generate(&spec)?;
            write_curve(&out, &curve)?;
            if let Some(manifest_path) = args.manifest {
                let mut mb = ManifestBuilder::new(
                    "gen",
                    json!({ "preset": preset, "seed": args.seed, "n_points": args.n_points }),
                );
                mb.add_output(&out);
                mb.write(&manifest_path)?;
            }
            println!("wrote {preset} curve to {}", out.display());
            Ok(true)
        }
        _ => bail!("exactly one of --count or --preset must be given"),
    }
}

fn cmd_flow(args: FlowArgs) -> anyhow::Result<bool> {
    if args.svg_every.is_some() != args.svg_dir.is_some() {
        bail!("--svg-every and --svg-dir must be given together");
    }
    if let Some(every) = args.svg_every {
        if !(every > 0.0) {
            bail!("--svg-every must be positive");
        }
    }
    let loaded = read_curve(&args.input)
        .with_context(|| format!("loading {}", args.input.display()))?;
    if loaded.reversed {
        eprintln!("note: input was clockwise; using the counterclockwise reversal");
    }
    if let Some(dir) = &args.svg_dir {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let mut mb = ManifestBuilder::new(
        "flow",
        json!({ "flow": args.flow.echo(), "svg_every": args.svg_every }),
    );
    mb.add_input(&args.input)?;

    let mut viewport: Option<SvgViewport> = None;
    let mut next_frame_t = 0.0;
    let mut frame_index: usize = 0;
    let mut frame_paths: Vec<PathBuf> = Vec::new();
    let mut frame_error: Option<std::io::Error> = None;
    let result = {
        let mut observer = |state: &curveflow_core::flow::FlowState,
                            sample: &curveflow_core::flow::TrajectorySample| {
            let (Some(every), Some(dir)) = (args.svg_every, args.svg_dir.as_deref()) else {
                return;
            };
            if frame_error.is_some() {
                return;
            }
            let view = viewport.get_or_insert_with(|| SvgViewport::from_curve(&state.curve));
            while sample.t >= next_frame_t {
                let path = dir.join(format!("frame_{frame_index:05}.svg"));
                if let Err(e) = std::fs::write(&path, svg_frame(&state.curve, view)) {
                    frame_error = Some(e);
                    return;
                }
                frame_paths.push(path);
                frame_index += 1;
                next_frame_t += every;
            }
        };
        run_with_observer(&loaded.curve, &args.flow.to_config(), &mut observer)
    };
    if let Some(e) = frame_error {
        return Err(e).context("writing SVG frames");
    }
    for p in &frame_paths {
        mb.add_output(p);
    }

    let manifest_path = args.manifest.clone().unwrap_or_else(|| sibling_manifest(&args.csv));
    let write_csv = |traj: &FlowTrajectory, mb: &mut ManifestBuilder| -> anyhow::Result<()> {
        std::fs::write(&args.csv, trajectory_csv(traj))
            .with_context(|| format!("writing {}", args.csv.display()))?;
        mb.add_output(&args.csv);
        Ok(())
    };
    match result {
        Ok(trajectory) => {
            write_csv(&trajectory, &mut mb)?;
            mb.write(&manifest_path)?;
            let last = trajectory.samples.last().expect("a run records samples");
            println!(
                "flow finished at t = {:.6}: {} samples, area {:.6} -> {:.6}, convexification {}",
                last.t,
                trajectory.samples.len(),
                trajectory.samples[0].area,
                last.area,
                match trajectory.convexification_time {
                    Some(t) => format!("at t = {t:.6}"),
                    None => "not reached".to_string(),
                }
            );
            Ok(true)
        }
        Err(curveflow_core::Error::EmbeddednessLost { t, partial }) => {
            write_csv(&partial, &mut mb)?;
            mb.write(&manifest_path)?;
            eprintln!(
                "flow failed: curve self-intersected at t = {t:.6}; partial trajectory written"
            );
            Ok(false)
        }
        Err(e) => Err(e.into()),
    }
}

fn curve_files_in(dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).with_context(|| format!("reading {}", dir.display()))? {
        let path = entry?.path();
        let name = path
            .file_name()
            .and_then(|n| n.to_str())
            .unwrap_or_default()
            .to_string();
        if !name.ends_with(".json")
            || name == "manifest.json"
            || name == "specs.json"
            || name.ends_with(".manifest.json")
            || name.ends_with(".report.json")
        {
            continue;
        }
        files.push(path);
    }
    files.sort();
    Ok(files)
}

fn cmd_verify(args: VerifyArgs) -> anyhow::Result<bool> {
    let single_file = !args.input.is_dir();
    let files = if single_file {
        vec![args.input.clone()]
    } else {
        let found = curve_files_in(&args.input)?;
        if found.is_empty() {
            bail!("no curve files found in {}", args.input.display());
        }
        found
    };
    let options = VerifyOptions {
        main_inequality_tol: args.main_tol,
        grid_resolution: args.grid,
    };
    let flow_config = args.flow_flags.to_config();

    let reports: Vec<(PathBuf, VerificationReport)> = files
        .par_iter()
        .map(|file| -> anyhow::Result<(PathBuf, VerificationReport)> {
            let loaded =
                read_curve(file).with_context(|| format!("loading {}", file.display()))?;
            let mut report = verify_curve(&loaded.curve, &options)?;
            if args.flow {
                match curveflow_core::flow::run(&loaded.curve, &flow_config) {
                    Ok(trajectory) => {
                        let flow_report = verify_trajectory(&trajectory)?;
                        report.checks.extend(flow_report.checks);
                    }
                    Err(curveflow_core::Error::EmbeddednessLost { t, .. }) => {
                        report.checks.push(failed_flow_entry(t));
                    }
                    Err(e) => return Err(e.into()),
                }
                report.overall_pass = report.checks.iter().all(|c| c.pass);
            }
            Ok((file.clone(), report))
        })
        .collect::<anyhow::Result<_>>()?;

    let mut all_pass = true;
    for (file, report) in &reports {
        if single_file {
            for check in &report.checks {
                println!(
                    "{:>16}  {:<26} margin = {:+.3e}  tolerance = {:.1e}",
                    format!("[{}]", status_label(check.status)),
                    check.name,
                    check.margin,
                    check.tolerance
                );
            }
            println!(
                "{}: {}",
                file.display(),
                if report.overall_pass { "PASS" } else { "FAIL" }
            );
        } else {
            let failing: Vec<&str> = report
                .checks
                .iter()
                .filter(|c| !c.pass)
                .map(|c| c.name.as_str())
                .collect();
            println!(
                "{} {}{}",
                if report.overall_pass { "PASS" } else { "FAIL" },
                file.display(),
                if failing.is_empty() {
                    String::new()
                } else {
                    format!("  ({})", failing.join(", "))
                }
            );
        }
        all_pass &= report.overall_pass;
    }
    if !single_file {
        println!(
            "{} of {} curves passed",
            reports.iter().filter(|(_, r)| r.overall_pass).count(),
            reports.len()
        );
    }

    if let Some(report_path) = &args.report {
        let json = if single_file {
            reports[0].1.to_json()
        } else {
            let entries: Vec<serde_json::Value> = reports
                .iter()
                .map(|(file, report)| {
                    json!({ "file": file.display().to_string(), "report": report })
                })
                .collect();
            serde_json::to_string_pretty(&entries)?
        };
        std::fs::write(report_path, json)
            .with_context(|| format!("writing {}", report_path.display()))?;
    }

    let manifest_path = args
        .manifest
        .clone()
        .or_else(|| args.report.as_ref().map(|r| sibling_manifest(r)));
    if let Some(manifest_path) = manifest_path {
        let mut mb = ManifestBuilder::new(
            "verify",
            json!({
                "flow": args.flow,
                "flow_config": args.flow_flags.echo(),
                "grid": args.grid,
                "main_tol": args.main_tol,
            }),
        );
        for file in &files {
            mb.add_input(file)?;
        }
        if let Some(report_path) = &args.report {
            mb.add_output(report_path);
        }
        mb.write(&manifest_path)?;
    }
    Ok(all_pass)
}

fn status_label(status: curveflow_core::verify::CheckStatus) -> &'static str {
    use curveflow_core::verify::CheckStatus;
    match status {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::Error => "error",
        CheckStatus::NotApplicable => "not applicable",
    }
}

fn failed_flow_entry(t: f64) -> curveflow_core::verify::CheckEntry {
    use curveflow_core::verify::{CheckEntry, CheckStatus};
    CheckEntry {
        name: "flow_completed".to_string(),
        pass: false,
        margin: 0.0,
        tolerance: 0.0,
        details: format!("curve self-intersected at t = {t:.6}"),
        status: CheckStatus::Error,
    }
}
