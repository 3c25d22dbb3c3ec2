//! Explicit curve shortening flow: every vertex moves by -k n dt.
//!
//! The integrator is deliberately plain (forward Euler, uniform resampling on
//! a fixed cadence); accuracy comes from small stable steps, and every
//! recorded sample carries its curvature field so diagnostics can be computed
//! after the fact.

use crate::curve::{ClosedCurve, MIN_POINTS};
use crate::error::{Error, Result};
use crate::geometry::{argmax, second_arc_derivative, CurveGeometry};

/// Relative tolerance (times max |k|) for the per-sample convexity flag.
pub const CONVEXITY_REL_TOL: f64 = 1e-6;

/// A resampling event must not disturb the enclosed area by more than this,
/// relative; the engine restores the pre-event area exactly by a centroid
/// rescale, so the observed drift is pure rounding.
pub const RESAMPLE_AREA_DRIFT_REL: f64 = 1e-8;

/// Between resampling events the spacing may drift; past this relative
/// variation the engine resamples early rather than risk the geometry gate.
const SPACING_DRIFT_LIMIT: f64 = 0.005;

/// Samples per run when no explicit sample interval is configured.
const DEFAULT_SAMPLES_PER_RUN: f64 = 200.0;

#[derive(Debug, Clone)]
pub struct FlowConfig {
    /// Working resolution; the input is resampled to this count up front.
    pub n_points: usize,
    /// Fraction of the parabolic stability limit to actually take.
    pub dt_safety: f64,
    /// Resample to uniform arc length every this many steps.
    pub resample_every: usize,
    /// Flow-time spacing of trajectory records; None picks horizon / 200.
    pub sample_interval: Option<f64>,
    /// Stop once the enclosed area falls to this fraction of the initial area.
    pub stop_area_fraction: f64,
}

impl Default for FlowConfig {
    fn default() -> Self {
        FlowConfig {
            n_points: 512,
            dt_safety: 0.25,
            resample_every: 10,
            sample_interval: None,
            stop_area_fraction: 0.1,
        }
    }
}

impl FlowConfig {
    fn validate(&self) -> Result<()> {
        if self.n_points < MIN_POINTS {
            return Err(Error::InvalidConfig(format!(
                "n_points {} below minimum {MIN_POINTS}",
                self.n_points
            )));
        }
        if !(self.dt_safety > 0.0 && self.dt_safety <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "dt_safety {} must lie in (0, 1]",
                self.dt_safety
            )));
        }
        if self.resample_every == 0 {
            return Err(Error::InvalidConfig("resample_every must be at least 1".into()));
        }
        if let Some(s) = self.sample_interval {
            if !(s > 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "sample_interval {s} must be positive"
                )));
            }
        }
        if !(self.stop_area_fraction > 0.0 && self.stop_area_fraction < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "stop_area_fraction {} must lie in (0, 1)",
                self.stop_area_fraction
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct FlowState {
    pub curve: ClosedCurve,
    pub geometry: CurveGeometry,
    pub t: f64,
    pub initial_area: f64,
}

impl FlowState {
    pub fn new(curve: ClosedCurve) -> Result<Self> {
        let geometry = CurveGeometry::compute(&curve)?;
        let area = geometry.enclosed_area;
        if area <= 0.0 {
            return Err(Error::NonPositiveArea(area));
        }
        Ok(FlowState { curve, geometry, t: 0.0, initial_area: area })
    }
}

/// One trajectory record. The curvature field and spacing are retained so that
/// time-paired samples support the curvature evolution residual.
#[derive(Debug, Clone)]
pub struct TrajectorySample {
    pub t: f64,
    pub area: f64,
    pub length: f64,
    pub k_max: f64,
    /// k_max of the area-pi rescaling of this state: k_max * sqrt(area / pi).
    pub k_max_rescaled: f64,
    /// length^2 / (4 pi area), at least 1 with equality only for circles.
    pub isoperimetric_ratio: f64,
    pub convex: bool,
    pub curvatures: Vec<f64>,
    pub spacing: f64,
    /// Bumped at every resampling event; samples from different epochs have no
    /// vertex correspondence.
    pub resample_epoch: u64,
}

#[derive(Debug, Clone)]
pub struct FlowTrajectory {
    pub samples: Vec<TrajectorySample>,
    pub final_state: FlowState,
    /// Time of the first sample from which convexity persists to the end.
    pub convexification_time: Option<f64>,
}

/// Largest stable explicit step: the parabolic limit spacing^2 / 2 capped by
/// the advective limit spacing / (2 max|k|), scaled by the safety factor.
pub fn stable_dt(state: &FlowState, config: &FlowConfig) -> f64 {
    let spacing = state.geometry.spacing();
    let max_k = state.geometry.max_abs_curvature();
    let advective = if max_k > 0.0 { spacing / max_k } else { f64::INFINITY };
    config.dt_safety * 0.5 * (spacing * spacing).min(advective)
}

/// One explicit Euler step: p_i -> p_i - k_i n_i dt. Geometry is recomputed on
/// the moved polygon.
pub fn step(state: &FlowState, dt: f64) -> Result<FlowState> {
    let pts = state.curve.points();
    let moved = pts
        .iter()
        .enumerate()
        .map(|(i, &p)| p - state.geometry.outer_normals[i] * (state.geometry.curvatures[i] * dt))
        .collect();
    let curve = ClosedCurve::new(moved)?;
    let geometry = CurveGeometry::compute(&curve)?;
    Ok(FlowState {
        curve,
        geometry,
        t: state.t + dt,
        initial_area: state.initial_area,
    })
}

/// Rescales the current curve to area pi about its centroid, the natural
/// normalization for comparing curvature across the trajectory.
pub fn rescaled_curve(state: &FlowState) -> Result<ClosedCurve> {
    state.curve.normalize_area(std::f64::consts::PI)
}

pub fn run(initial: &ClosedCurve, config: &FlowConfig) -> Result<FlowTrajectory> {
    run_with_observer(initial, config, &mut |_, _| {})
}

/// Runs the flow, invoking `observer` at every recorded sample (including the
/// initial one) with the live state. Embeddedness is checked at sampling
/// instants only; a failure aborts with the partial trajectory attached.
pub fn run_with_observer(
    initial: &ClosedCurve,
    config: &FlowConfig,
    observer: &mut dyn FnMut(&FlowState, &TrajectorySample),
) -> Result<FlowTrajectory> {
    config.validate()?;
    let working = initial.resample_uniform(config.n_points)?;
    if let Some((i, j)) = working.first_self_intersection() {
        return Err(Error::NotEmbedded(i, j));
    }
    let mut state = FlowState::new(working)?;
    let area0 = state.initial_area;
    let horizon = area0 * (1.0 - config.stop_area_fraction) / (2.0 * std::f64::consts::PI);
    let sample_dt = config
        .sample_interval
        .unwrap_or(horizon / DEFAULT_SAMPLES_PER_RUN);

    let mut epoch: u64 = 0;
    let mut samples = Vec::new();
    let first = make_sample(&state, epoch);
    observer(&state, &first);
    samples.push(first);
    let mut next_sample_t = sample_dt;
    let mut steps: u64 = 0;

    loop {
        if state.geometry.enclosed_area <= config.stop_area_fraction * area0 {
            break;
        }
        let dt = stable_dt(&state, config);
        state = step(&state, dt)?;
        steps += 1;

        if steps % config.resample_every as u64 == 0
            || state.curve.spacing_variation() > SPACING_DRIFT_LIMIT
        {
            state = resample_preserving_area(state, config.n_points)?;
            epoch += 1;
        }

        if state.t >= next_sample_t {
            if let Some((i, j)) = state.curve.first_self_intersection() {
                let _ = (i, j);
                return Err(Error::EmbeddednessLost {
                    t: state.t,
                    partial: Box::new(finish(samples, state)),
                });
            }
            let sample = make_sample(&state, epoch);
            observer(&state, &sample);
            samples.push(sample);
            next_sample_t = ((state.t / sample_dt).floor() + 1.0) * sample_dt;
        }
    }

    if state.t > samples.last().map_or(0.0, |s| s.t) {
        if let Some(_) = state.curve.first_self_intersection() {
            return Err(Error::EmbeddednessLost {
                t: state.t,
                partial: Box::new(finish(samples, state)),
            });
        }
        let sample = make_sample(&state, epoch);
        observer(&state, &sample);
        samples.push(sample);
    }

    Ok(finish(samples, state))
}

fn finish(samples: Vec<TrajectorySample>, final_state: FlowState) -> FlowTrajectory {
    let convexification_time = convexification_time(&samples);
    FlowTrajectory { samples, final_state, convexification_time }
}

/// Resampling cuts corners; restoring the recorded area with a centroid
/// rescale keeps the area law clean over thousands of events.
fn resample_preserving_area(state: FlowState, n_points: usize) -> Result<FlowState> {
    let area_before = state.geometry.enclosed_area;
    let resampled = state.curve.resample_uniform(n_points)?;
    let restored = resampled.normalize_area(area_before)?;
    let geometry = CurveGeometry::compute(&restored)?;
    debug_assert!(
        ((geometry.enclosed_area - area_before) / area_before).abs() < RESAMPLE_AREA_DRIFT_REL
    );
    Ok(FlowState {
        curve: restored,
        geometry,
        t: state.t,
        initial_area: state.initial_area,
    })
}

fn make_sample(state: &FlowState, epoch: u64) -> TrajectorySample {
    let geom = &state.geometry;
    let (k_max, _) = geom.max_curvature();
    let area = geom.enclosed_area;
    let length = geom.total_length;
    TrajectorySample {
        t: state.t,
        area,
        length,
        k_max,
        k_max_rescaled: k_max * (area / std::f64::consts::PI).sqrt(),
        isoperimetric_ratio: length * length / (4.0 * std::f64::consts::PI * area),
        convex: geom.is_convex(CONVEXITY_REL_TOL * geom.max_abs_curvature()),
        curvatures: geom.curvatures.clone(),
        spacing: geom.spacing(),
        resample_epoch: epoch,
    }
}

/// First sample index from which every later sample is convex.
fn convexification_time(samples: &[TrajectorySample]) -> Option<f64> {
    let mut first_stable: Option<f64> = None;
    for s in samples {
        if s.convex {
            first_stable.get_or_insert(s.t);
        } else {
            first_stable = None;
        }
    }
    first_stable
}

/// Extinction time implied by the final sample and the linear area law.
pub fn extinction_estimate(trajectory: &FlowTrajectory) -> Result<f64> {
    let last = trajectory.samples.last().ok_or(Error::TooFewSamples)?;
    Ok(last.t + last.area / (2.0 * std::f64::consts::PI))
}

/// Residual of the curvature evolution law between two time-paired samples:
/// (k_b - k_a) / dt - k_a'' - k_a^3 per vertex, with the arc second derivative
/// taken on the earlier sample. Samples must share a resampling epoch.
pub fn pde_residual(a: &TrajectorySample, b: &TrajectorySample) -> Result<Vec<f64>> {
    if a.resample_epoch != b.resample_epoch || a.curvatures.len() != b.curvatures.len() {
        return Err(Error::ResampleEpochMismatch);
    }
    if !(b.t > a.t) {
        return Err(Error::NonIncreasingSampleTimes);
    }
    let dt = b.t - a.t;
    let d2 = second_arc_derivative(&a.curvatures, a.spacing);
    Ok(a.curvatures
        .iter()
        .zip(&b.curvatures)
        .zip(&d2)
        .map(|((&ka, &kb), &second)| (kb - ka) / dt - second - ka * ka * ka)
        .collect())
}

/// Root mean square of the residual over every adjacent same-epoch sample
/// pair. Errors only when no pair is usable.
pub fn pde_residual_rms(trajectory: &FlowTrajectory) -> Result<f64> {
    let mut sum_sq = 0.0;
    let mut count = 0usize;
    for pair in trajectory.samples.windows(2) {
        match pde_residual(&pair[0], &pair[1]) {
            Ok(residual) => {
                for r in residual {
                    sum_sq += r * r;
                    count += 1;
                }
            }
            Err(Error::ResampleEpochMismatch) => continue,
            Err(e) => return Err(e),
        }
    }
    if count == 0 {
        return Err(Error::TooFewSamples);
    }
    Ok((sum_sq / count as f64).sqrt())
}

/// Monitor for the rescaled-curvature barrier: the area-pi rescaled maximum
/// curvature must never fall below 1 (up to discretization), so in particular
/// never below a threshold m < 1; and at each sample's curvature argmax the
/// arc second derivative cannot be positive.
#[derive(Debug, Clone)]
pub struct BarrierReport {
    pub threshold: f64,
    /// True if any sample had rescaled max curvature below the threshold.
    pub ever_below_threshold: bool,
    pub min_rescaled_max: f64,
    /// Largest over samples of (curvature second derivative at the argmax)
    /// divided by max |k| of that sample. Non-positive up to rounding.
    pub max_argmax_concavity_ratio: f64,
}

pub fn barrier_monitor(trajectory: &FlowTrajectory, threshold: f64) -> Result<BarrierReport> {
    if trajectory.samples.is_empty() {
        return Err(Error::TooFewSamples);
    }
    let mut min_rescaled = f64::INFINITY;
    let mut worst_concavity = f64::NEG_INFINITY;
    for sample in &trajectory.samples {
        min_rescaled = min_rescaled.min(sample.k_max_rescaled);
        let (_, at) = argmax(&sample.curvatures);
        let n = sample.curvatures.len();
        let prev = sample.curvatures[(at + n - 1) % n];
        let next = sample.curvatures[(at + 1) % n];
        let second =
            (next - 2.0 * sample.curvatures[at] + prev) / (sample.spacing * sample.spacing);
        let scale = sample.curvatures.iter().fold(0.0f64, |m, k| m.max(k.abs()));
        if scale > 0.0 {
            worst_concavity = worst_concavity.max(second / scale);
        }
    }
    Ok(BarrierReport {
        threshold,
        ever_below_threshold: min_rescaled < threshold,
        min_rescaled_max: min_rescaled,
        max_argmax_concavity_ratio: worst_concavity,
    })
}
