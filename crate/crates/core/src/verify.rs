//! Verification checks for the curvature-area inequality and the identities
//! feeding it, reported as structured pass/fail entries.
//!
//! Every check follows one margin convention: the entry passes when
//! `margin >= -tolerance`. Margins are relative (dimensionless) wherever the
//! quantity has a natural scale; the few absolute ones say so in their
//! details string.

use crate::curve::ClosedCurve;
use crate::error::{Error, Result};
use crate::flow::{barrier_monitor, FlowTrajectory};
use crate::geometry::{find_star_center, CurveGeometry, SPACING_VARIATION_LIMIT};
use crate::inradius::inscribed_disk;
use serde::Serialize;
use std::f64::consts::PI;

/// Reporting tolerance on k_max sqrt(A/pi) - 1 for a single curve; admits the
/// O(1/n^2) deficit of a near-circular polygon at moderate resolution.
pub const MAIN_INEQ_TOL_SINGLE: f64 = 1e-4;
/// Strict corpus tolerance for the same margin; corpus generators stay away
/// from the equality case, so the discrete margin is genuinely positive.
pub const MAIN_INEQ_TOL_CORPUS: f64 = 1e-6;
/// Margin below which a curve is interrogated as a potential equality case.
pub const EQUALITY_MARGIN_GATE: f64 = 0.01;
/// Maximum curvature coefficient of variation accepted as "near circular".
pub const ROUNDNESS_NEAR_CIRCLE: f64 = 0.05;
/// Relative tolerance on |A(t) - (A(0) - 2 pi t)| / A(0) along a flow.
pub const AREA_LAW_REL_TOL: f64 = 1e-3;
/// The rescaled maximum curvature along a flow must stay above 1 minus this.
pub const BARRIER_K_TOL: f64 = 5e-3;
/// Barrier threshold strictly below 1 that no trajectory may dip under.
pub const BARRIER_THRESHOLD: f64 = 0.99;
/// Cap on (arc second derivative of curvature at the argmax) / max |k|.
pub const ARGMAX_CONCAVITY_REL_TOL: f64 = 1e-6;
/// Relative tolerance for the identity (integral of k (p - c) . n ds) = length.
pub const STAR_IDENTITY_TOL: f64 = 1e-4;
/// Relative tolerance for length <= 2 k_max area on star-shaped curves.
pub const STAR_BOUND_TOL: f64 = 1e-4;
/// Support values above minus this count as a valid kernel witness.
pub const STAR_SUPPORT_TOL: f64 = 1e-9;
/// Absolute tolerance on length^2 - 4 pi area (positive for any polygon that
/// is not degenerate, so this only absorbs rounding).
pub const ISOPER_ABS_TOL: f64 = 1e-6;
/// Grid cells of slack granted to the inscribed disk bound.
pub const INRADIUS_GRID_SLACK: f64 = 4.0;
/// Slack for sample-to-sample increases of the isoperimetric ratio in flow.
pub const ISOPER_FLOW_SLACK: f64 = 1e-6;
/// Relative tolerance on the turning integral against 2 pi. The quadrature
/// error scales with (integral of k^3 ds) * spacing^2, so this allowance
/// assumes moderate bends at the default resolution (max |k| * spacing below
/// about a quarter); the sharp kidney preset at 512 vertices lands at 8e-4.
pub const TURNING_TOL: f64 = 1e-3;
/// Relative slack for length decrease between consecutive flow samples.
pub const LENGTH_MONOTONE_REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The check could not be evaluated; counts as a failure.
    Error,
    /// The check's hypothesis does not hold for this input; not counted.
    NotApplicable,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
    pub margin: f64,
    pub tolerance: f64,
    pub details: String,
    pub status: CheckStatus,
}

impl CheckEntry {
    fn evaluated(name: &str, margin: f64, tolerance: f64, details: String) -> CheckEntry {
        let pass = margin >= -tolerance;
        CheckEntry {
            name: name.to_string(),
            pass,
            margin,
            tolerance,
            details,
            status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
        }
    }

    fn not_applicable(name: &str, details: String) -> CheckEntry {
        CheckEntry {
            name: name.to_string(),
            pass: true,
            margin: 0.0,
            tolerance: 0.0,
            details,
            status: CheckStatus::NotApplicable,
        }
    }

    fn error(name: &str, details: String) -> CheckEntry {
        CheckEntry {
            name: name.to_string(),
            pass: false,
            margin: 0.0,
            tolerance: 0.0,
            details,
            status: CheckStatus::Error,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveMeta {
    pub n_points: usize,
    pub length: f64,
    pub area: f64,
    pub k_max: f64,
    /// k_max sqrt(area / pi); the inequality says this is at least 1.
    pub k_max_rescaled: f64,
    pub isoperimetric_ratio: f64,
    pub convex: bool,
    pub spacing_variation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub curve_meta: CurveMeta,
    pub checks: Vec<CheckEntry>,
    pub overall_pass: bool,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Tolerance on the main inequality margin for this run.
    pub main_inequality_tol: f64,
    /// Grid resolution for the inscribed disk bound.
    pub grid_resolution: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { main_inequality_tol: MAIN_INEQ_TOL_SINGLE, grid_resolution: 512 }
    }
}

fn meta_from_geometry(curve: &ClosedCurve, geom: &CurveGeometry) -> CurveMeta {
    let (k_max, _) = geom.max_curvature();
    let area = geom.enclosed_area;
    let length = geom.total_length;
    CurveMeta {
        n_points: curve.len(),
        length,
        area,
        k_max,
        k_max_rescaled: if area > 0.0 { k_max * (area / PI).sqrt() } else { f64::NAN },
        isoperimetric_ratio: if area > 0.0 { length * length / (4.0 * PI * area) } else { f64::NAN },
        convex: geom.is_convex(1e-6 * geom.max_abs_curvature()),
        spacing_variation: curve.spacing_variation(),
    }
}

/// Weighted coefficient of variation of the curvature field; zero for a
/// perfect circle. This is the roundness measure behind the equality-case
/// check.
pub fn curvature_cov(geom: &CurveGeometry) -> f64 {
    let weights = geom.vertex_weights();
    let total: f64 = weights.iter().sum();
    let mean: f64 = geom
        .curvatures
        .iter()
        .zip(&weights)
        .map(|(&k, &w)| k * w)
        .sum::<f64>()
        / total;
    let var: f64 = geom
        .curvatures
        .iter()
        .zip(&weights)
        .map(|(&k, &w)| w * (k - mean) * (k - mean))
        .sum::<f64>()
        / total;
    var.sqrt() / mean.abs()
}

/// Runs every static check against one curve.
pub fn verify_curve(curve: &ClosedCurve, options: &VerifyOptions) -> Result<VerificationReport> {
    let geom = CurveGeometry::compute(curve)?;
    let meta = meta_from_geometry(curve, &geom);
    let mut checks = Vec::new();

    checks.push(hypotheses_check(curve, &geom));
    let area_ok = geom.enclosed_area > 0.0;

    // Main inequality: k_max sqrt(A / pi) >= 1.
    if area_ok {
        let margin = meta.k_max_rescaled - 1.0;
        checks.push(CheckEntry::evaluated(
            "main_inequality",
            margin,
            options.main_inequality_tol,
            format!(
                "k_max {:.6} vs required sqrt(pi/A) {:.6}",
                meta.k_max,
                (PI / geom.enclosed_area).sqrt()
            ),
        ));

        // Equality case: a margin at the gate should mean a near-circle.
        if margin.abs() < EQUALITY_MARGIN_GATE {
            let cov = curvature_cov(&geom);
            checks.push(CheckEntry::evaluated(
                "equality_case",
                -cov,
                ROUNDNESS_NEAR_CIRCLE,
                format!(
                    "margin {margin:.2e} is near equality; curvature coefficient of variation {cov:.2e}"
                ),
            ));
        } else {
            checks.push(CheckEntry::not_applicable(
                "equality_case",
                format!("margin {margin:.3} is not near the equality case"),
            ));
        }
    } else {
        checks.push(CheckEntry::error(
            "main_inequality",
            format!("enclosed area {:.6} is not positive", geom.enclosed_area),
        ));
        checks.push(CheckEntry::not_applicable(
            "equality_case",
            "skipped: area not positive".to_string(),
        ));
    }

    // Identity: sum of k ((p - c) . n) w equals the perimeter for any center.
    let kernel = find_star_center(curve, &geom);
    let center = kernel.center.unwrap_or_else(|| curve.centroid());
    let weights = geom.vertex_weights();
    let flux: f64 = (0..curve.len())
        .map(|i| {
            let radial = curve.points()[i] - center;
            geom.curvatures[i] * radial.dot(geom.outer_normals[i]) * weights[i]
        })
        .sum();
    let identity_residual = (flux - geom.total_length).abs() / geom.total_length;
    checks.push(CheckEntry::evaluated(
        "star_identity",
        -identity_residual,
        STAR_IDENTITY_TOL,
        format!(
            "curvature-weighted support flux {flux:.8} vs length {:.8} about ({:.4}, {:.4})",
            geom.total_length, center.x, center.y
        ),
    ));

    // Star bound: with a kernel witness, length <= 2 k_max area.
    if area_ok {
        if kernel.found {
            let margin =
                (2.0 * meta.k_max * geom.enclosed_area - geom.total_length) / geom.total_length;
            checks.push(CheckEntry::evaluated(
                "star_bound",
                margin,
                STAR_BOUND_TOL,
                format!(
                    "kernel witness ({:.4}, {:.4}) with support {:.3e}",
                    center.x, center.y, kernel.min_support
                ),
            ));
        } else {
            checks.push(CheckEntry::not_applicable(
                "star_bound",
                format!(
                    "no kernel point found (best support {:.3e}); bound not claimed",
                    kernel.min_support
                ),
            ));
        }
    } else {
        checks.push(CheckEntry::not_applicable(
            "star_bound",
            "skipped: area not positive".to_string(),
        ));
    }

    // Isoperimetric inequality, absolute form.
    if area_ok {
        let margin = geom.total_length * geom.total_length - 4.0 * PI * geom.enclosed_area;
        checks.push(CheckEntry::evaluated(
            "isoperimetric",
            margin,
            ISOPER_ABS_TOL,
            format!(
                "length^2 - 4 pi area = {margin:.3e} (absolute margin, positive for polygons)"
            ),
        ));
    } else {
        checks.push(CheckEntry::not_applicable(
            "isoperimetric",
            "skipped: area not positive".to_string(),
        ));
    }

    // Inscribed disk: some disk of radius 1/k_max must fit, so the grid lower
    // bound may undershoot by at most its own resolution slack.
    if area_ok && meta.k_max > 0.0 {
        let (lo, hi) = curve.bounding_box();
        let slack = INRADIUS_GRID_SLACK * (hi - lo).norm() / options.grid_resolution as f64;
        match inscribed_disk(curve, options.grid_resolution) {
            Ok(disk) => checks.push(CheckEntry::evaluated(
                "inscribed_disk",
                disk.radius - 1.0 / meta.k_max,
                slack,
                format!(
                    "inradius >= {:.6} at ({:.4}, {:.4}); needs 1/k_max = {:.6} minus grid slack {:.2e}",
                    disk.radius, disk.center.x, disk.center.y, 1.0 / meta.k_max, slack
                ),
            )),
            Err(e) => checks.push(CheckEntry::error(
                "inscribed_disk",
                format!("interior search failed: {e}"),
            )),
        }
    } else {
        checks.push(CheckEntry::error(
            "inscribed_disk",
            format!("k_max {:.6} or area not positive", meta.k_max),
        ));
    }

    // Turning number: the weighted curvature integral of an embedded
    // counterclockwise curve is one full turn.
    let turning = geom.turning_integral();
    checks.push(CheckEntry::evaluated(
        "turning_number",
        -((turning - 2.0 * PI).abs() / (2.0 * PI)),
        TURNING_TOL,
        format!("turning integral {turning:.8} vs 2 pi"),
    ));

    let overall_pass = checks.iter().all(|c| c.pass);
    Ok(VerificationReport { curve_meta: meta, checks, overall_pass })
}

fn hypotheses_check(curve: &ClosedCurve, geom: &CurveGeometry) -> CheckEntry {
    let mut problems = Vec::new();
    if let Some((i, j)) = curve.first_self_intersection() {
        problems.push(format!("edges {i} and {j} intersect"));
    }
    if geom.enclosed_area <= 0.0 {
        problems.push(format!(
            "signed area {:.6} is not positive (orientation must be counterclockwise)",
            geom.enclosed_area
        ));
    }
    let variation = curve.spacing_variation();
    if variation >= SPACING_VARIATION_LIMIT {
        problems.push(format!("spacing variation {variation:.3e} too large"));
    }
    if problems.is_empty() {
        CheckEntry::evaluated(
            "hypotheses",
            SPACING_VARIATION_LIMIT - variation,
            0.0,
            format!(
                "embedded, counterclockwise, {} points, spacing variation {variation:.2e}",
                curve.len()
            ),
        )
    } else {
        CheckEntry {
            name: "hypotheses".to_string(),
            pass: false,
            margin: 0.0,
            tolerance: 0.0,
            details: problems.join("; "),
            status: CheckStatus::Fail,
        }
    }
}

/// Runs every trajectory check against a completed flow.
pub fn verify_trajectory(trajectory: &FlowTrajectory) -> Result<VerificationReport> {
    if trajectory.samples.len() < 2 {
        return Err(Error::TooFewSamples);
    }
    let samples = &trajectory.samples;
    let first = &samples[0];
    let meta = CurveMeta {
        n_points: first.curvatures.len(),
        length: first.length,
        area: first.area,
        k_max: first.k_max,
        k_max_rescaled: first.k_max_rescaled,
        isoperimetric_ratio: first.isoperimetric_ratio,
        convex: first.convex,
        spacing_variation: 0.0,
    };
    let mut checks = Vec::new();

    // Linear area law A(t) = A(0) - 2 pi t.
    let area0 = first.area;
    let worst_area_dev = samples
        .iter()
        .map(|s| ((s.area - (area0 - 2.0 * PI * s.t)) / area0).abs())
        .fold(0.0f64, f64::max);
    checks.push(CheckEntry::evaluated(
        "area_law",
        -worst_area_dev,
        AREA_LAW_REL_TOL,
        format!("max relative deviation from the linear area law: {worst_area_dev:.3e}"),
    ));

    // Length shrinks along the flow.
    let worst_length_step = samples
        .windows(2)
        .map(|p| (p[1].length - p[0].length) / first.length)
        .fold(f64::NEG_INFINITY, f64::max);
    checks.push(CheckEntry::evaluated(
        "length_monotone",
        -worst_length_step,
        LENGTH_MONOTONE_REL_TOL,
        format!("largest relative length increase between samples: {worst_length_step:.3e}"),
    ));

    // Isoperimetric ratio shrinks and never dips below 1.
    let worst_ratio_step = samples
        .windows(2)
        .map(|p| p[1].isoperimetric_ratio - p[0].isoperimetric_ratio)
        .fold(f64::NEG_INFINITY, f64::max);
    checks.push(CheckEntry::evaluated(
        "isoperimetric_monotone",
        -worst_ratio_step,
        ISOPER_FLOW_SLACK,
        format!("largest ratio increase between samples: {worst_ratio_step:.3e}"),
    ));
    let min_ratio = samples
        .iter()
        .map(|s| s.isoperimetric_ratio)
        .fold(f64::INFINITY, f64::min);
    checks.push(CheckEntry::evaluated(
        "isoperimetric_floor",
        min_ratio - 1.0,
        ISOPER_ABS_TOL,
        format!("minimum isoperimetric ratio along the flow: {min_ratio:.9}"),
    ));

    // The rescaled inequality holds at every instant.
    let min_rescaled = samples
        .iter()
        .map(|s| s.k_max_rescaled)
        .fold(f64::INFINITY, f64::min);
    checks.push(CheckEntry::evaluated(
        "main_inequality_flow",
        min_rescaled - 1.0,
        BARRIER_K_TOL,
        format!("minimum rescaled k_max along the flow: {min_rescaled:.6}"),
    ));

    // Barrier: the rescaled maximum never crosses a threshold below 1, and
    // the curvature profile is concave at its argmax.
    match barrier_monitor(trajectory, BARRIER_THRESHOLD) {
        Ok(report) => {
            checks.push(CheckEntry::evaluated(
                "rescaled_curvature_barrier",
                report.min_rescaled_max - report.threshold,
                0.0,
                format!(
                    "minimum rescaled k_max {:.6} vs barrier {:.2}",
                    report.min_rescaled_max, report.threshold
                ),
            ));
            checks.push(CheckEntry::evaluated(
                "argmax_concavity",
                -report.max_argmax_concavity_ratio,
                ARGMAX_CONCAVITY_REL_TOL,
                format!(
                    "largest (d2k/ds2 at argmax) / max|k|: {:.3e}",
                    report.max_argmax_concavity_ratio
                ),
            ));
        }
        Err(e) => {
            checks.push(CheckEntry::error(
                "rescaled_curvature_barrier",
                format!("monitor failed: {e}"),
            ));
            checks.push(CheckEntry::error("argmax_concavity", format!("monitor failed: {e}")));
        }
    }

    // Convexity, once gained, persists.
    let t_end = samples.last().expect("checked non-empty").t;
    match (first.convex, trajectory.convexification_time) {
        (true, Some(t)) if t == first.t => checks.push(CheckEntry::evaluated(
            "convexification",
            t_end - t,
            0.0,
            "initially convex and stayed convex".to_string(),
        )),
        (_, Some(t)) => checks.push(CheckEntry::evaluated(
            "convexification",
            t_end - t,
            0.0,
            format!("became convex at t = {t:.6} and stayed convex until t = {t_end:.6}"),
        )),
        (true, None) => checks.push(CheckEntry {
            name: "convexification".to_string(),
            pass: false,
            margin: 0.0,
            tolerance: 0.0,
            details: "started convex but lost convexity without regaining it".to_string(),
            status: CheckStatus::Fail,
        }),
        (false, None) => checks.push(CheckEntry::not_applicable(
            "convexification",
            "did not convexify before the area floor; no claim at this horizon".to_string(),
        )),
    }

    let overall_pass = checks.iter().all(|c| c.pass);
    Ok(VerificationReport { curve_meta: meta, checks, overall_pass })
}
