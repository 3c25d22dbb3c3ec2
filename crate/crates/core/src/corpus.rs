//! Deterministic generation of test curves.
//!
//! All randomness flows through ChaCha8 streams seeded from the caller's seed,
//! and all transcendentals in generation go through `libm`, so a given (kind,
//! seed, n) reproduces the same bytes on every platform. Points are placed by
//! inverting the analytic arc length (Gauss-Legendre tables plus Newton), not
//! by interpolating a dense polyline; interpolation would leave position noise
//! that curvature stencils amplify by 1/spacing^2.

use libm::{cos, sin};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::{ClosedCurve, MIN_POINTS};
use crate::error::{Error, Result};
use crate::geometry::CurveGeometry;
use crate::vec2::Vec2;

/// Retry budget for rejection sampling of random planar Fourier curves.
pub const GENERATION_ATTEMPT_BUDGET: u32 = 1000;

/// Random planar curves with sharper bends than this are rejected: they are
/// legal inputs but make poor flow fixtures at default resolutions.
const MAX_GENERATED_CURVATURE: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PresetName {
    /// One concavity, non-convex, star-shaped about the origin.
    Bean,
    /// Horseshoe whose inner wall spans more than half a turn, which forces an
    /// empty star kernel: no point lies on the far side of every inner-wall
    /// support line.
    Kidney,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveKind {
    Circle {
        radius: f64,
    },
    Ellipse {
        semi_major: f64,
        semi_minor: f64,
        #[serde(default)]
        rotation: f64,
    },
    /// r(theta) = base_radius + sum_m cos_coeffs[m-1] cos(m theta)
    ///                        + sum_m sin_coeffs[m-1] sin(m theta).
    /// Star-shaped about the origin whenever the coefficient magnitudes sum
    /// below the base radius.
    RadialFourier {
        base_radius: f64,
        cos_coeffs: Vec<f64>,
        sin_coeffs: Vec<f64>,
    },
    /// Independent truncated Fourier series for x and y around a unit circle,
    /// coefficients drawn from the seed, rejection-sampled to embeddedness.
    PlanarFourier {
        modes: usize,
        amplitude: f64,
    },
    Preset {
        name: PresetName,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSpec {
    #[serde(flatten)]
    pub kind: CurveKind,
    #[serde(default)]
    pub seed: u64,
    pub n_points: usize,
}

/// A corpus slot: the spec that produced the curve, kept for reproducibility.
#[derive(Debug, Clone)]
pub struct GeneratedCurve {
    pub spec: CurveSpec,
    pub curve: ClosedCurve,
}

/// Class weights for `corpus_sweep`. The default mix deliberately leaves exact
/// circles out: their inequality margin sits at the discretization floor, and
/// near-equality behavior is covered by dedicated circle fixtures instead of
/// random slots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorpusMix {
    pub circle: f64,
    pub convex: f64,
    pub star: f64,
    pub general: f64,
}

impl Default for CorpusMix {
    fn default() -> Self {
        CorpusMix { circle: 0.0, convex: 0.2, star: 0.4, general: 0.4 }
    }
}

pub fn generate(spec: &CurveSpec) -> Result<ClosedCurve> {
    if spec.n_points < MIN_POINTS {
        return Err(Error::TooFewPoints { got: spec.n_points, min: MIN_POINTS });
    }
    let n = spec.n_points;
    match &spec.kind {
        CurveKind::Circle { radius } => {
            if !(*radius > 0.0) {
                return Err(Error::InvalidSpec(format!("circle radius {radius} must be positive")));
            }
            let r = *radius;
            let points = (0..n)
                .map(|i| {
                    let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                    Vec2::new(r * cos(t), r * sin(t))
                })
                .collect();
            ClosedCurve::new(points)
        }
        CurveKind::Ellipse { semi_major, semi_minor, rotation } => {
            let (a, b, rot) = (*semi_major, *semi_minor, *rotation);
            if !(a > 0.0 && b > 0.0) {
                return Err(Error::InvalidSpec(format!(
                    "ellipse semi-axes ({a}, {b}) must be positive"
                )));
            }
            let (cr, sr) = (cos(rot), sin(rot));
            let position = |t: f64| {
                let (x, y) = (a * cos(t), b * sin(t));
                Vec2::new(cr * x - sr * y, sr * x + cr * y)
            };
            let speed = |t: f64| {
                let (st, ct) = (sin(t), cos(t));
                (a * a * st * st + b * b * ct * ct).sqrt()
            };
            ClosedCurve::new(sample_uniform_arc(&position, &speed, n))
        }
        CurveKind::RadialFourier { base_radius, cos_coeffs, sin_coeffs } => {
            radial_curve(*base_radius, cos_coeffs, sin_coeffs, n)
        }
        CurveKind::PlanarFourier { modes, amplitude } => {
            planar_fourier_curve(*modes, *amplitude, spec.seed, n)
        }
        CurveKind::Preset { name } => match name {
            PresetName::Bean => radial_curve(1.0, &[0.6], &[], n),
            PresetName::Kidney => kidney_curve(n),
        },
    }
}

fn radial_curve(r0: f64, cos_coeffs: &[f64], sin_coeffs: &[f64], n: usize) -> Result<ClosedCurve> {
    if !(r0 > 0.0) {
        return Err(Error::InvalidSpec(format!("base radius {r0} must be positive")));
    }
    let magnitude: f64 = cos_coeffs.iter().chain(sin_coeffs).map(|c| c.abs()).sum();
    if magnitude >= r0 {
        return Err(Error::InvalidSpec(format!(
            "sum of coefficient magnitudes {magnitude} must stay below the base radius {r0} \
             to keep r(theta) positive"
        )));
    }
    let eval = |t: f64| -> (f64, f64) {
        let mut r = r0;
        let mut dr = 0.0;
        for (idx, &c) in cos_coeffs.iter().enumerate() {
            let m = (idx + 1) as f64;
            r += c * cos(m * t);
            dr -= c * m * sin(m * t);
        }
        for (idx, &c) in sin_coeffs.iter().enumerate() {
            let m = (idx + 1) as f64;
            r += c * sin(m * t);
            dr += c * m * cos(m * t);
        }
        (r, dr)
    };
    let position = |t: f64| {
        let (r, _) = eval(t);
        Vec2::new(r * cos(t), r * sin(t))
    };
    let speed = |t: f64| {
        let (r, dr) = eval(t);
        (r * r + dr * dr).sqrt()
    };
    ClosedCurve::new(sample_uniform_arc(&position, &speed, n))
}

/// Per-mode coefficients [ax, bx, ay, by] for the two planar series.
fn planar_fourier_curve(modes: usize, amplitude: f64, seed: u64, n: usize) -> Result<ClosedCurve> {
    if modes < 2 {
        return Err(Error::InvalidSpec(format!(
            "planar fourier needs at least 2 modes, got {modes}"
        )));
    }
    if !(amplitude > 0.0 && amplitude < 1.0) {
        return Err(Error::InvalidSpec(format!(
            "planar fourier amplitude {amplitude} must lie in (0, 1)"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GENERATION_ATTEMPT_BUDGET {
        let coeffs: Vec<[f64; 4]> = (2..=modes)
            .map(|m| {
                let scale = amplitude / (m * m) as f64;
                [
                    symmetric_unit(&mut rng) * scale,
                    symmetric_unit(&mut rng) * scale,
                    symmetric_unit(&mut rng) * scale,
                    symmetric_unit(&mut rng) * scale,
                ]
            })
            .collect();
        let position = |t: f64| {
            let mut x = cos(t);
            let mut y = sin(t);
            for (idx, c) in coeffs.iter().enumerate() {
                let m = (idx + 2) as f64;
                let (cm, sm) = (cos(m * t), sin(m * t));
                x += c[0] * cm + c[1] * sm;
                y += c[2] * cm + c[3] * sm;
            }
            Vec2::new(x, y)
        };
        let speed = |t: f64| {
            let mut dx = -sin(t);
            let mut dy = cos(t);
            for (idx, c) in coeffs.iter().enumerate() {
                let m = (idx + 2) as f64;
                let (cm, sm) = (cos(m * t), sin(m * t));
                dx += m * (-c[0] * sm + c[1] * cm);
                dy += m * (-c[2] * sm + c[3] * cm);
            }
            (dx * dx + dy * dy).sqrt()
        };
        // The perturbation can momentarily stall the parametrization; such
        // draws are rejected before sampling.
        let regular = (0..256).all(|i| speed(2.0 * std::f64::consts::PI * i as f64 / 256.0) > 0.05);
        if !regular {
            continue;
        }
        let curve = ClosedCurve::new(sample_uniform_arc(&position, &speed, n))?;
        if curve.signed_area() < 0.5 || !curve.is_embedded() {
            continue;
        }
        match CurveGeometry::compute(&curve) {
            Ok(geom) if geom.max_abs_curvature() <= MAX_GENERATED_CURVATURE => return Ok(curve),
            _ => continue,
        }
    }
    Err(Error::GenerationBudgetExhausted { seed, attempts: GENERATION_ATTEMPT_BUDGET })
}

/// Horseshoe built by wrapping an ellipse-shaped profile around a circular
/// arc: angle theta0 * cos(u), radius R + w * sin(u). The angular extent
/// 2 * theta0 exceeds pi, which provably empties the star kernel.
fn kidney_curve(n: usize) -> Result<ClosedCurve> {
    const R: f64 = 1.0;
    const W: f64 = 0.4;
    const THETA0: f64 = 2.2;
    let position = |u: f64| {
        let rho = R + W * sin(u);
        let phi = THETA0 * cos(u);
        Vec2::new(rho * cos(phi), rho * sin(phi))
    };
    let speed = |u: f64| {
        let rho = R + W * sin(u);
        let drho = W * cos(u);
        let dphi = -THETA0 * sin(u);
        (drho * drho + rho * rho * dphi * dphi).sqrt()
    };
    let curve = ClosedCurve::new(sample_uniform_arc(&position, &speed, n))?;
    if curve.signed_area() < 0.0 {
        Ok(curve.reversed())
    } else {
        Ok(curve)
    }
}

/// Deterministic corpus: class counts by largest remainder, slot seeds are
/// `seed + slot`, slots generated independently (and in parallel) then kept in
/// slot order.
pub fn corpus_sweep(
    count: usize,
    seed: u64,
    mix: &CorpusMix,
    n_points: usize,
) -> Result<Vec<GeneratedCurve>> {
    let weights = [mix.circle, mix.convex, mix.star, mix.general];
    if weights.iter().any(|w| *w < 0.0) || weights.iter().sum::<f64>() <= 0.0 {
        return Err(Error::InvalidSpec(
            "corpus mix weights must be non-negative and not all zero".into(),
        ));
    }
    let counts = apportion(count, &weights);
    let mut classes = Vec::with_capacity(count);
    for (class, &c) in counts.iter().enumerate() {
        classes.extend(std::iter::repeat(class).take(c));
    }

    classes
        .into_par_iter()
        .enumerate()
        .map(|(slot, class)| {
            let spec = slot_spec(class, seed + slot as u64, n_points);
            let curve = generate(&spec)?;
            Ok(GeneratedCurve { spec, curve })
        })
        .collect()
}

/// Draws one slot's spec. Class parameters come from stream 1 of the slot's
/// generator so they never collide with the coefficient stream (stream 0)
/// that `generate` itself consumes.
fn slot_spec(class: usize, slot_seed: u64, n_points: usize) -> CurveSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(slot_seed);
    rng.set_stream(1);
    let kind = match class {
        0 => CurveKind::Circle { radius: range(&mut rng, 0.6, 1.8) },
        1 => {
            // Aspect ratio bounded away from 1: random convex slots should not
            // sit on the equality case of the curvature inequality.
            let aspect = range(&mut rng, 1.15, 2.5);
            let scale = range(&mut rng, 0.7, 1.5);
            CurveKind::Ellipse {
                semi_major: scale * aspect.sqrt(),
                semi_minor: scale / aspect.sqrt(),
                rotation: range(&mut rng, 0.0, 2.0 * std::f64::consts::PI),
            }
        }
        2 => star_class_kind(&mut rng),
        _ => CurveKind::PlanarFourier { modes: 5, amplitude: range(&mut rng, 0.12, 0.30) },
    };
    CurveSpec { kind, seed: slot_seed, n_points }
}

/// Radial curves with a dominant mode deep enough to force a concave dent
/// (amplitude above 1.35 / (1 + m^2)) plus small secondary ripples whose
/// second-derivative budget cannot cancel the dent.
fn star_class_kind(rng: &mut ChaCha8Rng) -> CurveKind {
    let m_dom = 2 + (rng.next_u64() % 4) as usize;
    let caps = [0.33, 0.30, 0.26, 0.22];
    let lo = 1.35 / (1.0 + (m_dom * m_dom) as f64);
    let hi = caps[m_dom - 2];
    let amp = range(rng, lo, hi);
    let phase = range(rng, 0.0, 2.0 * std::f64::consts::PI);

    let mut cos_coeffs = vec![0.0; 5];
    let mut sin_coeffs = vec![0.0; 5];
    cos_coeffs[m_dom - 1] = amp * cos(phase);
    sin_coeffs[m_dom - 1] = amp * sin(phase);
    for m in 1..=5usize {
        if m == m_dom {
            continue;
        }
        let ripple = range(rng, 0.0, 0.02) / (m * m) as f64;
        let psi = range(rng, 0.0, 2.0 * std::f64::consts::PI);
        cos_coeffs[m - 1] = ripple * cos(psi);
        sin_coeffs[m - 1] = ripple * sin(psi);
    }
    CurveKind::RadialFourier { base_radius: 1.0, cos_coeffs, sin_coeffs }
}

fn apportion(count: usize, weights: &[f64]) -> Vec<usize> {
    let total: f64 = weights.iter().sum();
    let quotas: Vec<f64> = weights.iter().map(|w| w / total * count as f64).collect();
    let mut counts: Vec<usize> = quotas.iter().map(|q| q.floor() as usize).collect();
    let mut leftover = count - counts.iter().sum::<usize>();
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| {
        let ra = quotas[a] - quotas[a].floor();
        let rb = quotas[b] - quotas[b].floor();
        rb.partial_cmp(&ra).unwrap().then(a.cmp(&b))
    });
    for &i in &order {
        if leftover == 0 {
            break;
        }
        counts[i] += 1;
        leftover -= 1;
    }
    counts
}

fn symmetric_unit(rng: &mut ChaCha8Rng) -> f64 {
    2.0 * unit(rng) - 1.0
}

fn range(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * unit(rng)
}

/// Uniform in [0, 1) from the top 53 bits; independent of any distribution
/// library so the byte stream is pinned by ChaCha8 alone.
fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

const GL5_NODES: [f64; 5] = [
    -0.906179845938664,
    -0.5384693101056831,
    0.0,
    0.5384693101056831,
    0.906179845938664,
];
const GL5_WEIGHTS: [f64; 5] = [
    0.23692688505618908,
    0.47862867049936647,
    0.5688888888888889,
    0.47862867049936647,
    0.23692688505618908,
];

fn gl5(speed: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    GL5_NODES
        .iter()
        .zip(&GL5_WEIGHTS)
        .map(|(&x, &w)| w * speed(mid + half * x))
        .sum::<f64>()
        * half
}

/// Places n points at exactly equal arc length along an analytic closed curve
/// parametrized over [0, 2*pi). Cumulative arc length is tabulated with
/// Gauss-Legendre panels, then each target is refined by Newton iterations on
/// the analytic speed, leaving placement errors near rounding.
fn sample_uniform_arc(
    position: &dyn Fn(f64) -> Vec2,
    speed: &dyn Fn(f64) -> f64,
    n: usize,
) -> Vec<Vec2> {
    let panels = (4 * n).max(2048);
    let h = 2.0 * std::f64::consts::PI / panels as f64;
    let mut cumulative = Vec::with_capacity(panels + 1);
    cumulative.push(0.0);
    let mut acc = 0.0;
    for i in 0..panels {
        acc += gl5(speed, i as f64 * h, (i + 1) as f64 * h);
        cumulative.push(acc);
    }
    let total = acc;

    let mut out = Vec::with_capacity(n);
    let mut panel = 0usize;
    for j in 0..n {
        let target = j as f64 * total / n as f64;
        while panel + 1 < panels && cumulative[panel + 1] <= target {
            panel += 1;
        }
        let a = panel as f64 * h;
        let span = cumulative[panel + 1] - cumulative[panel];
        let mut t = a + h * ((target - cumulative[panel]) / span).clamp(0.0, 1.0);
        for _ in 0..3 {
            let here = cumulative[panel] + gl5(speed, a, t);
            t -= (here - target) / speed(t);
        }
        out.push(position(t));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn spec(kind: CurveKind, seed: u64, n: usize) -> CurveSpec {
        CurveSpec { kind, seed, n_points: n }
    }

    #[test]
    fn circle_points_sit_on_the_radius() {
        let curve = generate(&spec(CurveKind::Circle { radius: 1.5 }, 0, 256)).unwrap();
        for p in curve.points() {
            approx::assert_relative_eq!(p.norm(), 1.5, max_relative = 1e-14);
        }
        assert!(curve.spacing_variation() < 1e-12);
    }

    #[test]
    fn generated_curves_are_uniformly_spaced() {
        // Equal arc increments leave chords of length ds * (1 - k^2 ds^2 / 24),
        // so the chord spread scales with the curvature range and ds^2; at
        // n = 512 that is a few 1e-5 for these shapes, not machine zero.
        let kinds = [
            (CurveKind::Ellipse { semi_major: 2.0, semi_minor: 1.0, rotation: 0.4 }, 5e-4),
            (
                CurveKind::RadialFourier {
                    base_radius: 1.0,
                    cos_coeffs: vec![0.0, 0.0, 0.3],
                    sin_coeffs: vec![],
                },
                5e-4,
            ),
            (CurveKind::PlanarFourier { modes: 5, amplitude: 0.2 }, 5e-4),
            (CurveKind::Preset { name: PresetName::Bean }, 5e-4),
            // The kidney's tips reach curvature near 20, so its chord spread
            // at this resolution is a few 1e-3.
            (CurveKind::Preset { name: PresetName::Kidney }, 5e-3),
        ];
        for (kind, bound) in kinds {
            let curve = generate(&spec(kind.clone(), 11, 512)).unwrap();
            assert!(
                curve.spacing_variation() < bound,
                "{kind:?} spacing variation {}",
                curve.spacing_variation()
            );
        }
    }

    #[test]
    fn chord_spread_shrinks_quadratically_with_resolution() {
        let at = |n: usize| {
            generate(&spec(
                CurveKind::Ellipse { semi_major: 2.0, semi_minor: 1.0, rotation: 0.4 },
                0,
                n,
            ))
            .unwrap()
            .spacing_variation()
        };
        let (coarse, fine) = (at(256), at(512));
        assert!(
            fine < coarse / 3.0,
            "doubling n should cut chord spread about 4x, got {coarse} -> {fine}"
        );
    }

    #[test]
    fn ellipse_area_matches_closed_form() {
        let curve = generate(&spec(
            CurveKind::Ellipse { semi_major: 2.0, semi_minor: 1.0, rotation: 0.0 },
            0,
            1024,
        ))
        .unwrap();
        approx::assert_relative_eq!(curve.signed_area(), 2.0 * PI, max_relative = 1e-5);
    }

    #[test]
    fn rotated_ellipse_preserves_area() {
        let curve = generate(&spec(
            CurveKind::Ellipse { semi_major: 2.0, semi_minor: 1.0, rotation: 1.1 },
            0,
            1024,
        ))
        .unwrap();
        approx::assert_relative_eq!(curve.signed_area(), 2.0 * PI, max_relative = 1e-5);
    }

    #[test]
    fn radial_fourier_is_star_shaped_about_the_origin() {
        let curve = generate(&spec(
            CurveKind::RadialFourier {
                base_radius: 1.0,
                cos_coeffs: vec![0.0, 0.0, 0.3],
                sin_coeffs: vec![],
            },
            0,
            512,
        ))
        .unwrap();
        let geom = CurveGeometry::compute(&curve).unwrap();
        let support = crate::geometry::star_support_min(&curve, &geom, Vec2::ZERO);
        assert!(support > 0.0, "origin support {support}");
        let found = crate::geometry::find_star_center(&curve, &geom);
        assert!(found.found);
        assert!(found.min_support > 0.0);
    }

    #[test]
    fn radial_fourier_rejects_overlarge_coefficients() {
        let err = generate(&spec(
            CurveKind::RadialFourier {
                base_radius: 1.0,
                cos_coeffs: vec![0.7],
                sin_coeffs: vec![0.4],
            },
            0,
            512,
        ))
        .unwrap_err();
        let message = err.to_string();
        assert!(
            message.contains("must stay below the base radius"),
            "unhelpful message: {message}"
        );
    }

    #[test]
    fn planar_fourier_is_deterministic_and_embedded() {
        let s = spec(CurveKind::PlanarFourier { modes: 5, amplitude: 0.25 }, 42, 512);
        let a = generate(&s).unwrap();
        let b = generate(&s).unwrap();
        assert_eq!(a.points(), b.points(), "same seed must give identical bytes");
        assert!(a.is_embedded());
        assert!(a.signed_area() > 0.0);
    }

    #[test]
    fn different_seeds_give_different_planar_curves() {
        let a = generate(&spec(CurveKind::PlanarFourier { modes: 5, amplitude: 0.25 }, 1, 256))
            .unwrap();
        let b = generate(&spec(CurveKind::PlanarFourier { modes: 5, amplitude: 0.25 }, 2, 256))
            .unwrap();
        assert_ne!(a.points(), b.points());
    }

    #[test]
    fn bean_preset_is_non_convex_and_star_shaped() {
        let curve = generate(&spec(CurveKind::Preset { name: PresetName::Bean }, 0, 512)).unwrap();
        let geom = CurveGeometry::compute(&curve).unwrap();
        let k_min = geom.curvatures.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(k_min <= -0.1, "bean dent too shallow: k_min = {k_min}");
        assert!(crate::geometry::star_support_min(&curve, &geom, Vec2::ZERO) >= 0.0);
        assert!(curve.is_embedded());
    }

    #[test]
    fn kidney_preset_is_embedded_non_convex_and_positively_oriented() {
        let curve =
            generate(&spec(CurveKind::Preset { name: PresetName::Kidney }, 0, 512)).unwrap();
        assert!(curve.is_embedded());
        assert!(curve.signed_area() > 0.0);
        let geom = CurveGeometry::compute(&curve).unwrap();
        assert!(!geom.is_convex(1e-6));
    }

    #[test]
    fn sweep_is_deterministic_and_respects_class_counts() {
        let mix = CorpusMix::default();
        let a = corpus_sweep(20, 7, &mix, 128).unwrap();
        let b = corpus_sweep(20, 7, &mix, 128).unwrap();
        assert_eq!(a.len(), 20);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.spec, y.spec);
            assert_eq!(x.curve.points(), y.curve.points());
        }
        let ellipses = a
            .iter()
            .filter(|g| matches!(g.spec.kind, CurveKind::Ellipse { .. }))
            .count();
        let radial = a
            .iter()
            .filter(|g| matches!(g.spec.kind, CurveKind::RadialFourier { .. }))
            .count();
        let planar = a
            .iter()
            .filter(|g| matches!(g.spec.kind, CurveKind::PlanarFourier { .. }))
            .count();
        assert_eq!((ellipses, radial, planar), (4, 8, 8));
    }

    #[test]
    fn sweep_star_class_curves_are_mostly_non_convex() {
        let sweep = corpus_sweep(30, 7, &CorpusMix::default(), 256).unwrap();
        let non_convex = sweep
            .iter()
            .filter(|g| {
                let geom = CurveGeometry::compute(&g.curve).unwrap();
                !geom.is_convex(1e-6)
            })
            .count();
        assert!(non_convex >= 9, "only {non_convex} of 30 are non-convex");
    }

    #[test]
    fn spec_json_round_trip() {
        let s = spec(
            CurveKind::RadialFourier {
                base_radius: 1.0,
                cos_coeffs: vec![0.1, 0.0, 0.2],
                sin_coeffs: vec![0.05],
            },
            3,
            256,
        );
        let text = serde_json::to_string(&s).unwrap();
        let back: CurveSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }
}
