use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vec2::Vec2;

/// Fewer points cannot support the three-point curvature stencil plus a
/// meaningful interior.
pub const MIN_POINTS: usize = 8;

/// Edges shorter than this fraction of the curve diameter count as coincident
/// points: they would dominate curvature estimates with pure noise.
const COINCIDENT_REL: f64 = 1e-12;

/// Curves whose total length falls below this cannot be resampled.
const DEGENERATE_LENGTH: f64 = 1e-12;

/// A closed polyline: the last point connects back to the first implicitly.
/// Positive (counterclockwise) orientation is the working convention; loading
/// from JSON re-reverses clockwise input and reports that it did so.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedCurve {
    points: Vec<Vec2>,
}

impl ClosedCurve {
    /// Validates and wraps a point list. Degenerate inputs are rejected, never
    /// repaired.
    pub fn new(points: Vec<Vec2>) -> Result<Self> {
        let n = points.len();
        if n < MIN_POINTS {
            return Err(Error::TooFewPoints { got: n, min: MIN_POINTS });
        }
        for (i, p) in points.iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::NonFiniteCoordinate(i));
            }
        }
        let (lo, hi) = bounding_box_of(&points);
        let diameter = (hi - lo).norm().max(f64::MIN_POSITIVE);
        let tol = COINCIDENT_REL * diameter;
        for i in 0..n {
            let j = (i + 1) % n;
            if points[i].distance(points[j]) <= tol {
                return Err(Error::CoincidentPoints(i, j));
            }
        }
        Ok(ClosedCurve { points })
    }

    pub fn points(&self) -> &[Vec2] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> Vec2 {
        self.points[i % self.points.len()]
    }

    /// Edge i runs from point i to point i+1 (wrapping).
    pub fn edge_lengths(&self) -> Vec<f64> {
        let n = self.points.len();
        (0..n)
            .map(|i| self.points[i].distance(self.points[(i + 1) % n]))
            .collect()
    }

    /// Polyline length including the closing edge.
    pub fn total_length(&self) -> f64 {
        self.edge_lengths().iter().sum()
    }

    /// Shoelace area; positive for counterclockwise orientation.
    pub fn signed_area(&self) -> f64 {
        let n = self.points.len();
        let mut sum = 0.0;
        for i in 0..n {
            sum += self.points[i].cross(self.points[(i + 1) % n]);
        }
        0.5 * sum
    }

    /// Centroid of the enclosed region (not the vertex average).
    pub fn centroid(&self) -> Vec2 {
        let n = self.points.len();
        let mut cx = 0.0;
        let mut cy = 0.0;
        let mut area2 = 0.0;
        for i in 0..n {
            let p = self.points[i];
            let q = self.points[(i + 1) % n];
            let w = p.cross(q);
            cx += (p.x + q.x) * w;
            cy += (p.y + q.y) * w;
            area2 += w;
        }
        Vec2::new(cx / (3.0 * area2), cy / (3.0 * area2))
    }

    pub fn bounding_box(&self) -> (Vec2, Vec2) {
        bounding_box_of(&self.points)
    }

    /// Largest relative deviation of any edge length from the mean.
    pub fn spacing_variation(&self) -> f64 {
        let edges = self.edge_lengths();
        let mean = edges.iter().sum::<f64>() / edges.len() as f64;
        edges
            .iter()
            .map(|e| (e - mean).abs() / mean)
            .fold(0.0, f64::max)
    }

    /// Places `n` points at equal arc-length spacing along this polyline,
    /// linearly interpolating within edges. The walk covers the full perimeter,
    /// so consecutive outputs are exactly `total_length / n` apart as measured
    /// along the input.
    pub fn resample_uniform(&self, n: usize) -> Result<ClosedCurve> {
        if n < MIN_POINTS {
            return Err(Error::TooFewPoints { got: n, min: MIN_POINTS });
        }
        let count = self.points.len();
        let mut cumulative = Vec::with_capacity(count + 1);
        cumulative.push(0.0);
        let mut acc = 0.0;
        for i in 0..count {
            acc += self.points[i].distance(self.points[(i + 1) % count]);
            cumulative.push(acc);
        }
        let total = acc;
        if total <= DEGENERATE_LENGTH {
            return Err(Error::DegenerateLength(total));
        }

        let step = total / n as f64;
        let mut out = Vec::with_capacity(n);
        let mut edge = 0usize;
        for j in 0..n {
            let target = j as f64 * step;
            while edge + 1 < count && cumulative[edge + 1] <= target {
                edge += 1;
            }
            let a = self.points[edge];
            let b = self.points[(edge + 1) % count];
            let span = cumulative[edge + 1] - cumulative[edge];
            let frac = ((target - cumulative[edge]) / span).clamp(0.0, 1.0);
            out.push(a + (b - a) * frac);
        }
        ClosedCurve::new(out)
    }

    /// Uniform scaling about the area centroid so the enclosed area becomes
    /// `target`. Requires positive current area.
    pub fn normalize_area(&self, target: f64) -> Result<ClosedCurve> {
        if !(target > 0.0) {
            return Err(Error::NonPositiveArea(target));
        }
        let area = self.signed_area();
        if area <= 0.0 {
            return Err(Error::NonPositiveArea(area));
        }
        let factor = (target / area).sqrt();
        Ok(self.scaled_about(self.centroid(), factor))
    }

    pub fn scaled_about(&self, center: Vec2, factor: f64) -> ClosedCurve {
        let points = self
            .points
            .iter()
            .map(|&p| center + (p - center) * factor)
            .collect();
        ClosedCurve { points }
    }

    pub fn translated(&self, offset: Vec2) -> ClosedCurve {
        ClosedCurve {
            points: self.points.iter().map(|&p| p + offset).collect(),
        }
    }

    /// Same point set, opposite orientation; the first point stays first.
    pub fn reversed(&self) -> ClosedCurve {
        let mut points = self.points.clone();
        points[1..].reverse();
        ClosedCurve { points }
    }

    /// True when no two non-adjacent edges intersect and adjacent edges share
    /// only their common vertex.
    pub fn is_embedded(&self) -> bool {
        self.first_self_intersection().is_none()
    }

    /// All-pairs segment test. Returns the first intersecting edge pair, if any.
    pub fn first_self_intersection(&self) -> Option<(usize, usize)> {
        let pts = &self.points;
        let n = pts.len();

        // Adjacent edges may only fold back along themselves.
        for i in 0..n {
            let a = pts[i];
            let b = pts[(i + 1) % n];
            let c = pts[(i + 2) % n];
            let e1 = b - a;
            let e2 = c - b;
            if e1.cross(e2) == 0.0 && e1.dot(e2) < 0.0 {
                return Some((i, (i + 1) % n));
            }
        }

        let boxes: Vec<(f64, f64, f64, f64)> = (0..n)
            .map(|i| {
                let a = pts[i];
                let b = pts[(i + 1) % n];
                (a.x.min(b.x), a.x.max(b.x), a.y.min(b.y), a.y.max(b.y))
            })
            .collect();

        for i in 0..n {
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue; // closing edge is adjacent to edge 0
                }
                let (ix0, ix1, iy0, iy1) = boxes[i];
                let (jx0, jx1, jy0, jy1) = boxes[j];
                if ix1 < jx0 || jx1 < ix0 || iy1 < jy0 || jy1 < iy0 {
                    continue;
                }
                if segments_intersect(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n]) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

fn bounding_box_of(points: &[Vec2]) -> (Vec2, Vec2) {
    let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (lo, hi)
}

fn orient(a: Vec2, b: Vec2, c: Vec2) -> f64 {
    (b - a).cross(c - a)
}

fn on_segment(a: Vec2, b: Vec2, p: Vec2) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Closed-segment intersection: touching endpoints count.
fn segments_intersect(p1: Vec2, p2: Vec2, q1: Vec2, q2: Vec2) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);

    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(q1, q2, p1))
        || (d2 == 0.0 && on_segment(q1, q2, p2))
        || (d3 == 0.0 && on_segment(p1, p2, q1))
        || (d4 == 0.0 && on_segment(p1, p2, q2))
}

/// On-disk form: `{"points": [[x, y], ...]}`, implicitly closed.
#[derive(Debug, Serialize, Deserialize)]
struct CurveFile {
    points: Vec<[f64; 2]>,
}

/// Result of loading a curve file. `reversed` is set when the input was
/// clockwise and had to be re-reversed to the working orientation.
#[derive(Debug)]
pub struct LoadedCurve {
    pub curve: ClosedCurve,
    pub reversed: bool,
}

pub fn curve_from_json(text: &str) -> Result<LoadedCurve> {
    let file: CurveFile = serde_json::from_str(text)?;
    let points = file.points.iter().map(|p| Vec2::new(p[0], p[1])).collect();
    let curve = ClosedCurve::new(points)?;
    if curve.signed_area() < 0.0 {
        Ok(LoadedCurve { curve: curve.reversed(), reversed: true })
    } else {
        Ok(LoadedCurve { curve, reversed: false })
    }
}

pub fn curve_to_json(curve: &ClosedCurve) -> String {
    let file = CurveFile {
        points: curve.points().iter().map(|p| [p.x, p.y]).collect(),
    };
    serde_json::to_string_pretty(&file).expect("curve serialization cannot fail")
}

pub fn read_curve(path: &std::path::Path) -> Result<LoadedCurve> {
    curve_from_json(&std::fs::read_to_string(path)?)
}

pub fn write_curve(path: &std::path::Path, curve: &ClosedCurve) -> Result<()> {
    std::fs::write(path, curve_to_json(curve))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn regular_polygon(n: usize, radius: f64) -> ClosedCurve {
        let points = (0..n)
            .map(|i| {
                let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                Vec2::new(radius * t.cos(), radius * t.sin())
            })
            .collect();
        ClosedCurve::new(points).unwrap()
    }

    fn figure_eight(n: usize) -> ClosedCurve {
        let points = (0..n)
            .map(|i| {
                let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64 + 0.1;
                Vec2::new(t.cos(), t.sin() * t.cos())
            })
            .collect();
        ClosedCurve::new(points).unwrap()
    }

    #[test]
    fn rejects_too_few_points() {
        let pts = (0..7)
            .map(|i| Vec2::new(i as f64, (i * i) as f64))
            .collect();
        assert!(matches!(
            ClosedCurve::new(pts),
            Err(Error::TooFewPoints { got: 7, .. })
        ));
    }

    #[test]
    fn rejects_coincident_consecutive_points() {
        let mut pts: Vec<Vec2> = (0..12)
            .map(|i| {
                let t = 2.0 * std::f64::consts::PI * i as f64 / 12.0;
                Vec2::new(t.cos(), t.sin())
            })
            .collect();
        pts[5] = pts[4];
        assert!(matches!(
            ClosedCurve::new(pts),
            Err(Error::CoincidentPoints(4, 5))
        ));
    }

    #[test]
    fn rejects_non_finite_coordinates() {
        let mut pts: Vec<Vec2> = (0..12)
            .map(|i| Vec2::new(i as f64, (i % 3) as f64))
            .collect();
        pts[3].y = f64::NAN;
        assert!(matches!(
            ClosedCurve::new(pts),
            Err(Error::NonFiniteCoordinate(3))
        ));
    }

    #[test]
    fn shoelace_area_of_regular_polygon_matches_closed_form() {
        for &n in &[8usize, 64, 512] {
            let poly = regular_polygon(n, 1.0);
            let expected = 0.5 * n as f64 * (2.0 * std::f64::consts::PI / n as f64).sin();
            approx::assert_relative_eq!(poly.signed_area(), expected, max_relative = 1e-13);
        }
    }

    #[test]
    fn reversed_curve_flips_area_sign() {
        let poly = regular_polygon(32, 2.0);
        approx::assert_relative_eq!(
            poly.reversed().signed_area(),
            -poly.signed_area(),
            max_relative = 1e-13
        );
        assert_eq!(poly.reversed().points()[0], poly.points()[0]);
    }

    #[test]
    fn resample_same_count_on_uniform_polygon_is_identity() {
        let poly = regular_polygon(256, 1.0);
        let again = poly.resample_uniform(256).unwrap();
        for (p, q) in poly.points().iter().zip(again.points()) {
            assert!(p.distance(*q) < 1e-12, "vertex moved: {p:?} vs {q:?}");
        }
    }

    #[test]
    fn resample_16_gon_to_32_hits_vertices_and_edge_midpoints() {
        let poly = regular_polygon(16, 1.0);
        let fine = poly.resample_uniform(32).unwrap();
        assert_eq!(fine.len(), 32);
        let inner = (std::f64::consts::PI / 16.0).cos();
        for p in fine.points() {
            let d = p.norm();
            assert!(
                d >= inner - 1e-12 && d <= 1.0 + 1e-12,
                "resampled point at distance {d} outside [{inner}, 1]"
            );
        }
    }

    #[test]
    fn resample_spacing_measured_along_input_is_uniform() {
        // Walk the input polyline to recover each output point's arc position;
        // spacings must equal total/n to within full double precision.
        let poly = regular_polygon(100, 1.3);
        let n_out = 64;
        let out = poly.resample_uniform(n_out).unwrap();
        let total = poly.total_length();

        let pts = poly.points();
        let mut cum = vec![0.0];
        for i in 0..pts.len() {
            cum.push(cum[i] + pts[i].distance(pts[(i + 1) % pts.len()]));
        }
        let arc_position = |q: Vec2| -> f64 {
            let mut best = f64::INFINITY;
            let mut pos = 0.0;
            for i in 0..pts.len() {
                let a = pts[i];
                let b = pts[(i + 1) % pts.len()];
                let e = b - a;
                let t = ((q - a).dot(e) / e.norm_squared()).clamp(0.0, 1.0);
                let d = (a + e * t).distance(q);
                if d < best {
                    best = d;
                    pos = cum[i] + e.norm() * t;
                }
            }
            assert!(best < 1e-9, "resampled point not on input polyline");
            pos
        };

        let step = total / n_out as f64;
        for (j, q) in out.points().iter().enumerate() {
            let s = arc_position(*q);
            assert!(
                (s - j as f64 * step).abs() <= 1e-12 * total,
                "point {j}: arc position {s} vs target {}",
                j as f64 * step
            );
        }
    }

    #[test]
    fn resample_rejects_degenerate_curve() {
        let pts: Vec<Vec2> = (0..16)
            .map(|i| {
                let t = 2.0 * std::f64::consts::PI * i as f64 / 16.0;
                Vec2::new(1e-13 * t.cos(), 1e-13 * t.sin())
            })
            .collect();
        let tiny = ClosedCurve::new(pts).unwrap();
        assert!(matches!(
            tiny.resample_uniform(16),
            Err(Error::DegenerateLength(_))
        ));
    }

    #[test]
    fn circle_is_embedded_figure_eight_is_not() {
        assert!(regular_polygon(64, 1.0).is_embedded());
        assert!(!figure_eight(64).is_embedded());
    }

    #[test]
    fn normalize_area_hits_target_and_is_stable_at_fixed_point() {
        let poly = regular_polygon(128, 3.0);
        let normalized = poly.normalize_area(std::f64::consts::PI).unwrap();
        approx::assert_relative_eq!(
            normalized.signed_area(),
            std::f64::consts::PI,
            max_relative = 1e-12
        );
        let again = normalized.normalize_area(std::f64::consts::PI).unwrap();
        for (p, q) in normalized.points().iter().zip(again.points()) {
            assert!(p.distance(*q) <= 1e-12, "fixed point drifted");
        }
    }

    #[test]
    fn normalize_area_rejects_clockwise_curves() {
        let cw = regular_polygon(64, 1.0).reversed();
        assert!(matches!(
            cw.normalize_area(1.0),
            Err(Error::NonPositiveArea(_))
        ));
    }

    #[test]
    fn json_round_trip_preserves_points() {
        let poly = regular_polygon(32, 1.5);
        let text = curve_to_json(&poly);
        let loaded = curve_from_json(&text).unwrap();
        assert!(!loaded.reversed);
        assert_eq!(loaded.curve.points(), poly.points());
    }

    #[test]
    fn loading_clockwise_input_reverses_and_flags() {
        let cw = regular_polygon(32, 1.0).reversed();
        let loaded = curve_from_json(&curve_to_json(&cw)).unwrap();
        assert!(loaded.reversed);
        assert!(loaded.curve.signed_area() > 0.0);
    }

    #[test]
    fn centroid_of_offset_polygon_matches_center() {
        let poly = regular_polygon(64, 1.0).translated(Vec2::new(3.0, -2.0));
        let c = poly.centroid();
        assert!(c.distance(Vec2::new(3.0, -2.0)) < 1e-12);
    }
}
