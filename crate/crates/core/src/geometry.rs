use crate::curve::ClosedCurve;
use crate::error::{Error, Result};
use crate::vec2::Vec2;

/// Geometry quantities assume near-uniform spacing; beyond this relative
/// deviation the three-point stencils lose their accuracy and we refuse.
pub const SPACING_VARIATION_LIMIT: f64 = 0.01;

/// Tangents and normals are normalized to unit length within this bound.
pub const UNIT_TOLERANCE: f64 = 1e-12;

/// Per-vertex differential data for a uniformly resampled closed curve.
///
/// Orientation conventions, fixed once here and relied on everywhere else:
/// tangents follow increasing index, outer normals are tangents rotated by
/// -90 degrees, and curvature is positive where the curve bends away from the
/// outer normal (so a counterclockwise circle has curvature +1/r everywhere).
#[derive(Debug, Clone)]
pub struct CurveGeometry {
    /// Arc position of each vertex; arc_positions[0] == 0.
    pub arc_positions: Vec<f64>,
    /// Polyline length including the closing edge.
    pub total_length: f64,
    /// Unit tangents from the centered difference of neighboring vertices.
    pub tangents: Vec<Vec2>,
    /// Unit outer normals, tangent rotated by -90 degrees.
    pub outer_normals: Vec<Vec2>,
    /// Signed curvature from the circumradius of each vertex triple.
    pub curvatures: Vec<f64>,
    /// Shoelace area; positive for counterclockwise input.
    pub enclosed_area: f64,
}

impl CurveGeometry {
    /// Computes tangents, outer normals, signed curvature, arc positions and
    /// area. Rejects curves whose spacing deviates from uniform by more than
    /// `SPACING_VARIATION_LIMIT`.
    pub fn compute(curve: &ClosedCurve) -> Result<Self> {
        let variation = curve.spacing_variation();
        if variation > SPACING_VARIATION_LIMIT {
            return Err(Error::NonUniformSpacing {
                variation,
                limit: SPACING_VARIATION_LIMIT,
            });
        }

        let pts = curve.points();
        let n = pts.len();
        let mut arc_positions = Vec::with_capacity(n);
        let mut acc = 0.0;
        for i in 0..n {
            arc_positions.push(acc);
            acc += pts[i].distance(pts[(i + 1) % n]);
        }
        let total_length = acc;

        let mut tangents = Vec::with_capacity(n);
        let mut outer_normals = Vec::with_capacity(n);
        let mut curvatures = Vec::with_capacity(n);
        for i in 0..n {
            let prev = pts[(i + n - 1) % n];
            let here = pts[i];
            let next = pts[(i + 1) % n];
            let t = (next - prev).normalized();
            tangents.push(t);
            outer_normals.push(t.rotated_cw());
            curvatures.push(menger_curvature(prev, here, next));
        }

        Ok(CurveGeometry {
            arc_positions,
            total_length,
            tangents,
            outer_normals,
            curvatures,
            enclosed_area: curve.signed_area(),
        })
    }

    pub fn len(&self) -> usize {
        self.curvatures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curvatures.is_empty()
    }

    /// Mean arc spacing between vertices.
    pub fn spacing(&self) -> f64 {
        self.total_length / self.len() as f64
    }

    /// Quadrature weight per vertex: half the sum of the adjacent edges.
    pub fn vertex_weights(&self) -> Vec<f64> {
        let n = self.len();
        let mut weights = Vec::with_capacity(n);
        for i in 0..n {
            let prev = self.arc_positions[i]
                - if i == 0 { self.arc_positions[n - 1] - self.total_length } else { self.arc_positions[i - 1] };
            let next = if i + 1 == n {
                self.total_length - self.arc_positions[i]
            } else {
                self.arc_positions[i + 1] - self.arc_positions[i]
            };
            weights.push(0.5 * (prev + next));
        }
        weights
    }

    /// Largest curvature and its vertex index; ties break to the lowest index.
    pub fn max_curvature(&self) -> (f64, usize) {
        argmax(&self.curvatures)
    }

    pub fn max_abs_curvature(&self) -> f64 {
        self.curvatures.iter().fold(0.0, |m, k| m.max(k.abs()))
    }

    /// Discrete total turning, the integral of curvature over arc length. Close
    /// to 2*pi for positively oriented embedded curves.
    pub fn turning_integral(&self) -> f64 {
        self.curvatures
            .iter()
            .zip(self.vertex_weights())
            .map(|(k, w)| k * w)
            .sum()
    }

    /// Every vertex curvature at least -tol.
    pub fn is_convex(&self, tol: f64) -> bool {
        self.curvatures.iter().all(|&k| k >= -tol)
    }

    /// Periodic centered second difference of the curvature field.
    pub fn curvature_second_derivative(&self) -> Vec<f64> {
        second_arc_derivative(&self.curvatures, self.spacing())
    }
}

/// Largest value and its index, ties to the lowest index.
pub(crate) fn argmax(values: &[f64]) -> (f64, usize) {
    let mut best = f64::NEG_INFINITY;
    let mut at = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > best {
            best = v;
            at = i;
        }
    }
    (best, at)
}

/// Signed curvature of the circle through three consecutive points: inverse
/// circumradius, signed by the turn direction. Collinear triples give zero.
pub fn menger_curvature(a: Vec2, b: Vec2, c: Vec2) -> f64 {
    let e1 = b - a;
    let e2 = c - b;
    let chord = c - a;
    let cross = e1.cross(e2);
    let denom = e1.norm() * e2.norm() * chord.norm();
    if denom == 0.0 {
        return 0.0;
    }
    2.0 * cross / denom
}

/// Periodic centered second difference with uniform spacing.
pub fn second_arc_derivative(values: &[f64], spacing: f64) -> Vec<f64> {
    let n = values.len();
    let inv = 1.0 / (spacing * spacing);
    (0..n)
        .map(|i| {
            let prev = values[(i + n - 1) % n];
            let next = values[(i + 1) % n];
            (next - 2.0 * values[i] + prev) * inv
        })
        .collect()
}

/// Even-odd ray crossing test against the closed polyline.
pub fn contains_point(curve: &ClosedCurve, p: Vec2) -> bool {
    let pts = curve.points();
    let n = pts.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let a = pts[i];
        let b = pts[j];
        if (a.y > p.y) != (b.y > p.y) {
            let x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x_cross {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

/// Smallest support of the curve as seen from `center`: min over vertices of
/// (vertex - center) . outer_normal. Non-negative exactly when every vertex
/// half-plane contains the center, the discrete star-shapedness certificate.
pub fn star_support_min(curve: &ClosedCurve, geometry: &CurveGeometry, center: Vec2) -> f64 {
    curve
        .points()
        .iter()
        .zip(&geometry.outer_normals)
        .map(|(&p, &n)| (p - center).dot(n))
        .fold(f64::INFINITY, f64::min)
}

/// Outcome of the star-center search. `min_support` is the support at the
/// returned center when found, otherwise the best support seen over all
/// candidates (negative, and a measure of how far from star-shaped the search
/// got).
#[derive(Debug, Clone)]
pub struct StarKernelResult {
    pub found: bool,
    pub center: Option<Vec2>,
    pub min_support: f64,
}

/// Grid refinement levels for the star-center search. This is a sampling
/// heuristic: a miss does not prove the kernel empty, so callers treat
/// `found == false` as "no witness", never as a refutation.
const STAR_GRID_LEVELS: [usize; 4] = [8, 16, 32, 64];

/// Searches for a point from which the curve is star-shaped: first the
/// centroid, then coarse-to-fine grids over the bounding box, keeping the
/// first interior point whose support is non-negative.
pub fn find_star_center(curve: &ClosedCurve, geometry: &CurveGeometry) -> StarKernelResult {
    let mut best = f64::NEG_INFINITY;

    let centroid = curve.centroid();
    if contains_point(curve, centroid) {
        let support = star_support_min(curve, geometry, centroid);
        if support >= 0.0 {
            return StarKernelResult { found: true, center: Some(centroid), min_support: support };
        }
        best = best.max(support);
    }

    let (lo, hi) = curve.bounding_box();
    let extent = hi - lo;
    for level in STAR_GRID_LEVELS {
        for iy in 0..level {
            let y = lo.y + (iy as f64 + 0.5) / level as f64 * extent.y;
            for ix in 0..level {
                let x = lo.x + (ix as f64 + 0.5) / level as f64 * extent.x;
                let candidate = Vec2::new(x, y);
                if !contains_point(curve, candidate) {
                    continue;
                }
                let support = star_support_min(curve, geometry, candidate);
                if support >= 0.0 {
                    return StarKernelResult {
                        found: true,
                        center: Some(candidate),
                        min_support: support,
                    };
                }
                best = best.max(support);
            }
        }
    }

    StarKernelResult { found: false, center: None, min_support: best }
}

/// Residual of the discrete divergence identity: the boundary integral of
/// position dot outer normal, taken edgewise at midpoints, equals twice the
/// enclosed area exactly (an algebraic identity of the shoelace form), so the
/// residual only reflects rounding.
pub fn divergence_identity_residual(curve: &ClosedCurve) -> f64 {
    let pts = curve.points();
    let n = pts.len();
    let mut boundary = 0.0;
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        let edge = b - a;
        let len = edge.norm();
        if len == 0.0 {
            continue;
        }
        let outward = edge.rotated_cw() / len;
        let mid = (a + b) * 0.5;
        boundary += mid.dot(outward) * len;
    }
    let area2 = 2.0 * curve.signed_area();
    (boundary - area2).abs() / area2.abs().max(f64::MIN_POSITIVE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn regular_polygon(n: usize, radius: f64) -> ClosedCurve {
        let points = (0..n)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / n as f64;
                Vec2::new(radius * t.cos(), radius * t.sin())
            })
            .collect();
        ClosedCurve::new(points).unwrap()
    }

    #[test]
    fn menger_on_circle_points_is_exact() {
        // Three points on a circle of radius r always reconstruct 1/r.
        for &r in &[0.5, 1.0, 7.0] {
            let a = Vec2::new(r * 0.1f64.cos(), r * 0.1f64.sin());
            let b = Vec2::new(r * 0.7f64.cos(), r * 0.7f64.sin());
            let c = Vec2::new(r * 1.1f64.cos(), r * 1.1f64.sin());
            approx::assert_relative_eq!(menger_curvature(a, b, c), 1.0 / r, max_relative = 1e-13);
        }
    }

    #[test]
    fn menger_sign_flips_with_orientation() {
        let a = Vec2::new(1.0, 0.0);
        let b = Vec2::new(0.0, 1.0);
        let c = Vec2::new(-1.0, 0.0);
        assert!(menger_curvature(a, b, c) > 0.0);
        assert!(menger_curvature(c, b, a) < 0.0);
    }

    #[test]
    fn menger_of_collinear_points_is_zero() {
        let k = menger_curvature(
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(2.5, 2.5),
        );
        assert_eq!(k, 0.0);
    }

    #[test]
    fn geometry_of_unit_polygon_matches_circle() {
        let curve = regular_polygon(512, 1.0);
        let geom = CurveGeometry::compute(&curve).unwrap();
        for &k in &geom.curvatures {
            // Exact in exact arithmetic; a few ulps survive the cos/sin setup.
            approx::assert_relative_eq!(k, 1.0, max_relative = 1e-10);
        }
        for (p, n) in curve.points().iter().zip(&geom.outer_normals) {
            // Outer normal of a circle about the origin is the radial direction.
            assert!(p.normalized().distance(*n) < 1e-10);
        }
    }

    #[test]
    fn tangents_and_normals_are_unit_and_orthogonal() {
        let curve = regular_polygon(128, 2.0).translated(Vec2::new(0.3, -4.0));
        let geom = CurveGeometry::compute(&curve).unwrap();
        for (t, n) in geom.tangents.iter().zip(&geom.outer_normals) {
            assert!((t.norm() - 1.0).abs() < UNIT_TOLERANCE);
            assert!((n.norm() - 1.0).abs() < UNIT_TOLERANCE);
            assert!(t.dot(*n).abs() < UNIT_TOLERANCE);
            assert_eq!(*n, t.rotated_cw());
        }
    }

    #[test]
    fn rejects_non_uniform_spacing() {
        let mut points: Vec<Vec2> = (0..64)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / 64.0;
                Vec2::new(t.cos(), t.sin())
            })
            .collect();
        // Push one vertex along the curve to stretch an edge by several percent.
        let t = 2.0 * PI * 20.25 / 64.0;
        points[20] = Vec2::new(t.cos(), t.sin());
        let curve = ClosedCurve::new(points).unwrap();
        assert!(matches!(
            CurveGeometry::compute(&curve),
            Err(Error::NonUniformSpacing { .. })
        ));
    }

    #[test]
    fn turning_integral_is_two_pi_for_ccw_circle_and_flips_sign() {
        let curve = regular_polygon(512, 1.0);
        let geom = CurveGeometry::compute(&curve).unwrap();
        approx::assert_abs_diff_eq!(geom.turning_integral(), 2.0 * PI, epsilon = 1e-4);

        let geom_cw = CurveGeometry::compute(&curve.reversed()).unwrap();
        approx::assert_abs_diff_eq!(geom_cw.turning_integral(), -2.0 * PI, epsilon = 1e-4);
    }

    #[test]
    fn convexity_of_circle_holds_at_zero_tolerance() {
        let geom = CurveGeometry::compute(&regular_polygon(256, 1.0)).unwrap();
        assert!(geom.is_convex(0.0));
    }

    #[test]
    fn argmax_breaks_ties_toward_lowest_index() {
        let (v, i) = argmax(&[1.0, 3.0, 3.0, 2.0]);
        assert_eq!(v, 3.0);
        assert_eq!(i, 1);
    }

    #[test]
    fn second_derivative_of_constant_field_is_zero() {
        let d2 = second_arc_derivative(&[2.0; 32], 0.1);
        assert!(d2.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn second_derivative_matches_quadratic_on_wrapped_window() {
        // For values i^2 away from the wrap, the centered difference is exactly 2.
        let values: Vec<f64> = (0..16).map(|i| (i as f64) * (i as f64)).collect();
        let d2 = second_arc_derivative(&values, 1.0);
        for v in &d2[1..15] {
            approx::assert_abs_diff_eq!(*v, 2.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn contains_point_basic() {
        let curve = regular_polygon(64, 1.0);
        assert!(contains_point(&curve, Vec2::ZERO));
        assert!(contains_point(&curve, Vec2::new(0.6, 0.3)));
        assert!(!contains_point(&curve, Vec2::new(1.2, 0.0)));
    }

    #[test]
    fn star_center_of_circle_is_found_immediately() {
        let curve = regular_polygon(128, 1.0);
        let geom = CurveGeometry::compute(&curve).unwrap();
        let res = find_star_center(&curve, &geom);
        assert!(res.found);
        assert!(res.min_support > 0.9, "support {}", res.min_support);
        assert!(res.center.unwrap().norm() < 1e-9);
    }

    #[test]
    fn divergence_identity_is_exact_to_rounding() {
        let curve = regular_polygon(512, 1.0).translated(Vec2::new(5.0, -1.0));
        assert!(divergence_identity_residual(&curve) < 1e-12);
    }
}
