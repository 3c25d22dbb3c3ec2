//! Shared oracles for integration tests: quantities computed by routes that
//! are independent of the library's own geometry kernels.

#![allow(dead_code)]

use curveflow_core::ClosedCurve;

/// Adaptive Simpson quadrature to an absolute tolerance.
fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), fm)
    }
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (left, flm) = simpson(f, a, fa, m, fm);
        let (right, frm) = simpson(f, m, fm, b, fb);
        if depth == 0 || (left + right - whole).abs() < 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            recurse(f, a, fa, m, fm, left, flm, 0.5 * tol, depth - 1)
                + recurse(f, m, fm, b, fb, right, frm, 0.5 * tol, depth - 1)
        }
    }
    let (fa, fb) = (f(a), f(b));
    let (whole, fm) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, fm, tol, 40)
}

/// Ellipse perimeter by direct quadrature of the speed.
pub fn ellipse_perimeter(a: f64, b: f64) -> f64 {
    adaptive_simpson(
        &|t: f64| (a * a * t.sin().powi(2) + b * b * t.cos().powi(2)).sqrt(),
        0.0,
        2.0 * std::f64::consts::PI,
        1e-12,
    )
}

/// Closed-form ellipse curvature at parameter t.
pub fn ellipse_curvature(a: f64, b: f64, t: f64) -> f64 {
    a * b / (a * a * t.sin().powi(2) + b * b * t.cos().powi(2)).powf(1.5)
}

/// Recovers the ellipse parameter of a point on an axis-aligned ellipse.
pub fn ellipse_parameter(a: f64, b: f64, x: f64, y: f64) -> f64 {
    (y / b).atan2(x / a)
}

pub fn mean_radius(curve: &ClosedCurve) -> f64 {
    let c = curve.centroid();
    curve.points().iter().map(|p| p.distance(c)).sum::<f64>() / curve.len() as f64
}
