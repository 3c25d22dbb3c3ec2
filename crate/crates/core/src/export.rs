//! Trajectory CSV and SVG frame output.
//!
//! The CSV column set is part of the tool's external contract; floats are
//! printed with the shortest round-tripping representation so files diff
//! cleanly across runs.

use crate::curve::ClosedCurve;
use crate::error::Result;
use crate::flow::FlowTrajectory;
use crate::vec2::Vec2;
use std::fmt::Write as _;
use std::path::Path;

pub const TRAJECTORY_CSV_HEADER: &str = "t,area,length,k_max,K_max,isoper_ratio,convex";

/// Fraction of the bounding box diagonal added around SVG frames.
const SVG_MARGIN_FRACTION: f64 = 0.05;
/// Rendered frame width in pixels; height follows the aspect ratio.
const SVG_WIDTH: f64 = 640.0;

pub fn trajectory_csv(trajectory: &FlowTrajectory) -> String {
    let mut out = String::with_capacity(64 * (trajectory.samples.len() + 1));
    out.push_str(TRAJECTORY_CSV_HEADER);
    out.push('\n');
    for s in &trajectory.samples {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            s.t, s.area, s.length, s.k_max, s.k_max_rescaled, s.isoperimetric_ratio, s.convex
        )
        .expect("writing to a string cannot fail");
    }
    out
}

pub fn write_trajectory_csv(trajectory: &FlowTrajectory, path: &Path) -> Result<()> {
    std::fs::write(path, trajectory_csv(trajectory))?;
    Ok(())
}

/// Frozen drawing region shared by every frame of one flow, so the shrinking
/// curve stays put instead of being rescaled to fit each frame.
#[derive(Debug, Clone, Copy)]
pub struct SvgViewport {
    min: Vec2,
    size: Vec2,
}

impl SvgViewport {
    pub fn from_curve(curve: &ClosedCurve) -> SvgViewport {
        let (lo, hi) = curve.bounding_box();
        let pad = (hi - lo).norm() * SVG_MARGIN_FRACTION;
        let min = lo - Vec2::new(pad, pad);
        let size = (hi - lo) + Vec2::new(2.0 * pad, 2.0 * pad);
        SvgViewport { min, size }
    }
}

/// One frame: the curve as a closed path. Geometric y points up, SVG y points
/// down, so coordinates are emitted y-flipped.
pub fn svg_frame(curve: &ClosedCurve, viewport: &SvgViewport) -> String {
    let height = SVG_WIDTH * viewport.size.y / viewport.size.x;
    let stroke = viewport.size.norm() / 400.0;
    let mut out = String::new();
    // In flipped coordinates the box [min.y, min.y + size.y] maps to
    // [-(min.y + size.y), -min.y].
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SVG_WIDTH:.0}\" height=\"{height:.0}\" \
         viewBox=\"{} {} {} {}\">",
        viewport.min.x,
        -(viewport.min.y + viewport.size.y),
        viewport.size.x,
        viewport.size.y
    )
    .unwrap();
    let mut path = String::new();
    for (i, p) in curve.points().iter().enumerate() {
        let cmd = if i == 0 { 'M' } else { 'L' };
        write!(path, "{cmd}{} {} ", p.x, -p.y).unwrap();
    }
    path.push('Z');
    writeln!(
        out,
        "  <path d=\"{path}\" fill=\"none\" stroke=\"black\" stroke-width=\"{stroke}\"/>"
    )
    .unwrap();
    out.push_str("</svg>\n");
    out
}
