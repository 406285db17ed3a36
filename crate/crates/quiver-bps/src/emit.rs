//! Deterministic result emission: JSON files, RFC-quoted CSV, and
//! self-contained SVG overlays (plain shapes, no external assets).

use std::path::Path;

use crate::central_charge::{Charge, ModuliPath};
use crate::grading_flow::FlowSample;
use crate::walls::{WallGrid, WallScan};
use crate::Result;

pub fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| crate::Error::Io(e.to_string()))?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

fn charge_str(q: &Charge) -> String {
    q.0.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Wall rows as CSV: s, q, q_prime, residual. Charges keep their commas, so
/// the csv writer quotes them.
pub fn walls_csv(scan: &WallScan) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["s", "q", "q_prime", "residual"])
        .map_err(|e| crate::Error::Io(e.to_string()))?;
    for wall in &scan.walls {
        for locus in &wall.loci {
            w.write_record([
                locus.s.to_string(),
                charge_str(&wall.parent),
                charge_str(&wall.witness),
                locus.residual.to_string(),
            ])
            .map_err(|e| crate::Error::Io(e.to_string()))?;
        }
    }
    let bytes = w.into_inner().map_err(|e| crate::Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| crate::Error::Io(e.to_string()))
}

/// Grading-flow trace as CSV: s, phi_E, phi_F, degree.
pub fn trace_csv(trace: &[FlowSample]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["s", "phi_E", "phi_F", "degree"])
        .map_err(|e| crate::Error::Io(e.to_string()))?;
    for f in trace {
        w.write_record([
            f.s.to_string(),
            f.phase_source.to_string(),
            f.phase_target.to_string(),
            f.degree.to_string(),
        ])
        .map_err(|e| crate::Error::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| crate::Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| crate::Error::Io(e.to_string()))
}

const SVG_SIZE: f64 = 600.0;
const SVG_MARGIN: f64 = 40.0;

struct Viewport {
    re_min: f64,
    re_max: f64,
    im_min: f64,
    im_max: f64,
}

impl Viewport {
    fn x(&self, re: f64) -> f64 {
        let w = (self.re_max - self.re_min).max(1e-12);
        SVG_MARGIN + (re - self.re_min) / w * (SVG_SIZE - 2.0 * SVG_MARGIN)
    }

    fn y(&self, im: f64) -> f64 {
        let h = (self.im_max - self.im_min).max(1e-12);
        // SVG y grows downward
        SVG_SIZE - SVG_MARGIN - (im - self.im_min) / h * (SVG_SIZE - 2.0 * SVG_MARGIN)
    }
}

fn svg_header() -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n\
         <rect width=\"{0}\" height=\"{0}\" fill=\"white\"/>\n",
        SVG_SIZE
    )
}

fn fmt(v: f64) -> String {
    format!("{v:.3}")
}

/// Path in the t-plane with wall loci marked as circles.
pub fn scan_svg(path: &ModuliPath, scan: &WallScan) -> String {
    let points: Vec<(f64, f64)> = path
        .samples
        .iter()
        .map(|&s| {
            let t = path.point(s);
            (t.re, t.im)
        })
        .collect();
    let (mut re_min, mut re_max, mut im_min, mut im_max) =
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(re, im) in &points {
        re_min = re_min.min(re);
        re_max = re_max.max(re);
        im_min = im_min.min(im);
        im_max = im_max.max(im);
    }
    let pad = 0.1 * ((re_max - re_min).max(im_max - im_min).max(1.0));
    let vp = Viewport {
        re_min: re_min - pad,
        re_max: re_max + pad,
        im_min: im_min - pad,
        im_max: im_max + pad,
    };
    let mut svg = svg_header();
    let poly: Vec<String> = points
        .iter()
        .map(|&(re, im)| format!("{},{}", fmt(vp.x(re)), fmt(vp.y(im))))
        .collect();
    svg.push_str(&format!(
        "<polyline points=\"{}\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\"/>\n",
        poly.join(" ")
    ));
    for wall in &scan.walls {
        for locus in &wall.loci {
            let t = path.point(locus.s);
            svg.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"5\" fill=\"crimson\"/>\n",
                fmt(vp.x(t.re)),
                fmt(vp.y(t.im))
            ));
        }
    }
    svg.push_str("</svg>\n");
    svg
}

const WALL_COLORS: [&str; 6] = [
    "crimson",
    "darkorange",
    "seagreen",
    "royalblue",
    "purple",
    "goldenrod",
];

/// Wall curves (sign-change cell boundaries) over the t-plane rectangle.
pub fn grid_svg(grid: &WallGrid) -> String {
    let vp = Viewport {
        re_min: grid.rect.re_min,
        re_max: grid.rect.re_max,
        im_min: grid.rect.im_min,
        im_max: grid.rect.im_max,
    };
    let mut svg = svg_header();
    svg.push_str(&format!(
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
        fmt(vp.x(grid.rect.re_min)),
        fmt(vp.y(grid.rect.im_max)),
        fmt(vp.x(grid.rect.re_max) - vp.x(grid.rect.re_min)),
        fmt(vp.y(grid.rect.im_min) - vp.y(grid.rect.im_max)),
    ));
    for (i, wgrid) in grid.grids.iter().enumerate() {
        let color = WALL_COLORS[i % WALL_COLORS.len()];
        for (x0, y0, x1, y1) in grid.wall_segments(wgrid) {
            svg.push_str(&format!(
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
                fmt(vp.x(x0)),
                fmt(vp.y(y0)),
                fmt(vp.x(x1)),
                fmt(vp.y(y1)),
            ));
        }
    }
    svg.push_str("</svg>\n");
    svg
}
