//! Deterministic SVG rendering of 2D scenes: pure parts of the exact
//! coordinates, projected at a fixed six decimal digits, byte-identical for
//! identical input.

use sdg_core::contact::rational_unit_directions;
use sdg_core::geometry::Point;
use sdg_core::nilpotent::NilElement;

use crate::scene::Scene;
use crate::HarnessError;

fn coord(value: &NilElement) -> f64 {
    value
        .pure_part()
        .to_decimal(6)
        .parse()
        .expect("fixed-point decimal always parses")
}

fn xy(p: &Point) -> (f64, f64) {
    (coord(p.coord(0)), coord(p.coord(1)))
}

struct Bounds {
    min_x: f64,
    max_x: f64,
    min_y: f64,
    max_y: f64,
}

impl Bounds {
    fn new() -> Bounds {
        Bounds {
            min_x: f64::INFINITY,
            max_x: f64::NEG_INFINITY,
            min_y: f64::INFINITY,
            max_y: f64::NEG_INFINITY,
        }
    }

    fn include(&mut self, x: f64, y: f64) {
        self.min_x = self.min_x.min(x);
        self.max_x = self.max_x.max(x);
        self.min_y = self.min_y.min(y);
        self.max_y = self.max_y.max(y);
    }

    fn include_circle(&mut self, x: f64, y: f64, r: f64) {
        self.include(x - r, y - r);
        self.include(x + r, y + r);
    }
}

/// Render a 2D scene. Plot hints (segments, labels, marks, wavefront
/// families) come from the scene file itself.
pub fn render(scene: &Scene) -> Result<String, HarnessError> {
    if scene.dim != 2 {
        return Err(HarnessError::Kernel(format!(
            "SVG rendering supports dimension 2, scene has dimension {}",
            scene.dim
        )));
    }

    let mut bounds = Bounds::new();
    for point in scene.points.values() {
        let (x, y) = xy(point);
        bounds.include(x, y);
    }
    for sphere in scene.spheres.values() {
        let (x, y) = xy(sphere.center());
        bounds.include_circle(x, y, coord(sphere.radius()));
    }
    for plane in scene.hyperplanes.values() {
        let (x, y) = xy(plane.basepoint());
        bounds.include(x, y);
    }
    for front in &scene.plot.wavefronts {
        if let Some(center) = scene.points.get(&front.center) {
            let (x, y) = xy(center);
            let mut reach = coord(&front.radius);
            for step in &front.steps {
                reach += coord(step);
            }
            bounds.include_circle(x, y, coord(&front.radius) + reach);
        }
    }
    if bounds.min_x > bounds.max_x {
        bounds.include(0.0, 0.0);
    }

    let pad = 1.0 + 0.1 * (bounds.max_x - bounds.min_x).max(bounds.max_y - bounds.min_y);
    let min_x = bounds.min_x - pad;
    let max_x = bounds.max_x + pad;
    let min_y = bounds.min_y - pad;
    let max_y = bounds.max_y + pad;
    let width = max_x - min_x;
    let height = max_y - min_y;
    let stroke = (width.max(height) / 300.0).max(0.002);
    let dot = 2.5 * stroke;

    // world y points up; SVG y points down, so emit y negated
    let mut out = String::new();
    out.push_str(r##"<?xml version="1.0" encoding="UTF-8"?>"##);
    out.push('\n');
    out.push_str(&format!(
        r##"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.6} {:.6} {:.6} {:.6}">"##,
        min_x, -max_y, width, height
    ));
    out.push('\n');

    let diag = width.max(height) * 4.0;
    for (name, plane) in &scene.hyperplanes {
        let (bx, by) = xy(plane.basepoint());
        let (nx, ny) = xy(plane.normal());
        let len = (nx * nx + ny * ny).sqrt();
        // direction along the plane
        let (dx, dy) = (-ny / len, nx / len);
        out.push_str(&format!(
            r##"  <line x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}" stroke="#555555" stroke-width="{:.6}"><title>{}</title></line>"##,
            bx - dx * diag,
            -(by - dy * diag),
            bx + dx * diag,
            -(by + dy * diag),
            stroke,
            name
        ));
        out.push('\n');
    }

    for (name, sphere) in &scene.spheres {
        let (cx, cy) = xy(sphere.center());
        out.push_str(&format!(
            r##"  <circle cx="{:.6}" cy="{:.6}" r="{}" fill="none" stroke="#1b4f9c" stroke-width="{:.6}"><title>{}</title></circle>"##,
            cx,
            -cy,
            format_number(coord(sphere.radius())),
            stroke,
            name
        ));
        out.push('\n');
    }

    for front in &scene.plot.wavefronts {
        let Some(center) = scene.points.get(&front.center) else {
            continue;
        };
        let (cx, cy) = xy(center);
        let r = coord(&front.radius);
        let directions = rational_unit_directions(2, front.samples);
        let mut offset = 0.0;
        for step in &front.steps {
            let s = coord(step);
            offset += s;
            // envelope layer
            out.push_str(&format!(
                r##"  <circle cx="{:.6}" cy="{:.6}" r="{:.6}" fill="none" stroke="#b03030" stroke-width="{:.6}" stroke-dasharray="{:.6} {:.6}"/>"##,
                cx,
                -cy,
                r + offset,
                stroke,
                4.0 * stroke,
                3.0 * stroke
            ));
            out.push('\n');
            // the family of wave spheres and their touch points
            for u in &directions {
                let (ux, uy) = xy(u);
                let (bx, by) = (cx + r * ux, cy + r * uy);
                out.push_str(&format!(
                    r##"  <circle cx="{:.6}" cy="{:.6}" r="{:.6}" fill="none" stroke="#7a9a52" stroke-width="{:.6}"/>"##,
                    bx,
                    -by,
                    offset,
                    0.6 * stroke
                ));
                out.push('\n');
                let (tx, ty) = (cx + (r + offset) * ux, cy + (r + offset) * uy);
                out.push_str(&format!(
                    r##"  <circle cx="{:.6}" cy="{:.6}" r="{:.6}" fill="#b03030"/>"##,
                    tx,
                    -ty,
                    1.4 * stroke
                ));
                out.push('\n');
            }
        }
    }

    for (a, b) in &scene.plot.segments {
        let (Some(pa), Some(pb)) = (scene.points.get(a), scene.points.get(b)) else {
            continue;
        };
        let (ax, ay) = xy(pa);
        let (bx, by) = xy(pb);
        out.push_str(&format!(
            r##"  <line x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}" stroke="#222222" stroke-width="{:.6}"/>"##,
            ax, -ay, bx, -by, stroke
        ));
        out.push('\n');
    }

    for (name, point) in &scene.points {
        let (x, y) = xy(point);
        let marked = scene.plot.marks.iter().any(|m| m == name);
        if marked {
            out.push_str(&format!(
                r##"  <circle cx="{:.6}" cy="{:.6}" r="{:.6}" fill="none" stroke="#b03030" stroke-width="{:.6}"/>"##,
                x,
                -y,
                2.2 * dot,
                stroke
            ));
            out.push('\n');
        }
        out.push_str(&format!(
            r##"  <circle cx="{:.6}" cy="{:.6}" r="{:.6}" fill="#222222"><title>{}</title></circle>"##,
            x, -y, dot, name
        ));
        out.push('\n');
        out.push_str(&format!(
            r##"  <text x="{:.6}" y="{:.6}" font-size="{:.6}" fill="#222222">{}</text>"##,
            x + 2.0 * dot,
            -(y + 2.0 * dot),
            10.0 * stroke,
            name
        ));
        out.push('\n');
    }

    for (at, text) in &scene.plot.labels {
        let Some(point) = scene.points.get(at) else {
            continue;
        };
        let (x, y) = xy(point);
        out.push_str(&format!(
            r##"  <text x="{:.6}" y="{:.6}" font-size="{:.6}" fill="#b03030">{}</text>"##,
            x + 2.0 * dot,
            -(y - 3.0 * dot),
            10.0 * stroke,
            text
        ));
        out.push('\n');
    }

    out.push_str("</svg>\n");
    Ok(out)
}

fn format_number(x: f64) -> String {
    format!("{x:.6}")
}
