//! SVG rendering.
//!
//! The viewport is the bounding box of the points grown by 5% on each side.
//! Lines are clipped to it exactly before conversion to floating point, and
//! every number is printed with a fixed precision, so equal inputs give
//! byte-identical documents.

use std::fmt::Write as _;

use num_traits::{ToPrimitive, Zero};

use crate::geometry::{frac, rat, Instance, Line, Point, Rational};

const CANVAS: f64 = 800.0;
const RED: &str = "#d62728";
const BLUE: &str = "#1f77b4";

struct Viewport {
    min_x: Rational,
    min_y: Rational,
    max_x: Rational,
    max_y: Rational,
}

impl Viewport {
    fn of(instance: &Instance) -> Self {
        let mut pts = instance.red().iter().chain(instance.blue());
        let Some(first) = pts.next() else {
            return Viewport { min_x: rat(-1), min_y: rat(-1), max_x: rat(1), max_y: rat(1) };
        };
        let (mut min_x, mut max_x, mut min_y, mut max_y) =
            (first.x.clone(), first.x.clone(), first.y.clone(), first.y.clone());
        for p in pts {
            if p.x < min_x {
                min_x = p.x.clone();
            }
            if p.x > max_x {
                max_x = p.x.clone();
            }
            if p.y < min_y {
                min_y = p.y.clone();
            }
            if p.y > max_y {
                max_y = p.y.clone();
            }
        }
        let pad = |lo: &Rational, hi: &Rational| {
            let span = hi - lo;
            if span.is_zero() {
                rat(1)
            } else {
                span * frac(1, 20)
            }
        };
        let (px, py) = (pad(&min_x, &max_x), pad(&min_y, &max_y));
        Viewport { min_x: min_x - &px, max_x: max_x + &px, min_y: min_y - &py, max_y: max_y + &py }
    }

    /// Segment of `line` inside the viewport, if any.
    fn clip(&self, line: &Line) -> Option<(Point, Point)> {
        let mut hits: Vec<Point> = Vec::new();
        let inside_x = |x: &Rational| &self.min_x <= x && x <= &self.max_x;
        let inside_y = |y: &Rational| &self.min_y <= y && y <= &self.max_y;
        for x in [&self.min_x, &self.max_x] {
            if let Some(y) = line.at_x(x) {
                if inside_y(&y) {
                    hits.push(Point::new(x.clone(), y));
                }
            }
        }
        for y in [&self.min_y, &self.max_y] {
            if let Some(x) = line.at_y(y) {
                if inside_x(&x) {
                    hits.push(Point::new(x, y.clone()));
                }
            }
        }
        hits.sort_by(|a, b| (&a.x, &a.y).cmp(&(&b.x, &b.y)));
        hits.dedup();
        match hits.len() {
            0 | 1 => None,
            _ => Some((hits[0].clone(), hits[hits.len() - 1].clone())),
        }
    }
}

struct Transform {
    view: Viewport,
    width: f64,
    height: f64,
    scale: f64,
}

impl Transform {
    fn new(view: Viewport) -> Self {
        let w = (&view.max_x - &view.min_x).to_f64().unwrap_or(1.0);
        let h = (&view.max_y - &view.min_y).to_f64().unwrap_or(1.0);
        let scale = CANVAS / w.max(h);
        Transform { width: w * scale, height: h * scale, scale, view }
    }

    fn map(&self, p: &Point) -> (f64, f64) {
        let x = (&p.x - &self.view.min_x).to_f64().unwrap_or(0.0) * self.scale;
        let y = (&self.view.max_y - &p.y).to_f64().unwrap_or(0.0) * self.scale;
        (x, y)
    }
}

/// Renders the points of `instance` as filled circles and `lines` as
/// segments clipped to the viewport.
pub fn render_svg(instance: &Instance, lines: &[Line]) -> String {
    let tf = Transform::new(Viewport::of(instance));
    let r = (CANVAS / 200.0).max(1.0);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#,
        w = tf.width,
        h = tf.height
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<g stroke="black" stroke-width="1">"#);
    for line in lines {
        if let Some((a, b)) = tf.view.clip(line) {
            let ((x1, y1), (x2, y2)) = (tf.map(&a), tf.map(&b));
            let _ = writeln!(out, r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#);
        }
    }
    let _ = writeln!(out, "</g>");
    for (class, color, points) in [("red", RED, instance.red()), ("blue", BLUE, instance.blue())] {
        let _ = writeln!(out, r#"<g class="{class}" fill="{color}">"#);
        for p in points {
            let (cx, cy) = tf.map(p);
            let _ = writeln!(out, r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="{r:.1}"/>"#);
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xor() -> Instance {
        Instance::from_ints(&[(0, 0), (2, 2)], &[(0, 2), (2, 0)])
    }

    #[test]
    fn counts_and_colors() {
        let lines = [Line::vertical(rat(1)), Line::horizontal(rat(1))];
        let svg = render_svg(&xor(), &lines);
        assert_eq!(svg.matches("<circle").count(), 4);
        assert_eq!(svg.matches("<line").count(), 2);
        assert!(svg.contains(RED) && svg.contains(BLUE));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn margin_is_five_percent() {
        let svg = render_svg(&xor(), &[]);
        // Span 2 plus 0.1 on each side, scaled to 800.
        let scale = 800.0 / 2.2;
        assert!(svg.contains(&format!(r#"cx="{:.3}""#, 0.1 * scale)));
        assert!(svg.contains(r#"width="800""#));
    }

    #[test]
    fn lines_outside_are_dropped_and_slanted_are_clipped() {
        let far = Line::vertical(rat(50));
        let diag = Line::through(&Point::from_ints(0, 0), &Point::from_ints(1, 1)).unwrap();
        let svg = render_svg(&xor(), &[far, diag]);
        assert_eq!(svg.matches("<line").count(), 1);
        assert!(svg.contains(r#"x1="0.000" y1="800.000" x2="800.000" y2="0.000""#));
    }

    #[test]
    fn deterministic() {
        let lines = [Line::general(rat(1), rat(3), rat(2)).unwrap()];
        assert_eq!(render_svg(&xor(), &lines), render_svg(&xor(), &lines));
        assert!(render_svg(&Instance::new(vec![], vec![]), &lines).contains("<svg"));
    }
}
