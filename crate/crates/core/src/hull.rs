//! Convex hulls and the exact strict-separability test for two point sets.

use std::cmp::Ordering;

use num_traits::Zero;

use crate::geometry::{orient, Point, Rational};

/// Vertices of the convex hull in counter-clockwise order, collinear points
/// dropped. Returns one vertex for a single (possibly repeated) point and two
/// for a collinear set.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= Rational::zero() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= Rational::zero() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn sign(v: Rational) -> Ordering {
    v.cmp(&Rational::zero())
}

fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    sign(orient(a, b, p)).is_eq()
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

/// Closed segments `[a, b]` and `[c, d]` share a point.
pub fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let d1 = sign(orient(c, d, a));
    let d2 = sign(orient(c, d, b));
    let d3 = sign(orient(a, b, c));
    let d4 = sign(orient(a, b, d));
    if d1 != d2 && d1 != Ordering::Equal && d2 != Ordering::Equal && d3 != d4 && d3 != Ordering::Equal && d4 != Ordering::Equal {
        return true;
    }
    on_segment(c, d, a) || on_segment(c, d, b) || on_segment(a, b, c) || on_segment(a, b, d)
}

/// `p` lies in the closed convex polygon with counter-clockwise `hull`.
fn in_closed_hull(hull: &[Point], p: &Point) -> bool {
    match hull.len() {
        0 => false,
        1 => hull[0] == *p,
        2 => on_segment(&hull[0], &hull[1], p),
        n => (0..n).all(|i| orient(&hull[i], &hull[(i + 1) % n], p) >= Rational::zero()),
    }
}

fn edges(hull: &[Point]) -> Vec<(&Point, &Point)> {
    match hull.len() {
        0 | 1 => Vec::new(),
        2 => vec![(&hull[0], &hull[1])],
        n => (0..n).map(|i| (&hull[i], &hull[(i + 1) % n])).collect(),
    }
}

/// True iff some line has all of `s` strictly on one side and all of `t`
/// strictly on the other, i.e. iff the closed convex hulls are disjoint.
/// Empty sets are always separable.
pub fn hulls_strictly_disjoint(s: &[Point], t: &[Point]) -> bool {
    if s.is_empty() || t.is_empty() {
        return true;
    }
    let hs = convex_hull(s);
    let ht = convex_hull(t);
    if hs.iter().any(|p| in_closed_hull(&ht, p)) || ht.iter().any(|p| in_closed_hull(&hs, p)) {
        return false;
    }
    let et = edges(&ht);
    !edges(&hs)
        .iter()
        .any(|(a, b)| et.iter().any(|(c, d)| segments_intersect(a, b, c, d)))
}
