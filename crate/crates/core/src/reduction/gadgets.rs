//! Point-level gadget constructors.

use crate::error::{Error, Result};
use crate::geometry::{rat, Point, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlleyOrientation {
    /// Runs parallel to the x-axis, stacked in y.
    Horizontal,
    /// Runs parallel to the y-axis, stacked in x.
    Vertical,
}

/// Which run of an alley is red: the one with the larger cross coordinate
/// (above a horizontal alley, right of a vertical one) or the smaller.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RedSide {
    High,
    Low,
}

impl RedSide {
    pub fn flipped(self) -> Self {
        match self {
            RedSide::High => RedSide::Low,
            RedSide::Low => RedSide::High,
        }
    }

    /// `High` for even `index`, alternating from there.
    pub fn alternating(first: RedSide, index: usize) -> Self {
        if index.is_multiple_of(2) {
            first
        } else {
            first.flipped()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GadgetTag {
    /// A group of long alleys sharing a super-cell, or one outer alley.
    Alleys(String),
    /// A lone interval red pair.
    Interval,
    /// A simple interval gadget: blue diagonal plus interval red pairs.
    Track(String),
    /// Half-encoding of one class permutation.
    HalfPermutation { vertical: bool, class: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetPoints {
    pub red: Vec<Point>,
    pub blue: Vec<Point>,
    pub tag: GadgetTag,
}

impl GadgetPoints {
    pub fn new(tag: GadgetTag) -> Self {
        GadgetPoints { red: Vec::new(), blue: Vec::new(), tag }
    }

    pub fn len(&self) -> usize {
        self.red.len() + self.blue.len()
    }

    pub fn is_empty(&self) -> bool {
        self.red.is_empty() && self.blue.is_empty()
    }

    pub fn extend(&mut self, other: GadgetPoints) {
        self.red.extend(other.red);
        self.blue.extend(other.blue);
    }

    /// Applies `f` to every point.
    pub fn map(self, f: impl Fn(&Point) -> Point) -> Self {
        GadgetPoints {
            red: self.red.iter().map(&f).collect(),
            blue: self.blue.iter().map(&f).collect(),
            tag: self.tag,
        }
    }

    pub fn points(&self) -> impl Iterator<Item = &Point> {
        self.red.iter().chain(self.blue.iter())
    }
}

/// Two parallel runs of `length` unit-spaced points starting at `origin`.
/// The low run passes through `origin`; the high run is offset by `width`
/// across the alley.
pub fn long_alley(
    origin: &Point,
    orientation: AlleyOrientation,
    length: usize,
    width: &Rational,
    red_side: RedSide,
) -> GadgetPoints {
    let mut g = GadgetPoints::new(GadgetTag::Alleys("alley".into()));
    for step in 0..length {
        let along = rat(step as i64);
        let (low, high) = match orientation {
            AlleyOrientation::Horizontal => (
                Point::new(&origin.x + &along, origin.y.clone()),
                Point::new(&origin.x + &along, &origin.y + width),
            ),
            AlleyOrientation::Vertical => (
                Point::new(origin.x.clone(), &origin.y + &along),
                Point::new(&origin.x + width, &origin.y + &along),
            ),
        };
        match red_side {
            RedSide::High => {
                g.red.push(high);
                g.blue.push(low);
            }
            RedSide::Low => {
                g.red.push(low);
                g.blue.push(high);
            }
        }
    }
    g
}

/// The red pair of interval `[s, s']` in a simple interval gadget at `(x0, y0)`.
pub fn interval_gadget_points(s: usize, s_end: usize, x0: &Rational, y0: &Rational) -> Result<GadgetPoints> {
    if s == 0 || s > s_end {
        return Err(Error::InvalidS2ths(format!("interval [{s}, {s_end}] is empty or not 1-based")));
    }
    let (s, e) = (rat(s as i64), rat(s_end as i64));
    let four = rat(4);
    let mut g = GadgetPoints::new(GadgetTag::Interval);
    g.red.push(Point::new(x0 + &four * &s - rat(7), y0 + &four * &e - rat(5)));
    g.red.push(Point::new(x0 + &four * &e - rat(5), y0 + &four * &s - rat(7)));
    Ok(g)
}

/// Simple interval gadget over elements `1..=n` at `(x0, y0)`: `n - 1` blue
/// points on the diagonal `(x0 + 4(m-1), y0 + 4(m-1))` and a red pair per
/// interval. Element `s` corresponds to the lines `x = x0 + 4s - 6` and
/// `y = y0 + 4s - 6`.
pub fn simple_interval_gadget(
    n: usize,
    intervals: &[(usize, usize)],
    x0: &Rational,
    y0: &Rational,
    tag: GadgetTag,
) -> Result<GadgetPoints> {
    let mut g = GadgetPoints::new(tag);
    for m in 1..n {
        let d = rat(4 * (m as i64 - 1));
        g.blue.push(Point::new(x0 + &d, y0 + &d));
    }
    for &(s, e) in intervals {
        if e > n {
            return Err(Error::InvalidS2ths(format!("interval [{s}, {e}] exceeds {n} elements")));
        }
        g.red.extend(interval_gadget_points(s, e, x0, y0)?.red);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_search::axis_candidates;
    use crate::geometry::{is_feasible, Instance, Line, LineKind};

    #[test]
    fn alley_runs() {
        let g = long_alley(&Point::from_ints(5, 2), AlleyOrientation::Horizontal, 3, &rat(1), RedSide::High);
        assert_eq!(g.red, vec![Point::from_ints(5, 3), Point::from_ints(6, 3), Point::from_ints(7, 3)]);
        assert_eq!(g.blue, vec![Point::from_ints(5, 2), Point::from_ints(6, 2), Point::from_ints(7, 2)]);
        let v = long_alley(&Point::from_ints(0, 0), AlleyOrientation::Vertical, 2, &rat(4), RedSide::Low);
        assert_eq!(v.red, vec![Point::from_ints(0, 0), Point::from_ints(0, 1)]);
        assert_eq!(v.blue, vec![Point::from_ints(4, 0), Point::from_ints(4, 1)]);
    }

    #[test]
    fn one_line_splits_an_alley_only_when_parallel() {
        let g = long_alley(&Point::from_ints(0, 0), AlleyOrientation::Horizontal, 6, &rat(2), RedSide::High);
        let inst = Instance::new(g.red, g.blue);
        for line in axis_candidates(&inst).lines() {
            let ok = is_feasible(&inst, std::slice::from_ref(&line)).feasible();
            assert_eq!(ok, matches!(line.kind(), LineKind::Horizontal(_)), "{line}");
        }
    }

    #[test]
    fn interval_pair_coordinates() {
        let g = interval_gadget_points(1, 1, &rat(0), &rat(0)).unwrap();
        assert_eq!(g.red, vec![Point::from_ints(-3, -1), Point::from_ints(-1, -3)]);
        assert!(interval_gadget_points(3, 2, &rat(0), &rat(0)).is_err());
    }

    fn diagonal_count(g: &GadgetPoints, pred: impl Fn(&Point) -> bool) -> usize {
        g.blue.iter().filter(|p| pred(p)).count()
    }

    // The gadget induced by [s, e]: its red pair plus the diagonal blues in
    // the square spanned by the pair. Over all candidate pairs whose lines
    // both cross that square, separation holds exactly when the lines cut
    // the diagonal in the same gap.
    #[test]
    fn lines_must_meet_at_the_diagonal() {
        let n = 6;
        for s in 1..=n {
            for e in s + 1..=n {
                let full = simple_interval_gadget(n, &[(s, e)], &rat(0), &rat(0), GadgetTag::Interval).unwrap();
                let (lo, hi) = (rat(4 * s as i64 - 7), rat(4 * e as i64 - 5));
                let blue: Vec<Point> =
                    full.blue.iter().filter(|p| lo < p.x && p.x < hi).cloned().collect();
                assert_eq!(blue.len(), e - s);
                let g = GadgetPoints { red: full.red.clone(), blue, tag: GadgetTag::Interval };
                let inst = Instance::new(g.red.clone(), g.blue.clone());
                let cand = axis_candidates(&inst);
                let inside = |v: &&Rational| lo < **v && **v < hi;
                let mut pairs = 0;
                for vx in cand.vertical_offsets.iter().filter(inside) {
                    for hy in cand.horizontal_offsets.iter().filter(inside) {
                        let lines = [Line::vertical(vx.clone()), Line::horizontal(hy.clone())];
                        let feasible = is_feasible(&inst, &lines).feasible();
                        let meets = diagonal_count(&g, |p| &p.x < vx) == diagonal_count(&g, |p| &p.y < hy);
                        assert_eq!(feasible, meets, "[{s},{e}] x={vx} y={hy}");
                        pairs += 1;
                    }
                }
                assert!(pairs > 0);
            }
        }
    }

    #[test]
    fn canonical_lines_pick_an_element() {
        let n = 5;
        for s in 1..=n {
            for e in s..=n {
                let g = simple_interval_gadget(n, &[(s, e)], &rat(0), &rat(0), GadgetTag::Interval).unwrap();
                let inst = Instance::new(g.red, g.blue);
                for p in 1..=n {
                    let c = rat(4 * p as i64 - 6);
                    let lines = [Line::vertical(c.clone()), Line::horizontal(c)];
                    assert_eq!(is_feasible(&inst, &lines).feasible(), s <= p && p <= e, "[{s},{e}] p={p}");
                }
            }
        }
    }
}
