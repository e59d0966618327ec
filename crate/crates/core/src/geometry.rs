//! Exact planar primitives, the colored instance model and the strict
//! separation checker.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Exact arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Shorthand for an integral rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`. Panics on `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Midpoint of two rationals.
pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / rat(2)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point { x: rat(x), y: rat(y) }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Which color class a point belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Blue,
}

/// A red point set and a blue point set.
///
/// Duplicate same-color points are kept. If a red point coincides with a blue
/// point the instance is flagged inseparable at construction time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    red: Vec<Point>,
    blue: Vec<Point>,
    coincident: Option<(usize, usize)>,
}

impl Instance {
    pub fn new(red: Vec<Point>, blue: Vec<Point>) -> Self {
        let coincident = find_coincident(&red, &blue);
        Instance { red, blue, coincident }
    }

    pub fn from_ints(red: &[(i64, i64)], blue: &[(i64, i64)]) -> Self {
        let conv = |v: &[(i64, i64)]| v.iter().map(|&(x, y)| Point::from_ints(x, y)).collect();
        Instance::new(conv(red), conv(blue))
    }

    pub fn red(&self) -> &[Point] {
        &self.red
    }

    pub fn blue(&self) -> &[Point] {
        &self.blue
    }

    pub fn len(&self) -> usize {
        self.red.len() + self.blue.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Indices `(red, blue)` of the first red point (in input order) that
    /// coincides with some blue point, if any.
    pub fn coincident_pair(&self) -> Option<(usize, usize)> {
        self.coincident
    }

    pub fn is_inseparable(&self) -> bool {
        self.coincident.is_some()
    }

    /// The same instance with the color classes exchanged.
    pub fn swapped(&self) -> Instance {
        Instance::new(self.blue.clone(), self.red.clone())
    }

    /// Apply `p -> scale * p + (dx, dy)` to every point.
    pub fn transformed(&self, scale: &Rational, dx: &Rational, dy: &Rational) -> Instance {
        let map = |v: &[Point]| {
            v.iter()
                .map(|p| Point::new(&p.x * scale + dx, &p.y * scale + dy))
                .collect()
        };
        Instance::new(map(&self.red), map(&self.blue))
    }
}

fn find_coincident(red: &[Point], blue: &[Point]) -> Option<(usize, usize)> {
    let mut first_blue: HashMap<&Point, usize> = HashMap::with_capacity(blue.len());
    for (i, b) in blue.iter().enumerate() {
        first_blue.entry(b).or_insert(i);
    }
    red.iter()
        .enumerate()
        .find_map(|(i, r)| first_blue.get(r).map(|&j| (i, j)))
}

/// A line `a*x + b*y = c` in canonical scaling: the first nonzero of `(a, b)`
/// equals one. Vertical and horizontal lines are the special cases
/// `(1, 0, x0)` and `(0, 1, y0)`, so equality and ordering are structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    a: Rational,
    b: Rational,
    c: Rational,
}

/// Borrowed view of a line by orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineKind<'a> {
    Vertical(&'a Rational),
    Horizontal(&'a Rational),
    General { a: &'a Rational, b: &'a Rational, c: &'a Rational },
}

impl Line {
    pub fn vertical(x: Rational) -> Self {
        Line { a: Rational::one(), b: Rational::zero(), c: x }
    }

    pub fn horizontal(y: Rational) -> Self {
        Line { a: Rational::zero(), b: Rational::one(), c: y }
    }

    /// `a*x + b*y = c`, rescaled to canonical form.
    pub fn general(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        let lead = if !a.is_zero() {
            a.clone()
        } else if !b.is_zero() {
            b.clone()
        } else {
            return Err(Error::DegenerateLine);
        };
        Ok(Line { a: a / &lead, b: b / &lead, c: c / &lead })
    }

    /// The line through two distinct points.
    pub fn through(p: &Point, q: &Point) -> Result<Self> {
        let a = &q.y - &p.y;
        let b = &p.x - &q.x;
        let c = &a * &p.x + &b * &p.y;
        Line::general(a, b, c)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn kind(&self) -> LineKind<'_> {
        if self.b.is_zero() {
            LineKind::Vertical(&self.c)
        } else if self.a.is_zero() {
            LineKind::Horizontal(&self.c)
        } else {
            LineKind::General { a: &self.a, b: &self.b, c: &self.c }
        }
    }

    pub fn is_axis_parallel(&self) -> bool {
        self.a.is_zero() || self.b.is_zero()
    }

    /// `a*x + b*y - c` at `p`.
    pub fn eval(&self, p: &Point) -> Rational {
        &self.a * &p.x + &self.b * &p.y - &self.c
    }

    /// Sign of `a*x + b*y - c`; `Equal` exactly on incidence.
    pub fn side_of(&self, p: &Point) -> Ordering {
        match self.kind() {
            LineKind::Vertical(x0) => p.x.cmp(x0),
            LineKind::Horizontal(y0) => p.y.cmp(y0),
            LineKind::General { .. } => self.eval(p).cmp(&Rational::zero()),
        }
    }

    /// True iff `p` and `q` lie in opposite open half-planes.
    pub fn separates(&self, p: &Point, q: &Point) -> bool {
        matches!(
            (self.side_of(p), self.side_of(q)),
            (Ordering::Less, Ordering::Greater) | (Ordering::Greater, Ordering::Less)
        )
    }

    /// Point of the line at abscissa `x`, if the line is not vertical.
    pub fn at_x(&self, x: &Rational) -> Option<Rational> {
        if self.b.is_zero() {
            None
        } else {
            Some((&self.c - &self.a * x) / &self.b)
        }
    }

    /// Point of the line at ordinate `y`, if the line is not horizontal.
    pub fn at_y(&self, y: &Rational) -> Option<Rational> {
        if self.a.is_zero() {
            None
        } else {
            Some((&self.c - &self.b * y) / &self.a)
        }
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            LineKind::Vertical(x) => write!(f, "x = {x}"),
            LineKind::Horizontal(y) => write!(f, "y = {y}"),
            LineKind::General { a, b, c } => write!(f, "{a}*x + {b}*y = {c}"),
        }
    }
}

/// Free-function form of [`Line::side_of`].
pub fn side_of(line: &Line, p: &Point) -> Ordering {
    line.side_of(p)
}

/// Free-function form of [`Line::separates`].
pub fn separates(line: &Line, p: &Point, q: &Point) -> bool {
    line.separates(p, q)
}

/// Sorts and removes duplicate lines.
pub fn dedup_lines(lines: impl IntoIterator<Item = Line>) -> Vec<Line> {
    let mut v: Vec<Line> = lines.into_iter().collect();
    v.sort();
    v.dedup();
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// An input point lies on a line.
    PointOnLine { color: Color, index: usize, point: Point, line: Line },
    /// A red/blue pair shares a cell of the arrangement.
    UnseparatedPair { red_index: usize, red: Point, blue_index: usize, blue: Point },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::PointOnLine { color, index, point, line } => {
                let c = if *color == Color::Red { "red" } else { "blue" };
                write!(f, "PointOnLine: {c} point #{index} {point} lies on {line}")
            }
            Violation::UnseparatedPair { red_index, red, blue_index, blue } => write!(
                f,
                "UnseparatedPair: red point #{red_index} {red} and blue point #{blue_index} {blue} share a cell"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub violation: Option<Violation>,
}

impl FeasibilityReport {
    pub fn feasible(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for FeasibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "feasible"),
            Some(v) => write!(f, "infeasible: {v}"),
        }
    }
}

/// A line with integer coefficients, for gcd-free side tests.
struct ScaledLine {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl ScaledLine {
    fn new(line: &Line) -> Self {
        let den = line.a.denom().lcm(line.b.denom()).lcm(line.c.denom());
        let scale = |v: &Rational| v.numer() * (&den / v.denom());
        ScaledLine { a: scale(&line.a), b: scale(&line.b), c: scale(&line.c) }
    }

    fn side(&self, p: &Point) -> Ordering {
        let (xn, xd, yn, yd) = (p.x.numer(), p.x.denom(), p.y.numer(), p.y.denom());
        let mut v = &self.c * xd * yd;
        if !self.a.is_zero() {
            v -= &self.a * xn * yd;
        }
        if !self.b.is_zero() {
            v -= &self.b * yn * xd;
        }
        // v = -(a x + b y - c) * xd * yd with positive denominators.
        BigInt::zero().cmp(&v)
    }
}

/// Strict separation check.
///
/// Scan order: lines in the given order, and for each line the red points
/// then the blue points in input order; the first incidence is reported.
/// Otherwise the first unseparated pair in (red index, blue index) order is
/// reported. Two points are unseparated iff they fall on the same side of
/// every line, so pairs are found by hashing side vectors in `O(n * |lines|)`.
pub fn is_feasible(instance: &Instance, lines: &[Line]) -> FeasibilityReport {
    let points: Vec<&Point> = instance.red().iter().chain(instance.blue().iter()).collect();
    let sides: Vec<Vec<Ordering>> = lines
        .par_iter()
        .map(|line| {
            let scaled = ScaledLine::new(line);
            points.iter().map(|p| scaled.side(p)).collect()
        })
        .collect();

    let reds = instance.red().len();
    for (line, row) in lines.iter().zip(&sides) {
        if let Some(i) = row.iter().position(|s| s.is_eq()) {
            let (color, index) = if i < reds { (Color::Red, i) } else { (Color::Blue, i - reds) };
            return FeasibilityReport {
                violation: Some(Violation::PointOnLine {
                    color,
                    index,
                    point: points[i].clone(),
                    line: line.clone(),
                }),
            };
        }
    }

    let words = lines.len().div_ceil(64).max(1);
    let signature = |i: usize| -> Vec<u64> {
        let mut sig = vec![0u64; words];
        for (li, row) in sides.iter().enumerate() {
            if row[i].is_gt() {
                sig[li / 64] |= 1 << (li % 64);
            }
        }
        sig
    };
    let mut blue_cells: HashMap<Vec<u64>, usize> = HashMap::with_capacity(instance.blue().len());
    for j in 0..instance.blue().len() {
        blue_cells.entry(signature(reds + j)).or_insert(j);
    }
    for (i, r) in instance.red().iter().enumerate() {
        if let Some(&j) = blue_cells.get(&signature(i)) {
            return FeasibilityReport {
                violation: Some(Violation::UnseparatedPair {
                    red_index: i,
                    red: r.clone(),
                    blue_index: j,
                    blue: instance.blue()[j].clone(),
                }),
            };
        }
    }
    FeasibilityReport { violation: None }
}

/// A coordinate of the strip structure, extended with infinities.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Extended {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Extended {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Extended::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::NegInf => write!(f, "-inf"),
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::PosInf => write!(f, "+inf"),
        }
    }
}

/// Position of a coordinate relative to the sorted blue coordinates
/// `X(1) < ... < X(k)`: strictly inside strip `j`, or exactly on `X(m)`
/// (which makes it a member of strips `m - 1` and `m`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Interior(usize),
    Boundary(usize),
}

impl Slot {
    /// Indices of the strips containing this coordinate (one or two).
    pub fn strips(self) -> impl Iterator<Item = usize> {
        let (lo, hi) = match self {
            Slot::Interior(j) => (j, j),
            Slot::Boundary(m) => (m - 1, m),
        };
        lo..=hi
    }
}

/// Strip structure induced by the distinct blue coordinates.
///
/// `xs` and `ys` hold the finite, sorted, distinct coordinates; the sentinel
/// values `X(0) = -inf` and `X(k+1) = +inf` are implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripDecomposition {
    pub xs: Vec<Rational>,
    pub ys: Vec<Rational>,
}

impl StripDecomposition {
    pub fn new(instance: &Instance) -> Self {
        let mut xs: Vec<Rational> = instance.blue().iter().map(|p| p.x.clone()).collect();
        let mut ys: Vec<Rational> = instance.blue().iter().map(|p| p.y.clone()).collect();
        xs.sort();
        xs.dedup();
        ys.sort();
        ys.dedup();
        StripDecomposition { xs, ys }
    }

    /// Number of finite vertical boundaries; vertical strips are `0..=k`.
    pub fn k(&self) -> usize {
        self.xs.len()
    }

    /// Number of finite horizontal boundaries; horizontal strips are `0..=l`.
    pub fn l(&self) -> usize {
        self.ys.len()
    }

    pub fn vertical_strip_count(&self) -> usize {
        self.xs.len() + 1
    }

    pub fn horizontal_strip_count(&self) -> usize {
        self.ys.len() + 1
    }

    /// `X(i)` for `i` in `0..=k+1`.
    pub fn x_bound(&self, i: usize) -> Extended {
        bound(&self.xs, i)
    }

    /// `Y(i)` for `i` in `0..=l+1`.
    pub fn y_bound(&self, i: usize) -> Extended {
        bound(&self.ys, i)
    }

    pub fn x_slot(&self, x: &Rational) -> Slot {
        slot(&self.xs, x)
    }

    pub fn y_slot(&self, y: &Rational) -> Slot {
        slot(&self.ys, y)
    }

    /// Vertical strips containing `p` (one or two indices).
    pub fn vertical_strips_of(&self, p: &Point) -> Vec<usize> {
        self.x_slot(&p.x).strips().collect()
    }

    /// Horizontal strips containing `p` (one or two indices).
    pub fn horizontal_strips_of(&self, p: &Point) -> Vec<usize> {
        self.y_slot(&p.y).strips().collect()
    }
}

fn bound(coords: &[Rational], i: usize) -> Extended {
    if i == 0 {
        Extended::NegInf
    } else if i <= coords.len() {
        Extended::Finite(coords[i - 1].clone())
    } else {
        Extended::PosInf
    }
}

fn slot(coords: &[Rational], v: &Rational) -> Slot {
    match coords.binary_search(v) {
        Ok(m) => Slot::Boundary(m + 1),
        Err(m) => Slot::Interior(m),
    }
}

/// Free-function form of [`StripDecomposition::new`].
pub fn strip_decomposition(instance: &Instance) -> StripDecomposition {
    StripDecomposition::new(instance)
}

/// Twice the signed area of the triangle `(a, b, c)`; positive for a
/// counter-clockwise turn.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Rational {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

/// Absolute value helper that keeps callers free of trait imports.
pub fn abs(v: &Rational) -> Rational {
    v.abs()
}
