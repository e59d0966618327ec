//! Exact axis-parallel red-blue separation, exponential only in the size of
//! the smaller color class.
//!
//! The blue coordinates cut the plane into vertical and horizontal strips
//! whose interiors hold no blue point. An optimal solution uses at most two
//! lines per strip, and two lines in a strip can always be pushed apart to
//! enclose every interior red point. So the solver guesses a count in
//! `{0, 1, 2}` per strip (a [`Specification`]), and for each guess decides
//! where the single lines go with a 2-SAT formula:
//!
//! * a variable per (count-1 strip, distinct interior red coordinate) meaning
//!   "the strip's line is below / left of this coordinate"; red points on a
//!   strip boundary get a pinned constant instead;
//! * coherence implications between consecutive coordinates of a strip;
//! * for every blue point and every cell whose red points still depend on
//!   the exact placement of count-1 lines, a clause of at most two literals
//!   per red point that is not yet separated.
//!
//! Specifications are tried in nondecreasing cost, so the first satisfiable
//! one is optimal.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{
    is_feasible, midpoint, rat, Extended, Instance, Line, Point, Rational, Slot,
    StripDecomposition,
};
use crate::twosat::{solve, Assignment, Lit, TwoSatFormula};

/// Line count (0, 1 or 2) guessed for every horizontal and vertical strip.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Specification {
    pub horiz_counts: Vec<u8>,
    pub vert_counts: Vec<u8>,
}

impl Specification {
    pub fn zeros(strips: &StripDecomposition) -> Self {
        Specification {
            horiz_counts: vec![0; strips.horizontal_strip_count()],
            vert_counts: vec![0; strips.vertical_strip_count()],
        }
    }

    pub fn cost(&self) -> usize {
        self.horiz_counts.iter().chain(&self.vert_counts).map(|&c| c as usize).sum()
    }
}

impl fmt::Display for Specification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u8]| v.iter().map(|c| c.to_string()).collect::<String>();
        write!(f, "h={} v={}", join(&self.horiz_counts), join(&self.vert_counts))
    }
}

/// Where a solution came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// One color class is empty; nothing to separate.
    Trivial,
    Specification(Specification),
    AxisBruteforce,
    GeneralBruteforce,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub lines: Vec<Line>,
    pub provenance: Provenance,
}

impl Solution {
    pub fn cost(&self) -> usize {
        self.lines.len()
    }
}

/// Iterates all `3^(l+1) * 3^(k+1)` specifications by nondecreasing cost,
/// ties broken lexicographically on the horizontal counts followed by the
/// vertical counts.
pub fn enumerate_specifications(strips: &StripDecomposition) -> SpecificationIter {
    SpecificationIter::new(strips.horizontal_strip_count(), strips.vertical_strip_count())
}

pub struct SpecificationIter {
    horiz: usize,
    vert: usize,
    cost: usize,
    level: std::vec::IntoIter<Specification>,
}

impl SpecificationIter {
    fn new(horiz: usize, vert: usize) -> Self {
        SpecificationIter { horiz, vert, cost: 0, level: Vec::new().into_iter() }
    }

    /// All specifications of exactly `cost`, in lexicographic order, or
    /// `None` past the maximum cost.
    pub fn next_level(&mut self) -> Option<Vec<Specification>> {
        let width = self.horiz + self.vert;
        if self.cost > 2 * width {
            return None;
        }
        let mut out = Vec::new();
        let mut buf = vec![0u8; width];
        fill_level(&mut buf, 0, self.cost, &mut out, self.horiz);
        self.cost += 1;
        Some(out)
    }
}

fn fill_level(buf: &mut [u8], pos: usize, remaining: usize, out: &mut Vec<Specification>, horiz: usize) {
    if pos == buf.len() {
        if remaining == 0 {
            out.push(Specification {
                horiz_counts: buf[..horiz].to_vec(),
                vert_counts: buf[horiz..].to_vec(),
            });
        }
        return;
    }
    let slots_left = buf.len() - pos - 1;
    for c in 0..=2usize {
        if c > remaining {
            break;
        }
        if remaining - c > 2 * slots_left {
            continue;
        }
        buf[pos] = c as u8;
        fill_level(buf, pos + 1, remaining - c, out, horiz);
    }
    buf[pos] = 0;
}

impl Iterator for SpecificationIter {
    type Item = Specification;

    fn next(&mut self) -> Option<Specification> {
        loop {
            if let Some(s) = self.level.next() {
                return Some(s);
            }
            self.level = self.next_level()?.into_iter();
        }
    }
}

/// Literal of a strip variable for one red point: a real variable, or the
/// pinned value for points on the strip boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StripLiteral {
    Var(usize),
    Pinned(bool),
}

/// Variables of one count-1 strip: one per distinct interior red coordinate,
/// numbered consecutively from `base` in increasing coordinate order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripVariables {
    pub base: usize,
    pub coords: Vec<Rational>,
}

/// Variable layout of a formula built by [`build_formula`]. Entry `i` is
/// `Some` exactly for strips with count one.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VariableMap {
    pub horizontal: Vec<Option<StripVariables>>,
    pub vertical: Vec<Option<StripVariables>>,
}

impl VariableMap {
    /// `y^i_p`: the line of horizontal strip `i` is below `p`.
    pub fn horizontal_literal(&self, strips: &StripDecomposition, i: usize, p: &Point) -> Option<StripLiteral> {
        literal_of(self.horizontal.get(i)?.as_ref()?, strips.y_slot(&p.y), i, &p.y)
    }

    /// `x^j_p`: the line of vertical strip `j` is left of `p`.
    pub fn vertical_literal(&self, strips: &StripDecomposition, j: usize, p: &Point) -> Option<StripLiteral> {
        literal_of(self.vertical.get(j)?.as_ref()?, strips.x_slot(&p.x), j, &p.x)
    }
}

fn literal_of(vars: &StripVariables, slot: Slot, strip: usize, coord: &Rational) -> Option<StripLiteral> {
    match slot {
        Slot::Boundary(m) if m == strip => Some(StripLiteral::Pinned(false)),
        Slot::Boundary(m) if m == strip + 1 => Some(StripLiteral::Pinned(true)),
        Slot::Interior(j) if j == strip => {
            let idx = vars.coords.binary_search(coord).ok()?;
            Some(StripLiteral::Var(vars.base + idx))
        }
        _ => None,
    }
}

/// Position of a coordinate within one strip.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Place {
    Low,
    Inside,
    High,
}

impl Place {
    fn of(slot: Slot, strip: usize) -> Place {
        match slot {
            Slot::Boundary(m) if m == strip => Place::Low,
            Slot::Boundary(_) => Place::High,
            Slot::Interior(_) => Place::Inside,
        }
    }

    fn class_bit(x: Place, y: Place) -> u16 {
        let idx = |p: Place| match p {
            Place::Low => 0,
            Place::Inside => 1,
            Place::High => 2,
        };
        1 << (3 * idx(x) + idx(y))
    }
}

#[derive(Clone, Debug)]
struct RedInfo {
    xs: Slot,
    ys: Slot,
    // Rank among the distinct interior coordinates of the containing strip.
    xi: usize,
    yi: usize,
}

#[derive(Clone, Debug)]
struct BlueInfo {
    point: Point,
    // Boundary indices: the blue point sits on X(mx) and Y(my).
    mx: usize,
    my: usize,
}

#[derive(Clone, Debug, Default)]
struct CellReds {
    mask: u16,
    reds: Vec<u32>,
}

/// Instance data shared by every specification: classified distinct points
/// and, per (blue point, cell), the red points separable inside that cell.
struct Prepared {
    strips: StripDecomposition,
    reds: Vec<RedInfo>,
    blues: Vec<BlueInfo>,
    h_coords: Vec<Vec<Rational>>,
    v_coords: Vec<Vec<Rational>>,
    // Indexed by (blue * cells) + i * vcount + j.
    cells: Vec<CellReds>,
}

impl Prepared {
    fn new(instance: &Instance, strips: &StripDecomposition) -> Self {
        let strips = strips.clone();
        let hcount = strips.horizontal_strip_count();
        let vcount = strips.vertical_strip_count();

        let mut red_points: Vec<Point> = instance.red().to_vec();
        red_points.sort();
        red_points.dedup();
        let mut blue_points: Vec<Point> = instance.blue().to_vec();
        blue_points.sort();
        blue_points.dedup();

        let mut h_coords = vec![Vec::new(); hcount];
        let mut v_coords = vec![Vec::new(); vcount];
        for p in &red_points {
            if let Slot::Interior(i) = strips.y_slot(&p.y) {
                h_coords[i].push(p.y.clone());
            }
            if let Slot::Interior(j) = strips.x_slot(&p.x) {
                v_coords[j].push(p.x.clone());
            }
        }
        for c in h_coords.iter_mut().chain(v_coords.iter_mut()) {
            c.sort();
            c.dedup();
        }

        let rank = |coords: &[Rational], v: &Rational| coords.binary_search(v).unwrap_or(0);
        let reds: Vec<RedInfo> = red_points
            .into_iter()
            .map(|p| {
                let xs = strips.x_slot(&p.x);
                let ys = strips.y_slot(&p.y);
                let xi = match xs {
                    Slot::Interior(j) => rank(&v_coords[j], &p.x),
                    Slot::Boundary(_) => 0,
                };
                let yi = match ys {
                    Slot::Interior(i) => rank(&h_coords[i], &p.y),
                    Slot::Boundary(_) => 0,
                };
                RedInfo { xs, ys, xi, yi }
            })
            .collect();

        let blues: Vec<BlueInfo> = blue_points
            .into_iter()
            .map(|p| {
                let mx = match strips.x_slot(&p.x) {
                    Slot::Boundary(m) => m,
                    Slot::Interior(_) => unreachable!("blue x is a strip boundary"),
                };
                let my = match strips.y_slot(&p.y) {
                    Slot::Boundary(m) => m,
                    Slot::Interior(_) => unreachable!("blue y is a strip boundary"),
                };
                BlueInfo { point: p, mx, my }
            })
            .collect();

        let ncells = hcount * vcount;
        let mut cells = vec![CellReds::default(); blues.len() * ncells];
        for (ri, r) in reds.iter().enumerate() {
            for i in r.ys.strips() {
                for j in r.xs.strips() {
                    let xp = Place::of(r.xs, j);
                    let yp = Place::of(r.ys, i);
                    for (bi, b) in blues.iter().enumerate() {
                        if separable(xp, b.mx, j) || separable(yp, b.my, i) {
                            let cell = &mut cells[bi * ncells + i * vcount + j];
                            cell.mask |= Place::class_bit(xp, yp);
                            cell.reds.push(ri as u32);
                        }
                    }
                }
            }
        }

        Prepared { strips, reds, blues, h_coords, v_coords, cells }
    }

    fn vcount(&self) -> usize {
        self.strips.vertical_strip_count()
    }

    fn hcount(&self) -> usize {
        self.strips.horizontal_strip_count()
    }
}

/// Can a line strictly inside strip `strip` split a red point placed at
/// `place` from a blue point on boundary `m`?
fn separable(place: Place, m: usize, strip: usize) -> bool {
    if m > strip {
        place != Place::High
    } else {
        place != Place::Low
    }
}

/// Red point at `place` in strip `strip` is already split from a blue point
/// on boundary `m` when the strip holds two lines.
fn split_by_pair(place: Place, m: usize, strip: usize) -> bool {
    match place {
        Place::Inside => true,
        Place::Low => m > strip,
        Place::High => m <= strip,
    }
}

/// Contribution of one strip to a separation clause.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Contribution {
    None,
    Satisfied,
    // Literal on the strip variable: true when the clause wants the
    // variable set.
    Var(bool),
}

fn contribution(count: u8, place: Place, m: usize, strip: usize) -> Contribution {
    if count != 1 {
        return Contribution::None;
    }
    // Blue beyond the upper / right boundary: want the line above / right of
    // the red point, i.e. the variable false.
    let want = m <= strip;
    match place {
        Place::Inside => Contribution::Var(want),
        Place::Low => {
            if want {
                Contribution::None
            } else {
                Contribution::Satisfied
            }
        }
        Place::High => {
            if want {
                Contribution::Satisfied
            } else {
                Contribution::None
            }
        }
    }
}

/// Per-specification context: counts and prefix sums for the "no line in
/// between" conditions.
struct SpecView<'a> {
    spec: &'a Specification,
    h_prefix: Vec<u32>,
    v_prefix: Vec<u32>,
}

impl<'a> SpecView<'a> {
    fn new(spec: &'a Specification) -> Self {
        let prefix = |v: &[u8]| {
            let mut p = vec![0u32; v.len() + 1];
            for (i, &c) in v.iter().enumerate() {
                p[i + 1] = p[i] + c as u32;
            }
            p
        };
        SpecView { h_prefix: prefix(&spec.horiz_counts), v_prefix: prefix(&spec.vert_counts), spec }
    }

    // Lines in strips lo..=hi.
    fn h_lines(&self, lo: usize, hi: usize) -> u32 {
        self.h_prefix[hi + 1] - self.h_prefix[lo]
    }

    fn v_lines(&self, lo: usize, hi: usize) -> u32 {
        self.v_prefix[hi + 1] - self.v_prefix[lo]
    }

    /// Conditions (ii)-(iv) of an interesting cell; (i) is the cell mask.
    fn cell_open(&self, b: &BlueInfo, i: usize, j: usize) -> bool {
        let (ch, cv) = (self.spec.horiz_counts[i], self.spec.vert_counts[j]);
        if ch == 2 && cv == 2 {
            return false;
        }
        if b.mx >= j + 2 && self.v_lines(j + 1, b.mx - 1) > 0 {
            return false;
        }
        if b.mx < j && self.v_lines(b.mx, j - 1) > 0 {
            return false;
        }
        if b.my >= i + 2 && self.h_lines(i + 1, b.my - 1) > 0 {
            return false;
        }
        if b.my < i && self.h_lines(b.my, i - 1) > 0 {
            return false;
        }
        true
    }
}

/// Outcome of one red point against one blue point in one cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PairClause {
    Nothing,
    Empty,
    Lits(Contribution, Contribution),
}

fn pair_clause(spec: &Specification, b: &BlueInfo, i: usize, j: usize, xp: Place, yp: Place) -> PairClause {
    let (ch, cv) = (spec.horiz_counts[i], spec.vert_counts[j]);
    if (ch == 2 && split_by_pair(yp, b.my, i)) || (cv == 2 && split_by_pair(xp, b.mx, j)) {
        return PairClause::Nothing;
    }
    let h = contribution(ch, yp, b.my, i);
    let v = contribution(cv, xp, b.mx, j);
    if h == Contribution::Satisfied || v == Contribution::Satisfied {
        return PairClause::Nothing;
    }
    if h == Contribution::None && v == Contribution::None {
        return PairClause::Empty;
    }
    PairClause::Lits(h, v)
}

const PLACES: [Place; 3] = [Place::Low, Place::Inside, Place::High];

impl Prepared {
    /// Cheap rejection: does the specification force an empty clause? Works
    /// on the per-cell class masks only, never touching individual points.
    fn forces_empty_clause(&self, view: &SpecView<'_>) -> bool {
        let (hc, vc) = (self.hcount(), self.vcount());
        let ncells = hc * vc;
        for (bi, b) in self.blues.iter().enumerate() {
            for i in 0..hc {
                for j in 0..vc {
                    let mask = self.cells[bi * ncells + i * vc + j].mask;
                    if mask == 0 || !view.cell_open(b, i, j) {
                        continue;
                    }
                    for xp in PLACES {
                        for yp in PLACES {
                            if mask & Place::class_bit(xp, yp) != 0
                                && pair_clause(view.spec, b, i, j, xp, yp) == PairClause::Empty
                            {
                                return true;
                            }
                        }
                    }
                }
            }
        }
        false
    }

    fn variable_map(&self, spec: &Specification) -> (VariableMap, usize) {
        let mut next = 0usize;
        let mut alloc = |counts: &[u8], coords: &[Vec<Rational>]| -> Vec<Option<StripVariables>> {
            counts
                .iter()
                .zip(coords)
                .map(|(&c, cs)| {
                    (c == 1).then(|| {
                        let base = next;
                        next += cs.len();
                        StripVariables { base, coords: cs.clone() }
                    })
                })
                .collect()
        };
        let horizontal = alloc(&spec.horiz_counts, &self.h_coords);
        let vertical = alloc(&spec.vert_counts, &self.v_coords);
        (VariableMap { horizontal, vertical }, next)
    }

    fn build(&self, spec: &Specification) -> (TwoSatFormula, VariableMap) {
        let view = SpecView::new(spec);
        let (vars, var_count) = self.variable_map(spec);
        let mut f = TwoSatFormula::new(var_count);

        // Coherence: below the lower coordinate implies below the higher one.
        for sv in vars.horizontal.iter().chain(&vars.vertical).flatten() {
            for t in 1..sv.coords.len() {
                f.push_unchecked(Lit::neg(sv.base + t - 1), Lit::pos(sv.base + t));
            }
        }

        let (hc, vc) = (self.hcount(), self.vcount());
        let ncells = hc * vc;
        for (bi, b) in self.blues.iter().enumerate() {
            for i in 0..hc {
                for j in 0..vc {
                    let cell = &self.cells[bi * ncells + i * vc + j];
                    if cell.mask == 0 || !view.cell_open(b, i, j) {
                        continue;
                    }
                    for &ri in &cell.reds {
                        let r = &self.reds[ri as usize];
                        let (xp, yp) = (Place::of(r.xs, j), Place::of(r.ys, i));
                        match pair_clause(spec, b, i, j, xp, yp) {
                            PairClause::Nothing => {}
                            PairClause::Empty => f.add_empty_clause(),
                            PairClause::Lits(h, v) => {
                                let lit = |c: Contribution, sv: &Option<StripVariables>, idx: usize| match c {
                                    Contribution::Var(positive) => {
                                        let base = sv.as_ref().expect("count-1 strip has variables").base;
                                        Some(Lit { var: base + idx, positive })
                                    }
                                    _ => None,
                                };
                                let lh = lit(h, &vars.horizontal[i], r.yi);
                                let lv = lit(v, &vars.vertical[j], r.xi);
                                match (lh, lv) {
                                    (Some(a), Some(b)) => f.push_unchecked(a, b),
                                    (Some(a), None) | (None, Some(a)) => f.push_unchecked(a, a),
                                    (None, None) => unreachable!("empty clause handled above"),
                                }
                            }
                        }
                    }
                }
            }
        }
        (f, vars)
    }

    fn interesting_cells(&self, spec: &Specification, b: &BlueInfo) -> Vec<(usize, usize)> {
        let view = SpecView::new(spec);
        let bi = self.blues.iter().position(|x| x.point == b.point).expect("blue point of the instance");
        let (hc, vc) = (self.hcount(), self.vcount());
        let mut out = Vec::new();
        for i in 0..hc {
            for j in 0..vc {
                if self.cells[bi * hc * vc + i * vc + j].mask != 0 && view.cell_open(b, i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Decide one specification; `Some` lines when satisfiable.
    fn try_spec(&self, spec: &Specification) -> Option<Vec<Line>> {
        if self.forces_empty_clause(&SpecView::new(spec)) {
            return None;
        }
        let (f, vars) = self.build(spec);
        let assignment = solve(&f)?;
        Some(self.extract(spec, &assignment, &vars))
    }

    fn extract(&self, spec: &Specification, assignment: &Assignment, vars: &VariableMap) -> Vec<Line> {
        let mut lines = Vec::new();
        for (i, &c) in spec.horiz_counts.iter().enumerate() {
            let lo = self.strips.y_bound(i);
            let hi = self.strips.y_bound(i + 1);
            for y in place_strip_lines(c, &lo, &hi, &self.h_coords[i], vars.horizontal[i].as_ref(), assignment) {
                lines.push(Line::horizontal(y));
            }
        }
        for (j, &c) in spec.vert_counts.iter().enumerate() {
            let lo = self.strips.x_bound(j);
            let hi = self.strips.x_bound(j + 1);
            for x in place_strip_lines(c, &lo, &hi, &self.v_coords[j], vars.vertical[j].as_ref(), assignment) {
                lines.push(Line::vertical(x));
            }
        }
        lines
    }
}

/// A coordinate strictly inside `(lo, hi)`: the midpoint when both ends are
/// finite, otherwise one unit beyond the finite end.
fn place_between(lo: &Extended, hi: &Extended) -> Rational {
    match (lo, hi) {
        (Extended::Finite(a), Extended::Finite(b)) => midpoint(a, b),
        (Extended::NegInf, Extended::Finite(b)) => b - rat(1),
        (Extended::Finite(a), Extended::PosInf) => a + rat(1),
        _ => rat(0),
    }
}

fn place_strip_lines(
    count: u8,
    lo: &Extended,
    hi: &Extended,
    interior: &[Rational],
    vars: Option<&StripVariables>,
    assignment: &Assignment,
) -> Vec<Rational> {
    match count {
        0 => Vec::new(),
        1 => {
            let vars = vars.expect("count-1 strip has variables");
            // Variable true: the line is below this coordinate.
            let mut gap_lo = lo.clone();
            let mut gap_hi = hi.clone();
            for (t, c) in vars.coords.iter().enumerate() {
                if assignment.value(vars.base + t) {
                    gap_hi = Extended::Finite(c.clone());
                    break;
                }
                gap_lo = Extended::Finite(c.clone());
            }
            assert!(
                vars.coords
                    .iter()
                    .enumerate()
                    .all(|(t, c)| assignment.value(vars.base + t) == (Extended::Finite(c.clone()) >= gap_hi)),
                "incoherent strip assignment"
            );
            vec![place_between(&gap_lo, &gap_hi)]
        }
        2 => match (interior.first(), interior.last()) {
            (Some(first), Some(last)) => vec![
                place_between(lo, &Extended::Finite(first.clone())),
                place_between(&Extended::Finite(last.clone()), hi),
            ],
            _ => match (lo, hi) {
                (Extended::Finite(a), Extended::Finite(b)) => {
                    let third = (b - a) / rat(3);
                    vec![a + &third, a + &third + &third]
                }
                (Extended::NegInf, Extended::Finite(b)) => vec![b - rat(2), b - rat(1)],
                (Extended::Finite(a), Extended::PosInf) => vec![a + rat(1), a + rat(2)],
                _ => vec![rat(-1), rat(1)],
            },
        },
        _ => unreachable!("strip counts are at most two"),
    }
}

/// The 2-SAT formula deciding whether `spec` can be completed to a feasible
/// solution, together with its variable layout.
pub fn build_formula(
    instance: &Instance,
    strips: &StripDecomposition,
    spec: &Specification,
) -> (TwoSatFormula, VariableMap) {
    Prepared::new(instance, strips).build(spec)
}

/// Cells `(i, j)` that are interesting for the blue point `blue` under
/// `spec`: they hold a red point separable from `blue` inside the cell, not
/// both strips hold two lines, and no line of `spec` lies strictly between
/// `blue` and the cell's column or row.
pub fn interesting_cells(
    instance: &Instance,
    strips: &StripDecomposition,
    spec: &Specification,
    blue: &Point,
) -> Vec<(usize, usize)> {
    let prepared = Prepared::new(instance, strips);
    let b = BlueInfo {
        point: blue.clone(),
        mx: match strips.x_slot(&blue.x) {
            Slot::Boundary(m) => m,
            Slot::Interior(_) => return Vec::new(),
        },
        my: match strips.y_slot(&blue.y) {
            Slot::Boundary(m) => m,
            Slot::Interior(_) => return Vec::new(),
        },
    };
    prepared.interesting_cells(spec, &b)
}

/// Concrete lines realizing `spec` under a satisfying `assignment`.
pub fn extract_lines(
    spec: &Specification,
    assignment: &Assignment,
    variables: &VariableMap,
    strips: &StripDecomposition,
    instance: &Instance,
) -> Vec<Line> {
    Prepared::new(instance, strips).extract(spec, assignment, variables)
}

/// Minimum axis-parallel separation.
///
/// Colors are swapped so that the blue class is the smaller one. Returns
/// [`Error::Inseparable`] when a red point coincides with a blue point.
/// Specifications of equal cost are decided in parallel; the
/// lexicographically first satisfiable one wins, so the output does not
/// depend on the thread count.
pub fn solve_axis_parallel(instance: &Instance) -> Result<Solution> {
    if let Some((red, blue)) = instance.coincident_pair() {
        return Err(Error::Inseparable { red, blue });
    }
    if instance.red().is_empty() || instance.blue().is_empty() {
        return Ok(Solution { lines: Vec::new(), provenance: Provenance::Trivial });
    }
    let work = if instance.red().len() < instance.blue().len() {
        instance.swapped()
    } else {
        instance.clone()
    };
    let strips = StripDecomposition::new(&work);
    let prepared = Prepared::new(&work, &strips);
    let mut specs = enumerate_specifications(&strips);
    while let Some(level) = specs.next_level() {
        let found = level
            .par_iter()
            .with_min_len(64)
            .find_map_first(|spec| prepared.try_spec(spec).map(|lines| (spec.clone(), lines)));
        if let Some((spec, lines)) = found {
            let report = is_feasible(instance, &lines);
            assert!(report.feasible(), "extracted lines for {spec} are infeasible: {report}");
            return Ok(Solution { lines, provenance: Provenance::Specification(spec) });
        }
    }
    unreachable!("two lines per strip always separate a coincidence-free instance")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twosat::brute_force_solve;

    fn solve_cost(red: &[(i64, i64)], blue: &[(i64, i64)]) -> usize {
        let inst = Instance::from_ints(red, blue);
        let sol = solve_axis_parallel(&inst).unwrap();
        assert!(is_feasible(&inst, &sol.lines).feasible());
        sol.cost()
    }

    #[test]
    fn single_pair_uses_one_vertical_line() {
        let inst = Instance::from_ints(&[(0, 0)], &[(2, 0)]);
        let sol = solve_axis_parallel(&inst).unwrap();
        assert_eq!(sol.cost(), 1);
        assert!(is_feasible(&inst, &sol.lines).feasible());
    }

    #[test]
    fn xor_needs_two_lines() {
        assert_eq!(solve_cost(&[(0, 0), (2, 2)], &[(0, 2), (2, 0)]), 2);
    }

    #[test]
    fn collinear_alternating_needs_three() {
        assert_eq!(solve_cost(&[(0, 0), (2, 0)], &[(1, 0), (3, 0)]), 3);
    }

    #[test]
    fn empty_class_is_trivial() {
        assert_eq!(solve_cost(&[(0, 0), (1, 1)], &[]), 0);
        assert_eq!(solve_cost(&[], &[(0, 0)]), 0);
    }

    #[test]
    fn coincident_points_are_inseparable() {
        let inst = Instance::from_ints(&[(0, 0), (1, 1)], &[(1, 1)]);
        assert_eq!(solve_axis_parallel(&inst), Err(Error::Inseparable { red: 1, blue: 0 }));
    }

    #[test]
    fn specification_counts() {
        let one = StripDecomposition { xs: vec![], ys: vec![] };
        assert_eq!(enumerate_specifications(&one).count(), 9);
        let inst = Instance::from_ints(&[], &[(0, 0), (1, 1)]);
        let two = StripDecomposition::new(&inst);
        let specs: Vec<_> = enumerate_specifications(&two).collect();
        assert_eq!(specs.len(), 729);
        assert!(specs.windows(2).all(|w| (w[0].cost(), &w[0]) < (w[1].cost(), &w[1])));
        let three = StripDecomposition::new(&Instance::from_ints(&[], &[(0, 0), (1, 1), (2, 2)]));
        assert_eq!(enumerate_specifications(&three).count(), 6561);
    }

    #[test]
    fn count_two_lines_hug_the_interior() {
        let strips = StripDecomposition { xs: vec![rat(0), rat(10)], ys: vec![] };
        let got = place_strip_lines(
            2,
            &strips.x_bound(1),
            &strips.x_bound(2),
            &[rat(4), rat(6)],
            None,
            &Assignment { values: vec![] },
        );
        assert_eq!(got, vec![rat(2), rat(8)]);
    }

    #[test]
    fn count_one_without_reds_takes_the_midpoint() {
        let vars = StripVariables { base: 0, coords: vec![] };
        let got = place_strip_lines(
            1,
            &Extended::Finite(rat(0)),
            &Extended::Finite(rat(4)),
            &[],
            Some(&vars),
            &Assignment { values: vec![] },
        );
        assert_eq!(got, vec![rat(2)]);
    }

    #[test]
    fn pinned_literals_follow_the_boundary_side() {
        let inst = Instance::from_ints(&[(0, 0), (0, 1), (0, 2)], &[(5, 0), (6, 2)]);
        let strips = StripDecomposition::new(&inst);
        let spec = Specification { horiz_counts: vec![0, 1, 0], vert_counts: vec![0, 0, 0] };
        let (_, vars) = build_formula(&inst, &strips, &spec);
        let lit = |y| vars.horizontal_literal(&strips, 1, &Point::from_ints(0, y));
        assert_eq!(lit(0), Some(StripLiteral::Pinned(false)));
        assert_eq!(lit(1), Some(StripLiteral::Var(0)));
        assert_eq!(lit(2), Some(StripLiteral::Pinned(true)));
    }

    #[test]
    fn equal_coordinates_share_a_variable() {
        let inst = Instance::from_ints(&[(1, 1), (3, 1), (2, 1)], &[(0, 0), (4, 2)]);
        let strips = StripDecomposition::new(&inst);
        let spec = Specification { horiz_counts: vec![0, 1, 0], vert_counts: vec![0, 1, 0] };
        let (f, vars) = build_formula(&inst, &strips, &spec);
        assert_eq!(vars.horizontal[1].as_ref().unwrap().coords, vec![rat(1)]);
        assert_eq!(vars.vertical[1].as_ref().unwrap().coords.len(), 3);
        assert_eq!(f.var_count(), 4);
    }

    #[test]
    fn satisfiable_iff_extracted_lines_separate() {
        let inst = Instance::from_ints(&[(0, 0), (2, 2), (1, 3)], &[(0, 2), (2, 0), (3, 3)]);
        let strips = StripDecomposition::new(&inst);
        let mut sat = 0;
        for spec in enumerate_specifications(&strips).filter(|s| s.cost() <= 4) {
            let (f, vars) = build_formula(&inst, &strips, &spec);
            let fast = solve(&f);
            assert_eq!(fast.is_some(), brute_force_solve(&f).unwrap().is_some());
            if let Some(a) = fast {
                sat += 1;
                let lines = extract_lines(&spec, &a, &vars, &strips, &inst);
                assert_eq!(lines.len(), spec.cost());
                assert!(is_feasible(&inst, &lines).feasible(), "{spec}");
            }
        }
        assert!(sat > 0);
    }

    #[test]
    fn interesting_cells_skip_double_strips() {
        let inst = Instance::from_ints(&[(1, 1)], &[(0, 0)]);
        let strips = StripDecomposition::new(&inst);
        let blue = Point::from_ints(0, 0);
        let mut spec = Specification::zeros(&strips);
        assert_eq!(interesting_cells(&inst, &strips, &spec, &blue), vec![(1, 1)]);
        spec.horiz_counts[1] = 2;
        spec.vert_counts[1] = 2;
        assert!(interesting_cells(&inst, &strips, &spec, &blue).is_empty());
    }
}
