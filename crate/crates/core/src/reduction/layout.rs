//! Placement of all gadgets, the forced frame lines and the witness lines.

use std::fmt::Write as _;

use num_traits::{One, Signed};

use super::gadgets::{
    long_alley, simple_interval_gadget, AlleyOrientation, GadgetPoints, GadgetTag, RedSide,
};
use super::S2THSInstance;
use crate::error::{Error, Result};
use crate::geometry::{frac, midpoint, rat, Instance, Line, Point, Rational};

/// Default cap on the bit size (numerator plus denominator) of any
/// generated coordinate.
pub const DEFAULT_BIT_BUDGET: u64 = 4096;

/// Tangent of half the slant angle; gives a rotation within 10^-4 degrees
/// of 5 degrees with exact unit norm.
const TAN_HALF: (i64, i64) = (2_183_047, 50_000_000);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundingBox {
    pub min_x: Rational,
    pub min_y: Rational,
    pub max_x: Rational,
    pub max_y: Rational,
}

impl BoundingBox {
    pub fn of<'a>(mut points: impl Iterator<Item = &'a Point>) -> Option<Self> {
        let first = points.next()?;
        let mut b = BoundingBox {
            min_x: first.x.clone(),
            min_y: first.y.clone(),
            max_x: first.x.clone(),
            max_y: first.y.clone(),
        };
        for p in points {
            if p.x < b.min_x {
                b.min_x = p.x.clone();
            }
            if p.x > b.max_x {
                b.max_x = p.x.clone();
            }
            if p.y < b.min_y {
                b.min_y = p.y.clone();
            }
            if p.y > b.max_y {
                b.max_y = p.y.clone();
            }
        }
        Some(b)
    }

    /// Closed boxes share no point.
    pub fn disjoint(&self, other: &BoundingBox) -> bool {
        self.max_x < other.min_x || other.max_x < self.min_x || self.max_y < other.min_y || other.max_y < self.min_y
    }
}

/// A gadget's bounding box and its super-cell `(row, col)` in the 6x6 grid
/// cut out by the forced lines, rows counted from the top. Outer alleys
/// have no super-cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlacedGadget {
    pub name: String,
    pub tag: GadgetTag,
    pub bbox: BoundingBox,
    pub cell: Option<(usize, usize)>,
    pub points: usize,
}

/// Constants, line catalogs and gadget placement of a built instance.
/// Catalog vectors are indexed by `s - 1` for A-index `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayoutMetadata {
    pub k: usize,
    pub t: usize,
    pub z: Rational,
    pub ell: Rational,
    pub v_hat: Rational,
    pub h_hat: Rational,
    pub eps: Rational,
    pub outer_width: Rational,
    pub x0a: Rational,
    pub y0a: Rational,
    pub y1: Rational,
    pub x_h: Rational,
    /// `(cos, sin)` of the slant.
    pub rotation: (Rational, Rational),
    /// Origin of the slanted track-B frame.
    pub b_origin: Point,
    pub hl: Vec<Line>,
    pub vl: Vec<Line>,
    pub vl_prime: Vec<Line>,
    pub hl_prime: Vec<Line>,
    pub sl: Vec<Line>,
    pub sl_prime: Vec<Line>,
    /// `V1..V7` left to right, then `H1..H7` top to bottom.
    pub forced: Vec<Line>,
    pub gadgets: Vec<PlacedGadget>,
    pub point_count: usize,
}

impl LayoutMetadata {
    /// Plain-text dump: scalar constants, then one `catalog` record per
    /// line, then one `gadget` record per placed gadget.
    pub fn to_sidecar(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "k {}\nt {}", self.k, self.t);
        for (name, v) in [
            ("z", &self.z),
            ("ell", &self.ell),
            ("v_hat", &self.v_hat),
            ("h_hat", &self.h_hat),
            ("eps", &self.eps),
            ("outer_width", &self.outer_width),
            ("x0A", &self.x0a),
            ("y0A", &self.y0a),
            ("y1", &self.y1),
            ("x_h", &self.x_h),
            ("cos", &self.rotation.0),
            ("sin", &self.rotation.1),
        ] {
            let _ = writeln!(out, "{name} {v}");
        }
        let _ = writeln!(out, "b_origin {} {}", self.b_origin.x, self.b_origin.y);
        let _ = writeln!(out, "points {}", self.point_count);
        for (name, lines) in [
            ("F", &self.forced),
            ("HL", &self.hl),
            ("VL", &self.vl),
            ("VL'", &self.vl_prime),
            ("HL'", &self.hl_prime),
            ("SL", &self.sl),
            ("SL'", &self.sl_prime),
        ] {
            for (i, line) in lines.iter().enumerate() {
                let _ = writeln!(out, "catalog {name} {} {}", i + 1, crate::io::format_line(line));
            }
        }
        for g in &self.gadgets {
            let cell = match g.cell {
                Some((r, c)) => format!("{r},{c}"),
                None => "outer".into(),
            };
            let b = &g.bbox;
            let _ = writeln!(
                out,
                "gadget {} {} {} {} {} {} {}",
                g.name, cell, g.points, b.min_x, b.min_y, b.max_x, b.max_y
            );
        }
        out
    }

    /// The catalog lines of A-index `s` (1-based) in the order
    /// HL, VL, VL', HL', SL, SL'.
    pub fn lines_for(&self, s: usize) -> [&Line; 6] {
        let i = s - 1;
        [&self.hl[i], &self.vl[i], &self.vl_prime[i], &self.hl_prime[i], &self.sl[i], &self.sl_prime[i]]
    }
}

fn ceil(v: &Rational) -> Rational {
    v.ceil()
}

fn floor(v: &Rational) -> Rational {
    v.floor()
}

fn ri(n: usize) -> Rational {
    rat(n as i64)
}

fn pow(base: &Rational, e: u32) -> Rational {
    let mut r = Rational::one();
    for _ in 0..e {
        r *= base;
    }
    r
}

fn max_rat(a: Rational, b: Rational) -> Rational {
    if a >= b {
        a
    } else {
        b
    }
}

fn bits(v: &Rational) -> u64 {
    v.numer().bits() + v.denom().bits()
}

/// Accumulates gadgets and their placement records.
struct Assembler {
    red: Vec<Point>,
    blue: Vec<Point>,
    placed: Vec<PlacedGadget>,
}

impl Assembler {
    fn add(&mut self, name: &str, cell: Option<(usize, usize)>, g: GadgetPoints) {
        let bbox = BoundingBox::of(g.points()).expect("gadget is nonempty");
        self.placed.push(PlacedGadget { name: name.into(), tag: g.tag, bbox, cell, points: g.red.len() + g.blue.len() });
        self.red.extend(g.red);
        self.blue.extend(g.blue);
    }
}

/// Several alleys recorded as one gadget.
fn alley_group(name: &str, alleys: impl IntoIterator<Item = GadgetPoints>) -> GadgetPoints {
    let mut g = GadgetPoints::new(GadgetTag::Alleys(name.into()));
    for a in alleys {
        g.extend(a);
    }
    g
}

/// [`build_rbs_instance_with_budget`] with [`DEFAULT_BIT_BUDGET`].
pub fn build_rbs_instance(inst: &S2THSInstance) -> Result<(Instance, LayoutMetadata)> {
    build_rbs_instance_with_budget(inst, DEFAULT_BIT_BUDGET)
}

/// Builds the separation instance that needs `6k + 14` lines iff `inst` is
/// a YES instance, with its layout metadata.
///
/// Fails with [`Error::CoordinateOverflow`] when some coordinate needs more
/// than `bit_budget` bits.
pub fn build_rbs_instance_with_budget(inst: &S2THSInstance, bit_budget: u64) -> Result<(Instance, LayoutMetadata)> {
    let (k, t) = (inst.k(), inst.t());
    let kt = k * t;
    let four_t = ri(4 * t);
    let four_kt = ri(4 * kt);

    let ell_n = 100 * (k * k + 1);
    let ell = ri(ell_n);
    let v_hat = rat(100) * (ri(kt) * ri(kt) + rat(1));
    let th = frac(TAN_HALF.0, TAN_HALF.1);
    let denom = rat(1) + &th * &th;
    let cos = (rat(1) - &th * &th) / &denom;
    let sin = (rat(2) * &th) / &denom;
    let h_hat = ceil(&(&v_hat / (&cos * &sin)));
    let z = rat(100) * (pow(&h_hat, 5) + rat(1));
    let eps = rat(1) / pow(&z, 10);
    let outer_width = rat(1) / pow(&ri(kt), 10);

    // Track A frame.
    let x0a = &ell + ri(10 * t + 3);
    let y0a = &z - &ell - ri(10 * t) - &four_kt;
    let x_sigma = &x0a + &four_kt + ri(10 * t);
    let col_x = |pos: usize| &x_sigma + ri(4 * (pos - 1) * t);
    let row_y = |class: usize| &y0a + ri(4 * (class - 1) * t);
    let alley_width = ri(4 * t - 2);

    let mut asm = Assembler { red: Vec::new(), blue: Vec::new(), placed: Vec::new() };

    asm.add(
        "track_A",
        Some((2, 2)),
        simple_interval_gadget(kt, inst.intervals_a(), &x0a, &y0a, GadgetTag::Track("A".into()))?,
    );
    let mut sigma = GadgetPoints::new(GadgetTag::Track("sigma".into()));
    for j in 1..=k {
        let pos = inst.class_position(j);
        sigma.extend(simple_interval_gadget(t, &[(1, t)], &col_x(pos), &row_y(j), GadgetTag::Interval)?);
    }
    asm.add("sigma", Some((2, 3)), sigma);

    let horizontal = |x: &Rational, y: Rational, side| {
        long_alley(&Point::new(x.clone(), y), AlleyOrientation::Horizontal, ell_n, &alley_width, side)
    };
    let vertical = |x: Rational, y: &Rational, side| {
        long_alley(&Point::new(x, y.clone()), AlleyOrientation::Vertical, ell_n, &alley_width, side)
    };
    let west_x = rat(1);
    let east_x = &z - &ell + rat(1);
    let south_y = rat(1);
    let north_y = &z - &ell + rat(1);
    let class_alleys = |first: RedSide, f: &dyn Fn(usize, RedSide) -> GadgetPoints| {
        (1..=k).map(move |j| f(j, RedSide::alternating(first, j - 1))).collect::<Vec<_>>()
    };
    asm.add(
        "A_W_A",
        Some((2, 1)),
        alley_group("A_W_A", class_alleys(RedSide::High, &|j, side| horizontal(&west_x, row_y(j) - rat(3), side))),
    );
    asm.add(
        "A_E_A",
        Some((2, 6)),
        alley_group("A_E_A", class_alleys(RedSide::Low, &|j, side| horizontal(&east_x, row_y(j) - rat(3), side))),
    );
    let a_col = |j: usize| &x0a + ri(4 * (j - 1) * t) - rat(3);
    asm.add(
        "A_N_A",
        Some((1, 2)),
        alley_group("A_N_A", class_alleys(RedSide::Low, &|j, side| vertical(a_col(j), &north_y, side))),
    );
    asm.add(
        "A_N_sigma",
        Some((1, 3)),
        alley_group("A_N_sigma", class_alleys(RedSide::Low, &|c, side| vertical(col_x(c) - rat(3), &north_y, side))),
    );
    asm.add(
        "A_S_A",
        Some((6, 2)),
        alley_group("A_S_A", class_alleys(RedSide::High, &|j, side| vertical(a_col(j), &south_y, side))),
    );
    asm.add(
        "A_S_sigma",
        Some((6, 3)),
        alley_group("A_S_sigma", class_alleys(RedSide::High, &|c, side| vertical(col_x(c) - rat(3), &south_y, side))),
    );

    // Slanted track-B frame: local (u, v) maps to origin + (u cos + v sin,
    // -u sin + v cos), so local verticals lean right going up.
    let gap_b = ceil(&((&ell + &four_kt + rat(10)) * &sin / (&cos - &sin))) + ri(10 * t);
    let span = &four_kt + rat(2) * &gap_b + rat(2) * &ell + rat(20);
    let d_min = rat(4) * &span * ri(8 * t + 4);
    let clearance = rat(2) * (&gap_b + &ell + ri(8 * kt) + rat(50));
    let delta = max_rat(clearance, ceil(&(&d_min * &sin / &cos)) + rat(1));
    let v_eff = max_rat(v_hat.clone(), &gap_b + &ell + ri(8 * kt) + rat(20));
    let third = frac(1, 3);
    let b_origin = Point::new(&x_sigma + &delta + &third, &y0a - &v_eff + &third);
    let place = |p: &Point| -> Point {
        Point::new(
            &b_origin.x + &p.x * &cos + &p.y * &sin,
            &b_origin.y - &p.x * &sin + &p.y * &cos,
        )
    };

    let mut intervals_b = inst.intervals_b().to_vec();
    for c in 1..=k {
        let full = ((c - 1) * t + 1, c * t);
        if !intervals_b.contains(&full) {
            intervals_b.push(full);
        }
    }
    let track_b = simple_interval_gadget(kt, &intervals_b, &rat(0), &rat(0), GadgetTag::Track("B".into()))?
        .map(|p| place(&Point::new(p.x.clone(), -&p.y)));
    asm.add("track_B", Some((3, 4)), track_b);

    let b_top = rat(3);
    let b_bottom = -(&four_kt - rat(5));
    let b_left = rat(-3);
    let b_right = &four_kt - rat(5);
    let ell_m1 = &ell - rat(1);
    let local_vertical = |u: Rational, v: Rational, side| {
        long_alley(&Point::new(u, v), AlleyOrientation::Vertical, ell_n, &alley_width, side).map(place)
    };
    let local_horizontal = |u: Rational, v: Rational, side| {
        long_alley(&Point::new(u, v), AlleyOrientation::Horizontal, ell_n, &alley_width, side).map(place)
    };
    let b_col = |c: usize| ri(4 * (c - 1) * t) - rat(3);
    let b_row = |c: usize| -(ri(4 * c * t) - rat(5));
    asm.add(
        "B_N",
        Some((2, 4)),
        alley_group(
            "B_N",
            class_alleys(RedSide::Low, &|c, side| local_vertical(b_col(c), &b_top + &gap_b, side)),
        ),
    );
    asm.add(
        "B_S",
        Some((4, 4)),
        alley_group(
            "B_S",
            class_alleys(RedSide::High, &|c, side| local_vertical(b_col(c), &b_bottom - &gap_b - &ell_m1, side)),
        ),
    );
    asm.add(
        "B_W",
        Some((3, 3)),
        alley_group(
            "B_W",
            class_alleys(RedSide::Low, &|c, side| local_horizontal(&b_left - &gap_b - &ell_m1, b_row(c), side)),
        ),
    );
    asm.add(
        "B_E",
        Some((3, 5)),
        alley_group(
            "B_E",
            class_alleys(RedSide::High, &|c, side| local_horizontal(&b_right + &gap_b, b_row(c), side)),
        ),
    );

    // Catalog lines and fictitious points, indexed by A-index s - 1.
    let mut hl = Vec::with_capacity(kt);
    let mut vl = Vec::with_capacity(kt);
    let mut vl_prime = Vec::with_capacity(kt);
    let mut p_bottom = Vec::with_capacity(kt);
    let mut p_right = Vec::with_capacity(kt);
    for j in 1..=k {
        let pos = inst.class_position(j);
        for i in 1..=t {
            let s = inst.a_index(j, i);
            let r = inst.b_index(j, i);
            let four_s = ri(4 * s) - rat(6);
            hl.push(Line::horizontal(&y0a + &four_s));
            vl.push(Line::vertical(&x0a + &four_s));
            vl_prime.push(Line::vertical(col_x(pos) + ri(4 * i) - rat(6)));
            let br = ri(4 * r) - rat(6);
            p_bottom.push(place(&Point::new(br.clone(), -four_kt.clone())));
            p_right.push(place(&Point::new(four_kt.clone(), -br)));
        }
    }
    let vl_x = |s: usize| vl_prime[s].at_y(&rat(0)).expect("vertical");

    // Height of the near-vertical gadgets: the SL lines through p and
    // (VL'.x, y1) should lean by the slant angle, so y1 centres the spread
    // of their local-u drift.
    let drift: Vec<Rational> = (0..kt)
        .map(|s| &cos * (vl_x(s) - &b_origin.x) - (&cos * (&p_bottom[s].x - &b_origin.x) - &sin * (&p_bottom[s].y - &b_origin.y)))
        .collect();
    let (lo, hi) = min_max(&drift);
    let y1 = floor(&(&b_origin.y + midpoint(&lo, &hi) / &sin));

    let mut sl = Vec::with_capacity(kt);
    let mut min_tan: Option<Rational> = None;
    for (s, p) in p_bottom.iter().enumerate() {
        let q = Point::new(vl_x(s), y1.clone());
        let line = Line::through(p, &q)?;
        let tan = (&p.x - &q.x) / (&p.y - &q.y);
        debug_assert!(tan.is_positive());
        min_tan = Some(match min_tan {
            Some(m) if m <= tan => m,
            _ => tan,
        });
        sl.push(line);
    }
    let min_tan = min_tan.expect("kt >= 1");
    let h_v = ceil(&(ri(4 * t - 2) / &min_tan)) + rat(1);

    let mut near_v = Vec::with_capacity(k);
    for j in 1..=k {
        let pos = inst.class_position(j);
        let mut g = GadgetPoints::new(GadgetTag::HalfPermutation { vertical: true, class: j });
        for i in 1..=t {
            let s = inst.a_index(j, i) - 1;
            let qx = vl_x(s);
            g.blue.push(Point::new(&qx - &eps, y1.clone()));
            g.blue.push(Point::new(&qx + &eps, y1.clone()));
            let above = &y1 + rat(1);
            let below = &y1 - rat(1);
            g.blue.push(Point::new(sl[s].at_y(&above).expect("slanted") + &eps, above));
            g.blue.push(Point::new(sl[s].at_y(&below).expect("slanted") - &eps, below));
        }
        g.red.push(Point::new(col_x(pos) + &four_t - rat(5), &y1 + &h_v));
        g.red.push(Point::new(col_x(pos) - rat(3), &y1 - &h_v));
        near_v.push((pos, g));
    }
    near_v.sort_by_key(|(pos, _)| *pos);
    for (pos, g) in near_v {
        asm.add(&format!("near_v_{pos}"), Some((4, 3)), g);
    }

    // Identity gadget: class position 1 on top so the SL' fan stays narrow.
    let y_id = &y1 - &h_v - ri(10 * t + 4 * kt + 10);
    let id_row = |pos: usize| &y_id + ri(4 * (k - pos) * t);
    let mut identity = GadgetPoints::new(GadgetTag::Track("id".into()));
    for pos in 1..=k {
        identity.extend(simple_interval_gadget(t, &[(1, t)], &col_x(pos), &id_row(pos), GadgetTag::Interval)?);
    }
    asm.add("identity", Some((5, 3)), identity);
    let by_row = |first: RedSide, f: &dyn Fn(usize, RedSide) -> GadgetPoints| {
        (1..=k).map(move |pos| f(pos, RedSide::alternating(first, k - pos))).collect::<Vec<_>>()
    };
    asm.add(
        "A_W_id",
        Some((5, 1)),
        alley_group("A_W_id", by_row(RedSide::High, &|pos, side| horizontal(&west_x, id_row(pos) - rat(3), side))),
    );
    asm.add(
        "A_E_id",
        Some((5, 6)),
        alley_group("A_E_id", by_row(RedSide::Low, &|pos, side| horizontal(&east_x, id_row(pos) - rat(3), side))),
    );

    let mut hl_prime = Vec::with_capacity(kt);
    for j in 1..=k {
        let pos = inst.class_position(j);
        for i in 1..=t {
            hl_prime.push(Line::horizontal(id_row(pos) + ri(4 * i) - rat(6)));
        }
    }
    let hl_y = |s: usize| hl_prime[s].at_x(&rat(0)).expect("horizontal");

    // Abscissa of the near-horizontal gadgets, chosen like y1.
    let drift_h: Vec<Rational> = (0..kt)
        .map(|s| {
            let pv = &sin * (&p_right[s].x - &b_origin.x) + &cos * (&p_right[s].y - &b_origin.y);
            (pv - &cos * (hl_y(s) - &b_origin.y)) / &sin
        })
        .collect();
    let (lo, hi) = min_max(&drift_h);
    let x_h = floor(&(&b_origin.x + midpoint(&lo, &hi)));

    let mut sl_prime = Vec::with_capacity(kt);
    let mut min_slope: Option<Rational> = None;
    for (s, p) in p_right.iter().enumerate() {
        let q = Point::new(x_h.clone(), hl_y(s));
        let line = Line::through(p, &q)?;
        let slope = ((&q.y - &p.y) / (&q.x - &p.x)).abs();
        min_slope = Some(match min_slope {
            Some(m) if m <= slope => m,
            _ => slope,
        });
        sl_prime.push(line);
    }
    let min_slope = min_slope.expect("kt >= 1");
    let w_h = ceil(&(ri(4 * t - 2) / &min_slope)) + rat(1);

    let mut near_h = Vec::with_capacity(k);
    for j in 1..=k {
        let pos = inst.class_position(j);
        let mut g = GadgetPoints::new(GadgetTag::HalfPermutation { vertical: false, class: j });
        for i in 1..=t {
            let s = inst.a_index(j, i) - 1;
            let qy = hl_y(s);
            g.blue.push(Point::new(x_h.clone(), &qy - &eps));
            g.blue.push(Point::new(x_h.clone(), &qy + &eps));
            let left = &x_h - rat(1);
            let right = &x_h + rat(1);
            g.blue.push(Point::new(left.clone(), sl_prime[s].at_x(&left).expect("slanted") + &eps));
            g.blue.push(Point::new(right.clone(), sl_prime[s].at_x(&right).expect("slanted") - &eps));
        }
        g.red.push(Point::new(&x_h - &w_h, id_row(pos) + &four_t - rat(5)));
        g.red.push(Point::new(&x_h + &w_h, id_row(pos) - rat(3)));
        near_h.push((pos, g));
    }
    near_h.sort_by_key(|(pos, _)| *pos);
    for (pos, g) in near_h {
        asm.add(&format!("near_h_{pos}"), Some((5, 5)), g);
    }

    // Forced frame lines between the bands of super-cell rows and columns.
    let half = frac(1, 2);
    let mut xs = vec![half.clone()];
    for c in 1..6 {
        let left = band(&asm.placed, |(_, col)| col == c, |b| b.max_x.clone(), true);
        let right = band(&asm.placed, |(_, col)| col == c + 1, |b| b.min_x.clone(), false);
        assert!(left < right, "columns {c} and {} overlap", c + 1);
        xs.push(midpoint(&left, &right));
    }
    xs.push(&z + &half);
    let mut ys = vec![&z + &half];
    for r in 1..6 {
        let upper = band(&asm.placed, |(row, _)| row == r, |b| b.min_y.clone(), false);
        let lower = band(&asm.placed, |(row, _)| row == r + 1, |b| b.max_y.clone(), true);
        assert!(lower < upper, "rows {r} and {} overlap", r + 1);
        ys.push(midpoint(&lower, &upper));
    }
    ys.push(half.clone());

    // 28 outer alleys, clockwise from the top-left corner; the run met first
    // when walking clockwise is red on even positions.
    let w_half = &outer_width / rat(2);
    let far = &z + rat(2);
    let near = -ell.clone();
    let mut outer: Vec<(String, Point, AlleyOrientation, RedSide)> = Vec::with_capacity(28);
    for (i, x) in xs.iter().enumerate() {
        outer.push((format!("outer_top_V{}", i + 1), Point::new(x - &w_half, far.clone()), AlleyOrientation::Vertical, RedSide::Low));
    }
    for (i, y) in ys.iter().enumerate() {
        outer.push((format!("outer_right_H{}", i + 1), Point::new(far.clone(), y - &w_half), AlleyOrientation::Horizontal, RedSide::High));
    }
    for (i, x) in xs.iter().enumerate().rev() {
        outer.push((format!("outer_bottom_V{}", i + 1), Point::new(x - &w_half, near.clone()), AlleyOrientation::Vertical, RedSide::High));
    }
    for (i, y) in ys.iter().enumerate().rev() {
        outer.push((format!("outer_left_H{}", i + 1), Point::new(near.clone(), y - &w_half), AlleyOrientation::Horizontal, RedSide::Low));
    }
    for (n, (name, origin, orientation, first_run)) in outer.into_iter().enumerate() {
        let red = RedSide::alternating(first_run, n);
        let mut g = long_alley(&origin, orientation, ell_n, &outer_width, red);
        g.tag = GadgetTag::Alleys(name.clone());
        asm.add(&name, None, g);
    }

    let forced: Vec<Line> = xs
        .into_iter()
        .map(Line::vertical)
        .chain(ys.into_iter().map(Line::horizontal))
        .collect();

    let widest = asm.red.iter().chain(asm.blue.iter()).map(|p| bits(&p.x).max(bits(&p.y))).max().unwrap_or(0);
    if widest > bit_budget {
        return Err(Error::CoordinateOverflow { bits: widest, budget: bit_budget });
    }

    let point_count = asm.red.len() + asm.blue.len();
    let meta = LayoutMetadata {
        k,
        t,
        z,
        ell,
        v_hat,
        h_hat,
        eps,
        outer_width,
        x0a,
        y0a,
        y1,
        x_h,
        rotation: (cos, sin),
        b_origin,
        hl,
        vl,
        vl_prime,
        hl_prime,
        sl,
        sl_prime,
        forced,
        gadgets: asm.placed,
        point_count,
    };
    Ok((Instance::new(asm.red, asm.blue), meta))
}

fn min_max(values: &[Rational]) -> (Rational, Rational) {
    let mut lo = values[0].clone();
    let mut hi = values[0].clone();
    for v in &values[1..] {
        if *v < lo {
            lo = v.clone();
        }
        if *v > hi {
            hi = v.clone();
        }
    }
    (lo, hi)
}

/// Max (or min) of `key` over the boxes of inner gadgets whose super-cell
/// satisfies `member`.
fn band(
    placed: &[PlacedGadget],
    member: impl Fn((usize, usize)) -> bool,
    key: impl Fn(&BoundingBox) -> Rational,
    take_max: bool,
) -> Rational {
    placed
        .iter()
        .filter(|g| g.cell.is_some_and(&member))
        .map(|g| key(&g.bbox))
        .reduce(|a, b| if (a < b) == take_max { b } else { a })
        .expect("every super-cell row and column is populated")
}

/// The `6k + 14` lines of the forward direction: the forced frame plus, for
/// `s_j = (j - 1) t + u_j`, the six catalog lines of every class.
pub fn witness_lines(inst: &S2THSInstance, layout: &LayoutMetadata, witness: &[usize]) -> Result<Vec<Line>> {
    if layout.k != inst.k() || layout.t != inst.t() {
        return Err(Error::InvalidWitness("layout was built for different parameters".into()));
    }
    if !inst.is_solution(witness) {
        return Err(Error::InvalidWitness(format!("{witness:?} does not hit every interval on both tracks")));
    }
    let mut lines = layout.forced.clone();
    for (j, &u) in witness.iter().enumerate() {
        let s = inst.a_index(j + 1, u);
        lines.extend(layout.lines_for(s).into_iter().cloned());
    }
    Ok(lines)
}
