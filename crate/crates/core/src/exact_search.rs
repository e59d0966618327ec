//! Exhaustive oracles: axis-parallel search over discretized candidate lines,
//! and general-slope search over line-realizable bipartitions reduced to
//! minimum set cover. Both are exponential in the number of lines and meant
//! for small instances.

use std::collections::BTreeMap;

use crate::axis_fpt::{Provenance, Solution};
use crate::error::{Error, Result};
use crate::geometry::{abs, is_feasible, midpoint, rat, Instance, Line, Point, Rational};
use crate::hull::hulls_strictly_disjoint;

/// Search nodes allowed before a brute-force solver gives up.
pub const DEFAULT_NODE_BUDGET: u64 = 200_000_000;

/// Largest point count accepted by [`enumerate_separable_bipartitions`].
pub const MAX_BIPARTITION_POINTS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Solution),
    /// No solution with at most this many lines.
    NoneWithin(usize),
}

impl SearchOutcome {
    pub fn solution(&self) -> Option<&Solution> {
        match self {
            SearchOutcome::Found(s) => Some(s),
            SearchOutcome::NoneWithin(_) => None,
        }
    }
}

/// Midpoints between consecutive distinct coordinates of all points.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CandidateSet {
    pub vertical_offsets: Vec<Rational>,
    pub horizontal_offsets: Vec<Rational>,
}

impl CandidateSet {
    pub fn lines(&self) -> Vec<Line> {
        self.vertical_offsets
            .iter()
            .map(|x| Line::vertical(x.clone()))
            .chain(self.horizontal_offsets.iter().map(|y| Line::horizontal(y.clone())))
            .collect()
    }
}

fn gap_midpoints(mut coords: Vec<Rational>) -> Vec<Rational> {
    coords.sort();
    coords.dedup();
    coords.windows(2).map(|w| midpoint(&w[0], &w[1])).collect()
}

pub fn axis_candidates(instance: &Instance) -> CandidateSet {
    let points = || instance.red().iter().chain(instance.blue());
    CandidateSet {
        vertical_offsets: gap_midpoints(points().map(|p| p.x.clone()).collect()),
        horizontal_offsets: gap_midpoints(points().map(|p| p.y.clone()).collect()),
    }
}

/// Fixed-width bitset over (red, blue) pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct PairSet(Vec<u64>);

impl PairSet {
    fn empty(bits: usize) -> Self {
        PairSet(vec![0; bits.div_ceil(64)])
    }

    fn full(bits: usize) -> Self {
        let mut s = Self::empty(bits);
        for i in 0..bits {
            s.set(i);
        }
        s
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn union_with(&mut self, other: &PairSet) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    fn is_subset_of(&self, other: &PairSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn first_missing(&self, full: &PairSet) -> Option<usize> {
        self.0
            .iter()
            .zip(&full.0)
            .enumerate()
            .find(|(_, (a, f))| *f & !*a != 0)
            .map(|(w, (a, f))| w * 64 + (f & !a).trailing_zeros() as usize)
    }
}

/// Pairs split by `line`, indexed `red * |B| + blue`.
fn split_pairs(instance: &Instance, line: &Line) -> PairSet {
    let nb = instance.blue().len();
    let blue_sides: Vec<_> = instance.blue().iter().map(|b| line.side_of(b)).collect();
    let mut s = PairSet::empty(instance.red().len() * nb);
    for (ri, r) in instance.red().iter().enumerate() {
        let side = line.side_of(r);
        for (bi, bs) in blue_sides.iter().enumerate() {
            if side != *bs {
                s.set(ri * nb + bi);
            }
        }
    }
    s
}

struct Budget {
    left: u64,
    limit: u64,
}

impl Budget {
    fn tick(&mut self) -> Result<()> {
        if self.left == 0 {
            return Err(Error::BudgetExceeded(self.limit));
        }
        self.left -= 1;
        Ok(())
    }
}

pub fn solve_axis_bruteforce(instance: &Instance, k_max: usize) -> Result<SearchOutcome> {
    solve_axis_bruteforce_with_budget(instance, k_max, DEFAULT_NODE_BUDGET)
}

/// Minimum subset of [`axis_candidates`] separating the instance, by
/// iterative deepening on the total count and, within a count, on the
/// number of vertical lines.
pub fn solve_axis_bruteforce_with_budget(instance: &Instance, k_max: usize, budget: u64) -> Result<SearchOutcome> {
    if instance.is_inseparable() {
        return Ok(SearchOutcome::NoneWithin(k_max));
    }
    let cands = axis_candidates(instance);
    let vlines: Vec<Line> = cands.vertical_offsets.iter().map(|x| Line::vertical(x.clone())).collect();
    let hlines: Vec<Line> = cands.horizontal_offsets.iter().map(|y| Line::horizontal(y.clone())).collect();
    let vsets: Vec<PairSet> = vlines.iter().map(|l| split_pairs(instance, l)).collect();
    let hsets: Vec<PairSet> = hlines.iter().map(|l| split_pairs(instance, l)).collect();
    let bits = instance.red().len() * instance.blue().len();
    let full = PairSet::full(bits);
    let mut budget = Budget { left: budget, limit: budget };

    for k in 0..=k_max {
        for kv in 0..=k.min(vlines.len()) {
            let kh = k - kv;
            if kh > hlines.len() {
                continue;
            }
            let mut chosen_v = Vec::with_capacity(kv);
            let mut chosen_h = Vec::with_capacity(kh);
            let found = choose(
                &vsets,
                kv,
                0,
                PairSet::empty(bits),
                &mut chosen_v,
                &mut budget,
                &mut |covered, budget| {
                    choose(&hsets, kh, 0, covered, &mut chosen_h, budget, &mut |c, _| Ok(c == full))
                },
            )?;
            if found {
                let lines: Vec<Line> = chosen_v
                    .iter()
                    .map(|&i| vlines[i].clone())
                    .chain(chosen_h.iter().map(|&i| hlines[i].clone()))
                    .collect();
                assert!(is_feasible(instance, &lines).feasible());
                return Ok(SearchOutcome::Found(Solution { lines, provenance: Provenance::AxisBruteforce }));
            }
        }
    }
    Ok(SearchOutcome::NoneWithin(k_max))
}

/// Depth-first choice of `left` more sets with indices `>= from`; calls
/// `leaf` on the accumulated union. On success `chosen` holds the picks.
fn choose(
    sets: &[PairSet],
    left: usize,
    from: usize,
    covered: PairSet,
    chosen: &mut Vec<usize>,
    budget: &mut Budget,
    leaf: &mut dyn FnMut(PairSet, &mut Budget) -> Result<bool>,
) -> Result<bool> {
    budget.tick()?;
    if left == 0 {
        return leaf(covered, budget);
    }
    for i in from..=sets.len().saturating_sub(left) {
        if sets.len() < left {
            break;
        }
        let mut next = covered.clone();
        next.union_with(&sets[i]);
        chosen.push(i);
        if choose(sets, left - 1, i + 1, next, chosen, budget, leaf)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

/// A subset of the points lying strictly on one side of `realizing_line`,
/// the rest strictly on the other. A set and its complement share the line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    /// Sorted point indices.
    pub left_set: Vec<usize>,
    pub realizing_line: Line,
}

impl Bipartition {
    pub fn contains(&self, index: usize) -> bool {
        self.left_set.binary_search(&index).is_ok()
    }
}

/// Every bipartition of `points` realizable by a line avoiding all points,
/// sorted by the bitmask of `left_set`. Both a set and its complement are
/// listed. Duplicate points always land on the same side.
pub fn enumerate_separable_bipartitions(points: &[Point]) -> Result<Vec<Bipartition>> {
    if points.len() > MAX_BIPARTITION_POINTS {
        return Err(Error::TooLarge {
            what: "bipartition point count",
            size: points.len(),
            limit: MAX_BIPARTITION_POINTS,
        });
    }
    let mut found: BTreeMap<u64, Line> = BTreeMap::new();
    let all = if points.len() == 64 { u64::MAX } else { (1u64 << points.len()) - 1 };
    let mut record = |line: Line| {
        let mask = points
            .iter()
            .enumerate()
            .filter(|(_, p)| line.side_of(p).is_gt())
            .fold(0u64, |m, (i, _)| m | 1 << i);
        found.entry(mask).or_insert_with(|| line.clone());
        found.entry(all & !mask).or_insert(line);
    };

    // Everything on one side.
    let top = points.iter().map(|p| p.y.clone()).max().unwrap_or_else(|| rat(0));
    record(Line::horizontal(top + rat(1)));

    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            let Ok(base) = Line::through(p, q) else { continue };
            for line in perturbations(points, &base, p, q) {
                record(line);
            }
        }
    }

    Ok(found
        .into_iter()
        .map(|(mask, realizing_line)| Bipartition {
            left_set: (0..points.len()).filter(|i| mask >> i & 1 == 1).collect(),
            realizing_line,
        })
        .collect())
}

/// Translations of `base` by a small amount each way, and rotations about
/// the midpoint of `p` and `q` by a small tilt each way. The amounts are
/// half the smallest clearance, so no off-line point changes side.
fn perturbations(points: &[Point], base: &Line, p: &Point, q: &Point) -> Vec<Line> {
    let (a, b, c) = (base.a(), base.b(), base.c());
    let values: Vec<Rational> = points.iter().map(|r| base.eval(r)).collect();
    let zero = rat(0);
    let two = rat(2);

    let delta = values
        .iter()
        .filter(|v| **v != zero)
        .map(abs)
        .min()
        .map_or_else(|| rat(1), |m| m / &two);
    let mut out = Vec::with_capacity(4);
    for shift in [&delta, &-delta.clone()] {
        out.push(Line::general(a.clone(), b.clone(), c + shift).expect("base normal is nonzero"));
    }

    // Signed position along the base line, relative to the midpoint.
    let m = Point::new(midpoint(&p.x, &q.x), midpoint(&p.y, &q.y));
    let along = |r: &Point| a * (&r.y - &m.y) - b * (&r.x - &m.x);
    if points.iter().zip(&values).any(|(r, v)| *v == zero && along(r) == zero) {
        return out;
    }
    let tau = points
        .iter()
        .zip(&values)
        .filter(|(_, v)| **v != zero)
        .filter_map(|(r, v)| {
            let h = along(r);
            (h != zero).then(|| abs(v) / abs(&h))
        })
        .min()
        .map_or_else(|| rat(1), |m| m / &two);
    for t in [&tau, &-tau.clone()] {
        let na = a - t * b;
        let nb = b + t * a;
        let nc = &na * &m.x + &nb * &m.y;
        out.push(Line::general(na, nb, nc).expect("rotated normal is nonzero"));
    }
    out
}

pub fn solve_general_bruteforce(instance: &Instance, k_max: usize) -> Result<SearchOutcome> {
    solve_general_bruteforce_with_budget(instance, k_max, DEFAULT_NODE_BUDGET)
}

/// Minimum set cover of the (red, blue) pairs by line-realizable
/// bipartitions, by iterative deepening with dominance pruning.
pub fn solve_general_bruteforce_with_budget(
    instance: &Instance,
    k_max: usize,
    budget: u64,
) -> Result<SearchOutcome> {
    if instance.is_inseparable() {
        return Ok(SearchOutcome::NoneWithin(k_max));
    }
    let points: Vec<Point> = instance.red().iter().chain(instance.blue()).cloned().collect();
    let nr = instance.red().len();
    let nb = instance.blue().len();
    let bits = nr * nb;
    let full = PairSet::full(bits);

    let mut covers: Vec<(PairSet, Line)> = Vec::new();
    for bp in enumerate_separable_bipartitions(&points)? {
        let mut s = PairSet::empty(bits);
        for ri in 0..nr {
            let side = bp.contains(ri);
            for bi in 0..nb {
                if side != bp.contains(nr + bi) {
                    s.set(ri * nb + bi);
                }
            }
        }
        covers.push((s, bp.realizing_line));
    }
    let covers = prune_dominated(covers);

    let mut budget = Budget { left: budget, limit: budget };
    let mut chosen = Vec::new();
    for k in 0..=k_max {
        if cover_dfs(&covers, &full, PairSet::empty(bits), k, &mut chosen, &mut budget)? {
            let lines: Vec<Line> = chosen.iter().map(|&i| covers[i].1.clone()).collect();
            assert!(is_feasible(instance, &lines).feasible());
            return Ok(SearchOutcome::Found(Solution { lines, provenance: Provenance::GeneralBruteforce }));
        }
    }
    Ok(SearchOutcome::NoneWithin(k_max))
}

/// Drops covers contained in another; of equal covers the first survives.
fn prune_dominated(covers: Vec<(PairSet, Line)>) -> Vec<(PairSet, Line)> {
    let mut keep = vec![true; covers.len()];
    for i in 0..covers.len() {
        for j in 0..covers.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (si, sj) = (&covers[i].0, &covers[j].0);
            if si.is_subset_of(sj) && (si != sj || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    covers.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect()
}

fn cover_dfs(
    covers: &[(PairSet, Line)],
    full: &PairSet,
    covered: PairSet,
    left: usize,
    chosen: &mut Vec<usize>,
    budget: &mut Budget,
) -> Result<bool> {
    budget.tick()?;
    let Some(missing) = covered.first_missing(full) else {
        return Ok(true);
    };
    if left == 0 {
        return Ok(false);
    }
    for (i, (s, _)) in covers.iter().enumerate() {
        if !s.get(missing) {
            continue;
        }
        let mut next = covered.clone();
        next.union_with(s);
        chosen.push(i);
        if cover_dfs(covers, full, next, left - 1, chosen, budget)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

/// Whether a single line separates the instance: the two convex hulls are
/// strictly disjoint.
pub fn separable_with_one_line(instance: &Instance) -> bool {
    hulls_strictly_disjoint(instance.red(), instance.blue())
}
