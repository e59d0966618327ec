//! Hardness-reduction generator: structured two-track hitting set instances
//! (S2-THS) are turned into red-blue separation instances that need
//! `6k + 14` lines exactly when the hitting set instance is a YES instance.
//!
//! Only the forward direction is executable here: [`witness_lines`] builds
//! the intended `6k + 14` lines from a hitting set, and the strict
//! separation checker confirms them.

mod gadgets;
mod layout;

pub use gadgets::{
    interval_gadget_points, long_alley, simple_interval_gadget, AlleyOrientation, GadgetPoints, GadgetTag, RedSide,
};
pub use layout::{
    build_rbs_instance, build_rbs_instance_with_budget, witness_lines, BoundingBox, LayoutMetadata, PlacedGadget,
    DEFAULT_BIT_BUDGET,
};

use crate::error::{Error, Result};

/// Largest `t^k` explored by [`solve_s2ths_bruteforce`].
pub const S2THS_SEARCH_LIMIT: u64 = 1_000_000;

/// `(k, t, sigma, sigma_1..sigma_k, S_A, S_B)`.
///
/// Ground set A is `a^1_1 .. a^1_t, a^2_1, .., a^k_t`; element `a^j_i` has
/// A-index `(j - 1) t + i`. Ground set B lists the classes in the order
/// `sigma(1), .., sigma(k)`, and class `j` internally as
/// `b^j_{sigma_j(1)}, .., b^j_{sigma_j(t)}`. All indices are 1-based.
/// Intervals are inclusive index pairs on A and on B respectively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S2THSInstance {
    k: usize,
    t: usize,
    sigma: Vec<usize>,
    sigmas: Vec<Vec<usize>>,
    intervals_a: Vec<(usize, usize)>,
    intervals_b: Vec<(usize, usize)>,
}

fn check_permutation(p: &[usize], n: usize, what: &str) -> Result<()> {
    if p.len() != n {
        return Err(Error::InvalidS2ths(format!("{what} has length {}, expected {n}", p.len())));
    }
    let mut seen = vec![false; n + 1];
    for &v in p {
        if v == 0 || v > n || seen[v] {
            return Err(Error::InvalidS2ths(format!("{what} is not a permutation of 1..={n}")));
        }
        seen[v] = true;
    }
    Ok(())
}

fn check_intervals(list: &[(usize, usize)], n: usize, track: &str) -> Result<()> {
    for &(s, e) in list {
        if s == 0 || s > e || e > n {
            return Err(Error::InvalidS2ths(format!("{track}-interval [{s}, {e}] is not within 1..={n}")));
        }
    }
    Ok(())
}

impl S2THSInstance {
    /// Validates the permutations and intervals, then appends every missing
    /// full-class interval `[a^j_1, a^j_t]` to the A-intervals.
    pub fn new(
        k: usize,
        t: usize,
        sigma: Vec<usize>,
        sigmas: Vec<Vec<usize>>,
        intervals_a: Vec<(usize, usize)>,
        intervals_b: Vec<(usize, usize)>,
    ) -> Result<Self> {
        if k == 0 || t == 0 {
            return Err(Error::InvalidS2ths("k and t must be positive".into()));
        }
        check_permutation(&sigma, k, "sigma")?;
        if sigmas.len() != k {
            return Err(Error::InvalidS2ths(format!("expected {k} class permutations, got {}", sigmas.len())));
        }
        for (j, p) in sigmas.iter().enumerate() {
            check_permutation(p, t, &format!("sigma_{}", j + 1))?;
        }
        check_intervals(&intervals_a, k * t, "A")?;
        check_intervals(&intervals_b, k * t, "B")?;
        let mut intervals_a = intervals_a;
        for j in 1..=k {
            let full = ((j - 1) * t + 1, j * t);
            if !intervals_a.contains(&full) {
                intervals_a.push(full);
            }
        }
        Ok(S2THSInstance { k, t, sigma, sigmas, intervals_a, intervals_b })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn sigmas(&self) -> &[Vec<usize>] {
        &self.sigmas
    }

    /// A-intervals including the appended full-class intervals.
    pub fn intervals_a(&self) -> &[(usize, usize)] {
        &self.intervals_a
    }

    pub fn intervals_b(&self) -> &[(usize, usize)] {
        &self.intervals_b
    }

    /// A-index of `a^class_elem`.
    pub fn a_index(&self, class: usize, elem: usize) -> usize {
        (class - 1) * self.t + elem
    }

    /// Position (1-based) of class `class` among the B classes.
    pub fn class_position(&self, class: usize) -> usize {
        self.sigma.iter().position(|&c| c == class).expect("valid class") + 1
    }

    /// B-index of `b^class_elem = phi(a^class_elem)`.
    pub fn b_index(&self, class: usize, elem: usize) -> usize {
        let within = self.sigmas[class - 1].iter().position(|&e| e == elem).expect("valid element") + 1;
        (self.class_position(class) - 1) * self.t + within
    }

    /// Whether choosing `a^j_{u_j}` for every class hits every interval on
    /// both tracks.
    pub fn is_solution(&self, witness: &[usize]) -> bool {
        if witness.len() != self.k || witness.iter().any(|&u| u == 0 || u > self.t) {
            return false;
        }
        let a: Vec<usize> = witness.iter().enumerate().map(|(j, &u)| self.a_index(j + 1, u)).collect();
        let b: Vec<usize> = witness.iter().enumerate().map(|(j, &u)| self.b_index(j + 1, u)).collect();
        let hits = |list: &[(usize, usize)], chosen: &[usize]| {
            list.iter().all(|&(s, e)| chosen.iter().any(|&x| s <= x && x <= e))
        };
        hits(&self.intervals_a, &a) && hits(&self.intervals_b, &b)
    }
}

/// First witness `(u_1, .., u_k)` in lexicographic order, or `None`.
pub fn solve_s2ths_bruteforce(inst: &S2THSInstance) -> Result<Option<Vec<usize>>> {
    let space = (inst.t as u64).checked_pow(inst.k as u32).unwrap_or(u64::MAX);
    if space > S2THS_SEARCH_LIMIT {
        return Err(Error::BudgetExceeded(S2THS_SEARCH_LIMIT));
    }
    let mut w = vec![1usize; inst.k];
    loop {
        if inst.is_solution(&w) {
            return Ok(Some(w));
        }
        let mut pos = inst.k;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            if w[pos] < inst.t {
                w[pos] += 1;
                break;
            }
            w[pos] = 1;
        }
    }
}
