//! 2-CNF satisfiability via strongly connected components of the
//! implication graph, plus an exhaustive truth-table oracle.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A variable with a polarity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Lit { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Lit { var, positive: false }
    }

    pub fn negated(self) -> Self {
        Lit { var: self.var, positive: !self.positive }
    }

    // Node index in the implication graph: 2v for v, 2v+1 for !v.
    fn node(self) -> usize {
        2 * self.var + usize::from(!self.positive)
    }

    pub fn eval(self, values: &[bool]) -> bool {
        values[self.var] == self.positive
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        self.negated()
    }
}

/// A 2-CNF formula. Unit clauses are stored as `(l, l)`; adding an empty
/// clause marks the formula inconsistent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwoSatFormula {
    var_count: usize,
    clauses: Vec<(Lit, Lit)>,
    inconsistent: bool,
}

impl TwoSatFormula {
    pub fn new(var_count: usize) -> Self {
        TwoSatFormula { var_count, clauses: Vec::new(), inconsistent: false }
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn clauses(&self) -> &[(Lit, Lit)] {
        &self.clauses
    }

    pub fn is_inconsistent(&self) -> bool {
        self.inconsistent
    }

    /// Appends a fresh variable and returns its index.
    pub fn new_var(&mut self) -> usize {
        self.var_count += 1;
        self.var_count - 1
    }

    fn check(&self, l: Lit) -> Result<()> {
        if l.var >= self.var_count {
            return Err(Error::VariableOutOfRange { index: l.var, var_count: self.var_count });
        }
        Ok(())
    }

    /// Adds a clause of zero, one or two literals.
    pub fn add_clause(&mut self, lits: &[Lit]) -> Result<()> {
        match *lits {
            [] => self.inconsistent = true,
            [a] => {
                self.check(a)?;
                self.clauses.push((a, a));
            }
            [a, b] => {
                self.check(a)?;
                self.check(b)?;
                self.clauses.push((a, b));
            }
            _ => return Err(Error::TooLarge { what: "clause width", size: lits.len(), limit: 2 }),
        }
        Ok(())
    }

    /// `a -> b`, i.e. `(!a | b)`.
    pub fn add_implication(&mut self, a: Lit, b: Lit) -> Result<()> {
        self.add_clause(&[!a, b])
    }

    pub fn add_empty_clause(&mut self) {
        self.inconsistent = true;
    }

    /// Pushes a two-literal clause without range checks. Callers allocate
    /// variables through [`TwoSatFormula::new_var`].
    pub(crate) fn push_unchecked(&mut self, a: Lit, b: Lit) {
        debug_assert!(a.var < self.var_count && b.var < self.var_count);
        self.clauses.push((a, b));
    }

    pub fn is_satisfied_by(&self, values: &[bool]) -> bool {
        !self.inconsistent
            && values.len() == self.var_count
            && self.clauses.iter().all(|&(a, b)| a.eval(values) || b.eval(values))
    }

    /// DIMACS-style dump: a `p cnf` header, then one 0-terminated clause per
    /// line with 1-based signed variable numbers. Units print one literal and
    /// the empty clause prints as a bare `0`.
    pub fn to_dimacs(&self) -> String {
        let n = self.clauses.len() + usize::from(self.inconsistent);
        let mut out = format!("p cnf {} {}\n", self.var_count, n);
        let num = |l: Lit| {
            let v = l.var as i64 + 1;
            if l.positive {
                v
            } else {
                -v
            }
        };
        for &(a, b) in &self.clauses {
            if a == b {
                let _ = writeln!(out, "{} 0", num(a));
            } else {
                let _ = writeln!(out, "{} {} 0", num(a), num(b));
            }
        }
        if self.inconsistent {
            out.push_str("0\n");
        }
        out
    }

    /// Linear-time solve; see [`solve`].
    pub fn solve(&self) -> Option<Assignment> {
        solve(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub values: Vec<bool>,
}

impl Assignment {
    pub fn value(&self, var: usize) -> bool {
        self.values[var]
    }

    pub fn lit(&self, l: Lit) -> bool {
        l.eval(&self.values)
    }
}

/// Satisfiability in `O(vars + clauses)`.
///
/// Returns `None` iff the formula is inconsistent or some variable shares a
/// strongly connected component with its negation. Otherwise each literal is
/// set true iff its component comes earlier than its negation's in Tarjan
/// completion order (sinks first). The result depends only on the clause
/// order.
pub fn solve(f: &TwoSatFormula) -> Option<Assignment> {
    if f.inconsistent {
        return None;
    }
    let nodes = 2 * f.var_count;
    // CSR adjacency: for (a | b) add !a -> b and !b -> a.
    let mut degree = vec![0u32; nodes + 1];
    for &(a, b) in &f.clauses {
        degree[(!a).node()] += 1;
        degree[(!b).node()] += 1;
    }
    let mut start = vec![0u32; nodes + 1];
    for v in 0..nodes {
        start[v + 1] = start[v] + degree[v];
    }
    let mut fill = start.clone();
    let mut adj = vec![0u32; start[nodes] as usize];
    for &(a, b) in &f.clauses {
        let u = (!a).node();
        adj[fill[u] as usize] = b.node() as u32;
        fill[u] += 1;
        let u = (!b).node();
        adj[fill[u] as usize] = a.node() as u32;
        fill[u] += 1;
    }

    let comp = tarjan(nodes, &start, &adj);
    let mut values = vec![false; f.var_count];
    for (v, value) in values.iter_mut().enumerate() {
        let (t, n) = (comp[2 * v], comp[2 * v + 1]);
        if t == n {
            return None;
        }
        *value = t < n;
    }
    Some(Assignment { values })
}

/// Iterative Tarjan; component ids are assigned in completion order, so a
/// component only reaches components with smaller ids.
fn tarjan(nodes: usize, start: &[u32], adj: &[u32]) -> Vec<u32> {
    const UNSET: u32 = u32::MAX;
    let mut index = vec![UNSET; nodes];
    let mut low = vec![0u32; nodes];
    let mut comp = vec![UNSET; nodes];
    let mut edge = vec![0u32; nodes];
    let mut on_stack = vec![false; nodes];
    let mut stack: Vec<u32> = Vec::new();
    let mut call: Vec<u32> = Vec::new();
    let mut next_index = 0u32;
    let mut next_comp = 0u32;

    for root in 0..nodes {
        if index[root] != UNSET {
            continue;
        }
        call.push(root as u32);
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        edge[root] = start[root];
        stack.push(root as u32);
        on_stack[root] = true;

        while let Some(&u) = call.last() {
            let u = u as usize;
            if edge[u] < start[u + 1] {
                let v = adj[edge[u] as usize] as usize;
                edge[u] += 1;
                if index[v] == UNSET {
                    index[v] = next_index;
                    low[v] = next_index;
                    next_index += 1;
                    edge[v] = start[v];
                    stack.push(v as u32);
                    on_stack[v] = true;
                    call.push(v as u32);
                } else if on_stack[v] {
                    low[u] = low[u].min(index[v]);
                }
            } else {
                call.pop();
                if let Some(&p) = call.last() {
                    let p = p as usize;
                    low[p] = low[p].min(low[u]);
                }
                if low[u] == index[u] {
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow") as usize;
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == u {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}

/// Largest variable count accepted by [`brute_force_solve`].
pub const BRUTE_FORCE_MAX_VARS: usize = 20;

/// Exhaustive truth-table search in increasing bitmask order.
pub fn brute_force_solve(f: &TwoSatFormula) -> Result<Option<Assignment>> {
    if f.var_count > BRUTE_FORCE_MAX_VARS {
        return Err(Error::TooLarge {
            what: "variable count",
            size: f.var_count,
            limit: BRUTE_FORCE_MAX_VARS,
        });
    }
    if f.inconsistent {
        return Ok(None);
    }
    let mut values = vec![false; f.var_count];
    for mask in 0u32..(1u32 << f.var_count) {
        for (i, v) in values.iter_mut().enumerate() {
            *v = mask >> i & 1 == 1;
        }
        if f.is_satisfied_by(&values) {
            return Ok(Some(Assignment { values }));
        }
    }
    Ok(None)
}
