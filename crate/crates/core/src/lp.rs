//! Exact rational linear programming in standard form
//! `min c·x  s.t.  A·x = b,  x ≥ 0`.
//!
//! The solver is a two-phase dense tableau simplex with Bland's rule for both the
//! entering and leaving choice, so it cannot cycle and its pivot sequence depends
//! only on the input. Optimal solutions come with a dual vector `y` satisfying
//! `c - Aᵀy ≥ 0` and `b·y = c·x` exactly.

use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("malformed program: {0}")]
    MalformedProgram(String),
}

impl LpError {
    pub fn name(&self) -> &'static str {
        "MalformedProgram"
    }
}

/// A sparse constraint row: `(column, coefficient)` pairs.
pub type SparseRow = Vec<(usize, Rational)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    objective: Vec<Rational>,
    rows: Vec<SparseRow>,
    rhs: Vec<Rational>,
}

impl LinearProgram {
    /// Repeated columns within a row are summed and zero entries dropped; entries
    /// come out sorted by column.
    pub fn new(objective: Vec<Rational>, rows: Vec<SparseRow>, rhs: Vec<Rational>) -> Result<Self, LpError> {
        if rows.len() != rhs.len() {
            return Err(LpError::MalformedProgram(format!(
                "{} constraint rows but {} right-hand sides",
                rows.len(),
                rhs.len()
            )));
        }
        let n = objective.len();
        let mut clean = Vec::with_capacity(rows.len());
        for (i, row) in rows.into_iter().enumerate() {
            let mut dense: std::collections::BTreeMap<usize, Rational> = Default::default();
            for (j, a) in row {
                if j >= n {
                    return Err(LpError::MalformedProgram(format!(
                        "row {i} references column {j} but there are {n} variables"
                    )));
                }
                *dense.entry(j).or_insert_with(Rational::zero) += a;
            }
            clean.push(dense.into_iter().filter(|(_, a)| !a.is_zero()).collect());
        }
        Ok(LinearProgram { objective, rows: clean, rhs })
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        dot(&self.objective, x)
    }

    /// `b·y`.
    pub fn dual_value(&self, y: &[Rational]) -> Rational {
        dot(&self.rhs, y)
    }

    pub fn is_primal_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && x.iter().all(|v| !v.is_negative())
            && self.rows.iter().zip(&self.rhs).all(|(row, b)| {
                row.iter().map(|(j, a)| a * &x[*j]).sum::<Rational>() == *b
            })
    }

    /// Reduced costs `c - Aᵀy` are all nonnegative.
    pub fn is_dual_feasible(&self, y: &[Rational]) -> bool {
        if y.len() != self.num_rows() {
            return false;
        }
        let mut reduced = self.objective.clone();
        for (row, yi) in self.rows.iter().zip(y) {
            for (j, a) in row {
                reduced[*j] -= a * yi;
            }
        }
        reduced.iter().all(|r| !r.is_negative())
    }

    /// Plain-text dump: a `min` line, the objective, then one dense `A|b:` line per row.
    pub fn dump(&self) -> String {
        let mut out = String::from("min\nc:");
        for c in &self.objective {
            let _ = write!(out, " {}", rational::to_string(c));
        }
        out.push('\n');
        for (row, b) in self.rows.iter().zip(&self.rhs) {
            let mut dense = vec![Rational::zero(); self.num_vars()];
            for (j, a) in row {
                dense[*j] = a.clone();
            }
            out.push_str("A|b:");
            for a in &dense {
                let _ = write!(out, " {}", rational::to_string(a));
            }
            let _ = writeln!(out, " | {}", rational::to_string(b));
        }
        out
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Result of [`solve`]. `value`, `primal` and `dual` are meaningful only when the
/// status is `Optimal`; otherwise the value is zero and the vectors are empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: Rational,
    pub primal: Vec<Rational>,
    pub dual: Vec<Rational>,
    pub pivots: usize,
}

struct Tableau {
    n: usize,
    /// `m × (n + m)`: original columns, then one artificial column per row.
    body: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    pivots: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, q: usize, cost_row: &mut [Rational]) {
        let inv = self.body[r][q].recip();
        for x in self.body[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let pivot_row = std::mem::take(&mut self.body[r]);
        let pivot_rhs = self.rhs[r].clone();
        let support: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
        for i in 0..self.body.len() {
            if i == r || self.body[i][q].is_zero() {
                continue;
            }
            let f = self.body[i][q].clone();
            let line = &mut self.body[i];
            for &j in &support {
                line[j] -= &f * &pivot_row[j];
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        if !cost_row[q].is_zero() {
            let f = cost_row[q].clone();
            for &j in &support {
                cost_row[j] -= &f * &pivot_row[j];
            }
        }
        self.body[r] = pivot_row;
        self.basis[r] = q;
        self.pivots += 1;
    }

    /// Reduced costs `c_j - c_B·T_j` for a cost vector over all `n + m` columns.
    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut red = cost.to_vec();
        for (r, row) in self.body.iter().enumerate() {
            let cb = &cost[self.basis[r]];
            if cb.is_zero() {
                continue;
            }
            for (x, a) in red.iter_mut().zip(row) {
                if !a.is_zero() {
                    *x -= cb * a;
                }
            }
        }
        red
    }

    /// Runs Bland-rule simplex iterations against `cost_row`, allowing only original
    /// columns to enter. Returns `false` if the objective is unbounded below.
    fn optimize(&mut self, cost_row: &mut [Rational]) -> bool {
        loop {
            let Some(q) = (0..self.n).find(|&j| cost_row[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.body.len() {
                let a = &self.body[r][q];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / a;
                let better = match &leave {
                    None => true,
                    Some((best, best_ratio)) => {
                        ratio < *best_ratio || (ratio == *best_ratio && self.basis[r] < self.basis[*best])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, q, cost_row);
        }
    }
}

/// Solves `lp` exactly. Deterministic: identical programs give identical solutions.
pub fn solve(lp: &LinearProgram) -> LpSolution {
    let n = lp.num_vars();
    let m = lp.num_rows();

    // Row scaling d_i makes the right-hand side nonnegative and, where a column is a
    // multiple of e_i, turns it into e_i so it can start in the basis.
    let mut scale: Vec<Rational> =
        lp.rhs.iter().map(|b| if b.is_negative() { -Rational::one() } else { Rational::one() }).collect();
    let mut basis: Vec<Option<usize>> = vec![None; m];
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, row) in lp.rows.iter().enumerate() {
        for (j, _) in row {
            col_rows[*j].push(i);
        }
    }
    for (j, rows) in col_rows.iter().enumerate() {
        if let [i] = rows.as_slice() {
            let i = *i;
            if basis[i].is_some() {
                continue;
            }
            let a = &lp.rows[i].iter().find(|(c, _)| *c == j).expect("column indexed").1;
            if (&lp.rhs[i] / a).is_negative() {
                continue;
            }
            scale[i] = a.recip();
            basis[i] = Some(j);
        }
    }

    let mut body = vec![vec![Rational::zero(); n + m]; m];
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        for (j, a) in &lp.rows[i] {
            body[i][*j] = a * &scale[i];
        }
        body[i][n + i] = Rational::one();
        rhs.push(&lp.rhs[i] * &scale[i]);
    }
    let mut tab = Tableau {
        n,
        body,
        rhs,
        basis: basis.iter().enumerate().map(|(i, b)| b.unwrap_or(n + i)).collect(),
        pivots: 0,
    };

    let infeasible = |pivots| LpSolution {
        status: LpStatus::Infeasible,
        value: Rational::zero(),
        primal: Vec::new(),
        dual: Vec::new(),
        pivots,
    };

    // Phase one: minimise the sum of the artificials that start in the basis.
    if basis.iter().any(Option::is_none) {
        let mut cost = vec![Rational::zero(); n + m];
        for (i, b) in basis.iter().enumerate() {
            if b.is_none() {
                cost[n + i] = Rational::one();
            }
        }
        let mut cost_row = tab.reduced_costs(&cost);
        tab.optimize(&mut cost_row);
        let residual: Rational = (0..m).filter(|&r| tab.basis[r] >= n).map(|r| tab.rhs[r].clone()).sum();
        if residual.is_positive() {
            return infeasible(tab.pivots);
        }
        // Drive zero-level artificials out; rows where that is impossible are redundant.
        for r in 0..m {
            if tab.basis[r] < n {
                continue;
            }
            if let Some(q) = (0..n).find(|&j| !tab.body[r][j].is_zero()) {
                let mut scratch = vec![Rational::zero(); n + m];
                tab.pivot(r, q, &mut scratch);
            }
        }
    }

    let mut cost = lp.objective.clone();
    cost.resize(n + m, Rational::zero());
    let mut cost_row = tab.reduced_costs(&cost);
    if !tab.optimize(&mut cost_row) {
        return LpSolution {
            status: LpStatus::Unbounded,
            value: Rational::zero(),
            primal: Vec::new(),
            dual: Vec::new(),
            pivots: tab.pivots,
        };
    }

    let mut primal = vec![Rational::zero(); n];
    for (r, &j) in tab.basis.iter().enumerate() {
        if j < n {
            primal[j] = tab.rhs[r].clone();
        }
    }
    // The artificial block holds B⁻¹ for the scaled system.
    let dual: Vec<Rational> = (0..m)
        .map(|i| {
            let y: Rational = (0..m)
                .filter(|&r| !cost[tab.basis[r]].is_zero() && !tab.body[r][n + i].is_zero())
                .map(|r| &cost[tab.basis[r]] * &tab.body[r][n + i])
                .sum();
            y * &scale[i]
        })
        .collect();
    LpSolution { status: LpStatus::Optimal, value: lp.objective_value(&primal), primal, dual, pivots: tab.pivots }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn lp(c: &[i64], a: &[&[i64]], b: &[i64]) -> LinearProgram {
        LinearProgram::new(
            c.iter().map(|v| int(*v)).collect(),
            a.iter()
                .map(|row| row.iter().enumerate().map(|(j, v)| (j, int(*v))).collect())
                .collect(),
            b.iter().map(|v| int(*v)).collect(),
        )
        .unwrap()
    }

    fn assert_certified(p: &LinearProgram, s: &LpSolution) {
        assert_eq!(s.status, LpStatus::Optimal);
        assert!(p.is_primal_feasible(&s.primal));
        assert!(p.is_dual_feasible(&s.dual));
        assert_eq!(p.objective_value(&s.primal), s.value);
        assert_eq!(p.dual_value(&s.dual), s.value);
    }

    #[test]
    fn single_equality() {
        let p = lp(&[1], &[&[1]], &[1]);
        let s = solve(&p);
        assert_certified(&p, &s);
        assert_eq!(s.value, int(1));
    }

    #[test]
    fn negative_rhs_is_infeasible() {
        let s = solve(&lp(&[1], &[&[1]], &[-1]));
        assert_eq!(s.status, LpStatus::Infeasible);
    }

    #[test]
    fn two_vertex_program() {
        // vertices (2,0) with value 2 and (0,1) with value 1
        let p = lp(&[1, 1], &[&[1, 2]], &[2]);
        let s = solve(&p);
        assert_certified(&p, &s);
        assert_eq!(s.value, int(1));
        assert_eq!(s.primal, vec![int(0), int(1)]);
    }

    #[test]
    fn unbounded_program() {
        // x - y = 0, minimise -x
        let s = solve(&lp(&[-1, 0], &[&[1, -1]], &[0]));
        assert_eq!(s.status, LpStatus::Unbounded);
    }

    #[test]
    fn redundant_rows_keep_dual_exact() {
        let p = lp(&[2, 3, 0], &[&[1, 1, 1], &[2, 2, 2], &[1, 0, 0]], &[4, 8, 1]);
        let s = solve(&p);
        assert_certified(&p, &s);
        assert_eq!(s.value, int(2));
    }

    #[test]
    fn fractional_optimum() {
        // min -x - y  s.t. 2x + y + s1 = 4, x + 3y + s2 = 6 → (6/5, 8/5)
        let p = lp(&[-1, -1, 0, 0], &[&[2, 1, 1, 0], &[1, 3, 0, 1]], &[4, 6]);
        let s = solve(&p);
        assert_certified(&p, &s);
        assert_eq!(s.value, frac(-14, 5));
        assert_eq!(&s.primal[..2], &[frac(6, 5), frac(8, 5)]);
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example, which cycles under the textbook largest-coefficient rule.
        let q = |n, d| frac(n, d);
        let p = LinearProgram::new(
            vec![q(-3, 4), int(150), q(-1, 50), int(6), int(0), int(0), int(0)],
            vec![
                vec![(0, q(1, 4)), (1, int(-60)), (2, q(-1, 25)), (3, int(9)), (4, int(1))],
                vec![(0, q(1, 2)), (1, int(-90)), (2, q(-1, 50)), (3, int(3)), (5, int(1))],
                vec![(2, int(1)), (6, int(1))],
            ],
            vec![int(0), int(0), int(1)],
        )
        .unwrap();
        let s = solve(&p);
        assert_certified(&p, &s);
        assert_eq!(s.value, frac(-1, 20));
    }

    #[test]
    fn malformed_programs() {
        assert!(LinearProgram::new(vec![int(1)], vec![vec![(3, int(1))]], vec![int(1)]).is_err());
        assert!(LinearProgram::new(vec![int(1)], vec![vec![(0, int(1))]], vec![]).is_err());
    }

    #[test]
    fn dump_format() {
        let p = lp(&[1, 1], &[&[1, 2]], &[2]);
        assert_eq!(p.dump(), "min\nc: 1/1 1/1\nA|b: 1/1 2/1 | 2/1\n");
    }

    #[test]
    fn empty_program() {
        let p = LinearProgram::new(vec![], vec![], vec![]).unwrap();
        let s = solve(&p);
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.value, int(0));
    }
}
