//! Dense exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![vec![Rational::zero(); cols]; rows] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, q: Rational) {
        self.data[r][c] = q;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c][r] = self.data[r][c].clone();
            }
        }
        t
    }

    /// Reduced row echelon form in place; returns the pivot column of each nonzero row.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.data[r][col].is_zero()) else {
                continue;
            };
            self.data.swap(row, p);
            let inv = self.data[row][col].recip();
            for x in self.data[row].iter_mut().skip(col) {
                *x *= &inv;
            }
            let pivot_row = self.data[row].clone();
            for (r, line) in self.data.iter_mut().enumerate() {
                if r == row || line[col].is_zero() {
                    continue;
                }
                let f = line[col].clone();
                for (x, p) in line.iter_mut().zip(&pivot_row).skip(col) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : Mx = 0}`, one vector per free column, in column order.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![Rational::zero(); self.cols];
                x[free] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    x[p] = -m.data[r][free].clone();
                }
                x
            })
            .collect()
    }

    /// Some `x` with `Mx = rhs` (free variables set to zero), or `None` if inconsistent.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            aug.data[r][..self.cols].clone_from_slice(&self.data[r]);
            aug.data[r][self.cols] = rhs[r].clone();
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.data[r][self.cols].clone();
        }
        Some(x)
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                row.iter().zip(x).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum()
            })
            .collect()
    }
}

/// A growing subspace kept in reduced echelon form, used to test membership of
/// new vectors and extend bases one vector at a time.
#[derive(Debug, Clone, Default)]
pub struct EchelonSpan {
    /// (pivot column, row normalised to 1 at the pivot)
    rows: Vec<(usize, Vec<Rational>)>,
}

impl EchelonSpan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, a) in v.iter_mut().zip(row) {
                if !a.is_zero() {
                    *x -= &f * a;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns `false` (and leaves the span unchanged) when it was already inside.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, a) in row.iter_mut().zip(&r) {
                if !a.is_zero() {
                    *x -= &f * a;
                }
            }
        }
        self.rows.push((p, r));
        true
    }
}
