//! Dense exact simplex for packing LPs `max 1·y` s.t. `A y ≤ 1`, `y ≥ 0`,
//! started from the slack basis. Bland's rule keeps it from cycling.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Tableau over `vars` structural columns followed by one slack per row.
#[derive(Debug, Clone)]
pub struct LpTableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    /// Reduced costs `z_j − c_j`; optimal once none is negative.
    obj: Vec<Rational>,
    obj_value: Rational,
    basis: Vec<usize>,
    vars: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Optimal,
    /// The structural column that can grow without bound.
    Unbounded(usize),
}

impl LpTableau {
    /// `matrix[i][j]` is the coefficient of variable `j` in row `i`.
    pub fn packing(matrix: &[Vec<Rational>], vars: usize) -> Self {
        let m = matrix.len();
        let width = vars + m;
        let rows = matrix
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = Vec::with_capacity(width);
                r.extend(row.iter().cloned());
                r.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
                r
            })
            .collect();
        let mut obj = vec![-Rational::one(); vars];
        obj.extend((0..m).map(|_| Rational::zero()));
        LpTableau {
            rows,
            rhs: vec![Rational::one(); m],
            obj,
            obj_value: Rational::zero(),
            basis: (vars..vars + m).collect(),
            vars,
        }
    }

    pub fn solve(&mut self) -> Outcome {
        loop {
            // Bland: lowest-index improving column
            let Some(enter) = self.obj.iter().position(|c| c.is_negative()) else {
                return Outcome::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((row, _)) => self.pivot(row, enter),
                None => return Outcome::Unbounded(enter),
            }
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        self.rhs[r] /= &p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, y) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (x, y) in self.obj.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.obj_value -= &f * &pivot_rhs;
        }
        self.basis[r] = c;
    }

    pub fn value(&self) -> &Rational {
        &self.obj_value
    }

    /// Values of the structural variables.
    pub fn solution(&self) -> Vec<Rational> {
        let mut y = vec![Rational::zero(); self.vars];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.vars {
                y[b] = self.rhs[i].clone();
            }
        }
        y
    }

    /// Row multipliers: the reduced costs of the slack columns, which solve
    /// the dual covering LP.
    pub fn row_duals(&self) -> Vec<Rational> {
        self.obj[self.vars..].to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn two_variable_packing() {
        // max y0 + y1, y0 + 2y1 ≤ 1, 2y0 + y1 ≤ 1 → 2/3 at (1/3, 1/3)
        let a = vec![vec![int(1), int(2)], vec![int(2), int(1)]];
        let mut t = LpTableau::packing(&a, 2);
        assert_eq!(t.solve(), Outcome::Optimal);
        assert_eq!(t.value(), &ratio(2, 3));
        assert_eq!(t.solution(), vec![ratio(1, 3), ratio(1, 3)]);
        assert_eq!(t.row_duals(), vec![ratio(1, 3), ratio(1, 3)]);
    }

    #[test]
    fn uncovered_variable_is_unbounded() {
        let a = vec![vec![int(1), int(0)]];
        let mut t = LpTableau::packing(&a, 2);
        assert_eq!(t.solve(), Outcome::Unbounded(1));
    }
}
