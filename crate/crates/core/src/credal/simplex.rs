//! Dense two-phase simplex over exact rationals, Bland's rule throughout.
//!
//! Solves `min c·p` subject to `p ≥ 0`, `Σ p = 1` and rows `Σ_{x∈A} p(x) ≥ b`.
//! Phase one runs once per polytope; each objective then starts from a clone
//! of the feasible tableau.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;
use crate::space::bit_indices;

/// A feasible basic solution of the constraint system, in canonical form.
#[derive(Clone, Debug)]
pub(crate) struct FeasibleTableau {
    n: usize,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct Optimum {
    pub value: Rational,
    pub point: Vec<Rational>,
}

impl FeasibleTableau {
    /// Runs phase one. `rows` are `(event bits, lower bound)` pairs with
    /// positive bounds; returns `None` when the system is infeasible.
    pub(crate) fn build(n: usize, rows: &[(u32, Rational)]) -> Option<Self> {
        // Columns: p (n) | surplus (one per ≥ row) | artificial (one per row).
        let ge = rows.len();
        let m = ge + 1;
        let artificial_start = n + ge;
        let width = artificial_start + m;

        let mut table = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);

        let mut total = vec![Rational::zero(); width];
        for cell in total.iter_mut().take(n) {
            *cell = Rational::one();
        }
        total[artificial_start] = Rational::one();
        table.push(total);
        rhs.push(Rational::one());

        for (r, (bits, bound)) in rows.iter().enumerate() {
            let mut row = vec![Rational::zero(); width];
            for i in bit_indices(*bits) {
                row[i] = Rational::one();
            }
            row[n + r] = -Rational::one();
            row[artificial_start + 1 + r] = Rational::one();
            table.push(row);
            rhs.push(bound.clone());
        }

        let mut tableau = Tableau {
            rows: table,
            rhs,
            basis: (artificial_start..width).collect(),
            entering_limit: width,
        };
        let cost: Vec<Rational> = (0..width)
            .map(|j| {
                if j >= artificial_start {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        tableau.entering_limit = artificial_start;
        tableau.optimize(&cost);

        let infeasibility: Rational = tableau
            .basis
            .iter()
            .zip(&tableau.rhs)
            .filter(|(&b, _)| b >= artificial_start)
            .map(|(_, v)| v.clone())
            .sum();
        if infeasibility.is_positive() {
            return None;
        }

        // Drive zero-level artificials out of the basis; drop redundant rows.
        let mut r = 0;
        while r < tableau.rows.len() {
            if tableau.basis[r] >= artificial_start {
                match (0..artificial_start).find(|&j| !tableau.rows[r][j].is_zero()) {
                    Some(j) => {
                        tableau.pivot(r, j);
                        r += 1;
                    }
                    None => {
                        tableau.rows.remove(r);
                        tableau.rhs.remove(r);
                        tableau.basis.remove(r);
                    }
                }
            } else {
                r += 1;
            }
        }
        for row in &mut tableau.rows {
            row.truncate(artificial_start);
        }

        Some(Self {
            n,
            rows: tableau.rows,
            rhs: tableau.rhs,
            basis: tableau.basis,
        })
    }

    /// Minimizes `Σ_i objective[i]·p(i)` from this feasible basis.
    pub(crate) fn minimize(&self, objective: &[Rational]) -> Optimum {
        debug_assert_eq!(objective.len(), self.n);
        let width = self.rows.first().map_or(self.n, Vec::len);
        let mut cost = vec![Rational::zero(); width];
        cost[..self.n].clone_from_slice(objective);

        let mut tableau = Tableau {
            rows: self.rows.clone(),
            rhs: self.rhs.clone(),
            basis: self.basis.clone(),
            entering_limit: width,
        };
        tableau.optimize(&cost);

        let mut point = vec![Rational::zero(); self.n];
        for (&b, v) in tableau.basis.iter().zip(&tableau.rhs) {
            if b < self.n {
                point[b] = v.clone();
            }
        }
        let value = point.iter().zip(objective).map(|(p, c)| p * c).sum();
        Optimum { value, point }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Columns at or beyond this index never enter the basis.
    entering_limit: usize,
}

impl Tableau {
    fn optimize(&mut self, cost: &[Rational]) {
        loop {
            let Some(entering) = self.entering_column(cost) else {
                return;
            };
            let Some(leaving) = self.leaving_row(entering) else {
                // The feasible region is a subset of the probability simplex,
                // so no objective is unbounded.
                unreachable!("unbounded direction in a bounded polytope");
            };
            self.pivot(leaving, entering);
        }
    }

    /// Smallest-index column with negative reduced cost.
    fn entering_column(&self, cost: &[Rational]) -> Option<usize> {
        let mut in_basis = vec![false; cost.len()];
        for &b in &self.basis {
            in_basis[b] = true;
        }
        (0..self.entering_limit).find(|&j| {
            if in_basis[j] {
                return false;
            }
            let mut reduced = cost[j].clone();
            for (row, &b) in self.rows.iter().zip(&self.basis) {
                if !row[j].is_zero() && !cost[b].is_zero() {
                    reduced -= &cost[b] * &row[j];
                }
            }
            reduced.is_negative()
        })
    }

    /// Minimum-ratio row, ties broken by smallest basic variable index.
    fn leaving_row(&self, column: usize) -> Option<usize> {
        let mut best: Option<(usize, Rational)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            if !row[column].is_positive() {
                continue;
            }
            let ratio = &self.rhs[r] / &row[column];
            let better = match &best {
                None => true,
                Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
            };
            if better {
                best = Some((r, ratio));
            }
        }
        best.map(|(r, _)| r)
    }

    fn pivot(&mut self, row: usize, column: usize) {
        let pivot = self.rows[row][column].clone();
        if !pivot.is_one() {
            for cell in self.rows[row].iter_mut() {
                if !cell.is_zero() {
                    *cell /= &pivot;
                }
            }
            self.rhs[row] /= &pivot;
        }
        let pivot_row = self.rows[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        for r in 0..self.rows.len() {
            if r == row || self.rows[r][column].is_zero() {
                continue;
            }
            let factor = self.rows[r][column].clone();
            for (cell, p) in self.rows[r].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *cell -= &factor * p;
                }
            }
            self.rhs[r] -= &factor * &pivot_rhs;
        }
        self.basis[row] = column;
    }
}
