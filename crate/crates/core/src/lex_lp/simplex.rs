//! Two-phase primal simplex on standard form, with Bland's anti-cycling rule.
//!
//! Solves `max c·x  s.t.  A x = b, x ≥ 0` exactly. No perturbation, no
//! tolerances: entering and leaving choices are made on exact signs, so the
//! pivot sequence is fully deterministic for a given input.

use std::cmp::Ordering;

use super::scalar::{Overflow, SimplexScalar};

pub(crate) enum StdOutcome<S> {
    Optimal { x: Vec<S>, value: S },
    Infeasible,
    Unbounded,
}

struct Tableau<S> {
    /// Constraint rows, each of length `ncols + 1` with the rhs last.
    rows: Vec<Vec<S>>,
    /// Current reduced costs, length `ncols`.
    reduced: Vec<S>,
    /// Basic column of each row.
    basis: Vec<usize>,
    ncols: usize,
}

impl<S: SimplexScalar> Tableau<S> {
    fn rhs(&self, i: usize) -> &S {
        &self.rows[i][self.ncols]
    }

    /// Gauss-Jordan pivot on (`row`, `col`), keeping reduced costs in sync.
    fn pivot(&mut self, row: usize, col: usize) -> Result<(), Overflow> {
        let lead = self.rows[row][col].clone();
        debug_assert!(!lead.is_zero_value());
        for v in self.rows[row].iter_mut() {
            if !v.is_zero_value() {
                *v = v.try_div(&lead)?;
            }
        }
        let pivot_row = self.rows[row].clone();
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row || r[col].is_zero_value() {
                continue;
            }
            let factor = r[col].clone();
            for (v, p) in r.iter_mut().zip(&pivot_row) {
                if !p.is_zero_value() {
                    *v = v.try_sub(&factor.try_mul(p)?)?;
                }
            }
        }
        if !self.reduced[col].is_zero_value() {
            let factor = self.reduced[col].clone();
            for (v, p) in self.reduced.iter_mut().zip(&pivot_row) {
                if !p.is_zero_value() {
                    *v = v.try_sub(&factor.try_mul(p)?)?;
                }
            }
        }
        self.basis[row] = col;
        Ok(())
    }

    /// Recompute reduced costs for the cost vector `costs` (length `ncols`).
    fn reset_costs(&mut self, costs: &[S]) -> Result<(), Overflow> {
        self.reduced = costs.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            if costs[b].is_zero_value() {
                continue;
            }
            let factor = costs[b].clone();
            let row = self.rows[i].clone();
            for (v, p) in self.reduced.iter_mut().zip(&row) {
                if !p.is_zero_value() {
                    *v = v.try_sub(&factor.try_mul(p)?)?;
                }
            }
        }
        Ok(())
    }

    /// Bland's rule iteration over columns `0..allowed`. Returns `None` when
    /// optimal, `Some(col)` when unbounded in `col`.
    fn run(&mut self, allowed: usize) -> Result<Option<usize>, Overflow> {
        loop {
            let Some(entering) = (0..allowed).find(|&j| self.reduced[j].sign() == Ordering::Greater)
            else {
                return Ok(None);
            };
            let mut leaving: Option<usize> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][entering].sign() != Ordering::Greater {
                    continue;
                }
                leaving = Some(match leaving {
                    None => i,
                    Some(best) => {
                        // Compare b_i/a_i vs b_best/a_best by cross-multiplying
                        // (both pivots positive), tie-break on the smaller
                        // basic variable index per Bland.
                        let lhs = self.rhs(i).try_mul(&self.rows[best][entering])?;
                        let rhs = self.rhs(best).try_mul(&self.rows[i][entering])?;
                        match lhs.try_sub(&rhs)?.sign() {
                            Ordering::Less => i,
                            Ordering::Greater => best,
                            Ordering::Equal => {
                                if self.basis[i] < self.basis[best] {
                                    i
                                } else {
                                    best
                                }
                            }
                        }
                    }
                });
            }
            match leaving {
                None => return Ok(Some(entering)),
                Some(row) => self.pivot(row, entering)?,
            }
        }
    }
}

/// Solve `max c·x, A x = b, x ≥ 0`.
pub(crate) fn simplex_standard<S: SimplexScalar>(
    a: &[Vec<S>],
    b: &[S],
    c: &[S],
) -> Result<StdOutcome<S>, Overflow> {
    let m = a.len();
    let n = c.len();

    // Normalize rhs signs.
    let mut rows: Vec<Vec<S>> = Vec::with_capacity(m);
    for (ai, bi) in a.iter().zip(b) {
        debug_assert_eq!(ai.len(), n);
        let mut row: Vec<S> = Vec::with_capacity(n + 1);
        if bi.sign() == Ordering::Less {
            for v in ai {
                row.push(v.try_neg()?);
            }
            row.push(bi.try_neg()?);
        } else {
            row.extend(ai.iter().cloned());
            row.push(bi.clone());
        }
        rows.push(row);
    }

    // Seed the basis with singleton-positive columns (typically slacks);
    // everything else gets an artificial variable.
    let mut basis = vec![usize::MAX; m];
    for j in 0..n {
        let mut slot: Option<usize> = None;
        for (i, row) in rows.iter().enumerate() {
            match row[j].sign() {
                Ordering::Equal => {}
                Ordering::Greater if slot.is_none() => slot = Some(i),
                _ => {
                    slot = None;
                    break;
                }
            }
        }
        if let Some(i) = slot {
            if basis[i] == usize::MAX {
                basis[i] = j;
            }
        }
    }

    let n_art = basis.iter().filter(|&&b| b == usize::MAX).count();
    let ncols = n + n_art;
    let mut next_art = n;
    for (i, row) in rows.iter_mut().enumerate() {
        let rhs = row.pop().expect("row has rhs");
        row.resize(ncols, S::zero_value());
        row.push(rhs);
        if basis[i] == usize::MAX {
            basis[i] = next_art;
            row[next_art] = S::one_value();
            next_art += 1;
        }
    }

    let mut tableau = Tableau {
        rows,
        reduced: vec![S::zero_value(); ncols],
        basis,
        ncols,
    };

    // Normalize seeded basic columns to 1 and clear them elsewhere.
    for i in 0..m {
        let col = tableau.basis[i];
        if col < n {
            tableau.pivot(i, col)?;
        }
    }

    if n_art > 0 {
        // Phase one: maximize minus the sum of artificials.
        let mut phase1 = vec![S::zero_value(); ncols];
        for cost in phase1.iter_mut().take(ncols).skip(n) {
            *cost = S::one_value().try_neg()?;
        }
        tableau.reset_costs(&phase1)?;
        tableau.run(ncols)?;

        // Any artificial still basic at a positive level witnesses infeasibility.
        for i in 0..tableau.rows.len() {
            if tableau.basis[i] >= n && tableau.rhs(i).sign() == Ordering::Greater {
                return Ok(StdOutcome::Infeasible);
            }
        }

        // Drive degenerate artificials out; rows with no real support are
        // redundant and dropped.
        let mut drop_rows = Vec::new();
        for i in 0..tableau.rows.len() {
            if tableau.basis[i] < n {
                continue;
            }
            match (0..n).find(|&j| !tableau.rows[i][j].is_zero_value()) {
                Some(j) => tableau.pivot(i, j)?,
                None => drop_rows.push(i),
            }
        }
        for &i in drop_rows.iter().rev() {
            tableau.rows.remove(i);
            tableau.basis.remove(i);
        }
    }

    // Phase two over the real columns only.
    let mut phase2 = c.to_vec();
    phase2.resize(ncols, S::zero_value());
    tableau.reset_costs(&phase2)?;
    if tableau.run(n)?.is_some() {
        return Ok(StdOutcome::Unbounded);
    }

    let mut x = vec![S::zero_value(); n];
    for (i, &b) in tableau.basis.iter().enumerate() {
        debug_assert!(b < n, "artificial variable remained basic");
        if b < n {
            x[b] = tableau.rhs(i).clone();
        }
    }
    let mut value = S::zero_value();
    for (cj, xj) in c.iter().zip(&x) {
        if !cj.is_zero_value() && !xj.is_zero_value() {
            value = value.try_add(&cj.try_mul(xj)?)?;
        }
    }
    Ok(StdOutcome::Optimal { x, value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, Rational};

    fn solve_big(
        a: Vec<Vec<i64>>,
        b: Vec<i64>,
        c: Vec<i64>,
    ) -> StdOutcome<Rational> {
        let a: Vec<Vec<Rational>> = a
            .into_iter()
            .map(|r| r.into_iter().map(rat).collect())
            .collect();
        let b: Vec<Rational> = b.into_iter().map(rat).collect();
        let c: Vec<Rational> = c.into_iter().map(rat).collect();
        simplex_standard(&a, &b, &c).unwrap_or_else(|_| unreachable!("big path cannot overflow"))
    }

    #[test]
    fn simple_bounded_problem() {
        // max x + y s.t. x + y + s = 1 -> value 1.
        let out = solve_big(vec![vec![1, 1, 1]], vec![1], vec![1, 1, 0]);
        match out {
            StdOutcome::Optimal { value, .. } => assert_eq!(value, rat(1)),
            _ => panic!("expected optimal"),
        }
    }

    #[test]
    fn detects_infeasible() {
        // x + y = -1 with x, y >= 0 is infeasible after rhs normalization.
        let out = solve_big(vec![vec![1, 1]], vec![-1], vec![0, 0]);
        assert!(matches!(out, StdOutcome::Infeasible));
    }

    #[test]
    fn detects_unbounded() {
        // max x s.t. x - y = 0: x can grow with y.
        let out = solve_big(vec![vec![1, -1]], vec![0], vec![1, 0]);
        assert!(matches!(out, StdOutcome::Unbounded));
    }

    #[test]
    fn degenerate_vertex_terminates() {
        // (1,1) is an over-determined vertex: three constraints active in two
        // dimensions, so the walk makes degenerate pivots. Bland terminates.
        let a = vec![
            vec![1, 0, 1, 0, 0],
            vec![0, 1, 0, 1, 0],
            vec![1, 1, 0, 0, 1],
        ];
        let b = vec![1, 1, 2];
        let c = vec![1, 1, 0, 0, 0];
        match solve_big(a, b, c) {
            StdOutcome::Optimal { value, x } => {
                assert_eq!(value, rat(2));
                assert_eq!(x[0], rat(1));
                assert_eq!(x[1], rat(1));
            }
            _ => panic!("expected optimal"),
        }
    }
}
