//! Phase-one simplex for small linear feasibility problems.
//!
//! Solves: does there exist `x ≥ 0` with `A·x = b` (`b ≥ 0`)?
//! One artificial variable is added per row and their total mass is
//! minimized with the standard tableau method under Bland's rule, which
//! rules out cycling, so the routine always terminates. The minimum is
//! zero exactly when the original system is feasible, and the `x` part
//! of the optimum is then a feasible point.
//!
//! Sized for dozens of rows and columns (dense tableau); determinism
//! matters more than speed here.

use crate::{Error, Result};

const PIVOT_TOL: f64 = 1e-10;

/// Result of the phase-one minimization.
pub(crate) struct Phase1Solution {
    /// Minimal total artificial mass; ~0 means the system is feasible.
    pub objective: f64,
    /// Values of the original variables at the optimum.
    pub x: Vec<f64>,
}

/// Minimizes the total artificial mass for `A·x = b`, `x ≥ 0`.
///
/// Requires `b ≥ 0` (callers with negative entries must flip the row
/// first) and a rectangular `a`.
pub(crate) fn phase_one(a: &[Vec<f64>], b: &[f64]) -> Result<Phase1Solution> {
    let m = a.len();
    if m == 0 || b.len() != m {
        return Err(Error::Shape(format!(
            "{} constraint rows with {} right-hand sides",
            m,
            b.len()
        )));
    }
    let n = a[0].len();
    if a.iter().any(|row| row.len() != n) {
        return Err(Error::Shape("ragged constraint matrix".into()));
    }
    if b.iter().any(|&v| v < 0.0) {
        return Err(Error::Shape("negative right-hand side".into()));
    }

    // Tableau: m rows × (n original + m artificial + 1 rhs) columns,
    // plus a reduced-cost row. Artificials start basic.
    let cols = n + m + 1;
    let rhs = cols - 1;
    let mut t = vec![vec![0.0f64; cols]; m];
    for (i, row) in t.iter_mut().enumerate() {
        row[..n].copy_from_slice(&a[i]);
        row[n + i] = 1.0;
        row[rhs] = b[i];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Phase-one cost (1 on artificials) reduced against the starting
    // basis: z_j = −Σ_i t[i][j] on original columns, 0 on artificials.
    let mut z = vec![0.0f64; cols];
    for row in &t {
        for (zj, &v) in z.iter_mut().zip(row.iter()) {
            *zj -= v;
        }
    }
    for j in n..n + m {
        z[j] = 0.0;
    }

    // Bland's rule: entering = smallest improving column, leaving =
    // smallest basic variable among ratio-test ties.
    let max_iterations = 50 * (m + n);
    for _ in 0..max_iterations {
        let Some(enter) = (0..n + m).find(|&j| z[j] < -PIVOT_TOL) else {
            let objective = basis
                .iter()
                .zip(&t)
                .filter(|(&bj, _)| bj >= n)
                .map(|(_, row)| row[rhs])
                .sum();
            let mut x = vec![0.0f64; n];
            for (&bj, row) in basis.iter().zip(&t) {
                if bj < n {
                    x[bj] = row[rhs];
                }
            }
            return Ok(Phase1Solution { objective, x });
        };
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for (i, row) in t.iter().enumerate() {
            if row[enter] > PIVOT_TOL {
                let ratio = row[rhs] / row[enter];
                let better = ratio < best - PIVOT_TOL
                    || (ratio < best + PIVOT_TOL
                        && leave.is_some_and(|l| basis[i] < basis[l]));
                if better {
                    best = ratio;
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else {
            // Cannot happen: the phase-one objective is bounded below
            // by zero, so no improving direction is unbounded.
            return Err(Error::Shape("unbounded phase-one pivot".into()));
        };

        let pivot = t[leave][enter];
        for v in t[leave].iter_mut() {
            *v /= pivot;
        }
        for i in 0..m {
            if i != leave && t[i][enter].abs() > 0.0 {
                let factor = t[i][enter];
                for j in 0..cols {
                    t[i][j] -= factor * t[leave][j];
                }
            }
        }
        let factor = z[enter];
        if factor.abs() > 0.0 {
            for j in 0..cols {
                z[j] -= factor * t[leave][j];
            }
        }
        basis[leave] = enter;
    }
    Err(Error::Shape("phase-one iteration limit exceeded".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_a_trivially_feasible_system() {
        // x0 + x1 = 1, x0 − x1 free sign handled by caller; here:
        // x0 + x1 = 1 and x0 = 0.25.
        let a = vec![vec![1.0, 1.0], vec![1.0, 0.0]];
        let b = vec![1.0, 0.25];
        let sol = phase_one(&a, &b).unwrap();
        assert!(sol.objective.abs() < 1e-12);
        assert!((sol.x[0] - 0.25).abs() < 1e-12);
        assert!((sol.x[1] - 0.75).abs() < 1e-12);
    }

    #[test]
    fn detects_an_infeasible_system() {
        // x0 = 1 and x0 = 2 cannot both hold.
        let a = vec![vec![1.0], vec![1.0]];
        let b = vec![1.0, 2.0];
        let sol = phase_one(&a, &b).unwrap();
        assert!(sol.objective > 0.5);
    }

    #[test]
    fn handles_redundant_constraints() {
        // Duplicate rows are harmless: artificial stays basic at zero.
        let a = vec![vec![1.0, 1.0], vec![1.0, 1.0], vec![1.0, 0.0]];
        let b = vec![1.0, 1.0, 0.5];
        let sol = phase_one(&a, &b).unwrap();
        assert!(sol.objective.abs() < 1e-12);
        assert!((sol.x[0] - 0.5).abs() < 1e-12);
        assert!((sol.x[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(phase_one(&[], &[]).is_err());
        assert!(phase_one(&[vec![1.0]], &[-1.0]).is_err());
        assert!(phase_one(&[vec![1.0], vec![1.0, 2.0]], &[1.0, 1.0]).is_err());
    }
}
