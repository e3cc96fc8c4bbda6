//! Stationary distributions.
//!
//! The rational route row-reduces `[Kᵀ − I; 1ᵀ] π = e_{n+1}` exactly and
//! rejects chains whose solution is not unique or not strictly positive. The
//! float route checks irreducibility on the support graph, solves the same
//! system with partial pivoting and then polishes with lazy power iteration.


use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Residual target for the float route, measured as `‖πK − π‖₁`.
pub const FLOAT_RESIDUAL: f64 = 1e-13;

const POWER_ITERATION_CAP: usize = 200_000;

/// Solves `πK = π`, `Σπ = 1`, `π > 0`.
pub fn stationary_distribution<S: Scalar>(kernel: &Matrix<S>) -> Result<Vec<S>> {
    if S::EXACT {
        let pi = solve_exact(kernel)?;
        if let Some(v) = pi.iter().position(|p| !p.is_positive()) {
            return Err(Error::NoNowherezeroStationary(format!("stationary mass of vertex {v} is zero")));
        }
        Ok(pi)
    } else {
        if !support_irreducible(kernel) {
            return Err(Error::NoNowherezeroStationary(
                "support of the kernel is not strongly connected".into(),
            ));
        }
        let mut pi = solve_pivoting(kernel)?;
        polish(kernel, &mut pi)?;
        if let Some(v) = pi.iter().position(|p| p.to_f64() <= 0.0) {
            return Err(Error::NoNowherezeroStationary(format!("stationary mass of vertex {v} is zero")));
        }
        Ok(pi)
    }
}

/// Exact elimination; fails if the null space of `Kᵀ − I` is not one-dimensional.
fn solve_exact<S: Scalar>(kernel: &Matrix<S>) -> Result<Vec<S>> {
    let n = kernel.order();
    // rows 0..n: (Kᵀ − I), row n: all ones; last column is the right-hand side
    let mut a: Vec<Vec<S>> = (0..=n)
        .map(|i| {
            let mut row: Vec<S> = (0..n)
                .map(|j| {
                    if i == n {
                        S::one()
                    } else if i == j {
                        kernel[(j, i)].clone() - S::one()
                    } else {
                        kernel[(j, i)].clone()
                    }
                })
                .collect();
            row.push(if i == n { S::one() } else { S::zero() });
            row
        })
        .collect();

    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(n);
    for col in 0..n {
        let Some(p) = (pivot_row..=n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(pivot_row, p);
        let inv = S::one() / a[pivot_row][col].clone();
        for x in a[pivot_row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..=n {
            if r != pivot_row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..=n {
                    let delta = factor.clone() * a[pivot_row][c].clone();
                    a[r][c] = a[r][c].clone() - delta;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if pivots.len() < n {
        return Err(Error::NoNowherezeroStationary(format!(
            "stationary distribution is not unique (solution space has dimension {})",
            n - pivots.len()
        )));
    }
    if !a[n][n].is_zero() {
        return Err(Error::NoNowherezeroStationary("stationary system is inconsistent".into()));
    }
    Ok((0..n).map(|i| a[i][n].clone()).collect())
}

fn solve_pivoting<S: Scalar>(kernel: &Matrix<S>) -> Result<Vec<S>> {
    let n = kernel.order();
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row: Vec<f64> = (0..n)
                .map(|j| kernel[(j, i)].to_f64() - if i == j { 1.0 } else { 0.0 })
                .collect();
            row.push(0.0);
            row
        })
        .collect();
    // replace the last balance equation with the normalisation
    a[n - 1] = vec![1.0; n + 1];
    for col in 0..n {
        let p = (col..n)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .unwrap_or(col);
        if a[p][col].abs() < 1e-300 {
            return Err(Error::NoNowherezeroStationary("singular stationary system".into()));
        }
        a.swap(col, p);
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                if f != 0.0 {
                    for c in col..=n {
                        a[r][c] -= f * a[col][c];
                    }
                }
            }
        }
    }
    Ok((0..n).map(|i| S::from_f64(a[i][n] / a[i][i])).collect())
}

/// Lazy power iteration `π ← π (I + K) / 2` until the residual target is met.
fn polish<S: Scalar>(kernel: &Matrix<S>, pi: &mut [S]) -> Result<()> {
    let n = kernel.order();
    let k: Vec<f64> = (0..n * n).map(|i| kernel[(i / n, i % n)].to_f64()).collect();
    let mut p: Vec<f64> = pi.iter().map(|x| x.to_f64().max(0.0)).collect();
    let residual = |p: &[f64]| -> f64 {
        (0..n)
            .map(|j| ((0..n).map(|i| p[i] * k[i * n + j]).sum::<f64>() - p[j]).abs())
            .sum()
    };
    let normalise = |p: &mut Vec<f64>| {
        let s: f64 = p.iter().sum();
        p.iter_mut().for_each(|x| *x /= s);
    };
    normalise(&mut p);
    let mut iterations = 0;
    while residual(&p) >= FLOAT_RESIDUAL {
        if iterations == POWER_ITERATION_CAP {
            return Err(Error::NonConvergence { residual: residual(&p) });
        }
        let next: Vec<f64> = (0..n)
            .map(|j| 0.5 * p[j] + 0.5 * (0..n).map(|i| p[i] * k[i * n + j]).sum::<f64>())
            .collect();
        p = next;
        normalise(&mut p);
        iterations += 1;
    }
    for (dst, src) in pi.iter_mut().zip(p) {
        *dst = S::from_f64(src);
    }
    Ok(())
}

/// Strong connectivity of the graph `u -> v` iff `K(u, v) != 0`, `u != v`.
pub fn support_irreducible<S: Scalar>(kernel: &Matrix<S>) -> bool {
    let n = kernel.order();
    let reach = |transpose: bool| {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for y in 0..n {
                let w = if transpose { &kernel[(y, x)] } else { &kernel[(x, y)] };
                if y != x && !seen[y] && !w.is_zero() {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.iter().all(|s| *s)
    };
    n > 0 && reach(false) && reach(true)
}

/// `true` when `πK = π` holds (exactly, or within the float residual target).
pub fn is_stationary<S: Scalar>(kernel: &Matrix<S>, pi: &[S]) -> bool {
    let moved = kernel.left_apply(pi);
    if S::EXACT {
        moved.iter().zip(pi).all(|(a, b)| a == b)
    } else {
        let r: f64 = moved.iter().zip(pi).map(|(a, b)| (a.to_f64() - b.to_f64()).abs()).sum();
        r < 1e-11
    }
}

/// `true` when the uniform vector is stationary (all column sums equal 1).
pub fn uniform_is_stationary<S: Scalar>(kernel: &Matrix<S>) -> bool {
    let n = kernel.order();
    let u = vec![S::one() / S::from_usize(n); n];
    is_stationary(kernel, &u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Rational};
    use num_traits::{One, Zero};

    fn m(rows: &[&[(i64, i64)]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&(a, b)| q(a, b)).collect()).collect()).unwrap()
    }

    #[test]
    fn two_disjoint_cycles_are_rejected() {
        let k = m(&[
            &[(0, 1), (1, 1), (0, 1), (0, 1)],
            &[(1, 1), (0, 1), (0, 1), (0, 1)],
            &[(0, 1), (0, 1), (0, 1), (1, 1)],
            &[(0, 1), (0, 1), (1, 1), (0, 1)],
        ]);
        assert!(matches!(stationary_distribution(&k), Err(Error::NoNowherezeroStationary(_))));
        let kf = k.map(|x| x.to_f64());
        assert!(matches!(stationary_distribution(&kf), Err(Error::NoNowherezeroStationary(_))));
    }

    #[test]
    fn transient_vertex_is_rejected() {
        // 0 -> 1, 1 <-> 2: vertex 0 is never revisited
        let k = m(&[&[(0, 1), (1, 1), (0, 1)], &[(0, 1), (0, 1), (1, 1)], &[(0, 1), (1, 1), (0, 1)]]);
        assert!(matches!(stationary_distribution(&k), Err(Error::NoNowherezeroStationary(_))));
    }

    #[test]
    fn float_route_meets_residual() {
        let k = m(&[&[(0, 1), (1, 1), (0, 1)], &[(1, 2), (0, 1), (1, 2)], &[(0, 1), (1, 1), (0, 1)]]);
        let exact = stationary_distribution(&k).unwrap();
        let float = stationary_distribution(&k.map(|x| x.to_f64())).unwrap();
        for (a, b) in exact.iter().zip(&float) {
            assert!((a.to_f64() - b).abs() < 1e-13);
        }
        assert!(is_stationary(&k, &exact));
        assert!(!exact[0].is_zero() && exact.iter().fold(Rational::zero(), |a, b| a + b).is_one());
    }
}
