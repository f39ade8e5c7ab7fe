use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Maximum number of step halvings per Newton iteration.
pub const MAX_HALVINGS: usize = 30;

/// Options for [`newton_solve`].
#[derive(Clone, Copy, Debug)]
pub struct NewtonOptions {
    pub tol: f64,
    pub max_iter: usize,
    /// Relative step for the forward-difference Jacobian fallback.
    pub fd_step: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            tol: 1e-12,
            max_iter: 100,
            fd_step: 1e-7,
        }
    }
}

pub type Jacobian<'a> = dyn Fn(&[f64]) -> Vec<Vec<f64>> + 'a;

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |acc, x| if x.is_nan() { f64::NAN } else { acc.max(x.abs()) })
}

fn l2_sq(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

fn finite_difference(
    residual: &dyn Fn(&[f64]) -> Vec<f64>,
    x: &[f64],
    fx: &[f64],
    h: f64,
) -> DMatrix<f64> {
    let k = x.len();
    let mut jac = DMatrix::zeros(fx.len(), k);
    let mut xp = x.to_vec();
    for j in 0..k {
        let step = h * x[j].abs().max(1.0);
        xp[j] = x[j] + step;
        let fp = residual(&xp);
        for i in 0..fx.len() {
            jac[(i, j)] = (fp[i] - fx[i]) / step;
        }
        xp[j] = x[j];
    }
    jac
}

/// Damped Newton iteration for a square system.
///
/// Returns `x` with `‖residual(x)‖∞ <= tol`. A step that does not lower the
/// residual is halved up to [`MAX_HALVINGS`] times. A singular Jacobian at the
/// start is an error; a singular Jacobian later falls back to a
/// Levenberg–Marquardt step so that stagnation ends in
/// [`Error::MaxIterationsExceeded`].
pub fn newton_solve(
    residual: &dyn Fn(&[f64]) -> Vec<f64>,
    jacobian: Option<&Jacobian<'_>>,
    start: &[f64],
    opts: NewtonOptions,
) -> Result<Vec<f64>> {
    assert!(opts.tol > 0.0 && opts.max_iter >= 1);
    let k = start.len();
    let mut x = start.to_vec();
    let mut fx = residual(&x);
    if fx.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "{} residuals for {} unknowns",
            fx.len(),
            k
        )));
    }
    for iter in 0..opts.max_iter {
        let norm = inf_norm(&fx);
        if norm <= opts.tol {
            return Ok(x);
        }
        if !norm.is_finite() {
            break;
        }
        let jac = match jacobian {
            Some(j) => {
                let rows = j(&x);
                DMatrix::from_fn(k, k, |r, c| rows[r][c])
            }
            None => finite_difference(residual, &x, &fx, opts.fd_step),
        };
        let rhs = DVector::from_iterator(k, fx.iter().map(|v| -v));
        let step = match jac.clone().lu().solve(&rhs) {
            Some(s) if s.iter().all(|v| v.is_finite()) => s,
            _ if iter == 0 => return Err(Error::SingularJacobian),
            _ => {
                let jt = jac.transpose();
                let mut normal = &jt * &jac;
                let damping = 1e-8 * normal.diagonal().amax().max(1e-300);
                for i in 0..k {
                    normal[(i, i)] += damping;
                }
                match normal.lu().solve(&(jt * rhs)) {
                    Some(s) => s,
                    None => DVector::zeros(k),
                }
            }
        };

        let base = l2_sq(&fx);
        let mut scale = 1.0;
        let mut best: Option<(Vec<f64>, Vec<f64>, f64)> = None;
        for _ in 0..=MAX_HALVINGS {
            let trial: Vec<f64> = x.iter().zip(step.iter()).map(|(a, s)| a + scale * s).collect();
            let ft = residual(&trial);
            let merit = l2_sq(&ft);
            if merit.is_finite() && best.as_ref().is_none_or(|b| merit < b.2) {
                best = Some((trial, ft, merit));
            }
            if merit.is_finite() && merit < base {
                break;
            }
            scale *= 0.5;
        }
        match best {
            Some((trial, ft, merit)) if merit < base => {
                x = trial;
                fx = ft;
            }
            _ => {}
        }
    }
    let residual_norm = inf_norm(&fx);
    if residual_norm <= opts.tol {
        return Ok(x);
    }
    Err(Error::MaxIterationsExceeded {
        iterations: opts.max_iter,
        last_iterate: x,
        residual_norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_root_of_two() {
        let f = |x: &[f64]| vec![x[0] * x[0] - 2.0];
        let root = newton_solve(&f, None, &[1.0], NewtonOptions::default()).unwrap();
        assert!((root[0] - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!(f(&root)[0].abs() <= 1e-12);
    }

    #[test]
    fn analytic_jacobian_is_used() {
        let f = |x: &[f64]| vec![x[0] * x[0] - 2.0];
        let j = |x: &[f64]| vec![vec![2.0 * x[0]]];
        let root = newton_solve(&f, Some(&j), &[1.0], NewtonOptions::default()).unwrap();
        assert!((root[0] - std::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn no_real_root_exhausts_iterations() {
        let f = |x: &[f64]| vec![x[0] * x[0] + 1.0];
        let j = |x: &[f64]| vec![vec![2.0 * x[0]]];
        match newton_solve(&f, Some(&j), &[1.0], NewtonOptions::default()) {
            Err(Error::MaxIterationsExceeded { residual_norm, last_iterate, .. }) => {
                assert!(residual_norm >= 1.0);
                assert_eq!(last_iterate.len(), 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn singular_start() {
        let f = |x: &[f64]| vec![x[0] * x[0] - 2.0];
        let j = |x: &[f64]| vec![vec![2.0 * x[0]]];
        assert_eq!(
            newton_solve(&f, Some(&j), &[0.0], NewtonOptions::default()),
            Err(Error::SingularJacobian)
        );
    }

    #[test]
    fn two_dimensional_system() {
        // circle ∩ line: x² + y² = 4, x = y
        let f = |v: &[f64]| vec![v[0] * v[0] + v[1] * v[1] - 4.0, v[0] - v[1]];
        let root = newton_solve(&f, None, &[1.0, 0.5], NewtonOptions::default()).unwrap();
        assert!((root[0] - 2f64.sqrt()).abs() < 1e-10);
        assert!((root[1] - 2f64.sqrt()).abs() < 1e-10);
    }
}
