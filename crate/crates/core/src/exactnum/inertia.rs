use nalgebra::DMatrix;

use super::matrix::SymMatrix;
use super::scalar::Scalar;

/// Signature `(n₋, n₀, n₊)` of a symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Inertia {
    pub n_neg: usize,
    pub n_zero: usize,
    pub n_pos: usize,
}

impl Inertia {
    pub fn dim(&self) -> usize {
        self.n_neg + self.n_zero + self.n_pos
    }

    pub fn is_negative_definite(&self) -> bool {
        self.n_zero == 0 && self.n_pos == 0
    }
}

/// Relative zero tolerance used for float matrices when the caller gives none.
pub const FLOAT_ZERO_TOL: f64 = 1e-9;

/// Inertia of `m`.
///
/// Exact scalars go through a symmetric-pivoted LDLᵀ with 1×1 and 2×2 blocks and
/// ignore `zero_tol`. Floats use a symmetric eigendecomposition and count
/// eigenvalues with `|λ| <= zero_tol` as zero.
pub fn inertia<S: Scalar>(m: &SymMatrix<S>, zero_tol: &S) -> Inertia {
    if S::EXACT {
        ldl_inertia(m)
    } else {
        eigen_inertia(m, zero_tol.to_f64())
    }
}

/// Float inertia with the default tolerance `1e-9 · max|entry|`; exact inertia otherwise.
pub fn inertia_default<S: Scalar>(m: &SymMatrix<S>) -> Inertia {
    if S::EXACT {
        ldl_inertia(m)
    } else {
        let scale = m.matrix().max_abs().to_f64();
        eigen_inertia(m, FLOAT_ZERO_TOL * scale)
    }
}

fn eigen_inertia<S: Scalar>(m: &SymMatrix<S>, zero_tol: f64) -> Inertia {
    let n = m.dim();
    if n == 0 {
        return Inertia::default();
    }
    let a = DMatrix::from_fn(n, n, |i, j| m[(i, j)].to_f64());
    let eig = a.symmetric_eigenvalues();
    let mut out = Inertia::default();
    for &lambda in eig.iter() {
        if lambda.abs() <= zero_tol {
            out.n_zero += 1;
        } else if lambda < 0.0 {
            out.n_neg += 1;
        } else {
            out.n_pos += 1;
        }
    }
    out
}

/// Block LDLᵀ on the trailing Schur complement. A nonzero diagonal entry gives a
/// 1×1 pivot; a zero diagonal with a nonzero off-diagonal `a_ij` gives the 2×2
/// pivot `[[a_ii, a_ij], [a_ij, a_jj]]` whose determinant is `-a_ij² < 0`.
fn ldl_inertia<S: Scalar>(m: &SymMatrix<S>) -> Inertia {
    let mut a: Vec<Vec<S>> = m.matrix().to_rows();
    let mut out = Inertia::default();
    while !a.is_empty() {
        let n = a.len();
        if let Some(p) = (0..n).find(|&i| !a[i][i].is_zero()) {
            let d = a[p][p].clone();
            if d > S::zero() {
                out.n_pos += 1;
            } else {
                out.n_neg += 1;
            }
            let col: Vec<S> = a.iter().map(|row| row[p].clone()).collect();
            a = schur_1x1(&a, p, &d, &col);
            continue;
        }
        let pair = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero());
        match pair {
            Some((i, j)) => {
                // All diagonal entries vanish here, so the block is [[0, c], [c, 0]].
                out.n_neg += 1;
                out.n_pos += 1;
                a = schur_2x2(&a, i, j);
            }
            None => {
                out.n_zero += n;
                break;
            }
        }
    }
    out
}

fn schur_1x1<S: Scalar>(a: &[Vec<S>], p: usize, d: &S, col: &[S]) -> Vec<Vec<S>> {
    let keep: Vec<usize> = (0..a.len()).filter(|&i| i != p).collect();
    keep.iter()
        .map(|&i| {
            keep.iter()
                .map(|&j| a[i][j].clone() - col[i].clone() * col[j].clone() / d.clone())
                .collect()
        })
        .collect()
}

fn schur_2x2<S: Scalar>(a: &[Vec<S>], p: usize, q: usize) -> Vec<Vec<S>> {
    // Block inverse of [[0, c], [c, 0]] is [[0, 1/c], [1/c, 0]].
    let c = a[p][q].clone();
    let keep: Vec<usize> = (0..a.len()).filter(|&i| i != p && i != q).collect();
    keep.iter()
        .map(|&i| {
            keep.iter()
                .map(|&j| {
                    let cross = (a[i][p].clone() * a[q][j].clone()
                        + a[i][q].clone() * a[p][j].clone())
                        / c.clone();
                    a[i][j].clone() - cross
                })
                .collect()
        })
        .collect()
}

/// A vector `v` with `vᵀ M v < 0`, verified in the scalar's own arithmetic.
///
/// Prefers a coordinate vector; otherwise rounds the eigenvector of the most
/// negative eigenvalue to a small common denominator.
pub fn negative_direction<S: Scalar>(m: &SymMatrix<S>) -> Option<Vec<S>> {
    let n = m.dim();
    if let Some(a) = (0..n).find(|&a| m[(a, a)] < S::zero()) {
        let mut v = vec![S::zero(); n];
        v[a] = S::one();
        return Some(v);
    }
    if n == 0 {
        return None;
    }
    let eig = DMatrix::from_fn(n, n, |i, j| m[(i, j)].to_f64()).symmetric_eigen();
    let k = eig.eigenvalues.imin();
    if eig.eigenvalues[k] >= 0.0 {
        return None;
    }
    let col = eig.eigenvectors.column(k);
    let scale = col.amax();
    let raw: Vec<f64> = col.iter().map(|v| v / scale).collect();
    let negative = |v: &[S]| m.quadratic_form(v) < S::zero();
    for den in [1i64, 2, 3, 4, 5, 6, 8, 10, 12, 16, 20, 50, 100, 1000, 1_000_000] {
        let v: Vec<S> = raw.iter().map(|x| S::ratio((x * den as f64).round() as i64, den)).collect();
        if negative(&v) {
            return Some(v);
        }
    }
    let v: Vec<S> = raw.iter().map(|&x| S::from_f64(x)).collect::<Option<_>>()?;
    negative(&v).then_some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    fn exact(rows: &[&[i64]]) -> SymMatrix<Rational> {
        SymMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_i64(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn triple(i: Inertia) -> (usize, usize, usize) {
        (i.n_neg, i.n_zero, i.n_pos)
    }

    #[test]
    fn diagonal_signs() {
        let m = exact(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 0]]);
        assert_eq!(triple(inertia_default(&m)), (1, 1, 1));
        assert_eq!(triple(inertia_default(&m.map(|v| v.to_f64()))), (1, 1, 1));
    }

    #[test]
    fn positive_definite_pair() {
        let m = exact(&[&[2, 1], &[1, 2]]);
        assert_eq!(triple(inertia_default(&m)), (0, 0, 2));
        assert_eq!(triple(inertia_default(&m.map(|v| v.to_f64()))), (0, 0, 2));
    }

    #[test]
    fn hyperbolic_pair_needs_2x2_pivot() {
        let m = exact(&[&[0, 1], &[1, 0]]);
        assert_eq!(triple(inertia_default(&m)), (1, 0, 1));
        assert_eq!(triple(inertia_default(&m.map(|v| v.to_f64()))), (1, 0, 1));
    }

    #[test]
    fn mixed_blocks() {
        // eigenvalues of [[0,1,0],[1,0,0],[0,0,0]] plus a coupled row
        let m = exact(&[&[0, 2, 1, 0], &[2, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let i = inertia_default(&m);
        assert_eq!(i.dim(), 4);
        assert_eq!(i, inertia_default(&m.map(|v| v.to_f64())));
    }

    #[test]
    fn empty_matrix() {
        let m: SymMatrix<Rational> = SymMatrix::from_upper(0, |_, _| Rational::from_i64(0));
        assert_eq!(inertia_default(&m), Inertia::default());
    }

    #[test]
    fn negative_direction_is_verified() {
        let m = exact(&[&[1, 0], &[0, -2]]);
        assert_eq!(negative_direction(&m), Some(vec![Rational::from_i64(0), Rational::from_i64(1)]));
        let m = exact(&[&[1, 3], &[3, 1]]);
        let v = negative_direction(&m).unwrap();
        assert!(m.quadratic_form(&v) < Rational::from_i64(0));
        assert_eq!(negative_direction(&exact(&[&[2, 1], &[1, 2]])), None);
        assert_eq!(negative_direction(&exact(&[&[0, 0], &[0, 0]])), None);
    }
}
