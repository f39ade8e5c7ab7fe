//! Pointwise algebra of Einstein circle bundles `S¹ → M → B`.
//!
//! At a point of the base, `ω` is the curvature 2-form of the connection
//! (skew `n×n`) and `ȟ = 2Ric_ǧ − 2Eǧ` (symmetric). Norms are full tensor
//! norms, `‖ω‖² = Σ_ij ω_ij²`. In a frame that block-diagonalizes `ω` with
//! blocks `a_i`, `ȟ = diag(b_1, b_1, …, b_m, b_m[, 0])` with `b_i = a_i²`.

use crate::error::{Error, Result};
use crate::exactnum::{Matrix, Scalar, SymMatrix};
use crate::verdict::Verdict;

/// `ω` and `ȟ` at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct PointwiseTensorPair<S> {
    omega: Matrix<S>,
    hcheck: SymMatrix<S>,
}

impl<S: Scalar> PointwiseTensorPair<S> {
    pub fn new(omega: Matrix<S>, hcheck: SymMatrix<S>) -> Result<Self> {
        let n = omega.rows();
        if !omega.is_square() || n != hcheck.dim() {
            return Err(Error::DimensionMismatch(format!(
                "ω is {}x{}, ȟ is {}x{}",
                omega.rows(),
                omega.cols(),
                hcheck.dim(),
                hcheck.dim()
            )));
        }
        if n < 2 {
            return Err(Error::InvalidParams(format!("n = {n} must be >= 2")));
        }
        for i in 0..n {
            for j in i..n {
                if omega[(i, j)] != -omega[(j, i)].clone() {
                    return Err(Error::InvalidParams(format!("ω is not skew at ({i}, {j})")));
                }
            }
        }
        Ok(PointwiseTensorPair { omega, hcheck })
    }

    pub fn n(&self) -> usize {
        self.omega.rows()
    }

    pub fn omega(&self) -> &Matrix<S> {
        &self.omega
    }

    pub fn hcheck(&self) -> &SymMatrix<S> {
        &self.hcheck
    }
}

/// Paired spectrum `b_i = a_i²` of `ȟ` in the normal form of `ω`.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaSpectrum<S> {
    n: usize,
    b: Vec<S>,
}

impl<S: Scalar> OmegaSpectrum<S> {
    /// `b` must have `⌊n/2⌋` non-negative entries.
    pub fn new(n: usize, b: Vec<S>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParams(format!("n = {n} must be >= 2")));
        }
        if b.len() != n / 2 {
            return Err(Error::DimensionMismatch(format!("spectrum has {} entries, expected ⌊n/2⌋ = {}", b.len(), n / 2)));
        }
        if b.iter().any(|v| *v < S::zero()) {
            return Err(Error::InvalidParams("spectrum entries must be non-negative".into()));
        }
        Ok(OmegaSpectrum { n, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn b(&self) -> &[S] {
        &self.b
    }

    fn power_sum(&self, k: u32) -> S {
        self.b.iter().fold(S::zero(), |acc, v| acc + v.powi(k))
    }

    /// `‖ω‖² = 2Σb_i`.
    pub fn omega_norm_sq(&self) -> S {
        S::from_i64(2) * self.power_sum(1)
    }

    /// `‖ȟ‖² = 2Σb_i²`.
    pub fn h_norm_sq(&self) -> S {
        S::from_i64(2) * self.power_sum(2)
    }

    /// `tr ȟ³ = 2Σb_i³`.
    pub fn tr_h_cubed(&self) -> S {
        S::from_i64(2) * self.power_sum(3)
    }

    /// Simplex coordinates `t_i = b_i/(2E)` with `E = ‖ω‖²/4`.
    pub fn simplex_point(&self) -> Option<Vec<S>> {
        let total = self.power_sum(1);
        if total.is_zero() {
            return None;
        }
        Some(self.b.iter().map(|v| v.clone() / total.clone()).collect())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CircleEinsteinData<S> {
    pub n: usize,
    pub einstein: S,
    pub spectrum: OmegaSpectrum<S>,
    /// `š = (n/4 + 1/2)‖ω‖²`.
    pub base_scal: S,
}

impl<S: Scalar> CircleEinsteinData<S> {
    /// Ricci eigenvalues `E + b_i/2` of `ǧ`, one per pair.
    pub fn ricci_eigenvalues(&self) -> Vec<S> {
        self.spectrum
            .b
            .iter()
            .map(|v| self.einstein.clone() + v.clone() / S::from_i64(2))
            .collect()
    }
}

/// Checks `‖ω‖² = 4E` and derives the base scalar curvature.
pub fn circle_einstein_check<S: Scalar>(n: usize, einstein: S, spectrum: OmegaSpectrum<S>, tol: &S) -> Result<CircleEinsteinData<S>> {
    if einstein <= S::zero() {
        return Err(Error::InvalidParams("E must be positive".into()));
    }
    if spectrum.n() != n {
        return Err(Error::DimensionMismatch(format!("spectrum is for n = {}, expected {n}", spectrum.n())));
    }
    let omega_sq = spectrum.omega_norm_sq();
    let residual = omega_sq.clone() - S::from_i64(4) * einstein.clone();
    if residual.abs() > *tol {
        return Err(Error::ConstraintViolation {
            equation: "‖ω‖² = 4E".into(),
            residual: residual.to_string(),
        });
    }
    let base_scal = (S::ratio(1, 4) * S::from_usize(n) + S::ratio(1, 2)) * omega_sq;
    Ok(CircleEinsteinData { n, einstein, spectrum, base_scal })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LemmaCorrections<S> {
    /// Extra terms of the rough Laplacian of `π*ȟ`.
    pub lap_corr: SymMatrix<S>,
    /// Extra terms of `R̊(π*ȟ)`.
    pub curv_corr: SymMatrix<S>,
}

/// Literal index sums
/// `lap_ij = Σ_kl ½ω_ki ω_kl ȟ_lj + ½ω_kj ω_kl ȟ_li − ½ω_ik ω_jl ȟ_kl` and
/// `curv_ij = Σ_kl −½ω_ik ω_jl ȟ_kl + ¼ω_kj ω_il ȟ_kl`.
pub fn lemma_corrections_index_sum<S: Scalar>(p: &PointwiseTensorPair<S>) -> LemmaCorrections<S> {
    let n = p.n();
    let w = &p.omega;
    let h = &p.hcheck;
    let half = S::ratio(1, 2);
    let quarter = S::ratio(1, 4);
    let mut lap = Matrix::zeros(n, n);
    let mut curv = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            // t1 = ω_ki ω_kl ȟ_lj, t2 = ω_kj ω_kl ȟ_li, t3 = ω_ik ω_jl ȟ_kl, t4 = ω_kj ω_il ȟ_kl
            let (mut t1, mut t2, mut t3, mut t4) = (S::zero(), S::zero(), S::zero(), S::zero());
            for k in 0..n {
                for l in 0..n {
                    t1 = t1.add_ref(&w[(k, i)].mul_ref(&w[(k, l)]).mul_ref(&h[(l, j)]));
                    t2 = t2.add_ref(&w[(k, j)].mul_ref(&w[(k, l)]).mul_ref(&h[(l, i)]));
                    t3 = t3.add_ref(&w[(i, k)].mul_ref(&w[(j, l)]).mul_ref(&h[(k, l)]));
                    t4 = t4.add_ref(&w[(k, j)].mul_ref(&w[(i, l)]).mul_ref(&h[(k, l)]));
                }
            }
            lap[(i, j)] = half.clone() * (t1 + t2 - t3.clone());
            curv[(i, j)] = quarter.clone() * t4 - half.clone() * t3;
        }
    }
    LemmaCorrections {
        lap_corr: SymMatrix::from_upper(n, |i, j| lap[(i, j)].clone()),
        curv_corr: SymMatrix::from_upper(n, |i, j| curv[(i, j)].clone()),
    }
}

/// Matrix form: `lap = ½(ωᵀωȟ + ȟωᵀω) − ½ωȟωᵀ`, `curv = −¾ωȟωᵀ`.
pub fn lemma_corrections_matrix<S: Scalar>(p: &PointwiseTensorPair<S>) -> LemmaCorrections<S> {
    let w = &p.omega;
    let wt = w.transpose();
    let h = p.hcheck.matrix();
    let wtw = wt.mul(w).expect("square");
    let sandwich = w.mul(h).and_then(|m| m.mul(&wt)).expect("square");
    let left = wtw.mul(h).expect("square");
    let right = h.mul(&wtw).expect("square");
    let half = S::ratio(1, 2);
    let n = p.n();
    LemmaCorrections {
        lap_corr: SymMatrix::from_upper(n, |i, j| {
            half.clone() * (left[(i, j)].clone() + right[(i, j)].clone() - sandwich[(i, j)].clone())
        }),
        curv_corr: SymMatrix::from_upper(n, |i, j| S::ratio(-3, 4) * sandwich[(i, j)].clone()),
    }
}

pub(crate) fn agree<S: Scalar>(a: &S, b: &S) -> bool {
    if S::EXACT {
        a == b
    } else {
        let scale = S::max_of(S::one(), S::max_of(a.abs(), b.abs()));
        (a.clone() - b.clone()).abs() <= S::from_f64(1e-12).unwrap() * scale
    }
}

fn sym_agree<S: Scalar>(a: &SymMatrix<S>, b: &SymMatrix<S>) -> bool {
    let n = a.dim();
    (0..n).all(|i| (0..n).all(|j| agree(&a[(i, j)], &b[(i, j)])))
}

/// Correction tensors, evaluated by both the index sum and the matrix form.
///
/// # Panics
/// If the two evaluations disagree (exactly, or beyond `1e-12` relative for floats).
pub fn lemma_corrections<S: Scalar>(p: &PointwiseTensorPair<S>) -> LemmaCorrections<S> {
    let fast = lemma_corrections_matrix(p);
    let oracle = lemma_corrections_index_sum(p);
    assert!(
        sym_agree(&fast.lap_corr, &oracle.lap_corr) && sym_agree(&fast.curv_corr, &oracle.curv_corr),
        "matrix and index-sum forms of the correction tensors disagree"
    );
    fast
}

/// `Σ_ijkl ω_ki ω_kl ȟ_lj ȟ_ij + ω_ik ω_jl ȟ_kl ȟ_ij`.
pub fn prop46_index_sum<S: Scalar>(p: &PointwiseTensorPair<S>) -> S {
    let n = p.n();
    let w = &p.omega;
    let h = &p.hcheck;
    let mut acc = S::zero();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    acc = acc
                        .add_ref(&w[(k, i)].mul_ref(&w[(k, l)]).mul_ref(&h[(l, j)]).mul_ref(&h[(i, j)]))
                        .add_ref(&w[(i, k)].mul_ref(&w[(j, l)]).mul_ref(&h[(k, l)]).mul_ref(&h[(i, j)]));
                }
            }
        }
    }
    acc
}

/// `tr(ωᵀωȟ²) + tr(ωȟωᵀȟ)`.
pub fn prop46_trace<S: Scalar>(p: &PointwiseTensorPair<S>) -> S {
    let w = &p.omega;
    let wt = w.transpose();
    let h = p.hcheck.matrix();
    let h2 = h.mul(h).expect("square");
    let first = wt.mul(w).and_then(|m| m.mul(&h2)).expect("square").trace();
    let second = w
        .mul(h)
        .and_then(|m| m.mul(&wt))
        .and_then(|m| m.mul(h))
        .expect("square")
        .trace();
    first + second
}

/// Algebraic correction of the second variation along `π*ȟ`.
///
/// # Panics
/// If the trace form and the index sum disagree.
pub fn prop46_correction<S: Scalar>(p: &PointwiseTensorPair<S>) -> S {
    let fast = prop46_trace(p);
    let oracle = prop46_index_sum(p);
    assert!(agree(&fast, &oracle), "trace and index-sum forms disagree");
    fast
}

/// `2D1 − D2 + tr ȟ³ − ½‖ω‖²‖ȟ‖² − (2/n)‖ω‖²‖ȟ‖² + ‖ω‖⁶/(2n) + ‖ω‖⁶/n²`.
///
/// `D1 = ⟨δ∇d∇ȟ, ȟ⟩` and `D2 = ⟨∇*∇ȟ, ȟ⟩` are derivative data supplied by the
/// caller; both zero gives the algebraic part for harmonic curvature.
pub fn theorem15_value<S: Scalar>(n: usize, omega_sq: &S, h_sq: &S, tr_h3: &S, d1: &S, d2: &S) -> S {
    let nn = S::from_usize(n);
    let w6 = omega_sq.powi(3);
    S::from_i64(2) * d1.clone() - d2.clone() + tr_h3.clone()
        - S::ratio(1, 2) * omega_sq.clone() * h_sq.clone()
        - S::from_i64(2) / nn.clone() * omega_sq.clone() * h_sq.clone()
        + w6.clone() / (S::from_i64(2) * nn.clone())
        + w6 / nn.square()
}

pub fn theorem15_from_spectrum<S: Scalar>(spectrum: &OmegaSpectrum<S>, d1: &S, d2: &S) -> S {
    theorem15_value(
        spectrum.n(),
        &spectrum.omega_norm_sq(),
        &spectrum.h_norm_sq(),
        &spectrum.tr_h_cubed(),
        d1,
        d2,
    )
}

pub fn theorem15_from_pair<S: Scalar>(p: &PointwiseTensorPair<S>, d1: &S, d2: &S) -> S {
    let h = p.hcheck.matrix();
    let tr_h3 = h.mul(h).and_then(|m| m.mul(h)).expect("square").trace();
    theorem15_value(p.n(), &p.omega.frobenius_sq(), &h.frobenius_sq(), &tr_h3, d1, d2)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FValue<S> {
    pub value: S,
    /// `f` minus its closed factorization; zero up to rounding.
    pub factorization_residual: S,
}

fn check_simplex<S: Scalar>(t: &[S], n: usize, tol: &S) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("n = {n} must be >= 2")));
    }
    if t.len() != n / 2 {
        return Err(Error::NotOnSimplex(format!("expected ⌊n/2⌋ = {} coordinates, got {}", n / 2, t.len())));
    }
    if let Some(v) = t.iter().find(|v| **v < -tol.clone()) {
        return Err(Error::NotOnSimplex(format!("negative coordinate {v}")));
    }
    let sum = t.iter().fold(S::zero(), |acc, v| acc + v.clone());
    if (sum.clone() - S::one()).abs() > *tol {
        return Err(Error::NotOnSimplex(format!("coordinates sum to {sum}")));
    }
    Ok(())
}

fn f_raw<S: Scalar>(t: &[S], n: usize) -> S {
    let nn = S::from_usize(n);
    let cubes = t.iter().fold(S::zero(), |acc, v| acc + v.powi(3));
    let squares = t.iter().fold(S::zero(), |acc, v| acc + v.square());
    cubes - (S::one() + S::from_i64(4) / nn.clone()) * squares + S::from_i64(2) / nn.clone() + S::from_i64(4) / nn.square()
}

/// `f(t) = Σt_i³ − (1 + 4/n)Σt_i² + 2/n + 4/n²` on the simplex of dimension `⌊n/2⌋ − 1`.
pub fn f_value<S: Scalar>(t: &[S], n: usize, tol: &S) -> Result<FValue<S>> {
    check_simplex(t, n, tol)?;
    let value = f_raw(t, n);
    let m = n / 2;
    let factored = if n.is_multiple_of(2) {
        let centre = S::one() / S::from_usize(m);
        t.iter().fold(S::zero(), |acc, v| {
            acc + (v.clone() - centre.clone()).square() * (v.clone() - S::one())
        })
    } else {
        let centre = S::from_i64(2) / S::from_usize(n);
        let sum = t.iter().fold(S::zero(), |acc, v| {
            acc + (v.clone() - centre.clone()).square() * (v.clone() - S::one())
        });
        sum - S::from_usize(2 + 4 * m) / S::from_usize(n).powi(3)
    };
    Ok(FValue { factorization_residual: value.clone() - factored, value })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimplexScan<S> {
    pub max_value: S,
    /// First grid point (lexicographic) attaining the maximum.
    pub argmax: Vec<S>,
    /// Grid points where `f` vanishes.
    pub zeros: Vec<Vec<S>>,
    pub max_nonpositive: bool,
    /// Even `n`: zeros occur only at the barycenter. Odd `n`: no zeros at all.
    pub equality_case_ok: bool,
    pub verdict: Verdict,
}

fn compositions(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut dyn FnMut(&[usize])) {
    if parts == 1 {
        prefix.push(total);
        out(prefix);
        prefix.pop();
        return;
    }
    for first in 0..=total {
        prefix.push(first);
        compositions(total - first, parts - 1, prefix, out);
        prefix.pop();
    }
}

/// Maximum of `f` over the grid `{t : t_i ∈ (1/denominator)ℤ}` on the simplex.
pub fn simplex_scan<S: Scalar>(n: usize, denominator: usize) -> Result<SimplexScan<S>> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("n = {n} must be >= 2")));
    }
    if denominator == 0 {
        return Err(Error::InvalidParams("grid denominator must be positive".into()));
    }
    let m = n / 2;
    let tol = S::default_tol();
    let zero_tol = if S::EXACT { S::zero() } else { S::from_f64(1e-12).unwrap() };
    let den = S::from_usize(denominator);
    let barycenter: Vec<S> = vec![S::one() / S::from_usize(m); m];
    let mut best: Option<(S, Vec<S>)> = None;
    let mut zeros = Vec::new();
    compositions(denominator, m, &mut Vec::with_capacity(m), &mut |c| {
        let t: Vec<S> = c.iter().map(|&v| S::from_usize(v) / den.clone()).collect();
        let value = f_raw(&t, n);
        if value.abs() <= zero_tol {
            zeros.push(t.clone());
        }
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, t));
        }
    });
    let (max_value, argmax) = best.expect("grid is non-empty");
    debug_assert!(check_simplex(&argmax, n, &S::max_of(tol, S::from_f64(1e-9).unwrap_or_else(S::zero))).is_ok());
    let max_nonpositive = max_value <= zero_tol;
    let equality_case_ok = if n.is_multiple_of(2) {
        zeros.iter().all(|z| z.iter().zip(&barycenter).all(|(a, b)| (a.clone() - b.clone()).abs() <= zero_tol))
    } else {
        zeros.is_empty()
    };
    let verdict = if max_value < -zero_tol.clone() { Verdict::Unstable } else { Verdict::Inconclusive };
    Ok(SimplexScan { max_value, argmax, zeros, max_nonpositive, equality_case_ok, verdict })
}

#[derive(Clone, Debug, PartialEq)]
pub struct KahlerBound<S> {
    pub value: S,
    pub bound: S,
    pub verdict: Verdict,
}

/// `−((n+2)/(2n))‖ω‖²‖ȟ‖² + (‖ω‖²/n)(‖ȟ‖² + ⟨ȟ(J·,J·), ȟ⟩)` and its bound
/// `−(½ − 1/n)‖ω‖²‖ȟ‖²`, attained for `J`-invariant `ȟ`.
pub fn kahler_bound_value<S: Scalar>(n: usize, omega_sq: &S, h_sq: &S, hj_pairing: &S) -> Result<KahlerBound<S>> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("n = {n} must be >= 2")));
    }
    if hj_pairing.abs() > h_sq.clone() + S::default_tol() {
        return Err(Error::PairingOutOfRange {
            pairing: hj_pairing.to_string(),
            norm_sq: h_sq.to_string(),
        });
    }
    let nn = S::from_usize(n);
    let value = -(S::from_usize(n + 2) / (S::from_i64(2) * nn.clone())) * omega_sq.clone() * h_sq.clone()
        + omega_sq.clone() / nn.clone() * (h_sq.clone() + hj_pairing.clone());
    let bound = -(S::ratio(1, 2) - S::one() / nn) * omega_sq.clone() * h_sq.clone();
    debug_assert!(value <= bound.clone() + S::default_tol());
    Ok(KahlerBound { verdict: Verdict::of(&value), value, bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn spec(n: usize, b: &[i64]) -> OmegaSpectrum<Rational> {
        OmegaSpectrum::new(n, b.iter().map(|&v| q(v, 1)).collect()).unwrap()
    }

    fn pair(omega: Vec<Vec<i64>>, h: Vec<Vec<i64>>) -> PointwiseTensorPair<Rational> {
        let conv = |rows: Vec<Vec<i64>>| rows.into_iter().map(|r| r.into_iter().map(|v| q(v, 1)).collect()).collect();
        PointwiseTensorPair::new(Matrix::from_rows(conv(omega)).unwrap(), SymMatrix::from_rows(conv(h)).unwrap()).unwrap()
    }

    #[test]
    fn einstein_check_examples() {
        let data = circle_einstein_check(2, q(1, 1), spec(2, &[2]), &q(0, 1)).unwrap();
        assert_eq!(data.base_scal, q(4, 1));
        assert_eq!(data.ricci_eigenvalues(), vec![q(2, 1)]);
        assert!(circle_einstein_check(4, q(1, 1), spec(4, &[1, 1]), &q(0, 1)).is_ok());
        let err = circle_einstein_check(4, q(1, 1), spec(4, &[3, 0]), &q(0, 1)).unwrap_err();
        assert!(matches!(err, Error::ConstraintViolation { .. }));
    }

    #[test]
    fn spectrum_validation() {
        assert!(OmegaSpectrum::new(4, vec![q(1, 1)]).is_err());
        assert!(OmegaSpectrum::new(4, vec![q(1, 1), q(-1, 1)]).is_err());
    }

    #[test]
    fn pair_requires_skew_omega() {
        let bad = Matrix::from_rows(vec![vec![q(0, 1), q(1, 1)], vec![q(1, 1), q(0, 1)]]).unwrap();
        assert!(PointwiseTensorPair::new(bad, SymMatrix::diagonal(&[q(1, 1), q(1, 1)])).is_err());
    }

    #[test]
    fn corrections_vanish_without_curvature() {
        let p = pair(vec![vec![0, 0], vec![0, 0]], vec![vec![1, 2], vec![2, 3]]);
        let c = lemma_corrections(&p);
        assert_eq!(c.lap_corr.matrix().max_abs(), q(0, 1));
        assert_eq!(c.curv_corr.matrix().max_abs(), q(0, 1));
        assert_eq!(prop46_correction(&p), q(0, 1));
    }

    #[test]
    fn corrections_on_identity_match_fiber_terms() {
        let p = pair(
            vec![vec![0, 1, 2, 0], vec![-1, 0, 3, -1], vec![-2, -3, 0, 4], vec![0, 1, -4, 0]],
            vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]],
        );
        let c = lemma_corrections(&p);
        let identity = Matrix::identity(4);
        let a_sq = p.omega().frobenius_sq() / q(4, 1);
        assert_eq!(c.curv_corr.matrix().dot(&identity), q(-3, 1) * a_sq);
    }

    #[test]
    fn prop46_examples() {
        let p = pair(vec![vec![0, 1], vec![-1, 0]], vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(prop46_correction(&p), q(4, 1));
        let p = pair(vec![vec![0, 1], vec![-1, 0]], vec![vec![1, 0], vec![0, -1]]);
        assert_eq!(prop46_correction(&p), q(0, 1));
    }

    #[test]
    fn prop46_assembles_from_lemmas() {
        let p = pair(
            vec![vec![0, 2, -1], vec![-2, 0, 3], vec![1, -3, 0]],
            vec![vec![2, 1, 0], vec![1, -1, 4], vec![0, 4, 5]],
        );
        let c = lemma_corrections(&p);
        let combined = c.lap_corr.matrix().add(&c.curv_corr.matrix().scale(&q(-2, 1)));
        assert_eq!(combined.dot(p.hcheck().matrix()), prop46_correction(&p));
    }

    #[test]
    fn theorem15_examples() {
        let z = q(0, 1);
        assert_eq!(theorem15_from_spectrum(&spec(4, &[1, 1]), &z, &z), q(0, 1));
        assert_eq!(theorem15_from_spectrum(&spec(4, &[2, 0]), &z, &z), q(-4, 1));
        assert_eq!(theorem15_from_spectrum(&spec(3, &[2]), &z, &z), q(-32, 9));
        assert_eq!(theorem15_from_spectrum(&spec(4, &[2, 0]), &q(1, 1), &q(3, 1)), q(-5, 1));
    }

    #[test]
    fn theorem15_pair_matches_spectrum() {
        // ω with blocks a = (1, 2); ȟ = ωᵀω = diag(1, 1, 4, 4).
        let p = pair(
            vec![vec![0, 1, 0, 0], vec![-1, 0, 0, 0], vec![0, 0, 0, 2], vec![0, 0, -2, 0]],
            vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 4, 0], vec![0, 0, 0, 4]],
        );
        let z = q(0, 1);
        assert_eq!(theorem15_from_pair(&p, &z, &z), theorem15_from_spectrum(&spec(4, &[1, 4]), &z, &z));
    }

    #[test]
    fn f_examples() {
        let z = q(0, 1);
        let out = f_value(&[q(1, 2), q(1, 2)], 4, &z).unwrap();
        assert_eq!(out, FValue { value: q(0, 1), factorization_residual: q(0, 1) });
        let out = f_value(&[q(1, 1), q(0, 1)], 4, &z).unwrap();
        assert_eq!(out, FValue { value: q(-1, 4), factorization_residual: q(0, 1) });
        let out = f_value(&[q(1, 1)], 3, &z).unwrap();
        assert_eq!(out, FValue { value: q(-2, 9), factorization_residual: q(0, 1) });
        assert!(matches!(f_value(&[q(1, 2), q(1, 4)], 4, &z), Err(Error::NotOnSimplex(_))));
        assert!(matches!(f_value(&[q(3, 2), q(-1, 2)], 4, &z), Err(Error::NotOnSimplex(_))));
    }

    #[test]
    fn theorem15_reduces_to_f() {
        let z = q(0, 1);
        for (n, b) in [(4, vec![2, 0]), (5, vec![3, 1]), (7, vec![1, 2, 5]), (8, vec![1, 1, 1, 1])] {
            let s = spec(n, &b);
            let e = s.omega_norm_sq() / q(4, 1);
            let f = f_value(&s.simplex_point().unwrap(), n, &z).unwrap().value;
            assert_eq!(theorem15_from_spectrum(&s, &z, &z), q(2, 1) * (q(2, 1) * e).powi(3) * f);
        }
    }

    #[test]
    fn simplex_scan_examples() {
        let s = simplex_scan::<Rational>(4, 100).unwrap();
        assert_eq!(s.max_value, q(0, 1));
        assert_eq!(s.argmax, vec![q(1, 2), q(1, 2)]);
        assert!(s.max_nonpositive && s.equality_case_ok);
        assert_eq!(s.verdict, Verdict::Inconclusive);

        let s = simplex_scan::<Rational>(3, 100).unwrap();
        assert_eq!(s.max_value, q(-2, 9));
        assert_eq!(s.argmax, vec![q(1, 1)]);

        let s = simplex_scan::<Rational>(5, 100).unwrap();
        assert_eq!(s.max_value, q(-9, 100));
        assert_eq!(s.argmax, vec![q(1, 2), q(1, 2)]);
        assert!(s.equality_case_ok);
        assert_eq!(s.verdict, Verdict::Unstable);
    }

    #[test]
    fn kahler_examples() {
        let out = kahler_bound_value(4, &q(4, 1), &q(1, 1), &q(1, 1)).unwrap();
        assert_eq!((out.value.clone(), out.bound.clone(), out.verdict), (q(-1, 1), q(-1, 1), Verdict::Unstable));
        let out = kahler_bound_value(4, &q(4, 1), &q(1, 1), &q(-1, 1)).unwrap();
        assert_eq!((out.value.clone(), out.bound.clone()), (q(-3, 1), q(-1, 1)));
        let out = kahler_bound_value(2, &q(4, 1), &q(1, 1), &q(1, 1)).unwrap();
        assert_eq!((out.value, out.verdict), (q(0, 1), Verdict::Inconclusive));
        assert!(matches!(
            kahler_bound_value(4, &q(4, 1), &q(1, 1), &q(2, 1)),
            Err(Error::PairingOutOfRange { .. })
        ));
    }
}
