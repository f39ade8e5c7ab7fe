//! Bundles with fiber `(SO(3)×…×SO(3))/ΔSO(3)` over products of quaternionic
//! Kähler factors `B_i` of dimension `4N_i` with `Ric = E_i g_i`.
//!
//! The base metric is `Σ x_i g_i`; the fiber carries the normal metric induced
//! from `λ_1 B ⊕ … ⊕ λ_m B`, `λ = Σ λ_i`. The forms below are the final closed
//! expressions after the Einstein equations have been substituted, so they take
//! the configuration as given and do not re-check those equations.

use crate::error::{Error, Result};
use crate::exactnum::{inertia_default, Inertia, Scalar, SymMatrix};
use crate::torus_bundle::telescope;
use crate::verdict::Verdict;

#[derive(Clone, Debug, PartialEq)]
pub struct QkFactor<S> {
    /// Quaternionic dimension, `n_i = 4N_i`.
    pub quat_dim: usize,
    pub einstein: S,
    pub x: S,
    pub lambda: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QkConfig<S> {
    factors: Vec<QkFactor<S>>,
    lambda_total: S,
}

impl<S: Scalar> QkConfig<S> {
    /// Requires at least two factors, `N_i >= 2` and positive `E_i`, `x_i`, `λ_i`.
    pub fn new(factors: Vec<QkFactor<S>>) -> Result<Self> {
        if factors.len() < 2 {
            return Err(Error::InvalidConfig(format!("need at least two base factors, got {}", factors.len())));
        }
        for (i, f) in factors.iter().enumerate() {
            if f.quat_dim < 2 {
                return Err(Error::InvalidConfig(format!("factor {}: N = {} < 2", i + 1, f.quat_dim)));
            }
            if f.einstein <= S::zero() || f.x <= S::zero() || f.lambda <= S::zero() {
                return Err(Error::InvalidConfig(format!("factor {}: E_i, x_i and λ_i must be positive", i + 1)));
            }
        }
        let lambda_total = factors.iter().fold(S::zero(), |acc, f| acc + f.lambda.clone());
        Ok(QkConfig { factors, lambda_total })
    }

    pub fn factors(&self) -> &[QkFactor<S>] {
        &self.factors
    }

    pub fn m(&self) -> usize {
        self.factors.len()
    }

    /// `λ = λ_1 + … + λ_m`.
    pub fn lambda_total(&self) -> &S {
        &self.lambda_total
    }

    fn factor(&self, i: usize) -> Result<&QkFactor<S>> {
        if i < 1 || i > self.m() {
            return Err(Error::IndexOutOfRange { index: i, len: self.m() });
        }
        Ok(&self.factors[i - 1])
    }

    fn require_three(&self) -> Result<()> {
        if self.m() < 3 {
            return Err(Error::MRequiresAtLeastThree(self.m()));
        }
        Ok(())
    }

    /// `1 − λ_i/λ`.
    fn complement(&self, f: &QkFactor<S>) -> S {
        S::one() - f.lambda.clone() / self.lambda_total.clone()
    }

    /// `E_i²/(N_i+2)² · λ_i/x_i²`.
    fn curvature_block(f: &QkFactor<S>) -> S {
        f.einstein.square() / S::from_usize(f.quat_dim + 2).square() * f.lambda.clone() / f.x.square()
    }
}

/// `‖A^{(i)}‖² = (3/2)·4N_iE_i²/((N_i+2)²x_i²)·λ_i(1 − λ_i/λ)`, 1-based `i`.
pub fn qk_a_norm_sq<S: Scalar>(config: &QkConfig<S>, i: usize) -> Result<S> {
    let f = config.factor(i)?;
    Ok(S::ratio(3, 2) * S::from_usize(4 * f.quat_dim) * QkConfig::curvature_block(f) * config.complement(f))
}

#[derive(Clone, Debug, PartialEq)]
pub struct QkPairwise<S> {
    pub value: S,
    pub verdict: Verdict,
    pub direction: String,
}

/// Second variation along `π*(ǧ_i/4N_i − ǧ_j/4N_j)` for `m >= 3`.
pub fn qk_pairwise_value<S: Scalar>(config: &QkConfig<S>, i: usize, j: usize) -> Result<QkPairwise<S>> {
    config.require_three()?;
    let fi = config.factor(i)?;
    let fj = config.factor(j)?;
    if i == j {
        return Err(Error::InvalidParams(format!("i and j must differ (both {i})")));
    }
    let lam = config.lambda_total.clone();
    let term = |f: &QkFactor<S>| {
        let n = S::from_usize(f.quat_dim);
        let fiber = (S::one() / (S::from_i64(4) * f.lambda.clone()) + S::one() / (S::from_i64(2) * lam.clone()))
            / (S::from_i64(2) * n.clone());
        let base = QkConfig::curvature_block(f) / (S::from_i64(4) * n.clone())
            * (S::from_i64(4) * n - S::from_i64(6) * config.complement(f));
        -fiber - base
    };
    let value = term(fi) + term(fj);
    Ok(QkPairwise {
        verdict: Verdict::of(&value),
        value,
        direction: format!("π*(ǧ_{i}/4N_{i} − ǧ_{j}/4N_{j})"),
    })
}

/// Weight of `(μ_i − μ_{i−1})²` in the multi-μ form.
fn mu_weight<S: Scalar>(config: &QkConfig<S>, f: &QkFactor<S>) -> S {
    let n = S::from_usize(f.quat_dim);
    let fiber = (S::one() / (S::from_i64(4) * f.lambda.clone())
        - S::one() / (S::from_i64(2) * config.lambda_total.clone()))
        / (S::from_i64(2) * n.square());
    let base = QkConfig::curvature_block(f) / (S::from_i64(2) * n.clone())
        * (S::from_i64(2) * n - S::from_i64(3) * config.complement(f));
    -fiber - base
}

/// Second variation along `Σ_{i=1}^{m−1} μ_i π*(ǧ_i/4N_i − ǧ_{i+1}/4N_{i+1})`.
pub fn qk_mu_form_value<S: Scalar>(config: &QkConfig<S>, mu: &[S]) -> Result<S> {
    config.require_three()?;
    if mu.len() != config.m() - 1 {
        return Err(Error::DimensionMismatch(format!("μ has {} entries, expected m − 1 = {}", mu.len(), config.m() - 1)));
    }
    Ok(telescope(mu)
        .iter()
        .zip(&config.factors)
        .fold(S::zero(), |acc, (d, f)| acc + d.square() * mu_weight(config, f)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct QkAnalysis<S> {
    pub q: SymMatrix<S>,
    pub inertia: Inertia,
    pub verdict: Verdict,
    /// True when `1/(4λ_i) > 1/(2λ)` for every factor, so `Q` is negative definite.
    pub definite_by_sign: bool,
    pub note: Option<String>,
}

impl<S> QkAnalysis<S> {
    pub fn coindex_lower_bound(&self) -> usize {
        self.inertia.n_neg
    }
}

/// Matrix of the multi-μ form, its inertia and the resulting coindex bound.
pub fn qk_analyze<S: Scalar>(config: &QkConfig<S>) -> Result<QkAnalysis<S>> {
    config.require_three()?;
    let k = config.m() - 1;
    let w: Vec<S> = config.factors.iter().map(|f| mu_weight(config, f)).collect();
    let q = SymMatrix::from_upper(k, |a, b| {
        if a == b {
            w[a].clone() + w[a + 1].clone()
        } else if b == a + 1 {
            -w[a + 1].clone()
        } else {
            S::zero()
        }
    });
    let inertia = inertia_default(&q);
    let half_inv = S::one() / (S::from_i64(2) * config.lambda_total.clone());
    let definite_by_sign = config
        .factors
        .iter()
        .all(|f| S::one() / (S::from_i64(4) * f.lambda.clone()) > half_inv);
    if definite_by_sign {
        debug_assert_eq!(inertia.n_neg, k, "sign argument forces a negative definite form");
    }
    let note = (!definite_by_sign).then(|| {
        "some factor has 1/(4λ_i) <= 1/(2λ); the sign argument does not apply and the bound is the computed count".to_string()
    });
    let verdict = if inertia.n_neg > 0 { Verdict::Unstable } else { Verdict::Inconclusive };
    Ok(QkAnalysis { q, inertia, verdict, definite_by_sign, note })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn factor(n: usize, e: Rational, x: Rational, lambda: Rational) -> QkFactor<Rational> {
        QkFactor { quat_dim: n, einstein: e, x, lambda }
    }

    fn all_equal(m: usize) -> QkConfig<Rational> {
        QkConfig::new((0..m).map(|_| factor(2, q(1, 1), q(1, 1), q(1, 1))).collect()).unwrap()
    }

    #[test]
    fn a_norm_examples() {
        let cfg = QkConfig::new(vec![
            factor(2, q(6, 1), q(1, 1), q(1, 1)),
            factor(2, q(1, 1), q(1, 1), q(2, 1)),
        ])
        .unwrap();
        assert_eq!(qk_a_norm_sq(&cfg, 1).unwrap(), q(18, 1));
        let cfg = QkConfig::new(vec![
            factor(3, q(5, 1), q(2, 1), q(2, 1)),
            factor(2, q(1, 1), q(1, 1), q(4, 1)),
        ])
        .unwrap();
        assert_eq!(qk_a_norm_sq(&cfg, 1).unwrap(), q(6, 1));
        assert!(qk_a_norm_sq(&cfg, 3).is_err());
    }

    #[test]
    fn a_norm_vanishes_as_lambda_concentrates() {
        let value = |tiny: Rational| {
            let cfg = QkConfig::new(vec![
                factor(2, q(1, 1), q(1, 1), q(1, 1)),
                factor(2, q(1, 1), q(1, 1), tiny),
            ])
            .unwrap();
            qk_a_norm_sq(&cfg, 1).unwrap()
        };
        assert!(value(q(1, 1000)) < value(q(1, 10)));
        assert!(value(q(1, 1_000_000)) < q(1, 10_000));
    }

    #[test]
    fn pairwise_examples() {
        let out = qk_pairwise_value(&all_equal(3), 1, 2).unwrap();
        assert_eq!(out.value, q(-13, 48));
        assert_eq!(out.verdict, Verdict::Unstable);

        let cfg = QkConfig::new(vec![
            factor(2, q(1, 1), q(1, 1), q(1, 1)),
            factor(3, q(2, 1), q(1, 1), q(2, 1)),
            factor(2, q(1, 1), q(1, 1), q(1, 1)),
        ])
        .unwrap();
        assert_eq!(*cfg.lambda_total(), q(4, 1));
        let expected = q(-3, 32) - q(1, 24) - q(7, 256) - q(6, 25);
        assert_eq!(qk_pairwise_value(&cfg, 1, 2).unwrap().value, expected);
        assert!((expected.to_f64() + 0.40276).abs() < 1e-5);
    }

    #[test]
    fn mu_form_examples() {
        let cfg = all_equal(3);
        assert_eq!(qk_mu_form_value(&cfg, &[q(1, 1), q(0, 1)]).unwrap(), q(-1, 12));
        assert_eq!(qk_mu_form_value(&cfg, &[q(0, 1), q(1, 1)]).unwrap(), q(-1, 12));
        assert_eq!(qk_mu_form_value(&cfg, &[q(0, 1), q(0, 1)]).unwrap(), q(0, 1));
    }

    #[test]
    fn two_factors_are_out_of_scope() {
        let cfg = all_equal(2);
        assert_eq!(qk_analyze(&cfg).unwrap_err(), Error::MRequiresAtLeastThree(2));
        assert_eq!(qk_pairwise_value(&cfg, 1, 2).unwrap_err(), Error::MRequiresAtLeastThree(2));
        assert_eq!(qk_mu_form_value(&cfg, &[q(1, 1)]).unwrap_err(), Error::MRequiresAtLeastThree(2));
    }

    #[test]
    fn analyze_all_equal() {
        let out = qk_analyze(&all_equal(3)).unwrap();
        assert_eq!(out.inertia.n_neg, 2);
        assert!(out.definite_by_sign);
        assert_eq!(out.verdict, Verdict::Unstable);
        assert_eq!(out.q.quadratic_form(&[q(1, 1), q(0, 1)]), q(-1, 12));
    }

    #[test]
    fn analyze_reports_without_sign_guarantee() {
        // λ_1 dominates: 1/(4λ_1) < 1/(2λ).
        let cfg = QkConfig::new(vec![
            factor(2, q(1, 1), q(1, 1), q(10, 1)),
            factor(2, q(1, 1), q(1, 1), q(1, 1)),
            factor(2, q(1, 1), q(1, 1), q(1, 1)),
        ])
        .unwrap();
        let out = qk_analyze(&cfg).unwrap();
        assert!(!out.definite_by_sign);
        assert!(out.note.is_some());
        assert_eq!(out.inertia.dim(), 2);
    }

    #[test]
    fn rejects_small_quaternionic_dimension() {
        assert!(QkConfig::new(vec![factor(1, q(1, 1), q(1, 1), q(1, 1)), factor(2, q(1, 1), q(1, 1), q(1, 1))]).is_err());
    }
}
