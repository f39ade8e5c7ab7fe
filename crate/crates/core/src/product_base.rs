//! Stability forms for TT-tensors pulled back from a Riemannian-product base.
//!
//! For a base `B₁ × … × B_m` the tensors `π*(ǧ_p/n_p)` are mutually orthogonal
//! for both the gradient and the curvature pairing, so on trace-free
//! combinations `Σ c_p π*(ǧ_p/n_p)` the second variation is the diagonal form
//! `Σ c_p² d_p` with `d_p = (8‖A^{(p)}‖² − 2 s_p)/n_p²`.

use crate::error::{Error, Result};
use crate::exactnum::{inertia_default, Inertia, Matrix, Scalar, SymMatrix};
use crate::verdict::Verdict;

#[derive(Clone, Debug, PartialEq)]
pub struct BaseFactor<S> {
    pub dim: usize,
    pub scal: S,
    pub a_norm_sq: S,
}

/// Per-factor data of a product base, `m >= 2`, every `n_p >= 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseFactorData<S> {
    factors: Vec<BaseFactor<S>>,
}

impl<S: Scalar> BaseFactorData<S> {
    pub fn new(factors: Vec<BaseFactor<S>>) -> Result<Self> {
        if factors.len() < 2 {
            return Err(Error::InvalidParams(format!(
                "product base needs at least two factors, got {}",
                factors.len()
            )));
        }
        if let Some(f) = factors.iter().find(|f| f.dim < 2) {
            return Err(Error::InvalidParams(format!("factor dimension {} < 2", f.dim)));
        }
        if factors.iter().any(|f| f.a_norm_sq < S::zero()) {
            return Err(Error::InvalidParams("‖A^(p)‖² must be non-negative".into()));
        }
        Ok(BaseFactorData { factors })
    }

    pub fn factors(&self) -> &[BaseFactor<S>] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Coefficients `d_p` of the diagonal second-variation form.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalFormData<S> {
    pub d: Vec<S>,
}

fn factor_coefficient<S: Scalar>(f: &BaseFactor<S>) -> S {
    (S::from_i64(8) * f.a_norm_sq.clone() - S::from_i64(2) * f.scal.clone()) / S::from_usize(f.dim * f.dim)
}

pub fn diagonal_coefficients<S: Scalar>(data: &BaseFactorData<S>) -> DiagonalFormData<S> {
    DiagonalFormData {
        d: data.factors.iter().map(factor_coefficient).collect(),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairwiseValue<S> {
    pub value: S,
    pub verdict: Verdict,
    pub direction: String,
}

/// Second variation along `π*(ǧ_p/n_p − ǧ_q/n_q)`; `p`, `q` are 1-based.
pub fn pairwise_value<S: Scalar>(data: &BaseFactorData<S>, p: usize, q: usize) -> Result<PairwiseValue<S>> {
    let m = data.len();
    for idx in [p, q] {
        if idx < 1 || idx > m {
            return Err(Error::IndexOutOfRange { index: idx, len: m });
        }
    }
    if p == q {
        return Err(Error::InvalidParams(format!("p and q must differ (both {p})")));
    }
    let fp = &data.factors[p - 1];
    let fq = &data.factors[q - 1];
    let two = S::from_i64(2);
    let eight = S::from_i64(8);
    let np2 = S::from_usize(fp.dim * fp.dim);
    let nq2 = S::from_usize(fq.dim * fq.dim);
    let value = -two.clone() * fp.scal.clone() / np2.clone() - two * fq.scal.clone() / nq2.clone()
        + eight.clone() * fp.a_norm_sq.clone() / np2
        + eight * fq.a_norm_sq.clone() / nq2;
    Ok(PairwiseValue {
        verdict: Verdict::of(&value),
        value,
        direction: format!("π*(ǧ_{p}/n_{p} − ǧ_{q}/n_{q})"),
    })
}

/// Consecutive-difference basis `e_p − e_{p+1}`, `p = 1..count`.
pub fn difference_basis<S: Scalar>(m: usize, count: usize) -> Vec<Vec<S>> {
    (0..count.min(m.saturating_sub(1)))
        .map(|p| {
            let mut v = vec![S::zero(); m];
            v[p] = S::one();
            v[p + 1] = -S::one();
            v
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoindexBound<S> {
    pub q: SymMatrix<S>,
    pub inertia: Inertia,
}

/// Restricts the diagonal form to `span` and counts its negative directions.
///
/// `n_neg` of the result is a lower bound for the coindex. Every span vector
/// must have zero entry sum; linear independence is checked by rank, which is
/// reliable in exact mode and tolerance-free in float mode.
pub fn coindex_lower_bound<S: Scalar>(d: &DiagonalFormData<S>, span: &[Vec<S>]) -> Result<CoindexBound<S>> {
    let m = d.d.len();
    for (a, v) in span.iter().enumerate() {
        if v.len() != m {
            return Err(Error::DimensionMismatch(format!(
                "span vector {a} has length {}, expected {m}",
                v.len()
            )));
        }
        let sum = v.iter().fold(S::zero(), |acc, c| acc + c.clone());
        if sum.abs() > S::default_tol() {
            return Err(Error::SpanNotTraceFree(a));
        }
    }
    if !span.is_empty() {
        let basis = Matrix::from_rows(span.to_vec())?;
        let independent = if S::EXACT {
            basis.rank() == span.len()
        } else {
            let gram = basis.mul(&basis.transpose())?;
            let scale = gram.max_abs().to_f64().max(f64::MIN_POSITIVE);
            let g = SymMatrix::from_upper(span.len(), |i, j| gram[(i, j)].clone());
            crate::exactnum::inertia(&g, &S::from_f64(1e-12 * scale).unwrap()).n_pos == span.len()
        };
        if !independent {
            return Err(Error::SpanDependent);
        }
    }
    let q = SymMatrix::from_upper(span.len(), |a, b| {
        (0..m).fold(S::zero(), |acc, p| {
            acc + span[a][p].clone() * d.d[p].clone() * span[b][p].clone()
        })
    });
    let inertia = inertia_default(&q);
    Ok(CoindexBound { q, inertia })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn data(rows: &[(usize, Rational, Rational)]) -> BaseFactorData<Rational> {
        BaseFactorData::new(
            rows.iter()
                .map(|(n, s, a)| BaseFactor { dim: *n, scal: s.clone(), a_norm_sq: a.clone() })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn pairwise_two_factor_example() {
        let d = data(&[(2, q(4, 1), q(2, 3)), (2, q(4, 1), q(2, 3))]);
        let out = pairwise_value(&d, 1, 2).unwrap();
        assert_eq!(out.value, q(-4, 3));
        assert_eq!(out.verdict, Verdict::Unstable);
        assert_eq!(out.direction, "π*(ǧ_1/n_1 − ǧ_2/n_2)");
    }

    #[test]
    fn pairwise_exact_cancellation() {
        let d = data(&[(3, q(8, 1), q(2, 1)), (5, q(4, 3), q(1, 3))]);
        let out = pairwise_value(&d, 2, 1).unwrap();
        assert_eq!(out.value, q(0, 1));
        assert_eq!(out.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn pairwise_product_of_einstein_factors() {
        let d = data(&[(2, q(2, 1), q(0, 1)), (2, q(2, 1), q(0, 1))]);
        assert_eq!(pairwise_value(&d, 1, 2).unwrap().value, q(-2, 1));
    }

    #[test]
    fn pairwise_index_errors() {
        let d = data(&[(2, q(2, 1), q(0, 1)), (2, q(2, 1), q(0, 1))]);
        assert_eq!(pairwise_value(&d, 1, 3).unwrap_err(), Error::IndexOutOfRange { index: 3, len: 2 });
        assert_eq!(pairwise_value(&d, 0, 1).unwrap_err(), Error::IndexOutOfRange { index: 0, len: 2 });
        assert!(pairwise_value(&d, 1, 1).is_err());
    }

    #[test]
    fn diagonal_coefficient_examples() {
        let d = data(&[(2, q(4, 1), q(2, 3)), (2, q(4, 1), q(2, 3))]);
        assert_eq!(diagonal_coefficients(&d).d, vec![q(-2, 3), q(-2, 3)]);
        let e = q(3, 2);
        let d = data(&[(2, e.clone() * q(2, 1), q(0, 1)), (6, e.clone() * q(6, 1), q(0, 1))]);
        assert_eq!(diagonal_coefficients(&d).d, vec![q(-3, 2), q(-1, 2)]);
        let d = data(&[(2, q(4, 1), q(1, 1)), (4, q(8, 1), q(2, 1))]);
        assert_eq!(diagonal_coefficients(&d).d, vec![q(0, 1), q(0, 1)]);
    }

    #[test]
    fn coindex_examples() {
        let d = DiagonalFormData { d: vec![q(-2, 3), q(-2, 3)] };
        let out = coindex_lower_bound(&d, &[vec![q(1, 1), q(-1, 1)]]).unwrap();
        assert_eq!(out.q[(0, 0)], q(-4, 3));
        assert_eq!(out.inertia.n_neg, 1);

        let span = difference_basis::<Rational>(3, 2);
        let pos = DiagonalFormData { d: vec![q(1, 1); 3] };
        assert_eq!(coindex_lower_bound(&pos, &span).unwrap().inertia.n_neg, 0);
        let neg = DiagonalFormData { d: vec![q(-1, 1); 3] };
        assert_eq!(coindex_lower_bound(&neg, &span).unwrap().inertia.n_neg, 2);
    }

    #[test]
    fn coindex_rejects_bad_spans() {
        let d = DiagonalFormData { d: vec![q(-1, 1); 3] };
        assert_eq!(
            coindex_lower_bound(&d, &[vec![q(1, 1), q(0, 1), q(0, 1)]]).unwrap_err(),
            Error::SpanNotTraceFree(0)
        );
        let v = vec![q(1, 1), q(-1, 1), q(0, 1)];
        let w = vec![q(2, 1), q(-2, 1), q(0, 1)];
        assert_eq!(coindex_lower_bound(&d, &[v, w]).unwrap_err(), Error::SpanDependent);
        let df = DiagonalFormData { d: vec![-1.0; 3] };
        assert_eq!(
            coindex_lower_bound(&df, &[vec![1.0, -1.0, 0.0], vec![2.0, -2.0, 0.0]]).unwrap_err(),
            Error::SpanDependent
        );
    }

    #[test]
    fn too_few_factors() {
        assert!(BaseFactorData::new(vec![BaseFactor { dim: 2, scal: q(1, 1), a_norm_sq: q(0, 1) }]).is_err());
        assert!(BaseFactorData::new(vec![
            BaseFactor { dim: 1, scal: q(1, 1), a_norm_sq: q(0, 1) },
            BaseFactor { dim: 2, scal: q(1, 1), a_norm_sq: q(0, 1) },
        ])
        .is_err());
    }
}
