//! Inertia by an independent route: characteristic polynomial plus sign counts.
//!
//! A real symmetric matrix has only real eigenvalues, so Descartes' rule of
//! signs is exact for its characteristic polynomial: the number of sign
//! changes in the coefficients of `p(λ)` counts positive eigenvalues, those of
//! `p(−λ)` count negative ones, and the lowest vanishing order counts zeros.

use crate::exactnum::{Inertia, Rational, Scalar, SymMatrix};

/// Coefficients `c_0..=c_n` of `det(λI − M) = Σ c_k λ^k`, by Faddeev–LeVerrier.
pub fn characteristic_polynomial(m: &SymMatrix<Rational>) -> Vec<Rational> {
    let n = m.dim();
    let a = m.matrix();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    // M_k = A·M_{k−1} + c_{n−k+1} I, c_{n−k} = −tr(A·M_k)/k
    let mut mk = crate::exactnum::Matrix::<Rational>::zeros(n, n);
    for k in 1..=n {
        let mut next = a.mul(&mk).expect("square");
        for i in 0..n {
            next[(i, i)] = next[(i, i)].clone() + coeffs[n - k + 1].clone();
        }
        mk = next;
        let am = a.mul(&mk).expect("square");
        coeffs[n - k] = -am.trace() / Rational::from_usize(k);
    }
    coeffs
}

fn sign_changes(coeffs: impl Iterator<Item = Rational>) -> usize {
    let mut last: Option<bool> = None;
    let mut changes = 0;
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        let positive = c > Rational::zero();
        if last.is_some_and(|p| p != positive) {
            changes += 1;
        }
        last = Some(positive);
    }
    changes
}

/// Inertia from the characteristic polynomial; exact for symmetric input.
pub fn inertia_by_sign_count(m: &SymMatrix<Rational>) -> Inertia {
    let p = characteristic_polynomial(m);
    let n_zero = p.iter().take_while(|c| c.is_zero()).count();
    let n_pos = sign_changes(p.iter().cloned());
    let n_neg = sign_changes(
        p.iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() }),
    );
    Inertia { n_neg, n_zero, n_pos }
}
