//! Scalar invariants of an Einstein Riemannian submersion with totally geodesic
//! fibers, and the second variation along the canonical TT-direction
//! `g − ((n+r)/n) π*ǧ`.
//!
//! All values are per unit volume of the total space.

use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::verdict::Verdict;

/// Destabilizing direction reported by [`theorem1_value`].
pub const SUBMERSION_DIRECTION: &str = "g − ((n+r)/n)π*ǧ";

/// Validated scalars `(n, r, E, ŝ, š, ‖A‖²)` of an Einstein submersion.
#[derive(Clone, Debug, PartialEq)]
pub struct SubmersionInvariants<S> {
    pub n: usize,
    pub r: usize,
    pub einstein: S,
    pub fiber_scal: S,
    pub base_scal: S,
    pub a_norm_sq: S,
}

impl<S: Scalar> SubmersionInvariants<S> {
    /// Scalar curvature of the total space, `E(n+r)`.
    pub fn total_scal(&self) -> S {
        self.einstein.clone() * S::from_usize(self.n + self.r)
    }

    /// Residual of the fiber equation `ŝ + ‖A‖² = E r`.
    pub fn fiber_residual(&self) -> S {
        self.fiber_scal.clone() + self.a_norm_sq.clone()
            - self.einstein.clone() * S::from_usize(self.r)
    }

    /// Residual of the base equation `š − 2‖A‖² = E n`.
    pub fn base_residual(&self) -> S {
        self.base_scal.clone()
            - S::from_i64(2) * self.a_norm_sq.clone()
            - self.einstein.clone() * S::from_usize(self.n)
    }
}

/// Validates the two Einstein constraints on the scalar data of a submersion.
pub fn check_einstein_invariants<S: Scalar>(
    n: usize,
    r: usize,
    einstein: S,
    fiber_scal: S,
    base_scal: S,
    a_norm_sq: S,
    tol: &S,
) -> Result<SubmersionInvariants<S>> {
    if n < 1 || r < 1 {
        return Err(Error::InvalidParams(format!("n = {n}, r = {r}; both must be >= 1")));
    }
    if a_norm_sq < S::zero() {
        return Err(Error::InvalidParams(format!("‖A‖² = {a_norm_sq} is negative")));
    }
    let inv = SubmersionInvariants {
        n,
        r,
        einstein,
        fiber_scal,
        base_scal,
        a_norm_sq,
    };
    let fiber = inv.fiber_residual();
    if fiber.abs() > *tol {
        return Err(Error::ConstraintViolation {
            equation: "ŝ + ‖A‖² = E·r".into(),
            residual: fiber.to_string(),
        });
    }
    let base = inv.base_residual();
    if base.abs() > *tol {
        return Err(Error::ConstraintViolation {
            equation: "š − 2‖A‖² = E·n".into(),
            residual: base.to_string(),
        });
    }
    Ok(inv)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubmersionValue<S> {
    pub value: S,
    pub verdict: Verdict,
    pub direction: &'static str,
}

/// `(2(n+r)/n²)(r·š − 2n·ŝ)`, the second variation along `g − ((n+r)/n)π*ǧ`.
pub fn theorem1_value<S: Scalar>(inv: &SubmersionInvariants<S>) -> SubmersionValue<S> {
    let n = S::from_usize(inv.n);
    let r = S::from_usize(inv.r);
    let bracket = r * inv.base_scal.clone() - S::from_i64(2) * n.clone() * inv.fiber_scal.clone();
    let value = S::from_i64(2) * S::from_usize(inv.n + inv.r) / n.square() * bracket;
    let verdict = Verdict::of(&value);
    SubmersionValue {
        value,
        verdict,
        direction: SUBMERSION_DIRECTION,
    }
}

/// The same second variation assembled term by term before simplification:
/// `−2s + 4(n+r)E + c²·⟨∇π*ǧ, ∇π*ǧ⟩ − 2c²·⟨R̊π*ǧ, π*ǧ⟩` with `c = (n+r)/n`,
/// `⟨∇π*ǧ, ∇π*ǧ⟩ = 2‖A‖²` and `⟨R̊π*ǧ, π*ǧ⟩ = š − 3‖A‖²`.
pub fn second_variation_long_form<S: Scalar>(inv: &SubmersionInvariants<S>) -> S {
    let two = S::from_i64(2);
    let c = S::from_usize(inv.n + inv.r) / S::from_usize(inv.n);
    let gradient_term = two.clone() * inv.a_norm_sq.clone();
    let curvature_term = inv.base_scal.clone() - S::from_i64(3) * inv.a_norm_sq.clone();
    -two.clone() * inv.total_scal()
        + S::from_i64(4) * S::from_usize(inv.n + inv.r) * inv.einstein.clone()
        + c.square() * gradient_term
        - two * c.square() * curvature_term
}

/// `r n (Ě − 2Ê)` for Einstein fiber and base; negative iff `Ě < 2Ê`.
pub fn canonical_variation_value<S: Scalar>(
    n: usize,
    r: usize,
    fiber_einstein: &S,
    base_einstein: &S,
) -> Result<(S, Verdict)> {
    if n < 1 || r < 1 {
        return Err(Error::InvalidParams(format!("n = {n}, r = {r}; both must be >= 1")));
    }
    let value = S::from_usize(r * n)
        * (base_einstein.clone() - S::from_i64(2) * fiber_einstein.clone());
    let verdict = Verdict::of(&value);
    Ok((value, verdict))
}
