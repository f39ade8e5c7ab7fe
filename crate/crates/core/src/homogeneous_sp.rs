//! The normal homogeneous Einstein metric on `Sp(mq)/(Sp(q)×…×Sp(q))` fibered
//! over `Sp(mq)/(Sp(kq)×Sp(q)×…×Sp(q))` with fiber `Sp(kq)/(Sp(q)×…×Sp(q))`.
//!
//! Everything here is exact; the verdict thresholds are sharp integer
//! inequalities.

use num::{BigInt, ToPrimitive};

use crate::error::{Error, Result};
use crate::exactnum::{Rational, Scalar};
use crate::verdict::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpFamilyParams {
    pub m: u32,
    pub q: u32,
    pub k: u32,
}

impl SpFamilyParams {
    /// Requires `m >= 3`, `q >= 1`, `1 < k < m`.
    pub fn new(m: u32, q: u32, k: u32) -> Result<Self> {
        if m < 3 {
            return Err(Error::InvalidParams(format!("m = {m} must be >= 3")));
        }
        if q < 1 {
            return Err(Error::InvalidParams(format!("q = {q} must be >= 1")));
        }
        if k <= 1 || k >= m {
            return Err(Error::InvalidParams(format!("k = {k} must satisfy 1 < k < m = {m}")));
        }
        Ok(SpFamilyParams { m, q, k })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpInvariants {
    pub r: BigInt,
    pub n: BigInt,
    pub fiber_scal: Rational,
    pub base_scal: Rational,
    pub fiber_einstein: Rational,
    /// Ricci eigenvalues of `ǧ` on the `ν_kq⊗ν_q` and `ν_q⊗ν_q` summands.
    pub ricci_eigs: (Rational, Rational),
    /// `r·š − 2n·ŝ`.
    pub quantity: Rational,
    /// `½(qm(m−k−3) − 2q(k−1) − 2m − 2(k−1))`.
    pub bracket: Rational,
}

fn int(v: i64) -> Rational {
    Rational::from_i64(v)
}

/// Closed-form invariants of the fibration for the given parameters.
pub fn sp_invariants(p: SpFamilyParams) -> SpInvariants {
    let (m, q, k) = (i64::from(p.m), i64::from(p.q), i64::from(p.k));
    let (mr, qr, kr) = (int(m), int(q), int(k));
    let mq1 = int(m * q + 1);
    let kq1 = int(k * q + 1);

    let r = BigInt::from(2 * k * (k - 1)) * BigInt::from(q * q);
    let n = BigInt::from(2 * (m - k) * (m + k - 1)) * BigInt::from(q * q);
    let fiber_einstein =
        Rational::ratio(1, 4) * (int(1) + int(2 * q + 1) / kq1.clone()) * (kq1 / mq1.clone());
    let fiber_scal = int(k * (k - 1) * q * q) / (int(2) * mq1.clone()) * int(q * k + 2 * q + 2);
    let ricci_eigs = (
        Rational::ratio(1, 4) * (int(1) + int(k * q + q + 1) / mq1.clone()),
        Rational::ratio(1, 4) * (int(1) + int(2 * q + 1) / mq1.clone()),
    );
    let inner = (mr.clone() + kr.clone() + int(1)) * kr.clone() * qr.clone()
        + int(2) * kr.clone()
        + int(m - k - 1) / int(2) * int(m * q + 2 * q + 2);
    let base_scal = int(q * q * (m - k)) / mq1.clone() * inner;
    let quantity = Rational::from_integer(r.clone()) * base_scal.clone()
        - int(2) * Rational::from_integer(n.clone()) * fiber_scal.clone();
    let bracket = Rational::ratio(1, 2)
        * int(q * m * (m - k - 3) - 2 * q * (k - 1) - 2 * m - 2 * (k - 1));
    SpInvariants { r, n, fiber_scal, base_scal, fiber_einstein, ricci_eigs, quantity, bracket }
}

/// `š` recomputed as the eigenvalue-weighted sum over the isotropy summands:
/// `m−k` summands of dimension `4kq²` and `(m−k)(m−k−1)/2` of dimension `4q²`.
pub fn base_scal_from_eigenvalues(p: SpFamilyParams, inv: &SpInvariants) -> Rational {
    let (m, q, k) = (i64::from(p.m), i64::from(p.q), i64::from(p.k));
    int((m - k) * 4 * k * q * q) * inv.ricci_eigs.0.clone()
        + int((m - k) * (m - k - 1) / 2 * 4 * q * q) * inv.ricci_eigs.1.clone()
}

/// `2k(k−1)(m−k)q⁴/(mq+1)`.
pub fn sp_prefactor(p: SpFamilyParams) -> Rational {
    let (m, q, k) = (i64::from(p.m), i64::from(p.q), i64::from(p.k));
    int(2 * k * (k - 1) * (m - k)) * int(q).powi(4) / int(m * q + 1)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpQuantity {
    pub value: Rational,
    pub bracket: Rational,
    pub verdict: Verdict,
}

/// `r·š − 2n·ŝ`, computed directly and as prefactor × simplified bracket.
///
/// # Panics
/// If the two routes disagree, which would mean the closed forms are wrong.
pub fn sp_quantity(p: SpFamilyParams) -> SpQuantity {
    let inv = sp_invariants(p);
    let factored = sp_prefactor(p) * inv.bracket.clone();
    assert_eq!(inv.quantity, factored, "direct and factored forms disagree at {p:?}");
    SpQuantity { verdict: Verdict::of(&inv.quantity), value: inv.quantity, bracket: inv.bracket }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpScanRow {
    pub params: SpFamilyParams,
    pub value: Rational,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpScan {
    pub rows: Vec<SpScanRow>,
    /// Rows violating `m − 3 <= k ⇒ Unstable`.
    pub violations_near_top: Vec<SpFamilyParams>,
    /// Rows with `k = m − 4` violating `Unstable ⇔ 10(q+1)/(q+4) < m`.
    pub violations_k_m_minus_4: Vec<SpFamilyParams>,
}

impl SpScan {
    pub fn all_hold(&self) -> bool {
        self.violations_near_top.is_empty() && self.violations_k_m_minus_4.is_empty()
    }
}

/// Every admissible `(m, q, k)` with `m <= m_max`, `q <= q_max`, in lexicographic order.
pub fn sp_scan(m_max: u32, q_max: u32) -> Result<SpScan> {
    if m_max < 3 || q_max < 1 {
        return Err(Error::InvalidParams(format!("need m_max >= 3 and q_max >= 1, got ({m_max}, {q_max})")));
    }
    let mut scan = SpScan { rows: Vec::new(), violations_near_top: Vec::new(), violations_k_m_minus_4: Vec::new() };
    for m in 3..=m_max {
        for q in 1..=q_max {
            for k in 2..m {
                let params = SpFamilyParams { m, q, k };
                let out = sp_quantity(params);
                let unstable = out.verdict == Verdict::Unstable;
                if m <= k + 3 && !unstable {
                    scan.violations_near_top.push(params);
                }
                if k + 4 == m {
                    let threshold = Rational::ratio(10 * (i64::from(q) + 1), i64::from(q) + 4);
                    if unstable != (threshold < int(i64::from(m))) {
                        scan.violations_k_m_minus_4.push(params);
                    }
                }
                scan.rows.push(SpScanRow { params, value: out.value, verdict: out.verdict });
            }
        }
    }
    Ok(scan)
}

/// Destabilizing ranges stated for the sibling families; recorded as data only.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyThreshold {
    pub total_space: &'static str,
    pub base: &'static str,
    pub assumptions: &'static str,
    pub destabilizing_when: &'static str,
}

pub const SIBLING_THRESHOLDS: [FamilyThreshold; 2] = [
    FamilyThreshold {
        total_space: "SU(mq)/S(U(q)×…×U(q))",
        base: "SU(mq)/S(U(kq)×U(q)×…×U(q))",
        assumptions: "q >= 2, m >= 3, k >= 2",
        destabilizing_when: "m − 3 <= k",
    },
    FamilyThreshold {
        total_space: "SO(mq)/(SO(q)×…×SO(q))",
        base: "SO(mq)/(SO(kq)×SO(q)×…×SO(q))",
        assumptions: "q >= 4, m >= 3, k >= 2",
        destabilizing_when: "m − 2 <= k",
    },
];

/// Integer fiber and base dimensions as machine integers.
pub fn dimensions(inv: &SpInvariants) -> (u64, u64) {
    (inv.r.to_u64().unwrap_or(u64::MAX), inv.n.to_u64().unwrap_or(u64::MAX))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn smallest_member() {
        let p = SpFamilyParams::new(3, 1, 2).unwrap();
        let inv = sp_invariants(p);
        assert_eq!(dimensions(&inv), (4, 8));
        assert_eq!(inv.fiber_scal, q(3, 2));
        assert_eq!(inv.base_scal, q(4, 1));
        assert_eq!(inv.fiber_einstein, q(3, 8));
        assert_eq!(inv.ricci_eigs, (q(1, 2), q(7, 16)));
        assert_eq!(base_scal_from_eigenvalues(p, &inv), q(4, 1));
        let out = sp_quantity(p);
        assert_eq!(out.value, q(-8, 1));
        assert_eq!(out.verdict, Verdict::Unstable);
    }

    #[test]
    fn invalid_params() {
        assert!(SpFamilyParams::new(3, 1, 1).is_err());
        assert!(SpFamilyParams::new(3, 1, 3).is_err());
        assert!(SpFamilyParams::new(2, 1, 1).is_err());
        assert!(SpFamilyParams::new(4, 0, 2).is_err());
    }

    #[test]
    fn k_equals_m_minus_4() {
        let out = sp_quantity(SpFamilyParams::new(6, 1, 2).unwrap());
        assert_eq!(out.bracket, q(-5, 1));
        assert_eq!(out.verdict, Verdict::Unstable);
        let out = sp_quantity(SpFamilyParams::new(8, 16, 4).unwrap());
        assert_eq!(out.bracket, q(5, 1));
        assert_eq!(out.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn scan_assertions_hold() {
        let scan = sp_scan(12, 8).unwrap();
        assert!(scan.all_hold(), "{scan:?}");
        assert_eq!(scan.rows.len(), (3..=12u32).map(|m| (m as usize - 2) * 8).sum::<usize>());
        let tiny = sp_scan(3, 1).unwrap();
        assert_eq!(tiny.rows.len(), 1);
        assert_eq!(tiny.rows[0].verdict, Verdict::Unstable);
    }

    #[test]
    fn fiber_is_einstein_and_base_sum_matches() {
        for row in sp_scan(9, 5).unwrap().rows {
            let inv = sp_invariants(row.params);
            assert_eq!(inv.fiber_scal, Rational::from_integer(inv.r.clone()) * inv.fiber_einstein.clone());
            assert_eq!(inv.base_scal, base_scal_from_eigenvalues(row.params, &inv));
        }
    }
}
