use std::fmt;

use crate::exactnum::Scalar;

/// Outcome of a one-sided instability test. Stability is never declared.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Unstable,
    Inconclusive,
}

/// Multiple of the tolerance a float value must clear before it counts as negative.
pub const FLOAT_MARGIN: f64 = 10.0;

impl Verdict {
    /// `Unstable` iff `value < 0` (exact) or `value < -10·tol` (float).
    pub fn classify<S: Scalar>(value: &S, tol: &S) -> Classified {
        if S::EXACT {
            let verdict = if *value < S::zero() {
                Verdict::Unstable
            } else {
                Verdict::Inconclusive
            };
            return Classified { verdict, near_zero: false };
        }
        let v = value.to_f64();
        let margin = FLOAT_MARGIN * tol.to_f64();
        if v < -margin {
            Classified { verdict: Verdict::Unstable, near_zero: false }
        } else {
            Classified {
                verdict: Verdict::Inconclusive,
                near_zero: v < 0.0,
            }
        }
    }

    /// Classification at the scalar's default tolerance.
    pub fn of<S: Scalar>(value: &S) -> Verdict {
        Self::classify(value, &S::default_tol()).verdict
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Unstable => "Unstable",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A verdict plus whether a float value fell in the `(-10·tol, 0)` band.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classified {
    pub verdict: Verdict,
    pub near_zero: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    #[test]
    fn exact_sign() {
        assert_eq!(Verdict::of(&Rational::ratio(-1, 1000)), Verdict::Unstable);
        assert_eq!(Verdict::of(&Rational::from_i64(0)), Verdict::Inconclusive);
    }

    #[test]
    fn float_margin_band() {
        let c = Verdict::classify(&-5e-10, &1e-10);
        assert_eq!(c.verdict, Verdict::Inconclusive);
        assert!(c.near_zero);
        assert_eq!(Verdict::classify(&-2e-9, &1e-10).verdict, Verdict::Unstable);
    }
}
