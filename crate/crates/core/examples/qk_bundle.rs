//! Bundles over products of quaternionic Kähler factors.

use einstein_stability::qk_bundle::{qk_analyze, qk_mu_form_value, qk_pairwise_value, QkConfig, QkFactor};
use einstein_stability::{Rational, Scalar};

fn main() -> einstein_stability::Result<()> {
    let factor = |quat_dim, lambda: i64| QkFactor {
        quat_dim,
        einstein: Rational::one(),
        x: Rational::one(),
        lambda: Rational::from_i64(lambda),
    };
    let equal = QkConfig::new(vec![factor(2, 1), factor(2, 1), factor(2, 1)])?;
    let pair = qk_pairwise_value(&equal, 1, 2)?;
    println!("pairwise: {} {}", pair.value, pair.verdict);
    println!("μ = (1, 0): {}", qk_mu_form_value(&equal, &[Rational::one(), Rational::zero()])?);

    let mixed = QkConfig::new(vec![factor(2, 1), factor(3, 2), factor(2, 4), factor(4, 1)])?;
    let out = qk_analyze(&mixed)?;
    println!("mixed: inertia {:?}, {}, definite by sign {}", out.inertia, out.verdict, out.definite_by_sign);
    if let Some(note) = out.note {
        println!("note: {note}");
    }
    Ok(())
}
