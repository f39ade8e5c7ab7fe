//! Second variation of an Einstein submersion along `g − ((n+r)/n)π*ǧ`.

use einstein_stability::submersion::{check_einstein_invariants, second_variation_long_form, theorem1_value};
use einstein_stability::{Rational, Scalar};

fn main() -> einstein_stability::Result<()> {
    // S³ × S³ as a trivial submersion over S³: no A-tensor, E = 2.
    let product = check_einstein_invariants(
        3,
        3,
        Rational::from_i64(2),
        Rational::from_i64(6),
        Rational::from_i64(6),
        Rational::zero(),
        &Rational::zero(),
    )?;
    // Hopf fibration S¹ → S³ → S²(1/2) with E = 2.
    let hopf = check_einstein_invariants(
        2,
        1,
        Rational::from_i64(2),
        Rational::zero(),
        Rational::from_i64(8),
        Rational::from_i64(2),
        &Rational::zero(),
    )?;

    for (name, inv) in [("product", &product), ("hopf", &hopf)] {
        let v = theorem1_value(inv);
        println!(
            "{name}: value {} (long form {}), {} along {}",
            v.value,
            second_variation_long_form(inv),
            v.verdict,
            v.direction
        );
    }

    let bad = check_einstein_invariants(3, 3, 2.0, 5.0, 6.0, 0.0, &1e-10);
    println!("violated constraint: {}", bad.unwrap_err());
    Ok(())
}
