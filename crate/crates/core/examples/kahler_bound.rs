//! Kähler–Einstein base: the second variation along the witness against its
//! upper bound, as `⟨ȟ(J·,J·), ȟ⟩` ranges over `[−‖ȟ‖², ‖ȟ‖²]`.

use einstein_stability::circle_bundle::kahler_bound_value;
use einstein_stability::{Rational, Scalar};

fn main() -> einstein_stability::Result<()> {
    let (w, h) = (Rational::from_i64(4), Rational::from_i64(3));
    for n in [2usize, 4, 6] {
        for s in [-1, 0, 1] {
            let hj = h.clone() * Rational::from_i64(s);
            let out = kahler_bound_value(n, &w, &h, &hj)?;
            println!("n={n} hJ={hj}: value {} bound {} {}", out.value, out.bound, out.verdict);
        }
    }
    Ok(())
}
