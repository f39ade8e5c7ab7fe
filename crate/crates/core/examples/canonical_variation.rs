use einstein_stability::submersion::canonical_variation_value;
use einstein_stability::Rational;

fn main() -> einstein_stability::Result<()> {
    let cases = [(2, 2, "1", "1"), (2, 2, "1", "2"), (4, 3, "3", "1")];
    for (n, r, fiber, base) in cases {
        let fiber: Rational = fiber.parse().expect("rational");
        let base: Rational = base.parse().expect("rational");
        let (value, verdict) = canonical_variation_value(n, r, &fiber, &base)?;
        println!("n={n} r={r} Ê={fiber} Ě={base}: {value} {verdict}");
    }
    Ok(())
}
