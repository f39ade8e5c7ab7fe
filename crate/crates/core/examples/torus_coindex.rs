//! Coindex of an exact Einstein torus bundle from its μ-form.

use einstein_stability::torus_bundle::{analyze_coindex, mu_form_value, AnalyzeOptions, TorusBundleConfig};
use einstein_stability::{Rational, Scalar};

fn main() -> einstein_stability::Result<()> {
    let x = vec![Rational::one(), Rational::ratio(3, 2), Rational::from_i64(2)];
    let config = TorusBundleConfig::einstein_from_scalings(vec![2, 2, 4], vec![vec![1, 1, 1]], x, Rational::ratio(3, 5))?;
    println!("q = {:?}", config.topology.q.iter().map(ToString::to_string).collect::<Vec<_>>());

    let out = analyze_coindex(&config, &Rational::zero(), &AnalyzeOptions::default())?;
    println!("sorted order {:?}", out.permutation);
    println!("μ-form matrix {:?}", out.q.matrix().to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>());
    println!("inertia {:?}, coindex >= {}, bound chain {}", out.inertia, out.coindex_lower_bound(), out.proof_bound_ok);

    let sorted = config.permuted(&out.permutation);
    let mu = vec![Rational::one(), Rational::from_i64(-1)];
    println!("form at μ = (1, -1): {}", mu_form_value(&sorted, &mu, &Rational::zero())?);
    Ok(())
}
