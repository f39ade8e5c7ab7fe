//! Einstein circle bundles described by the singular values of ω.

use einstein_stability::circle_bundle::{circle_einstein_check, f_value, theorem15_from_spectrum, OmegaSpectrum};
use einstein_stability::{Rational, Scalar};

fn main() -> einstein_stability::Result<()> {
    let zero = Rational::zero();
    for (n, b) in [(4, vec![2, 0]), (4, vec![1, 1]), (6, vec![3, 2, 1])] {
        let spectrum = OmegaSpectrum::new(n, b.into_iter().map(Rational::from_i64).collect())?;
        let e = spectrum.omega_norm_sq() / Rational::from_i64(4);
        let t = spectrum.simplex_point().expect("nonzero ω");
        let value = theorem15_from_spectrum(&spectrum, &zero, &zero);
        let f = f_value(&t, n, &zero)?.value;
        let data = circle_einstein_check(n, e.clone(), spectrum, &zero)?;
        println!(
            "n={n} b={:?}: E={e} Ric_ǧ={:?} value {value} f={f}",
            data.spectrum.b().iter().map(ToString::to_string).collect::<Vec<_>>(),
            data.ricci_eigenvalues().iter().map(ToString::to_string).collect::<Vec<_>>()
        );
    }
    Ok(())
}
