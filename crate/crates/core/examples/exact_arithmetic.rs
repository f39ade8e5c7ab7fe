//! Inertia of symmetric matrices over the rationals and in floating point,
//! plus a damped Newton solve.

use einstein_stability::exactnum::{inertia_default, negative_direction, newton_solve, NewtonOptions};
use einstein_stability::{Rational, Scalar, SymMatrix};

fn main() -> einstein_stability::Result<()> {
    let r = |p, q| Rational::ratio(p, q);
    let m = SymMatrix::from_rows(vec![
        vec![r(1, 2), r(1, 1), r(0, 1)],
        vec![r(1, 1), r(1, 3), r(-1, 4)],
        vec![r(0, 1), r(-1, 4), r(-2, 1)],
    ])?;
    let exact = inertia_default(&m);
    let float = inertia_default(&m.map(|v| v.to_f64()));
    println!("exact inertia {exact:?}");
    println!("float inertia {float:?}");

    if let Some(v) = negative_direction(&m) {
        let shown: Vec<String> = v.iter().map(|c| c.to_string()).collect();
        println!("negative direction [{}], form value {}", shown.join(", "), m.quadratic_form(&v));
    }

    // x² + y² = 2, x = y
    let residual = |x: &[f64]| vec![x[0] * x[0] + x[1] * x[1] - 2.0, x[0] - x[1]];
    let root = newton_solve(&residual, None, &[3.0, 0.5], NewtonOptions::default())?;
    println!("newton root {root:?}");
    Ok(())
}
