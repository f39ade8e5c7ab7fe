use einstein_stability::circle_bundle::simplex_scan;
use einstein_stability::Rational;

fn main() -> einstein_stability::Result<()> {
    for n in 2..=8 {
        let scan = simplex_scan::<Rational>(n, 12)?;
        println!(
            "n={n}: max f = {} at {:?}, zeros {}, {}",
            scan.max_value,
            scan.argmax.iter().map(ToString::to_string).collect::<Vec<_>>(),
            scan.zeros.len(),
            scan.verdict
        );
    }
    let fine = simplex_scan::<f64>(5, 100)?;
    println!("n=5 at step 1/100 in float: {:.6}", fine.max_value);
    Ok(())
}
