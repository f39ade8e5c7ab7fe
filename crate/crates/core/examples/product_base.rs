//! Diagonal form over a product base and the coindex bound from a span of
//! trace-free weight vectors.

use einstein_stability::product_base::{
    coindex_lower_bound, diagonal_coefficients, difference_basis, pairwise_value, BaseFactor, BaseFactorData,
};
use einstein_stability::{Rational, Scalar};

fn main() -> einstein_stability::Result<()> {
    let factor = |dim, scal: i64, a: i64| BaseFactor { dim, scal: Rational::from_i64(scal), a_norm_sq: Rational::from_i64(a) };
    let data = BaseFactorData::new(vec![factor(2, 4, 0), factor(2, 4, 1), factor(4, 12, 1)])?;
    let d = diagonal_coefficients(&data);
    println!("d = {:?}", d.d.iter().map(ToString::to_string).collect::<Vec<_>>());

    let pair = pairwise_value(&data, 1, 3)?;
    println!("pair (1,3): {} {} along {}", pair.value, pair.verdict, pair.direction);

    let span = difference_basis::<Rational>(data.len(), data.len() - 1);
    let bound = coindex_lower_bound(&d, &span)?;
    println!("restricted form inertia {:?}, coindex >= {}", bound.inertia, bound.inertia.n_neg);
    Ok(())
}
