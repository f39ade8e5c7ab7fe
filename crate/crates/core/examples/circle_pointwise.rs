//! Correction tensors of `π*ȟ` for a pointwise pair `(ω, ȟ)`, computed by
//! literal index sums and by matrix products.

use einstein_stability::circle_bundle::{
    lemma_corrections_index_sum, lemma_corrections_matrix, prop46_correction, prop46_index_sum, PointwiseTensorPair,
};
use einstein_stability::exactnum::Matrix;
use einstein_stability::{Rational, Scalar, SymMatrix};

fn main() -> einstein_stability::Result<()> {
    let r = Rational::from_i64;
    let omega = Matrix::from_rows(vec![
        vec![r(0), r(2), r(0), r(-1)],
        vec![r(-2), r(0), r(1), r(0)],
        vec![r(0), r(-1), r(0), r(3)],
        vec![r(1), r(0), r(-3), r(0)],
    ])?;
    let h = SymMatrix::from_rows(vec![
        vec![r(1), r(0), r(2), r(0)],
        vec![r(0), r(-1), r(0), r(1)],
        vec![r(2), r(0), r(0), r(0)],
        vec![r(0), r(1), r(0), r(3)],
    ])?;
    let pair = PointwiseTensorPair::new(omega, h)?;
    let slow = lemma_corrections_index_sum(&pair);
    let fast = lemma_corrections_matrix(&pair);
    println!("index sums agree with matrix forms: {}", slow == fast);
    println!("correction {} (index sum {})", prop46_correction(&pair), prop46_index_sum(&pair));
    Ok(())
}
