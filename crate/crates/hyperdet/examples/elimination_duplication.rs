//! Walks through the vectorization algebra behind the symmetric fast path:
//! the placement bijection that orders weakly decreasing index tuples, the
//! elimination matrix L that compresses hvec to hvec_1n, and the duplication
//! matrix D that reconstructs hvec from hvec_1n on symmetric inputs.
//!
//! ```text
//! cargo run --example elimination_duplication
//! ```

use hyperdet::sample;
use hyperdet::vectorize::{monotone_indices, placement};
use hyperdet::{
    duplication_matrix, elimination_matrix, hvec, hvec_1n, Hypermatrix, Rational, Scalar,
};

fn main() -> hyperdet::Result<()> {
    let side = 3;
    let order = 3;

    println!("weakly decreasing index tuples for d = {side}, N = {order}, in placement order");
    for index in monotone_indices(side, order)? {
        println!("  position {:>2}: {index}", placement(&index)?);
    }

    let elimination = elimination_matrix::<Rational>(side, order)?;
    let duplication = duplication_matrix::<Rational>(side, order)?;
    println!(
        "\nL is {:?} with {} nonzeros, D is {:?} with {} nonzeros",
        elimination.shape().extents(),
        elimination.nnz(),
        duplication.shape().extents(),
        duplication.nnz()
    );

    let mut rng = sample::rng(5);
    let a: Hypermatrix<Rational> =
        sample::symmetric_integer_hypermatrix(side, order, -9, 9, &mut rng)?;
    let full = hvec(&a);
    let reduced = hvec_1n(&a, 0.0)?;

    assert_eq!(elimination.matvec(&full)?, reduced);
    println!("L . hvec(A) recovers hvec_1n(A) exactly");

    assert_eq!(duplication.matvec(&reduced)?, full);
    println!("D . hvec_1n(A) reconstructs hvec(A) exactly");

    let product = elimination.matmul(&duplication)?;
    let classes = reduced.len();
    assert_eq!(product.nnz(), classes);
    for (index, value) in product.entries() {
        assert_eq!(index.components()[0], index.components()[1]);
        assert_eq!(value, &Rational::from_int(1));
    }
    println!("L . D is the {classes} x {classes} identity");
    Ok(())
}
