//! Shows why symmetric hypermatrices earn a fast path: the d^N entries of a
//! symmetric input collapse into C(d+N-1, N) index orbits, and a precomputed
//! contractor turns the half-vectorization straight into the
//! hyperdeterminant.
//!
//! ```text
//! cargo run --release --example symmetric_fast
//! ```

use std::time::Instant;

use hyperdet::sample;
use hyperdet::vectorize::count_monotone;
use hyperdet::{
    build_contractor, hdet_naive, hdet_symmetric, hvec, hvec_1n, Budgets, Hypermatrix, Rational,
};

fn main() -> hyperdet::Result<()> {
    println!("full versus reduced vectorization length, d = 2");
    println!("{:>3} {:>10} {:>10}", "N", "2^N", "C(N+1,N)");
    for order in (2..=12).step_by(2) {
        println!(
            "{order:>3} {:>10} {:>10}",
            1usize << order,
            count_monotone(2, order)?
        );
    }

    let mut rng = sample::rng(11);
    let a: Hypermatrix<Rational> = sample::symmetric_integer_hypermatrix(2, 8, -9, 9, &mut rng)?;
    let full = hvec(&a);
    let reduced = hvec_1n(&a, 0.0)?;
    println!(
        "\nsample 2x...x2 of order 8: hvec has {} entries, hvec_1n has {}",
        full.len(),
        reduced.len()
    );

    let contractor = build_contractor::<Rational>(2, 8, &Budgets::default())?;
    println!(
        "contractor tensor: order {}, side {}, {} stored entries",
        contractor.tensor().order(),
        contractor.reduced_side(),
        contractor.tensor().shape().element_count()
    );

    let started = Instant::now();
    let fast = hdet_symmetric(&a, &contractor, 0.0)?;
    let fast_time = started.elapsed();
    let started = Instant::now();
    let slow = hdet_naive(&a)?;
    let slow_time = started.elapsed();
    assert_eq!(fast, slow);
    println!("hdet = {fast}");
    println!("  symmetric fast path: {fast_time:?} (contractor already built)");
    println!("  naive expansion:     {slow_time:?}");
    Ok(())
}
