//! Computes one hyperdeterminant with every engine and lets the dispatcher
//! choose on its own.
//!
//! The three engines answer the same question at very different prices:
//! the naive engine expands (d!)^(N-1) signed permutation products, the
//! Levi-Civita engine contracts the sparse Kronecker power of the epsilon
//! tensor against N copies of the vectorization, and the symmetric fast
//! path contracts a tiny precomputed tensor against the half-vectorization
//! whenever the input is symmetric. Run with:
//!
//! ```text
//! cargo run --example hdet_engines
//! ```

use hyperdet::sample;
use hyperdet::{
    hdet, Budgets, EngineChoice, Error, HdetOptions, Hypermatrix, Rational, Scalar, Shape,
};

fn options(engine: EngineChoice) -> HdetOptions {
    HdetOptions {
        engine,
        budgets: Budgets::default(),
        tolerance: None,
        cache_dir: None,
    }
}

fn main() -> hyperdet::Result<()> {
    let mut rng = sample::rng(7);

    let symmetric: Hypermatrix<Rational> =
        sample::symmetric_integer_hypermatrix(2, 4, -9, 9, &mut rng)?;
    println!("symmetric 2x2x2x2 input, one integer per index orbit");
    for engine in [
        EngineChoice::Naive,
        EngineChoice::LeviCivita,
        EngineChoice::SymmetricFast,
        EngineChoice::Auto,
    ] {
        let outcome = hdet(&symmetric, &options(engine))?;
        println!("  {:?} -> {} via {}", engine, outcome.value, outcome.engine);
    }

    let general: Hypermatrix<Rational> = sample::integer_hypermatrix(2, 4, -9, 9, &mut rng)?;
    println!("\ngeneral 2x2x2x2 input, independent entries");
    for engine in [EngineChoice::Naive, EngineChoice::LeviCivita, EngineChoice::Auto] {
        let outcome = hdet(&general, &options(engine))?;
        println!("  {:?} -> {} via {}", engine, outcome.value, outcome.engine);
    }
    match hdet(&general, &options(EngineChoice::SymmetricFast)) {
        Err(Error::NotSymmetric { .. }) => {
            println!("  SymmetricFast -> refused, the input is not symmetric")
        }
        other => panic!("expected a symmetry refusal, got {other:?}"),
    }

    let order_two = Hypermatrix::new(
        Shape::cubical(2, 2)?,
        [1, 3, 2, 4].map(Rational::from_int).to_vec(),
    )?;
    let det = hdet(&order_two, &options(EngineChoice::Auto))?;
    println!("\norder 2 reduces to the determinant: det [[1, 2], [3, 4]] = {}", det.value);

    let odd: Hypermatrix<Rational> = sample::integer_hypermatrix(3, 3, -9, 9, &mut rng)?;
    let zero = hdet(&odd, &options(EngineChoice::Auto))?;
    println!("odd order vanishes identically: 3x3x3 input -> {} via {}", zero.value, zero.engine);
    Ok(())
}
