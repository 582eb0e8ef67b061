//! Measures multipartite entanglement as twice the absolute
//! hyperdeterminant of the amplitude hypermatrix. Bosonic states have
//! symmetric amplitudes, so their concurrence rides the symmetric fast
//! path for free.
//!
//! ```text
//! cargo run --example bosonic_concurrence
//! ```

use num_complex::Complex64;

use hyperdet::quantum::{bell, ghz, QuditState};
use hyperdet::sample;

fn report(label: &str, state: &QuditState) -> hyperdet::Result<()> {
    let outcome = state.concurrence()?;
    println!(
        "{label:<28} C = {:<22} engine {:<12} boson {}",
        outcome.value,
        outcome.engine.as_str(),
        outcome.boson
    );
    Ok(())
}

fn main() -> hyperdet::Result<()> {
    report("Bell pair", &bell())?;
    report("GHZ, 4 qubits", &ghz(2, 4)?)?;
    report("GHZ, 2 qutrits", &ghz(3, 2)?)?;

    let mut rng = sample::rng(3);
    let product = sample::random_product_state(2, 4, &mut rng)?;
    report("random 4-qubit product", &product)?;

    let w = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let unordered = QuditState::new(2, 2, vec![
        Complex64::new(0.0, 0.0),
        w,
        w,
        Complex64::new(0.0, 0.0),
    ])?;
    report("triplet |01> + |10>", &unordered)?;

    let singlet = QuditState::new(2, 2, vec![
        Complex64::new(0.0, 0.0),
        w,
        -w,
        Complex64::new(0.0, 0.0),
    ])?;
    report("singlet |01> - |10>", &singlet)?;

    let lopsided = QuditState::new(2, 2, vec![
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
    ])?;
    report("|01>, not a boson", &lopsided)?;
    report("|01> symmetrized", &lopsided.symmetrize()?)?;

    println!("\nthe 2-qutrit GHZ value matches 2 * 3^(-3/2) = {}", 2.0 * 3f64.powf(-1.5));
    Ok(())
}
