//! Builds the Levi-Civita symbol and its tensor Kronecker powers, the sparse
//! machinery behind the general-purpose hyperdeterminant engine.
//!
//! The symbol for side d has d! nonzeros, one per permutation, so the N-th
//! Kronecker power has (d!)^N. Swapping two of the d axes flips every factor
//! once, which scales the power by (-1)^N: the even powers are symmetric
//! under axis swaps and the odd powers are antisymmetric.
//!
//! ```text
//! cargo run --example levi_civita_power
//! ```

use hyperdet::levicivita::{epsilon_kron_power, levi_civita, power_nnz};
use hyperdet::scalar::Scalar;
use hyperdet::Rational;

fn main() -> hyperdet::Result<()> {
    let epsilon = levi_civita::<Rational>(3)?;
    println!("Levi-Civita symbol for d = 3: {} nonzeros", epsilon.nnz());
    for (index, value) in epsilon.entries() {
        println!("  epsilon{index} = {value}");
    }

    println!("\nnonzeros of the N-th Kronecker power");
    println!("{:>3} {:>12} {:>16}", "N", "d = 2", "d = 3");
    for order in 2..=6 {
        println!(
            "{order:>3} {:>12} {:>16}",
            power_nnz(2, order)?,
            power_nnz(3, order)?
        );
    }

    let budget = 1_000_000;
    let even = epsilon_kron_power::<Rational>(2, 2, budget)?;
    let odd = epsilon_kron_power::<Rational>(2, 3, budget)?;
    println!(
        "\npower for d = 2, N = 2: shape {:?}, entries",
        even.shape().extents()
    );
    for (index, value) in even.entries() {
        println!("  {index} -> {value}");
    }

    assert_eq!(even.swap_axes(1, 2)?, even);
    println!("swapping axes of the even power leaves it unchanged");
    assert_eq!(odd.swap_axes(1, 2)?, odd.scaled(&Rational::from_int(-1)));
    println!("swapping axes of the odd power negates it");
    Ok(())
}
