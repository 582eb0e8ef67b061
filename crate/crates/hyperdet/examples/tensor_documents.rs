//! Reads and writes the JSON documents the command line tool consumes: a
//! tensor document carrying a flat data array in a declared layout, and a
//! state document carrying complex amplitudes as [re, im] pairs.
//!
//! ```text
//! cargo run --example tensor_documents
//! ```

use hyperdet::doc::{Layout, StateDocument, TensorDocument};
use hyperdet::quantum::ghz;
use hyperdet::{hdet, HdetOptions};

fn main() -> hyperdet::Result<()> {
    let text = r#"{
        "shape": [2, 2, 2, 2],
        "backend": "rational",
        "layout": "first-axis-fastest",
        "data": [3, 1, 1, 4, 1, 4, 4, "-9/2",
                 1, 4, 4, "-9/2", 4, "-9/2", "-9/2", 11]
    }"#;
    let document = TensorDocument::from_json_str(text)?;
    println!(
        "tensor document: shape {:?}, layout {}, backend {:?}",
        document.shape(),
        document.layout().as_str(),
        document.declared_backend()
    );

    let a = document.rational_hypermatrix()?;
    println!("symmetric: {}", a.is_symmetric(0.0)?);
    let outcome = hdet(&a, &HdetOptions::default())?;
    println!("hdet = {} via {}", outcome.value, outcome.engine);

    let mut last_fastest = TensorDocument::from_json_str(
        r#"{"shape": [2, 2], "data": [1, 2, 3, 4]}"#,
    )?;
    last_fastest.set_layout(Layout::LastAxisFastest);
    let row_major = last_fastest.rational_hypermatrix()?;
    let column_major = TensorDocument::from_json_str(
        r#"{"shape": [2, 2], "layout": "first-axis-fastest", "data": [1, 3, 2, 4]}"#,
    )?
    .rational_hypermatrix()?;
    assert_eq!(row_major, column_major);
    println!("the two layouts describe the same matrix once assembled");

    let round_trip = TensorDocument::from_json_str(&document.to_json(false))?;
    assert_eq!(round_trip.rational_hypermatrix()?, a);
    println!("document -> hypermatrix -> document round trips exactly");

    let state = ghz(2, 4)?;
    let state_document = StateDocument::from_state(&state);
    println!("\nstate document for the 4-qubit GHZ state:");
    println!("{}", state_document.to_json(true));
    let back = state_document.to_state()?;
    println!("concurrence after the round trip: {}", back.concurrence()?.value);
    Ok(())
}
