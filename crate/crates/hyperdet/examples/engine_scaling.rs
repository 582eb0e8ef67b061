//! Times the three engines across orders for side 2 and fits the scaling
//! law of the symmetric fast path. With the contractor precomputed, its
//! contraction cost grows polynomially in the order, while both
//! general-purpose engines grow exponentially.
//!
//! ```text
//! cargo run --release --example engine_scaling
//! ```

use hyperdet::bench::{log_log_slope, run, BenchConfig, BenchEngine};

fn main() -> hyperdet::Result<()> {
    let config = BenchConfig {
        repetitions: 3,
        ..BenchConfig::default()
    };
    let points = run(&config)?;

    println!(
        "{:>4} {:>4} {:<12} {:>10} {:>14} {:>10}",
        "d", "N", "engine", "reduced", "nanos", "ratio"
    );
    for point in &points {
        println!(
            "{:>4} {:>4} {:<12} {:>10} {:>14.1} {:>10.3}",
            point.side,
            point.order,
            point.engine.as_str(),
            point.reduced_length,
            point.nanos,
            point.complexity_ratio
        );
    }

    let symmetric: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.engine == BenchEngine::Symmetric && p.order >= 8)
        .map(|p| (p.order as f64, p.nanos))
        .collect();
    println!(
        "\nlog-log slope of the symmetric engine over N in {{8, 10, 12}}: {:.3}",
        log_log_slope(&symmetric)
    );

    let naive_8 = points
        .iter()
        .find(|p| p.engine == BenchEngine::Naive && p.order == 8)
        .map(|p| p.nanos)
        .unwrap();
    let symmetric_8 = points
        .iter()
        .find(|p| p.engine == BenchEngine::Symmetric && p.order == 8)
        .map(|p| p.nanos)
        .unwrap();
    println!(
        "at N = 8 the naive engine costs {:.1}x the symmetric contraction",
        naive_8 / symmetric_8
    );

    println!("\nJSON lines, one per measurement:");
    for point in &points {
        println!("{}", point.to_json_line());
    }
    Ok(())
}
