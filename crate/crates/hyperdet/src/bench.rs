//! Timing harness for the three engines.
//!
//! Every point times the contraction core alone. Operands that an engine
//! consumes but does not recompute per call, the Levi-Civita power, the
//! contractor, and the reduced vectorization, are prepared outside the
//! timed region, so a point measures the part of the work that scales.
//!
//! Inputs are symmetric integer hypermatrices drawn from the seed, which
//! every engine accepts, and timings use the float backend. Each point is
//! calibrated to a minimum batch duration, repeated, and summarized by the
//! median, and optionally cross-checked against the exact rational value
//! of the same input.

use crate::error::{Error, Result};
use crate::hdet::{
    build_contractor, complexity_ratio, hdet_levicivita, hdet_levicivita_with, hdet_naive,
    Budgets, Contractor,
};
use crate::hypermatrix::Hypermatrix;
use crate::levicivita::epsilon_kron_power;
use crate::sample;
use crate::scalar::Rational;
use crate::vectorize::{count_monotone, hvec_1n, SparseTensor};
use num_traits::ToPrimitive;
use std::hint::black_box;
use std::str::FromStr;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchEngine {
    Naive,
    LeviCivita,
    Symmetric,
}

impl BenchEngine {
    pub fn as_str(self) -> &'static str {
        match self {
            BenchEngine::Naive => "naive",
            BenchEngine::LeviCivita => "levicivita",
            BenchEngine::Symmetric => "symmetric",
        }
    }

    pub fn all() -> [BenchEngine; 3] {
        [
            BenchEngine::Naive,
            BenchEngine::LeviCivita,
            BenchEngine::Symmetric,
        ]
    }
}

impl FromStr for BenchEngine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(BenchEngine::Naive),
            "levicivita" => Ok(BenchEngine::LeviCivita),
            "symmetric" => Ok(BenchEngine::Symmetric),
            other => Err(Error::Parse {
                detail: format!(
                    "unknown bench engine {other:?}, expected \"naive\", \"levicivita\", \
                     or \"symmetric\""
                ),
            }),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub sizes: Vec<(usize, usize)>,
    pub engines: Vec<BenchEngine>,
    pub seed: u64,
    pub repetitions: usize,
    pub min_batch_nanos: u64,
    pub check_against_rational: bool,
    pub budgets: Budgets,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sizes: vec![(2, 2), (2, 4), (2, 6), (2, 8), (2, 10), (2, 12)],
            engines: BenchEngine::all().to_vec(),
            seed: 1,
            repetitions: 5,
            min_batch_nanos: 2_000_000,
            check_against_rational: true,
            budgets: Budgets::default(),
        }
    }
}

/// One timed measurement: the median per-call time of one engine's
/// contraction core at one size.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchPoint {
    pub engine: BenchEngine,
    pub side: usize,
    pub order: usize,
    pub reduced_length: usize,
    pub nanos: f64,
    pub value: f64,
    pub complexity_ratio: f64,
}

impl BenchPoint {
    pub fn to_json_line(&self) -> String {
        let mut object = serde_json::Map::new();
        object.insert("engine".into(), self.engine.as_str().into());
        object.insert("side".into(), (self.side as u64).into());
        object.insert("order".into(), (self.order as u64).into());
        object.insert(
            "reduced_length".into(),
            (self.reduced_length as u64).into(),
        );
        object.insert(
            "nanos".into(),
            serde_json::Number::from_f64(self.nanos)
                .expect("time is finite")
                .into(),
        );
        object.insert(
            "value".into(),
            serde_json::Number::from_f64(self.value)
                .expect("value is finite")
                .into(),
        );
        object.insert(
            "complexity_ratio".into(),
            serde_json::Number::from_f64(self.complexity_ratio)
                .expect("ratio is finite")
                .into(),
        );
        serde_json::Value::Object(object).to_string()
    }
}

fn median(mut samples: Vec<f64>) -> f64 {
    samples.sort_by(|a, b| a.partial_cmp(b).expect("times are finite"));
    samples[samples.len() / 2]
}

fn time_batch<F: FnMut() -> f64>(op: &mut F, batch: u64) -> f64 {
    let start = Instant::now();
    for _ in 0..batch {
        black_box(op());
    }
    start.elapsed().as_nanos() as f64 / batch as f64
}

fn measure<F: FnMut() -> f64>(mut op: F, config: &BenchConfig) -> f64 {
    let once = time_batch(&mut op, 1).max(1.0);
    let batch = ((config.min_batch_nanos as f64 / once).ceil() as u64).clamp(1, 4_000_000);
    let samples = (0..config.repetitions.max(1))
        .map(|_| time_batch(&mut op, batch))
        .collect();
    median(samples)
}

fn prepared_input(side: usize, order: usize, seed: u64) -> Result<Hypermatrix<f64>> {
    let mut rng = sample::rng(seed ^ ((side as u64) << 32) ^ order as u64);
    sample::symmetric_integer_hypermatrix(side, order, -9, 9, &mut rng)
}

fn rational_twin(side: usize, order: usize, seed: u64) -> Result<Hypermatrix<Rational>> {
    let mut rng = sample::rng(seed ^ ((side as u64) << 32) ^ order as u64);
    sample::symmetric_integer_hypermatrix(side, order, -9, 9, &mut rng)
}

/// Runs the configured grid and returns one point per engine and size.
pub fn run(config: &BenchConfig) -> Result<Vec<BenchPoint>> {
    let mut points = Vec::new();
    for &(side, order) in &config.sizes {
        let input = prepared_input(side, order, config.seed)?;
        let reference = if config.check_against_rational {
            let exact = hdet_levicivita(&rational_twin(side, order, config.seed)?, &config.budgets)?;
            Some(exact.to_f64().ok_or(Error::NonFinite { position: 0 })?)
        } else {
            None
        };
        for &engine in &config.engines {
            let point = run_point(&input, engine, side, order, config)?;
            if let Some(exact) = reference {
                let scale = exact.abs().max(1.0);
                if (point.value - exact).abs() > 1e-10 * scale {
                    return Err(Error::Parse {
                        detail: format!(
                            "bench cross-check failed for {} at side {side}, order {order}: \
                             engine gave {}, exact value is {exact}",
                            engine.as_str(),
                            point.value
                        ),
                    });
                }
            }
            points.push(point);
        }
    }
    Ok(points)
}

fn run_point(
    input: &Hypermatrix<f64>,
    engine: BenchEngine,
    side: usize,
    order: usize,
    config: &BenchConfig,
) -> Result<BenchPoint> {
    let ratio = complexity_ratio(side, order);
    let (nanos, value, reduced_length) = match engine {
        BenchEngine::Naive => {
            let value = hdet_naive(input)?;
            let nanos = measure(|| hdet_naive(black_box(input)).expect("sized input"), config);
            (nanos, value, input.shape().element_count())
        }
        BenchEngine::LeviCivita => {
            let power: SparseTensor<f64> =
                epsilon_kron_power(side, order, config.budgets.levicivita_nnz)?;
            let value = hdet_levicivita_with(input, &power)?;
            let nanos = measure(
                || hdet_levicivita_with(black_box(input), black_box(&power)).expect("sized input"),
                config,
            );
            (nanos, value, power.nnz())
        }
        BenchEngine::Symmetric => {
            let contractor: Contractor<f64> = build_contractor(side, order, &config.budgets)?;
            let w = hvec_1n(input, 0.0)?;
            let value = contractor.contract(&w)?;
            let nanos = measure(
                || {
                    black_box(&contractor)
                        .contract(black_box(&w))
                        .expect("sized input")
                },
                config,
            );
            (nanos, value, count_monotone(side, order)?)
        }
    };
    Ok(BenchPoint {
        engine,
        side,
        order,
        reduced_length,
        nanos,
        value,
        complexity_ratio: ratio,
    })
}

/// Least squares slope of `ln y` against `ln x`. Inputs must be positive.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let mean_x: f64 = logs.iter().map(|&(x, _)| x).sum::<f64>() / n;
    let mean_y: f64 = logs.iter().map(|&(_, y)| y).sum::<f64>() / n;
    let mut numerator = 0.0;
    let mut denominator = 0.0;
    for &(x, y) in &logs {
        numerator += (x - mean_x) * (y - mean_y);
        denominator += (x - mean_x) * (x - mean_x);
    }
    numerator / denominator
}
