//! Acceptance gate: one test per criterion, each printing exactly one
//! pass or fail line in the harness output.

use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;

use hyperdet::bench::{log_log_slope, run, BenchConfig, BenchEngine};
use hyperdet::cache::{ensure_contractor, ensure_epsilon_power, Provenance};
use hyperdet::levicivita::epsilon_kron_power;
use hyperdet::quantum::{bell, ghz};
use hyperdet::sample;
use hyperdet::vectorize::{count_monotone, monotone_indices, sym_t};
use hyperdet::{
    build_contractor, complexity_ratio, hdet_levicivita, hdet_naive, hdet_symmetric,
    duplication_matrix, elimination_matrix, hvec, hvec_1n, Budgets, Hypermatrix, MultiIndex,
    QuditState, Rational, Scalar, Shape,
};

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    let mut result = 1u64;
    for i in 0..k {
        result = result * (n - i) / (i + 1);
    }
    result
}

fn entry(a: &Hypermatrix<Rational>, components: Vec<usize>) -> Rational {
    a.get(&MultiIndex::new(components)).unwrap().clone()
}

#[test]
fn criterion_01_general_engines_agree_exactly() {
    let started = Instant::now();
    let budgets = Budgets::default();
    let mut rng = sample::rng(101);
    for (side, order) in [(2, 2), (2, 4), (3, 2), (2, 6), (3, 4)] {
        for _ in 0..50 {
            let a: Hypermatrix<Rational> =
                sample::integer_hypermatrix(side, order, -9, 9, &mut rng).unwrap();
            assert_eq!(
                hdet_levicivita(&a, &budgets).unwrap(),
                hdet_naive(&a).unwrap(),
                "disagreement at side {side}, order {order}"
            );
        }
    }
    assert!(started.elapsed().as_secs() < 60);
}

#[test]
fn criterion_02_symmetric_engine_agrees_exactly() {
    let started = Instant::now();
    let budgets = Budgets::default();
    let mut rng = sample::rng(102);
    for (side, order) in [(2, 2), (2, 4), (2, 6), (2, 8), (3, 2), (3, 4)] {
        let contractor = build_contractor::<Rational>(side, order, &budgets).unwrap();
        for _ in 0..50 {
            let a: Hypermatrix<Rational> =
                sample::symmetric_integer_hypermatrix(side, order, -9, 9, &mut rng).unwrap();
            assert_eq!(
                hdet_symmetric(&a, &contractor, 0.0).unwrap(),
                hdet_naive(&a).unwrap(),
                "disagreement at side {side}, order {order}"
            );
        }
    }
    assert!(started.elapsed().as_secs() < 120);
}

#[test]
fn criterion_03_elimination_and_duplication_identities() {
    let mut rng = sample::rng(103);
    for (side, order) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)] {
        let elimination = elimination_matrix::<Rational>(side, order).unwrap();
        let duplication = duplication_matrix::<Rational>(side, order).unwrap();
        let classes = count_monotone(side, order).unwrap();

        let product = elimination.matmul(&duplication).unwrap();
        assert_eq!(product.nnz(), classes);
        for (index, value) in product.entries() {
            assert_eq!(index.components()[0], index.components()[1]);
            assert_eq!(value, &Rational::from_int(1));
        }

        for _ in 0..100 {
            let a: Hypermatrix<Rational> =
                sample::symmetric_integer_hypermatrix(side, order, -9, 9, &mut rng).unwrap();
            let full = hvec(&a);
            let reduced = hvec_1n(&a, 0.0).unwrap();
            assert_eq!(elimination.matvec(&full).unwrap(), reduced);
            assert_eq!(duplication.matvec(&reduced).unwrap(), full);
        }
    }
}

#[test]
fn criterion_04_odd_order_vanishes_on_every_engine() {
    let budgets = Budgets::default();
    let zero = Rational::from_int(0);
    let mut rng = sample::rng(104);
    for (side, order) in [(2, 3), (3, 3), (2, 5)] {
        let contractor = build_contractor::<Rational>(side, order, &budgets).unwrap();
        for _ in 0..20 {
            let a: Hypermatrix<Rational> =
                sample::integer_hypermatrix(side, order, -9, 9, &mut rng).unwrap();
            assert_eq!(hdet_naive(&a).unwrap(), zero);
            assert_eq!(hdet_levicivita(&a, &budgets).unwrap(), zero);

            let s: Hypermatrix<Rational> =
                sample::symmetric_integer_hypermatrix(side, order, -9, 9, &mut rng).unwrap();
            assert_eq!(hdet_naive(&s).unwrap(), zero);
            assert_eq!(hdet_levicivita(&s, &budgets).unwrap(), zero);
            assert_eq!(hdet_symmetric(&s, &contractor, 0.0).unwrap(), zero);
        }
    }
}

fn laplace_determinant(a: &Hypermatrix<Rational>, rows: &[usize], cols: &[usize]) -> Rational {
    if rows.len() == 1 {
        return entry(a, vec![rows[0], cols[0]]);
    }
    let mut acc = Rational::from_int(0);
    for (k, &row) in rows.iter().enumerate() {
        let minor_rows: Vec<usize> = rows
            .iter()
            .copied()
            .filter(|&r| r != row)
            .collect();
        let minor = laplace_determinant(a, &minor_rows, &cols[1..]);
        let signed = if k % 2 == 0 { minor } else { -minor };
        acc += entry(a, vec![row, cols[0]]) * signed;
    }
    acc
}

#[test]
fn criterion_05_order_two_reduces_to_the_determinant() {
    let budgets = Budgets::default();
    let mut rng = sample::rng(105);
    for instance in 0..100usize {
        let side = 1 + instance % 4;
        let shape = Shape::cubical(side, 2).unwrap();
        let data: Vec<Rational> = (0..shape.element_count())
            .map(|_| {
                let numerator = rng.random_range(-9..=9);
                let denominator = rng.random_range(1..=9) as u64;
                Rational::from_int(numerator).div_exact(denominator)
            })
            .collect();
        let a = Hypermatrix::new(shape, data).unwrap();
        let axes: Vec<usize> = (1..=side).collect();
        let expected = laplace_determinant(&a, &axes, &axes);
        assert_eq!(hdet_naive(&a).unwrap(), expected);
        assert_eq!(hdet_levicivita(&a, &budgets).unwrap(), expected);
    }
}

#[test]
fn criterion_06_symmetrizer_partition_and_reduced_length() {
    let mut rng = sample::rng(106);
    for side in 2..=4usize {
        for order in 2..=4usize {
            let shape = Shape::cubical(side, order).unwrap();
            let mut total = Hypermatrix::<Rational>::zeros(shape.clone());
            for index in monotone_indices(side, order).unwrap() {
                let tensor = sym_t::<Rational>(&index).unwrap().densify().unwrap();
                total = total.try_add(&tensor).unwrap();
            }
            let ones = Hypermatrix::new(
                shape,
                vec![Rational::from_int(1); side.pow(order as u32)],
            )
            .unwrap();
            assert_eq!(total, ones);

            let a: Hypermatrix<Rational> =
                sample::symmetric_integer_hypermatrix(side, order, -9, 9, &mut rng).unwrap();
            let expected_length = binomial((side + order - 1) as u64, order as u64) as usize;
            assert_eq!(hvec_1n(&a, 0.0).unwrap().len(), expected_length);
            assert_eq!(count_monotone(side, order).unwrap(), expected_length);
        }
    }
}

fn naive_concurrence(state: &QuditState) -> f64 {
    2.0 * hdet_naive(&state.to_hypermatrix()).unwrap().norm()
}

#[test]
fn criterion_07_concurrence_matches_the_naive_oracle() {
    let bell_state = bell();
    let bell_value = bell_state.concurrence().unwrap().value;
    assert!((bell_value - 1.0).abs() <= 1e-10);
    assert!((bell_value - naive_concurrence(&bell_state)).abs() <= 1e-10);

    let ghz_four = ghz(2, 4).unwrap();
    let ghz_value = ghz_four.concurrence().unwrap().value;
    assert!((ghz_value - 1.0).abs() <= 1e-10);
    assert!((ghz_value - naive_concurrence(&ghz_four)).abs() <= 1e-10);

    let mut rng = sample::rng(107);
    for instance in 0..20 {
        let particles = if instance % 2 == 0 { 2 } else { 4 };
        let product = sample::random_product_state(2, particles, &mut rng).unwrap();
        let value = product.concurrence().unwrap().value;
        assert!(value.abs() <= 1e-10, "product state gave {value}");
        assert!(naive_concurrence(&product) <= 1e-10);
    }

    for _ in 0..20 {
        let state = sample::random_state(2, 2, &mut rng).unwrap();
        let u = sample::random_unitary2(&mut rng);
        let v = sample::random_unitary2(&mut rng);
        let mut transformed = vec![Complex64::new(0.0, 0.0); 4];
        for i in 1..=2usize {
            for j in 1..=2usize {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 1..=2usize {
                    for l in 1..=2usize {
                        acc += u.get(i, k) * v.get(j, l) * state.amplitude(&[k, l]).unwrap();
                    }
                }
                transformed[(i - 1) + 2 * (j - 1)] = acc;
            }
        }
        let rotated = QuditState::new(2, 2, transformed).unwrap();
        let before = state.concurrence().unwrap().value;
        let after = rotated.concurrence().unwrap().value;
        assert!(
            (before - after).abs() <= 1e-9,
            "local unitaries moved the concurrence from {before} to {after}"
        );
    }
}

#[test]
fn criterion_08_cost_ratio_positive_except_wide_even_binary() {
    for side in 2..=6usize {
        for order in 2..=10usize {
            let ratio = complexity_ratio(side, order);
            if side == 2 && order >= 3 {
                assert!(
                    ratio <= 0.0,
                    "expected a nonpositive ratio at side {side}, order {order}, got {ratio}"
                );
                if order > 3 {
                    assert!(ratio < 0.0);
                }
            } else {
                assert!(
                    ratio > 0.0,
                    "expected a positive ratio at side {side}, order {order}, got {ratio}"
                );
            }
        }
    }
    assert_eq!(complexity_ratio(2, 3), 0.0);
}

#[test]
fn criterion_09_symmetric_engine_scales_polynomially() {
    let dir = tempfile::tempdir().unwrap();
    let budgets = Budgets::default();
    let (_, first) = ensure_contractor::<f64>(2, 12, dir.path(), &budgets).unwrap();
    assert_eq!(first, Provenance::Built);
    let (warm, second) = ensure_contractor::<f64>(2, 12, dir.path(), &budgets).unwrap();
    assert_eq!(second, Provenance::CacheHit);
    let mut rng = sample::rng(109);
    let a: Hypermatrix<f64> = sample::symmetric_integer_hypermatrix(2, 12, -9, 9, &mut rng).unwrap();
    let started = Instant::now();
    let value = hdet_symmetric(&a, &warm, 0.0).unwrap();
    let elapsed = started.elapsed();
    assert!(value.is_finite());
    assert!(elapsed.as_secs_f64() < 1.0, "warm run took {elapsed:?}");

    let config = BenchConfig {
        sizes: vec![(2, 8), (2, 10), (2, 12)],
        engines: vec![BenchEngine::Naive, BenchEngine::Symmetric],
        ..BenchConfig::default()
    };
    let points = run(&config).unwrap();
    let symmetric: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.engine == BenchEngine::Symmetric)
        .map(|p| (p.order as f64, p.nanos))
        .collect();
    let slope = log_log_slope(&symmetric);
    assert!(slope <= 3.0, "log-log slope {slope} exceeds 3");

    let naive_8 = points
        .iter()
        .find(|p| p.engine == BenchEngine::Naive && p.order == 8)
        .unwrap()
        .nanos;
    let symmetric_8 = points
        .iter()
        .find(|p| p.engine == BenchEngine::Symmetric && p.order == 8)
        .unwrap()
        .nanos;
    assert!(
        naive_8 >= 10.0 * symmetric_8,
        "naive took {naive_8} ns, symmetric {symmetric_8} ns"
    );
}

#[test]
fn criterion_10_cache_round_trip_is_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let budgets = Budgets::default();
    let mut rng = sample::rng(110);

    let cold_rational = build_contractor::<Rational>(2, 8, &budgets).unwrap();
    let (_, built) = ensure_contractor::<Rational>(2, 8, dir.path(), &budgets).unwrap();
    assert_eq!(built, Provenance::Built);
    let (warm_rational, hit) = ensure_contractor::<Rational>(2, 8, dir.path(), &budgets).unwrap();
    assert_eq!(hit, Provenance::CacheHit);
    assert_eq!(warm_rational, cold_rational);

    let cold_float = build_contractor::<f64>(2, 8, &budgets).unwrap();
    let (_, _) = ensure_contractor::<f64>(2, 8, dir.path(), &budgets).unwrap();
    let (warm_float, hit) = ensure_contractor::<f64>(2, 8, dir.path(), &budgets).unwrap();
    assert_eq!(hit, Provenance::CacheHit);
    let cold_bits: Vec<u64> = cold_float.tensor().data().iter().map(|v| v.to_bits()).collect();
    let warm_bits: Vec<u64> = warm_float.tensor().data().iter().map(|v| v.to_bits()).collect();
    assert_eq!(cold_bits, warm_bits);

    for _ in 0..20 {
        let a: Hypermatrix<Rational> =
            sample::symmetric_integer_hypermatrix(2, 8, -9, 9, &mut rng).unwrap();
        assert_eq!(
            hdet_symmetric(&a, &warm_rational, 0.0).unwrap(),
            hdet_symmetric(&a, &cold_rational, 0.0).unwrap()
        );
        let f: Hypermatrix<f64> =
            sample::symmetric_integer_hypermatrix(2, 8, -9, 9, &mut rng).unwrap();
        assert_eq!(
            hdet_symmetric(&f, &warm_float, 0.0).unwrap().to_bits(),
            hdet_symmetric(&f, &cold_float, 0.0).unwrap().to_bits()
        );
    }

    let power = epsilon_kron_power::<Rational>(2, 6, budgets.levicivita_nnz).unwrap();
    let (stored_power, built) =
        ensure_epsilon_power::<Rational>(2, 6, dir.path(), budgets.levicivita_nnz).unwrap();
    assert_eq!(built, Provenance::Built);
    assert_eq!(stored_power, power);
    let (loaded_power, hit) =
        ensure_epsilon_power::<Rational>(2, 6, dir.path(), budgets.levicivita_nnz).unwrap();
    assert_eq!(hit, Provenance::CacheHit);
    assert_eq!(loaded_power.entries(), power.entries());
}
