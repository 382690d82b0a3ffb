use knill2d::circuit::{census, LocationCensus, LocationType};
use knill2d::malignancy::AlphaMatrix;
use knill2d::threshold::{
    binomial, effective_a, effective_a_counts, effective_b, no_swap_no_memory, restrict_alpha, solve_threshold,
    threshold_report, threshold_table, ThresholdInput,
};
use knill2d::tiles::{build_cnot_exrec, TileSize};
use proptest::prelude::*;

fn census_5x5() -> LocationCensus {
    census(&build_cnot_exrec(TileSize::FiveByFive).noisy).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn effective_b_examples() {
    let a = AlphaMatrix::reference();
    assert_eq!(effective_b(&a, 1.0).unwrap(), 2892.0);
    assert_eq!(effective_b(&a, 0.0).unwrap(), 2118.0);
    assert!((effective_b(&a, 0.1).unwrap() - 2185.86).abs() < 1e-9);
    assert!(effective_b(&a, -0.5).is_err());
}

#[test]
fn effective_a_examples() {
    assert_eq!(effective_a_counts(164, 32, 1.0).unwrap(), 1_235_780.0);
    assert_eq!(effective_a_counts(164, 32, 0.0).unwrap(), 721_764.0);
    assert_eq!(effective_a_counts(0, 0, 0.3).unwrap(), 0.0);
    assert_eq!(effective_a(&census_5x5(), 1.0).unwrap(), 1_235_780.0);
}

#[test]
fn solver_examples() {
    let e = solve_threshold(1_235_780.0, 2892.0).unwrap();
    assert!(rel(e, 3.06e-4) < 0.01, "{e}");
    let a = effective_a_counts(164, 32, 0.1).unwrap();
    let e = solve_threshold(a, 2185.86).unwrap();
    assert!(rel(e, 4.06e-4) < 0.03, "{e}");
    assert_eq!(solve_threshold(1.0, 0.0).unwrap(), 1.0);
    assert!(solve_threshold(0.0, 0.0).is_err());
}

#[test]
fn no_swap_no_memory_variant() {
    let (alpha, c) = no_swap_no_memory(&AlphaMatrix::reference(), &census_5x5());
    // The printed matrix restricted to types 1,2,3,4,6 sums to 716, while
    // the accompanying text quotes 714.
    assert_eq!(alpha.total(), 716);
    assert_eq!((c.gate_total, c.idle()), (116, 0));
    let r = threshold_report(&ThresholdInput { label: "no swap".into(), alpha, census: c, gamma: 1.0 }).unwrap();
    assert!(rel(r.epsilon, 1.05e-3) < 0.05, "{}", r.epsilon);
    let with_714 = solve_threshold(r.a, 714.0).unwrap();
    assert!(with_714 > r.epsilon && rel(with_714, r.epsilon) < 0.01);
}

#[test]
fn restrict_alpha_zeroes_rows_and_columns() {
    let a = restrict_alpha(&AlphaMatrix::reference(), &[LocationType::Swap]);
    for k in 1..=7 {
        assert_eq!(a.get(5, k), 0);
    }
    assert_eq!(a.get(1, 6), AlphaMatrix::reference().get(1, 6));
}

#[test]
fn threshold_is_monotone_in_gamma() {
    let c = census_5x5();
    let inputs: Vec<_> = (0..=20)
        .map(|k| ThresholdInput { label: format!("g{k}"), alpha: AlphaMatrix::reference(), census: c, gamma: k as f64 * 0.05 })
        .collect();
    let reports = threshold_table(&inputs).unwrap();
    for w in reports.windows(2) {
        assert!(w[1].epsilon <= w[0].epsilon);
    }
}

#[test]
fn report_serializes_with_named_fields() {
    let r = threshold_report(&ThresholdInput { label: "x".into(), alpha: AlphaMatrix::reference(), census: census_5x5(), gamma: 1.0 })
        .unwrap();
    let v = serde_json::to_value(&r).unwrap();
    for key in ["A", "B", "epsilon", "inputs", "formula_version"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

fn permuted(alpha: &AlphaMatrix, perm: &[usize; 6]) -> AlphaMatrix {
    let mut out = AlphaMatrix::zero();
    let map = |i: usize| if i == 7 { 7 } else { perm[i - 1] + 1 };
    for i in 1..=7 {
        for j in i..=7 {
            *out.get_mut(map(i), map(j)) = alpha.get(i, j);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn vandermonde(g in 0u64..2000, w in 0u64..2000) {
        prop_assert_eq!(effective_a_counts(g, w, 1.0).unwrap(), binomial(g + w, 3) as f64);
    }

    #[test]
    fn solver_residual(a in 0.0f64..1e8, b in 0.0f64..1e5) {
        prop_assume!(a > 0.0 || b > 0.0);
        let e = solve_threshold(a, b).unwrap();
        prop_assert!(e > 0.0);
        prop_assert!((a * e * e + b * e - 1.0).abs() < 1e-12);
    }

    #[test]
    fn epsilon_decreases_in_a_and_b(a in 1.0f64..1e7, b in 1.0f64..1e4, da in 1.0f64..1e6, db in 1.0f64..1e3) {
        let e = solve_threshold(a, b).unwrap();
        prop_assert!(solve_threshold(a + da, b).unwrap() < e);
        prop_assert!(solve_threshold(a, b + db).unwrap() < e);
    }

    #[test]
    fn gate_type_relabeling_keeps_b(perm in Just([0usize, 1, 2, 3, 4, 5]).prop_shuffle(), gamma in 0.0f64..2.0) {
        let a = AlphaMatrix::reference();
        let p = permuted(&a, &perm);
        prop_assert_eq!(p.total(), a.total());
        prop_assert!((effective_b(&p, gamma).unwrap() - effective_b(&a, gamma).unwrap()).abs() < 1e-9);
    }
}
