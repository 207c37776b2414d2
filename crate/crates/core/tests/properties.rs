mod props;

#[test]
fn weil_validation() {
    props::weil_validation().unwrap();
}

#[test]
fn newton_invariants() {
    props::newton_invariants().unwrap();
}

#[test]
fn snf_round_trip() {
    props::snf_round_trip().unwrap();
}

#[test]
fn kernel_brute_force() {
    props::kernel_brute_force().unwrap();
}

#[test]
fn weight_inequalities() {
    props::weight_inequalities().unwrap();
}

#[test]
fn kernel_weight_bound() {
    props::kernel_weight_bound().unwrap();
}

#[test]
fn product_inequality_fails_for_wide_b() {
    let (lhs, rhs) = props::product_counterexample();
    assert!(lhs > rhs);
    assert!(props::product_inequality_as_stated().is_err());
}

#[test]
fn suite_table_is_complete() {
    assert_eq!(props::SUITES.len(), 7);
}

#[test]
fn fixed_middle_perturbation_is_not_enough_beyond_g_one() {
    use angrank_core::weil::validate_weil;
    use num_bigint::BigInt;
    // (T^2 + 3)^2 over F_3, middle coefficient moved by -(4 ceil(sqrt 3) + 1) = -9
    let coeffs: Vec<BigInt> = [9, 0, 6 - 9, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
    let rep = validate_weil(&coeffs, &BigInt::from(3)).unwrap();
    assert!(rep.is_valid());
}
