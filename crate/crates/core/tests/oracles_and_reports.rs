use hecke_core::oracles::{
    classical_series, d4d4_theta, divisor_power_sum, eta_quotient_series, mt4a_reference, quad_form_membership,
    ClassicalKind, DivisorFilter, EtaQuotientSpec, Provenance, QuadMode,
};
use hecke_core::rational::rat;
use hecke_core::verify::{ReportDocument, Status, Verifier};
use num_bigint::BigInt;

const N: usize = 30;

/// Sum of divisors of `k` not divisible by 4, times 8: the number of
/// representations of `k` as a sum of four squares.
fn r4(k: u64) -> u64 {
    if k == 0 {
        return 1;
    }
    8 * (1..=k).filter(|d| k % d == 0 && d % 4 != 0).sum::<u64>()
}

/// D4 vectors of squared norm `2j` are the integer 4-vectors of that norm,
/// because an even norm forces an even coordinate sum.
fn d4d4_from_r4(n: u64) -> u64 {
    (0..=n).map(|j| r4(2 * j) * r4(2 * (n - j))).sum()
}

fn brute_q(n: u64) -> bool {
    let b = (n as f64).sqrt() as i64 + 2;
    !(-b..=b).any(|x| (-b..=b).any(|y| x * x + x * y + y * y == n as i64))
}

#[test]
fn classical_series_agree_with_eta_products() {
    let delta = classical_series(ClassicalKind::Delta, N).unwrap();
    let eta24 = eta_quotient_series(&EtaQuotientSpec::new(&[(1, 24)]), N).unwrap().integral().unwrap();
    for k in 1..N as i64 {
        assert_eq!(delta.coefficient(k).unwrap(), eta24.coefficient(k).unwrap());
    }
    let e4 = classical_series(ClassicalKind::E4, N).unwrap();
    let e6 = classical_series(ClassicalKind::E6, N).unwrap();
    let j = classical_series(ClassicalKind::JKlein, N).unwrap();
    let lhs = j.mul(&delta);
    let e43 = e4.pow(3).unwrap();
    let diff = e43.sub(&e6.pow(2).unwrap());
    for k in 0..(N as i64 - 2) {
        assert_eq!(lhs.coefficient(k).unwrap(), e43.coefficient(k).unwrap());
        assert_eq!(diff.coefficient(k).unwrap(), delta.coefficient(k).unwrap() * rat(1728));
    }
    assert_eq!(e4.coefficient(3).unwrap(), rat(240 * 28));
}

#[test]
fn d4d4_matches_four_square_oracle() {
    for n in 0..=10u64 {
        assert_eq!(d4d4_theta(n), Some(BigInt::from(d4d4_from_r4(n))), "n = {n}");
    }
    assert_eq!(d4d4_theta(1), Some(BigInt::from(48)));
}

#[test]
fn q_set_modes_agree_with_brute_force() {
    for n in 1..=100u64 {
        assert_eq!(quad_form_membership(n, QuadMode::Form), brute_q(n), "n = {n}");
        assert_eq!(quad_form_membership(n, QuadMode::Cloitre), brute_q(n), "n = {n}");
    }
}

#[test]
fn odd_quotient_divisor_sums() {
    // Divisors d of n with n/d odd: {2} for n = 2, {2, 6} for n = 6.
    assert_eq!(divisor_power_sum(2, 3, DivisorFilter::QuotientOdd), BigInt::from(8));
    assert_eq!(divisor_power_sum(6, 3, DivisorFilter::QuotientOdd), BigInt::from(8 + 216));
    assert_eq!(divisor_power_sum(6, 3, DivisorFilter::All), BigInt::from(1 + 8 + 27 + 216));
}

#[test]
fn moonshine_anchors_have_provenance() {
    let a = mt4a_reference(2, None).unwrap();
    assert_eq!((a.value, a.provenance), (rat(2048), Provenance::Paper));
    let d = mt4a_reference(3, Some(rat(11202))).unwrap();
    assert_eq!(d.provenance, Provenance::Derived);
    assert!(mt4a_reference(3, None).is_none());
}

fn small_run() -> ReportDocument {
    let v = Verifier::build(-1..=6, 3..=34, 5).unwrap();
    ReportDocument::new(v.run(&[1, 2, 4, 5, 6, 7]))
}

#[test]
fn reports_are_reproducible_and_well_formed() {
    let a = small_run();
    let b = small_run();
    let ja = serde_json::to_string(&a).unwrap();
    assert_eq!(ja, serde_json::to_string(&b).unwrap());
    assert!(ja.contains("\"schema_version\":\"v1\""));
    for r in &a.reports {
        assert_eq!(r.status == Status::Fail, r.counterexample.is_some(), "{}", r.clause);
    }
    let disc: Vec<&str> = a
        .reports
        .iter()
        .filter(|r| r.status == Status::Discrepancy)
        .map(|r| r.clause.as_str())
        .collect();
    for c in ["printed A_0", "printed B_2", "printed C_2"] {
        assert!(disc.contains(&c), "missing discrepancy {c}");
    }
    // The p = 3 leading-coefficient clause for B_n has a counterexample.
    assert!(a.any_fail());
}
