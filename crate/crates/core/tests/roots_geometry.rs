use hecke_core::rational::rat;
use hecke_core::roots::{find_roots, quadrant_raster, winding_count, MAX_RESOLUTION};
use hecke_core::RationalPolynomial;
use num_complex::Complex64;
use proptest::prelude::*;

fn int_poly() -> impl Strategy<Value = RationalPolynomial> {
    prop::collection::vec(-20i64..=20, 2..12)
        .prop_filter("nonconstant", |c| c[1..].iter().any(|&x| x != 0))
        .prop_map(|c| RationalPolynomial::from_ints(&c))
}

/// Product of `(x - r)` over integer roots.
fn from_roots(rs: &[i64]) -> RationalPolynomial {
    rs.iter()
        .fold(RationalPolynomial::from_ints(&[1]), |p, &r| p.mul(&RationalPolynomial::linear(1, -r)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn conjugate_closed_with_small_residuals(p in int_poly()) {
        let rs = find_roots(&p, 1e-8).unwrap();
        prop_assert_eq!(rs.roots.len(), p.degree());
        prop_assert!(rs.max_residual() <= 1e-8);
        let scale = rs.roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
        for z in &rs.roots {
            let partner = rs.roots.iter().any(|w| (w - z.conj()).norm() <= 1e-6 * scale);
            prop_assert!(partner, "{} has no conjugate", z);
        }
    }

    #[test]
    fn winding_equals_disk_count(p in int_poly(), r in 0.5f64..6.0) {
        let rs = find_roots(&p, 1e-8).unwrap();
        let origin = Complex64::new(0.0, 0.0);
        // Skip radii that graze a root: the count is ill-conditioned there.
        prop_assume!(rs.roots.iter().all(|z| (z.norm() - r).abs() > 1e-3));
        let w = winding_count(&p, origin, r).unwrap();
        prop_assert_eq!(w, rs.count_in_disk(origin, r) as i64);
    }

    #[test]
    fn integer_roots_recovered(roots in prop::collection::vec(-9i64..=9, 1..8)) {
        let p = from_roots(&roots);
        let rs = find_roots(&p, 1e-8).unwrap();
        let mut got: Vec<i64> = rs.roots.iter().map(|z| z.re.round() as i64).collect();
        let mut want = roots.clone();
        got.sort_unstable();
        want.sort_unstable();
        prop_assert_eq!(got, want);
    }
}

#[test]
fn plot_is_deterministic_and_capped() {
    let p = RationalPolynomial::from_ints(&[5, 0, -3, 1]).scale(&rat(7));
    let a = quadrant_raster(&p, (-4.0, 4.0, -3.0, 3.0), (64, 48)).unwrap();
    let b = quadrant_raster(&p, (-4.0, 4.0, -3.0, 3.0), (64, 48)).unwrap();
    assert_eq!(a, b);
    assert!(a.starts_with(b"P6\n64 48\n255\n"));
    assert_eq!(a.len(), b"P6\n64 48\n255\n".len() + 64 * 48 * 3);
    assert!(quadrant_raster(&p, (-1.0, 1.0, -1.0, 1.0), (MAX_RESOLUTION + 1, 10)).is_err());
}
