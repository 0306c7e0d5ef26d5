use hecke_core::rational::{rat, ratio};
use hecke_core::{ExactRational, LaurentSeries};
use proptest::prelude::*;

const CASES: u32 = 1000;

fn small_rational() -> impl Strategy<Value = ExactRational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| ratio(n, d))
}

/// `c_0 q^offset + ...` with `len` known terms.
fn series(offset: i64, len: usize) -> impl Strategy<Value = LaurentSeries> {
    prop::collection::vec(small_rational(), len)
        .prop_map(move |cs| LaurentSeries::from_coeffs(offset, cs).unwrap())
}

/// `lead q^offset (1 + ...)`.
fn with_lead(lead: ExactRational, offset: i64, len: usize) -> impl Strategy<Value = LaurentSeries> {
    prop::collection::vec(small_rational(), len - 1).prop_map(move |mut cs| {
        cs.insert(0, lead.clone());
        LaurentSeries::from_coeffs(offset, cs).unwrap()
    })
}

/// Coefficients agree wherever both series are known.
fn agree(a: &LaurentSeries, b: &LaurentSeries) -> bool {
    let lo = a.valuation().min(b.valuation());
    let hi = a.order().min(b.order());
    (lo..hi).all(|k| a.coefficient(k).unwrap() == b.coefficient(k).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn revert_round_trip(f in with_lead(rat(1), 1, 8)) {
        let g = f.revert().unwrap();
        prop_assert_eq!(g.order(), f.order());
        let id = f.compose(&g).unwrap();
        prop_assert!(id.order() >= f.order());
        prop_assert!(agree(&id, &LaurentSeries::variable(f.order()).unwrap()));
        prop_assert_eq!(f.revert_newton().unwrap(), g);
    }

    #[test]
    fn revert_with_scaled_linear_term(a in prop::sample::select(vec![2i64, -3, 5]), f in with_lead(rat(1), 1, 6)) {
        let f = f.scale(&rat(a));
        let g = f.revert().unwrap();
        prop_assert!(agree(&g.compose(&f).unwrap(), &LaurentSeries::variable(f.order()).unwrap()));
    }

    #[test]
    fn kth_root_round_trip(k in 2u32..=7, lead in 1i64..=3, f in series(0, 7)) {
        // Replace the constant term by a positive value so f is a unit.
        let mut cs = f.coeffs().to_vec();
        cs.resize(7, rat(0));
        cs[0] = rat(lead);
        let f = LaurentSeries::from_coeffs(0, cs).unwrap();
        let fk = f.pow(k as i64).unwrap();
        let r = fk.kth_root(k).unwrap();
        prop_assert_eq!(r.order(), f.order());
        prop_assert_eq!(r, f);
    }

    #[test]
    fn exp_log_round_trip(f in series(1, 8), g in with_lead(rat(1), 0, 8)) {
        let e = f.exp().unwrap();
        prop_assert_eq!(e.order(), f.order());
        prop_assert!(agree(&e.log().unwrap(), &f));
        let l = g.log().unwrap();
        prop_assert!(agree(&l.exp().unwrap(), &g));
    }

    #[test]
    fn q_derivative_is_a_derivation(f in series(-1, 8), g in series(0, 8)) {
        let lhs = f.mul(&g).q_derivative();
        let rhs = f.q_derivative().mul(&g).add(&f.mul(&g.q_derivative()));
        prop_assert_eq!(lhs.order(), rhs.order());
        prop_assert!(agree(&lhs, &rhs));
    }

    #[test]
    fn ring_laws(a in series(-1, 6), b in series(0, 6), c in series(1, 6)) {
        prop_assert!(agree(&a.mul(&b), &b.mul(&a)));
        prop_assert!(agree(&a.add(&b), &b.add(&a)));
        prop_assert!(agree(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c))));
        prop_assert!(agree(&a.add(&b).add(&c), &a.add(&b.add(&c))));
        prop_assert!(agree(&a.mul(&b.add(&c)), &a.mul(&b).add(&a.mul(&c))));
    }

    #[test]
    fn division_inverts_multiplication(a in series(0, 6), b in with_lead(rat(2), -1, 6)) {
        let p = a.mul(&b);
        prop_assert!(agree(&p.div(&b).unwrap(), &a));
    }
}
