use hecke_core::forms::{normalizer, FormBuilder};
use hecke_core::hypergeom::{hyper_c, residue_a, TriangleParams};
use hecke_core::oracles::{classical_series, eta_quotient_series, ClassicalKind, EtaQuotientSpec};
use hecke_core::rational::rat;
use hecke_core::{FormKind, LaurentSeries};
use num_traits::Signed;

const N: usize = 20;

fn agree(a: &LaurentSeries, b: &LaurentSeries) -> bool {
    let lo = a.valuation().min(b.valuation());
    let hi = a.order().min(b.order());
    hi > lo && (lo..hi).all(|k| a.coefficient(k).unwrap() == b.coefficient(k).unwrap())
}

fn forms(m: u32) -> Vec<LaurentSeries> {
    let b = FormBuilder::new(m, N).unwrap();
    [FormKind::J, FormKind::H4, FormKind::H6, FormKind::DeltaStar, FormKind::DeltaDagger, FormKind::DeltaDiamond]
        .iter()
        .map(|&k| b.form(k).unwrap().series)
        .collect()
}

#[test]
fn defining_differential_identities() {
    for m in 3..=12u32 {
        let f = forms(m);
        let (j, h4, h6) = (&f[0], &f[1], &f[2]);
        let tj = j.q_derivative();
        let jm = j.add_constant(&-normalizer(m)).unwrap();
        let d = m as i64 - 2;

        let lhs = h4.pow(d).unwrap().mul(j).mul(&jm);
        assert!(agree(&lhs, &tj.pow(2).unwrap()), "H4 identity at m = {m}");

        let sign = if m % 2 == 0 { rat(1) } else { rat(-1) };
        let lhs = h6.pow(d).unwrap().mul(&j.pow(m as i64 - 1).unwrap()).mul(&jm);
        assert!(agree(&lhs, &tj.pow(m as i64).unwrap().scale(&sign)), "H6 identity at m = {m}");
    }
}

#[test]
fn cusp_forms_from_eisenstein_analogues() {
    for m in 3..=8u32 {
        let f = forms(m);
        let (j, h4, h6) = (&f[0], &f[1], &f[2]);
        let h43 = h4.pow(3).unwrap();
        assert!(agree(&f[4], &h43.sub(&h6.pow(2).unwrap())), "dagger at m = {m}");
        assert!(agree(&f[5], &h43.div(j).unwrap()), "diamond at m = {m}");
    }
}

#[test]
fn weight_twelve_at_three() {
    let f = forms(3);
    let delta = eta_quotient_series(&EtaQuotientSpec::new(&[(1, 24)]), N).unwrap().integral().unwrap();
    assert!(agree(&f[3], &delta));
    assert!(agree(&f[4], &delta.scale(&rat(1728))));
    assert!(agree(&f[5], &delta));
    let j = classical_series(ClassicalKind::JKlein, N).unwrap();
    assert!(agree(&f[0], &j));
}

#[test]
fn hypergeometric_coefficients_positive() {
    for m in [3u32, 4, 5, 7, 12, 30, 60] {
        let p = TriangleParams::new(m);
        for nu in 0..=40 {
            let c = hyper_c(&p, nu);
            assert!(c.is_positive(), "c_{nu} at m = {m}");
        }
    }
}

#[test]
fn residue_at_arithmetic_m() {
    // Classical hauptmodul normalizations: 1728 (level 1), 256 (Fricke level
    // 2), 108 (Fricke level 3).
    for (m, inv) in [(3u32, 1728.0), (4, 256.0), (6, 108.0)] {
        let a = residue_a(m, 1e-12);
        assert!((a * inv - 1.0).abs() < 1e-8, "m = {m}: {a}");
    }
}
