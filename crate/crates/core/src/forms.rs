//! q-expansions of the normalized forms for `G(lambda_m)`.
//!
//! Starting from `W_m = 1 / revert(Y_m)` (the hauptmodul `J_m` in the
//! rescaled variable `X_m = x_m / A_m`) we build
//!
//! * `j_m(x) = W_m(c x) / B_m` with `c = 2^6 m^3` and `B_m = 1/c`,
//! * `H4 = { j'^2 / (j (j - c)) }^(1/(m-2))`,
//! * `H6 = { j'^m / (j^(m-1) (j - c)) }^(1/(m-2)) / eps`,
//! * `Delta* = { j'^(2m) / (j^(2m-2) (j - c)^m) }^(1/(m-2))`,
//! * `Delta+ = H4^3 - H6^2` and `Delta<> = H4^3 / j`,
//!
//! where `'` is `q d/dq`. The factor `eps = exp(i pi/(m-2))` for odd `m` is
//! realized by negating the inner series before taking the positive real
//! root, so every coefficient stays rational.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::hypergeom::{y_series, TriangleParams};
use crate::rational::{rat, ratio, ExactRational};
use crate::series::{LaurentSeries, Result, SeriesError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormKind {
    /// `J_m` in the variable `X_m`.
    BigJ,
    /// Normalized hauptmodul `j_m`.
    J,
    H4,
    H6,
    DeltaStar,
    DeltaDagger,
    DeltaDiamond,
}

impl FormKind {
    pub const ALL: [FormKind; 7] = [
        FormKind::BigJ,
        FormKind::J,
        FormKind::H4,
        FormKind::H6,
        FormKind::DeltaStar,
        FormKind::DeltaDagger,
        FormKind::DeltaDiamond,
    ];

    pub const CUSP: [FormKind; 3] = [
        FormKind::DeltaStar,
        FormKind::DeltaDagger,
        FormKind::DeltaDiamond,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            FormKind::BigJ => "J",
            FormKind::J => "j",
            FormKind::H4 => "h4",
            FormKind::H6 => "h6",
            FormKind::DeltaStar => "delta-star",
            FormKind::DeltaDagger => "delta-dagger",
            FormKind::DeltaDiamond => "delta-diamond",
        }
    }

    /// Lowest exponent of the expansion.
    pub fn offset(self) -> i64 {
        match self {
            FormKind::BigJ | FormKind::J => -1,
            FormKind::H4 | FormKind::H6 => 0,
            _ => 1,
        }
    }

    pub fn is_cusp(self) -> bool {
        self.offset() == 1
    }
}

impl fmt::Display for FormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for FormKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let k = match s {
            "J" | "bigj" => FormKind::BigJ,
            "j" => FormKind::J,
            "h4" | "H4" => FormKind::H4,
            "h6" | "H6" => FormKind::H6,
            "delta-star" | "dstar" => FormKind::DeltaStar,
            "delta-dagger" | "ddagger" => FormKind::DeltaDagger,
            "delta-diamond" | "ddiamond" => FormKind::DeltaDiamond,
            _ => return Err(format!("unknown form kind '{s}'")),
        };
        Ok(k)
    }
}

/// A q_m-expansion tagged with what it is.
#[derive(Debug, Clone, PartialEq)]
pub struct FormSeries {
    pub kind: FormKind,
    pub m: u32,
    pub series: LaurentSeries,
    /// Weight in the sense of the Hecke dimension formula; `None` for
    /// `Delta+` when `m > 3`, where `H4^3` and `H6^2` have different weights.
    pub weight: Option<ExactRational>,
}

impl FormSeries {
    /// Coefficients from the form's natural offset, `n_terms` of them.
    pub fn coefficients(&self) -> Vec<ExactRational> {
        let lo = self.kind.offset();
        (lo..self.series.order())
            .map(|k| self.series.coefficient(k).expect("within order"))
            .collect()
    }

    /// Coefficient of `q^n`.
    pub fn coefficient(&self, n: i64) -> Result<ExactRational> {
        self.series.coefficient(n)
    }
}

pub fn weight(kind: FormKind, m: u32) -> Option<ExactRational> {
    let d = m as i64 - 2;
    match kind {
        FormKind::BigJ | FormKind::J => Some(ExactRational::zero()),
        FormKind::H4 => Some(ratio(4, d)),
        FormKind::H6 => Some(ratio(2 * m as i64, d)),
        FormKind::DeltaStar => Some(ratio(4 * m as i64, d)),
        FormKind::DeltaDiamond => Some(ratio(12, d)),
        FormKind::DeltaDagger => (m == 3).then(|| rat(12)),
    }
}

/// `2^6 m^3`.
pub fn normalizer(m: u32) -> ExactRational {
    rat(64 * (m as i64).pow(3))
}

/// `W_m(X) = 1 / revert(Y_m)(X)`, with `n_terms` coefficients starting at
/// `X^-1`.
pub fn big_j_series(m: u32, n_terms: usize) -> Result<LaurentSeries> {
    if n_terms == 0 {
        return Err(SeriesError::EmptyRange);
    }
    let p = TriangleParams::new(m);
    let y = y_series(&p, n_terms + 1)?;
    y.revert()?.recip()
}

/// Builds every form at one `m` from a single `j_m` expansion.
#[derive(Debug, Clone)]
pub struct FormBuilder {
    m: u32,
    n_terms: usize,
    big_j: LaurentSeries,
    j: LaurentSeries,
}

impl FormBuilder {
    /// Prepares enough of `j_m` to emit `n_terms` coefficients of every form.
    /// `Delta+` loses one term to the cancellation of constant terms, so `j`
    /// is carried one term further.
    pub fn new(m: u32, n_terms: usize) -> Result<Self> {
        assert!(m >= 3, "forms need m >= 3, got {m}");
        if n_terms == 0 {
            return Err(SeriesError::EmptyRange);
        }
        let big_j = big_j_series(m, n_terms + 1)?;
        let c = normalizer(m);
        let j = big_j.scale_argument(&c).scale(&c);
        Ok(FormBuilder { m, n_terms, big_j, j })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    fn finish(&self, kind: FormKind, s: LaurentSeries) -> Result<FormSeries> {
        let order = kind.offset() + self.n_terms as i64;
        if s.order() < order {
            return Err(SeriesError::EmptyRange);
        }
        Ok(FormSeries {
            kind,
            m: self.m,
            series: s.truncate(order)?,
            weight: weight(kind, self.m),
        })
    }

    fn root_index(&self) -> u32 {
        self.m - 2
    }

    fn shifted_j(&self) -> Result<LaurentSeries> {
        self.j.add_constant(&-normalizer(self.m))
    }

    fn h4_inner(&self) -> Result<LaurentSeries> {
        let jp = self.j.q_derivative();
        jp.square().div(&self.j.mul(&self.shifted_j()?))
    }

    fn h6_inner(&self) -> Result<LaurentSeries> {
        let m = self.m as i64;
        let jp = self.j.q_derivative();
        let inner = jp.pow(m)?.div(&self.j.pow(m - 1)?.mul(&self.shifted_j()?))?;
        Ok(if m.is_odd() { inner.neg() } else { inner })
    }

    fn delta_star_inner(&self) -> Result<LaurentSeries> {
        let m = self.m as i64;
        let jp = self.j.q_derivative();
        let den = self.j.pow(2 * m - 2)?.mul(&self.shifted_j()?.pow(m)?);
        jp.pow(2 * m)?.div(&den)
    }

    fn h4_raw(&self) -> Result<LaurentSeries> {
        self.h4_inner()?.kth_root(self.root_index())
    }

    fn h6_raw(&self) -> Result<LaurentSeries> {
        self.h6_inner()?.kth_root(self.root_index())
    }

    pub fn form(&self, kind: FormKind) -> Result<FormSeries> {
        let s = match kind {
            FormKind::BigJ => self.big_j.clone(),
            FormKind::J => self.j.clone(),
            FormKind::H4 => self.h4_raw()?,
            FormKind::H6 => self.h6_raw()?,
            FormKind::DeltaStar => self.delta_star_inner()?.kth_root(self.root_index())?,
            FormKind::DeltaDagger => {
                let h4 = self.h4_raw()?;
                let h6 = self.h6_raw()?;
                h4.pow(3)?.sub(&h6.square())
            }
            FormKind::DeltaDiamond => self.h4_raw()?.pow(3)?.div(&self.j)?,
        };
        self.finish(kind, s)
    }

    /// All seven forms, sharing the intermediate roots.
    pub fn all(&self) -> Result<Vec<FormSeries>> {
        let h4 = self.h4_raw()?;
        let h6 = self.h6_raw()?;
        let h4_cubed = h4.pow(3)?;
        let dstar = self.delta_star_inner()?.kth_root(self.root_index())?;
        let out = vec![
            self.finish(FormKind::BigJ, self.big_j.clone())?,
            self.finish(FormKind::J, self.j.clone())?,
            self.finish(FormKind::H4, h4)?,
            self.finish(FormKind::H6, h6.clone())?,
            self.finish(FormKind::DeltaStar, dstar)?,
            self.finish(FormKind::DeltaDagger, h4_cubed.sub(&h6.square()))?,
            self.finish(FormKind::DeltaDiamond, h4_cubed.div(&self.j)?)?,
        ];
        Ok(out)
    }
}

/// `J_m` as a series in `X_m`: offset -1, residue 1, `n_terms` coefficients.
pub fn j_big_series(m: u32, n_terms: usize) -> Result<FormSeries> {
    FormBuilder::new(m, n_terms)?.form(FormKind::BigJ)
}

pub fn j_series(m: u32, n_terms: usize) -> Result<FormSeries> {
    FormBuilder::new(m, n_terms)?.form(FormKind::J)
}

pub fn h4_series(m: u32, n_terms: usize) -> Result<FormSeries> {
    FormBuilder::new(m, n_terms)?.form(FormKind::H4)
}

pub fn h6_series(m: u32, n_terms: usize) -> Result<FormSeries> {
    FormBuilder::new(m, n_terms)?.form(FormKind::H6)
}

/// `kind` must be one of the three cusp families.
pub fn cusp_series(kind: FormKind, m: u32, n_terms: usize) -> Result<FormSeries> {
    assert!(kind.is_cusp(), "{kind} is not a cusp family");
    FormBuilder::new(m, n_terms)?.form(kind)
}

/// Any form by kind.
pub fn form_series(kind: FormKind, m: u32, n_terms: usize) -> Result<FormSeries> {
    FormBuilder::new(m, n_terms)?.form(kind)
}

/// `dim M(lambda_m, k, gamma) = 1 + floor(k (1/4 - 1/(2m)) + gamma/4 - 1/4)`
/// together with the lower bound `dim C >= dim M - 1` for cusp forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dimensions {
    pub entire: i64,
    pub cusp_lower_bound: i64,
}

pub fn dim_entire(m: u32, k: &ExactRational, gamma: i8) -> Dimensions {
    assert!(m >= 3);
    assert!(gamma == 1 || gamma == -1);
    let x = k * (ratio(1, 4) - ratio(1, 2 * m as i64)) + ratio(gamma as i64, 4) - ratio(1, 4);
    let fl: BigInt = x.floor().to_integer();
    let entire = 1 + i64::try_from(fl).expect("dimension fits in i64");
    Dimensions {
        entire,
        cusp_lower_bound: (entire - 1).max(0),
    }
}

impl FormSeries {
    /// True when the leading coefficient is 1 at the expected offset.
    pub fn is_normalized(&self) -> bool {
        self.series.offset() == self.kind.offset() && self.series.leading().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_j_m3() {
        let w = j_big_series(3, 3).unwrap();
        assert_eq!(w.coefficient(-1).unwrap(), rat(1));
        assert_eq!(w.coefficient(0).unwrap(), ratio(31, 72));
        assert_eq!(w.coefficient(0).unwrap(), ratio(744, 1728));
        assert_eq!(w.coefficient(1).unwrap(), ratio(196884, 1728 * 1728));
    }

    #[test]
    fn klein_j() {
        let j = j_series(3, 4).unwrap();
        assert_eq!(
            j.coefficients(),
            vec![rat(1), rat(744), rat(196884), rat(21493760)]
        );
        assert_eq!(j.series.order(), 3);
    }

    #[test]
    fn residue_one_for_all_m() {
        for m in 3..9 {
            let j = j_series(m, 2).unwrap();
            assert!(j.is_normalized(), "m = {m}");
        }
    }

    #[test]
    fn a1_at_three_and_four() {
        // A_1(x) = 276 x^6 - 32 x^4 - 192 x^2
        for m in [3i64, 4, 5] {
            let j = j_series(m as u32, 3).unwrap();
            let a1 = 276 * m.pow(6) - 32 * m.pow(4) - 192 * m.pow(2);
            assert_eq!(j.coefficient(1).unwrap(), rat(a1));
        }
    }

    #[test]
    fn eisenstein_analogues() {
        let h4 = h4_series(3, 3).unwrap();
        assert_eq!(h4.coefficients(), vec![rat(1), rat(240), rat(2160)]);
        let h6 = h6_series(3, 3).unwrap();
        assert_eq!(h6.coefficients(), vec![rat(1), rat(-504), rat(-16632)]);
        assert_eq!(h4_series(4, 2).unwrap().coefficients(), vec![rat(1), rat(384)]);
        assert_eq!(h6_series(5, 2).unwrap().coefficients(), vec![rat(1), rat(-2600)]);
    }

    #[test]
    fn cusp_forms_m3() {
        let b = FormBuilder::new(3, 3).unwrap();
        let ds = b.form(FormKind::DeltaStar).unwrap();
        assert_eq!(ds.coefficients(), vec![rat(1), rat(-24), rat(252)]);
        let dd = b.form(FormKind::DeltaDiamond).unwrap();
        assert_eq!(dd.coefficients(), vec![rat(1), rat(-24), rat(252)]);
        let dg = b.form(FormKind::DeltaDagger).unwrap();
        assert_eq!(dg.coefficients(), vec![rat(1728), rat(-41472), rat(435456)]);
        for m in 3..8 {
            let ds = cusp_series(FormKind::DeltaStar, m, 2).unwrap();
            assert_eq!(ds.coefficient(1).unwrap(), rat(1));
        }
    }

    #[test]
    fn builder_all_matches_single_forms() {
        let b = FormBuilder::new(5, 4).unwrap();
        let all = b.all().unwrap();
        for f in &all {
            assert_eq!(f, &b.form(f.kind).unwrap());
            assert_eq!(f.coefficients().len(), 4);
        }
    }

    #[test]
    fn dimension_formula() {
        assert_eq!(dim_entire(3, &rat(12), 1).entire, 2);
        assert_eq!(dim_entire(3, &rat(4), 1).entire, 1);
        let d = dim_entire(12, &rat(12), 1);
        assert_eq!(d.entire, 3);
        assert!(d.cusp_lower_bound > 1);
        for m in 12..40 {
            assert!(dim_entire(m, &rat(12), 1).cusp_lower_bound > 1);
        }
    }

    #[test]
    fn kind_tags_roundtrip() {
        for k in FormKind::ALL {
            assert_eq!(k.tag().parse::<FormKind>().unwrap(), k);
        }
    }
}
