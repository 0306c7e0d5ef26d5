//! Hypergeometric ingredients of the Hecke triangle function.
//!
//! For the triangle with angles `0, pi/2, pi/m` the hypergeometric parameters
//! are `alpha = 1/4 + 1/(2m)`, `beta = 1/4 - 1/(2m)`, `gamma = 1`. The
//! inverse triangle function is encoded by the series
//! `Y_m(J) = J exp(F*(J) / F(J))`, whose compositional inverse yields the
//! q-expansion of `J_m`.

use std::f64::consts::PI;

use num_traits::{One, Zero};

use crate::rational::{rat, ratio, ExactRational};
use crate::series::{LaurentSeries, Result, SeriesError};

/// Hypergeometric parameters of the `(0, 1/2, 1/m)` triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleParams {
    pub m: u32,
    pub alpha: ExactRational,
    pub beta: ExactRational,
    pub gamma: ExactRational,
    /// `2 cos(pi/m)`, the translation length of the Hecke group.
    pub lambda_numeric: f64,
}

impl TriangleParams {
    pub fn new(m: u32) -> Self {
        assert!(m >= 3, "Hecke triangle parameters need m >= 3, got {m}");
        let shift = ratio(1, 2 * m as i64);
        let quarter = ratio(1, 4);
        TriangleParams {
            m,
            alpha: &quarter + &shift,
            beta: &quarter - &shift,
            gamma: ExactRational::one(),
            lambda_numeric: 2.0 * (PI / m as f64).cos(),
        }
    }
}

/// Rising factorial `a (a+1) ... (a+n-1)`; `(a)^0 = 1`.
pub fn pochhammer(a: &ExactRational, n: u32) -> ExactRational {
    (0..n).fold(ExactRational::one(), |acc, k| acc * (a + rat(k as i64)))
}

/// `c_nu = (alpha)^nu (beta)^nu / (nu! (gamma)^nu)`.
pub fn hyper_c(p: &TriangleParams, nu: u32) -> ExactRational {
    let num = pochhammer(&p.alpha, nu) * pochhammer(&p.beta, nu);
    let den = pochhammer(&ExactRational::one(), nu) * pochhammer(&p.gamma, nu);
    num / den
}

/// `e_nu = sum_{p<nu} (1/(alpha+p) + 1/(beta+p) - 2/(1+p))` (the `gamma = 1`
/// form).
pub fn hyper_e(p: &TriangleParams, nu: u32) -> ExactRational {
    (0..nu).fold(ExactRational::zero(), |acc, k| {
        let k = rat(k as i64);
        acc + (&p.alpha + &k).recip() + (&p.beta + &k).recip() - rat(2) / (k + rat(1))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HyperKind {
    /// Gauss's `F(alpha, beta, 1; tau) = sum c_nu tau^nu`.
    F,
    /// `F* = sum_{nu >= 1} c_nu e_nu tau^nu`.
    FStar,
}

/// `F` or `F*` known through `O(tau^n)`.
pub fn hyper_series(p: &TriangleParams, kind: HyperKind, n: usize) -> Result<LaurentSeries> {
    if n == 0 {
        return Err(SeriesError::EmptyRange);
    }
    // c_nu and e_nu by their one-step recurrences.
    let mut coeffs = Vec::with_capacity(n);
    let mut c = ExactRational::one();
    let mut e = ExactRational::zero();
    for nu in 0..n as i64 {
        if nu > 0 {
            let k = rat(nu - 1);
            c = c * (&p.alpha + &k) * (&p.beta + &k) / rat(nu * nu);
            e += (&p.alpha + &k).recip() + (&p.beta + &k).recip() - ratio(2, nu);
        }
        coeffs.push(match kind {
            HyperKind::F => c.clone(),
            HyperKind::FStar => &c * &e,
        });
    }
    LaurentSeries::from_coeffs(0, coeffs)
}

/// `Y_m(J) = J exp(F*(J)/F(J))`, known through `O(J^n)`; offset 1 with unit
/// linear coefficient.
pub fn y_series(p: &TriangleParams, n: usize) -> Result<LaurentSeries> {
    if n < 2 {
        return Err(SeriesError::EmptyRange);
    }
    let f = hyper_series(p, HyperKind::F, n - 1)?;
    let fs = hyper_series(p, HyperKind::FStar, n - 1)?;
    let ratio = fs.div(&f)?;
    Ok(ratio.exp()?.shift(1))
}

const BERNOULLI_EVEN: [(f64, f64); 12] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
];

/// Digamma function for real `x > 0`: upward recurrence to `x >= 10`, then
/// the asymptotic expansion with twelve Bernoulli terms.
pub fn digamma(x: f64) -> f64 {
    assert!(x > 0.0, "digamma is only evaluated at positive arguments");
    let mut x = x;
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let mut pow = inv2;
    let mut tail = 0.0;
    for (k, (num, den)) in BERNOULLI_EVEN.iter().enumerate() {
        let two_k = 2.0 * (k as f64 + 1.0);
        tail += num / den / two_k * pow;
        pow *= inv2;
    }
    acc + x.ln() - 0.5 / x - tail
}

/// `log A_m = -2 psi(1) + psi(1 - alpha) + psi(1 - beta) - pi sec(pi/m)`.
pub fn log_residue_reflected(m: u32) -> f64 {
    let (a, b) = alpha_beta_f64(m);
    -2.0 * digamma(1.0) + digamma(1.0 - a) + digamma(1.0 - b) - PI / (PI / m as f64).cos()
}

/// `log a_{-1}(m) = pi sec(pi/m) - 2 psi(1) + psi(alpha) + psi(beta)`.
pub fn log_residue_direct(m: u32) -> f64 {
    let (a, b) = alpha_beta_f64(m);
    PI / (PI / m as f64).cos() - 2.0 * digamma(1.0) + digamma(a) + digamma(b)
}

fn alpha_beta_f64(m: u32) -> (f64, f64) {
    let s = 0.5 / m as f64;
    (0.25 + s, 0.25 - s)
}

/// Which overall sign of the logarithm reproduces `A_3 = 1/1728`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidueSign {
    /// `A_m = exp(log A_m)` as written.
    AsWritten,
    /// `A_m = exp(-log A_m)`.
    Negated,
}

/// Picks the sign convention anchored on `A_3 = 1/1728`.
pub fn residue_sign() -> ResidueSign {
    let l = log_residue_reflected(3);
    let anchor = (1.0f64 / 1728.0).ln();
    if (l - anchor).abs() <= (-l - anchor).abs() {
        ResidueSign::AsWritten
    } else {
        ResidueSign::Negated
    }
}

/// Residue constant `A_m` as a float. The digamma evaluation is accurate to
/// about `1e-13`; the call panics if `tol` asks for more than that.
pub fn residue_a(m: u32, tol: f64) -> f64 {
    assert!(m >= 3);
    assert!(tol >= 1e-13, "residue_a cannot guarantee tolerance {tol}");
    let l = log_residue_reflected(m);
    match residue_sign() {
        ResidueSign::AsWritten => l.exp(),
        ResidueSign::Negated => (-l).exp(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params() {
        let p = TriangleParams::new(3);
        assert_eq!(p.alpha, ratio(5, 12));
        assert_eq!(p.beta, ratio(1, 12));
        assert_eq!(&p.alpha + &p.beta, ratio(1, 2));
        assert!((p.lambda_numeric - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&ratio(7, 3), 0), rat(1));
        assert_eq!(pochhammer(&ratio(1, 2), 2), ratio(3, 4));
        assert_eq!(pochhammer(&rat(1), 5), rat(120));
    }

    #[test]
    fn c_and_e() {
        let p = TriangleParams::new(3);
        assert_eq!(hyper_c(&p, 0), rat(1));
        assert_eq!(hyper_c(&p, 1), &p.alpha * &p.beta);
        assert_eq!(hyper_c(&p, 1), ratio(5, 144));
        assert_eq!(hyper_e(&p, 0), rat(0));
        assert_eq!(hyper_e(&p, 1), ratio(62, 5));
        let p7 = TriangleParams::new(7);
        assert_eq!(
            hyper_e(&p7, 1),
            p7.alpha.recip() + p7.beta.recip() - rat(2)
        );
    }

    #[test]
    fn series_match_closed_forms() {
        let p = TriangleParams::new(11);
        let f = hyper_series(&p, HyperKind::F, 8).unwrap();
        let fs = hyper_series(&p, HyperKind::FStar, 8).unwrap();
        assert_eq!(f.coefficient(0).unwrap(), rat(1));
        assert_eq!(fs.offset(), 1);
        for nu in 0..8u32 {
            assert_eq!(f.coefficient(nu as i64).unwrap(), hyper_c(&p, nu));
            assert_eq!(
                fs.coefficient(nu as i64).unwrap(),
                hyper_c(&p, nu) * hyper_e(&p, nu)
            );
        }
    }

    #[test]
    fn y_series_m3() {
        let y = y_series(&TriangleParams::new(3), 6).unwrap();
        assert_eq!(y.offset(), 1);
        assert_eq!(y.order(), 6);
        assert_eq!(y.coefficient(1).unwrap(), rat(1));
        assert_eq!(y.coefficient(2).unwrap(), ratio(31, 72));
        let r = y.revert().unwrap();
        assert_eq!(y.compose(&r).unwrap(), LaurentSeries::variable(6).unwrap());
    }

    #[test]
    fn digamma_values() {
        let euler_gamma = 0.577_215_664_901_532_9;
        assert!((digamma(1.0) + euler_gamma).abs() < 1e-12);
        // psi(1/2) = -gamma - 2 ln 2
        assert!((digamma(0.5) + euler_gamma + 2.0 * 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn residue_anchor() {
        assert!((residue_a(3, 1e-10) - 1.0 / 1728.0).abs() < 1e-10);
        let a5 = residue_a(5, 1e-10);
        assert!(a5.is_finite() && a5 > 0.0);
    }
}
