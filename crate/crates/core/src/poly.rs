//! Dense univariate polynomials over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::modp::FpPoly;
use crate::rational::{common_denominator, rat, to_f64, ExactRational};

/// Coefficients in ascending degree; no trailing zeros, so the zero
/// polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalPolynomial {
    coeffs: Vec<ExactRational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        RationalPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::new(vec![c])
    }

    /// `x`
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `a x + b`
    pub fn linear(a: i64, b: i64) -> Self {
        Self::from_ints(&[b, a])
    }

    pub fn monomial(k: usize, c: ExactRational) -> Self {
        let mut v = vec![ExactRational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> ExactRational {
        self.coeffs.last().cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn coeff(&self, k: usize) -> ExactRational {
        self.coeffs.get(k).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        let mut acc = ExactRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> ExactRational {
        self.eval(&rat(x))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ExactRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(ExactRational::one()), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.coeffs.clone();
        let dl = d.leading();
        let dd = d.degree();
        if self.is_zero() || self.degree() < dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![ExactRational::zero(); self.degree() - dd + 1];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &dl;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[k + i] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    /// Exact quotient if `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    /// Same polynomial scaled to leading coefficient 1.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.leading().recip();
        self.scale(&inv)
    }

    /// Monic gcd. A modular image bounds the degree and usually yields the
    /// answer by rational reconstruction; the primitive remainder sequence
    /// is the fallback.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if let Some(g) = self.modular_gcd(other) {
            return g;
        }
        let prim = |p: &Self| Self::from_bigints(&p.primitive_part().1);
        let (mut a, mut b) = (prim(self), prim(other));
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = prim(&r);
        }
        a.monic()
    }

    fn modular_gcd(&self, other: &Self) -> Option<Self> {
        const PRIMES: [u64; 3] = [2_305_843_009_213_693_951, 4_611_686_018_427_387_847, 1_000_000_000_000_000_003];
        for p in PRIMES {
            let (Some(a), Some(b)) = (FpPoly::from_rational(self, p), FpPoly::from_rational(other, p)) else {
                continue;
            };
            if a.degree() != Some(self.degree()) || b.degree() != Some(other.degree()) {
                continue;
            }
            let g = a.gcd(&b);
            if g.degree() == Some(0) {
                return Some(Self::constant(ExactRational::one()));
            }
            let coeffs = g
                .coeffs()
                .iter()
                .map(|&c| rational_reconstruction(c, p))
                .collect::<Option<Vec<_>>>()?;
            let cand = Self::new(coeffs);
            if self.div_exact(&cand).is_some() && other.div_exact(&cand).is_some() {
                return Some(cand);
            }
        }
        None
    }

    /// Yun's squarefree decomposition: monic `(factor, multiplicity)` pairs
    /// with pairwise coprime squarefree factors whose product, with the
    /// multiplicities, is `self.monic()`.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree() > 0 {
            let a = b.gcd(&d);
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            if a.degree() > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    /// `p(x + a)`, by repeated synthetic division.
    pub fn taylor_shift(&self, a: &ExactRational) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for k in (i..n.saturating_sub(1)).rev() {
                let t = &c[k + 1] * a;
                c[k] += t;
            }
        }
        Self::new(c)
    }

    /// True when every odd-degree coefficient vanishes.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    /// Multiplicity of `x` as a factor.
    pub fn x_adic_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by `x^k` (the caller checks divisibility).
    pub fn shift_down(&self, k: usize) -> Self {
        Self::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// `(content, primitive)` where `primitive` has coprime integer
    /// coefficients, positive leading coefficient, and
    /// `self = content * primitive`.
    pub fn primitive_part(&self) -> (ExactRational, Vec<BigInt>) {
        if self.is_zero() {
            return (ExactRational::zero(), Vec::new());
        }
        let den = common_denominator(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * ExactRational::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (ExactRational::new(g, den), prim)
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(ExactRational::from_integer).collect())
    }

    /// Coefficients as floats divided by the largest magnitude, together with
    /// that scale. Scaling happens in exact arithmetic so huge coefficients
    /// do not overflow.
    pub fn scaled_f64(&self) -> (Vec<f64>, f64) {
        let max = self
            .coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(ExactRational::one);
        if max.is_zero() {
            return (vec![], 1.0);
        }
        let inv = max.recip();
        let v = self.coeffs.iter().map(|c| to_f64(&(c * &inv))).collect();
        (v, to_f64(&max))
    }

    /// Horner evaluation of float coefficients at a complex point.
    pub fn eval_complex(coeffs: &[f64], z: Complex64) -> Complex64 {
        coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Expression string in descending powers, e.g. `16*x^2 + 32*x`.
    pub fn to_expr(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let body = match (k, a.is_one()) {
                (0, _) => a.to_string(),
                (1, true) => "x".to_string(),
                (1, false) => format!("{a}*x"),
                (_, true) => format!("x^{k}"),
                (_, false) => format!("{a}*x^{k}"),
            };
            out.push_str(&body);
        }
        out
    }
}

/// `r / s` with `r = s c mod p` and `|r|, s <= sqrt(p / 2)`, if one exists.
fn rational_reconstruction(c: u64, p: u64) -> Option<ExactRational> {
    let bound = ((p / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (p as i128, c as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if s1 == 0 || s1.abs() > bound {
        return None;
    }
    Some(ExactRational::new(BigInt::from(r1), BigInt::from(s1)))
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

impl fmt::Debug for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalPolynomial({})", self.to_expr())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn arithmetic_and_division() {
        let a = RationalPolynomial::from_ints(&[-4, 0, 1]); // x^2 - 4
        let b = RationalPolynomial::linear(1, -2);
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q, RationalPolynomial::linear(1, 2));
        assert!(a.div_exact(&RationalPolynomial::linear(1, -3)).is_none());
        assert_eq!(b.mul(&q), a);
        assert_eq!(a.eval_int(3), rat(5));
    }

    #[test]
    fn expr_format() {
        let p = RationalPolynomial::from_ints(&[0, 32, 16]);
        assert_eq!(p.to_expr(), "16*x^2 + 32*x");
        let p = RationalPolynomial::new(vec![ratio(-1, 3), rat(0), rat(-1)]);
        assert_eq!(p.to_expr(), "-x^2 - 1/3");
    }

    #[test]
    fn primitive_and_gcd() {
        let p = RationalPolynomial::new(vec![ratio(-3, 2), rat(0), ratio(-9, 4)]);
        let (c, prim) = p.primitive_part();
        assert_eq!(prim, vec![BigInt::from(2), BigInt::from(0), BigInt::from(3)]);
        assert_eq!(c, ratio(-3, 4));
        let a = RationalPolynomial::from_ints(&[-1, 0, 1]);
        let b = RationalPolynomial::from_ints(&[1, 2, 1]);
        assert_eq!(a.gcd(&b), RationalPolynomial::linear(1, 1));
    }

    #[test]
    fn shift() {
        let p = RationalPolynomial::from_ints(&[1, 2, 3, 4]);
        let q = p.taylor_shift(&rat(-2));
        for x in -3..4 {
            assert_eq!(q.eval_int(x), p.eval_int(x - 2));
        }
    }

    #[test]
    fn squarefree() {
        // (x - 2)^2 (x + 1) x^3
        let p = RationalPolynomial::linear(1, -2)
            .pow(2)
            .mul(&RationalPolynomial::linear(1, 1))
            .mul(&RationalPolynomial::x().pow(3))
            .scale(&rat(-7));
        let d = p.squarefree_decomposition();
        assert_eq!(
            d,
            vec![
                (RationalPolynomial::linear(1, 1), 1),
                (RationalPolynomial::linear(1, -2), 2),
                (RationalPolynomial::x(), 3),
            ]
        );
    }

    #[test]
    fn parity_and_valuation() {
        let p = RationalPolynomial::from_ints(&[0, 0, 0, 5, 0, 1]);
        assert_eq!(p.x_adic_valuation(), 3);
        assert!(RationalPolynomial::from_ints(&[1, 0, 3, 0, 2]).is_even());
        assert!(!p.is_even());
    }
}
