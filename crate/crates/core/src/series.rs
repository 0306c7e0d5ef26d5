//! Truncated Laurent series with exact rational coefficients.
//!
//! A [`LaurentSeries`] stores the coefficients of `q^offset, ..., q^(order-1)`
//! and knows nothing about exponents `>= order`. Every operation returns the
//! largest truncation order that is provably correct given the orders of its
//! inputs, so precision loss in division, roots and reversion is tracked
//! rather than silently padded with wrong coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{exact_positive_root, pow_i64, rat, ExactRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("division by a series that is zero on its known range")]
    DivisionByZero,
    #[error("empty known range after truncation")]
    EmptyRange,
    #[error("coefficient index {index} outside known range [{offset}, {order})")]
    OutOfRange { index: i64, offset: i64, order: i64 },
    #[error("exp requires a series with zero constant term (offset {0})")]
    ExpPrecondition(i64),
    #[error("log requires a series with constant term 1")]
    LogPrecondition,
    #[error("irrational root: {0}")]
    IrrationalRoot(String),
    #[error("reversion requires offset 1 and a nonzero linear term (offset {0})")]
    RevertPrecondition(i64),
    #[error("composition requires an inner series with positive offset")]
    ComposePrecondition,
    #[error("coefficient vector has length {len}, expected {expected}")]
    BadLength { len: usize, expected: usize },
}

pub type Result<T> = std::result::Result<T, SeriesError>;

/// `sum_{k=offset}^{order-1} c_k q^k + O(q^order)`.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    offset: i64,
    coeffs: Vec<ExactRational>,
    order: i64,
}

impl LaurentSeries {
    /// Builds a series from the coefficients of `q^offset, q^(offset+1), ...`;
    /// the truncation order is `offset + coeffs.len()`.
    pub fn from_coeffs(offset: i64, coeffs: Vec<ExactRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(SeriesError::EmptyRange);
        }
        let order = offset + coeffs.len() as i64;
        Ok(Self::normalized(offset, coeffs, order))
    }

    pub fn from_ints(offset: i64, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(offset, coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// Builds a series whose coefficients are listed from `offset` and which
    /// is known up to `order`; missing coefficients are zero.
    pub fn with_order(offset: i64, mut coeffs: Vec<ExactRational>, order: i64) -> Result<Self> {
        if order <= offset {
            return Err(SeriesError::EmptyRange);
        }
        let len = (order - offset) as usize;
        coeffs.resize(len, ExactRational::zero());
        Ok(Self::normalized(offset, coeffs, order))
    }

    /// `c q^k + O(q^order)`.
    pub fn monomial(k: i64, c: ExactRational, order: i64) -> Result<Self> {
        Self::with_order(k, vec![c], order)
    }

    /// `1 + O(q^order)`, `order >= 1`.
    pub fn one(order: i64) -> Result<Self> {
        Self::monomial(0, ExactRational::one(), order)
    }

    /// `O(q^order)`.
    pub fn zero(order: i64) -> Self {
        LaurentSeries {
            offset: order - 1,
            coeffs: vec![ExactRational::zero()],
            order,
        }
    }

    /// The series `q`, exact through `O(q^order)`.
    pub fn variable(order: i64) -> Result<Self> {
        Self::monomial(1, ExactRational::one(), order)
    }

    fn normalized(offset: i64, mut coeffs: Vec<ExactRational>, order: i64) -> Self {
        debug_assert_eq!(coeffs.len() as i64, order - offset);
        match coeffs.iter().position(|c| !c.is_zero()) {
            None => Self::zero(order),
            Some(0) => LaurentSeries { offset, coeffs, order },
            Some(k) => {
                coeffs.drain(..k);
                LaurentSeries {
                    offset: offset + k as i64,
                    coeffs,
                    order,
                }
            }
        }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Coefficients of `q^offset ..= q^(order-1)`.
    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    /// Number of known coefficients, `order - offset`.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when every known coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lowest exponent that can carry a nonzero coefficient: the offset for a
    /// nonzero series, the truncation order for a zero one.
    pub fn valuation(&self) -> i64 {
        if self.is_zero() {
            self.order
        } else {
            self.offset
        }
    }

    /// Number of known terms counted from the valuation.
    pub fn relative_precision(&self) -> i64 {
        self.order - self.valuation()
    }

    pub fn leading(&self) -> &ExactRational {
        &self.coeffs[0]
    }

    /// Exact coefficient of `q^n`. Exponents below the offset are zero by
    /// construction; exponents at or above the order are unknown.
    pub fn coefficient(&self, n: i64) -> Result<ExactRational> {
        if n >= self.order {
            return Err(SeriesError::OutOfRange {
                index: n,
                offset: self.offset,
                order: self.order,
            });
        }
        if n < self.offset {
            return Ok(ExactRational::zero());
        }
        Ok(self.coeffs[(n - self.offset) as usize].clone())
    }

    /// `(exponent, coefficient)` pairs over the known range.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &ExactRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.offset + i as i64, c))
    }

    /// Drops every term at or above `order`. Orders above the current one
    /// are clamped, never invented.
    pub fn truncate(&self, order: i64) -> Result<Self> {
        let order = order.min(self.order);
        if order <= self.offset {
            return Ok(Self::zero(order));
        }
        let len = (order - self.offset) as usize;
        Ok(Self::normalized(
            self.offset,
            self.coeffs[..len].to_vec(),
            order,
        ))
    }

    /// Unit part: coefficients of `self / (lead * q^offset)` as a plain
    /// vector starting with 1.
    fn unit_part(&self) -> Vec<ExactRational> {
        let lead = self.leading().clone();
        if lead.is_one() {
            return self.coeffs.clone();
        }
        let inv = lead.recip();
        self.coeffs.iter().map(|c| c * &inv).collect()
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            order: self.order,
        }
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        LaurentSeries {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            order: self.order,
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            offset: self.offset + k,
            coeffs: self.coeffs.clone(),
            order: self.order + k,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, true)
    }

    fn add_scaled(&self, other: &Self, negate: bool) -> Self {
        let order = self.order.min(other.order);
        let offset = self.offset.min(other.offset);
        let mut out = vec![ExactRational::zero(); (order - offset) as usize];
        for (k, c) in self.terms().take_while(|(k, _)| *k < order) {
            out[(k - offset) as usize] += c;
        }
        for (k, c) in other.terms().take_while(|(k, _)| *k < order) {
            if negate {
                out[(k - offset) as usize] -= c;
            } else {
                out[(k - offset) as usize] += c;
            }
        }
        Self::normalized(offset, out, order)
    }

    /// Adds the constant `c`; the result keeps `self`'s order.
    pub fn add_constant(&self, c: &ExactRational) -> Result<Self> {
        if self.order <= 0 {
            return Err(SeriesError::EmptyRange);
        }
        Ok(self.add(&Self::monomial(0, c.clone(), self.order)?))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let va = self.valuation();
        let vb = other.valuation();
        let order = (self.order + vb).min(other.order + va);
        if self.is_zero() || other.is_zero() {
            return Self::zero(order);
        }
        let offset = va + vb;
        let len = (order - offset) as usize;
        let out = convolve(&self.coeffs, &other.coeffs, len);
        Self::normalized(offset, out, order)
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// `self / other`; `other` must be nonzero on its known range.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let inv = other.recip()?;
        Ok(self.mul(&inv))
    }

    /// Multiplicative inverse of a nonzero series.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(SeriesError::DivisionByZero);
        }
        let p = self.relative_precision() as usize;
        let out = unit_inverse(&self.coeffs, p);
        Ok(Self::normalized(-self.offset, out, -self.offset + p as i64))
    }

    /// `exp(self)` for a series with zero constant term. The result has
    /// constant term 1 and the same order.
    pub fn exp(&self) -> Result<Self> {
        if self.order <= 0 {
            return Err(SeriesError::EmptyRange);
        }
        if !self.is_zero() && self.offset < 1 {
            return Err(SeriesError::ExpPrecondition(self.offset));
        }
        let n = self.order as usize;
        let f = self.dense_from_zero(n);
        Ok(Self::normalized(0, exp_dense(&f, n), self.order))
    }

    /// `log(self)` for a series with constant term 1; the result has zero
    /// constant term and the same order.
    pub fn log(&self) -> Result<Self> {
        if self.offset != 0 || !self.leading().is_one() {
            return Err(SeriesError::LogPrecondition);
        }
        let n = self.order as usize;
        Ok(Self::normalized(0, log_dense(&self.coeffs, n), self.order))
    }

    /// Positive `k`-th root. The offset must be divisible by `k` and the
    /// leading coefficient must be a positive rational `k`-th power; the
    /// result keeps the relative precision of `self`.
    pub fn kth_root(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(SeriesError::IrrationalRoot("zeroth root".into()));
        }
        if self.is_zero() {
            return Err(SeriesError::IrrationalRoot("root of a zero series".into()));
        }
        if self.offset.rem_euclid(k as i64) != 0 {
            return Err(SeriesError::IrrationalRoot(format!(
                "offset {} not divisible by {}",
                self.offset, k
            )));
        }
        let lead = self.leading();
        if !lead.is_positive() {
            return Err(SeriesError::IrrationalRoot(format!(
                "leading coefficient {} is not positive",
                lead
            )));
        }
        let root = exact_positive_root(lead, k).ok_or_else(|| {
            SeriesError::IrrationalRoot(format!(
                "leading coefficient {} is not a rational {}-th power",
                lead, k
            ))
        })?;
        let p = self.relative_precision() as usize;
        let unit = self.unit_part();
        let e = ExactRational::new(BigInt::one(), BigInt::from(k));
        let body = power_unit(&unit, &e, p);
        let offset = self.offset / k as i64;
        let body: Vec<_> = body.into_iter().map(|c| c * &root).collect();
        Ok(Self::normalized(offset, body, offset + p as i64))
    }

    /// `self^e` for an integer exponent (negative exponents need a nonzero
    /// series). Relative precision is preserved.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e == 0 {
            return Self::one(self.relative_precision().max(1));
        }
        if self.is_zero() {
            if e < 0 {
                return Err(SeriesError::DivisionByZero);
            }
            return Ok(Self::zero(self.order + (e - 1) * self.order.max(0)));
        }
        if e == 1 {
            return Ok(self.clone());
        }
        let p = self.relative_precision() as usize;
        let unit = self.unit_part();
        let lead = pow_i64(self.leading(), e);
        let body = power_unit(&unit, &rat(e), p);
        let offset = self.offset * e;
        let body: Vec<_> = body.into_iter().map(|c| c * &lead).collect();
        Ok(Self::normalized(offset, body, offset + p as i64))
    }

    /// The operator `q d/dq`: the coefficient of `q^k` becomes `k c_k`.
    pub fn q_derivative(&self) -> Self {
        let coeffs = self
            .terms()
            .map(|(k, c)| c * rat(k))
            .collect();
        Self::normalized(self.offset, coeffs, self.order)
    }

    /// Substitutes `q -> c q`: the coefficient of `q^k` becomes `c^k c_k`.
    pub fn scale_argument(&self, c: &ExactRational) -> Self {
        assert!(!c.is_zero(), "scale_argument needs a nonzero factor");
        let mut power = pow_i64(c, self.offset);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            coeffs.push(x * &power);
            power *= c;
        }
        Self::normalized(self.offset, coeffs, self.order)
    }

    /// Compositional inverse of a series `a_1 q + a_2 q^2 + ...` with
    /// `a_1 != 0`, by Lagrange inversion: `[q^n] g = (1/n) [q^(n-1)] (q/f)^n`.
    pub fn revert(&self) -> Result<Self> {
        if self.is_zero() || self.offset != 1 {
            return Err(SeriesError::RevertPrecondition(self.valuation()));
        }
        let p = self.relative_precision() as usize;
        // h = q / f as a unit series.
        let h = unit_inverse(&self.coeffs, p);
        let mut out = vec![ExactRational::zero(); p];
        let mut hp = h.clone();
        for n in 1..=p {
            out[n - 1] = &hp[n - 1] / rat(n as i64);
            if n < p {
                hp = convolve(&hp, &h, p);
            }
        }
        Ok(Self::normalized(1, out, self.order))
    }

    /// Compositional inverse by order-doubling Newton iteration on
    /// `f(g) = q`. Produces the same exact output as [`Self::revert`].
    pub fn revert_newton(&self) -> Result<Self> {
        if self.is_zero() || self.offset != 1 {
            return Err(SeriesError::RevertPrecondition(self.valuation()));
        }
        let target = self.order;
        let df = self.derivative_d();
        let mut g = Self::monomial(1, self.leading().recip(), 2)?;
        while g.order < target {
            let prec = (2 * g.order - 1).min(target);
            let g_ext = Self::with_order(1, g.coeffs.clone(), prec)?;
            let fg = self.compose(&g_ext)?.truncate(prec)?;
            let resid = fg.sub(&Self::variable(prec)?);
            let dfg = df.compose(&g_ext)?;
            let step = resid.div(&dfg)?;
            g = g_ext.sub(&step).truncate(prec)?;
        }
        Ok(g)
    }

    /// Ordinary derivative `d/dq`.
    pub fn derivative_d(&self) -> Self {
        let coeffs = self.terms().map(|(k, c)| c * rat(k)).collect();
        Self::normalized(self.offset - 1, coeffs, self.order - 1)
    }

    /// `self(inner)` where `inner` has positive valuation.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.is_zero() || inner.offset < 1 {
            return Err(SeriesError::ComposePrecondition);
        }
        let vg = inner.offset;
        let pg = inner.relative_precision();
        let vf = self.offset;
        let order = (self.order * vg).min(vf * vg + pg);
        if self.is_zero() {
            return Ok(Self::zero(order));
        }
        // Horner on the coefficient list: f = q^vf * (c0 + c1 q + ...).
        let mut acc = Self::monomial(0, self.coeffs.last().unwrap().clone(), order - vf * vg)?;
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.mul(inner).truncate(order - vf * vg)?;
            acc = acc.add(&Self::monomial(0, c.clone(), acc.order.max(1))?);
        }
        let head = inner.pow(vf)?;
        Ok(acc.mul(&head).truncate(order)?)
    }

    /// Numeric value of the truncated sum at a real point; used only for
    /// diagnostics.
    pub fn eval_f64(&self, q: f64) -> f64 {
        self.terms()
            .map(|(k, c)| crate::rational::to_f64(c) * q.powi(k as i32))
            .sum()
    }

    fn dense_from_zero(&self, n: usize) -> Vec<ExactRational> {
        let mut f = vec![ExactRational::zero(); n];
        for (k, c) in self.terms() {
            if k >= 0 && (k as usize) < n {
                f[k as usize] = c.clone();
            }
        }
        f
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "{}*q", c)?,
                _ => write!(f, "{}*q^{}", c, k)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order)
    }
}

/// Truncated product of two dense coefficient vectors.
pub(crate) fn convolve(a: &[ExactRational], b: &[ExactRational], len: usize) -> Vec<ExactRational> {
    let mut out = Vec::with_capacity(len);
    for k in 0..len {
        let lo = k.saturating_sub(b.len().saturating_sub(1));
        let hi = k.min(a.len().saturating_sub(1));
        let mut s = ExactRational::zero();
        if lo <= hi {
            for i in lo..=hi {
                if a[i].is_zero() || b[k - i].is_zero() {
                    continue;
                }
                s += &a[i] * &b[k - i];
            }
        }
        out.push(s);
    }
    out
}

/// Inverse of a dense series with nonzero constant term, to `len` terms.
fn unit_inverse(a: &[ExactRational], len: usize) -> Vec<ExactRational> {
    let inv0 = a[0].recip();
    let mut out: Vec<ExactRational> = Vec::with_capacity(len);
    out.push(inv0.clone());
    for k in 1..len {
        let mut s = ExactRational::zero();
        for i in 1..=k.min(a.len() - 1) {
            if !a[i].is_zero() {
                s += &a[i] * &out[k - i];
            }
        }
        out.push(-s * &inv0);
    }
    out
}

/// `exp(f)` for dense `f` with `f[0] = 0`, via `n g_n = sum k f_k g_(n-k)`.
fn exp_dense(f: &[ExactRational], len: usize) -> Vec<ExactRational> {
    let kf: Vec<ExactRational> = f.iter().enumerate().map(|(k, c)| c * rat(k as i64)).collect();
    let mut g = Vec::with_capacity(len);
    g.push(ExactRational::one());
    for n in 1..len {
        let mut s = ExactRational::zero();
        for k in 1..=n.min(kf.len() - 1) {
            if !kf[k].is_zero() {
                s += &kf[k] * &g[n - k];
            }
        }
        g.push(s / rat(n as i64));
    }
    g
}

/// `log(g)` for dense `g` with `g[0] = 1`, via `n f_n = n g_n - sum k f_k g_(n-k)`.
fn log_dense(g: &[ExactRational], len: usize) -> Vec<ExactRational> {
    let mut kf: Vec<ExactRational> = Vec::with_capacity(len);
    kf.push(ExactRational::zero());
    for n in 1..len {
        let mut s = g.get(n).cloned().unwrap_or_else(ExactRational::zero) * rat(n as i64);
        for k in 1..n {
            if !kf[k].is_zero() && n - k < g.len() && !g[n - k].is_zero() {
                s -= &kf[k] * &g[n - k];
            }
        }
        kf.push(s);
    }
    kf.into_iter()
        .enumerate()
        .map(|(k, c)| if k == 0 { c } else { c / rat(k as i64) })
        .collect()
}

/// `u^e` for a dense unit series `u` (`u[0] = 1`) and rational exponent `e`,
/// via the recurrence from `u (u^e)' = e u' u^e`:
/// `n a_0 h_n = sum_{k=1}^{n} (e k - (n - k)) u_k h_(n-k)` with `a_0 = 1`.
fn power_unit(u: &[ExactRational], e: &ExactRational, len: usize) -> Vec<ExactRational> {
    let mut h: Vec<ExactRational> = Vec::with_capacity(len);
    h.push(ExactRational::one());
    for n in 1..len {
        let mut s = ExactRational::zero();
        for k in 1..=n.min(u.len() - 1) {
            if u[k].is_zero() {
                continue;
            }
            let w = e * rat(k as i64) - rat((n - k) as i64);
            if w.is_zero() {
                continue;
            }
            s += w * &u[k] * &h[n - k];
        }
        h.push(s / rat(n as i64));
    }
    h
}
