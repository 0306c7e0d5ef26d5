//! Exact rational helpers.
//!
//! `ExactRational` is `num_rational::BigRational`: always reduced, with a
//! positive denominator. This module adds the handful of operations the
//! series and interpolation code need on top of it.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type ExactRational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Exact `k`-th root of a non-negative integer, if it exists.
pub fn exact_uint_root(n: &BigUint, k: u32) -> Option<BigUint> {
    if k == 0 {
        return None;
    }
    if k == 1 || n.is_zero() || n.is_one() {
        return Some(n.clone());
    }
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact positive `k`-th root of a positive rational.
pub fn exact_positive_root(c: &ExactRational, k: u32) -> Option<ExactRational> {
    if !c.is_positive() {
        return None;
    }
    let num = exact_uint_root(c.numer().magnitude(), k)?;
    let den = exact_uint_root(c.denom().magnitude(), k)?;
    Some(BigRational::new(
        BigInt::from_biguint(Sign::Plus, num),
        BigInt::from_biguint(Sign::Plus, den),
    ))
}

/// `c^e` for any integer exponent (`c` nonzero when `e < 0`).
pub fn pow_i64(c: &ExactRational, e: i64) -> ExactRational {
    if e == 0 {
        return ExactRational::one();
    }
    let p = num_traits::pow(c.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// Floating value that survives numerators and denominators far outside
/// the `f64` range, as long as the quotient itself is representable.
pub fn to_f64(c: &ExactRational) -> f64 {
    if let Some(v) = c.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let nb = c.numer().bits() as i64;
    let db = c.denom().bits() as i64;
    let shift = nb - db;
    let scaled = if shift > 0 {
        BigRational::new(c.numer().clone(), c.denom() << (shift as usize))
    } else {
        BigRational::new(c.numer() << ((-shift) as usize), c.denom().clone())
    };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}

/// Exponent of the prime `p` in the nonzero integer `n`.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Trial-division factorization of `|n|`, as ascending `(prime, exponent)`
/// pairs. Intended for the moderately sized integers that show up as
/// polynomial scalars; the cofactor left after trial division up to `limit`
/// is reported as a single entry if it is not 1.
pub fn factor_integer(n: &BigInt, limit: u64) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = 2u64;
    while p <= limit && !n.is_one() {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = n.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            n = q;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a ExactRational>>(xs: I) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_arithmetic() {
        assert_eq!(ratio(1, 2) + ratio(1, 3), ratio(5, 6));
        assert_eq!(ratio(2, 3) * ratio(9, 4), ratio(3, 2));
        let r = ratio(6, -4);
        assert_eq!(r.numer(), &big(-3));
        assert_eq!(r.denom(), &big(2));
    }

    #[test]
    fn roots() {
        assert_eq!(exact_positive_root(&ratio(8, 27), 3), Some(ratio(2, 3)));
        assert_eq!(exact_positive_root(&rat(2), 2), None);
        assert_eq!(exact_positive_root(&rat(-4), 2), None);
        assert_eq!(exact_positive_root(&rat(1), 7), Some(rat(1)));
    }

    #[test]
    fn huge_to_f64() {
        let n = num_traits::pow(big(10), 400);
        let d = num_traits::pow(big(10), 399);
        let c = BigRational::new(n, d * big(4));
        assert!((to_f64(&c) - 2.5).abs() < 1e-12);
    }

    #[test]
    fn valuations_and_factoring() {
        assert_eq!(valuation(&big(48), 2), 4);
        assert_eq!(valuation(&big(48), 3), 1);
        assert_eq!(
            factor_integer(&big(-360), 1000),
            vec![(big(2), 3), (big(3), 2), (big(5), 1)]
        );
        assert!(is_prime(23) && !is_prime(25));
    }
}
