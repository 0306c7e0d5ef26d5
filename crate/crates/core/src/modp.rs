//! Dense polynomials over the prime field `F_p`, `p < 2^32`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::poly::RationalPolynomial;
use crate::rational::ExactRational;

/// Ascending coefficients in `[0, p)`, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    powmod(a, p - 2, p)
}

/// Reduces an integer into `[0, p)`.
pub fn reduce_int(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Reduces a rational; `None` when `p` divides the denominator.
pub fn reduce_rational(c: &ExactRational, p: u64) -> Option<u64> {
    let d = reduce_int(c.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mulmod(reduce_int(c.numer(), p), inv_mod(d, p), p))
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut f = FpPoly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        f.trim();
        f
    }

    /// `None` when some denominator vanishes mod `p`.
    pub fn from_rational(poly: &RationalPolynomial, p: u64) -> Option<Self> {
        let coeffs = poly
            .coeffs()
            .iter()
            .map(|c| reduce_rational(c, p))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::new(p, coeffs))
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let p = self.p;
        let v = (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).copied().unwrap_or(0);
                let b = o.coeffs.get(k).copied().unwrap_or(0);
                (a + p - b) % p
            })
            .collect();
        Self::new(p, v)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(self.p, vec![]);
        }
        let p = self.p;
        let mut v = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                v[i + j] = (v[i + j] + mulmod(a, b, p)) % p;
            }
        }
        Self::new(p, v)
    }

    /// `(quotient, remainder)`; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let p = self.p;
        let inv = inv_mod(*d.coeffs.last().unwrap(), p);
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::new(p, vec![]), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = mulmod(r[k + dd], inv, p);
            q[k] = c;
            if c != 0 {
                for (i, &dc) in d.coeffs.iter().enumerate() {
                    r[k + i] = (r[k + i] + p - mulmod(c, dc, p)) % p;
                }
            }
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&l) => {
                let inv = inv_mod(l, self.p);
                Self::new(self.p, self.coeffs.iter().map(|&c| mulmod(c, inv, self.p)).collect())
            }
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| mulmod(c, k as u64 % p, p))
                .collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mulmod(acc, x, self.p) + c) % self.p)
    }

    /// `base^e mod self`.
    fn pow_mod(&self, base: &Self, mut e: u64) -> Self {
        let mut result = Self::new(self.p, vec![1]);
        let mut b = base.rem(self);
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&b).rem(self);
            }
            b = b.mul(&b).rem(self);
            e >>= 1;
        }
        result
    }

    pub fn is_squarefree(&self) -> bool {
        let d = self.derivative();
        !d.is_zero() && self.gcd(&d).degree() == Some(0)
    }

    /// Distinct-degree factorization of a squarefree polynomial: pairs
    /// `(d, count)` meaning `count` irreducible factors of degree `d`.
    pub fn distinct_degree(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut f = self.monic();
        let x = Self::x(self.p);
        let mut h = x.clone();
        let mut i = 1;
        while let Some(df) = f.degree() {
            if df < 2 * i {
                if df > 0 {
                    out.push((df, 1));
                }
                break;
            }
            h = f.pow_mod(&h, self.p);
            let g = f.gcd(&h.sub(&x));
            let dg = g.degree().unwrap_or(0);
            if dg > 0 {
                out.push((i, dg / i));
                f = f.div_rem(&g).0;
                h = h.rem(&f);
            }
            i += 1;
        }
        out
    }

    /// Multiplicity of the root `r`, by repeated synthetic division.
    pub fn root_multiplicity(&self, r: u64) -> u32 {
        let p = self.p;
        let mut f = self.coeffs.clone();
        let mut mult = 0;
        while f.len() > 1 {
            // Horner: f = (x - r) q + f(r)
            let mut q = vec![0u64; f.len() - 1];
            let mut acc = 0u64;
            for k in (0..f.len()).rev() {
                acc = (mulmod(acc, r, p) + f[k]) % p;
                if k > 0 {
                    q[k - 1] = acc;
                }
            }
            if acc != 0 {
                break;
            }
            mult += 1;
            f = q;
        }
        mult
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ddf_small() {
        // x^2 + 1 is irreducible mod 3 and splits mod 5.
        let f = FpPoly::new(3, vec![1, 0, 1]);
        assert_eq!(f.distinct_degree(), vec![(2, 1)]);
        let f = FpPoly::new(5, vec![1, 0, 1]);
        assert_eq!(f.distinct_degree(), vec![(1, 2)]);
        // x^4 + 1 mod 3 = (x^2 + x + 2)(x^2 + 2x + 2)
        let f = FpPoly::new(3, vec![1, 0, 0, 0, 1]);
        assert_eq!(f.distinct_degree(), vec![(2, 2)]);
    }

    #[test]
    fn multiplicities() {
        // (x - 2)^2 (x - 3) mod 7
        let g = FpPoly::new(7, vec![5, 1]).mul(&FpPoly::new(7, vec![5, 1])).mul(&FpPoly::new(7, vec![4, 1]));
        assert_eq!(g.root_multiplicity(2), 2);
        assert_eq!(g.root_multiplicity(3), 1);
        assert_eq!(g.root_multiplicity(1), 0);
        assert!(!g.is_squarefree());
    }
}
