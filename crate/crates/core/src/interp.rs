//! Exact interpolation of coefficient sequences across `m`.
//!
//! Samples sit at consecutive integers `m = 3, 4, 5, ...`, so Newton's
//! forward-difference form gives the interpolant with exact arithmetic only.
//! The last `guard` samples are withheld from the fit and must be reproduced
//! exactly; a mismatch is the signal that the sequence is not polynomial
//! within the sample budget.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::forms::FormKind;
use crate::modp::FpPoly;
use crate::oracles::{quad_form_membership, QuadMode};
use crate::poly::RationalPolynomial;
use crate::rational::{is_prime, rat, ratio, to_f64, valuation, ExactRational};
use crate::roots::find_roots;
use crate::series::SeriesError;
use crate::table::{CoefficientTable, FormTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpError {
    #[error("not polynomial within budget: {samples} samples, guard {guard}, first mismatch at m = {mismatch_at}")]
    NotPolynomial {
        samples: usize,
        guard: usize,
        mismatch_at: u32,
    },
    #[error("need at least {needed} samples, have {have}")]
    TooFewSamples { needed: usize, have: usize },
    #[error("sample nodes must be consecutive integers")]
    NonConsecutive,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Default number of withheld samples.
pub const DEFAULT_GUARD: usize = 5;

/// Largest degree the interpolation search allows for index `n`.
pub fn degree_budget(n: i64) -> usize {
    (3 * n.max(0) + 8) as usize
}

/// Samples needed to interpolate index `n` with `guard` withheld points.
pub fn sample_budget(n: i64, guard: usize) -> usize {
    degree_budget(n) + 1 + guard
}

/// Interpolates through all but the last `guard` samples and checks those.
pub fn newton_interpolate(
    table: &CoefficientTable,
    guard: usize,
) -> Result<RationalPolynomial, InterpError> {
    let s = &table.samples;
    if s.len() < guard + 1 {
        return Err(InterpError::TooFewSamples {
            needed: guard + 1,
            have: s.len(),
        });
    }
    if s.windows(2).any(|w| w[1].0 != w[0].0 + 1) {
        return Err(InterpError::NonConsecutive);
    }
    let fit = s.len() - guard;
    let x0 = s[0].0 as i64;

    // Leading entries of the forward-difference table.
    let mut row: Vec<ExactRational> = s[..fit].iter().map(|(_, v)| v.clone()).collect();
    let mut leads = Vec::with_capacity(fit);
    while !row.is_empty() {
        leads.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    while leads.last().is_some_and(Zero::is_zero) {
        leads.pop();
    }

    // p(x) = sum_k D^k s_0 * binom(x - x0, k)
    let mut p = RationalPolynomial::zero();
    let mut basis = RationalPolynomial::constant(ExactRational::one());
    for (k, d) in leads.iter().enumerate() {
        if k > 0 {
            let factor = RationalPolynomial::new(vec![
                rat(-x0 - (k as i64 - 1)) / rat(k as i64),
                rat(1) / rat(k as i64),
            ]);
            basis = basis.mul(&factor);
        }
        if !d.is_zero() {
            p = p.add(&basis.scale(d));
        }
    }

    for (m, v) in &s[fit..] {
        if &p.eval_int(*m as i64) != v {
            return Err(InterpError::NotPolynomial {
                samples: s.len(),
                guard,
                mismatch_at: *m,
            });
        }
    }
    Ok(p)
}

/// Interpolating polynomial for the coefficient of `q^n` of `family`,
/// using up to [`sample_budget`] samples from `table`.
pub fn interpolate_family(
    table: &FormTable,
    family: FormKind,
    n: i64,
    guard: usize,
) -> Result<RationalPolynomial, InterpError> {
    let ct = table.coefficient_table(family, n, sample_budget(n, guard))?;
    newton_interpolate(&ct, guard)
}


/// Fixed factors that the interpolating polynomials are divided by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum StructuralFactor {
    XMinus2,
    XPlus2,
    XSquaredMinus4,
    ThreeXMinus2,
    XMinus6,
}

impl StructuralFactor {
    pub fn poly(self) -> RationalPolynomial {
        match self {
            StructuralFactor::XMinus2 => RationalPolynomial::linear(1, -2),
            StructuralFactor::XPlus2 => RationalPolynomial::linear(1, 2),
            StructuralFactor::XSquaredMinus4 => RationalPolynomial::from_ints(&[-4, 0, 1]),
            StructuralFactor::ThreeXMinus2 => RationalPolynomial::linear(3, -2),
            StructuralFactor::XMinus6 => RationalPolynomial::linear(1, -6),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            StructuralFactor::XMinus2 => "x - 2",
            StructuralFactor::XPlus2 => "x + 2",
            StructuralFactor::XSquaredMinus4 => "x^2 - 4",
            StructuralFactor::ThreeXMinus2 => "3*x - 2",
            StructuralFactor::XMinus6 => "x - 6",
        }
    }
}

impl fmt::Display for StructuralFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Irreducibility {
    Certified,
    Probable,
    Reducible,
    Unknown,
}

/// Result of [`irreducibility_probe`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeResult {
    pub status: Irreducibility,
    /// A proper factor, when one was found.
    pub witness: Option<RationalPolynomial>,
    /// Prime that certified irreducibility.
    pub certificate_prime: Option<u64>,
    /// Distinct-degree pattern `(degree, count)` per prime used.
    pub patterns: Vec<(u64, Vec<(usize, usize)>)>,
}

/// The clause a family's extraction follows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureRule {
    pub monomial_power: usize,
    pub factors: Vec<(StructuralFactor, u32)>,
    pub core_degree: usize,
    pub parity_even: bool,
    /// Expected sign of the scalar, where the clause states one.
    pub scalar_sign: Option<i8>,
}

/// Smallest index each family's general structure clause covers.
pub fn structure_range_start(family: FormKind) -> Option<i64> {
    match family {
        FormKind::BigJ => None,
        FormKind::J => Some(2),
        FormKind::H4 | FormKind::H6 => Some(3),
        FormKind::DeltaStar => Some(2),
        FormKind::DeltaDagger => Some(4),
        FormKind::DeltaDiamond => Some(3),
    }
}

/// Whether `n` is not of the form `x^2 + xy + y^2`.
pub fn in_q_set(n: i64) -> bool {
    n >= 1 && quad_form_membership(n as u64, QuadMode::Form)
}

/// The structure clause for `family` at index `n`, if `n` is in range.
pub fn structure_rule(family: FormKind, n: i64) -> Option<StructureRule> {
    if n < structure_range_start(family)? {
        return None;
    }
    let u = n as usize;
    use StructuralFactor::*;
    let odd = n % 2 != 0;
    Some(match family {
        FormKind::J => StructureRule {
            monomial_power: u + 1,
            factors: vec![(XMinus2, 1), (XPlus2, 1)],
            core_degree: 2 * u,
            parity_even: true,
            scalar_sign: None,
        },
        FormKind::H4 => {
            let q = in_q_set(n);
            let mut factors = vec![(XSquaredMinus4, 1)];
            if q {
                factors.push((XMinus6, 1));
            }
            StructureRule {
                monomial_power: u,
                factors,
                core_degree: 3 * u - 1 - u - 2 - q as usize,
                parity_even: false,
                scalar_sign: Some(if odd { 1 } else { -1 }),
            }
        }
        FormKind::H6 => StructureRule {
            monomial_power: u + 1,
            factors: vec![(XMinus2, 1), (ThreeXMinus2, 1)],
            core_degree: 2 * u - 3,
            parity_even: false,
            scalar_sign: Some(if odd { -1 } else { 1 }),
        },
        FormKind::DeltaStar => StructureRule {
            monomial_power: u - 1,
            factors: vec![(XMinus2, 2)],
            core_degree: 2 * u - 4,
            parity_even: false,
            scalar_sign: None,
        },
        // The printed clause has (x - 2)^2, which contradicts its own core
        // degree 2n - 1; the degree is kept and the factor taken once.
        FormKind::DeltaDagger => StructureRule {
            monomial_power: u,
            factors: vec![(XMinus2, 1)],
            core_degree: 2 * u - 1,
            parity_even: false,
            scalar_sign: None,
        },
        FormKind::DeltaDiamond => StructureRule {
            monomial_power: u - 1,
            factors: vec![(XMinus2, 1)],
            core_degree: 2 * u - 3,
            parity_even: false,
            scalar_sign: None,
        },
        FormKind::BigJ => return None,
    })
}

/// `scalar * x^monomial_power * prod factors * core`, with `core` monic.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredStructure {
    pub family: FormKind,
    pub n: i64,
    pub scalar: ExactRational,
    pub monomial_power: usize,
    pub structural_factors: Vec<(StructuralFactor, u32)>,
    pub core: RationalPolynomial,
    pub core_irreducible: Irreducibility,
    pub parity_even: bool,
    pub expected_core_degree: usize,
    /// `None` when the clause states no sign.
    pub sign_ok: Option<bool>,
}

impl FactoredStructure {
    pub fn reconstruct(&self) -> RationalPolynomial {
        let mut p = self
            .core
            .scale(&self.scalar)
            .mul(&RationalPolynomial::monomial(self.monomial_power, ExactRational::one()));
        for (f, e) in &self.structural_factors {
            p = p.mul(&f.poly().pow(*e));
        }
        p
    }

    pub fn degree_ok(&self) -> bool {
        self.core.degree() == self.expected_core_degree
    }

    /// Parity holds where required.
    pub fn parity_ok(&self) -> bool {
        !self.parity_even || self.core.is_even()
    }

    /// `(content, primitive integer core)` of `scalar * core`, the
    /// normalization in which the leading-coefficient clauses are stated.
    pub fn primitive_core(&self) -> (ExactRational, Vec<BigInt>) {
        self.core.scale(&self.scalar).primitive_part()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("{family} index {n} is outside the structure clause")]
    OutOfRange { family: FormKind, n: i64 },
    #[error("structural factor {factor} does not divide {family} index {n}")]
    FactorDoesNotDivide {
        family: FormKind,
        n: i64,
        factor: String,
    },
}

/// Largest prime tried by the mod-p irreducibility certificates.
pub const PROBE_PRIME_LIMIT: u64 = 600;

/// Odd primes up to [`PROBE_PRIME_LIMIT`].
pub fn probe_primes() -> Vec<u64> {
    primes_between(3, PROBE_PRIME_LIMIT)
}

/// Divides out the family's structural factors (x-power first, then the
/// linear and quadratic factors in order) and normalizes the core to be
/// monic.
pub fn extract_structure(
    family: FormKind,
    n: i64,
    p: &RationalPolynomial,
) -> Result<FactoredStructure, StructureError> {
    let rule = structure_rule(family, n).ok_or(StructureError::OutOfRange { family, n })?;
    let fail = |factor: String| StructureError::FactorDoesNotDivide { family, n, factor };
    if p.is_zero() {
        return Err(fail("x^0".into()));
    }
    if p.x_adic_valuation() < rule.monomial_power {
        return Err(fail(format!("x^{}", rule.monomial_power)));
    }
    let mut rem = p.shift_down(rule.monomial_power);
    for (f, e) in &rule.factors {
        for k in 1..=*e {
            rem = rem
                .div_exact(&f.poly())
                .ok_or_else(|| fail(format!("({})^{k}", f.label())))?;
        }
    }
    let scalar = rem.leading();
    let core = rem.monic();
    let core_irreducible = irreducibility_probe(&core, &probe_primes()).status;
    let sign_ok = rule
        .scalar_sign
        .map(|s| (s > 0) == scalar.is_positive());
    Ok(FactoredStructure {
        family,
        n,
        scalar,
        monomial_power: rule.monomial_power,
        structural_factors: rule.factors,
        core,
        core_irreducible,
        parity_even: rule.parity_even,
        expected_core_degree: rule.core_degree,
        sign_ok,
    })
}

/// The polynomials printed for the small indices that the general clauses
/// do not cover. `T-diamond` for `n = 1, 2, 3` is stated only by degree and
/// is listed in [`printed_degree`].
pub fn printed_polynomial(family: FormKind, n: i64) -> Option<RationalPolynomial> {
    let x = RationalPolynomial::x;
    let lin = RationalPolynomial::linear;
    let ints = RationalPolynomial::from_ints;
    Some(match (family, n) {
        (FormKind::J, 0) => RationalPolynomial::new(vec![rat(32), rat(0), rat(24)]),
        (FormKind::J, 1) => ints(&[0, 0, 1])
            .mul(&RationalPolynomial::new(vec![ratio(-16, 23), rat(0), ratio(-8, 69), rat(0), rat(1)]))
            .scale(&rat(276)),
        (FormKind::H4, 1) => x().mul(&lin(1, 2)).scale(&rat(16)),
        (FormKind::H4, 2) => x()
            .mul(&lin(1, -2))
            .mul(&lin(1, 2))
            .mul(&lin(1, 6))
            .scale(&rat(-16)),
        (FormKind::H6, 1) => ints(&[0, 0, 1]).mul(&lin(3, -2)).scale(&rat(-8)),
        (FormKind::H6, 2) => lin(3, -2).mul(&lin(1, -2)).mul(&lin(1, -14)).scale(&rat(8)),
        (FormKind::DeltaDagger, 1) => x().mul(&ints(&[6, 1, 3])).scale(&rat(16)),
        (FormKind::DeltaDagger, 2) => ints(&[0, 0, 1])
            .mul(&ints(&[-120, -260, 66, -95, 39]))
            .scale(&rat(-16)),
        (FormKind::DeltaDagger, 3) => ints(&[0, 0, 0, 1])
            .mul(&ints(&[-2208, -2960, 19136, -12520, 9574, -3021, 189]))
            .scale(&ratio(64, 9)),
        _ => return None,
    })
}

/// Degrees stated without a printed polynomial.
pub fn printed_degree(family: FormKind, n: i64) -> Option<usize> {
    match (family, n) {
        (FormKind::DeltaDiamond, 1..=3) => Some(3 * n as usize),
        _ => None,
    }
}

/// Comparison of an interpolated small-index polynomial against the printed
/// one.
#[derive(Debug, Clone, PartialEq)]
pub struct PrintedComparison {
    pub family: FormKind,
    pub n: i64,
    pub computed: RationalPolynomial,
    pub printed: Option<RationalPolynomial>,
    pub printed_degree: Option<usize>,
    pub agrees: bool,
}

pub fn compare_printed(family: FormKind, n: i64, computed: &RationalPolynomial) -> Option<PrintedComparison> {
    let printed = printed_polynomial(family, n);
    let degree = printed_degree(family, n);
    let agrees = match (&printed, degree) {
        (Some(p), _) => p == computed,
        (None, Some(d)) => computed.degree() == d,
        (None, None) => return None,
    };
    Some(PrintedComparison {
        family,
        n,
        computed: computed.clone(),
        printed,
        printed_degree: degree,
        agrees,
    })
}

fn subset_sums(pattern: &[(usize, usize)], total: usize) -> Vec<bool> {
    let mut can = vec![false; total + 1];
    can[0] = true;
    for &(d, count) in pattern {
        for _ in 0..count {
            for s in (d..=total).rev() {
                if can[s - d] {
                    can[s] = true;
                }
            }
        }
    }
    can
}

/// Integer polynomial with coprime coefficients proportional to `p`.
fn integer_form(p: &RationalPolynomial) -> RationalPolynomial {
    RationalPolynomial::from_bigints(&p.primitive_part().1)
}

/// Probes irreducibility over the rationals: rational roots and repeated
/// factors give a witness; an irreducible reduction modulo a good prime, or
/// incompatible factor-degree patterns across primes, certify; otherwise
/// the result is `Probable`.
pub fn irreducibility_probe(p: &RationalPolynomial, primes: &[u64]) -> ProbeResult {
    let mut res = ProbeResult {
        status: Irreducibility::Unknown,
        witness: None,
        certificate_prime: None,
        patterns: Vec::new(),
    };
    let n = p.degree();
    if p.is_zero() || n == 0 {
        return res;
    }
    if n == 1 {
        res.status = Irreducibility::Certified;
        return res;
    }
    let f = integer_form(p);
    if f.coeff(0).is_zero() {
        res.status = Irreducibility::Reducible;
        res.witness = Some(RationalPolynomial::x());
        return res;
    }
    let g = f.gcd(&f.derivative());
    if g.degree() > 0 {
        res.status = Irreducibility::Reducible;
        res.witness = Some(g);
        return res;
    }
    // A rational root a/b has b | lead, so lead * root is an integer.
    let lead = f.leading();
    if let Ok(rs) = find_roots(&f, 1e-6) {
        for z in rs.roots.iter().filter(|z| z.im.abs() < 1e-6 * z.norm().max(1.0)) {
            let k = (z.re * to_f64(&lead)).round();
            if !k.is_finite() {
                continue;
            }
            let Some(k) = BigInt::from_f64(k) else { continue };
            let r = ExactRational::new(k, lead.to_integer());
            if f.eval(&r).is_zero() {
                res.status = Irreducibility::Reducible;
                res.witness = Some(RationalPolynomial::new(vec![-r, rat(1)]));
                return res;
            }
        }
    }
    let lead_int = lead.to_integer();
    let mut possible = vec![true; n + 1];
    for &q in primes {
        if (&lead_int % BigInt::from(q)).is_zero() {
            continue;
        }
        let Some(fq) = FpPoly::from_rational(&f, q) else { continue };
        if !fq.is_squarefree() {
            continue;
        }
        let pattern = fq.distinct_degree();
        if pattern == [(n, 1)] {
            res.status = Irreducibility::Certified;
            res.certificate_prime = Some(q);
            res.patterns.push((q, pattern));
            return res;
        }
        let can = subset_sums(&pattern, n);
        for d in 0..=n {
            possible[d] &= can[d];
        }
        res.patterns.push((q, pattern));
    }
    res.status = if !res.patterns.is_empty() && (1..n).all(|d| !possible[d]) {
        Irreducibility::Certified
    } else {
        Irreducibility::Probable
    };
    res
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModpError {
    #[error("{q} is not prime")]
    NotPrime { q: u64 },
    #[error("a denominator is divisible by {q}")]
    Denominator { q: u64 },
    #[error("polynomial vanishes identically mod {q}")]
    Vanishes { q: u64 },
}

/// Multiplicity of each linear factor `x - r` of `p` modulo `q`; residues
/// that are not roots are omitted.
pub fn modp_linear_profile(p: &RationalPolynomial, q: u64) -> Result<BTreeMap<u64, u32>, ModpError> {
    if !is_prime(q) {
        return Err(ModpError::NotPrime { q });
    }
    let f = FpPoly::from_rational(p, q).ok_or(ModpError::Denominator { q })?;
    if f.is_zero() {
        return Err(ModpError::Vanishes { q });
    }
    Ok((0..q)
        .filter_map(|r| {
            let k = f.root_multiplicity(r);
            (k > 0).then_some((r, k))
        })
        .collect())
}

/// Leading-coefficient and scalar arithmetic at a prime index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarProfile {
    pub family: FormKind,
    pub p: u64,
    /// Leading coefficient of the primitive integer core.
    pub l_p: BigInt,
    /// `|scalar| = nu_p / delta_p` in lowest terms.
    pub nu_p: BigInt,
    pub delta_p: BigInt,
    pub ord3_l: u32,
    pub ord3_l_ok: bool,
    pub l_support_ok: bool,
    pub expected_nu: BigInt,
    pub nu_ok: bool,
    pub ord3_delta: u32,
    pub ord3_delta_ok: bool,
    pub delta_support_ok: bool,
}

impl ScalarProfile {
    pub fn passes(&self) -> bool {
        self.ord3_l_ok && self.l_support_ok && self.nu_ok && self.ord3_delta_ok && self.delta_support_ok
    }
}

/// True when `k`, with all factors of 3 removed, is divisible by every
/// prime in `[5, p]` and by no other prime.
fn support_is_primes_5_to_p(k: &BigInt, p: u64) -> bool {
    let mut rest = k.abs();
    let three = BigInt::from(3);
    while (&rest % &three).is_zero() {
        rest /= &three;
    }
    for q in (5..=p).filter(|&q| is_prime(q)) {
        let bq = BigInt::from(q);
        if !(&rest % &bq).is_zero() {
            return false;
        }
        while (&rest % &bq).is_zero() {
            rest /= &bq;
        }
    }
    rest.is_one()
}

/// Checks the leading-coefficient and scalar clauses for the `H4` (`nu`
/// base 16) and `H6` (`nu` base 8) families at an odd prime index.
pub fn leading_scalar_profile(fs: &FactoredStructure, p: u64, family: FormKind) -> Option<ScalarProfile> {
    let base: u64 = match family {
        FormKind::H4 => 16,
        FormKind::H6 => 8,
        _ => return None,
    };
    if p < 3 || !is_prime(p) {
        return None;
    }
    let (content, prim) = fs.primitive_core();
    let l_p = prim.last()?.clone();
    let nu_p = content.numer().abs();
    let delta_p = content.denom().abs();
    let s = valuation(&BigInt::from(p + 1), 2);
    let t = valuation(&BigInt::from(p + 1), 3);
    let expected_nu = BigInt::from(base) << s;
    let ord3_l = valuation(&l_p, 3);
    let ord3_delta = valuation(&delta_p, 3);
    Some(ScalarProfile {
        family,
        p,
        ord3_l,
        ord3_l_ok: ord3_l as u64 == p - 1,
        l_support_ok: support_is_primes_5_to_p(&l_p, p),
        nu_ok: nu_p == expected_nu,
        expected_nu,
        ord3_delta,
        ord3_delta_ok: ord3_delta as u64 + t as u64 + 1 == p,
        delta_support_ok: support_is_primes_5_to_p(&delta_p, p),
        l_p,
        nu_p,
        delta_p,
    })
}

/// `(p, q, l_p | l_q)` for each consecutive pair of profiles.
pub fn divisibility_chain(profiles: &[ScalarProfile]) -> Vec<(u64, u64, bool)> {
    profiles
        .windows(2)
        .map(|w| (w[0].p, w[1].p, (&w[1].l_p % &w[0].l_p).is_zero()))
        .collect()
}

/// Primes in `[lo, hi]`.
pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&k| is_prime(k)).collect()
}

/// Converts a residue to the signed representative in `(-q/2, q/2]`.
pub fn signed_residue(r: u64, q: u64) -> i64 {
    let r = r as i64;
    let q = q as i64;
    if r > q / 2 {
        r - q
    } else {
        r
    }
}
#[cfg(test)]
mod tests {
    use super::*;

    fn table(samples: Vec<(u32, i64)>) -> CoefficientTable {
        CoefficientTable::new(
            FormKind::J,
            0,
            samples.into_iter().map(|(m, v)| (m, rat(v))).collect(),
        )
    }

    #[test]
    fn squares() {
        let t = table((3..=7).map(|m| (m, (m * m) as i64)).collect());
        let p = newton_interpolate(&t, 2).unwrap();
        assert_eq!(p, RationalPolynomial::from_ints(&[0, 0, 1]));
    }

    #[test]
    fn constants() {
        let t = table((3..=9).map(|m| (m, 11)).collect());
        let p = newton_interpolate(&t, 2).unwrap();
        assert_eq!(p, RationalPolynomial::from_ints(&[11]));
        assert_eq!(p.degree(), 0);
    }

    #[test]
    fn exponential_is_rejected() {
        let t = table((3..=14).map(|m| (m, 1i64 << m)).collect());
        assert!(matches!(
            newton_interpolate(&t, 2),
            Err(InterpError::NotPolynomial { .. })
        ));
    }

    #[test]
    fn gaps_are_rejected() {
        let t = table(vec![(3, 1), (5, 2), (6, 3)]);
        assert_eq!(newton_interpolate(&t, 1), Err(InterpError::NonConsecutive));
    }

    #[test]
    fn probe_examples() {
        let primes = probe_primes();
        let r = irreducibility_probe(&RationalPolynomial::from_ints(&[1, 0, 1]), &primes);
        assert_eq!(r.status, Irreducibility::Certified);
        assert_eq!(r.certificate_prime, Some(3));
        let r = irreducibility_probe(&RationalPolynomial::from_ints(&[-1, 0, 1]), &primes);
        assert_eq!(r.status, Irreducibility::Reducible);
        let w = r.witness.unwrap();
        assert!(w == RationalPolynomial::linear(1, -1) || w == RationalPolynomial::linear(1, 1));
        let r = irreducibility_probe(&RationalPolynomial::from_ints(&[1, 0, 0, 0, 1]), &primes);
        assert_ne!(r.status, Irreducibility::Reducible);
        let sq = RationalPolynomial::from_ints(&[1, 0, 1]).pow(2);
        assert_eq!(irreducibility_probe(&sq, &primes).status, Irreducibility::Reducible);
    }

    #[test]
    fn linear_profile() {
        let p = RationalPolynomial::from_ints(&[-4, 0, 1]);
        let prof = modp_linear_profile(&p, 5).unwrap();
        assert_eq!(prof, BTreeMap::from([(2, 1), (3, 1)]));
        let half = RationalPolynomial::new(vec![ratio(1, 5), rat(1)]);
        assert_eq!(modp_linear_profile(&half, 5), Err(ModpError::Denominator { q: 5 }));
        assert_eq!(modp_linear_profile(&p, 6), Err(ModpError::NotPrime { q: 6 }));
    }

    #[test]
    fn structure_of_synthetic_star() {
        // -8 x (x - 2)^2
        let p = RationalPolynomial::linear(1, -2)
            .pow(2)
            .mul(&RationalPolynomial::x())
            .scale(&rat(-8));
        let fs = extract_structure(FormKind::DeltaStar, 2, &p).unwrap();
        assert_eq!(fs.scalar, rat(-8));
        assert_eq!(fs.monomial_power, 1);
        assert_eq!(fs.core.degree(), 0);
        assert!(fs.degree_ok());
        assert_eq!(fs.reconstruct(), p);
        let bad = p.add(&RationalPolynomial::x());
        assert!(matches!(
            extract_structure(FormKind::DeltaStar, 2, &bad),
            Err(StructureError::FactorDoesNotDivide { .. })
        ));
        assert!(matches!(
            extract_structure(FormKind::DeltaStar, 1, &p),
            Err(StructureError::OutOfRange { .. })
        ));
    }

    #[test]
    fn q_set_rules() {
        assert!(in_q_set(5));
        assert!(!in_q_set(7));
        let b5 = structure_rule(FormKind::H4, 5).unwrap();
        assert!(b5.factors.contains(&(StructuralFactor::XMinus6, 1)));
        let b7 = structure_rule(FormKind::H4, 7).unwrap();
        assert!(!b7.factors.contains(&(StructuralFactor::XMinus6, 1)));
    }
}
