//! Floating-point root geometry of the interpolating polynomials.
//!
//! Multiplicities are split off exactly (squarefree decomposition over the
//! rationals) before any floating-point work, so the numeric kernels only
//! ever see simple roots.

use std::f64::consts::PI;
use std::fs;
use std::io;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::poly::RationalPolynomial;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("polynomial has degree 0")]
    Constant,
    #[error("root iteration did not converge after {iterations} steps (max correction {max_step:e})")]
    NoConvergence { iterations: usize, max_step: f64 },
    #[error("residual {residual:e} exceeds tolerance {tol:e}")]
    Residual { residual: f64, tol: f64 },
    #[error("winding number did not stabilize (last value {last})")]
    Unstable { last: f64 },
    #[error("resolution {w}x{h} exceeds 4096x4096")]
    Resolution { w: usize, h: usize },
}

/// Roots of a polynomial, with multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// Relative backward error `|p(z)| / sum |c_k| |z|^k` of each root.
    pub residuals: Vec<f64>,
    pub poly_degree: usize,
    /// Largest coefficient magnitude, divided out before evaluation.
    pub scale: f64,
}

impl RootSet {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    pub fn count_in_disk(&self, center: Complex64, radius: f64) -> usize {
        self.roots.iter().filter(|z| (*z - center).norm() < radius).count()
    }
}

fn eval_with_derivative(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn backward_error(c: &[f64], z: Complex64) -> f64 {
    let p = RationalPolynomial::eval_complex(c, z).norm();
    let r = z.norm();
    let mag = c.iter().rev().fold(0.0, |acc, a| acc * r + a.abs());
    if mag == 0.0 {
        0.0
    } else {
        p / mag
    }
}

const MAX_ITER: usize = 2000;

/// Aberth-Ehrlich iteration for the simple roots of `c` (ascending, nonzero
/// leading and constant coefficients), followed by Newton polishing.
fn aberth(c: &[f64]) -> Result<Vec<Complex64>, RootError> {
    let n = c.len() - 1;
    if n == 1 {
        return Ok(vec![Complex64::new(-c[0] / c[1], 0.0)]);
    }
    let lead = c[n];
    // Fujiwara bound.
    let radius = (1..=n)
        .map(|k| (c[n - k] / lead).abs().powf(1.0 / k as f64))
        .fold(0.0, f64::max)
        * 2.0;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 2.0 * PI * k as f64 / n as f64 + 0.4))
        .collect();
    // A root is frozen once its correction is at rounding level or its
    // backward error is a small multiple of machine epsilon.
    let mut done = vec![false; n];
    let mut last = f64::INFINITY;
    for _ in 0..MAX_ITER {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp) = eval_with_derivative(c, z[k]);
            if p.norm() == 0.0 || backward_error(c, z[k]) < 8.0 * f64::EPSILON {
                done[k] = true;
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if step.is_finite() {
                z[k] -= step;
                let rel = step.norm() / z[k].norm().max(f64::MIN_POSITIVE);
                if rel < 4.0 * f64::EPSILON {
                    done[k] = true;
                }
                max_step = max_step.max(rel);
            }
        }
        last = max_step;
        if done.iter().all(|&d| d) {
            break;
        }
    }
    let worst = z.iter().map(|&zk| backward_error(c, zk)).fold(0.0, f64::max);
    if !done.iter().all(|&d| d) && worst > 1e-12 {
        return Err(RootError::NoConvergence {
            iterations: MAX_ITER,
            max_step: last,
        });
    }
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval_with_derivative(c, *zk);
            if dp.norm() == 0.0 {
                break;
            }
            let next = *zk - p / dp;
            if backward_error(c, next) <= backward_error(c, *zk) {
                *zk = next;
            } else {
                break;
            }
        }
    }
    Ok(z)
}

/// Pairs each root in the upper half-plane with its nearest partner below
/// and replaces both by an exact conjugate pair; unpaired roots are real.
fn enforce_conjugates(mut z: Vec<Complex64>) -> Vec<Complex64> {
    z.sort_by(|a, b| b.im.partial_cmp(&a.im).unwrap());
    let mut out = Vec::with_capacity(z.len());
    let mut used = vec![false; z.len()];
    for i in 0..z.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let zi = z[i];
        let tiny = 1e-10 * zi.norm().max(1.0);
        if zi.im.abs() <= tiny {
            out.push(Complex64::new(zi.re, 0.0));
            continue;
        }
        if zi.im < 0.0 {
            out.push(zi);
            continue;
        }
        let partner = (0..z.len())
            .filter(|&j| !used[j] && z[j].im < 0.0)
            .min_by(|&a, &b| {
                (z[a] - zi.conj())
                    .norm()
                    .partial_cmp(&(z[b] - zi.conj()).norm())
                    .unwrap()
            });
        match partner {
            Some(j) => {
                used[j] = true;
                let avg = (zi + z[j].conj()) * 0.5;
                out.push(avg);
                out.push(avg.conj());
            }
            None => out.push(zi),
        }
    }
    out
}

/// Roots of a squarefree polynomial with nonzero constant term.
fn simple_roots(p: &RationalPolynomial) -> Result<Vec<Complex64>, RootError> {
    if p.degree() == 0 {
        return Ok(Vec::new());
    }
    if p.is_even() {
        // Solve in y = x^2; the roots then come in exact +- pairs.
        let y = RationalPolynomial::new(p.coeffs().iter().step_by(2).cloned().collect());
        let (cy, _) = y.scaled_f64();
        let mut out = Vec::new();
        for w in enforce_conjugates(aberth(&cy)?) {
            let r = if w.im == 0.0 && w.re < 0.0 {
                Complex64::new(0.0, (-w.re).sqrt())
            } else {
                w.sqrt()
            };
            out.push(r);
            out.push(-r);
        }
        return Ok(out);
    }
    let (c, _) = p.scaled_f64();
    Ok(enforce_conjugates(aberth(&c)?))
}

/// All complex roots of `p` with multiplicity; `tol` bounds the relative
/// backward error of every root.
pub fn find_roots(p: &RationalPolynomial, tol: f64) -> Result<RootSet, RootError> {
    if p.degree() == 0 {
        return Err(RootError::Constant);
    }
    let (_, scale) = p.scaled_f64();
    let parts = p.squarefree_decomposition();
    let mut roots = Vec::with_capacity(p.degree());
    for (factor, mult) in &parts {
        let v = factor.x_adic_valuation();
        let rest = factor.shift_down(v);
        let mut rs = vec![Complex64::new(0.0, 0.0); v];
        rs.extend(simple_roots(&rest)?);
        for _ in 0..*mult {
            roots.extend(rs.iter().copied());
        }
    }
    roots.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
    // Residuals are measured on the squarefree factors' product, which
    // shares the root set and stays well conditioned.
    let radical = parts
        .iter()
        .fold(RationalPolynomial::from_ints(&[1]), |acc, (f, _)| acc.mul(f));
    let (rc, _) = radical.scaled_f64();
    let residuals: Vec<f64> = roots.iter().map(|&z| backward_error(&rc, z)).collect();
    let worst = residuals.iter().copied().fold(0.0, f64::max);
    if worst > tol {
        return Err(RootError::Residual { residual: worst, tol });
    }
    Ok(RootSet {
        roots,
        residuals,
        poly_degree: p.degree(),
        scale,
    })
}

fn arg_step(a: Complex64, b: Complex64) -> f64 {
    (b / a).arg()
}

/// Number of roots of `p` inside the circle, by the argument principle.
/// The radius is nudged outward by `1e-6` relative whenever `p` nearly
/// vanishes on the contour.
pub fn winding_count(p: &RationalPolynomial, center: Complex64, radius: f64) -> Result<i64, RootError> {
    if p.degree() == 0 {
        return Ok(0);
    }
    let (c, _) = p.scaled_f64();
    let mut r = radius;
    for _attempt in 0..8 {
        let at = |t: f64| {
            RationalPolynomial::eval_complex(&c, center + Complex64::from_polar(r, 2.0 * PI * t))
        };
        let n0 = 64 * (p.degree() + 1);
        let mut total = 0.0;
        let mut near_zero = false;
        let mut stack: Vec<(f64, f64, Complex64, Complex64, u32)> = Vec::new();
        let mut prev_t = 0.0;
        let mut prev = at(0.0);
        for k in 1..=n0 {
            let t = k as f64 / n0 as f64;
            let v = at(t);
            stack.push((prev_t, t, prev, v, 0));
            prev_t = t;
            prev = v;
        }
        let magnitude = c.iter().rev().fold(0.0, |acc, a| acc * r + a.abs());
        while let Some((t0, t1, a, b, depth)) = stack.pop() {
            if a.norm() < 1e-12 * magnitude || b.norm() < 1e-12 * magnitude {
                near_zero = true;
                break;
            }
            let d = arg_step(a, b);
            if d.abs() > 0.5 && depth < 40 {
                let tm = 0.5 * (t0 + t1);
                let m = at(tm);
                stack.push((t0, tm, a, m, depth + 1));
                stack.push((tm, t1, m, b, depth + 1));
            } else {
                total += d;
            }
        }
        if near_zero {
            r *= 1.0 + 1e-6;
            continue;
        }
        let w = total / (2.0 * PI);
        if (w - w.round()).abs() < 1e-3 {
            return Ok(w.round() as i64);
        }
        return Err(RootError::Unstable { last: w });
    }
    Err(RootError::Unstable { last: f64::NAN })
}

/// Outcome of the root-bound and imaginary-axis checks for a core `a_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometryRecord {
    pub n: i64,
    pub bound: f64,
    pub max_modulus: f64,
    pub within_bound: bool,
    pub imaginary: usize,
    pub real: usize,
    pub off_axis: usize,
    pub zero_roots: usize,
}

impl GeometryRecord {
    pub fn passes(&self) -> bool {
        self.within_bound && self.imaginary == 2 && self.zero_roots == 0
    }
}

/// Checks `|rho| <= n / log n` for every root other than `+-2` and counts
/// the roots on each axis. Axis tolerances are relative to the largest
/// root modulus.
pub fn bound_and_geometry_check(n: i64, rs: &RootSet) -> GeometryRecord {
    let bound = n as f64 / (n as f64).ln();
    let s = rs.roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let eps = 1e-8 * s;
    let mut rec = GeometryRecord {
        n,
        bound,
        max_modulus: 0.0,
        within_bound: true,
        imaginary: 0,
        real: 0,
        off_axis: 0,
        zero_roots: 0,
    };
    for z in &rs.roots {
        if z.norm() <= eps {
            rec.zero_roots += 1;
            continue;
        }
        let at_two = (z - Complex64::new(2.0, 0.0)).norm() < 1e-9 * s
            || (z + Complex64::new(2.0, 0.0)).norm() < 1e-9 * s;
        if !at_two {
            rec.max_modulus = rec.max_modulus.max(z.norm());
            if z.norm() > bound + 1e-9 * s {
                rec.within_bound = false;
            }
        }
        if z.re.abs() < eps && z.im.abs() > eps {
            rec.imaginary += 1;
        } else if z.im.abs() < eps {
            rec.real += 1;
        } else {
            rec.off_axis += 1;
        }
    }
    rec
}

/// `d(m, n)` over a grid with a least-squares fit of `log d(m0, n)` on `n`,
/// where `m0` is the smallest `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceProfile {
    pub entries: Vec<(u32, i64, f64)>,
    pub fit_slope: f64,
    pub fit_intercept: f64,
    pub fit_correlation: f64,
    /// `(m, n)` with a root at `m`.
    pub zero_distance: Vec<(u32, i64)>,
    /// `(m, n)` with `d(m, n) <= d(m0, n)` and `m > m0`.
    pub not_above_base: Vec<(u32, i64)>,
    /// Indices whose polynomial has no roots.
    pub skipped: Vec<i64>,
}

/// Least squares `y = slope x + intercept` with Pearson correlation.
pub fn linear_fit(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx, sxy / (sxx * syy).sqrt())
}

/// Distance from `m` to the nearest root of the polynomial whose monic
/// squarefree factors are `parts`. Each factor is re-centred at `m` exactly
/// first, so the nearest root becomes the smallest root and keeps its
/// relative accuracy however close it lies.
pub fn nearest_root_distance(parts: &[(RationalPolynomial, u32)], m: i64) -> Result<f64, RootError> {
    let mut best = f64::INFINITY;
    for (f, _) in parts {
        let g = f.taylor_shift(&crate::rational::rat(m));
        if g.coeff(0) == num_traits::Zero::zero() {
            return Ok(0.0);
        }
        for z in simple_roots(&g)? {
            best = best.min(z.norm());
        }
    }
    Ok(best)
}

/// Minimum distance from each integer `m` to the roots of the `n`-th
/// polynomial, with a least-squares fit of `log d(m0, n)` on `n >= fit_from`
/// for the smallest `m0`.
pub fn distance_profile(
    polys: &[(i64, RationalPolynomial)],
    ms: &[u32],
    fit_from: i64,
) -> Result<DistanceProfile, RootError> {
    let mut prof = DistanceProfile {
        entries: Vec::new(),
        fit_slope: f64::NAN,
        fit_intercept: f64::NAN,
        fit_correlation: f64::NAN,
        zero_distance: Vec::new(),
        not_above_base: Vec::new(),
        skipped: Vec::new(),
    };
    let base = *ms.iter().min().expect("empty m range");
    let rows: Vec<(i64, Option<Vec<(u32, f64)>>)> = polys
        .par_iter()
        .map(|(n, p)| {
            if p.degree() == 0 {
                return Ok((*n, None));
            }
            let parts = p.squarefree_decomposition();
            let ds = ms
                .iter()
                .map(|&m| nearest_root_distance(&parts, m as i64).map(|d| (m, d)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((*n, Some(ds)))
        })
        .collect::<Result<_, RootError>>()?;
    let mut fit = Vec::new();
    for (n, ds) in rows {
        let Some(ds) = ds else {
            prof.skipped.push(n);
            continue;
        };
        let d0 = ds.iter().find(|(m, _)| *m == base).unwrap().1;
        for (m, d) in ds {
            if d == 0.0 {
                prof.zero_distance.push((m, n));
                continue;
            }
            if m > base && d <= d0 {
                prof.not_above_base.push((m, n));
            }
            prof.entries.push((m, n, d));
        }
        if d0 > 0.0 && n >= fit_from {
            fit.push((n as f64, d0.ln()));
        }
    }
    if fit.len() >= 2 {
        let (s, i, r) = linear_fit(&fit);
        prof.fit_slope = s;
        prof.fit_intercept = i;
        prof.fit_correlation = r;
    }
    Ok(prof)
}

/// Fixed palette, indexed by the quadrant of `p(z)`: `Re >= 0, Im >= 0`;
/// `Re < 0, Im >= 0`; `Re < 0, Im < 0`; `Re >= 0, Im < 0`.
pub const PALETTE: [[u8; 3]; 4] = [[230, 25, 75], [60, 180, 75], [0, 130, 200], [255, 225, 25]];

pub const MAX_RESOLUTION: usize = 4096;

/// Plot window `(re_min, re_max, im_min, im_max)`.
pub type Window = (f64, f64, f64, f64);

fn quadrant(v: Complex64) -> usize {
    match (v.re >= 0.0, v.im >= 0.0) {
        (true, true) => 0,
        (false, true) => 1,
        (false, false) => 2,
        (true, false) => 3,
    }
}

/// Binary PPM (P6) image of the sign quadrant of `p` over the window.
/// Pixel `(i, j)` samples its center; row 0 is the top edge.
pub fn quadrant_raster(
    p: &RationalPolynomial,
    window: Window,
    (w, h): (usize, usize),
) -> Result<Vec<u8>, RootError> {
    if w == 0 || h == 0 || w > MAX_RESOLUTION || h > MAX_RESOLUTION {
        return Err(RootError::Resolution { w, h });
    }
    let (c, _) = p.scaled_f64();
    let (x0, x1, y0, y1) = window;
    let rows: Vec<Vec<u8>> = (0..h)
        .into_par_iter()
        .map(|j| {
            let y = y1 - (j as f64 + 0.5) / h as f64 * (y1 - y0);
            let mut row = Vec::with_capacity(3 * w);
            for i in 0..w {
                let x = x0 + (i as f64 + 0.5) / w as f64 * (x1 - x0);
                let v = RationalPolynomial::eval_complex(&c, Complex64::new(x, y));
                row.extend_from_slice(&PALETTE[quadrant(v)]);
            }
            row
        })
        .collect();
    let mut out = format!("P6\n{w} {h}\n255\n").into_bytes();
    for r in rows {
        out.extend(r);
    }
    Ok(out)
}

/// Writes [`quadrant_raster`] to `path`.
pub fn quadrant_plot(
    p: &RationalPolynomial,
    window: Window,
    resolution: (usize, usize),
    path: &Path,
) -> io::Result<()> {
    let bytes = quadrant_raster(p, window, resolution)
        .map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e))?;
    fs::write(path, bytes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn simple_cases() {
        let rs = find_roots(&RationalPolynomial::from_ints(&[1, 0, 1]), 1e-12).unwrap();
        assert_eq!(rs.roots.len(), 2);
        assert!(rs.roots.iter().any(|z| close(*z, Complex64::new(0.0, 1.0), 1e-12)));
        assert!(rs.roots.iter().any(|z| close(*z, Complex64::new(0.0, -1.0), 1e-12)));
        let p = RationalPolynomial::from_ints(&[-6, 11, -6, 1]);
        let rs = find_roots(&p, 1e-12).unwrap();
        for (z, e) in rs.roots.iter().zip([1.0, 2.0, 3.0]) {
            assert!(close(*z, Complex64::new(e, 0.0), 1e-12), "{z}");
        }
    }

    #[test]
    fn multiple_roots() {
        let p = RationalPolynomial::linear(1, -2)
            .pow(3)
            .mul(&RationalPolynomial::x().pow(2))
            .mul(&RationalPolynomial::from_ints(&[5, 1, 1]));
        let rs = find_roots(&p, 1e-12).unwrap();
        assert_eq!(rs.roots.len(), 7);
        assert_eq!(rs.roots.iter().filter(|z| close(**z, Complex64::new(2.0, 0.0), 1e-12)).count(), 3);
        assert_eq!(rs.roots.iter().filter(|z| z.norm() == 0.0).count(), 2);
    }

    #[test]
    fn winding() {
        let p = RationalPolynomial::from_ints(&[-1, 0, 0, 1]);
        let o = Complex64::new(0.0, 0.0);
        assert_eq!(winding_count(&p, o, 1.5).unwrap(), 3);
        assert_eq!(winding_count(&p, o, 0.5).unwrap(), 0);
        // A root on the contour gets nudged inside.
        assert_eq!(winding_count(&p, o, 1.0).unwrap(), 3);
    }

    #[test]
    fn plot_is_quadrants() {
        let img = quadrant_raster(&RationalPolynomial::x(), (-1.0, 1.0, -1.0, 1.0), (4, 4)).unwrap();
        let header = b"P6\n4 4\n255\n";
        assert_eq!(&img[..header.len()], header);
        let px = |i: usize, j: usize| &img[header.len() + 3 * (4 * j + i)..][..3];
        assert_eq!(px(3, 0), PALETTE[0]);
        assert_eq!(px(0, 0), PALETTE[1]);
        assert_eq!(px(0, 3), PALETTE[2]);
        assert_eq!(px(3, 3), PALETTE[3]);
        assert!(quadrant_raster(&RationalPolynomial::x(), (-1.0, 1.0, -1.0, 1.0), (5000, 1)).is_err());
    }

    #[test]
    fn fit() {
        let pts: Vec<(f64, f64)> = (0..5).map(|k| (k as f64, 1.0 - 2.0 * k as f64)).collect();
        let (s, i, r) = linear_fit(&pts);
        assert!((s + 2.0).abs() < 1e-12 && (i - 1.0).abs() < 1e-12 && (r + 1.0).abs() < 1e-12);
    }
}
