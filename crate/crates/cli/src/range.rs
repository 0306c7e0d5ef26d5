//! Argument parsers for ranges, id lists, windows and resolutions.

use std::fmt::Display;
use std::str::FromStr;

/// `k` or an inclusive range `a..b` (also `a..=b`), with `a <= b`.
pub fn parse_range<T>(s: &str) -> Result<(T, T), String>
where
    T: FromStr + PartialOrd + Copy,
    T::Err: Display,
{
    let one = |t: &str| t.trim().parse::<T>().map_err(|e| format!("'{t}': {e}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (one(a)?, one(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = one(s)?;
            (v, v)
        }
    };
    if a > b {
        return Err(format!("empty range '{s}'"));
    }
    Ok((a, b))
}

/// Sorted, deduplicated conjecture ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ids(pub Vec<u8>);

/// Comma-separated ids and ranges, or `all`.
pub fn parse_ids(s: &str) -> Result<Ids, String> {
    if s == "all" {
        return Ok(Ids(hecke_core::verify::ALL_CONJECTURES.to_vec()));
    }
    let mut out = Vec::new();
    for part in s.split(',') {
        let (a, b) = parse_range::<u8>(part)?;
        if a < 1 || b > 8 {
            return Err(format!("conjecture ids are 1 to 8, got '{part}'"));
        }
        out.extend(a..=b);
    }
    out.sort_unstable();
    out.dedup();
    Ok(Ids(out))
}

pub fn parse_window(s: &str) -> Result<(f64, f64, f64, f64), String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}")))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [x0, x1, y0, y1] if x0 < x1 && y0 < y1 && v.iter().all(|t| t.is_finite()) => Ok((x0, x1, y0, y1)),
        _ => Err(format!("window must be xmin,xmax,ymin,ymax with min < max, got '{s}'")),
    }
}

/// `W` (square) or `WxH`; the 4096 cap is checked by the caller.
pub fn parse_resolution(s: &str) -> Result<(usize, usize), String> {
    let one = |t: &str| match t.trim().parse::<usize>() {
        Ok(0) => Err("resolution must be positive".to_string()),
        Ok(v) => Ok(v),
        Err(e) => Err(format!("'{t}': {e}")),
    };
    match s.split_once(['x', 'X']) {
        Some((w, h)) => Ok((one(w)?, one(h)?)),
        None => {
            let w = one(s)?;
            Ok((w, w))
        }
    }
}
