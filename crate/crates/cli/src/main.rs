//! `hecke`: q-expansions, interpolation, conjecture checks and root plots
//! for the Hecke groups.
//!
//! Exit codes: 0 ok, 1 pipeline failure or counterexample, 2 usage.

mod cache;
mod encode;
mod range;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use hecke_core::interp::{
    compare_printed, extract_structure, newton_interpolate, sample_budget, structure_range_start,
    DEFAULT_GUARD,
};
use hecke_core::roots::{bound_and_geometry_check, find_roots, quadrant_raster, MAX_RESOLUTION};
use hecke_core::verify::{ReportDocument, Verifier, ALL_CONJECTURES};
use hecke_core::FormKind;
use serde_json::{json, Value};

use cache::Cache;
use encode::{discrepancy_json, poly_json, series_csv, series_json, structure_json, SCHEMA_VERSION};
use range::{parse_ids, Ids, parse_range, parse_resolution, parse_window};

#[derive(Parser)]
#[command(name = "hecke", version, about = "Modular forms for the Hecke groups G(2cos(pi/m))")]
struct Cli {
    /// Cache directory; overrides HECKE_CACHE_DIR.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Skip the on-disk cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Recompute every cached entry and compare bytes, then exit.
    #[arg(long)]
    verify_cache: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Exact q-expansion of one form at one m.
    Compute {
        #[arg(long, value_parser = parse_kind)]
        form: FormKind,
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
        m: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        terms: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Interpolating polynomials in m of the q^n coefficients.
    Interpolate {
        #[arg(long, value_parser = parse_kind)]
        family: FormKind,
        /// An index or an inclusive range `a..b`.
        #[arg(long, value_parser = parse_range::<i64>, allow_hyphen_values = true)]
        n: (i64, i64),
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks conjecture clauses and emits a report.
    Verify {
        /// Ids, lists and ranges: `4`, `1,3`, `1..8`, `all`.
        #[arg(long, value_parser = parse_ids, default_value = "all")]
        conjecture: Ids,
        #[arg(long, value_parser = parse_range::<i64>, allow_hyphen_values = true, default_value = "-1..12")]
        n: (i64, i64),
        /// Defaults to the range the largest n needs.
        #[arg(long, value_parser = parse_range::<u32>)]
        m: Option<(u32, u32)>,
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quadrant colouring of an interpolating polynomial as a PPM image.
    Plot {
        #[arg(long, value_parser = parse_kind)]
        family: FormKind,
        #[arg(long)]
        n: i64,
        /// `xmin,xmax,ymin,ymax`.
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true, default_value = "-6,6,-6,6")]
        window: (f64, f64, f64, f64),
        /// `W` or `WxH`, at most 4096 each way.
        #[arg(long = "res", value_parser = parse_resolution, default_value = "800")]
        res: (usize, usize),
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_kind(s: &str) -> Result<FormKind, String> {
    s.parse()
}

/// A failure with an exit code and a JSON payload.
struct Failure {
    code: u8,
    body: Value,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure {
            code: 1,
            body: json!({ "schema_version": SCHEMA_VERSION, "error": format!("{e:#}") }),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let cache = if cli.no_cache {
        Cache::disabled()
    } else {
        Cache::new(cli.cache_dir.clone())
    };
    let result = if cli.verify_cache {
        cmd_verify_cache(&cache)
    } else {
        match cli.command {
            Some(cmd) => run(cmd, &cache),
            None => Err(Failure {
                code: 2,
                body: json!({ "schema_version": SCHEMA_VERSION, "error": "no subcommand given" }),
            }),
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}", serde_json::to_string_pretty(&f.body).unwrap());
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Command, cache: &Cache) -> Result<u8, Failure> {
    match cmd {
        Command::Compute { form, m, terms, format, out } => cmd_compute(cache, form, m, terms as usize, format, out),
        Command::Interpolate { family, n, guard, out } => cmd_interpolate(cache, family, n, guard, out),
        Command::Verify { conjecture, n, m, guard, out } => cmd_verify(cache, &conjecture.0, n, m, guard, out),
        Command::Plot { family, n, window, res, guard, out } => cmd_plot(cache, family, n, window, res, guard, out),
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn cmd_compute(
    cache: &Cache,
    kind: FormKind,
    m: u32,
    terms: usize,
    format: Format,
    out: Option<PathBuf>,
) -> Result<u8, Failure> {
    let f = cache.form(kind, m, terms)?;
    let text = match format {
        Format::Json => pretty(&series_json(&f)),
        Format::Csv => series_csv(&f),
    };
    emit(out.as_ref(), &text)?;
    Ok(0)
}

/// Number of coefficients from each form's offset that reaches `q^n_max`.
fn terms_for(n_max: i64) -> usize {
    (n_max.max(0) + 3) as usize
}

fn cmd_interpolate(
    cache: &Cache,
    kind: FormKind,
    (lo, hi): (i64, i64),
    guard: usize,
    out: Option<PathBuf>,
) -> Result<u8, Failure> {
    if lo < kind.offset() {
        return Err(usage(format!("n must be at least {} for {kind}", kind.offset())));
    }
    let m_max = 2 + sample_budget(hi, guard) as u32;
    let table = cache.table(3..=m_max, terms_for(hi))?;
    let mut items = Vec::new();
    let mut failed = false;
    for n in lo..=hi {
        let ct = table
            .coefficient_table(kind, n, sample_budget(n, guard))
            .map_err(anyhow::Error::from)?;
        match newton_interpolate(&ct, guard) {
            Ok(p) => {
                let mut item = json!({ "n": n, "polynomial": poly_json(&p) });
                if structure_range_start(kind).is_some_and(|s| n >= s) {
                    item["structure"] = match extract_structure(kind, n, &p) {
                        Ok(fs) => structure_json(&fs),
                        Err(e) => json!({ "error": e.to_string() }),
                    };
                }
                if let Some(d) = compare_printed(kind, n, &p).as_ref().and_then(discrepancy_json) {
                    item["discrepancy"] = d;
                }
                items.push(item);
            }
            Err(e) => {
                failed = true;
                items.push(json!({ "n": n, "error": e.to_string() }));
            }
        }
    }
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "family": kind.tag(),
        "guard": guard,
        "results": items,
    });
    emit(out.as_ref(), &pretty(&doc))?;
    Ok(u8::from(failed))
}

fn usage(msg: String) -> Failure {
    Failure {
        code: 2,
        body: json!({ "schema_version": SCHEMA_VERSION, "error": msg }),
    }
}

fn cmd_verify(
    cache: &Cache,
    ids: &[u8],
    (lo, hi): (i64, i64),
    m: Option<(u32, u32)>,
    guard: usize,
    out: Option<PathBuf>,
) -> Result<u8, Failure> {
    if ids.iter().any(|i| !ALL_CONJECTURES.contains(i)) {
        return Err(usage("conjecture ids are 1 to 8".into()));
    }
    let (m_lo, m_hi) = m.unwrap_or((3, 2 + sample_budget(hi, guard) as u32));
    if m_lo < 3 {
        return Err(usage("m must be at least 3".into()));
    }
    // Interpolation reads the table from m = 3 on.
    let table = cache.table(3..=m_hi, terms_for(hi))?;
    let v = Verifier::from_table(table, lo..=hi, m_lo..=m_hi, guard);
    let doc = ReportDocument::new(v.run(ids));
    emit(out.as_ref(), &pretty(&doc))?;
    Ok(u8::from(doc.any_fail()))
}

fn cmd_plot(
    cache: &Cache,
    kind: FormKind,
    n: i64,
    window: (f64, f64, f64, f64),
    (w, h): (usize, usize),
    guard: usize,
    out: PathBuf,
) -> Result<u8, Failure> {
    if w > MAX_RESOLUTION || h > MAX_RESOLUTION {
        return Err(usage(format!("resolution {w}x{h} exceeds {MAX_RESOLUTION}")));
    }
    if n < kind.offset() {
        return Err(usage(format!("n must be at least {} for {kind}", kind.offset())));
    }
    let m_max = 2 + sample_budget(n, guard) as u32;
    let table = cache.table(3..=m_max, terms_for(n))?;
    let ct = table
        .coefficient_table(kind, n, sample_budget(n, guard))
        .map_err(anyhow::Error::from)?;
    let p = newton_interpolate(&ct, guard).map_err(anyhow::Error::from)?;
    let bytes = quadrant_raster(&p, window, (w, h)).map_err(anyhow::Error::from)?;
    fs::write(&out, bytes).with_context(|| format!("writing {}", out.display()))?;

    let mut summary = json!({
        "schema_version": SCHEMA_VERSION,
        "family": kind.tag(),
        "n": n,
        "degree": p.degree(),
        "image": out.display().to_string(),
        "resolution": [w, h],
        "window": [window.0, window.1, window.2, window.3],
    });
    if p.degree() > 0 {
        let rs = find_roots(&p, 1e-8).map_err(anyhow::Error::from)?;
        let (x0, x1, y0, y1) = window;
        let in_window = rs
            .roots
            .iter()
            .filter(|z| (x0..=x1).contains(&z.re) && (y0..=y1).contains(&z.im))
            .count();
        summary["root_count"] = json!(rs.roots.len());
        summary["roots_in_window"] = json!(in_window);
        summary["max_residual"] = json!(rs.max_residual());
        if n > 1 {
            let g = bound_and_geometry_check(n, &rs);
            summary["bound_check"] = json!({
                "bound": g.bound,
                "max_modulus": g.max_modulus,
                "within_bound": g.within_bound,
                "zero_roots": g.zero_roots,
                "imaginary": g.imaginary,
                "real": g.real,
                "off_axis": g.off_axis,
            });
        }
    } else {
        summary["root_count"] = json!(0);
    }
    emit(None, &pretty(&summary))?;
    Ok(0)
}

fn cmd_verify_cache(cache: &Cache) -> Result<u8, Failure> {
    let s = cache.verify()?;
    let ok = s.mismatched.is_empty();
    emit(
        None,
        &pretty(&json!({ "schema_version": SCHEMA_VERSION, "verify_cache": s, "ok": ok })),
    )?;
    Ok(u8::from(!ok))
}
