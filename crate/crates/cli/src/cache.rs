//! On-disk cache of exact q-expansions, one file per `(kind, m, N)` under a
//! directory named by the pipeline version.

use std::fs;
use std::io;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use hecke_core::forms::{weight, FormBuilder};
use hecke_core::{FormKind, FormSeries, FormTable, LaurentSeries, SeriesError};
use serde::{Deserialize, Serialize};

use crate::encode::Rational;

/// Bump whenever a change to the pipeline can alter any coefficient.
pub const PIPELINE_VERSION: &str = concat!("hecke-", env!("CARGO_PKG_VERSION"), "-p1");

pub const CACHE_ENV: &str = "HECKE_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub pipeline_version: String,
    pub form: String,
    pub m: u32,
    pub n_terms: usize,
    pub offset: i64,
    pub coefficients: Vec<Rational>,
}

impl CacheEntry {
    pub fn from_series(f: &FormSeries, n_terms: usize) -> Self {
        CacheEntry {
            pipeline_version: PIPELINE_VERSION.into(),
            form: f.kind.tag().into(),
            m: f.m,
            n_terms,
            offset: f.kind.offset(),
            coefficients: f.coefficients().iter().map(Rational::from).collect(),
        }
    }

    pub fn to_series(&self, kind: FormKind) -> Option<FormSeries> {
        let coeffs = self
            .coefficients
            .iter()
            .map(Rational::to_exact)
            .collect::<Option<Vec<_>>>()?;
        let order = self.offset + self.n_terms as i64;
        let series = LaurentSeries::with_order(self.offset, coeffs, order).ok()?;
        Some(FormSeries {
            kind,
            m: self.m,
            series,
            weight: weight(kind, self.m),
        })
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut b = serde_json::to_vec_pretty(self).expect("cache entry serializes");
        b.push(b'\n');
        b
    }
}

/// Outcome of checking cached files against recomputation.
#[derive(Debug, Default, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyCacheSummary {
    pub checked: usize,
    pub missing: usize,
    pub mismatched: Vec<String>,
}

pub struct Cache {
    root: Option<PathBuf>,
}

impl Cache {
    /// `dir` overrides the environment; `None` for both disables caching.
    pub fn new(dir: Option<PathBuf>) -> Self {
        let root = dir
            .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
            .map(|d| d.join(PIPELINE_VERSION));
        Cache { root }
    }

    pub fn disabled() -> Self {
        Cache { root: None }
    }

    fn path(&self, kind: FormKind, m: u32, n_terms: usize) -> Option<PathBuf> {
        let name = format!("{}-m{m}-N{n_terms}.json", kind.tag());
        self.root.as_ref().map(|r| r.join(name))
    }

    fn load(&self, kind: FormKind, m: u32, n_terms: usize) -> Option<FormSeries> {
        let bytes = fs::read(self.path(kind, m, n_terms)?).ok()?;
        let e: CacheEntry = serde_json::from_slice(&bytes).ok()?;
        if e.pipeline_version != PIPELINE_VERSION
            || e.form != kind.tag()
            || e.m != m
            || e.n_terms != n_terms
        {
            return None;
        }
        e.to_series(kind)
    }

    fn store(&self, f: &FormSeries, n_terms: usize) -> io::Result<()> {
        let Some(path) = self.path(f.kind, f.m, n_terms) else {
            return Ok(());
        };
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, CacheEntry::from_series(f, n_terms).to_bytes())?;
        fs::rename(tmp, path)
    }

    /// One form, from the cache when present.
    pub fn form(&self, kind: FormKind, m: u32, n_terms: usize) -> anyhow::Result<FormSeries> {
        if let Some(f) = self.load(kind, m, n_terms) {
            return Ok(f);
        }
        let f = FormBuilder::new(m, n_terms)?.form(kind)?;
        self.store(&f, n_terms)?;
        Ok(f)
    }

    /// A full table; rows missing from the cache are computed in parallel
    /// and written back.
    pub fn table(&self, ms: RangeInclusive<u32>, n_terms: usize) -> anyhow::Result<FormTable> {
        let mut table = FormTable::empty(n_terms);
        let mut missing = Vec::new();
        for m in ms {
            let row: Option<Vec<FormSeries>> =
                FormKind::ALL.iter().map(|&k| self.load(k, m, n_terms)).collect();
            match row {
                Some(r) => table.insert(m, r),
                None => missing.push(m),
            }
        }
        for run in consecutive_runs(&missing) {
            table.extend(run.clone()).map_err(|e: SeriesError| anyhow::anyhow!(e))?;
            for m in run {
                for f in table.row(m).expect("row just computed") {
                    self.store(f, n_terms)?;
                }
            }
        }
        Ok(table)
    }

    /// Recomputes every cached file and compares bytes.
    pub fn verify(&self) -> anyhow::Result<VerifyCacheSummary> {
        let mut s = VerifyCacheSummary::default();
        let Some(root) = &self.root else {
            return Ok(s);
        };
        let mut files: Vec<PathBuf> = match fs::read_dir(root) {
            Ok(rd) => rd.filter_map(|e| e.ok().map(|e| e.path())).collect(),
            Err(_) => return Ok(s),
        };
        files.retain(|p| p.extension().is_some_and(|x| x == "json"));
        files.sort();
        for p in files {
            let bytes = fs::read(&p)?;
            let Ok(e) = serde_json::from_slice::<CacheEntry>(&bytes) else {
                s.mismatched.push(display(&p));
                continue;
            };
            let Ok(kind) = e.form.parse::<FormKind>() else {
                s.mismatched.push(display(&p));
                continue;
            };
            let f = FormBuilder::new(e.m, e.n_terms)?.form(kind)?;
            s.checked += 1;
            if CacheEntry::from_series(&f, e.n_terms).to_bytes() != bytes {
                s.mismatched.push(display(&p));
            }
        }
        Ok(s)
    }
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

fn consecutive_runs(ms: &[u32]) -> Vec<RangeInclusive<u32>> {
    let mut out: Vec<RangeInclusive<u32>> = Vec::new();
    for &m in ms {
        match out.last_mut() {
            Some(r) if *r.end() + 1 == m => *r = *r.start()..=m,
            _ => out.push(m..=m),
        }
    }
    out
}
