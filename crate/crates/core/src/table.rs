//! Coefficient tables: every form kind at a run of consecutive `m`, computed
//! once at a fixed truncation and then read by the interpolation code.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::forms::{FormBuilder, FormKind, FormSeries};
use crate::rational::ExactRational;
use crate::series::{Result, SeriesError};

/// `(m, value)` samples of one Fourier coefficient across `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    pub family: FormKind,
    pub n: i64,
    pub samples: Vec<(u32, ExactRational)>,
}

impl CoefficientTable {
    pub fn new(family: FormKind, n: i64, samples: Vec<(u32, ExactRational)>) -> Self {
        debug_assert!(samples.windows(2).all(|w| w[0].0 < w[1].0));
        CoefficientTable { family, n, samples }
    }
}

/// All seven forms for each `m` in a range, with `n_terms` coefficients each.
#[derive(Debug, Clone, Default)]
pub struct FormTable {
    n_terms: usize,
    rows: BTreeMap<u32, Vec<FormSeries>>,
}

impl FormTable {
    pub fn empty(n_terms: usize) -> Self {
        FormTable {
            n_terms,
            rows: BTreeMap::new(),
        }
    }

    /// Computes every `m` in parallel.
    pub fn build(ms: RangeInclusive<u32>, n_terms: usize) -> Result<Self> {
        let mut t = Self::empty(n_terms);
        t.extend(ms)?;
        Ok(t)
    }

    /// Adds the missing rows for `ms`.
    pub fn extend(&mut self, ms: RangeInclusive<u32>) -> Result<()> {
        let todo: Vec<u32> = ms.filter(|m| !self.rows.contains_key(m)).collect();
        let n = self.n_terms;
        let rows: Vec<(u32, Vec<FormSeries>)> = todo
            .into_par_iter()
            .map(|m| FormBuilder::new(m, n).and_then(|b| b.all()).map(|r| (m, r)))
            .collect::<Result<_>>()?;
        self.rows.extend(rows);
        Ok(())
    }

    /// Inserts precomputed forms for one `m` (e.g. from a cache).
    pub fn insert(&mut self, m: u32, forms: Vec<FormSeries>) {
        self.rows.insert(m, forms);
    }

    pub fn n_terms(&self) -> usize {
        self.n_terms
    }

    pub fn ms(&self) -> impl Iterator<Item = u32> + '_ {
        self.rows.keys().copied()
    }

    pub fn max_m(&self) -> Option<u32> {
        self.rows.keys().next_back().copied()
    }

    pub fn form(&self, kind: FormKind, m: u32) -> Option<&FormSeries> {
        self.rows.get(&m)?.iter().find(|f| f.kind == kind)
    }

    pub fn row(&self, m: u32) -> Option<&[FormSeries]> {
        self.rows.get(&m).map(Vec::as_slice)
    }

    /// Coefficient of `q^n` for `kind` at every `m` from 3 on, stopping at
    /// the first gap or after `limit` samples.
    pub fn coefficient_table(
        &self,
        kind: FormKind,
        n: i64,
        limit: usize,
    ) -> Result<CoefficientTable> {
        let mut samples = Vec::new();
        for m in 3u32.. {
            if samples.len() >= limit {
                break;
            }
            let Some(f) = self.form(kind, m) else { break };
            if n >= f.series.order() {
                return Err(SeriesError::OutOfRange {
                    index: n,
                    offset: f.series.offset(),
                    order: f.series.order(),
                });
            }
            samples.push((m, f.coefficient(n)?));
        }
        Ok(CoefficientTable::new(kind, n, samples))
    }
}
