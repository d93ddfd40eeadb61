//! Range sweeps over quadratic fields with deterministic parallel output.

use std::collections::BTreeMap;
use std::io::Write;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificate::Verdict;
use crate::error::{Error, Result};
use crate::quadratic::{
    c2_bound_check, hcf_abelian_quadratic, is_fundamental_discriminant, polya_order_quadratic,
    QuadraticFieldData,
};
use crate::theorems::{t_bound, verify_main_bound};

pub const CSV_VERSION_LINE: &str = "#abelian-cft v1";
pub const CSV_COLUMNS: [&str; 11] = [
    "d",
    "D",
    "r",
    "h",
    "h_narrow",
    "unit_norm",
    "polya_order",
    "verdict",
    "theorem_used",
    "main_bound_ok",
    "t",
];
pub const BLOCK_SIZE: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurveyMode {
    ImaginaryQuadratic,
    RealQuadratic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Jsonl,
}

/// A sweep over the fundamental discriminants `D` with `d_min <= D <= d_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyConfig {
    pub mode: SurveyMode,
    pub d_min: i64,
    pub d_max: i64,
    pub workers: usize,
    pub format: OutputFormat,
}

impl SurveyConfig {
    pub fn imaginary(max_abs: u64) -> Self {
        SurveyConfig {
            mode: SurveyMode::ImaginaryQuadratic,
            d_min: -(max_abs as i64),
            d_max: -1,
            workers: 1,
            format: OutputFormat::Csv,
        }
    }

    pub fn real(max: u64) -> Self {
        SurveyConfig {
            mode: SurveyMode::RealQuadratic,
            d_min: 2,
            d_max: max as i64,
            workers: 1,
            format: OutputFormat::Csv,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.d_min > self.d_max {
            return Err(Error::InvalidInput(format!(
                "empty range {}..={}",
                self.d_min, self.d_max
            )));
        }
        let signs_ok = match self.mode {
            SurveyMode::ImaginaryQuadratic => self.d_max < 0,
            SurveyMode::RealQuadratic => self.d_min > 0,
        };
        if !signs_ok {
            return Err(Error::InvalidInput(format!(
                "range {}..={} has the wrong sign for {:?}",
                self.d_min, self.d_max, self.mode
            )));
        }
        if self.workers == 0 {
            return Err(Error::InvalidInput("workers must be at least 1".into()));
        }
        Ok(())
    }

    /// `|D|` bounds, smallest first.
    fn abs_range(&self) -> (u64, u64) {
        let (a, b) = (self.d_min.unsigned_abs(), self.d_max.unsigned_abs());
        (a.min(b), a.max(b))
    }

    fn sign(&self) -> i64 {
        match self.mode {
            SurveyMode::ImaginaryQuadratic => -1,
            SurveyMode::RealQuadratic => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub d: i64,
    #[serde(rename = "D")]
    pub disc: i64,
    pub r: u32,
    pub h: u64,
    pub h_narrow: u64,
    pub unit_norm: Option<i8>,
    pub polya_order: u64,
    pub verdict: Verdict,
    pub theorem_used: String,
    pub main_bound_ok: bool,
    pub t: u64,
}

impl SurveyRow {
    /// Classifies one field; an abelian verdict that breaks the main bound,
    /// `h | t` or the 2-power bound is a bug-trap.
    pub fn compute(disc: i64) -> Result<Self> {
        let data = QuadraticFieldData::from_discriminant(disc)?;
        let cert = hcf_abelian_quadratic(&data);
        let main_bound_ok = verify_main_bound(data.h, &BigUint::from(disc.unsigned_abs()), 2)
            .verdict
            == Verdict::BoundHolds;
        let t = t_bound(disc.unsigned_abs())?.t;
        if cert.verdict == Verdict::Abelian {
            if !main_bound_ok || t % data.h != 0 {
                return Err(Error::ViolationFound(format!(
                    "D = {disc}: abelian verdict with h = {}, t = {t}, main bound {}",
                    data.h,
                    if main_bound_ok { "ok" } else { "failed" }
                )));
            }
            c2_bound_check(&data, disc.unsigned_abs())?;
        }
        Ok(SurveyRow {
            d: data.d,
            disc,
            r: data.r,
            h: data.h,
            h_narrow: data.h_narrow,
            unit_norm: data.unit_norm,
            polya_order: polya_order_quadratic(&data),
            verdict: cert.verdict,
            theorem_used: cert.theorem.tag(),
            main_bound_ok,
            t,
        })
    }

    fn csv_record(&self) -> [String; 11] {
        [
            self.d.to_string(),
            self.disc.to_string(),
            self.r.to_string(),
            self.h.to_string(),
            self.h_narrow.to_string(),
            self.unit_norm
                .map_or_else(|| "na".to_string(), |n| n.to_string()),
            self.polya_order.to_string(),
            self.verdict.as_str().to_string(),
            self.theorem_used.clone(),
            self.main_bound_ok.to_string(),
            self.t.to_string(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveySummary {
    pub mode: SurveyMode,
    pub d_min: i64,
    pub d_max: i64,
    pub fields: usize,
    pub by_verdict: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyResult {
    pub rows: Vec<SurveyRow>,
    pub summary: SurveySummary,
}

impl SurveyResult {
    pub fn count(&self, verdict: Verdict) -> usize {
        self.rows.iter().filter(|r| r.verdict == verdict).count()
    }
}

/// Splits `|D|` into blocks of [`BLOCK_SIZE`] consecutive values, computes
/// the blocks on `workers` threads, and concatenates them by block index, so
/// the rows are ordered by `|D|` whatever the thread count.
pub fn run_survey(config: &SurveyConfig) -> Result<SurveyResult> {
    config.validate()?;
    let (lo, hi) = config.abs_range();
    let sign = config.sign();
    let blocks: Vec<(u64, u64)> = (lo..=hi)
        .step_by(BLOCK_SIZE as usize)
        .map(|start| (start, (start + BLOCK_SIZE - 1).min(hi)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| {
            Error::InvalidInput(format!("cannot start {} workers: {e}", config.workers))
        })?;
    let computed: Vec<Vec<SurveyRow>> = pool.install(|| {
        blocks
            .par_iter()
            .map(|&(start, end)| {
                (start..=end)
                    .map(|abs| sign * abs as i64)
                    .filter(|&disc| is_fundamental_discriminant(disc))
                    .map(SurveyRow::compute)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let rows: Vec<SurveyRow> = computed.into_iter().flatten().collect();
    let mut by_verdict = BTreeMap::new();
    for row in &rows {
        *by_verdict
            .entry(row.verdict.as_str().to_string())
            .or_insert(0) += 1;
    }
    let summary = SurveySummary {
        mode: config.mode,
        d_min: config.d_min,
        d_max: config.d_max,
        fields: rows.len(),
        by_verdict,
    };
    Ok(SurveyResult { rows, summary })
}

pub fn write_csv<W: Write>(rows: &[SurveyRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{CSV_VERSION_LINE}")?;
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_COLUMNS)?;
    for row in rows {
        writer.write_record(row.csv_record())?;
    }
    writer.flush()
}

pub fn write_jsonl<W: Write>(rows: &[SurveyRow], mut out: W) -> std::io::Result<()> {
    for row in rows {
        serde_json::to_writer(&mut out, row)?;
        writeln!(out)?;
    }
    out.flush()
}

pub fn write_rows<W: Write>(
    rows: &[SurveyRow],
    format: OutputFormat,
    out: W,
) -> std::io::Result<()> {
    match format {
        OutputFormat::Csv => write_csv(rows, out),
        OutputFormat::Jsonl => write_jsonl(rows, out),
    }
}
