use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::report::{build_report, GeometryArg, Report, ReportRequest};

/// One input line of a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepRecord {
    pub alpha: i64,
    pub beta: i64,
    #[serde(default)]
    pub gamma: Option<i64>,
    #[serde(default)]
    pub geometry: GeometryArg,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub line: usize,
    pub error: String,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SweepOutput {
    Report(Box<Report>),
    Error(ErrorRecord),
}

impl SweepOutput {
    pub fn is_error(&self) -> bool {
        matches!(self, SweepOutput::Error(_))
    }
}

fn evaluate(line: usize, parsed: Result<SweepRecord, String>, search_box: u32) -> SweepOutput {
    let rec = match parsed {
        Ok(r) => r,
        Err(error) => return SweepOutput::Error(ErrorRecord { line, error, violations: Vec::new() }),
    };
    let req = ReportRequest { geometry: rec.geometry, alpha: rec.alpha, beta: rec.beta, gamma: rec.gamma, search_box };
    match build_report(&req) {
        Ok(r) => SweepOutput::Report(Box::new(r)),
        Err(e) => SweepOutput::Error(ErrorRecord { line, error: e.message, violations: e.violations }),
    }
}

/// Evaluates JSON-lines input concurrently; the result is in input order.
/// Blank lines are skipped but still counted.
pub fn sweep_lines(input: &str, search_box: u32) -> Vec<SweepOutput> {
    let parsed: Vec<(usize, Result<SweepRecord, String>)> = input
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, serde_json::from_str(l).map_err(|e| format!("malformed record: {e}"))))
        .collect();
    parsed.into_par_iter().map(|(line, rec)| evaluate(line, rec, search_box)).collect()
}

pub fn sweep_records(records: Vec<SweepRecord>, search_box: u32) -> Vec<SweepOutput> {
    records.into_par_iter().enumerate().map(|(i, r)| evaluate(i + 1, Ok(r), search_box)).collect()
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let bad = || format!("bad range {s:?}, expected N or N..M");
    match s.split_once("..") {
        Some((lo, hi)) => {
            let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            Ok((lo, hi))
        }
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            Ok((v, v))
        }
    }
}

/// Expands `alpha=1..3,beta=0..2[,gamma=..]` (inclusive ranges) into records,
/// varying `gamma` fastest.
pub fn parse_grid(spec: &str, geometry: GeometryArg) -> Result<Vec<SweepRecord>, String> {
    let (mut alpha, mut beta, mut gamma) = (None, None, None);
    for part in spec.split(',').filter(|p| !p.trim().is_empty()) {
        let (key, range) = part.split_once('=').ok_or_else(|| format!("bad grid entry {part:?}"))?;
        let slot = match key.trim() {
            "alpha" => &mut alpha,
            "beta" => &mut beta,
            "gamma" => &mut gamma,
            other => return Err(format!("unknown grid key {other:?}")),
        };
        *slot = Some(parse_range(range)?);
    }
    let (alpha, beta) = match (alpha, beta) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err("grid needs both alpha and beta".into()),
    };
    let mut out = Vec::new();
    for a in alpha.0..=alpha.1 {
        for b in beta.0..=beta.1 {
            match gamma {
                Some((lo, hi)) => {
                    out.extend((lo..=hi).map(|g| SweepRecord { alpha: a, beta: b, gamma: Some(g), geometry }))
                }
                None => out.push(SweepRecord { alpha: a, beta: b, gamma: None, geometry }),
            }
        }
    }
    Ok(out)
}

pub fn to_json_lines(outputs: &[SweepOutput]) -> String {
    let mut s = String::new();
    for o in outputs {
        s.push_str(&serde_json::to_string(o).expect("records serialize"));
        s.push('\n');
    }
    s
}
