//! JSON run reports.

use serde::Serialize;

use distlab_core::schemes::{size_report, SizeReport};
use distlab_core::{LabelSet, SchemeId, SchemeParams};

use crate::verify::VerifyOutcome;

pub const REPORT_SCHEMA: &str = "distlab.run/1";

/// Decode cost in primitive steps over a sample of pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepStats {
    pub pairs: u64,
    pub min: u64,
    pub max: u64,
    pub mean: f64,
}

impl StepStats {
    pub fn from_counts(counts: &[u64]) -> Option<Self> {
        let min = *counts.iter().min()?;
        let max = *counts.iter().max()?;
        let mean = counts.iter().sum::<u64>() as f64 / counts.len() as f64;
        Some(StepStats { pairs: counts.len() as u64, min, max, mean })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub scheme: SchemeId,
    pub params: SchemeParams,
    pub n: usize,
    #[serde(rename = "W")]
    pub w: u32,
    pub digest: String,
    pub max_bits: usize,
    pub mean_bits: f64,
    pub total_bits: usize,
    pub leading_term: f64,
    pub residue: f64,
    pub additive_bound: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerifyOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decode_steps: Option<StepStats>,
    pub seconds: f64,
}

impl RunReport {
    pub fn new(command: &'static str, labels: &LabelSet, seconds: f64) -> Self {
        let SizeReport { max_bits, mean_bits, total_bits, leading_term, residue, .. } = size_report(labels);
        RunReport {
            schema: REPORT_SCHEMA,
            command,
            scheme: labels.scheme,
            params: labels.params,
            n: labels.n,
            w: labels.w,
            digest: format!("{:016x}", labels.digest),
            max_bits,
            mean_bits,
            total_bits,
            leading_term,
            residue,
            additive_bound: labels.additive_bound(),
            verification: None,
            decode_steps: None,
            seconds,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Least-squares slope of `y` against `log₂ x`, i.e. change per doubling.
pub fn slope_per_doubling(points: &[(f64, f64)]) -> f64 {
    let m = points.len() as f64;
    if points.len() < 2 {
        return 0.0;
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.log2()).collect();
    let mx = xs.iter().sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = xs.iter().zip(points).map(|(x, p)| (x - mx) * (p.1 - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slopes() {
        assert_eq!(slope_per_doubling(&[(256.0, 5.0), (512.0, 5.0), (1024.0, 5.0)]), 0.0);
        let s = slope_per_doubling(&[(2.0, 1.0), (4.0, 3.0), (8.0, 5.0)]);
        assert!((s - 2.0).abs() < 1e-12);
    }

    #[test]
    fn step_stats() {
        let s = StepStats::from_counts(&[3, 5, 4]).unwrap();
        assert_eq!((s.min, s.max, s.mean), (3, 5, 4.0));
        assert!(StepStats::from_counts(&[]).is_none());
    }
}
