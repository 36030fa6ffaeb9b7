//! Label size against each scheme's leading term.

use super::{LabelSet, SchemeId, SchemeParams};

fn log2(x: f64) -> f64 {
    libm::log2(x)
}

/// Leading term of the label size in bits, without second-order terms.
pub fn leading_term(scheme: SchemeId, n: usize, w: u32, params: &SchemeParams) -> f64 {
    let n_f = n as f64;
    let w_f = f64::from(w);
    let k1 = f64::from(params.k) + 1.0;
    let d = f64::from(params.d);
    match scheme {
        SchemeId::Naive => n_f * log2((n_f - 1.0).max(0.0) * w_f + 1.0),
        SchemeId::Walk => (n_f - 1.0).max(0.0) * log2(2.0 * w_f + 1.0),
        SchemeId::Heavypath => libm::ceil(n_f / 2.0 * log2(2.0 * w_f + 1.0)),
        SchemeId::HeavypathBipartite => n_f / 2.0,
        SchemeId::Constmicro => n_f / 2.0 * log2(2.0 * w_f + 1.0),
        SchemeId::ApproxSubsample => n_f / (2.0 * k1) * log2(2.0 * k1 * w_f + 1.0),
        SchemeId::ApproxWeights => n_f / 2.0 * log2(2.0 * w_f + 1.0 - d),
        SchemeId::ApproxCombined => n_f / (2.0 * k1) * log2(2.0 * k1 * w_f + 1.0 - d),
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SizeReport {
    pub scheme: SchemeId,
    pub n: usize,
    pub w: u32,
    pub max_bits: usize,
    pub mean_bits: f64,
    pub total_bits: usize,
    pub leading_term: f64,
    /// `max_bits − leading_term`.
    pub residue: f64,
}

pub fn size_report(labels: &LabelSet) -> SizeReport {
    let lead = leading_term(labels.scheme, labels.n, labels.w, &labels.params);
    let max = labels.max_bits();
    SizeReport {
        scheme: labels.scheme,
        n: labels.n,
        w: labels.w,
        max_bits: max,
        mean_bits: labels.mean_bits(),
        total_bits: labels.total_bits(),
        leading_term: lead,
        residue: max as f64 - lead,
    }
}
