//! All-pairs comparison of decoded distances against the Dijkstra oracle.

use std::num::NonZeroUsize;
use std::thread;

use serde::Serialize;

use distlab_core::{DistanceOracle, LabelSet, INFINITY};

/// Worker count: `DISTLAB_THREADS` if set to a positive integer, else the
/// available parallelism.
pub fn threads_from_env() -> usize {
    std::env::var("DISTLAB_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| thread::available_parallelism().map_or(1, NonZeroUsize::get))
}

/// First failing pair in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub x: usize,
    pub y: usize,
    /// Oracle distance, `None` when the nodes are disconnected.
    pub expected: Option<u64>,
    pub decoded: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyOutcome {
    pub pass: bool,
    pub pairs: u64,
    pub exact: u64,
    pub violations: u64,
    pub max_error: u64,
    pub additive_bound: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Default)]
struct Partial {
    pairs: u64,
    exact: u64,
    violations: u64,
    max_error: u64,
    witness: Option<Witness>,
}

fn check_row(labels: &LabelSet, oracle: &DistanceOracle, x: usize, bound: u64, acc: &mut Partial) {
    for y in 0..labels.n {
        acc.pairs += 1;
        let want = oracle.dist(x, y);
        let got = labels.decode(x, y);
        let ok = match (&got, want) {
            // Across components the decoder must refuse.
            (Err(distlab_core::SchemeError::DifferentComponents), INFINITY) => true,
            (Ok(d), w) if w != INFINITY && *d >= w && *d - w <= bound => {
                acc.max_error = acc.max_error.max(*d - w);
                if *d == w {
                    acc.exact += 1;
                }
                true
            }
            _ => false,
        };
        if ok {
            if want == INFINITY {
                acc.exact += 1;
            }
            continue;
        }
        acc.violations += 1;
        if acc.witness.is_none() {
            acc.witness = Some(Witness {
                x,
                y,
                expected: (want != INFINITY).then_some(want),
                decoded: got.as_ref().ok().copied(),
                error: got.err().map(|e| e.to_string()),
            });
        }
    }
}

/// Decodes every ordered pair and checks `0 ≤ decoded − dist ≤ bound`, where
/// `bound` is the label set's additive bound (0 for exact schemes).
/// Results do not depend on the thread count.
pub fn verify_all_pairs(labels: &LabelSet, oracle: &DistanceOracle, threads: usize) -> VerifyOutcome {
    let n = labels.n;
    let bound = labels.additive_bound();
    let threads = threads.clamp(1, n.max(1));
    let chunk = n.div_ceil(threads).max(1);
    let parts: Vec<Partial> = thread::scope(|s| {
        let handles: Vec<_> = (0..n)
            .step_by(chunk)
            .map(|start| {
                s.spawn(move || {
                    let mut acc = Partial::default();
                    for x in start..(start + chunk).min(n) {
                        check_row(labels, oracle, x, bound, &mut acc);
                    }
                    acc
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("verify worker panicked")).collect()
    });
    let mut out = VerifyOutcome {
        pass: true,
        pairs: 0,
        exact: 0,
        violations: 0,
        max_error: 0,
        additive_bound: bound,
        witness: None,
    };
    // Chunks are in row order, so the first witness found is the first overall.
    for p in parts {
        out.pairs += p.pairs;
        out.exact += p.exact;
        out.violations += p.violations;
        out.max_error = out.max_error.max(p.max_error);
        if out.witness.is_none() {
            out.witness = p.witness;
        }
    }
    out.pass = out.violations == 0;
    out
}
