//! Label builders and decoders.
//!
//! Every scheme turns a connected graph into one [`BitString`] label per
//! node. [`decode`] sees two labels (plus the shared [`MicroTables`] for the
//! constant-time scheme) and nothing else.

mod alphabet;
mod constmicro;
mod heavypath;
mod layout;
mod naive;
mod report;
mod subsample;
mod walk;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

pub use constmicro::{coverage_check, default_beta, CoverageStats};
pub use report::{leading_term, size_report, SizeReport};

use crate::codec::{build_micro_tables, BitString, CodecError, MicroTables};
use crate::digest::Fnv1a;
use crate::graph::{DistanceOracle, GraphError, NodeId, WeightedGraph};
use crate::probe::Probe;
use crate::tree::TreeError;
use layout::LabelReader;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
#[repr(u8)]
pub enum SchemeId {
    Naive = 0,
    Walk = 1,
    Heavypath = 2,
    HeavypathBipartite = 3,
    Constmicro = 4,
    ApproxSubsample = 5,
    ApproxWeights = 6,
    ApproxCombined = 7,
}

impl SchemeId {
    pub const ALL: [SchemeId; 8] = [
        SchemeId::Naive,
        SchemeId::Walk,
        SchemeId::Heavypath,
        SchemeId::HeavypathBipartite,
        SchemeId::Constmicro,
        SchemeId::ApproxSubsample,
        SchemeId::ApproxWeights,
        SchemeId::ApproxCombined,
    ];

    pub const EXACT: [SchemeId; 5] =
        [SchemeId::Naive, SchemeId::Walk, SchemeId::Heavypath, SchemeId::HeavypathBipartite, SchemeId::Constmicro];

    pub fn name(self) -> &'static str {
        match self {
            SchemeId::Naive => "naive",
            SchemeId::Walk => "walk",
            SchemeId::Heavypath => "heavypath",
            SchemeId::HeavypathBipartite => "heavypath-bipartite",
            SchemeId::Constmicro => "constmicro",
            SchemeId::ApproxSubsample => "approx-subsample",
            SchemeId::ApproxWeights => "approx-weights",
            SchemeId::ApproxCombined => "approx-combined",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|id| id.name() == s)
    }

    pub fn from_u8(v: u8) -> Option<Self> {
        Self::ALL.get(usize::from(v)).copied()
    }

    pub fn is_exact(self) -> bool {
        Self::EXACT.contains(&self)
    }

    /// Number of fields in the label directory.
    pub(crate) fn field_count(self) -> usize {
        match self {
            SchemeId::Naive | SchemeId::Walk => 2,
            SchemeId::Constmicro => 3,
            SchemeId::Heavypath | SchemeId::HeavypathBipartite | SchemeId::ApproxWeights => 4,
            SchemeId::ApproxSubsample | SchemeId::ApproxCombined => 6,
        }
    }
}

impl core::fmt::Display for SchemeId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// Scheme parameters. `beta = 0` picks the default for the graph size.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SchemeParams {
    /// Subsampling parameter `k ≥ 0`.
    pub k: u16,
    /// Number of dropped delta values `D`.
    pub d: u32,
    /// Micro tree size bound `β` (constmicro only).
    pub beta: u16,
}

impl SchemeParams {
    pub fn new(k: u16, d: u32, beta: u16) -> Self {
        SchemeParams { k, d, beta }
    }

    /// Checks the parameter ranges of `scheme` for maximum weight `w`.
    pub fn validate(&self, scheme: SchemeId, w: u32) -> Result<(), SchemeError> {
        let w = u64::from(w);
        let (k, d) = (u64::from(self.k), u64::from(self.d));
        match scheme {
            SchemeId::ApproxWeights if d > 2 * w - 1 => Err(SchemeError::InvalidParams("D must satisfy D <= 2W-1")),
            SchemeId::ApproxCombined if d > 2 * (k + 1) * w - 1 => {
                Err(SchemeError::InvalidParams("D must satisfy D <= 2(k+1)W-1"))
            }
            _ => Ok(()),
        }
    }

    /// Proven additive error `r`: `2kW + ⌈D / (2(k+1)W − D)⌉` for the
    /// approximate schemes (with the unused parameters taken as 0), 0 for
    /// exact ones.
    pub fn additive_bound(&self, scheme: SchemeId, w: u32) -> u64 {
        let w = u64::from(w);
        let (k, d) = (u64::from(self.k), u64::from(self.d));
        let rounding = |radius: u64, d: u64| d.div_ceil(2 * radius - d);
        match scheme {
            SchemeId::ApproxSubsample => 2 * k * w,
            SchemeId::ApproxWeights => rounding(w, d),
            SchemeId::ApproxCombined => 2 * k * w + rounding((k + 1) * w, d),
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchemeError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("invalid parameters: {0}")]
    InvalidParams(&'static str),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("scheme requires an unweighted graph (W = 1), got W = {0}")]
    NotUnweighted(u32),
    #[error("unknown scheme id {0}")]
    UnknownScheme(u8),
    #[error("labels come from different schemes ({0} and {1})")]
    SchemeMismatch(SchemeId, SchemeId),
    #[error("labels come from different builds")]
    TagMismatch,
    #[error("nodes lie in different connected components")]
    DifferentComponents,
    #[error("malformed label: {0}")]
    Malformed(&'static str),
    #[error("neither label covers the other node (internal invariant broken)")]
    Coverage,
    #[error("micro tables are required for this scheme")]
    MissingTables,
    #[error("micro tables do not match the labels (labels: beta={beta}, W={w})")]
    TableMismatch { beta: usize, w: u32 },
    #[error("{0}")]
    Other(String),
}

/// One node's label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Label {
    pub scheme: SchemeId,
    pub node: NodeId,
    pub bits: BitString,
}

impl Label {
    pub fn len_bits(&self) -> usize {
        self.bits.len()
    }
}

/// Labels for every node of a graph, plus what is needed to interpret them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelSet {
    pub scheme: SchemeId,
    /// Parameters after defaults are resolved (`beta` is the value used).
    pub params: SchemeParams,
    pub n: usize,
    pub w: u32,
    pub digest: u64,
    pub labels: Vec<Label>,
    /// Shared decode tables (constmicro only).
    pub tables: Option<MicroTables>,
}

impl LabelSet {
    pub fn decode(&self, x: NodeId, y: NodeId) -> Result<u64, SchemeError> {
        self.decode_with(x, y, &mut crate::NoProbe)
    }

    pub fn decode_with<P: Probe>(&self, x: NodeId, y: NodeId, probe: &mut P) -> Result<u64, SchemeError> {
        decode(&self.labels[x], &self.labels[y], self.tables.as_ref(), probe)
    }

    pub fn max_bits(&self) -> usize {
        self.labels.iter().map(Label::len_bits).max().unwrap_or(0)
    }

    pub fn total_bits(&self) -> usize {
        self.labels.iter().map(Label::len_bits).sum()
    }

    pub fn mean_bits(&self) -> f64 {
        self.total_bits() as f64 / self.labels.len().max(1) as f64
    }

    /// Additive error bound of this label set.
    pub fn additive_bound(&self) -> u64 {
        self.params.additive_bound(self.scheme, self.w)
    }
}

/// Build context shared by all labels of one component.
pub(crate) struct Ctx<'a> {
    pub scheme: SchemeId,
    pub params: SchemeParams,
    pub w: u32,
    pub comp: u64,
    pub comp_width: u32,
    pub tag: u16,
    pub tables: Option<&'a MicroTables>,
}

impl Ctx<'_> {
    pub(crate) fn writer(&self) -> layout::LabelWriter {
        layout::LabelWriter::new(self.scheme, self.comp, self.comp_width, self.tag)
    }
}

/// Build digest over the graph, scheme and resolved parameters; its low 16
/// bits tag every label.
pub fn graph_digest(g: &WeightedGraph, scheme: SchemeId, params: &SchemeParams) -> u64 {
    let mut h = Fnv1a::new();
    h.bytes(b"distlab")
        .u64(scheme as u64)
        .u64(u64::from(params.k))
        .u64(u64::from(params.d))
        .u64(u64::from(params.beta))
        .u64(g.n() as u64)
        .u64(u64::from(g.max_weight()));
    for &(u, v, w) in g.edges() {
        h.u64(u as u64).u64(v as u64).u64(u64::from(w));
    }
    h.finish()
}

fn resolve(g: &WeightedGraph, scheme: SchemeId, params: SchemeParams) -> Result<SchemeParams, SchemeError> {
    let w = g.max_weight();
    params.validate(scheme, w)?;
    let mut p = params;
    match scheme {
        SchemeId::HeavypathBipartite => {
            if w != 1 {
                return Err(SchemeError::NotUnweighted(w));
            }
            if !g.is_bipartite() {
                return Err(SchemeError::NotBipartite);
            }
        }
        SchemeId::Constmicro => {
            if p.beta == 0 {
                p.beta = default_beta(g.n(), w) as u16;
            }
            if p.beta < 2 {
                return Err(SchemeError::InvalidParams("beta must be at least 2"));
            }
        }
        _ => {}
    }
    // Parameters that a scheme ignores are normalised away so that label
    // files and digests do not depend on them.
    match scheme {
        SchemeId::ApproxSubsample => p.d = 0,
        SchemeId::ApproxWeights => p.k = 0,
        SchemeId::ApproxCombined => {}
        _ => {
            p.k = 0;
            p.d = 0;
        }
    }
    if scheme != SchemeId::Constmicro {
        p.beta = 0;
    }
    Ok(p)
}

fn build_component(g: &WeightedGraph, ctx: &Ctx<'_>) -> Result<Vec<BitString>, SchemeError> {
    let oracle = g.all_pairs_oracle();
    build_with_oracle(g, &oracle, ctx)
}

fn build_with_oracle(g: &WeightedGraph, oracle: &DistanceOracle, ctx: &Ctx<'_>) -> Result<Vec<BitString>, SchemeError> {
    match ctx.scheme {
        SchemeId::Naive => naive::build(g, oracle, ctx),
        SchemeId::Walk => walk::build(g, oracle, ctx),
        SchemeId::Heavypath | SchemeId::HeavypathBipartite | SchemeId::ApproxWeights => {
            heavypath::build(g, oracle, ctx)
        }
        SchemeId::Constmicro => constmicro::build(g, oracle, ctx),
        SchemeId::ApproxSubsample | SchemeId::ApproxCombined => subsample::build(g, oracle, ctx),
    }
}

fn tables_for(scheme: SchemeId, p: &SchemeParams, w: u32) -> Result<Option<MicroTables>, SchemeError> {
    if scheme == SchemeId::Constmicro {
        Ok(Some(build_micro_tables(usize::from(p.beta), w)?))
    } else {
        Ok(None)
    }
}

/// Builds labels for a connected graph. Disconnected input is rejected.
pub fn build(g: &WeightedGraph, scheme: SchemeId, params: SchemeParams) -> Result<LabelSet, SchemeError> {
    g.require_connected()?;
    let p = resolve(g, scheme, params)?;
    let tables = tables_for(scheme, &p, g.max_weight())?;
    let digest = graph_digest(g, scheme, &p);
    let ctx = Ctx {
        scheme,
        params: p,
        w: g.max_weight(),
        comp: 0,
        comp_width: 0,
        tag: digest as u16,
        tables: tables.as_ref(),
    };
    let bits = build_component(g, &ctx)?;
    Ok(LabelSet {
        scheme,
        params: p,
        n: g.n(),
        w: g.max_weight(),
        digest,
        labels: bits.into_iter().enumerate().map(|(node, bits)| Label { scheme, node, bits }).collect(),
        tables,
    })
}

/// Builds labels per connected component. Each label starts with its
/// component id in `⌈log₂ n⌉` bits; decoding across components fails with
/// [`SchemeError::DifferentComponents`].
pub fn build_lenient(g: &WeightedGraph, scheme: SchemeId, params: SchemeParams) -> Result<LabelSet, SchemeError> {
    let p = resolve(g, scheme, params)?;
    let w = g.max_weight();
    let tables = tables_for(scheme, &p, w)?;
    let digest = graph_digest(g, scheme, &p);
    let comp_width = crate::ceil_log2(g.n() as u64);
    let mut labels: Vec<Option<Label>> = vec![None; g.n()];
    for (c, (sub, ids)) in g.split_components().into_iter().enumerate() {
        if scheme == SchemeId::HeavypathBipartite && !sub.is_bipartite() {
            return Err(SchemeError::NotBipartite);
        }
        let ctx = Ctx { scheme, params: p, w, comp: c as u64, comp_width, tag: digest as u16, tables: tables.as_ref() };
        let sub = WeightedGraph::new(sub.n(), w, sub.edges().iter().copied())?;
        for (local, bits) in build_component(&sub, &ctx)?.into_iter().enumerate() {
            let node = ids[local];
            labels[node] = Some(Label { scheme, node, bits });
        }
    }
    Ok(LabelSet {
        scheme,
        params: p,
        n: g.n(),
        w,
        digest,
        labels: labels.into_iter().map(|l| l.expect("every node is in a component")).collect(),
        tables,
    })
}

/// Distance between the owners of two labels (an upper estimate within the
/// scheme's additive bound for approximate schemes).
pub fn decode<P: Probe>(x: &Label, y: &Label, tables: Option<&MicroTables>, probe: &mut P) -> Result<u64, SchemeError> {
    decode_bits(&x.bits, &y.bits, tables, probe)
}

/// [`decode`] on raw label bits.
pub fn decode_bits<P: Probe>(
    x: &BitString,
    y: &BitString,
    tables: Option<&MicroTables>,
    probe: &mut P,
) -> Result<u64, SchemeError> {
    let lx = LabelReader::parse(x, probe)?;
    let ly = LabelReader::parse(y, probe)?;
    if lx.scheme != ly.scheme {
        return Err(SchemeError::SchemeMismatch(lx.scheme, ly.scheme));
    }
    if lx.tag != ly.tag {
        return Err(SchemeError::TagMismatch);
    }
    if lx.comp != ly.comp {
        return Err(SchemeError::DifferentComponents);
    }
    match lx.scheme {
        SchemeId::Naive => naive::decode(&lx, &ly, probe),
        SchemeId::Walk => walk::decode(&lx, &ly, probe),
        SchemeId::Heavypath | SchemeId::HeavypathBipartite | SchemeId::ApproxWeights => {
            heavypath::decode(&lx, &ly, probe)
        }
        SchemeId::Constmicro => constmicro::decode(&lx, &ly, tables.ok_or(SchemeError::MissingTables)?, probe),
        SchemeId::ApproxSubsample | SchemeId::ApproxCombined => subsample::decode(&lx, &ly, probe),
    }
}

/// Scheme id stored in a label's preamble.
pub fn label_scheme(bits: &BitString) -> Result<SchemeId, SchemeError> {
    Ok(LabelReader::parse(bits, &mut crate::NoProbe)?.scheme)
}
