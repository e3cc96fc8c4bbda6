//! Graph/kernel and map documents.
//!
//! ```json
//! {
//!   "vertices": ["a", "b", "c"],
//!   "arcs": [["a", "b"], ["b", "c"], ["c", "a"]],
//!   "undirected": false,
//!   "kernel": { "type": "explicit", "matrix": [["0", "1", "0"], ["0", "0", "1"], ["1", "0", "0"]] }
//! }
//! ```
//!
//! `vertices` may also be a count, in which case labels are `"0"`, `"1"`, ...
//! Arc endpoints are labels or indices. Matrix entries are `"p/q"` strings
//! (bit-exact) or JSON numbers (treated as floats unless integral).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::chain::{KernelKind, MarkovChain};
use super::graph::Graph;
use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, render_rational, Rational, Scalar};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum Vertices {
    Count(usize),
    Labels(Vec<String>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum Endpoint {
    Index(usize),
    Label(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct KernelSpec {
    #[serde(rename = "type")]
    kind: KernelKindSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<Value>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum KernelKindSpec {
    Natural,
    Lazy,
    Explicit,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    vertices: Vertices,
    arcs: Vec<(Endpoint, Endpoint)>,
    #[serde(default)]
    undirected: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kernel: Option<KernelSpec>,
}

/// One kernel entry as written in a document.
#[derive(Debug, Clone, PartialEq)]
pub enum Entry {
    Exact(Rational),
    Float(f64),
}

/// How the kernel of a document is to be built.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelSource {
    Natural,
    Lazy,
    Explicit(Vec<Vec<Entry>>),
}

/// A parsed graph/kernel document, not yet solved for π.
#[derive(Debug, Clone)]
pub struct ChainDocument {
    pub graph: Graph,
    pub kernel: KernelSource,
}

impl ChainDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawDocument = serde_json::from_str(text)?;
        let labels = match raw.vertices {
            Vertices::Count(n) => (0..n).map(|i| i.to_string()).collect::<Vec<_>>(),
            Vertices::Labels(l) => l,
        };
        let n = labels.len();
        let resolve = |e: &Endpoint| -> Result<usize> {
            match e {
                Endpoint::Label(s) => labels
                    .iter()
                    .position(|l| l == s)
                    .ok_or_else(|| Error::parse(format!("unknown vertex `{s}`"))),
                Endpoint::Index(i) if *i < n => Ok(*i),
                Endpoint::Index(i) => Err(Error::parse(format!("vertex index {i} out of range"))),
            }
        };
        let mut arcs = Vec::with_capacity(raw.arcs.len());
        for (a, b) in &raw.arcs {
            arcs.push((resolve(a)?, resolve(b)?));
        }
        let graph = if raw.undirected {
            Graph::undirected(n, arcs)?.with_labels(labels)?
        } else {
            Graph::new(labels, arcs)?
        };
        let kernel = match raw.kernel {
            None => KernelSource::Natural,
            Some(KernelSpec { kind: KernelKindSpec::Natural, .. }) => KernelSource::Natural,
            Some(KernelSpec { kind: KernelKindSpec::Lazy, .. }) => KernelSource::Lazy,
            Some(KernelSpec { kind: KernelKindSpec::Explicit, matrix }) => {
                let rows = matrix.ok_or_else(|| Error::parse("explicit kernel without `matrix`"))?;
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::parse(format!("kernel matrix must be {n}x{n}")));
                }
                let rows = rows
                    .iter()
                    .map(|r| r.iter().map(parse_entry).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                KernelSource::Explicit(rows)
            }
        };
        Ok(ChainDocument { graph, kernel })
    }

    /// `true` when some explicit entry was given as a non-integral float.
    pub fn has_float_entries(&self) -> bool {
        matches!(&self.kernel, KernelSource::Explicit(rows) if rows.iter().flatten().any(|e| matches!(e, Entry::Float(_))))
    }

    /// Builds the chain on the rational backend.
    pub fn exact(&self) -> Result<MarkovChain<Rational>> {
        if self.has_float_entries() {
            return Err(Error::FloatKernelInExactMode);
        }
        self.build(|e| match e {
            Entry::Exact(r) => r.clone(),
            Entry::Float(x) => Rational::from_f64(*x),
        })
    }

    /// Builds the chain on the float backend.
    pub fn float(&self) -> Result<MarkovChain<f64>> {
        self.build(|e| match e {
            Entry::Exact(r) => r.to_f64(),
            Entry::Float(x) => *x,
        })
    }

    fn build<S: Scalar>(&self, conv: impl Fn(&Entry) -> S) -> Result<MarkovChain<S>> {
        match &self.kernel {
            KernelSource::Natural => MarkovChain::natural_walk(&self.graph),
            KernelSource::Lazy => MarkovChain::lazy_max_degree(&self.graph),
            KernelSource::Explicit(rows) => {
                let m = rows.iter().map(|r| r.iter().map(&conv).collect()).collect();
                let m = Matrix::from_rows(m).ok_or_else(|| Error::parse("kernel matrix is not square"))?;
                MarkovChain::from_kernel(self.graph.clone(), m)
            }
        }
    }
}

fn parse_entry(v: &Value) -> Result<Entry> {
    match v {
        Value::String(s) => Ok(Entry::Exact(parse_rational(s)?)),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Entry::Exact(Rational::from_integer(i.into())))
            } else {
                n.as_f64().map(Entry::Float).ok_or_else(|| Error::parse(format!("bad number {n}")))
            }
        }
        other => Err(Error::parse(format!("kernel entry {other} is neither a string nor a number"))),
    }
}

/// Parses a graph/kernel document straight to an exact chain.
pub fn parse_chain(text: &str) -> Result<MarkovChain<Rational>> {
    ChainDocument::parse(text)?.exact()
}

/// Serialises a graph (and, for explicit kernels, the exact kernel) as a document.
pub fn to_document(chain: &MarkovChain<Rational>) -> String {
    let g = chain.graph();
    let kernel = match chain.kind() {
        KernelKind::Natural => KernelSpec { kind: KernelKindSpec::Natural, matrix: None },
        KernelKind::Lazy => KernelSpec { kind: KernelKindSpec::Lazy, matrix: None },
        KernelKind::Explicit | KernelKind::Reversibilized => KernelSpec {
            kind: KernelKindSpec::Explicit,
            matrix: Some(
                chain
                    .kernel()
                    .rows()
                    .map(|r| r.iter().map(|x| Value::String(render_rational(x))).collect())
                    .collect(),
            ),
        },
    };
    let raw = RawDocument {
        vertices: Vertices::Labels(g.labels().to_vec()),
        arcs: g
            .arcs()
            .map(|(u, v)| (Endpoint::Label(g.label(u).to_string()), Endpoint::Label(g.label(v).to_string())))
            .collect(),
        undirected: false,
        kernel: Some(kernel),
    };
    serde_json::to_string_pretty(&raw).expect("document serialises")
}

/// Parses a map document, either `{"map": {...}}` or a bare object, into
/// `sigma[g] = h` by vertex index.
pub fn parse_map(text: &str, g: &Graph, h: &Graph) -> Result<Vec<usize>> {
    let value: Value = serde_json::from_str(text)?;
    let object = match value.get("map") {
        Some(inner) => inner.clone(),
        None => value,
    };
    let pairs: BTreeMap<String, Value> = serde_json::from_value(object)?;
    let mut sigma = vec![None; g.vertex_count()];
    for (from, to) in pairs {
        let u = g.index_of(&from).ok_or_else(|| Error::parse(format!("map source `{from}` is not a vertex")))?;
        let target = match &to {
            Value::String(s) => h.index_of(s),
            Value::Number(n) => n.as_u64().map(|i| i as usize).filter(|&i| i < h.vertex_count()),
            _ => None,
        };
        sigma[u] = Some(target.ok_or_else(|| Error::parse(format!("map target {to} is not a vertex")))?);
    }
    sigma
        .into_iter()
        .enumerate()
        .map(|(u, s)| s.ok_or_else(|| Error::parse(format!("map is undefined at `{}`", g.label(u)))))
        .collect()
}
