use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{Layered, VertexId};
use crate::group::Element;
use crate::{Error, Result};

/// Directed graph with layers `V_0, ..., V_h` and edges only from `V_i` to
/// `V_{i+1}`. Ids are contiguous per layer, layers in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredGraph {
    layer_of: Vec<usize>,
    layers: Vec<Vec<VertexId>>,
    out: Vec<Vec<VertexId>>,
    payload: Vec<Option<Element>>,
}

impl LayeredGraph {
    /// `edges` use global ids: layer `i` occupies the ids after all vertices
    /// of earlier layers.
    pub fn new(layer_sizes: &[usize], edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let n = layer_sizes.iter().sum();
        Self::with_payloads(layer_sizes, edges, vec![None; n])
    }

    pub fn with_payloads(
        layer_sizes: &[usize],
        edges: &[(VertexId, VertexId)],
        payload: Vec<Option<Element>>,
    ) -> Result<Self> {
        let mut layer_of = Vec::new();
        let mut layers = Vec::with_capacity(layer_sizes.len());
        for (i, &size) in layer_sizes.iter().enumerate() {
            let start = layer_of.len();
            layers.push((start..start + size).collect::<Vec<_>>());
            layer_of.extend(core::iter::repeat_n(i, size));
        }
        let n = layer_of.len();
        if payload.len() != n {
            return Err(Error::InvalidParams(format!("{} payloads for {n} vertices", payload.len())));
        }
        let mut out: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutsideClass { vertex: u.max(v) });
            }
            if layer_of[v] != layer_of[u] + 1 {
                return Err(Error::Precondition(format!("edge {u} -> {v} does not join consecutive layers")));
            }
            out[u].insert(v);
        }
        Ok(Self { layer_of, layers, out: out.into_iter().map(|s| s.into_iter().collect()).collect(), payload })
    }

    pub fn payload(&self, v: VertexId) -> Option<&Element> {
        self.payload[v].as_ref()
    }

    pub fn num_edges(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.out.iter().enumerate().flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    /// Layered tensor product: layer `i` is `V_i x V_i'` in lexicographic
    /// order, `(u, v) -> (u', v')` iff `u -> u'` and `v -> v'`.
    pub fn tensor(&self, other: &LayeredGraph) -> Result<LayeredGraph> {
        if self.num_layers() != other.num_layers() {
            return Err(Error::MismatchedDimension(self.num_layers(), other.num_layers()));
        }
        let sizes: Vec<usize> =
            self.layers.iter().zip(&other.layers).map(|(a, b)| a.len() * b.len()).collect();
        let mut starts = vec![0usize; sizes.len()];
        for i in 1..sizes.len() {
            starts[i] = starts[i - 1] + sizes[i - 1];
        }
        let id = |u: VertexId, v: VertexId| -> VertexId {
            let l = self.layer_of[u];
            let pu = u - self.layers[l][0];
            let pv = v - other.layers[l][0];
            starts[l] + pu * other.layers[l].len() + pv
        };
        let mut edges = Vec::new();
        let mut payload = Vec::new();
        for l in 0..self.num_layers() {
            for &u in &self.layers[l] {
                for &v in &other.layers[l] {
                    payload.push(match (&self.payload[u], &other.payload[v]) {
                        (Some(a), Some(b)) => Some(a.concat(b)),
                        _ => None,
                    });
                    for &u2 in &self.out[u] {
                        for &v2 in &other.out[v] {
                            edges.push((id(u, v), id(u2, v2)));
                        }
                    }
                }
            }
        }
        LayeredGraph::with_payloads(&sizes, &edges, payload)
    }
}

impl Layered for LayeredGraph {
    fn num_vertices(&self) -> usize {
        self.layer_of.len()
    }

    fn num_layers(&self) -> usize {
        self.layers.len()
    }

    fn layer(&self, i: usize) -> &[VertexId] {
        &self.layers[i]
    }

    fn layer_of(&self, v: VertexId) -> usize {
        self.layer_of[v]
    }

    fn successors(&self, v: VertexId) -> &[VertexId] {
        &self.out[v]
    }
}
