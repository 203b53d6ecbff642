//! Hypercube graphs indexed by the subsets of `{1, ..., h}`.
//!
//! A [`HypercubeGraph`] has one vertex class `U_I` per index set `I`, and edges
//! only from `U_I` to `U_{I + i}`. Vertex identities are opaque `usize`s that
//! are contiguous per class, with classes laid out in bitmask order; this is
//! the canonical vertex order used for tie-breaking everywhere. Layer `V_0` is
//! therefore always the id range `0..|U_{}|`.

mod index;
mod layered;
pub mod matching;
mod sqcomm;

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

pub use index::IndexSet;
pub use layered::LayeredGraph;
pub use sqcomm::{check_square_commutativity, Direction, SqCommMethod, SqCommVerdict, SqCommWitness};

use crate::group::{Element, GSet, SumsetInstance};
use crate::{Error, Result};

pub type VertexId = usize;

/// A vertex named by its class and payload.
pub type LabelledVertex = (IndexSet, Option<Element>);

/// Read access shared by hypercube and plain layered graphs.
pub trait Layered {
    fn num_vertices(&self) -> usize;
    fn num_layers(&self) -> usize;
    fn layer(&self, i: usize) -> &[VertexId];
    fn layer_of(&self, v: VertexId) -> usize;
    fn successors(&self, v: VertexId) -> &[VertexId];
}

/// Forward reachability from `sources` (sources included).
pub fn reachable<G: Layered + ?Sized>(g: &G, sources: &[VertexId]) -> Vec<bool> {
    let mut seen = vec![false; g.num_vertices()];
    let mut queue: VecDeque<VertexId> = VecDeque::new();
    for &s in sources {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in g.successors(v) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypercubeGraph {
    h: usize,
    class_of: Vec<IndexSet>,
    /// class start offsets by bitmask, plus a final sentinel
    class_start: Vec<usize>,
    out: Vec<Vec<VertexId>>,
    inn: Vec<Vec<VertexId>>,
    payload: Vec<Option<Element>>,
    layers: Vec<Vec<VertexId>>,
}

/// Accumulates vertices and edges in any order; [`build`](Self::build)
/// renumbers into canonical order and audits the result.
#[derive(Debug, Clone)]
pub struct HypercubeGraphBuilder {
    h: usize,
    class_of: Vec<IndexSet>,
    payload: Vec<Option<Element>>,
    edges: Vec<(VertexId, VertexId)>,
}

impl HypercubeGraphBuilder {
    pub fn new(h: usize) -> Self {
        assert!(h <= IndexSet::MAX_H, "h too large");
        Self { h, class_of: Vec::new(), payload: Vec::new(), edges: Vec::new() }
    }

    /// Returns a provisional id, valid for [`add_edge`](Self::add_edge) only.
    pub fn add_vertex(&mut self, class: IndexSet, payload: Option<Element>) -> VertexId {
        assert_eq!(class.h(), self.h, "class indexed by a different cube");
        self.class_of.push(class);
        self.payload.push(payload);
        self.class_of.len() - 1
    }

    pub fn add_edge(&mut self, from: VertexId, to: VertexId) {
        self.edges.push((from, to));
    }

    /// Builds the graph and returns it with the map from provisional ids to
    /// canonical ids.
    pub fn build_with_map(self) -> Result<(HypercubeGraph, Vec<VertexId>)> {
        let n = self.class_of.len();
        for &(u, v) in &self.edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutsideClass { vertex: u.max(v) });
            }
            if !self.class_of[u].is_edge_to(self.class_of[v]) {
                return Err(Error::Precondition(format!(
                    "edge {u} -> {v} does not go from some U_I to U_I' with I -> I' ({:?} -> {:?})",
                    self.class_of[u], self.class_of[v]
                )));
            }
        }
        let n_classes = 1usize << self.h;
        let mut counts = vec![0usize; n_classes + 1];
        for c in &self.class_of {
            counts[c.bits() as usize + 1] += 1;
        }
        for i in 0..n_classes {
            counts[i + 1] += counts[i];
        }
        let class_start = counts.clone();
        let mut next = counts;
        let mut map = vec![0; n];
        for (old, c) in self.class_of.iter().enumerate() {
            let slot = &mut next[c.bits() as usize];
            map[old] = *slot;
            *slot += 1;
        }
        let mut class_of = vec![IndexSet::empty(self.h); n];
        let mut payload = vec![None; n];
        for old in 0..n {
            class_of[map[old]] = self.class_of[old];
            payload[map[old]] = self.payload[old].clone();
        }
        let mut out: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); n];
        let mut inn: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); n];
        for &(u, v) in &self.edges {
            out[map[u]].insert(map[v]);
            inn[map[v]].insert(map[u]);
        }
        let mut layers = vec![Vec::new(); self.h + 1];
        for bits in 0..n_classes {
            let level = (bits as u32).count_ones() as usize;
            layers[level].extend(class_start[bits]..class_start[bits + 1]);
        }
        let g = HypercubeGraph {
            h: self.h,
            class_of,
            class_start,
            out: out.into_iter().map(|s| s.into_iter().collect()).collect(),
            inn: inn.into_iter().map(|s| s.into_iter().collect()).collect(),
            payload,
            layers,
        };
        g.audit()?;
        Ok((g, map))
    }

    pub fn build(self) -> Result<HypercubeGraph> {
        self.build_with_map().map(|(g, _)| g)
    }
}

impl HypercubeGraph {
    pub fn h(&self) -> usize {
        self.h
    }

    pub fn num_edges(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    /// Vertices of `U_I` in canonical order.
    pub fn class(&self, index: IndexSet) -> core::ops::Range<VertexId> {
        let b = index.bits() as usize;
        self.class_start[b]..self.class_start[b + 1]
    }

    pub fn class_of(&self, v: VertexId) -> IndexSet {
        self.class_of[v]
    }

    pub fn predecessors(&self, v: VertexId) -> &[VertexId] {
        &self.inn[v]
    }

    pub fn payload(&self, v: VertexId) -> Option<&Element> {
        self.payload[v].as_ref()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    /// Position of `v` inside its class.
    pub fn position_in_class(&self, v: VertexId) -> usize {
        v - self.class_start[self.class_of[v].bits() as usize]
    }

    /// Vertex of class `index` carrying `payload`, if any.
    pub fn find(&self, index: IndexSet, payload: &Element) -> Option<VertexId> {
        self.class(index).find(|&v| self.payload[v].as_ref() == Some(payload))
    }

    /// `(class, payload) -> (class, payload)` edges, for comparing graphs
    /// whose vertices carry group elements.
    pub fn labelled_edges(&self) -> BTreeSet<(LabelledVertex, LabelledVertex)> {
        let mut s = BTreeSet::new();
        for u in 0..self.num_vertices() {
            for &v in &self.out[u] {
                s.insert(((self.class_of[u], self.payload[u].clone()), (self.class_of[v], self.payload[v].clone())));
            }
        }
        s
    }

    /// `(class, payload)` vertex labels.
    pub fn labelled_vertices(&self) -> BTreeSet<LabelledVertex> {
        (0..self.num_vertices()).map(|v| (self.class_of[v], self.payload[v].clone())).collect()
    }

    /// Checks that classes partition the vertex set and every edge goes along
    /// some `I -> I'`.
    pub fn audit(&self) -> Result<()> {
        let n = self.num_vertices();
        if self.class_start.len() != (1 << self.h) + 1 || self.class_start[1 << self.h] != n {
            return Err(Error::Precondition(format!("class table does not cover the {n} vertices")));
        }
        for bits in 0..(1usize << self.h) {
            for v in self.class_start[bits]..self.class_start[bits + 1] {
                if self.class_of[v].bits() as usize != bits {
                    return Err(Error::Precondition(format!("vertex {v} listed in two classes")));
                }
            }
        }
        for u in 0..n {
            for &v in &self.out[u] {
                if !self.class_of[u].is_edge_to(self.class_of[v]) {
                    return Err(Error::Precondition(format!("edge {u} -> {v} skips the cube structure")));
                }
                if self.inn[v].binary_search(&u).is_err() {
                    return Err(Error::Precondition(format!("edge {u} -> {v} missing from reverse adjacency")));
                }
            }
        }
        Ok(())
    }

    /// Graph with one vertex per class and every cube edge present; the unit
    /// of [`product`](Self::product).
    pub fn trivial(h: usize) -> HypercubeGraph {
        let mut b = HypercubeGraphBuilder::new(h);
        let ids: Vec<_> = IndexSet::all(h).map(|i| b.add_vertex(i, None)).collect();
        for i in IndexSet::all(h) {
            for j in i.successors() {
                b.add_edge(ids[i.bits() as usize], ids[j.bits() as usize]);
            }
        }
        b.build().expect("cube edges are valid")
    }

    /// Graph whose class `I` holds the elements of `classes[I]` as payloads,
    /// with an edge `x -> y` from `U_I` to `U_{I+i}` iff `y - x` lies in
    /// `b[i-1]`.
    pub fn from_element_classes(classes: &[GSet], b: &[GSet]) -> Result<HypercubeGraph> {
        let h = b.len();
        if classes.len() != 1 << h {
            return Err(Error::InvalidParams(format!("expected {} classes, got {}", 1 << h, classes.len())));
        }
        let spec = classes[0].spec().clone();
        let mut builder = HypercubeGraphBuilder::new(h);
        let mut ids: Vec<Vec<VertexId>> = Vec::with_capacity(classes.len());
        for (bits, set) in classes.iter().enumerate() {
            spec.ensure_same(set.spec())?;
            let idx = IndexSet::from_bits(h, bits as u32);
            ids.push(set.elements().iter().map(|e| builder.add_vertex(idx, Some(e.clone()))).collect());
        }
        for (bits, set) in classes.iter().enumerate() {
            let idx = IndexSet::from_bits(h, bits as u32);
            for i in idx.complement().members() {
                let target_bits = idx.insert(i).bits() as usize;
                let target = &classes[target_bits];
                spec.ensure_same(b[i - 1].spec())?;
                for (pos, x) in set.elements().iter().enumerate() {
                    for bb in b[i - 1].elements() {
                        let y = spec.add(x, bb)?;
                        if let Some(tp) = target.position(&y) {
                            builder.add_edge(ids[bits][pos], ids[target_bits][tp]);
                        }
                    }
                }
            }
        }
        builder.build()
    }

    /// The addition graph: `U_I = A + sum_{i in I} B_i`, each class in its own
    /// copy of the group, edges by adding an element of `B_i`.
    pub fn addition_graph(inst: &SumsetInstance) -> HypercubeGraph {
        let h = inst.h();
        let mut classes: Vec<GSet> = Vec::with_capacity(1 << h);
        classes.push(inst.a().clone());
        for bits in 1..(1u32 << h) {
            let top = 31 - bits.leading_zeros();
            let prev = &classes[(bits & !(1 << top)) as usize];
            classes.push(crate::group::minkowski_sum(prev, &inst.b()[top as usize]).expect("validated spec"));
        }
        Self::from_element_classes(&classes, inst.b()).expect("addition graph is a valid hypercube graph")
    }

    /// The channel between `x` (inside `U_from`) and `y` (inside `U_to`),
    /// reindexed over `Q_j` with `j = |to \ from|`. Index `t` of the new cube
    /// stands for the `t`-th smallest element of `to \ from`.
    pub fn channel(&self, from: IndexSet, x: &[VertexId], to: IndexSet, y: &[VertexId]) -> Result<HypercubeGraph> {
        if from.h() != self.h || to.h() != self.h {
            return Err(Error::MismatchedDimension(from.h().max(to.h()), self.h));
        }
        if !from.is_subset(to) {
            return Err(Error::InvalidChain(format!("{from:?} is not contained in {to:?}")));
        }
        for &v in x {
            if v >= self.num_vertices() || self.class_of[v] != from {
                return Err(Error::VertexOutsideClass { vertex: v });
            }
        }
        for &v in y {
            if v >= self.num_vertices() || self.class_of[v] != to {
                return Err(Error::VertexOutsideClass { vertex: v });
            }
        }
        let fwd = reachable(self, x);
        let bwd = self.reachable_backward(y);
        let diff: Vec<usize> = to.difference(from).members().collect();
        let j = diff.len();
        let reindex = |idx: IndexSet| -> IndexSet {
            let mut bits = 0u32;
            for (t, &d) in diff.iter().enumerate() {
                if idx.contains(d) {
                    bits |= 1 << t;
                }
            }
            IndexSet::from_bits(j, bits)
        };
        let mut builder = HypercubeGraphBuilder::new(j);
        let mut new_id = vec![usize::MAX; self.num_vertices()];
        for v in 0..self.num_vertices() {
            if fwd[v] && bwd[v] {
                new_id[v] = builder.add_vertex(reindex(self.class_of[v]), self.payload[v].clone());
            }
        }
        for u in 0..self.num_vertices() {
            if new_id[u] == usize::MAX {
                continue;
            }
            for &v in &self.out[u] {
                if new_id[v] != usize::MAX {
                    builder.add_edge(new_id[u], new_id[v]);
                }
            }
        }
        builder.build()
    }

    fn reachable_backward(&self, targets: &[VertexId]) -> Vec<bool> {
        let mut seen = vec![false; self.num_vertices()];
        let mut queue: VecDeque<VertexId> = VecDeque::new();
        for &t in targets {
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &w in &self.inn[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Hypercube product: `U_I = U_I(self) x U_I(other)` in lexicographic
    /// order, `(u, v) -> (u', v')` iff `u -> u'` and `v -> v'`.
    pub fn product(&self, other: &HypercubeGraph) -> Result<HypercubeGraph> {
        if self.h != other.h {
            return Err(Error::MismatchedDimension(self.h, other.h));
        }
        let h = self.h;
        let n_classes = 1usize << h;
        let mut class_start = vec![0usize; n_classes + 1];
        for bits in 0..n_classes {
            let idx = IndexSet::from_bits(h, bits as u32);
            class_start[bits + 1] = class_start[bits] + self.class(idx).len() * other.class(idx).len();
        }
        let n = class_start[n_classes];
        let pair_id = |u: VertexId, v: VertexId| -> VertexId {
            let bits = self.class_of[u].bits() as usize;
            class_start[bits] + self.position_in_class(u) * other.class(other.class_of[v]).len() + other.position_in_class(v)
        };
        let mut class_of = Vec::with_capacity(n);
        let mut payload = Vec::with_capacity(n);
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for idx in IndexSet::all(h) {
            for u in self.class(idx) {
                for v in other.class(idx) {
                    let id = class_of.len();
                    class_of.push(idx);
                    payload.push(match (&self.payload[u], &other.payload[v]) {
                        (Some(a), Some(b)) => Some(a.concat(b)),
                        _ => None,
                    });
                    for &u2 in &self.out[u] {
                        for &v2 in &other.out[v] {
                            if self.class_of[u2] == other.class_of[v2] {
                                let t = pair_id(u2, v2);
                                out[id].push(t);
                                inn[t].push(id);
                            }
                        }
                    }
                }
            }
        }
        for list in out.iter_mut().chain(inn.iter_mut()) {
            list.sort_unstable();
        }
        let mut layers = vec![Vec::new(); h + 1];
        for bits in 0..n_classes {
            layers[(bits as u32).count_ones() as usize].extend(class_start[bits]..class_start[bits + 1]);
        }
        let g = HypercubeGraph { h, class_of, class_start, out, inn, payload, layers };
        g.audit()?;
        Ok(g)
    }

    /// Two-layer reachability compression `V_0 -> V_h`.
    pub fn hat(&self) -> LayeredGraph {
        let v0 = &self.layers[0];
        let vh = &self.layers[self.h];
        let mut top_pos = BTreeMap::new();
        for (i, &v) in vh.iter().enumerate() {
            top_pos.insert(v, i);
        }
        let mut edges = Vec::new();
        for (i, &s) in v0.iter().enumerate() {
            let seen = reachable(self, &[s]);
            for (j, &t) in vh.iter().enumerate() {
                if seen[t] && (self.h > 0 || s == t) {
                    edges.push((i, v0.len() + j));
                }
            }
        }
        let payloads = v0.iter().chain(vh.iter()).map(|&v| self.payload[v].clone()).collect();
        LayeredGraph::with_payloads(&[v0.len(), vh.len()], &edges, payloads).expect("hat edges join consecutive layers")
    }

    /// Lifts a layered graph with layers `V_0..V_h` to the hypercube graph
    /// with `U_I` a copy of `V_{|I|}` and edges copied along every `I -> I'`.
    pub fn lift(layered: &LayeredGraph) -> Result<HypercubeGraph> {
        if layered.num_layers() == 0 {
            return Err(Error::InvalidParams("layered graph has no layers".into()));
        }
        let h = layered.num_layers() - 1;
        let mut builder = HypercubeGraphBuilder::new(h);
        let mut ids: Vec<Vec<VertexId>> = Vec::with_capacity(1 << h);
        for idx in IndexSet::all(h) {
            let layer = layered.layer(idx.level());
            ids.push(layer.iter().map(|&v| builder.add_vertex(idx, layered.payload(v).cloned())).collect());
        }
        for idx in IndexSet::all(h) {
            let level = idx.level();
            let layer = layered.layer(level);
            let start = layer.first().copied().unwrap_or(0);
            for next in idx.successors() {
                let next_layer = layered.layer(level + 1);
                let next_start = next_layer.first().copied().unwrap_or(0);
                for &u in layer {
                    for &v in layered.successors(u) {
                        builder.add_edge(ids[idx.bits() as usize][u - start], ids[next.bits() as usize][v - next_start]);
                    }
                }
            }
        }
        builder.build()
    }
}

impl Layered for HypercubeGraph {
    fn num_vertices(&self) -> usize {
        self.class_of.len()
    }

    fn num_layers(&self) -> usize {
        self.h + 1
    }

    fn layer(&self, i: usize) -> &[VertexId] {
        &self.layers[i]
    }

    fn layer_of(&self, v: VertexId) -> usize {
        self.class_of[v].level()
    }

    fn successors(&self, v: VertexId) -> &[VertexId] {
        &self.out[v]
    }
}

/// Free-function form of [`IndexSet::associate`].
pub fn associate_index(i: IndexSet, i1: IndexSet, i2: IndexSet) -> Result<IndexSet> {
    i1.associate(i, i2)
}
