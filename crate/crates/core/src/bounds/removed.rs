use alloc::vec::Vec;

use crate::group::{iterated_sumset_of, minkowski_sum, GSet, SumsetInstance};
use crate::hypergraph::{HypercubeGraph, IndexSet, VertexId};
use crate::magnification::{minimal_mu1_minimizer, MagnificationResult};
use crate::rational::{int, ratio, Rational};
use crate::{Error, Result};

/// The hypercube graph with classes
/// `U_I = (A + sum_{i in I} B_i) \ (E + sum_{i in I} B_i)` and edges `u -> v`
/// iff `v - u` lies in the corresponding `B_i`.
#[derive(Debug, Clone)]
pub struct RemovedComponentGraph {
    e: GSet,
    graph: HypercubeGraph,
}

impl RemovedComponentGraph {
    pub fn new(inst: &SumsetInstance, e: &GSet) -> Result<Self> {
        inst.spec().ensure_same(e.spec())?;
        if !e.is_subset(inst.a()) {
            return Err(Error::Precondition("E must be a subset of A".into()));
        }
        if e.len() == inst.m() {
            return Err(Error::EmptySet("A \\ E"));
        }
        let h = inst.h();
        let classes = IndexSet::all(h)
            .map(|idx| {
                let full = inst.iterated_sumset(idx)?;
                let removed = iterated_sumset_of(e, inst.b(), idx)?;
                full.difference(&removed)
            })
            .collect::<Result<Vec<_>>>()?;
        let graph = HypercubeGraph::from_element_classes(&classes, inst.b())?;
        Ok(Self { e: e.clone(), graph })
    }

    pub fn e(&self) -> &GSet {
        &self.e
    }

    pub fn graph(&self) -> &HypercubeGraph {
        &self.graph
    }

    /// `A \ E` as the source class.
    pub fn sources(&self) -> GSet {
        self.class_set(IndexSet::empty(self.graph.h()))
    }

    pub fn class_set(&self, idx: IndexSet) -> GSet {
        let spec = self.e.spec().clone();
        let elems = self.graph.class(idx).map(|v| self.graph.payload(v).expect("payload").clone());
        GSet::from_elements(spec, elems).expect("same spec")
    }

    pub fn vertices_of(&self, z: &GSet) -> Result<Vec<VertexId>> {
        let idx = IndexSet::empty(self.graph.h());
        z.elements()
            .iter()
            .map(|x| self.graph.find(idx, x).ok_or_else(|| Error::Precondition("Z must lie in A \\ E".into())))
            .collect()
    }

    pub fn elements_of(&self, vs: &[VertexId]) -> GSet {
        let elems = vs.iter().map(|&v| self.graph.payload(v).expect("payload").clone());
        GSet::from_elements(self.e.spec().clone(), elems).expect("same spec")
    }

    /// The minimal minimiser of `|Im(Z, V_1)| / |Z|`, which also minimises
    /// `removed_mu`. Its value is `h` times the `removed_mu` value.
    pub fn minimizer(&self, cap: usize) -> Result<(GSet, Rational, MagnificationResult)> {
        let r = minimal_mu1_minimizer(&self.graph, cap)?;
        let mu = &r.value / int(self.graph.h() as u64);
        Ok((self.elements_of(&r.achiever), mu, r))
    }

    /// Whether this graph coincides, as a labelled graph, with the channel of
    /// the full addition graph from `A \ E` to the top class.
    pub fn matches_channel(&self, inst: &SumsetInstance) -> Result<bool> {
        let ch = self.full_channel(inst)?;
        Ok(ch.labelled_vertices() == self.graph.labelled_vertices() && ch.labelled_edges() == self.graph.labelled_edges())
    }

    /// Whether every vertex and edge of that channel is present here.
    pub fn contains_channel(&self, inst: &SumsetInstance) -> Result<bool> {
        let ch = self.full_channel(inst)?;
        Ok(ch.labelled_vertices().is_subset(&self.graph.labelled_vertices())
            && ch.labelled_edges().is_subset(&self.graph.labelled_edges()))
    }

    fn full_channel(&self, inst: &SumsetInstance) -> Result<HypercubeGraph> {
        let full = HypercubeGraph::addition_graph(inst);
        let h = inst.h();
        let (bottom, top) = (IndexSet::empty(h), IndexSet::full(h));
        let x: Vec<_> = self.sources().elements().iter().filter_map(|e| full.find(bottom, e)).collect();
        let y: Vec<_> = self.class_set(top).elements().iter().filter_map(|e| full.find(top, e)).collect();
        full.channel(bottom, &x, top, &y)
    }
}

/// `mu(Z) = (1/h) sum_i |(Z + B_i) \ (E + B_i)| / |Z|`.
pub fn removed_mu(inst: &SumsetInstance, e: &GSet, z: &GSet) -> Result<Rational> {
    if z.is_empty() {
        return Err(Error::EmptySet("Z"));
    }
    inst.spec().ensure_same(z.spec())?;
    inst.spec().ensure_same(e.spec())?;
    if z.elements().iter().any(|x| e.contains(x)) {
        return Err(Error::Precondition("Z must be disjoint from E".into()));
    }
    let mut total = 0u64;
    for b in inst.b() {
        let zb = minkowski_sum(z, b)?;
        let eb = minkowski_sum(e, b)?;
        total += zb.difference(&eb)?.len() as u64;
    }
    Ok(ratio(total, (inst.h() * z.len()) as u64))
}

/// `|(X + B_1 + ... + B_h) \ (E + B_1 + ... + B_h)|`.
pub fn new_top_count(inst: &SumsetInstance, e: &GSet, x: &GSet) -> Result<usize> {
    let full = IndexSet::full(inst.h());
    let xs = iterated_sumset_of(x, inst.b(), full)?;
    let es = iterated_sumset_of(e, inst.b(), full)?;
    Ok(xs.difference(&es)?.len())
}
