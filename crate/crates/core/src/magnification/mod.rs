//! Images, partial magnifications and magnification ratios.
//!
//! For a layered graph with layers `V_0..V_h`,
//! `mu_i = min over nonempty Z in V_0 of |Im(Z, V_i)| / |Z|`, where `Im(Z, Y)`
//! is the part of `Y` reachable from `Z`. Two independent routes compute it:
//! [`mu_bruteforce`] enumerates subsets, [`mu_matching`] decides `mu_i >= p/q`
//! as a Hall condition on the source-to-layer reachability graph with sources
//! replicated `p` times and targets `q` times.

mod flow;
pub mod subsets;

use alloc::vec;
use alloc::vec::Vec;

use flow::{FlowNetwork, INF};
pub use subsets::{ReachTable, SubsetScore};

use crate::hypergraph::{reachable, HypercubeGraph, IndexSet, Layered, VertexId};
use crate::rational::{candidate_fractions, ratio, Rational};
use crate::{Error, Result};

/// Default limit on `|V_0|` for subset enumeration.
pub const DEFAULT_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Brute,
    Matching,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Matching => "matching",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MagTarget {
    Level(usize),
    Index(IndexSet),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnificationResult {
    pub target: MagTarget,
    pub value: Rational,
    /// Sorted vertex ids inside `V_0`.
    pub achiever: Vec<VertexId>,
    pub method: Method,
}

fn check_sources<G: Layered + ?Sized>(g: &G, x: &[VertexId]) -> Result<()> {
    match x.iter().find(|&&v| v >= g.num_vertices() || g.layer_of(v) != 0) {
        Some(&v) => Err(Error::VertexOutsideClass { vertex: v }),
        None => Ok(()),
    }
}

fn check_layer<G: Layered + ?Sized>(g: &G, level: usize) -> Result<()> {
    if level >= g.num_layers() {
        return Err(Error::NoSuchLayer { layer: level, layers: g.num_layers() });
    }
    Ok(())
}

/// `Im(X, V_level)` for `X` inside `V_0`, sorted.
pub fn image<G: Layered + ?Sized>(g: &G, x: &[VertexId], level: usize) -> Result<Vec<VertexId>> {
    check_sources(g, x)?;
    check_layer(g, level)?;
    let seen = reachable(g, x);
    Ok(g.layer(level).iter().copied().filter(|&v| seen[v]).collect())
}

/// `Im(X, U_I)` for `X` inside `V_0`, sorted.
pub fn image_in_class(g: &HypercubeGraph, x: &[VertexId], class: IndexSet) -> Result<Vec<VertexId>> {
    check_sources(g, x)?;
    if class.h() != g.h() {
        return Err(Error::MismatchedDimension(class.h(), g.h()));
    }
    let seen = reachable(g, x);
    Ok(g.class(class).filter(|&v| seen[v]).collect())
}

/// `beta_I(Z) = |Im(Z, U_I)| / |Z|`.
pub fn beta(g: &HypercubeGraph, z: &[VertexId], class: IndexSet) -> Result<Rational> {
    if z.is_empty() {
        return Err(Error::EmptySet("Z"));
    }
    let img = image_in_class(g, z, class)?;
    Ok(ratio(img.len() as u64, distinct(z) as u64))
}

/// `beta_i(Z)` for `i = 1..h`.
pub fn betas(g: &HypercubeGraph, z: &[VertexId]) -> Result<Vec<Rational>> {
    (1..=g.h()).map(|i| beta(g, z, IndexSet::new(g.h(), &[i])?)).collect()
}

fn distinct(z: &[VertexId]) -> usize {
    let mut v = z.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Reachability from each vertex of `V_0` into `V_level`, as positions.
pub fn reach_table<G: Layered + ?Sized>(g: &G, level: usize) -> Result<ReachTable> {
    check_layer(g, level)?;
    let target = g.layer(level);
    let sources = g.layer(0);
    let rows = sources.iter().map(|&s| {
        let seen = reachable(g, &[s]);
        target.iter().enumerate().filter(|(_, &v)| seen[v]).map(|(i, _)| i).collect::<Vec<_>>()
    });
    Ok(ReachTable::new(target.len(), rows.collect::<Vec<_>>()))
}

fn guard_cap<G: Layered + ?Sized>(g: &G, cap: usize) -> Result<()> {
    let n = g.layer(0).len();
    if n == 0 {
        return Err(Error::EmptySet("V_0"));
    }
    if n > cap || n >= 64 {
        return Err(Error::CapExceeded { size: n, cap: cap.min(63) });
    }
    Ok(())
}

fn score_to_result<G: Layered + ?Sized>(g: &G, level: usize, s: SubsetScore, method: Method) -> MagnificationResult {
    let v0 = g.layer(0);
    MagnificationResult {
        target: MagTarget::Level(level),
        value: ratio(s.image, s.size),
        achiever: s.members().into_iter().map(|i| v0[i]).collect(),
        method,
    }
}

/// Exact `mu_level` over all `2^|V_0| - 1` subsets. The achiever is a
/// minimiser of least cardinality, lexicographically least in canonical
/// vertex order.
pub fn mu_bruteforce<G: Layered + ?Sized>(g: &G, level: usize, cap: usize) -> Result<MagnificationResult> {
    guard_cap(g, cap)?;
    let table = reach_table(g, level)?;
    let best = table.min_ratio(|_| true).expect("V_0 is nonempty");
    Ok(score_to_result(g, level, best, Method::Brute))
}

/// The minimal minimiser of `|Im(Z, V_1)| / |Z|`.
pub fn minimal_mu1_minimizer<G: Layered + ?Sized>(g: &G, cap: usize) -> Result<MagnificationResult> {
    mu_bruteforce(g, 1, cap)
}

/// Every subset of `V_0` achieving `mu_level`.
pub fn mu_achievers<G: Layered + ?Sized>(g: &G, level: usize, cap: usize) -> Result<Vec<Vec<VertexId>>> {
    guard_cap(g, cap)?;
    let table = reach_table(g, level)?;
    let v0 = g.layer(0);
    Ok(table.all_minimizers().into_iter().map(|s| s.members().into_iter().map(|i| v0[i]).collect()).collect())
}

struct HallOracle<'a> {
    adj: &'a [Vec<usize>],
    n_right: usize,
}

impl HallOracle<'_> {
    fn network(&self, p: u64, q: u64) -> (FlowNetwork, u64) {
        let n_left = self.adj.len();
        let s = n_left + self.n_right;
        let t = s + 1;
        let mut net = FlowNetwork::new(t + 1);
        for (u, row) in self.adj.iter().enumerate() {
            net.add_edge(s, u, p);
            for &w in row {
                net.add_edge(u, n_left + w, INF);
            }
        }
        for w in 0..self.n_right {
            net.add_edge(n_left + w, t, q);
        }
        let flow = net.max_flow(s, t);
        (net, flow)
    }

    /// `q |N(Z)| >= p |Z|` for every `Z`.
    fn feasible(&self, p: u64, q: u64) -> bool {
        self.network(p, q).1 == p * self.adj.len() as u64
    }

    /// A left set violating the condition at an infeasible `p/q`.
    fn violator(&self, p: u64, q: u64) -> Vec<usize> {
        let (net, _) = self.network(p, q);
        let side = net.residual_reachable(self.adj.len() + self.n_right);
        (0..self.adj.len()).filter(|&u| side[u]).collect()
    }
}

/// Exact `mu_level` by binary search over the candidate fractions `p/q`
/// (`p <= |V_level|`, `q <= |V_0|`) with a flow-based Hall test per probe.
/// The achiever is read off a minimum cut just above the optimum.
pub fn mu_matching<G: Layered + ?Sized>(g: &G, level: usize) -> Result<MagnificationResult> {
    check_layer(g, level)?;
    let v0 = g.layer(0);
    if v0.is_empty() {
        return Err(Error::EmptySet("V_0"));
    }
    let target = g.layer(level);
    let mut pos = vec![usize::MAX; g.num_vertices()];
    for (i, &v) in target.iter().enumerate() {
        pos[v] = i;
    }
    let adj: Vec<Vec<usize>> = v0
        .iter()
        .map(|&s| {
            let seen = reachable(g, &[s]);
            target.iter().filter(|&&v| seen[v]).map(|&v| pos[v]).collect()
        })
        .collect();
    let oracle = HallOracle { adj: &adj, n_right: target.len() };
    let candidates = candidate_fractions(target.len() as u64, v0.len() as u64);
    // candidates[0] = 0/1 is always feasible
    let (mut lo, mut hi) = (0usize, candidates.len());
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let (p, q) = candidates[mid];
        if oracle.feasible(p, q) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (p, q) = candidates[lo];
    let value = ratio(p, q);
    let achiever: Vec<usize> = match candidates.get(lo + 1) {
        Some(&(p2, q2)) => oracle.violator(p2, q2),
        None => (0..v0.len()).collect(),
    };
    let image: usize = {
        let mut hit = vec![false; target.len()];
        achiever.iter().flat_map(|&u| adj[u].iter()).for_each(|&w| hit[w] = true);
        hit.iter().filter(|&&b| b).count()
    };
    debug_assert_eq!(ratio(image as u64, achiever.len() as u64), value);
    Ok(MagnificationResult {
        target: MagTarget::Level(level),
        value,
        achiever: achiever.into_iter().map(|i| v0[i]).collect(),
        method: Method::Matching,
    })
}

/// `|Im(achiever, V_level)| / |achiever|`, recomputed from scratch.
pub fn ratio_of<G: Layered + ?Sized>(g: &G, z: &[VertexId], level: usize) -> Result<Rational> {
    if z.is_empty() {
        return Err(Error::EmptySet("Z"));
    }
    Ok(ratio(image(g, z, level)?.len() as u64, distinct(z) as u64))
}
