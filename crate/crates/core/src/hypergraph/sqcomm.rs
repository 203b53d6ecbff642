//! Square commutativity.
//!
//! For a chain `I -> I' -> I''` with associate `I'_c`:
//!
//! * upward: fix `v in U_I`, `v' in U_I'` with `v -> v'`, and let `D` be the
//!   successors of `v'` in `U_I''`. Every sub-collection of `D` needs distinct
//!   representatives `w in U_I'_c` with `v -> w -> v''`. By Hall's theorem that
//!   is a matching saturating `D`.
//! * downward: fix `v'' in U_I''`, `v' in U_I'` with `v' -> v''`, and let `D`
//!   be the predecessors of `v'` in `U_I`. Each `v in D` needs a distinct
//!   `w in U_I'_c` with `v -> w -> v''`.
//!
//! Each `(v, v')` (resp. `(v', v'')`) pair is tested on its own.

use alloc::boxed::Box;
use alloc::vec::Vec;

use super::matching::{exhaustive_violator, hall_violator};
use super::{HypercubeGraph, IndexSet, Layered, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SqCommMethod {
    /// One saturating-matching test per configuration.
    #[default]
    Matching,
    /// Backtracking over every sub-collection. Exponential in the size of `D`.
    Exhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Upward,
    Downward,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqCommWitness {
    pub direction: Direction,
    /// `(I, I', I'')`
    pub chain: (IndexSet, IndexSet, IndexSet),
    pub associate: IndexSet,
    /// `(v, v')` for upward, `(v', v'')` for downward.
    pub fixed: (VertexId, VertexId),
    /// Sub-collection of `D` without distinct representatives.
    pub violator: Vec<VertexId>,
    /// Its neighbourhood in `U_I'_c` (smaller than the violator).
    pub neighbourhood: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SqCommVerdict {
    Pass,
    Fail(Box<SqCommWitness>),
}

impl SqCommVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, SqCommVerdict::Pass)
    }

    pub fn witness(&self) -> Option<&SqCommWitness> {
        match self {
            SqCommVerdict::Pass => None,
            SqCommVerdict::Fail(w) => Some(w),
        }
    }
}

pub fn check_square_commutativity(g: &HypercubeGraph, method: SqCommMethod) -> SqCommVerdict {
    let h = g.h();
    for lower in IndexSet::all(h) {
        for mid in lower.successors() {
            for upper in mid.successors() {
                let assoc = mid.associate(lower, upper).expect("chain by construction");
                if let Some(w) = check_upward(g, lower, mid, upper, assoc, method) {
                    return SqCommVerdict::Fail(Box::new(w));
                }
                if let Some(w) = check_downward(g, lower, mid, upper, assoc, method) {
                    return SqCommVerdict::Fail(Box::new(w));
                }
            }
        }
    }
    SqCommVerdict::Pass
}

fn in_class(g: &HypercubeGraph, vs: &[VertexId], class: IndexSet) -> Vec<VertexId> {
    vs.iter().copied().filter(|&v| g.class_of(v) == class).collect()
}

/// Runs the chosen decision procedure on `D` (left) against `right`.
fn violator(
    d: &[VertexId],
    right: &[VertexId],
    linked: impl Fn(VertexId, VertexId) -> bool,
    method: SqCommMethod,
) -> Option<(Vec<VertexId>, Vec<VertexId>)> {
    let adj: Vec<Vec<usize>> =
        d.iter().map(|&x| (0..right.len()).filter(|&j| linked(x, right[j])).collect()).collect();
    let (s, n) = match method {
        SqCommMethod::Matching => hall_violator(&adj, right.len())?,
        SqCommMethod::Exhaustive => {
            let s = exhaustive_violator(&adj, right.len())?;
            let mut n: Vec<usize> = s.iter().flat_map(|&i| adj[i].iter().copied()).collect();
            n.sort_unstable();
            n.dedup();
            (s, n)
        }
    };
    Some((s.into_iter().map(|i| d[i]).collect(), n.into_iter().map(|j| right[j]).collect()))
}

fn check_upward(
    g: &HypercubeGraph,
    lower: IndexSet,
    mid: IndexSet,
    upper: IndexSet,
    assoc: IndexSet,
    method: SqCommMethod,
) -> Option<SqCommWitness> {
    for v in g.class(lower) {
        let right = in_class(g, g.successors(v), assoc);
        for &v1 in g.successors(v) {
            if g.class_of(v1) != mid {
                continue;
            }
            let d = in_class(g, g.successors(v1), upper);
            if d.is_empty() {
                continue;
            }
            if let Some((violator, neighbourhood)) = violator(&d, &right, |x, w| g.has_edge(w, x), method) {
                return Some(SqCommWitness {
                    direction: Direction::Upward,
                    chain: (lower, mid, upper),
                    associate: assoc,
                    fixed: (v, v1),
                    violator,
                    neighbourhood,
                });
            }
        }
    }
    None
}

fn check_downward(
    g: &HypercubeGraph,
    lower: IndexSet,
    mid: IndexSet,
    upper: IndexSet,
    assoc: IndexSet,
    method: SqCommMethod,
) -> Option<SqCommWitness> {
    for v2 in g.class(upper) {
        let right = in_class(g, g.predecessors(v2), assoc);
        for &v1 in g.predecessors(v2) {
            if g.class_of(v1) != mid {
                continue;
            }
            let d = in_class(g, g.predecessors(v1), lower);
            if d.is_empty() {
                continue;
            }
            if let Some((violator, neighbourhood)) = violator(&d, &right, |x, w| g.has_edge(x, w), method) {
                return Some(SqCommWitness {
                    direction: Direction::Downward,
                    chain: (lower, mid, upper),
                    associate: assoc,
                    fixed: (v1, v2),
                    violator,
                    neighbourhood,
                });
            }
        }
    }
    None
}
