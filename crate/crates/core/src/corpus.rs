//! The seeded random instance corpus and random tiny hypercube graphs.
//!
//! Everything is drawn from a `ChaCha8` stream seeded with a `u64`, so a
//! parameter set and a seed determine the corpus exactly.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::{GSet, GroupSpec, SumsetInstance};
use crate::hypergraph::{HypercubeGraph, HypercubeGraphBuilder, IndexSet};
use crate::{Error, Result};

/// Seed of the reference corpus.
pub const DEFAULT_SEED: u64 = 0x5eed_2013;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusParams {
    pub count: usize,
    pub h_min: usize,
    pub h_max: usize,
    /// Moduli to draw coordinates from; `0` is `Z`.
    pub moduli: Vec<u64>,
    pub max_dim: usize,
    pub max_a: usize,
    pub max_b: usize,
    /// Coordinates on `Z` factors are drawn from `0..z_range`.
    pub z_range: i64,
    pub seed: u64,
}

impl Default for CorpusParams {
    /// 200 instances, `h` in `1..=3`, moduli from `{0, 2, ..., 12}`, one or
    /// two coordinates, `|A| <= 8`, `|B_i| <= 4`.
    fn default() -> Self {
        Self {
            count: 200,
            h_min: 1,
            h_max: 3,
            moduli: [0, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12].to_vec(),
            max_dim: 2,
            max_a: 8,
            max_b: 4,
            z_range: 8,
            seed: DEFAULT_SEED,
        }
    }
}

impl CorpusParams {
    fn validate(&self) -> Result<()> {
        let ok = self.h_min >= 1
            && self.h_min <= self.h_max
            && !self.moduli.is_empty()
            && self.max_dim >= 1
            && self.max_a >= 1
            && self.max_b >= 1
            && self.z_range >= 1;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParams("corpus parameters out of range".into()))
        }
    }
}

fn random_set<R: Rng>(rng: &mut R, spec: &GroupSpec, size: usize, z_range: i64) -> Result<GSet> {
    let target = size.min(spec.order().map_or(usize::MAX, |o| o.min(usize::MAX as u128) as usize));
    let mut set = GSet::empty(spec.clone());
    // duplicates are redrawn; the budget only matters for tiny groups
    for _ in 0..target * 16 {
        if set.len() >= target {
            break;
        }
        let coords: Vec<i64> = spec
            .moduli()
            .iter()
            .map(|&m| if m == 0 { rng.random_range(0..z_range) } else { rng.random_range(0..m as i64) })
            .collect();
        let one = GSet::from_coords(spec.clone(), [coords.as_slice()])?;
        set = set.union(&one)?;
    }
    Ok(set)
}

/// One random instance.
pub fn random_instance<R: Rng>(rng: &mut R, p: &CorpusParams) -> Result<SumsetInstance> {
    p.validate()?;
    let dim = rng.random_range(1..=p.max_dim);
    let moduli: Vec<u64> = (0..dim).map(|_| p.moduli[rng.random_range(0..p.moduli.len())]).collect();
    let spec = GroupSpec::new(moduli)?;
    let h = rng.random_range(p.h_min..=p.h_max);
    let a_size = rng.random_range(1..=p.max_a);
    let a = random_set(rng, &spec, a_size, p.z_range)?;
    let bs = (0..h)
        .map(|_| {
            let n = rng.random_range(1..=p.max_b);
            random_set(rng, &spec, n, p.z_range)
        })
        .collect::<Result<Vec<_>>>()?;
    SumsetInstance::new(a, bs)
}

/// The corpus determined by `p`.
pub fn generate(p: &CorpusParams) -> Result<Vec<SumsetInstance>> {
    p.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    (0..p.count).map(|_| random_instance(&mut rng, p)).collect()
}

/// A random hypercube graph with `1..=max_per_class` vertices in every class
/// and each admissible edge present with probability `density`.
pub fn random_hypercube_graph<R: Rng>(rng: &mut R, h: usize, max_per_class: usize, density: f64) -> Result<HypercubeGraph> {
    if max_per_class == 0 || !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidParams("need max_per_class >= 1 and density in [0, 1]".into()));
    }
    let mut b = HypercubeGraphBuilder::new(h);
    let mut ids: Vec<Vec<usize>> = Vec::new();
    for idx in IndexSet::all(h) {
        let n = rng.random_range(1..=max_per_class);
        ids.push((0..n).map(|_| b.add_vertex(idx, None)).collect());
    }
    for idx in IndexSet::all(h) {
        for up in idx.successors() {
            for &u in &ids[idx.bits() as usize] {
                for &v in &ids[up.bits() as usize] {
                    if rng.random_bool(density) {
                        b.add_edge(u, v);
                    }
                }
            }
        }
    }
    b.build()
}

/// `count` random tiny hypercube graphs with `h` in `{2, 3}`, seeded.
pub fn random_hypercube_graphs(count: usize, max_per_class: usize, seed: u64) -> Result<Vec<HypercubeGraph>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let h = rng.random_range(2..=3);
            let density = [0.35, 0.55, 0.75, 0.9][rng.random_range(0..4)];
            random_hypercube_graph(&mut rng, h, max_per_class, density)
        })
        .collect()
}
