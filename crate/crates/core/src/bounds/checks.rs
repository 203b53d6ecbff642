use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::partition::{partition_decompose, PartitionTrace};
use super::removed::{new_top_count, RemovedComponentGraph};
use super::BoundRecord;
use crate::group::{minkowski_sum, GSet, GroupSpec, SumsetInstance};
use crate::hypergraph::{HypercubeGraph, IndexSet, Layered, VertexId};
use crate::magnification::{beta, image, mu_achievers, mu_bruteforce, mu_matching, MagnificationResult, ReachTable};
use crate::rational::{
    certify_le, int, pow, power_interval, ratio, root_interval, Interval, Rational, MAX_PRECISION_BITS,
};
use crate::{Error, Result};

fn card(n: usize) -> Rational {
    int(n as u64)
}

/// `|A + B_1 + ... + B_h| <= alpha_1 ... alpha_h m^(2 - 1/h)`, compared as
/// `|A + sum B|^h <= (alpha_1 ... alpha_h)^h m^(2h - 1)`.
pub fn check_thm11(inst: &SumsetInstance, bits: u32) -> BoundRecord {
    let h = inst.h() as u32;
    let top = card(inst.full_sumset().len());
    let lhs_cleared = pow(&top, h);
    let rhs_cleared = pow(&inst.alpha_product(), h) * pow(&card(inst.m()), 2 * h - 1);
    let root = root_interval(&rhs_cleared, h, bits);
    BoundRecord::cleared("thm11", "top-sumset", top, root, lhs_cleared, rhs_cleared)
}

/// A record for `lhs <= rhs` where `rhs` is only known through enclosures.
fn enclosed(check: &'static str, name: &str, lhs: Rational, bits: u32, rhs: impl Fn(u32) -> Interval) -> BoundRecord {
    let exact = Interval::exact(lhs.clone());
    let (verdict, _, encl, _) = certify_le(bits, MAX_PRECISION_BITS, |b| (exact.clone(), rhs(b)));
    let mut r = BoundRecord::exact(check, name, lhs, Rational::zero());
    r.rhs = super::Rhs::Enclosed(encl);
    r.verdict = verdict;
    r.method = "interval";
    r
}

/// The partition procedure with every layer of the chain of estimates that
/// bounds `|A + sum B|` by the equal-`alpha` form.
///
/// `alpha` defaults to `max_i alpha_i`; a larger value may be supplied.
/// The exact combinatorial layers are theorem records; the layers that go
/// through `m^(1/h)` are diagnostics, since the final form is only claimed for
/// large `m`.
pub fn check_prop31(
    inst: &SumsetInstance,
    alpha: Option<Rational>,
    cap: usize,
    bits: u32,
) -> Result<(PartitionTrace, Vec<BoundRecord>)> {
    let tight = inst.alphas().into_iter().max().expect("h >= 1");
    let alpha = match alpha {
        Some(a) if a < tight => {
            return Err(Error::InvalidParams(format!("alpha must be at least {tight}")));
        }
        Some(a) => a,
        None => tight,
    };
    let trace = partition_decompose(inst, cap, bits)?;
    let h = inst.h() as u32;
    let m = inst.m() as u64;
    let top = card(trace.top);
    let mu1 = trace.mu1().clone();
    let mut out = Vec::new();

    out.push(BoundRecord::equality("prop31", "partition", top.clone(), card(trace.top_from_parts())));
    out.push(BoundRecord::equality("prop31", "sizes", card(trace.size_sum()), card(trace.m)));
    out.push(BoundRecord::equality("prop31", "weights", trace.weighted_sum(), trace.weighted_target()));
    let monotone = BoundRecord::exact("prop31", "monotone", mu1.clone(), trace.steps.last().expect("k >= 1").mu.clone());
    out.push(BoundRecord { verdict: crate::Verdict::from_bool(trace.is_monotone()), ..monotone });

    let step_sum: Rational = trace.steps.iter().map(|s| s.step_bound.clone()).sum();
    let mut steps = BoundRecord::exact("prop31", "steps", card(trace.top_from_parts()), step_sum);
    steps.verdict = crate::Verdict::from_bool(trace.steps_hold());
    if let Some(bad) = trace.steps.iter().find(|s| !s.step_holds()) {
        steps = steps.with_witness(bad.part.clone());
    }
    out.push(steps);
    out.push(BoundRecord::exact("prop31", "chain-min", top.clone(), trace.min_sum()));

    let sizes: Vec<(Rational, Rational)> = trace.steps.iter().map(|s| (s.mu.clone(), card(s.part.len()))).collect();
    let mu1_h = pow(&mu1, h);
    let mu1_h1 = pow(&mu1, h - 1);
    // m^(1-1/h) + 2 m^(1-2/h)
    let s = |b: u32| power_interval(m, h as i32 - 1, h, b).add(&power_interval(m, h as i32 - 2, h, b).scale(&int(2)));
    // m^(2-1/h) + 2 m^(2-2/h)
    let t = |b: u32| s(b).scale(&int(m));
    out.push(
        enclosed("prop31", "chain-line", top.clone(), bits, |b| {
            let sb = s(b);
            let mut acc = Interval::exact(Rational::zero());
            for (mu, size) in &sizes {
                let slope = sb.scale(&(&mu1_h1 * (mu - &mu1)));
                acc = acc.add(&slope.add(&Interval::exact(mu1_h.clone())).scale(size));
            }
            acc
        })
        .diagnostic(),
    );
    let gap = &alpha - &mu1;
    out.push(
        enclosed("prop31", "chain-collapsed", top.clone(), bits, |b| {
            t(b).scale(&(&gap * &mu1_h1)).add(&Interval::exact(&mu1_h * int(m)))
        })
        .diagnostic(),
    );
    let alpha_h = pow(&alpha, h);
    out.push(
        enclosed("prop31", "chain-alpha", top.clone(), bits, |b| {
            t(b).scale(&(&gap * &mu1_h1)).add(&Interval::exact(&alpha_h * int(m)))
        })
        .diagnostic(),
    );
    let c = target_constant(h);
    out.push(
        enclosed("prop31", "final", top, bits, |b| {
            t(b).scale(&(&c * &alpha_h)).add(&Interval::exact(&alpha_h * int(m)))
        })
        .diagnostic(),
    );
    Ok((trace, out))
}

/// `(1 - 1/h)^(h-1) / h`
pub fn target_constant(h: u32) -> Rational {
    pow(&(Rational::one() - ratio(1, h as u64)), h - 1) / int(h as u64)
}

/// The subset `X` of `A` minimising `|X + B_1 + ... + B_h| / |X|`, checked
/// against `alpha_1 ... alpha_h`, together with `|B_1 + ... + B_h| <=
/// alpha_1 ... alpha_h m`.
pub fn find_ruzsa_subset(inst: &SumsetInstance, cap: usize) -> Result<(GSet, Vec<BoundRecord>)> {
    let g = HypercubeGraph::addition_graph(inst);
    let r = mu_bruteforce(&g, inst.h(), cap)?;
    let x = source_set(&g, inst.spec(), &r.achiever);
    let size = card(x.len());
    let prod = inst.alpha_product();
    let subset = BoundRecord::exact("thm22", "subset", &r.value * &size, &prod * &size).with_witness(x.clone());
    let bsum = BoundRecord::exact("thm22", "b-sumset", card(inst.b_sumset().len()), &prod * card(inst.m()));
    Ok((x, alloc::vec![BoundRecord { method: "brute", ..subset }, bsum]))
}

fn source_set(g: &HypercubeGraph, spec: &GroupSpec, vs: &[VertexId]) -> GSet {
    let elems = vs.iter().filter_map(|&v| g.payload(v).cloned());
    GSet::from_elements(spec.clone(), elems).expect("payloads share the spec")
}

/// Among subsets with `|X| > (1 - eps)|A|`, the one with the least
/// `|X + sum B| / |X|`, checked against `2 eps^(1-h) alpha_1 ... alpha_h` and,
/// for `h >= 2`, against `((h eps^(1-h) - 1) / (h - 1)) alpha_1 ... alpha_h`.
pub fn find_dense_subset_eps(inst: &SumsetInstance, eps: &Rational, cap: usize) -> Result<(GSet, Vec<BoundRecord>)> {
    if !(eps > &Rational::zero() && eps < &Rational::one()) {
        return Err(Error::InvalidParams("eps must lie strictly between 0 and 1".into()));
    }
    let g = HypercubeGraph::addition_graph(inst);
    let n = g.layer(0).len();
    if n > cap {
        return Err(Error::CapExceeded { size: n, cap });
    }
    let table = crate::magnification::reach_table(&g, inst.h())?;
    let floor = (Rational::one() - eps) * card(inst.m());
    let best = table.min_ratio(|size| int(size) > floor).expect("X = A always qualifies");
    let v0 = g.layer(0);
    let members: Vec<VertexId> = best.members().into_iter().map(|i| v0[i]).collect();
    let x = source_set(&g, inst.spec(), &members);
    let lhs = card(best.image as usize);
    let size = card(x.len());
    let h = inst.h() as u32;
    let prod = inst.alpha_product();
    let inv = pow(&eps.recip(), h - 1);
    let mut out = alloc::vec![BoundRecord::exact("eps", "two", lhs.clone(), int(2) * &inv * &prod * &size)
        .with_witness(x.clone())];
    if h >= 2 {
        let c = (int(h as u64) * &inv - Rational::one()) / int((h - 1) as u64);
        out.push(BoundRecord::exact("eps", "sharp", lhs, c * &prod * &size).with_witness(x.clone()));
    }
    Ok((x, out))
}

/// Which subsets `C` of `B_1 + ... + B_h` to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetPolicy {
    All,
    Sample { n: usize, seed: u64 },
}

impl SubsetPolicy {
    /// Every subset when the sumset has at most 12 elements, else `n` samples.
    pub fn auto(inst: &SumsetInstance, n: usize, seed: u64) -> Self {
        if inst.b_sumset().len() <= 12 {
            SubsetPolicy::All
        } else {
            SubsetPolicy::Sample { n, seed }
        }
    }
}

/// `|A + C| <= (alpha_1 ... alpha_h)^(1/h) m |C|^(1 - 1/h)` for one `C`.
pub fn balister_bollobas_one(inst: &SumsetInstance, c: &GSet, bits: u32) -> Result<BoundRecord> {
    if c.is_empty() {
        return Err(Error::EmptySet("C"));
    }
    if !c.is_subset(&inst.b_sumset()) {
        return Err(Error::Precondition("C must lie inside B_1 + ... + B_h".into()));
    }
    Ok(bb_record(inst, minkowski_sum(inst.a(), c)?.len(), c.len(), bits).with_witness(c.clone()))
}

fn bb_record(inst: &SumsetInstance, ac: usize, c: usize, bits: u32) -> BoundRecord {
    let h = inst.h() as u32;
    let lhs = card(ac);
    let rhs_cleared = inst.alpha_product() * pow(&card(inst.m()), h) * pow(&card(c), h - 1);
    let root = root_interval(&rhs_cleared, h, bits);
    BoundRecord::cleared("thm21", "subset", lhs.clone(), root, pow(&lhs, h), rhs_cleared)
}

/// Exceedance of a cleared comparison, used to pick the tightest `C`.
fn slack(r: &BoundRecord) -> Rational {
    let (l, rr) = r.cleared.as_ref().expect("cleared record");
    l / rr
}

/// The subset inequality over the chosen `C`s (reporting the tightest one)
/// and its specialisation to `C = B_1 + ... + B_h`.
pub fn check_balister_bollobas(inst: &SumsetInstance, policy: SubsetPolicy, bits: u32) -> Result<Vec<BoundRecord>> {
    let bsum = inst.b_sumset();
    let shifts: Vec<GSet> = bsum
        .elements()
        .iter()
        .map(|c| minkowski_sum(inst.a(), &GSet::from_elements(inst.spec().clone(), [c.clone()]).expect("same spec")))
        .collect::<Result<_>>()?;
    let mut worst: Option<(BoundRecord, Vec<usize>)> = None;
    let mut all_hold = true;
    let mut consider = |rec: BoundRecord, members: Vec<usize>| {
        all_hold &= rec.holds();
        if worst.as_ref().is_none_or(|(w, _)| slack(&rec) > slack(w)) {
            worst = Some((rec, members));
        }
    };
    let (method, seed) = match policy {
        SubsetPolicy::All => {
            if bsum.len() >= 24 {
                return Err(Error::CapExceeded { size: bsum.len(), cap: 23 });
            }
            let target = minkowski_sum(inst.a(), &bsum)?;
            let rows: Vec<Vec<usize>> = shifts
                .iter()
                .map(|s| s.elements().iter().map(|e| target.position(e).expect("A + c lies in A + C")).collect())
                .collect();
            let table = ReachTable::new(target.len(), rows);
            table.for_each_subset(|s| {
                consider(bb_record(inst, s.image as usize, s.size as usize, bits), s.members());
            });
            ("all", None)
        }
        SubsetPolicy::Sample { n, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let k = bsum.len();
            for _ in 0..n {
                let members = loop {
                    let pick: Vec<usize> = (0..k).filter(|_| rng.random_bool(0.5)).collect();
                    if !pick.is_empty() {
                        break pick;
                    }
                };
                let mut union = GSet::empty(inst.spec().clone());
                for &i in &members {
                    union = union.union(&shifts[i])?;
                }
                consider(bb_record(inst, union.len(), members.len(), bits), members);
            }
            ("sample", Some(seed))
        }
    };
    let (mut rec, members) = worst.expect("at least one subset");
    rec.verdict = crate::Verdict::from_bool(all_hold);
    rec.witness = Some(bsum.select(&members));
    rec.method = method;
    rec.seed = seed;
    let full = bb_record(inst, inst.full_sumset().len(), bsum.len(), bits);
    Ok(alloc::vec![rec, BoundRecord { name: "full-sumset".into(), ..full }])
}

/// With `X` the minimal minimiser over `A \ E`,
/// `|(X + sum B) \ (E + sum B)| <= mu^h |X|`, also reported cleared as
/// `lhs h^h |X|^(h-1) <= (h mu |X|)^h`.
pub fn check_cor518(inst: &SumsetInstance, e: &GSet, cap: usize) -> Result<BoundRecord> {
    let g = RemovedComponentGraph::new(inst, e)?;
    let (x, mu, _) = g.minimizer(cap)?;
    let h = inst.h() as u32;
    let lhs = card(new_top_count(inst, e, &x)?);
    let size = card(x.len());
    let rhs = pow(&mu, h) * &size;
    let hh = int(h as u64);
    let cleared = (&lhs * pow(&hh, h) * pow(&size, h - 1), pow(&(&hh * &mu * &size), h));
    let mut r = BoundRecord::exact("cor518", "removed", lhs, rhs).with_witness(x);
    r.cleared = Some(cleared);
    Ok(r)
}

/// Up to `n` distinct proper subsets `E` of `A` with `|E| <= max_size`,
/// drawn with the given seed; all of them when there are at most `n`.
pub fn sample_removed_sets(inst: &SumsetInstance, max_size: usize, n: usize, seed: u64) -> Vec<GSet> {
    let m = inst.m();
    let max = max_size.min(m - 1);
    let mut all: Vec<Vec<usize>> = Vec::new();
    let mut pick = Vec::new();
    subsets_upto(m, max, 0, &mut pick, &mut all);
    if all.len() > n {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..n {
            let j = rng.random_range(i..all.len());
            all.swap(i, j);
        }
        all.truncate(n);
    }
    all.iter().map(|pos| inst.a().select(pos)).collect()
}

/// Position lists of size at most `max` in lexicographic order.
fn subsets_upto(m: usize, max: usize, from: usize, pick: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(pick.clone());
    if pick.len() == max {
        return;
    }
    for i in from..m {
        pick.push(i);
        subsets_upto(m, max, i + 1, pick, out);
        pick.pop();
    }
}

fn graph_mu<G: Layered + ?Sized>(g: &G, level: usize, cap: usize) -> Result<MagnificationResult> {
    if g.layer(0).len() <= cap {
        mu_bruteforce(g, level, cap)
    } else {
        mu_matching(g, level)
    }
}

fn witness_of(g: &HypercubeGraph, spec: Option<&GroupSpec>, vs: &[VertexId]) -> Option<GSet> {
    spec.map(|s| source_set(g, s, vs))
}

/// `mu_h <= mu_1^h`, `mu_h <= (mu_1 / h)^h` and `mu_h <= beta_1(Z) ... beta_h(Z)`
/// for every nonempty `Z` (reporting the smallest product).
pub fn check_thm515(g: &HypercubeGraph, spec: Option<&GroupSpec>, cap: usize) -> Result<Vec<BoundRecord>> {
    let h = g.h();
    let mu1 = mu_bruteforce(g, 1, cap)?;
    let muh = mu_bruteforce(g, h, cap)?;
    let h32 = h as u32;
    let mut out = alloc::vec![
        BoundRecord::exact("thm515", "plunnecke", muh.value.clone(), pow(&mu1.value, h32)),
        BoundRecord::exact("thm515", "mu", muh.value.clone(), pow(&(&mu1.value / int(h as u64)), h32)),
    ];
    let tables: Vec<ReachTable> = (1..=h)
        .map(|i| class_table(g, IndexSet::new(h, &[i]).expect("in range")))
        .collect::<Result<_>>()?;
    let mut best: Option<(Rational, u64)> = None;
    tables[0].for_each_subset(|s| {
        let size = int(s.size);
        let prod: Rational = tables.iter().map(|t| int(t.image_size(s.mask)) / &size).product();
        if best.as_ref().is_none_or(|(b, _)| &prod < b) {
            best = Some((prod, s.mask));
        }
    });
    let (prod, mask) = best.expect("V_0 is nonempty");
    let v0 = g.layer(0);
    let z: Vec<VertexId> = (0..v0.len()).filter(|&i| mask & (1 << i) != 0).map(|i| v0[i]).collect();
    let mut rec = BoundRecord::exact("thm515", "beta", muh.value, prod);
    rec.witness = witness_of(g, spec, &z);
    out.push(rec);
    for r in &mut out {
        r.method = "brute";
    }
    Ok(out)
}

fn class_table(g: &HypercubeGraph, class: IndexSet) -> Result<ReachTable> {
    let targets: Vec<VertexId> = g.class(class).collect();
    let start = targets.first().copied().unwrap_or(0);
    let rows = g
        .layer(0)
        .iter()
        .map(|&s| crate::magnification::image_in_class(g, &[s], class).map(|img| img.into_iter().map(|v| v - start)))
        .map(|r| r.map(|it| it.collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    Ok(ReachTable::new(targets.len(), rows))
}

/// `|Im(X, V_h)| <= (mu_1 / h)^h |X|` for every achiever `X` of `mu_1`.
pub fn check_thm517(g: &HypercubeGraph, spec: Option<&GroupSpec>, cap: usize) -> Result<Vec<BoundRecord>> {
    let h = g.h();
    let mu1 = mu_bruteforce(g, 1, cap)?.value;
    let scaled = pow(&(&mu1 / int(h as u64)), h as u32);
    mu_achievers(g, 1, cap)?
        .into_iter()
        .enumerate()
        .map(|(k, x)| {
            let top = card(image(g, &x, h)?.len());
            let size = card(x.len());
            let hh = int(h as u64);
            let lhs_cleared = &top * pow(&hh, h as u32) * pow(&size, h as u32 - 1);
            let rhs_cleared = pow(&(&mu1 * &size), h as u32);
            let mut r = BoundRecord::exact("thm517", &format!("achiever-{k}"), top, &scaled * &size);
            r.cleared = Some((lhs_cleared, rhs_cleared));
            r.witness = witness_of(g, spec, &x);
            Ok(r)
        })
        .collect()
}

/// `mu_h(G1 x G2) = mu_h(G1) mu_h(G2)` and, for the `mu_1` achievers `Z1`,
/// `Z2`, `beta_i(Z1 x Z2) = beta_i(Z1) beta_i(Z2)`.
pub fn check_lemma513(g1: &HypercubeGraph, g2: &HypercubeGraph, cap: usize) -> Result<Vec<BoundRecord>> {
    let p = g1.product(g2)?;
    let h = g1.h();
    let a = graph_mu(g1, h, cap)?;
    let b = graph_mu(g2, h, cap)?;
    let c = graph_mu(&p, h, cap)?;
    let mut top = BoundRecord::equality("lemma513", "top-ratio", c.value, &a.value * &b.value);
    top.method = c.method.as_str();
    let mut out = alloc::vec![top];
    let z1 = graph_mu(g1, 1, cap)?.achiever;
    let z2 = graph_mu(g2, 1, cap)?.achiever;
    let n2 = g2.layer(0).len();
    let zp: Vec<VertexId> = z1.iter().flat_map(|&x| z2.iter().map(move |&y| x * n2 + y)).collect();
    for i in 1..=h {
        let class = IndexSet::new(h, &[i])?;
        let lhs = beta(&p, &zp, class)?;
        let rhs = beta(g1, &z1, class)? * beta(g2, &z2, class)?;
        out.push(BoundRecord::equality("lemma512", &format!("beta-{i}"), lhs, rhs));
    }
    Ok(out)
}
