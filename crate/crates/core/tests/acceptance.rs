//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use sumset_core::bounds::{
    check_balister_bollobas, check_cor518, check_lemma513, check_prop31, check_thm11, check_thm515, check_thm517,
    find_ruzsa_subset, partition_decompose, sample_removed_sets, target_constant, BoundRecord, Kind, RemovedComponentGraph, SubsetPolicy,
};
use sumset_core::extremal::{
    build_section4_example, enumerate_section4, predicted_cardinalities, sharpness_ratio, ExtremalParams,
    DEFAULT_BUDGET,
};
use sumset_core::hypergraph::{check_square_commutativity, Layered, SqCommMethod};
use sumset_core::magnification::{mu_bruteforce, mu_matching, ratio_of, DEFAULT_CAP};
use sumset_core::rational::{int, to_f64, DEFAULT_PRECISION_BITS};
use sumset_core::{HypercubeGraph, Interval, Rational, SumsetInstance};

const BITS: u32 = DEFAULT_PRECISION_BITS;
const SWEEP: [u64; 4] = [2, 4, 8, 16];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

/// Tallies failures and remembers the first one.
#[derive(Default)]
struct Tally {
    checked: usize,
    failed: usize,
    first: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    fn theorem_records(&mut self, idx: usize, recs: &[BoundRecord]) {
        for r in recs.iter().filter(|r| r.kind == Kind::Theorem) {
            self.record(r.holds(), || format!("instance {idx}: {}/{}", r.check, r.name));
        }
    }

    fn outcome(&self, label: &str) -> Outcome {
        let mut detail = format!("{} {label}, {} failed", self.checked, self.failed);
        if let Some(f) = &self.first {
            detail.push_str(&format!("; first: {f}"));
        }
        Outcome::new(self.failed == 0, detail)
    }
}

fn mid(i: &Interval) -> f64 {
    (to_f64(&i.lo) + to_f64(&i.hi)) / 2.0
}

fn extremal_exactness() -> Outcome {
    let start = Instant::now();
    let mut t = Tally::default();
    for a in SWEEP {
        let p = ExtremalParams::new(2, a, 2).expect("valid parameters");
        let inst = build_section4_example(&p, DEFAULT_BUDGET).expect("within budget");
        let c = enumerate_section4(&p, &inst).expect("enumeration");
        let pr = predicted_cardinalities(&p);
        let b = int(p.b());
        t.record(int(c.m as u64) == pr.m && c.m as u64 == a * a + a, || format!("a={a}: |A|={}", c.m));
        for &s in &c.sums_with_bi {
            t.record(int(s as u64) == pr.sum_with_bi_upper && s as u64 == 2 * a * p.b(), || format!("a={a}: |A+B_i|={s}"));
        }
        t.record(int(c.top as u64) == pr.top, || format!("a={a}: top={} predicted {}", c.top, pr.top));
        t.record(int(c.top as u64) >= &int(a) * &b * &b, || format!("a={a}: top below a b^2"));
        t.record(int(c.top as u64) >= pr.lower_bound, || format!("a={a}: top below lower bound"));
        t.record(c.a1_a2_disjoint && c.a2_translates_disjoint, || format!("a={a}: disjointness"));
    }
    let elapsed = start.elapsed();
    let mut o = t.outcome("cardinalities");
    o.pass &= elapsed < Duration::from_secs(60);
    o.detail.push_str(&format!("; {:.1}s of 60s", elapsed.as_secs_f64()));
    o
}

fn sharpness_trend() -> Outcome {
    let target = to_f64(&target_constant(2));
    let mut tight = Vec::new();
    let mut fixed = Vec::new();
    for a in SWEEP {
        let p = ExtremalParams::new(2, a, 2).expect("valid parameters");
        let inst = build_section4_example(&p, DEFAULT_BUDGET).expect("within budget");
        let top = inst.full_sumset().len() as u64;
        let m = inst.m() as u64;
        tight.push(mid(&sharpness_ratio(top, &inst.alphas(), m, BITS)));
        let alpha = predicted_cardinalities(&p).alpha;
        fixed.push(mid(&sharpness_ratio(top, &[alpha.clone(), alpha], m, BITS)));
    }
    let approaching = tight.windows(2).all(|w| (w[1] - target).abs() < (w[0] - target).abs());
    let last = *tight.last().expect("nonempty sweep");
    let in_range = (0.22..=0.26).contains(&last);
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(" ");
    Outcome::new(
        approaching && in_range,
        format!(
            "tight alpha ratios [{}] toward {target}: approaching={approaching}, a=16 in [0.22, 0.26]={in_range}; \
             with alpha=(1+1/(h-1))l: [{}]",
            fmt(&tight),
            fmt(&fixed)
        ),
    )
}

fn theorem_suite(corpus: &[SumsetInstance]) -> Outcome {
    let start = Instant::now();
    let mut t = Tally::default();
    let seed = 0xe5e7;
    for (idx, inst) in corpus.iter().enumerate() {
        t.theorem_records(idx, &[check_thm11(inst, BITS)]);
        t.theorem_records(idx, &find_ruzsa_subset(inst, DEFAULT_CAP).expect("ruzsa").1);
        let policy = SubsetPolicy::auto(inst, 50, idx as u64);
        t.theorem_records(idx, &check_balister_bollobas(inst, policy, BITS).expect("subset inequality"));
        for e in sample_removed_sets(inst, 3, 10, seed ^ idx as u64) {
            t.theorem_records(idx, &[check_cor518(inst, &e, DEFAULT_CAP).expect("removed graph")]);
        }
        t.theorem_records(idx, &check_prop31(inst, None, DEFAULT_CAP, BITS).expect("partition").1);
    }
    let elapsed = start.elapsed();
    let mut o = t.outcome("theorem records");
    o.pass &= elapsed < Duration::from_secs(600);
    o.detail.push_str(&format!(" over {} instances; {:.1}s of 600s", corpus.len(), elapsed.as_secs_f64()));
    o
}

fn passes(g: &HypercubeGraph) -> bool {
    check_square_commutativity(g, SqCommMethod::Matching).passed()
}

/// The 20 smallest graphs by vertex count, split as evenly as possible over
/// the values of `h`, so that each has partners to multiply with.
fn product_pool(graphs: &[HypercubeGraph]) -> Vec<&HypercubeGraph> {
    let mut hs: Vec<usize> = graphs.iter().map(HypercubeGraph::h).collect();
    hs.sort_unstable();
    hs.dedup();
    let mut pool = Vec::new();
    for (k, &h) in hs.iter().enumerate() {
        let quota = (20 - pool.len()) / (hs.len() - k);
        let mut same: Vec<&HypercubeGraph> = graphs.iter().filter(|g| g.h() == h).collect();
        same.sort_by_key(|g| g.num_vertices());
        pool.extend(same.into_iter().take(quota));
    }
    pool
}

fn graph_invariants(corpus: &[SumsetInstance]) -> Outcome {
    let mut t = Tally::default();
    let mut rng = common::rng(0x9a7);
    let seed = 0x9a7;
    let graphs: Vec<HypercubeGraph> = corpus.iter().map(HypercubeGraph::addition_graph).collect();
    for (idx, (inst, g)) in corpus.iter().zip(&graphs).enumerate() {
        t.record(passes(g), || format!("instance {idx}: addition graph"));
        for e in sample_removed_sets(inst, 3, 10, seed ^ idx as u64) {
            if e.len() == inst.m() {
                continue;
            }
            let r = RemovedComponentGraph::new(inst, &e).expect("proper subset");
            t.record(passes(r.graph()), || format!("instance {idx}: removed graph for E={e:?}"));
        }
        for _ in 0..10 {
            let (from, x, to, y) = common::channel_request(g, &mut rng);
            let ch = g.channel(from, &x, to, &y).expect("channel");
            t.record(passes(&ch), || format!("instance {idx}: channel {from:?}->{to:?}"));
        }
        t.theorem_records(idx, &check_thm515(g, Some(inst.spec()), DEFAULT_CAP).expect("graph bounds"));
        t.theorem_records(idx, &check_thm517(g, Some(inst.spec()), DEFAULT_CAP).expect("achiever bounds"));
    }
    let pool = product_pool(&graphs);
    let mut products = 0;
    for (i, g1) in pool.iter().enumerate() {
        for g2 in pool[i..].iter().filter(|g2| g2.h() == g1.h()) {
            products += 1;
            let p = g1.product(g2).expect("same h");
            t.record(passes(&p), || format!("product {products}: square commutativity"));
            t.record(p.hat() == g1.hat().tensor(&g2.hat()).expect("same depth"), || format!("product {products}: hat"));
            t.theorem_records(products, &check_lemma513(g1, g2, DEFAULT_CAP).expect("product ratios"));
        }
    }
    let mut o = t.outcome("graph checks");
    o.detail.push_str(&format!(" ({} graphs, {products} products)", graphs.len()));
    o
}

fn oracle_equivalence(corpus: &[SumsetInstance]) -> Outcome {
    let mut t = Tally::default();
    let mut graphs = 0;
    for (idx, g) in corpus.iter().map(HypercubeGraph::addition_graph).enumerate() {
        if g.layer(0).len() > 12 {
            continue;
        }
        graphs += 1;
        for level in [1, g.h()] {
            let brute = mu_bruteforce(&g, level, DEFAULT_CAP).expect("brute");
            let flow = mu_matching(&g, level).expect("matching");
            t.record(brute.value == flow.value, || {
                format!("instance {idx} level {level}: {} vs {}", brute.value, flow.value)
            });
            for r in [&brute, &flow] {
                let achieved: Rational = ratio_of(&g, &r.achiever, level).expect("nonempty achiever");
                t.record(achieved == r.value, || format!("instance {idx} level {level}: {:?} achiever", r.method));
            }
        }
    }
    let mut o = t.outcome("comparisons");
    o.detail.push_str(&format!(" on {graphs} graphs"));
    o
}

fn partition_invariants(corpus: &[SumsetInstance]) -> Outcome {
    let mut t = Tally::default();
    for (idx, inst) in corpus.iter().enumerate() {
        let a = partition_decompose(inst, DEFAULT_CAP, BITS).expect("partition");
        let b = partition_decompose(inst, DEFAULT_CAP, BITS).expect("partition");
        t.record(a.is_monotone(), || format!("instance {idx}: monotone"));
        t.record(a.size_sum() == inst.m() && a.is_disjoint_cover(inst.a()), || format!("instance {idx}: cover"));
        t.record(a.weighted_sum() == a.weighted_target(), || format!("instance {idx}: weights"));
        t.record(a.steps_hold(), || format!("instance {idx}: step inequality"));
        t.record(a == b, || format!("instance {idx}: determinism"));
    }
    t.outcome("trace checks")
}

fn hall_cross_validation() -> Outcome {
    let mut t = Tally::default();
    let mut failing = 0;
    for (idx, g) in common::tiny_graphs(0x4a11).iter().enumerate() {
        let fast = check_square_commutativity(g, SqCommMethod::Matching);
        let slow = check_square_commutativity(g, SqCommMethod::Exhaustive);
        failing += usize::from(!slow.passed());
        t.record(fast.passed() == slow.passed(), || format!("graph {idx}"));
    }
    let mut o = t.outcome("graphs");
    o.pass &= t.checked == 50;
    o.detail.push_str(&format!(" ({failing} not square commutative)"));
    o
}

fn main() {
    let corpus = common::corpus();
    type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("extremal exactness", Box::new(extremal_exactness)),
        ("sharpness trend", Box::new(sharpness_trend)),
        ("theorem suite", Box::new(|| theorem_suite(&corpus))),
        ("graph invariants", Box::new(|| graph_invariants(&corpus))),
        ("oracle equivalence", Box::new(|| oracle_equivalence(&corpus))),
        ("partition invariants", Box::new(|| partition_invariants(&corpus))),
        ("hall cross-validation", Box::new(hall_cross_validation)),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Outcome::new(false, "panicked"));
        failed += usize::from(!o.pass);
        println!(
            "criterion {} {name}: {} ({}) [{:.1}s]",
            n + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
