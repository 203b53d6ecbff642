use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::removed::{new_top_count, RemovedComponentGraph};
use crate::group::{GSet, SumsetInstance};
use crate::rational::{certify_le, int, pow, power_interval, ratio, Interval, Rational, Verdict, MAX_PRECISION_BITS};
use crate::Result;

/// Which side of `min{mu_j^h, mu_1^h m}` is smaller at a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `mu_j^h <= mu_1^h m`
    Step,
    /// `mu_1^h m < mu_j^h`
    Elementary,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Step => "step",
            Regime::Elementary => "elementary",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionStep {
    /// `|E_j| = |X_1 u ... u X_{j-1}|`
    pub e_size: usize,
    pub part: GSet,
    pub mu: Rational,
    /// `|(X_j + B_1 + ... + B_h) \ (E_j + B_1 + ... + B_h)|`
    pub new_top: usize,
    /// `mu_j^h |X_j|`
    pub step_bound: Rational,
    /// `mu_1^h m |X_j|`
    pub elementary_bound: Rational,
    pub regime: Regime,
}

impl PartitionStep {
    pub fn step_holds(&self) -> bool {
        int(self.new_top as u64) <= self.step_bound
    }

    /// `min{mu_j^h, mu_1^h m} |X_j|`
    pub fn min_bound(&self) -> &Rational {
        match self.regime {
            Regime::Step => &self.step_bound,
            Regime::Elementary => &self.elementary_bound,
        }
    }
}

/// Enclosures of the irrational quantities used after the partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostics {
    pub bits: u32,
    /// `mu_* = mu_1 m^(1/h)`
    pub mu_star: Interval,
    /// `mu_1^(h-1) (m - 1) / (m^(1/h) - 1)`; absent when `m = 1`.
    pub slope: Option<Interval>,
    /// `mu_1^(h-1) (m^(1-1/h) + 2 m^(1-2/h))`
    pub slope_bound: Interval,
    /// Whether `slope <= slope_bound` could be certified.
    pub slope_estimate: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTrace {
    pub h: usize,
    pub m: usize,
    pub sumset_sizes: Vec<usize>,
    pub top: usize,
    pub steps: Vec<PartitionStep>,
    pub diagnostics: Diagnostics,
}

impl PartitionTrace {
    pub fn k(&self) -> usize {
        self.steps.len()
    }

    pub fn parts(&self) -> Vec<&GSet> {
        self.steps.iter().map(|s| &s.part).collect()
    }

    pub fn mus(&self) -> Vec<&Rational> {
        self.steps.iter().map(|s| &s.mu).collect()
    }

    pub fn mu1(&self) -> &Rational {
        &self.steps[0].mu
    }

    pub fn is_monotone(&self) -> bool {
        self.steps.windows(2).all(|w| w[0].mu <= w[1].mu)
    }

    pub fn size_sum(&self) -> usize {
        self.steps.iter().map(|s| s.part.len()).sum()
    }

    /// `sum_j mu_j |X_j|`
    pub fn weighted_sum(&self) -> Rational {
        self.steps.iter().map(|s| &s.mu * int(s.part.len() as u64)).sum()
    }

    /// `(1/h) sum_i |A + B_i|`
    pub fn weighted_target(&self) -> Rational {
        ratio(self.sumset_sizes.iter().sum::<usize>() as u64, self.h as u64)
    }

    /// `sum_j |(X_j + sum B) \ (E_j + sum B)|`, which must equal `top`.
    pub fn top_from_parts(&self) -> usize {
        self.steps.iter().map(|s| s.new_top).sum()
    }

    /// `sum_j min{mu_j^h, mu_1^h m} |X_j|`
    pub fn min_sum(&self) -> Rational {
        self.steps.iter().map(|s| s.min_bound().clone()).sum()
    }

    pub fn is_disjoint_cover(&self, a: &GSet) -> bool {
        let mut seen: Vec<_> = self.steps.iter().flat_map(|s| s.part.elements().iter().cloned()).collect();
        let n = seen.len();
        seen.sort();
        seen.dedup();
        seen.len() == n && seen.as_slice() == a.elements()
    }

    pub fn identities_hold(&self) -> bool {
        self.size_sum() == self.m && self.weighted_sum() == self.weighted_target() && self.top_from_parts() == self.top
    }

    pub fn steps_hold(&self) -> bool {
        self.steps.iter().all(PartitionStep::step_holds)
    }

    /// `|A + sum B| <= sum_j min{mu_j^h, mu_1^h m} |X_j|`
    pub fn min_chain_holds(&self) -> bool {
        int(self.top as u64) <= self.min_sum()
    }
}

/// Runs the partition loop: with `E_j = X_1 u ... u X_{j-1}`, `X_j` is the
/// minimal minimiser of the removed-component ratio over `A \ E_j`, until `E`
/// exhausts `A`.
pub fn partition_decompose(inst: &SumsetInstance, cap: usize, bits: u32) -> Result<PartitionTrace> {
    let h = inst.h();
    let m = inst.m();
    let spec = inst.spec().clone();
    let mut e = GSet::empty(spec);
    let mut steps: Vec<PartitionStep> = Vec::new();
    let mut mu1_pow_m = Rational::zero();
    while e.len() < m {
        let g = RemovedComponentGraph::new(inst, &e)?;
        let (part, mu, _) = g.minimizer(cap)?;
        let new_top = new_top_count(inst, &e, &part)?;
        let size = int(part.len() as u64);
        let e_size = e.len();
        e = e.union(&part)?;
        let mu_h = pow(&mu, h as u32);
        if steps.is_empty() {
            mu1_pow_m = &mu_h * int(m as u64);
        }
        let regime = if mu_h <= mu1_pow_m { Regime::Step } else { Regime::Elementary };
        steps.push(PartitionStep {
            e_size,
            new_top,
            step_bound: &mu_h * &size,
            elementary_bound: &mu1_pow_m * &size,
            regime,
            mu,
            part,
        });
    }
    let mu1 = steps[0].mu.clone();
    Ok(PartitionTrace {
        h,
        m,
        sumset_sizes: inst.sumset_sizes(),
        top: inst.full_sumset().len(),
        steps,
        diagnostics: diagnostics(&mu1, m as u64, h as u32, bits),
    })
}

fn slope_interval(mu1: &Rational, m: u64, h: u32, bits: u32) -> Option<Interval> {
    if m <= 1 {
        return None;
    }
    let root = power_interval(m, 1, h, bits);
    let den = root.sub(&Interval::exact(Rational::one()));
    let q = Interval::exact(int(m - 1)).div(&den)?;
    Some(q.scale(&pow(mu1, h - 1)))
}

fn slope_bound_interval(mu1: &Rational, m: u64, h: u32, bits: u32) -> Interval {
    let s = power_interval(m, h as i32 - 1, h, bits).add(&power_interval(m, h as i32 - 2, h, bits).scale(&int(2)));
    s.scale(&pow(mu1, h - 1))
}

fn diagnostics(mu1: &Rational, m: u64, h: u32, bits: u32) -> Diagnostics {
    let mu_star = power_interval(m, 1, h, bits).scale(mu1);
    let slope = slope_interval(mu1, m, h, bits);
    let slope_bound = slope_bound_interval(mu1, m, h, bits);
    let slope_estimate = if m <= 1 || mu1.is_zero() {
        Verdict::Holds
    } else {
        certify_le(bits, MAX_PRECISION_BITS, |b| {
            let rhs = slope_bound_interval(mu1, m, h, b);
            // too coarse to separate m^(1/h) from 1: force another round
            let lhs = slope_interval(mu1, m, h, b).unwrap_or_else(|| Interval::new(Rational::zero(), &rhs.hi + int(1)));
            (lhs, rhs)
        })
        .0
    };
    Diagnostics { bits, mu_star, slope, slope_bound, slope_estimate }
}
