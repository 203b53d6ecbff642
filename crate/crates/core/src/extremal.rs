//! Extremal instances: the construction in `Z_b^k` that makes the top sumset
//! large relative to `alpha^h m^(2 - 1/h)`, and lifting by free generators.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::bounds::target_constant;
use crate::group::{direct_product, minkowski_sum, GSet, GroupSpec, SumsetInstance};
use crate::rational::{int, pow, power_interval, Interval, Rational};
use crate::{Error, Result};

/// Default cap on the number of elements of the top sumset.
pub const DEFAULT_BUDGET: u128 = 5_000_000;

/// Parameters `h >= 2`, `a` divisible by `h - 1`, `l >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtremalParams {
    h: u32,
    a: u64,
    l: u64,
}

impl ExtremalParams {
    pub fn new(h: u32, a: u64, l: u64) -> Result<Self> {
        if h < 2 {
            return Err(Error::InvalidParams("h must be at least 2".into()));
        }
        if a == 0 || l == 0 {
            return Err(Error::InvalidParams("a and l must be positive".into()));
        }
        if !a.is_multiple_of(h as u64 - 1) {
            return Err(Error::InvalidParams(alloc::format!("a = {a} is not divisible by h - 1 = {}", h - 1)));
        }
        let p = Self { h, a, l };
        p.checked_k().ok_or(Error::Overflow)?;
        Ok(p)
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    /// `b = l a`
    pub fn b(&self) -> u64 {
        self.l * self.a
    }

    /// `|A_2| = a^(h-1) / (h-1)`
    pub fn a2_count(&self) -> u64 {
        self.a.pow(self.h - 1) / (self.h as u64 - 1)
    }

    fn checked_k(&self) -> Option<u64> {
        let p = self.a.checked_pow(self.h - 1)?;
        (self.h as u64).checked_add(p / (self.h as u64 - 1))
    }

    /// `k = h + a^(h-1) / (h-1)`
    pub fn k(&self) -> u64 {
        self.h as u64 + self.a2_count()
    }
}

/// Closed-form cardinalities of the construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Predicted {
    /// `a^h + a^(h-1)/(h-1)`
    pub m: Rational,
    /// `b a^(h-1) (1 + 1/(h-1))`, which is also the exact `|A + B_i|`
    pub sum_with_bi_upper: Rational,
    /// `(a^(h-1)/(h-1)) b^h`
    pub lower_bound: Rational,
    /// `(1 - 1/h)^(h-1) / h`
    pub target_constant: Rational,
    /// `(1 + 1/(h-1)) l`
    pub alpha: Rational,
    /// `b^h (1 + a^(h-1)/(h-1))`, the exact top sumset size
    pub top: Rational,
}

pub fn predicted_cardinalities(p: &ExtremalParams) -> Predicted {
    let h = p.h;
    let a = int(p.a);
    let b = int(p.b());
    let hm1 = int(h as u64 - 1);
    let a2 = pow(&a, h - 1) / &hm1;
    let stretch = Rational::one() + hm1.recip();
    Predicted {
        m: pow(&a, h) + &a2,
        sum_with_bi_upper: &b * pow(&a, h - 1) * &stretch,
        lower_bound: &a2 * pow(&b, h),
        target_constant: target_constant(h),
        alpha: stretch * int(p.l),
        top: pow(&b, h) * (Rational::one() + a2),
    }
}

fn predicted_top(p: &ExtremalParams) -> Option<u128> {
    let bh = (p.b() as u128).checked_pow(p.h)?;
    bh.checked_mul(1 + p.a2_count() as u128)
}

/// `A = A_1 u A_2` and `B_i = Z_b e_i` in `Z_b^k`: `A_1` has coordinates
/// `1..h` in `{0, l, ..., (a-1) l}` and zero elsewhere, `A_2` is the unit
/// vectors `e_{h+1}, ..., e_k`.
///
/// Fails with [`Error::BudgetExceeded`] before allocating when the top sumset
/// would have more than `budget` elements.
pub fn build_section4_example(p: &ExtremalParams, budget: u128) -> Result<SumsetInstance> {
    let predicted = predicted_top(p).unwrap_or(u128::MAX);
    if predicted > budget {
        return Err(Error::BudgetExceeded { predicted, budget });
    }
    let h = p.h as usize;
    let k = p.k() as usize;
    let b = p.b();
    let spec = GroupSpec::cyclic_power(b, k);
    let mut a = Vec::new();
    let count = p.a.pow(p.h);
    for mut code in 0..count {
        let mut x = vec![0i64; k];
        for xi in x.iter_mut().take(h) {
            let (q, r) = code.div_rem(&p.a);
            *xi = (r * p.l) as i64;
            code = q;
        }
        a.push(x);
    }
    for j in h..k {
        let mut x = vec![0i64; k];
        x[j] = 1;
        a.push(x);
    }
    let a = GSet::from_coords(spec.clone(), a.iter().map(Vec::as_slice))?;
    let bs = (0..h)
        .map(|i| {
            let rows: Vec<Vec<i64>> = (0..b)
                .map(|t| {
                    let mut x = vec![0i64; k];
                    x[i] = t as i64;
                    x
                })
                .collect();
            GSet::from_coords(spec.clone(), rows.iter().map(Vec::as_slice))
        })
        .collect::<Result<Vec<_>>>()?;
    SumsetInstance::new(a, bs)
}

/// Enumerated cardinalities of a constructed instance, next to the
/// structural facts the count relies on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalCounts {
    pub m: usize,
    pub sums_with_bi: Vec<usize>,
    pub top: usize,
    /// `|A_1 + B_i|` for each `i`
    pub a1_sums: Vec<usize>,
    /// `|A_2 + B_i|` for each `i`
    pub a2_sums: Vec<usize>,
    /// `A_1 + B_i` and `A_2 + B_i` are disjoint for every `i`.
    pub a1_a2_disjoint: bool,
    /// The sets `a + B_1 + ... + B_h`, `a` in `A_2`, are pairwise disjoint.
    pub a2_translates_disjoint: bool,
}

pub fn enumerate_section4(p: &ExtremalParams, inst: &SumsetInstance) -> Result<ExtremalCounts> {
    let h = p.h as usize;
    let (a1, a2): (Vec<_>, Vec<_>) = inst.a().elements().iter().cloned().partition(|x| x.coords()[h..].iter().all(|&c| c == 0));
    let a1 = GSet::from_elements(inst.spec().clone(), a1)?;
    let a2 = GSet::from_elements(inst.spec().clone(), a2)?;
    let mut a1_sums = Vec::new();
    let mut a2_sums = Vec::new();
    let mut a1_a2_disjoint = true;
    for b in inst.b() {
        let s1 = minkowski_sum(&a1, b)?;
        let s2 = minkowski_sum(&a2, b)?;
        a1_a2_disjoint &= s1.elements().iter().all(|x| !s2.contains(x));
        a1_sums.push(s1.len());
        a2_sums.push(s2.len());
    }
    let bsum = inst.b_sumset();
    let mut seen = GSet::empty(inst.spec().clone());
    let mut a2_translates_disjoint = true;
    for x in a2.elements() {
        let t = minkowski_sum(&GSet::from_elements(inst.spec().clone(), [x.clone()])?, &bsum)?;
        a2_translates_disjoint &= t.elements().iter().all(|y| !seen.contains(y));
        seen = seen.union(&t)?;
    }
    Ok(ExtremalCounts {
        m: inst.m(),
        sums_with_bi: inst.sumset_sizes(),
        top: inst.full_sumset().len(),
        a1_sums,
        a2_sums,
        a1_a2_disjoint,
        a2_translates_disjoint,
    })
}

/// `top / (alpha_1 ... alpha_h m^(2 - 1/h))` for the given alphas.
pub fn sharpness_ratio(top: u64, alphas: &[Rational], m: u64, bits: u32) -> Interval {
    let h = alphas.len() as u32;
    let prod: Rational = alphas.iter().product();
    let den = power_interval(m, 2 * h as i32 - 1, h, bits).scale(&prod);
    Interval::exact(int(top)).div(&den).expect("m >= 1 and alphas positive")
}

/// `T_1, ..., T_h` of the given sizes as standard basis vectors on fresh `Z`
/// coordinates; `A' = A x {0}` and `B_i' = B_i x T_i`.
pub fn lift_with_generators(inst: &SumsetInstance, sizes: &[u64], budget: u128) -> Result<SumsetInstance> {
    let h = inst.h();
    if sizes.len() != h {
        return Err(Error::DimensionMismatch { expected: h, got: sizes.len() });
    }
    if sizes.contains(&0) {
        return Err(Error::InvalidParams("generator block sizes must be positive".into()));
    }
    let predicted = sizes
        .iter()
        .try_fold(inst.full_sumset().len() as u128, |acc, &n| acc.checked_mul(n as u128))
        .unwrap_or(u128::MAX);
    if predicted > budget {
        return Err(Error::BudgetExceeded { predicted, budget });
    }
    let total: u64 = sizes.iter().sum();
    let fresh = GroupSpec::free(total as usize);
    let zero = GSet::from_elements(fresh.clone(), [fresh.zero()])?;
    let a = direct_product(inst.a(), &zero);
    let mut offset = 0usize;
    let mut bs = Vec::with_capacity(h);
    for (bi, &n) in inst.b().iter().zip(sizes) {
        let rows: Vec<Vec<i64>> = (0..n as usize)
            .map(|t| {
                let mut x = vec![0i64; total as usize];
                x[offset + t] = 1;
                x
            })
            .collect();
        let t = GSet::from_coords(fresh.clone(), rows.iter().map(Vec::as_slice))?;
        bs.push(direct_product(bi, &t));
        offset += n as usize;
    }
    SumsetInstance::new(a, bs)
}

/// With `alpha_i = p_i / q_i` and `n = q_1 ... q_h`, the sizes
/// `n_i = n prod_{j != i} alpha_j`, which make every `alpha_i n_i` equal.
pub fn equalizing_sizes(alphas: &[Rational]) -> Result<Vec<u64>> {
    let n: Rational = alphas.iter().map(|a| int(a.denom().clone())).product();
    (0..alphas.len())
        .map(|i| {
            let ni: Rational = alphas.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, a)| a).product::<Rational>() * &n;
            debug_assert!(ni.is_integer());
            ni.to_integer().to_u64().ok_or(Error::Overflow)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{ratio, to_f64};

    #[test]
    fn params_validation() {
        assert!(ExtremalParams::new(3, 1, 1).is_err());
        assert!(ExtremalParams::new(1, 2, 1).is_err());
        assert!(ExtremalParams::new(2, 0, 1).is_err());
        let p = ExtremalParams::new(3, 4, 2).unwrap();
        assert_eq!((p.b(), p.a2_count(), p.k()), (8, 8, 11));
    }

    #[test]
    fn smallest_example() {
        let p = ExtremalParams::new(2, 2, 2).unwrap();
        let inst = build_section4_example(&p, DEFAULT_BUDGET).unwrap();
        assert_eq!(inst.spec().moduli(), &[4, 4, 4, 4]);
        assert_eq!(inst.m(), 6);
        assert_eq!(inst.sumset_sizes(), vec![16, 16]);
        assert_eq!(inst.full_sumset().len(), 48);
        let pr = predicted_cardinalities(&p);
        assert_eq!(pr.m, int(6));
        assert_eq!(pr.sum_with_bi_upper, int(16));
        assert_eq!(pr.lower_bound, int(32));
        assert_eq!(pr.top, int(48));
        assert_eq!(pr.alpha, int(4));
        assert_eq!(pr.target_constant, ratio(1, 4));
    }

    #[test]
    fn closed_forms_match_enumeration() {
        for (h, a, l) in [(2, 2, 2), (2, 4, 2), (2, 3, 1), (3, 2, 1), (3, 2, 2), (4, 3, 1)] {
            let p = ExtremalParams::new(h, a, l).unwrap();
            let inst = build_section4_example(&p, DEFAULT_BUDGET).unwrap();
            let c = enumerate_section4(&p, &inst).unwrap();
            let pr = predicted_cardinalities(&p);
            assert_eq!(int(c.m as u64), pr.m);
            assert!(c.sums_with_bi.iter().all(|&s| int(s as u64) == pr.sum_with_bi_upper));
            assert_eq!(int(c.top as u64), pr.top);
            assert!(int(c.top as u64) >= pr.lower_bound);
            let bah = p.b() * a.pow(h - 1);
            assert!(c.a1_sums.iter().all(|&s| s as u64 == bah));
            assert!(c.a2_sums.iter().all(|&s| s as u64 == p.b() * p.a2_count()));
            assert!(c.a1_a2_disjoint && c.a2_translates_disjoint);
        }
    }

    #[test]
    fn larger_lower_bound() {
        let p = ExtremalParams::new(2, 16, 2).unwrap();
        let pr = predicted_cardinalities(&p);
        assert_eq!(pr.m, int(272));
        assert_eq!(pr.lower_bound, int(16384));
    }

    #[test]
    fn budget_guard_reports_prediction() {
        let p = ExtremalParams::new(2, 2, 2).unwrap();
        assert_eq!(build_section4_example(&p, 47).unwrap_err(), Error::BudgetExceeded { predicted: 48, budget: 47 });
    }

    #[test]
    fn sharpness_ratio_small() {
        let p = ExtremalParams::new(2, 2, 2).unwrap();
        let inst = build_section4_example(&p, DEFAULT_BUDGET).unwrap();
        let r = sharpness_ratio(48, &inst.alphas(), 6, 64);
        // 48 / ((8/3)^2 6^(3/2))
        assert!((to_f64(&r.lo) - 0.45927).abs() < 1e-4);
        let fixed = predicted_cardinalities(&p).alpha;
        let r2 = sharpness_ratio(48, &[fixed.clone(), fixed], 6, 64);
        assert!((to_f64(&r2.lo) - 0.20412).abs() < 1e-4);
    }

    fn unit_square() -> SumsetInstance {
        let z = GroupSpec::free(1);
        let s = GSet::from_ints(z, &[0, 1]).unwrap();
        SumsetInstance::new(s.clone(), vec![s.clone(), s]).unwrap()
    }

    #[test]
    fn lifting_scales_sumsets() {
        let inst = unit_square();
        let lifted = lift_with_generators(&inst, &[2, 3], DEFAULT_BUDGET).unwrap();
        assert_eq!(lifted.spec().moduli(), &[0, 0, 0, 0, 0, 0]);
        assert_eq!(lifted.sumset_sizes(), vec![6, 9]);
        assert_eq!(lifted.full_sumset().len(), 4 * 6);
        let same = lift_with_generators(&inst, &[1, 1], DEFAULT_BUDGET).unwrap();
        assert_eq!(same.alphas(), inst.alphas());
        assert_eq!(same.full_sumset().len(), 4);
        assert!(lift_with_generators(&inst, &[1], DEFAULT_BUDGET).is_err());
        assert!(lift_with_generators(&inst, &[0, 1], DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn equalizing_sizes_equalize() {
        let inst = SumsetInstance::new(
            GSet::from_ints(GroupSpec::free(1), &[0, 1, 2]).unwrap(),
            vec![
                GSet::from_ints(GroupSpec::free(1), &[0, 1]).unwrap(),
                GSet::from_ints(GroupSpec::free(1), &[0, 5, 11]).unwrap(),
            ],
        )
        .unwrap();
        let alphas = inst.alphas();
        assert_eq!(alphas, vec![ratio(4, 3), int(3)]);
        let n = equalizing_sizes(&alphas).unwrap();
        assert_eq!(n, vec![9, 4]);
        let lifted = lift_with_generators(&inst, &n, DEFAULT_BUDGET).unwrap();
        let la = lifted.alphas();
        assert!(la.iter().all(|x| *x == la[0]));
        assert_eq!(la[0], int(12));
        assert_eq!(lifted.full_sumset().len(), inst.full_sumset().len() * 36);
    }
}
