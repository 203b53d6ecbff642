//! Exact rationals and certified intervals.
//!
//! Every cardinality ratio is a [`Rational`]. Quantities involving `m^(1/h)`
//! are enclosed in an [`Interval`] with rational endpoints; the root itself is
//! bracketed by an exact integer `nth_root` on a scaled value, so an interval
//! never lies about where the true value is.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

/// Default number of fractional bits used for root enclosures.
pub const DEFAULT_PRECISION_BITS: u32 = 64;
/// Precision ceiling for escalating retries.
pub const MAX_PRECISION_BITS: u32 = 1024;

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn pow(base: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// `"p/q"` in lowest terms, always with an explicit denominator.
pub fn to_fraction_string(r: &Rational) -> String {
    let mut s = String::new();
    let _ = write!(s, "{}/{}", r.numer(), r.denom());
    s
}

pub fn parse_fraction(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Decimal rendering with `digits` fractional digits, rounded towards
/// -inf (`round_up = false`) or +inf.
pub fn to_decimal(r: &Rational, digits: usize, round_up: bool) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = r * Rational::from_integer(scale.clone());
    let v = if round_up { scaled.ceil() } else { scaled.floor() }.to_integer();
    let neg = v.is_negative();
    let (q, rem) = v.abs().div_rem(&scale);
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    let _ = write!(s, "{}", q);
    if digits > 0 {
        let frac = rem.to_string_padded(digits);
        s.push('.');
        s.push_str(&frac);
    }
    s
}

trait Padded {
    fn to_string_padded(&self, width: usize) -> String;
}

impl Padded for BigInt {
    fn to_string_padded(&self, width: usize) -> String {
        let mut raw = String::new();
        let _ = write!(raw, "{}", self);
        let mut out = String::new();
        for _ in raw.len()..width {
            out.push('0');
        }
        out.push_str(&raw);
        out
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn exact(r: Rational) -> Self {
        Self { lo: r.clone(), hi: r }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, r: &Rational) -> bool {
        &self.lo <= r && r <= &self.hi
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().cloned().unwrap_or_default();
        let hi = c.iter().max().cloned().unwrap_or_default();
        Interval::new(lo, hi)
    }

    pub fn scale(&self, r: &Rational) -> Interval {
        self.mul(&Interval::exact(r.clone()))
    }

    /// `None` when the divisor interval contains zero.
    pub fn div(&self, o: &Interval) -> Option<Interval> {
        if o.contains(&Rational::zero()) {
            return None;
        }
        let inv = Interval::new(o.hi.recip(), o.lo.recip());
        Some(self.mul(&inv))
    }

    pub fn powi(&self, exp: u32) -> Interval {
        let mut acc = Interval::exact(Rational::one());
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn to_decimal_string(&self, digits: usize) -> String {
        let mut s = String::from("[");
        s.push_str(&to_decimal(&self.lo, digits, false));
        s.push_str(", ");
        s.push_str(&to_decimal(&self.hi, digits, true));
        s.push(']');
        s
    }
}

/// Encloses `m^(1/h)` with an interval of width at most `2^-bits`.
pub fn nth_root_interval(m: u64, h: u32, bits: u32) -> Interval {
    assert!(h >= 1, "root degree must be positive");
    if h == 1 || m <= 1 {
        return Interval::exact(int(m));
    }
    let scaled = BigUint::from(m) << (h as usize * bits as usize);
    let root = scaled.nth_root(h);
    let denom = BigInt::one() << bits as usize;
    let lo = Rational::new(BigInt::from(root.clone()), denom.clone());
    if root.pow(h) == scaled {
        return Interval::exact(lo);
    }
    let hi = Rational::new(BigInt::from(root + 1u32), denom);
    Interval::new(lo, hi)
}

/// Encloses `r^(1/h)` for a nonnegative rational `r`, width at most `2^-bits`.
pub fn root_interval(r: &Rational, h: u32, bits: u32) -> Interval {
    assert!(h >= 1, "root degree must be positive");
    assert!(!r.is_negative(), "root of a negative number");
    if h == 1 {
        return Interval::exact(r.clone());
    }
    let p = r.numer().to_biguint().expect("nonnegative");
    let q = r.denom().to_biguint().expect("positive");
    let scaled = (p * q.pow(h - 1)) << (h as usize * bits as usize);
    let root = scaled.nth_root(h);
    let denom = BigInt::from(q) << bits as usize;
    let lo = Rational::new(BigInt::from(root.clone()), denom.clone());
    if root.pow(h) == scaled {
        return Interval::exact(lo);
    }
    Interval::new(lo, Rational::new(BigInt::from(root + 1u32), denom))
}

/// Encloses `m^(num/h)` for a possibly negative integer `num`.
pub fn power_interval(m: u64, num: i32, h: u32, bits: u32) -> Interval {
    let root = nth_root_interval(m, h, bits);
    let p = root.powi(num.unsigned_abs());
    if num >= 0 {
        p
    } else {
        Interval::exact(Rational::one())
            .div(&p)
            .expect("m^(1/h) > 0 for m >= 1")
    }
}

/// Outcome of a comparison that may involve irrational quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Holds,
    Fails,
    Undecided,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Undecided => "undecided",
        }
    }
}

/// `lhs <= rhs`, decided only when the enclosures separate.
pub fn compare_le(lhs: &Interval, rhs: &Interval) -> Verdict {
    if lhs.hi <= rhs.lo {
        Verdict::Holds
    } else if lhs.lo > rhs.hi {
        Verdict::Fails
    } else {
        Verdict::Undecided
    }
}

/// Runs `compare_le` on enclosures built at increasing precision until it is
/// decided or `max_bits` is reached. Returns the verdict, the last enclosures
/// and the precision used.
pub fn certify_le<F>(start_bits: u32, max_bits: u32, mut build: F) -> (Verdict, Interval, Interval, u32)
where
    F: FnMut(u32) -> (Interval, Interval),
{
    let mut bits = start_bits.max(8);
    loop {
        let (l, r) = build(bits);
        let v = compare_le(&l, &r);
        if v != Verdict::Undecided || bits >= max_bits {
            return (v, l, r, bits);
        }
        bits = (bits * 2).min(max_bits);
    }
}

/// All fractions `p/q` in lowest terms with `0 <= p <= max_num`,
/// `1 <= q <= max_den`, sorted ascending.
pub fn candidate_fractions(max_num: u64, max_den: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for q in 1..=max_den {
        for p in 0..=max_num {
            if p.gcd(&q) == 1 || (p == 0 && q == 1) {
                out.push((p, q));
            }
        }
    }
    out.sort_by(|a, b| (a.0 as u128 * b.1 as u128).cmp(&(b.0 as u128 * a.1 as u128)));
    out
}
