//! The removed-component partition procedure and the sumset inequalities,
//! evaluated on concrete instances.
//!
//! Every check produces [`BoundRecord`]s. Purely rational comparisons are
//! exact; comparisons against `h`-th roots are decided on the cleared
//! integer form (both sides raised to the `h`-th power) and the root itself
//! is reported as a certified [`Interval`].

mod checks;
mod partition;
mod removed;

use alloc::string::String;
use alloc::vec::Vec;

pub use checks::*;
pub use partition::{partition_decompose, Diagnostics, PartitionStep, PartitionTrace, Regime};
pub use removed::{new_top_count, removed_mu, RemovedComponentGraph};

use crate::group::GSet;
use crate::rational::{Interval, Rational, Verdict};

/// Right-hand side of a bound: exact, or enclosed when it involves a root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rhs {
    Exact(Rational),
    Enclosed(Interval),
}

/// Theorem records must hold on every instance; diagnostics are reported
/// but may legitimately fail on small instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Theorem,
    Diagnostic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRecord {
    pub check: &'static str,
    pub name: String,
    pub kind: Kind,
    pub lhs: Rational,
    pub rhs: Rhs,
    /// Both sides after clearing roots, when the comparison needed it.
    pub cleared: Option<(Rational, Rational)>,
    pub verdict: Verdict,
    pub witness: Option<GSet>,
    pub method: &'static str,
    pub seed: Option<u64>,
}

impl BoundRecord {
    pub(crate) fn exact(check: &'static str, name: &str, lhs: Rational, rhs: Rational) -> Self {
        let verdict = Verdict::from_bool(lhs <= rhs);
        Self {
            check,
            name: name.into(),
            kind: Kind::Theorem,
            lhs,
            rhs: Rhs::Exact(rhs),
            cleared: None,
            verdict,
            witness: None,
            method: "exact",
            seed: None,
        }
    }

    /// `lhs <= root`, decided by `lhs_cleared <= rhs_cleared`.
    pub(crate) fn cleared(
        check: &'static str,
        name: &str,
        lhs: Rational,
        root: Interval,
        lhs_cleared: Rational,
        rhs_cleared: Rational,
    ) -> Self {
        let verdict = Verdict::from_bool(lhs_cleared <= rhs_cleared);
        Self {
            check,
            name: name.into(),
            kind: Kind::Theorem,
            lhs,
            rhs: Rhs::Enclosed(root),
            cleared: Some((lhs_cleared, rhs_cleared)),
            verdict,
            witness: None,
            method: "cleared",
            seed: None,
        }
    }

    pub(crate) fn equality(check: &'static str, name: &str, lhs: Rational, rhs: Rational) -> Self {
        let verdict = Verdict::from_bool(lhs == rhs);
        Self { method: "equality", verdict, ..Self::exact(check, name, lhs, rhs) }
    }

    pub(crate) fn diagnostic(mut self) -> Self {
        self.kind = Kind::Diagnostic;
        self
    }

    pub(crate) fn with_witness(mut self, w: GSet) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn holds(&self) -> bool {
        self.verdict.holds()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BoundReport {
    pub records: Vec<BoundRecord>,
}

impl BoundReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, r: BoundRecord) {
        self.records.push(r);
    }

    pub fn extend(&mut self, rs: impl IntoIterator<Item = BoundRecord>) {
        self.records.extend(rs);
    }

    /// Whether every theorem record holds.
    pub fn all_hold(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<&BoundRecord> {
        self.records.iter().find(|r| r.kind == Kind::Theorem && !r.holds())
    }
}
