//! Finitely generated commutative groups `Z^d0 x Z_m1 x ... x Z_md` and exact
//! arithmetic on their finite subsets.

use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use crate::hypergraph::IndexSet;
use crate::rational::{ratio, Rational};
use crate::{Error, Result};

/// Per-coordinate moduli. `0` is the infinite cyclic factor `Z`, `m >= 1` is
/// `Z_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSpec {
    moduli: Vec<u64>,
}

impl GroupSpec {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidSpec("at least one coordinate is required".to_string()));
        }
        if moduli.iter().any(|&m| m > i64::MAX as u64) {
            return Err(Error::InvalidSpec("modulus does not fit in i64".to_string()));
        }
        Ok(Self { moduli })
    }

    /// `Z^d`.
    pub fn free(d: usize) -> Self {
        Self { moduli: alloc::vec![0; d.max(1)] }
    }

    /// `Z_m^k`.
    pub fn cyclic_power(m: u64, k: usize) -> Self {
        Self { moduli: alloc::vec![m; k.max(1)] }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    /// Group order, or `None` when some coordinate is `Z`.
    pub fn order(&self) -> Option<u128> {
        self.moduli.iter().try_fold(1u128, |acc, &m| {
            if m == 0 {
                None
            } else {
                acc.checked_mul(m as u128)
            }
        })
    }

    pub fn concat(&self, other: &GroupSpec) -> GroupSpec {
        let mut moduli = self.moduli.clone();
        moduli.extend_from_slice(&other.moduli);
        GroupSpec { moduli }
    }

    pub fn ensure_same(&self, other: &GroupSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::IncompatibleSpecs { left: self.moduli.clone(), right: other.moduli.clone() })
        }
    }

    /// Reduces raw coordinates into canonical form.
    pub fn element(&self, coords: &[i64]) -> Result<Element> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: coords.len() });
        }
        let coords = coords.iter().zip(&self.moduli).map(|(&c, &m)| reduce(c, m)).collect();
        Ok(Element { coords })
    }

    pub fn zero(&self) -> Element {
        Element { coords: alloc::vec![0; self.dim()] }
    }

    pub fn add(&self, x: &Element, y: &Element) -> Result<Element> {
        if x.dim() != self.dim() || y.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: x.dim().max(y.dim()) });
        }
        let mut coords = Vec::with_capacity(self.dim());
        for ((a, b), &m) in x.coords.iter().zip(&y.coords).zip(&self.moduli) {
            let s = if m == 0 {
                a.checked_add(*b).ok_or(Error::Overflow)?
            } else {
                ((*a as i128 + *b as i128) % m as i128) as i64
            };
            coords.push(s);
        }
        Ok(Element { coords })
    }

    pub fn sub(&self, x: &Element, y: &Element) -> Result<Element> {
        if x.dim() != self.dim() || y.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: x.dim().max(y.dim()) });
        }
        let mut coords = Vec::with_capacity(self.dim());
        for ((a, b), &m) in x.coords.iter().zip(&y.coords).zip(&self.moduli) {
            let s = if m == 0 {
                a.checked_sub(*b).ok_or(Error::Overflow)?
            } else {
                (*a as i128 - *b as i128).rem_euclid(m as i128) as i64
            };
            coords.push(s);
        }
        Ok(Element { coords })
    }
}

fn reduce(c: i64, m: u64) -> i64 {
    if m == 0 {
        c
    } else {
        (c as i128).rem_euclid(m as i128) as i64
    }
}

/// A group element in canonical reduced form. Constructed through
/// [`GroupSpec::element`], so the coordinates are always reduced for the spec
/// that produced them.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    coords: Vec<i64>,
}

impl Element {
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Concatenation, the element of a direct product.
    pub fn concat(&self, other: &Element) -> Element {
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&other.coords);
        Element { coords }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            write!(f, "{}", self.coords[0])
        } else {
            write!(f, "(")?;
            for (i, c) in self.coords.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")
        }
    }
}

/// Coordinate-wise sum, reduced.
pub fn elem_add(spec: &GroupSpec, x: &Element, y: &Element) -> Result<Element> {
    spec.add(x, y)
}

/// A finite subset, deduplicated and sorted lexicographically by reduced
/// coordinates. May be empty (set differences need that); operations that
/// require nonempty input check for it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GSet {
    spec: GroupSpec,
    elems: Vec<Element>,
}

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.elems).finish()
    }
}

impl GSet {
    pub fn empty(spec: GroupSpec) -> Self {
        Self { spec, elems: Vec::new() }
    }

    pub fn from_elements(spec: GroupSpec, elems: impl IntoIterator<Item = Element>) -> Result<Self> {
        let mut v: Vec<Element> = elems.into_iter().collect();
        if let Some(e) = v.iter().find(|e| e.dim() != spec.dim()) {
            return Err(Error::DimensionMismatch { expected: spec.dim(), got: e.dim() });
        }
        v.sort();
        v.dedup();
        Ok(Self { spec, elems: v })
    }

    /// From raw coordinate vectors, reducing each one.
    pub fn from_coords<'a, I>(spec: GroupSpec, coords: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a [i64]>,
    {
        let elems = coords.into_iter().map(|c| spec.element(c)).collect::<Result<Vec<_>>>()?;
        Self::from_elements(spec, elems)
    }

    /// One-dimensional convenience constructor.
    pub fn from_ints(spec: GroupSpec, values: &[i64]) -> Result<Self> {
        let elems = values.iter().map(|&v| spec.element(&[v])).collect::<Result<Vec<_>>>()?;
        Self::from_elements(spec, elems)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn elements(&self) -> &[Element] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.elems.binary_search(e).is_ok()
    }

    pub fn position(&self, e: &Element) -> Option<usize> {
        self.elems.binary_search(e).ok()
    }

    pub fn difference(&self, other: &GSet) -> Result<GSet> {
        self.spec.ensure_same(&other.spec)?;
        let elems = self.elems.iter().filter(|e| !other.contains(e)).cloned().collect();
        Ok(GSet { spec: self.spec.clone(), elems })
    }

    pub fn union(&self, other: &GSet) -> Result<GSet> {
        self.spec.ensure_same(&other.spec)?;
        GSet::from_elements(self.spec.clone(), self.elems.iter().chain(&other.elems).cloned())
    }

    pub fn is_subset(&self, other: &GSet) -> bool {
        self.spec == other.spec && self.elems.iter().all(|e| other.contains(e))
    }

    /// Subset picked out by positions in canonical order.
    pub fn select(&self, positions: &[usize]) -> GSet {
        let elems = positions.iter().map(|&p| self.elems[p].clone());
        GSet::from_elements(self.spec.clone(), elems).expect("same spec")
    }
}

/// `{s + t : s in S, t in T}`. Empty when either side is empty.
pub fn minkowski_sum(s: &GSet, t: &GSet) -> Result<GSet> {
    s.spec.ensure_same(&t.spec)?;
    let mut acc = BTreeSet::new();
    for x in &s.elems {
        for y in &t.elems {
            acc.insert(s.spec.add(x, y)?);
        }
    }
    Ok(GSet { spec: s.spec.clone(), elems: acc.into_iter().collect() })
}

/// `S x T` over the concatenated spec.
pub fn direct_product(s: &GSet, t: &GSet) -> GSet {
    let spec = s.spec.concat(&t.spec);
    let mut elems = Vec::with_capacity(s.len() * t.len());
    for x in &s.elems {
        for y in &t.elems {
            elems.push(x.concat(y));
        }
    }
    // lexicographic order on concatenations is already the product order
    GSet { spec, elems }
}

/// `S_1 + ... + S_k`; the sum of an empty list is `{0}`.
pub fn sum_all<'a>(spec: &GroupSpec, sets: impl IntoIterator<Item = &'a GSet>) -> Result<GSet> {
    let mut acc = GSet::from_elements(spec.clone(), [spec.zero()])?;
    for s in sets {
        acc = minkowski_sum(&acc, s)?;
    }
    Ok(acc)
}

/// The tuple `(A, B_1, ..., B_h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumsetInstance {
    spec: GroupSpec,
    a: GSet,
    b: Vec<GSet>,
}

impl SumsetInstance {
    pub fn new(a: GSet, b: Vec<GSet>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::EmptySet("A"));
        }
        if b.is_empty() {
            return Err(Error::InvalidParams("at least one summand B_i is required".to_string()));
        }
        for bi in &b {
            a.spec.ensure_same(&bi.spec)?;
            if bi.is_empty() {
                return Err(Error::EmptySet("B_i"));
            }
        }
        Ok(Self { spec: a.spec.clone(), a, b })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn a(&self) -> &GSet {
        &self.a
    }

    pub fn b(&self) -> &[GSet] {
        &self.b
    }

    /// `B_i`, 1-based.
    pub fn b_i(&self, i: usize) -> Result<&GSet> {
        if i == 0 || i > self.h() {
            return Err(Error::IndexOutOfRange { index: i, h: self.h() });
        }
        Ok(&self.b[i - 1])
    }

    pub fn h(&self) -> usize {
        self.b.len()
    }

    pub fn m(&self) -> usize {
        self.a.len()
    }

    /// `|A + B_i|` for `i = 1..h`.
    pub fn sumset_sizes(&self) -> Vec<usize> {
        self.b.iter().map(|bi| minkowski_sum(&self.a, bi).expect("validated spec").len()).collect()
    }

    /// Tight `alpha_i = |A + B_i| / |A|`.
    pub fn alphas(&self) -> Vec<Rational> {
        let m = self.m() as u64;
        self.sumset_sizes().into_iter().map(|s| ratio(s as u64, m)).collect()
    }

    pub fn alpha_product(&self) -> Rational {
        self.alphas().iter().product()
    }

    /// `A + sum_{i in I} B_i`; `I = {}` gives `A`.
    pub fn iterated_sumset(&self, index: IndexSet) -> Result<GSet> {
        iterated_sumset_of(&self.a, &self.b, index)
    }

    /// `A + B_1 + ... + B_h`.
    pub fn full_sumset(&self) -> GSet {
        self.iterated_sumset(IndexSet::full(self.h())).expect("full index set is in range")
    }

    /// `B_1 + ... + B_h`.
    pub fn b_sumset(&self) -> GSet {
        sum_all(&self.spec, &self.b).expect("validated spec")
    }

    /// Direct product instance `(A x A', B_1 x B_1', ...)`.
    pub fn direct_product(&self, other: &SumsetInstance) -> Result<SumsetInstance> {
        if self.h() != other.h() {
            return Err(Error::MismatchedDimension(self.h(), other.h()));
        }
        let a = direct_product(&self.a, &other.a);
        let b = self.b.iter().zip(&other.b).map(|(x, y)| direct_product(x, y)).collect();
        SumsetInstance::new(a, b)
    }
}

/// `X + sum_{i in I} B_i` for an arbitrary base set `X` (possibly empty).
pub fn iterated_sumset_of(base: &GSet, b: &[GSet], index: IndexSet) -> Result<GSet> {
    if index.h() != b.len() {
        return Err(Error::MismatchedDimension(index.h(), b.len()));
    }
    let mut acc = base.clone();
    for i in index.members() {
        acc = minkowski_sum(&acc, &b[i - 1])?;
    }
    Ok(acc)
}
