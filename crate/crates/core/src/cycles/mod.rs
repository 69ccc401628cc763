//! Permutation digraphs up to isomorphism, stored as cycle-type multisets.
//!
//! A permutation digraph is a disjoint union of cycles, so its isomorphism
//! class is determined by how many cycles of each length it has. [`CycleSet`]
//! keeps that multiset in canonical form (sorted by length, merged, no zero
//! counts), which makes `==` coincide with graph isomorphism.

mod digraph;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::arith::{checked_lcm, gcd};
use crate::error::{Error, Result};

pub use digraph::{explicit_product_oracle, oracle_bound, DEFAULT_ORACLE_BOUND, ORACLE_BOUND_ENV};

/// A finite sum of cycles `C(count, length)`, in canonical form.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleSet {
    entries: Vec<(u64, u64)>,
}

impl CycleSet {
    /// The empty graph, additive identity.
    pub fn zero() -> Self {
        Self::default()
    }

    /// A single self-loop `C(1,1)`, multiplicative identity.
    pub fn one() -> Self {
        Self::cycles(1, 1)
    }

    /// `count` disjoint cycles of length `length`.
    ///
    /// # Panics
    ///
    /// If `length` is zero.
    pub fn cycles(count: u64, length: u64) -> Self {
        assert!(length > 0, "cycle length must be positive");
        if count == 0 {
            Self::zero()
        } else {
            Self {
                entries: vec![(length, count)],
            }
        }
    }

    /// Builds the canonical form from raw `(length, count)` pairs.
    pub fn normalize<I>(raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let mut entries: Vec<(u64, u64)> = Vec::new();
        for (length, count) in raw {
            if length == 0 {
                return Err(Error::invalid("cycle length must be positive"));
            }
            if count > 0 {
                entries.push((length, count));
            }
        }
        entries.sort_unstable_by_key(|&(length, _)| length);
        let mut merged: Vec<(u64, u64)> = Vec::with_capacity(entries.len());
        for (length, count) in entries {
            match merged.last_mut() {
                Some((last, acc)) if *last == length => {
                    *acc = acc
                        .checked_add(count)
                        .ok_or(Error::Overflow("cycle count"))?;
                }
                _ => merged.push((length, count)),
            }
        }
        Ok(Self { entries: merged })
    }

    /// `(length, count)` pairs in increasing length order.
    pub fn entries(&self) -> &[(u64, u64)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of cycles of the given length.
    pub fn count_of(&self, length: u64) -> u64 {
        self.entries
            .binary_search_by_key(&length, |&(l, _)| l)
            .map_or(0, |i| self.entries[i].1)
    }

    /// Number of distinct cycle lengths.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total number of cycles.
    pub fn cycle_count(&self) -> Result<u64> {
        self.entries.iter().try_fold(0u64, |acc, &(_, count)| {
            acc.checked_add(count).ok_or(Error::Overflow("cycle count"))
        })
    }

    /// Total number of states, `sum(length * count)`.
    pub fn states(&self) -> Result<u64> {
        self.entries.iter().try_fold(0u64, |acc, &(length, count)| {
            length
                .checked_mul(count)
                .and_then(|s| acc.checked_add(s))
                .ok_or(Error::Overflow("state count"))
        })
    }

    /// The single `(length, count)` pair when the set has exactly one cycle length.
    pub fn as_monomial(&self) -> Option<(u64, u64)> {
        match self.entries.as_slice() {
            [single] => Some(*single),
            _ => None,
        }
    }

    /// Disjoint union.
    pub fn add(&self, other: &CycleSet) -> Result<CycleSet> {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() && j < other.entries.len() {
            let (la, ca) = self.entries[i];
            let (lb, cb) = other.entries[j];
            match la.cmp(&lb) {
                std::cmp::Ordering::Less => {
                    out.push((la, ca));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((lb, cb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = ca.checked_add(cb).ok_or(Error::Overflow("cycle count"))?;
                    out.push((la, c));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.entries[i..]);
        out.extend_from_slice(&other.entries[j..]);
        Ok(CycleSet { entries: out })
    }

    /// Direct product. Each pair of terms contributes
    /// `C(n1*n2*gcd(p1,p2), lcm(p1,p2))`.
    pub fn mul(&self, other: &CycleSet) -> Result<CycleSet> {
        let mut raw = Vec::with_capacity(self.entries.len() * other.entries.len());
        for &(p1, n1) in &self.entries {
            for &(p2, n2) in &other.entries {
                raw.push(term_product((p1, n1), (p2, n2))?);
            }
        }
        CycleSet::normalize(raw)
    }

    /// `w`-fold product, with `pow(x, 0) = C(1,1)`.
    pub fn pow(&self, mut w: u64) -> Result<CycleSet> {
        let mut acc = CycleSet::one();
        let mut base = self.clone();
        while w > 0 {
            if w & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            w >>= 1;
            if w > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Scales every count by `k`, i.e. `k` disjoint copies of the graph.
    pub fn scale(&self, k: u64) -> Result<CycleSet> {
        CycleSet::normalize(
            self.entries
                .iter()
                .map(|&(l, c)| c.checked_mul(k).map(|c| (l, c)))
                .collect::<Option<Vec<_>>>()
                .ok_or(Error::Overflow("cycle count"))?,
        )
    }
}

fn term_product((p1, n1): (u64, u64), (p2, n2): (u64, u64)) -> Result<(u64, u64)> {
    let length = checked_lcm(p1, p2).ok_or(Error::Overflow("cycle length"))?;
    let count = n1
        .checked_mul(n2)
        .and_then(|c| c.checked_mul(gcd(p1, p2)))
        .ok_or(Error::Overflow("cycle count"))?;
    Ok((length, count))
}

impl fmt::Display for CycleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        for (i, &(length, count)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "C({count},{length})")?;
        }
        Ok(())
    }
}

impl Serialize for CycleSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The basic equation `C(1,p) * X = C(n,q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BasicEquation {
    pub p: u64,
    pub q: u64,
    pub n: u64,
}

impl BasicEquation {
    pub fn new(p: u64, q: u64, n: u64) -> Result<Self> {
        if p == 0 || q == 0 || n == 0 {
            return Err(Error::invalid(format!(
                "basic equation needs positive p, q, n (got p={p}, q={q}, n={n})"
            )));
        }
        Ok(Self { p, q, n })
    }

    pub fn coefficient(&self) -> CycleSet {
        CycleSet::cycles(1, self.p)
    }

    pub fn rhs(&self) -> CycleSet {
        CycleSet::cycles(self.n, self.q)
    }

    /// Multiply-back check of a candidate solution.
    pub fn is_solution(&self, x: &CycleSet) -> bool {
        self.coefficient()
            .mul(x)
            .is_ok_and(|product| product == self.rhs())
    }
}

impl fmt::Display for BasicEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C(1,{})*X = C({},{})", self.p, self.n, self.q)
    }
}
