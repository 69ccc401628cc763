use super::CycleSet;
use crate::error::{Error, Result};

/// Default cap on product vertices the oracle will materialize.
pub const DEFAULT_ORACLE_BOUND: u64 = 1_000_000;

/// Environment variable overriding [`DEFAULT_ORACLE_BOUND`].
pub const ORACLE_BOUND_ENV: &str = "CYCLERING_ORACLE_BOUND";

/// The oracle vertex cap, honouring `CYCLERING_ORACLE_BOUND` when it parses.
pub fn oracle_bound() -> u64 {
    std::env::var(ORACLE_BOUND_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_BOUND)
}

/// Successor table of the permutation digraph described by `set`.
fn successor_map(set: &CycleSet) -> Vec<usize> {
    let mut succ = Vec::new();
    for &(length, count) in set.entries() {
        let length = length as usize;
        for _ in 0..count {
            let base = succ.len();
            succ.extend((0..length).map(|i| base + (i + 1) % length));
        }
    }
    succ
}

/// Computes `a * b` by building the direct product on explicit vertex pairs
/// and decomposing it into cycles. Independent of [`CycleSet::mul`].
pub fn explicit_product_oracle(a: &CycleSet, b: &CycleSet, bound: u64) -> Result<CycleSet> {
    let vertices = a
        .states()?
        .checked_mul(b.states()?)
        .ok_or(Error::Overflow("product vertex count"))?;
    if vertices > bound {
        return Err(Error::OracleBound { vertices, bound });
    }
    let left = successor_map(a);
    let right = successor_map(b);
    let width = right.len();
    let total = left.len() * width;
    let mut seen = vec![false; total];
    let mut lengths = Vec::new();
    for start in 0..total {
        if seen[start] {
            continue;
        }
        let mut v = start;
        let mut len = 0u64;
        while !seen[v] {
            seen[v] = true;
            len += 1;
            v = left[v / width] * width + right[v % width];
        }
        lengths.push((len, 1));
    }
    CycleSet::normalize(lengths)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_examples() {
        let bound = DEFAULT_ORACLE_BOUND;
        assert_eq!(
            explicit_product_oracle(&CycleSet::cycles(1, 4), &CycleSet::cycles(2, 12), bound)
                .unwrap(),
            CycleSet::cycles(8, 12)
        );
        assert_eq!(
            explicit_product_oracle(&CycleSet::one(), &CycleSet::one(), bound).unwrap(),
            CycleSet::one()
        );
        assert_eq!(
            explicit_product_oracle(&CycleSet::cycles(1, 2), &CycleSet::cycles(1, 4), bound)
                .unwrap(),
            CycleSet::cycles(2, 4)
        );
        assert!(
            explicit_product_oracle(&CycleSet::zero(), &CycleSet::cycles(3, 3), bound)
                .unwrap()
                .is_zero()
        );
    }

    #[test]
    fn oracle_bound_enforced() {
        let a = CycleSet::cycles(1, 100);
        assert_eq!(
            explicit_product_oracle(&a, &a, 9_999),
            Err(Error::OracleBound {
                vertices: 10_000,
                bound: 9_999
            })
        );
    }
}
