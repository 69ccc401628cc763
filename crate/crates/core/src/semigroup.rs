//! Membership in the additive monoid generated by a finite set of positive
//! integers.
//!
//! For the smallest generator `g`, the residue table stores, for each class
//! `r mod g`, the least representable value in that class (a shortest-path
//! computation over the residues). Then `n` is representable iff
//! `n >= table[n mod g]`, which works for arbitrarily large `n`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::arith::gcd;

/// Residue tables larger than this fall back to a depth-first search.
pub const RESIDUE_TABLE_LIMIT: u64 = 1 << 22;

const UNREACHABLE: u128 = u128::MAX;

#[derive(Debug, Clone)]
pub struct Semigroup {
    /// Distinct generators, increasing.
    generators: Vec<u64>,
    table: Option<ResidueTable>,
}

#[derive(Debug, Clone)]
struct ResidueTable {
    /// Least representable value per residue class.
    least: Vec<u128>,
    /// Index of the generator used last on the shortest path to each class.
    via: Vec<u32>,
}

impl Semigroup {
    /// Zero entries are ignored; duplicates are merged.
    pub fn new(generators: &[u64]) -> Self {
        let mut gens: Vec<u64> = generators.iter().copied().filter(|&g| g > 0).collect();
        gens.sort_unstable();
        gens.dedup();
        let table = match gens.first() {
            Some(&modulus) if modulus <= RESIDUE_TABLE_LIMIT => Some(ResidueTable::build(&gens)),
            _ => None,
        };
        Self {
            generators: gens,
            table,
        }
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn contains(&self, n: u64) -> bool {
        if n == 0 {
            return true;
        }
        match (&self.table, self.generators.first()) {
            (_, None) => false,
            (Some(table), Some(&modulus)) => n as u128 >= table.least[(n % modulus) as usize],
            (None, Some(_)) => self.search(n).is_some(),
        }
    }

    /// Multiplicities `y_i`, aligned with [`Semigroup::generators`], with
    /// `sum y_i * g_i = n`.
    pub fn representation(&self, n: u64) -> Option<Vec<u64>> {
        let mut counts = vec![0u64; self.generators.len()];
        if n == 0 {
            return Some(counts);
        }
        let modulus = *self.generators.first()?;
        let Some(table) = &self.table else {
            return self.search(n);
        };
        let mut residue = (n % modulus) as usize;
        let least = table.least[residue];
        if (n as u128) < least {
            return None;
        }
        while residue != 0 {
            let idx = table.via[residue] as usize;
            counts[idx] += 1;
            let g = self.generators[idx] % modulus;
            residue = ((residue as u64 + modulus - g) % modulus) as usize;
        }
        counts[0] += (n - least as u64) / modulus;
        Some(counts)
    }

    fn search(&self, n: u64) -> Option<Vec<u64>> {
        let mut counts = vec![0u64; self.generators.len()];
        // prefix_gcd[i] = gcd of the first i generators
        let mut prefix_gcd = vec![0u64; self.generators.len() + 1];
        for (i, &g) in self.generators.iter().enumerate() {
            prefix_gcd[i + 1] = gcd(prefix_gcd[i], g);
        }
        self.dfs(self.generators.len(), n, &prefix_gcd, &mut counts)
            .then_some(counts)
    }

    /// Chooses multiplicities from the largest generator down.
    fn dfs(&self, upto: usize, rest: u64, prefix_gcd: &[u64], counts: &mut [u64]) -> bool {
        if rest == 0 {
            return true;
        }
        if upto == 0 || !rest.is_multiple_of(prefix_gcd[upto]) {
            return false;
        }
        let idx = upto - 1;
        let g = self.generators[idx];
        for y in (0..=rest / g).rev() {
            counts[idx] = y;
            if self.dfs(idx, rest - y * g, prefix_gcd, counts) {
                return true;
            }
        }
        counts[idx] = 0;
        false
    }
}

impl ResidueTable {
    fn build(gens: &[u64]) -> Self {
        let modulus = gens[0];
        let size = modulus as usize;
        let mut least = vec![UNREACHABLE; size];
        let mut via = vec![0u32; size];
        least[0] = 0;
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((0u128, 0usize)));
        while let Some(Reverse((dist, residue))) = heap.pop() {
            if dist > least[residue] {
                continue;
            }
            for (idx, &g) in gens.iter().enumerate().skip(1) {
                let next = ((residue as u64 + g % modulus) % modulus) as usize;
                let cand = dist + g as u128;
                if cand < least[next] {
                    least[next] = cand;
                    via[next] = idx as u32;
                    heap.push(Reverse((cand, next)));
                }
            }
        }
        Self { least, via }
    }
}

/// Whether `n` is a nonnegative integer combination of `generators`.
pub fn representable(generators: &[u64], n: u64) -> bool {
    Semigroup::new(generators).contains(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp_reachable(gens: &[u64], limit: usize) -> Vec<bool> {
        let mut reach = vec![false; limit + 1];
        reach[0] = true;
        for v in 1..=limit {
            reach[v] = gens
                .iter()
                .any(|&g| g > 0 && g as usize <= v && reach[v - g as usize]);
        }
        reach
    }

    #[test]
    fn examples() {
        assert!(representable(&[4, 2, 1], 12));
        assert!(!representable(&[2], 5));
        assert!(!representable(&[3, 5], 7));
        assert!(representable(&[3, 5], 8));
        assert!(representable(&[1, 1000], 987_654_321));
        assert!(representable(&[], 0));
        assert!(!representable(&[], 3));
    }

    #[test]
    fn agrees_with_dp() {
        for gens in [
            vec![6, 10, 15],
            vec![4, 6],
            vec![7, 11, 13],
            vec![12, 18, 27],
            vec![5],
        ] {
            let s = Semigroup::new(&gens);
            let reach = dp_reachable(&gens, 500);
            for (n, &expected) in reach.iter().enumerate() {
                assert_eq!(s.contains(n as u64), expected, "{gens:?} n = {n}");
                let rep = s.representation(n as u64);
                assert_eq!(rep.is_some(), expected);
                if let Some(counts) = rep {
                    let total: u64 = counts.iter().zip(s.generators()).map(|(c, g)| c * g).sum();
                    assert_eq!(total, n as u64);
                }
            }
        }
    }

    #[test]
    fn search_fallback_matches_table() {
        let big = RESIDUE_TABLE_LIMIT + 3;
        let s = Semigroup::new(&[big, 2 * big + 1]);
        assert!(s.table.is_none());
        assert!(s.contains(3 * big + 1));
        assert!(!s.contains(big + 1));
        assert_eq!(s.representation(4 * big + 2), Some(vec![0, 2]));
        assert!(Semigroup::new(&[big, 2 * big])
            .representation(3 * big + 1)
            .is_none());
    }

    #[test]
    fn large_n_uses_residue_class() {
        let s = Semigroup::new(&[6, 9, 20]);
        // 43 is the largest non-representable value for these generators
        assert!(!s.contains(43));
        assert!(s.contains(44));
        assert!(s.contains(u64::MAX - 1));
        let rep = s.representation(1_000_000_007).unwrap();
        let total: u128 = rep
            .iter()
            .zip(s.generators())
            .map(|(&c, &g)| c as u128 * g as u128)
            .sum();
        assert_eq!(total, 1_000_000_007);
    }
}
