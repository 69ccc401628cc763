//! Integer helpers shared by the deciders and the oracles.
//!
//! The production deciders only ever call [`gcd`] (through a [`GcdCounter`]).
//! Factorization and divisor listing live here for the oracles and the
//! divisor-based enumerator, and both refuse inputs above [`TRIAL_DIVISION_LIMIT`].

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest input accepted by trial-division based routines.
pub const TRIAL_DIVISION_LIMIT: u64 = 1_000_000_000_000;

/// Iteration budget for a single trial division run.
pub const TRIAL_DIVISION_BUDGET: u64 = 1_000_000;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn checked_lcm(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

/// Counts gcd invocations for one decision run.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct GcdCounter {
    calls: u64,
}

impl GcdCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn gcd(&mut self, a: u64, b: u64) -> u64 {
        self.calls += 1;
        gcd(a, b)
    }

    pub fn calls(&self) -> u64 {
        self.calls
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimePowerFactorization {
    factors: Vec<(u64, u32)>,
}

impl PrimePowerFactorization {
    /// Trial division, bounded by [`TRIAL_DIVISION_LIMIT`] and [`TRIAL_DIVISION_BUDGET`].
    pub fn of(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("cannot factor 0"));
        }
        if n > TRIAL_DIVISION_LIMIT {
            return Err(Error::BudgetExceeded {
                what: "factorization input",
                value: n,
                limit: TRIAL_DIVISION_LIMIT,
            });
        }
        let mut rest = n;
        let mut factors = Vec::new();
        let mut iterations = 0u64;
        let mut candidate = 2u64;
        while candidate * candidate <= rest {
            iterations += 1;
            if iterations > TRIAL_DIVISION_BUDGET {
                return Err(Error::BudgetExceeded {
                    what: "trial division iterations",
                    value: iterations,
                    limit: TRIAL_DIVISION_BUDGET,
                });
            }
            if rest.is_multiple_of(candidate) {
                let mut exp = 0;
                while rest.is_multiple_of(candidate) {
                    rest /= candidate;
                    exp += 1;
                }
                factors.push((candidate, exp));
            }
            candidate += if candidate == 2 { 1 } else { 2 };
        }
        if rest > 1 {
            factors.push((rest, 1));
        }
        debug_assert!(factors.iter().all(|&(p, _)| is_prime(p)));
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Exponent of `prime`, zero when absent.
    pub fn exponent_of(&self, prime: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(p, _)| p == prime)
            .map_or(0, |&(_, e)| e)
    }

    /// The prime powers `p^e` of the factorization.
    pub fn prime_powers(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, e)| p.pow(e))
    }

    pub fn value(&self) -> u64 {
        self.prime_powers().product()
    }
}

/// All divisors of `n` in increasing order, by trial division up to `sqrt(n)`.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::invalid("0 has no finite divisor list"));
    }
    if n > TRIAL_DIVISION_LIMIT {
        return Err(Error::BudgetExceeded {
            what: "divisor scan input",
            value: n,
            limit: TRIAL_DIVISION_LIMIT,
        });
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_lcm() {
        assert_eq!(gcd(8316000, 8400), 8400);
        assert_eq!(gcd(0, 7), 7);
        assert_eq!(checked_lcm(4, 6), Some(12));
        assert_eq!(checked_lcm(u64::MAX, u64::MAX - 1), None);
    }

    #[test]
    fn primality_matches_sieve() {
        let limit = 10_000usize;
        let mut sieve = vec![true; limit];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..limit {
            if sieve[i] {
                for j in (i * i..limit).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (n, &expected) in sieve.iter().enumerate() {
            assert_eq!(is_prime(n as u64), expected, "n = {n}");
        }
    }

    #[test]
    fn primality_large() {
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(18_446_744_073_709_551_615));
        assert!(!is_prime(2_047));
        // strong pseudoprime to bases 2, 3, 5 and 7
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn factorization_of_large_composites() {
        let f = PrimePowerFactorization::of(8316000).unwrap();
        assert_eq!(f.factors(), &[(2, 5), (3, 3), (5, 3), (7, 1), (11, 1)]);
        assert_eq!(f.value(), 8316000);
        assert_eq!(f.exponent_of(5), 3);
        assert_eq!(f.exponent_of(13), 0);
        assert!(PrimePowerFactorization::of(1).unwrap().factors().is_empty());
    }

    #[test]
    fn factorization_budget() {
        assert!(matches!(
            PrimePowerFactorization::of(TRIAL_DIVISION_LIMIT + 1),
            Err(Error::BudgetExceeded { .. })
        ));
        // largest prime below 10^12 still fits the iteration budget
        assert_eq!(
            PrimePowerFactorization::of(999_999_999_989)
                .unwrap()
                .factors(),
            &[(999_999_999_989, 1)]
        );
    }

    #[test]
    fn divisor_listing() {
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(49).unwrap(), vec![1, 7, 49]);
        assert!(divisors(0).is_err());
    }
}
