//! Solutions of `C(1,p) * X = C(n,q)` through feasible divisors.
//!
//! One cycle of length `t` times `C(1,p)` gives `gcd(p,t)` cycles of length
//! `lcm(p,t)`. A cycle of `X` is useful only when `lcm(p,t) = q`, and then it
//! contributes `r = gcd(p,t)` target cycles with `t = (q/p) * r`. The divisors
//! `r` of `q` for which this works are the feasible divisors, and the
//! solutions are exactly the multiplicity vectors `y` with `sum r_i * y_i = n`,
//! mapped to `X = sum C(y_i, (q/p) * r_i)`.

use serde::Serialize;

use crate::arith::{checked_lcm, divisors, gcd};
use crate::cycles::{BasicEquation, CycleSet};
use crate::decide::{DecisionReport, Monomial, Refutation};
use crate::error::{Error, Result};
use crate::semigroup::Semigroup;

/// Largest `n` accepted by [`count_solutions`].
pub const COUNT_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeasibleDivisorSet {
    pub p: u64,
    pub q: u64,
    /// Strictly decreasing.
    divisors: Vec<u64>,
    /// `(q/p) * r` for each divisor, same order.
    lengths: Vec<u64>,
}

impl FeasibleDivisorSet {
    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    /// Cycle length of `X` matched with each divisor.
    pub fn lengths(&self) -> &[u64] {
        &self.lengths
    }

    pub fn len(&self) -> usize {
        self.divisors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.divisors.is_empty()
    }

    /// `X = sum C(y_i, lengths[i])`.
    pub fn to_cycles(&self, tuple: &SolutionTuple) -> CycleSet {
        CycleSet::normalize(
            self.lengths
                .iter()
                .zip(&tuple.multiplicities)
                .map(|(&len, &y)| (len, y)),
        )
        .expect("distinct lengths cannot overflow on merge")
    }
}

/// Multiplicities `y_i`, one per feasible divisor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SolutionTuple {
    pub multiplicities: Vec<u64>,
}

/// Scans the divisors `r` of `q` for `gcd(p, (q/p) r) = r` and `lcm(p, (q/p) r) = q`.
pub fn feasible_divisors(p: u64, q: u64) -> Result<FeasibleDivisorSet> {
    if p == 0 || q == 0 {
        return Err(Error::invalid("p and q must be positive"));
    }
    if !q.is_multiple_of(p) {
        return Err(Error::Precondition(format!("{p} does not divide {q}")));
    }
    let ratio = q / p;
    let mut divs = Vec::new();
    let mut lengths = Vec::new();
    for r in divisors(q)?.into_iter().rev() {
        let Some(length) = ratio.checked_mul(r) else {
            continue;
        };
        if gcd(p, length) == r && checked_lcm(p, length) == Some(q) {
            divs.push(r);
            lengths.push(length);
        }
    }
    Ok(FeasibleDivisorSet {
        p,
        q,
        divisors: divs,
        lengths,
    })
}

/// Decides `C(1,p) * X = C(n,q)` as semigroup membership of `n` over the
/// feasible divisors.
pub fn decide_by_enumeration(p: u64, q: u64, n: u64) -> Result<bool> {
    BasicEquation::new(p, q, n)?;
    if !q.is_multiple_of(p) {
        return Ok(false);
    }
    let set = feasible_divisors(p, q)?;
    Ok(Semigroup::new(set.divisors()).contains(n))
}

/// Lazy stream of all solutions in lexicographically decreasing order of
/// their non-increasing divisor sequences.
///
/// Dead branches are never entered: before fixing a multiplicity the stream
/// checks, with a residue table per suffix of divisors, that the remainder
/// can still be completed.
#[derive(Debug, Clone)]
pub struct Solutions {
    equation: BasicEquation,
    set: FeasibleDivisorSet,
    /// `suffix[i]` is generated by `divisors[i..]`.
    suffix: Vec<Semigroup>,
    current: Vec<u64>,
    /// Remainder of `n` before position `i` is assigned.
    remaining: Vec<u64>,
    started: bool,
    done: bool,
    limit: Option<usize>,
    emitted: usize,
}

impl Solutions {
    fn new(equation: BasicEquation, set: FeasibleDivisorSet, limit: Option<usize>) -> Self {
        let e = set.len();
        let suffix = (0..=e)
            .map(|i| Semigroup::new(&set.divisors[i..]))
            .collect();
        Self {
            equation,
            set,
            suffix,
            current: vec![0; e],
            remaining: vec![0; e],
            started: false,
            done: false,
            limit,
            emitted: 0,
        }
    }

    pub fn feasible(&self) -> &FeasibleDivisorSet {
        &self.set
    }

    /// Largest multiplicity `y <= max` at position `i` whose remainder is
    /// completable by the later divisors.
    fn best_at(&self, i: usize, rest: u64, max: u64) -> Option<u64> {
        let d = self.set.divisors[i];
        let tail = &self.suffix[i + 1];
        (0..=max).rev().find(|&y| tail.contains(rest - y * d))
    }

    /// Greedy completion of positions `from..`, given a completable remainder.
    fn fill(&mut self, from: usize, mut rest: u64) {
        for i in from..self.current.len() {
            self.remaining[i] = rest;
            let d = self.set.divisors[i];
            let y = self
                .best_at(i, rest, rest / d)
                .expect("remainder was checked to be completable");
            self.current[i] = y;
            rest -= y * d;
        }
        debug_assert_eq!(rest, 0);
    }

    fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            if self.current.is_empty() || !self.suffix[0].contains(self.equation.n) {
                return false;
            }
            self.fill(0, self.equation.n);
            return true;
        }
        // The last multiplicity is forced by the others, so never pivot on it.
        for i in (0..self.current.len().saturating_sub(1)).rev() {
            if self.current[i] == 0 {
                continue;
            }
            let rest = self.remaining[i];
            if let Some(y) = self.best_at(i, rest, self.current[i] - 1) {
                self.current[i] = y;
                self.fill(i + 1, rest - y * self.set.divisors[i]);
                return true;
            }
        }
        false
    }

    /// Next multiplicity vector, without converting it to cycles.
    pub fn next_tuple(&mut self) -> Option<SolutionTuple> {
        if self.done || self.limit.is_some_and(|l| self.emitted >= l) {
            return None;
        }
        if !self.advance() {
            self.done = true;
            return None;
        }
        self.emitted += 1;
        Some(SolutionTuple {
            multiplicities: self.current.clone(),
        })
    }
}

impl Iterator for Solutions {
    type Item = CycleSet;

    fn next(&mut self) -> Option<CycleSet> {
        let tuple = self.next_tuple()?;
        let x = self.set.to_cycles(&tuple);
        debug_assert!(
            self.equation.is_solution(&x),
            "{x} does not solve {}",
            self.equation
        );
        Some(x)
    }
}

/// All solutions of `C(1,p) * X = C(n,q)`, at most `limit` of them.
pub fn enumerate_solutions(p: u64, q: u64, n: u64, limit: Option<usize>) -> Result<Solutions> {
    let equation = BasicEquation::new(p, q, n)?;
    let set = if q.is_multiple_of(p) {
        feasible_divisors(p, q)?
    } else {
        FeasibleDivisorSet {
            p,
            q,
            divisors: Vec::new(),
            lengths: Vec::new(),
        }
    };
    Ok(Solutions::new(equation, set, limit))
}

/// Number of solutions, by restricted-partition counting over the feasible
/// divisors.
pub fn count_solutions(p: u64, q: u64, n: u64) -> Result<u64> {
    BasicEquation::new(p, q, n)?;
    if n > COUNT_LIMIT {
        return Err(Error::BudgetExceeded {
            what: "n for counting",
            value: n,
            limit: COUNT_LIMIT,
        });
    }
    if !q.is_multiple_of(p) {
        return Ok(0);
    }
    let set = feasible_divisors(p, q)?;
    let n = n as usize;
    let mut ways = vec![0u64; n + 1];
    ways[0] = 1;
    for &d in set.divisors() {
        let d = d as usize;
        for v in d..=n {
            ways[v] = ways[v]
                .checked_add(ways[v - d])
                .ok_or(Error::Overflow("solution count"))?;
        }
    }
    Ok(ways[n])
}

/// Decides `sum C(m_i,p_i) * X = C(n,q)` exactly.
///
/// A cycle length `t` of `X` is admissible when `lcm(p_i, t) = q` for every
/// monomial; it then contributes `c_t = sum m_i gcd(p_i, t)` target cycles.
/// The equation is solvable iff `n` is a nonnegative combination of the
/// weights `c_t`, and one such combination gives the witness.
pub fn decide_sum_lhs(monomials: &[Monomial], q: u64, n: u64) -> Result<DecisionReport> {
    if monomials.is_empty() {
        return Err(Error::invalid("left-hand side needs at least one monomial"));
    }
    if monomials.iter().any(|m| m.count == 0 || m.length == 0) || q == 0 || n == 0 {
        return Err(Error::invalid("monomials, q and n must be positive"));
    }
    let mut admissible: Vec<(u64, u64)> = Vec::new();
    for t in divisors(q)? {
        if monomials
            .iter()
            .all(|m| checked_lcm(m.length, t) == Some(q))
        {
            let weight = monomials.iter().try_fold(0u64, |acc, m| {
                m.count
                    .checked_mul(gcd(m.length, t))
                    .and_then(|w| acc.checked_add(w))
                    .ok_or(Error::Overflow("admissible weight"))
            })?;
            admissible.push((t, weight));
        }
    }
    let weights: Vec<u64> = admissible.iter().map(|&(_, w)| w).collect();
    let semigroup = Semigroup::new(&weights);
    let Some(counts) = semigroup.representation(n) else {
        return Ok(DecisionReport::unsolvable(Refutation::WeightFails {
            n,
            weights: semigroup.generators().to_vec(),
        }));
    };
    let witness =
        CycleSet::normalize(semigroup.generators().iter().zip(&counts).map(|(&w, &y)| {
            let t = admissible
                .iter()
                .find(|&&(_, weight)| weight == w)
                .map(|&(t, _)| t)
                .expect("generator comes from an admissible weight");
            (t, y)
        }))?;
    debug_assert_eq!(
        CycleSet::normalize(monomials.iter().map(|m| (m.length, m.count)))
            .and_then(|a| a.mul(&witness))
            .ok(),
        Some(CycleSet::cycles(n, q))
    );
    Ok(DecisionReport::solvable(witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decide::deep_decide;

    #[test]
    fn feasible_divisor_examples() {
        assert_eq!(feasible_divisors(4, 12).unwrap().divisors(), &[4, 2, 1]);
        assert_eq!(feasible_divisors(4, 12).unwrap().lengths(), &[12, 6, 3]);
        assert_eq!(feasible_divisors(2, 4).unwrap().divisors(), &[2]);
        assert_eq!(feasible_divisors(6, 6).unwrap().divisors(), &[6, 3, 2, 1]);
        assert!(matches!(
            feasible_divisors(3, 4),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            feasible_divisors(1, 2_000_000_000_000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn decide_by_enumeration_examples() {
        assert!(decide_by_enumeration(8400, 8316000, 6000).unwrap());
        assert!(!decide_by_enumeration(2, 4, 5).unwrap());
        assert!(decide_by_enumeration(1, 1, 17).unwrap());
        assert!(!decide_by_enumeration(3, 4, 1).unwrap());
    }

    #[test]
    fn enumerate_golden_order() {
        let all: Vec<CycleSet> = enumerate_solutions(4, 12, 12, None).unwrap().collect();
        assert_eq!(all.len(), 16);
        assert_eq!(all[0], CycleSet::cycles(3, 12));
        assert_eq!(all[15], CycleSet::cycles(12, 3));
        assert_eq!(all[1], CycleSet::normalize([(12, 2), (6, 2)]).unwrap());
    }

    #[test]
    fn enumerate_small_instances() {
        assert_eq!(enumerate_solutions(2, 4, 5, None).unwrap().count(), 0);
        let sols: Vec<CycleSet> = enumerate_solutions(7, 7, 1, None).unwrap().collect();
        assert_eq!(sols, vec![CycleSet::one()]);
        assert_eq!(enumerate_solutions(3, 4, 2, None).unwrap().count(), 0);
    }

    #[test]
    fn enumerate_respects_limit() {
        let first: Vec<CycleSet> = enumerate_solutions(4, 12, 12, Some(3)).unwrap().collect();
        let all: Vec<CycleSet> = enumerate_solutions(4, 12, 12, None).unwrap().collect();
        assert_eq!(first, all[..3]);
    }

    #[test]
    fn enumerate_is_lazy_on_huge_instances() {
        // ~n^2 / 2 solutions; the first few must come out immediately.
        let mut it = enumerate_solutions(2, 2, 1_000_000_000_000, None).unwrap();
        assert_eq!(it.next(), Some(CycleSet::cycles(500_000_000_000, 2)));
        assert_eq!(
            it.next(),
            Some(CycleSet::normalize([(1, 2), (2, 499_999_999_999)]).unwrap())
        );
    }

    #[test]
    fn enumerate_only_reachable_totals() {
        // feasible divisors {12, 4}: totals must be multiples of 4
        assert_eq!(feasible_divisors(12, 24).unwrap().divisors(), &[12, 4]);
        assert_eq!(enumerate_solutions(12, 24, 10, None).unwrap().count(), 0);
        let sols: Vec<_> = enumerate_solutions(12, 24, 16, None).unwrap().collect();
        assert_eq!(
            sols,
            vec![
                CycleSet::normalize([(24, 1), (8, 1)]).unwrap(),
                CycleSet::cycles(4, 8),
            ]
        );
        assert_eq!(count_solutions(12, 24, 16).unwrap(), 2);
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_solutions(4, 12, 12).unwrap(), 16);
        assert_eq!(count_solutions(2, 4, 5).unwrap(), 0);
        assert_eq!(count_solutions(4, 12, 4).unwrap(), 4);
        assert!(matches!(
            count_solutions(1, 1, COUNT_LIMIT + 1),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn sum_lhs_examples() {
        let monos = [Monomial::new(1, 2), Monomial::new(1, 3)];
        let report = decide_sum_lhs(&monos, 6, 10).unwrap();
        assert!(report.verdict);
        assert_eq!(report.witness(), Some(&CycleSet::cycles(2, 6)));
        let report = decide_sum_lhs(&monos, 6, 7).unwrap();
        assert_eq!(
            report.refutation(),
            Some(&Refutation::WeightFails {
                n: 7,
                weights: vec![5]
            })
        );
        for (p, q, n) in [(2, 4, 5), (4, 12, 12), (8400, 8316000, 6000), (3, 9, 2)] {
            assert_eq!(
                decide_sum_lhs(&[Monomial::new(1, p)], q, n)
                    .unwrap()
                    .verdict,
                deep_decide(p, q, n).unwrap().verdict
            );
        }
    }
}
