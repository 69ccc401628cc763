//! Factorization-free deciders for cycle equations.
//!
//! The core routine is [`deep_decide`], which settles `C(1,p) * X = C(n,q)`
//! with a logarithmic number of gcd computations:
//!
//! 1. `p` must divide `q`.
//! 2. Strip from `q` the prime powers whose primes do not occur in `p`
//!    ([`foreign_part`]).
//! 3. From what is left, extract the prime powers of `p` whose exponent is
//!    strictly smaller than in `q` ([`deficient_part`]); call the product `e`.
//! 4. The equation is solvable iff `e` divides `n`.
//!
//! [`theorem_characterization`] evaluates the same criterion directly on
//! prime factorizations and exists as an oracle for tests.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::arith::{gcd, is_prime, GcdCounter, PrimePowerFactorization};
use crate::cycles::CycleSet;
use crate::error::{Error, Result};

/// A left-hand-side term `C(count, length)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Monomial {
    pub count: u64,
    pub length: u64,
}

impl Monomial {
    pub fn new(count: u64, length: u64) -> Self {
        Self { count, length }
    }
}

impl From<(u64, u64)> for Monomial {
    /// `(count, length)`, the same order as `C(count,length)`.
    fn from((count, length): (u64, u64)) -> Self {
        Self { count, length }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({},{})", self.count, self.length)
    }
}

/// Why an equation has no solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    /// The coefficient cycle length does not divide the target length.
    NotDivisible { p: u64, q: u64 },
    /// The deficient part `e` of `p` does not divide the multiplicity.
    DeficientPartFails { e: u64, n: u64 },
    /// The coefficient multiplicity does not divide the target multiplicity.
    CoefficientFails { m: u64, n: u64 },
    /// A coefficient length is not a smaller power of the target's prime.
    LengthNotPrimePower {
        length: u64,
        prime: u64,
        exponent: u32,
    },
    /// `n` is not a nonnegative combination of the admissible weights.
    WeightFails { n: u64, weights: Vec<u64> },
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refutation::NotDivisible { p, q } => write!(f, "p = {p} does not divide q = {q}"),
            Refutation::DeficientPartFails { e, n } => {
                write!(f, "e = {e} does not divide n = {n}")
            }
            Refutation::CoefficientFails { m, n } => {
                write!(f, "m = {m} does not divide n = {n}")
            }
            Refutation::LengthNotPrimePower {
                length,
                prime,
                exponent,
            } => write!(
                f,
                "length {length} is not a power of {prime} below {prime}^{exponent}"
            ),
            Refutation::WeightFails { n, weights } if weights.is_empty() => {
                write!(f, "no admissible cycle length, n = {n} unreachable")
            }
            Refutation::WeightFails { n, weights } => {
                let list: Vec<String> = weights.iter().map(u64::to_string).collect();
                write!(
                    f,
                    "n = {n} is not a nonnegative combination of {{{}}}",
                    list.join(", ")
                )
            }
        }
    }
}

impl Serialize for Refutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    Witness(CycleSet),
    Refutation(Refutation),
}

/// Values computed on the way to a verdict by [`deep_decide`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Intermediates {
    /// Product of the prime powers of `q` foreign to `p`.
    pub pi_f: u64,
    /// Product of the prime powers of `p` with a larger exponent in `q`.
    pub e: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecisionReport {
    pub verdict: bool,
    #[serde(flatten)]
    pub certificate: Certificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intermediates: Option<Intermediates>,
    /// gcd invocations of the decision procedure, when instrumented.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gcd_calls: Option<u64>,
}

impl DecisionReport {
    pub fn solvable(witness: CycleSet) -> Self {
        Self {
            verdict: true,
            certificate: Certificate::Witness(witness),
            intermediates: None,
            gcd_calls: None,
        }
    }

    pub fn unsolvable(refutation: Refutation) -> Self {
        Self {
            verdict: false,
            certificate: Certificate::Refutation(refutation),
            intermediates: None,
            gcd_calls: None,
        }
    }

    pub fn witness(&self) -> Option<&CycleSet> {
        match &self.certificate {
            Certificate::Witness(w) => Some(w),
            Certificate::Refutation(_) => None,
        }
    }

    pub fn refutation(&self) -> Option<&Refutation> {
        match &self.certificate {
            Certificate::Refutation(r) => Some(r),
            Certificate::Witness(_) => None,
        }
    }
}

fn require_positive(values: &[(&str, u64)]) -> Result<()> {
    for &(name, v) in values {
        if v == 0 {
            return Err(Error::invalid(format!("{name} must be positive")));
        }
    }
    Ok(())
}

fn require_monomials(monomials: &[Monomial]) -> Result<()> {
    if monomials.is_empty() {
        return Err(Error::invalid("left-hand side needs at least one monomial"));
    }
    for m in monomials {
        require_positive(&[("monomial count", m.count), ("monomial length", m.length)])?;
    }
    Ok(())
}

/// Product of the prime powers of `q` whose primes do not divide `p`.
#[doc(alias = "pi_f")]
pub fn foreign_part(p: u64, q: u64) -> u64 {
    foreign_part_counted(p, q, &mut GcdCounter::new())
}

fn foreign_part_counted(mut p: u64, mut q: u64, gcds: &mut GcdCounter) -> u64 {
    loop {
        let g = gcds.gcd(p, q);
        if g == 1 {
            return q;
        }
        p = g;
        q /= g;
    }
}

/// For `p | shared`, the product of the prime powers of `p` whose exponent in
/// `shared` is strictly larger.
#[doc(alias = "pi_e")]
pub fn deficient_part(p: u64, shared: u64) -> Result<u64> {
    deficient_part_counted(p, shared, &mut GcdCounter::new())
}

fn deficient_part_counted(p: u64, shared: u64, gcds: &mut GcdCounter) -> Result<u64> {
    require_positive(&[("p", p), ("q'", shared)])?;
    if !shared.is_multiple_of(p) {
        return Err(Error::Precondition(format!("{p} does not divide {shared}")));
    }
    let quotient = shared / p;
    if quotient == 1 || p == 1 {
        return Ok(1);
    }
    // gcd(d^k, p) only depends on d^k mod p, so squaring stays in range.
    let mut power = quotient % p;
    let mut g = gcds.gcd(power, p);
    loop {
        power = ((power as u128 * power as u128) % p as u128) as u64;
        let next = gcds.gcd(power, p);
        if next == g {
            return Ok(g);
        }
        g = next;
    }
}

/// Builds one solution of `C(1,p) * X = C(n,q)` from gcds alone: a single
/// cycle length `t` carrying the foreign part of `q` and the full powers of
/// the deficient primes, so that `gcd(p,t) = e` and `lcm(p,t) = q`.
fn gcd_witness(q: u64, n: u64, pi_f: u64, e: u64) -> CycleSet {
    let shared = q / pi_f;
    let deficient_full = shared / foreign_part(e, shared);
    CycleSet::cycles(n / e, pi_f * deficient_full)
}

/// Decides `C(1,p) * X = C(n,q)` with gcd computations only.
pub fn deep_decide(p: u64, q: u64, n: u64) -> Result<DecisionReport> {
    require_positive(&[("p", p), ("q", q), ("n", n)])?;
    let mut gcds = GcdCounter::new();
    let g = gcds.gcd(p, q);
    if g != p {
        let mut report = DecisionReport::unsolvable(Refutation::NotDivisible { p, q });
        report.gcd_calls = Some(gcds.calls());
        return Ok(report);
    }
    // The first step of the foreign-part recursion is gcd(p, q) = p, reused.
    let pi_f = if p == 1 {
        q
    } else {
        foreign_part_counted(p, q / p, &mut gcds)
    };
    let e = deficient_part_counted(p, q / pi_f, &mut gcds)?;
    let divides = e == 1 || gcds.gcd(e, n) == e;
    let mut report = if divides {
        let witness = gcd_witness(q, n, pi_f, e);
        debug_assert_eq!(
            CycleSet::cycles(1, p).mul(&witness).ok(),
            Some(CycleSet::cycles(n, q))
        );
        DecisionReport::solvable(witness)
    } else {
        DecisionReport::unsolvable(Refutation::DeficientPartFails { e, n })
    };
    report.intermediates = Some(Intermediates { pi_f, e });
    report.gcd_calls = Some(gcds.calls());
    Ok(report)
}

/// Solvability criterion evaluated on explicit prime factorizations of `p`
/// and `q`: `p | q`, and every prime power `p_i^h_i` of `p` either appears
/// with the same exponent in `q` or divides `n`.
pub fn theorem_characterization(p: u64, q: u64, n: u64) -> Result<bool> {
    require_positive(&[("p", p), ("q", q), ("n", n)])?;
    let fp = PrimePowerFactorization::of(p)?;
    let fq = PrimePowerFactorization::of(q)?;
    let divides = fp
        .factors()
        .iter()
        .all(|&(prime, h)| fq.exponent_of(prime) >= h);
    if !divides {
        return Ok(false);
    }
    Ok(fp
        .factors()
        .iter()
        .all(|&(prime, h)| fq.exponent_of(prime) == h || n.is_multiple_of(prime.pow(h))))
}

/// Decides `C(m,p) * X = C(n,q)`.
///
/// `C(m,p) * X` is `m` disjoint copies of `C(1,p) * X`, so a solution exists
/// iff `m | n` and `C(1,p) * X = C(n/m, q)` is solvable; the witness carries over.
pub fn decide_scaled(m: u64, p: u64, q: u64, n: u64) -> Result<DecisionReport> {
    require_positive(&[("m", m), ("p", p), ("q", q), ("n", n)])?;
    if !n.is_multiple_of(m) {
        return Ok(DecisionReport::unsolvable(Refutation::CoefficientFails {
            m,
            n,
        }));
    }
    deep_decide(p, q, n / m)
}

/// The literal scaled criterion: `mq/p` divides `n` and
/// `C(1,p) * X = C(np/(mq), q)` is solvable.
///
/// Kept for diagnostics only; it rejects solvable instances such as
/// `C(2,2) * X = C(4,4)` (solved by `X = C(1,4)`).
pub fn decide_scaled_paper_strict(m: u64, p: u64, q: u64, n: u64) -> Result<bool> {
    require_positive(&[("m", m), ("p", p), ("q", q), ("n", n)])?;
    let mq = (m as u128) * (q as u128);
    if !mq.is_multiple_of(p as u128) {
        return Ok(false);
    }
    let k = mq / p as u128;
    if !(n as u128).is_multiple_of(k) {
        return Ok(false);
    }
    let reduced = (n as u128 / k) as u64;
    Ok(deep_decide(p, q, reduced)?.verdict)
}

/// Decides `C(m,p) * X = sum C(n_i, q_i)`, one scaled equation per distinct
/// target length. `targets` are `(n_i, q_i)` pairs; repeated lengths are
/// merged by summing their multiplicities.
pub fn decide_multi_target(m: u64, p: u64, targets: &[(u64, u64)]) -> Result<DecisionReport> {
    require_positive(&[("m", m), ("p", p)])?;
    if targets.is_empty() {
        return Err(Error::invalid("right-hand side needs at least one target"));
    }
    for &(n, q) in targets {
        require_positive(&[("target multiplicity", n), ("target length", q)])?;
    }
    let merged = CycleSet::normalize(targets.iter().map(|&(n, q)| (q, n)))?;
    let mut witness = CycleSet::zero();
    let mut gcd_calls = 0;
    for &(q, n) in merged.entries() {
        let report = decide_scaled(m, p, q, n)?;
        gcd_calls += report.gcd_calls.unwrap_or(0);
        match report.certificate {
            Certificate::Witness(w) => witness = witness.add(&w)?,
            Certificate::Refutation(_) => return Ok(report),
        }
    }
    let mut report = DecisionReport::solvable(witness);
    report.gcd_calls = Some(gcd_calls);
    Ok(report)
}

/// Necessary condition for `sum C(m_k,p_k) * X = C(n,q)`: `sum m_k p_k`
/// divides `n q`. `false` proves unsolvability, `true` proves nothing.
pub fn necessary_weight_condition(monomials: &[Monomial], q: u64, n: u64) -> Result<bool> {
    require_monomials(monomials)?;
    require_positive(&[("q", q), ("n", n)])?;
    let weight = monomial_weight(monomials)?;
    let nq = n as u128 * q as u128;
    Ok(nq.is_multiple_of(weight as u128))
}

/// Necessary condition for `sum C(m_k,p_k) * X = C(n,q)`: `gcd(m_1..m_r)`
/// divides `n`.
pub fn necessary_gcd_condition(monomials: &[Monomial], n: u64) -> Result<bool> {
    require_monomials(monomials)?;
    let g = monomials.iter().fold(0, |acc, m| gcd(acc, m.count));
    Ok(n.is_multiple_of(g))
}

/// `sum m_i p_i`, checked.
fn monomial_weight(monomials: &[Monomial]) -> Result<u64> {
    monomials.iter().try_fold(0u64, |acc, m| {
        m.count
            .checked_mul(m.length)
            .and_then(|w| acc.checked_add(w))
            .ok_or(Error::Overflow("monomial weight"))
    })
}

/// Exact solver for `sum C(m_i,p_i) * X = C(n, q^t)` with `q` prime and no
/// `p_i` equal to `q^t`. The solution, when it exists, is unique and equal
/// to `C(n / sum m_i p_i, q^t)`.
pub fn solve_prime_power(
    monomials: &[Monomial],
    prime: u64,
    t: u32,
    n: u64,
) -> Result<Option<CycleSet>> {
    Ok(decide_prime_power(monomials, prime, t, n)?
        .witness()
        .cloned())
}

/// [`solve_prime_power`] with the reason for a missing solution.
pub fn decide_prime_power(
    monomials: &[Monomial],
    prime: u64,
    t: u32,
    n: u64,
) -> Result<DecisionReport> {
    require_monomials(monomials)?;
    require_positive(&[("n", n), ("t", t as u64)])?;
    if !is_prime(prime) {
        return Err(Error::NotPrime(prime));
    }
    let length = prime.checked_pow(t).ok_or(Error::Overflow("q^t"))?;
    if let Some(m) = monomials.iter().find(|m| m.length == length) {
        return Err(Error::Precondition(format!(
            "coefficient length {} equals the target length {prime}^{t}",
            m.length
        )));
    }
    // p_i | q^t with p_i != q^t means p_i = q^t_i for some t_i < t.
    if let Some(m) = monomials.iter().find(|m| length % m.length != 0) {
        return Ok(DecisionReport::unsolvable(
            Refutation::LengthNotPrimePower {
                length: m.length,
                prime,
                exponent: t,
            },
        ));
    }
    let weight = monomial_weight(monomials)?;
    if !n.is_multiple_of(weight) {
        return Ok(DecisionReport::unsolvable(Refutation::WeightFails {
            n,
            weights: vec![weight],
        }));
    }
    Ok(DecisionReport::solvable(CycleSet::cycles(
        n / weight,
        length,
    )))
}
