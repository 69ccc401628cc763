//! Independent oracles and generators shared by the integration tests.
//!
//! Nothing here calls the arithmetic of the library under test: products
//! are computed by walking orbits, solvability by plain dynamic programming.
#![allow(dead_code)]

use std::collections::BTreeMap;

use cyclering::{CycleSet, ExpressionAst};
use proptest::prelude::*;

/// Orbit lengths of `(i, j) -> (i+1 mod a, j+1 mod b)` on `Z_a x Z_b`,
/// found by walking every orbit once.
pub fn orbit_lengths(a: u64, b: u64) -> Vec<u64> {
    let (a, b) = (a as usize, b as usize);
    let mut seen = vec![false; a * b];
    let mut out = Vec::new();
    for start in 0..a * b {
        if seen[start] {
            continue;
        }
        let (mut i, mut j, mut len) = (start / b, start % b, 0u64);
        while !seen[i * b + j] {
            seen[i * b + j] = true;
            i = (i + 1) % a;
            j = (j + 1) % b;
            len += 1;
        }
        out.push(len);
    }
    out
}

/// Product of two cycle sets by orbit walking on each pair of cycle lengths.
pub fn walk_mul(x: &CycleSet, y: &CycleSet) -> CycleSet {
    let mut acc: BTreeMap<u64, u64> = BTreeMap::new();
    for &(lx, cx) in x.entries() {
        for &(ly, cy) in y.entries() {
            for len in orbit_lengths(lx, ly) {
                *acc.entry(len).or_default() += cx * cy;
            }
        }
    }
    CycleSet::normalize(acc).unwrap()
}

/// Cycle lengths `t | q` such that `C(m,p) * C(1,t)` consists only of
/// `q`-cycles, paired with how many `q`-cycles one such `t`-cycle yields.
pub fn admissible_weights(m: u64, p: u64, q: u64) -> Vec<(u64, u64)> {
    (1..=q)
        .filter(|t| q.is_multiple_of(*t))
        .filter_map(|t| {
            let orbits = orbit_lengths(p, t);
            orbits
                .iter()
                .all(|&l| l == q)
                .then(|| (t, m * orbits.len() as u64))
        })
        .collect()
}

/// Plain unbounded-knapsack reachability.
pub fn reachable(weights: &[u64], n: u64) -> bool {
    let n = n as usize;
    let mut dp = vec![false; n + 1];
    dp[0] = true;
    for v in 1..=n {
        dp[v] = weights
            .iter()
            .any(|&w| w as usize <= v && dp[v - w as usize]);
    }
    dp[n]
}

/// Is `C(m,p) * X = C(n,q)` solvable? Searches every cycle length of `X`
/// that can occur (a `t`-cycle produces `lcm(p,t)`-cycles, so `t | q`).
pub fn brute_scaled(m: u64, p: u64, q: u64, n: u64) -> bool {
    let weights: Vec<u64> = admissible_weights(m, p, q).iter().map(|w| w.1).collect();
    reachable(&weights, n)
}

/// Every solution of `C(1,p) * X = C(n,q)`, by exhaustive search over
/// multiplicity vectors.
pub fn brute_solutions(p: u64, q: u64, n: u64) -> Vec<CycleSet> {
    fn go(items: &[(u64, u64)], left: u64, chosen: &mut Vec<(u64, u64)>, out: &mut Vec<CycleSet>) {
        let Some((&(t, w), rest)) = items.split_first() else {
            if left == 0 {
                out.push(CycleSet::normalize(chosen.iter().copied()).unwrap());
            }
            return;
        };
        for y in 0..=left / w {
            chosen.push((t, y));
            go(rest, left - y * w, chosen, out);
            chosen.pop();
        }
    }
    let items = admissible_weights(1, p, q);
    let mut out = Vec::new();
    go(&items, n, &mut Vec::new(), &mut out);
    out
}

/// Trial-division factorization.
pub fn factor(mut n: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut d = 2;
    while d * d <= n {
        while n.is_multiple_of(d) {
            *out.entry(d).or_default() += 1;
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        *out.entry(n).or_default() += 1;
    }
    out
}

pub fn cycle_set() -> impl Strategy<Value = CycleSet> {
    prop::collection::vec((1u64..=12, 0u64..=4), 0..5)
        .prop_map(|raw| CycleSet::normalize(raw).unwrap())
}

fn leaf() -> impl Strategy<Value = ExpressionAst> {
    prop::collection::vec((1u64..=6, 0u64..=3), 0..3)
        .prop_map(|raw| ExpressionAst::Const(CycleSet::normalize(raw).unwrap()))
}

/// Ground expressions of bounded depth and fan-out.
pub fn ground_expression() -> impl Strategy<Value = ExpressionAst> {
    leaf().prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(ExpressionAst::Add),
            prop::collection::vec(inner.clone(), 2..4).prop_map(ExpressionAst::Mul),
            (inner, 0u64..=3).prop_map(|(b, w)| ExpressionAst::Pow(Box::new(b), w)),
        ]
    })
}
