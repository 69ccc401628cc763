mod common;

use std::collections::BTreeSet;

use common::{admissible_weights, brute_solutions, orbit_lengths};
use cyclering::{
    count_solutions, decide_by_enumeration, enumerate_solutions, feasible_divisors, representable,
    CycleSet, Semigroup,
};
use proptest::prelude::*;

#[test]
fn feasible_divisors_multiply_back() {
    for q in 1..=500u64 {
        for p in (1..=q).filter(|p| q % p == 0) {
            let set = feasible_divisors(p, q).unwrap();
            for (&r, &len) in set.divisors().iter().zip(set.lengths()) {
                assert_eq!(len, q / p * r);
                let orbits = orbit_lengths(p, len);
                assert!(orbits.iter().all(|&o| o == q), "p={p} q={q} r={r}");
                assert_eq!(orbits.len() as u64, r, "p={p} q={q} r={r}");
            }
            // every cycle length that can occur in a solution is covered
            let lengths: BTreeSet<u64> = set.lengths().iter().copied().collect();
            let expected: BTreeSet<u64> = admissible_weights(1, p, q).iter().map(|w| w.0).collect();
            assert_eq!(lengths, expected, "p={p} q={q}");
        }
    }
}

#[test]
fn enumeration_matches_exhaustive_search() {
    for q in 1..=36u64 {
        for p in (1..=q).filter(|p| q % p == 0) {
            for n in 1..=24u64 {
                let listed: Vec<CycleSet> = enumerate_solutions(p, q, n, None).unwrap().collect();
                let unique: BTreeSet<CycleSet> = listed.iter().cloned().collect();
                assert_eq!(unique.len(), listed.len(), "duplicates for ({p},{q},{n})");
                let brute: BTreeSet<CycleSet> = brute_solutions(p, q, n).into_iter().collect();
                assert_eq!(unique, brute, "({p},{q},{n})");
                assert_eq!(count_solutions(p, q, n).unwrap(), listed.len() as u64);
                assert_eq!(decide_by_enumeration(p, q, n).unwrap(), !listed.is_empty());
            }
        }
    }
}

#[test]
fn enumeration_order_is_lexicographically_decreasing() {
    let mut stream = enumerate_solutions(6, 36, 30, None).unwrap();
    let mut previous: Option<Vec<u64>> = None;
    while let Some(tuple) = stream.next_tuple() {
        let divisors = stream.feasible().divisors();
        let total: u64 = divisors
            .iter()
            .zip(&tuple.multiplicities)
            .map(|(d, y)| d * y)
            .sum();
        assert_eq!(total, 30);
        if let Some(prev) = &previous {
            assert!(tuple.multiplicities < *prev);
        }
        previous = Some(tuple.multiplicities);
    }
}

#[test]
fn non_dividing_p_has_no_solutions() {
    assert_eq!(enumerate_solutions(3, 4, 6, None).unwrap().count(), 0);
    assert_eq!(count_solutions(3, 4, 6).unwrap(), 0);
    assert!(!decide_by_enumeration(3, 4, 6).unwrap());
}

#[test]
fn limit_and_laziness() {
    let first: Vec<CycleSet> = enumerate_solutions(12, 12, 1_200_000_000_000, Some(3))
        .unwrap()
        .collect();
    assert_eq!(first.len(), 3);
    assert_eq!(first[0], CycleSet::cycles(100_000_000_000, 12));
}

#[test]
fn residue_table_survives_large_generators() {
    let g = 1u64 << 23;
    let s = Semigroup::new(&[g, g + 1]);
    assert!(s.contains(2 * g + 1));
    assert!(!s.contains(g + 2));
    assert_eq!(s.representation(3 * g + 2), Some(vec![1, 2]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn membership_matches_dynamic_programming(gens in prop::collection::vec(1u64..200, 1..5)) {
        let s = Semigroup::new(&gens);
        let mut table = vec![false; 10_001];
        table[0] = true;
        for n in 1..table.len() {
            table[n] = gens.iter().any(|&g| g as usize <= n && table[n - g as usize]);
        }
        for n in 0..=10_000u64 {
            let expected = table[n as usize];
            prop_assert_eq!(s.contains(n), expected, "n = {}", n);
            if let Some(y) = s.representation(n) {
                let total: u64 = s.generators().iter().zip(&y).map(|(g, y)| g * y).sum();
                prop_assert_eq!(total, n);
            } else {
                prop_assert!(!expected);
            }
        }
    }

    #[test]
    fn representable_is_closed_under_addition(
        gens in prop::collection::vec(1u64..50, 1..4),
        a in 0u64..500,
        b in 0u64..500,
    ) {
        if representable(&gens, a) && representable(&gens, b) {
            prop_assert!(representable(&gens, a + b));
        }
        for &g in &gens {
            prop_assert!(representable(&gens, g * (a % 7)));
        }
    }
}
