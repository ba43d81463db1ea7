//! Library searches against the unpruned oracles in `common`.

mod common;

use colorpat::balance::{
    balancing_number_exact, find_balanced, find_balanced_cycle, find_balanced_path, BalancingValue,
    Guest,
};
use common::lemmas;
use common::{injective, naive_balanced, naive_balancing_number, random_host, walk_profile};

fn value(n: usize, guest: &Guest, r: usize) -> Option<usize> {
    match balancing_number_exact(n, guest, r).unwrap().value.unwrap() {
        BalancingValue::Value(m) => Some(m),
        BalancingValue::AllColoringsContain => None,
    }
}

#[test]
fn balancing_numbers_match_definition() {
    let cases = [
        (4, Guest::path(2), 2),
        (5, Guest::path(2), 2),
        (5, Guest::path(3), 2),
        (5, Guest::path(4), 2),
        (5, Guest::cycle(4), 2),
        (4, Guest::path(3), 3),
        (5, Guest::complete(3), 2),
        (4, Guest::cycle(3), 3),
    ];
    for (n, guest, r) in cases {
        assert_eq!(
            value(n, &guest, r),
            naive_balancing_number(n, &guest, r),
            "{} n={n} r={r}",
            common::guest_label(&guest)
        );
    }
}

#[test]
fn path_and_cycle_search_match_definition() {
    for seed in 0..300u64 {
        let n = 4 + (seed % 5) as usize;
        let r = 2 + (seed % 2) as usize;
        let g = random_host(n, r, 10_000 + seed);
        for len in 1..n {
            let got = find_balanced_path(&g, len, r).unwrap();
            assert_eq!(
                got.is_some(),
                naive_balanced(&g, &Guest::path(len), r),
                "seed {seed} path {len}"
            );
            if let Some(e) = got {
                assert!(injective(&e.map));
                assert_eq!(walk_profile(&g, &e.map, false), e.profile);
            }
        }
        let len = 3 + (seed as usize % (n - 2));
        let got = find_balanced_cycle(&g, len, r).unwrap();
        assert_eq!(
            got.is_some(),
            naive_balanced(&g, &Guest::cycle(len), r),
            "seed {seed} cycle {len}"
        );
    }
}

#[test]
fn general_guests_match_definition() {
    let guests = [
        Guest::from_edges(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap(),
        Guest::from_edges(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]).unwrap(),
        Guest::from_edges(4, vec![(0, 1), (2, 3)]).unwrap(),
        Guest::complete(4),
    ];
    for seed in 0..80u64 {
        let g = random_host(6 + (seed % 3) as usize, 3, 20_000 + seed);
        for guest in &guests {
            let got = find_balanced(&g, guest, 3).unwrap();
            assert_eq!(
                got.is_some(),
                naive_balanced(&g, guest, 3),
                "seed {seed} {guest}"
            );
        }
    }
}

#[test]
fn lemmas_small_run() {
    let ext = lemmas::lemma_extension(300, 100, 100, 7);
    let diff = lemmas::lemma_different_middles(300, 8);
    let same = lemmas::lemma_same_middle_random(300, 9);
    for t in [&ext, &diff, &same] {
        assert!(t.counterexamples.is_empty(), "{:?}", t.counterexamples);
    }
    assert_eq!(ext.instances, 500);
}
