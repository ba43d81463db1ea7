//! Cross-module invariants as property tests.

mod common;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use colorpat::balance::{
    balancing_number_exact, find_balanced_budgeted, BalancingValue, Budget, Guest,
};
use colorpat::constructions::{
    construct_clique_partition, construct_path_blocker, construct_separator, equal_parts,
    parity_obstruction_check, path_blocker_counts, recover_clique_partition,
};
use colorpat::euler::{
    build_multigraph, build_multigraph_with, embed_balanced_long_path_traced, eulerian_circuit,
    feasibility_threshold, vertex_budget, Multiplicity,
};
use colorpat::heuristics::{
    drc_find_set, find_pattern_member, find_pattern_member_exact_with, DrcConfig, PipelineConfig,
};
use colorpat::patterns::{enumerate_patterns, part_map, PatternCatalogue};
use colorpat::ColoredGraph;
use common::{injective, is_member, naive_balanced, random_host, walk_profile};
use proptest::prelude::*;

fn catalogue(r: usize) -> &'static PatternCatalogue {
    static CATS: OnceLock<Vec<PatternCatalogue>> = OnceLock::new();
    &CATS.get_or_init(|| (2..=4).map(|r| enumerate_patterns(r).unwrap()).collect())[r - 2]
}

/// Every template of the three-color catalogue, at the threshold and two above.
#[test]
fn euler_layouts_for_all_three_color_patterns() {
    for t in &catalogue(3).templates {
        let k0 = feasibility_threshold(t);
        assert!(build_multigraph(t, k0 - 1).is_err() || k0 == 1);
        for k in k0..=k0 + 2 {
            let mg = build_multigraph(t, k).unwrap();
            let crossing = t.crossing_colors();
            let totals = mg.color_totals(3);
            for &c in &crossing {
                assert_eq!(totals[c as usize], 2 * k);
            }
            let walk = eulerian_circuit(&mg).unwrap();
            assert_eq!(walk.len(), 2 * k * crossing.len());
            // multiset of traversed pairs against the multiplicities
            let mut used: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            for w in walk.parts.windows(2) {
                *used.entry((w[0].min(w[1]), w[0].max(w[1]))).or_default() += 1;
            }
            for i in 0..t.k() {
                for j in i + 1..t.k() {
                    assert_eq!(used.get(&(i, j)).copied().unwrap_or(0), mg.mult[i][j]);
                }
            }
            let size = vertex_budget(t, k).unwrap().into_iter().max().unwrap();
            let e = embed_balanced_long_path_traced(t, size, k).unwrap();
            let host = t.blow_up(size);
            assert!(injective(&e.embedding.map));
            assert_eq!(e.embedding.map.len(), 6 * k + 1);
            assert_eq!(walk_profile(&host, &e.embedding.map, false), vec![2 * k; 3]);
            assert!(embed_balanced_long_path_traced(t, size - 1, k).is_err());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn four_color_layouts(idx in 0usize..1000, extra in 0usize..3, uniform in any::<bool>()) {
        let cat = catalogue(4);
        let t = &cat.templates[idx % cat.len()];
        let k0 = feasibility_threshold(t);
        let k = if uniform { colorpat::euler::lcm_k0(t) * (1 + extra) } else { k0 + extra };
        let mode = if uniform { Multiplicity::Uniform } else { Multiplicity::Relaxed };
        let mg = build_multigraph_with(t, k, mode).unwrap();
        for c in t.crossing_colors() {
            prop_assert_eq!(mg.color_totals(4)[c as usize], 2 * k);
        }
        let walk = eulerian_circuit(&mg).unwrap();
        prop_assert!(walk.covers_exactly(&mg));
        let size = colorpat::euler::vertex_budget_with(t, k, mode).unwrap().into_iter().max().unwrap();
        let e = colorpat::euler::embed_balanced_long_path_with(t, size, k, mode).unwrap();
        let host = t.blow_up(size);
        prop_assert!(injective(&e.embedding.map));
        prop_assert_eq!(walk_profile(&host, &e.embedding.map, false), vec![2 * k; 4]);
    }

    #[test]
    fn blow_ups_are_monochromatic_between_parts(r in 2usize..=4, idx in 0usize..1000, t in 1usize..5) {
        let cat = catalogue(r);
        let tpl = &cat.templates[idx % cat.len()];
        let g = tpl.blow_up(t);
        let part = part_map(&vec![t; tpl.k()]);
        for (u, v, c) in g.edges() {
            prop_assert_eq!(c, tpl.color(part[u], part[v]));
        }
    }

    #[test]
    fn every_part_is_needed(r in 2usize..=4, idx in 0usize..1000) {
        let cat = catalogue(r);
        let tpl = &cat.templates[idx % cat.len()];
        let g = tpl.blow_up(2);
        let part = part_map(&vec![2; tpl.k()]);
        for p in 0..tpl.k() {
            let rest: Vec<usize> = (0..g.n()).filter(|&v| part[v] != p).collect();
            let used = g.induced(&rest).unwrap().histogram().counts().iter().filter(|&&c| c > 0).count();
            prop_assert!(used < r);
        }
    }

    #[test]
    fn path_blocker_histogram_is_closed_form(n in 4usize..40, k in 2usize..8) {
        prop_assume!(n > k);
        let g = construct_path_blocker(n, k).unwrap();
        let a = k - 1;
        let bc = equal_parts(n - a, 2);
        prop_assert_eq!(bc[0] + bc[1], n - a);
        prop_assert_eq!(g.histogram().counts().to_vec(), path_blocker_counts(n, k).to_vec());
        prop_assert_eq!(g.histogram().counts()[0], a * bc[0]);
    }

    #[test]
    fn clique_partition_histogram_and_round_trip(half in 2usize..4, n in 6usize..30) {
        let l = 2 * half;
        prop_assume!(n >= l);
        let g = construct_clique_partition(n, l).unwrap();
        let sizes = equal_parts(n, l);
        let mut want = Vec::new();
        for i in 0..l {
            for j in i + 1..l {
                want.push(sizes[i] * sizes[j]);
            }
        }
        want.push(sizes.iter().map(|s| s * (s - 1) / 2).sum());
        prop_assert_eq!(g.histogram().counts().to_vec(), want);
        let mut parts = recover_clique_partition(&g);
        parts.sort();
        let map = part_map(&sizes);
        for p in &parts {
            prop_assert!(p.iter().all(|&v| map[v] == map[p[0]]));
        }
        prop_assert_eq!(parts.len(), l);
    }

    #[test]
    fn separator_histogram(n in 4usize..30, r in 2usize..5) {
        let Ok(g) = construct_separator(n, r) else { return Ok(()) };
        prop_assert_eq!(g.histogram().total(), n * (n - 1) / 2);
        prop_assert!(g.histogram().counts().iter().all(|&c| c > 0));
    }
}

/// Parity certificates are never contradicted by search.
#[test]
fn parity_obstruction_agrees_with_search() {
    for n in 4..=13 {
        let g = construct_clique_partition(n, 4).unwrap();
        assert!(parity_obstruction_check(&g, 4, 1).unwrap());
        assert!(!parity_obstruction_check(&g, 4, 2).unwrap());
        let (found, _) =
            find_balanced_budgeted(&g, &Guest::path(7), 7, Budget::nodes(5_000_000)).unwrap();
        assert!(found.is_none(), "n={n}");
    }
    let g = construct_clique_partition(22, 4).unwrap();
    assert!(parity_obstruction_check(&g, 4, 3).unwrap());
    match find_balanced_budgeted(&g, &Guest::path(21), 7, Budget::nodes(2_000_000)) {
        Ok((found, _)) => assert!(found.is_none()),
        Err(colorpat::Error::BudgetExceeded { .. }) => {}
        Err(e) => panic!("{e}"),
    }
}

/// Witnesses of exact certificates, re-checked with the unpruned oracle.
#[test]
fn certificate_witnesses_hold() {
    let cases = [
        (5, Guest::path(2), 2),
        (6, Guest::path(3), 2),
        (5, Guest::cycle(4), 2),
        (5, Guest::path(3), 3),
        (4, Guest::complete(3), 3),
        (6, Guest::cycle(3), 2),
    ];
    for (n, guest, r) in cases {
        let c = balancing_number_exact(n, &guest, r).unwrap();
        assert!(c.complete);
        match c.value.unwrap() {
            BalancingValue::Value(m) => {
                let w = c.witness.as_ref().unwrap();
                assert_eq!(w.histogram().min(), m);
                assert!(!naive_balanced(w, &guest, r), "{guest} n={n}");
            }
            BalancingValue::AllColoringsContain => assert!(c.witness.is_none()),
        }
        assert!(c.verify().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_member_search_matches_definition(seed in any::<u64>(), n in 4usize..=8, r in 2usize..=3) {
        let g = random_host(n, r, seed);
        let found = find_pattern_member_exact_with(&g, catalogue(r), 2, None).unwrap();
        prop_assert_eq!(found.is_some(), common::naive_pattern_member(&g, r, 2));
        if let Some(m) = found {
            prop_assert!(is_member(&g, r, &m.parts));
        }
    }

    #[test]
    fn drc_exhaustive_certificates_hold(seed in any::<u64>(), n in 20usize..60, t in 1usize..3, k in 2usize..8) {
        let g = random_host(n, 2, seed);
        let cfg = DrcConfig { t, k, trials: 16, seed, ..DrcConfig::default() };
        if let Some(s) = drc_find_set(&g, 0, &cfg) {
            prop_assert_eq!(s.set.len(), k);
            if s.exhaustive {
                let mut idx: Vec<usize> = (0..t).collect();
                loop {
                    let common = (0..n)
                        .filter(|&w| idx.iter().all(|&i| s.set[i] != w && g.color(s.set[i], w) == 0))
                        .count();
                    prop_assert!(common >= k);
                    let Some(i) = (0..t).rev().find(|&i| idx[i] < s.set.len() - t + i) else { break };
                    idx[i] += 1;
                    for j in i + 1..t {
                        idx[j] = idx[j - 1] + 1;
                    }
                }
            }
        }
    }
}

/// Heuristic successes are members by the definition, and the result does
/// not depend on the number of worker threads.
#[test]
fn pipeline_is_sound_and_thread_independent() {
    let cfg = PipelineConfig {
        seed: 99,
        ..PipelineConfig::for_t(2)
    };
    let hosts: Vec<ColoredGraph> = catalogue(3)
        .templates
        .iter()
        .map(|t| t.blow_up(20))
        .chain((0..3).map(|s| random_host(90, 2, s)))
        .collect();
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            hosts
                .iter()
                .map(|g| {
                    find_pattern_member(g, g.r(), &cfg)
                        .unwrap()
                        .map(|m| m.parts)
                })
                .collect::<Vec<_>>()
        })
    };
    let one = run(1);
    assert_eq!(one, run(3));
    for (g, parts) in hosts.iter().zip(&one) {
        if let Some(p) = parts {
            assert!(is_member(g, g.r(), p));
        }
    }
}

/// Whatever the pipeline finds on a small host, exhaustive search finds too.
#[test]
fn exact_search_covers_pipeline_successes() {
    let mut agreed = 0;
    for seed in 0..40u64 {
        let t = &catalogue(3).templates[seed as usize % 9];
        let g = if seed % 2 == 0 {
            t.blow_up(12 / t.k())
        } else {
            random_host(12, 3, seed)
        };
        // sizes scaled down to fit twelve vertices
        let cfg = PipelineConfig {
            seed,
            x_size: 2,
            k: 3,
            ..PipelineConfig::for_t(2)
        };
        if find_pattern_member(&g, 3, &cfg).unwrap().is_some() {
            assert!(
                find_pattern_member_exact_with(&g, catalogue(3), 2, None)
                    .unwrap()
                    .is_some(),
                "seed {seed}"
            );
            agreed += 1;
        }
    }
    assert!(agreed > 0);
}
