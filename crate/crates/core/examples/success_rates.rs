//! Empirical success rates of the randomized searches on random colorings.
//!
//! cargo run --release --example success_rates

use colorpat::heuristics::{drc_find_set, find_pattern_member, DrcConfig, PipelineConfig};
use colorpat::ColoredGraph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> colorpat::Result<()> {
    let runs = 100;
    let mut hits = 0;
    for s in 0..runs {
        let g = ColoredGraph::random(200, 3, &mut ChaCha8Rng::seed_from_u64(s));
        let cfg = DrcConfig {
            t: 2,
            k: 8,
            seed: s,
            ..DrcConfig::default()
        };
        hits += usize::from(drc_find_set(&g, (s % 3) as u8, &cfg).is_some());
    }
    println!("dependent sets, K_200 with 3 colors, t=2 K=8: {hits}/{runs}");

    for (n, r, runs) in [(100, 2, 20), (200, 2, 10), (200, 3, 10)] {
        let mut hits = 0;
        for s in 0..runs {
            let g = ColoredGraph::random(n, r, &mut ChaCha8Rng::seed_from_u64(1000 + s));
            let cfg = PipelineConfig {
                seed: s,
                ..PipelineConfig::for_t(2)
            };
            hits += usize::from(find_pattern_member(&g, r, &cfg)?.is_some());
        }
        println!("pattern members, K_{n} with {r} colors, t=2: {hits}/{runs}");
    }
    Ok(())
}
