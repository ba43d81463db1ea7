//! Pattern members: the randomized pipeline on large blow-ups and random
//! colorings, and exhaustive search on small hosts.
//!
//! cargo run --release --example pattern_search

use colorpat::heuristics::{
    find_pattern_member_exact, find_pattern_member_traced, ramsey_mono_clique, PipelineConfig,
};
use colorpat::patterns::enumerate_patterns;
use colorpat::ColoredGraph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> colorpat::Result<()> {
    let cfg = PipelineConfig {
        seed: 7,
        ..PipelineConfig::for_t(2)
    };
    for t in enumerate_patterns(3)?.templates {
        let g = t.blow_up(40);
        let (m, transcript) = find_pattern_member_traced(&g, 3, &cfg)?;
        println!("blow-up of {:?}: {}", t.matrix(), transcript.join("; "));
        if let Some(m) = m {
            println!("  recovered {:?}", m.template.matrix());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..3 {
        let g = ColoredGraph::random(150, 3, &mut rng);
        let (m, transcript) = find_pattern_member_traced(&g, 3, &cfg)?;
        println!(
            "random K_150 #{i}: found {}, {}",
            m.is_some(),
            transcript.join("; ")
        );
    }
    let g = ColoredGraph::random(9, 2, &mut rng);
    println!(
        "random K_9, exact t=2: {:?}",
        find_pattern_member_exact(&g, 2, 2)?.map(|m| m.parts)
    );
    println!("monochromatic K_4 in it: {:?}", ramsey_mono_clique(&g, 4));
    Ok(())
}
