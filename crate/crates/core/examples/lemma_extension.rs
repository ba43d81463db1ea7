//! Extends a balanced path by a disjoint rainbow triangle.
//!
//! cargo run --release --example lemma_extension

use colorpat::balance::{constructive_lemma_extend, find_balanced_path};
use colorpat::ColoredGraph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> colorpat::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut shown = 0;
    while shown < 5 {
        let g = ColoredGraph::random(9, 3, &mut rng);
        let Some(p) = find_balanced_path(&g, 3, 3)? else {
            continue;
        };
        let rest: Vec<usize> = (0..9).filter(|v| !p.map.contains(v)).collect();
        let Some(t) = g.induced(&rest)?.find_rainbow_triangle() else {
            continue;
        };
        let tri = [rest[t[0]], rest[t[1]], rest[t[2]]];
        let e = constructive_lemma_extend(&g, &p, tri)?;
        println!(
            "path {:?} + triangle {tri:?} -> {:?} profile {:?}",
            p.map, e.map, e.profile
        );
        shown += 1;
    }
    Ok(())
}
