//! Balanced long paths in blow-ups of every three-color pattern, laid out
//! along an Eulerian circuit of the part multigraph.
//!
//! cargo run --release --example euler_embedding

use colorpat::euler::{
    build_multigraph, embed_balanced_long_path_traced, feasibility_threshold, vertex_budget,
};
use colorpat::patterns::enumerate_patterns;

fn main() -> colorpat::Result<()> {
    for t in enumerate_patterns(3)?.templates {
        let k = feasibility_threshold(&t);
        let size = vertex_budget(&t, k)?.into_iter().max().unwrap_or(1);
        let mg = build_multigraph(&t, k)?;
        let e = embed_balanced_long_path_traced(&t, size, k)?;
        println!("M={:?} k={k} t={size}", t.matrix());
        println!(
            "  walk over parts {:?} ({} multigraph edges)",
            e.walk.parts,
            mg.edge_count()
        );
        println!("  detours {:?}, usage {:?}", e.insertions, e.part_usage);
        println!(
            "  path {:?} profile {:?}",
            e.embedding.map, e.embedding.profile
        );
    }
    Ok(())
}
