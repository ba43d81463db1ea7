//! Pattern catalogues for two and three colors.
//!
//! cargo run --release --example enumerate_patterns

use colorpat::patterns::enumerate_patterns;

fn main() -> colorpat::Result<()> {
    for r in [2, 3] {
        let cat = enumerate_patterns(r)?;
        println!(
            "r={r}: {} classes ({} backtracking nodes)",
            cat.len(),
            cat.nodes
        );
        for (t, key) in cat.templates.iter().zip(&cat.keys) {
            let private: Vec<_> = (0..t.k()).map(|p| t.private_colors(p)).collect();
            println!(
                "  k={} M={:?} private={private:?} key={}",
                t.k(),
                t.matrix(),
                key.to_hex()
            );
        }
        if !cat.meta().mergeable.is_empty() {
            println!(
                "  templates with mergeable parts: {:?}",
                cat.meta().mergeable
            );
        }
    }
    Ok(())
}
