//! Parity obstructions for clique-partition colorings.
//!
//! cargo run --release --example parity_obstruction

use colorpat::balance::find_balanced_path;
use colorpat::constructions::{
    clique_partition_template, construct_clique_partition, parity_obstruction_check,
};
use colorpat::euler::walk_parity_report;

fn main() -> colorpat::Result<()> {
    for (l, k) in [(4, 1), (4, 3), (6, 1), (4, 2), (6, 2)] {
        let rep = walk_parity_report(&clique_partition_template(l)?, k);
        let degrees: Vec<_> = rep.parts.iter().map(|p| p.degree).collect();
        println!(
            "l={l} k={k}: degrees {degrees:?}, forced odd {}, feasible {}",
            rep.forced_odd, rep.feasible
        );
    }
    let g = construct_clique_partition(12, 4)?;
    println!(
        "n=12 l=4: parity obstruction {}, balanced P_{} by search: {:?}",
        parity_obstruction_check(&g, 4, 1)?,
        g.r(),
        find_balanced_path(&g, g.r(), g.r())?.map(|e| e.map)
    );
    Ok(())
}
