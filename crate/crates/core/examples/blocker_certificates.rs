//! Extremal colorings with their avoidance certificates.
//!
//! cargo run --release --example blocker_certificates

use colorpat::balance::{Budget, Guest};
use colorpat::constructions::{
    certificate, construct_clique_partition, construct_path_blocker, construct_separator,
    ConstructionSpec,
};

fn main() -> colorpat::Result<()> {
    for (n, k) in [(11, 2), (14, 3)] {
        let g = construct_path_blocker(n, k)?;
        let c = certificate(
            ConstructionSpec::PathBlocker3Color { n, k },
            &g,
            &Guest::path(3 * k),
            false,
            Budget::UNLIMITED,
        )?;
        println!("path blocker n={n} k={k}: {}", serde_json::to_string(&c)?);
    }
    let g = construct_clique_partition(12, 4)?;
    let c = certificate(
        ConstructionSpec::CliquePartition { n: 12, l: 4 },
        &g,
        &Guest::path(7),
        false,
        Budget::UNLIMITED,
    )?;
    println!(
        "clique partition n=12 l=4 (r={}): {}",
        g.r(),
        serde_json::to_string(&c)?
    );
    let g = construct_separator(9, 3)?;
    let c = certificate(
        ConstructionSpec::Separator { n: 9, r: 3 },
        &g,
        &Guest::cycle(9),
        false,
        Budget::UNLIMITED,
    )?;
    println!(
        "separator n=9 r=3 against C_9: {}",
        serde_json::to_string(&c.avoidance)?
    );
    Ok(())
}
