//! Which short paths and cycles embed balanced in every three-color pattern,
//! and a blocker built from a pattern that fails.
//!
//! cargo run --release --example balanceability

use colorpat::balance::{balanceable_check, find_balanced_cycle, Guest};
use colorpat::constructions::construct_pattern_blowup_blocker;

fn main() -> colorpat::Result<()> {
    let guests = [
        Guest::path(3),
        Guest::path(6),
        Guest::cycle(3),
        Guest::cycle(6),
        Guest::cycle(9),
    ];
    for g in &guests {
        let rep = balanceable_check(g, 3)?;
        let failing: Vec<usize> = (0..rep.outcomes.len())
            .filter(|&i| rep.outcomes[i].embedding.is_none())
            .collect();
        println!(
            "{g}: balanceable {} (failing patterns {failing:?})",
            rep.balanceable
        );
    }
    let rep = balanceable_check(&Guest::cycle(9), 3)?;
    if let Some(t) = rep.failing_template() {
        let host = construct_pattern_blowup_blocker(t, &Guest::cycle(9), 12)?;
        println!(
            "blow-up of {:?} on 12 vertices, histogram {:?}, balanced C_9: {:?}",
            t.matrix(),
            host.histogram().counts(),
            find_balanced_cycle(&host, 9, 3)?.map(|e| e.map)
        );
    }
    Ok(())
}
