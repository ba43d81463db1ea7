//! Exact balancing numbers for small guests, with witnesses.
//!
//! cargo run --release --example balancing_numbers

use colorpat::balance::{balancing_number_exact, monotonicity_report, BalancingValue, Guest};

fn main() -> colorpat::Result<()> {
    let cases = [
        ("P_3", Guest::path(3), 3, 3..=7),
        ("P_4", Guest::path(4), 2, 4..=7),
        ("K_3", Guest::complete(3), 3, 3..=5),
    ];
    for (name, guest, r, range) in cases {
        let mut certs = Vec::new();
        for n in range {
            let c = balancing_number_exact(n, &guest, r)?;
            let value = match c.value {
                Some(BalancingValue::Value(m)) => m.to_string(),
                Some(BalancingValue::AllColoringsContain) => "all colorings contain".into(),
                None => "unknown".into(),
            };
            println!(
                "{name} r={r} n={n}: {value} (classes {:?}, {} candidates, {} ms, witness ok: {})",
                c.classes_per_level,
                c.nodes,
                c.wall_ms,
                c.verify()?
            );
            certs.push(c);
        }
        for line in monotonicity_report(&certs) {
            println!("  non-monotone: {line}");
        }
    }
    Ok(())
}
