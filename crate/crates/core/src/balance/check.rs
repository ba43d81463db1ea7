//! Balanceability against the whole pattern catalogue.
//!
//! A guest on `q` vertices is embedded in a balanced way into every large
//! coloring with quadratically many edges per color exactly when it embeds
//! in a balanced way into the `q`-blow-up of every pattern template.

use rayon::prelude::*;
use serde::Serialize;

use super::search::find_balanced;
use super::{Embedding, Guest};
use crate::error::Result;
use crate::patterns::{enumerate_patterns, PatternCatalogue, PatternTemplate};

#[derive(Clone, Debug, Serialize)]
pub struct PatternOutcome {
    pub template: PatternTemplate,
    pub key: String,
    /// A balanced copy in the blow-up, or `None` when none exists.
    pub embedding: Option<Embedding>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BalanceabilityReport {
    pub guest: String,
    pub r: usize,
    pub blow_up: usize,
    pub outcomes: Vec<PatternOutcome>,
    /// True when every pattern admits a balanced copy.
    pub balanceable: bool,
    /// Index into `outcomes` of the first pattern without one.
    pub failing: Option<usize>,
}

impl BalanceabilityReport {
    pub fn failing_template(&self) -> Option<&PatternTemplate> {
        self.failing.map(|i| &self.outcomes[i].template)
    }
}

pub fn balanceable_check(guest: &Guest, r: usize) -> Result<BalanceabilityReport> {
    balanceable_check_with(guest, &enumerate_patterns(r)?)
}

pub fn balanceable_check_with(
    guest: &Guest,
    catalogue: &PatternCatalogue,
) -> Result<BalanceabilityReport> {
    let r = catalogue.r;
    let q = guest.n();
    let outcomes = catalogue
        .templates
        .par_iter()
        .map(|t| {
            let host = t.blow_up(q);
            Ok(PatternOutcome {
                template: t.clone(),
                key: t.key().to_hex(),
                embedding: find_balanced(&host, guest, r)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let failing = outcomes.iter().position(|o| o.embedding.is_none());
    Ok(BalanceabilityReport {
        guest: guest.to_string(),
        r,
        blow_up: q,
        balanceable: failing.is_none(),
        failing,
        outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::separator_pattern;

    #[test]
    fn rainbow_path_embeds_in_every_pattern() {
        // every 3-coloring with all colors present has a rainbow P_3 once n is
        // moderate, so no pattern can block it; the separator included
        let rep = balanceable_check(&Guest::path(3), 3).unwrap();
        assert!(rep.balanceable);
        let sep_key = separator_pattern(3).key().to_hex();
        let sep = rep.outcomes.iter().find(|o| o.key == sep_key).unwrap();
        let e = sep.embedding.as_ref().unwrap();
        assert_eq!(e.profile, vec![1, 1, 1]);
    }

    #[test]
    fn two_colors_single_edge_is_balanceable() {
        let rep = balanceable_check(&Guest::path(1), 2).unwrap();
        assert!(rep.balanceable);
        assert_eq!(rep.outcomes.len(), 2);
    }
}
