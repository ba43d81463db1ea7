//! Searches for pattern members in dense colorings: dependent random choice,
//! monochromatic grids, the full pipeline, and exact small-host checks.
//!
//! Every positive answer is re-verified against the host before it is
//! returned, so a heuristic may miss but never reports a false member.

mod drc;
mod exact;
mod grid;
mod pipeline;
mod ramsey;

use serde::Serialize;

use crate::balance::{Embedding, Guest};
use crate::error::{Error, Result};
use crate::graph::ColoredGraph;
use crate::patterns::PatternTemplate;

pub use drc::{drc_find_set, trial_rng, DrcConfig, DrcSet};
pub use exact::{find_pattern_member_exact, find_pattern_member_exact_with};
pub use grid::{is_mono_grid, mono_grid_extract};
pub use pipeline::{find_pattern_member, find_pattern_member_traced, PipelineConfig};
pub use ramsey::ramsey_mono_clique;

/// A blow-up of `template` found in a host; `parts[i]` are the host vertices of part `i`.
#[derive(Clone, Debug, Serialize)]
pub struct PatternMatch {
    /// Template in host colors.
    pub template: PatternTemplate,
    pub parts: Vec<Vec<usize>>,
    /// The same vertices as an embedding of a complete graph, parts in order.
    pub embedding: Embedding,
}

impl PatternMatch {
    /// Builds the match and refuses it unless [`PatternMatch::verify`] passes.
    pub fn new(
        g: &ColoredGraph,
        template: PatternTemplate,
        parts: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let map: Vec<usize> = parts.iter().flatten().copied().collect();
        let embedding = Embedding::new(g, Guest::complete(map.len()), map)?;
        let m = Self {
            template,
            parts,
            embedding,
        };
        if !m.verify(g) {
            return Err(Error::Precondition(
                "recovered structure is not a pattern member".into(),
            ));
        }
        Ok(m)
    }

    pub fn part_size(&self) -> usize {
        self.parts.first().map_or(0, Vec::len)
    }

    /// Checks directly in the host: equal part sizes of at least 2, disjoint
    /// parts, every edge colored as the template says, and a valid template.
    pub fn verify(&self, g: &ColoredGraph) -> bool {
        let t = self.part_size();
        if t < 2 || self.parts.len() != self.template.k() || self.parts.iter().any(|p| p.len() != t)
        {
            return false;
        }
        if g.r() != self.template.r() || !self.template.is_valid() {
            return false;
        }
        let mut seen = vec![false; g.n()];
        for &v in self.parts.iter().flatten() {
            if v >= g.n() || std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        for (a, pa) in self.parts.iter().enumerate() {
            for (b, pb) in self.parts.iter().enumerate() {
                for &u in pa {
                    for &v in pb {
                        if u != v && g.color(u, v) != self.template.color(a, b) {
                            return false;
                        }
                    }
                }
            }
        }
        self.embedding.verify(g)
    }
}
