//! Monochromatic cliques by exact branch and bound.

use crate::bitset::VertexSet;
use crate::graph::{Color, ColoredGraph};

/// A monochromatic `K_k` in any color, or `None` when there is none.
pub fn ramsey_mono_clique(g: &ColoredGraph, k: usize) -> Option<(Color, Vec<usize>)> {
    if k == 0 {
        return Some((0, Vec::new()));
    }
    if k == 1 {
        return (g.n() > 0).then(|| (0, vec![0]));
    }
    (0..g.r() as Color).find_map(|c| {
        let mut clique = Vec::with_capacity(k);
        grow(g, c, k, &mut clique, VertexSet::full(g.n())).then_some((c, clique))
    })
}

fn grow(g: &ColoredGraph, c: Color, k: usize, clique: &mut Vec<usize>, cand: VertexSet) -> bool {
    if clique.len() == k {
        return true;
    }
    if clique.len() + cand.len() < k {
        return false;
    }
    let mut rest = cand;
    while let Some(v) = rest.first() {
        if clique.len() + rest.len() < k {
            return false;
        }
        rest.remove(v);
        clique.push(v);
        if grow(g, c, k, clique, rest.intersection(g.nbrs(c, v))) {
            return true;
        }
        clique.pop();
    }
    false
}
