//! Canonical forms of colored complete graphs.
//!
//! Individualization-refinement: the vertex set is split into an ordered
//! partition by color-degree signatures, refined to an equitable partition,
//! and every leaf of the individualization tree yields a candidate labeling.
//! The lexicographically smallest adjacency string over all leaves is the
//! canonical form. Twin vertices in the branching cell are tried once.
//! Quotienting by color permutations takes the minimum over all `r!`
//! relabelings.

use serde::{Deserialize, Serialize};

use crate::graph::{pair_rank, Color, ColoredGraph};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalKey {
    bytes: Vec<u8>,
    quotient_colors: bool,
}

impl CanonicalKey {
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn quotient_colors(&self) -> bool {
        self.quotient_colors
    }

    pub fn to_hex(&self) -> String {
        self.bytes.iter().map(|b| format!("{b:02x}")).collect()
    }
}

pub fn canonical_key(g: &ColoredGraph, quotient_colors: bool) -> CanonicalKey {
    let (form, _) = canonical_form(g, quotient_colors);
    let mut bytes = Vec::with_capacity(form.len() + 5);
    bytes.extend_from_slice(&(g.n() as u32).to_be_bytes());
    bytes.push(g.r() as u8);
    bytes.extend_from_slice(&form);
    CanonicalKey {
        bytes,
        quotient_colors,
    }
}

/// The canonically relabeled graph itself.
pub fn canonical_graph(g: &ColoredGraph, quotient_colors: bool) -> ColoredGraph {
    let (form, _) = canonical_form(g, quotient_colors);
    ColoredGraph::from_colors(g.n(), g.r(), form)
}

/// Canonical color string (pair-rank order) and the vertex order realizing it.
pub fn canonical_form(g: &ColoredGraph, quotient_colors: bool) -> (Vec<Color>, Vec<usize>) {
    let twins = g.twin_classes();
    let identity: Vec<Color> = (0..g.r() as Color).collect();
    if !quotient_colors {
        return Search::new(g, &identity, &twins).run();
    }
    let mut best: Option<(Vec<Color>, Vec<usize>)> = None;
    for perm in permutations(g.r()) {
        let cand = Search::new(g, &perm, &twins).run();
        if best.as_ref().is_none_or(|b| cand.0 < b.0) {
            best = Some(cand);
        }
    }
    best.expect("at least one color permutation")
}

/// All permutations of `0..r` in lexicographic order.
pub fn permutations(r: usize) -> Vec<Vec<Color>> {
    let mut out = Vec::new();
    let mut cur: Vec<Color> = (0..r as Color).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..r).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..r).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

struct Search<'a> {
    n: usize,
    r: usize,
    /// Full n×n matrix of relabeled colors; diagonal unused.
    mat: Vec<Color>,
    twins: &'a [usize],
    best: Option<(Vec<Color>, Vec<usize>)>,
}

impl<'a> Search<'a> {
    fn new(g: &ColoredGraph, perm: &[Color], twins: &'a [usize]) -> Self {
        let n = g.n();
        let mut mat = vec![0; n * n];
        for v in 1..n {
            for u in 0..v {
                let c = perm[g.colors()[pair_rank(u, v)] as usize];
                mat[u * n + v] = c;
                mat[v * n + u] = c;
            }
        }
        Self {
            n,
            r: g.r(),
            mat,
            twins,
            best: None,
        }
    }

    fn run(mut self) -> (Vec<Color>, Vec<usize>) {
        let mut cells = vec![(0..self.n).collect::<Vec<_>>()];
        self.refine(&mut cells);
        self.descend(cells);
        self.best.unwrap()
    }

    fn descend(&mut self, cells: Vec<Vec<usize>>) {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let cell = &cells[target];
        let mut tried_reps: Vec<usize> = Vec::new();
        for &v in cell {
            let rep = self.twins[v];
            if tried_reps.contains(&rep) {
                continue;
            }
            tried_reps.push(rep);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(vec![v]);
            next.push(cell.iter().copied().filter(|&w| w != v).collect());
            next.extend_from_slice(&cells[target + 1..]);
            self.refine(&mut next);
            self.descend(next);
        }
    }

    fn leaf(&mut self, cells: &[Vec<usize>]) {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let n = self.n;
        let mut s = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for b in 1..n {
            for a in 0..b {
                s.push(self.mat[order[a] * n + order[b]]);
            }
        }
        if self.best.as_ref().is_none_or(|(b, _)| s < *b) {
            self.best = Some((s, order));
        }
    }

    /// Refines `cells` to an equitable ordered partition.
    fn refine(&self, cells: &mut Vec<Vec<usize>>) {
        let n = self.n;
        let mut cell_of = vec![0usize; n];
        loop {
            for (i, c) in cells.iter().enumerate() {
                for &v in c {
                    cell_of[v] = i;
                }
            }
            let width = cells.len() * self.r;
            let mut out: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
            let mut sig = vec![0u16; width];
            for cell in cells.iter() {
                if cell.len() == 1 {
                    out.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u16>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        sig.iter_mut().for_each(|x| *x = 0);
                        for w in 0..n {
                            if w != v {
                                sig[cell_of[w] * self.r + self.mat[v * n + w] as usize] += 1;
                            }
                        }
                        (sig.clone(), v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        out.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                        start = i;
                    }
                }
            }
            let done = out.len() == cells.len();
            *cells = out;
            if done {
                return;
            }
        }
    }
}
