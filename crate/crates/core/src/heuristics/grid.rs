//! Exact extraction of monochromatic grids: subsets that are monochromatic
//! cliques with monochromatic complete bipartite graphs between them.

use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph};

const UNSET: Color = Color::MAX;

/// Picks `size` vertices from each set so that every chosen subset is a
/// monochromatic clique and every pair of subsets is joined in one color.
/// `Ok(None)` means no such choice exists.
pub fn mono_grid_extract(
    g: &ColoredGraph,
    sets: &[Vec<usize>],
    size: usize,
    budget: Option<u64>,
) -> Result<Option<Vec<Vec<usize>>>> {
    let mut owner = vec![usize::MAX; g.n()];
    for (i, s) in sets.iter().enumerate() {
        if s.len() < size {
            return Err(Error::InvalidParameter(format!(
                "set {i} has {} vertices, fewer than the target {size}",
                s.len()
            )));
        }
        for &v in s {
            if v >= g.n() {
                return Err(Error::VertexOutOfRange { v, n: g.n() });
            }
            if owner[v] != usize::MAX {
                return Err(Error::InvalidParameter(format!(
                    "vertex {v} lies in two sets"
                )));
            }
            owner[v] = i;
        }
    }
    let k = sets.len();
    let mut st = Grid {
        g,
        sets,
        size,
        color: vec![UNSET; k * k],
        chosen: vec![Vec::with_capacity(size); k],
        nodes: 0,
        budget,
    };
    Ok(st.go(0, 0)?.then_some(st.chosen))
}

struct Grid<'a> {
    g: &'a ColoredGraph,
    sets: &'a [Vec<usize>],
    size: usize,
    /// `color[i * k + j]`: agreed color between subsets `i` and `j` (or inside when equal).
    color: Vec<Color>,
    chosen: Vec<Vec<usize>>,
    nodes: u64,
    budget: Option<u64>,
}

impl Grid<'_> {
    fn go(&mut self, set: usize, from: usize) -> Result<bool> {
        self.nodes += 1;
        if let Some(b) = self.budget {
            if self.nodes > b {
                return Err(Error::BudgetExceeded { budget: b });
            }
        }
        let k = self.sets.len();
        if set == k {
            return Ok(true);
        }
        if self.chosen[set].len() == self.size {
            return self.go(set + 1, 0);
        }
        let need = self.size - self.chosen[set].len();
        let avail = self.sets[set].len();
        for idx in from..=avail.saturating_sub(need) {
            let v = self.sets[set][idx];
            let mut assigned: Vec<usize> = Vec::new();
            let mut ok = true;
            'check: for j in 0..=set {
                for &u in &self.chosen[j] {
                    let c = self.g.color(u, v);
                    let slot = j * k + set;
                    if self.color[slot] == UNSET {
                        self.color[slot] = c;
                        self.color[set * k + j] = c;
                        assigned.push(slot);
                    } else if self.color[slot] != c {
                        ok = false;
                        break 'check;
                    }
                }
            }
            if ok {
                self.chosen[set].push(v);
                if self.go(set, idx + 1)? {
                    return Ok(true);
                }
                self.chosen[set].pop();
            }
            for slot in assigned {
                let (a, b) = (slot / k, slot % k);
                self.color[a * k + b] = UNSET;
                self.color[b * k + a] = UNSET;
            }
        }
        Ok(false)
    }
}

/// Checks the grid property directly.
pub fn is_mono_grid(g: &ColoredGraph, parts: &[Vec<usize>]) -> bool {
    let uniform = |pairs: &mut dyn Iterator<Item = (usize, usize)>| {
        let mut first = None;
        for (u, v) in pairs {
            let c = g.color(u, v);
            if *first.get_or_insert(c) != c {
                return false;
            }
        }
        true
    };
    for (i, a) in parts.iter().enumerate() {
        let mut inside = a
            .iter()
            .enumerate()
            .flat_map(|(x, &u)| a[x + 1..].iter().map(move |&v| (u, v)));
        if !uniform(&mut inside) {
            return false;
        }
        for b in &parts[i + 1..] {
            let mut across = a.iter().flat_map(|&u| b.iter().map(move |&v| (u, v)));
            if !uniform(&mut across) {
                return false;
            }
        }
    }
    true
}
