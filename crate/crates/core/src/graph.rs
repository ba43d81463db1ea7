//! Edge-colored complete graphs.
//!
//! Colors live in a flat triangular array indexed by pair rank (colex order:
//! `rank(u, v) = v(v-1)/2 + u` for `u < v`). Per-color neighborhood bitsets are
//! kept alongside so that the search code can intersect neighborhoods cheaply.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

pub type Color = u8;

/// Colex rank of the unordered pair `{u, v}`.
#[inline]
pub fn pair_rank(u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    b * (b - 1) / 2 + a
}

#[inline]
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    n: usize,
    r: usize,
    colors: Vec<Color>,
    nbrs: Vec<VertexSet>,
}

/// Number of edges of each color.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorHistogram(pub Vec<usize>);

impl ColorHistogram {
    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn min(&self) -> usize {
        self.0.iter().copied().min().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// A longest monochromatic path, exact when the color class is small enough.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoPath {
    pub vertices: Vec<usize>,
    /// Whether `vertices` is provably a longest path.
    pub exact: bool,
    /// Upper bound on the number of edges of any path in this color.
    pub upper_bound: usize,
}

impl MonoPath {
    pub fn edge_count(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }
}

/// Color subgraphs with more non-isolated vertices than this get a DFS lower bound.
pub const EXACT_PATH_CUTOFF: usize = 20;
const PATH_DFS_BUDGET: u64 = 200_000;

impl ColoredGraph {
    /// Builds a graph from an explicit edge list covering every pair exactly once.
    pub fn build(n: usize, r: usize, edges: &[(usize, usize, usize)]) -> Result<Self> {
        if n == 0 || r == 0 || r > Color::MAX as usize {
            return Err(Error::InvalidParameter(format!(
                "need n >= 1 and 1 <= r <= 255, got n={n}, r={r}"
            )));
        }
        let mut slots: Vec<Option<Color>> = vec![None; pair_count(n)];
        for &(u, v, c) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { v: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if c >= r {
                return Err(Error::ColorOutOfRange { u, v, color: c, r });
            }
            let slot = &mut slots[pair_rank(u, v)];
            if slot.is_some() {
                return Err(Error::DuplicatePair {
                    u: u.min(v),
                    v: u.max(v),
                });
            }
            *slot = Some(c as Color);
        }
        let mut colors = Vec::with_capacity(slots.len());
        for v in 1..n {
            for u in 0..v {
                match slots[pair_rank(u, v)] {
                    Some(c) => colors.push(c),
                    None => return Err(Error::MissingPair { u, v }),
                }
            }
        }
        Ok(Self::from_colors(n, r, colors))
    }

    /// Builds a graph from a coloring function on pairs `u < v`.
    ///
    /// Panics if the function returns a color `>= r`.
    pub fn from_fn(n: usize, r: usize, mut f: impl FnMut(usize, usize) -> Color) -> Self {
        assert!(n >= 1 && r >= 1 && r <= Color::MAX as usize);
        let mut colors = Vec::with_capacity(pair_count(n));
        for v in 1..n {
            for u in 0..v {
                let c = f(u, v);
                assert!((c as usize) < r, "color {c} out of range for r={r}");
                colors.push(c);
            }
        }
        Self::from_colors(n, r, colors)
    }

    /// Builds a graph from colors listed in pair-rank order.
    pub fn from_colors(n: usize, r: usize, colors: Vec<Color>) -> Self {
        assert_eq!(colors.len(), pair_count(n));
        let mut nbrs = vec![VertexSet::new(n); n * r];
        for v in 1..n {
            for u in 0..v {
                let c = colors[pair_rank(u, v)] as usize;
                assert!(c < r);
                nbrs[c * n + u].insert(v);
                nbrs[c * n + v].insert(u);
            }
        }
        Self { n, r, colors, nbrs }
    }

    /// Uniformly random coloring.
    pub fn random(n: usize, r: usize, rng: &mut impl rand::Rng) -> Self {
        Self::from_fn(n, r, |_, _| rng.gen_range(0..r) as Color)
    }

    pub fn monochromatic(n: usize, r: usize, c: Color) -> Self {
        Self::from_fn(n, r, |_, _| c)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn r(&self) -> usize {
        self.r
    }

    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Color {
        debug_assert!(u != v);
        self.colors[pair_rank(u, v)]
    }

    /// Colors in pair-rank order.
    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    #[inline]
    pub fn nbrs(&self, c: Color, v: usize) -> &VertexSet {
        &self.nbrs[c as usize * self.n + v]
    }

    pub fn degree(&self, c: Color, v: usize) -> usize {
        self.nbrs(c, v).len()
    }

    /// All edges as `(u, v, color)` with `u < v`, in pair-rank order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Color)> + '_ {
        (1..self.n).flat_map(move |v| (0..v).map(move |u| (u, v, self.color(u, v))))
    }

    pub fn histogram(&self) -> ColorHistogram {
        let mut counts = vec![0; self.r];
        for &c in &self.colors {
            counts[c as usize] += 1;
        }
        ColorHistogram(counts)
    }

    /// The sub-coloring induced on `vertices`, relabeled `0..len` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        for &v in vertices {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { v, n: self.n });
            }
        }
        let mut seen = VertexSet::new(self.n);
        for &v in vertices {
            if seen.contains(v) {
                return Err(Error::InvalidParameter(format!(
                    "vertex {v} repeated in induced set"
                )));
            }
            seen.insert(v);
        }
        if vertices.is_empty() {
            return Err(Error::InvalidParameter("empty vertex set".into()));
        }
        Ok(Self::from_fn(vertices.len(), self.r, |a, b| {
            self.color(vertices[a], vertices[b])
        }))
    }

    /// Applies `perm` to vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permute_vertices(&self, perm: &[usize]) -> Self {
        let mut inv = vec![0; self.n];
        for (v, &p) in perm.iter().enumerate() {
            inv[p] = v;
        }
        Self::from_fn(self.n, self.r, |a, b| self.color(inv[a], inv[b]))
    }

    /// Renames color `c` to `perm[c]`.
    pub fn relabel_colors(&self, perm: &[Color]) -> Self {
        let colors = self.colors.iter().map(|&c| perm[c as usize]).collect();
        Self::from_colors(self.n, self.r, colors)
    }

    /// Twin class representative of every vertex.
    ///
    /// `u` and `v` are twins when `color(u, w) == color(v, w)` for every other
    /// `w`; swapping twins is an automorphism. The representative is the
    /// smallest vertex of the class.
    pub fn twin_classes(&self) -> Vec<usize> {
        let mut rep: Vec<usize> = (0..self.n).collect();
        for v in 0..self.n {
            for u in 0..v {
                if rep[u] != u {
                    continue;
                }
                let twins = (0..self.n)
                    .filter(|&w| w != u && w != v)
                    .all(|w| self.color(u, w) == self.color(v, w));
                if twins {
                    rep[v] = u;
                    break;
                }
            }
        }
        rep
    }

    /// A triangle whose three edges carry pairwise distinct colors.
    pub fn find_rainbow_triangle(&self) -> Option<[usize; 3]> {
        for v in 1..self.n {
            for u in 0..v {
                let a = self.color(u, v);
                for b in 0..self.r as Color {
                    if b == a {
                        continue;
                    }
                    for c in 0..self.r as Color {
                        if c == a || c == b {
                            continue;
                        }
                        if let Some(w) = self.nbrs(b, u).intersection(self.nbrs(c, v)).first() {
                            let mut t = [u, v, w];
                            t.sort_unstable();
                            return Some(t);
                        }
                    }
                }
            }
        }
        None
    }

    /// Vertices reachable from `start` along edges of color `c`.
    pub fn color_component(&self, c: Color, start: usize) -> VertexSet {
        let mut seen = VertexSet::new(self.n);
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in self.nbrs(c, v).iter() {
                if !seen.contains(w) {
                    seen.insert(w);
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// The smallest color whose edges form a connected spanning subgraph.
    pub fn spanning_color(&self) -> Option<Color> {
        if self.n < 2 {
            return None;
        }
        (0..self.r as Color).find(|&c| self.color_component(c, 0).len() == self.n)
    }

    /// A longest path in the subgraph of color `c`.
    ///
    /// Exact (subset dynamic programming) when at most [`EXACT_PATH_CUTOFF`]
    /// vertices touch color `c`; otherwise a budgeted DFS lower bound with the
    /// largest component size as the upper bound.
    pub fn longest_monochromatic_path(&self, c: Color) -> MonoPath {
        let active: Vec<usize> = (0..self.n).filter(|&v| self.degree(c, v) > 0).collect();
        if active.is_empty() {
            return MonoPath {
                vertices: Vec::new(),
                exact: true,
                upper_bound: 0,
            };
        }
        if active.len() <= EXACT_PATH_CUTOFF {
            let vertices = self.longest_path_dp(c, &active);
            let len = vertices.len() - 1;
            return MonoPath {
                vertices,
                exact: true,
                upper_bound: len,
            };
        }
        let mut upper = 0;
        let mut seen = VertexSet::new(self.n);
        for &v in &active {
            if !seen.contains(v) {
                let comp = self.color_component(c, v);
                upper = upper.max(comp.len() - 1);
                seen.union_with(&comp);
            }
        }
        let vertices = self.longest_path_dfs(c, &active, upper);
        let exact = vertices.len() - 1 == upper;
        MonoPath {
            vertices,
            exact,
            upper_bound: upper,
        }
    }

    fn longest_path_dp(&self, c: Color, active: &[usize]) -> Vec<usize> {
        let m = active.len();
        let adj: Vec<u32> = active
            .iter()
            .map(|&v| {
                active
                    .iter()
                    .enumerate()
                    .filter(|&(_, &w)| w != v && self.color(v, w) == c)
                    .fold(0u32, |acc, (j, _)| acc | (1 << j))
            })
            .collect();
        // ends[mask] = set of end vertices of paths visiting exactly `mask`
        let mut ends = vec![0u32; 1 << m];
        for i in 0..m {
            ends[1 << i] = 1 << i;
        }
        let mut best = 1u32;
        for mask in 1u32..(1 << m) {
            let mut e = ends[mask as usize];
            if e == 0 {
                continue;
            }
            if mask.count_ones() > best.count_ones() {
                best = mask;
            }
            while e != 0 {
                let j = e.trailing_zeros();
                e &= e - 1;
                let mut ext = adj[j as usize] & !mask;
                while ext != 0 {
                    let k = ext.trailing_zeros();
                    ext &= ext - 1;
                    ends[(mask | (1 << k)) as usize] |= 1 << k;
                }
            }
        }
        let mut path = Vec::with_capacity(best.count_ones() as usize);
        let mut mask = best;
        let mut end = ends[mask as usize].trailing_zeros();
        loop {
            path.push(active[end as usize]);
            let prev_mask = mask & !(1 << end);
            if prev_mask == 0 {
                break;
            }
            let cand = ends[prev_mask as usize] & adj[end as usize];
            end = cand.trailing_zeros();
            mask = prev_mask;
        }
        path
    }

    fn longest_path_dfs(&self, c: Color, active: &[usize], upper: usize) -> Vec<usize> {
        let mut starts = active.to_vec();
        starts.sort_by_key(|&v| self.degree(c, v));
        let mut best: Vec<usize> = Vec::new();
        let mut nodes = 0u64;
        for &s in starts.iter().take(8) {
            let mut path = vec![s];
            let mut used = VertexSet::new(self.n);
            used.insert(s);
            self.path_dfs(c, &mut path, &mut used, &mut best, &mut nodes, upper);
            if best.len() - 1 == upper || nodes >= PATH_DFS_BUDGET {
                break;
            }
        }
        best
    }

    fn path_dfs(
        &self,
        c: Color,
        path: &mut Vec<usize>,
        used: &mut VertexSet,
        best: &mut Vec<usize>,
        nodes: &mut u64,
        upper: usize,
    ) {
        *nodes += 1;
        if path.len() > best.len() {
            *best = path.clone();
        }
        if best.len() - 1 == upper || *nodes >= PATH_DFS_BUDGET {
            return;
        }
        let end = *path.last().unwrap();
        let mut next: Vec<usize> = self
            .nbrs(c, end)
            .iter()
            .filter(|&w| !used.contains(w))
            .collect();
        // fewest free neighbors first
        next.sort_by_key(|&w| {
            let mut s = self.nbrs(c, w).clone();
            s.difference_with(used);
            s.len()
        });
        for w in next {
            path.push(w);
            used.insert(w);
            self.path_dfs(c, path, used, best, nodes, upper);
            used.remove(w);
            path.pop();
            if best.len() - 1 == upper || *nodes >= PATH_DFS_BUDGET {
                return;
            }
        }
    }

    /// Serializes in the text format: `n r` followed by one `u v c` line per pair.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{} {}", self.n, self.r).unwrap();
        for (u, v, c) in self.edges() {
            writeln!(s, "{u} {v} {c}").unwrap();
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header line".into(),
        })?;
        let head = parse_ints(hl, header, 2)?;
        let (n, r) = (head[0], head[1]);
        let mut edges = Vec::with_capacity(pair_count(n));
        for (ln, line) in lines {
            let f = parse_ints(ln, line, 3)?;
            edges.push((f[0], f[1], f[2]));
        }
        if edges.len() != pair_count(n) {
            return Err(Error::Parse {
                line: hl,
                msg: format!(
                    "expected {} edge lines for n={n}, found {}",
                    pair_count(n),
                    edges.len()
                ),
            });
        }
        Self::build(n, r, &edges)
    }
}

fn parse_ints(line: usize, s: &str, expect: usize) -> Result<Vec<usize>> {
    let fields: Vec<&str> = s.split_whitespace().collect();
    if fields.len() != expect {
        return Err(Error::Parse {
            line,
            msg: format!("expected {expect} integers, found {}", fields.len()),
        });
    }
    fields
        .iter()
        .map(|f| {
            f.parse::<usize>().map_err(|e| Error::Parse {
                line,
                msg: format!("{f:?}: {e}"),
            })
        })
        .collect()
}

impl FromStr for ColoredGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_text(s)
    }
}
