//! Pattern templates: symmetric part-by-part color matrices whose blow-ups
//! form the unavoidable families.
//!
//! A template on `k` parts is valid when every color occurs somewhere in the
//! matrix and every part owns a *private* color, i.e. a color all of whose
//! occurrences lie in that part's row. Removing the part then removes the
//! color.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_key, CanonicalKey};
use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph};

pub const GENERATOR_VERSION: &str =
    concat!("colorpat-", env!("CARGO_PKG_VERSION"), "/private-color-1");
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternTemplate {
    r: usize,
    k: usize,
    #[serde(rename = "M")]
    m: Vec<Vec<Color>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// Color never used anywhere in the matrix.
    MissingColor(Color),
    /// Removing this part leaves every color present.
    NoPrivateColor(usize),
    TooManyParts {
        k: usize,
        max: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl PatternTemplate {
    /// Checks the matrix shape; validity proper is [`PatternTemplate::validate`].
    pub fn new(r: usize, m: Vec<Vec<Color>>) -> Result<Self> {
        let k = m.len();
        if r == 0 || r > Color::MAX as usize {
            return Err(Error::MalformedTemplate(format!(
                "color count {r} out of range"
            )));
        }
        if k == 0 {
            return Err(Error::MalformedTemplate("no parts".into()));
        }
        for (i, row) in m.iter().enumerate() {
            if row.len() != k {
                return Err(Error::MalformedTemplate(format!(
                    "row {i} has {} entries, expected {k}",
                    row.len()
                )));
            }
            for (j, &c) in row.iter().enumerate() {
                if c as usize >= r {
                    return Err(Error::MalformedTemplate(format!(
                        "entry ({i},{j}) = {c} is not a color below {r}"
                    )));
                }
                if m[j][i] != c {
                    return Err(Error::MalformedTemplate(format!(
                        "not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(Self { r, k, m })
    }

    /// Re-checks shape after deserialization (the `k` field must match).
    pub fn from_json(s: &str) -> Result<Self> {
        let raw: PatternTemplate = serde_json::from_str(s)?;
        let t = Self::new(raw.r, raw.m)?;
        if t.k != raw.k {
            return Err(Error::MalformedTemplate(format!(
                "k = {} but matrix has {} rows",
                raw.k, t.k
            )));
        }
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("template serializes")
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn matrix(&self) -> &[Vec<Color>] {
        &self.m
    }

    #[inline]
    pub fn color(&self, i: usize, j: usize) -> Color {
        self.m[i][j]
    }

    /// Colors whose every occurrence lies in row/column `part`.
    pub fn private_colors(&self, part: usize) -> Vec<Color> {
        let mut outside = vec![false; self.r];
        let mut inside = vec![false; self.r];
        for i in 0..self.k {
            for j in i..self.k {
                let c = self.m[i][j] as usize;
                if i == part || j == part {
                    inside[c] = true;
                } else {
                    outside[c] = true;
                }
            }
        }
        (0..self.r)
            .filter(|&c| inside[c] && !outside[c])
            .map(|c| c as Color)
            .collect()
    }

    pub fn validate(&self) -> ValidityReport {
        let mut violations = Vec::new();
        if self.k > 2 * self.r {
            violations.push(Violation::TooManyParts {
                k: self.k,
                max: 2 * self.r,
            });
        }
        let mut present = vec![false; self.r];
        for row in &self.m {
            for &c in row {
                present[c as usize] = true;
            }
        }
        for (c, _) in present.iter().enumerate().filter(|(_, p)| !**p) {
            violations.push(Violation::MissingColor(c as Color));
        }
        for i in 0..self.k {
            if self.private_colors(i).is_empty() {
                violations.push(Violation::NoPrivateColor(i));
            }
        }
        ValidityReport {
            valid: violations.is_empty(),
            violations,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().valid
    }

    /// Blow-up with every part of size `t`; parts are consecutive blocks.
    pub fn blow_up(&self, t: usize) -> ColoredGraph {
        assert!(t >= 1, "part size must be positive");
        self.blow_up_sizes(&vec![t; self.k])
    }

    /// Blow-up with part `i` of size `sizes[i]`, parts in consecutive blocks.
    pub fn blow_up_sizes(&self, sizes: &[usize]) -> ColoredGraph {
        assert_eq!(sizes.len(), self.k);
        let part = part_map(sizes);
        assert!(!part.is_empty(), "blow-up needs at least one vertex");
        ColoredGraph::from_fn(part.len(), self.r, |u, v| self.m[part[u]][part[v]])
    }

    /// Canonical key of the `t = 2` blow-up, up to color permutation.
    pub fn key(&self) -> CanonicalKey {
        canonical_key(&self.blow_up(2), true)
    }

    /// Part pairs `(i, j)` that could be merged: identical internal, mutual and
    /// outside colors.
    pub fn mergeable_parts(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.k {
            for j in i + 1..self.k {
                let c = self.m[i][i];
                if self.m[j][j] == c
                    && self.m[i][j] == c
                    && (0..self.k)
                        .filter(|&l| l != i && l != j)
                        .all(|l| self.m[i][l] == self.m[j][l])
                {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Off-diagonal colors, sorted.
    pub fn crossing_colors(&self) -> Vec<Color> {
        let mut seen = vec![false; self.r];
        for i in 0..self.k {
            for j in i + 1..self.k {
                seen[self.m[i][j] as usize] = true;
            }
        }
        (0..self.r)
            .filter(|&c| seen[c])
            .map(|c| c as Color)
            .collect()
    }

    /// Number of unordered part pairs `{i, j}`, `i != j`, of each color.
    pub fn crossing_pair_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.r];
        for i in 0..self.k {
            for j in i + 1..self.k {
                counts[self.m[i][j] as usize] += 1;
            }
        }
        counts
    }

    /// Same template with parts reordered: new part `i` is old part `order[i]`.
    pub fn reorder_parts(&self, order: &[usize]) -> Self {
        let m = order
            .iter()
            .map(|&a| order.iter().map(|&b| self.m[a][b]).collect())
            .collect();
        Self {
            r: self.r,
            k: order.len(),
            m,
        }
    }
}

/// Part index of every vertex of a blow-up with the given part sizes.
pub fn part_map(sizes: &[usize]) -> Vec<usize> {
    sizes
        .iter()
        .enumerate()
        .flat_map(|(i, &s)| std::iter::repeat_n(i, s))
        .collect()
}

/// A tournament: exactly one arc between every pair of distinct vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tournament {
    n: usize,
    /// `beats[a][b]` iff the arc goes `a -> b`.
    beats: Vec<Vec<bool>>,
}

impl Tournament {
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut beats = vec![vec![false; n]; n];
        for &(a, b) in arcs {
            if a >= n || b >= n || a == b {
                return Err(Error::NotATournament(format!("bad arc {a}->{b}")));
            }
            if beats[a][b] || beats[b][a] {
                return Err(Error::NotATournament(format!(
                    "pair {{{a},{b}}} has two arcs"
                )));
            }
            beats[a][b] = true;
        }
        for a in 0..n {
            for b in a + 1..n {
                if !beats[a][b] && !beats[b][a] {
                    return Err(Error::NotATournament(format!(
                        "pair {{{a},{b}}} has no arc"
                    )));
                }
            }
        }
        Ok(Self { n, beats })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn beats(&self, a: usize, b: usize) -> bool {
        self.beats[a][b]
    }

    /// One representative per isomorphism class (brute force, small `n`).
    pub fn all_nonisomorphic(n: usize) -> Vec<Tournament> {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        let perms = crate::canon::permutations(n);
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for code in 0u64..(1 << pairs.len()) {
            let arcs: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| if code >> i & 1 == 1 { (a, b) } else { (b, a) })
                .collect();
            let t = Tournament::from_arcs(n, &arcs).unwrap();
            let canon = perms
                .iter()
                .map(|p| {
                    pairs
                        .iter()
                        .map(|&(a, b)| t.beats[p[a] as usize][p[b] as usize])
                        .collect::<Vec<_>>()
                })
                .min()
                .unwrap();
            if seen.insert(canon) {
                out.push(t);
            }
        }
        out
    }
}

/// Template of a tournament: part `i` is a clique of color `i`, and the
/// bipartite graph between two parts takes the color of the part the arc
/// points to.
pub fn tournament_pattern(t: &Tournament) -> PatternTemplate {
    let r = t.n;
    let m = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    if i == j || t.beats(j, i) {
                        i as Color
                    } else {
                        j as Color
                    }
                })
                .collect()
        })
        .collect();
    PatternTemplate::new(r, m).expect("tournament template is well formed")
}

/// `r - 1` disjoint bipartite pairs in distinct colors, everything else in the last color.
pub fn separator_pattern(r: usize) -> PatternTemplate {
    assert!(r >= 2, "separator pattern needs r >= 2");
    let k = 2 * (r - 1);
    let last = (r - 1) as Color;
    let m = (0..k)
        .map(|a| {
            (0..k)
                .map(|b| {
                    if a != b && a / 2 == b / 2 {
                        (a / 2) as Color
                    } else {
                        last
                    }
                })
                .collect()
        })
        .collect();
    PatternTemplate::new(r, m).expect("separator template is well formed")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogueMeta {
    pub r: usize,
    pub count: usize,
    pub generator: String,
    /// Indices of templates with a mergeable pair of parts.
    pub mergeable: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternCatalogue {
    pub r: usize,
    pub templates: Vec<PatternTemplate>,
    pub keys: Vec<CanonicalKey>,
    /// Backtracking nodes visited while enumerating.
    pub nodes: u64,
}

#[derive(Serialize, Deserialize)]
struct CatalogueJson {
    meta: CatalogueMeta,
    templates: Vec<PatternTemplate>,
}

impl PatternCatalogue {
    pub fn len(&self) -> usize {
        self.templates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.templates.is_empty()
    }

    pub fn meta(&self) -> CatalogueMeta {
        CatalogueMeta {
            r: self.r,
            count: self.templates.len(),
            generator: GENERATOR_VERSION.to_string(),
            mergeable: self
                .templates
                .iter()
                .enumerate()
                .filter(|(_, t)| !t.mergeable_parts().is_empty())
                .map(|(i, _)| i)
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&CatalogueJson {
            meta: self.meta(),
            templates: self.templates.clone(),
        })
        .expect("catalogue serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: CatalogueJson = serde_json::from_str(s)?;
        let templates = raw
            .templates
            .into_iter()
            .map(|t| PatternTemplate::new(t.r, t.m))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_templates(raw.meta.r, templates, 0))
    }

    /// Deduplicates by key and sorts by `(k, key)`.
    pub fn from_templates(r: usize, templates: Vec<PatternTemplate>, nodes: u64) -> Self {
        let mut by_key: BTreeMap<(usize, CanonicalKey), PatternTemplate> = BTreeMap::new();
        for t in templates {
            by_key.entry((t.k, t.key())).or_insert(t);
        }
        let (keys, templates) = by_key.into_iter().map(|((_, key), t)| (key, t)).unzip();
        Self {
            r,
            templates,
            keys,
            nodes,
        }
    }

    pub fn contains_key(&self, key: &CanonicalKey) -> bool {
        self.keys.contains(key)
    }

    /// Describes a count mismatch against an expected number of classes.
    pub fn discrepancy_report(&self, expected: usize) -> Option<String> {
        if self.len() == expected {
            return None;
        }
        let mut s = format!(
            "r={}: expected {expected} pattern classes, enumerated {}\n",
            self.r,
            self.len()
        );
        for (t, key) in self.templates.iter().zip(&self.keys) {
            s.push_str(&format!("  k={} key={} M={:?}\n", t.k, key.to_hex(), t.m));
        }
        Some(s)
    }
}

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    pub node_budget: u64,
    /// Shuffles the color order tried at each entry; the result must not change.
    pub shuffle_seed: Option<u64>,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        Self {
            node_budget: DEFAULT_NODE_BUDGET,
            shuffle_seed: None,
        }
    }
}

pub fn enumerate_patterns(r: usize) -> Result<PatternCatalogue> {
    enumerate_patterns_with(r, &EnumerateOptions::default())
}

/// Enumerates every valid template with at most `2r` parts, one per class.
///
/// Every part of a valid template owns a private color, and a color private
/// to two parts can only sit on the entry between them. Up to part and color
/// relabeling the owner map is therefore fixed by `k` and the number `d` of
/// doubly-owned colors: parts `2i, 2i+1` share private color `i` for `i < d`,
/// the remaining parts own one color each, and leftover colors are free.
/// Each entry may then only take free colors or private colors whose owners
/// all lie in that entry's row and column. Free colors are introduced in
/// first-use order. Survivors are deduplicated by the canonical key of their
/// `t = 2` blow-up.
pub fn enumerate_patterns_with(r: usize, opts: &EnumerateOptions) -> Result<PatternCatalogue> {
    if !(2..=16).contains(&r) {
        return Err(Error::InvalidParameter(format!(
            "pattern enumeration needs 2 <= r <= 16, got {r}"
        )));
    }
    let branches: Vec<(usize, usize)> = (1..=2 * r)
        .flat_map(|k| (0..=k / 2).map(move |d| (k, d)))
        .filter(|&(k, d)| k - d <= r)
        .collect();
    let per_branch = opts.node_budget;
    let results: Vec<(Vec<PatternTemplate>, u64, bool)> = branches
        .par_iter()
        .map(|&(k, d)| {
            let mut e = OwnerEnumerator::new(r, k, d, per_branch, opts.shuffle_seed);
            e.run();
            (e.found, e.nodes, e.exhausted)
        })
        .collect();
    let nodes: u64 = results.iter().map(|r| r.1).sum();
    let exhausted = results.iter().any(|r| r.2) || nodes > opts.node_budget;
    let templates = results.into_iter().flat_map(|r| r.0).collect();
    let cat = PatternCatalogue::from_templates(r, templates, nodes);
    if exhausted {
        return Err(Error::CatalogueBudget {
            budget: opts.node_budget,
            partial: Box::new(cat),
        });
    }
    Ok(cat)
}

struct OwnerEnumerator {
    r: usize,
    k: usize,
    /// Number of private colors; colors `m..r` are free.
    m: usize,
    entries: Vec<(usize, usize)>,
    allowed: Vec<Vec<Color>>,
    mat: Vec<Vec<Color>>,
    uses: Vec<usize>,
    next_free: Color,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    found: Vec<PatternTemplate>,
}

impl OwnerEnumerator {
    fn new(r: usize, k: usize, d: usize, budget: u64, shuffle: Option<u64>) -> Self {
        let m = k - d;
        let owner: Vec<usize> = (0..k)
            .map(|p| if p < 2 * d { p / 2 } else { p - d })
            .collect();
        let entries: Vec<(usize, usize)> =
            (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
        let mut rng = shuffle.map(|s| ChaCha8Rng::seed_from_u64(s ^ ((k as u64) << 32 | d as u64)));
        let allowed = entries
            .iter()
            .map(|&(i, j)| {
                let mut cs: Vec<Color> = (0..m)
                    .filter(|&c| (0..k).filter(|&p| owner[p] == c).all(|p| p == i || p == j))
                    .map(|c| c as Color)
                    .collect();
                cs.extend((m..r).map(|c| c as Color));
                if let Some(rng) = rng.as_mut() {
                    cs.shuffle(rng);
                }
                cs
            })
            .collect();
        Self {
            r,
            k,
            m,
            entries,
            allowed,
            mat: vec![vec![0; k]; k],
            uses: vec![0; r],
            next_free: m as Color,
            budget,
            nodes: 0,
            exhausted: false,
            found: Vec::new(),
        }
    }

    fn run(&mut self) {
        if self.m > self.r {
            return;
        }
        self.fill(0);
    }

    fn fill(&mut self, idx: usize) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let missing = self.uses.iter().filter(|&&u| u == 0).count();
        if missing > self.entries.len() - idx {
            return;
        }
        if idx == self.entries.len() {
            let t = PatternTemplate {
                r: self.r,
                k: self.k,
                m: self.mat.clone(),
            };
            if t.is_valid() {
                self.found.push(t);
            }
            return;
        }
        let (i, j) = self.entries[idx];
        for ci in 0..self.allowed[idx].len() {
            let c = self.allowed[idx][ci];
            let fresh_free = c as usize >= self.m && self.uses[c as usize] == 0;
            if fresh_free && c != self.next_free {
                continue;
            }
            self.mat[i][j] = c;
            self.mat[j][i] = c;
            self.uses[c as usize] += 1;
            if fresh_free {
                self.next_free += 1;
            }
            self.fill(idx + 1);
            if fresh_free {
                self.next_free -= 1;
            }
            self.uses[c as usize] -= 1;
        }
    }
}
