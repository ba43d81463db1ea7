//! Extremal colorings without balanced paths or copies, each paired with a
//! certificate that can be re-checked by exact search.

use serde::{Deserialize, Serialize};

use crate::balance::{find_balanced_budgeted, Budget, Embedding, Guest};
use crate::error::{Error, Result};
use crate::graph::{Color, ColorHistogram, ColoredGraph};
use crate::patterns::{part_map, separator_pattern, PatternTemplate};

/// Hosts above this size are not certified automatically.
pub const CERTIFY_MAX_N: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstructionSpec {
    #[serde(rename = "path_blocker_3color")]
    PathBlocker3Color {
        n: usize,
        k: usize,
    },
    CliquePartition {
        n: usize,
        l: usize,
    },
    Separator {
        n: usize,
        r: usize,
    },
    PatternBlowup {
        n: usize,
        r: usize,
        t: usize,
        guest: String,
    },
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Avoidance {
    /// Exact search found no balanced copy.
    Absent {
        nodes: u64,
    },
    /// A balanced copy exists; the construction does not block this guest.
    Present {
        embedding: Embedding,
    },
    Skipped {
        reason: String,
    },
}

impl Avoidance {
    pub fn is_absent(&self) -> bool {
        matches!(self, Avoidance::Absent { .. })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub spec: ConstructionSpec,
    pub guest: String,
    pub histogram: ColorHistogram,
    pub avoidance: Avoidance,
}

/// Part sizes differing by at most one, larger parts first.
pub fn equal_parts(n: usize, parts: usize) -> Vec<usize> {
    (0..parts)
        .map(|i| n / parts + usize::from(i < n % parts))
        .collect()
}

/// Three colors on `A ∪ B ∪ C` with `|A| = k - 1`: red (0) between `A` and
/// `B`, blue (1) between `A` and `C`, green (2) everywhere else. Every red
/// or blue edge touches `A`, so no balanced path with `3k` edges exists.
pub fn construct_path_blocker(n: usize, k: usize) -> Result<ColoredGraph> {
    if k < 2 || n < k + 1 {
        return Err(Error::InvalidParameter(format!(
            "path blocker needs k >= 2 and n >= k + 1, got n={n} k={k}"
        )));
    }
    let a = k - 1;
    let bc = equal_parts(n - a, 2);
    let part = |v: usize| {
        if v < a {
            0
        } else if v < a + bc[0] {
            1
        } else {
            2
        }
    };
    Ok(ColoredGraph::from_fn(n, 3, |u, v| {
        match (part(u).min(part(v)), part(u).max(part(v))) {
            (0, 1) => 0,
            (0, 2) => 1,
            _ => 2,
        }
    }))
}

/// Closed-form color counts of [`construct_path_blocker`].
pub fn path_blocker_counts(n: usize, k: usize) -> [usize; 3] {
    let a = k - 1;
    let bc = equal_parts(n - a, 2);
    let total = n * (n - 1) / 2;
    [a * bc[0], a * bc[1], total - a * (n - a)]
}

fn clique_color_count(l: usize) -> usize {
    l * (l - 1) / 2 + 1
}

fn check_l(l: usize) -> Result<()> {
    if l < 4 || l % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "l must be even and at least 4, got {l}"
        )));
    }
    Ok(())
}

/// Template on `l` parts: the pair `(i, j)` gets its index in lexicographic
/// order, every part gets the last color inside.
pub fn clique_partition_template(l: usize) -> Result<PatternTemplate> {
    check_l(l)?;
    let r = clique_color_count(l);
    let mut m = vec![vec![(r - 1) as Color; l]; l];
    let mut next = 0;
    for i in 0..l {
        for j in i + 1..l {
            m[i][j] = next;
            m[j][i] = next;
            next += 1;
        }
    }
    PatternTemplate::new(r, m)
}

/// `l` near-equal parts, one color per pair of parts and one more inside the parts.
pub fn construct_clique_partition(n: usize, l: usize) -> Result<ColoredGraph> {
    let t = clique_partition_template(l)?;
    if n < l {
        return Err(Error::InvalidParameter(format!(
            "need n >= l, got n={n} l={l}"
        )));
    }
    Ok(t.blow_up_sizes(&equal_parts(n, l)))
}

/// Parts of a clique-partition coloring: components of the inside color.
pub fn recover_clique_partition(g: &ColoredGraph) -> Vec<Vec<usize>> {
    let inside = (g.r() - 1) as Color;
    let mut seen = vec![false; g.n()];
    let mut parts = Vec::new();
    for v in 0..g.n() {
        if !seen[v] {
            let comp: Vec<usize> = g.color_component(inside, v).iter().collect();
            comp.iter().for_each(|&w| seen[w] = true);
            parts.push(comp);
        }
    }
    parts
}

/// True when the parity argument rules out a balanced path with `rk` edges.
///
/// Contracting each part of a balanced path embedding gives a walk on parts.
/// Each cross color lives on a single pair of parts, so that pair is crossed
/// exactly `k` times and every part has walk degree `(l - 1) k`. For odd `k`
/// and even `l` all `l >= 4` parts are odd, but a walk has at most two odd
/// vertices.
pub fn parity_obstruction_check(g: &ColoredGraph, l: usize, k: usize) -> Result<bool> {
    let not_kind =
        |msg: String| Error::Precondition(format!("not a clique-partition coloring: {msg}"));
    if l < 2 || g.r() != clique_color_count(l) {
        return Err(not_kind(format!("{} colors for l = {l}", g.r())));
    }
    let parts = recover_clique_partition(g);
    if parts.len() != l {
        return Err(not_kind(format!("{} parts, expected {l}", parts.len())));
    }
    let mut part_of = vec![0; g.n()];
    for (i, p) in parts.iter().enumerate() {
        p.iter().for_each(|&v| part_of[v] = i);
    }
    // each cross color must be constant on its pair and pairs must get distinct colors
    let mut pair_color = vec![vec![None; l]; l];
    let mut owner = vec![None; g.r()];
    for (u, v, c) in g.edges() {
        let (a, b) = (part_of[u].min(part_of[v]), part_of[u].max(part_of[v]));
        if a == b {
            continue;
        }
        match pair_color[a][b] {
            None => pair_color[a][b] = Some(c),
            Some(d) if d != c => return Err(not_kind(format!("parts {a},{b} carry two colors"))),
            _ => {}
        }
        match owner[c as usize] {
            None => owner[c as usize] = Some((a, b)),
            Some(p) if p != (a, b) => {
                return Err(not_kind(format!("color {c} spans two part pairs")))
            }
            _ => {}
        }
    }
    Ok(!k.is_multiple_of(2) && l.is_multiple_of(2) && l >= 4)
}

/// Separator member on `n` vertices: `r - 1` disjoint complete bipartite
/// graphs in colors `0..r-1`, the last color everywhere else.
pub fn construct_separator(n: usize, r: usize) -> Result<ColoredGraph> {
    if r < 2 {
        return Err(Error::InvalidParameter("separator needs r >= 2".into()));
    }
    let t = separator_pattern(r);
    if n < t.k() {
        return Err(Error::InvalidParameter(format!(
            "need n >= {}, got {n}",
            t.k()
        )));
    }
    Ok(t.blow_up_sizes(&equal_parts(n, t.k())))
}

/// Blow-up of `t` to `n` vertices, after checking that the `|guest|`-blow-up
/// has no balanced copy of `guest`.
pub fn construct_pattern_blowup_blocker(
    t: &PatternTemplate,
    guest: &Guest,
    n: usize,
) -> Result<ColoredGraph> {
    if n < t.k() {
        return Err(Error::InvalidParameter(format!(
            "need n >= {} parts, got {n}",
            t.k()
        )));
    }
    let probe = t.blow_up(guest.n());
    if let (Some(e), _) = find_balanced_budgeted(&probe, guest, t.r(), Budget::UNLIMITED)? {
        return Err(Error::Precondition(format!(
            "template admits a balanced {guest} (host vertices {:?})",
            e.map
        )));
    }
    Ok(t.blow_up_sizes(&equal_parts(n, t.k())))
}

/// Exact search for a balanced `guest`, skipped above [`CERTIFY_MAX_N`] unless forced.
pub fn certify(g: &ColoredGraph, guest: &Guest, force: bool, budget: Budget) -> Result<Avoidance> {
    if !force && g.n() > CERTIFY_MAX_N {
        return Ok(Avoidance::Skipped {
            reason: format!("n = {} above certification limit {CERTIFY_MAX_N}", g.n()),
        });
    }
    match find_balanced_budgeted(g, guest, g.r(), budget) {
        Ok((Some(embedding), _)) => Ok(Avoidance::Present { embedding }),
        Ok((None, stats)) => Ok(Avoidance::Absent { nodes: stats.nodes }),
        Err(Error::BudgetExceeded { budget }) => Ok(Avoidance::Skipped {
            reason: format!("search budget of {budget} nodes exhausted"),
        }),
        Err(e) => Err(e),
    }
}

pub fn certificate(
    spec: ConstructionSpec,
    g: &ColoredGraph,
    guest: &Guest,
    force: bool,
    budget: Budget,
) -> Result<Certificate> {
    Ok(Certificate {
        spec,
        guest: guest.to_string(),
        histogram: g.histogram(),
        avoidance: certify(g, guest, force, budget)?,
    })
}

/// Which part each vertex of an `equal_parts` blow-up belongs to.
pub fn equal_part_map(n: usize, parts: usize) -> Vec<usize> {
    part_map(&equal_parts(n, parts))
}
