//! Balanced long paths in blow-ups via Eulerian circuits on template parts.
//!
//! Parts become vertices of a multigraph; the multiplicity of a pair says how
//! often the path crosses between the two parts. Every crossing color gets
//! total multiplicity `2k`, so an Eulerian circuit, walked with a fresh
//! vertex at each visit, yields `2k` edges of each crossing color. Colors
//! that only live inside parts are added as monochromatic detours.

use serde::{Deserialize, Serialize};

use crate::balance::Embedding;
use crate::error::{Error, Result};
use crate::graph::Color;
use crate::patterns::PatternTemplate;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColorMultigraph {
    pub parts: usize,
    /// Symmetric with zero diagonal.
    pub mult: Vec<Vec<usize>>,
    pub pair_color: Vec<Vec<Color>>,
}

impl ColorMultigraph {
    pub fn degree(&self, part: usize) -> usize {
        self.mult[part].iter().sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.parts).map(|i| self.degree(i)).sum::<usize>() / 2
    }

    /// Total multiplicity over the pairs of each color.
    pub fn color_totals(&self, r: usize) -> Vec<usize> {
        let mut out = vec![0; r];
        for i in 0..self.parts {
            for j in i + 1..self.parts {
                out[self.pair_color[i][j] as usize] += self.mult[i][j];
            }
        }
        out
    }
}

/// Closed walk on parts; `parts[0] == parts[last]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartWalk {
    pub parts: Vec<usize>,
}

impl PartWalk {
    pub fn len(&self) -> usize {
        self.parts.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn colors(&self, mg: &ColorMultigraph) -> Vec<Color> {
        self.parts
            .windows(2)
            .map(|w| mg.pair_color[w[0]][w[1]])
            .collect()
    }

    /// True when the walk uses every multigraph edge exactly once.
    pub fn covers_exactly(&self, mg: &ColorMultigraph) -> bool {
        let mut used = vec![vec![0usize; mg.parts]; mg.parts];
        for w in self.parts.windows(2) {
            if w[0] == w[1] {
                return false;
            }
            used[w[0]][w[1]] += 1;
            used[w[1]][w[0]] += 1;
        }
        self.parts.first() == self.parts.last() && used == mg.mult
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Multiplicity {
    /// Any even positive split of `2k` over the pairs of each color.
    Relaxed,
    /// `2k / #c` on every pair of color `c`; needs `#c | k`.
    Uniform,
}

pub fn crossing_colors(t: &PatternTemplate) -> Vec<Color> {
    t.crossing_colors()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Least common multiple of the pair counts of the crossing colors.
pub fn lcm_k0(t: &PatternTemplate) -> usize {
    t.crossing_pair_counts()
        .into_iter()
        .filter(|&c| c > 0)
        .fold(1, |acc, c| acc / gcd(acc, c) * c)
}

/// Smallest `k` accepted by [`build_multigraph`]: the largest pair count of a crossing color.
pub fn feasibility_threshold(t: &PatternTemplate) -> usize {
    t.crossing_pair_counts()
        .into_iter()
        .max()
        .unwrap_or(0)
        .max(1)
}

pub fn build_multigraph(t: &PatternTemplate, k: usize) -> Result<ColorMultigraph> {
    build_multigraph_with(t, k, Multiplicity::Relaxed)
}

pub fn build_multigraph_with(
    t: &PatternTemplate,
    k: usize,
    mode: Multiplicity,
) -> Result<ColorMultigraph> {
    let l = t.k();
    if l < 2 {
        return Err(Error::InvalidParameter(
            "template needs at least two parts".into(),
        ));
    }
    let counts = t.crossing_pair_counts();
    let mut seen = vec![0usize; t.r()];
    let mut mult = vec![vec![0; l]; l];
    for i in 0..l {
        for j in i + 1..l {
            let c = t.color(i, j) as usize;
            let nc = counts[c];
            let m = match mode {
                Multiplicity::Relaxed => {
                    if k < nc {
                        return Err(Error::InvalidParameter(format!(
                            "k = {k} is below {nc}, the number of part pairs of color {c}"
                        )));
                    }
                    2 * (k / nc) + if seen[c] < k % nc { 2 } else { 0 }
                }
                Multiplicity::Uniform => {
                    if k == 0 || !k.is_multiple_of(nc) {
                        return Err(Error::InvalidParameter(format!(
                            "uniform multiplicities need {nc} | k for color {c}, got k = {k}"
                        )));
                    }
                    2 * k / nc
                }
            };
            seen[c] += 1;
            mult[i][j] = m;
            mult[j][i] = m;
        }
    }
    Ok(ColorMultigraph {
        parts: l,
        mult,
        pair_color: t.matrix().to_vec(),
    })
}

/// Hierholzer's algorithm, starting at the first part with positive degree.
pub fn eulerian_circuit(mg: &ColorMultigraph) -> Result<PartWalk> {
    let l = mg.parts;
    for i in 0..l {
        if mg.mult[i][i] != 0 {
            return Err(Error::Precondition(format!("loop at part {i}")));
        }
        if mg.degree(i) % 2 == 1 {
            return Err(Error::Precondition(format!(
                "part {i} has odd degree {}",
                mg.degree(i)
            )));
        }
    }
    let Some(start) = (0..l).find(|&i| mg.degree(i) > 0) else {
        return Ok(PartWalk { parts: Vec::new() });
    };
    let mut rem = mg.mult.clone();
    let mut stack = vec![start];
    let mut circuit = Vec::with_capacity(mg.edge_count() + 1);
    while let Some(&v) = stack.last() {
        if let Some(w) = (0..l).find(|&w| rem[v][w] > 0) {
            rem[v][w] -= 1;
            rem[w][v] -= 1;
            stack.push(w);
        } else {
            circuit.push(stack.pop().unwrap());
        }
    }
    if rem.iter().flatten().any(|&m| m > 0) {
        return Err(Error::Precondition("multigraph is disconnected".into()));
    }
    circuit.reverse();
    Ok(PartWalk { parts: circuit })
}

/// How a long path was laid out.
#[derive(Clone, Debug, Serialize)]
pub struct LongPathEmbedding {
    pub embedding: Embedding,
    pub walk: PartWalk,
    /// `(color, part, index into the walk)` of each monochromatic detour.
    pub insertions: Vec<(Color, usize, usize)>,
    /// Vertices consumed in each part.
    pub part_usage: Vec<usize>,
}

/// Vertices each part must supply, and where the detours go.
fn plan(
    t: &PatternTemplate,
    walk: &PartWalk,
    k: usize,
) -> (Vec<usize>, Vec<(Color, usize, usize)>) {
    let crossing = t.crossing_colors();
    let mut usage = vec![0; t.k()];
    for &p in &walk.parts {
        usage[p] += 1;
    }
    let mut insertions = Vec::new();
    for c in 0..t.r() as Color {
        if crossing.contains(&c) {
            continue;
        }
        let Some(part) = (0..t.k()).find(|&p| t.color(p, p) == c) else {
            continue;
        };
        let at = walk
            .parts
            .iter()
            .position(|&p| p == part)
            .expect("walk visits every part");
        usage[part] += 2 * k;
        insertions.push((c, part, at));
    }
    (usage, insertions)
}

/// Per-part vertex demand of [`embed_balanced_long_path`].
pub fn vertex_budget(t: &PatternTemplate, k: usize) -> Result<Vec<usize>> {
    vertex_budget_with(t, k, Multiplicity::Relaxed)
}

pub fn vertex_budget_with(t: &PatternTemplate, k: usize, mode: Multiplicity) -> Result<Vec<usize>> {
    let walk = eulerian_circuit(&build_multigraph_with(t, k, mode)?)?;
    Ok(plan(t, &walk, k).0)
}

/// Balanced path with `2rk` edges in `blow_up(t, part_size)`.
pub fn embed_balanced_long_path(
    t: &PatternTemplate,
    part_size: usize,
    k: usize,
) -> Result<Embedding> {
    embed_balanced_long_path_traced(t, part_size, k).map(|x| x.embedding)
}

pub fn embed_balanced_long_path_traced(
    t: &PatternTemplate,
    part_size: usize,
    k: usize,
) -> Result<LongPathEmbedding> {
    embed_balanced_long_path_with(t, part_size, k, Multiplicity::Relaxed)
}

pub fn embed_balanced_long_path_with(
    t: &PatternTemplate,
    part_size: usize,
    k: usize,
    mode: Multiplicity,
) -> Result<LongPathEmbedding> {
    if !t.is_valid() {
        return Err(Error::MalformedTemplate(
            "template is not a valid pattern".into(),
        ));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let mg = build_multigraph_with(t, k, mode)?;
    let walk = eulerian_circuit(&mg)?;
    let (usage, insertions) = plan(t, &walk, k);
    if let Some(p) = (0..t.k()).find(|&p| usage[p] > part_size) {
        return Err(Error::Precondition(format!(
            "part {p} needs {} vertices but has {part_size}; per-part budget {usage:?}",
            usage[p]
        )));
    }
    let mut next = vec![0usize; t.k()];
    let mut fresh = |p: usize| {
        let v = p * part_size + next[p];
        next[p] += 1;
        v
    };
    let mut vertices = Vec::with_capacity(2 * t.r() * k + 1);
    for (i, &p) in walk.parts.iter().enumerate() {
        vertices.push(fresh(p));
        for &(_, part, at) in &insertions {
            if at == i && part == p {
                for _ in 0..2 * k {
                    vertices.push(fresh(p));
                }
            }
        }
    }
    let host = t.blow_up(part_size);
    let embedding = Embedding::path(&host, vertices)?;
    Ok(LongPathEmbedding {
        embedding,
        walk,
        insertions,
        part_usage: usage,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartParity {
    pub part: usize,
    /// Walk degree forced on the part, when every incident pair is forced.
    pub degree: Option<usize>,
    pub odd: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    pub k: usize,
    pub parts: Vec<PartParity>,
    pub forced_odd: usize,
    /// False when more than two parts have forced odd degree.
    pub feasible: bool,
}

/// Degree parities implied by a balanced path with `k` edges per color.
///
/// A pair of parts is forced when its color occurs on no other pair and
/// inside no part: every edge of that color then crosses this pair, so the
/// contracted walk uses it exactly `k` times.
pub fn walk_parity_report(t: &PatternTemplate, k: usize) -> ParityReport {
    let l = t.k();
    let counts = t.crossing_pair_counts();
    let on_diag: Vec<bool> = (0..t.r())
        .map(|c| (0..l).any(|p| t.color(p, p) as usize == c))
        .collect();
    let forced = |i: usize, j: usize| {
        let c = t.color(i, j) as usize;
        counts[c] == 1 && !on_diag[c]
    };
    let parts: Vec<PartParity> = (0..l)
        .map(|i| {
            let all = (0..l).filter(|&j| j != i).all(|j| forced(i, j));
            let degree = all.then(|| (l - 1) * k);
            PartParity {
                part: i,
                degree,
                odd: degree.map(|d| d % 2 == 1),
            }
        })
        .collect();
    let forced_odd = parts.iter().filter(|p| p.odd == Some(true)).count();
    ParityReport {
        k,
        parts,
        forced_odd,
        feasible: forced_odd <= 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balance::is_balanced;
    use crate::constructions::clique_partition_template;
    use crate::patterns::{separator_pattern, tournament_pattern, Tournament};

    fn cyclic3() -> PatternTemplate {
        tournament_pattern(&Tournament::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap())
    }

    #[test]
    fn crossing_and_lcm_examples() {
        let sep = separator_pattern(3);
        assert_eq!(crossing_colors(&sep), vec![0, 1, 2]);
        assert_eq!(sep.crossing_pair_counts(), vec![1, 1, 4]);
        assert_eq!(lcm_k0(&sep), 4);
        assert_eq!(crossing_colors(&cyclic3()), vec![0, 1, 2]);
        let two = PatternTemplate::new(3, vec![vec![0, 2], vec![2, 1]]).unwrap();
        assert_eq!(crossing_colors(&two), vec![2]);
        assert_eq!(lcm_k0(&two), 1);
    }

    #[test]
    fn multigraph_examples() {
        let sep = separator_pattern(3);
        let mg = build_multigraph(&sep, 4).unwrap();
        assert_eq!(mg.mult[0][1], 8);
        assert_eq!(mg.mult[2][3], 8);
        assert_eq!(mg.mult[0][2], 2);
        assert_eq!(mg.color_totals(3), vec![8, 8, 8]);
        assert!(build_multigraph(&sep, 3).is_err());
        let uni = build_multigraph_with(&sep, 4, Multiplicity::Uniform).unwrap();
        assert_eq!(uni, mg);
        assert!(build_multigraph_with(&sep, 6, Multiplicity::Uniform).is_err());
        let relaxed = build_multigraph(&sep, 6).unwrap();
        assert_eq!(relaxed.color_totals(3), vec![12, 12, 12]);
        assert!(relaxed.mult.iter().flatten().all(|m| m % 2 == 0));
    }

    #[test]
    fn circuit_examples() {
        let two = ColorMultigraph {
            parts: 2,
            mult: vec![vec![0, 2], vec![2, 0]],
            pair_color: vec![vec![0, 1], vec![1, 0]],
        };
        assert_eq!(eulerian_circuit(&two).unwrap().parts, vec![0, 1, 0]);
        let tri = ColorMultigraph {
            parts: 3,
            mult: vec![vec![0, 2, 2], vec![2, 0, 2], vec![2, 2, 0]],
            pair_color: vec![vec![0; 3]; 3],
        };
        let w = eulerian_circuit(&tri).unwrap();
        assert_eq!(w.len(), 6);
        assert!(w.covers_exactly(&tri));
        let mg = build_multigraph(&separator_pattern(3), 4).unwrap();
        let w = eulerian_circuit(&mg).unwrap();
        assert_eq!(w.len(), 24);
        assert!(w.covers_exactly(&mg));
        let odd = ColorMultigraph {
            parts: 2,
            mult: vec![vec![0, 1], vec![1, 0]],
            pair_color: vec![vec![0; 2]; 2],
        };
        assert!(eulerian_circuit(&odd).is_err());
    }

    #[test]
    fn long_path_examples() {
        let e = embed_balanced_long_path(&separator_pattern(3), 40, 4).unwrap();
        assert_eq!(e.profile, vec![8, 8, 8]);
        assert!(is_balanced(&e));
        let c = embed_balanced_long_path_traced(&cyclic3(), 20, 2).unwrap();
        assert!(c.insertions.is_empty());
        assert_eq!(c.embedding.guest.edge_count(), 12);
        assert!(is_balanced(&c.embedding));
        let two = PatternTemplate::new(3, vec![vec![0, 2], vec![2, 1]]).unwrap();
        let d = embed_balanced_long_path_traced(&two, 30, 3).unwrap();
        assert_eq!(d.insertions.len(), 2);
        assert_eq!(d.embedding.profile, vec![6, 6, 6]);
    }

    #[test]
    fn long_path_reports_vertex_budget() {
        let budget = vertex_budget(&separator_pattern(3), 4).unwrap();
        let max = *budget.iter().max().unwrap();
        assert!(embed_balanced_long_path(&separator_pattern(3), max, 4).is_ok());
        let err = embed_balanced_long_path(&separator_pattern(3), max - 1, 4).unwrap_err();
        assert!(err.to_string().contains("needs"));
    }

    #[test]
    fn parity_examples() {
        let t4 = clique_partition_template(4).unwrap();
        let r = walk_parity_report(&t4, 1);
        assert!(r.parts.iter().all(|p| p.degree == Some(3)));
        assert!(!r.feasible);
        assert!(walk_parity_report(&t4, 2).feasible);
        assert!(!walk_parity_report(&t4, 3).feasible);
        let t6 = clique_partition_template(6).unwrap();
        let r6 = walk_parity_report(&t6, 3);
        assert!(r6.parts.iter().all(|p| p.degree == Some(15)));
        assert!(!r6.feasible);
        // nothing is forced when colors repeat across pairs
        assert!(walk_parity_report(&separator_pattern(3), 1).parts[0]
            .degree
            .is_none());
    }
}
