//! Pattern members in dense colorings, following the dependent random
//! choice argument step by step with explicit budgets in place of its
//! asymptotic constants.
//!
//! 1. per color `i`, a set `S_i` whose `x`-subsets have many common `i`-neighbors;
//! 2. the `S_i` made disjoint and a monochromatic grid `X_1..X_r` extracted;
//! 3. `Y_i`, the common `i`-neighborhood of `X_i`, made disjoint from the rest;
//! 4. each `Y_i` bucketed by its colors towards the other `X_j`, favoring
//!    buckets that see every `X_j` in one color;
//! 5. each `X_j` bucketed by its colors towards the surviving `Y_i`;
//! 6. a second grid on the `Y_i`;
//!
//! Neighborhoods whose buckets end up too small are dropped rather than
//! aborting the attempt, since the first grid may already use every color.
//!
//! 7. the `2r` parts pruned to a minimal collection still using every color.
//!
//! Minimality makes every part the only carrier of some color, so the
//! pruned structure is a pattern member.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::drc::{common_neighborhood, drc_find_set, DrcConfig};
use super::grid::mono_grid_extract;
use super::PatternMatch;
use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph};
use crate::patterns::PatternTemplate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct PipelineConfig {
    /// Part size of the member sought.
    pub t: usize,
    /// Size of the first grid parts `X_i`; extra room for step 5.
    pub x_size: usize,
    /// Size of the dependent random choice sets.
    #[serde(rename = "K")]
    pub k: usize,
    pub trials: usize,
    /// Independent restarts of the whole pipeline.
    pub attempts: usize,
    pub seed: u64,
    pub grid_budget: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self::for_t(2)
    }
}

impl PipelineConfig {
    pub fn for_t(t: usize) -> Self {
        Self {
            t,
            x_size: t,
            k: 6 * t,
            trials: 512,
            attempts: 4,
            seed: 0,
            grid_budget: 2_000_000,
        }
    }
}

pub fn find_pattern_member(
    g: &ColoredGraph,
    r: usize,
    cfg: &PipelineConfig,
) -> Result<Option<PatternMatch>> {
    find_pattern_member_traced(g, r, cfg).map(|(m, _)| m)
}

/// Same as [`find_pattern_member`], with one transcript line per attempt.
pub fn find_pattern_member_traced(
    g: &ColoredGraph,
    r: usize,
    cfg: &PipelineConfig,
) -> Result<(Option<PatternMatch>, Vec<String>)> {
    if g.r() != r {
        return Err(Error::InvalidParameter(format!(
            "host has {} colors but r = {r}",
            g.r()
        )));
    }
    if cfg.t < 2 || cfg.x_size < cfg.t || cfg.k == 0 || cfg.trials == 0 {
        return Err(Error::InvalidParameter(
            "need t >= 2, x_size >= t and positive K, trials".into(),
        ));
    }
    let mut transcript = Vec::new();
    for a in 0..cfg.attempts.max(1) {
        match attempt(g, r, cfg, a) {
            Ok(m) => {
                transcript.push(format!(
                    "attempt {a}: member with {} parts of size {}, verified",
                    m.parts.len(),
                    m.part_size()
                ));
                return Ok((Some(m), transcript));
            }
            Err(stage) => transcript.push(format!("attempt {a}: {stage}")),
        }
    }
    Ok((None, transcript))
}

/// Splits overlapping sets into disjoint ones, round robin, each at most `cap` long.
fn disjoint(sets: &[Vec<usize>], cap: usize, n: usize, taken: &mut [bool]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); sets.len()];
    let mut pos = vec![0; sets.len()];
    loop {
        let mut progressed = false;
        for (i, s) in sets.iter().enumerate() {
            if out[i].len() >= cap {
                continue;
            }
            while pos[i] < s.len() {
                let v = s[pos[i]];
                pos[i] += 1;
                if v < n && !taken[v] {
                    taken[v] = true;
                    out[i].push(v);
                    progressed = true;
                    break;
                }
            }
        }
        if !progressed {
            return out;
        }
    }
}

/// Largest group of `items` sharing the same key; ties go to the smallest key.
fn majority<K: Ord>(items: &[usize], key: impl Fn(usize) -> K) -> Vec<usize> {
    let mut buckets: BTreeMap<K, Vec<usize>> = BTreeMap::new();
    for &v in items {
        buckets.entry(key(v)).or_default().push(v);
    }
    let mut best: Vec<usize> = Vec::new();
    for b in buckets.into_values() {
        if b.len() > best.len() {
            best = b;
        }
    }
    best
}

fn attempt(
    g: &ColoredGraph,
    r: usize,
    cfg: &PipelineConfig,
    a: usize,
) -> std::result::Result<PatternMatch, String> {
    let n = g.n();
    let base = cfg
        .seed
        .wrapping_add((a as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    // step 1
    let mut s = Vec::with_capacity(r);
    for c in 0..r {
        let drc = DrcConfig {
            t: cfg.x_size,
            k: cfg.k,
            trials: cfg.trials,
            seed: base.wrapping_add(c as u64),
            verify_budget: 50_000,
        };
        let set =
            drc_find_set(g, c as Color, &drc).ok_or(format!("no dependent set for color {c}"))?;
        s.push(set.set);
    }
    // step 2
    let mut taken = vec![false; n];
    let s = disjoint(&s, cfg.k, n, &mut taken);
    if s.iter().any(|x| x.len() < cfg.x_size) {
        return Err("dependent sets overlap too much".into());
    }
    let x = match mono_grid_extract(g, &s, cfg.x_size, Some(cfg.grid_budget)) {
        Ok(Some(x)) => x,
        Ok(None) => return Err("no monochromatic grid in the dependent sets".into()),
        Err(e) => return Err(format!("first grid: {e}")),
    };
    // step 3
    let mut taken = vec![false; n];
    x.iter().flatten().for_each(|&v| taken[v] = true);
    let y: Vec<Vec<usize>> = (0..r)
        .map(|i| common_neighborhood(g, i as Color, &x[i]).iter().collect())
        .collect();
    let y = disjoint(&y, n, n, &mut taken);
    // step 4, preferring buckets that see each X_j in a single color
    let y: Vec<Vec<usize>> = (0..r)
        .map(|i| {
            let key = |v: usize| {
                (0..r)
                    .filter(|&j| j != i)
                    .flat_map(|j| x[j].iter().map(move |&u| g.color(u, v)))
                    .collect::<Vec<_>>()
            };
            let flat = |v: usize| {
                (0..r)
                    .filter(|&j| j != i)
                    .all(|j| x[j].iter().all(|&u| g.color(u, v) == g.color(x[j][0], v)))
            };
            let uniform: Vec<usize> = y[i].iter().copied().filter(|&v| flat(v)).collect();
            let best = majority(&uniform, key);
            if best.len() >= cfg.t {
                best
            } else {
                majority(&y[i], key)
            }
        })
        .collect();
    // a neighborhood whose bucket is too small is dropped; the grid may not need it
    let mut alive: Vec<usize> = (0..r).filter(|&i| y[i].len() >= cfg.t).collect();
    // step 5
    let bucketed: Vec<Vec<usize>> = (0..r)
        .map(|j| {
            let mut b = majority(&x[j], |u| {
                alive
                    .iter()
                    .filter(|&&i| i != j)
                    .map(|&i| g.color(u, y[i][0]))
                    .collect::<Vec<_>>()
            });
            b.truncate(cfg.t);
            b
        })
        .collect();
    let x: Vec<Vec<usize>> = if bucketed.iter().all(|b| b.len() >= cfg.t) {
        bucketed
    } else {
        // keep the first grid on its own
        alive.clear();
        x.into_iter()
            .map(|mut p| {
                p.truncate(cfg.t);
                p
            })
            .collect()
    };
    // step 6
    let y_alive: Vec<Vec<usize>> = alive.iter().map(|&i| y[i].clone()).collect();
    let y = if y_alive.is_empty() {
        Vec::new()
    } else {
        match mono_grid_extract(g, &y_alive, cfg.t, Some(cfg.grid_budget)) {
            Ok(Some(y)) => y,
            Ok(None) | Err(Error::BudgetExceeded { .. }) => Vec::new(),
            Err(e) => return Err(format!("second grid: {e}")),
        }
    };
    // step 7
    let mut parts: Vec<Vec<usize>> = x.into_iter().chain(y).collect();
    let colors_of = |ps: &[Vec<usize>]| {
        let mut seen = vec![false; r];
        for (i, p) in ps.iter().enumerate() {
            seen[g.color(p[0], p[1]) as usize] = true;
            for q in &ps[i + 1..] {
                seen[g.color(p[0], q[0]) as usize] = true;
            }
        }
        seen.iter().all(|&b| b)
    };
    if !colors_of(&parts) {
        return Err("grid misses a color".into());
    }
    let mut i = parts.len();
    while i > 0 {
        i -= 1;
        let mut fewer = parts.clone();
        fewer.remove(i);
        if !fewer.is_empty() && colors_of(&fewer) {
            parts = fewer;
        }
    }
    let m = parts
        .iter()
        .enumerate()
        .map(|(a, pa)| {
            parts
                .iter()
                .enumerate()
                .map(|(b, pb)| {
                    if a == b {
                        g.color(pa[0], pa[1])
                    } else {
                        g.color(pa[0], pb[0])
                    }
                })
                .collect()
        })
        .collect();
    let template = PatternTemplate::new(r, m).map_err(|e| e.to_string())?;
    PatternMatch::new(g, template, parts).map_err(|e| format!("verification failed: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{enumerate_patterns, separator_pattern};

    #[test]
    fn recovers_members_in_blow_ups() {
        for t in enumerate_patterns(2).unwrap().templates {
            let g = t.blow_up(30);
            let m = find_pattern_member(&g, 2, &PipelineConfig::default())
                .unwrap()
                .unwrap();
            assert!(m.verify(&g));
        }
        let g = separator_pattern(3).blow_up(30);
        assert!(find_pattern_member(&g, 3, &PipelineConfig::default())
            .unwrap()
            .is_some());
    }

    #[test]
    fn missing_color_gives_nothing() {
        let g = ColoredGraph::monochromatic(40, 3, 0);
        let (m, transcript) =
            find_pattern_member_traced(&g, 3, &PipelineConfig::default()).unwrap();
        assert!(m.is_none());
        assert_eq!(transcript.len(), 4);
    }

    #[test]
    fn deterministic() {
        let g = crate::testutil::random_graph(80, 2, 3);
        let cfg = PipelineConfig {
            seed: 5,
            ..PipelineConfig::default()
        };
        let a = find_pattern_member_traced(&g, 2, &cfg).unwrap();
        let b = find_pattern_member_traced(&g, 2, &cfg).unwrap();
        assert_eq!(a.1, b.1);
        assert_eq!(a.0.map(|m| m.parts), b.0.map(|m| m.parts));
    }
}
