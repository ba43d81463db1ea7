//! Dependent random choice: sets whose small subsets all have many common
//! neighbors in one color.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::graph::{Color, ColoredGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct DrcConfig {
    /// Size of the subsets whose common neighborhoods are checked.
    pub t: usize,
    /// Size of the returned set and lower bound on every common neighborhood.
    #[serde(rename = "K")]
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    /// Above this many `t`-subsets the certificate samples instead of enumerating.
    pub verify_budget: u64,
}

impl Default for DrcConfig {
    fn default() -> Self {
        Self {
            t: 2,
            k: 8,
            trials: 64,
            seed: 0,
            verify_budget: 200_000,
        }
    }
}

impl DrcConfig {
    pub fn validate(&self) -> crate::Result<()> {
        if self.t == 0 || self.k == 0 || self.trials == 0 {
            return Err(crate::Error::InvalidParameter(
                "t, K and trials must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DrcSet {
    pub color: Color,
    pub set: Vec<usize>,
    /// True when every `t`-subset was checked, false when a sample was.
    pub exhaustive: bool,
    pub subsets_checked: u64,
    pub trial: usize,
}

/// RNG for one trial: the seed picks the key, the trial index the stream.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

pub(crate) fn common_neighborhood(g: &ColoredGraph, c: Color, vs: &[usize]) -> VertexSet {
    let mut out = VertexSet::full(g.n());
    for &v in vs {
        out.intersect_with(g.nbrs(c, v));
    }
    out
}

/// Calls `f` on every `t`-subset of `0..n` in lexicographic order until it returns false.
pub(crate) fn for_each_combination(
    n: usize,
    t: usize,
    mut f: impl FnMut(&[usize]) -> bool,
) -> bool {
    if t > n {
        return true;
    }
    let mut idx: Vec<usize> = (0..t).collect();
    loop {
        if !f(&idx) {
            return false;
        }
        let Some(i) = (0..t).rev().find(|&i| idx[i] < n - t + i) else {
            return true;
        };
        idx[i] += 1;
        for j in i + 1..t {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u64) / (i as u64 + 1);
    }
    acc
}

/// Checks the common-neighborhood condition on `set`; `None` when some subset fails.
fn certify(
    g: &ColoredGraph,
    c: Color,
    set: &[usize],
    cfg: &DrcConfig,
    rng: &mut ChaCha8Rng,
) -> Option<(bool, u64)> {
    let ok = |sub: &[usize]| common_neighborhood(g, c, sub).len() >= cfg.k;
    let total = binomial(set.len(), cfg.t);
    if total <= cfg.verify_budget {
        let mut buf = Vec::with_capacity(cfg.t);
        let all = for_each_combination(set.len(), cfg.t, |idx| {
            buf.clear();
            buf.extend(idx.iter().map(|&i| set[i]));
            ok(&buf)
        });
        return all.then_some((true, total));
    }
    for _ in 0..cfg.verify_budget {
        let sub: Vec<usize> = sample(rng, set.len(), cfg.t)
            .into_iter()
            .map(|i| set[i])
            .collect();
        if !ok(&sub) {
            return None;
        }
    }
    Some((false, cfg.verify_budget))
}

fn trial(g: &ColoredGraph, c: Color, cfg: &DrcConfig, index: usize) -> Option<DrcSet> {
    let mut rng = trial_rng(cfg.seed, index);
    let n = g.n();
    let picks: Vec<usize> = (0..cfg.t).map(|_| rng.gen_range(0..n)).collect();
    let mut cand: Vec<usize> = common_neighborhood(g, c, &picks).iter().collect();
    if cand.len() < cfg.k {
        return None;
    }
    if cand.len() > cfg.k {
        // keep the vertices with the largest total codegree inside the candidate set
        let mut scored: Vec<(usize, usize)> = cand
            .iter()
            .map(|&v| {
                let s = cand
                    .iter()
                    .filter(|&&u| u != v)
                    .map(|&u| g.nbrs(c, u).intersection_len(g.nbrs(c, v)))
                    .sum();
                (s, v)
            })
            .collect();
        scored.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        cand = scored.into_iter().take(cfg.k).map(|(_, v)| v).collect();
        cand.sort_unstable();
    }
    let (exhaustive, subsets_checked) = certify(g, c, &cand, cfg, &mut rng)?;
    Some(DrcSet {
        color: c,
        set: cand,
        exhaustive,
        subsets_checked,
        trial: index,
    })
}

/// First successful trial in trial order; independent of thread count.
pub fn drc_find_set(g: &ColoredGraph, c: Color, cfg: &DrcConfig) -> Option<DrcSet> {
    if cfg.validate().is_err() || c as usize >= g.r() || g.n() == 0 {
        return None;
    }
    (0..cfg.trials)
        .into_par_iter()
        .find_map_first(|i| trial(g, c, cfg, i))
}
