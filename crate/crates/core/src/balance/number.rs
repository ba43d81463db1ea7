//! Exact balancing numbers by exhaustive enumeration of colorings.
//!
//! Colorings are generated one vertex at a time. Level `m` holds one
//! representative per isomorphism class (vertex and color permutations) of
//! the colorings of `K_m` that avoid a balanced guest. Avoidance is
//! hereditary, so every avoider on `m + 1` vertices extends some
//! representative on `m` vertices and nothing else needs to be kept.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::search::find_balanced;
use super::Guest;
use crate::canon::{canonical_graph, canonical_key, CanonicalKey};
use crate::error::{Error, Result};
use crate::graph::{pair_count, Color, ColoredGraph};

/// Colorings visited by the unpruned enumeration are capped at this count.
pub const BRUTEFORCE_LIMIT: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BalancingValue {
    /// Largest minimum color-class size over all avoiding colorings.
    Value(usize),
    /// Every coloring, even with empty color classes, contains a balanced copy.
    AllColoringsContain,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct NumberOptions {
    /// Candidate colorings examined before giving up; `None` is unlimited.
    pub node_budget: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct BalancingCertificate {
    pub n: usize,
    pub r: usize,
    pub guest: Guest,
    /// `None` only for an incomplete run that never reached `n` vertices.
    pub value: Option<BalancingValue>,
    /// An avoiding coloring attaining the value, smallest canonical key among ties.
    pub witness: Option<ColoredGraph>,
    pub witness_key: Option<CanonicalKey>,
    /// `false` when the budget ran out; the value is then only a lower bound.
    pub complete: bool,
    /// Avoiding isomorphism classes per vertex count, starting at one vertex.
    pub classes_per_level: Vec<usize>,
    pub nodes: u64,
    pub wall_ms: u128,
}

impl BalancingCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        let value = match self.value {
            Some(BalancingValue::Value(m)) => json!(m),
            Some(BalancingValue::AllColoringsContain) => json!("ALL_COLORINGS_CONTAIN"),
            None => serde_json::Value::Null,
        };
        json!({
            "n": self.n,
            "r": self.r,
            "guest": self.guest.to_string(),
            "value": value,
            "complete": self.complete,
            "witness": self.witness.as_ref().map(ColoredGraph::to_text),
            "witness_key": self.witness_key.as_ref().map(CanonicalKey::to_hex),
            "classes_per_level": self.classes_per_level,
            "nodes": self.nodes,
            "wall_ms": self.wall_ms,
        })
    }

    /// Re-checks the witness: it avoids the guest and its smallest color class matches the value.
    pub fn verify(&self) -> Result<bool> {
        match (&self.value, &self.witness) {
            (Some(BalancingValue::Value(m)), Some(w)) => Ok(w.n() == self.n
                && w.histogram().min() == *m
                && find_balanced(w, &self.guest, self.r)?.is_none()),
            (Some(BalancingValue::AllColoringsContain), None) => Ok(true),
            _ => Ok(false),
        }
    }
}

pub fn balancing_number_exact(n: usize, guest: &Guest, r: usize) -> Result<BalancingCertificate> {
    balancing_number_with(n, guest, r, &NumberOptions::default())
}

pub fn balancing_number_with(
    n: usize,
    guest: &Guest,
    r: usize,
    opts: &NumberOptions,
) -> Result<BalancingCertificate> {
    check_params(n, r)?;
    let start = Instant::now();
    let nodes = AtomicU64::new(0);
    let exhausted = AtomicBool::new(false);
    let mut level: BTreeMap<CanonicalKey, ColoredGraph> = BTreeMap::new();
    let base = ColoredGraph::from_colors(1, r, Vec::new());
    level.insert(canonical_key(&base, true), base);
    let mut classes = vec![1];
    for m in 2..=n {
        let next: Vec<(CanonicalKey, ColoredGraph)> = level
            .values()
            .collect::<Vec<_>>()
            .par_iter()
            .flat_map_iter(|g| {
                let mut out = Vec::new();
                for code in 0..(r as u64).pow(m as u32 - 1) {
                    if exhausted.load(Ordering::Relaxed) {
                        break;
                    }
                    let seen = nodes.fetch_add(1, Ordering::Relaxed) + 1;
                    if opts.node_budget.is_some_and(|b| seen > b) {
                        exhausted.store(true, Ordering::Relaxed);
                        break;
                    }
                    let h = extend(g, code, r);
                    // search failures cannot happen: r always matches
                    if find_balanced(&h, guest, r).ok().flatten().is_none() {
                        out.push((canonical_key(&h, true), h));
                    }
                }
                out
            })
            .collect();
        let mut merged = BTreeMap::new();
        for (k, g) in next {
            merged.entry(k).or_insert(g);
        }
        if exhausted.load(Ordering::Relaxed) {
            // partial last level: only a lower bound when it is the target level
            let best = if m == n { best_of(&merged) } else { None };
            return Ok(certificate(
                n, r, guest, best, false, classes, &nodes, start,
            ));
        }
        classes.push(merged.len());
        level = merged;
    }
    let best = best_of(&level);
    let value_given = best.or(Some((BalancingValue::AllColoringsContain, None)));
    Ok(certificate(
        n,
        r,
        guest,
        value_given,
        true,
        classes,
        &nodes,
        start,
    ))
}

fn check_params(n: usize, r: usize) -> Result<()> {
    if n == 0 || r == 0 {
        return Err(Error::InvalidParameter("n and r must be positive".into()));
    }
    if r > 8 {
        return Err(Error::InvalidParameter(format!(
            "r = {r} is beyond exhaustive range"
        )));
    }
    Ok(())
}

/// Appends a vertex joined to `0..g.n()` with colors given by the base-`r` digits of `code`.
fn extend(g: &ColoredGraph, mut code: u64, r: usize) -> ColoredGraph {
    let m = g.n();
    let mut colors = Vec::with_capacity(pair_count(m + 1));
    colors.extend_from_slice(g.colors());
    for _ in 0..m {
        colors.push((code % r as u64) as Color);
        code /= r as u64;
    }
    ColoredGraph::from_colors(m + 1, r, colors)
}

type Best = (BalancingValue, Option<(CanonicalKey, ColoredGraph)>);

/// Largest histogram minimum; iteration is in key order so the first hit wins ties.
fn best_of(level: &BTreeMap<CanonicalKey, ColoredGraph>) -> Option<Best> {
    let mut best: Option<(usize, &CanonicalKey, &ColoredGraph)> = None;
    for (k, g) in level {
        let m = g.histogram().min();
        if best.is_none_or(|(b, _, _)| m > b) {
            best = Some((m, k, g));
        }
    }
    best.map(|(m, k, g)| {
        (
            BalancingValue::Value(m),
            Some((k.clone(), canonical_graph(g, true))),
        )
    })
}

#[allow(clippy::too_many_arguments)]
fn certificate(
    n: usize,
    r: usize,
    guest: &Guest,
    best: Option<Best>,
    complete: bool,
    classes: Vec<usize>,
    nodes: &AtomicU64,
    start: Instant,
) -> BalancingCertificate {
    let (value, wit) = match best {
        Some((v, w)) => (Some(v), w),
        None => (None, None),
    };
    let (witness_key, witness) = match wit {
        Some((k, g)) => (Some(k), Some(g)),
        None => (None, None),
    };
    BalancingCertificate {
        n,
        r,
        guest: guest.clone(),
        value,
        witness,
        witness_key,
        complete,
        classes_per_level: classes,
        nodes: nodes.load(Ordering::Relaxed),
        wall_ms: start.elapsed().as_millis(),
    }
}

/// Same quantity with no isomorph rejection and no hereditary pruning: all
/// `r^(n choose 2)` colorings are checked one by one.
pub fn balancing_number_bruteforce(
    n: usize,
    guest: &Guest,
    r: usize,
) -> Result<BalancingCertificate> {
    check_params(n, r)?;
    let pairs = pair_count(n) as u32;
    let total = (r as u64)
        .checked_pow(pairs)
        .filter(|&t| t <= BRUTEFORCE_LIMIT)
        .ok_or_else(|| {
            Error::InvalidParameter(format!(
                "{r}^{pairs} colorings exceed the brute-force limit"
            ))
        })?;
    let start = Instant::now();
    let best = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let mut c = code;
            let colors: Vec<Color> = (0..pairs)
                .map(|_| {
                    let x = (c % r as u64) as Color;
                    c /= r as u64;
                    x
                })
                .collect();
            let g = ColoredGraph::from_colors(n, r, colors);
            match find_balanced(&g, guest, r) {
                Ok(None) => Some((g.histogram().min(), g)),
                _ => None,
            }
        })
        .fold(
            || None::<(usize, Vec<ColoredGraph>)>,
            |acc, (m, g)| merge_best(acc, Some((m, vec![g]))),
        )
        .reduce(|| None, merge_best);
    let best = best.map(|(m, gs)| {
        let (k, g) = gs
            .into_iter()
            .map(|g| (canonical_key(&g, true), g))
            .min_by(|a, b| a.0.cmp(&b.0))
            .unwrap();
        (
            BalancingValue::Value(m),
            Some((k, canonical_graph(&g, true))),
        )
    });
    let nodes = AtomicU64::new(total);
    let best = best.or(Some((BalancingValue::AllColoringsContain, None)));
    Ok(certificate(
        n,
        r,
        guest,
        best,
        true,
        Vec::new(),
        &nodes,
        start,
    ))
}

fn merge_best(
    a: Option<(usize, Vec<ColoredGraph>)>,
    b: Option<(usize, Vec<ColoredGraph>)>,
) -> Option<(usize, Vec<ColoredGraph>)> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some((ma, mut ga)), Some((mb, gb))) => {
            if ma > mb {
                Some((ma, ga))
            } else if mb > ma {
                Some((mb, gb))
            } else {
                // keep a bounded sample; canonical keys pick the witness later
                ga.extend(gb);
                dedup_bounded(&mut ga);
                Some((ma, ga))
            }
        }
    }
}

fn dedup_bounded(gs: &mut Vec<ColoredGraph>) {
    if gs.len() > 4096 {
        let mut keyed: BTreeMap<CanonicalKey, ColoredGraph> = BTreeMap::new();
        for g in gs.drain(..) {
            keyed.entry(canonical_key(&g, true)).or_insert(g);
        }
        gs.extend(keyed.into_values());
    }
}

/// One representative per class of r-colorings of `K_n` under vertex and
/// color permutations, in canonical key order.
pub fn colorings_up_to_isomorphism(n: usize, r: usize) -> Result<Vec<ColoredGraph>> {
    check_params(n, r)?;
    let mut level: BTreeMap<CanonicalKey, ColoredGraph> = BTreeMap::new();
    let base = ColoredGraph::from_colors(1, r, Vec::new());
    level.insert(canonical_key(&base, true), base);
    for m in 2..=n {
        let next: Vec<(CanonicalKey, ColoredGraph)> = level
            .values()
            .collect::<Vec<_>>()
            .par_iter()
            .flat_map_iter(|g| {
                (0..(r as u64).pow(m as u32 - 1)).map(|code| {
                    let h = extend(g, code, r);
                    (canonical_key(&h, true), h)
                })
            })
            .collect();
        level = BTreeMap::new();
        for (k, g) in next {
            level.entry(k).or_insert(g);
        }
    }
    Ok(level.into_values().collect())
}

/// Reports pairs of consecutive vertex counts where the value drops. Not a
/// theorem, only a consistency check; nothing is asserted.
pub fn monotonicity_report(certs: &[BalancingCertificate]) -> Vec<String> {
    let rank = |v: Option<BalancingValue>| match v {
        Some(BalancingValue::AllColoringsContain) => Some(-1i64),
        Some(BalancingValue::Value(m)) => Some(m as i64),
        None => None,
    };
    let mut sorted: Vec<&BalancingCertificate> = certs.iter().filter(|c| c.complete).collect();
    sorted.sort_by_key(|c| c.n);
    sorted
        .windows(2)
        .filter_map(|w| match (rank(w[0].value), rank(w[1].value)) {
            (Some(a), Some(b)) if b < a => Some(format!(
                "{} r={}: value at n={} is below value at n={}",
                w[0].guest, w[0].r, w[1].n, w[0].n
            )),
            _ => None,
        })
        .collect()
}
