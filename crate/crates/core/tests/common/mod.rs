//! Independent oracles shared by the integration and acceptance tests. They
//! use no search code from the library, only its graph type.

#![allow(dead_code)]

pub mod lemmas;

use colorpat::balance::{Guest, GuestKind};
use colorpat::graph::{Color, ColoredGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_host(n: usize, r: usize, seed: u64) -> ColoredGraph {
    ColoredGraph::random(n, r, &mut rng(seed))
}

/// Balanced profile test written out from the definition.
pub fn profile_is_balanced(profile: &[usize], m: usize) -> bool {
    let r = profile.len();
    profile.iter().all(|&c| c == m / r || c == m.div_ceil(r))
}

/// Every injective map of the guest into the host, no pruning at all.
pub fn naive_balanced(host: &ColoredGraph, guest: &Guest, r: usize) -> bool {
    fn go(host: &ColoredGraph, guest: &Guest, r: usize, map: &mut Vec<usize>) -> bool {
        if map.len() == guest.n() {
            let mut profile = vec![0; r];
            for &(a, b) in guest.edges() {
                profile[host.color(map[a], map[b]) as usize] += 1;
            }
            return profile_is_balanced(&profile, guest.edge_count());
        }
        for h in 0..host.n() {
            if !map.contains(&h) {
                map.push(h);
                if go(host, guest, r, map) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    guest.n() <= host.n() && go(host, guest, r, &mut Vec::new())
}

/// Balancing number straight from the definition: all `r^(n choose 2)`
/// colorings, each checked with [`naive_balanced`]. `None` means every
/// coloring contains a balanced copy.
pub fn naive_balancing_number(n: usize, guest: &Guest, r: usize) -> Option<usize> {
    let pairs = n * (n - 1) / 2;
    let total = (r as u64).pow(pairs as u32);
    let mut best: Option<usize> = None;
    for code in 0..total {
        let mut c = code;
        let colors: Vec<Color> = (0..pairs)
            .map(|_| {
                let x = (c % r as u64) as Color;
                c /= r as u64;
                x
            })
            .collect();
        let g = ColoredGraph::from_colors(n, r, colors);
        let m = *g.histogram().counts().iter().min().unwrap();
        if best.is_some_and(|b| b >= m) {
            continue;
        }
        if !naive_balanced(&g, guest, r) {
            best = Some(m);
        }
    }
    best
}

/// Pattern-member test straight from the definition: some `k` disjoint
/// parts of size `t` with monochromatic parts, monochromatic pairs, all
/// colors present and every part the only carrier of some color.
pub fn naive_pattern_member(host: &ColoredGraph, r: usize, t: usize) -> bool {
    let n = host.n();
    (1..=n / t).any(|k| {
        let mut parts: Vec<Vec<usize>> = Vec::new();
        let mut used = vec![false; n];
        partitions(host, r, t, k, &mut parts, &mut used)
    })
}

fn partitions(
    host: &ColoredGraph,
    r: usize,
    t: usize,
    k: usize,
    parts: &mut Vec<Vec<usize>>,
    used: &mut [bool],
) -> bool {
    if parts.len() == k {
        return is_member(host, r, parts);
    }
    // parts are listed by increasing first vertex to avoid repeats
    let lo = parts.last().map_or(0, |p| p[0] + 1);
    for first in lo..host.n() {
        if used[first] {
            continue;
        }
        let mut part = vec![first];
        if fill(host, r, t, k, parts, used, &mut part) {
            return true;
        }
    }
    false
}

fn fill(
    host: &ColoredGraph,
    r: usize,
    t: usize,
    k: usize,
    parts: &mut Vec<Vec<usize>>,
    used: &mut [bool],
    part: &mut Vec<usize>,
) -> bool {
    if part.len() == t {
        part.iter().for_each(|&v| used[v] = true);
        parts.push(part.clone());
        let found = partitions(host, r, t, k, parts, used);
        parts.pop();
        part.iter().for_each(|&v| used[v] = false);
        return found;
    }
    for v in part.last().unwrap() + 1..host.n() {
        if used[v] {
            continue;
        }
        part.push(v);
        if fill(host, r, t, k, parts, used, part) {
            return true;
        }
        part.pop();
    }
    false
}

pub fn is_member(host: &ColoredGraph, r: usize, parts: &[Vec<usize>]) -> bool {
    let k = parts.len();
    let mut m = vec![vec![0 as Color; k]; k];
    for a in 0..k {
        for b in 0..k {
            let mut colors = Vec::new();
            for &u in &parts[a] {
                for &v in &parts[b] {
                    if u != v {
                        colors.push(host.color(u, v));
                    }
                }
            }
            if colors.windows(2).any(|w| w[0] != w[1]) {
                return false;
            }
            m[a][b] = colors[0];
        }
    }
    let present = |skip: Option<usize>| {
        let mut seen = vec![false; r];
        for a in 0..k {
            for b in a..k {
                if Some(a) != skip && Some(b) != skip {
                    seen[m[a][b] as usize] = true;
                }
            }
        }
        seen
    };
    let all = present(None);
    all.iter().all(|&s| s) && (0..k).all(|p| present(Some(p)).iter().any(|&s| !s))
}

/// Host vertex sequence check for a claimed path or cycle.
pub fn walk_profile(host: &ColoredGraph, vs: &[usize], closed: bool) -> Vec<usize> {
    let mut p = vec![0; host.r()];
    for w in vs.windows(2) {
        p[host.color(w[0], w[1]) as usize] += 1;
    }
    if closed {
        p[host.color(vs[vs.len() - 1], vs[0]) as usize] += 1;
    }
    p
}

pub fn injective(vs: &[usize]) -> bool {
    let mut s = vs.to_vec();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] != w[1])
}

pub fn guest_label(g: &Guest) -> String {
    match g.kind() {
        GuestKind::Path(l) => format!("P_{l}"),
        GuestKind::Cycle(l) => format!("C_{l}"),
        GuestKind::General => format!("G(n={},m={})", g.n(), g.edge_count()),
    }
}

/// Uniform random permutation of `0..n` as colors.
pub fn color_perm(rng: &mut ChaCha8Rng, n: usize) -> Vec<Color> {
    let mut v: Vec<Color> = (0..n as Color).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        v.swap(i, j);
    }
    v
}
