//! Property checks for the three path-extension lemmas in 3-colored hosts.

use colorpat::balance::{constructive_lemma_extend, find_balanced_path, is_balanced, Embedding};
use colorpat::graph::{pair_rank, Color, ColoredGraph};
use rand::Rng;

use super::{color_perm, injective, rng, walk_profile};

#[derive(Debug, Default)]
pub struct LemmaTally {
    pub instances: usize,
    pub counterexamples: Vec<String>,
}

impl LemmaTally {
    fn fail(&mut self, msg: String) {
        if self.counterexamples.len() < 10 {
            self.counterexamples.push(msg);
        }
    }
}

/// Random 3-coloring with the listed edges fixed.
fn host_with(n: usize, fixed: &[(usize, usize, Color)], rng: &mut impl Rng) -> ColoredGraph {
    let mut colors: Vec<Color> = (0..n * (n - 1) / 2).map(|_| rng.gen_range(0..3)).collect();
    for &(u, v, c) in fixed {
        colors[pair_rank(u, v)] = c;
    }
    ColoredGraph::from_colors(n, 3, colors)
}

/// Colors of a balanced path with `3(k-1)` edges, in random order.
fn balanced_sequence(k: usize, rng: &mut impl Rng) -> Vec<Color> {
    let mut seq: Vec<Color> = (0..3 * (k - 1)).map(|i| (i % 3) as Color).collect();
    for i in (1..seq.len()).rev() {
        seq.swap(i, rng.gen_range(0..=i));
    }
    seq
}

fn check_extension(
    host: &ColoredGraph,
    path: &[usize],
    tri: [usize; 3],
    k: usize,
    tally: &mut LemmaTally,
) -> Option<Embedding> {
    tally.instances += 1;
    let p = Embedding::path(host, path.to_vec()).unwrap();
    match constructive_lemma_extend(host, &p, tri) {
        Ok(e) => {
            let ok = e.map.len() == 3 * k + 1
                && injective(&e.map)
                && is_balanced(&e)
                && walk_profile(host, &e.map, false) == vec![k; 3];
            if !ok {
                tally.fail(format!("bad extension {:?} in\n{}", e.map, host.to_text()));
            }
            Some(e)
        }
        Err(err) => {
            tally.fail(format!("extension refused: {err}\n{}", host.to_text()));
            None
        }
    }
}

/// Extension lemma: planted hypotheses, hosts filtered by exact search, and
/// the forced coloring from the case analysis.
pub fn lemma_extension(planted: usize, searched: usize, forced: usize, seed: u64) -> LemmaTally {
    let mut tally = LemmaTally::default();
    let mut rng = rng(seed);
    for i in 0..planted {
        let k = 2 + i % 3;
        let len = 3 * (k - 1);
        let seq = balanced_sequence(k, &mut rng);
        let tri = [len + 1, len + 2, len + 3];
        let tc = color_perm(&mut rng, 3);
        let mut fixed: Vec<(usize, usize, Color)> = (0..len).map(|j| (j, j + 1, seq[j])).collect();
        fixed.extend([
            (tri[0], tri[1], tc[0]),
            (tri[0], tri[2], tc[1]),
            (tri[1], tri[2], tc[2]),
        ]);
        let n = len + 4 + rng.gen_range(0..3);
        let host = host_with(n, &fixed, &mut rng);
        let path: Vec<usize> = (0..=len).collect();
        check_extension(&host, &path, tri, k, &mut tally);
    }
    let mut done = 0;
    let mut s = 0u64;
    while done < searched {
        s += 1;
        let host = ColoredGraph::random(8, 3, &mut rng);
        let Some(p) = find_balanced_path(&host, 3, 3).unwrap() else {
            continue;
        };
        let rest: Vec<usize> = (0..8).filter(|v| !p.map.contains(v)).collect();
        let sub = host.induced(&rest).unwrap();
        let Some(t) = sub.find_rainbow_triangle() else {
            continue;
        };
        let tri = [rest[t[0]], rest[t[1]], rest[t[2]]];
        if check_extension(&host, &p.map, tri, 2, &mut tally).is_some()
            && find_balanced_path(&host, 6, 3).unwrap().is_none()
        {
            tally.fail(format!("search disagrees with extension on host {s}"));
        }
        done += 1;
    }
    for i in 0..forced {
        // every endpoint-to-triangle edge takes the color of the opposite triangle edge
        let k = 2 + i % 2;
        let len = 3 * (k - 1);
        let seq = balanced_sequence(k, &mut rng);
        let tri = [len + 1, len + 2, len + 3];
        let tc = color_perm(&mut rng, 3);
        let mut fixed: Vec<(usize, usize, Color)> = (0..len).map(|j| (j, j + 1, seq[j])).collect();
        let tri_edges = [
            (tri[1], tri[2], tc[0]),
            (tri[0], tri[2], tc[1]),
            (tri[0], tri[1], tc[2]),
        ];
        fixed.extend(tri_edges);
        // tri[x] is opposite the edge carrying tc[x]
        let mut opp = [0usize; 3];
        for x in 0..3 {
            opp[tc[x] as usize] = tri[x];
        }
        for e in [0, len] {
            for c in 0..3 {
                fixed.push((e.min(opp[c]), e.max(opp[c]), c as Color));
            }
        }
        let host = host_with(len + 4, &fixed, &mut rng);
        let path: Vec<usize> = (0..=len).collect();
        if let Some(e) = check_extension(&host, &path, tri, k, &mut tally) {
            let a = seq[0] as usize;
            let others: Vec<usize> = (0..3).filter(|&c| c != a).collect();
            let mut want: Vec<usize> = (1..=len).collect();
            want.extend([opp[others[0]], opp[others[1]], 0, opp[a]]);
            if e.map != want {
                tally.fail(format!(
                    "forced case returned {:?}, expected {:?}",
                    e.map, want
                ));
            }
        }
    }
    tally
}

/// Two disjoint balanced paths with three edges and different middle
/// colors always give a balanced path with six edges.
pub fn lemma_different_middles(count: usize, seed: u64) -> LemmaTally {
    let mut tally = LemmaTally::default();
    let mut rng = rng(seed);
    while tally.instances < count {
        let a = color_perm(&mut rng, 3);
        let b = color_perm(&mut rng, 3);
        if a[1] == b[1] {
            continue;
        }
        let fixed = [
            (0, 1, a[0]),
            (1, 2, a[1]),
            (2, 3, a[2]),
            (4, 5, b[0]),
            (5, 6, b[1]),
            (6, 7, b[2]),
        ];
        let n = 8 + rng.gen_range(0..2);
        let host = host_with(n, &fixed, &mut rng);
        tally.instances += 1;
        match find_balanced_path(&host, 6, 3).unwrap() {
            Some(e) if walk_profile(&host, &e.map, false) == vec![2, 2, 2] && injective(&e.map) => {
            }
            _ => tally.fail(format!("no balanced P_6 in\n{}", host.to_text())),
        }
    }
    tally
}

/// Exhaustive check on eight vertices: with paths `0123` and `4567` both
/// colored `0,1,2`, every completion without a balanced six-edge path
/// colors all other edges 1. Partial colorings are pruned as soon as a
/// balanced path appears among the colored edges.
pub fn lemma_same_middle_exhaustive() -> (LemmaTally, u64) {
    let mut tally = LemmaTally::default();
    let mut nodes = 0;
    for second in [[0u8, 1, 2], [2, 1, 0]] {
        let mut col = [UNSET; 28];
        for (u, v, c) in [
            (0, 1, 0),
            (1, 2, 1),
            (2, 3, 2),
            (4, 5, second[0]),
            (5, 6, second[1]),
            (6, 7, second[2]),
        ] {
            col[pair_rank(u, v)] = c;
        }
        let mut free: Vec<(usize, usize)> = Vec::new();
        // edges from the case analysis first so that bad choices die early
        for (u, v) in [
            (3, 4),
            (0, 7),
            (0, 2),
            (1, 3),
            (4, 6),
            (5, 7),
            (3, 7),
            (0, 4),
        ] {
            free.push((u.min(v), u.max(v)));
        }
        for v in 1..8 {
            for u in 0..v {
                if col[pair_rank(u, v)] == UNSET && !free.contains(&(u, v)) {
                    free.push((u, v));
                }
            }
        }
        assert_eq!(free.len(), 22);
        exhaust(&mut col, &free, 0, &mut tally, &mut nodes);
    }
    (tally, nodes)
}

const UNSET: Color = Color::MAX;

fn exhaust(
    col: &mut [Color; 28],
    free: &[(usize, usize)],
    i: usize,
    tally: &mut LemmaTally,
    nodes: &mut u64,
) {
    *nodes += 1;
    if i == free.len() {
        tally.instances += 1;
        if let Some(&(u, v)) = free.iter().find(|&&(u, v)| col[pair_rank(u, v)] != 1) {
            tally.fail(format!(
                "completion without balanced P_6 has edge {u}{v} colored {}",
                col[pair_rank(u, v)]
            ));
        }
        return;
    }
    let (u, v) = free[i];
    for c in 0..3 {
        col[pair_rank(u, v)] = c;
        if !partial_has_balanced_p6(col, u, v) {
            exhaust(col, free, i + 1, tally, nodes);
        }
    }
    col[pair_rank(u, v)] = UNSET;
}

/// A balanced six-edge path on colored edges through the edge `uv`.
fn partial_has_balanced_p6(col: &[Color; 28], u: usize, v: usize) -> bool {
    fn color(col: &[Color; 28], a: usize, b: usize) -> Color {
        col[pair_rank(a.min(b), a.max(b))]
    }
    fn grow(
        col: &[Color; 28],
        path: &mut Vec<usize>,
        counts: &mut [usize; 3],
        used: &mut u8,
        back: bool,
    ) -> bool {
        if path.len() == 7 {
            return true;
        }
        let end = if back { path[0] } else { *path.last().unwrap() };
        for w in 0..8 {
            if *used & (1 << w) != 0 {
                continue;
            }
            let c = color(col, end, w);
            if c == UNSET || counts[c as usize] == 2 {
                continue;
            }
            counts[c as usize] += 1;
            *used |= 1 << w;
            if back {
                path.insert(0, w);
            } else {
                path.push(w);
            }
            // extend forward first, then backward once the front is stuck
            if grow(col, path, counts, used, back) || (!back && grow(col, path, counts, used, true))
            {
                return true;
            }
            if back {
                path.remove(0);
            } else {
                path.pop();
            }
            *used &= !(1 << w);
            counts[c as usize] -= 1;
        }
        false
    }
    let c = color(col, u, v);
    let mut counts = [0usize; 3];
    counts[c as usize] = 1;
    let mut path = vec![u, v];
    let mut used = (1u8 << u) | (1u8 << v);
    grow(col, &mut path, &mut counts, &mut used, false)
        || grow(col, &mut path, &mut counts, &mut used, true)
}

/// Random hosts with the same-middle hypothesis: whenever exact search
/// finds no balanced six-edge path, every other edge has the middle color.
pub fn lemma_same_middle_random(count: usize, seed: u64) -> LemmaTally {
    let mut tally = LemmaTally::default();
    let mut rng = rng(seed);
    for _ in 0..count {
        let a = color_perm(&mut rng, 3);
        let mid = a[1];
        let b: Vec<Color> = if rng.gen_bool(0.5) {
            vec![a[0], mid, a[2]]
        } else {
            vec![a[2], mid, a[0]]
        };
        let fixed = [
            (0, 1, a[0]),
            (1, 2, mid),
            (2, 3, a[2]),
            (4, 5, b[0]),
            (5, 6, mid),
            (6, 7, b[2]),
        ];
        // bias the rest towards the middle color so that avoiders show up
        let mut colors: Vec<Color> = (0..28)
            .map(|_| {
                if rng.gen_bool(0.97) {
                    mid
                } else {
                    rng.gen_range(0..3)
                }
            })
            .collect();
        for &(u, v, c) in &fixed {
            colors[pair_rank(u, v)] = c;
        }
        let host = ColoredGraph::from_colors(8, 3, colors);
        tally.instances += 1;
        if find_balanced_path(&host, 6, 3).unwrap().is_none() {
            let path_edges: Vec<usize> = fixed.iter().map(|&(u, v, _)| pair_rank(u, v)).collect();
            let bad = (0..28).any(|e| !path_edges.contains(&e) && host.colors()[e] != mid);
            if bad {
                tally.fail(format!(
                    "avoider with a non-middle edge:\n{}",
                    host.to_text()
                ));
            }
        }
    }
    tally
}
