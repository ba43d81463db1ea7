//! Extending a balanced 3-colored path by three edges with a disjoint rainbow
//! triangle, by explicit case analysis and without search.

use super::{is_balanced, Embedding, GuestKind};
use crate::error::{Error, Result};
use crate::graph::ColoredGraph;

/// Given a balanced path with `3k - 3` edges (`k >= 2`) and a vertex-disjoint
/// rainbow triangle in a 3-colored host, returns a balanced path with `3k` edges.
///
/// Write `o(c)` for the triangle vertex opposite the triangle edge of color `c`.
/// If some endpoint `e` meets some `o(c)` in a color `d != c`, the path is
/// continued through `e, o(c)`, then the triangle vertex joined to `o(c)` in
/// the remaining color, then the last triangle vertex. Otherwise every edge
/// from an endpoint to `o(c)` has color `c`; with `a` the color of the first
/// path edge and `p < q` the other two colors, the result is
/// `x_1 .. x_end, o(p), o(q), x_0, o(a)`.
pub fn constructive_lemma_extend(
    host: &ColoredGraph,
    path: &Embedding,
    triangle: [usize; 3],
) -> Result<Embedding> {
    if host.r() != 3 {
        return Err(Error::Hypothesis(format!(
            "host has {} colors, need 3",
            host.r()
        )));
    }
    let len = match path.guest.kind() {
        GuestKind::Path(l) => l,
        _ => return Err(Error::Hypothesis("input is not a path embedding".into())),
    };
    if len < 3 || len % 3 != 0 {
        return Err(Error::Hypothesis(format!(
            "path has {len} edges, need 3k-3 with k >= 2"
        )));
    }
    if !path.verify(host) || !is_balanced(path) {
        return Err(Error::Hypothesis(
            "path is not a balanced embedding in this host".into(),
        ));
    }
    let [a, b, c] = triangle;
    if a == b || b == c || a == c || triangle.iter().any(|&v| v >= host.n()) {
        return Err(Error::Hypothesis(
            "triangle vertices must be distinct host vertices".into(),
        ));
    }
    if triangle.iter().any(|v| path.map.contains(v)) {
        return Err(Error::Hypothesis("triangle meets the path".into()));
    }
    // opp[c]: triangle vertex opposite the edge of color c
    let mut opp = [usize::MAX; 3];
    for (x, (y, z)) in [(a, (b, c)), (b, (a, c)), (c, (a, b))] {
        let col = host.color(y, z) as usize;
        if opp[col] != usize::MAX {
            return Err(Error::Hypothesis("triangle is not rainbow".into()));
        }
        opp[col] = x;
    }

    let p = &path.map;
    let ends = [p[0], p[p.len() - 1]];
    for (side, &e) in ends.iter().enumerate() {
        for (col, &o) in opp.iter().enumerate() {
            let d = host.color(e, o) as usize;
            if d == col {
                continue;
            }
            let third = 3 - col - d;
            let next = [0, 1, 2]
                .into_iter()
                .map(|i| triangle[i])
                .find(|&v| v != o && host.color(o, v) as usize == third)
                .expect("rainbow triangle has every color at each vertex pair");
            let last = triangle
                .iter()
                .copied()
                .find(|&v| v != o && v != next)
                .unwrap();
            let mut out = p.clone();
            if side == 0 {
                out.reverse();
            }
            out.extend([o, next, last]);
            return Embedding::path(host, out);
        }
    }
    let first = host.color(p[0], p[1]) as usize;
    let others: Vec<usize> = (0..3).filter(|&x| x != first).collect();
    let mut out: Vec<usize> = p[1..].to_vec();
    out.extend([opp[others[0]], opp[others[1]], p[0], opp[first]]);
    Embedding::path(host, out)
}
