//! Balanced copies of small guests inside colored complete graphs.
//!
//! A copy is balanced when every color covers `floor(m/r)` or `ceil(m/r)` of
//! its `m` edges.

mod check;
mod lemmas;
mod number;
mod search;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::ColoredGraph;

pub use check::{balanceable_check, balanceable_check_with, BalanceabilityReport, PatternOutcome};
pub use lemmas::constructive_lemma_extend;
pub use number::{
    balancing_number_bruteforce, balancing_number_exact, balancing_number_with,
    colorings_up_to_isomorphism, monotonicity_report, BalancingCertificate, BalancingValue,
    NumberOptions,
};
pub use search::{
    find_balanced, find_balanced_budgeted, find_balanced_copy, find_balanced_copy_budgeted,
    find_balanced_cycle, find_balanced_cycle_budgeted, find_balanced_path,
    find_balanced_path_budgeted, Budget, SearchStats,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GuestKind {
    /// Path with this many edges.
    Path(usize),
    /// Cycle with this many edges.
    Cycle(usize),
    General,
}

/// An uncolored guest graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Guest {
    n: usize,
    edges: Vec<(usize, usize)>,
    kind: GuestKind,
}

impl Guest {
    /// Path with `len` edges on vertices `0..=len`.
    pub fn path(len: usize) -> Self {
        Self {
            n: len + 1,
            edges: (0..len).map(|i| (i, i + 1)).collect(),
            kind: GuestKind::Path(len),
        }
    }

    /// Cycle with `len >= 3` edges.
    pub fn cycle(len: usize) -> Self {
        assert!(len >= 3, "a cycle needs at least 3 edges");
        Self {
            n: len,
            edges: (0..len).map(|i| (i, (i + 1) % len)).collect(),
            kind: GuestKind::Cycle(len),
        }
    }

    pub fn complete(q: usize) -> Self {
        let edges = (0..q)
            .flat_map(|a| (a + 1..q).map(move |b| (a, b)))
            .collect();
        Self {
            n: q,
            edges,
            kind: GuestKind::General,
        }
    }

    pub fn from_edges(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(Error::VertexOutOfRange { v: a.max(b), n });
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::DuplicatePair {
                    u: a.min(b),
                    v: a.max(b),
                });
            }
        }
        Ok(Self {
            n,
            edges,
            kind: GuestKind::General,
        })
    }

    /// Parses the guest file format: a vertex count line, then one `u v` line per edge.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (_, first) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing vertex count".into(),
        })?;
        let n = first.parse::<usize>().map_err(|e| Error::Parse {
            line: 1,
            msg: e.to_string(),
        })?;
        let mut edges = Vec::new();
        for (ln, line) in lines {
            let f: Vec<usize> = line
                .split_whitespace()
                .map(|x| x.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse {
                    line: ln,
                    msg: e.to_string(),
                })?;
            if f.len() != 2 {
                return Err(Error::Parse {
                    line: ln,
                    msg: format!("expected 2 integers, found {}", f.len()),
                });
            }
            edges.push((f[0], f[1]));
        }
        Self::from_edges(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn kind(&self) -> GuestKind {
        self.kind
    }
}

impl fmt::Display for Guest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GuestKind::Path(l) => write!(f, "path:{l}"),
            GuestKind::Cycle(l) => write!(f, "cycle:{l}"),
            GuestKind::General => write!(f, "graph(n={},m={})", self.n, self.edges.len()),
        }
    }
}

/// `path:L` or `cycle:L`; guest files are loaded by the caller.
impl FromStr for Guest {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidParameter(format!("guest spec {s:?} is not kind:arg")))?;
        let len = || {
            arg.parse::<usize>()
                .map_err(|e| Error::InvalidParameter(format!("guest length {arg:?}: {e}")))
        };
        match kind {
            "path" => {
                let l = len()?;
                if l == 0 {
                    return Err(Error::InvalidParameter(
                        "path needs at least one edge".into(),
                    ));
                }
                Ok(Guest::path(l))
            }
            "cycle" => {
                let l = len()?;
                if l < 3 {
                    return Err(Error::InvalidParameter(
                        "cycle needs at least 3 edges".into(),
                    ));
                }
                Ok(Guest::cycle(l))
            }
            _ => Err(Error::InvalidParameter(format!(
                "unknown guest kind {kind:?}"
            ))),
        }
    }
}

/// Allowed per-color edge counts of a balanced copy with `m` edges in `r` colors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BalanceTarget {
    pub floor: usize,
    pub ceil: usize,
    /// How many colors sit at `ceil` (zero when `r` divides `m`).
    pub at_ceil: usize,
}

impl BalanceTarget {
    pub fn new(m: usize, r: usize) -> Self {
        let floor = m / r;
        let rem = m % r;
        Self {
            floor,
            ceil: floor + usize::from(rem > 0),
            at_ceil: rem,
        }
    }

    pub fn accepts(&self, profile: &[usize]) -> bool {
        profile.iter().all(|&c| c == self.floor || c == self.ceil)
    }
}

/// Injective placement of a guest into a host, with the host colors it uses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub guest: Guest,
    /// `map[i]` is the host vertex of guest vertex `i`.
    pub map: Vec<usize>,
    /// `profile[c]` is the number of guest edges landing on color `c`.
    pub profile: Vec<usize>,
}

impl Embedding {
    pub fn new(host: &ColoredGraph, guest: Guest, map: Vec<usize>) -> Result<Self> {
        if map.len() != guest.n {
            return Err(Error::InvalidParameter(format!(
                "map has {} entries for a guest on {} vertices",
                map.len(),
                guest.n
            )));
        }
        let mut seen = vec![false; host.n()];
        for &v in &map {
            if v >= host.n() {
                return Err(Error::VertexOutOfRange { v, n: host.n() });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidParameter(format!(
                    "host vertex {v} used twice"
                )));
            }
        }
        let mut profile = vec![0; host.r()];
        for &(a, b) in &guest.edges {
            profile[host.color(map[a], map[b]) as usize] += 1;
        }
        Ok(Self {
            guest,
            map,
            profile,
        })
    }

    /// Path embedding from a host vertex sequence.
    pub fn path(host: &ColoredGraph, vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidParameter("empty path".into()));
        }
        Self::new(host, Guest::path(vertices.len() - 1), vertices)
    }

    /// Re-derives the profile from the host; `false` if it disagrees or the map is not injective.
    pub fn verify(&self, host: &ColoredGraph) -> bool {
        Embedding::new(host, self.guest.clone(), self.map.clone())
            .map(|e| e.profile == self.profile)
            .unwrap_or(false)
    }
}

pub fn is_balanced(e: &Embedding) -> bool {
    let r = e.profile.len();
    r > 0 && BalanceTarget::new(e.guest.edge_count(), r).accepts(&e.profile)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with_profile(len: usize, profile: Vec<usize>) -> Embedding {
        Embedding {
            guest: Guest::path(len),
            map: (0..=len).collect(),
            profile,
        }
    }

    #[test]
    fn balanced_examples() {
        assert!(is_balanced(&with_profile(3, vec![1, 1, 1])));
        assert!(is_balanced(&with_profile(6, vec![2, 2, 2])));
        assert!(!is_balanced(&with_profile(6, vec![3, 2, 1])));
        assert!(is_balanced(&with_profile(4, vec![2, 1, 1])));
        assert!(!is_balanced(&with_profile(4, vec![2, 2, 0])));
    }

    #[test]
    fn guest_specs() {
        assert_eq!("path:6".parse::<Guest>().unwrap(), Guest::path(6));
        assert_eq!("cycle:9".parse::<Guest>().unwrap().edge_count(), 9);
        assert!("cycle:2".parse::<Guest>().is_err());
        assert!("tree:3".parse::<Guest>().is_err());
        let g = Guest::parse_text("3\n0 1\n1 2\n").unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(Guest::parse_text("3\n0 3\n").is_err());
    }

    #[test]
    fn embedding_rejects_non_injective() {
        let host = ColoredGraph::monochromatic(4, 2, 0);
        assert!(Embedding::new(&host, Guest::path(2), vec![0, 1, 0]).is_err());
        let e = Embedding::new(&host, Guest::path(2), vec![0, 1, 2]).unwrap();
        assert_eq!(e.profile, vec![2, 0]);
        assert!(e.verify(&host));
    }
}
