//! Exact backtracking searches for balanced paths, cycles and general copies.
//!
//! All searches keep per-color counts under the balance caps and only try the
//! smallest unused vertex of each twin class, so hosts with large blow-up
//! parts stay cheap. A `None` result is a proof of non-existence.

use super::{BalanceTarget, Embedding, Guest, GuestKind};
use crate::error::{Error, Result};
use crate::graph::ColoredGraph;

/// Node budget for a single search; `None` means unlimited.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub limit: Option<u64>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget { limit: None };

    pub fn nodes(limit: u64) -> Self {
        Self { limit: Some(limit) }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
}

struct Counter {
    nodes: u64,
    limit: Option<u64>,
}

impl Counter {
    fn new(b: Budget) -> Self {
        Self {
            nodes: 0,
            limit: b.limit,
        }
    }

    #[inline]
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        match self.limit {
            Some(l) if self.nodes > l => Err(Error::BudgetExceeded { budget: l }),
            _ => Ok(()),
        }
    }
}

/// Color counts constrained to a balanced profile.
struct Tally {
    target: BalanceTarget,
    counts: Vec<usize>,
    at_ceil: usize,
}

impl Tally {
    fn new(m: usize, r: usize) -> Self {
        Self {
            target: BalanceTarget::new(m, r),
            counts: vec![0; r],
            at_ceil: 0,
        }
    }

    #[inline]
    fn try_add(&mut self, c: usize) -> bool {
        let next = self.counts[c] + 1;
        if next > self.target.ceil {
            return false;
        }
        if next > self.target.floor {
            if self.at_ceil >= self.target.at_ceil {
                return false;
            }
            self.at_ceil += 1;
        }
        self.counts[c] = next;
        true
    }

    #[inline]
    fn remove(&mut self, c: usize) {
        if self.counts[c] > self.target.floor {
            self.at_ceil -= 1;
        }
        self.counts[c] -= 1;
    }
}

fn check_r(host: &ColoredGraph, r: usize) -> Result<()> {
    if host.r() != r {
        return Err(Error::InvalidParameter(format!(
            "host has {} colors but r = {r}",
            host.r()
        )));
    }
    Ok(())
}

/// Balanced path with `len` edges.
pub fn find_balanced_path(host: &ColoredGraph, len: usize, r: usize) -> Result<Option<Embedding>> {
    find_balanced_path_budgeted(host, len, r, Budget::UNLIMITED).map(|(e, _)| e)
}

pub fn find_balanced_path_budgeted(
    host: &ColoredGraph,
    len: usize,
    r: usize,
    budget: Budget,
) -> Result<(Option<Embedding>, SearchStats)> {
    check_r(host, r)?;
    if len == 0 {
        return Err(Error::InvalidParameter(
            "path length must be positive".into(),
        ));
    }
    let mut s = PathSearch::new(host, len, budget);
    if len + 1 > host.n() {
        return Ok((None, SearchStats::default()));
    }
    let twins = host.twin_classes();
    for start in 0..host.n() {
        if twins[start] != start {
            continue;
        }
        s.path.push(start);
        s.used[start] = true;
        if s.extend(&twins, usize::MAX)? {
            let e = Embedding::path(host, s.path.clone())?;
            return Ok((
                Some(e),
                SearchStats {
                    nodes: s.counter.nodes,
                },
            ));
        }
        s.used[start] = false;
        s.path.pop();
    }
    Ok((
        None,
        SearchStats {
            nodes: s.counter.nodes,
        },
    ))
}

/// Balanced cycle with `len >= 3` edges.
pub fn find_balanced_cycle(host: &ColoredGraph, len: usize, r: usize) -> Result<Option<Embedding>> {
    find_balanced_cycle_budgeted(host, len, r, Budget::UNLIMITED).map(|(e, _)| e)
}

pub fn find_balanced_cycle_budgeted(
    host: &ColoredGraph,
    len: usize,
    r: usize,
    budget: Budget,
) -> Result<(Option<Embedding>, SearchStats)> {
    check_r(host, r)?;
    if len < 3 {
        return Err(Error::InvalidParameter(
            "cycle length must be at least 3".into(),
        ));
    }
    let mut s = PathSearch::new(host, len, budget);
    if len > host.n() {
        return Ok((None, SearchStats::default()));
    }
    let twins = host.twin_classes();
    // the start is the smallest vertex on the cycle
    for start in 0..host.n() {
        if twins[start] != start {
            continue;
        }
        s.path.push(start);
        s.used[start] = true;
        if s.extend(&twins, start)? {
            let e = Embedding::new(host, Guest::cycle(len), s.path.clone())?;
            return Ok((
                Some(e),
                SearchStats {
                    nodes: s.counter.nodes,
                },
            ));
        }
        s.used[start] = false;
        s.path.pop();
    }
    Ok((
        None,
        SearchStats {
            nodes: s.counter.nodes,
        },
    ))
}

struct PathSearch<'a> {
    host: &'a ColoredGraph,
    len: usize,
    path: Vec<usize>,
    used: Vec<bool>,
    tally: Tally,
    counter: Counter,
}

impl<'a> PathSearch<'a> {
    fn new(host: &'a ColoredGraph, len: usize, budget: Budget) -> Self {
        Self {
            host,
            len,
            path: Vec::with_capacity(len + 1),
            used: vec![false; host.n()],
            tally: Tally::new(len, host.r()),
            counter: Counter::new(budget),
        }
    }

    /// Extends the current path. With `cycle_start != usize::MAX` the walk is a
    /// cycle through `cycle_start`, using only larger vertices, closed after
    /// `len` vertices.
    fn extend(&mut self, twins: &[usize], cycle_start: usize) -> Result<bool> {
        self.counter.tick()?;
        let cycle = cycle_start != usize::MAX;
        let end = *self.path.last().unwrap();
        if cycle && self.path.len() == self.len {
            let c = self.host.color(end, cycle_start) as usize;
            if self.tally.try_add(c) {
                self.tally.remove(c);
                return Ok(true);
            }
            return Ok(false);
        }
        if !cycle && self.path.len() == self.len + 1 {
            return Ok(true);
        }
        let n = self.host.n();
        let lo = if cycle { cycle_start + 1 } else { 0 };
        let mut tried: Vec<usize> = Vec::new();
        for w in lo..n {
            if self.used[w] {
                continue;
            }
            let rep = twins[w];
            if tried.contains(&rep) {
                continue;
            }
            tried.push(rep);
            let c = self.host.color(end, w) as usize;
            if !self.tally.try_add(c) {
                continue;
            }
            self.used[w] = true;
            self.path.push(w);
            if self.extend(twins, cycle_start)? {
                return Ok(true);
            }
            self.path.pop();
            self.used[w] = false;
            self.tally.remove(c);
        }
        Ok(false)
    }
}

/// Balanced copy of an arbitrary guest by vertex-by-vertex backtracking.
pub fn find_balanced_copy(
    host: &ColoredGraph,
    guest: &Guest,
    r: usize,
) -> Result<Option<Embedding>> {
    find_balanced_copy_budgeted(host, guest, r, Budget::UNLIMITED).map(|(e, _)| e)
}

pub fn find_balanced_copy_budgeted(
    host: &ColoredGraph,
    guest: &Guest,
    r: usize,
    budget: Budget,
) -> Result<(Option<Embedding>, SearchStats)> {
    check_r(host, r)?;
    if guest.n() > host.n() {
        return Ok((None, SearchStats::default()));
    }
    let order = placement_order(guest);
    let mut pos = vec![usize::MAX; guest.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    // back[i]: guest vertices placed before order[i] and adjacent to it
    let mut back: Vec<Vec<usize>> = vec![Vec::new(); guest.n()];
    for &(a, b) in guest.edges() {
        let (early, late) = if pos[a] < pos[b] { (a, b) } else { (b, a) };
        back[pos[late]].push(early);
    }
    let mut s = CopySearch {
        host,
        order: &order,
        back: &back,
        twins: host.twin_classes(),
        map: vec![usize::MAX; guest.n()],
        used: vec![false; host.n()],
        tally: Tally::new(guest.edge_count(), r),
        counter: Counter::new(budget),
        colors: Vec::new(),
    };
    if s.place(0)? {
        let e = Embedding::new(host, guest.clone(), s.map)?;
        return Ok((
            Some(e),
            SearchStats {
                nodes: s.counter.nodes,
            },
        ));
    }
    Ok((
        None,
        SearchStats {
            nodes: s.counter.nodes,
        },
    ))
}

/// BFS order from a maximum-degree vertex, component by component.
fn placement_order(guest: &Guest) -> Vec<usize> {
    let n = guest.n();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in guest.edges() {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut roots: Vec<usize> = (0..n).collect();
    roots.sort_by_key(|&v| std::cmp::Reverse(adj[v].len()));
    for root in roots {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

struct CopySearch<'a> {
    host: &'a ColoredGraph,
    order: &'a [usize],
    back: &'a [Vec<usize>],
    twins: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
    tally: Tally,
    counter: Counter,
    colors: Vec<usize>,
}

impl CopySearch<'_> {
    fn place(&mut self, i: usize) -> Result<bool> {
        self.counter.tick()?;
        if i == self.order.len() {
            return Ok(true);
        }
        let gv = self.order[i];
        let mut tried: Vec<usize> = Vec::new();
        for h in 0..self.host.n() {
            if self.used[h] {
                continue;
            }
            let rep = self.twins[h];
            if tried.contains(&rep) {
                continue;
            }
            tried.push(rep);
            let mark = self.colors.len();
            let mut ok = true;
            for &nb in &self.back[i] {
                let c = self.host.color(h, self.map[nb]) as usize;
                if self.tally.try_add(c) {
                    self.colors.push(c);
                } else {
                    ok = false;
                    break;
                }
            }
            if ok {
                self.used[h] = true;
                self.map[gv] = h;
                if self.place(i + 1)? {
                    return Ok(true);
                }
                self.used[h] = false;
                self.map[gv] = usize::MAX;
            }
            while self.colors.len() > mark {
                let c = self.colors.pop().unwrap();
                self.tally.remove(c);
            }
        }
        Ok(false)
    }
}

/// Dispatches paths and cycles to the specialized searches.
pub fn find_balanced(host: &ColoredGraph, guest: &Guest, r: usize) -> Result<Option<Embedding>> {
    match guest.kind() {
        GuestKind::Path(l) => find_balanced_path(host, l, r),
        GuestKind::Cycle(l) => find_balanced_cycle(host, l, r),
        GuestKind::General => find_balanced_copy(host, guest, r),
    }
}

pub fn find_balanced_budgeted(
    host: &ColoredGraph,
    guest: &Guest,
    r: usize,
    budget: Budget,
) -> Result<(Option<Embedding>, SearchStats)> {
    match guest.kind() {
        GuestKind::Path(l) => find_balanced_path_budgeted(host, l, r, budget),
        GuestKind::Cycle(l) => find_balanced_cycle_budgeted(host, l, r, budget),
        GuestKind::General => find_balanced_copy_budgeted(host, guest, r, budget),
    }
}
