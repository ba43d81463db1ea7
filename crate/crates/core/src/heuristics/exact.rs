//! Exact membership test: does a small host contain a blow-up of some
//! pattern template with parts of size `t`?

use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph};
use crate::patterns::{enumerate_patterns, PatternCatalogue, PatternTemplate};

use super::PatternMatch;

const UNSET: Color = Color::MAX;

pub fn find_pattern_member_exact(
    g: &ColoredGraph,
    r: usize,
    t: usize,
) -> Result<Option<PatternMatch>> {
    if g.r() != r {
        return Err(Error::InvalidParameter(format!(
            "host has {} colors but r = {r}",
            g.r()
        )));
    }
    find_pattern_member_exact_with(g, &enumerate_patterns(r)?, t, None)
}

/// Backtracks over catalogue templates, vertex placements and the color
/// bijection. Parts fill in increasing vertex order to skip reorderings
/// inside a part.
pub fn find_pattern_member_exact_with(
    g: &ColoredGraph,
    catalogue: &PatternCatalogue,
    t: usize,
    budget: Option<u64>,
) -> Result<Option<PatternMatch>> {
    if t < 2 {
        return Err(Error::InvalidParameter(
            "exact membership needs t >= 2 so that part colors are visible".into(),
        ));
    }
    if catalogue.r != g.r() {
        return Err(Error::InvalidParameter(
            "catalogue and host disagree on r".into(),
        ));
    }
    let mut nodes = 0u64;
    for tpl in &catalogue.templates {
        if tpl.k() * t > g.n() {
            continue;
        }
        let mut s = Exact {
            g,
            tpl,
            t,
            slots: Vec::with_capacity(tpl.k() * t),
            used: vec![false; g.n()],
            sigma: vec![UNSET; tpl.r()],
            inverse: vec![UNSET; g.r()],
            nodes: &mut nodes,
            budget,
        };
        if s.go()? {
            let slots = s.slots.clone();
            let sigma = s.sigma.clone();
            let parts: Vec<Vec<usize>> = slots.chunks(t).map(<[usize]>::to_vec).collect();
            let m = tpl
                .matrix()
                .iter()
                .map(|row| row.iter().map(|&c| sigma[c as usize]).collect())
                .collect();
            let template = PatternTemplate::new(g.r(), m)?;
            return Ok(Some(PatternMatch::new(g, template, parts)?));
        }
    }
    Ok(None)
}

struct Exact<'a> {
    g: &'a ColoredGraph,
    tpl: &'a PatternTemplate,
    t: usize,
    slots: Vec<usize>,
    used: Vec<bool>,
    sigma: Vec<Color>,
    inverse: Vec<Color>,
    nodes: &'a mut u64,
    budget: Option<u64>,
}

impl Exact<'_> {
    fn go(&mut self) -> Result<bool> {
        *self.nodes += 1;
        if let Some(b) = self.budget {
            if *self.nodes > b {
                return Err(Error::BudgetExceeded { budget: b });
            }
        }
        let s = self.slots.len();
        if s == self.tpl.k() * self.t {
            return Ok(true);
        }
        let part = s / self.t;
        let lo = if s.is_multiple_of(self.t) {
            0
        } else {
            self.slots[s - 1] + 1
        };
        for v in lo..self.g.n() {
            if self.used[v] {
                continue;
            }
            let mut bound: Vec<Color> = Vec::new();
            let mut ok = true;
            for (i, &u) in self.slots.iter().enumerate() {
                let want = self.tpl.color(part, i / self.t) as usize;
                let have = self.g.color(u, v);
                if self.sigma[want] == UNSET {
                    if self.inverse[have as usize] != UNSET {
                        ok = false;
                        break;
                    }
                    self.sigma[want] = have;
                    self.inverse[have as usize] = want as Color;
                    bound.push(want as Color);
                } else if self.sigma[want] != have {
                    ok = false;
                    break;
                }
            }
            if ok {
                self.used[v] = true;
                self.slots.push(v);
                if self.go()? {
                    return Ok(true);
                }
                self.slots.pop();
                self.used[v] = false;
            }
            for c in bound {
                let h = self.sigma[c as usize];
                self.inverse[h as usize] = UNSET;
                self.sigma[c as usize] = UNSET;
            }
        }
        Ok(false)
    }
}
