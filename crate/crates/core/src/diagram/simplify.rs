//! Reidemeister I and II reductions and split detection; neither changes the link type.

use std::collections::HashMap;

use super::{LabelUnion, LinkDiagram};

impl LinkDiagram {
    /// Removes kinks and removable bigons until none remain.
    pub fn simplify(&self) -> LinkDiagram {
        let mut d = self.clone();
        loop {
            if let Some(next) = d.remove_kink().or_else(|| d.remove_bigon()) {
                d = next;
            } else {
                return d;
            }
        }
    }

    fn slots(&self) -> HashMap<u32, Vec<(usize, usize)>> {
        let mut at: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
        for (x, cr) in self.crossings.iter().enumerate() {
            for (s, &a) in cr.arcs.iter().enumerate() {
                at.entry(a).or_default().push((x, s));
            }
        }
        at
    }

    fn remove_kink(&self) -> Option<LinkDiagram> {
        let x = self.crossings.iter().position(|cr| {
            let e = cr.arcs;
            (0..4).any(|s| e[s] == e[(s + 1) % 4])
        })?;
        let e = self.crossings[x].arcs;
        let mut rest = self.crossings.clone();
        rest.remove(x);
        Some(self.rebuild_merged(rest, &[(e[0], e[1]), (e[1], e[2]), (e[2], e[3])]))
    }

    /// A bigon between crossings `x` and `y` whose over-edge is over at both.
    fn remove_bigon(&self) -> Option<LinkDiagram> {
        let at = self.slots();
        for (x, cr) in self.crossings.iter().enumerate() {
            for sp in [1usize, 3] {
                let p = cr.arcs[sp];
                let Some(&(y, tp)) = at[&p].iter().find(|&&(y, _)| y != x) else { continue };
                if tp % 2 == 0 {
                    continue;
                }
                // The bigon face turns opposite ways at its two corners.
                for delta in [1usize, 3] {
                    let q = cr.arcs[(sp + delta) % 4];
                    if self.crossings[y].arcs[(tp + 4 - delta) % 4] != q || q == p {
                        continue;
                    }
                    let (ex, ey) = (cr.arcs, self.crossings[y].arcs);
                    let a = ex[(sp + 2) % 4];
                    let b = ey[(tp + 2) % 4];
                    let sq = (sp + delta) % 4;
                    let tq = (tp + 4 - delta) % 4;
                    let c = ex[(sq + 2) % 4];
                    let dd = ey[(tq + 2) % 4];
                    let mut rest = self.crossings.clone();
                    rest.remove(x.max(y));
                    rest.remove(x.min(y));
                    return Some(self.rebuild_merged(rest, &[(a, p), (p, b), (c, q), (q, dd)]));
                }
            }
        }
        None
    }

    /// True iff the components fall into two or more groups with no crossings between them.
    pub fn is_split(&self) -> bool {
        let m = self.num_components();
        if m < 2 {
            return false;
        }
        let mut uf = LabelUnion::default();
        for (u, o) in self.strand_components() {
            uf.union(u as u32, o as u32);
        }
        (1..m as u32).any(|i| uf.find(i) != uf.find(0))
    }
}
