//! Knots in the complement of an unknotted axis, lifted to the infinite cyclic cover.
//!
//! Cutting the complement of the axis along a spanning disk leaves a product, so a
//! diagram of `K+` in the annulus lifts sheet by sheet. Each arc carries the sheet
//! (level) of its tail and the signed number of times it crosses the cut; a crossing
//! between strands at levels `a` and `b` is a crossing between the lift and its
//! `t^(a-b)` translate.

use std::collections::BTreeMap;

use crate::diagram::LinkDiagram;
use crate::laurent::LaurentPoly;

use super::TraceError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnularPattern {
    knot: LinkDiagram,
    levels: BTreeMap<u32, i64>,
    shifts: BTreeMap<u32, i64>,
}

impl AnnularPattern {
    /// `levels[a]` is the level at the tail of arc `a`; `shifts[a]` (default 0) is the
    /// signed number of cut crossings along it. The level at the tail of the next arc
    /// must be `levels[a] + shifts[a]`.
    pub fn new(
        knot: LinkDiagram,
        levels: BTreeMap<u32, i64>,
        shifts: BTreeMap<u32, i64>,
    ) -> Result<Self, TraceError> {
        if knot.num_components() != 1 {
            return Err(TraceError::ComponentCount(knot.num_components()));
        }
        let arcs = &knot.components()[0];
        for (k, &a) in arcs.iter().enumerate() {
            let next = arcs[(k + 1) % arcs.len()];
            let (Some(la), Some(ln)) = (levels.get(&a), levels.get(&next)) else {
                return Err(TraceError::Levels(a));
            };
            if la + shifts.get(&a).copied().unwrap_or(0) != *ln {
                return Err(TraceError::Levels(a));
            }
        }
        Ok(AnnularPattern { knot, levels, shifts })
    }

    /// Levels accumulated from 0 at the basepoint. Fails unless the shifts sum to 0.
    pub fn from_shifts(knot: LinkDiagram, shifts: BTreeMap<u32, i64>) -> Result<Self, TraceError> {
        let arcs = knot.components().first().cloned().unwrap_or_default();
        let mut levels = BTreeMap::new();
        let mut level = 0;
        for a in arcs {
            levels.insert(a, level);
            level += shifts.get(&a).copied().unwrap_or(0);
        }
        Self::new(knot, levels, shifts)
    }

    /// Reads the pattern off a 2-component diagram in which component `axis` is a
    /// thin loop: it has no self-crossings, passes over a run of strands of the other
    /// component and back under the same strands in reverse order, and each strand
    /// meets the two sides consecutively. The cut is the band between the two sides.
    pub fn from_axis_link(d: &LinkDiagram, axis: usize) -> Result<Self, TraceError> {
        if d.num_components() != 2 || axis > 1 {
            return Err(TraceError::ComponentCount(d.num_components()));
        }
        let k = 1 - axis;
        let comps = d.strand_components();
        if comps.iter().any(|&(u, o)| u == axis && o == axis) {
            return Err(TraceError::Levels(d.components()[axis][0]));
        }
        let inc = d.incidence();
        let thin_loop_error = || TraceError::Levels(d.components()[axis][0]);
        // Crossings with the knot in the order the axis meets them, and whether the axis is over.
        let along_axis: Vec<(usize, bool)> = d.components()[axis]
            .iter()
            .filter_map(|a| inc.head.get(a).map(|&(x, s)| (x, s != 0)))
            .collect();
        let n = along_axis.len();
        if n % 2 != 0 {
            return Err(thin_loop_error());
        }
        let rot = (0..n.max(1))
            .find(|&r| (0..n).all(|i| along_axis[(r + i) % n.max(1)].1 == (i < n / 2)))
            .ok_or_else(thin_loop_error)?;
        let seq: Vec<usize> = (0..n).map(|i| along_axis[(rot + i) % n].0).collect();
        for j in 0..n / 2 {
            let (over, under) = (seq[j], seq[n - 1 - j]);
            let adjacent = |x: usize, y: usize| {
                let cr = d.crossings()[x];
                let out = if comps[x].0 == k { cr.arcs[2] } else { cr.arcs[cr.over_out_slot()] };
                inc.head.get(&out).is_some_and(|&(z, _)| z == y)
            };
            if !(adjacent(over, under) || adjacent(under, over)) {
                return Err(thin_loop_error());
            }
        }
        // Walk the knot, cutting where it passes under the axis.
        let full = &d.components()[k];
        let self_tail = |a: u32| inc.tail.get(&a).is_some_and(|&(x, _)| comps[x] == (k, k));
        let first = full.iter().position(|&a| self_tail(a)).unwrap_or(0);
        let walk: Vec<u32> = full[first..].iter().chain(&full[..first]).copied().collect();
        let mut runs: Vec<(Vec<u32>, i64)> = Vec::new();
        for &a in &walk {
            if runs.is_empty() || self_tail(a) {
                runs.push((Vec::new(), 0));
            }
            let run = runs.last_mut().unwrap();
            run.0.push(a);
            if let Some(&(x, s)) = inc.head.get(&a) {
                if s == 0 && comps[x] == (k, axis) {
                    run.1 += d.crossings()[x].sign as i64;
                }
            }
        }
        let knot = d.component_diagram(k)?;
        let knot_arcs = knot.components()[0].clone();
        let start_run = runs.iter().position(|r| r.0.contains(&full[0])).unwrap_or(0);
        let m = runs.len();
        if knot_arcs.len() != m {
            return Err(TraceError::Levels(full[0]));
        }
        let shifts = (0..m).map(|i| (knot_arcs[i], runs[(start_run + i) % m].1)).collect();
        let mut levels = BTreeMap::new();
        let mut level = 0;
        for i in 0..m {
            let r = (start_run + i) % m;
            levels.insert(knot_arcs[i], level);
            level += runs[r].1;
        }
        Self::new(knot, levels, shifts)
    }

    pub fn knot(&self) -> &LinkDiagram {
        &self.knot
    }

    pub fn level(&self, arc: u32) -> Option<i64> {
        self.levels.get(&arc).copied()
    }

    pub fn shift(&self, arc: u32) -> i64 {
        self.shifts.get(&arc).copied().unwrap_or(0)
    }

    /// `lk(K~, t^n K~)` for each `n >= 1` that occurs: half the signed count of
    /// crossings whose strands lie `n` levels apart.
    pub fn lift_linking_numbers(&self) -> Result<BTreeMap<i64, i64>, TraceError> {
        let mut count: BTreeMap<i64, i64> = BTreeMap::new();
        for cr in self.knot.crossings() {
            let under = self.levels[&cr.arcs[2]];
            let over = self.levels[&cr.arcs[cr.over_out_slot()]];
            let gap = (under - over).abs();
            if gap > 0 {
                *count.entry(gap).or_default() += cr.sign as i64;
            }
        }
        count
            .into_iter()
            .map(|(n, c)| if c % 2 == 0 { Ok((n, c / 2)) } else { Err(TraceError::OddLift(n)) })
            .collect()
    }
}

/// `sum_{n >= 1} lk(K~, t^n K~) (t^n + t^-n - 2)`.
pub fn eta_unknotted(p: &AnnularPattern) -> Result<LaurentPoly, TraceError> {
    let mut acc = LaurentPoly::zero();
    for (n, lk) in p.lift_linking_numbers()? {
        acc += &LaurentPoly::from_terms([(n, lk), (-n, lk), (0, -2 * lk)]);
    }
    Ok(acc)
}
