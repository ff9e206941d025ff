//! Unoriented planar tangles with boundary, for constructions that rotate,
//! mirror or re-route strands before an orientation is known.
//!
//! A crossing lists its four edges counterclockwise with `(e0, e2)` the
//! under-pair, read as the south, east, north and west ends in the crossing's
//! own frame. Optional flags remember strand directions where known: `u` is
//! `e0 -> e2`, `o` is `e1 -> e3`.

use std::collections::{BTreeMap, BTreeSet};

use super::tangle::TangleDiagram;
use super::{Crossing, DiagramError, LabelUnion, LinkDiagram};

#[derive(Clone, Debug)]
pub(crate) struct PX {
    pub e: [u32; 4],
    pub u: Option<bool>,
    pub o: Option<bool>,
}

/// A `(bottom.len(), top.len())` tangle in a rectangle; `top`/`bottom` list
/// boundary edges left to right.
#[derive(Clone, Debug, Default)]
pub(crate) struct Planar {
    pub xs: Vec<PX>,
    pub top: Vec<u32>,
    pub bottom: Vec<u32>,
    pub loops: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Occ {
    Slot(usize, usize),
    Top(usize),
    Bottom(usize),
}

impl Planar {
    pub fn identity(n: usize) -> Self {
        let edges: Vec<u32> = (1..=n as u32).collect();
        Planar { xs: Vec::new(), top: edges.clone(), bottom: edges, loops: Vec::new() }
    }

    /// A single generator on positions `i, i+1` of `n` strands; positive means the
    /// left strand passes over (a positive crossing for upward strands).
    pub fn sigma(n: usize, i: usize, positive: bool) -> Self {
        let mut p = Self::identity(n);
        let (b0, b1) = (p.bottom[i], p.bottom[i + 1]);
        let (t0, t1) = (n as u32 + 1, n as u32 + 2);
        p.top[i] = t0;
        p.top[i + 1] = t1;
        p.xs.push(if positive {
            PX { e: [b1, t1, t0, b0], u: Some(true), o: Some(false) }
        } else {
            PX { e: [b0, b1, t1, t0], u: Some(true), o: Some(true) }
        });
        p
    }

    /// Braid on `n` strands; letters are `±(i+1)` for generator `i`, read bottom to top.
    pub fn braid(n: usize, word: &[i32]) -> Result<Self, DiagramError> {
        let mut p = Self::identity(n);
        for &g in word {
            let i = g.unsigned_abs() as usize;
            if g == 0 || i >= n {
                return Err(DiagramError::Braid(format!("generator {g} outside 1..{}", n.saturating_sub(1))));
            }
            p = p.stack(&Self::sigma(n, i - 1, g > 0));
        }
        Ok(p)
    }

    /// `k` half twists of two strands.
    pub fn twist(k: i64) -> Self {
        let mut p = Self::identity(2);
        for _ in 0..k.unsigned_abs() {
            p = p.stack(&Self::sigma(2, 0, k > 0));
        }
        p
    }

    pub fn max_label(&self) -> u32 {
        self.xs
            .iter()
            .flat_map(|x| x.e)
            .chain(self.top.iter().copied())
            .chain(self.bottom.iter().copied())
            .chain(self.loops.iter().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn shifted(&self, k: u32) -> Self {
        Planar {
            xs: self.xs.iter().map(|x| PX { e: x.e.map(|a| a + k), u: x.u, o: x.o }).collect(),
            top: self.top.iter().map(|a| a + k).collect(),
            bottom: self.bottom.iter().map(|a| a + k).collect(),
            loops: self.loops.iter().map(|a| a + k).collect(),
        }
    }

    fn relabel(&mut self, uf: &mut LabelUnion) {
        for x in &mut self.xs {
            x.e = x.e.map(|a| uf.find(a));
        }
        for a in self.top.iter_mut().chain(self.bottom.iter_mut()) {
            *a = uf.find(*a);
        }
    }

    /// Joins boundary edges pairwise; a pair of equal edges closes into a free loop.
    pub(crate) fn join_all(&mut self, pairs: &[(u32, u32)]) -> LabelUnion {
        let mut uf = LabelUnion::default();
        let mut merged_loops = Vec::new();
        for &(a, b) in pairs {
            let (ra, rb) = (uf.find(a), uf.find(b));
            if ra == rb {
                merged_loops.push(ra);
            } else {
                uf.union(ra, rb);
            }
        }
        self.relabel(&mut uf);
        self.loops.extend(merged_loops.into_iter().map(|a| uf.find(a)));
        uf
    }

    /// `self` below `upper`.
    pub fn stack(&self, upper: &Planar) -> Planar {
        assert_eq!(self.top.len(), upper.bottom.len(), "stacking mismatched tangles");
        let up = upper.shifted(self.max_label());
        let pairs: Vec<(u32, u32)> = self.top.iter().copied().zip(up.bottom.iter().copied()).collect();
        let mut p = Planar {
            xs: self.xs.iter().cloned().chain(up.xs.iter().cloned()).collect(),
            top: up.top.clone(),
            bottom: self.bottom.clone(),
            loops: self.loops.iter().chain(&up.loops).copied().collect(),
        };
        p.join_all(&pairs);
        p
    }

    /// Quarter turn counterclockwise of a (2,2) tangle: NE -> NW -> SW -> SE -> NE.
    pub fn rotate(&self) -> Planar {
        let (nw, ne, sw, se) = (self.top[0], self.top[1], self.bottom[0], self.bottom[1]);
        let mut p = self.clone();
        p.top = vec![ne, se];
        p.bottom = vec![nw, sw];
        p
    }

    /// Exchanges over and under everywhere.
    pub fn mirror(&self) -> Planar {
        let mut p = self.clone();
        for x in &mut p.xs {
            let [e0, e1, e2, e3] = x.e;
            x.e = [e1, e2, e3, e0];
            let (u, o) = (x.u, x.o);
            x.u = o;
            x.o = u.map(|v| !v);
        }
        p
    }

    /// `1/T` for rational tangles: rotate, then mirror.
    pub fn invert(&self) -> Planar {
        self.rotate().mirror()
    }

    pub fn strip_flags(mut self) -> Planar {
        for x in &mut self.xs {
            x.u = None;
            x.o = None;
        }
        self
    }

    /// A cap joining bottom positions `i, i+1` of `n`.
    pub fn cap(n: usize, i: usize) -> Planar {
        let mut p = Self::identity(n);
        let e = p.bottom[i];
        p.bottom[i + 1] = e;
        p.top.drain(i..i + 2);
        p
    }

    /// A cup joining top positions `i, i+1` of `n`.
    pub fn cup(n: usize, i: usize) -> Planar {
        let mut p = Self::identity(n);
        let e = p.top[i];
        p.top[i + 1] = e;
        p.bottom.drain(i..i + 2);
        p
    }

    /// Side by side: `self` on the left.
    pub fn beside(&self, right: &Planar) -> Planar {
        let r = right.shifted(self.max_label());
        Planar {
            xs: self.xs.iter().cloned().chain(r.xs).collect(),
            top: self.top.iter().copied().chain(r.top).collect(),
            bottom: self.bottom.iter().copied().chain(r.bottom).collect(),
            loops: self.loops.iter().copied().chain(r.loops).collect(),
        }
    }

    /// Closes top position `i` to bottom position `i` for every `i` (braid closure).
    pub fn close(&self) -> Planar {
        let pairs: Vec<(u32, u32)> = self.top.iter().copied().zip(self.bottom.iter().copied()).collect();
        let mut p = self.clone();
        p.top.clear();
        p.bottom.clear();
        p.join_all(&pairs);
        p
    }

    fn occurrences(&self) -> BTreeMap<u32, Vec<Occ>> {
        let mut occ: BTreeMap<u32, Vec<Occ>> = BTreeMap::new();
        for (x, px) in self.xs.iter().enumerate() {
            for (s, &a) in px.e.iter().enumerate() {
                occ.entry(a).or_default().push(Occ::Slot(x, s));
            }
        }
        for (i, &a) in self.top.iter().enumerate() {
            occ.entry(a).or_default().push(Occ::Top(i));
        }
        for (i, &a) in self.bottom.iter().enumerate() {
            occ.entry(a).or_default().push(Occ::Bottom(i));
        }
        occ
    }

    /// Walks from edge `start` entering at `first`; returns the passages `(crossing, entry
    /// slot)` and edges in order, and where the walk stopped (boundary or back at start).
    fn walk(&self, occ: &BTreeMap<u32, Vec<Occ>>, start: u32, first: Occ) -> (Vec<(usize, usize)>, Vec<u32>, Occ) {
        let mut passages = Vec::new();
        let mut edges = vec![start];
        let mut at = first;
        loop {
            let Occ::Slot(x, s) = at else { return (passages, edges, at) };
            passages.push((x, s));
            let out = self.xs[x].e[(s + 2) % 4];
            let from = Occ::Slot(x, (s + 2) % 4);
            if out == start && occ[&out].iter().any(|o| *o == first) {
                return (passages, edges, at);
            }
            edges.push(out);
            at = *occ[&out].iter().find(|o| **o != from).expect("edge occurs twice");
        }
    }

    /// Orients closed cycles: each keeps its flagged direction (conflicts are an error) or
    /// the default one. Returns `(passages, edges)` per cycle keyed by minimum edge.
    fn closed_cycles(
        &self,
        occ: &BTreeMap<u32, Vec<Occ>>,
        skip: &BTreeSet<u32>,
    ) -> Result<Vec<(Vec<(usize, usize)>, Vec<u32>)>, DiagramError> {
        let mut done: BTreeSet<u32> = skip.clone();
        let mut out = Vec::new();
        for (&e, list) in occ {
            if done.contains(&e) {
                continue;
            }
            let (mut passages, mut edges, _) = self.walk(occ, e, list[0]);
            let forward = self.direction(&passages)?;
            if !forward {
                let (p, ed, _) = self.walk(occ, e, list[1]);
                passages = p;
                edges = ed;
            }
            done.extend(edges.iter().copied());
            out.push((passages, edges));
        }
        Ok(out)
    }

    /// Whether walking the given passages agrees with every flag (`true`), disagrees with
    /// every flag (`false`), or mixes (error). Unflagged cycles count as agreeing.
    fn direction(&self, passages: &[(usize, usize)]) -> Result<bool, DiagramError> {
        let mut verdict: Option<bool> = None;
        for &(x, s) in passages {
            let px = &self.xs[x];
            let flag = if s % 2 == 0 { px.u.map(|u| u == (s == 0)) } else { px.o.map(|o| o == (s == 1)) };
            if let Some(f) = flag {
                match verdict {
                    None => verdict = Some(f),
                    Some(v) if v != f => return Err(DiagramError::Orientation(px.e[s])),
                    _ => {}
                }
            }
        }
        Ok(verdict.unwrap_or(true))
    }

    /// Builds oriented crossings from the entry slots of every crossing's two strands.
    fn oriented_crossings(&self, entries: &[(usize, usize)]) -> Vec<Crossing> {
        let mut under_in = vec![usize::MAX; self.xs.len()];
        let mut over_in = vec![usize::MAX; self.xs.len()];
        for &(x, s) in entries {
            if s % 2 == 0 {
                under_in[x] = s;
            } else {
                over_in[x] = s;
            }
        }
        self.xs
            .iter()
            .enumerate()
            .map(|(x, px)| {
                let k = under_in[x];
                let arcs = [px.e[k], px.e[(k + 1) % 4], px.e[(k + 2) % 4], px.e[(k + 3) % 4]];
                let sign = if over_in[x] == (k + 3) % 4 { 1 } else { -1 };
                Crossing { arcs, sign }
            })
            .collect()
    }

    /// Orients a closed diagram. Components containing the edges in `starts` come first,
    /// based at those edges; the rest follow by minimum edge, then free loops.
    pub fn orient_link(&self, starts: &[u32]) -> Result<LinkDiagram, DiagramError> {
        if !self.top.is_empty() || !self.bottom.is_empty() {
            return Err(DiagramError::Endpoints("cannot orient a tangle as a closed link".into()));
        }
        let occ = self.occurrences();
        let cycles = self.closed_cycles(&occ, &BTreeSet::new())?;
        let entries: Vec<(usize, usize)> = cycles.iter().flat_map(|(p, _)| p.iter().copied()).collect();
        let crossings = self.oriented_crossings(&entries);
        let mut comps: Vec<Vec<u32>> = cycles.into_iter().map(|(_, e)| e).collect();
        comps.extend(self.loops.iter().map(|&l| vec![l]));
        let mut ordered = Vec::new();
        for &s in starts {
            if let Some(pos) = comps.iter().position(|c| c.contains(&s)) {
                let mut c = comps.remove(pos);
                let r = c.iter().position(|&a| a == s).unwrap();
                c.rotate_left(r);
                ordered.push(c);
            }
        }
        comps.sort_by_key(|c| *c.iter().min().unwrap());
        ordered.extend(comps);
        Ok(LinkDiagram::from_raw(crossings, ordered))
    }

    /// Orients a (2,2) tangle as a string link: the left strand runs SW -> NW, the right
    /// SE -> NE. Flags on the strands are ignored.
    pub fn orient_tangle(&self) -> Result<TangleDiagram, DiagramError> {
        if self.top.len() != 2 || self.bottom.len() != 2 {
            return Err(DiagramError::Endpoints("a string link needs two top and two bottom ends".into()));
        }
        let occ = self.occurrences();
        let mut strands: Vec<Vec<u32>> = Vec::new();
        let mut entries = Vec::new();
        for side in 0..2 {
            let e = self.bottom[side];
            let first = *occ[&e].iter().find(|o| **o != Occ::Bottom(side)).unwrap();
            let (passages, edges, end) = self.walk(&occ, e, first);
            if end != Occ::Top(side) {
                return Err(DiagramError::Endpoints(format!(
                    "strand from the bottom {} end does not reach the top {} end",
                    ["left", "right"][side],
                    ["left", "right"][side]
                )));
            }
            entries.extend(passages);
            strands.push(edges);
        }
        let on_strands: BTreeSet<u32> = strands.iter().flatten().copied().collect();
        let cycles = self.closed_cycles(&occ, &on_strands)?;
        entries.extend(cycles.iter().flat_map(|(p, _)| p.iter().copied()));
        let crossings = self.oriented_crossings(&entries);
        let mut closed: Vec<Vec<u32>> = cycles.into_iter().map(|(_, e)| e).collect();
        closed.extend(self.loops.iter().map(|&l| vec![l]));
        let plus = strands.remove(0);
        let minus = strands.remove(0);
        Ok(TangleDiagram::from_oriented(crossings, [plus, minus], closed))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_closure_of_sigma_squared_is_hopf() {
        let d = Planar::braid(2, &[1, 1]).unwrap().close().orient_link(&[]).unwrap();
        assert_eq!(d.num_components(), 2);
        assert_eq!(d.linking_number(0, 1).unwrap(), 1);
        let d = Planar::braid(2, &[-1, -1]).unwrap().close().orient_link(&[]).unwrap();
        assert_eq!(d.linking_number(0, 1).unwrap(), -1);
    }

    #[test]
    fn rotation_has_order_four() {
        let p = Planar::braid(2, &[1, -1, 1]).unwrap();
        let q = p.rotate().rotate().rotate().rotate();
        assert_eq!(p.top, q.top);
        assert_eq!(p.bottom, q.bottom);
    }

    #[test]
    fn caps_and_cups_make_loops() {
        let p = Planar::cup(2, 0).stack(&Planar::cap(2, 0));
        assert_eq!(p.loops.len(), 1);
        assert!(p.top.is_empty() && p.bottom.is_empty());
    }
}
