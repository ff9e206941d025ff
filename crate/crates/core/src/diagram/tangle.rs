//! Two-strand string links.
//!
//! Endpoints sit at fixed positions NW, NE, SW, SE. The `+` strand runs
//! SW -> NW and the `-` strand SE -> NE, so stacking is along the vertical
//! axis and `a # b` puts `a` below `b`.

use std::collections::BTreeSet;

use serde_json::Value;

use super::planar::Planar;
use super::{pd, reverse_crossing, Crossing, DiagramError, LabelUnion, LinkDiagram, Parsed};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoint {
    NW,
    NE,
    SW,
    SE,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TangleDiagram {
    crossings: Vec<Crossing>,
    /// `[+, -]`, each listed from its bottom end to its top end.
    strands: [Vec<u32>; 2],
    closed: Vec<Vec<u32>>,
}

impl TangleDiagram {
    pub(crate) fn from_oriented(crossings: Vec<Crossing>, strands: [Vec<u32>; 2], closed: Vec<Vec<u32>>) -> Self {
        TangleDiagram { crossings, strands, closed }
    }

    /// Traverses strands from oriented crossings and the endpoint arcs `[NW, NE, SW, SE]`.
    pub(crate) fn from_parts(
        crossings: Vec<Crossing>,
        ends: [u32; 4],
        clauses: &[(usize, Vec<u32>)],
    ) -> Result<Self, DiagramError> {
        let [nw, ne, sw, se] = ends;
        let all = LinkDiagram::assemble(crossings.clone(), &[], 0);
        let inc = all.incidence();
        let mut strands: [Vec<u32>; 2] = [Vec::new(), Vec::new()];
        for (k, (start, stop)) in [(sw, nw), (se, ne)].into_iter().enumerate() {
            let mut a = start;
            strands[k].push(a);
            while a != stop {
                a = inc.next_arc(&crossings, a).ok_or_else(|| {
                    DiagramError::Endpoints(format!("the {} strand does not end at its top endpoint", ["+", "-"][k]))
                })?;
                if strands[k].contains(&a) || strands[k].len() > 4 * crossings.len() + 2 {
                    return Err(DiagramError::Endpoints("strand does not reach the boundary".into()));
                }
                strands[k].push(a);
            }
        }
        let on_strands: BTreeSet<u32> = strands.iter().flatten().copied().collect();
        let mut closed: Vec<Vec<u32>> = Vec::new();
        let mut seen = on_strands.clone();
        let mut starts: Vec<u32> = {
            let mut c = clauses.to_vec();
            c.sort();
            c.into_iter().map(|(_, arcs)| arcs[0]).collect()
        };
        starts.extend(crossings.iter().flat_map(|c| c.arcs));
        let used: BTreeSet<u32> = crossings.iter().flat_map(|c| c.arcs).collect();
        for s in starts {
            if seen.contains(&s) {
                continue;
            }
            let mut cyc = vec![s];
            seen.insert(s);
            if used.contains(&s) {
                let mut a = s;
                loop {
                    a = inc.next_arc(&crossings, a).unwrap();
                    if a == s {
                        break;
                    }
                    seen.insert(a);
                    cyc.push(a);
                }
            }
            closed.push(cyc);
        }
        Ok(TangleDiagram { crossings, strands, closed })
    }

    pub fn trivial() -> Self {
        TangleDiagram { crossings: Vec::new(), strands: [vec![1], vec![2]], closed: Vec::new() }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn strands(&self) -> &[Vec<u32>; 2] {
        &self.strands
    }

    pub fn closed(&self) -> &[Vec<u32>] {
        &self.closed
    }

    /// `[NW, NE, SW, SE]`.
    pub fn ends(&self) -> [u32; 4] {
        let [p, m] = &self.strands;
        [*p.last().unwrap(), *m.last().unwrap(), p[0], m[0]]
    }

    pub fn endpoint(&self, e: Endpoint) -> u32 {
        let [nw, ne, sw, se] = self.ends();
        match e {
            Endpoint::NW => nw,
            Endpoint::NE => ne,
            Endpoint::SW => sw,
            Endpoint::SE => se,
        }
    }

    fn max_label(&self) -> u32 {
        self.strands.iter().chain(&self.closed).flatten().copied().max().unwrap_or(0)
    }

    fn shifted(&self, k: u32) -> Self {
        TangleDiagram {
            crossings: self.crossings.iter().map(|c| Crossing { arcs: c.arcs.map(|a| a + k), sign: c.sign }).collect(),
            strands: self.strands.clone().map(|s| s.into_iter().map(|a| a + k).collect()),
            closed: self.closed.iter().map(|c| c.iter().map(|a| a + k).collect()).collect(),
        }
    }

    /// String link of a 2-strand braid word (letters `1` and `-1`, read bottom to top).
    pub fn from_braid(word: &[i32]) -> Result<Self, DiagramError> {
        if let Some(g) = word.iter().find(|g| g.abs() != 1) {
            return Err(DiagramError::Braid(format!("generator {g} on two strands")));
        }
        if word.len() % 2 == 1 {
            return Err(DiagramError::Braid("odd length: the strands end swapped".into()));
        }
        let (mut left, mut right) = (1u32, 2u32);
        let mut next = 3u32;
        let mut crossings = Vec::with_capacity(word.len());
        for &g in word {
            let (lo, ro) = (next, next + 1);
            next += 2;
            crossings.push(if g > 0 {
                Crossing { arcs: [right, ro, lo, left], sign: 1 }
            } else {
                Crossing { arcs: [left, right, ro, lo], sign: -1 }
            });
            left = lo;
            right = ro;
        }
        Self::from_parts(crossings, [left, right, 1, 2], &[])
    }

    /// `H_n`: the braid `sigma^(2n)`.
    pub fn hopf_power(n: i64) -> Self {
        let g = if n >= 0 { 1 } else { -1 };
        Self::from_braid(&vec![g; 2 * n.unsigned_abs() as usize]).expect("even braid word")
    }

    /// The rational tangle `1/(cf[0] + 1/(cf[1] + ...))`. Handedness: the integer tangle `k`
    /// is `k` negative half twists, which makes `numer_0` of `1/(1 + 1/2)` the Whitehead link
    /// with `a_3 = +1`.
    pub fn rational_tangle(cf: &[i64]) -> Result<Self, DiagramError> {
        let Some((&last, rest)) = cf.split_last() else { return Ok(Self::trivial()) };
        let mut t = Planar::twist(last);
        for &a in rest.iter().rev() {
            t = t.invert().stack(&Planar::twist(a));
        }
        t.invert().mirror().orient_tangle()
    }

    /// `self # other`: `self` stacked below `other`.
    pub fn connect_sum(&self, other: &TangleDiagram) -> TangleDiagram {
        let up = other.shifted(self.max_label());
        let [nw, ne, _, _] = self.ends();
        let [_, _, usw, use_] = up.ends();
        let swap = |a: u32| {
            if a == usw {
                nw
            } else if a == use_ {
                ne
            } else {
                a
            }
        };
        let mut crossings = self.crossings.clone();
        crossings.extend(up.crossings.iter().map(|c| Crossing { arcs: c.arcs.map(swap), sign: c.sign }));
        let strands = [0, 1].map(|k| {
            let mut s = self.strands[k].clone();
            s.extend(up.strands[k].iter().skip(1));
            s
        });
        let mut closed = self.closed.clone();
        closed.extend(up.closed.iter().cloned());
        TangleDiagram { crossings, strands, closed }
    }

    /// `rho`: reflect the stacking axis and reverse both strands. Negates every crossing.
    pub fn rho(&self) -> TangleDiagram {
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.arcs;
                Crossing { arcs: [cc, b, a, d], sign: -c.sign }
            })
            .collect();
        let strands = self.strands.clone().map(|s| s.into_iter().rev().collect());
        let closed = self
            .closed
            .iter()
            .map(|c| {
                let mut r: Vec<u32> = c.iter().rev().copied().collect();
                r.rotate_right(1);
                r
            })
            .collect();
        TangleDiagram { crossings, strands, closed }
    }

    pub fn switch_crossing(&self, c: usize) -> Result<TangleDiagram, DiagramError> {
        let mut t = self.clone();
        let x = t.crossings.get_mut(c).ok_or(DiagramError::NoCrossing(c))?;
        *x = x.switched();
        Ok(t)
    }

    pub fn mirror(&self) -> TangleDiagram {
        let mut t = self.clone();
        t.crossings.iter_mut().for_each(|c| *c = c.switched());
        t
    }

    /// Joins the ends pairwise; orientations must already agree across each pair.
    fn close(&self, crossings: Vec<Crossing>, pairs: [(u32, u32); 2], starts: &[u32]) -> LinkDiagram {
        let mut uf = LabelUnion::default();
        for (p, q) in pairs {
            uf.union(p, q);
        }
        let crossings = crossings
            .into_iter()
            .map(|mut c| {
                c.arcs = c.arcs.map(|a| uf.find(a));
                c
            })
            .collect();
        let mut s: Vec<u32> = starts.iter().map(|&a| uf.find(a)).collect();
        s.extend(self.closed.iter().map(|c| c[0]));
        LinkDiagram::assemble(crossings, &s, 0)
    }

    /// Closes each strand to itself: component 1 is the `+` strand.
    pub fn numerator(&self) -> LinkDiagram {
        let [nw, ne, sw, se] = self.ends();
        self.close(self.crossings.clone(), [(nw, sw), (ne, se)], &[sw, se])
    }

    /// Joins the top ends together and the bottom ends together into one knot, reversing
    /// the `-` strand.
    pub fn denominator(&self) -> LinkDiagram {
        let minus: BTreeSet<u32> = self.strands[1].iter().copied().collect();
        let crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .map(|c| reverse_crossing(c, minus.contains(&c.arcs[0]), minus.contains(&c.arcs[1])))
            .collect();
        let [nw, ne, sw, se] = self.ends();
        self.close(crossings, [(nw, ne), (sw, se)], &[sw])
    }

    pub fn numerator_lk(&self) -> i64 {
        self.numerator().lk()
    }

    /// `numer(self # H_(l - n))` with `n` the linking number of the numerator closure.
    pub fn numer_l(&self, l: i64) -> LinkDiagram {
        let n = self.numerator_lk();
        self.connect_sum(&Self::hopf_power(l - n)).numerator()
    }

    /// Relabels arcs along the `+` strand, the `-` strand, then closed components.
    pub fn canonical(&self) -> TangleDiagram {
        let mut map = std::collections::HashMap::new();
        let mut next = 0u32;
        let mut relabel = |c: &Vec<u32>| -> Vec<u32> {
            c.iter()
                .map(|a| {
                    next += 1;
                    map.insert(*a, next);
                    next
                })
                .collect()
        };
        let strands = [relabel(&self.strands[0]), relabel(&self.strands[1])];
        let closed: Vec<Vec<u32>> = self.closed.iter().map(&mut relabel).collect();
        let mut crossings: Vec<Crossing> =
            self.crossings.iter().map(|c| Crossing { arcs: c.arcs.map(|a| map[&a]), sign: c.sign }).collect();
        crossings.sort();
        TangleDiagram { crossings, strands, closed }
    }

    pub fn to_text(&self) -> String {
        let canon = self.canonical();
        for pinned in [false, true] {
            let text = pd::tangle_text(&canon, pinned);
            if matches!(pd::parse_diagram(&text), Ok(Parsed::Tangle(ref t)) if *t == canon) {
                return text;
            }
        }
        pd::tangle_text(&canon, true)
    }

    pub fn to_json(&self) -> Value {
        let canon = self.canonical();
        for pinned in [false, true] {
            let v = pd::tangle_json(&canon, pinned);
            if matches!(pd::parse_diagram(&v.to_string()), Ok(Parsed::Tangle(ref t)) if *t == canon) {
                return v;
            }
        }
        pd::tangle_json(&canon, true)
    }
}

impl std::str::FromStr for TangleDiagram {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match pd::parse_diagram(s)? {
            Parsed::Tangle(t) => Ok(t),
            Parsed::Link(_) => Err(DiagramError::Parse { line: 1, col: 1, msg: "expected T[...], found a link".into() }),
        }
    }
}

impl std::fmt::Display for TangleDiagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}
