//! Oriented planar diagrams of links and two-strand string links.
//!
//! A crossing is `X(a,b,c,d)`: the four arcs counterclockwise starting from
//! the incoming under-arc `a`, so the under-strand runs `a -> c`. The crossing
//! is positive iff the over-strand runs `d -> b`, i.e. left to right across
//! the under-strand's direction.

mod double;
mod pd;
mod simplify;
pub(crate) mod planar;
mod tangle;

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

pub use double::{parallel_pushoff, whitehead_double};
pub use pd::{parse_diagram, Parsed};
pub use tangle::{Endpoint, TangleDiagram};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("arc {arc} occurs {count} times; every arc must occur exactly twice")]
    ArcIncidence { arc: u32, count: usize },
    #[error("inconsistent orientation at arc {0}")]
    Orientation(u32),
    #[error("crossing data is not planar: Euler characteristic check failed")]
    NonPlanar,
    #[error("declared {declared} components but found {found}")]
    ComponentCount { declared: usize, found: usize },
    #[error("component clause does not match a component: {0}")]
    ComponentClause(String),
    #[error("no component {0}")]
    NoComponent(usize),
    #[error("no crossing {0}")]
    NoCrossing(usize),
    #[error("crossing {0} is not a self-crossing")]
    NotSelfCrossing(usize),
    #[error("crossing {0} is a self-crossing")]
    SelfCrossing(usize),
    #[error("tangle endpoints: {0}")]
    Endpoints(String),
    #[error("braid word: {0}")]
    Braid(String),
}

/// One crossing; `sign` is derived from the strand orientations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    pub arcs: [u32; 4],
    pub sign: i8,
}

impl Crossing {
    pub fn over_in_slot(&self) -> usize {
        if self.sign > 0 {
            3
        } else {
            1
        }
    }

    pub fn over_out_slot(&self) -> usize {
        (self.over_in_slot() + 2) % 4
    }

    pub fn is_head(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in_slot()
    }

    /// The same crossing with over and under exchanged.
    pub fn switched(&self) -> Crossing {
        let [a, b, c, d] = self.arcs;
        let arcs = if self.sign > 0 { [d, a, b, c] } else { [b, c, d, a] };
        Crossing { arcs, sign: -self.sign }
    }
}

/// Where each arc starts and ends: `(crossing, slot)`.
#[derive(Debug, Default)]
pub(crate) struct Incidence {
    pub head: HashMap<u32, (usize, usize)>,
    pub tail: HashMap<u32, (usize, usize)>,
}

impl Incidence {
    pub fn new(crossings: &[Crossing]) -> Self {
        let mut inc = Incidence::default();
        for (x, cr) in crossings.iter().enumerate() {
            for s in 0..4 {
                let map = if cr.is_head(s) { &mut inc.head } else { &mut inc.tail };
                map.insert(cr.arcs[s], (x, s));
            }
        }
        inc
    }

    pub fn next_arc(&self, crossings: &[Crossing], arc: u32) -> Option<u32> {
        self.head.get(&arc).map(|&(x, s)| crossings[x].arcs[(s + 2) % 4])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    /// Arcs of each component in orientation order, starting at its basepoint.
    /// A crossingless component is a single arc label absent from `crossings`.
    components: Vec<Vec<u32>>,
}

impl LinkDiagram {
    /// Assembles components by traversal. `starts` lists basepoint arcs of the
    /// leading components (labels absent from the crossings are free loops);
    /// remaining cycles follow in order of their minimum label, then `extra_free`
    /// fresh free loops.
    pub(crate) fn assemble(crossings: Vec<Crossing>, starts: &[u32], extra_free: usize) -> Self {
        let inc = Incidence::new(&crossings);
        let mut seen: BTreeSet<u32> = BTreeSet::new();
        let mut components = Vec::new();
        let walk = |start: u32, seen: &mut BTreeSet<u32>| -> Option<Vec<u32>> {
            if !seen.insert(start) {
                return None;
            }
            let mut cyc = vec![start];
            let mut a = start;
            while let Some(n) = inc.next_arc(&crossings, a) {
                if n == start {
                    break;
                }
                seen.insert(n);
                cyc.push(n);
                a = n;
            }
            Some(cyc)
        };
        for &s in starts {
            if let Some(c) = walk(s, &mut seen) {
                components.push(c);
            }
        }
        let all: BTreeSet<u32> = crossings.iter().flat_map(|c| c.arcs).collect();
        for &a in &all {
            if let Some(c) = walk(a, &mut seen) {
                components.push(c);
            }
        }
        let mut fresh = all.iter().chain(seen.iter()).max().copied().unwrap_or(0);
        for _ in 0..extra_free {
            fresh += 1;
            components.push(vec![fresh]);
        }
        LinkDiagram { crossings, components }
    }

    pub(crate) fn from_raw(crossings: Vec<Crossing>, components: Vec<Vec<u32>>) -> Self {
        LinkDiagram { crossings, components }
    }

    pub fn unlink(m: usize) -> Self {
        Self::assemble(Vec::new(), &[], m)
    }

    /// Closure of a braid word on `strands` strands; `±i` is `σ_i^±1`.
    pub fn closed_braid(strands: usize, word: &[i32]) -> Result<Self, DiagramError> {
        planar::Planar::braid(strands, word)?.close().orient_link(&[])
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub(crate) fn incidence(&self) -> Incidence {
        Incidence::new(&self.crossings)
    }

    pub fn arc_component(&self) -> HashMap<u32, usize> {
        let mut m = HashMap::new();
        for (i, comp) in self.components.iter().enumerate() {
            for &a in comp {
                m.insert(a, i);
            }
        }
        m
    }

    /// Components of the under- and over-strand of each crossing.
    pub fn strand_components(&self) -> Vec<(usize, usize)> {
        let comp = self.arc_component();
        self.crossings.iter().map(|c| (comp[&c.arcs[0]], comp[&c.arcs[1]])).collect()
    }

    pub fn crossing_sign(&self, c: usize) -> Result<i8, DiagramError> {
        self.crossings.get(c).map(|x| x.sign).ok_or(DiagramError::NoCrossing(c))
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Self-crossing writhe of component `i`.
    pub fn component_writhe(&self, i: usize) -> i64 {
        self.strand_components()
            .iter()
            .zip(&self.crossings)
            .filter(|((u, o), _)| *u == i && *o == i)
            .map(|(_, c)| c.sign as i64)
            .sum()
    }

    pub fn linking_number(&self, i: usize, j: usize) -> Result<i64, DiagramError> {
        let m = self.num_components();
        for k in [i, j] {
            if k >= m {
                return Err(DiagramError::NoComponent(k));
            }
        }
        let total: i64 = self
            .strand_components()
            .iter()
            .zip(&self.crossings)
            .filter(|((u, o), _)| (*u == i && *o == j) || (*u == j && *o == i))
            .map(|(_, c)| c.sign as i64)
            .sum();
        Ok(if i == j { 0 } else { total / 2 })
    }

    /// Sum of all pairwise linking numbers of a 2-component diagram, or of components 0 and 1.
    pub fn lk(&self) -> i64 {
        self.linking_number(0, 1).unwrap_or(0)
    }

    pub fn switch_crossing(&self, c: usize) -> Result<LinkDiagram, DiagramError> {
        let mut d = self.clone();
        let x = d.crossings.get_mut(c).ok_or(DiagramError::NoCrossing(c))?;
        *x = x.switched();
        Ok(d)
    }

    /// Oriented smoothing of crossing `c`.
    pub fn smooth_crossing(&self, c: usize) -> Result<LinkDiagram, DiagramError> {
        let x = *self.crossings.get(c).ok_or(DiagramError::NoCrossing(c))?;
        let [a, b, cc, d] = x.arcs;
        let pairs = if x.sign > 0 { [(a, b), (d, cc)] } else { [(a, d), (b, cc)] };
        let mut rest = self.crossings.clone();
        rest.remove(c);
        Ok(self.rebuild_merged(rest, &pairs))
    }

    /// Replaces crossings by `rest`, identifying each `(incoming, outgoing)` arc pair.
    fn rebuild_merged(&self, rest: Vec<Crossing>, pairs: &[(u32, u32)]) -> LinkDiagram {
        let mut uf = LabelUnion::default();
        for &(p, q) in pairs {
            uf.union(p, q);
        }
        let crossings: Vec<Crossing> = rest
            .into_iter()
            .map(|mut cr| {
                cr.arcs = cr.arcs.map(|a| uf.find(a));
                cr
            })
            .collect();
        let mut starts: Vec<u32> = Vec::new();
        for comp in &self.components {
            for &a in comp {
                let r = uf.find(a);
                if !starts.contains(&r) {
                    starts.push(r);
                }
            }
        }
        // Start labels absent from the crossings become free loops; `assemble` skips
        // starts lying on an already traversed cycle.
        LinkDiagram::assemble(crossings, &starts, 0)
    }

    /// The diagram of the sublink formed by components in `keep`, in that order.
    pub fn sublink(&self, keep: &[usize]) -> Result<LinkDiagram, DiagramError> {
        let m = self.num_components();
        if let Some(&k) = keep.iter().find(|&&k| k >= m) {
            return Err(DiagramError::NoComponent(k));
        }
        let comps = self.strand_components();
        let mut rest = Vec::new();
        let mut pairs = Vec::new();
        for (x, cr) in self.crossings.iter().enumerate() {
            let (u, o) = comps[x];
            let (ku, ko) = (keep.contains(&u), keep.contains(&o));
            if ku && ko {
                rest.push(*cr);
                continue;
            }
            if ku {
                pairs.push((cr.arcs[0], cr.arcs[2]));
            }
            if ko {
                pairs.push((cr.arcs[cr.over_in_slot()], cr.arcs[cr.over_out_slot()]));
            }
        }
        let mut uf = LabelUnion::default();
        for &(p, q) in &pairs {
            uf.union(p, q);
        }
        let crossings: Vec<Crossing> = rest
            .into_iter()
            .map(|mut cr| {
                cr.arcs = cr.arcs.map(|a| uf.find(a));
                cr
            })
            .collect();
        let starts: Vec<u32> = keep.iter().map(|&k| uf.find(self.components[k][0])).collect();
        Ok(LinkDiagram::assemble(crossings, &starts, 0))
    }

    /// The knot diagram of component `i` alone.
    pub fn component_diagram(&self, i: usize) -> Result<LinkDiagram, DiagramError> {
        self.sublink(&[i])
    }

    /// Arcs of the lobe at self-crossing `c` that leaves along the outgoing
    /// over-arc and returns along the incoming under-arc.
    pub fn lobe_arcs(&self, c: usize) -> Result<Vec<u32>, DiagramError> {
        let x = *self.crossings.get(c).ok_or(DiagramError::NoCrossing(c))?;
        let comp = self.arc_component();
        if comp[&x.arcs[0]] != comp[&x.arcs[1]] {
            return Err(DiagramError::NotSelfCrossing(c));
        }
        let inc = self.incidence();
        let mut arcs = vec![x.arcs[x.over_out_slot()]];
        loop {
            let last = *arcs.last().unwrap();
            if inc.head[&last] == (c, 0) {
                return Ok(arcs);
            }
            arcs.push(inc.next_arc(&self.crossings, last).expect("closed component"));
        }
    }

    /// `(lk(lobe, K_j), lk(other lobe, K_j))` at self-crossing `c`.
    pub fn lobe_linking_numbers(&self, c: usize, j: usize) -> Result<(i64, i64), DiagramError> {
        let lobe: BTreeSet<u32> = self.lobe_arcs(c)?.into_iter().collect();
        let comp = self.arc_component();
        let i = comp[&self.crossings[c].arcs[0]];
        if j >= self.num_components() {
            return Err(DiagramError::NoComponent(j));
        }
        if j == i {
            return Err(DiagramError::SelfCrossing(c));
        }
        let mut twice = 0i64;
        for (x, cr) in self.crossings.iter().enumerate() {
            if x == c {
                continue;
            }
            let (u, o) = (comp[&cr.arcs[0]], comp[&cr.arcs[1]]);
            let incoming = if u == i && o == j {
                cr.arcs[0]
            } else if o == i && u == j {
                cr.arcs[cr.over_in_slot()]
            } else {
                continue;
            };
            if lobe.contains(&incoming) {
                twice += cr.sign as i64;
            }
        }
        let n = twice / 2;
        Ok((n, self.linking_number(i, j)? - n))
    }

    /// Crossings in the order they are first met, with whether that first pass is under,
    /// traversing components in `order` from the given basepoint arcs.
    pub fn first_passes(&self, order: &[usize], basepoints: &[u32]) -> Vec<(usize, bool)> {
        let inc = self.incidence();
        let mut seen = vec![false; self.crossings.len()];
        let mut out = Vec::new();
        for (k, &ci) in order.iter().enumerate() {
            let comp = &self.components[ci];
            let start = basepoints.get(k).copied().unwrap_or(comp[0]);
            let mut a = start;
            loop {
                let Some(&(x, s)) = inc.head.get(&a) else { break };
                if !seen[x] {
                    seen[x] = true;
                    out.push((x, s == 0));
                }
                a = self.crossings[x].arcs[(s + 2) % 4];
                if a == start {
                    break;
                }
            }
        }
        out
    }

    /// True iff every crossing is first met on its over-strand.
    pub fn is_descending(&self, order: &[usize], basepoints: &[u32]) -> bool {
        self.first_passes(order, basepoints).iter().all(|(_, under)| !under)
    }

    pub fn default_order(&self) -> Vec<usize> {
        (0..self.num_components()).collect()
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> LinkDiagram {
        let mut d = self.clone();
        d.crossings.iter_mut().for_each(|c| *c = c.switched());
        d
    }

    /// Reverses the orientation of the listed components.
    pub fn reverse_components(&self, which: &[usize]) -> LinkDiagram {
        let flip: BTreeSet<u32> = self
            .components
            .iter()
            .enumerate()
            .filter(|(i, _)| which.contains(i))
            .flat_map(|(_, c)| c.iter().copied())
            .collect();
        let crossings = self
            .crossings
            .iter()
            .map(|cr| reverse_crossing(cr, flip.contains(&cr.arcs[0]), flip.contains(&cr.arcs[1])))
            .collect();
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if which.contains(&i) && c.len() > 1 {
                    let mut r: Vec<u32> = c.iter().rev().copied().collect();
                    r.rotate_right(1);
                    r
                } else {
                    c.clone()
                }
            })
            .collect();
        LinkDiagram { crossings, components }
    }

    /// Split union, with the second diagram's arcs shifted past the first's.
    pub fn disjoint_union(&self, other: &LinkDiagram) -> LinkDiagram {
        let shift = self.max_label();
        let mut d = self.clone();
        d.crossings.extend(other.crossings.iter().map(|c| Crossing { arcs: c.arcs.map(|a| a + shift), sign: c.sign }));
        d.components.extend(other.components.iter().map(|c| c.iter().map(|a| a + shift).collect()));
        d
    }

    pub(crate) fn max_label(&self) -> u32 {
        self.components.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Relabels arcs `1, 2, ...` along components in order from their basepoints and sorts
    /// the crossings.
    pub fn canonical(&self) -> LinkDiagram {
        let mut map = HashMap::new();
        let mut next = 0u32;
        let components: Vec<Vec<u32>> = self
            .components
            .iter()
            .map(|c| {
                c.iter()
                    .map(|a| {
                        next += 1;
                        map.insert(*a, next);
                        next
                    })
                    .collect()
            })
            .collect();
        let mut crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .map(|c| Crossing { arcs: c.arcs.map(|a| map[&a]), sign: c.sign })
            .collect();
        crossings.sort();
        LinkDiagram { crossings, components }
    }

    /// Compact cache key: canonical crossings with signs and component lengths.
    pub fn canonical_key(&self) -> String {
        use std::fmt::Write;
        let c = self.canonical();
        let mut key = String::with_capacity(16 * c.crossings.len() + 8);
        for comp in &c.components {
            let _ = write!(key, "{},", comp.len());
        }
        key.push(';');
        for x in &c.crossings {
            let [a, b, cc, d] = x.arcs;
            let _ = write!(key, "{a},{b},{cc},{d}{}", if x.sign > 0 { '+' } else { '-' });
        }
        key
    }

    /// Rotates each component's basepoint to the listed arcs.
    pub fn with_basepoints(&self, basepoints: &[u32]) -> Result<LinkDiagram, DiagramError> {
        let mut d = self.clone();
        for (comp, &b) in d.components.iter_mut().zip(basepoints) {
            let pos = comp
                .iter()
                .position(|&a| a == b)
                .ok_or_else(|| DiagramError::ComponentClause(format!("arc {b} is not on this component")))?;
            comp.rotate_left(pos);
        }
        Ok(d)
    }

    /// Reorders components.
    pub fn permute_components(&self, order: &[usize]) -> LinkDiagram {
        let components = order.iter().map(|&i| self.components[i].clone()).collect();
        LinkDiagram { crossings: self.crossings.clone(), components }
    }

    pub fn to_text(&self) -> String {
        pd::serialize_link(self)
    }

    pub fn to_json(&self) -> serde_json::Value {
        pd::link_to_json(self)
    }
}

impl std::str::FromStr for LinkDiagram {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match parse_diagram(s)? {
            Parsed::Link(d) => Ok(d),
            Parsed::Tangle(_) => Err(DiagramError::Parse { line: 1, col: 1, msg: "expected PD[...], found a tangle".into() }),
        }
    }
}

impl std::fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub(crate) fn reverse_crossing(cr: &Crossing, under: bool, over: bool) -> Crossing {
    let [a, b, c, d] = cr.arcs;
    let arcs = if under { [c, d, a, b] } else { cr.arcs };
    let sign = if under != over { -cr.sign } else { cr.sign };
    Crossing { arcs, sign }
}

/// Union-find over arc labels; the smallest label of a class is its representative.
#[derive(Default)]
pub(crate) struct LabelUnion {
    parent: HashMap<u32, u32>,
}

impl LabelUnion {
    pub fn find(&mut self, a: u32) -> u32 {
        let p = *self.parent.get(&a).unwrap_or(&a);
        if p == a {
            return a;
        }
        let r = self.find(p);
        self.parent.insert(a, r);
        r
    }

    pub fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent.insert(hi, lo);
        }
    }
}

#[cfg(test)]
mod tests;
