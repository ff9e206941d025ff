//! Satellites of a single component: Whitehead doubles and parallel push-offs.

use std::collections::HashMap;

use super::planar::{Planar, PX};
use super::{DiagramError, LinkDiagram};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    L,
    R,
}

/// Replaces component `k` by its Whitehead double with `twists` full twists relative to
/// the Seifert framing and a clasp of sign `clasp` (±1). Other components are unchanged and
/// the double keeps index `k`.
pub fn whitehead_double(d: &LinkDiagram, k: usize, twists: i64, clasp: i8) -> Result<LinkDiagram, DiagramError> {
    if k >= d.num_components() {
        return Err(DiagramError::NoComponent(k));
    }
    let pattern = Planar::twist(2 * (twists - d.component_writhe(k)))
        .stack(&Planar::twist(2 * clasp.signum() as i64).rotate())
        .strip_flags();
    satellite(d, k, pattern, false)
}

/// Adds a zero-framed parallel copy of component `k`, oriented the same way, as component
/// `k + 1`.
pub fn parallel_pushoff(d: &LinkDiagram, k: usize) -> Result<LinkDiagram, DiagramError> {
    if k >= d.num_components() {
        return Err(DiagramError::NoComponent(k));
    }
    let pattern = Planar::twist(-2 * d.component_writhe(k)).strip_flags();
    satellite(d, k, pattern, true)
}

/// Replaces component `k` by the 2-strand `pattern` laid along it. With `parallel` the two
/// copies are separate components running alongside `k` in its direction.
fn satellite(d: &LinkDiagram, k: usize, pattern: Planar, parallel: bool) -> Result<LinkDiagram, DiagramError> {
    let comp_of = d.arc_component();
    let comp = &d.components()[k];

    let mut next = d.max_label();
    let mut fresh = || {
        next += 1;
        next
    };
    let used: std::collections::BTreeSet<u32> = d.crossings().iter().flat_map(|c| c.arcs).collect();
    let mut body = Planar {
        xs: Vec::new(),
        top: Vec::new(),
        bottom: Vec::new(),
        loops: d
            .components()
            .iter()
            .enumerate()
            .filter(|&(i, c)| i != k && !used.contains(&c[0]))
            .map(|(_, c)| c[0])
            .collect(),
    };

    if !used.contains(&comp[0]) {
        let p = pattern.close();
        let shifted = p.shifted(next);
        body.xs.extend(shifted.xs.iter().cloned());
        body.loops.extend(shifted.loops.iter().copied());
        let firsts: Vec<u32> = shifted.xs.first().map(|x| x.e[0]).into_iter().chain(shifted.loops.iter().copied()).collect();
        let starts = order_starts(d, k, &firsts[..if parallel { 2 } else { 1 }]);
        return body.orient_link(&starts);
    }

    // Copies of each arc: (occ0 side, occ1 side) of the copy left of the arc leaving
    // its tail, and of the other copy.
    let inc = d.incidence();
    let mut copies: HashMap<u32, [u32; 4]> = HashMap::new();
    for (i, &a) in comp.iter().enumerate() {
        let (c1, c2) = (fresh(), fresh());
        let entry = if i == 0 { [c1, c2, fresh(), fresh()] } else { [c1, c2, c1, c2] };
        copies.insert(a, entry);
    }
    let alpha = comp[0];

    for (x, cr) in d.crossings().iter().enumerate() {
        let e = cr.arcs;
        let ep = |slot: usize, side: Side| -> u32 {
            let a = e[slot];
            let [l0, r0, l1, r1] = copies[&a];
            let at_tail = inc.tail.get(&a) == Some(&(x, slot));
            match (at_tail, side) {
                (true, Side::L) => l0,
                (true, Side::R) => r0,
                (false, Side::L) => r1,
                (false, Side::R) => l1,
            }
        };
        let under = comp_of[&e[0]] == k;
        let over = comp_of[&e[1]] == k;
        let o = Some(cr.sign < 0);
        // Both copies follow `k`'s direction only when they are parallel.
        let (cu, co) = if parallel { (Some(true), o) } else { (None, None) };
        match (under, over) {
            (false, false) => body.xs.push(PX { e, u: Some(true), o }),
            (true, false) => {
                let m = fresh();
                body.xs.push(PX { e: [ep(0, Side::R), m, ep(2, Side::L), e[3]], u: cu, o });
                body.xs.push(PX { e: [ep(0, Side::L), e[1], ep(2, Side::R), m], u: cu, o });
            }
            (false, true) => {
                let m = fresh();
                body.xs.push(PX { e: [e[0], ep(1, Side::R), m, ep(3, Side::L)], u: Some(true), o: co });
                body.xs.push(PX { e: [m, ep(1, Side::L), e[2], ep(3, Side::R)], u: Some(true), o: co });
            }
            (true, true) => {
                let (ms, mw, me, mn) = (fresh(), fresh(), fresh(), fresh());
                let (a_w, a_e) = (ep(0, Side::R), ep(0, Side::L));
                let (c_w, c_e) = (ep(2, Side::L), ep(2, Side::R));
                let (b_n, b_s) = (ep(1, Side::L), ep(1, Side::R));
                let (d_s, d_n) = (ep(3, Side::L), ep(3, Side::R));
                for e in [[a_w, ms, mw, d_s], [a_e, b_s, me, ms], [mw, mn, c_w, d_n], [me, b_n, c_e, mn]] {
                    body.xs.push(PX { e, u: cu, o: co });
                }
            }
        }
    }

    let t = pattern.shifted(next);
    let [l0, r0, l1, r1] = copies[&alpha];
    body.xs.extend(t.xs.iter().cloned());
    body.loops.extend(t.loops.iter().copied());
    body.top = t.top.clone();
    body.bottom = t.bottom.clone();
    let pairs = [(l0, t.bottom[0]), (r0, t.bottom[1]), (l1, t.top[0]), (r1, t.top[1])];
    let mut uf = body.join_all(&pairs);
    body.top.clear();
    body.bottom.clear();
    let firsts = [uf.find(l0), uf.find(r0)];
    let starts = order_starts(d, k, &firsts[..if parallel { 2 } else { 1 }]);
    body.orient_link(&starts)
}

/// Basepoints that keep the component order, with `at_k` replacing component `k`.
fn order_starts(d: &LinkDiagram, k: usize, at_k: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    for (i, c) in d.components().iter().enumerate() {
        if i == k {
            out.extend_from_slice(at_k);
        } else {
            out.push(c[0]);
        }
    }
    out
}
