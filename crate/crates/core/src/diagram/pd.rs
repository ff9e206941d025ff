//! PD text and JSON formats.
//!
//! ```text
//! PD[m; X(a,b,c,d), ..., C(i: a1,a2,...)]
//! T[strands=2; X(a,b,c,d), ..., E(NW=a, NE=b, SW=c, SE=d)]
//! ```
//!
//! `X` crossings take their over-strand direction from the orientation of the
//! neighbouring arcs; `Xp`/`Xm` pin a positive/negative crossing where that is
//! ambiguous (components that only ever pass over). `C(i: ...)` pins component
//! `i` (1-based) to start at `a1` and follow the listed arcs; a single label that
//! occurs in no crossing is a crossingless component. JSON uses the same field
//! names: `{"m": 2, "X": [[a,b,c,d], [a,b,c,d,1]], "C": {"1": [..]}}` where an
//! optional fifth entry is the pinned sign.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde_json::{json, Value};

use super::tangle::TangleDiagram;
use super::{Crossing, DiagramError, LinkDiagram};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Link(LinkDiagram),
    Tangle(TangleDiagram),
}

#[derive(Clone, Debug, Default)]
pub(crate) struct RawPd {
    pub crossings: Vec<([u32; 4], Option<i8>)>,
    pub clauses: Vec<(usize, Vec<u32>)>,
    /// `[NW, NE, SW, SE]` for tangles.
    pub ends: Option<[u32; 4]>,
    pub declared: Option<usize>,
}

/// Parses either format (text or JSON), link or tangle.
pub fn parse_diagram(text: &str) -> Result<Parsed, DiagramError> {
    let trimmed = text.trim_start();
    let raw = if trimmed.starts_with('{') {
        raw_from_json(text)?
    } else {
        Lexer::new(text).diagram()?
    };
    resolve(raw)
}

// ---------------------------------------------------------------- lexing

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer { src: s.as_bytes(), pos: 0 }
    }

    fn err(&self, msg: impl Into<String>) -> DiagramError {
        let before = &self.src[..self.pos.min(self.src.len())];
        let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
        let col = before.iter().rev().take_while(|&&b| b != b'\n').count() + 1;
        DiagramError::Parse { line, col, msg: msg.into() }
    }

    fn ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), DiagramError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", b as char)))
        }
    }

    fn word(&mut self) -> String {
        self.ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn int(&mut self) -> Result<u64, DiagramError> {
        self.ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a non-negative integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }

    fn label(&mut self) -> Result<u32, DiagramError> {
        let v = self.int()?;
        if v == 0 || v > u32::MAX as u64 / 8 {
            return Err(self.err("arc labels must be positive and below 2^29"));
        }
        Ok(v as u32)
    }

    fn diagram(mut self) -> Result<RawPd, DiagramError> {
        let head = self.word();
        let mut raw = RawPd::default();
        let tangle = match head.as_str() {
            "PD" => false,
            "T" => true,
            _ => return Err(self.err("expected 'PD[' or 'T['")),
        };
        self.expect(b'[')?;
        if tangle {
            if self.word() != "strands" {
                return Err(self.err("expected 'strands=2'"));
            }
            self.expect(b'=')?;
            if self.int()? != 2 {
                return Err(self.err("only two-strand tangles are supported"));
            }
        } else if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            raw.declared = Some(self.int()? as usize);
        } else {
            raw.declared = Some(0);
        }
        if self.eat(b';') {
            loop {
                if self.peek() == Some(b']') {
                    break;
                }
                self.item(&mut raw, tangle)?;
                if !self.eat(b',') {
                    break;
                }
            }
        }
        self.expect(b']')?;
        if self.peek().is_some() {
            return Err(self.err("trailing input"));
        }
        if tangle && raw.ends.is_none() {
            return Err(self.err("tangle needs an E(NW=.., NE=.., SW=.., SE=..) clause"));
        }
        Ok(raw)
    }

    fn item(&mut self, raw: &mut RawPd, tangle: bool) -> Result<(), DiagramError> {
        let at = self.pos;
        let kind = self.word();
        match kind.as_str() {
            "X" | "Xp" | "Xm" => {
                self.expect(b'(')?;
                let mut arcs = [0u32; 4];
                for (k, a) in arcs.iter_mut().enumerate() {
                    if k > 0 {
                        self.expect(b',')?;
                    }
                    *a = self.label()?;
                }
                self.expect(b')')?;
                let sign = match kind.as_str() {
                    "Xp" => Some(1),
                    "Xm" => Some(-1),
                    _ => None,
                };
                raw.crossings.push((arcs, sign));
            }
            "C" => {
                self.expect(b'(')?;
                let idx = self.int()? as usize;
                self.expect(b':')?;
                let mut arcs = Vec::new();
                if self.peek() != Some(b')') {
                    loop {
                        arcs.push(self.label()?);
                        if !self.eat(b',') {
                            break;
                        }
                    }
                }
                self.expect(b')')?;
                if arcs.is_empty() {
                    return Err(self.err("component clause lists no arcs"));
                }
                raw.clauses.push((idx, arcs));
            }
            "E" if tangle => {
                self.expect(b'(')?;
                let mut ends: [Option<u32>; 4] = [None; 4];
                loop {
                    let key = self.word();
                    let slot = match key.as_str() {
                        "NW" => 0,
                        "NE" => 1,
                        "SW" => 2,
                        "SE" => 3,
                        _ => return Err(self.err("expected NW, NE, SW or SE")),
                    };
                    self.expect(b'=')?;
                    ends[slot] = Some(self.label()?);
                    if !self.eat(b',') {
                        break;
                    }
                }
                self.expect(b')')?;
                let [Some(nw), Some(ne), Some(sw), Some(se)] = ends else {
                    return Err(self.err("E clause needs all of NW, NE, SW, SE"));
                };
                raw.ends = Some([nw, ne, sw, se]);
            }
            _ => {
                self.pos = at;
                return Err(self.err(format!("unknown clause '{kind}'")));
            }
        }
        Ok(())
    }
}

fn raw_from_json(text: &str) -> Result<RawPd, DiagramError> {
    let perr = |msg: String| DiagramError::Parse { line: 1, col: 1, msg };
    let v: Value = serde_json::from_str(text).map_err(|e| DiagramError::Parse {
        line: e.line(),
        col: e.column(),
        msg: e.to_string(),
    })?;
    let obj = v.as_object().ok_or_else(|| perr("expected a JSON object".into()))?;
    let label = |x: &Value| -> Result<u32, DiagramError> {
        x.as_u64()
            .filter(|&n| n > 0 && n <= u32::MAX as u64 / 8)
            .map(|n| n as u32)
            .ok_or_else(|| perr(format!("bad arc label {x}")))
    };
    let mut raw = RawPd::default();
    if let Some(s) = obj.get("strands") {
        if s.as_u64() != Some(2) {
            return Err(perr("only two-strand tangles are supported".into()));
        }
        let e = obj.get("E").and_then(Value::as_object).ok_or_else(|| perr("tangle needs field E".into()))?;
        let mut ends = [0u32; 4];
        for (k, key) in ["NW", "NE", "SW", "SE"].iter().enumerate() {
            ends[k] = label(e.get(*key).ok_or_else(|| perr(format!("E lacks {key}")))?)?;
        }
        raw.ends = Some(ends);
    } else {
        raw.declared = Some(obj.get("m").and_then(Value::as_u64).ok_or_else(|| perr("field m required".into()))? as usize);
    }
    for x in obj.get("X").and_then(Value::as_array).map(Vec::as_slice).unwrap_or(&[]) {
        let arr = x.as_array().ok_or_else(|| perr("crossing must be an array".into()))?;
        if arr.len() != 4 && arr.len() != 5 {
            return Err(perr("crossing needs 4 arcs and an optional sign".into()));
        }
        let mut arcs = [0u32; 4];
        for k in 0..4 {
            arcs[k] = label(&arr[k])?;
        }
        let sign = match arr.get(4).map(|s| s.as_i64()) {
            None => None,
            Some(Some(1)) => Some(1),
            Some(Some(-1)) => Some(-1),
            Some(_) => return Err(perr("crossing sign must be 1 or -1".into())),
        };
        raw.crossings.push((arcs, sign));
    }
    if let Some(c) = obj.get("C").and_then(Value::as_object) {
        for (k, arcs) in c {
            let idx: usize = k.parse().map_err(|_| perr(format!("bad component index {k}")))?;
            let arcs = arcs
                .as_array()
                .ok_or_else(|| perr("component must be an array".into()))?
                .iter()
                .map(label)
                .collect::<Result<Vec<_>, _>>()?;
            if arcs.is_empty() {
                return Err(perr("component clause lists no arcs".into()));
            }
            raw.clauses.push((idx, arcs));
        }
    }
    Ok(raw)
}

// ---------------------------------------------------------------- resolution

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Occ {
    Slot(usize, usize),
    /// Tangle endpoint: 0 NW, 1 NE, 2 SW, 3 SE.
    End(usize),
}

pub(crate) fn resolve(raw: RawPd) -> Result<Parsed, DiagramError> {
    let n = raw.crossings.len();
    let mut occ: BTreeMap<u32, Vec<Occ>> = BTreeMap::new();
    for (x, (arcs, _)) in raw.crossings.iter().enumerate() {
        for (s, &a) in arcs.iter().enumerate() {
            occ.entry(a).or_default().push(Occ::Slot(x, s));
        }
    }
    if let Some(ends) = raw.ends {
        for (k, &a) in ends.iter().enumerate() {
            occ.entry(a).or_default().push(Occ::End(k));
        }
    }
    for (&arc, list) in &occ {
        if list.len() != 2 {
            return Err(DiagramError::ArcIncidence { arc, count: list.len() });
        }
    }

    // head[x][s]: whether the arc at slot s ends at crossing x.
    let mut head: Vec<[Option<bool>; 4]> = vec![[None; 4]; n];
    let mut queue = VecDeque::new();
    let set = |head: &mut Vec<[Option<bool>; 4]>, queue: &mut VecDeque<(usize, usize)>, x: usize, s: usize, h: bool| {
        match head[x][s] {
            Some(prev) if prev != h => Err(DiagramError::Orientation(raw.crossings[x].0[s])),
            Some(_) => Ok(()),
            None => {
                head[x][s] = Some(h);
                queue.push_back((x, s));
                Ok(())
            }
        }
    };
    for (x, (_, sign)) in raw.crossings.iter().enumerate() {
        set(&mut head, &mut queue, x, 0, true)?;
        set(&mut head, &mut queue, x, 2, false)?;
        if let Some(sg) = sign {
            set(&mut head, &mut queue, x, 3, *sg > 0)?;
        }
    }
    // Tangle ends: NW/NE arcs arrive at the boundary, SW/SE arcs leave it.
    if let Some(ends) = raw.ends {
        for (k, &a) in ends.iter().enumerate() {
            for o in &occ[&a] {
                if let Occ::Slot(x, s) = *o {
                    set(&mut head, &mut queue, x, s, k >= 2)?;
                }
            }
        }
    }
    let propagate = |head: &mut Vec<[Option<bool>; 4]>, queue: &mut VecDeque<(usize, usize)>| -> Result<(), DiagramError> {
        while let Some((x, s)) = queue.pop_front() {
            let h = head[x][s].unwrap();
            if s % 2 == 1 {
                set(head, queue, x, (s + 2) % 4, !h)?;
            }
            let arc = raw.crossings[x].0[s];
            for o in &occ[&arc] {
                if let Occ::Slot(y, t) = *o {
                    if (y, t) != (x, s) {
                        set(head, queue, y, t, !h)?;
                    }
                }
            }
        }
        Ok(())
    };
    propagate(&mut head, &mut queue)?;

    // Components passing only over: pin by component clauses, then by label order.
    let undetermined = |head: &Vec<[Option<bool>; 4]>| -> Option<u32> {
        (0..n).filter(|&x| head[x][1].is_none()).map(|x| raw.crossings[x].0[1].min(raw.crossings[x].0[3])).min()
    };
    for (_, arcs) in &raw.clauses {
        if arcs.len() < 2 {
            continue;
        }
        let (a1, a2) = (arcs[0], arcs[1]);
        let Some(list) = occ.get(&a1) else { continue };
        let cands: Vec<(usize, usize)> = list
            .iter()
            .filter_map(|o| match *o {
                Occ::Slot(x, s) if raw.crossings[x].0[(s + 2) % 4] == a2 => Some((x, s)),
                _ => None,
            })
            .collect();
        if cands.len() == 1 && head[cands[0].0][cands[0].1].is_none() {
            let (x, s) = cands[0];
            set(&mut head, &mut queue, x, s, true)?;
            propagate(&mut head, &mut queue)?;
        }
    }
    while let Some(alpha) = undetermined(&head) {
        let list: Vec<(usize, usize)> = occ[&alpha]
            .iter()
            .filter_map(|o| match *o {
                Occ::Slot(x, s) => Some((x, s)),
                Occ::End(_) => None,
            })
            .collect();
        let next = |&(x, s): &(usize, usize)| raw.crossings[x].0[(s + 2) % 4];
        let pick = list
            .iter()
            .find(|o| next(o) == alpha + 1)
            .or_else(|| list.iter().min_by_key(|o| (next(o), o.0, o.1)))
            .copied()
            .unwrap();
        set(&mut head, &mut queue, pick.0, pick.1, true)?;
        propagate(&mut head, &mut queue)?;
    }

    let crossings: Vec<Crossing> = raw
        .crossings
        .iter()
        .enumerate()
        .map(|(x, (arcs, _))| Crossing { arcs: *arcs, sign: if head[x][3] == Some(true) { 1 } else { -1 } })
        .collect();

    if let Some(ends) = raw.ends {
        let t = TangleDiagram::from_parts(crossings, ends, &raw.clauses)?;
        if !planar(t.crossings(), Some(ends)) {
            return Err(DiagramError::NonPlanar);
        }
        return Ok(Parsed::Tangle(t));
    }

    let d = link_with_clauses(crossings, &raw.clauses, raw.declared.unwrap_or(0))?;
    if !planar(d.crossings(), None) {
        return Err(DiagramError::NonPlanar);
    }
    Ok(Parsed::Link(d))
}

fn link_with_clauses(crossings: Vec<Crossing>, clauses: &[(usize, Vec<u32>)], declared: usize) -> Result<LinkDiagram, DiagramError> {
    let traversed = LinkDiagram::assemble(crossings.clone(), &[], 0);
    let mut found: Vec<Vec<u32>> = traversed.components().to_vec();
    let mut slots: Vec<Option<Vec<u32>>> = vec![None; declared];
    let in_crossings: BTreeSet<u32> = crossings.iter().flat_map(|c| c.arcs).collect();
    for (idx, arcs) in clauses {
        let slot = idx
            .checked_sub(1)
            .filter(|&i| i < declared)
            .ok_or_else(|| DiagramError::ComponentClause(format!("index {idx} outside 1..={declared}")))?;
        if slots[slot].is_some() {
            return Err(DiagramError::ComponentClause(format!("component {idx} given twice")));
        }
        if arcs.len() == 1 && !in_crossings.contains(&arcs[0]) {
            if found.iter().any(|c| c.contains(&arcs[0])) || slots.iter().flatten().any(|c| c.contains(&arcs[0])) {
                return Err(DiagramError::ComponentClause(format!("arc {} reused", arcs[0])));
            }
            slots[slot] = Some(arcs.clone());
            continue;
        }
        let pos = found
            .iter()
            .position(|c| c.contains(&arcs[0]))
            .ok_or_else(|| DiagramError::ComponentClause(format!("arc {} not on any component", arcs[0])))?;
        let mut cyc = found.remove(pos);
        let r = cyc.iter().position(|&a| a == arcs[0]).unwrap();
        cyc.rotate_left(r);
        if cyc != *arcs {
            return Err(DiagramError::ComponentClause(format!("C({idx}: ...) does not follow the component")));
        }
        slots[slot] = Some(cyc);
    }
    let mut fresh = in_crossings
        .iter()
        .chain(slots.iter().flatten().flatten())
        .max()
        .copied()
        .unwrap_or(0);
    let mut rest = found.into_iter();
    let mut components = Vec::with_capacity(declared);
    for slot in slots {
        match slot {
            Some(c) => components.push(c),
            None => match rest.next() {
                Some(c) => components.push(c),
                None => {
                    fresh += 1;
                    components.push(vec![fresh]);
                }
            },
        }
    }
    let extra = rest.count();
    if extra > 0 {
        return Err(DiagramError::ComponentCount { declared, found: declared + extra });
    }
    Ok(LinkDiagram::from_raw(crossings, components))
}

/// Euler characteristic check on the 4-valent projection graph. For tangles the
/// boundary is an extra vertex whose rotation at infinity is `[NW, NE, SE, SW]`.
pub(crate) fn planar(crossings: &[Crossing], ends: Option<[u32; 4]>) -> bool {
    let mut rot: Vec<[u32; 4]> = crossings.iter().map(|c| c.arcs).collect();
    if let Some([nw, ne, sw, se]) = ends {
        rot.push([nw, ne, se, sw]);
    }
    let v = rot.len();
    if v == 0 {
        return true;
    }
    let mut ends_of: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
    for (x, r) in rot.iter().enumerate() {
        for (s, &a) in r.iter().enumerate() {
            ends_of.entry(a).or_default().push((x, s));
        }
    }
    let partner = |x: usize, s: usize| -> (usize, usize) {
        let l = &ends_of[&rot[x][s]];
        if l[0] == (x, s) {
            l[1]
        } else {
            l[0]
        }
    };
    let mut visited = vec![[false; 4]; v];
    let mut faces = 0;
    for x in 0..v {
        for s in 0..4 {
            if visited[x][s] {
                continue;
            }
            faces += 1;
            let (mut y, mut t) = (x, s);
            while !visited[y][t] {
                visited[y][t] = true;
                let (p, q) = partner(y, t);
                y = p;
                t = (q + 1) % 4;
            }
        }
    }
    let mut uf: Vec<usize> = (0..v).collect();
    fn find(uf: &mut Vec<usize>, i: usize) -> usize {
        if uf[i] != i {
            let r = find(uf, uf[i]);
            uf[i] = r;
        }
        uf[i]
    }
    for l in ends_of.values() {
        let (a, b) = (find(&mut uf, l[0].0), find(&mut uf, l[1].0));
        uf[a] = b;
    }
    let pieces = (0..v).filter(|&i| find(&mut uf, i) == i).count();
    let e = ends_of.len();
    v as i64 - e as i64 + faces as i64 == 2 * pieces as i64
}

// ---------------------------------------------------------------- output

fn crossing_text(c: &Crossing, pinned: bool) -> String {
    let [a, b, cc, d] = c.arcs;
    let tag = match (pinned, c.sign > 0) {
        (false, _) => "X",
        (true, true) => "Xp",
        (true, false) => "Xm",
    };
    format!("{tag}({a},{b},{cc},{d})")
}

fn clause_text(i: usize, comp: &[u32]) -> String {
    let arcs: Vec<String> = comp.iter().map(u32::to_string).collect();
    format!("C({}: {})", i + 1, arcs.join(","))
}

fn link_text(d: &LinkDiagram, clauses: bool, pinned: bool) -> String {
    let mut items: Vec<String> = d.crossings().iter().map(|c| crossing_text(c, pinned)).collect();
    if clauses {
        items.extend(d.components().iter().enumerate().map(|(i, c)| clause_text(i, c)));
    }
    if items.is_empty() {
        format!("PD[{}]", d.num_components())
    } else {
        format!("PD[{}; {}]", d.num_components(), items.join(", "))
    }
}

/// Canonical text; clauses and pinned signs are emitted only when needed to round-trip.
pub(crate) fn serialize_link(d: &LinkDiagram) -> String {
    let canon = d.canonical();
    for (clauses, pinned) in [(false, false), (true, false), (true, true)] {
        let text = link_text(&canon, clauses, pinned);
        if matches!(parse_diagram(&text), Ok(Parsed::Link(ref p)) if *p == canon) {
            return text;
        }
    }
    link_text(&canon, true, true)
}

fn link_json(d: &LinkDiagram, clauses: bool, pinned: bool) -> Value {
    let xs: Vec<Value> = d
        .crossings()
        .iter()
        .map(|c| {
            let mut v: Vec<Value> = c.arcs.iter().map(|a| json!(a)).collect();
            if pinned {
                v.push(json!(c.sign));
            }
            Value::Array(v)
        })
        .collect();
    let mut obj = json!({ "m": d.num_components(), "X": xs });
    if clauses {
        let c: serde_json::Map<String, Value> =
            d.components().iter().enumerate().map(|(i, c)| ((i + 1).to_string(), json!(c))).collect();
        obj["C"] = Value::Object(c);
    }
    obj
}

pub(crate) fn link_to_json(d: &LinkDiagram) -> Value {
    let canon = d.canonical();
    for (clauses, pinned) in [(false, false), (true, false), (true, true)] {
        let v = link_json(&canon, clauses, pinned);
        if matches!(parse_diagram(&v.to_string()), Ok(Parsed::Link(ref p)) if *p == canon) {
            return v;
        }
    }
    link_json(&canon, true, true)
}

pub(crate) fn tangle_text(t: &TangleDiagram, pinned: bool) -> String {
    let mut items: Vec<String> = t.crossings().iter().map(|c| crossing_text(c, pinned)).collect();
    for (k, comp) in t.closed().iter().enumerate() {
        items.push(clause_text(k + 2, comp));
    }
    let [nw, ne, sw, se] = t.ends();
    items.push(format!("E(NW={nw}, NE={ne}, SW={sw}, SE={se})"));
    format!("T[strands=2; {}]", items.join(", "))
}

pub(crate) fn tangle_json(t: &TangleDiagram, pinned: bool) -> Value {
    let xs: Vec<Value> = t
        .crossings()
        .iter()
        .map(|c| {
            let mut v: Vec<Value> = c.arcs.iter().map(|a| json!(a)).collect();
            if pinned {
                v.push(json!(c.sign));
            }
            Value::Array(v)
        })
        .collect();
    let [nw, ne, sw, se] = t.ends();
    let mut obj = json!({ "strands": 2, "X": xs, "E": { "NW": nw, "NE": ne, "SW": sw, "SE": se } });
    if !t.closed().is_empty() {
        let c: serde_json::Map<String, Value> =
            t.closed().iter().enumerate().map(|(k, c)| ((k + 3).to_string(), json!(c))).collect();
        obj["C"] = Value::Object(c);
    }
    obj
}
