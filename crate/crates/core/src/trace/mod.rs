//! Crossing-change traces: a homotopy recorded as the sequence of self-crossing
//! changes it passes through, with the sign and lobe linking numbers of each.
//!
//! An event's `sign` is the sign of the crossing just *before* the change, read
//! along the trace from `start` to `end`. Every jump below is therefore the value
//! at the before-side minus the value at the after-side, times `sign`, and the
//! value at `start` is the anchor value at `end` plus the sum over all events.

mod annular;
mod io;
#[cfg(test)]
mod tests;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::conway::{ConwayError, SkeinCache};
use crate::diagram::{DiagramError, LinkDiagram, TangleDiagram};
use crate::laurent::LaurentPoly;

pub use annular::{eta_unknotted, AnnularPattern};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TraceError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("trace file has no header line")]
    MissingHeader,
    #[error("event {0}: sign must be +1 or -1")]
    Sign(usize),
    #[error("event {event}: lobe data does not fit a {kind} trace")]
    EventKind { event: usize, kind: TraceKind },
    #[error("expected a {0} trace")]
    WrongKind(TraceKind),
    #[error("event {event}: component {component} out of range")]
    Component { event: usize, component: usize },
    #[error("event {0}: lobe data against its own component")]
    SelfLobe(usize),
    #[error("event {event}: lobes against component {other} sum to {found}, but the linking number is {expected}")]
    LobeSum { event: usize, other: usize, expected: i64, found: i64 },
    #[error("expected a 2-component trace, found {0} components")]
    ComponentCount(usize),
    #[error("trace ends at `{0}`, which is not a normalization anchor")]
    NotAnchor(String),
    #[error("event {0} changes a crossing of the second component; the trace must move only the first")]
    OffFirstComponent(usize),
    #[error("linking number is {0}, not 0")]
    NonzeroLinking(i64),
    #[error("cannot concatenate: first trace ends at `{0}`, second starts at `{1}`")]
    Concat(String, String),
    #[error("inconsistent level at arc {0}")]
    Levels(u32),
    #[error("signed crossing count at level difference {0} is odd")]
    OddLift(i64),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Conway(#[from] ConwayError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TraceKind {
    ClosedLink,
    FiberedStringLink,
}

impl TraceKind {
    pub fn name(self) -> &'static str {
        match self {
            TraceKind::ClosedLink => "closed-link",
            TraceKind::FiberedStringLink => "fibered-string-link",
        }
    }
}

impl fmt::Display for TraceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Closed traces record, against every other component `j`, the linking numbers
/// `(n, l - n)` of the two lobes. Fibered traces record the single signed `l_z` of
/// the lobe running from the first preimage to the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lobes {
    Closed(BTreeMap<usize, (i64, i64)>),
    Fibered(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingEvent {
    pub component: usize,
    pub sign: i8,
    pub lobes: Lobes,
}

impl CrossingEvent {
    pub fn closed(component: usize, sign: i8, lobes: &[(usize, i64, i64)]) -> Self {
        let lobes = lobes.iter().map(|&(j, n, m)| (j, (n, m))).collect();
        CrossingEvent { component, sign, lobes: Lobes::Closed(lobes) }
    }

    pub fn fibered(component: usize, sign: i8, lz: i64) -> Self {
        CrossingEvent { component, sign, lobes: Lobes::Fibered(lz) }
    }

    /// The lobe pair against the single other component of a 2-component trace.
    fn pair(&self) -> Result<(i64, i64), TraceError> {
        match &self.lobes {
            Lobes::Closed(m) if m.len() == 1 => Ok(*m.values().next().unwrap()),
            Lobes::Closed(m) => Err(TraceError::ComponentCount(m.len() + 1)),
            Lobes::Fibered(_) => Err(TraceError::WrongKind(TraceKind::ClosedLink)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyTrace {
    pub kind: TraceKind,
    pub start: String,
    pub end: String,
    pub events: Vec<CrossingEvent>,
}

impl HomotopyTrace {
    pub fn new(kind: TraceKind, start: &str, end: &str, events: Vec<CrossingEvent>) -> Result<Self, TraceError> {
        let t = HomotopyTrace { kind, start: start.to_string(), end: end.to_string(), events };
        t.validate()?;
        Ok(t)
    }

    /// Signs are ±1, lobe data matches the kind, and each pair of lobes sums to the
    /// same linking number throughout.
    pub fn validate(&self) -> Result<(), TraceError> {
        let mut lk: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (k, e) in self.events.iter().enumerate() {
            if e.sign != 1 && e.sign != -1 {
                return Err(TraceError::Sign(k));
            }
            match (&e.lobes, self.kind) {
                (Lobes::Fibered(_), TraceKind::FiberedStringLink) => {
                    if e.component > 1 {
                        return Err(TraceError::Component { event: k, component: e.component });
                    }
                }
                (Lobes::Closed(m), TraceKind::ClosedLink) => {
                    for (&j, &(n, r)) in m {
                        if j == e.component {
                            return Err(TraceError::SelfLobe(k));
                        }
                        let key = (j.min(e.component), j.max(e.component));
                        let expected = *lk.entry(key).or_insert(n + r);
                        if n + r != expected {
                            return Err(TraceError::LobeSum { event: k, other: j, expected, found: n + r });
                        }
                    }
                }
                _ => return Err(TraceError::EventKind { event: k, kind: self.kind }),
            }
        }
        Ok(())
    }

    /// Components mentioned by a closed trace (at least 2).
    pub fn num_components(&self) -> usize {
        let top = self
            .events
            .iter()
            .flat_map(|e| {
                let keys: Vec<usize> = match &e.lobes {
                    Lobes::Closed(m) => m.keys().copied().collect(),
                    Lobes::Fibered(_) => vec![1],
                };
                keys.into_iter().chain([e.component])
            })
            .max();
        top.map_or(2, |t| (t + 1).max(2))
    }

    /// Linking number of components 0 and 1 as recorded by the lobe data (0 if no event says).
    pub fn linking_number(&self) -> i64 {
        self.events
            .iter()
            .find_map(|e| match &e.lobes {
                Lobes::Closed(m) => m.get(&(1 - e.component.min(1))).map(|(n, r)| n + r),
                Lobes::Fibered(_) => None,
            })
            .unwrap_or(0)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &HomotopyTrace) -> Result<HomotopyTrace, TraceError> {
        if self.end != next.start {
            return Err(TraceError::Concat(self.end.clone(), next.start.clone()));
        }
        if self.kind != next.kind {
            return Err(TraceError::WrongKind(self.kind));
        }
        let events = self.events.iter().chain(&next.events).cloned().collect();
        HomotopyTrace::new(self.kind, &self.start, &next.end, events)
    }

    /// The same homotopy run backwards: events in reverse order, each sign flipped.
    pub fn reverse(&self) -> HomotopyTrace {
        let events = self.events.iter().rev().map(|e| CrossingEvent { sign: -e.sign, ..e.clone() }).collect();
        HomotopyTrace { kind: self.kind, start: self.end.clone(), end: self.start.clone(), events }
    }

    /// Image of a fibered trace under `rho`, which negates every crossing and so
    /// every sign and every `l_z`. Endpoint names get a `rho` prefix, except `trivial`.
    pub fn rho(&self) -> Result<HomotopyTrace, TraceError> {
        self.require(TraceKind::FiberedStringLink)?;
        let name = |s: &str| if s == "trivial" { s.to_string() } else { format!("rho{s}") };
        let events = self
            .events
            .iter()
            .map(|e| match e.lobes {
                Lobes::Fibered(l) => CrossingEvent::fibered(e.component, -e.sign, -l),
                Lobes::Closed(_) => unreachable!("validated"),
            })
            .collect();
        Ok(HomotopyTrace { kind: self.kind, start: name(&self.start), end: name(&self.end), events })
    }

    fn require(&self, kind: TraceKind) -> Result<(), TraceError> {
        if self.kind != kind {
            return Err(TraceError::WrongKind(kind));
        }
        self.validate()
    }
}

/// `beta(L+) - beta(L-) = -n^2`, with `n` the first lobe of the pair.
pub fn beta_jump(e: &CrossingEvent) -> Result<i64, TraceError> {
    let (n, _) = e.pair()?;
    Ok(-n * n)
}

/// `beta~(L+) - beta~(L-) = n (l - n)`.
pub fn beta_tilde_jump(e: &CrossingEvent) -> Result<i64, TraceError> {
    let (n, r) = e.pair()?;
    Ok(n * r)
}

/// Anchors for closed 2-component traces: the unlink and the links `H_n`.
pub fn is_closed_anchor(name: &str) -> bool {
    matches!(name, "unlink" | "unlink:2" | "hopf") || name.starts_with("H_n:")
}

/// `beta~(start) - beta~(end)`.
pub fn beta_tilde_change(tr: &HomotopyTrace) -> Result<i64, TraceError> {
    tr.require(TraceKind::ClosedLink)?;
    tr.events.iter().map(|e| Ok(e.sign as i64 * beta_tilde_jump(e)?)).sum()
}

/// `beta~` of the start, normalized to 0 at the anchor the trace ends on.
pub fn beta_tilde_from_trace(tr: &HomotopyTrace) -> Result<i64, TraceError> {
    if !is_closed_anchor(&tr.end) {
        return Err(TraceError::NotAnchor(tr.end.clone()));
    }
    if tr.num_components() != 2 {
        return Err(TraceError::ComponentCount(tr.num_components()));
    }
    beta_tilde_change(tr)
}

/// Sign of `eta(L+) - eta(L-) = t^s + t^-s - 2`. Chosen so that the first
/// coefficient of the expansion in `z` is the Sato–Levine invariant itself.
pub const ETA_SIGN: i64 = 1;

fn t_s(s: i64) -> LaurentPoly {
    LaurentPoly::from_terms([(s, 1), (-s, 1), (0, -2)])
}

/// `eta(L+) - eta(L-)` for a self-crossing change of the first component.
pub fn eta_jump(e: &CrossingEvent) -> Result<LaurentPoly, TraceError> {
    let (s, _) = e.pair()?;
    Ok(t_s(s).scalar_mul(ETA_SIGN))
}

/// `eta(start) - eta(end)`; every event must move the first component only.
pub fn eta_change(tr: &HomotopyTrace) -> Result<LaurentPoly, TraceError> {
    tr.require(TraceKind::ClosedLink)?;
    if tr.num_components() != 2 {
        return Err(TraceError::ComponentCount(tr.num_components()));
    }
    let mut acc = LaurentPoly::zero();
    for (k, e) in tr.events.iter().enumerate() {
        if e.component != 0 {
            return Err(TraceError::OffFirstComponent(k));
        }
        let (n, r) = e.pair()?;
        if n + r != 0 {
            return Err(TraceError::NonzeroLinking(n + r));
        }
        acc += &eta_jump(e)?.scalar_mul(e.sign);
    }
    Ok(acc)
}

/// `eta` of the start of a trace ending on the unlink, where `eta = 0`.
pub fn eta_from_trace(tr: &HomotopyTrace) -> Result<LaurentPoly, TraceError> {
    if !matches!(tr.end.as_str(), "unlink" | "unlink:2") {
        return Err(TraceError::NotAnchor(tr.end.clone()));
    }
    eta_change(tr)
}

fn sigma_sum(tr: &HomotopyTrace) -> Result<[LaurentPoly; 2], TraceError> {
    tr.require(TraceKind::FiberedStringLink)?;
    let mut out = [LaurentPoly::zero(), LaurentPoly::zero()];
    for e in &tr.events {
        let Lobes::Fibered(l) = e.lobes else { unreachable!("validated") };
        out[e.component] += &(LaurentPoly::monomial(l) - LaurentPoly::one()).scalar_mul(e.sign);
    }
    Ok(out)
}

/// `(sum eps (t^l - 1))` over the events of each strand.
pub fn sigma_tilde(tr: &HomotopyTrace) -> Result<(LaurentPoly, LaurentPoly), TraceError> {
    let [p, m] = sigma_sum(tr)?;
    Ok((p, m))
}

/// Kirk's invariant of the numerator closure: `sigma~` folded by `t^n -> t^|n|`.
pub fn kirk_sigma(tr: &HomotopyTrace) -> Result<(LaurentPoly, LaurentPoly), TraceError> {
    let (p, m) = sigma_tilde(tr)?;
    Ok((p.phi_fold(), m.phi_fold()))
}

/// `sum eps l (mod 2)` over the events of one strand.
pub fn hudson_obstruction(tr: &HomotopyTrace, component: usize) -> Result<u8, TraceError> {
    let [p, m] = sigma_sum(tr)?;
    let f = if component == 0 { p } else { m };
    let v: num_bigint::BigInt = f.derivative_at_one(1);
    Ok(if (v % 2u8) == 0.into() { 0 } else { 1 })
}

/// Both sides of `beta(numer_0 L) = -(s' + s'')(1)` and `beta~(numer_1 L) = -s''(1)`,
/// where `s` is the sum of the two components of `sigma~` of a homotopy from `L` to
/// the trivial string link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaConsistency {
    pub beta_trace: i64,
    pub beta_conway: i64,
    pub beta_tilde_trace: i64,
    pub beta_tilde_conway: i64,
}

impl SigmaConsistency {
    pub fn holds(&self) -> bool {
        self.beta_trace == self.beta_conway && self.beta_tilde_trace == self.beta_tilde_conway
    }
}

pub fn sigma_consistency(tr: &HomotopyTrace, l: &TangleDiagram) -> Result<SigmaConsistency, TraceError> {
    sigma_consistency_with(tr, l, &SkeinCache::new())
}

pub fn sigma_consistency_with(
    tr: &HomotopyTrace,
    l: &TangleDiagram,
    cache: &SkeinCache,
) -> Result<SigmaConsistency, TraceError> {
    if tr.end != "trivial" {
        return Err(TraceError::NotAnchor(tr.end.clone()));
    }
    let [p, m] = sigma_sum(tr)?;
    let s0 = &p + &m;
    let d1 = int(s0.derivative_at_one(1));
    let d2 = int(s0.derivative_at_one(2));
    let c = crate::conway::Conway::new(cache);
    Ok(SigmaConsistency {
        beta_trace: -d1 - d2,
        beta_conway: c.sato_levine_beta(&l.numer_l(0))?,
        beta_tilde_trace: -d2,
        beta_tilde_conway: c.beta_tilde(&l.numer_l(1))?,
    })
}

fn int(b: num_bigint::BigInt) -> i64 {
    i64::try_from(b).expect("trace sums fit in i64")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EventClass {
    LinkHomotopy,
    Weak1Quasi,
}

impl EventClass {
    pub fn name(self) -> &'static str {
        match self {
            EventClass::LinkHomotopy => "link-homotopy",
            EventClass::Weak1Quasi => "weak-1-quasi",
        }
    }
}

/// An event is weak 1-quasi when one of its lobes is null-homologous in the
/// complement of the other components.
pub fn classify_events(tr: &HomotopyTrace) -> Result<Vec<EventClass>, TraceError> {
    tr.require(TraceKind::ClosedLink)?;
    Ok(tr
        .events
        .iter()
        .map(|e| {
            let Lobes::Closed(m) = &e.lobes else { unreachable!("validated") };
            let first = m.values().all(|&(n, _)| n == 0);
            let second = m.values().all(|&(_, r)| r == 0);
            if first || second {
                EventClass::Weak1Quasi
            } else {
                EventClass::LinkHomotopy
            }
        })
        .collect())
}

/// Records the closed trace that switches `switches` in order, starting from `d`.
/// Returns the trace and the diagram it ends on.
pub fn closed_trace_from_switches(
    d: &LinkDiagram,
    switches: &[usize],
    start: &str,
    end: &str,
) -> Result<(HomotopyTrace, LinkDiagram), TraceError> {
    let mut cur = d.clone();
    let mut events = Vec::new();
    for &c in switches {
        let comps = cur.strand_components();
        let &(i, o) = comps.get(c).ok_or(DiagramError::NoCrossing(c))?;
        if i != o {
            return Err(DiagramError::NotSelfCrossing(c).into());
        }
        let lobes: Vec<(usize, i64, i64)> = (0..cur.num_components())
            .filter(|&j| j != i)
            .map(|j| cur.lobe_linking_numbers(c, j).map(|(n, r)| (j, n, r)))
            .collect::<Result<_, _>>()?;
        events.push(CrossingEvent::closed(i, cur.crossings()[c].sign, &lobes));
        cur = cur.switch_crossing(c)?;
    }
    Ok((HomotopyTrace::new(TraceKind::ClosedLink, start, end, events)?, cur))
}

/// Fibered counterpart for a string link. `l_z` is the linking number, in the
/// numerator closure, of the lobe that stays inside the tangle.
pub fn fibered_trace_from_switches(
    t: &TangleDiagram,
    switches: &[usize],
    start: &str,
    end: &str,
) -> Result<(HomotopyTrace, TangleDiagram), TraceError> {
    let mut cur = t.clone();
    let mut events = Vec::new();
    for &c in switches {
        let d = cur.numerator();
        let comps = d.strand_components();
        let &(i, o) = comps.get(c).ok_or(DiagramError::NoCrossing(c))?;
        if i != o || i > 1 {
            return Err(DiagramError::NotSelfCrossing(c).into());
        }
        let (n, r) = d.lobe_linking_numbers(c, 1 - i)?;
        // The closure arc is the first arc of each numerator component.
        let outer = d.lobe_arcs(c)?.contains(&d.components()[i][0]);
        events.push(CrossingEvent::fibered(i, d.crossings()[c].sign, if outer { r } else { n }));
        cur = cur.switch_crossing(c)?;
    }
    Ok((HomotopyTrace::new(TraceKind::FiberedStringLink, start, end, events)?, cur))
}
