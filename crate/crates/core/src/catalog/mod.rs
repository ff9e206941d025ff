//! Named links, string links, traces and σ̃ data, each rebuilt on demand and checked
//! against its recorded invariants before it is handed out.

mod build;
#[cfg(test)]
mod tests;

use std::fmt;
use std::sync::OnceLock;

use serde_json::{json, Value as Json};
use thiserror::Error;

use crate::conway::{Conway, ConwayError, SkeinCache};
use crate::diagram::{whitehead_double, DiagramError, LinkDiagram, TangleDiagram};
use crate::laurent::LaurentPoly;
use crate::trace::{
    beta_tilde_from_trace, closed_trace_from_switches, eta_from_trace, eta_unknotted, kirk_sigma, sigma_tilde,
    AnnularPattern, CrossingEvent, HomotopyTrace, TraceError, TraceKind,
};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    Unknown(String),
    #[error("`{0}` needs a parameter, e.g. `{0}:2`")]
    MissingParameter(String),
    #[error("`{name}` does not accept the parameter {param}")]
    BadParameter { name: String, param: i64 },
    #[error("`{name}`: recorded {check} = {expected}, recomputed {found}")]
    SelfCheck { name: String, check: Check, expected: String, found: String },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    Conway(#[from] ConwayError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryKind {
    Link,
    StringLink,
    ClosedTrace,
    FiberedTrace,
    SigmaData,
}

impl EntryKind {
    pub fn name(self) -> &'static str {
        match self {
            EntryKind::Link => "link",
            EntryKind::StringLink => "string-link",
            EntryKind::ClosedTrace => "closed-trace",
            EntryKind::FiberedTrace => "fibered-trace",
            EntryKind::SigmaData => "sigma-data",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Payload {
    Link(LinkDiagram),
    StringLink(TangleDiagram),
    /// A knot in the solid torus, as a link with its axis (component 1).
    Annular { link: LinkDiagram, pattern: AnnularPattern },
    /// `start` is the diagram the switches were read from; `end` is where they lead.
    ClosedTrace { trace: HomotopyTrace, start: LinkDiagram, end: LinkDiagram },
    FiberedTrace { trace: HomotopyTrace, string_link: TangleDiagram },
    Sigma(LaurentPoly, LaurentPoly),
}

impl Payload {
    pub fn kind(&self) -> EntryKind {
        match self {
            Payload::Link(_) | Payload::Annular { .. } => EntryKind::Link,
            Payload::StringLink(_) => EntryKind::StringLink,
            Payload::ClosedTrace { .. } => EntryKind::ClosedTrace,
            Payload::FiberedTrace { .. } => EntryKind::FiberedTrace,
            Payload::Sigma(..) => EntryKind::SigmaData,
        }
    }

    pub fn link(&self) -> Option<&LinkDiagram> {
        match self {
            Payload::Link(d) | Payload::Annular { link: d, .. } => Some(d),
            _ => None,
        }
    }

    pub fn string_link(&self) -> Option<&TangleDiagram> {
        match self {
            Payload::StringLink(t) | Payload::FiberedTrace { string_link: t, .. } => Some(t),
            _ => None,
        }
    }

    pub fn trace(&self) -> Option<&HomotopyTrace> {
        match self {
            Payload::ClosedTrace { trace, .. } | Payload::FiberedTrace { trace, .. } => Some(trace),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    /// Built directly from its definition.
    Construction,
    /// Rebuilt from a verbal description and accepted on its invariants.
    Reconstructed,
    /// Read off a construction by switching crossings.
    Derived,
    /// A closed formula.
    Formula,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub origin: Origin,
    pub note: &'static str,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.origin {
            Origin::Construction => "construction",
            Origin::Reconstructed => "reconstructed",
            Origin::Derived => "derived",
            Origin::Formula => "formula",
        };
        write!(f, "{tag}: {}", self.note)
    }
}

/// What a recorded value measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Crossings,
    Lk,
    Conway,
    Beta,
    BetaTilde,
    ComponentConway,
    Numer0Beta,
    Numer1BetaTilde,
    Eta,
    TraceBetaTilde,
    TraceEta,
    EndLk,
    EndConway,
    EndComponentConway,
    EndSimplifiedCrossings,
    Sigma,
    Kirk,
    SigmaAtOne,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Crossings => "crossings",
            Check::Lk => "lk",
            Check::Conway => "conway",
            Check::Beta => "beta",
            Check::BetaTilde => "beta_tilde",
            Check::ComponentConway => "component_conway",
            Check::Numer0Beta => "numer0.beta",
            Check::Numer1BetaTilde => "numer1.beta_tilde",
            Check::Eta => "eta",
            Check::TraceBetaTilde => "trace.beta_tilde",
            Check::TraceEta => "trace.eta",
            Check::EndLk => "end.lk",
            Check::EndConway => "end.conway",
            Check::EndComponentConway => "end.component_conway",
            Check::EndSimplifiedCrossings => "end.simplified_crossings",
            Check::Sigma => "sigma",
            Check::Kirk => "kirk",
            Check::SigmaAtOne => "sigma(1)",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recorded {
    Int(i64),
    /// A polynomial in `z` (Conway) or `t` (everything else).
    Poly(LaurentPoly),
    Polys(Vec<LaurentPoly>),
    Pair(LaurentPoly, LaurentPoly),
}

impl Recorded {
    fn render(&self, var: &str) -> String {
        match self {
            Recorded::Int(v) => v.to_string(),
            Recorded::Poly(p) => p.display_with(var),
            Recorded::Polys(ps) => {
                format!("[{}]", ps.iter().map(|p| p.display_with(var)).collect::<Vec<_>>().join(", "))
            }
            Recorded::Pair(f, g) => format!("({}, {})", f.display_with(var), g.display_with(var)),
        }
    }

    pub fn to_json(&self, var: &str) -> Json {
        match self {
            Recorded::Int(v) => json!(v),
            _ => json!(self.render(var)),
        }
    }
}

fn var_of(check: Check) -> &'static str {
    match check {
        Check::Conway | Check::ComponentConway | Check::EndConway | Check::EndComponentConway => "z",
        _ => "t",
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub kind: EntryKind,
    pub payload: Payload,
    pub provenance: Provenance,
    pub recorded: Vec<(Check, Recorded)>,
}

impl CatalogEntry {
    /// The recorded value of `check`, if any.
    pub fn recorded(&self, check: Check) -> Option<&Recorded> {
        self.recorded.iter().find(|(c, _)| *c == check).map(|(_, v)| v)
    }

    /// Recomputes every recorded value.
    pub fn self_check(&self) -> Result<(), CatalogError> {
        let conway = Conway::new(shared_cache());
        for (check, expected) in &self.recorded {
            let found = measure(&self.payload, *check, &conway)?;
            if &found != expected {
                let var = var_of(*check);
                return Err(CatalogError::SelfCheck {
                    name: self.name.clone(),
                    check: *check,
                    expected: expected.render(var),
                    found: found.render(var),
                });
            }
        }
        Ok(())
    }

    /// The payload in its file format: `PD[...]`/`TANGLE[...]` text, trace JSONL, or
    /// the two σ̃ polynomials on separate lines.
    pub fn export(&self) -> String {
        match &self.payload {
            Payload::Link(d) | Payload::Annular { link: d, .. } => d.to_text(),
            Payload::StringLink(t) => t.to_text(),
            Payload::ClosedTrace { trace, .. } | Payload::FiberedTrace { trace, .. } => trace.to_jsonl(),
            Payload::Sigma(f, g) => format!("{f}\n{g}\n"),
        }
    }

    pub fn to_json(&self) -> Json {
        let recorded: serde_json::Map<String, Json> =
            self.recorded.iter().map(|(c, v)| (c.name().to_string(), v.to_json(var_of(*c)))).collect();
        json!({
            "name": self.name,
            "kind": self.kind.name(),
            "provenance": self.provenance.to_string(),
            "recorded": recorded,
            "payload": self.export(),
        })
    }
}

/// One cache for every catalog lookup in the process.
pub fn shared_cache() -> &'static SkeinCache {
    static CACHE: OnceLock<SkeinCache> = OnceLock::new();
    CACHE.get_or_init(SkeinCache::new)
}

/// Every entry name, sorted. Parametrized names end in `_n`, or take an optional
/// count in the case of `unlink`; pass the parameter as `name:value`.
pub fn list() -> Vec<&'static str> {
    let mut names = NAMES.to_vec();
    names.sort_unstable();
    names
}

const NAMES: &[&str] = &[
    "unlink",
    "hopf",
    "H_n",
    "H_n-string",
    "W",
    "W-inverse",
    "W-bar",
    "whitehead-link",
    "whitehead-link-bar",
    "trefoil",
    "W#rhoW",
    "W#W-bar",
    "W-bar#W",
    "mazur",
    "fake-mazur",
    "whitehead-double",
    "whitehead-double-twisted",
    "whitehead-pattern",
    "trace-whitehead",
    "trace-fake-mazur",
    "trace-mazur",
    "jin-W",
    "jin-W#rhoW",
    "sigma-W_n",
    "sigma-W_n#rhoW_n",
];

/// Looks up `name` or `name:parameter`, builds the entry and runs its self-check.
pub fn get(name: &str) -> Result<CatalogEntry, CatalogError> {
    let (base, param) = match name.rsplit_once(':') {
        Some((b, p)) => match p.trim().parse::<i64>() {
            Ok(v) => (b, Some(v)),
            Err(_) => return Err(CatalogError::Unknown(name.to_string())),
        },
        None => (name, None),
    };
    get_with(base, param)
}

pub fn get_with(name: &str, param: Option<i64>) -> Result<CatalogEntry, CatalogError> {
    let name = name.replace('ρ', "rho");
    let entry = build(&name, param)?;
    entry.self_check()?;
    Ok(entry)
}

/// All unparametrized entries plus the parametrized ones at the given values.
pub fn check_all(params: &[i64]) -> Result<Vec<CatalogEntry>, CatalogError> {
    let mut out = Vec::new();
    for name in list() {
        if name.ends_with("_n") || name.ends_with("_n-string") || name.ends_with("_n#rhoW_n") {
            // σ̃ formulas are stated for positive powers only.
            for &p in params.iter().filter(|&&p| p >= 1 || !name.starts_with("sigma")) {
                out.push(get_with(name, Some(p))?);
            }
        } else {
            out.push(get_with(name, None)?);
        }
    }
    Ok(out)
}

fn w() -> TangleDiagram {
    TangleDiagram::rational_tangle(&[1, 2]).expect("valid continued fraction")
}

fn w_inverse() -> TangleDiagram {
    TangleDiagram::rational_tangle(&[2, 2]).expect("valid continued fraction")
}

fn w_bar() -> TangleDiagram {
    w_inverse().rho()
}

fn z(n: i64) -> LaurentPoly {
    LaurentPoly::monomial(n)
}

fn t_poly(terms: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().copied())
}

/// `σ̃(𝔍(W₊ⁿ))`: `(((n²+n)/2) t + ((n²−n)/2) t⁻¹ − n², 1 − tⁿ)`.
pub fn sigma_w_power(n: i64) -> (LaurentPoly, LaurentPoly) {
    let f = t_poly(&[(1, (n * n + n) / 2), (-1, (n * n - n) / 2), (0, -n * n)]);
    let g = t_poly(&[(0, 1), (n, -1)]);
    (f, g)
}

/// `σ̃(𝔍(W₊ⁿ # ρW₊ⁿ))`: `(n (t − t⁻¹), t⁻ⁿ − tⁿ)`.
pub fn sigma_w_power_rho(n: i64) -> (LaurentPoly, LaurentPoly) {
    (t_poly(&[(1, n), (-1, -n)]), t_poly(&[(-n, 1), (n, -1)]))
}

/// The fibered trace of `W` to the trivial string link: the `+` strand passes
/// through its clasp positively, the `−` strand negatively, each with `l_z = 1`.
pub fn jin_w() -> HomotopyTrace {
    let events = vec![CrossingEvent::fibered(0, 1, 1), CrossingEvent::fibered(1, -1, 1)];
    HomotopyTrace::new(TraceKind::FiberedStringLink, "W", "trivial", events).expect("valid trace")
}

pub fn jin_w_rho_w() -> HomotopyTrace {
    let rho = jin_w().rho().expect("fibered");
    let events = jin_w().events.into_iter().chain(rho.events).collect();
    HomotopyTrace::new(TraceKind::FiberedStringLink, "W#rhoW", "trivial", events).expect("valid trace")
}

fn entry(
    name: &str,
    payload: Payload,
    origin: Origin,
    note: &'static str,
    recorded: Vec<(Check, Recorded)>,
) -> CatalogEntry {
    CatalogEntry { name: name.to_string(), kind: payload.kind(), payload, provenance: Provenance { origin, note }, recorded }
}

fn closed_trace(
    start: LinkDiagram,
    switches: &[usize],
    from: &str,
    to: &str,
) -> Result<Payload, CatalogError> {
    let (trace, end) = closed_trace_from_switches(&start, switches, from, to)?;
    Ok(Payload::ClosedTrace { trace, start, end })
}

fn build(name: &str, param: Option<i64>) -> Result<CatalogEntry, CatalogError> {
    use Check::*;
    use Origin::*;
    use Recorded::{Int, Pair, Poly, Polys};

    let need = |p: Option<i64>| p.ok_or_else(|| CatalogError::MissingParameter(name.to_string()));
    let refuse = |p: Option<i64>| match p {
        Some(v) => Err(CatalogError::BadParameter { name: name.to_string(), param: v }),
        None => Ok(()),
    };
    let one = LaurentPoly::one;
    let e = match name {
        "unlink" => {
            let m = param.unwrap_or(2);
            if m < 1 {
                return Err(CatalogError::BadParameter { name: name.into(), param: m });
            }
            let conway = if m == 1 { one() } else { LaurentPoly::zero() };
            entry(
                &format!("unlink:{m}"),
                Payload::Link(LinkDiagram::unlink(m as usize)),
                Construction,
                "crossingless diagram of m circles",
                vec![(Crossings, Int(0)), (Conway, Poly(conway))],
            )
        }
        "hopf" => {
            refuse(param)?;
            entry(
                "hopf",
                Payload::Link(TangleDiagram::hopf_power(1).numerator()),
                Construction,
                "2-crossing diagram, positively linked",
                vec![(Crossings, Int(2)), (Lk, Int(1)), (Conway, Poly(z(1))), (BetaTilde, Int(0))],
            )
        }
        "H_n" => {
            let n = need(param)?;
            entry(
                &format!("H_n:{n}"),
                Payload::Link(TangleDiagram::hopf_power(n).numerator()),
                Construction,
                "numerator closure of n full twists of two parallel strands",
                vec![(Crossings, Int(2 * n.abs())), (Lk, Int(n))],
            )
        }
        "H_n-string" => {
            let n = need(param)?;
            entry(
                &format!("H_n-string:{n}"),
                Payload::StringLink(TangleDiagram::hopf_power(n)),
                Construction,
                "n full twists of two parallel strands",
                vec![(Crossings, Int(2 * n.abs())), (Lk, Int(n))],
            )
        }
        "W" => {
            refuse(param)?;
            entry(
                "W",
                Payload::StringLink(w()),
                Construction,
                "rational tangle 1/(1 + 1/2)",
                vec![(Crossings, Int(3)), (Lk, Int(1)), (Numer0Beta, Int(1))],
            )
        }
        "W-inverse" => {
            refuse(param)?;
            entry(
                "W-inverse",
                Payload::StringLink(w_inverse()),
                Construction,
                "rational tangle 1/(2 + 1/2)",
                vec![(Crossings, Int(4)), (Lk, Int(-1))],
            )
        }
        "W-bar" => {
            refuse(param)?;
            entry(
                "W-bar",
                Payload::StringLink(w_bar()),
                Construction,
                "rho of W-inverse",
                vec![(Crossings, Int(4)), (Lk, Int(1)), (Numer0Beta, Int(-1))],
            )
        }
        "whitehead-link" => {
            refuse(param)?;
            entry(
                "whitehead-link",
                Payload::Link(w().numer_l(0)),
                Construction,
                "numer_0 of W",
                vec![(Lk, Int(0)), (Conway, Poly(z(3))), (Beta, Int(1)), (BetaTilde, Int(1))],
            )
        }
        "whitehead-link-bar" => {
            refuse(param)?;
            entry(
                "whitehead-link-bar",
                Payload::Link(w_bar().numer_l(0)),
                Construction,
                "numer_0 of W-bar, the mirror image of the Whitehead link",
                vec![(Lk, Int(0)), (Conway, Poly(-z(3))), (Beta, Int(-1)), (BetaTilde, Int(-1))],
            )
        }
        "trefoil" => {
            refuse(param)?;
            entry(
                "trefoil",
                Payload::Link(w().denominator()),
                Construction,
                "denominator closure of W",
                vec![(Crossings, Int(3)), (Conway, Poly(one() + z(2)))],
            )
        }
        "W#rhoW" => {
            refuse(param)?;
            entry(
                "W#rhoW",
                Payload::StringLink(w().connect_sum(&w().rho())),
                Construction,
                "W stacked under rho W",
                vec![(Crossings, Int(6)), (Lk, Int(0)), (Numer0Beta, Int(0)), (Numer1BetaTilde, Int(-2))],
            )
        }
        "W#W-bar" | "W-bar#W" => {
            refuse(param)?;
            let (t, note) = if name == "W#W-bar" {
                (w().connect_sum(&w_bar()), "W stacked under W-bar")
            } else {
                (w_bar().connect_sum(&w()), "W-bar stacked under W")
            };
            entry(
                name,
                Payload::StringLink(t),
                Construction,
                note,
                vec![(Crossings, Int(7)), (Lk, Int(2)), (Numer0Beta, Int(0)), (Numer1BetaTilde, Int(0))],
            )
        }
        "mazur" => {
            refuse(param)?;
            entry(
                "mazur",
                Payload::Link(build::solid_torus_pattern(1, 1)?),
                Reconstructed,
                "Mazur pattern with its axis: one positive clasp, the third strand threaded over then under",
                vec![(Lk, Int(1)), (ComponentConway, Polys(vec![one(), one()])), (BetaTilde, Int(-2))],
            )
        }
        "fake-mazur" => {
            refuse(param)?;
            entry(
                "fake-mazur",
                Payload::Link(w().connect_sum(&w().rho()).numer_l(1).canonical()),
                Construction,
                "numer_1 of W#rhoW",
                vec![(Lk, Int(1)), (ComponentConway, Polys(vec![one(), one()])), (BetaTilde, Int(-2))],
            )
        }
        "whitehead-double" => {
            refuse(param)?;
            let d = whitehead_double(&whitehead_double(&w().numer_l(0), 0, 0, 1)?, 1, 0, 1)?;
            entry(
                "whitehead-double",
                Payload::Link(d),
                Reconstructed,
                "both components of the Whitehead link replaced by untwisted positive-clasp doubles",
                vec![(Lk, Int(0)), (Conway, Poly(LaurentPoly::zero())), (BetaTilde, Int(0))],
            )
        }
        "whitehead-double-twisted" => {
            refuse(param)?;
            let h = TangleDiagram::hopf_power(1).numerator();
            let d = whitehead_double(&whitehead_double(&h, 0, 1, 1)?, 1, 1, 1)?;
            let trefoil = one() + z(2);
            entry(
                "whitehead-double-twisted",
                Payload::Link(d),
                Reconstructed,
                "both components of the Hopf link replaced by positive-clasp doubles with one full twist",
                vec![
                    (Lk, Int(0)),
                    (Conway, Poly(LaurentPoly::zero())),
                    (BetaTilde, Int(0)),
                    (ComponentConway, Polys(vec![trefoil.clone(), trefoil])),
                ],
            )
        }
        "whitehead-pattern" => {
            refuse(param)?;
            let link = build::whitehead_pattern(1)?;
            let pattern = AnnularPattern::from_axis_link(&link, 1)?;
            entry(
                "whitehead-pattern",
                Payload::Annular { link, pattern },
                Construction,
                "a positive clasp closed around an axis that runs over and back under the two strands",
                vec![
                    (Lk, Int(0)),
                    (Conway, Poly(z(3))),
                    (BetaTilde, Int(1)),
                    (Eta, Poly(t_poly(&[(1, -1), (0, 2), (-1, -1)]))),
                ],
            )
        }
        "trace-whitehead" => {
            refuse(param)?;
            let payload = closed_trace(build::whitehead_pattern(1)?, &[0], "whitehead-link", "unlink:2")?;
            entry(
                "trace-whitehead",
                payload,
                Derived,
                "the clasp of whitehead-pattern switched; the end simplifies to the crossingless unlink",
                vec![
                    (TraceBetaTilde, Int(1)),
                    (TraceEta, Poly(t_poly(&[(1, -1), (0, 2), (-1, -1)]))),
                    (EndSimplifiedCrossings, Int(0)),
                ],
            )
        }
        "trace-fake-mazur" => {
            refuse(param)?;
            let start = w().connect_sum(&w().rho()).numer_l(1);
            let payload = closed_trace(start, &[2, 5], "fake-mazur", "hopf")?;
            entry(
                "trace-fake-mazur",
                payload,
                Derived,
                "both clasps of numer_1(W#rhoW) switched; the end has the Hopf link's Conway polynomial and unknotted components",
                vec![
                    (TraceBetaTilde, Int(-2)),
                    (EndLk, Int(1)),
                    (EndConway, Poly(z(1))),
                    (EndComponentConway, Polys(vec![one(), one()])),
                ],
            )
        }
        "trace-mazur" => {
            refuse(param)?;
            let payload = closed_trace(build::solid_torus_pattern(1, 1)?, &[0], "mazur", "hopf")?;
            entry(
                "trace-mazur",
                payload,
                Derived,
                "one self-crossing of the Mazur pattern switched; the end simplifies to a 2-crossing diagram",
                vec![(TraceBetaTilde, Int(-2)), (EndLk, Int(1)), (EndSimplifiedCrossings, Int(2))],
            )
        }
        "jin-W" => {
            refuse(param)?;
            entry(
                "jin-W",
                Payload::FiberedTrace { trace: jin_w(), string_link: w() },
                Construction,
                "each strand of W pulled through the other's clasp once",
                vec![
                    (Sigma, Pair(t_poly(&[(1, 1), (0, -1)]), t_poly(&[(0, 1), (1, -1)]))),
                    (SigmaAtOne, Pair(LaurentPoly::zero(), LaurentPoly::zero())),
                ],
            )
        }
        "jin-W#rhoW" => {
            refuse(param)?;
            let (f, g) = sigma_w_power_rho(1);
            entry(
                "jin-W#rhoW",
                Payload::FiberedTrace { trace: jin_w_rho_w(), string_link: w().connect_sum(&w().rho()) },
                Construction,
                "jin-W followed by its image under rho",
                vec![(Sigma, Pair(f, g)), (Kirk, Pair(LaurentPoly::zero(), LaurentPoly::zero()))],
            )
        }
        "sigma-W_n" | "sigma-W_n#rhoW_n" => {
            let n = need(param)?;
            if n < 1 {
                return Err(CatalogError::BadParameter { name: name.into(), param: n });
            }
            let (f, g) = if name == "sigma-W_n" { sigma_w_power(n) } else { sigma_w_power_rho(n) };
            entry(
                &format!("{name}:{n}"),
                Payload::Sigma(f, g),
                Formula,
                "closed form in n",
                vec![(SigmaAtOne, Pair(LaurentPoly::zero(), LaurentPoly::zero()))],
            )
        }
        _ => return Err(CatalogError::Unknown(name.to_string())),
    };
    Ok(e)
}

fn measure(payload: &Payload, check: Check, conway: &Conway) -> Result<Recorded, CatalogError> {
    use Check::*;
    use Recorded::{Int, Pair, Poly, Polys};
    let wrong = || CatalogError::Unknown(format!("{} does not apply to a {}", check.name(), payload.kind().name()));
    let components = |d: &LinkDiagram| -> Result<Recorded, CatalogError> {
        let ps = (0..d.num_components())
            .map(|i| Ok(conway.polynomial(&d.component_diagram(i)?)))
            .collect::<Result<_, CatalogError>>()?;
        Ok(Polys(ps))
    };
    let trace_end = || match payload {
        Payload::ClosedTrace { end, .. } => Ok(end),
        _ => Err(wrong()),
    };
    Ok(match check {
        Crossings => match payload {
            Payload::StringLink(t) => Int(t.crossings().len() as i64),
            _ => Int(payload.link().ok_or_else(wrong)?.num_crossings() as i64),
        },
        Lk => match payload {
            Payload::StringLink(t) => Int(t.numerator_lk()),
            _ => Int(payload.link().ok_or_else(wrong)?.lk()),
        },
        Conway => Poly(conway.polynomial(payload.link().ok_or_else(wrong)?)),
        Beta => Int(conway.sato_levine_beta(payload.link().ok_or_else(wrong)?)?),
        BetaTilde => Int(conway.beta_tilde(payload.link().ok_or_else(wrong)?)?),
        ComponentConway => components(payload.link().ok_or_else(wrong)?)?,
        Numer0Beta => Int(conway.sato_levine_beta(&payload.string_link().ok_or_else(wrong)?.numer_l(0))?),
        Numer1BetaTilde => Int(conway.beta_tilde(&payload.string_link().ok_or_else(wrong)?.numer_l(1))?),
        Eta => match payload {
            Payload::Annular { pattern, .. } => Poly(eta_unknotted(pattern)?),
            _ => return Err(wrong()),
        },
        TraceBetaTilde => Int(beta_tilde_from_trace(payload.trace().ok_or_else(wrong)?)?),
        TraceEta => Poly(eta_from_trace(payload.trace().ok_or_else(wrong)?)?),
        EndLk => Int(trace_end()?.lk()),
        EndConway => Poly(conway.polynomial(trace_end()?)),
        EndComponentConway => components(trace_end()?)?,
        EndSimplifiedCrossings => Int(trace_end()?.simplify().num_crossings() as i64),
        Sigma => {
            let (f, g) = sigma_tilde(payload.trace().ok_or_else(wrong)?)?;
            Pair(f, g)
        }
        Kirk => {
            let (f, g) = kirk_sigma(payload.trace().ok_or_else(wrong)?)?;
            Pair(f, g)
        }
        SigmaAtOne => {
            let (f, g) = match payload {
                Payload::Sigma(f, g) => (f.clone(), g.clone()),
                _ => sigma_tilde(payload.trace().ok_or_else(wrong)?)?,
            };
            Pair(LaurentPoly::constant(f.eval_at_one()), LaurentPoly::constant(g.eval_at_one()))
        }
    })
}
