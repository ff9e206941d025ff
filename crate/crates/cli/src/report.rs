//! Invariant reports: an ordered list of named values, each tagged with the route that
//! computed it, so two routes to the same invariant show up side by side.

use std::fmt::{self, Write as _};

use qlink::catalog::{self, CatalogEntry, Payload};
use qlink::conway::{Conway, SkeinCache};
use qlink::laurent::{delta_tilde_map, LaurentPoly};
use qlink::milnor::{congruence_check_with, mu_bar};
use qlink::trace::{
    beta_tilde_change, beta_tilde_from_trace, classify_events, eta_from_trace, eta_unknotted, hudson_obstruction,
    kirk_sigma, sigma_tilde, HomotopyTrace, TraceKind,
};
use qlink::{LinkDiagram, TangleDiagram};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Diagram,
    Polynomial,
    Trace,
    Eta,
    MuBar,
}

impl Route {
    fn name(self) -> &'static str {
        match self {
            Route::Diagram => "diagram",
            Route::Polynomial => "polynomial",
            Route::Trace => "trace",
            Route::Eta => "eta",
            Route::MuBar => "mu-bar",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Bool(bool),
    Residue { value: i64, modulus: i64 },
    Unavailable { error: String },
    /// Polynomials and other rendered values.
    Text(String),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Residue { value, modulus: 0 } => write!(f, "{value}"),
            Value::Residue { value, modulus } => write!(f, "{value} (mod {modulus})"),
            Value::Unavailable { error } => write!(f, "n/a: {error}"),
            Value::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariant {
    pub name: String,
    pub route: Route,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub input: String,
    /// SHA-256 of the input's serialized form.
    pub sha256: String,
    pub kind: String,
    pub invariants: Vec<Invariant>,
}

impl InvariantReport {
    fn new(input: &str, serialized: &str, kind: &str) -> Self {
        let sha256 = format!("{:x}", Sha256::digest(serialized.as_bytes()));
        InvariantReport { input: input.to_string(), sha256, kind: kind.to_string(), invariants: Vec::new() }
    }

    fn push(&mut self, name: &str, route: Route, value: Value) {
        self.invariants.push(Invariant { name: name.to_string(), route, value });
    }

    fn push_result<T, E: fmt::Display>(&mut self, name: &str, route: Route, r: Result<T, E>, f: impl FnOnce(T) -> Value) {
        let v = match r {
            Ok(x) => f(x),
            Err(e) => Value::Unavailable { error: e.to_string() },
        };
        self.push(name, route, v);
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} [{}] sha256:{}\n", self.input, self.kind, &self.sha256[..16]);
        let width = self.invariants.iter().map(|i| i.name.len()).max().unwrap_or(0);
        for i in &self.invariants {
            let _ = writeln!(out, "  {:width$}  {:<11} {}", i.name, format!("[{}]", i.route.name()), i.value);
        }
        out
    }
}

fn poly(p: &LaurentPoly, var: &str) -> Value {
    Value::Text(p.display_with(var))
}

fn pair(f: &LaurentPoly, g: &LaurentPoly) -> Value {
    Value::Text(format!("({}, {})", f.display_with("t"), g.display_with("t")))
}

fn residue((value, modulus): (i128, i128)) -> Value {
    match (i64::try_from(value), i64::try_from(modulus)) {
        (Ok(value), Ok(modulus)) => Value::Residue { value, modulus },
        _ => Value::Text(format!("{value} (mod {modulus})")),
    }
}

pub fn link_report(input: &str, d: &LinkDiagram, cache: &SkeinCache) -> InvariantReport {
    use Route::*;
    let mut r = InvariantReport::new(input, &d.canonical().to_text(), "link");
    let c = Conway::new(cache);
    let m = d.num_components();
    r.push("components", Diagram, Value::Int(m as i64));
    r.push("crossings", Diagram, Value::Int(d.num_crossings() as i64));
    if m == 2 {
        r.push("lk", Diagram, Value::Int(d.lk()));
    } else {
        for i in 0..m {
            for j in i + 1..m {
                r.push(&format!("lk({},{})", i + 1, j + 1), Diagram, Value::Int(d.linking_number(i, j).unwrap_or(0)));
            }
        }
    }
    let nabla = c.polynomial(d);
    r.push("conway", Polynomial, poly(&nabla, "z"));
    for k in 1..=3 {
        let a = nabla.coeff(k);
        let v = a.to_i64().map_or_else(|| Value::Text(a.to_string()), Value::Int);
        r.push(&format!("a{k}"), Polynomial, v);
    }
    if m == 2 {
        r.push_result("beta", Polynomial, c.sato_levine_beta(d), Value::Int);
        r.push_result("beta_tilde", Polynomial, c.beta_tilde(d), Value::Int);
        r.push_result("mu(12)", MuBar, mu_bar(d, &[1, 2]), residue);
        r.push_result("mu(1122)", MuBar, mu_bar(d, &[1, 1, 2, 2]), residue);
        r.push_result("congruence_check", MuBar, congruence_check_with(d, cache), Value::Bool);
    }
    r
}

pub fn tangle_report(input: &str, t: &TangleDiagram, cache: &SkeinCache) -> InvariantReport {
    use Route::*;
    let mut r = InvariantReport::new(input, &t.canonical().to_text(), "string-link");
    let c = Conway::new(cache);
    r.push("crossings", Diagram, Value::Int(t.crossings().len() as i64));
    r.push("numer_lk", Diagram, Value::Int(t.numerator_lk()));
    r.push("numer0.conway", Polynomial, poly(&c.polynomial(&t.numer_l(0)), "z"));
    r.push_result("numer0.beta", Polynomial, c.sato_levine_beta(&t.numer_l(0)), Value::Int);
    r.push_result("numer1.beta_tilde", Polynomial, c.beta_tilde(&t.numer_l(1)), Value::Int);
    r
}

pub fn trace_report(input: &str, tr: &HomotopyTrace) -> InvariantReport {
    use Route::*;
    let mut r = InvariantReport::new(input, &tr.to_jsonl(), tr.kind.name());
    r.push("start", Trace, Value::Text(tr.start.clone()));
    r.push("end", Trace, Value::Text(tr.end.clone()));
    r.push("events", Trace, Value::Int(tr.events.len() as i64));
    match tr.kind {
        TraceKind::ClosedLink => {
            r.push_result("beta_tilde_change", Trace, beta_tilde_change(tr), Value::Int);
            r.push_result("beta_tilde", Trace, beta_tilde_from_trace(tr), Value::Int);
            r.push_result("eta", Trace, eta_from_trace(tr), |p| poly(&p, "t"));
            r.push_result("classes", Trace, classify_events(tr), |cs| {
                Value::Text(cs.iter().map(|c| c.name()).collect::<Vec<_>>().join(","))
            });
        }
        TraceKind::FiberedStringLink => match sigma_tilde(tr) {
            Ok((f, g)) => {
                r.push("sigma_tilde", Trace, pair(&f, &g));
                if let Ok((kf, kg)) = kirk_sigma(tr) {
                    r.push("kirk_sigma", Trace, pair(&kf, &kg));
                }
                for k in 0..2 {
                    r.push_result(&format!("hudson({})", k + 1), Trace, hudson_obstruction(tr, k), |v| Value::Residue {
                        value: v as i64,
                        modulus: 2,
                    });
                }
                let d = delta_tilde_map(&f, &g);
                r.push("delta_tilde", Polynomial, Value::Text(format!("({}, {}, {}, {})", d.0, d.1, d.2, d.3)));
            }
            Err(e) => r.push("sigma_tilde", Trace, Value::Unavailable { error: e.to_string() }),
        },
    }
    r
}

/// Reports a catalog entry; links also get the routes that only the catalog can supply.
pub fn entry_report(e: &CatalogEntry, cache: &SkeinCache) -> InvariantReport {
    match &e.payload {
        Payload::Link(d) => {
            let mut r = link_report(&e.name, d, cache);
            // A catalog trace starting here gives a second route to beta~.
            let trace_name = format!("trace-{}", e.name.trim_end_matches("-link"));
            if let Ok(t) = catalog::get(&trace_name) {
                let tr = t.payload.trace().expect("trace entry");
                r.push_result("beta_tilde", Route::Trace, beta_tilde_from_trace(tr), Value::Int);
                if d.lk() == 0 {
                    r.push_result("eta", Route::Trace, eta_from_trace(tr), |p| poly(&p, "t"));
                }
            }
            r
        }
        Payload::Annular { link, pattern } => {
            let mut r = link_report(&e.name, link, cache);
            r.push_result("eta", Route::Eta, eta_unknotted(pattern), |p| poly(&p, "t"));
            r
        }
        Payload::StringLink(t) => tangle_report(&e.name, t, cache),
        Payload::ClosedTrace { trace, .. } | Payload::FiberedTrace { trace, .. } => trace_report(&e.name, trace),
        Payload::Sigma(f, g) => {
            let mut r = InvariantReport::new(&e.name, &e.export(), "sigma-data");
            r.push("sigma_tilde", Route::Trace, pair(f, g));
            r.push("kirk_sigma", Route::Trace, pair(&f.phi_fold(), &g.phi_fold()));
            let d = delta_tilde_map(f, g);
            r.push("delta_tilde", Route::Polynomial, Value::Text(format!("({}, {}, {}, {})", d.0, d.1, d.2, d.3)));
            r
        }
    }
}
