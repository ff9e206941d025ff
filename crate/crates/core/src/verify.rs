//! Verification suites: randomized identities with a fixed seed, and the exact
//! statements the library exists to reproduce, run over the catalog.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::{self, Payload};
use crate::commutator::{decompose_a1, hall_witt_mod_gamma4, identity_suite, random_word, xi, xi_prime};
use crate::conway::{Conway, SkeinCache};
use crate::diagram::{LinkDiagram, TangleDiagram};
use crate::laurent::{cochran_expand, delta_map, delta_tilde_map, lattice_membership, LaurentPoly};
use crate::trace::{
    beta_tilde_from_trace, eta_from_trace, eta_unknotted, fibered_trace_from_switches, sigma_consistency_with,
    sigma_tilde, CrossingEvent, HomotopyTrace, TraceKind,
};

pub const SUITES: [&str; 6] = ["skein", "jumps", "appendix", "kernel", "dualpath", "identities"];

/// Randomized checks per property unless the caller asks otherwise.
pub const DEFAULT_CASES: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// The first failing case, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed() { "ok  " } else { "FAIL" };
            write!(f, "{tag} {}/{}: {} cases, {} failures", self.suite, c.name, c.cases, c.failures)?;
            if let Some(why) = &c.first_failure {
                write!(f, " (first: {why})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unknown suite `{0}`; expected one of skein, jumps, appendix, kernel, dualpath, identities")]
pub struct UnknownSuite(pub String);

/// Accumulates one named check.
struct Tally {
    name: String,
    cases: usize,
    failures: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn new(name: &str) -> Self {
        Tally { name: name.into(), cases: 0, failures: 0, first_failure: None }
    }

    fn record(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(case());
            }
        }
    }

    fn done(self) -> CheckResult {
        CheckResult { name: self.name, cases: self.cases, failures: self.failures, first_failure: self.first_failure }
    }
}

pub fn run_suite(name: &str, seed: u64, cases: usize) -> Result<SuiteReport, UnknownSuite> {
    let checks = match name {
        "skein" => skein(seed, cases),
        "jumps" => jumps(seed, cases),
        "appendix" => decompositions(seed, cases),
        "kernel" => kernel(),
        "dualpath" => dualpath(),
        "identities" => identities(seed, cases),
        _ => return Err(UnknownSuite(name.to_string())),
    };
    Ok(SuiteReport { suite: name.to_string(), seed, checks })
}

/// A closed braid on 3 or 4 strands with at most `max_len` crossings.
pub fn random_closed_braid(rng: &mut impl Rng, max_len: usize) -> LinkDiagram {
    let strands = rng.gen_range(3..=4usize);
    let len = rng.gen_range(1..=max_len);
    let word: Vec<i32> = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    LinkDiagram::closed_braid(strands, &word).expect("valid braid word")
}

/// A random 2-component closed braid with at least one self-crossing.
fn random_two_component(rng: &mut impl Rng, max_len: usize) -> (LinkDiagram, Vec<usize>) {
    loop {
        let d = random_closed_braid(rng, max_len);
        if d.num_components() != 2 {
            continue;
        }
        let selfs: Vec<usize> =
            d.strand_components().iter().enumerate().filter(|(_, (a, b))| a == b).map(|(i, _)| i).collect();
        if !selfs.is_empty() {
            return (d, selfs);
        }
    }
}

fn skein(seed: u64, cases: usize) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cache = SkeinCache::new();
    let c = Conway::new(&cache);
    let mut skein = Tally::new("skein identity");
    let mut order = Tally::new("base-order independence");
    let mut a1 = Tally::new("a1 = lk");
    for _ in 0..cases {
        let d = random_closed_braid(&mut rng, 12);
        let x = rng.gen_range(0..d.num_crossings());
        let sign = d.crossings()[x].sign as i64;
        let other = d.switch_crossing(x).expect("crossing exists");
        let lhs = (c.polynomial(&d) - c.polynomial(&other)).scalar_mul(sign);
        let rhs = c.polynomial(&d.smooth_crossing(x).expect("crossing exists")).shift(1);
        skein.record(lhs == rhs, || d.to_text());

        let mut ord = d.default_order();
        ord.reverse();
        let bps: Vec<u32> = d.components().iter().map(|comp| comp[rng.gen_range(0..comp.len())]).collect();
        // A fresh cache, so the reordered computation cannot reuse the first one.
        let alt = SkeinCache::new().conway_with_order(&d, &ord, &bps);
        order.record(alt == c.polynomial(&d), || d.to_text());

        let (d2, _) = random_two_component(&mut rng, 12);
        let p = c.polynomial(&d2);
        a1.record(p.coeff(1) == BigInt::from(d2.lk()) && p.coeff(0).is_zero(), || d2.to_text());
    }
    vec![skein.done(), order.done(), a1.done()]
}

fn jumps(seed: u64, cases: usize) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cache = SkeinCache::new();
    let c = Conway::new(&cache);
    let mut bt = Tally::new("beta~ jump n(l - n)");
    let mut b = Tally::new("beta jump -n^2 at lk 0");
    for _ in 0..cases {
        let (d, selfs) = random_two_component(&mut rng, 12);
        let x = selfs[rng.gen_range(0..selfs.len())];
        let (lhs, rhs) = c.jump_check_22(&d, x).expect("self-crossing of a 2-component link");
        bt.record(lhs == rhs, || format!("{} at {x}", d.to_text()));
        if d.lk() == 0 {
            let i = d.strand_components()[x].0;
            let (n, _) = d.lobe_linking_numbers(x, 1 - i).expect("self-crossing");
            let other = d.switch_crossing(x).expect("crossing exists");
            let (plus, minus) = if d.crossings()[x].sign > 0 { (&d, &other) } else { (&other, &d) };
            let jump = c.sato_levine_beta(plus).expect("lk 0") - c.sato_levine_beta(minus).expect("lk 0");
            b.record(jump == -n * n, || format!("{} at {x}", d.to_text()));
        }
    }
    vec![bt.done(), b.done()]
}

/// `(n, l)` pairs for the commutator regressions: every pair in `-3..=3`.
pub fn decomposition_grid() -> Vec<(i64, i64)> {
    (-3..=3).flat_map(|n| (-3..=3).map(move |l| (n, l))).collect()
}

fn decompositions(seed: u64, cases: usize) -> Vec<CheckResult> {
    let mut xp = Tally::new("decompose_A1(xi') = (0,0,0,0,0,0, n(l-n), -2n(l-n))");
    let mut x = Tally::new("decompose_A1(xi) = (0,0,0,0,0,0, -n^2, 2n^2)");
    for (n, l) in decomposition_grid() {
        let e = decompose_a1(&xi_prime(n, l)).e;
        let m = n * (l - n);
        xp.record(e == [0, 0, 0, 0, 0, 0, m, -2 * m], || format!("(n, l) = ({n}, {l}): {e:?}"));
    }
    for n in -3..=3 {
        let e = decompose_a1(&xi(n)).e;
        x.record(e == [0, 0, 0, 0, 0, 0, -n * n, 2 * n * n], || format!("n = {n}: {e:?}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hw = Tally::new("Hall-Witt mod gamma_4");
    for _ in 0..cases {
        let (a, b, c) = (random_word(&mut rng, 3, 5), random_word(&mut rng, 3, 5), random_word(&mut rng, 3, 5));
        hw.record(hall_witt_mod_gamma4(&a, &b, &c), || format!("{a} {b} {c}"));
    }
    vec![xp.done(), x.done(), hw.done()]
}

/// Every σ̃ pair the catalog knows: both fibered traces and the closed forms at `n = 1..=4`.
pub fn catalog_sigma_data() -> Vec<(String, LaurentPoly, LaurentPoly)> {
    let mut out = Vec::new();
    for name in ["jin-W", "jin-W#rhoW"] {
        let e = catalog::get(name).expect("catalog entry");
        let (f, g) = sigma_tilde(e.payload.trace().expect("trace")).expect("fibered");
        out.push((name.to_string(), f, g));
    }
    for n in 1..=4 {
        for base in ["sigma-W_n", "sigma-W_n#rhoW_n"] {
            let e = catalog::get_with(base, Some(n)).expect("catalog entry");
            let Payload::Sigma(f, g) = e.payload else { unreachable!("sigma entry") };
            out.push((e.name, f, g));
        }
    }
    out
}

/// Coefficients of `(f, g)` on `t^-4 .. t^4`, `f` first.
pub fn kernel_window(f: &LaurentPoly, g: &LaurentPoly) -> Option<Vec<BigInt>> {
    let mut v = f.window(-4, 4)?;
    v.extend(g.window(-4, 4)?);
    Some(v)
}

/// `(φf, φg, (f' + g')(1))`, whose kernel contains every σ̃.
pub fn phi_kernel_image(f: &LaurentPoly, g: &LaurentPoly) -> (LaurentPoly, LaurentPoly, BigInt) {
    (f.phi_fold(), g.phi_fold(), f.derivative_at_one(1) + g.derivative_at_one(1))
}

fn in_phi_kernel(f: &LaurentPoly, g: &LaurentPoly) -> bool {
    let (a, b, c) = phi_kernel_image(f, g);
    a.is_zero() && b.is_zero() && c.is_zero()
}

fn kernel() -> Vec<CheckResult> {
    let data = catalog_sigma_data();
    let mut dt = Tally::new("delta~ vanishes on sigma~");
    let mut d = Tally::new("delta vanishes on phi-folded sigma");
    for (name, f, g) in &data {
        let v = delta_tilde_map(f, g);
        let zero = BigInt::zero();
        dt.record(v.0 == zero && v.1 == zero && v.2 == zero && v.3 == zero, || format!("{name}: {v:?}"));
        let folded = delta_map(&f.phi_fold(), &g.phi_fold());
        d.record(folded.as_ref().is_ok_and(|v| v.0.is_zero() && v.1.is_zero() && v.2.is_zero()), || {
            format!("{name}: {folded:?}")
        });
    }
    let generators: Vec<Vec<BigInt>> = (1..=4)
        .map(|n| {
            let (f, g) = catalog::sigma_w_power_rho(n);
            kernel_window(&f, &g).expect("fits the window")
        })
        .collect();
    let t = |terms: &[(i64, i64)]| LaurentPoly::from_terms(terms.iter().copied());
    // The n = 1 and n = 2 generators added, written out by hand.
    let (f, g) = (t(&[(1, 3), (-1, -3)]), t(&[(-2, 1), (2, -1), (-1, 1), (1, -1)]));
    let mut member = Tally::new("hand-built kernel element lies in the W#rhoW span");
    let target = kernel_window(&f, &g).expect("fits the window");
    member.record(in_phi_kernel(&f, &g), || "not in the kernel".into());
    member.record(lattice_membership(&generators, &target) == Ok(true), || "not in the span".into());
    // A kernel element the W#rhoW family alone cannot reach.
    let (f, g) = (t(&[(2, 1), (-2, -1)]), t(&[(-1, 2), (1, -2)]));
    let mut outside = Tally::new("(t^2 - t^-2, 2(t^-1 - t)) is in the kernel but outside that span");
    outside.record(in_phi_kernel(&f, &g), || "not in the kernel".into());
    let target = kernel_window(&f, &g).expect("fits the window");
    outside.record(lattice_membership(&generators, &target) == Ok(false), || "unexpectedly in the span".into());
    vec![dt.done(), d.done(), member.done(), outside.done()]
}

/// The closed traces of the catalog.
pub fn catalog_closed_traces() -> Vec<catalog::CatalogEntry> {
    ["trace-whitehead", "trace-fake-mazur", "trace-mazur"]
        .iter()
        .map(|n| catalog::get(n).expect("catalog entry"))
        .collect()
}

fn dualpath() -> Vec<CheckResult> {
    let c = Conway::new(catalog::shared_cache());
    let mut bt = Tally::new("beta~ from trace = beta~ from Conway");
    let mut eta = Tally::new("eta from trace vanishes at 1 and is symmetric");
    for e in catalog_closed_traces() {
        let Payload::ClosedTrace { trace, start, .. } = &e.payload else { unreachable!("closed trace") };
        let from_trace = beta_tilde_from_trace(trace);
        let from_conway = c.beta_tilde(start);
        bt.record(matches!((&from_trace, &from_conway), (Ok(a), Ok(b)) if a == b), || {
            format!("{}: {from_trace:?} vs {from_conway:?}", e.name)
        });
        if let Ok(p) = eta_from_trace(trace) {
            eta.record(p.eval_at_one().is_zero() && p.is_symmetric(), || format!("{}: {p}", e.name));
        }
    }
    let pattern = catalog::get("whitehead-pattern").expect("catalog entry");
    let Payload::Annular { pattern, .. } = &pattern.payload else { unreachable!("annular entry") };
    let tr = catalog::get("trace-whitehead").expect("catalog entry");
    let from_trace = eta_from_trace(tr.payload.trace().expect("trace")).expect("ends on the unlink");
    let mut lift = Tally::new("eta from the lift = eta from the trace");
    let lifted = eta_unknotted(pattern).expect("valid pattern");
    lift.record(lifted == from_trace, || format!("{lifted} vs {from_trace}"));
    let mut cochran = Tally::new("|beta^1| = beta of the Whitehead link");
    let beta = c.sato_levine_beta(catalog::get("whitehead-link").expect("catalog entry").payload.link().unwrap());
    let b1 = cochran_expand(&from_trace).map(|s| s.coeff(1));
    cochran.record(matches!((&b1, &beta), (Ok(a), Ok(b)) if a.magnitude() == &BigInt::from(*b).magnitude().clone()), || {
        format!("{b1:?} vs {beta:?}")
    });
    vec![bt.done(), eta.done(), lift.done(), cochran.done(), sigma_products()]
}

/// σ̃ against the Conway route on stacks of one or two of `W`, `ρW` and their mirrors,
/// closed with linking number 0 and trivialized by switching every clasp.
fn sigma_products() -> CheckResult {
    let cache = catalog::shared_cache();
    let w = TangleDiagram::rational_tangle(&[1, 2]).expect("valid continued fraction");
    let base = [w.clone(), w.rho(), w.mirror(), w.rho().mirror()];
    let mut tally = Tally::new("sigma~ consistency on products of W pieces");
    let stacks: Vec<Vec<usize>> = (0..4).map(|a| vec![a]).chain((0..16).map(|k| vec![k / 4, k % 4])).collect();
    for pieces in stacks {
        let mut t = TangleDiagram::trivial();
        let mut clasps = Vec::new();
        for &k in &pieces {
            clasps.push(t.crossings().len() + 2);
            t = t.connect_sum(&base[k]);
        }
        let t = t.connect_sum(&TangleDiagram::hopf_power(-t.numerator_lk()));
        let ok = fibered_trace_from_switches(&t, &clasps, "L", "trivial")
            .and_then(|(tr, _)| sigma_consistency_with(&tr, &t, cache))
            .is_ok_and(|c| c.holds());
        tally.record(ok, || format!("{pieces:?}"));
    }
    tally.done()
}

fn random_poly(rng: &mut impl Rng) -> LaurentPoly {
    let k = rng.gen_range(0..5);
    LaurentPoly::from_terms((0..k).map(|_| (rng.gen_range(-5..=5i64), rng.gen_range(-9..=9i64))))
}

fn identities(seed: u64, cases: usize) -> Vec<CheckResult> {
    let mut out: Vec<CheckResult> = identity_suite(seed, cases)
        .into_iter()
        .map(|r| CheckResult { name: r.name.to_string(), cases: r.cases, failures: r.failures, first_failure: None })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut ring = Tally::new("Laurent ring laws");
    let mut hom = Tally::new("t -> 1/t, evaluation at 1 and phi-fold are homomorphisms");
    let mut leibniz = Tally::new("Leibniz rule");
    for _ in 0..cases {
        let (a, b, c) = (random_poly(&mut rng), random_poly(&mut rng), random_poly(&mut rng));
        let laws = (&a + &b) + c.clone() == &a + &(&b + &c)
            && &a * &b == &b * &a
            && &(&a * &b) * &c == &a * &(&b * &c)
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && &a - &a == LaurentPoly::zero()
            && &a * &LaurentPoly::one() == a;
        ring.record(laws, || format!("{a} | {b} | {c}"));
        let homs = (&a * &b).reflect() == &a.reflect() * &b.reflect()
            && (&a * &b).eval_at_one() == a.eval_at_one() * b.eval_at_one()
            && (&a + &b).phi_fold() == &a.phi_fold() + &b.phi_fold();
        hom.record(homs, || format!("{a} | {b}"));
        leibniz.record((&a * &b).derivative() == &(&a.derivative() * &b) + &(&a * &b.derivative()), || {
            format!("{a} | {b}")
        });
    }
    out.extend([ring.done(), hom.done(), leibniz.done()]);
    let mut even = Tally::new("sigma~''(1) is even");
    for _ in 0..cases {
        let k = rng.gen_range(0..8);
        let events = (0..k)
            .map(|_| CrossingEvent::fibered(rng.gen_range(0..2), if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(-6..=6)))
            .collect();
        let tr = HomotopyTrace::new(TraceKind::FiberedStringLink, "random", "trivial", events).expect("valid");
        let (f, g) = sigma_tilde(&tr).expect("fibered");
        let two = BigInt::from(2);
        let ok = (f.derivative_at_one(2) % &two).is_zero() && (g.derivative_at_one(2) % &two).is_zero();
        even.record(ok, || tr.to_jsonl());
    }
    out.push(even.done());
    out
}
