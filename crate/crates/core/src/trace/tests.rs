use proptest::prelude::*;

use super::*;
use crate::conway::Conway;

fn p(terms: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().copied())
}

fn closed(start: &str, end: &str, events: Vec<CrossingEvent>) -> HomotopyTrace {
    HomotopyTrace::new(TraceKind::ClosedLink, start, end, events).unwrap()
}

fn w() -> TangleDiagram {
    TangleDiagram::rational_tangle(&[1, 2]).unwrap()
}

#[test]
fn jump_examples() {
    let e = |n, m| CrossingEvent::closed(0, 1, &[(1, n, m)]);
    assert_eq!(beta_tilde_jump(&e(0, 3)).unwrap(), 0);
    assert_eq!(beta_tilde_jump(&e(1, -1)).unwrap(), -1);
    assert_eq!(beta_jump(&e(1, -1)).unwrap(), -1);
    assert_eq!(beta_tilde_jump(&e(2, 1)).unwrap(), 2);
    assert_eq!(beta_tilde_jump(&e(2, 3)).unwrap(), 6);
    assert_eq!(beta_jump(&e(2, 3)).unwrap(), -4);
}

#[test]
fn empty_trace_is_the_anchor_value() {
    let tr = closed("unlink:2", "unlink:2", vec![]);
    assert_eq!(beta_tilde_from_trace(&tr).unwrap(), 0);
    assert!(eta_from_trace(&tr).unwrap().is_zero());
}

#[test]
fn signs_weight_the_jumps() {
    let tr = closed(
        "x",
        "hopf",
        vec![CrossingEvent::closed(0, 1, &[(1, 2, -1)]), CrossingEvent::closed(1, -1, &[(0, 3, -2)])],
    );
    assert_eq!(beta_tilde_from_trace(&tr).unwrap(), -2 + 6);
    assert_eq!(tr.linking_number(), 1);
}

#[test]
fn eta_jumps() {
    let e = |s| CrossingEvent::closed(0, 1, &[(1, s, -s)]);
    assert!(eta_jump(&e(0)).unwrap().is_zero());
    assert_eq!(eta_jump(&e(2)).unwrap(), p(&[(2, 1), (-2, 1), (0, -2)]));
    assert_eq!(eta_jump(&e(-2)).unwrap(), eta_jump(&e(2)).unwrap());
}

#[test]
fn eta_is_additive_under_concatenation() {
    let a = closed("a", "b", vec![CrossingEvent::closed(0, 1, &[(1, 1, -1)])]);
    let b = closed("b", "unlink:2", vec![CrossingEvent::closed(0, -1, &[(1, 2, -2)])]);
    let ab = a.then(&b).unwrap();
    assert_eq!(eta_from_trace(&ab).unwrap(), eta_change(&a).unwrap() + eta_change(&b).unwrap());
    assert!(matches!(b.then(&a), Err(TraceError::Concat(..))));
}

#[test]
fn eta_needs_the_first_component_and_zero_linking() {
    let off = closed("a", "unlink:2", vec![CrossingEvent::closed(1, 1, &[(0, 1, -1)])]);
    assert!(matches!(eta_from_trace(&off), Err(TraceError::OffFirstComponent(0))));
    let linked = closed("a", "unlink:2", vec![CrossingEvent::closed(0, 1, &[(1, 1, 0)])]);
    assert!(matches!(eta_from_trace(&linked), Err(TraceError::NonzeroLinking(1))));
    let not_anchor = closed("a", "b", vec![]);
    assert!(matches!(eta_from_trace(&not_anchor), Err(TraceError::NotAnchor(_))));
    assert!(matches!(beta_tilde_from_trace(&not_anchor), Err(TraceError::NotAnchor(_))));
}

#[test]
fn validation_errors() {
    let bad_sign = HomotopyTrace::new(TraceKind::ClosedLink, "a", "b", vec![CrossingEvent::closed(0, 2, &[(1, 0, 0)])]);
    assert!(matches!(bad_sign, Err(TraceError::Sign(0))));
    let lobe_sum = HomotopyTrace::new(
        TraceKind::ClosedLink,
        "a",
        "b",
        vec![CrossingEvent::closed(0, 1, &[(1, 1, 0)]), CrossingEvent::closed(0, 1, &[(1, 1, 1)])],
    );
    assert!(matches!(lobe_sum, Err(TraceError::LobeSum { event: 1, expected: 1, found: 2, .. })));
    let self_lobe = HomotopyTrace::new(TraceKind::ClosedLink, "a", "b", vec![CrossingEvent::closed(0, 1, &[(0, 1, 0)])]);
    assert!(matches!(self_lobe, Err(TraceError::SelfLobe(0))));
    let mixed = HomotopyTrace::new(TraceKind::ClosedLink, "a", "b", vec![CrossingEvent::fibered(0, 1, 1)]);
    assert!(matches!(mixed, Err(TraceError::EventKind { event: 0, .. })));
    let strand = HomotopyTrace::new(TraceKind::FiberedStringLink, "a", "b", vec![CrossingEvent::fibered(2, 1, 1)]);
    assert!(matches!(strand, Err(TraceError::Component { event: 0, component: 2 })));
    let three = closed("a", "hopf", vec![CrossingEvent::closed(0, 1, &[(1, 1, 0), (2, 0, 0)])]);
    assert!(matches!(beta_tilde_from_trace(&three), Err(TraceError::ComponentCount(3))));
}

#[test]
fn jsonl_parse_errors_name_the_line() {
    assert!(matches!(HomotopyTrace::from_jsonl(""), Err(TraceError::MissingHeader)));
    let text = "{\"kind\":\"closed-link\",\"start\":\"a\",\"end\":\"b\"}\n\n{\"component\":0,\"sign\":1}\n";
    assert!(matches!(HomotopyTrace::from_jsonl(text), Err(TraceError::Parse { line: 3, .. })));
    let kind = "{\"kind\":\"open\",\"start\":\"a\",\"end\":\"b\"}\n";
    assert!(matches!(HomotopyTrace::from_jsonl(kind), Err(TraceError::Parse { line: 1, .. })));
    let extra = "{\"kind\":\"closed-link\",\"start\":\"a\",\"end\":\"b\",\"x\":1}\n";
    assert!(matches!(HomotopyTrace::from_jsonl(extra), Err(TraceError::Parse { line: 1, .. })));
}

#[test]
fn jsonl_format() {
    let tr = closed("whitehead-link", "unlink:2", vec![CrossingEvent::closed(0, -1, &[(1, -1, 1)])]);
    assert_eq!(
        tr.to_jsonl(),
        "{\"kind\":\"closed-link\",\"start\":\"whitehead-link\",\"end\":\"unlink:2\"}\n\
         {\"component\":0,\"sign\":-1,\"lobes\":{\"1\":[-1,1]}}\n"
    );
}

fn jin_w() -> HomotopyTrace {
    HomotopyTrace::new(
        TraceKind::FiberedStringLink,
        "W",
        "trivial",
        vec![CrossingEvent::fibered(0, 1, 1), CrossingEvent::fibered(1, -1, 1)],
    )
    .unwrap()
}

fn jin_w_rho_w() -> HomotopyTrace {
    let mut tr = jin_w();
    tr.events.extend(jin_w().rho().unwrap().events);
    tr
}

#[test]
fn sigma_of_jin_w() {
    let one_minus_t = p(&[(0, 1), (1, -1)]);
    assert_eq!(sigma_tilde(&jin_w()).unwrap(), (p(&[(1, 1), (0, -1)]), one_minus_t));
    assert_eq!(hudson_obstruction(&jin_w(), 0).unwrap(), 1);
    assert_eq!(hudson_obstruction(&jin_w(), 1).unwrap(), 1);
}

#[test]
fn sigma_of_jin_w_rho_w_and_its_fold() {
    let (f, g) = sigma_tilde(&jin_w_rho_w()).unwrap();
    assert_eq!(f, p(&[(1, 1), (-1, -1)]));
    assert_eq!(g, p(&[(-1, 1), (1, -1)]));
    let (kf, kg) = kirk_sigma(&jin_w_rho_w()).unwrap();
    assert!(kf.is_zero() && kg.is_zero());
    assert_eq!(hudson_obstruction(&jin_w_rho_w(), 0).unwrap(), 0);
}

#[test]
fn rho_and_reverse() {
    let r = jin_w().rho().unwrap();
    assert_eq!((r.start.as_str(), r.end.as_str()), ("rhoW", "trivial"));
    assert_eq!(r.events[0], CrossingEvent::fibered(0, -1, -1));
    assert_eq!(r.rho().unwrap().events, jin_w().events);
    let back = jin_w().reverse();
    assert_eq!((back.start.as_str(), back.end.as_str()), ("trivial", "W"));
    assert_eq!(back.events[0], CrossingEvent::fibered(1, 1, 1));
    assert_eq!(back.reverse(), jin_w());
    let (f, g) = sigma_tilde(&back).unwrap();
    let (f0, g0) = sigma_tilde(&jin_w()).unwrap();
    assert_eq!((f + f0, g + g0), (LaurentPoly::zero(), LaurentPoly::zero()));
}

#[test]
fn second_derivative_of_sigma_is_even() {
    let tr = jin_w_rho_w();
    for comp in 0..2 {
        let (f, g) = sigma_tilde(&tr).unwrap();
        let s = if comp == 0 { f } else { g };
        let d2: num_bigint::BigInt = s.derivative_at_one(2);
        assert_eq!(d2 % 2, 0.into());
    }
}

#[test]
fn classification() {
    let tr = closed(
        "a",
        "b",
        vec![
            CrossingEvent::closed(0, 1, &[(1, 0, 1)]),
            CrossingEvent::closed(0, 1, &[(1, 1, 0)]),
            CrossingEvent::closed(0, 1, &[(1, 2, -1)]),
        ],
    );
    let classes = classify_events(&tr).unwrap();
    assert_eq!(classes, vec![EventClass::Weak1Quasi, EventClass::Weak1Quasi, EventClass::LinkHomotopy]);
    assert!(matches!(classify_events(&jin_w()), Err(TraceError::WrongKind(TraceKind::ClosedLink))));
}

#[test]
fn switching_the_whitehead_clasp() {
    let d = w().numer_l(0);
    let (tr, end) = closed_trace_from_switches(&d, &[2], "whitehead-link", "unlink:2").unwrap();
    assert_eq!(tr.events, vec![CrossingEvent::closed(0, -1, &[(1, -1, 1)])]);
    assert_eq!(beta_tilde_from_trace(&tr).unwrap(), 1);
    assert_eq!(eta_from_trace(&tr).unwrap(), p(&[(1, -1), (0, 2), (-1, -1)]));
    assert_eq!(end.lk(), 0);
    assert!(matches!(
        closed_trace_from_switches(&d, &[0], "a", "b"),
        Err(TraceError::Diagram(DiagramError::NotSelfCrossing(0)))
    ));
}

#[test]
fn consistency_on_w_with_an_unlinked_closure() {
    // W # H_-1 has numer_lk 0; switching the + strand's clasp leaves the trivial string link.
    let w0 = w().connect_sum(&TangleDiagram::hopf_power(-1));
    let (tr, end) = fibered_trace_from_switches(&w0, &[2], "W0", "trivial").unwrap();
    assert_eq!(tr.events, vec![CrossingEvent::fibered(0, -1, 1)]);
    assert!(end.numerator().simplify().num_crossings() <= end.crossings().len());
    let c = sigma_consistency(&tr, &w0).unwrap();
    assert!(c.holds(), "{c:?}");
}

#[test]
fn consistency_on_w_rho_w_with_both_clasps() {
    let t = w().connect_sum(&w().rho());
    let (tr, _) = fibered_trace_from_switches(&t, &[2, 5], "W#rhoW", "trivial").unwrap();
    let c = sigma_consistency(&tr, &t).unwrap();
    assert!(c.holds(), "{c:?}");
    assert!(matches!(sigma_consistency(&jin_w().reverse(), &w()), Err(TraceError::NotAnchor(_))));
}

#[test]
fn annular_whitehead_pattern() {
    let link = crate::catalog::get("whitehead-pattern").unwrap();
    let d = link.payload.link().unwrap();
    let pat = AnnularPattern::from_axis_link(d, 1).unwrap();
    assert_eq!(pat.knot().num_components(), 1);
    assert_eq!(pat.lift_linking_numbers().unwrap().into_iter().collect::<Vec<_>>(), vec![(1, -1)]);
    assert!(AnnularPattern::from_axis_link(d, 0).is_err());
}

#[test]
fn annular_levels_must_close_up() {
    let knot = LinkDiagram::unlink(1);
    assert!(AnnularPattern::from_shifts(knot.clone(), BTreeMap::new()).is_ok());
    let hopf = TangleDiagram::hopf_power(1).numerator();
    assert!(matches!(AnnularPattern::from_shifts(hopf, BTreeMap::new()), Err(TraceError::ComponentCount(2))));
}

fn arb_closed_event() -> impl Strategy<Value = CrossingEvent> {
    (0usize..2, prop::bool::ANY, -4i64..5).prop_map(|(c, pos, n)| CrossingEvent::closed(c, if pos { 1 } else { -1 }, &[(1 - c, n, 2 - n)]))
}

fn arb_fibered_event() -> impl Strategy<Value = CrossingEvent> {
    (0usize..2, prop::bool::ANY, -4i64..5).prop_map(|(c, pos, l)| CrossingEvent::fibered(c, if pos { 1 } else { -1 }, l))
}

proptest! {
    #[test]
    fn closed_round_trip(events in prop::collection::vec(arb_closed_event(), 0..8)) {
        let tr = closed("start", "H_n:2", events);
        prop_assert_eq!(HomotopyTrace::from_jsonl(&tr.to_jsonl()).unwrap(), tr);
    }

    #[test]
    fn fibered_round_trip(events in prop::collection::vec(arb_fibered_event(), 0..8)) {
        let tr = HomotopyTrace::new(TraceKind::FiberedStringLink, "s", "trivial", events).unwrap();
        prop_assert_eq!(HomotopyTrace::from_jsonl(&tr.to_jsonl()).unwrap(), tr);
    }

    #[test]
    fn sigma_vanishes_at_one_and_rho_reflects_it(events in prop::collection::vec(arb_fibered_event(), 0..8)) {
        let tr = HomotopyTrace::new(TraceKind::FiberedStringLink, "s", "trivial", events).unwrap();
        let (f, g) = sigma_tilde(&tr).unwrap();
        prop_assert_eq!(f.eval_at_one(), 0.into());
        prop_assert_eq!(g.eval_at_one(), 0.into());
        let d2: num_bigint::BigInt = f.derivative_at_one(2);
        prop_assert_eq!(d2 % 2, 0.into());
        let (rf, rg) = sigma_tilde(&tr.rho().unwrap()).unwrap();
        prop_assert_eq!(rf, f.reflect().scalar_mul(-1));
        prop_assert_eq!(rg, g.reflect().scalar_mul(-1));
    }

    #[test]
    fn beta_tilde_change_reverses(events in prop::collection::vec(arb_closed_event(), 0..8)) {
        let tr = closed("a", "b", events);
        prop_assert_eq!(beta_tilde_change(&tr.reverse()).unwrap(), -beta_tilde_change(&tr).unwrap());
    }
}

/// Every stack of one or two pieces from W, rho W and their mirrors, with the
/// numerator closure unlinked: switching every clasp reaches the trivial string link
/// and must reproduce beta and beta~ of the closures.
#[test]
fn sigma_consistency_on_products() {
    let cache = crate::conway::SkeinCache::new();
    let conway = Conway::new(&cache);
    let base = [w(), w().rho(), w().mirror(), w().rho().mirror()];
    let stacks: Vec<Vec<usize>> = (0..4).map(|a| vec![a]).chain((0..16).map(|k| vec![k / 4, k % 4])).collect();
    for pieces in stacks {
        let mut t = TangleDiagram::trivial();
        let mut clasps = Vec::new();
        for &k in &pieces {
            clasps.push(t.crossings().len() + 2);
            t = t.connect_sum(&base[k]);
        }
        let n = t.numerator_lk();
        let t = t.connect_sum(&TangleDiagram::hopf_power(-n));
        let (tr, end) = fibered_trace_from_switches(&t, &clasps, "L", "trivial").unwrap();
        assert!(conway.polynomial(&end.numer_l(0)).is_zero(), "{pieces:?}");
        assert_eq!(conway.polynomial(&end.numer_l(1)), LaurentPoly::monomial(1), "{pieces:?}");
        let c = sigma_consistency_with(&tr, &t, &cache).unwrap();
        assert!(c.holds(), "{pieces:?} {c:?}");
    }
}
