use super::*;
use crate::diagram::parse_diagram;
use crate::trace::{beta_tilde_from_trace, closed_trace_from_switches, fibered_trace_from_switches, Lobes};

#[test]
fn every_entry_passes_its_self_check() {
    let entries = check_all(&[-2, -1, 1, 3]).unwrap();
    assert!(entries.len() > NAMES.len());
}

#[test]
fn list_is_sorted_and_complete() {
    let names = list();
    assert!(names.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(names.len(), NAMES.len());
}

#[test]
fn lookups_from_the_examples() {
    let hopf = get("hopf").unwrap();
    assert_eq!(hopf.payload.link().unwrap().lk(), 1);
    let wl = get("whitehead-link").unwrap();
    assert_eq!(wl.recorded(Check::BetaTilde), Some(&Recorded::Int(1)));
    let h3 = get("H_n:3").unwrap();
    assert_eq!(h3.name, "H_n:3");
    assert_eq!(h3.payload.link().unwrap().lk(), 3);
    assert_eq!(get_with("H_n", Some(3)).unwrap().payload.link(), h3.payload.link());
    assert_eq!(get("unlink:3").unwrap().payload.link().unwrap().num_components(), 3);
}

#[test]
fn bad_names_and_parameters() {
    assert!(matches!(get("borromean"), Err(CatalogError::Unknown(_))));
    assert!(matches!(get("H_n"), Err(CatalogError::MissingParameter(_))));
    assert!(matches!(get("hopf:2"), Err(CatalogError::BadParameter { .. })));
    assert!(matches!(get("unlink:0"), Err(CatalogError::BadParameter { .. })));
    assert!(matches!(get("H_n:x"), Err(CatalogError::Unknown(_))));
}

#[test]
fn a_wrong_record_is_caught() {
    let mut e = get("hopf").unwrap();
    e.recorded.push((Check::Lk, Recorded::Int(2)));
    assert!(matches!(e.self_check(), Err(CatalogError::SelfCheck { check: Check::Lk, .. })));
}

#[test]
fn fake_mazur_is_numer_one_of_w_rho_w() {
    let t = get("W#rhoW").unwrap();
    let from_tangle = t.payload.string_link().unwrap().numer_l(1).canonical();
    assert_eq!(from_tangle.to_text(), get("fake-mazur").unwrap().export());
    assert_eq!(get_with("W#ρW", None).unwrap().export(), t.export());
}

#[test]
fn exports_parse_back() {
    for name in ["hopf", "W", "whitehead-pattern", "W#rhoW"] {
        let e = get(name).unwrap();
        assert!(parse_diagram(&e.export()).is_ok(), "{name}");
    }
    for name in ["trace-whitehead", "jin-W"] {
        let e = get(name).unwrap();
        assert_eq!(&HomotopyTrace::from_jsonl(&e.export()).unwrap(), e.payload.trace().unwrap());
    }
    let s = get("sigma-W_n:2").unwrap().export();
    let polys: Vec<LaurentPoly> = s.lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!((polys[0].clone(), polys[1].clone()), sigma_w_power(2));
}

#[test]
fn whitehead_trace_event() {
    let e = get("trace-whitehead").unwrap();
    let tr = e.payload.trace().unwrap();
    assert_eq!(tr.events, vec![CrossingEvent::closed(0, -1, &[(1, -1, 1)])]);
}

#[test]
fn whitehead_trace_from_the_numerator_agrees() {
    let (tr, _) = closed_trace_from_switches(&w().numer_l(0), &[2], "whitehead-link", "unlink:2").unwrap();
    assert_eq!(&tr, get("trace-whitehead").unwrap().payload.trace().unwrap());
    assert_eq!(beta_tilde_from_trace(&tr).unwrap(), 1);
}

#[test]
fn jin_plus_strand_matches_a_switch_of_w() {
    // With the numerator closure unlinked, switching the + strand's clasp reaches the
    // trivial string link; run backwards it is the first event of jin-W.
    let w0 = w().connect_sum(&TangleDiagram::hopf_power(-1));
    let (tr, _) = fibered_trace_from_switches(&w0, &[2], "W", "trivial").unwrap();
    let back = tr.reverse();
    assert_eq!(back.events[0], jin_w().events[0]);
    assert!(matches!(back.events[0].lobes, Lobes::Fibered(1)));
}

#[test]
fn sigma_formulas_at_one_match_the_traces() {
    let (f, g) = sigma_w_power(1);
    assert_eq!(Recorded::Pair(f, g), measure(&get("jin-W").unwrap().payload, Check::Sigma, &Conway::new(shared_cache())).unwrap());
    assert_eq!(sigma_tilde(&jin_w_rho_w()).unwrap(), sigma_w_power_rho(1));
}

#[test]
fn json_has_the_expected_fields() {
    let j = get("whitehead-link").unwrap().to_json();
    assert_eq!(j["kind"], "link");
    assert_eq!(j["recorded"]["conway"], "z^3");
    assert!(j["provenance"].as_str().unwrap().starts_with("construction"));
}
