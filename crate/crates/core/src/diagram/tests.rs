use super::*;

fn hopf() -> LinkDiagram {
    "PD[2; X(1,3,2,4), X(3,1,4,2)]".parse().unwrap()
}

#[test]
fn parses_hopf_link() {
    let d = hopf();
    assert_eq!(d.num_components(), 2);
    assert_eq!(d.num_crossings(), 2);
    assert_eq!(d.linking_number(0, 1).unwrap().abs(), 1);
}

#[test]
fn rejects_arc_used_three_times() {
    let e = "PD[1; X(1,1,2,2), X(1,3,3,4)]".parse::<LinkDiagram>().unwrap_err();
    assert!(matches!(e, DiagramError::ArcIncidence { .. }), "{e:?}");
}

#[test]
fn rejects_bad_syntax_with_position() {
    let e = "PD[2; X(1,3,2 4)]".parse::<LinkDiagram>().unwrap_err();
    assert!(matches!(e, DiagramError::Parse { line: 1, .. }), "{e:?}");
}

#[test]
fn text_and_json_round_trip() {
    let d = hopf();
    let back: LinkDiagram = d.to_text().parse().unwrap();
    assert_eq!(back.canonical(), d.canonical());
    let back: LinkDiagram = d.to_json().to_string().parse().unwrap();
    assert_eq!(back.canonical(), d.canonical());
}

#[test]
fn switching_hopf_twice_is_identity() {
    let d = hopf();
    let s = d.switch_crossing(0).unwrap();
    assert_eq!(s.crossing_sign(0).unwrap(), -d.crossing_sign(0).unwrap());
    assert_eq!(s.linking_number(0, 1).unwrap(), 0);
    assert_eq!(s.switch_crossing(0).unwrap(), d);
}

#[test]
fn smoothing_a_hopf_crossing_gives_a_knot() {
    assert_eq!(hopf().smooth_crossing(0).unwrap().num_components(), 1);
}

#[test]
fn braid_string_links() {
    for n in -3..=3 {
        let h = TangleDiagram::hopf_power(n);
        assert_eq!(h.numerator().num_components(), 2);
        assert_eq!(h.numerator_lk(), n);
        assert_eq!(h.denominator().num_components(), 1);
        assert_eq!(h.rho().numerator_lk(), -n);
    }
    assert!(TangleDiagram::from_braid(&[1]).is_err());
    assert!(TangleDiagram::from_braid(&[2, 2]).is_err());
}

#[test]
fn numer_l_sets_linking_number() {
    let t = TangleDiagram::hopf_power(2);
    for l in -2..=2 {
        assert_eq!(t.numer_l(l).lk(), l);
    }
}

#[test]
fn tangle_text_round_trips() {
    let t = TangleDiagram::rational_tangle(&[2, 2]).unwrap();
    let back: TangleDiagram = t.to_text().parse().unwrap();
    assert_eq!(back, t.canonical());
    let back: TangleDiagram = t.to_json().to_string().parse().unwrap();
    assert_eq!(back, t.canonical());
}

#[test]
fn doubling_unknot_untwisted_keeps_one_component() {
    let d = whitehead_double(&LinkDiagram::unlink(1), 0, 0, 1).unwrap();
    assert_eq!(d.num_components(), 1);
    let d = whitehead_double(&hopf(), 0, 0, 1).unwrap();
    assert_eq!(d.num_components(), 2);
    assert_eq!(d.lk(), 0);
}

#[test]
fn mirror_negates_linking() {
    let d = hopf();
    assert_eq!(d.mirror().lk(), -d.lk());
}

#[test]
fn unlink_has_free_components() {
    let d = LinkDiagram::unlink(3);
    assert_eq!(d.num_components(), 3);
    assert_eq!(d.num_crossings(), 0);
    let back: LinkDiagram = d.to_text().parse().unwrap();
    assert_eq!(back.num_components(), 3);
}

#[test]
fn simplify_removes_cancelling_twists_but_not_a_clasp() {
    let d = TangleDiagram::hopf_power(1).connect_sum(&TangleDiagram::hopf_power(-1)).numerator();
    assert_eq!(d.num_crossings(), 4);
    let s = d.simplify();
    assert_eq!((s.num_crossings(), s.num_components()), (0, 2));
    let hopf = TangleDiagram::hopf_power(1).numerator();
    assert_eq!(hopf.simplify().num_crossings(), 2);
}
