use qlink::verify::{run_suite, SUITES};

#[test]
fn every_suite_passes_at_small_size() {
    for name in SUITES {
        let r = run_suite(name, 7, 60).unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn unknown_suite_is_an_error() {
    assert!(run_suite("fuzz", 1, 1).is_err());
}

#[test]
fn reports_are_reproducible() {
    assert_eq!(run_suite("skein", 3, 20).unwrap(), run_suite("skein", 3, 20).unwrap());
}

#[test]
#[ignore]
fn timing() {
    for name in SUITES {
        let t = std::time::Instant::now();
        let r = run_suite(name, 2024, 1000).unwrap();
        println!("{r}{name}: {:?}", t.elapsed());
    }
}
