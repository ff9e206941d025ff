use proptest::prelude::*;

use super::*;

fn w(s: &str) -> FreeWord {
    s.parse().unwrap()
}

#[test]
fn parses_and_prints_words() {
    assert_eq!(w("x x x^-1 y").to_string(), "x y");
    assert_eq!(w("[x,y]").to_string(), "x^-1 y^-1 x y");
    assert_eq!(w("(x y)^-2").to_string(), "y^-1 x^-1 y^-1 x^-1");
    assert_eq!(w("1").to_string(), "1");
    assert_eq!(w("g7^2 m"), FreeWord::gen(7).pow(2).mul(&FreeWord::gen(M)));
    assert_eq!(w("[[y,x],z]"), FreeWord::gen(Y).commutator(&FreeWord::gen(X)).commutator(&FreeWord::gen(Z)));
}

#[test]
fn parse_errors_carry_positions() {
    let e = "x [y,".parse::<FreeWord>().unwrap_err();
    assert_eq!(e.pos, 5);
    let e = "x ^ q".parse::<FreeWord>().unwrap_err();
    assert_eq!(e.pos, 4);
    assert!("x )".parse::<FreeWord>().is_err());
    assert!("k".parse::<FreeWord>().is_err());
}

#[test]
fn xi_prime_exponents() {
    for (n, l) in [(1, 0), (1, 1), (2, 5), (-1, 2), (3, -1)] {
        let d = decompose_a1(&xi_prime(n, l));
        assert_eq!(d.e, [0, 0, 0, 0, 0, 0, n * (l - n), -2 * n * (l - n)], "n={n} l={l}");
    }
}

#[test]
fn xi_exponents() {
    for n in -2..=3 {
        let d = decompose_a1(&xi(n));
        assert_eq!(d.e, [0, 0, 0, 0, 0, 0, -n * n, 2 * n * n], "n={n}");
    }
}

#[test]
fn basis_elements_decompose_to_unit_vectors() {
    for (i, b) in A1Decomposition::basis().iter().enumerate() {
        let mut e = [0; 8];
        e[i] = 1;
        assert_eq!(decompose_a1(b).e, e);
    }
}

#[test]
fn identity_suite_passes() {
    for r in identity_suite(7, 200) {
        assert!(r.passed(), "{} failed {} of {}", r.name, r.failures, r.cases);
    }
}

#[test]
fn chain_levels() {
    assert_eq!(chain_generators(&[X, Y], X, 0, 2), ChainLevel::Entire);
    let ChainLevel::Words(one) = chain_generators(&[X, Y], X, 1, 1) else { panic!() };
    // x conjugated by 1, x^±1 and y^±1; conjugating by x^±1 gives x again.
    assert_eq!(one.len(), 3);
    assert!(one.contains(&w("x")) && one.contains(&w("y^-1 x y")) && one.contains(&w("y x y^-1")));
    // Every generator of <m>_k is a conjugate of m: exponent sum 1 in m, 0 elsewhere.
    let ChainLevel::Words(two) = chain_generators(&[X, Y], X, 2, 2) else { panic!() };
    assert!(two.iter().all(|g| g.exponent_sum(X) == 1 && g.exponent_sum(Y) == 0));
}

#[test]
fn mu_k_and_n_k_generators_lie_in_the_commutator_subgroup() {
    for g in mu_k_generators(&[X, Y], 1, 2).iter().chain(n_k_generators(&[X, Y], X, 1, 2).iter()) {
        assert_eq!((g.exponent_sum(X), g.exponent_sum(Y)), (0, 0), "{g}");
    }
    // [m, m^g] with m = x: trivial when g commutes with x.
    assert!(mu_k_generators(&[X, Y], 0, 1).contains(&FreeWord::identity()));
}

fn word(gens: u32, max: usize) -> impl Strategy<Value = FreeWord> {
    prop::collection::vec((0..gens, prop_oneof![Just(1i64), Just(-1i64)]), 0..max).prop_map(FreeWord::from_letters)
}

proptest! {
    #[test]
    fn inverse_cancels(a in word(4, 12)) {
        prop_assert!(a.mul(&a.invert()).is_identity());
        prop_assert_eq!(reduce(&a), a.clone());
    }

    #[test]
    fn display_parses_back(a in word(6, 12)) {
        prop_assert_eq!(a.to_string().parse::<FreeWord>().unwrap(), a);
    }

    #[test]
    fn hall_witt_holds_mod_gamma4(a in word(3, 6), b in word(3, 6), c in word(3, 6)) {
        prop_assert!(hall_witt_mod_gamma4(&a, &b, &c));
    }

    #[test]
    fn decomposition_reconstructs_mod_gamma4(a in word(3, 10)) {
        let d = decompose_a1(&a);
        let back = d.reconstruct();
        prop_assert_eq!(MagnusSeries::of_word(&back, 3, 4).reduced(), MagnusSeries::of_word(&a, 3, 4).reduced());
    }

    #[test]
    fn magnus_is_multiplicative(a in word(3, 8), b in word(3, 8)) {
        let lhs = MagnusSeries::of_word(&a.mul(&b), 3, 5);
        let rhs = MagnusSeries::of_word(&a, 3, 5).mul(&MagnusSeries::of_word(&b, 3, 5));
        prop_assert_eq!(lhs, rhs);
    }
}
