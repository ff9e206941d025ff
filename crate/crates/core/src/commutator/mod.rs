//! Free-group commutator calculus: the identities used for link groups,
//! Hall–Witt modulo `γ_4`, the decomposition into basic commutators without
//! repeats, and bounded enumerations of the subgroup chains `<m>_k`.

mod word;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::milnor::MagnusSeries;

pub use word::{commutator, conjugate, gen_name, invert, reduce, FreeWord, WordParseError, M, X, Y, Z};

/// Exponents of `x^e1 y^e2 z^e3 [y,x]^e4 [z,y]^e5 [z,x]^e6 [[y,x],z]^e7 [[z,x],y]^e8`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct A1Decomposition {
    pub e: [i64; 8],
}

impl A1Decomposition {
    /// The basis elements, in order.
    pub fn basis() -> [FreeWord; 8] {
        let (x, y, z) = (FreeWord::gen(X), FreeWord::gen(Y), FreeWord::gen(Z));
        let yx = y.commutator(&x);
        let zy = z.commutator(&y);
        let zx = z.commutator(&x);
        [x.clone(), y.clone(), z.clone(), yx.clone(), zy, zx.clone(), yx.commutator(&z), zx.commutator(&y)]
    }

    pub fn reconstruct(&self) -> FreeWord {
        Self::basis()
            .iter()
            .zip(self.e)
            .fold(FreeWord::identity(), |acc, (b, e)| acc.mul(&b.pow(e)))
    }
}

fn reduced4(w: &FreeWord) -> MagnusSeries {
    MagnusSeries::of_word(w, 3, 4).reduced()
}

fn coef(s: &MagnusSeries, mono: &[u32]) -> i64 {
    let m: Vec<usize> = mono.iter().map(|&g| g as usize).collect();
    i64::try_from(s.coeff(&m)).expect("coefficient fits in i64")
}

/// Decomposes the image of `w` (a word in `x, y, z`) in the reduced free nilpotent group of
/// class 3, degree by degree.
pub fn decompose_a1(w: &FreeWord) -> A1Decomposition {
    assert!(w.max_gen().is_none_or(|g| g <= Z), "decompose_A1 takes words in x, y, z");
    let b = A1Decomposition::basis();
    let mut e = [0i64; 8];
    let s = reduced4(w);
    e[0] = coef(&s, &[X]);
    e[1] = coef(&s, &[Y]);
    e[2] = coef(&s, &[Z]);
    let head = (0..3).fold(FreeWord::identity(), |acc, i| acc.mul(&b[i].pow(e[i])));
    let w1 = head.invert().mul(w);
    let s = reduced4(&w1);
    e[3] = coef(&s, &[Y, X]);
    e[4] = coef(&s, &[Z, Y]);
    e[5] = coef(&s, &[Z, X]);
    let mid = (3..6).fold(FreeWord::identity(), |acc, i| acc.mul(&b[i].pow(e[i])));
    let w2 = mid.invert().mul(&w1);
    let s = reduced4(&w2);
    e[6] = -coef(&s, &[X, Y, Z]);
    e[7] = -coef(&s, &[X, Z, Y]);
    A1Decomposition { e }
}

/// `ξ = [λ, [λ^-1, m^-1]]`.
pub fn xi_of(lambda: &FreeWord, m: u32) -> FreeWord {
    let mi = FreeWord::gen(m).invert();
    lambda.commutator(&lambda.invert().commutator(&mi))
}

/// `ξ' = [[x^(l-n) y^(l-n), z], x^n y^n]`.
pub fn xi_prime(n: i64, l: i64) -> FreeWord {
    let (x, y, z) = (FreeWord::gen(X), FreeWord::gen(Y), FreeWord::gen(Z));
    let a = x.pow(l - n).mul(&y.pow(l - n));
    let b = x.pow(n).mul(&y.pow(n));
    a.commutator(&z).commutator(&b)
}

/// `ξ` at `λ = x^n y^n`, `m = z`.
pub fn xi(n: i64) -> FreeWord {
    let (x, y) = (FreeWord::gen(X), FreeWord::gen(Y));
    xi_of(&x.pow(n).mul(&y.pow(n)), Z)
}

/// `[[a,b],c] [[b,c],a] [[c,a],b]` vanishes modulo `γ_4`: its Magnus expansion has no terms
/// of degree 1 to 3.
pub fn hall_witt_mod_gamma4(a: &FreeWord, b: &FreeWord, c: &FreeWord) -> bool {
    let p = a
        .commutator(b)
        .commutator(c)
        .mul(&b.commutator(c).commutator(a))
        .mul(&c.commutator(a).commutator(b));
    let r = [a, b, c].iter().filter_map(|w| w.max_gen()).max().map_or(1, |g| g as usize + 1);
    MagnusSeries::of_word(&p, r, 4).is_trivial_through(3)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
}

impl IdentityResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// A random reduced word in generators `0..gens`.
pub fn random_word(rng: &mut impl Rng, gens: u32, max_len: usize) -> FreeWord {
    let len = rng.gen_range(0..=max_len);
    FreeWord::from_letters((0..len).map(|_| (rng.gen_range(0..gens), if rng.gen_bool(0.5) { 1 } else { -1 })))
}

type Identity = (&'static str, fn(&FreeWord, &FreeWord, &FreeWord) -> (FreeWord, FreeWord));

fn identities() -> [Identity; 4] {
    [
        ("[a,bc] = [a,c][a,b]^c", |a, b, c| {
            (a.commutator(&b.mul(c)), a.commutator(c).mul(&a.commutator(b).conjugate(c)))
        }),
        ("[a,b^-1] = ([a,b]^(b^-1))^-1", |a, b, _| {
            (a.commutator(&b.invert()), a.commutator(b).conjugate(&b.invert()).invert())
        }),
        ("[x,y^-1] = [y,x]^(y^-1)", |a, b, _| (a.commutator(&b.invert()), b.commutator(a).conjugate(&b.invert()))),
        ("[m^-1,(m^-1)^g] = [m,m^g]^((m^g m)^-1)", |m, g, _| {
            let mi = m.invert();
            let mg = m.conjugate(g);
            (mi.commutator(&mi.conjugate(g)), m.commutator(&mg).conjugate(&mg.mul(m).invert()))
        }),
    ]
}

/// Checks each identity as an equality of reduced words on `cases` random substitutions.
pub fn identity_suite(seed: u64, cases: usize) -> Vec<IdentityResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (name, f) in identities() {
        let mut failures = 0;
        // The degenerate substitution first.
        let e = FreeWord::identity();
        let (l, r) = f(&e, &e, &e);
        failures += usize::from(l != r);
        for _ in 1..cases {
            let a = random_word(&mut rng, 4, 6);
            let b = random_word(&mut rng, 4, 6);
            let c = random_word(&mut rng, 4, 6);
            let (l, r) = f(&a, &b, &c);
            failures += usize::from(l != r);
        }
        out.push(IdentityResult { name, cases, failures });
    }
    out
}

/// A level of the chain `<m>_0 ⊵ <m>_1 ⊵ ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainLevel {
    /// `<m>_0` is the whole group.
    Entire,
    Words(BTreeSet<FreeWord>),
}

fn products(gens: &[FreeWord], depth: usize) -> BTreeSet<FreeWord> {
    let mut all: BTreeSet<FreeWord> = BTreeSet::from([FreeWord::identity()]);
    let mut frontier = all.clone();
    for _ in 0..depth {
        let mut next = BTreeSet::new();
        for w in &frontier {
            for g in gens {
                for h in [g.clone(), g.invert()] {
                    let p = w.mul(&h);
                    if !all.contains(&p) {
                        next.insert(p);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

/// Conjugates `m^w` with `w` a product of at most `depth` elements of the previous level
/// (for `k = 1`, of the generators in `alphabet`). The enumeration is bounded, never
/// claimed complete.
pub fn chain_generators(alphabet: &[u32], m: u32, k: usize, depth: usize) -> ChainLevel {
    if k == 0 {
        return ChainLevel::Entire;
    }
    let mut level: Vec<FreeWord> = alphabet.iter().map(|&g| FreeWord::gen(g)).collect();
    let mg = FreeWord::gen(m);
    let mut set = BTreeSet::new();
    for _ in 0..k {
        set = products(&level, depth).iter().map(|w| mg.conjugate(w)).collect();
        level = set.iter().cloned().collect();
    }
    ChainLevel::Words(set)
}

fn conjugators(alphabet: &[u32], m: u32, k: usize, depth: usize) -> BTreeSet<FreeWord> {
    match chain_generators(alphabet, m, k, depth) {
        ChainLevel::Entire => {
            let gens: Vec<FreeWord> = alphabet.iter().map(|&g| FreeWord::gen(g)).collect();
            products(&gens, depth)
        }
        ChainLevel::Words(s) => s,
    }
}

/// `{[m, m^g] : m ∈ meridians, g ∈ <m>_k}` over the bounded enumeration.
pub fn mu_k_generators(meridians: &[u32], k: usize, depth: usize) -> BTreeSet<FreeWord> {
    let mut out = BTreeSet::new();
    for &m in meridians {
        let mw = FreeWord::gen(m);
        for g in conjugators(meridians, m, k, depth) {
            out.insert(mw.commutator(&mw.conjugate(&g)));
        }
    }
    out
}

/// `{[g^-1, g^m] : g ∈ <m>_k}` over the bounded enumeration, with `alphabet` generating the
/// group.
pub fn n_k_generators(alphabet: &[u32], m: u32, k: usize, depth: usize) -> BTreeSet<FreeWord> {
    let mw = FreeWord::gen(m);
    conjugators(alphabet, m, k, depth).iter().map(|g| g.invert().commutator(&g.conjugate(&mw))).collect()
}

#[cfg(test)]
mod tests;
