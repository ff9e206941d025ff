//! Wirtinger presentations, longitudes rewritten in meridians, and Milnor's
//! μ̄-invariants read off Magnus expansions.
//!
//! Rewriting is done twice: once on words ([`chen_milnor_longitudes`], exact
//! but exponential in `q`) and once directly in the truncated Magnus ring
//! ([`magnus_longitudes`], which is what `mu_bar` uses). The two agree modulo
//! degree `q`, which the tests check.

mod magnus;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::commutator::FreeWord;
use crate::conway::{Conway, ConwayError, SkeinCache};
use crate::diagram::{parallel_pushoff, LabelUnion, LinkDiagram};

pub use magnus::{magnus_expand, reduced_magnus, MagnusSeries};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MilnorError {
    #[error("index word must have length at least 2")]
    ShortIndex,
    #[error("index {0} is not a component (1..={1})")]
    BadIndex(usize, usize),
    #[error("expected a 2-component link, found {0} components")]
    ComponentCount(usize),
    #[error("linking number is {0}, not 0")]
    NonzeroLinking(i64),
    #[error(transparent)]
    Conway(#[from] ConwayError),
}

/// One passage of a component under a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pass {
    over: usize,
    sign: i8,
    next: usize,
}

/// Generators are the diagram's over-arcs, numbered in order of first appearance along
/// the components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WirtingerPresentation {
    generators: usize,
    component_of: Vec<usize>,
    relations: Vec<FreeWord>,
    meridians: Vec<usize>,
    longitudes: Vec<FreeWord>,
    writhes: Vec<i64>,
    passes: Vec<Vec<Pass>>,
}

pub fn wirtinger(d: &LinkDiagram) -> WirtingerPresentation {
    let mut uf = LabelUnion::default();
    for cr in d.crossings() {
        uf.union(cr.arcs[1], cr.arcs[3]);
    }
    let mut gen_of: HashMap<u32, usize> = HashMap::new();
    let mut component_of = Vec::new();
    for (i, comp) in d.components().iter().enumerate() {
        for &e in comp {
            let root = uf.find(e);
            if let std::collections::hash_map::Entry::Vacant(v) = gen_of.entry(root) {
                v.insert(component_of.len());
                component_of.push(i);
            }
        }
    }
    let mut g = |e: u32| gen_of[&uf.find(e)];
    let inc = d.incidence();
    let mut relations = Vec::new();
    let mut passes = Vec::new();
    let mut meridians = Vec::new();
    let mut longitudes = Vec::new();
    let mut writhes = Vec::new();
    for (i, comp) in d.components().iter().enumerate() {
        meridians.push(g(comp[0]));
        let mut list = Vec::new();
        let mut longitude = FreeWord::identity();
        for (k, &e) in comp.iter().enumerate() {
            let Some(&(x, 0)) = inc.head.get(&e) else { continue };
            let cr = d.crossings()[x];
            let next = comp[(k + 1) % comp.len()];
            let (o, sign, inn, out) = (g(cr.arcs[1]), cr.sign, g(e), g(next));
            let conj = FreeWord::gen(o as u32).pow(sign as i64);
            relations.push(FreeWord::gen(out as u32).invert().mul(&FreeWord::gen(inn as u32).conjugate(&conj)));
            longitude = longitude.mul(&conj);
            list.push(Pass { over: o, sign, next: out });
        }
        let w = d.component_writhe(i);
        longitude = longitude.mul(&FreeWord::gen(meridians[i] as u32).pow(-w));
        longitudes.push(longitude);
        writhes.push(w);
        passes.push(list);
    }
    WirtingerPresentation { generators: component_of.len(), component_of, relations, meridians, longitudes, writhes, passes }
}

impl WirtingerPresentation {
    pub fn num_generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &[FreeWord] {
        &self.relations
    }

    /// Generator index of each component's chosen meridian.
    pub fn meridians(&self) -> &[usize] {
        &self.meridians
    }

    /// Zero-framed longitudes as words in the arc generators.
    pub fn longitudes(&self) -> &[FreeWord] {
        &self.longitudes
    }

    pub fn component_of(&self, generator: usize) -> usize {
        self.component_of[generator]
    }

    pub fn num_components(&self) -> usize {
        self.meridians.len()
    }
}

fn arc_word(w: &FreeWord) -> String {
    if w.is_identity() {
        return "1".into();
    }
    let parts: Vec<String> = w
        .letters()
        .iter()
        .map(|&(g, e)| if e > 0 { format!("a{}", g + 1) } else { format!("a{}^-1", g + 1) })
        .collect();
    parts.join(" ")
}

/// One item per line: generators, relators, meridians, longitudes; generators are `a1..`.
impl fmt::Display for WirtingerPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators {}", self.generators)?;
        for (k, r) in self.relations.iter().enumerate() {
            writeln!(f, "relation {}: {}", k + 1, arc_word(r))?;
        }
        for (i, &m) in self.meridians.iter().enumerate() {
            writeln!(f, "meridian {}: a{}", i + 1, m + 1)?;
        }
        for (i, l) in self.longitudes.iter().enumerate() {
            writeln!(f, "longitude {}: {}", i + 1, arc_word(l))?;
        }
        Ok(())
    }
}

/// Rewrites the longitudes as words in the chosen meridians (generator `i` is the meridian
/// of component `i`), valid modulo `γ_q`. Word length grows exponentially in `q`.
pub fn chen_milnor_longitudes(p: &WirtingerPresentation, q: usize) -> Vec<FreeWord> {
    let m = p.num_components();
    let mer: Vec<FreeWord> = (0..m).map(|i| FreeWord::gen(i as u32)).collect();
    let mut conj: Vec<FreeWord> = vec![FreeWord::identity(); p.generators];
    let image = |conj: &Vec<FreeWord>, g: usize| mer[p.component_of[g]].conjugate(&conj[g]);
    for _ in 0..q {
        let mut next = vec![FreeWord::identity(); p.generators];
        for passes in &p.passes {
            let mut w = FreeWord::identity();
            for pass in passes {
                w = w.mul(&image(&conj, pass.over).pow(pass.sign as i64));
                if !p.meridians.contains(&pass.next) {
                    next[pass.next] = w.clone();
                }
            }
        }
        conj = next;
    }
    p.passes
        .iter()
        .enumerate()
        .map(|(i, passes)| {
            let l = passes
                .iter()
                .fold(FreeWord::identity(), |acc, pass| acc.mul(&image(&conj, pass.over).pow(pass.sign as i64)));
            l.mul(&mer[i].pow(-p.writhes[i]))
        })
        .collect()
}

/// Magnus expansions of the longitudes in the meridian variables, truncated below degree
/// `q`: the same rewriting as [`chen_milnor_longitudes`], carried out in the series ring.
pub fn magnus_longitudes(p: &WirtingerPresentation, q: usize) -> Vec<MagnusSeries> {
    let r = p.num_components();
    let letter = |i: usize, e: i8| {
        let mut s = MagnusSeries::one(r, q);
        s.mul_letter(i, e);
        s
    };
    let fresh: Vec<(MagnusSeries, MagnusSeries)> =
        (0..p.generators).map(|g| (letter(p.component_of[g], 1), letter(p.component_of[g], -1))).collect();
    let mut img = fresh.clone();
    let step = |img: &Vec<(MagnusSeries, MagnusSeries)>, pass: &Pass, w: &mut MagnusSeries, winv: &mut MagnusSeries| {
        let (a, ai) = &img[pass.over];
        let (f, b) = if pass.sign > 0 { (a, ai) } else { (ai, a) };
        *w = w.mul(f);
        *winv = b.mul(winv);
    };
    for _ in 0..q {
        let mut next = fresh.clone();
        for passes in &p.passes {
            let (mut w, mut winv) = (MagnusSeries::one(r, q), MagnusSeries::one(r, q));
            for pass in passes {
                step(&img, pass, &mut w, &mut winv);
                if !p.meridians.contains(&pass.next) {
                    let (m, mi) = &fresh[pass.next];
                    next[pass.next] = (winv.mul(m).mul(&w), winv.mul(mi).mul(&w));
                }
            }
        }
        img = next;
    }
    p.passes
        .iter()
        .enumerate()
        .map(|(i, passes)| {
            let (mut w, mut winv) = (MagnusSeries::one(r, q), MagnusSeries::one(r, q));
            for pass in passes {
                step(&img, pass, &mut w, &mut winv);
            }
            let e = p.writhes[i];
            for _ in 0..e.unsigned_abs() {
                w.mul_letter(i, if e > 0 { -1 } else { 1 });
            }
            w
        })
        .collect()
}

fn check_index(d: &LinkDiagram, index: &[usize]) -> Result<(), MilnorError> {
    if index.len() < 2 {
        return Err(MilnorError::ShortIndex);
    }
    let m = d.num_components();
    match index.iter().find(|&&i| i == 0 || i > m) {
        Some(&i) => Err(MilnorError::BadIndex(i, m)),
        None => Ok(()),
    }
}

/// Coefficient of `X_{i_1}..X_{i_{k-1}}` in the expansion of longitude `i_k`, read directly
/// off the diagram's own meridians (repeated indices included). Indices are 1-based.
pub fn magnus_coefficient(d: &LinkDiagram, index: &[usize]) -> Result<i128, MilnorError> {
    check_index(d, index)?;
    let ls = magnus_longitudes(&wirtinger(d), index.len() + 1);
    Ok(coefficient_of(&ls, index))
}

fn coefficient_of(ls: &[MagnusSeries], index: &[usize]) -> i128 {
    let (last, head) = index.split_last().unwrap();
    let mono: Vec<usize> = head.iter().map(|i| i - 1).collect();
    ls[last - 1].coeff(&mono)
}

/// Exponent of the left-normed basic commutator `[..[x_{i_2}, x_{i_1}], .., x_{i_{k-1}}]`
/// in longitude `i_k`: the Magnus coefficient for `|I| = 2`, its negative beyond.
fn exponent_of(ls: &[MagnusSeries], index: &[usize]) -> i128 {
    let c = coefficient_of(ls, index);
    if index.len() == 2 {
        c
    } else {
        -c
    }
}

/// Replaces each repeated component by zero-framed parallel copies, one per occurrence in
/// `index`, and drops unused components. Returns the new link and the index word with
/// distinct entries.
pub fn separate(d: &LinkDiagram, index: &[usize]) -> Result<(LinkDiagram, Vec<usize>), MilnorError> {
    check_index(d, index)?;
    let used: BTreeSet<usize> = index.iter().copied().collect();
    let keep: Vec<usize> = used.iter().map(|i| i - 1).collect();
    let mut link = d.sublink(&keep).expect("components checked");
    let mult: Vec<usize> = used.iter().map(|i| index.iter().filter(|&&j| j == *i).count()).collect();
    let mut offset = Vec::with_capacity(mult.len());
    let mut total = 0;
    for &m in &mult {
        offset.push(total);
        total += m;
    }
    // Last component first, so earlier offsets stay valid.
    for (k, &m) in mult.iter().enumerate().rev() {
        for _ in 1..m {
            link = parallel_pushoff(&link, k).expect("component index");
        }
    }
    let mut seen = vec![0; mult.len()];
    let distinct = index
        .iter()
        .map(|i| {
            let k = used.range(..i).count();
            seen[k] += 1;
            offset[k] + seen[k]
        })
        .collect();
    Ok((link, distinct))
}

/// Subsequences of length at least 2 obtained by deleting at least one index and rotating.
fn indeterminacy_words(index: &[usize]) -> BTreeSet<Vec<usize>> {
    let k = index.len();
    let mut out = BTreeSet::new();
    for mask in 1..(1u32 << k) - 1 {
        let sub: Vec<usize> = (0..k).filter(|b| mask & (1 << b) != 0).map(|b| index[b]).collect();
        if sub.len() < 2 {
            continue;
        }
        for r in 0..sub.len() {
            let mut s = sub.clone();
            s.rotate_left(r);
            out.insert(s);
        }
    }
    out
}

/// `μ(I)` as an integer before reduction, computed on [`separate`]'s link.
pub fn mu_raw(d: &LinkDiagram, index: &[usize]) -> Result<i128, MilnorError> {
    let (link, distinct) = separate(d, index)?;
    let ls = magnus_longitudes(&wirtinger(&link), distinct.len() + 1);
    Ok(exponent_of(&ls, &distinct))
}

/// `(value, modulus)`: `μ̄(I)` reduced modulo the gcd of the `μ(J)` over shorter cyclic
/// subsequences `J`; modulus 0 means a well-defined integer. Repeated indices are handled
/// by parallel push-offs, so every `J` has distinct entries.
pub fn mu_bar(d: &LinkDiagram, index: &[usize]) -> Result<(i128, i128), MilnorError> {
    let (link, distinct) = separate(d, index)?;
    let ls = magnus_longitudes(&wirtinger(&link), distinct.len() + 1);
    let value = exponent_of(&ls, &distinct);
    let modulus = indeterminacy_words(&distinct).iter().fold(0i128, |g, j| g.gcd(&exponent_of(&ls, j)));
    Ok((if modulus == 0 { value } else { value.rem_euclid(modulus) }, modulus))
}

/// `β̃ ≡ μ̄(1122)` on a 2-component link, modulo μ̄'s indeterminacy (which divides `lk`).
pub fn congruence_check(d: &LinkDiagram) -> Result<bool, MilnorError> {
    congruence_check_with(d, &SkeinCache::new())
}

pub fn congruence_check_with(d: &LinkDiagram, cache: &SkeinCache) -> Result<bool, MilnorError> {
    if d.num_components() != 2 {
        return Err(MilnorError::ComponentCount(d.num_components()));
    }
    let bt = Conway::new(cache).beta_tilde(d)? as i128;
    let (mu, modulus) = mu_bar(d, &[1, 1, 2, 2])?;
    Ok(if modulus == 0 { bt == mu } else { (bt - mu).rem_euclid(modulus) == 0 })
}

/// `μ̄(1212) = -2 μ̄(1122)` on a 2-component link with zero linking number.
pub fn mu_1212_relation(d: &LinkDiagram) -> Result<bool, MilnorError> {
    if d.num_components() != 2 {
        return Err(MilnorError::ComponentCount(d.num_components()));
    }
    if d.lk() != 0 {
        return Err(MilnorError::NonzeroLinking(d.lk()));
    }
    Ok(mu_raw(d, &[1, 2, 1, 2])? == -2 * mu_raw(d, &[1, 1, 2, 2])?)
}
