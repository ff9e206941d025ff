//! Integer Laurent polynomials in one variable.
//!
//! [`LaurentPoly`] carries every polynomial-valued invariant in the crate:
//! Conway polynomials (in `z`, non-negative exponents only), the eta
//! function, and the refined Kirk invariant together with the maps used to
//! test kernel membership.

pub mod lattice;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use lattice::{lattice_membership, LatticeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("negative exponent {0} outside Z[t]")]
    NegativeExponent(i64),
    #[error("polynomial is not symmetric under t -> 1/t")]
    NotSymmetric,
    #[error("polynomial does not vanish at t = 1 (value {0})")]
    NonzeroAtOne(BigInt),
    #[error("cannot parse polynomial at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Element of `Z[t, 1/t]`, stored sparsely with nonzero coefficients only.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, 0)
    }

    /// `t^n`.
    pub fn monomial(n: i64) -> Self {
        Self::term(1, n)
    }

    pub fn term(c: impl Into<BigInt>, n: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(n, c.into());
        p
    }

    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero();
        for (n, c) in terms {
            p.add_term(n, c.into());
        }
        p
    }

    fn add_term(&mut self, n: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(n).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&n);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, n: i64) -> BigInt {
        self.terms.get(&n).cloned().unwrap_or_default()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(n, c)| (*n, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn scalar_mul(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(n, c)| (*n, c * &k)).collect(),
        }
    }

    /// Multiplies by `t^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(n, c)| (n + shift, c.clone())).collect(),
        }
    }

    /// The substitution `t -> 1/t`.
    pub fn reflect(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(n, c)| (-n, c.clone())).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.reflect()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Augmentation: the sum of all coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// `(1 - eps) f = f - f(1)`.
    pub fn one_minus_eps(&self) -> Self {
        let mut r = self.clone();
        r.add_term(0, -self.eval_at_one());
        r
    }

    /// Formal `d/dt`.
    pub fn derivative(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(n, c)| (n - 1, c * BigInt::from(*n))))
    }

    /// `k`-th derivative evaluated at `t = 1`, without building intermediate polynomials.
    pub fn derivative_at_one(&self, k: u32) -> BigInt {
        self.terms
            .iter()
            .map(|(n, c)| {
                let falling: BigInt = (0..k as i64).map(|i| BigInt::from(n - i)).product();
                c * falling
            })
            .sum()
    }

    /// The additive map `t^n -> t^|n|`.
    pub fn phi_fold(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(n, c)| (n.abs(), c.clone())))
    }

    /// Coefficients of `t^lo ..= t^hi` as a dense vector; errors if any term falls outside.
    pub fn window(&self, lo: i64, hi: i64) -> Option<Vec<BigInt>> {
        if self.terms.keys().any(|n| *n < lo || *n > hi) {
            return None;
        }
        Some((lo..=hi).map(|n| self.coeff(n)).collect())
    }

    pub fn from_window(lo: i64, coeffs: &[BigInt]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, c)| (lo + i as i64, c.clone())))
    }

    /// Renders with a chosen variable name; `Display` uses `t`.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (n, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let body = match *n {
                0 => String::new(),
                1 => var.to_string(),
                e => format!("{var}^{e}"),
            };
            if body.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&body);
            } else {
                out.push_str(&format!("{mag}*{body}"));
            }
        }
        out
    }

    /// Parses the text form in the given variable. Accepts `3*t^2`, `3t^2`, `t^-1`,
    /// `t^(-1)` and arbitrary spacing; repeated exponents are combined.
    pub fn parse_with(s: &str, var: &str) -> Result<Self, LaurentError> {
        Parser { src: s.as_bytes(), pos: 0, var: var.as_bytes() }.parse()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    var: &'a [u8],
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> LaurentError {
        LaurentError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn signed_exponent(&mut self) -> Result<i64, LaurentError> {
        self.skip_ws();
        let paren = self.peek() == Some(b'(');
        if paren {
            self.pos += 1;
            self.skip_ws();
        }
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        self.skip_ws();
        let mag = self.integer().ok_or_else(|| self.err("expected exponent"))?;
        let mag = mag.to_i64().ok_or_else(|| self.err("exponent out of range"))?;
        if paren {
            self.skip_ws();
            if self.peek() != Some(b')') {
                return Err(self.err("expected ')'"));
            }
            self.pos += 1;
        }
        Ok(if neg { -mag } else { mag })
    }

    fn parse(mut self) -> Result<LaurentPoly, LaurentError> {
        let mut out = LaurentPoly::zero();
        let mut first = true;
        loop {
            self.skip_ws();
            if self.pos == self.src.len() {
                if first {
                    return Err(self.err("empty input"));
                }
                return Ok(out);
            }
            let mut neg = false;
            match self.peek() {
                Some(b'+') if !first => self.pos += 1,
                Some(b'-') => {
                    neg = true;
                    self.pos += 1;
                }
                _ if !first => return Err(self.err("expected '+' or '-'")),
                _ => {}
            }
            self.skip_ws();
            let coeff = self.integer();
            self.skip_ws();
            if coeff.is_some() && self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
            }
            let mut exp = 0;
            if self.src[self.pos..].starts_with(self.var) {
                self.pos += self.var.len();
                exp = 1;
                self.skip_ws();
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    exp = self.signed_exponent()?;
                }
            } else if coeff.is_none() {
                return Err(self.err("expected coefficient or variable"));
            }
            let c = coeff.unwrap_or_else(BigInt::one);
            out.add_term(exp, if neg { -c } else { c });
            first = false;
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_with(s, "t")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (n, c) in &self.terms {
            match c.to_i64() {
                Some(small) => map.serialize_entry(&n.to_string(), &small)?,
                None => map.serialize_entry(&n.to_string(), &c.to_string())?,
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PolyVisitor;

        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coeff {
            Small(i64),
            Big(String),
        }

        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = LaurentPoly;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from exponent strings to integer coefficients")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut p = LaurentPoly::zero();
                while let Some((k, v)) = access.next_entry::<String, Coeff>()? {
                    let n: i64 = k.parse().map_err(de::Error::custom)?;
                    let c = match v {
                        Coeff::Small(c) => BigInt::from(c),
                        Coeff::Big(s) => s.parse().map_err(de::Error::custom)?,
                    };
                    p.add_term(n, c);
                }
                Ok(p)
            }
        }
        deserializer.deserialize_map(PolyVisitor)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (n, c) in &rhs.terms {
            self.add_term(*n, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (n, c) in &rhs.terms {
            self.add_term(*n, -c);
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(n, c)| (*n, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// `(f(1), g(1), (f' + g' + f'' + g'')(1))`, defined on `Z[t] + Z[t]`.
pub fn delta_map(f: &LaurentPoly, g: &LaurentPoly) -> Result<(BigInt, BigInt, BigInt), LaurentError> {
    for p in [f, g] {
        if let Some(lo) = p.min_exp().filter(|lo| *lo < 0) {
            return Err(LaurentError::NegativeExponent(lo));
        }
    }
    let third = f.derivative_at_one(1) + g.derivative_at_one(1) + f.derivative_at_one(2) + g.derivative_at_one(2);
    Ok((f.eval_at_one(), g.eval_at_one(), third))
}

/// `(f(1), g(1), (f' + g')(1), (f'' + g'')(1))` on the full Laurent ring.
pub fn delta_tilde_map(f: &LaurentPoly, g: &LaurentPoly) -> (BigInt, BigInt, BigInt, BigInt) {
    (
        f.eval_at_one(),
        g.eval_at_one(),
        f.derivative_at_one(1) + g.derivative_at_one(1),
        f.derivative_at_one(2) + g.derivative_at_one(2),
    )
}

/// Finite power series `sum_k coeffs[k-1] z^k` in `z = -(t + 1/t - 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZSeries {
    /// `coeffs[k - 1]` is the coefficient of `z^k`; no trailing zeros.
    pub coeffs: Vec<BigInt>,
}

impl ZSeries {
    /// Coefficient of `z^k` (`k >= 1`).
    pub fn coeff(&self, k: usize) -> BigInt {
        k.checked_sub(1)
            .and_then(|i| self.coeffs.get(i).cloned())
            .unwrap_or_default()
    }

    /// Substitutes `z = -(t + 1/t - 2)` back into a Laurent polynomial.
    pub fn to_laurent(&self) -> LaurentPoly {
        let z = LaurentPoly::from_terms([(1, -1), (0, 2), (-1, -1)]);
        let mut acc = LaurentPoly::zero();
        let mut zk = LaurentPoly::one();
        for c in &self.coeffs {
            zk = &zk * &z;
            acc += &zk.scalar_mul(c.clone());
        }
        acc
    }
}

/// Expands a symmetric Laurent polynomial vanishing at 1 in powers of `z = -(t + 1/t - 2)`.
pub fn cochran_expand(f: &LaurentPoly) -> Result<ZSeries, LaurentError> {
    if !f.is_symmetric() {
        return Err(LaurentError::NotSymmetric);
    }
    let at_one = f.eval_at_one();
    if !at_one.is_zero() {
        return Err(LaurentError::NonzeroAtOne(at_one));
    }
    let top = f.max_exp().unwrap_or(0).max(0) as usize;
    // p_k(u) = t^k + t^-k as a polynomial in u = t + 1/t, stored with index = power of u.
    let mut p: Vec<Vec<BigInt>> = vec![vec![BigInt::from(2)], vec![BigInt::zero(), BigInt::one()]];
    while p.len() <= top {
        let n = p.len();
        let mut next = vec![BigInt::zero(); n + 1];
        for (i, c) in p[n - 1].iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in p[n - 2].iter().enumerate() {
            next[i] -= c;
        }
        p.push(next);
    }
    // f = c0 + sum_{k>=1} c_k p_k(u) as a polynomial in u.
    let mut in_u = vec![BigInt::zero(); top + 1];
    in_u[0] += f.coeff(0);
    for k in 1..=top {
        let ck = f.coeff(k as i64);
        if ck.is_zero() {
            continue;
        }
        for (i, c) in p[k].iter().enumerate() {
            in_u[i] += &ck * c;
        }
    }
    // u = 2 - z: expand sum_i a_i (2 - z)^i with binomials.
    let mut in_z = vec![BigInt::zero(); top + 1];
    for (i, a) in in_u.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let mut binom = BigInt::one();
        for j in 0..=i {
            // C(i, j) 2^(i-j) (-1)^j
            let two_pow = BigInt::from(2).pow((i - j) as u32);
            let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            in_z[j] += a * &binom * two_pow * sign;
            binom = binom * BigInt::from(i - j) / BigInt::from(j + 1);
        }
    }
    debug_assert!(in_z[0].is_zero());
    let mut coeffs: Vec<BigInt> = in_z.into_iter().skip(1).collect();
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    Ok(ZSeries { coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn ring_basics() {
        assert!((&LaurentPoly::monomial(1) + &(-LaurentPoly::monomial(1))).is_zero());
        assert_eq!(&LaurentPoly::monomial(1) * &LaurentPoly::monomial(-1), LaurentPoly::one());
        // (t - 1)(1/t - 1) = 1 - t - 1/t + 1
        assert_eq!(p("t - 1") * p("t^-1 - 1"), LaurentPoly::from_terms([(1, -1), (-1, -1), (0, 2)]));
    }

    #[test]
    fn augmentation() {
        assert_eq!(p("t^5 - 1").eval_at_one(), BigInt::zero());
        assert_eq!(p("t + t^-1 - 2").eval_at_one(), BigInt::zero());
        assert_eq!(p("3t^2 + 4").eval_at_one(), BigInt::from(7));
        assert_eq!(p("t").one_minus_eps(), p("t - 1"));
        assert!(p("5").one_minus_eps().is_zero());
        assert_eq!(p("t^2 + t^-1").one_minus_eps(), p("t^-1 - 2 + t^2"));
    }

    #[test]
    fn derivatives() {
        for n in [-2i64, 0, 3] {
            let expect = LaurentPoly::term(n, n - 1);
            assert_eq!(LaurentPoly::monomial(n).derivative(), expect);
        }
        assert_eq!(p("t + t^-1 - 2").derivative(), p("1 - t^-2"));
        let f = p("t - t^-1");
        assert_eq!(f.derivative().derivative().eval_at_one(), BigInt::from(-2));
        assert_eq!(f.derivative_at_one(2), BigInt::from(-2));
    }

    #[test]
    fn phi() {
        assert_eq!(p("t^-3").phi_fold(), p("t^3"));
        assert!(p("t - t^-1").phi_fold().is_zero());
        assert_eq!(p("t + t^-1 - 2").phi_fold(), p("2t - 2"));
    }

    #[test]
    fn delta_maps() {
        let z = LaurentPoly::zero();
        let zero3 = (BigInt::zero(), BigInt::zero(), BigInt::zero());
        assert_eq!(delta_map(&z, &z).unwrap(), zero3);
        assert_eq!(delta_map(&p("t - 1"), &z).unwrap(), (BigInt::zero(), BigInt::zero(), BigInt::one()));
        assert_eq!(delta_map(&p("t^-1"), &z), Err(LaurentError::NegativeExponent(-1)));

        let zero4 = (BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero());
        assert_eq!(delta_tilde_map(&p("t - t^-1"), &p("t^-1 - t")), zero4);
        assert_eq!(delta_tilde_map(&p("3t + t^-1 - 4"), &p("1 - t^2")), zero4);
        assert_eq!(
            delta_tilde_map(&p("1"), &z),
            (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::zero())
        );
    }

    #[test]
    fn cochran() {
        let s = cochran_expand(&p("t + t^-1 - 2")).unwrap();
        assert_eq!(s.coeffs, vec![BigInt::from(-1)]);
        // t^2 + t^-2 - 2 = (u^2 - 2) - 2 with u = 2 - z: z^2 - 4z
        let s = cochran_expand(&p("t^2 + t^-2 - 2")).unwrap();
        assert_eq!(s.coeffs, vec![BigInt::from(-4), BigInt::from(1)]);
        assert!(cochran_expand(&LaurentPoly::zero()).unwrap().coeffs.is_empty());
        assert_eq!(cochran_expand(&p("t - 1")), Err(LaurentError::NotSymmetric));
        assert!(matches!(cochran_expand(&p("t + t^-1")), Err(LaurentError::NonzeroAtOne(_))));
    }

    #[test]
    fn text_forms() {
        let f = p("-2 + t^-1 + t^3");
        assert_eq!(f.to_string(), "t^-1 - 2 + t^3");
        assert_eq!(p(&f.to_string()), f);
        assert_eq!(p("3*t^(-2) - t + 7").to_string(), "3*t^-2 + 7 - t");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::parse_with("z^3 + z", "z").unwrap().display_with("z"), "z + z^3");
        assert!("t^".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("2 3".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn json_form() {
        let f = p("t^-1 - 2 + t^3");
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"-1":1,"0":-2,"3":1}"#);
        assert_eq!(serde_json::from_str::<LaurentPoly>(&s).unwrap(), f);
        let big = LaurentPoly::constant(BigInt::from(10).pow(30));
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(serde_json::from_str::<LaurentPoly>(&s).unwrap(), big);
    }
}
