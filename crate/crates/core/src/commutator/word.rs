//! Freely reduced words and the literal syntax `x y^-1 [y,x]^3`.
//!
//! Grammar (whitespace separates factors and is otherwise ignored):
//!
//! ```text
//! word   := factor*
//! factor := atom ('^' int)?
//! atom   := gen | '1' | '(' word ')' | '[' word ',' word ']'
//! gen    := 'x' | 'y' | 'z' | 'm' | 'w' | 'g' digits
//! ```
//!
//! `x y z m w` are generators 0..=4 and `g<k>` is generator `k`. `[a,b]` is
//! `a^-1 b^-1 a b`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

const NAMES: [char; 5] = ['x', 'y', 'z', 'm', 'w'];

pub const X: u32 = 0;
pub const Y: u32 = 1;
pub const Z: u32 = 2;
pub const M: u32 = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("word syntax at byte {pos}: {msg}")]
pub struct WordParseError {
    pub pos: usize,
    pub msg: String,
}

/// A freely reduced word: letters `(generator, ±1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    letters: Vec<(u32, i8)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn gen(g: u32) -> Self {
        FreeWord { letters: vec![(g, 1)] }
    }

    /// Reduces an arbitrary letter sequence. Exponents other than ±1 are expanded.
    pub fn from_letters(letters: impl IntoIterator<Item = (u32, i64)>) -> Self {
        let mut w = FreeWord::identity();
        for (g, e) in letters {
            let s = e.signum() as i8;
            for _ in 0..e.unsigned_abs() {
                w.push(g, s);
            }
        }
        w
    }

    fn push(&mut self, g: u32, e: i8) {
        if self.letters.last() == Some(&(g, -e)) {
            self.letters.pop();
        } else {
            self.letters.push((g, e));
        }
    }

    pub fn letters(&self) -> &[(u32, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn max_gen(&self) -> Option<u32> {
        self.letters.iter().map(|l| l.0).max()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for &(g, e) in &other.letters {
            w.push(g, e);
        }
        w
    }

    pub fn invert(&self) -> FreeWord {
        FreeWord { letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    pub fn pow(&self, n: i64) -> FreeWord {
        let base = if n < 0 { self.invert() } else { self.clone() };
        (0..n.unsigned_abs()).fold(FreeWord::identity(), |acc, _| acc.mul(&base))
    }

    /// `b^-1 a b`, written `a^b`.
    pub fn conjugate(&self, b: &FreeWord) -> FreeWord {
        b.invert().mul(self).mul(b)
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, b: &FreeWord) -> FreeWord {
        self.invert().mul(&b.invert()).mul(self).mul(b)
    }

    /// Exponent sum of generator `g`.
    pub fn exponent_sum(&self, g: u32) -> i64 {
        self.letters.iter().filter(|l| l.0 == g).map(|l| l.1 as i64).sum()
    }

    /// Substitutes a word for every generator.
    pub fn substitute(&self, f: &dyn Fn(u32) -> FreeWord) -> FreeWord {
        let mut w = FreeWord::identity();
        for &(g, e) in &self.letters {
            let img = f(g);
            w = w.mul(&if e > 0 { img } else { img.invert() });
        }
        w
    }
}

/// Already reduced input is returned unchanged; this is the canonical form.
pub fn reduce(w: &FreeWord) -> FreeWord {
    FreeWord::from_letters(w.letters.iter().map(|&(g, e)| (g, e as i64)))
}

pub fn invert(w: &FreeWord) -> FreeWord {
    w.invert()
}

pub fn conjugate(a: &FreeWord, b: &FreeWord) -> FreeWord {
    a.conjugate(b)
}

pub fn commutator(a: &FreeWord, b: &FreeWord) -> FreeWord {
    a.commutator(b)
}

pub fn gen_name(g: u32) -> String {
    match NAMES.get(g as usize) {
        Some(c) => c.to_string(),
        None => format!("g{g}"),
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let (g, e) = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == (g, e) {
                run += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let exp = run as i64 * e as i64;
            if exp == 1 {
                write!(f, "{}", gen_name(g))?;
            } else {
                write!(f, "{}^{}", gen_name(g), exp)?;
            }
            i += run;
        }
        Ok(())
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, WordParseError> {
        Err(WordParseError { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<FreeWord, WordParseError> {
        let mut w = FreeWord::identity();
        while let Some(c) = self.peek() {
            if matches!(c, b',' | b']' | b')') {
                break;
            }
            w = w.mul(&self.factor()?);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<FreeWord, WordParseError> {
        let atom = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            if self.s.get(self.pos) == Some(&b'-') {
                self.pos += 1;
            }
            while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
            let n: i64 = match text.parse() {
                Ok(n) => n,
                Err(_) => {
                    self.pos = start;
                    return self.err("expected an integer exponent");
                }
            };
            return Ok(atom.pow(n));
        }
        Ok(atom)
    }

    fn expect(&mut self, c: u8) -> Result<(), WordParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn atom(&mut self) -> Result<FreeWord, WordParseError> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let a = self.word()?;
                self.expect(b',')?;
                let b = self.word()?;
                self.expect(b']')?;
                Ok(a.commutator(&b))
            }
            Some(b'(') => {
                self.pos += 1;
                let a = self.word()?;
                self.expect(b')')?;
                Ok(a)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(FreeWord::identity())
            }
            Some(b'g') => {
                self.pos += 1;
                let start = self.pos;
                while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                match std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse() {
                    Ok(k) => Ok(FreeWord::gen(k)),
                    Err(_) => self.err("expected a generator number after 'g'"),
                }
            }
            Some(c) => match NAMES.iter().position(|&n| n as u8 == c) {
                Some(k) => {
                    self.pos += 1;
                    Ok(FreeWord::gen(k as u32))
                }
                None => self.err(format!("unexpected '{}'", c as char)),
            },
            None => self.err("unexpected end of input"),
        }
    }
}

impl FromStr for FreeWord {
    type Err = WordParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let w = p.word()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(w)
    }
}
