//! Truncated Magnus expansions `x_i -> 1 + X_i` in noncommuting variables.

use std::fmt;

use crate::commutator::{gen_name, FreeWord};

/// Power series in `X_0..X_{r-1}` modulo monomials of degree `>= q`. Degree `k`
/// coefficients are stored densely, indexed by the monomial read as a base-`r` number.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MagnusSeries {
    r: usize,
    q: usize,
    levels: Vec<Vec<i128>>,
}

impl MagnusSeries {
    pub fn zero(r: usize, q: usize) -> Self {
        MagnusSeries { r, q, levels: (0..q).map(|k| vec![0; r.pow(k as u32)]).collect() }
    }

    pub fn one(r: usize, q: usize) -> Self {
        let mut s = Self::zero(r, q);
        if q > 0 {
            s.levels[0][0] = 1;
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn truncation(&self) -> usize {
        self.q
    }

    fn index(&self, mono: &[usize]) -> usize {
        mono.iter().fold(0, |acc, &i| acc * self.r + i)
    }

    /// Coefficient of `X_{i_1} ... X_{i_k}`; zero at or beyond the truncation degree.
    pub fn coeff(&self, mono: &[usize]) -> i128 {
        if mono.len() >= self.q || mono.iter().any(|&i| i >= self.r) {
            return 0;
        }
        self.levels[mono.len()][self.index(mono)]
    }

    pub fn set(&mut self, mono: &[usize], c: i128) {
        let i = self.index(mono);
        self.levels[mono.len()][i] = c;
    }

    /// Nonzero coefficients, by degree then lexicographically.
    pub fn terms(&self) -> Vec<(Vec<usize>, i128)> {
        let mut out = Vec::new();
        for (k, level) in self.levels.iter().enumerate() {
            for (i, &c) in level.iter().enumerate() {
                if c != 0 {
                    let mut mono = vec![0; k];
                    let mut n = i;
                    for slot in mono.iter_mut().rev() {
                        *slot = n % self.r;
                        n /= self.r;
                    }
                    out.push((mono, c));
                }
            }
        }
        out
    }

    /// `self * (1 + X_g)^e` for `e = ±1`.
    pub fn mul_letter(&mut self, g: usize, e: i8) {
        let r = self.r;
        if e > 0 {
            for k in (1..self.q).rev() {
                let (lo, hi) = self.levels.split_at_mut(k);
                for (w, &c) in lo[k - 1].iter().enumerate() {
                    if c != 0 {
                        hi[0][w * r + g] += c;
                    }
                }
            }
        } else {
            // T (1 + X) = S, solved degree by degree.
            for k in 1..self.q {
                let (lo, hi) = self.levels.split_at_mut(k);
                for (w, &c) in lo[k - 1].iter().enumerate() {
                    if c != 0 {
                        hi[0][w * r + g] -= c;
                    }
                }
            }
        }
    }

    /// Magnus expansion of a word in at most `r` generators, truncated below degree `q`.
    pub fn of_word(w: &FreeWord, r: usize, q: usize) -> Self {
        let mut s = Self::one(r, q);
        for &(g, e) in w.letters() {
            assert!((g as usize) < r, "generator {g} outside the rank {r}");
            s.mul_letter(g as usize, e);
        }
        s
    }

    /// Truncated product.
    pub fn mul(&self, other: &MagnusSeries) -> MagnusSeries {
        assert_eq!((self.r, self.q), (other.r, other.q));
        let mut out = Self::zero(self.r, self.q);
        for a in 0..self.q {
            for b in 0..self.q - a {
                let stride = self.r.pow(b as u32);
                for (i, &c) in self.levels[a].iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for (j, &d) in other.levels[b].iter().enumerate() {
                        if d != 0 {
                            out.levels[a + b][i * stride + j] += c * d;
                        }
                    }
                }
            }
        }
        out
    }

    /// Zeroes every monomial in which some index repeats.
    pub fn reduced(&self) -> MagnusSeries {
        let mut out = self.clone();
        for (mono, _) in self.terms() {
            let mut seen = vec![false; self.r];
            if mono.iter().any(|&i| std::mem::replace(&mut seen[i], true)) {
                out.set(&mono, 0);
            }
        }
        out
    }

    /// True iff all coefficients of degrees `1..=d` vanish.
    pub fn is_trivial_through(&self, d: usize) -> bool {
        self.levels.iter().skip(1).take(d).all(|l| l.iter().all(|&c| c == 0))
    }
}

impl fmt::Display for MagnusSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (mono, c)) in terms.iter().enumerate() {
            let name: String = mono.iter().map(|&i| gen_name(i as u32).to_uppercase()).collect();
            let (sign, mag) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            if n == 0 {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (mono.is_empty(), mag) {
                (true, _) => write!(f, "{mag}")?,
                (false, 1) => f.write_str(&name)?,
                (false, _) => write!(f, "{mag}*{name}")?,
            }
        }
        Ok(())
    }
}

/// `magnus_expand(w, q)` over the smallest alphabet containing `w`.
pub fn magnus_expand(w: &FreeWord, q: usize) -> MagnusSeries {
    let r = w.max_gen().map_or(1, |g| g as usize + 1);
    MagnusSeries::of_word(w, r, q)
}

pub fn reduced_magnus(w: &FreeWord, q: usize) -> MagnusSeries {
    magnus_expand(w, q).reduced()
}
