//! Conway polynomial by skein recursion, and the Sato–Levine invariants read
//! off its coefficients.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::diagram::{DiagramError, LinkDiagram};
use crate::laurent::LaurentPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConwayError {
    #[error("expected a 2-component link, found {0} components")]
    ComponentCount(usize),
    #[error("linking number is {0}, not 0")]
    NonzeroLinking(i64),
    #[error("crossing {0} is between different components")]
    InterComponent(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Memo table from canonical diagram keys to Conway polynomials. Safe to share
/// between threads: inserts are idempotent.
#[derive(Debug, Default)]
pub struct SkeinCache {
    map: RwLock<HashMap<String, LaurentPoly>>,
}

const CACHE_FILE: &str = "skein-cache.json";
/// Below this many crossings branches are not worth a rayon task.
const PAR_THRESHOLD: usize = 10;

impl SkeinCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Loads `$QLINK_CACHE_DIR/skein-cache.json` if the variable is set and the file parses;
    /// otherwise an empty cache.
    pub fn from_env() -> Self {
        match cache_dir() {
            Some(dir) => Self::load(&dir).unwrap_or_default(),
            None => Self::new(),
        }
    }

    pub fn load(dir: &Path) -> std::io::Result<Self> {
        let text = std::fs::read_to_string(dir.join(CACHE_FILE))?;
        let map: HashMap<String, LaurentPoly> = serde_json::from_str(&text)?;
        Ok(SkeinCache { map: RwLock::new(map) })
    }

    pub fn save(&self, dir: &Path) -> std::io::Result<()> {
        std::fs::create_dir_all(dir)?;
        let map = self.map.read().unwrap();
        let sorted: std::collections::BTreeMap<&String, &LaurentPoly> = map.iter().collect();
        let tmp = dir.join(format!("{CACHE_FILE}.tmp{}", std::process::id()));
        std::fs::write(&tmp, serde_json::to_string(&sorted)?)?;
        std::fs::rename(tmp, dir.join(CACHE_FILE))
    }

    /// Writes to `$QLINK_CACHE_DIR` when set.
    pub fn persist(&self) -> std::io::Result<()> {
        match cache_dir() {
            Some(dir) => self.save(&dir),
            None => Ok(()),
        }
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn get(&self, key: &str) -> Option<LaurentPoly> {
        self.map.read().unwrap().get(key).cloned()
    }

    fn put(&self, key: String, p: &LaurentPoly) {
        self.map.write().unwrap().entry(key).or_insert_with(|| p.clone());
    }

    pub fn conway(&self, d: &LinkDiagram) -> LaurentPoly {
        self.eval(d, None, false)
    }

    /// Same result as [`SkeinCache::conway`], evaluating skein branches concurrently.
    pub fn conway_parallel(&self, d: &LinkDiagram) -> LaurentPoly {
        self.eval(d, None, true)
    }

    /// Resolves the top-level diagram along the given component order and basepoint
    /// arcs instead of the stored ones.
    pub fn conway_with_order(&self, d: &LinkDiagram, order: &[usize], basepoints: &[u32]) -> LaurentPoly {
        self.eval(d, Some((order, basepoints)), false)
    }

    fn eval(&self, d: &LinkDiagram, base: Option<(&[usize], &[u32])>, parallel: bool) -> LaurentPoly {
        let d = if base.is_none() { d.simplify() } else { d.clone() };
        if d.is_split() {
            return LaurentPoly::zero();
        }
        let key = d.canonical_key();
        if base.is_none() {
            if let Some(p) = self.get(&key) {
                return p;
            }
        }
        let passes = match base {
            Some((order, bp)) => d.first_passes(order, bp),
            None => d.first_passes(&d.default_order(), &[]),
        };
        let result = match passes.iter().find(|(_, under)| *under) {
            None => {
                if d.num_components() == 1 {
                    LaurentPoly::one()
                } else {
                    LaurentPoly::zero()
                }
            }
            Some(&(c, _)) => {
                let sign = d.crossings()[c].sign as i64;
                let switched = d.switch_crossing(c).expect("crossing index");
                let smoothed = d.smooth_crossing(c).expect("crossing index");
                // Keep the basepoints so the switched diagram gets closer to descending.
                let (p_sw, p_sm) = if parallel && d.num_crossings() >= PAR_THRESHOLD {
                    rayon::join(|| self.eval(&switched, base, true), || self.eval(&smoothed, None, true))
                } else {
                    (self.eval(&switched, base, parallel), self.eval(&smoothed, None, parallel))
                };
                p_sw + p_sm.shift(1).scalar_mul(sign)
            }
        };
        if base.is_none() {
            self.put(key, &result);
        }
        result
    }
}

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os("QLINK_CACHE_DIR").filter(|v| !v.is_empty()).map(PathBuf::from)
}

/// `∇(d)` in the variable `z`, with a fresh cache.
pub fn conway_polynomial(d: &LinkDiagram) -> LaurentPoly {
    SkeinCache::new().conway(d)
}

fn small(c: num_bigint::BigInt) -> i64 {
    c.to_i64().expect("Conway coefficient fits in i64")
}

/// `a_i(d)`, the coefficient of `z^i`.
pub fn coefficient(d: &LinkDiagram, i: u32) -> i64 {
    small(conway_polynomial(d).coeff(i as i64))
}

/// Conway-route invariants sharing one cache.
pub struct Conway<'a> {
    cache: &'a SkeinCache,
}

impl<'a> Conway<'a> {
    pub fn new(cache: &'a SkeinCache) -> Self {
        Conway { cache }
    }

    pub fn polynomial(&self, d: &LinkDiagram) -> LaurentPoly {
        self.cache.conway(d)
    }

    pub fn coefficient(&self, d: &LinkDiagram, i: u32) -> i64 {
        small(self.polynomial(d).coeff(i as i64))
    }

    /// `a_3(L) - a_1(L) (a_2(K_1) + a_2(K_2))`.
    pub fn beta_tilde(&self, d: &LinkDiagram) -> Result<i64, ConwayError> {
        if d.num_components() != 2 {
            return Err(ConwayError::ComponentCount(d.num_components()));
        }
        let a1 = self.coefficient(d, 1);
        let a3 = self.coefficient(d, 3);
        if a1 == 0 {
            return Ok(a3);
        }
        let k1 = d.component_diagram(0)?;
        let k2 = d.component_diagram(1)?;
        Ok(a3 - a1 * (self.coefficient(&k1, 2) + self.coefficient(&k2, 2)))
    }

    /// `a_3` of a 2-component link with zero linking number.
    pub fn sato_levine_beta(&self, d: &LinkDiagram) -> Result<i64, ConwayError> {
        if d.num_components() != 2 {
            return Err(ConwayError::ComponentCount(d.num_components()));
        }
        let lk = d.lk();
        if lk != 0 {
            return Err(ConwayError::NonzeroLinking(lk));
        }
        Ok(self.coefficient(d, 3))
    }

    /// `(β̃(L₊) − β̃(L₋), n(l − n))` at self-crossing `c`, where `L₊`/`L₋` are `d` with `c`
    /// made positive/negative and `(n, l − n)` are the lobes' linking numbers with the other
    /// component.
    pub fn jump_check_22(&self, d: &LinkDiagram, c: usize) -> Result<(i64, i64), ConwayError> {
        if d.num_components() != 2 {
            return Err(ConwayError::ComponentCount(d.num_components()));
        }
        let cr = *d.crossings().get(c).ok_or(DiagramError::NoCrossing(c))?;
        let comp = d.arc_component();
        let i = comp[&cr.arcs[0]];
        if i != comp[&cr.arcs[1]] {
            return Err(ConwayError::InterComponent(c));
        }
        let other = d.switch_crossing(c)?;
        let (plus, minus) = if cr.sign > 0 { (d, &other) } else { (&other, d) };
        let lhs = self.beta_tilde(plus)? - self.beta_tilde(minus)?;
        let (n, rest) = d.lobe_linking_numbers(c, 1 - i)?;
        Ok((lhs, n * rest))
    }
}

pub fn beta_tilde(d: &LinkDiagram) -> Result<i64, ConwayError> {
    Conway::new(&SkeinCache::new()).beta_tilde(d)
}

pub fn sato_levine_beta(d: &LinkDiagram) -> Result<i64, ConwayError> {
    Conway::new(&SkeinCache::new()).sato_levine_beta(d)
}

pub fn jump_check_22(d: &LinkDiagram, c: usize) -> Result<(i64, i64), ConwayError> {
    Conway::new(&SkeinCache::new()).jump_check_22(d, c)
}
