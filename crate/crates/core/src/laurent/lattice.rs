//! Integer-span membership by row echelon (Hermite) reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("vector of length {got} where {expected} was expected")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Row echelon basis of the lattice spanned by `rows`: pivots strictly increase,
/// pivot entries positive, entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_basis(rows: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut work: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|c| !c.is_zero())).cloned().collect();
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    for col in 0..dim {
        // Euclid on the column: combine every row with a nonzero entry into one pivot row.
        let mut pivot: Option<Vec<BigInt>> = None;
        let mut rest = Vec::with_capacity(work.len());
        for row in work.drain(..) {
            if row[col].is_zero() {
                rest.push(row);
                continue;
            }
            pivot = Some(match pivot {
                None => row,
                Some(p) => {
                    let (p, r) = euclid_rows(p, row, col);
                    if r.iter().any(|c| !c.is_zero()) {
                        rest.push(r);
                    }
                    p
                }
            });
        }
        work = rest;
        if let Some(mut p) = pivot {
            if p[col].is_negative() {
                p.iter_mut().for_each(|c| *c = -c.clone());
            }
            for b in basis.iter_mut() {
                let q = b[col].div_floor(&p[col]);
                if !q.is_zero() {
                    for (x, y) in b.iter_mut().zip(&p) {
                        *x -= &q * y;
                    }
                }
            }
            basis.push(p);
        }
    }
    basis
}

/// Unimodular combination of two rows so that the first has `gcd` at `col` and the second 0.
fn euclid_rows(mut a: Vec<BigInt>, mut b: Vec<BigInt>, col: usize) -> (Vec<BigInt>, Vec<BigInt>) {
    while !b[col].is_zero() {
        let q = a[col].div_floor(&b[col]);
        for (x, y) in a.iter_mut().zip(&b) {
            *x -= &q * y;
        }
        std::mem::swap(&mut a, &mut b);
    }
    (a, b)
}

/// Whether `target` is an integer combination of `generators`.
pub fn lattice_membership(generators: &[Vec<BigInt>], target: &[BigInt]) -> Result<bool, LatticeError> {
    let dim = target.len();
    if let Some(g) = generators.iter().find(|g| g.len() != dim) {
        return Err(LatticeError::DimensionMismatch { expected: dim, got: g.len() });
    }
    let basis = hermite_basis(generators, dim);
    let mut v = target.to_vec();
    for row in &basis {
        let col = row.iter().position(|c| !c.is_zero()).expect("basis rows are nonzero");
        if v[..col].iter().any(|c| !c.is_zero()) {
            return Ok(false);
        }
        let (q, r) = v[col].div_rem(&row[col]);
        if !r.is_zero() {
            return Ok(false);
        }
        for (x, y) in v.iter_mut().zip(row) {
            *x -= &q * y;
        }
    }
    Ok(v.iter().all(|c| c.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|x| BigInt::from(*x)).collect()
    }

    #[test]
    fn small_lattices() {
        assert!(lattice_membership(&[v(&[1, 0]), v(&[0, 1])], &v(&[3, -2])).unwrap());
        assert!(!lattice_membership(&[v(&[2, 0])], &v(&[1, 0])).unwrap());
        assert!(lattice_membership(&[v(&[4, 6]), v(&[6, 9]), v(&[2, 4])], &v(&[0, 1])).unwrap());
        assert!(!lattice_membership(&[v(&[2, 4]), v(&[0, 6])], &v(&[0, 2])).unwrap());
        assert!(lattice_membership(&[], &v(&[0, 0])).unwrap());
        assert!(!lattice_membership(&[], &v(&[0, 1])).unwrap());
        assert_eq!(
            lattice_membership(&[v(&[1])], &v(&[1, 2])),
            Err(LatticeError::DimensionMismatch { expected: 2, got: 1 })
        );
    }

    #[test]
    fn hermite_shape() {
        let b = hermite_basis(&[v(&[3, 1, 0]), v(&[5, 2, 1]), v(&[1, 1, 1])], 3);
        for (i, row) in b.iter().enumerate() {
            let p = row.iter().position(|c| !c.is_zero()).unwrap();
            assert!(row[p].is_positive());
            for other in &b[..i] {
                assert!(!other[p].is_negative() && other[p] < row[p]);
            }
        }
    }
}
