//! Sublattices of `Z^n` kept in Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::homology::{smith_normal_form, AbelianGroup, SparseMatrix};

/// Row-style Hermite normal form: independent rows, strictly increasing
/// pivot columns, positive pivots, entries above a pivot reduced into
/// `0..pivot`. Equal lattices have equal bases.
fn hnf(dim: usize, mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut done = 0;
    for c in 0..dim {
        if done == rows.len() {
            break;
        }
        loop {
            let Some(pi) = (done..rows.len()).filter(|&i| !rows[i][c].is_zero()).min_by_key(|&i| rows[i][c].abs())
            else {
                break;
            };
            rows.swap(done, pi);
            let mut clear = true;
            for i in done + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[done][c]);
                let (head, tail) = rows.split_at_mut(i);
                axpy(&mut tail[0], &head[done], &q);
                clear &= tail[0][c].is_zero();
            }
            if clear {
                if rows[done][c].is_negative() {
                    rows[done].iter_mut().for_each(|x| *x = -&*x);
                }
                for i in 0..done {
                    let q = rows[i][c].div_floor(&rows[done][c]);
                    if !q.is_zero() {
                        let (head, tail) = rows.split_at_mut(done);
                        axpy(&mut head[i], &tail[0], &q);
                    }
                }
                done += 1;
                break;
            }
        }
    }
    rows.truncate(done);
    rows
}

/// `y -= q·x`.
fn axpy(y: &mut [BigInt], x: &[BigInt], q: &BigInt) {
    for (a, b) in y.iter_mut().zip(x) {
        if !b.is_zero() {
            *a -= q * b;
        }
    }
}

/// Integer vectors `y` with `Σ y_i rows[i] = 0`.
fn left_kernel(width: usize, rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let k = rows.len();
    let aug: Vec<Vec<BigInt>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            v
        })
        .collect();
    hnf(width + k, aug)
        .into_iter()
        .filter(|r| r[..width].iter().all(Zero::is_zero))
        .map(|r| r[width..].to_vec())
        .collect()
}

pub(crate) fn apply(m: &SparseMatrix<BigInt>, v: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); m.rows()];
    for (j, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (i, a) in m.column(j) {
            out[*i] += a * x;
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
}

impl Lattice {
    pub fn span(dim: usize, vectors: Vec<Vec<BigInt>>) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == dim));
        Lattice { dim, basis: hnf(dim, vectors) }
    }

    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: Vec::new() }
    }

    /// Span of the standard basis vectors `e_i` with `keep(i)`.
    pub fn coordinate(dim: usize, keep: impl Fn(usize) -> bool) -> Self {
        let basis = (0..dim)
            .filter(|&i| keep(i))
            .map(|i| (0..dim).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        Lattice { dim, basis }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        Lattice::span(self.dim, self.basis.iter().chain(&other.basis).cloned().collect())
    }

    /// Coefficients of `v` in the basis, if `v` lies in the lattice.
    pub fn coords(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut v = v.to_vec();
        let mut out = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let c = row.iter().position(|x| !x.is_zero()).expect("nonzero basis row");
            if v[..c].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = v[c].div_rem(&row[c]);
            if !r.is_zero() {
                return None;
            }
            axpy(&mut v, row, &q);
            out.push(q);
        }
        v.iter().all(Zero::is_zero).then_some(out)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// `{x ∈ self : m·x ∈ target}`.
    pub fn preimage(&self, m: &SparseMatrix<BigInt>, target: &Lattice) -> Lattice {
        let images: Vec<Vec<BigInt>> = self.basis.iter().map(|b| apply(m, b)).collect();
        let rows: Vec<Vec<BigInt>> = images.iter().chain(target.basis.iter()).cloned().collect();
        let k = self.basis.len();
        let vectors = left_kernel(m.rows(), &rows)
            .into_iter()
            .map(|y| {
                let mut x = vec![BigInt::zero(); self.dim];
                for (c, b) in y[..k].iter().zip(&self.basis) {
                    if !c.is_zero() {
                        for (xi, bi) in x.iter_mut().zip(b) {
                            *xi += c * bi;
                        }
                    }
                }
                x
            })
            .collect();
        Lattice::span(self.dim, vectors)
    }

    /// `m` applied to the lattice, inside `Z^rows`.
    pub fn image(&self, m: &SparseMatrix<BigInt>) -> Lattice {
        Lattice::span(m.rows(), self.basis.iter().map(|b| apply(m, b)).collect())
    }

    /// `self / sub` for a sublattice `sub`; `None` if `sub ⊄ self`.
    pub fn quotient(&self, sub: &Lattice) -> Option<AbelianGroup> {
        let coords: Vec<Vec<BigInt>> = sub.basis.iter().map(|v| self.coords(v)).collect::<Option<_>>()?;
        if coords.is_empty() || self.basis.is_empty() {
            return Some(AbelianGroup::free(self.rank()));
        }
        let snf = smith_normal_form(&SparseMatrix::from_dense(&coords));
        let f = snf.invariant_factors;
        Some(AbelianGroup::from_cyclic_orders(self.rank() - f.len(), f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_is_canonical() {
        let a = Lattice::span(2, vec![v(&[2, 4]), v(&[6, 8])]);
        let b = Lattice::span(2, vec![v(&[2, 0]), v(&[0, 4])]);
        assert_eq!(a, b);
        assert_eq!(a.rank(), 2);
        assert_eq!(Lattice::coordinate(2, |_| true).quotient(&a).unwrap(), AbelianGroup::from_cyclic_orders(0, [BigInt::from(2), BigInt::from(4)]));
    }

    #[test]
    fn preimage_and_coords() {
        // m = [[2, 0], [0, 0]]; preimage of 4Z ⊕ 0 is 2Z ⊕ Z
        let m = SparseMatrix::from_dense(&[v(&[2, 0]), v(&[0, 0])]);
        let full = Lattice::coordinate(2, |_| true);
        let target = Lattice::span(2, vec![v(&[4, 0])]);
        assert_eq!(full.preimage(&m, &target), Lattice::span(2, vec![v(&[2, 0]), v(&[0, 1])]));
        assert_eq!(full.preimage(&m, &Lattice::zero(2)), Lattice::span(2, vec![v(&[0, 1])]));
        let l = Lattice::span(3, vec![v(&[1, 1, 0]), v(&[0, 2, 2])]);
        assert!(l.contains(&v(&[1, 3, 2])));
        assert!(!l.contains(&v(&[0, 1, 1])));
        assert_eq!(l.quotient(&Lattice::zero(3)).unwrap(), AbelianGroup::free(2));
        assert!(Lattice::zero(3).quotient(&l).is_none());
    }
}
