use num_bigint::BigInt;
use num_traits::One;

use super::matrix::SparseMatrix;
use super::scalar::Scalar;

/// Result of a Smith normal form computation: `left · M · right = D` where
/// `D` carries `invariant_factors` on its leading diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithNormalForm<T> {
    pub invariant_factors: Vec<T>,
    pub left_transform: SparseMatrix<T>,
    pub right_transform: SparseMatrix<T>,
    pub rank: usize,
}

impl<T: Scalar> SmithNormalForm<T> {
    /// The diagonal matrix `D` with the shape of the input.
    pub fn diagonal(&self, rows: usize, cols: usize) -> SparseMatrix<T> {
        SparseMatrix::from_triplets(
            rows,
            cols,
            self.invariant_factors.iter().enumerate().map(|(i, d)| (i, i, d.clone())),
        )
        .expect("factors fit the shape")
    }
}

struct Work<T> {
    a: Vec<Vec<T>>,
    l: Vec<Vec<T>>,
    r: Vec<Vec<T>>,
}

impl<T: Scalar> Work<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.l.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.r.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// row_i -= q * row_src
    fn row_axpy(&mut self, i: usize, src: usize, q: &T) {
        for m in [&mut self.a, &mut self.l] {
            let (s, t) = pair_mut(m, src, i);
            for (x, y) in t.iter_mut().zip(s.iter()) {
                if !y.is_zero() {
                    *x = x.clone() - q.clone() * y.clone();
                }
            }
        }
    }

    /// col_j -= q * col_src
    fn col_axpy(&mut self, j: usize, src: usize, q: &T) {
        for row in self.a.iter_mut().chain(self.r.iter_mut()) {
            if !row[src].is_zero() {
                let v = row[j].clone() - q.clone() * row[src].clone();
                row[j] = v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.l[i].iter_mut()) {
            *x = -x.clone();
        }
    }
}

fn pair_mut<T>(v: &mut [Vec<T>], src: usize, dst: usize) -> (&Vec<T>, &mut Vec<T>) {
    assert_ne!(src, dst);
    if src < dst {
        let (lo, hi) = v.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    }
}

fn dense_identity<T: Scalar>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

/// Smith normal form with unimodular transforms.
///
/// Pivots are chosen by minimal absolute value, ties broken by the
/// Markowitz fill-in estimate `(row_nnz - 1) * (col_nnz - 1)`.
pub fn smith_normal_form<T: Scalar>(m: &SparseMatrix<T>) -> SmithNormalForm<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work { a: m.to_dense(), l: dense_identity(rows), r: dense_identity(cols) };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = choose_pivot(&w.a, t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut residue = false;
            for i in t + 1..rows {
                if !w.a[i][t].is_zero() {
                    let q = w.a[i][t].div_floor(&w.a[t][t]);
                    w.row_axpy(i, t, &q);
                    residue |= !w.a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !w.a[t][j].is_zero() {
                    let q = w.a[t][j].div_floor(&w.a[t][t]);
                    w.col_axpy(j, t, &q);
                    residue |= !w.a[t][j].is_zero();
                }
            }
            if residue {
                // a remainder smaller than the pivot exists; promote it
                let best_row = (t + 1..rows)
                    .filter(|&i| !w.a[i][t].is_zero())
                    .min_by_key(|&i| w.a[i][t].abs());
                let best_col = (t + 1..cols)
                    .filter(|&j| !w.a[t][j].is_zero())
                    .min_by_key(|&j| w.a[t][j].abs());
                match (best_row, best_col) {
                    (Some(i), Some(j)) if w.a[t][j].abs() < w.a[i][t].abs() => w.swap_cols(t, j),
                    (Some(i), _) => w.swap_rows(t, i),
                    (None, Some(j)) => w.swap_cols(t, j),
                    (None, None) => unreachable!(),
                }
                continue;
            }
            let pivot = w.a[t][t].clone();
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !w.a[i][j].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    // row_t += row_i brings a non-multiple into the pivot row
                    let minus_one = -T::one();
                    w.row_axpy(t, i, &minus_one);
                }
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    let invariant_factors: Vec<T> = (0..t).map(|i| w.a[i][i].clone()).collect();
    SmithNormalForm {
        rank: invariant_factors.len(),
        invariant_factors,
        left_transform: SparseMatrix::from_dense(&w.l),
        right_transform: SparseMatrix::from_dense(&w.r),
    }
}

fn choose_pivot<T: Scalar>(a: &[Vec<T>], t: usize) -> Option<(usize, usize)> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let row_nnz: Vec<usize> = (0..rows).map(|i| (t..cols).filter(|&j| !a[i][j].is_zero()).count()).collect();
    let col_nnz: Vec<usize> = (0..cols).map(|j| (t..rows).filter(|&i| !a[i][j].is_zero()).count()).collect();
    let mut best: Option<(T, usize, usize, usize)> = None;
    for i in t..rows {
        for j in t..cols {
            if a[i][j].is_zero() {
                continue;
            }
            let mag = a[i][j].abs();
            let fill = (row_nnz[i] - 1) * (col_nnz[j] - 1);
            let better = match &best {
                None => true,
                Some((bm, bf, _, _)) => mag < *bm || (mag == *bm && fill < *bf),
            };
            if better {
                best = Some((mag, fill, i, j));
            }
        }
    }
    best.map(|(_, _, i, j)| (i, j))
}

/// Invariant factors (including units) of a possibly very large sparse
/// matrix, without transforms.
///
/// Unit pivots are eliminated sparsely, preferring indices touched by the
/// fewest vectors; whatever remains is handed to the dense routine over
/// [`BigInt`]. Returns `None` if `T` overflows.
pub fn sparse_invariant_factors<T: Scalar>(m: &SparseMatrix<T>) -> Option<Vec<BigInt>> {
    let mut elim = Eliminator::new(m);
    let units = elim.run()?;
    let residual = elim.residual();
    let mut factors = vec![BigInt::one(); units];
    if !residual.is_zero() {
        factors.extend(smith_normal_form(&residual).invariant_factors);
    }
    Some(factors)
}

/// Rank over the rationals of the same matrix.
pub fn sparse_rank<T: Scalar>(m: &SparseMatrix<T>) -> Option<usize> {
    sparse_invariant_factors(m).map(|f| f.len())
}

struct Eliminator<T> {
    rows: usize,
    vecs: Vec<Option<Vec<(u32, T)>>>,
    occ: Vec<Vec<u32>>,
}

impl<T: Scalar> Eliminator<T> {
    fn new(m: &SparseMatrix<T>) -> Self {
        let mut occ: Vec<Vec<u32>> = vec![Vec::new(); m.rows()];
        let vecs = m
            .columns()
            .iter()
            .enumerate()
            .map(|(j, c)| {
                for (i, _) in c {
                    occ[*i].push(j as u32);
                }
                if c.is_empty() {
                    None
                } else {
                    Some(c.iter().map(|(i, v)| (*i as u32, v.clone())).collect())
                }
            })
            .collect();
        Eliminator { rows: m.rows(), vecs, occ }
    }

    fn coefficient(&self, v: u32, idx: u32) -> Option<&T> {
        let vec = self.vecs[v as usize].as_ref()?;
        vec.binary_search_by_key(&idx, |e| e.0).ok().map(|k| &vec[k].1)
    }

    /// Refreshes and returns the vectors that currently involve `idx`.
    fn live(&mut self, idx: u32) -> Vec<u32> {
        let mut list = std::mem::take(&mut self.occ[idx as usize]);
        list.sort_unstable();
        list.dedup();
        list.retain(|&v| self.coefficient(v, idx).is_some());
        self.occ[idx as usize] = list.clone();
        list
    }

    /// Eliminates one unit pivot at `idx` if possible. Returns Ok(true) on
    /// success, Ok(false) if no unit entry exists there.
    fn pivot_at(&mut self, idx: u32) -> Option<bool> {
        let live = self.live(idx);
        let pick = live
            .iter()
            .copied()
            .filter(|&v| self.coefficient(v, idx).is_some_and(|c| c.abs().is_one()))
            .min_by_key(|&v| (self.vecs[v as usize].as_ref().map_or(0, Vec::len), v));
        let Some(p) = pick else { return Some(false) };
        let pvec = self.vecs[p as usize].take().expect("live pivot");
        let unit = self.coefficient_in(&pvec, idx).clone();
        for &w in &live {
            if w == p {
                continue;
            }
            let c = self.coefficient(w, idx).cloned().expect("live vector");
            // w -= (c / unit) * pvec, and 1/unit == unit for units
            let factor = c * unit.clone();
            let old = self.vecs[w as usize].take().expect("live vector");
            let (merged, fresh) = sub_scaled(&old, &pvec, &factor)?;
            for i in fresh {
                self.occ[i as usize].push(w);
            }
            self.vecs[w as usize] = if merged.is_empty() { None } else { Some(merged) };
        }
        self.occ[idx as usize].clear();
        Some(true)
    }

    fn coefficient_in<'a>(&self, v: &'a [(u32, T)], idx: u32) -> &'a T {
        &v[v.binary_search_by_key(&idx, |e| e.0).expect("present")].1
    }

    fn run(&mut self) -> Option<usize> {
        use std::cmp::Reverse;
        use std::collections::BinaryHeap;
        let mut eliminated = 0;
        let mut done = vec![false; self.rows];
        loop {
            let mut heap: BinaryHeap<Reverse<(usize, u32)>> = (0..self.rows as u32)
                .filter(|&i| !done[i as usize])
                .map(|i| Reverse((self.occ[i as usize].len(), i)))
                .collect();
            let mut progress = false;
            while let Some(Reverse((key, idx))) = heap.pop() {
                if done[idx as usize] {
                    continue;
                }
                let count = self.live(idx).len();
                if count == 0 {
                    done[idx as usize] = true;
                    continue;
                }
                if count > key {
                    heap.push(Reverse((count, idx)));
                    continue;
                }
                if self.pivot_at(idx)? {
                    done[idx as usize] = true;
                    eliminated += 1;
                    progress = true;
                }
            }
            if !progress {
                return Some(eliminated);
            }
        }
    }

    fn residual(&self) -> SparseMatrix<BigInt> {
        let live: Vec<&Vec<(u32, T)>> = self.vecs.iter().flatten().collect();
        let mut idx: Vec<u32> = live.iter().flat_map(|v| v.iter().map(|e| e.0)).collect();
        idx.sort_unstable();
        idx.dedup();
        let columns = live
            .iter()
            .map(|v| {
                v.iter()
                    .map(|(i, c)| (idx.binary_search(i).expect("collected"), c.to_bigint()))
                    .collect()
            })
            .collect();
        SparseMatrix::from_columns(idx.len(), columns)
    }
}

/// `a - f * b` on sorted sparse vectors; also returns indices new to `a`.
fn sub_scaled<T: Scalar>(a: &[(u32, T)], b: &[(u32, T)], f: &T) -> Option<(Vec<(u32, T)>, Vec<u32>)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut fresh = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = T::zero().sub_mul(f, &b[j].1)?;
            fresh.push(b[j].0);
            out.push((b[j].0, v));
            j += 1;
        } else {
            let v = a[i].1.sub_mul(f, &b[j].1)?;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some((out, fresh))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use num_traits::Signed;

    fn big(rows: &[&[i64]]) -> SparseMatrix<BigInt> {
        SparseMatrix::from_dense(
            &rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect::<Vec<_>>(),
        )
    }

    fn check(m: &SparseMatrix<BigInt>) -> SmithNormalForm<BigInt> {
        let s = smith_normal_form(m);
        let d = s.left_transform.mul(m).unwrap().mul(&s.right_transform).unwrap();
        assert_eq!(d, s.diagonal(m.rows(), m.cols()));
        assert!(s.left_transform.determinant().unwrap().abs().is_one());
        assert!(s.right_transform.determinant().unwrap().abs().is_one());
        for w in s.invariant_factors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    fn factors(s: &SmithNormalForm<BigInt>) -> Vec<i64> {
        s.invariant_factors.iter().map(|v| i64::try_from(v).unwrap()).collect()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(factors(&check(&big(&[&[2, 0], &[0, 3]]))), vec![1, 6]);
        assert_eq!(factors(&check(&big(&[&[2, 4], &[6, 8]]))), vec![2, 4]);
        assert!(check(&big(&[&[0, 0], &[0, 0]])).invariant_factors.is_empty());
    }

    #[test]
    fn rectangular_and_degenerate() {
        assert_eq!(factors(&check(&big(&[&[1, 1, 1]]))), vec![1]);
        assert_eq!(factors(&check(&big(&[&[2], &[4], &[6]]))), vec![2]);
        let empty = SparseMatrix::<BigInt>::zeros(0, 3);
        assert!(check(&empty).invariant_factors.is_empty());
        assert_eq!(factors(&check(&big(&[&[4, 6], &[6, 9], &[2, 3]]))), vec![1]);
    }

    #[test]
    fn sparse_path_agrees_with_dense() {
        let m = big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        // known invariant factors of this classic example
        assert_eq!(factors(&check(&m)), vec![2, 6, 12]);
        let sparse = sparse_invariant_factors(&m).unwrap();
        assert_eq!(sparse, check(&m).invariant_factors);
        let small: SparseMatrix<i64> = m.map_scalar(|v| i64::try_from(v).ok()).unwrap();
        assert_eq!(sparse_invariant_factors(&small).unwrap(), sparse);
    }

    #[test]
    fn i64_overflow_is_reported() {
        let huge = i64::MAX / 2;
        let m = SparseMatrix::from_dense(&[vec![1, huge], vec![huge, 1]]);
        assert!(sparse_invariant_factors::<i64>(&m).is_none());
        let wide = m.to_bigint();
        assert_eq!(sparse_invariant_factors(&wide).unwrap().len(), 2);
    }
}
