//! Slow, independent reference implementations used to cross-check the
//! production algorithms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arccomplexes::{DiscArc, DiscModel};

/// Invariant factors by textbook elimination on a dense matrix: take the
/// first nonzero entry as pivot, run Euclid on its column and row (always
/// reducing by the smallest entry) until both are clear, recurse; finally
/// repair divisibility with gcd/lcm swaps on the diagonal.
pub fn dense_invariant_factors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero())
        else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            // Euclid down column t, pivoting on its smallest entry each round
            loop {
                let i = (t..rows).filter(|&i| !a[i][t].is_zero()).min_by_key(|&i| a[i][t].abs()).unwrap();
                a.swap(t, i);
                let mut clear = true;
                for i in t + 1..rows {
                    if a[i][t].is_zero() {
                        continue;
                    }
                    let qt = a[i][t].div_floor(&a[t][t]);
                    for j in t..cols {
                        let v = &a[t][j] * &qt;
                        a[i][j] -= v;
                    }
                    clear &= a[i][t].is_zero();
                }
                if clear {
                    break;
                }
            }
            // then along row t
            let mut touched = false;
            loop {
                let j = (t..cols).filter(|&j| !a[t][j].is_zero()).min_by_key(|&j| a[t][j].abs()).unwrap();
                if j != t {
                    touched = true;
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                }
                let mut clear = true;
                for j in t + 1..cols {
                    if a[t][j].is_zero() {
                        continue;
                    }
                    touched = true;
                    let qt = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let v = &row[t] * &qt;
                        row[j] -= v;
                    }
                    clear &= a[t][j].is_zero();
                }
                if clear {
                    break;
                }
            }
            if !touched || (t + 1..rows).all(|i| a[i][t].is_zero()) {
                break;
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

/// Rank of a dense integer matrix.
pub fn dense_rank(m: &[Vec<BigInt>]) -> usize {
    dense_invariant_factors(m).len()
}

/// Homology at the middle of `Z^a <-d_out- Z^dim <-d_in- Z^b` as
/// `(free rank, torsion factors)`, from dense invariant factors.
pub fn dense_homology(dim: usize, d_out: &[Vec<BigInt>], d_in: &[Vec<BigInt>]) -> (usize, Vec<BigInt>) {
    let out_rank = dense_rank(d_out);
    let f = dense_invariant_factors(d_in);
    let torsion = f.iter().filter(|d| !d.is_one()).cloned().collect();
    (dim - out_rank - f.len(), torsion)
}

/// `H_k(Z/n; Z)` from the periodic resolution `… --N--> Z[C_n] --(1−t)-->
/// Z[C_n] → Z`: after coinvariants the differentials alternate `0` (odd
/// degrees) and `n` (even positive degrees).
pub fn periodic_cyclic_homology(n: u64, k: usize) -> (usize, Vec<BigInt>) {
    let d = |j: usize| -> Vec<Vec<BigInt>> {
        match j {
            0 => vec![],
            j if j % 2 == 1 => vec![vec![BigInt::zero()]],
            _ => vec![vec![BigInt::from(n)]],
        }
    };
    dense_homology(1, &d(k), &d(k + 1))
}

#[derive(Clone, Copy)]
enum Piece {
    /// Chord inside the disc between two attachments.
    Inside(usize, usize),
    /// Arc outside the disc between two attachments.
    Outside(usize, usize),
}

/// Realizability of a family of disc arcs in the refined circle: each
/// marked point `i` and each gap between `i` and `i+1` becomes a slot on
/// the circle, and ends of arcs occupy distinct positions within their
/// slot. A chord is an inside segment between point slots. A loop based at
/// `p` around `first..=last` is drawn in one of two ways: inward (inside
/// from `p` to the gap before `first`, outside around the enclosed points,
/// inside back from the gap after `last`) or outward (outside from `p` to
/// the gap before `first`, inside past the enclosed points, outside back to
/// `p`). The family is realizable iff for some choice of drawings and of
/// positions within every slot, no two pieces on the same side of the
/// circle have interleaving ends.
pub fn realizable(model: &DiscModel, arcs: &[DiscArc]) -> bool {
    let loops = arcs.iter().filter(|a| a.is_loop()).count();
    (0u64..1 << loops).any(|outward| realizable_with(model, arcs, outward))
}

fn realizable_with(model: &DiscModel, arcs: &[DiscArc], outward: u64) -> bool {
    let q = model.q as usize;
    let point = |i: u32| 2 * i as usize;
    let gap_after = |i: u32| 2 * i as usize + 1;
    let mut slot_of: Vec<usize> = Vec::new();
    let mut pieces: Vec<Piece> = Vec::new();
    let mut attach = |slot: usize| {
        slot_of.push(slot);
        slot_of.len() - 1
    };
    let mut k = 0;
    for a in arcs {
        match *a {
            DiscArc::Chord { i, j } => {
                let (x, y) = (attach(point(i)), attach(point(j)));
                pieces.push(Piece::Inside(x, y));
            }
            DiscArc::Loop { base, first, last } => {
                let before_first = (first + model.q - 1) % model.q;
                let (x, y) = (attach(point(base)), attach(point(base)));
                let (gx, gy) = (attach(gap_after(before_first)), attach(gap_after(last)));
                if outward >> k & 1 == 0 {
                    pieces.push(Piece::Inside(x, gx));
                    pieces.push(Piece::Inside(y, gy));
                    pieces.push(Piece::Outside(gx, gy));
                } else {
                    pieces.push(Piece::Outside(x, gx));
                    pieces.push(Piece::Inside(gx, gy));
                    pieces.push(Piece::Outside(gy, y));
                }
                k += 1;
            }
        }
    }
    let mut by_slot: Vec<Vec<usize>> = vec![Vec::new(); 2 * q];
    for (att, &s) in slot_of.iter().enumerate() {
        by_slot[s].push(att);
    }
    let mut rank = vec![0usize; slot_of.len()];
    search(&by_slot, 0, &mut rank, &slot_of, &pieces)
}

fn search(by_slot: &[Vec<usize>], s: usize, rank: &mut [usize], slot_of: &[usize], pieces: &[Piece]) -> bool {
    if s == by_slot.len() {
        return planar(rank, slot_of, pieces);
    }
    let members = &by_slot[s];
    let mut perm: Vec<usize> = (0..members.len()).collect();
    loop {
        for (k, &att) in members.iter().enumerate() {
            rank[att] = perm[k];
        }
        if search(by_slot, s + 1, rank, slot_of, pieces) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn planar(rank: &[usize], slot_of: &[usize], pieces: &[Piece]) -> bool {
    // linear position: slot-major, rank-minor; 64 positions per slot is ample
    let pos = |a: usize| slot_of[a] * 64 + rank[a];
    let crosses = |(x, y): (usize, usize), (u, v): (usize, usize)| {
        let (x, y) = (pos(x).min(pos(y)), pos(x).max(pos(y)));
        let inside = |z: usize| x < z && z < y;
        inside(pos(u)) != inside(pos(v))
    };
    // both sides of the circle are discs, so pieces on the same side cross
    // exactly when their ends interleave
    pieces.iter().enumerate().all(|(k, a)| {
        pieces[k + 1..].iter().all(|b| match (*a, *b) {
            (Piece::Inside(x, y), Piece::Inside(u, v)) | (Piece::Outside(x, y), Piece::Outside(u, v)) => {
                !crosses((x, y), (u, v))
            }
            _ => true,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{smith_normal_form, SparseMatrix};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dense(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn dense_oracle_examples() {
        let f = |m: &[&[i64]]| dense_invariant_factors(&dense(m));
        assert_eq!(f(&[&[2, 0], &[0, 3]]), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(f(&[&[2, 4], &[6, 8]]), vec![BigInt::from(2), BigInt::from(4)]);
        assert!(f(&[&[0, 0], &[0, 0]]).is_empty());
        assert_eq!(
            f(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]),
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
    }

    #[test]
    fn dense_oracle_agrees_with_snf() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let (r, c) = (rng.gen_range(1..9), rng.gen_range(1..9));
            let m: Vec<Vec<BigInt>> =
                (0..r).map(|_| (0..c).map(|_| BigInt::from(rng.gen_range(-4..=4))).collect()).collect();
            let s = smith_normal_form(&SparseMatrix::from_dense(&m));
            assert_eq!(s.invariant_factors, dense_invariant_factors(&m));
        }
    }

    #[test]
    fn periodic_oracle() {
        assert_eq!(periodic_cyclic_homology(3, 0), (1, vec![]));
        assert_eq!(periodic_cyclic_homology(3, 1), (0, vec![BigInt::from(3)]));
        assert_eq!(periodic_cyclic_homology(3, 2), (0, vec![]));
        assert_eq!(periodic_cyclic_homology(3, 3), (0, vec![BigInt::from(3)]));
    }

    #[test]
    fn single_arcs_are_realizable() {
        let m = DiscModel::unlabeled(5).unwrap();
        for a in m.arcs(true) {
            assert!(realizable(&m, &[a]), "{a}");
        }
    }

    #[test]
    fn crossing_chords_are_not() {
        let m = DiscModel::unlabeled(4).unwrap();
        assert!(!realizable(&m, &[DiscArc::chord(0, 2), DiscArc::chord(1, 3)]));
        assert!(realizable(&m, &[DiscArc::chord(0, 2), DiscArc::chord(0, 3)]));
    }
}
