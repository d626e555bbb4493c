//! Small dense linear algebra over a generic exact field: rank, kernels,
//! solving, and a fraction-free integer rank route for matrices over number
//! fields (realify through the regular representation, clear denominators,
//! then Bareiss on integers).

use super::matrix::IntMatrix;
use super::{Field, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Row-reduces `m` in place (plain Gauss-Jordan over the field, which is
/// exact) and returns the pivot columns.
pub fn row_reduce<K: Field>(m: &mut Vec<Vec<K>>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for j in c..cols {
            m[r][j] = m[r][j].clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let delta = f.clone() * m[r][j].clone();
                    m[i][j] = m[i][j].clone() - delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<K: Field>(m: &[Vec<K>]) -> usize {
    let mut work = m.to_vec();
    row_reduce(&mut work).len()
}

/// Basis of the right kernel `{ x : m x = 0 }`, one vector per non-pivot
/// column of the reduced form.
pub fn kernel<K: Field>(m: &[Vec<K>]) -> Vec<Vec<K>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut work = m.to_vec();
    let pivots = row_reduce(&mut work);
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![K::zero(); cols];
        v[free] = K::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -work[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solves `m x = v` over the field, returning any solution.
pub fn solve<K: Field>(m: &[Vec<K>], v: &[K]) -> Option<Vec<K>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    assert_eq!(rows, v.len(), "dimension mismatch");
    let mut aug: Vec<Vec<K>> = m
        .iter()
        .zip(v)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.contains(&cols) {
        return None; // inconsistent: pivot in the augmented column
    }
    let mut x = vec![K::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols].clone();
    }
    Some(x)
}

/// Inverse of a square matrix over the field, if it exists.
pub fn invert<K: Field>(m: &[Vec<K>]) -> Option<Vec<Vec<K>>> {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    let mut aug: Vec<Vec<K>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { K::one() } else { K::zero() });
            }
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    // Full rank means the left block owns the first n pivots; a pivot
    // spilling into the identity block signals a singular matrix.
    if pivots.iter().filter(|&&c| c < n).count() < n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Determinant over the field by Gaussian elimination with row swaps.
pub fn det<K: Field>(m: &[Vec<K>]) -> K {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    let mut a = m.to_vec();
    let mut acc = K::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return K::zero();
        };
        if p != k {
            a.swap(p, k);
            acc = -acc;
        }
        let pivot = a[k][k].clone();
        acc = acc * pivot.clone();
        let inv = pivot.inv().expect("nonzero pivot");
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone() * inv.clone();
            for j in k..n {
                let delta = f.clone() * a[k][j].clone();
                a[i][j] = a[i][j].clone() - delta;
            }
        }
    }
    acc
}

/// Matrix-by-vector over the field.
pub fn mat_vec<K: Field>(m: &[Vec<K>], v: &[K]) -> Vec<K> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(K::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
        })
        .collect()
}

/// Matrix product over the field.
pub fn mat_mul<K: Field>(a: &[Vec<K>], b: &[Vec<K>]) -> Vec<Vec<K>> {
    let n = a.len();
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![K::zero(); cols]; n];
    for i in 0..n {
        assert_eq!(a[i].len(), inner, "dimension mismatch");
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..cols {
                let delta = aik.clone() * b[k][j].clone();
                out[i][j] = out[i][j].clone() + delta;
            }
        }
    }
    out
}

/// Replaces each entry by its regular-representation block over Q, turning an
/// `r x c` matrix over a degree-`d` field into an `rd x cd` rational matrix
/// whose rank is `d` times the field rank.
pub fn realify<K: Field>(m: &[Vec<K>]) -> Vec<Vec<Rational>> {
    let d = K::DEGREE;
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = vec![vec![Rational::zero(); cols * d]; rows * d];
    for (i, row) in m.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            let block = entry.repr();
            for bi in 0..d {
                for bj in 0..d {
                    out[i * d + bi][j * d + bj] = block[bi][bj].clone();
                }
            }
        }
    }
    out
}

/// Clears denominators row by row, producing an integer matrix with the same
/// rank as the rational input.
pub fn integerize(m: &[Vec<Rational>]) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect();
    if rows.is_empty() {
        IntMatrix::empty(0)
    } else {
        IntMatrix::from_rows(rows)
    }
}

/// Rank of a matrix over a number field, computed fraction-free: the matrix
/// is realified over Q, denominators are cleared, and the integer rank from
/// Bareiss elimination is divided back by the field degree.
pub fn rank_fraction_free<K: Field>(m: &[Vec<K>]) -> usize {
    if m.is_empty() || m[0].is_empty() {
        return 0;
    }
    let int = integerize(&realify(m));
    let r = int.rank();
    assert_eq!(r % K::DEGREE, 0, "realified rank must be a degree multiple");
    r / K::DEGREE
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int, Cyclotomic};

    fn qmat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat_int(x)).collect())
            .collect()
    }

    #[test]
    fn rank_over_rationals() {
        assert_eq!(rank(&qmat(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&qmat(&[&[1, 2], &[3, 4]])), 2);
        assert_eq!(rank(&qmat(&[&[0, 0], &[0, 0]])), 0);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = qmat(&[&[1, 2, 3], &[4, 5, 6]]);
        let k = kernel(&m);
        assert_eq!(k.len(), 1);
        for v in &k {
            assert!(mat_vec(&m, v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_and_invert() {
        let m = qmat(&[&[2, 1], &[1, 1]]);
        let v = vec![rat_int(3), rat_int(2)];
        let x = solve(&m, &v).unwrap();
        assert_eq!(mat_vec(&m, &x), v);
        let inv = invert(&m).unwrap();
        let prod = mat_mul(&m, &inv);
        assert_eq!(prod, qmat(&[&[1, 0], &[0, 1]]));
        assert!(invert(&qmat(&[&[1, 2], &[2, 4]])).is_none());
        assert!(solve(&qmat(&[&[1, 1], &[1, 1]]), &[rat_int(0), rat_int(1)]).is_none());
    }

    #[test]
    fn det_over_field() {
        assert_eq!(det(&qmat(&[&[2, 1], &[1, 1]])), rat_int(1));
        assert_eq!(det(&qmat(&[&[1, 2], &[2, 4]])), rat_int(0));
        assert_eq!(det(&qmat(&[&[0, 1], &[1, 0]])), rat_int(-1));
        let w = Cyclotomic::omega();
        let m = vec![
            vec![w.clone(), Cyclotomic::zero()],
            vec![Cyclotomic::zero(), w.clone()],
        ];
        assert_eq!(det(&m), w.clone() * w);
    }

    #[test]
    fn rank_over_cyclotomic_field() {
        let w = Cyclotomic::omega();
        // Second row is w times the first: rank 1 over Q(w).
        let m = vec![
            vec![Cyclotomic::from_ints(1, 0), Cyclotomic::from_ints(2, 1)],
            vec![w.clone(), w.clone() * Cyclotomic::from_ints(2, 1)],
        ];
        assert_eq!(rank(&m), 1);
        assert_eq!(rank_fraction_free(&m), 1);
        // Independent rows: rank 2 both ways.
        let m2 = vec![
            vec![Cyclotomic::from_ints(1, 0), Cyclotomic::from_ints(0, 1)],
            vec![Cyclotomic::from_ints(0, 1), Cyclotomic::from_ints(1, 0)],
        ];
        assert_eq!(rank(&m2), 2);
        assert_eq!(rank_fraction_free(&m2), 2);
    }

    #[test]
    fn fraction_free_rank_matches_field_rank_on_rationals() {
        let m = vec![
            vec![rat(1, 2), rat(1, 3), rat_int(1)],
            vec![rat(1, 4), rat(1, 6), rat(1, 2)],
            vec![rat_int(0), rat_int(1), rat(7, 5)],
        ];
        assert_eq!(rank(&m), rank_fraction_free(&m));
        assert_eq!(rank_fraction_free(&m), 2);
    }

    #[test]
    fn integerize_preserves_rowwise_proportions() {
        let m = vec![vec![rat(1, 2), rat(3, 4)], vec![rat(2, 3), rat_int(1)]];
        let int = integerize(&m);
        assert_eq!(int.at(0, 0), &BigInt::from(2));
        assert_eq!(int.at(0, 1), &BigInt::from(3));
        assert_eq!(int.at(1, 0), &BigInt::from(2));
        assert_eq!(int.at(1, 1), &BigInt::from(3));
    }
}
