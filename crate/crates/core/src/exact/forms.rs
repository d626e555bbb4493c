//! Invariants of symmetric integer bilinear forms.
//!
//! A possibly degenerate symmetric Gram matrix is reduced modulo its radical
//! (the saturated kernel); the invariants reported are those of the induced
//! nondegenerate form on the quotient lattice: rank, Gram determinant,
//! signature, and Smith invariant factors.

use super::matrix::IntMatrix;
use super::Rational;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Invariants of a symmetric bilinear form on a finitely generated lattice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymFormInvariants {
    /// Rank of the form (ambient rank minus radical rank).
    pub rank: usize,
    /// Gram determinant of the induced form on the radical quotient
    /// (1 for the zero-rank form).
    pub determinant: BigInt,
    /// `(positive, negative)` inertia indices; they sum to `rank`.
    pub signature: (usize, usize),
    /// Nonzero Smith invariant factors of a quotient Gram basis, in
    /// divisibility order (entries equal to 1 included).
    pub invariant_factors: Vec<BigInt>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FormError {
    NotSquare { rows: usize, cols: usize },
    NotSymmetric,
}

impl fmt::Display for FormError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormError::NotSquare { rows, cols } => {
                write!(f, "Gram matrix must be square, got {rows}x{cols}")
            }
            FormError::NotSymmetric => write!(f, "Gram matrix must be symmetric"),
        }
    }
}

impl std::error::Error for FormError {}

/// Computes the invariants of a symmetric integer Gram matrix.
///
/// Degenerate input is handled by passing to the quotient of the ambient
/// lattice by the radical `{ v : G v = 0 }`, which is saturated, so the
/// quotient is again a free lattice carrying a nondegenerate form.
pub fn sym_invariants(gram: &IntMatrix) -> Result<SymFormInvariants, FormError> {
    if !gram.is_square() {
        return Err(FormError::NotSquare {
            rows: gram.rows(),
            cols: gram.cols(),
        });
    }
    if !gram.is_symmetric() {
        return Err(FormError::NotSymmetric);
    }
    let quotient = radical_quotient_gram(gram);
    Ok(invariants_of_nondegenerate(&quotient))
}

/// Gram matrix of the induced form on (ambient lattice)/(radical).
///
/// The quotient basis is obtained by completing a radical basis to a basis of
/// the ambient lattice through the Smith transforms: if `K` is the saturated
/// radical with `P K Q = [I | 0]`, the last rows of `Q^{-1}` descend to a
/// basis of the quotient, and pairings are computed on those representatives
/// (well defined because radical vectors pair to zero with everything).
pub fn radical_quotient_gram(gram: &IntMatrix) -> IntMatrix {
    let radical = gram.kernel_saturated();
    let n = gram.rows();
    let r = radical.rows();
    if r == 0 {
        return gram.clone();
    }
    if r == n {
        return IntMatrix::empty(0); // identically zero form: 0x0 quotient
    }
    let t = radical.snf_with_transforms();
    for i in 0..r {
        debug_assert!(t.d.at(i, i).is_one(), "radical basis must be saturated");
    }
    let reps = IntMatrix::from_rows((r..n).map(|i| t.qinv.row(i).to_vec()).collect());
    reps.mul(gram).mul(&reps.transpose())
}

fn invariants_of_nondegenerate(gram: &IntMatrix) -> SymFormInvariants {
    let rank = gram.rows();
    let determinant = gram.det();
    debug_assert!(!determinant.is_zero() || rank == 0);
    let signature = signature_by_congruence(gram);
    debug_assert_eq!(signature.0 + signature.1, rank);
    let invariant_factors = gram.snf();
    SymFormInvariants {
        rank,
        determinant,
        signature,
        invariant_factors,
    }
}

/// Signature of a symmetric matrix by exact rational congruence
/// diagonalization. Zero diagonal entries are repaired with the hyperbolic
/// trick (add a row/column pair), which works over any field where 2 is
/// invertible.
pub fn signature_by_congruence(gram: &IntMatrix) -> (usize, usize) {
    let n = gram.rows();
    let mut s: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Rational::from_integer(gram.at(i, j).clone()))
                .collect()
        })
        .collect();
    let mut pos = 0;
    let mut neg = 0;
    for k in 0..n {
        if s[k][k].is_zero() {
            // Bring a nonzero diagonal entry to position k, manufacturing one
            // from an off-diagonal entry if necessary.
            let direct = (k + 1..n).find(|&i| !s[i][i].is_zero());
            if let Some(i) = direct {
                sym_swap(&mut s, k, i);
            } else if let Some((i, j)) = find_offdiag(&s, k) {
                // row_i += row_j and col_i += col_j turns the (i,i) entry
                // into 2*s[i][j] != 0.
                sym_add(&mut s, i, j);
                sym_swap(&mut s, k, i);
            } else {
                break; // all-zero trailing block: no further inertia
            }
        }
        let pivot = s[k][k].clone();
        if pivot.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if s[i][k].is_zero() {
                continue;
            }
            let f = &s[i][k] / &pivot;
            for j in k..n {
                let delta = &f * &s[k][j];
                s[i][j] -= delta;
            }
            for j in k..n {
                let delta = &f * &s[j][k];
                s[j][i] -= delta;
            }
        }
    }
    (pos, neg)
}

fn find_offdiag(s: &[Vec<Rational>], k: usize) -> Option<(usize, usize)> {
    let n = s.len();
    for i in k..n {
        for j in i + 1..n {
            if !s[i][j].is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

fn sym_swap(s: &mut [Vec<Rational>], a: usize, b: usize) {
    if a == b {
        return;
    }
    s.swap(a, b);
    for row in s.iter_mut() {
        row.swap(a, b);
    }
}

fn sym_add(s: &mut Vec<Vec<Rational>>, target: usize, source: usize) {
    let n = s.len();
    for j in 0..n {
        let v = s[source][j].clone();
        s[target][j] += v;
    }
    for i in 0..n {
        let v = s[i][source].clone();
        s[i][target] += v;
    }
}
