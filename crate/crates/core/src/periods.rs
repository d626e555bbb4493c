//! The rank-10 symplectic module with Eisenstein multiplication, its
//! exterior square carrying the theta-twisted cup product, and the exact
//! lattice computations built on it.
//!
//! The module has ordered basis `(v0..v4, w v0..w v4)` where `w` acts with
//! `w^2 = -1 - w`. The alternating form pairs `v_i` with `w v_i` through
//! `diag(-1, 1, 1, 1, 1)` and vanishes on all other basis pairs. Setting
//! `theta = -v0 ^ w v0 + sum_{i>=1} v_i ^ w v_i`, the degree map on the top
//! exterior power is normalized so that `deg(theta^5 / 5!) = +1`, and the
//! symmetric cup form on bivectors is
//! `cup(a, b) = deg((theta^3 / 3!) ^ a ^ b)`.
//!
//! On top of this sit: the rank-45 lattice spanned by the integral
//! bivectors together with `tau = theta / 2`; its sublattice fixed by the
//! induced `w`-action (rank 25, determinant 3^10); the orthogonal
//! complement of `tau` in the fixed part (rank 24, determinant 5 * 3^10);
//! and the block Gram models these are compared against, including the
//! 3-scaled models and their determinant bookkeeping.

use crate::exact::{rat_int, sym_invariants, IntMatrix, Rational, SymFormInvariants};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Rank of the underlying module.
pub const H1_RANK: usize = 10;
/// Number of basis bivectors.
pub const BIVECTOR_RANK: usize = 45;

/// Lexicographic position of the basis bivector `e_a ^ e_b`, `a < b`.
pub fn pair_index(a: usize, b: usize) -> usize {
    assert!(a < b && b < H1_RANK);
    // Pairs (0,1)..(0,9), (1,2)..(1,9), ...
    a * (2 * H1_RANK - a - 1) / 2 + (b - a - 1)
}

/// Inverse of [`pair_index`].
pub fn index_pair(idx: usize) -> (usize, usize) {
    let mut rest = idx;
    for a in 0..H1_RANK {
        let row = H1_RANK - a - 1;
        if rest < row {
            return (a, a + 1 + rest);
        }
        rest -= row;
    }
    panic!("bivector index {idx} out of range");
}

/// An element of the exterior algebra on the ten generators, with rational
/// coefficients. Keys are strictly increasing index tuples.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Multivector {
    terms: BTreeMap<Vec<u8>, Rational>,
}

impl Multivector {
    pub fn zero() -> Self {
        Multivector {
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(c: Rational) -> Self {
        let mut m = Multivector::zero();
        m.insert(Vec::new(), c);
        m
    }

    /// `c * e_{i1} ^ ... ^ e_{ik}` for an arbitrary index list: sorts the
    /// indices, tracking the sign; repeated indices give zero.
    pub fn basis(indices: &[usize], c: Rational) -> Self {
        let mut idx: Vec<u8> = indices.iter().map(|&i| i as u8).collect();
        let mut sign_flips = 0usize;
        // Insertion sort, counting transpositions.
        for i in 1..idx.len() {
            let mut j = i;
            while j > 0 && idx[j - 1] > idx[j] {
                idx.swap(j - 1, j);
                sign_flips += 1;
                j -= 1;
            }
        }
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return Multivector::zero();
        }
        let c = if sign_flips % 2 == 0 { c } else { -c };
        let mut m = Multivector::zero();
        m.insert(idx, c);
        m
    }

    fn insert(&mut self, key: Vec<u8>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get() + &c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    slot.insert(sum);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Multivector::zero();
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(k.clone(), v * c);
        }
        out
    }

    pub fn wedge(&self, rhs: &Self) -> Self {
        let mut out = Multivector::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                if ka.iter().any(|i| kb.contains(i)) {
                    continue;
                }
                let mut inversions = 0usize;
                for &a in ka {
                    for &b in kb {
                        if a > b {
                            inversions += 1;
                        }
                    }
                }
                let mut key: Vec<u8> = ka.iter().chain(kb.iter()).copied().collect();
                key.sort_unstable();
                let mut c = ca * cb;
                if inversions % 2 == 1 {
                    c = -c;
                }
                out.insert(key, c);
            }
        }
        out
    }

    pub fn coefficient(&self, indices: &[usize]) -> Rational {
        let key: Vec<u8> = indices.iter().map(|&i| i as u8).collect();
        self.terms.get(&key).cloned().unwrap_or_else(Rational::zero)
    }
}

/// Degree of a top-degree multivector. The orientation is fixed by
/// `deg(theta^5 / 5!) = +1`, which makes `deg(e_0 ^ ... ^ e_9) = -1`.
pub fn deg(top: &Multivector) -> Rational {
    -top.coefficient(&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9])
}

/// Signs `d_0..d_4 = -1, 1, 1, 1, 1` pairing `v_i` with `w v_i`.
fn pair_signs() -> [i64; 5] {
    [-1, 1, 1, 1, 1]
}

/// Theta as a multivector: `sum_k d_k e_k ^ e_{5+k}`.
pub fn theta_multivector() -> Multivector {
    let mut t = Multivector::zero();
    for (k, d) in pair_signs().into_iter().enumerate() {
        t = t.add(&Multivector::basis(&[k, 5 + k], rat_int(d)));
    }
    t
}

/// `theta^p / p!`, exactly.
pub fn theta_power_over_factorial(p: u32) -> Multivector {
    let mut acc = Multivector::scalar(Rational::one());
    let t = theta_multivector();
    let mut factorial = BigInt::one();
    for i in 1..=p {
        acc = acc.wedge(&t);
        factorial *= BigInt::from(i);
    }
    acc.scale(&Rational::new(BigInt::one(), factorial))
}

/// Coordinates of theta over the 45 basis bivectors.
pub fn theta() -> Vec<Rational> {
    let mut v = vec![Rational::zero(); BIVECTOR_RANK];
    for (k, d) in pair_signs().into_iter().enumerate() {
        v[pair_index(k, 5 + k)] = rat_int(d);
    }
    v
}

/// Coordinates of `tau = theta / 2` (half-integral).
pub fn tau() -> Vec<Rational> {
    theta()
        .into_iter()
        .map(|c| c / rat_int(2))
        .collect()
}

/// Expands bivector coordinates into the exterior algebra.
pub fn bivector_from_coords(v: &[Rational]) -> Multivector {
    assert_eq!(v.len(), BIVECTOR_RANK);
    let mut m = Multivector::zero();
    for (idx, c) in v.iter().enumerate() {
        if !c.is_zero() {
            let (a, b) = index_pair(idx);
            m = m.add(&Multivector::basis(&[a, b], c.clone()));
        }
    }
    m
}

/// Coordinates of `e_a ^ e_b` for arbitrary distinct `a`, `b` (with the
/// sign of the swap when `a > b`).
pub fn wedge2_coords(a: usize, b: usize) -> Vec<Rational> {
    assert_ne!(a, b);
    let mut v = vec![Rational::zero(); BIVECTOR_RANK];
    if a < b {
        v[pair_index(a, b)] = Rational::one();
    } else {
        v[pair_index(b, a)] = -Rational::one();
    }
    v
}

/// The symmetric cup form on bivectors:
/// `cup(a, b) = deg((theta^3 / 3!) ^ a ^ b)`.
pub fn cup_form(a: &[Rational], b: &[Rational]) -> Rational {
    let t3 = theta_power_over_factorial(3);
    deg(&t3
        .wedge(&bivector_from_coords(a))
        .wedge(&bivector_from_coords(b)))
}

/// The alternating form on the rank-10 module recovered through the
/// exterior algebra: `deg((theta^4 / 4!) ^ x ^ y)` for vectors `x`, `y`.
pub fn alt_bridge_form(x: &[Rational], y: &[Rational]) -> Rational {
    assert_eq!(x.len(), H1_RANK);
    assert_eq!(y.len(), H1_RANK);
    let vec_of = |v: &[Rational]| {
        let mut m = Multivector::zero();
        for (i, c) in v.iter().enumerate() {
            m = m.add(&Multivector::basis(&[i], c.clone()));
        }
        m
    };
    let t4 = theta_power_over_factorial(4);
    deg(&t4.wedge(&vec_of(x)).wedge(&vec_of(y)))
}

/// The alternating Gram matrix on the rank-10 module: `v_i` pairs with
/// `w v_i` through `diag(-1, 1, 1, 1, 1)`; all other basis pairs vanish.
pub fn alt_form_h1() -> IntMatrix {
    let mut j = IntMatrix::zero(H1_RANK, H1_RANK);
    for (k, d) in pair_signs().into_iter().enumerate() {
        j.set(k, 5 + k, BigInt::from(d));
        j.set(5 + k, k, BigInt::from(-d));
    }
    j
}

/// Image of the basis vector `e_i` under multiplication by `w`:
/// `v_i -> w v_i` and `w v_i -> -v_i - w v_i`.
fn omega_image(i: usize) -> Vec<(usize, i64)> {
    if i < 5 {
        vec![(5 + i, 1)]
    } else {
        vec![(i - 5, -1), (i, -1)]
    }
}

/// Multiplication by `w` on the rank-10 module, as a matrix whose row `i`
/// is the image of `e_i`; row vectors of coordinates transform by right
/// multiplication.
pub fn omega_h1_rows() -> IntMatrix {
    let mut m = IntMatrix::zero(H1_RANK, H1_RANK);
    for i in 0..H1_RANK {
        for (j, c) in omega_image(i) {
            m.set(i, j, BigInt::from(c));
        }
    }
    m
}

/// The induced action of `w` on bivectors, rows-as-images like
/// [`omega_h1_rows`].
pub fn omega_wedge2_rows() -> IntMatrix {
    let mut m = IntMatrix::zero(BIVECTOR_RANK, BIVECTOR_RANK);
    for idx in 0..BIVECTOR_RANK {
        let (a, b) = index_pair(idx);
        for (x, cx) in omega_image(a) {
            for (y, cy) in omega_image(b) {
                if x == y {
                    continue;
                }
                let (lo, hi, sign) = if x < y { (x, y, 1) } else { (y, x, -1) };
                let col = pair_index(lo, hi);
                let add = BigInt::from(cx * cy * sign);
                let cur = m.at(idx, col).clone();
                m.set(idx, col, cur + add);
            }
        }
    }
    m
}

/// Integer Gram matrix of the cup form on the 45 basis bivectors.
pub fn unit_bivector_gram() -> IntMatrix {
    let t3 = theta_power_over_factorial(3);
    let mut g = IntMatrix::zero(BIVECTOR_RANK, BIVECTOR_RANK);
    let basis: Vec<Multivector> = (0..BIVECTOR_RANK)
        .map(|idx| {
            let (a, b) = index_pair(idx);
            Multivector::basis(&[a, b], Rational::one())
        })
        .collect();
    for i in 0..BIVECTOR_RANK {
        let partial = t3.wedge(&basis[i]);
        for j in i..BIVECTOR_RANK {
            let v = deg(&partial.wedge(&basis[j]));
            assert!(v.denom().is_one(), "cup of integral bivectors is integral");
            g.set(i, j, v.numer().clone());
            g.set(j, i, v.numer().clone());
        }
    }
    g
}

/// A sublattice of the half-integral bivectors, stored through doubled
/// coordinates: `basis_doubled` rows are exact coordinates of twice the
/// basis vectors, and `gram` is the (integral) cup Gram of the basis
/// itself.
#[derive(Clone, Debug)]
pub struct PeriodLattice {
    pub basis_doubled: IntMatrix,
    pub gram: IntMatrix,
}

impl PeriodLattice {
    pub fn rank(&self) -> usize {
        self.basis_doubled.rows()
    }

    pub fn invariants(&self) -> SymFormInvariants {
        sym_invariants(&self.gram).expect("period Grams are square and symmetric")
    }

    /// Whether the vector with the given doubled coordinates lies in the
    /// lattice.
    pub fn contains_doubled(&self, doubled: &[BigInt]) -> bool {
        self.basis_doubled.solve_in_rowspace(doubled).is_some()
    }
}

fn quarter_gram(doubled_rows: &IntMatrix, g45: &IntMatrix) -> IntMatrix {
    let raw = doubled_rows.mul(g45).mul(&doubled_rows.transpose());
    let mut out = IntMatrix::zero(raw.rows(), raw.cols());
    let four = BigInt::from(4);
    for r in 0..raw.rows() {
        for c in 0..raw.cols() {
            let v = raw.at(r, c);
            assert!(
                (v % &four).is_zero(),
                "doubled pairing must be divisible by 4"
            );
            out.set(r, c, v / &four);
        }
    }
    out
}

/// The rank-45 lattice spanned by the integral bivectors together with
/// `tau`, with its integral cup Gram.
pub fn h2s_lattice() -> PeriodLattice {
    let g45 = unit_bivector_gram();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(BIVECTOR_RANK + 1);
    for i in 0..BIVECTOR_RANK {
        let mut r = vec![BigInt::zero(); BIVECTOR_RANK];
        r[i] = BigInt::from(2);
        rows.push(r);
    }
    // 2 * tau = theta.
    rows.push(
        theta()
            .into_iter()
            .map(|c| {
                assert!(c.denom().is_one());
                c.numer().clone()
            })
            .collect(),
    );
    let (h, _) = IntMatrix::from_rows(rows).hnf();
    let basis_rows: Vec<Vec<BigInt>> = (0..h.rows())
        .filter(|&r| !h.row_is_zero(r))
        .map(|r| h.row(r).to_vec())
        .collect();
    let basis_doubled = IntMatrix::from_rows(basis_rows);
    let gram = quarter_gram(&basis_doubled, &g45);
    PeriodLattice {
        basis_doubled,
        gram,
    }
}

/// The sublattice of [`h2s_lattice`] fixed by the induced `w`-action.
pub fn galois_invariant_lattice() -> PeriodLattice {
    let g45 = unit_bivector_gram();
    let h2s = h2s_lattice();
    let rot = omega_wedge2_rows();
    // Action on basis coordinates: each basis row maps into the lattice.
    let mut action_rows = Vec::with_capacity(h2s.rank());
    for r in 0..h2s.rank() {
        let img = IntMatrix::row_vec_mul(h2s.basis_doubled.row(r), &rot);
        let coeffs = h2s
            .basis_doubled
            .solve_in_rowspace(&img)
            .expect("the action preserves the lattice");
        action_rows.push(coeffs);
    }
    let mut m_minus_one = IntMatrix::from_rows(action_rows);
    for i in 0..m_minus_one.rows() {
        let v = m_minus_one.at(i, i) - BigInt::one();
        m_minus_one.set(i, i, v);
    }
    // Fixed coordinate vectors x: x * (M - 1) = 0.
    let fixed_coords = m_minus_one.transpose().kernel_saturated();
    let basis_doubled = fixed_coords.mul(&h2s.basis_doubled);
    let gram = quarter_gram(&basis_doubled, &g45);
    PeriodLattice {
        basis_doubled,
        gram,
    }
}

/// The orthogonal complement of `tau` inside the fixed sublattice.
pub fn prim_lattice() -> PeriodLattice {
    let g45 = unit_bivector_gram();
    let fixed = galois_invariant_lattice();
    let theta_ints: Vec<BigInt> = theta()
        .into_iter()
        .map(|c| c.numer().clone())
        .collect();
    // Pairing of each basis vector with tau: (doubled . G . theta) / 4.
    let four = BigInt::from(4);
    let gv = fixed.basis_doubled.mul(&g45);
    let pairings: Vec<BigInt> = (0..fixed.rank())
        .map(|r| {
            let dot: BigInt = gv
                .row(r)
                .iter()
                .zip(&theta_ints)
                .map(|(a, b)| a * b)
                .sum();
            assert!((&dot % &four).is_zero());
            dot / &four
        })
        .collect();
    let constraint = IntMatrix::from_rows(vec![pairings]);
    let kernel = constraint.kernel_saturated();
    let basis_doubled = kernel.mul(&fixed.basis_doubled);
    let gram = quarter_gram(&basis_doubled, &g45);
    PeriodLattice {
        basis_doubled,
        gram,
    }
}

fn block_diag(blocks: &[Vec<Vec<i64>>]) -> IntMatrix {
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut m = IntMatrix::zero(n, n);
    let mut off = 0;
    for b in blocks {
        for (r, row) in b.iter().enumerate() {
            assert_eq!(row.len(), b.len(), "blocks must be square");
            for (c, &v) in row.iter().enumerate() {
                m.set(off + r, off + c, BigInt::from(v));
            }
        }
        off += b.len();
    }
    m
}

fn a2_block(scale: i64) -> Vec<Vec<i64>> {
    vec![vec![2 * scale, scale], vec![scale, 2 * scale]]
}

fn a4_block(scale: i64) -> Vec<Vec<i64>> {
    let s = scale;
    vec![
        vec![2 * s, -s, 0, 0],
        vec![-s, 2 * s, -s, 0],
        vec![0, -s, 2 * s, -s],
        vec![0, 0, -s, 2 * s],
    ]
}

/// Rank-25 block model of the fixed sublattice:
/// `(1) + (-1)^4 + A2^4 + (-A2)^6`.
pub fn block_model_invariant() -> IntMatrix {
    let mut blocks = vec![vec![vec![1]]];
    blocks.extend(std::iter::repeat_n(vec![vec![-1]], 4));
    blocks.extend(std::iter::repeat_n(a2_block(1), 4));
    blocks.extend(std::iter::repeat_n(a2_block(-1), 6));
    block_diag(&blocks)
}

/// Rank-24 block model of the `tau`-complement:
/// `(-A4) + A2^4 + (-A2)^6`.
pub fn block_model_prim() -> IntMatrix {
    let mut blocks = vec![a4_block(-1)];
    blocks.extend(std::iter::repeat_n(a2_block(1), 4));
    blocks.extend(std::iter::repeat_n(a2_block(-1), 6));
    block_diag(&blocks)
}

/// Rank-25 integral model of the cohomology of the triple-contact surface:
/// `(3) + (-3)^4 + A2^4 + (-A2)^6`.
pub fn block_model_h2z() -> IntMatrix {
    let mut blocks = vec![vec![vec![3]]];
    blocks.extend(std::iter::repeat_n(vec![vec![-3]], 4));
    blocks.extend(std::iter::repeat_n(a2_block(1), 4));
    blocks.extend(std::iter::repeat_n(a2_block(-1), 6));
    block_diag(&blocks)
}

/// Rank-24 model of the primitive part on the triple-contact side:
/// `3 * (-A4) + A2^4 + (-A2)^6`.
pub fn block_model_prim_z() -> IntMatrix {
    let mut blocks = vec![a4_block(-3)];
    blocks.extend(std::iter::repeat_n(a2_block(1), 4));
    blocks.extend(std::iter::repeat_n(a2_block(-1), 6));
    block_diag(&blocks)
}

/// Determinant and scaling arithmetic tying the block models together: the
/// free quotient lattice on the triple-contact side is the fixed sublattice
/// scaled by 1/3, and scaling a rank-n lattice by c multiplies the
/// determinant by c^n.
#[derive(Clone, Debug)]
pub struct ScalingBridgeReport {
    pub invariant_lattice: SymFormInvariants,
    pub prim_lattice: SymFormInvariants,
    pub h2z_model: SymFormInvariants,
    pub prim_z_model: SymFormInvariants,
    /// `det(h2z model) * (1/3)^25`.
    pub h2z_third_scaled_det: Rational,
    /// `det(fixed sublattice) * (1/3)^25`.
    pub invariant_third_scaled_det: Rational,
}

pub fn scaling_bridge_report() -> ScalingBridgeReport {
    let invariant_lattice = galois_invariant_lattice().invariants();
    let prim = prim_lattice().invariants();
    let h2z_model =
        sym_invariants(&block_model_h2z()).expect("block model is symmetric");
    let prim_z_model =
        sym_invariants(&block_model_prim_z()).expect("block model is symmetric");
    let third_pow_25 = Rational::new(BigInt::one(), BigInt::from(3).pow(25));
    let h2z_third_scaled_det =
        Rational::from(h2z_model.determinant.clone()) * third_pow_25.clone();
    let invariant_third_scaled_det =
        Rational::from(invariant_lattice.determinant.clone()) * third_pow_25;
    ScalingBridgeReport {
        invariant_lattice,
        prim_lattice: prim,
        h2z_model,
        prim_z_model,
        h2z_third_scaled_det,
        invariant_third_scaled_det,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn pair_indexing_roundtrip() {
        let mut seen = 0;
        for a in 0..H1_RANK {
            for b in a + 1..H1_RANK {
                let idx = pair_index(a, b);
                assert_eq!(index_pair(idx), (a, b));
                seen += 1;
            }
        }
        assert_eq!(seen, BIVECTOR_RANK);
        assert_eq!(pair_index(0, 1), 0);
        assert_eq!(pair_index(8, 9), 44);
    }

    #[test]
    fn exterior_algebra_basics() {
        let e01 = Multivector::basis(&[0, 1], Rational::one());
        let e10 = Multivector::basis(&[1, 0], Rational::one());
        assert_eq!(e01, e10.scale(&rat_int(-1)));
        assert!(Multivector::basis(&[2, 2], Rational::one()).is_zero());
        // Wedge anticommutes in odd degrees, and squares of vectors vanish.
        let a = Multivector::basis(&[3], Rational::one());
        let b = Multivector::basis(&[7], Rational::one());
        assert_eq!(a.wedge(&b), b.wedge(&a).scale(&rat_int(-1)));
        assert!(a.wedge(&a).is_zero());
        // Bivectors commute.
        let p = Multivector::basis(&[0, 5], Rational::one());
        let q = Multivector::basis(&[1, 6], Rational::one());
        assert_eq!(p.wedge(&q), q.wedge(&p));
    }

    #[test]
    fn orientation_normalization() {
        // theta^5 / 5! has coefficient -1 on e_0 ^ ... ^ e_9, so the chosen
        // orientation gives it degree +1.
        let t5 = theta_power_over_factorial(5);
        assert_eq!(
            t5.coefficient(&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9]),
            rat_int(-1)
        );
        assert_eq!(deg(&t5), rat_int(1));
    }

    #[test]
    fn cup_form_examples() {
        assert_eq!(cup_form(&theta(), &theta()), rat_int(20));
        assert_eq!(cup_form(&tau(), &tau()), rat_int(5));
        // Missing omega-partners: theta^3 cannot complete the top form.
        assert_eq!(
            cup_form(&wedge2_coords(0, 1), &wedge2_coords(2, 3)),
            rat_int(0)
        );
        // Symmetry on a deterministic pseudo-random sample.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 33) % 7) as i64 - 3
        };
        for _ in 0..5 {
            let a: Vec<Rational> = (0..BIVECTOR_RANK).map(|_| rat_int(next())).collect();
            let b: Vec<Rational> = (0..BIVECTOR_RANK).map(|_| rat_int(next())).collect();
            let ab = cup_form(&a, &b);
            assert_eq!(ab, cup_form(&b, &a));
            assert!(ab.denom().is_one(), "integral on integral bivectors");
        }
    }

    #[test]
    fn alt_bridge_matches_the_alternating_form() {
        let j = alt_form_h1();
        for x in 0..H1_RANK {
            for y in 0..H1_RANK {
                let mut ex = vec![Rational::zero(); H1_RANK];
                let mut ey = vec![Rational::zero(); H1_RANK];
                ex[x] = Rational::one();
                ey[y] = Rational::one();
                assert_eq!(
                    alt_bridge_form(&ex, &ey),
                    Rational::from(j.at(x, y).clone()),
                    "mismatch at basis pair ({x}, {y})"
                );
            }
        }
    }

    #[test]
    fn omega_has_order_three_and_preserves_the_forms() {
        let w = omega_h1_rows();
        let w3 = w.mul(&w).mul(&w);
        assert_eq!(w3, IntMatrix::identity(H1_RANK));
        // Invariance of the alternating form: W J W^T = J for the
        // row-vector action.
        let j = alt_form_h1();
        assert_eq!(w.mul(&j).mul(&w.transpose()), j);

        let rot = omega_wedge2_rows();
        let rot3 = rot.mul(&rot).mul(&rot);
        assert_eq!(rot3, IntMatrix::identity(BIVECTOR_RANK));
        let g = unit_bivector_gram();
        assert_eq!(rot.mul(&g).mul(&rot.transpose()), g);
        // Theta is fixed.
        let theta_ints: Vec<BigInt> =
            theta().into_iter().map(|c| c.numer().clone()).collect();
        assert_eq!(IntMatrix::row_vec_mul(&theta_ints, &rot), theta_ints);
    }

    #[test]
    fn h2s_lattice_shape() {
        let l = h2s_lattice();
        assert_eq!(l.rank(), 45);
        assert!(l.gram.is_symmetric());
        let inv = l.invariants();
        assert_eq!(inv.rank, 45);
        assert_eq!(inv.determinant, big(1));
        assert_eq!(inv.signature, (21, 24));
        // tau pairs integrally (in fact evenly) with every basis bivector.
        for i in 0..BIVECTOR_RANK {
            let p = cup_form(&tau(), &wedge2_coords_of_index(i));
            assert!(p.denom().is_one());
            assert!((p.numer() % big(2)).is_zero());
        }
    }

    fn wedge2_coords_of_index(idx: usize) -> Vec<Rational> {
        let (a, b) = index_pair(idx);
        wedge2_coords(a, b)
    }

    #[test]
    fn tau_block_has_unimodular_gram() {
        // Basis (tau, P_1, P_2, P_3, P_4) where P_k = e_k ^ e_{5+k}.
        let mut basis = vec![tau()];
        for k in 1..5 {
            basis.push(wedge2_coords(k, 5 + k));
        }
        let expect = [
            [5, 2, 2, 2, 2],
            [2, 0, 1, 1, 1],
            [2, 1, 0, 1, 1],
            [2, 1, 1, 0, 1],
            [2, 1, 1, 1, 0],
        ];
        let mut gram = IntMatrix::zero(5, 5);
        for r in 0..5 {
            for c in 0..5 {
                let v = cup_form(&basis[r], &basis[c]);
                assert!(v.denom().is_one());
                assert_eq!(v, rat_int(expect[r][c]), "entry ({r}, {c})");
                gram.set(r, c, v.numer().clone());
            }
        }
        assert_eq!(gram.det(), big(1));
    }

    #[test]
    fn galois_invariant_lattice_invariants() {
        let fixed = galois_invariant_lattice();
        let inv = fixed.invariants();
        assert_eq!(inv.rank, 25);
        assert_eq!(inv.determinant, big(59_049));
        assert_eq!(inv.signature, (9, 16));
        // Complete-invariant comparison against the block model.
        let model = sym_invariants(&block_model_invariant()).unwrap();
        assert_eq!(inv.rank, model.rank);
        assert_eq!(inv.determinant, model.determinant);
        assert_eq!(inv.signature, model.signature);
        assert_eq!(inv.invariant_factors, model.invariant_factors);
        // tau is fixed by the action and contained in the fixed lattice.
        let theta_ints: Vec<BigInt> =
            theta().into_iter().map(|c| c.numer().clone()).collect();
        assert!(fixed.contains_doubled(&theta_ints));
    }

    #[test]
    fn explicit_fixed_blocks_have_the_stated_grams() {
        let rot = omega_wedge2_rows();
        let add3 = |x: &[Rational], y: &[Rational], z: &[Rational]| -> Vec<Rational> {
            (0..BIVECTOR_RANK)
                .map(|i| &x[i] + &y[i] + &z[i])
                .collect()
        };
        let assert_fixed = |v: &[Rational]| {
            let ints: Vec<BigInt> = v.iter().map(|c| c.numer().clone()).collect();
            assert_eq!(IntMatrix::row_vec_mul(&ints, &rot), ints);
        };
        for j in 1..5 {
            // v_0 ^ v_j + w v_0 ^ w v_j + w v_0 ^ v_j and its partner with
            // the last term replaced by v_0 ^ w v_j.
            let a = add3(
                &wedge2_coords(0, j),
                &wedge2_coords(5, 5 + j),
                &wedge2_coords(5, j),
            );
            let b = add3(
                &wedge2_coords(0, j),
                &wedge2_coords(5, 5 + j),
                &wedge2_coords(0, 5 + j),
            );
            assert_fixed(&a);
            assert_fixed(&b);
            assert_eq!(cup_form(&a, &a), rat_int(2));
            assert_eq!(cup_form(&a, &b), rat_int(1));
            assert_eq!(cup_form(&b, &b), rat_int(2));
        }
        for i in 1..5 {
            for j in i + 1..5 {
                let a = add3(
                    &wedge2_coords(i, j),
                    &wedge2_coords(5 + i, 5 + j),
                    &wedge2_coords(5 + i, j),
                );
                let b = add3(
                    &wedge2_coords(i, j),
                    &wedge2_coords(5 + i, 5 + j),
                    &wedge2_coords(i, 5 + j),
                );
                assert_fixed(&a);
                assert_fixed(&b);
                assert_eq!(cup_form(&a, &a), rat_int(-2));
                assert_eq!(cup_form(&a, &b), rat_int(-1));
                assert_eq!(cup_form(&b, &b), rat_int(-2));
            }
        }
    }

    #[test]
    fn prim_lattice_invariants() {
        let prim = prim_lattice();
        let inv = prim.invariants();
        assert_eq!(inv.rank, 24);
        assert_eq!(inv.determinant, big(295_245));
        assert_eq!(inv.signature, (8, 16));
        let model = sym_invariants(&block_model_prim()).unwrap();
        assert_eq!(inv.determinant, model.determinant);
        assert_eq!(inv.signature, model.signature);
        assert_eq!(inv.invariant_factors, model.invariant_factors);
        // tau itself is not in the complement: its self-pairing is 5.
        let theta_ints: Vec<BigInt> =
            theta().into_iter().map(|c| c.numer().clone()).collect();
        assert!(!prim.contains_doubled(&theta_ints));
    }

    #[test]
    fn scaling_bridge_arithmetic() {
        let report = scaling_bridge_report();
        assert_eq!(report.h2z_model.rank, 25);
        assert_eq!(report.h2z_model.determinant, big(3).pow(15));
        assert_eq!(report.h2z_model.signature, (9, 16));
        assert_eq!(report.prim_z_model.rank, 24);
        assert_eq!(
            report.prim_z_model.determinant,
            big(5) * big(3).pow(14)
        );
        assert_eq!(report.prim_z_model.signature, (8, 16));
        // Scaling a rank-25 lattice by 1/3 divides the determinant by 3^25:
        // 3^15 / 3^25 = 3^-10 and 3^10 / 3^25 = 3^-15.
        assert_eq!(
            report.h2z_third_scaled_det,
            Rational::new(big(1), big(3).pow(10))
        );
        assert_eq!(
            report.invariant_third_scaled_det,
            Rational::new(big(1), big(3).pow(15))
        );
        // The prim model magnitude matches the curve-class lattice
        // determinant from the double-cover side.
        assert_eq!(report.prim_z_model.determinant, big(23_914_845));
    }
}
