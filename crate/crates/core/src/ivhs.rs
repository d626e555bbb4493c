//! Exact linear algebra of the Jacobian-ring maps attached to a cubic form
//! in four variables: the multiplication maps into degree three, their
//! prolongations to second-order jets, the two embeddings of `V (+) V`
//! that present the relevant quotient bundles, and the rank bookkeeping
//! that identifies the induced period map differential as a rank-16 map.
//!
//! All matrices are exact (entries in the coefficient field of the form),
//! bases are fixed once and for all (monomials in descending lexicographic
//! order, tensor factors ordered left-to-right with the left factor
//! slowest), and every rank is computed by fraction-free elimination.

use crate::exact::{fmat, rat_int, Field, Rational};
use crate::poly::{smoothness_probe, CubicSurface, MultiPoly};
use rand::Rng;
use std::collections::BTreeMap;

/// Monomial basis of the degree-`d` part of `K[x0..x3]`, as exponent
/// tuples in descending lexicographic order. Dimensions 4, 10, 20 for
/// degrees 1, 2, 3.
pub fn sym_basis(d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            for c in (0..=d - a - b).rev() {
                out.push(vec![a, b, c, d - a - b - c]);
            }
        }
    }
    out
}

/// Index lookup for a fixed symmetric-power basis.
struct SymIndex {
    basis: Vec<Vec<u32>>,
    positions: BTreeMap<Vec<u32>, usize>,
}

impl SymIndex {
    fn new(d: u32) -> Self {
        let basis = sym_basis(d);
        let positions = basis
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        SymIndex { basis, positions }
    }

    fn len(&self) -> usize {
        self.basis.len()
    }

    fn index(&self, e: &[u32]) -> usize {
        *self
            .positions
            .get(e)
            .unwrap_or_else(|| panic!("exponent {e:?} outside the basis"))
    }
}

/// An exact matrix of a linear map between fixed monomial/tensor bases.
/// `matrix[r][c]` is the coefficient of codomain basis element `r` in the
/// image of domain basis element `c`; the matrix acts on column vectors of
/// domain coordinates.
#[derive(Clone, Debug)]
pub struct LinearMap<K: Field> {
    pub name: String,
    pub domain: String,
    pub codomain: String,
    pub matrix: Vec<Vec<K>>,
}

impl<K: Field> LinearMap<K> {
    fn new(name: &str, domain: &str, codomain: &str, matrix: Vec<Vec<K>>) -> Self {
        assert!(!matrix.is_empty());
        LinearMap {
            name: name.to_string(),
            domain: domain.to_string(),
            codomain: codomain.to_string(),
            matrix,
        }
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix[0].len()
    }

    /// Rank over the coefficient field, by fraction-free elimination.
    pub fn rank(&self) -> usize {
        fmat::rank_fraction_free(&self.matrix)
    }

    /// `self` after `inner`: requires `inner`'s codomain dimension to
    /// match `self`'s domain dimension.
    pub fn compose(&self, inner: &LinearMap<K>, name: &str) -> LinearMap<K> {
        assert_eq!(self.cols(), inner.rows(), "composition dimension mismatch");
        LinearMap::new(
            name,
            &inner.domain,
            &self.codomain,
            fmat::mat_mul(&self.matrix, &inner.matrix),
        )
    }

    pub fn matrix_eq(&self, other: &LinearMap<K>) -> bool {
        self.matrix == other.matrix
    }

    /// Stable dump for fixture diffing: entries as display strings.
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<Vec<String>> = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|e| e.to_string()).collect())
            .collect();
        serde_json::json!({
            "name": self.name,
            "domain": self.domain,
            "codomain": self.codomain,
            "entries": entries,
        })
    }
}

fn assert_cubic<K: Field>(f: &MultiPoly<K>) {
    assert_eq!(f.nvars(), 4, "cubic forms live in four variables");
    assert!(
        f.is_zero() || f.homogeneous_degree() == Some(3),
        "expected a homogeneous cubic"
    );
}

fn gradient4<K: Field>(f: &MultiPoly<K>) -> Vec<MultiPoly<K>> {
    (0..4).map(|j| f.partial(j)).collect()
}

fn second_partials<K: Field>(f: &MultiPoly<K>) -> Vec<Vec<MultiPoly<K>>> {
    let grad = gradient4(f);
    (0..4)
        .map(|i| (0..4).map(|j| grad[j].partial(i)).collect())
        .collect()
}

fn pair_exp(a: usize, b: usize) -> Vec<u32> {
    let mut e = vec![0u32; 4];
    e[a] += 1;
    e[b] += 1;
    e
}

fn add_poly_block<K: Field>(
    matrix: &mut [Vec<K>],
    col: usize,
    row_offset: usize,
    idx: &SymIndex,
    p: &MultiPoly<K>,
) {
    for (e, c) in p.terms() {
        let r = row_offset + idx.index(e);
        let cur = matrix[r][col].clone();
        matrix[r][col] = cur + c.clone();
    }
}

/// Multiplication against the gradient:
/// `dual(V) (x) V -> Sym^3 V`, `x_j^* (x) A -> A dF/dx_j` (16 -> 20).
pub fn build_nu<K: Field>(f: &MultiPoly<K>) -> LinearMap<K> {
    assert_cubic(f);
    let grad = gradient4(f);
    let sym3 = SymIndex::new(3);
    let mut matrix = vec![vec![K::zero(); 16]; sym3.len()];
    for j in 0..4 {
        for a in 0..4 {
            let img = grad[j].mul(&MultiPoly::var(4, a));
            add_poly_block(&mut matrix, j * 4 + a, 0, &sym3, &img);
        }
    }
    LinearMap::new("nu", "dual(V) (x) V", "Sym^3 V", matrix)
}

/// The polarization map `Sym^3 V -> V (x) Sym^2 V`,
/// `G -> sum_i x_i (x) dG/dx_i` (20 -> 40).
pub fn build_delta<K: Field>() -> LinearMap<K> {
    let sym3 = SymIndex::new(3);
    let sym2 = SymIndex::new(2);
    let mut matrix = vec![vec![K::zero(); sym3.len()]; 4 * sym2.len()];
    for (m, e) in sym3.basis.iter().enumerate() {
        let mono = MultiPoly::from_terms(4, vec![(e.clone(), K::one())]);
        for i in 0..4 {
            add_poly_block(&mut matrix, m, i * sym2.len(), &sym2, &mono.partial(i));
        }
    }
    LinearMap::new("delta", "Sym^3 V", "V (x) Sym^2 V", matrix)
}

/// The composite `delta . nu` built directly from its closed formula:
/// `x_j^* (x) A -> A (x) dF/dx_j + sum_i x_i (x) A d2F/dx_i dx_j`
/// (16 -> 40).
pub fn build_delta_nu<K: Field>(f: &MultiPoly<K>) -> LinearMap<K> {
    assert_cubic(f);
    let grad = gradient4(f);
    let hess = second_partials(f);
    let sym2 = SymIndex::new(2);
    let mut matrix = vec![vec![K::zero(); 16]; 4 * sym2.len()];
    for j in 0..4 {
        for a in 0..4 {
            let col = j * 4 + a;
            add_poly_block(&mut matrix, col, a * sym2.len(), &sym2, &grad[j]);
            for i in 0..4 {
                let img = hess[i][j].mul(&MultiPoly::var(4, a));
                add_poly_block(&mut matrix, col, i * sym2.len(), &sym2, &img);
            }
        }
    }
    LinearMap::new("delta_nu", "dual(V) (x) V", "V (x) Sym^2 V", matrix)
}

/// The embedding
/// `V (+) V -> V (x) dual(V) (x) V`,
/// `A (+) B -> sum_i (x_i (x) x_i^* (x) A + B (x) x_i^* (x) x_i)`
/// (8 -> 64).
pub fn build_alpha<K: Field>() -> LinearMap<K> {
    let mut matrix = vec![vec![K::zero(); 8]; 64];
    for a in 0..4 {
        for i in 0..4 {
            matrix[i * 16 + i * 4 + a][a] = K::one();
        }
    }
    for b in 0..4 {
        for i in 0..4 {
            matrix[b * 16 + i * 4 + i][4 + b] = K::one();
        }
    }
    LinearMap::new("alpha", "V (+) V", "V (x) dual(V) (x) V", matrix)
}

/// The embedding
/// `V (+) V -> Sym^2 V (x) Sym^2 V`,
/// `A (+) B -> sum_i (dF/dx_i (x) A x_i + B x_i (x) dF/dx_i)`
/// (8 -> 100).
pub fn build_beta<K: Field>(f: &MultiPoly<K>) -> LinearMap<K> {
    assert_cubic(f);
    let grad = gradient4(f);
    let sym2 = SymIndex::new(2);
    let n2 = sym2.len();
    let mut matrix = vec![vec![K::zero(); 8]; n2 * n2];
    for a in 0..4 {
        for i in 0..4 {
            let m2 = sym2.index(&pair_exp(a, i));
            for (e, c) in grad[i].terms() {
                let r = sym2.index(e) * n2 + m2;
                let cur = matrix[r][a].clone();
                matrix[r][a] = cur + c.clone();
            }
        }
    }
    for b in 0..4 {
        for i in 0..4 {
            let m1 = sym2.index(&pair_exp(b, i));
            for (e, c) in grad[i].terms() {
                let r = m1 * n2 + sym2.index(e);
                let cur = matrix[r][4 + b].clone();
                matrix[r][4 + b] = cur + c.clone();
            }
        }
    }
    LinearMap::new("beta", "V (+) V", "Sym^2 V (x) Sym^2 V", matrix)
}

/// The jet prolongation of `nu`:
/// `V (x) dual(V) (x) V -> Sym^2 V (x) Sym^2 V`,
/// `A (x) x_j^* (x) B -> AB (x) dF/dx_j + sum_i A x_i (x) B d2F/dx_i dx_j`
/// (64 -> 100).
pub fn build_nu1<K: Field>(f: &MultiPoly<K>) -> LinearMap<K> {
    assert_cubic(f);
    let grad = gradient4(f);
    let hess = second_partials(f);
    let sym2 = SymIndex::new(2);
    let n2 = sym2.len();
    let mut matrix = vec![vec![K::zero(); 64]; n2 * n2];
    for a in 0..4 {
        for j in 0..4 {
            for b in 0..4 {
                let col = a * 16 + j * 4 + b;
                let m1 = sym2.index(&pair_exp(a, b));
                add_poly_block(&mut matrix, col, m1 * n2, &sym2, &grad[j]);
                for i in 0..4 {
                    let mm = sym2.index(&pair_exp(a, i));
                    let img = hess[i][j].mul(&MultiPoly::var(4, b));
                    add_poly_block(&mut matrix, col, mm * n2, &sym2, &img);
                }
            }
        }
    }
    LinearMap::new("nu1", "V (x) dual(V) (x) V", "Sym^2 V (x) Sym^2 V", matrix)
}

/// The jet prolongation of `delta`:
/// `V (x) Sym^3 V -> Sym^2 V (x) Sym^2 V`,
/// `A (x) B -> sum_i A x_i (x) dB/dx_i` (80 -> 100).
pub fn build_delta1<K: Field>() -> LinearMap<K> {
    let sym3 = SymIndex::new(3);
    let sym2 = SymIndex::new(2);
    let n2 = sym2.len();
    let mut matrix = vec![vec![K::zero(); 4 * sym3.len()]; n2 * n2];
    for a in 0..4 {
        for (m, e) in sym3.basis.iter().enumerate() {
            let col = a * sym3.len() + m;
            let mono = MultiPoly::from_terms(4, vec![(e.clone(), K::one())]);
            for i in 0..4 {
                let m1 = sym2.index(&pair_exp(a, i));
                add_poly_block(&mut matrix, col, m1 * n2, &sym2, &mono.partial(i));
            }
        }
    }
    LinearMap::new("delta1", "V (x) Sym^3 V", "Sym^2 V (x) Sym^2 V", matrix)
}

/// `1 (x) nu : V (x) dual(V) (x) V -> V (x) Sym^3 V`,
/// `A (x) x_j^* (x) B -> A (x) B dF/dx_j` (64 -> 80).
pub fn build_one_tensor_nu<K: Field>(f: &MultiPoly<K>) -> LinearMap<K> {
    assert_cubic(f);
    let grad = gradient4(f);
    let sym3 = SymIndex::new(3);
    let mut matrix = vec![vec![K::zero(); 64]; 4 * sym3.len()];
    for a in 0..4 {
        for j in 0..4 {
            for b in 0..4 {
                let col = a * 16 + j * 4 + b;
                let img = grad[j].mul(&MultiPoly::var(4, b));
                add_poly_block(&mut matrix, col, a * sym3.len(), &sym3, &img);
            }
        }
    }
    LinearMap::new("one_tensor_nu", "V (x) dual(V) (x) V", "V (x) Sym^3 V", matrix)
}

/// The base change on `V (+) V` that intertwines the two embeddings:
/// `nu1 . alpha = beta . T` with `T(A (+) B) = 2A (+) (A + 3B)`.
///
/// The literal identity `nu1 . alpha = beta` does not hold; the two maps
/// differ by this invertible triangular transition (its determinant is
/// `2^4 * 3^4`), which is exactly what makes `nu1` an isomorphism between
/// the images of `alpha` and `beta`.
pub fn build_alpha_transition<K: Field>() -> LinearMap<K> {
    let two = K::from_int(2);
    let three = K::from_int(3);
    let mut matrix = vec![vec![K::zero(); 8]; 8];
    for a in 0..4 {
        matrix[a][a] = two.clone();
        matrix[4 + a][a] = K::one();
        matrix[4 + a][4 + a] = three.clone();
    }
    LinearMap::new("alpha_transition", "V (+) V", "V (+) V", matrix)
}

/// Deterministic probe points with coordinates in `{-1, 0, 1}`, one
/// representative per projective class (40 points).
pub fn probe_grid<K: Field>() -> Vec<Vec<K>> {
    let vals = [K::zero(), K::one(), -K::one()];
    let mut out = Vec::new();
    for n in 1..81usize {
        let digits = [n / 27 % 3, n / 9 % 3, n / 3 % 3, n % 3];
        if let Some(first) = digits.iter().position(|&d| d != 0) {
            if digits[first] != 1 {
                continue;
            }
            out.push(digits.iter().map(|&d| vals[d].clone()).collect());
        }
    }
    out
}

/// Rank bookkeeping for the induced period-map differential.
#[derive(Clone, Debug)]
pub struct IvhsRankReport {
    /// `dim(im delta1 + im nu1) - dim im nu1`.
    pub rank: usize,
    pub rank_nu: usize,
    pub rank_nu1: usize,
    pub rank_delta1: usize,
    pub rank_joint: usize,
    /// Set when the probe certifies the surface singular.
    pub smoothness_warning: Option<String>,
}

/// Computes the rank of the induced map out of the 16-dimensional tangent
/// block: the span of `delta1` and `nu1` columns modulo the `nu1` columns.
pub fn ivhs_rank<K: Field>(surface: &CubicSurface<K>) -> IvhsRankReport {
    let f = surface.f();
    let nu = build_nu(f);
    let nu1 = build_nu1(f);
    let delta1 = build_delta1::<K>();
    let joint: Vec<Vec<K>> = delta1
        .matrix
        .iter()
        .zip(&nu1.matrix)
        .map(|(d, n)| d.iter().chain(n.iter()).cloned().collect())
        .collect();
    let rank_nu1 = nu1.rank();
    let rank_joint = fmat::rank_fraction_free(&joint);
    let probe = smoothness_probe(surface, &probe_grid());
    let smoothness_warning = probe.certifies_singular.then(|| {
        "probe found an on-surface point with vanishing gradient; the surface is singular"
            .to_string()
    });
    IvhsRankReport {
        rank: rank_joint - rank_nu1,
        rank_nu: nu.rank(),
        rank_nu1,
        rank_delta1: delta1.rank(),
        rank_joint,
        smoothness_warning,
    }
}

/// Dimensions of the two one-relation quotient models and of the cokernel
/// of `nu`, all computed from actual ranks rather than asserted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientDims {
    /// `dim (dual(V) (x) V) / <sum_i x_i^* (x) x_i>`.
    pub endomorphism_quotient_dim: usize,
    /// `dim (V (x) Sym^2 V) / <sum_i x_i (x) dF/dx_i>`.
    pub gradient_tensor_quotient_dim: usize,
    /// `dim Sym^3 V - rank nu`.
    pub nu_cokernel_dim: usize,
}

pub fn quotient_dims_report<K: Field>(f: &MultiPoly<K>) -> QuotientDims {
    assert_cubic(f);
    let mut euler = vec![K::zero(); 16];
    for i in 0..4 {
        euler[i * 4 + i] = K::one();
    }
    let endo = 16 - fmat::rank(&[euler]);

    let grad = gradient4(f);
    let sym2 = SymIndex::new(2);
    let mut tensor = vec![K::zero(); 4 * sym2.len()];
    for (i, g) in grad.iter().enumerate() {
        for (e, c) in g.terms() {
            let slot = i * sym2.len() + sym2.index(e);
            tensor[slot] = tensor[slot].clone() + c.clone();
        }
    }
    let grad_dim = 40 - fmat::rank(&[tensor]);

    QuotientDims {
        endomorphism_quotient_dim: endo,
        gradient_tensor_quotient_dim: grad_dim,
        nu_cokernel_dim: 20 - build_nu(f).rank(),
    }
}

/// Whether `nu` sends `sum_i x_i^* (x) x_i` to `3F` exactly (the Euler
/// relation that lets the tangent map factor through `Sym^3 V / <F>`).
pub fn euler_relation_holds<K: Field>(f: &MultiPoly<K>) -> bool {
    assert_cubic(f);
    let nu = build_nu(f);
    let mut euler = vec![K::zero(); 16];
    for i in 0..4 {
        euler[i * 4 + i] = K::one();
    }
    let image = fmat::mat_vec(&nu.matrix, &euler);
    let sym3 = SymIndex::new(3);
    let triple = f.scale(&K::from_int(3));
    let expected: Vec<K> = sym3.basis.iter().map(|e| triple.coeff(e)).collect();
    image == expected
}

/// Draws random cubics with integer coefficients in `-9..=9` until one
/// passes the singularity probe and has an injective `nu`; returns the
/// surface and the number of attempts.
pub fn random_smooth_cubic<R: Rng>(rng: &mut R) -> (CubicSurface<Rational>, u32) {
    let basis = sym_basis(3);
    for attempt in 1..=10_000u32 {
        let terms: Vec<(Vec<u32>, Rational)> = basis
            .iter()
            .map(|e| (e.clone(), rat_int(rng.random_range(-9i64..=9))))
            .collect();
        let f = MultiPoly::from_terms(4, terms);
        if f.is_zero() {
            continue;
        }
        let surface = match CubicSurface::new(f) {
            Ok(s) => s,
            Err(_) => continue,
        };
        if smoothness_probe(&surface, &probe_grid()).certifies_singular {
            continue;
        }
        if build_nu(surface.f()).rank() != 16 {
            continue;
        }
        return (surface, attempt);
    }
    panic!("no probe-passing cubic found in 10000 attempts");
}
